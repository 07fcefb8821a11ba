//! Declarative suite configuration: a TOML file listing verification
//! suites, each with a semigroup spec, per-suite parameters, and a
//! tolerance. Matrices are referenced by file path in the plain-text
//! matrix format; paths resolve relative to the config file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use semiflow::matrix::text;
use semiflow::matrix::ComplexMatrix;

/// The closed set of suite names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    SemigroupLaw,
    ExpBound,
    WotZero,
    Pettis,
    Commutation,
    ResolventAgreement,
    ResolventEquation,
    DifferenceQuotient,
    Closedness,
    CpUnital,
    GksForm,
    OmegaInvariance,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 12] = [
        SuiteKind::SemigroupLaw,
        SuiteKind::ExpBound,
        SuiteKind::WotZero,
        SuiteKind::Pettis,
        SuiteKind::Commutation,
        SuiteKind::ResolventAgreement,
        SuiteKind::ResolventEquation,
        SuiteKind::DifferenceQuotient,
        SuiteKind::Closedness,
        SuiteKind::CpUnital,
        SuiteKind::GksForm,
        SuiteKind::OmegaInvariance,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteKind::SemigroupLaw => "semigroup-law",
            SuiteKind::ExpBound => "exp-bound",
            SuiteKind::WotZero => "wot-zero",
            SuiteKind::Pettis => "pettis",
            SuiteKind::Commutation => "commutation",
            SuiteKind::ResolventAgreement => "resolvent-agreement",
            SuiteKind::ResolventEquation => "resolvent-equation",
            SuiteKind::DifferenceQuotient => "difference-quotient",
            SuiteKind::Closedness => "closedness",
            SuiteKind::CpUnital => "cp-unital",
            SuiteKind::GksForm => "gks-form",
            SuiteKind::OmegaInvariance => "omega-invariance",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL
            .iter()
            .find(|k| k.as_str() == s)
            .copied()
            .ok_or_else(|| {
                anyhow::anyhow!(
                    "unknown suite name {s:?}; expected one of: {}",
                    SuiteKind::ALL.map(|k| k.as_str()).join(", ")
                )
            })
    }
}

/// Semigroup spec as declared in the config, matrices already loaded.
#[derive(Debug, Clone)]
pub enum SpecConfig {
    /// T_t = identity for all t (zero generator on the given dimension).
    Identity { dim: usize },
    /// Markovian-completed Lindblad generator from Kraus files and an
    /// optional Hamiltonian file.
    Lindblad { kraus: Vec<ComplexMatrix>, hamiltonian: Option<ComplexMatrix> },
    /// Seeded random markovian-completed Lindblad generator.
    RandomLindblad { dim: usize, kraus_terms: usize },
    /// Explicit d²×d² generator matrix.
    GeneratorMatrix { matrix: ComplexMatrix },
    /// Conjugation by a contraction semigroup.
    Conjugation { contraction: ContractionConfig },
    /// The discretized shift example.
    ShiftExample { cells: usize, delta: f64 },
}

#[derive(Debug, Clone)]
pub enum ContractionConfig {
    MatrixGroup { k: ComplexMatrix },
    CyclicShift { dim: usize, delta: f64 },
    TruncatedShift { dim: usize, delta: f64 },
}

/// Optional per-suite knobs; suites pick the fields they understand and
/// fall back to documented defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub t_grid: Option<Vec<f64>>,
    pub t_seq: Option<Vec<f64>>,
    pub s_grid: Option<Vec<f64>>,
    pub h_seq: Option<Vec<f64>>,
    /// λ as [re, im].
    pub lambda: Option<[f64; 2]>,
    /// Laplace truncation budget.
    pub eps: Option<f64>,
    pub panels: Option<usize>,
    pub nodes: Option<usize>,
    pub t_max: Option<f64>,
    /// Random draws per check (ω-invariance samples, closedness cases).
    pub samples: Option<usize>,
    pub cases: Option<usize>,
    /// Path to the observable A used by wot-zero / pettis / commutation /
    /// difference-quotient.
    pub observable: Option<PathBuf>,
    /// Estimation-grid spacing for exp-bound.
    pub est_delta: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub name: SuiteKind,
    pub tol: f64,
    pub spec: SpecConfig,
    pub params: Params,
    /// Observable matrix, loaded eagerly if `params.observable` was set.
    pub observable: Option<ComplexMatrix>,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
}

// ---- raw deserialization layer ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default, rename = "suite")]
    suites: Vec<RawSuite>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    name: String,
    tol: f64,
    spec: RawSpec,
    #[serde(default)]
    params: Params,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawSpec {
    Identity { dim: usize },
    Lindblad { kraus: Vec<PathBuf>, hamiltonian: Option<PathBuf> },
    RandomLindblad { dim: usize, kraus_terms: usize },
    GeneratorMatrix { path: PathBuf },
    Conjugation { contraction: RawContraction },
    ShiftExample { cells: usize, delta: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawContraction {
    MatrixGroup { k: PathBuf },
    CyclicShift { dim: usize, delta: f64 },
    TruncatedShift { dim: usize, delta: f64 },
}

fn load_matrix(base: &Path, rel: &Path) -> Result<ComplexMatrix> {
    let path = if rel.is_absolute() { rel.to_path_buf() } else { base.join(rel) };
    text::read_file(&path).with_context(|| format!("loading matrix {}", path.display()))
}

/// Parse and validate a config file. Unknown keys and unknown suite names
/// are rejected; all referenced matrices are loaded now.
pub fn load_config(path: &Path) -> Result<SuiteConfig> {
    let body = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let raw: RawConfig = toml::from_str(&body)
        .with_context(|| format!("parsing config {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();

    let mut suites = Vec::with_capacity(raw.suites.len());
    for (idx, rs) in raw.suites.into_iter().enumerate() {
        let name: SuiteKind = rs
            .name
            .parse()
            .with_context(|| format!("suite #{idx}"))?;
        let tol_ok = rs.tol >= 0.0;
        if !tol_ok {
            bail!("suite #{idx} ({name}): tolerance must be nonnegative, got {}", rs.tol);
        }
        let spec = match rs.spec {
            RawSpec::Identity { dim } => SpecConfig::Identity { dim },
            RawSpec::Lindblad { kraus, hamiltonian } => SpecConfig::Lindblad {
                kraus: kraus
                    .iter()
                    .map(|p| load_matrix(&base, p))
                    .collect::<Result<Vec<_>>>()?,
                hamiltonian: hamiltonian.map(|p| load_matrix(&base, &p)).transpose()?,
            },
            RawSpec::RandomLindblad { dim, kraus_terms } => {
                SpecConfig::RandomLindblad { dim, kraus_terms }
            }
            RawSpec::GeneratorMatrix { path } => {
                SpecConfig::GeneratorMatrix { matrix: load_matrix(&base, &path)? }
            }
            RawSpec::Conjugation { contraction } => SpecConfig::Conjugation {
                contraction: match contraction {
                    RawContraction::MatrixGroup { k } => {
                        ContractionConfig::MatrixGroup { k: load_matrix(&base, &k)? }
                    }
                    RawContraction::CyclicShift { dim, delta } => {
                        ContractionConfig::CyclicShift { dim, delta }
                    }
                    RawContraction::TruncatedShift { dim, delta } => {
                        ContractionConfig::TruncatedShift { dim, delta }
                    }
                },
            },
            RawSpec::ShiftExample { cells, delta } => SpecConfig::ShiftExample { cells, delta },
        };
        let observable = rs
            .params
            .observable
            .as_ref()
            .map(|p| load_matrix(&base, p))
            .transpose()?;
        suites.push(Suite { name, tol: rs.tol, spec, params: rs.params, observable });
    }
    Ok(SuiteConfig { suites })
}

/// A `NAME.tol=VALUE` or `INDEX.tol=VALUE` override from the command line.
#[derive(Debug, Clone)]
pub struct TolOverride {
    pub selector: String,
    pub tol: f64,
}

impl FromStr for TolOverride {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (selector, value) = s
            .split_once(".tol=")
            .ok_or_else(|| anyhow::anyhow!("override must look like SUITE.tol=VALUE, got {s:?}"))?;
        let tol: f64 = value
            .parse()
            .with_context(|| format!("parsing override tolerance {value:?}"))?;
        Ok(Self { selector: selector.to_string(), tol })
    }
}

/// Apply overrides by suite name (all matches) or by zero-based index.
pub fn apply_overrides(cfg: &mut SuiteConfig, overrides: &[TolOverride]) -> Result<()> {
    for ov in overrides {
        let mut hit = false;
        if let Ok(idx) = ov.selector.parse::<usize>() {
            if let Some(suite) = cfg.suites.get_mut(idx) {
                suite.tol = ov.tol;
                hit = true;
            }
        } else {
            for suite in cfg.suites.iter_mut().filter(|s| s.name.as_str() == ov.selector) {
                suite.tol = ov.tol;
                hit = true;
            }
        }
        if !hit {
            bail!("override {:?} matched no suite", ov.selector);
        }
    }
    Ok(())
}
