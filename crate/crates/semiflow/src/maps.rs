//! Superoperators on B(H): Choi/Kraus machinery, complete-positivity and
//! unitality checks, Lindblad-form generators, and the Stinespring
//! dilation by vertical stacking.
//!
//! A superoperator acts in the Heisenberg picture (on observables). Two
//! representations are kept behind one type: an explicit d²×d² matrix on
//! column-stacked operators, or a sandwich sum A ↦ Σ_j L_j·A·R_j. The
//! sandwich form is what makes large discretized examples tractable — the
//! matrix is only materialized for d ≤ [`DENSE_DIM_CAP`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linop;
use crate::matrix::{Complex64, ComplexMatrix, ComplexVector};
use crate::report::VerificationReport;
use crate::space::{devectorize, vectorize, HilbertDim};

/// Largest Hilbert dimension for which d²×d² superoperator matrices and
/// Choi matrices are materialized.
pub const DENSE_DIM_CAP: usize = 16;

/// Default threshold separating rounding noise from genuine Choi rank.
pub const KRAUS_TRUNCATION_TOL: f64 = 1e-10;

/// Pauli matrices and friends, handy for fixtures and examples.
pub mod pauli {
    use super::{Complex64, ComplexMatrix};

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_rows_vec(
            2,
            2,
            vec![Complex64::ZERO, Complex64::ONE, Complex64::ONE, Complex64::ZERO],
        )
        .expect("static entries")
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows_vec(
            2,
            2,
            vec![
                Complex64::ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::ZERO,
            ],
        )
        .expect("static entries")
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_rows_vec(
            2,
            2,
            vec![
                Complex64::ONE,
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::new(-1.0, 0.0),
            ],
        )
        .expect("static entries")
    }
}

#[derive(Debug, Clone)]
enum Term {
    /// A ↦ left·A·right.
    Sandwich { left: ComplexMatrix, right: ComplexMatrix },
    /// A ↦ coeff·⟨u, Au⟩·|v⟩⟨v|, the conjugation by the rank-one Kraus
    /// operator |u⟩⟨v| (kept separate so it applies in O(d²)).
    RankOneKraus { u: ComplexVector, v: ComplexVector, coeff: Complex64 },
}

impl Term {
    fn as_sandwich(&self) -> (ComplexMatrix, ComplexMatrix) {
        match self {
            Term::Sandwich { left, right } => (left.clone(), right.clone()),
            Term::RankOneKraus { u, v, coeff } => {
                (v.outer(u).scale(*coeff), u.outer(v))
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Form {
    Dense(ComplexMatrix),
    Sum(Vec<Term>),
}

/// A linear map on B(H).
#[derive(Debug, Clone)]
pub struct Superoperator {
    d: HilbertDim,
    form: Form,
}

impl Superoperator {
    /// Wrap an explicit d²×d² matrix acting on column-stacked operators.
    pub fn dense(d: HilbertDim, m: ComplexMatrix) -> Result<Self> {
        let nn = d.operator_dim();
        if m.shape() != (nn, nn) {
            return Err(Error::Shape(format!(
                "superoperator matrix must be {nn}x{nn}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { d, form: Form::Dense(m) })
    }

    /// The map A ↦ left·A·right.
    pub fn from_sandwich(left: ComplexMatrix, right: ComplexMatrix) -> Result<Self> {
        Self::from_sandwich_sum(vec![(left, right)])
    }

    /// The map A ↦ Σ_j left_j·A·right_j.
    pub fn from_sandwich_sum(terms: Vec<(ComplexMatrix, ComplexMatrix)>) -> Result<Self> {
        let Some((first, _)) = terms.first() else {
            return Err(Error::Domain("sandwich sum needs at least one term".into()));
        };
        if !first.is_square() {
            return Err(Error::NotSquare { rows: first.rows(), cols: first.cols() });
        }
        let d = HilbertDim::new(first.rows())?;
        let n = d.get();
        for (l, r) in &terms {
            if l.shape() != (n, n) || r.shape() != (n, n) {
                return Err(Error::Shape(format!(
                    "all sandwich factors must be {n}x{n}, got {}x{} and {}x{}",
                    l.rows(),
                    l.cols(),
                    r.rows(),
                    r.cols()
                )));
            }
        }
        let terms =
            terms.into_iter().map(|(left, right)| Term::Sandwich { left, right }).collect();
        Ok(Self { d, form: Form::Sum(terms) })
    }

    /// Append the rank-one Kraus conjugation A ↦ ⟨u, Au⟩·|v⟩⟨v| (the Kraus
    /// operator |u⟩⟨v|). Applies in O(d²), which is what keeps trace-type
    /// terms affordable on large grids.
    pub fn with_rank_one_kraus(self, u: ComplexVector, v: ComplexVector) -> Result<Self> {
        let n = self.d.get();
        if u.len() != n || v.len() != n {
            return Err(Error::Shape(format!(
                "rank-one Kraus vectors must have length {n}, got {} and {}",
                u.len(),
                v.len()
            )));
        }
        let Form::Sum(mut terms) = self.form else {
            return Err(Error::Domain("cannot append terms to a dense superoperator".into()));
        };
        terms.push(Term::RankOneKraus { u, v, coeff: Complex64::ONE });
        Ok(Self { d: self.d, form: Form::Sum(terms) })
    }

    /// The conjugation sum A ↦ Σ_j V_j†·A·V_j for a Kraus set.
    pub fn from_kraus(kraus: &KrausSet) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::Domain("empty Kraus set".into()));
        }
        Self::from_sandwich_sum(
            kraus.iter().map(|v| (v.adjoint(), v.clone())).collect(),
        )
    }

    pub fn identity(d: HilbertDim) -> Self {
        let id = ComplexMatrix::identity(d.get());
        Self { d, form: Form::Sum(vec![Term::Sandwich { left: id.clone(), right: id }]) }
    }

    pub fn zero(d: HilbertDim) -> Self {
        Self { d, form: Form::Sum(vec![]) }
    }

    pub fn dim(&self) -> HilbertDim {
        self.d
    }

    /// Apply to an operator: devec(m·vec(a)) or the sandwich sum directly.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.d.get();
        if a.shape() != (n, n) {
            return Err(Error::Shape(format!(
                "applying a dim-{n} superoperator to a {}x{} operator",
                a.rows(),
                a.cols()
            )));
        }
        match &self.form {
            Form::Dense(m) => {
                let v = vectorize(a)?;
                devectorize(&m.mul_vector(&v)?, self.d)
            }
            Form::Sum(terms) => {
                let mut acc = ComplexMatrix::zeros(n, n);
                for t in terms {
                    match t {
                        Term::Sandwich { left, right } => {
                            acc = acc.add(&left.mat_mul(a)?.mat_mul(right)?);
                        }
                        Term::RankOneKraus { u, v, coeff } => {
                            let scalar = *coeff * u.inner(&a.mul_vector(u)?);
                            acc = acc.add(&v.outer(v).scale(scalar));
                        }
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Apply the Hilbert–Schmidt adjoint map.
    pub fn apply_adjoint(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.d.get();
        if a.shape() != (n, n) {
            return Err(Error::Shape(format!(
                "applying a dim-{n} superoperator adjoint to a {}x{} operator",
                a.rows(),
                a.cols()
            )));
        }
        match &self.form {
            Form::Dense(m) => {
                let v = vectorize(a)?;
                devectorize(&m.adjoint().mul_vector(&v)?, self.d)
            }
            Form::Sum(terms) => {
                let mut acc = ComplexMatrix::zeros(n, n);
                for t in terms {
                    match t {
                        Term::Sandwich { left, right } => {
                            acc = acc.add(&left.adjoint().mat_mul(a)?.mat_mul(&right.adjoint())?);
                        }
                        Term::RankOneKraus { u, v, coeff } => {
                            // adjoint of A ↦ c⟨u,Au⟩|v⟩⟨v| is A ↦ c̄⟨v,Av⟩|u⟩⟨u|
                            let scalar = coeff.conj() * v.inner(&a.mul_vector(v)?);
                            acc = acc.add(&u.outer(u).scale(scalar));
                        }
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Materialize the d²×d² matrix (Σ rightᵀ ⊗ left for sandwich sums).
    /// Refused above [`DENSE_DIM_CAP`].
    pub fn matrix(&self) -> Result<ComplexMatrix> {
        match &self.form {
            Form::Dense(m) => Ok(m.clone()),
            Form::Sum(terms) => {
                let n = self.d.get();
                if n > DENSE_DIM_CAP {
                    return Err(Error::DimensionCap { d: n, cap: DENSE_DIM_CAP });
                }
                let nn = n * n;
                let mut acc = ComplexMatrix::zeros(nn, nn);
                for t in terms {
                    let (left, right) = t.as_sandwich();
                    acc = acc.add(&right.transpose().kron(&left));
                }
                Ok(acc)
            }
        }
    }

    /// Re-express with an explicit matrix.
    pub fn to_dense(&self) -> Result<Superoperator> {
        Ok(Self { d: self.d, form: Form::Dense(self.matrix()?) })
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.form, Form::Dense(_))
    }

    pub fn add(&self, other: &Superoperator) -> Result<Superoperator> {
        if self.d != other.d {
            return Err(Error::Shape("adding superoperators of different dimension".into()));
        }
        match (&self.form, &other.form) {
            (Form::Sum(a), Form::Sum(b)) => {
                let mut terms = a.clone();
                terms.extend(b.iter().cloned());
                Ok(Self { d: self.d, form: Form::Sum(terms) })
            }
            _ => Ok(Self {
                d: self.d,
                form: Form::Dense(self.matrix()?.add(&other.matrix()?)),
            }),
        }
    }

    pub fn sub(&self, other: &Superoperator) -> Result<Superoperator> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: Complex64) -> Superoperator {
        let form = match &self.form {
            Form::Dense(m) => Form::Dense(m.scale(z)),
            Form::Sum(terms) => Form::Sum(
                terms
                    .iter()
                    .map(|t| match t {
                        Term::Sandwich { left, right } => {
                            Term::Sandwich { left: left.scale(z), right: right.clone() }
                        }
                        Term::RankOneKraus { u, v, coeff } => Term::RankOneKraus {
                            u: u.clone(),
                            v: v.clone(),
                            coeff: *coeff * z,
                        },
                    })
                    .collect(),
            ),
        };
        Self { d: self.d, form }
    }

    /// Composition self ∘ other: (self ∘ other)(A) = self(other(A)).
    pub fn compose(&self, other: &Superoperator) -> Result<Superoperator> {
        if self.d != other.d {
            return Err(Error::Shape("composing superoperators of different dimension".into()));
        }
        match (&self.form, &other.form) {
            (Form::Sum(a), Form::Sum(b)) if a.len() * b.len() <= 4096 => {
                let mut terms = Vec::with_capacity(a.len() * b.len());
                for ta in a {
                    let (la, ra) = ta.as_sandwich();
                    for tb in b {
                        let (lb, rb) = tb.as_sandwich();
                        terms.push(Term::Sandwich {
                            left: la.mat_mul(&lb)?,
                            right: rb.mat_mul(&ra)?,
                        });
                    }
                }
                Ok(Self { d: self.d, form: Form::Sum(terms) })
            }
            _ => Ok(Self {
                d: self.d,
                form: Form::Dense(self.matrix()?.mat_mul(&other.matrix()?)?),
            }),
        }
    }

    /// Operator norm of the map in the d²×d² (Hilbert–Schmidt) sense:
    /// exact SVD when a matrix is held, power iteration otherwise.
    pub fn op_norm(&self) -> f64 {
        match &self.form {
            Form::Dense(m) => m.op_norm(),
            Form::Sum(_) => linop::OpExpr::op(self).op_norm_estimate(),
        }
    }

    /// Choi matrix C = Σ_ij E_ij ⊗ s(E_ij). Materializes d⁴ entries, so it
    /// is capped at d ≤ [`DENSE_DIM_CAP`].
    pub fn choi(&self) -> Result<ComplexMatrix> {
        let n = self.d.get();
        if n > DENSE_DIM_CAP {
            return Err(Error::DimensionCap { d: n, cap: DENSE_DIM_CAP });
        }
        let mut blocks: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(self.apply(&ComplexMatrix::matrix_unit(n, i, j))?);
            }
            blocks.push(row);
        }
        Ok(ComplexMatrix::from_fn(n * n, n * n, |row, col| {
            blocks[row / n][col / n].get(row % n, col % n)
        }))
    }

    /// Smallest eigenvalue of the Hermitized Choi matrix.
    ///
    /// For a sandwich sum whose terms pair up as (L, L†) — a Kraus-form
    /// witness — the Choi is Σ_k |w_k⟩⟨w_k| and its nonzero spectrum equals
    /// the spectrum of the Gram matrix tr(L_k† L_l), which keeps the
    /// computation exact at any dimension. Otherwise the dense Choi is
    /// eigendecomposed (d ≤ [`DENSE_DIM_CAP`]).
    pub fn min_choi_eigenvalue(&self) -> Result<f64> {
        if let Form::Sum(terms) = &self.form {
            if !terms.is_empty() && terms.iter().all(kraus_paired) {
                return self.min_choi_eigenvalue_via_gram(terms);
            }
        }
        let c = self.choi()?;
        let herm = c.add(&c.adjoint()).scale(Complex64::new(0.5, 0.0));
        let eigs = herm.hermitian_eigenvalues()?;
        Ok(eigs.first().copied().unwrap_or(0.0))
    }

    /// Exact low-rank route: for a sum of Kraus-paired terms the Choi is
    /// Σ_k |w_k⟩⟨w_k| with ⟨w_k, w_l⟩ = tr(L_k† L_l), so its nonzero
    /// spectrum is the spectrum of that Gram matrix.
    fn min_choi_eigenvalue_via_gram(&self, terms: &[Term]) -> Result<f64> {
        let m = terms.len();
        let gram = ComplexMatrix::from_fn(m, m, |k, l| gram_entry(&terms[k], &terms[l]));
        let eigs = gram.hermitian_eigenvalues()?;
        let min_gram = eigs.first().copied().unwrap_or(0.0);
        let rank_deficient = m < self.d.operator_dim();
        Ok(if rank_deficient { min_gram.min(0.0) } else { min_gram })
    }

    /// Complete positivity: min Choi eigenvalue ≥ −tol.
    pub fn is_completely_positive(&self, tol: f64) -> Result<CpReport> {
        let min_eigenvalue = self.min_choi_eigenvalue()?;
        Ok(CpReport { completely_positive: min_eigenvalue >= -tol, min_eigenvalue })
    }

    /// Unitality: ‖s(I) − I‖ ≤ tol.
    pub fn is_unital(&self, tol: f64) -> Result<UnitalReport> {
        let n = self.d.get();
        let id = ComplexMatrix::identity(n);
        let residual = self.apply(&id)?.sub(&id).op_norm();
        Ok(UnitalReport { unital: residual <= tol, residual })
    }
}

/// Is this term the conjugation A ↦ L·A·L† by a single Kraus factor?
fn kraus_paired(t: &Term) -> bool {
    match t {
        Term::Sandwich { left, right } => {
            let scale = left.max_abs().max(1.0);
            right.sub(&left.adjoint()).max_abs() <= 1e-12 * scale
        }
        Term::RankOneKraus { coeff, .. } => {
            coeff.im.abs() <= 1e-15 * coeff.re.abs().max(1.0) && coeff.re >= 0.0
        }
    }
}

/// Gram entry tr(L_k† L_l) between the Kraus factors of two paired terms,
/// with rank-one coefficients folded in as √coeff scalings.
fn gram_entry(a: &Term, b: &Term) -> Complex64 {
    let scaled = |t: &Term| -> f64 {
        match t {
            Term::Sandwich { .. } => 1.0,
            Term::RankOneKraus { coeff, .. } => coeff.re.max(0.0).sqrt(),
        }
    };
    let weight = scaled(a) * scaled(b);
    let raw = match (a, b) {
        (Term::Sandwich { left: la, .. }, Term::Sandwich { left: lb, .. }) => hs_inner(la, lb),
        (Term::Sandwich { left: la, .. }, Term::RankOneKraus { u, v, .. }) => {
            // tr(la†·v·u†) = ⟨u, la† v⟩... careful: tr(la† v u†) = u† la† v
            u.inner(&la.adjoint().mul_vector(v).expect("dimensions agree"))
        }
        (Term::RankOneKraus { u, v, .. }, Term::Sandwich { left: lb, .. }) => {
            // tr((v u†)† lb) = tr(u v† lb) = v† lb u
            v.inner(&lb.mul_vector(u).expect("dimensions agree"))
        }
        (
            Term::RankOneKraus { u: ua, v: va, .. },
            Term::RankOneKraus { u: ub, v: vb, .. },
        ) => {
            // tr((va ua†)†(vb ub†)) = (va† vb)(ub† ua)
            va.inner(vb) * ub.inner(ua)
        }
    };
    raw * Complex64::new(weight, 0.0)
}

/// Hilbert–Schmidt inner product tr(a†·b).
pub(crate) fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a.get(i, j).conj() * b.get(i, j);
        }
    }
    acc
}

/// Complete-positivity check result.
#[derive(Debug, Clone, Copy)]
pub struct CpReport {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
}

/// Unitality check result.
#[derive(Debug, Clone, Copy)]
pub struct UnitalReport {
    pub unital: bool,
    pub residual: f64,
}

/// A finite family of d×d Kraus operators.
#[derive(Debug, Clone)]
pub struct KrausSet {
    d: HilbertDim,
    ops: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(d: HilbertDim, ops: Vec<ComplexMatrix>) -> Result<Self> {
        let n = d.get();
        for v in &ops {
            if v.shape() != (n, n) {
                return Err(Error::Shape(format!(
                    "Kraus operator is {}x{}, expected {n}x{n}",
                    v.rows(),
                    v.cols()
                )));
            }
        }
        Ok(Self { d, ops })
    }

    pub fn dim(&self) -> HilbertDim {
        self.d
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.ops.iter()
    }

    pub fn get(&self, j: usize) -> &ComplexMatrix {
        &self.ops[j]
    }

    /// Evaluate Σ_j V_j†·a·V_j directly.
    pub fn conjugation(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.d.get();
        let mut acc = ComplexMatrix::zeros(n, n);
        for v in &self.ops {
            acc = acc.add(&v.adjoint().mat_mul(a)?.mat_mul(v)?);
        }
        Ok(acc)
    }
}

/// Generator data in Lindblad form: L(A) = Σ_j V_j†·A·V_j + G†·A + A·G.
#[derive(Debug, Clone)]
pub struct LindbladForm {
    pub kraus: KrausSet,
    pub g: ComplexMatrix,
}

impl LindbladForm {
    pub fn new(kraus: KrausSet, g: ComplexMatrix) -> Result<Self> {
        let n = kraus.dim().get();
        if g.shape() != (n, n) {
            return Err(Error::Shape(format!(
                "G is {}x{}, expected {n}x{n}",
                g.rows(),
                g.cols()
            )));
        }
        Ok(Self { kraus, g })
    }

    pub fn dim(&self) -> HilbertDim {
        self.kraus.dim()
    }

    /// Evaluate L(A) from the defining formula.
    pub fn evaluate(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let phi = self.kraus.conjugation(a)?;
        let ga = self.g.adjoint().mat_mul(a)?;
        let ag = a.mat_mul(&self.g)?;
        Ok(phi.add(&ga).add(&ag))
    }
}

/// Build the generator superoperator for a Lindblad form:
/// Σ sandwich(V_j†, V_j) + sandwich(G†, I) + sandwich(I, G).
pub fn lindblad_generator(lf: &LindbladForm) -> Result<Superoperator> {
    let n = lf.dim().get();
    if lf.kraus.is_empty() && lf.g.max_abs() == 0.0 {
        return Ok(Superoperator::zero(lf.dim()));
    }
    let id = ComplexMatrix::identity(n);
    let mut terms: Vec<(ComplexMatrix, ComplexMatrix)> = lf
        .kraus
        .iter()
        .map(|v| (v.adjoint(), v.clone()))
        .collect();
    terms.push((lf.g.adjoint(), id.clone()));
    terms.push((id, lf.g.clone()));
    Superoperator::from_sandwich_sum(terms)
}

/// Choose G so the generator annihilates the identity:
/// G = −½·Σ V_j†V_j − i·h with h Hermitian. Then L(1) = 0 and h enters as
/// the Hamiltonian part i[h, ·].
pub fn markovian_completion(kraus: KrausSet, h: &ComplexMatrix) -> Result<LindbladForm> {
    let n = kraus.dim().get();
    if h.shape() != (n, n) {
        return Err(Error::Shape(format!(
            "Hamiltonian is {}x{}, expected {n}x{n}",
            h.rows(),
            h.cols()
        )));
    }
    let deviation = h.sub(&h.adjoint()).max_abs();
    let tol = 1e-12 * h.max_abs().max(1.0);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tol });
    }
    let mut sum = ComplexMatrix::zeros(n, n);
    for v in kraus.iter() {
        sum = sum.add(&v.adjoint().mat_mul(v)?);
    }
    let g = sum
        .scale(Complex64::new(-0.5, 0.0))
        .add(&h.scale(Complex64::new(0.0, -1.0)));
    LindbladForm::new(kraus, g)
}

/// Stinespring dilation data: v stacks the Kraus operators vertically and
/// π(A) = I_m ⊗ A is the block-diagonal representation, so that
/// v†·π(A)·v = Σ_j V_j†·A·V_j.
#[derive(Debug, Clone)]
pub struct StinespringPair {
    v: ComplexMatrix,
    copies: usize,
    d: HilbertDim,
}

impl StinespringPair {
    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// π(A) = I_m ⊗ A.
    pub fn pi(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.d.get();
        if a.shape() != (n, n) {
            return Err(Error::Shape(format!(
                "π expects a {n}x{n} operator, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        Ok(ComplexMatrix::identity(self.copies).kron(a))
    }

    /// v†·π(A)·v, the dilated form of the Kraus sum.
    pub fn dilated(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.v.adjoint().mat_mul(&self.pi(a)?)?.mat_mul(&self.v)
    }
}

/// Stack a nonempty Kraus set into its Stinespring pair.
pub fn stinespring_from_kraus(kraus: &KrausSet) -> Result<StinespringPair> {
    if kraus.is_empty() {
        return Err(Error::Domain("Stinespring stacking needs a nonempty Kraus set".into()));
    }
    let n = kraus.dim().get();
    let m = kraus.len();
    let v = ComplexMatrix::from_fn(m * n, n, |i, j| kraus.get(i / n).get(i % n, j));
    Ok(StinespringPair { v, copies: m, d: kraus.dim() })
}

/// Verify the sesquilinear generator identity in both of its renderings.
///
/// With G̃ = G† (so that L(A) = V†π(A)V + G̃A + AG̃†), checks for every
/// matrix unit A and basis vectors x, y:
///
///   ⟨x, L(A)y⟩ = ⟨Vx, π(A)Vy⟩ + ⟨x, G̃Ay⟩ + ⟨G̃A*x, y⟩      (form identity)
///   ⟨x, L(A)y⟩ = ⟨x, (V†π(A)V + G̃A + AG̃†)y⟩               (operator identity)
///
/// and that the two right-hand sides agree with each other.
pub fn gks_form_check(lf: &LindbladForm, tol: f64) -> Result<VerificationReport> {
    let n = lf.dim().get();
    let mut report = VerificationReport::new("gks-form");

    // An empty Kraus set has no Stinespring dilation; use a single zero
    // Kraus operator, which represents the same (zero) map.
    let kraus = if lf.kraus.is_empty() {
        KrausSet::new(lf.dim(), vec![ComplexMatrix::zeros(n, n)])?
    } else {
        lf.kraus.clone()
    };
    let pair = stinespring_from_kraus(&kraus)?;
    let g_tilde = lf.g.adjoint();

    let mut worst_form = 0.0f64;
    let mut worst_op = 0.0f64;
    let mut worst_mutual = 0.0f64;

    for p in 0..n {
        for q in 0..n {
            let a = ComplexMatrix::matrix_unit(n, p, q);
            let la = lf.evaluate(&a)?;
            let dilated = pair.dilated(&a)?;
            let ga = g_tilde.mat_mul(&a)?;
            let ag = a.mat_mul(&g_tilde.adjoint())?;
            let op_rhs = dilated.add(&ga).add(&ag);
            let ga_star = g_tilde.mat_mul(&a.adjoint())?;

            for xi in 0..n {
                for yi in 0..n {
                    let x = crate::matrix::ComplexVector::basis(n, xi);
                    let y = crate::matrix::ComplexVector::basis(n, yi);

                    let lhs = x.inner(&la.mul_vector(&y)?);

                    // form rendering: ⟨Vx, π(A)Vy⟩ + ⟨x, G̃Ay⟩ + ⟨G̃A*x, y⟩
                    let vx = pair.v().mul_vector(&x)?;
                    let vy = pair.v().mul_vector(&y)?;
                    let t1 = vx.inner(&pair.pi(&a)?.mul_vector(&vy)?);
                    let t2 = x.inner(&ga.mul_vector(&y)?);
                    let t3 = ga_star.mul_vector(&x)?.inner(&y);
                    let form_rhs = t1 + t2 + t3;

                    let op_val = x.inner(&op_rhs.mul_vector(&y)?);

                    worst_form = worst_form.max((lhs - form_rhs).norm());
                    worst_op = worst_op.max((lhs - op_val).norm());
                    worst_mutual = worst_mutual.max((form_rhs - op_val).norm());
                }
            }
        }
    }

    report.record("sesquilinear_form_residual", worst_form, tol);
    report.record("operator_form_residual", worst_op, tol);
    report.record("renderings_mutual_residual", worst_mutual, tol);
    report.meta("dim", n);
    report.meta("kraus_terms", lf.kraus.len());
    Ok(report)
}

/// Extract a Kraus set from a Hermitian PSD Choi matrix. Eigenvalues below
/// `tol` are dropped; eigenvalues below −`tol` reject the map as not
/// completely positive.
pub fn kraus_from_choi(c: &ComplexMatrix, tol: f64) -> Result<KrausSet> {
    if !c.is_square() {
        return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
    }
    let nn = c.rows();
    let n = (nn as f64).sqrt().round() as usize;
    if n * n != nn {
        return Err(Error::Shape(format!("Choi matrix size {nn} is not a perfect square")));
    }
    let d = HilbertDim::new(n)?;
    let herm = c.add(&c.adjoint()).scale(Complex64::new(0.5, 0.0));
    let (vals, vecs) = herm.hermitian_eigen()?;
    if let Some(&min) = vals.first() {
        if min < -tol {
            return Err(Error::NotCompletelyPositive { min_eigenvalue: min });
        }
    }
    let mut ops = Vec::new();
    for (k, &lambda) in vals.iter().enumerate() {
        if lambda <= tol {
            continue;
        }
        let scale = lambda.sqrt();
        // Choi eigenvector ψ (indexed ψ[i·d + r]) unflattens to L with
        // L[r,i] = ψ[i·d + r]; the map is Σ L·A·L†, so the Kraus operator
        // in the V†AV convention is V = L†.
        let l = ComplexMatrix::from_fn(n, n, |r, i| {
            vecs.get(i * n + r, k) * Complex::new(scale, 0.0)
        });
        ops.push(l.adjoint());
    }
    KrausSet::new(d, ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn d(n: usize) -> HilbertDim {
        HilbertDim::new(n).unwrap()
    }

    /// Dephasing generator on a qubit: kraus = {σ_z}, G = −½I.
    fn dephasing() -> LindbladForm {
        let kraus = KrausSet::new(d(2), vec![pauli::z()]).unwrap();
        markovian_completion(kraus, &ComplexMatrix::zeros(2, 2)).unwrap()
    }

    #[test]
    fn sandwich_identity_and_random() {
        let id = Superoperator::identity(d(2));
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        assert!(id.apply(&a).unwrap().sub(&a).max_abs() <= 1e-15);

        // unitary conjugation fixes the identity
        let h = ComplexMatrix::random_hermitian(2, &mut rng);
        let u = h.scale(c(0.0, 1.0)).expm().unwrap();
        let conj = Superoperator::from_sandwich(u.clone(), u.adjoint()).unwrap();
        assert!(conj.apply(&ComplexMatrix::identity(2)).unwrap()
            .sub(&ComplexMatrix::identity(2)).op_norm() <= 1e-12);

        // apply matches the direct product
        let v = ComplexMatrix::random_standard(2, 2, &mut rng);
        let s = Superoperator::from_sandwich(v.clone(), v.adjoint()).unwrap();
        let got = s.apply(&a).unwrap();
        let want = v.mat_mul(&a).unwrap().mat_mul(&v.adjoint()).unwrap();
        assert!(got.sub(&want).max_abs() <= 1e-13);
    }

    #[test]
    fn sandwich_matrix_is_kron() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let l = ComplexMatrix::random_standard(2, 2, &mut rng);
        let r = ComplexMatrix::random_standard(2, 2, &mut rng);
        let s = Superoperator::from_sandwich(l.clone(), r.clone()).unwrap();
        let want = r.transpose().kron(&l);
        assert!(s.matrix().unwrap().sub(&want).max_abs() <= 1e-14);

        // dense and sandwich application agree
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        let dense = s.to_dense().unwrap();
        assert!(dense.apply(&a).unwrap().sub(&s.apply(&a).unwrap()).max_abs() <= 1e-13);
    }

    #[test]
    fn apply_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let s = Superoperator::dense(d(2), ComplexMatrix::random_standard(4, 4, &mut rng)).unwrap();
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        let b = ComplexMatrix::random_standard(2, 2, &mut rng);
        let alpha = c(1.3, -0.2);
        let lhs = s.apply(&a.scale(alpha).add(&b)).unwrap();
        let rhs = s.apply(&a).unwrap().scale(alpha).add(&s.apply(&b).unwrap());
        assert!(lhs.sub(&rhs).max_abs() <= 1e-13);

        let zero = Superoperator::zero(d(2));
        assert!(zero.apply(&a).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn adjoint_action_matches_hs_duality() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let v = ComplexMatrix::random_standard(3, 3, &mut rng);
        let s = Superoperator::from_sandwich_sum(vec![
            (v.clone(), v.adjoint()),
            (ComplexMatrix::random_standard(3, 3, &mut rng), ComplexMatrix::random_standard(3, 3, &mut rng)),
        ])
        .unwrap();
        let a = ComplexMatrix::random_standard(3, 3, &mut rng);
        let b = ComplexMatrix::random_standard(3, 3, &mut rng);
        // ⟨B, s(A)⟩ == ⟨s†(B), A⟩
        let lhs = hs_inner(&b, &s.apply(&a).unwrap());
        let rhs = hs_inner(&s.apply_adjoint(&b).unwrap(), &a);
        assert!((lhs - rhs).norm() <= 1e-12);
    }

    #[test]
    fn choi_of_identity_map() {
        let id = Superoperator::identity(d(2));
        let choi = id.choi().unwrap();
        let eigs = choi.hermitian_eigenvalues().unwrap();
        assert_relative_eq!(eigs[3], 2.0, epsilon = 1e-12);
        for e in &eigs[..3] {
            assert!(e.abs() <= 1e-12);
        }

        let zero = Superoperator::zero(d(2));
        assert!(zero.choi().unwrap().max_abs() == 0.0);
    }

    #[test]
    fn choi_of_sandwich_is_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let v = ComplexMatrix::random_standard(2, 2, &mut rng);
        let s = Superoperator::from_sandwich(v.clone(), v.adjoint()).unwrap();
        // A ↦ V A V† in (left, right) form is (V, V†): Choi rank 1
        let eigs = s.choi().unwrap().hermitian_eigenvalues().unwrap();
        assert!(eigs[2].abs() <= 1e-10, "second largest {} should vanish", eigs[2]);
        assert!(eigs[3] > 0.0);
    }

    #[test]
    fn choi_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let s1 = Superoperator::dense(d(2), ComplexMatrix::random_standard(4, 4, &mut rng)).unwrap();
        let s2 = Superoperator::dense(d(2), ComplexMatrix::random_standard(4, 4, &mut rng)).unwrap();
        let alpha = c(0.7, 0.1);
        let beta = c(-0.3, 0.9);
        let combo = s1.scale(alpha).add(&s2.scale(beta)).unwrap();
        let lhs = combo.choi().unwrap();
        let rhs = s1.choi().unwrap().scale(alpha).add(&s2.choi().unwrap().scale(beta));
        assert!(lhs.sub(&rhs).max_abs() <= 1e-12);
    }

    /// The transpose map as a dense superoperator: a swap on vec indices.
    fn transpose_superop(n: usize) -> Superoperator {
        let m = ComplexMatrix::from_fn(n * n, n * n, |row, col| {
            if col == (row % n) * n + row / n { Complex64::ONE } else { Complex64::ZERO }
        });
        Superoperator::dense(HilbertDim::new(n).unwrap(), m).unwrap()
    }

    #[test]
    fn transpose_map_is_not_cp() {
        let t = transpose_superop(2);
        let rep = t.is_completely_positive(1e-10).unwrap();
        assert!(!rep.completely_positive);
        assert_relative_eq!(rep.min_eigenvalue, -1.0, epsilon = 1e-10);
    }

    #[test]
    fn unitary_conjugation_is_cp_and_unital() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let h = ComplexMatrix::random_hermitian(3, &mut rng);
        let u = h.scale(c(0.0, 1.0)).expm().unwrap();
        let s = Superoperator::from_sandwich(u.adjoint(), u.clone()).unwrap();
        let cp = s.is_completely_positive(1e-10).unwrap();
        assert!(cp.completely_positive);
        let un = s.is_unital(1e-10).unwrap();
        assert!(un.unital, "residual {}", un.residual);
    }

    #[test]
    fn truncated_isometry_is_not_unital() {
        // V kills the top basis vector: V V† ≠ I
        let v = ComplexMatrix::from_rows_vec(
            2,
            2,
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let s = Superoperator::from_sandwich(v.clone(), v.adjoint()).unwrap();
        let un = s.is_unital(1e-10).unwrap();
        assert!(!un.unital);
    }

    #[test]
    fn gram_and_dense_choi_minima_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        let v1 = ComplexMatrix::random_standard(3, 3, &mut rng);
        let v2 = ComplexMatrix::random_standard(3, 3, &mut rng);
        let kraus = KrausSet::new(d(3), vec![v1, v2]).unwrap();
        let s = Superoperator::from_kraus(&kraus).unwrap();
        let via_gram = s.min_choi_eigenvalue().unwrap();
        let via_dense = {
            let c = s.to_dense().unwrap().choi().unwrap();
            let h = c.add(&c.adjoint()).scale(super::Complex64::new(0.5, 0.0));
            h.hermitian_eigenvalues().unwrap()[0]
        };
        assert!((via_gram - via_dense).abs() <= 1e-10,
            "gram {via_gram} vs dense {via_dense}");
    }

    #[test]
    fn rank_one_kraus_term_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(49);
        let u = crate::matrix::ComplexVector::random_standard(3, &mut rng);
        let v = crate::matrix::ComplexVector::random_standard(3, &mut rng);
        let w = ComplexMatrix::random_standard(3, 3, &mut rng);
        let s = Superoperator::from_sandwich(w.adjoint(), w.clone())
            .unwrap()
            .with_rank_one_kraus(u.clone(), v.clone())
            .unwrap();
        let dense = s.to_dense().unwrap();
        let a = ComplexMatrix::random_standard(3, 3, &mut rng);
        assert!(s.apply(&a).unwrap().sub(&dense.apply(&a).unwrap()).max_abs() <= 1e-12);
        assert!(s
            .apply_adjoint(&a)
            .unwrap()
            .sub(&dense.apply_adjoint(&a).unwrap())
            .max_abs()
            <= 1e-12);

        // Kraus-paired sum: Gram route agrees with the dense Choi
        let via_gram = s.min_choi_eigenvalue().unwrap();
        let c = dense.choi().unwrap();
        let h = c.add(&c.adjoint()).scale(c_im_zero(0.5));
        let via_dense = h.hermitian_eigenvalues().unwrap()[0];
        assert!((via_gram - via_dense).abs() <= 1e-10, "gram {via_gram} dense {via_dense}");
    }

    fn c_im_zero(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kraus_from_choi_identity_map() {
        let id = Superoperator::identity(d(2));
        let kraus = kraus_from_choi(&id.choi().unwrap(), KRAUS_TRUNCATION_TOL).unwrap();
        assert_eq!(kraus.len(), 1);
        // single Kraus equal to I up to global phase; reconstruction exact
        let rebuilt = Superoperator::from_kraus(&kraus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        assert!(rebuilt.apply(&a).unwrap().sub(&a).op_norm() <= 1e-10);
    }

    #[test]
    fn kraus_from_choi_unitary_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let h = ComplexMatrix::random_hermitian(2, &mut rng);
        let u = h.scale(c(0.0, 1.0)).expm().unwrap();
        // Heisenberg conjugation by u: A ↦ u† A u, Kraus set {u}
        let s = Superoperator::from_sandwich(u.adjoint(), u.clone()).unwrap();
        let kraus = kraus_from_choi(&s.choi().unwrap(), KRAUS_TRUNCATION_TOL).unwrap();
        assert_eq!(kraus.len(), 1);
        // |Kraus| == |u| entrywise up to a global phase
        let k = kraus.get(0);
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(k.get(i, j).norm(), u.get(i, j).norm(), epsilon = 1e-10);
            }
        }
        let rebuilt = Superoperator::from_kraus(&kraus).unwrap();
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        assert!(rebuilt.apply(&a).unwrap().sub(&s.apply(&a).unwrap()).op_norm() <= 1e-10);
    }

    #[test]
    fn kraus_from_choi_dephasing_channel() {
        // A ↦ ½(A + σ_z A σ_z): two Kraus operators
        let half = c(0.5, 0.0);
        let id2 = ComplexMatrix::identity(2);
        let s = Superoperator::from_sandwich_sum(vec![
            (id2.scale(half), id2.clone()),
            (pauli::z().scale(half), pauli::z()),
        ])
        .unwrap();
        let kraus = kraus_from_choi(&s.choi().unwrap(), KRAUS_TRUNCATION_TOL).unwrap();
        assert_eq!(kraus.len(), 2);
        let rebuilt = Superoperator::from_kraus(&kraus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        assert!(rebuilt.apply(&a).unwrap().sub(&s.apply(&a).unwrap()).op_norm() <= 1e-10);
    }

    #[test]
    fn kraus_from_choi_rejects_non_cp() {
        let t = transpose_superop(2);
        assert!(matches!(
            kraus_from_choi(&t.choi().unwrap(), 1e-10),
            Err(Error::NotCompletelyPositive { .. })
        ));
    }

    #[test]
    fn kraus_round_trip_on_random_cp_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let kraus = KrausSet::new(
            d(2),
            vec![
                ComplexMatrix::random_standard(2, 2, &mut rng),
                ComplexMatrix::random_standard(2, 2, &mut rng),
                ComplexMatrix::random_standard(2, 2, &mut rng),
            ],
        )
        .unwrap();
        let s = Superoperator::from_kraus(&kraus).unwrap();
        let extracted = kraus_from_choi(&s.choi().unwrap(), 1e-12).unwrap();
        let rebuilt = Superoperator::from_kraus(&extracted).unwrap();
        let diff = rebuilt.matrix().unwrap().sub(&s.matrix().unwrap()).op_norm();
        assert!(diff <= 1e-9, "round-trip gap {diff}");
    }

    #[test]
    fn lindblad_generator_dephasing_closed_form() {
        let lf = dephasing();
        let gen = lindblad_generator(&lf).unwrap();
        // L(σ_x) = σ_z σ_x σ_z − σ_x = −2 σ_x
        let lx = gen.apply(&pauli::x()).unwrap();
        assert!(lx.sub(&pauli::x().scale(c(-2.0, 0.0))).op_norm() <= 1e-12);
        // L(I) = 0
        assert!(gen.apply(&ComplexMatrix::identity(2)).unwrap().op_norm() <= 1e-12);
        // zero generator from nothing
        let zero_lf = LindbladForm::new(
            KrausSet::new(d(2), vec![]).unwrap(),
            ComplexMatrix::zeros(2, 2),
        )
        .unwrap();
        let zero_gen = lindblad_generator(&zero_lf).unwrap();
        assert!(zero_gen.apply(&pauli::x()).unwrap().op_norm() == 0.0);
    }

    #[test]
    fn lindblad_generator_matches_direct_formula_on_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let kraus = KrausSet::new(
            d(3),
            vec![
                ComplexMatrix::random_standard(3, 3, &mut rng),
                ComplexMatrix::random_standard(3, 3, &mut rng),
            ],
        )
        .unwrap();
        let lf = LindbladForm::new(kraus, ComplexMatrix::random_standard(3, 3, &mut rng)).unwrap();
        let gen = lindblad_generator(&lf).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let a = ComplexMatrix::matrix_unit(3, i, j);
                let got = gen.apply(&a).unwrap();
                let want = lf.evaluate(&a).unwrap();
                assert!(got.sub(&want).max_abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn markovian_completion_annihilates_identity() {
        // kraus = {σ_z}, h = 0 → G = −½I
        let lf = dephasing();
        assert!(lf.g.sub(&ComplexMatrix::identity(2).scale(c(-0.5, 0.0))).max_abs() <= 1e-15);
        assert!(lf.evaluate(&ComplexMatrix::identity(2)).unwrap().op_norm() <= 1e-12);

        // purely Hamiltonian: kraus = {}, G = −iH, L(A) = i[H,A]
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let h = ComplexMatrix::random_hermitian(2, &mut rng);
        let lf = markovian_completion(KrausSet::new(d(2), vec![]).unwrap(), &h).unwrap();
        assert!(lf.evaluate(&ComplexMatrix::identity(2)).unwrap().op_norm() <= 1e-12);
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        let la = lf.evaluate(&a).unwrap();
        let comm = h.mat_mul(&a).unwrap().sub(&a.mat_mul(&h).unwrap()).scale(c(0.0, 1.0));
        assert!(la.sub(&comm).op_norm() <= 1e-12);

        // random kraus d=3
        let kraus = KrausSet::new(
            d(3),
            vec![
                ComplexMatrix::random_standard(3, 3, &mut rng),
                ComplexMatrix::random_standard(3, 3, &mut rng),
            ],
        )
        .unwrap();
        let lf = markovian_completion(kraus, &ComplexMatrix::zeros(3, 3)).unwrap();
        assert!(lf.evaluate(&ComplexMatrix::identity(3)).unwrap().op_norm() <= 1e-12);
    }

    #[test]
    fn markovian_completion_rejects_non_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let bad = ComplexMatrix::random_standard(2, 2, &mut rng);
        assert!(matches!(
            markovian_completion(KrausSet::new(d(2), vec![]).unwrap(), &bad),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn stinespring_reproduces_kraus_sum() {
        // single Kraus V = I
        let kraus = KrausSet::new(d(2), vec![ComplexMatrix::identity(2)]).unwrap();
        let pair = stinespring_from_kraus(&kraus).unwrap();
        assert_eq!(pair.v().shape(), (2, 2));
        let a = pauli::x();
        assert!(pair.dilated(&a).unwrap().sub(&a).op_norm() <= 1e-14);

        // {σ_x, σ_z} on E_11
        let kraus = KrausSet::new(d(2), vec![pauli::x(), pauli::z()]).unwrap();
        let pair = stinespring_from_kraus(&kraus).unwrap();
        let e11 = ComplexMatrix::matrix_unit(2, 0, 0);
        let want = kraus.conjugation(&e11).unwrap();
        assert!(pair.dilated(&e11).unwrap().sub(&want).op_norm() <= 1e-12);

        // random 3-element Kraus, all matrix units
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let kraus = KrausSet::new(
            d(2),
            (0..3).map(|_| ComplexMatrix::random_standard(2, 2, &mut rng)).collect(),
        )
        .unwrap();
        let pair = stinespring_from_kraus(&kraus).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let a = ComplexMatrix::matrix_unit(2, i, j);
                let want = kraus.conjugation(&a).unwrap();
                assert!(pair.dilated(&a).unwrap().sub(&want).max_abs() <= 1e-12);
            }
        }

        assert!(matches!(
            stinespring_from_kraus(&KrausSet::new(d(2), vec![]).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gks_form_check_cases() {
        // zero generator
        let zero_lf = LindbladForm::new(
            KrausSet::new(d(2), vec![]).unwrap(),
            ComplexMatrix::zeros(2, 2),
        )
        .unwrap();
        let rep = gks_form_check(&zero_lf, 1e-14).unwrap();
        assert!(rep.pass, "{rep}");
        assert!(rep.max_residual() == 0.0);

        // dephasing
        let rep = gks_form_check(&dephasing(), 1e-12).unwrap();
        assert!(rep.pass, "{rep}");

        // random d=3, two Kraus terms
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let kraus = KrausSet::new(
            d(3),
            vec![
                ComplexMatrix::random_standard(3, 3, &mut rng),
                ComplexMatrix::random_standard(3, 3, &mut rng),
            ],
        )
        .unwrap();
        let lf = LindbladForm::new(kraus, ComplexMatrix::random_standard(3, 3, &mut rng)).unwrap();
        let rep = gks_form_check(&lf, 1e-11).unwrap();
        assert!(rep.pass, "{rep}");
    }

    #[test]
    fn generator_exponentials_stay_cp_and_unital() {
        let mut rng = ChaCha8Rng::seed_from_u64(48);
        let kraus = KrausSet::new(
            d(2),
            vec![ComplexMatrix::random_standard(2, 2, &mut rng)],
        )
        .unwrap();
        let lf = markovian_completion(kraus, &ComplexMatrix::random_hermitian(2, &mut rng)).unwrap();
        let gen = lindblad_generator(&lf).unwrap();
        let lm = gen.matrix().unwrap();
        for t in [0.01, 0.1, 1.0] {
            let tl = lm.scale(c(t, 0.0)).expm().unwrap();
            let s = Superoperator::dense(d(2), tl).unwrap();
            let cp = s.is_completely_positive(1e-9).unwrap();
            assert!(cp.completely_positive, "t={t}: min eig {}", cp.min_eigenvalue);
            let un = s.is_unital(1e-9).unwrap();
            assert!(un.unital, "t={t}: residual {}", un.residual);
        }
        // unitality propagates out to t = 10
        let tl = lm.scale(c(10.0, 0.0)).expm().unwrap();
        let s = Superoperator::dense(d(2), tl).unwrap();
        assert!(s.is_unital(1e-9).unwrap().unital);
    }
}
