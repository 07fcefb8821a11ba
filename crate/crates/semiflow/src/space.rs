//! B(H) for a finite-dimensional H: the column-stacking vectorization
//! isomorphism and the trace-duality functionals behind the weak operator
//! topology.
//!
//! A functional η is stored through its trace-class representative s, with
//! pairing η(T) = tr(s·T). The rank-one choice s = |y⟩⟨x| realizes the WOT
//! seminorm data p_{x,y}(T) = |⟨x, Ty⟩|, with the inner product
//! conjugate-linear in the first slot.

use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix, ComplexVector};

/// Largest supported Hilbert-space dimension.
///
/// Dense d×d work is cheap throughout this range; superoperator matrices
/// (d²×d²) are only materialized up to [`crate::maps::DENSE_DIM_CAP`].
pub const DIM_CAP: usize = 256;

/// Dimension of the underlying Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertDim(usize);

impl HilbertDim {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("Hilbert dimension must be positive".into()));
        }
        if d > DIM_CAP {
            return Err(Error::DimensionCap { d, cap: DIM_CAP });
        }
        Ok(Self(d))
    }

    pub fn get(&self) -> usize {
        self.0
    }

    /// Dimension of B(H) as a vector space.
    pub fn operator_dim(&self) -> usize {
        self.0 * self.0
    }
}

/// A bounded functional on B(H) in trace-duality form: η(T) = tr(s·T).
#[derive(Debug, Clone)]
pub struct Functional {
    s: ComplexMatrix,
}

impl Functional {
    /// Wrap a d×d trace-class representative.
    pub fn from_representative(s: ComplexMatrix) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
        }
        Ok(Self { s })
    }

    /// The rank-one functional η_{x,y} with η(T) = ⟨x, Ty⟩, i.e. s = |y⟩⟨x|.
    pub fn rank_one(x: &ComplexVector, y: &ComplexVector) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Shape(format!(
                "rank-one functional needs equal lengths, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(Self { s: y.outer(x) })
    }

    pub fn representative(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    /// Trace norm of the representative (sum of singular values).
    pub fn trace_norm(&self) -> f64 {
        self.s
            .as_dmatrix()
            .clone()
            .singular_values()
            .iter()
            .sum()
    }

    /// Evaluate the pairing η(T) = tr(s·T).
    pub fn pair(&self, t: &ComplexMatrix) -> Result<Complex64> {
        if t.shape() != self.s.shape() {
            return Err(Error::Shape(format!(
                "pairing a {}x{} functional against a {}x{} operator",
                self.s.rows(),
                self.s.cols(),
                t.rows(),
                t.cols()
            )));
        }
        // tr(s·t) without forming the product
        let mut acc = Complex64::ZERO;
        for i in 0..self.s.rows() {
            for k in 0..self.s.cols() {
                acc += self.s.get(i, k) * t.get(k, i);
            }
        }
        Ok(acc)
    }
}

/// A spanning family of d² functionals on B(H).
#[derive(Debug, Clone)]
pub struct FunctionalBasis {
    d: HilbertDim,
    functionals: Vec<Functional>,
}

/// Largest dimension for which the full d² functional basis is built
/// (d⁴ stored entries).
pub const BASIS_DIM_CAP: usize = 32;

impl FunctionalBasis {
    /// The standard rank-one family η_{e_i, e_j} over the computational
    /// basis, ordered with i major: index i·d + j.
    ///
    /// Panics above [`BASIS_DIM_CAP`]: the family stores d⁴ entries.
    pub fn standard(d: HilbertDim) -> Self {
        let n = d.get();
        assert!(
            n <= BASIS_DIM_CAP,
            "full functional basis is capped at dimension {BASIS_DIM_CAP}, got {n}"
        );
        let mut functionals = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = ComplexVector::basis(n, i);
                let y = ComplexVector::basis(n, j);
                functionals.push(Functional::rank_one(&x, &y).expect("basis lengths agree"));
            }
        }
        Self { d, functionals }
    }

    pub fn dim(&self) -> HilbertDim {
        self.d
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Functional> {
        self.functionals.iter()
    }

    pub fn get(&self, k: usize) -> &Functional {
        &self.functionals[k]
    }

    /// Gram matrix of pairings against the matrix-unit basis of B(H)
    /// (units ordered column-stacking style, E_ij at index j·d + i).
    pub fn gram(&self) -> ComplexMatrix {
        let n = self.d.get();
        let nn = n * n;
        ComplexMatrix::from_fn(self.functionals.len(), nn, |row, col| {
            let (i, j) = (col % n, col / n);
            let unit = ComplexMatrix::matrix_unit(n, i, j);
            self.functionals[row].pair(&unit).expect("dimensions agree")
        })
    }

    /// Reconstruct the unique operator with the given pairings against this
    /// basis, by solving the Gram system in the matrix-unit coordinates.
    pub fn reconstruct(&self, pairings: &[Complex64]) -> Result<ComplexMatrix> {
        if pairings.len() != self.functionals.len() {
            return Err(Error::Shape(format!(
                "{} pairings supplied for a basis of {} functionals",
                pairings.len(),
                self.functionals.len()
            )));
        }
        let gram = self.gram();
        let rhs = ComplexMatrix::from_fn(pairings.len(), 1, |i, _| pairings[i]);
        let coeffs = gram.solve(&rhs)?;
        devectorize(&coeffs.column(0), self.d)
    }

    /// Max over the basis of |η(a)|; zero exactly when a is zero.
    pub fn max_pairing(&self, a: &ComplexMatrix) -> Result<f64> {
        let mut worst = 0.0f64;
        for eta in &self.functionals {
            worst = worst.max(eta.pair(a)?.norm());
        }
        Ok(worst)
    }
}

/// Column-stacking vectorization: entry (i,j) lands at index j·d + i.
pub fn vectorize(a: &ComplexMatrix) -> Result<ComplexVector> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let d = a.rows();
    Ok(ComplexVector::from_fn(d * d, |k| a.get(k % d, k / d)))
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &ComplexVector, d: HilbertDim) -> Result<ComplexMatrix> {
    let n = d.get();
    if v.len() != n * n {
        return Err(Error::Shape(format!(
            "vector of length {} cannot devectorize to {n}x{n}",
            v.len()
        )));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| v.get(j * n + i)))
}

/// The WOT seminorm p_{x,y}(T) = |⟨x, Ty⟩|.
pub fn wot_seminorm(x: &ComplexVector, y: &ComplexVector, t: &ComplexMatrix) -> Result<f64> {
    if x.len() != t.rows() || y.len() != t.cols() {
        return Err(Error::Shape(format!(
            "seminorm of a {}x{} operator against vectors of length {} and {}",
            t.rows(),
            t.cols(),
            x.len(),
            y.len()
        )));
    }
    let ty = t.mul_vector(y)?;
    Ok(x.inner(&ty).norm())
}
