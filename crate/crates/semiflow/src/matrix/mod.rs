//! Dense complex linear algebra: the carrier type for every operator in the
//! crate, plus the handful of factorizations the higher layers need.
//!
//! Everything is plain `Complex<f64>`. Values are immutable after
//! construction and all operations are pure, so they are safe to share
//! across threads.

mod expm;
pub mod text;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Complex scalar used throughout.
pub type Complex64 = Complex<f64>;

/// Condition-number estimate above which [`ComplexMatrix::solve`] refuses to
/// return an answer.
pub const SOLVE_COND_LIMIT: f64 = 1e12;

/// Hermitian deviation accepted by [`ComplexMatrix::hermitian_eigenvalues`]
/// before symmetrization.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex matrix with entries in row-major logical order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    inner: DVector<Complex64>,
}

impl ComplexMatrix {
    /// Build from a row-major list of entries. Rejects NaN/Inf entries and
    /// entry counts that do not match `rows * cols`.
    pub fn from_rows_vec(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("matrix dimensions {rows}x{cols} must be positive")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(format!("matrix entry {bad}")));
        }
        Ok(Self { inner: DMatrix::from_row_iterator(rows, cols, entries) })
    }

    /// Build from a closure over (row, col) indices.
    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self { inner: DMatrix::from_fn(rows, cols, f) }
    }

    /// Real-valued convenience constructor (row-major).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { inner: DMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: DMatrix::identity(n, n) }
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex64::ZERO })
    }

    /// Matrix unit E_ij (1 in row i, column j, zero elsewhere).
    pub fn matrix_unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        m[(i, j)] = Complex64::ONE;
        Self { inner: m }
    }

    /// Matrix with independent standard complex Gaussian entries
    /// (variance 1: real and imaginary parts are N(0, 1/2)).
    pub fn random_standard(rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_fn(rows, cols, |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re * scale, im * scale)
        })
    }

    /// Random Hermitian matrix, entries O(1).
    pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> Self {
        let g = Self::random_standard(n, n, rng);
        g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    /// Matrix product. Errors when the inner dimensions disagree.
    pub fn mat_mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols() != other.rows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(Self { inner: &self.inner * &other.inner })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        Self { inner: self.inner.adjoint() }
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> ComplexMatrix {
        Self { inner: self.inner.transpose() }
    }

    /// Entrywise conjugate.
    pub fn conjugate(&self) -> ComplexMatrix {
        Self { inner: self.inner.map(|z| z.conj()) }
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), other.shape(), "add: shape mismatch");
        Self { inner: &self.inner + &other.inner }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), other.shape(), "sub: shape mismatch");
        Self { inner: &self.inner - &other.inner }
    }

    pub fn scale(&self, z: Complex64) -> ComplexMatrix {
        Self { inner: self.inner.map(|w| w * z) }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.diagonal().iter().sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Matrix exponential via scaling-and-squaring with fixed-order Padé
    /// approximants (Higham's thresholds). Relative error stays at the
    /// 1e-13 level for operator norms up to ~10.
    pub fn expm(&self) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        Ok(Self { inner: expm::expm(&self.inner) })
    }

    /// Solve a·x = b column-by-column via pivoted LU. Errors with a
    /// condition estimate when `a` is singular to working precision
    /// (condition estimate above [`SOLVE_COND_LIMIT`]).
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        if self.rows() != b.rows() {
            return Err(Error::Shape(format!(
                "solve: lhs is {}x{} but rhs has {} rows",
                self.rows(),
                self.cols(),
                b.rows()
            )));
        }
        let sv = self.inner.clone().singular_values();
        let smax = sv.iter().copied().fold(0.0, f64::max);
        let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        if !cond.is_finite() || cond > SOLVE_COND_LIMIT {
            return Err(Error::Singular { cond });
        }
        let lu = self.inner.clone().lu();
        match lu.solve(&b.inner) {
            Some(x) => Ok(Self { inner: x }),
            None => Err(Error::Singular { cond }),
        }
    }

    /// Operator norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        self.inner.clone().singular_values().iter().copied().fold(0.0, f64::max)
    }

    /// Eigenvalues of a Hermitian matrix, ascending. The input is
    /// symmetrized to (a + a†)/2 first; deviations beyond
    /// [`HERMITIAN_TOL`] (relative to the matrix scale) are rejected.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.hermitian_eigen()?.0)
    }

    /// Hermitian eigendecomposition: ascending eigenvalues plus the matrix
    /// whose columns are the corresponding orthonormal eigenvectors.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let deviation = self.sub(&self.adjoint()).max_abs();
        let tol = HERMITIAN_TOL * self.max_abs().max(1.0);
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        let sym = self.add(&self.adjoint()).scale(Complex64::new(0.5, 0.0));
        let eig = nalgebra::SymmetricEigen::new(sym.inner);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let n = values.len();
        let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok((values, vectors))
    }

    /// Kronecker product: block (i,j) equals a[i,j]·b.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        Self { inner: self.inner.kronecker(&other.inner) }
    }

    /// Column j as a vector.
    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector { inner: DVector::from_column_slice(self.inner.column(j).as_slice()) }
    }

    /// Apply to a vector.
    pub fn mul_vector(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols() != v.len() {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows(),
                self.cols(),
                v.len()
            )));
        }
        Ok(ComplexVector { inner: &self.inner * &v.inner })
    }

    /// All entries finite?
    pub fn is_finite(&self) -> bool {
        self.inner.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }
}

impl ComplexVector {
    pub fn from_vec(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Shape("vector must be nonempty".into()));
        }
        if let Some(bad) = entries.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(format!("vector entry {bad}")));
        }
        Ok(Self { inner: DVector::from_vec(entries) })
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> Complex64) -> Self {
        Self { inner: DVector::from_fn(len, |i, _| f(i)) }
    }

    pub fn zeros(len: usize) -> Self {
        Self { inner: DVector::zeros(len) }
    }

    /// Standard basis vector e_i.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = DVector::zeros(len);
        v[i] = Complex64::ONE;
        Self { inner: v }
    }

    pub fn random_standard(len: usize, rng: &mut impl Rng) -> Self {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        let entries = (0..len)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re * scale, im * scale)
            })
            .collect();
        Self { inner: DVector::from_vec(entries) }
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.len() == 0
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.inner[i]
    }

    pub fn norm(&self) -> f64 {
        self.inner.norm()
    }

    pub fn normalized(&self) -> ComplexVector {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        Self { inner: self.inner.map(|z| z / n) }
    }

    /// Inner product ⟨self, other⟩, conjugate-linear in the first slot.
    pub fn inner(&self, other: &ComplexVector) -> Complex64 {
        assert_eq!(self.len(), other.len(), "inner: length mismatch");
        self.inner.dotc(&other.inner)
    }

    /// Outer product |self⟩⟨other|.
    pub fn outer(&self, other: &ComplexVector) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.len(), other.len(), |i, j| {
            self.inner[i] * other.inner[j].conj()
        })
    }

    pub fn scale(&self, z: Complex64) -> ComplexVector {
        Self { inner: self.inner.map(|w| w * z) }
    }

    pub fn add(&self, other: &ComplexVector) -> ComplexVector {
        assert_eq!(self.len(), other.len(), "add: length mismatch");
        Self { inner: &self.inner + &other.inner }
    }

    pub fn sub(&self, other: &ComplexVector) -> ComplexVector {
        assert_eq!(self.len(), other.len(), "sub: length mismatch");
        Self { inner: &self.inner - &other.inner }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.inner.iter()
    }
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

    /// Naive triple-loop product, the independent oracle for mat_mul.
    fn naive_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum()
        })
    }

    /// Truncated Taylor series, the independent oracle for expm.
    fn taylor_expm(a: &ComplexMatrix, terms: usize) -> ComplexMatrix {
        let n = a.rows();
        let mut sum = ComplexMatrix::identity(n);
        let mut power = ComplexMatrix::identity(n);
        for k in 1..=terms {
            power = naive_mul(&power, a).scale(c(1.0 / k as f64, 0.0));
            sum = sum.add(&power);
        }
        sum
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(ComplexMatrix::from_rows_vec(2, 2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::from_rows_vec(2, 2, vec![c(f64::NAN, 0.0); 4]).is_err());
        assert!(ComplexMatrix::from_rows_vec(0, 2, vec![]).is_err());
    }

    #[test]
    fn mat_mul_identity_and_nilpotent() {
        let a = ComplexMatrix::from_rows_vec(2, 2, vec![c(1.0, 2.0), c(3.0, 0.0), c(0.0, -1.0), c(4.0, 4.0)]).unwrap();
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.mat_mul(&a).unwrap(), a);

        let n = ComplexMatrix::from_rows_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let n2 = n.mat_mul(&n).unwrap();
        assert_eq!(n2, ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn mat_mul_matches_triple_loop_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = ComplexMatrix::random_standard(4, 4, &mut rng);
        let b = ComplexMatrix::random_standard(4, 4, &mut rng);
        let got = a.mat_mul(&b).unwrap();
        let want = naive_mul(&a, &b);
        assert!(got.sub(&want).max_abs() <= 1e-13);
    }

    #[test]
    fn mat_mul_shape_error() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.mat_mul(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn adjoint_hand_checks() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i3.adjoint(), i3);

        let m = ComplexMatrix::from_rows_vec(2, 2, vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let adj = m.adjoint();
        assert_eq!(adj.get(1, 0), c(0.0, -1.0));
        assert_eq!(adj.get(0, 1), c(0.0, 0.0));
        // involution is exact
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn adjoint_product_is_hermitian_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = ComplexMatrix::random_standard(3, 3, &mut rng);
        let h = a.adjoint().mat_mul(&a).unwrap();
        let sym = h.add(&h.adjoint()).scale(c(0.5, 0.0));
        assert_eq!(sym.adjoint(), sym);
    }

    #[test]
    fn expm_zero_and_diagonal() {
        let z = ComplexMatrix::zeros(3, 3);
        assert!(z.expm().unwrap().sub(&ComplexMatrix::identity(3)).max_abs() == 0.0);

        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        let e = d.expm().unwrap();
        assert_relative_eq!(e.get(0, 0).re, 1f64.exp(), max_relative = 1e-14);
        assert_relative_eq!(e.get(1, 1).re, (-2f64).exp(), max_relative = 1e-14);
        assert!(e.get(0, 1).norm() < 1e-16);
    }

    #[test]
    fn expm_skew_hermitian_is_unitary_and_matches_taylor() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = ComplexMatrix::random_hermitian(4, &mut rng);
        let ih = h.scale(c(0.0, 1.0));
        let u = ih.expm().unwrap();
        let uu = u.adjoint().mat_mul(&u).unwrap();
        assert!(uu.sub(&ComplexMatrix::identity(4)).op_norm() <= 1e-12);

        let oracle = taylor_expm(&ih, 60);
        assert!(u.sub(&oracle).op_norm() <= 1e-12);
    }

    #[test]
    fn expm_large_norm_matches_taylor_of_scaled() {
        // ||a|| ~ 8: exercises the squaring phase.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = ComplexMatrix::random_standard(4, 4, &mut rng).scale(c(4.0, 0.0));
        let e = a.expm().unwrap();
        // oracle: square a 60-term Taylor of a/16 four times
        let small = a.scale(c(1.0 / 16.0, 0.0));
        let mut t = taylor_expm(&small, 60);
        for _ in 0..4 {
            t = naive_mul(&t, &t);
        }
        assert!(e.sub(&t).op_norm() / t.op_norm() <= 1e-12);
    }

    #[test]
    fn expm_rejects_non_square() {
        assert!(matches!(ComplexMatrix::zeros(2, 3).expm(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn solve_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = ComplexMatrix::random_standard(3, 2, &mut rng);
        let x = ComplexMatrix::identity(3).solve(&b).unwrap();
        assert!(x.sub(&b).max_abs() <= 1e-15);

        let two_i = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        let half = two_i.solve(&ComplexMatrix::identity(2)).unwrap();
        assert_relative_eq!(half.get(0, 0).re, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn solve_residual_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = ComplexMatrix::random_standard(5, 5, &mut rng);
        let b = ComplexMatrix::random_standard(5, 3, &mut rng);
        let x = a.solve(&b).unwrap();
        let resid = a.mat_mul(&x).unwrap().sub(&b).op_norm();
        assert!(resid <= 1e-11 * b.op_norm());
    }

    #[test]
    fn solve_singular_reports_condition() {
        let s = ComplexMatrix::from_rows_vec(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        match s.solve(&ComplexMatrix::identity(2)) {
            Err(Error::Singular { cond }) => assert!(cond > SOLVE_COND_LIMIT),
            other => panic!("expected singularity error, got {other:?}"),
        }
    }

    #[test]
    fn op_norm_hand_checks() {
        assert_relative_eq!(ComplexMatrix::identity(5).op_norm(), 1.0, max_relative = 1e-12);
        let d = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(0.0, -4.0)]);
        assert_relative_eq!(d.op_norm(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn op_norm_matches_power_iteration_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = ComplexMatrix::random_standard(6, 6, &mut rng);
        // power iteration on a†a
        let ata = a.adjoint().mat_mul(&a).unwrap();
        let mut v = ComplexVector::random_standard(6, &mut rng).normalized();
        let mut lambda = 0.0;
        for _ in 0..2000 {
            let w = ata.mul_vector(&v).unwrap();
            lambda = w.norm();
            v = w.normalized();
        }
        assert_relative_eq!(a.op_norm(), lambda.sqrt(), max_relative = 1e-8);
    }

    #[test]
    fn hermitian_eigenvalues_hand_checks() {
        let vals = ComplexMatrix::identity(3).hermitian_eigenvalues().unwrap();
        assert_eq!(vals.len(), 3);
        for v in &vals {
            assert_relative_eq!(*v, 1.0, max_relative = 1e-13);
        }

        let d = ComplexMatrix::diagonal(&[c(-1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        let vals = d.hermitian_eigenvalues().unwrap();
        assert_relative_eq!(vals[0], -1.0, epsilon = 1e-13);
        assert!(vals[1].abs() < 1e-13);
        assert_relative_eq!(vals[2], 2.0, epsilon = 1e-13);
    }

    #[test]
    fn hermitian_eigen_reconstruction_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = ComplexMatrix::random_hermitian(5, &mut rng);
        let (vals, q) = h.hermitian_eigen().unwrap();
        let lambda = ComplexMatrix::diagonal(&vals.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>());
        let rebuilt = q.mat_mul(&lambda).unwrap().mat_mul(&q.adjoint()).unwrap();
        assert!(rebuilt.sub(&h).op_norm() <= 1e-10);
        // trace identity
        let sum: f64 = vals.iter().sum();
        assert_relative_eq!(sum, h.trace().re, epsilon = 1e-10);
    }

    #[test]
    fn hermitian_eigen_rejects_non_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = ComplexMatrix::random_standard(4, 4, &mut rng);
        assert!(matches!(a.hermitian_eigenvalues(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn kron_hand_checks() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));

        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let k = d.kron(&i2);
        let want = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(k, want);
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        let b = ComplexMatrix::random_standard(2, 2, &mut rng);
        let cc = ComplexMatrix::random_standard(2, 2, &mut rng);
        let d = ComplexMatrix::random_standard(2, 2, &mut rng);
        let lhs = a.kron(&b).mat_mul(&cc.kron(&d)).unwrap();
        let rhs = a.mat_mul(&cc).unwrap().kron(&b.mat_mul(&d).unwrap());
        assert!(lhs.sub(&rhs).max_abs() <= 1e-13);
    }

    #[test]
    fn vector_basics() {
        let e0 = ComplexVector::basis(3, 0);
        let e1 = ComplexVector::basis(3, 1);
        assert_eq!(e0.inner(&e1), Complex64::ZERO);
        assert_eq!(e0.inner(&e0), Complex64::ONE);

        // conjugate-linear in the first slot
        let x = ComplexVector::from_vec(vec![c(0.0, 1.0)]).unwrap();
        let y = ComplexVector::from_vec(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(x.inner(&y), c(0.0, -1.0));

        let outer = e0.outer(&e1);
        assert_eq!(outer.get(0, 1), Complex64::ONE);
        assert_eq!(outer.get(1, 0), Complex64::ZERO);
    }
}
