//! Lazy linear-map expressions over superoperators, with a deterministic
//! power-iteration norm estimator.
//!
//! Compositions and linear combinations of semigroup members never have to
//! be materialized: `OpExpr` applies them factor by factor, which is what
//! keeps large discretized grids (d² in the thousands) affordable.

use num_complex::Complex;

use crate::error::Result;
use crate::maps::{hs_inner, Superoperator};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::space::HilbertDim;

/// A sum of scaled compositions of superoperators, applied lazily.
pub enum OpExpr<'a> {
    /// A single superoperator.
    Op(&'a Superoperator),
    /// Composition, applied right to left: Compose([f, g]) is f ∘ g.
    Compose(Vec<OpExpr<'a>>),
    /// Linear combination Σ c_k · expr_k.
    Sum(Vec<(Complex64, OpExpr<'a>)>),
}

impl<'a> OpExpr<'a> {
    pub fn op(s: &'a Superoperator) -> Self {
        OpExpr::Op(s)
    }

    /// f ∘ g.
    pub fn compose(f: OpExpr<'a>, g: OpExpr<'a>) -> Self {
        OpExpr::Compose(vec![f, g])
    }

    /// f − g.
    pub fn difference(f: OpExpr<'a>, g: OpExpr<'a>) -> Self {
        OpExpr::Sum(vec![
            (Complex64::ONE, f),
            (Complex::new(-1.0, 0.0), g),
        ])
    }

    pub fn dim(&self) -> Option<HilbertDim> {
        match self {
            OpExpr::Op(s) => Some(s.dim()),
            OpExpr::Compose(list) => list.iter().find_map(|e| e.dim()),
            OpExpr::Sum(terms) => terms.iter().find_map(|(_, e)| e.dim()),
        }
    }

    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            OpExpr::Op(s) => s.apply(a),
            OpExpr::Compose(list) => {
                let mut acc = a.clone();
                for e in list.iter().rev() {
                    acc = e.apply(&acc)?;
                }
                Ok(acc)
            }
            OpExpr::Sum(terms) => {
                let mut acc = ComplexMatrix::zeros(a.rows(), a.cols());
                for (coeff, e) in terms {
                    acc = acc.add(&e.apply(a)?.scale(*coeff));
                }
                Ok(acc)
            }
        }
    }

    /// Hilbert–Schmidt adjoint: (f ∘ g)† = g† ∘ f†, (Σ c_k f_k)† = Σ c̄_k f_k†.
    pub fn apply_adjoint(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            OpExpr::Op(s) => s.apply_adjoint(a),
            OpExpr::Compose(list) => {
                let mut acc = a.clone();
                for e in list.iter() {
                    acc = e.apply_adjoint(&acc)?;
                }
                Ok(acc)
            }
            OpExpr::Sum(terms) => {
                let mut acc = ComplexMatrix::zeros(a.rows(), a.cols());
                for (coeff, e) in terms {
                    acc = acc.add(&e.apply_adjoint(a)?.scale(coeff.conj()));
                }
                Ok(acc)
            }
        }
    }

    /// Operator norm in the Hilbert–Schmidt sense, by power iteration on
    /// M†M from several deterministic starts (plus matrix-unit probes as
    /// lower bounds). Deterministic: no RNG involved.
    pub fn op_norm_estimate(&self) -> f64 {
        let Some(d) = self.dim() else { return 0.0 };
        let n = d.get();
        let mut best = 0.0f64;

        // matrix-unit probes give cheap certified lower bounds
        let probes = n.min(4);
        for i in 0..probes {
            for j in 0..probes {
                let a = ComplexMatrix::matrix_unit(n, i, j);
                if let Ok(out) = self.apply(&a) {
                    best = best.max(out.frobenius_norm());
                }
            }
        }

        for start in 0..3u64 {
            let mut v = seeded_matrix(n, start);
            let mut nv = v.frobenius_norm();
            if nv == 0.0 {
                continue;
            }
            v = v.scale(Complex::new(1.0 / nv, 0.0));
            let mut rho_prev = -1.0f64;
            for _ in 0..500 {
                let mv = match self.apply(&v) {
                    Ok(m) => m,
                    Err(_) => return best,
                };
                let hv = match self.apply_adjoint(&mv) {
                    Ok(m) => m,
                    Err(_) => return best,
                };
                let rho = hs_inner(&v, &hv).re.max(0.0);
                nv = hv.frobenius_norm();
                if nv == 0.0 {
                    rho_prev = 0.0;
                    break;
                }
                v = hv.scale(Complex::new(1.0 / nv, 0.0));
                if (rho - rho_prev).abs() <= 1e-13 * rho.max(1e-300) {
                    rho_prev = rho;
                    break;
                }
                rho_prev = rho;
            }
            if rho_prev > 0.0 {
                best = best.max(rho_prev.sqrt());
            }
        }
        best
    }
}

/// Deterministic pseudo-random start via splitmix64.
fn seeded_matrix(n: usize, start: u64) -> ComplexMatrix {
    let mut state = 0x9e3779b97f4a7c15u64.wrapping_mul(start + 1);
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z = z ^ (z >> 31);
        // map to [-1, 1)
        (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    };
    ComplexMatrix::from_fn(n, n, |_, _| Complex::new(next(), next()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::pauli;
    use crate::space::HilbertDim;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(n: usize) -> HilbertDim {
        HilbertDim::new(n).unwrap()
    }

    #[test]
    fn expr_norm_matches_exact_svd_on_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let m = ComplexMatrix::random_standard(9, 9, &mut rng);
        let s = Superoperator::dense(d(3), m.clone()).unwrap();
        let est = OpExpr::op(&s).op_norm_estimate();
        assert_relative_eq!(est, m.op_norm(), max_relative = 1e-9);
    }

    #[test]
    fn expr_difference_of_equal_maps_is_zero() {
        let v = pauli::x();
        let s1 = Superoperator::from_sandwich(v.clone(), v.clone()).unwrap();
        let s2 = Superoperator::from_sandwich(v.clone(), v).unwrap();
        let expr = OpExpr::difference(OpExpr::op(&s1), OpExpr::op(&s2));
        assert!(expr.op_norm_estimate() <= 1e-14);
    }

    #[test]
    fn expr_compose_applies_right_to_left() {
        let sx = Superoperator::from_sandwich(pauli::x(), ComplexMatrix::identity(2)).unwrap();
        let sz = Superoperator::from_sandwich(pauli::z(), ComplexMatrix::identity(2)).unwrap();
        let expr = OpExpr::compose(OpExpr::op(&sx), OpExpr::op(&sz));
        let a = ComplexMatrix::identity(2);
        // x·(z·I) = σ_x σ_z
        let want = pauli::x().mat_mul(&pauli::z()).unwrap();
        assert!(expr.apply(&a).unwrap().sub(&want).max_abs() <= 1e-15);
    }

    #[test]
    fn expr_adjoint_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let s1 = Superoperator::dense(d(2), ComplexMatrix::random_standard(4, 4, &mut rng)).unwrap();
        let v = ComplexMatrix::random_standard(2, 2, &mut rng);
        let s2 = Superoperator::from_sandwich(v.clone(), v.adjoint()).unwrap();
        let expr = OpExpr::Sum(vec![
            (Complex64::new(0.5, 0.3), OpExpr::compose(OpExpr::op(&s1), OpExpr::op(&s2))),
            (Complex64::new(-1.0, 0.0), OpExpr::op(&s2)),
        ]);
        let a = ComplexMatrix::random_standard(2, 2, &mut rng);
        let b = ComplexMatrix::random_standard(2, 2, &mut rng);
        let lhs = crate::maps::hs_inner(&b, &expr.apply(&a).unwrap());
        let rhs = crate::maps::hs_inner(&expr.apply_adjoint(&b).unwrap(), &a);
        assert!((lhs - rhs).norm() <= 1e-12);
    }
}
