//! Slow independent oracles used by the test and acceptance suites.
//!
//! Nothing here is on a production code path: each function re-derives a
//! quantity by the most literal method available (cofactor expansion, direct
//! lattice products) so the fast kernels have something honest to be checked
//! against.

use crate::linalg::Matrix;
use crate::scalar::{CFloat, Scalar};

/// Determinant by recursive cofactor expansion along the first row, O(n!).
/// Intended for n <= 6.
pub fn det_cofactor(x: &Matrix) -> Scalar {
    assert_eq!(x.rows(), x.cols(), "cofactor oracle needs a square matrix");
    let n = x.rows();
    if n == 1 {
        return x.at(0, 0).clone();
    }
    let kind = x.kind();
    let mut acc = kind.zero();
    for j in 0..n {
        let sub = Matrix::from_fn(n - 1, n - 1, |a, b| {
            x.at(a + 1, if b < j { b } else { b + 1 }).clone()
        });
        let term = &(x.at(0, j) * &det_cofactor(&sub));
        acc = if j % 2 == 0 { &acc + term } else { &acc - term };
    }
    acc
}

/// Weierstrass sigma by its defining product over the period lattice
/// generated by 2*omega1 and 2*omega2, truncated at |m|, |n| <= bound:
///
/// sigma(z) = z * prod_{w != 0} (1 - z/w) exp(z/w + z^2/(2 w^2))
///
/// Convergence is only O(1/bound^2)-ish, so this is a coarse cross-check,
/// not a precision evaluator.
pub fn sigma_lattice_product(z: &CFloat, omega1: &CFloat, omega2: &CFloat, bound: i64) -> CFloat {
    let p = z.prec();
    let two = CFloat::from_i64(p, 2);
    let half = CFloat::from_i64(p, 1).div(&two);
    let mut acc = z.clone();
    for m in -bound..=bound {
        for n in -bound..=bound {
            if m == 0 && n == 0 {
                continue;
            }
            let w = two
                .mul(omega1)
                .mul(&CFloat::from_i64(p, m))
                .add(&two.mul(omega2).mul(&CFloat::from_i64(p, n)));
            let zw = z.div(&w);
            let lin = CFloat::from_i64(p, 1).sub(&zw);
            let expo = zw.add(&zw.mul(&zw).mul(&half)).exp();
            acc = acc.mul(&lin).mul(&expo);
        }
    }
    acc
}
