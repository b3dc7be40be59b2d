//! Closed forms for the plateau generating functions, and the
//! functional-equation residual checker.
//!
//! Every closed form in the paper picks the square-root branch by a
//! limit argument. Here that argument is operationalized: form the
//! numerator, require the x^0 and x^1 coefficients to vanish, shift
//! down by x^2, and halve with an evenness check. Any failure reports
//! `BranchAssertionFailed` instead of silently producing garbage.

use crate::error::EngineError;
use crate::series::XSeries;

/// Shared branch mechanics: given the numerator of `(numer)/(2x^2)` at
/// order n+2, check the low coefficients, shift, halve.
pub(crate) fn divide_by_two_x_squared(
    numerator: &XSeries,
    what: &str,
) -> Result<XSeries, EngineError> {
    for k in 0..2 {
        if !numerator.coeff(k).is_zero() {
            return Err(EngineError::BranchAssertionFailed {
                context: format!(
                    "{what}: coefficient of x^{k} is {}, expected 0",
                    numerator.coeff(k)
                ),
            });
        }
    }
    numerator
        .div_xpow(2)
        .exact_halve()
        .map_err(|e| EngineError::BranchAssertionFailed {
            context: format!("{what}: halving failed ({e})"),
        })
}

/// Generating function of the plateau-free column, from the closed form
/// ( 1 - x + x^(r+2) - sqrt((1 - x + x^(r+2))^2 - 4x^2) ) / (2x^2).
pub fn f0_closed(r: usize, n: usize) -> Result<XSeries, EngineError> {
    assert!(r >= 1, "the plateau-free column needs r >= 1");
    let u = XSeries::poly(n + 2, &[(1, 0, 0, 0), (-1, 1, 0, 0), (1, r + 2, 0, 0)]);
    let radicand = u.mul(&u).sub(&XSeries::poly(n + 2, &[(4, 2, 0, 0)]));
    let sqrt = radicand.sqrt().map_err(EngineError::from)?;
    divide_by_two_x_squared(&u.sub(&sqrt), "f0 closed form")
}

/// Bivariate generating function for plateaus of length r, from the
/// explicit form
/// ( u - sqrt(u^2 - 4x^2) ) / (2x^2),  u = 1 - x + x^(r+2) - x^(r+2) y.
///
/// r = 0 weights peaks.
pub fn explicit_gf(r: usize, n: usize) -> Result<XSeries, EngineError> {
    let u = XSeries::poly(
        n + 2,
        &[
            (1, 0, 0, 0),
            (-1, 1, 0, 0),
            (1, r + 2, 0, 0),
            (-1, r + 2, 1, 0),
        ],
    );
    let radicand = u.mul(&u).sub(&XSeries::poly(n + 2, &[(4, 2, 0, 0)]));
    if r == 1 {
        // the paper also states the radicand in factored form; the two
        // must be the same polynomial
        let lo = XSeries::poly(
            n + 2,
            &[(1, 0, 0, 0), (-3, 1, 0, 0), (1, 3, 0, 0), (-1, 3, 1, 0)],
        );
        let hi = XSeries::poly(
            n + 2,
            &[(1, 0, 0, 0), (1, 1, 0, 0), (1, 3, 0, 0), (-1, 3, 1, 0)],
        );
        assert_eq!(
            radicand,
            lo.mul(&hi),
            "factored radicand disagrees with the squared form"
        );
    }
    let sqrt = radicand.sqrt().map_err(EngineError::from)?;
    divide_by_two_x_squared(&u.sub(&sqrt), "explicit gf")
}

/// Residual of the defining functional equation
/// g = 1 + x g + x^2 g (g - x^r + x^r y)
/// for the supplied g; identically zero when g is the plateau
/// generating function.
pub fn functional_residual_of(g: &XSeries, r: usize) -> XSeries {
    let n = g.order();
    let correction = XSeries::poly(n, &[(-1, r, 0, 0), (1, r, 1, 0)]);
    let rhs = XSeries::one(n)
        .add(&g.mul_xpow(1).truncated(n))
        .add(&g.mul(&g.add(&correction)).mul_xpow(2).truncated(n));
    g.sub(&rhs)
}

/// Residual of the functional equation with g built from the explicit form.
pub fn functional_residual(r: usize, n: usize) -> Result<XSeries, EngineError> {
    Ok(functional_residual_of(&explicit_gf(r, n)?, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use num::traits::{One, Zero};

    use crate::engines::table::{base_column, table_from_recursion};

    #[test]
    fn f0_matches_base_column() {
        for r in 1..=3 {
            let f0 = f0_closed(r, 12).unwrap();
            let col = base_column(r, 12);
            for n in 0..=12 {
                assert_eq!(f0.coeff(n).coeff(0, 0), col[n], "r={r} n={n}");
                assert_eq!(f0.coeff(n).num_terms(), usize::from(!col[n].is_zero()));
            }
        }
    }

    #[test]
    fn f0_constant_term_is_one() {
        let f0 = f0_closed(1, 0).unwrap();
        assert_eq!(f0.coeff(0).coeff(0, 0), BigInt::one());
    }

    #[test]
    fn explicit_r1_matches_recursion_table() {
        let g = explicit_gf(1, 14).unwrap();
        let t = table_from_recursion(1, 14).unwrap();
        for n in 0..=14 {
            for p in 0..=n / 3 {
                assert_eq!(g.coeff(n).coeff(p as u32, 0), t.entry(n, p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn explicit_specializations() {
        let g = explicit_gf(2, 12).unwrap();
        assert_eq!(g.subst_y_const(0), f0_closed(2, 12).unwrap());
        let motzkin = crate::oracle::motzkin_numbers(12);
        let at_one = g.subst_y_const(1);
        for n in 0..=12 {
            assert_eq!(at_one.coeff(n).coeff(0, 0), motzkin[n], "n={n}");
        }
    }

    #[test]
    fn functional_residual_vanishes() {
        for r in 1..=2 {
            let res = functional_residual(r, 20).unwrap();
            assert!(res.is_zero(), "r={r}: {res}");
        }
    }

    #[test]
    fn functional_residual_detects_perturbation() {
        let g = explicit_gf(1, 25).unwrap();
        let perturbed = g.add(&XSeries::poly(25, &[(1, 20, 0, 0)]));
        assert!(!functional_residual_of(&perturbed, 1).is_zero());
    }
}
