//! Column generating functions f_p (paths with exactly p plateaus) and
//! the integral/differential form residual.
//!
//! The column recurrence divides by p, so the chain is computed in the
//! rational series variant and demoted at the end; a surviving
//! denominator raises `IntegralityViolation`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;

use crate::error::EngineError;
use crate::series::{RatXSeries, XSeries};

use super::closed::{explicit_gf, f0_closed};

/// The chain f_0 ..= f_pmax at truncation order n, where
/// f_p = 1/(1-(r+1)x^(r+2)) ( (x/p) d/dx[ x^(r+2) f_{p-1} ] - (r+1) x^(r+2) f_{p-1} ).
pub fn column_gfs(r: usize, pmax: usize, n: usize) -> Result<Vec<XSeries>, EngineError> {
    assert!(r >= 1, "the column recurrence needs r >= 1");
    let shift = r + 2;
    let prefactor = XSeries::<BigRational>::poly(n + shift, &[(1, 0, 0, 0), (-(r as i64 + 1), shift, 0, 0)])
        .recip()
        .expect("constant term is 1");
    let mut out = Vec::with_capacity(pmax + 1);
    let mut current = f0_closed(r, n)?.to_rational();
    out.push(demote(&current, r, 0)?);
    for p in 1..=pmax {
        let shifted = current.mul_xpow(shift);
        let inv_p = BigRational::new(BigInt::one(), BigInt::from(p as i64));
        let derivative_part = shifted.dx().mul_xpow(1).scale(&inv_p);
        let linear_part = shifted.scale_i64(r as i64 + 1);
        current = prefactor
            .mul(&derivative_part.sub(&linear_part))
            .truncated(n);
        out.push(demote(&current, r, p)?);
    }
    Ok(out)
}

fn demote(f: &RatXSeries, r: usize, p: usize) -> Result<XSeries, EngineError> {
    f.try_into_integer()
        .map_err(|e| EngineError::IntegralityViolation {
            context: format!("f_{p} (r={r}): {e}"),
        })
}

/// Series whose x^n coefficient counts length-n paths with exactly p
/// plateaus of length r.
pub fn column_gf(r: usize, p: usize, n: usize) -> Result<XSeries, EngineError> {
    Ok(column_gfs(r, p, n)?.pop().expect("chain is nonempty"))
}

/// Residual of the integral/differential form
/// g = (1-(r+1)x^(r+2)) / (1-(r+1)x^(r+2)(1-y))
///     ( f_0 + x/(1-(r+1)x^(r+2)) d/dx[ x^(r+2) Int_0^y g dt ] )
/// for the supplied g and f_0. Rational arithmetic throughout: the
/// y-integration divides by p+1.
///
/// The 1/(1-(r+1)x^(r+2)(1-y)) prefactor is a series reciprocal; since
/// every nonconstant term carries x^(r+2), the reciprocal recurrence is
/// exactly the geometric expansion in (r+1)x^(r+2)(1-y).
pub fn theorem1_residual_of(g: &XSeries, f0: &XSeries, r: usize) -> RatXSeries {
    let n = g.order().min(f0.order());
    let shift = r + 2;
    let rc = r as i64 + 1;
    let plain = XSeries::<BigRational>::poly(n + shift, &[(1, 0, 0, 0), (-rc, shift, 0, 0)]);
    let marked = XSeries::<BigRational>::poly(
        n + shift,
        &[(1, 0, 0, 0), (-rc, shift, 0, 0), (rc, shift, 1, 0)],
    );
    let marked_recip = marked.recip().expect("constant term is 1");
    let g_rat = g.to_rational();
    let integral = g_rat.integrate_y();
    let derivative_part = integral.mul_xpow(shift).dx().mul_xpow(1);
    let rhs = marked_recip
        .mul(&plain.mul(&f0.to_rational()).add(&derivative_part))
        .truncated(n);
    g_rat.sub(&rhs)
}

/// Residual of the integral/differential form with g and f_0 built from
/// their closed forms. `pmax` is the y-truncation the identity needs to
/// close at order n; marker polynomials are exact in y, so it only
/// gates the precondition pmax >= n/(r+2).
pub fn theorem1_residual(r: usize, n: usize, pmax: usize) -> Result<RatXSeries, EngineError> {
    assert!(
        pmax >= n / (r + 2),
        "pmax = {pmax} cannot close the identity at order {n}"
    );
    let g = explicit_gf(r, n)?;
    let f0 = f0_closed(r, n)?;
    Ok(theorem1_residual_of(&g, &f0, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::table::table_from_recursion;

    #[test]
    fn column_p1_matches_published_values() {
        let f1 = column_gf(1, 1, 10).unwrap();
        let want: [i64; 11] = [0, 0, 0, 1, 2, 6, 14, 39, 102, 280, 758];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(f1.coeff(n).coeff(0, 0), BigInt::from(*w), "n={n}");
        }
    }

    #[test]
    fn columns_match_table() {
        let t = table_from_recursion(1, 20).unwrap();
        let fs = column_gfs(1, 4, 20).unwrap();
        for (p, f) in fs.iter().enumerate() {
            for n in 0..=20 {
                assert_eq!(f.coeff(n).coeff(0, 0), t.entry(n, p), "p={p} n={n}");
            }
        }
        assert_eq!(fs[2].coeff(6).coeff(0, 0), BigInt::one());
        assert_eq!(fs[3].coeff(11).coeff(0, 0), BigInt::from(20));
    }

    #[test]
    fn theorem1_residual_vanishes() {
        for r in 1..=2 {
            let res = theorem1_residual(r, 16, 16).unwrap();
            assert!(res.is_zero(), "r={r}");
        }
    }

    #[test]
    fn theorem1_residual_detects_perturbed_f0() {
        let g = explicit_gf(1, 14).unwrap();
        let f0 = f0_closed(1, 14)
            .unwrap()
            .add(&XSeries::poly(14, &[(1, 5, 0, 0)]));
        assert!(!theorem1_residual_of(&g, &f0, 1).is_zero());
    }
}
