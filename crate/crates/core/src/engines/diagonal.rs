//! Diagonal generating functions h_k(z) = sum_m c_{3m+k}^m z^m of the
//! r = 1 table, in the normal form N_k(z)/(1-z)^(k+1), plus the
//! differential-difference residual and the diagonal form of the
//! substitution identity.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::EngineError;
use crate::series::XSeries;

use super::closed::explicit_gf;
use super::table::base_column;

/// A diagonal generating function in normal form: numerator polynomial
/// over (1-z)^(k+1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFn {
    k: usize,
    numerator: Vec<BigInt>,
}

impl RationalFn {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Numerator coefficients, constant term first.
    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator_exponent(&self) -> usize {
        self.k + 1
    }

    pub fn degree(&self) -> usize {
        self.numerator
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Expand to a z-series of length mmax+1: numerator times the
    /// binomial expansion of (1-z)^-(k+1).
    pub fn expand(&self, mmax: usize) -> Vec<BigInt> {
        let denom = geometric_pow(self.k + 1, mmax);
        let mut out = vec![BigInt::zero(); mmax + 1];
        for (i, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in denom.iter().enumerate() {
                if i + j > mmax {
                    break;
                }
                out[i + j] += c * d;
            }
        }
        out
    }
}

/// Coefficients of 1/(1-z)^e up to z^mmax: binomial(m+e-1, e-1).
fn geometric_pow(e: usize, mmax: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(mmax + 1);
    let mut c = BigInt::one();
    for m in 0..=mmax {
        if m > 0 {
            // c *= (m+e-1)/m, always exact
            c = c * BigInt::from((m + e - 1) as u64) / BigInt::from(m as u64);
        }
        out.push(c.clone());
    }
    out
}

// -- small univariate helpers over rational z-polynomials --

fn zpoly_derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(m, c)| c * BigRational::from_integer(BigInt::from(m as u64)))
        .collect()
}

fn zpoly_mul(a: &[BigRational], b: &[BigRational], cap: Option<usize>) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let full = a.len() + b.len() - 2;
    let deg = cap.map_or(full, |c| c.min(full));
    let mut out = vec![BigRational::zero(); deg + 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() || i > deg {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if i + j > deg {
                break;
            }
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Antiderivative with value 0 at z = 0.
fn zpoly_integrate(p: &[BigRational]) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(BigRational::zero());
    for (m, c) in p.iter().enumerate() {
        out.push(c / BigRational::from_integer(BigInt::from((m + 1) as u64)));
    }
    out
}

/// (1-t)^k as a rational polynomial.
fn one_minus_t_pow(k: usize) -> Vec<BigRational> {
    let base = vec![
        BigRational::one(),
        -BigRational::one(),
    ];
    let mut out = vec![BigRational::one()];
    for _ in 0..k {
        out = zpoly_mul(&out, &base, None);
    }
    out
}

fn to_rational(p: &[BigInt]) -> Vec<BigRational> {
    p.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn demote_zpoly(p: &[BigRational], what: &str) -> Result<Vec<BigInt>, EngineError> {
    p.iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(EngineError::IntegralityViolation {
                    context: format!("{what}: coefficient {c} is not an integer"),
                })
            }
        })
        .collect()
}

fn trim_zeros(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(BigInt::is_zero) {
        p.pop();
    }
    p
}

/// Numerators N_0 ..= N_k by the differential-difference equation
/// N_k = c_k^0 + 2 Int_0^z (1-t)( (1-t) N'_{k-3}(t) + (k-2) N_{k-3}(t) ) dt,
/// seeds N_0 = 1, N_1 = 1, N_2 = 2.
fn numerators_by_dde(kmax: usize) -> Result<Vec<Vec<BigInt>>, EngineError> {
    let c0 = base_column(1, kmax.max(2));
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let nk = match k {
            0 | 1 => vec![BigInt::one()],
            2 => vec![BigInt::from(2)],
            _ => {
                let prev = to_rational(&out[k - 3]);
                let one_minus_t = one_minus_t_pow(1);
                let mut inner = zpoly_mul(&one_minus_t, &zpoly_derivative(&prev), None);
                let scaled: Vec<BigRational> = prev
                    .iter()
                    .map(|c| c * BigRational::from_integer(BigInt::from(k as i64 - 2)))
                    .collect();
                for (m, c) in scaled.iter().enumerate() {
                    if m < inner.len() {
                        inner[m] += c;
                    } else {
                        inner.push(c.clone());
                    }
                }
                let integrand = zpoly_mul(&one_minus_t, &inner, None);
                let mut integral = zpoly_integrate(&integrand);
                let two = BigRational::from_integer(BigInt::from(2));
                for c in integral.iter_mut() {
                    *c = c.clone() * &two;
                }
                integral[0] += BigRational::from_integer(c0[k].clone());
                demote_zpoly(&integral, &format!("N_{k} via numerator DDE"))?
            }
        };
        out.push(trim_zeros(nk));
    }
    Ok(out)
}

/// h_k as a truncated z-series by the integral recurrence
/// h_k = (1-z)^-(k+1) ( c_k^0 + 2 Int_0^z (1-t)^k h'_{k-3}(t) dt ),
/// seeds h_0 = 1/(1-z), h_1 = 1/(1-z)^2, h_2 = 2/(1-z)^3.
fn h_series_by_recurrence(kmax: usize, len: usize) -> Result<Vec<Vec<BigInt>>, EngineError> {
    // working length grows toward low k so every derivative is covered
    let c0 = base_column(1, kmax.max(2));
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let cap = len + (kmax - k);
        let hk = match k {
            0 => geometric_pow(1, cap),
            1 => geometric_pow(2, cap),
            2 => geometric_pow(3, cap)
                .iter()
                .map(|c| c * BigInt::from(2))
                .collect(),
            _ => {
                let prev = to_rational(&out[k - 3]);
                let integrand = zpoly_mul(
                    &one_minus_t_pow(k),
                    &zpoly_derivative(&prev),
                    Some(cap),
                );
                let mut bracket = zpoly_integrate(&integrand);
                bracket.truncate(cap + 1);
                let two = BigRational::from_integer(BigInt::from(2));
                for c in bracket.iter_mut() {
                    *c = c.clone() * &two;
                }
                bracket[0] += BigRational::from_integer(c0[k].clone());
                let expanded = zpoly_mul(&bracket, &to_rational(&geometric_pow(k + 1, cap)), Some(cap));
                demote_zpoly(&expanded, &format!("h_{k} via integral recurrence"))?
            }
        };
        out.push(hk);
    }
    Ok(out)
}

/// Diagonal generating function h_k in normal form. Built by BOTH the
/// integral recurrence and the numerator DDE; the two must agree on the
/// first mmax+1 coefficients, and the numerator degree must be
/// 2*floor(k/3).
pub fn diagonal_gf(k: usize, mmax: usize) -> Result<RationalFn, EngineError> {
    let numerator = numerators_by_dde(k)?.pop().expect("nonempty");
    let rf = RationalFn { k, numerator };

    let by_recurrence = h_series_by_recurrence(k, mmax)?.pop().expect("nonempty");
    let by_numerator = rf.expand(mmax);
    assert_eq!(
        by_numerator[..],
        by_recurrence[..=mmax],
        "integral recurrence and numerator DDE disagree for h_{k}"
    );

    let want = 2 * (k / 3);
    let got = rf.degree();
    if got != want {
        return Err(EngineError::DegreeMismatch { k, got, want });
    }
    Ok(rf)
}

/// Residual of the differential difference equation
/// h'_k = z h'_k + h_k + k h_k + 2 h'_{k-3}
/// as a z-polynomial up to z^mmax; identically zero for the true h_k.
pub fn difdif_residual(k: usize, mmax: usize) -> Result<Vec<BigInt>, EngineError> {
    let h_k = diagonal_gf(k, mmax + 1)?.expand(mmax + 1);
    let h_low = if k >= 3 {
        diagonal_gf(k - 3, mmax + 1)?.expand(mmax + 1)
    } else {
        vec![BigInt::zero(); mmax + 2]
    };
    Ok(difdif_residual_of(&h_k, &h_low, k, mmax))
}

/// Residual computed from explicit expansions of h_k and h_{k-3}
/// (length mmax+2 each).
pub fn difdif_residual_of(h_k: &[BigInt], h_low: &[BigInt], k: usize, mmax: usize) -> Vec<BigInt> {
    let d = |h: &[BigInt], m: usize| -> BigInt { &h[m + 1] * BigInt::from((m + 1) as u64) };
    (0..=mmax)
        .map(|m| {
            let lhs = d(h_k, m);
            let z_shift = if m >= 1 { d(h_k, m - 1) } else { BigInt::zero() };
            lhs - z_shift - BigInt::from((k + 1) as u64) * &h_k[m] - BigInt::from(2) * d(h_low, m)
        })
        .collect()
}

/// Residual of the diagonal substitution identity
/// d/dx[ x g(x, z/x^(r+2)) ] = (1 - z - (r+1) x^(r+2)) d/dz[ g(x, z/x^(r+2)) ]
/// for the supplied plateau generating function g.
///
/// An order-n g only determines the substituted plane on
/// (r+2) m + k <= n; the identity relates z-degree m to m+1, so the
/// residual is masked to (r+2)(m+1) + k <= n, where every referenced
/// term is known. Zero on that region for the true g.
pub fn theorem2_residual_of(g: &XSeries, r: usize) -> Result<XSeries, EngineError> {
    let n = g.order();
    let substituted = g.subst_diagonal(r).map_err(EngineError::from)?;
    let lhs = substituted.mul_xpow(1).dx();
    let factor = XSeries::poly(
        n,
        &[(1, 0, 0, 0), (-1, 0, 0, 1), (-(r as i64 + 1), r + 2, 0, 0)],
    );
    let rhs = factor.mul(&substituted.dz());
    let residual = lhs.sub(&rhs);
    Ok(residual.filter_terms(|k, _dy, dz| (r + 2) * (dz as usize + 1) + k <= n))
}

/// Residual of the diagonal substitution identity with g built from the
/// explicit form at order n.
pub fn theorem2_residual(r: usize, n: usize) -> Result<XSeries, EngineError> {
    theorem2_residual_of(&explicit_gf(r, n)?, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::table::table_from_recursion;

    #[test]
    fn seeds_are_the_published_ones() {
        let h0 = diagonal_gf(0, 6).unwrap();
        assert_eq!(h0.numerator(), &[BigInt::one()]);
        assert_eq!(h0.denominator_exponent(), 1);
        assert_eq!(h0.expand(5), vec![BigInt::one(); 6]);

        let h2 = diagonal_gf(2, 6).unwrap();
        assert_eq!(h2.numerator(), &[BigInt::from(2)]);
        let want: [i64; 6] = [2, 6, 12, 20, 30, 42];
        assert_eq!(
            h2.expand(5),
            want.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn expansion_matches_table_diagonals() {
        let t = table_from_recursion(1, 40).unwrap();
        for k in 0..=8 {
            let h = diagonal_gf(k, 6).unwrap();
            let e = h.expand(6);
            for m in 0..=6 {
                assert_eq!(e[m], t.entry(3 * m + k, m), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn h4_z2_is_c10_2() {
        let h4 = diagonal_gf(4, 4).unwrap();
        assert_eq!(h4.expand(2)[2], BigInt::from(123));
    }

    #[test]
    fn degrees_follow_the_floor_law() {
        for k in 0..=12 {
            let h = diagonal_gf(k, 4).unwrap();
            assert_eq!(h.degree(), 2 * (k / 3), "k={k}");
        }
    }

    #[test]
    fn difdif_vanishes() {
        for k in 0..=8 {
            let res = difdif_residual(k, 10).unwrap();
            assert!(res.iter().all(BigInt::is_zero), "k={k}: {res:?}");
        }
    }

    #[test]
    fn difdif_detects_perturbed_seed() {
        let mut h5 = diagonal_gf(5, 12).unwrap().expand(12);
        let h2 = diagonal_gf(2, 12).unwrap().expand(12);
        h5[3] += BigInt::one();
        let res = difdif_residual_of(&h5, &h2, 5, 10);
        assert!(res.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn theorem2_residual_vanishes() {
        for r in 1..=3 {
            let res = theorem2_residual(r, 18).unwrap();
            assert!(res.is_zero(), "r={r}");
        }
    }

    #[test]
    fn theorem2_z0_slice_is_trivial() {
        // at z = 0 the identity reduces to d/dx[x f0] = f0 + x f0'
        let f0 = crate::engines::closed::f0_closed(1, 12).unwrap();
        let lhs = f0.mul_xpow(1).dx();
        let rhs = f0.add(&f0.dx().mul_xpow(1));
        assert_eq!(lhs, rhs);
    }
}
