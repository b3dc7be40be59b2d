//! Truncated formal power series in x over marker polynomials.
//!
//! An `XSeries` of order N carries the coefficients of x^0..x^N; everything
//! above x^N is unknown. Binary ring operations truncate to the minimum of
//! the operand orders. Two series compare equal only at equal order,
//! term by term.
//!
//! The public series type has integer coefficients. A rational-coefficient
//! variant ([`RatXSeries`]) exists for the divided recursions and the
//! y-integration used by the residual checkers; every public boundary
//! demotes back to integers and fails loudly if a denominator survives.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;

use crate::error::SeriesError;
use crate::poly::{render_term, Coeff, MarkerPoly};

/// Truncated series in x; `coeffs[n]` is the marker polynomial at x^n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XSeries<C = BigInt> {
    coeffs: Vec<MarkerPoly<C>>,
}

/// Rational-coefficient variant used by the divided recursions.
pub type RatXSeries = XSeries<BigRational>;

impl<C: Coeff> XSeries<C> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![MarkerPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = MarkerPoly::one();
        s
    }

    /// Build from (coefficient, x-degree, y-degree, z-degree) terms.
    /// Terms beyond the truncation order are dropped.
    pub fn poly(order: usize, terms: &[(i64, usize, u32, u32)]) -> Self {
        let mut s = Self::zero(order);
        for &(c, dx, dy, dz) in terms {
            if dx <= order {
                s.coeffs[dx].add_term(dy, dz, C::from_i64(c));
            }
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<MarkerPoly<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least x^0");
        Self { coeffs }
    }

    /// Truncation order N: coefficients of x^0..x^N are significant.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MarkerPoly<C> {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MarkerPoly<C>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MarkerPoly::is_zero)
    }

    /// First x-degree with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Restrict to a lower order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let ord = self.order().min(other.order());
        let coeffs = (0..=ord)
            .map(|n| self.coeffs[n].add(&other.coeffs[n]))
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let ord = self.order().min(other.order());
        let coeffs = (0..=ord)
            .map(|n| self.coeffs[n].sub(&other.coeffs[n]))
            .collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(MarkerPoly::neg).collect(),
        }
    }

    /// Cauchy product truncated at the minimum order.
    pub fn mul(&self, other: &Self) -> Self {
        let ord = self.order().min(other.order());
        let mut coeffs = vec![MarkerPoly::zero(); ord + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(ord + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(ord + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prod = a.mul(b);
                coeffs[i + j] = coeffs[i + j].add(&prod);
            }
        }
        Self { coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_i64(&self, v: i64) -> Self {
        self.scale(&C::from_i64(v))
    }

    pub fn scale_poly(&self, p: &MarkerPoly<C>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Multiply by x^k. The result is known one monomial further per
    /// shift, so the order grows by k.
    pub fn mul_xpow(&self, k: usize) -> Self {
        let mut coeffs = vec![MarkerPoly::zero(); self.coeffs.len() + k];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n + k] = c.clone();
        }
        Self { coeffs }
    }

    /// Divide by x^k. Panics unless the first k coefficients vanish;
    /// callers check them first. Order drops by k.
    pub fn div_xpow(&self, k: usize) -> Self {
        assert!(k <= self.order(), "div_xpow below order zero");
        assert!(
            self.coeffs[..k].iter().all(MarkerPoly::is_zero),
            "div_xpow on a series with nonzero low-order terms"
        );
        Self {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Multiplicative inverse up to the truncation order. The constant
    /// term must be the marker-free unit 1 or -1, so the recurrence
    /// never divides.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let unit = self.coeffs[0]
            .as_unit_const()
            .ok_or(SeriesError::NonUnitConstantTerm)?;
        let ord = self.order();
        let mut out = vec![MarkerPoly::zero(); ord + 1];
        out[0] = MarkerPoly::from_i64(unit as i64);
        for n in 1..=ord {
            // b_n = -a0 * sum_{k=1..n} a_k b_{n-k}, with a0 = 1/a0 = unit
            let mut acc = MarkerPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
            }
            out[n] = acc.scale_i64(-(unit as i64));
        }
        Ok(Self { coeffs: out })
    }

    /// Square root with constant term 1, by the direct coefficient
    /// recurrence from b*b = a. Each step halves exactly;
    /// a non-clearing halving reports the offending x-degree.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let ord = self.order();
        let mut out = vec![MarkerPoly::zero(); ord + 1];
        out[0] = MarkerPoly::one();
        for n in 1..=ord {
            // 2 b_n = a_n - sum_{k=1..n-1} b_k b_{n-k}
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                if out[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = acc.sub(&out[k].mul(&out[n - k]));
            }
            out[n] = acc
                .exact_halve()
                .ok_or(SeriesError::NonIntegralResult { order: n })?;
        }
        Ok(Self { coeffs: out })
    }

    /// Termwise derivative in x; the order drops by one (an order-0
    /// input yields the order-0 zero series).
    pub fn dx(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order())
            .map(|n| self.coeffs[n].scale_i64(n as i64))
            .collect();
        Self { coeffs }
    }

    /// Termwise derivative in the marker z; the x-order is unchanged.
    pub fn dz(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(MarkerPoly::dz).collect(),
        }
    }

    /// Substitute the integer `v` for the marker y.
    pub fn subst_y_const(&self, v: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.subst_y_const(v)).collect(),
        }
    }

    /// Diagonal substitution: x^n y^p maps to x^(n-(r+2)p) z^p.
    ///
    /// The input must be z-free. Fails with `NegativeExponent` when some
    /// monomial has n < (r+2)p, which signals the input is not a plateau
    /// generating function for this r.
    pub fn subst_diagonal(&self, r: usize) -> Result<Self, SeriesError> {
        let ord = self.order();
        let mut coeffs = vec![MarkerPoly::zero(); ord + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            for (&(dy, dz), v) in c.iter() {
                assert!(dz == 0, "diagonal substitution expects a z-free series");
                let drop = (r + 2) * dy as usize;
                if drop > n {
                    return Err(SeriesError::NegativeExponent { n, p: dy });
                }
                coeffs[n - drop].add_term(0, dy, v.clone());
            }
        }
        Ok(Self { coeffs })
    }

    /// Keep only terms x^n y^dy z^dz selected by the predicate.
    pub fn filter_terms<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(usize, u32, u32) -> bool,
    {
        let mut coeffs = vec![MarkerPoly::zero(); self.coeffs.len()];
        for (n, c) in self.coeffs.iter().enumerate() {
            for (&(dy, dz), v) in c.iter() {
                if keep(n, dy, dz) {
                    coeffs[n].add_term(dy, dz, v.clone());
                }
            }
        }
        Self { coeffs }
    }

    /// Halve every coefficient exactly, reporting the x-degree of the
    /// first odd coefficient.
    pub fn exact_halve(&self) -> Result<Self, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(
                c.exact_halve()
                    .ok_or(SeriesError::NonIntegralResult { order: n })?,
            );
        }
        Ok(Self { coeffs })
    }
}

impl XSeries<BigInt> {
    pub fn to_rational(&self) -> RatXSeries {
        XSeries {
            coeffs: self.coeffs.iter().map(MarkerPoly::to_rational).collect(),
        }
    }

    /// Integrate in y from 0 to y: x^n y^p z^q maps to x^n y^(p+1) z^q / (p+1).
    /// The divisions are exact rationals, so the result lives in the
    /// rational variant consumed by the residual checkers.
    pub fn integrate_y(&self) -> RatXSeries {
        self.to_rational().integrate_y()
    }
}

impl RatXSeries {
    pub fn integrate_y(&self) -> RatXSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let mut out = MarkerPoly::zero();
                for (&(dy, dz), v) in c.iter() {
                    let inv = BigRational::new(BigInt::one(), BigInt::from(dy as i64 + 1));
                    out.add_term(dy + 1, dz, v * inv);
                }
                out
            })
            .collect();
        XSeries { coeffs }
    }

    /// Demote to the public integer series, reporting the x-degree of
    /// the first coefficient with a surviving denominator.
    pub fn try_into_integer(&self) -> Result<XSeries<BigInt>, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(
                c.try_to_integer()
                    .ok_or(SeriesError::NonIntegralResult { order: n })?,
            );
        }
        Ok(XSeries { coeffs })
    }
}

impl<C: Coeff> Add for &XSeries<C> {
    type Output = XSeries<C>;
    fn add(self, rhs: Self) -> XSeries<C> {
        XSeries::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &XSeries<C> {
    type Output = XSeries<C>;
    fn sub(self, rhs: Self) -> XSeries<C> {
        XSeries::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &XSeries<C> {
    type Output = XSeries<C>;
    fn mul(self, rhs: Self) -> XSeries<C> {
        XSeries::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &XSeries<C> {
    type Output = XSeries<C>;
    fn neg(self) -> XSeries<C> {
        XSeries::neg(self)
    }
}

impl<C: Coeff> fmt::Display for XSeries<C> {
    /// Canonical text rendering: terms ordered by x-degree, then
    /// y-degree, then z-degree, e.g. `1 + x + 2*x^2 + 3*x^3 + x^3*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            for (&(dy, dz), v) in c.iter() {
                let negative = v.is_negative();
                let mag = if negative { -v.clone() } else { v.clone() };
                if first {
                    if negative {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if negative {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                write!(f, "{}", render_term(&mag, n, dy, dz))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
