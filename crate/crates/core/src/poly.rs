//! Exact polynomials in the statistic markers y and z.
//!
//! A `MarkerPoly` is a sparse map from exponent pairs (deg_y, deg_z) to
//! nonzero coefficients. It is the coefficient type of [`crate::series::XSeries`]:
//! the series is truncated in x, but marker polynomials are always complete.
//!
//! Invariants:
//! - no stored zero coefficients
//! - equality is term-by-term

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

/// Coefficient ring for polynomials and series: arbitrary-precision
/// integers for the public types, exact rationals for the private
/// intermediates of the divided recursions.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Exact division by two. `None` when the division does not clear.
    fn exact_halve(&self) -> Option<Self>;

    fn is_negative(&self) -> bool;
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn exact_halve(&self) -> Option<Self> {
        let (q, r) = num::Integer::div_rem(self, &BigInt::from(2));
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn exact_halve(&self) -> Option<Self> {
        Some(self / BigRational::from_integer(BigInt::from(2)))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Sparse exact polynomial in the markers y and z.
///
/// Keys are (deg_y, deg_z); values are nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkerPoly<C = BigInt> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> MarkerPoly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(c: C, deg_y: u32, deg_z: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(deg_y, deg_z, c);
        p
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_unit_const() == Some(1)
    }

    /// `Some(1)` / `Some(-1)` when the polynomial is the marker-free
    /// constant 1 or -1, `None` otherwise.
    pub fn as_unit_const(&self) -> Option<i8> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&key, c) = self.terms.iter().next()?;
        if key != (0, 0) {
            return None;
        }
        if c.is_one() {
            Some(1)
        } else if (-c.clone()).is_one() {
            Some(-1)
        } else {
            None
        }
    }

    /// Coefficient of y^deg_y z^deg_z (zero when absent).
    pub fn coeff(&self, deg_y: u32, deg_z: u32) -> C {
        self.terms
            .get(&(deg_y, deg_z))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Nonzero terms in (deg_y, deg_z) order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(dy, _)| dy).max().unwrap_or(0)
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|&(_, dz)| dz).max().unwrap_or(0)
    }

    /// Add `c * y^deg_y z^deg_z`, dropping the entry if it cancels.
    pub fn add_term(&mut self, deg_y: u32, deg_z: u32, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (deg_y, deg_z);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dy, dz), c) in &other.terms {
            out.add_term(dy, dz, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dy, dz), c) in &other.terms {
            out.add_term(dy, dz, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (&(dy, dz), c) in &self.terms {
            out.terms.insert((dy, dz), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ay, az), ac) in &self.terms {
            for (&(by, bz), bc) in &other.terms {
                out.add_term(ay + by, az + bz, ac.clone() * bc.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (&(dy, dz), v) in &self.terms {
            out.add_term(dy, dz, v.clone() * c.clone());
        }
        out
    }

    pub fn scale_i64(&self, v: i64) -> Self {
        self.scale(&C::from_i64(v))
    }

    /// Substitute the integer `v` for the marker y; z is untouched.
    pub fn subst_y_const(&self, v: i64) -> Self {
        let vc = C::from_i64(v);
        let mut out = Self::zero();
        for (&(dy, dz), c) in &self.terms {
            let mut factor = C::one();
            for _ in 0..dy {
                factor = factor * vc.clone();
            }
            out.add_term(0, dz, c.clone() * factor);
        }
        out
    }

    /// Partial derivative with respect to the marker z.
    pub fn dz(&self) -> Self {
        let mut out = Self::zero();
        for (&(dy, dz), c) in &self.terms {
            if dz > 0 {
                out.add_term(dy, dz - 1, c.clone() * C::from_i64(dz as i64));
            }
        }
        out
    }

    /// Halve every coefficient exactly; `None` if any coefficient is odd.
    pub fn exact_halve(&self) -> Option<Self> {
        let mut out = Self::zero();
        for (&(dy, dz), c) in &self.terms {
            out.terms.insert((dy, dz), c.exact_halve()?);
        }
        Some(out)
    }
}

impl MarkerPoly<BigInt> {
    pub fn to_rational(&self) -> MarkerPoly<BigRational> {
        let mut out = MarkerPoly::zero();
        for (&(dy, dz), c) in &self.terms {
            out.terms
                .insert((dy, dz), BigRational::from_integer(c.clone()));
        }
        out
    }
}

impl MarkerPoly<BigRational> {
    /// Demote to integer coefficients; `None` if any denominator survives.
    pub fn try_to_integer(&self) -> Option<MarkerPoly<BigInt>> {
        let mut out = MarkerPoly::zero();
        for (&(dy, dz), c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.terms.insert((dy, dz), c.to_integer());
        }
        Some(out)
    }
}

impl<C: Coeff> Add for &MarkerPoly<C> {
    type Output = MarkerPoly<C>;
    fn add(self, rhs: Self) -> MarkerPoly<C> {
        MarkerPoly::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &MarkerPoly<C> {
    type Output = MarkerPoly<C>;
    fn sub(self, rhs: Self) -> MarkerPoly<C> {
        MarkerPoly::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &MarkerPoly<C> {
    type Output = MarkerPoly<C>;
    fn mul(self, rhs: Self) -> MarkerPoly<C> {
        MarkerPoly::mul(self, rhs)
    }
}

impl<C: Coeff> fmt::Display for MarkerPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dy, dz), c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", render_term(&mag, 0, dy, dz))?;
        }
        Ok(())
    }
}

/// Render `mag * x^dx * y^dy * z^dz` with unit coefficients and zero
/// exponents elided, matching the canonical text form.
pub(crate) fn render_term<C: Coeff>(mag: &C, dx: usize, dy: u32, dz: u32) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || (dx == 0 && dy == 0 && dz == 0) {
        parts.push(mag.to_string());
    }
    for (sym, e) in [("x", dx as u64), ("y", dy as u64), ("z", dz as u64)] {
        match e {
            0 => {}
            1 => parts.push(sym.to_string()),
            _ => parts.push(format!("{sym}^{e}")),
        }
    }
    parts.join("*")
}
