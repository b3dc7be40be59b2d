//! Plateau-count tables: the base column and the sewing recursion.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::{EngineError, OracleError};
use crate::oracle::{self, StatisticSpec};
use crate::series::XSeries;

/// Rectangular array of counts c[n][p] for a fixed plateau length r.
///
/// Row n holds p = 0 ..= n/(r+2); entries outside that range are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlateauTable {
    r: usize,
    counts: Vec<Vec<BigInt>>,
}

impl PlateauTable {
    /// Assemble from raw rows. Row n must have exactly n/(r+2) + 1 entries.
    pub fn from_parts(r: usize, counts: Vec<Vec<BigInt>>) -> Self {
        for (n, row) in counts.iter().enumerate() {
            assert_eq!(
                row.len(),
                n / (r + 2) + 1,
                "row {n} must carry p = 0..={}",
                n / (r + 2)
            );
        }
        Self { r, counts }
    }

    /// Extract the triangle from a bivariate series: entry (n, p) is the
    /// y^p coefficient at x^n.
    pub fn from_series(r: usize, gf: &XSeries, nmax: usize) -> Self {
        assert!(nmax <= gf.order(), "series order too small for nmax");
        let counts = (0..=nmax)
            .map(|n| {
                (0..=(n / (r + 2)) as u32)
                    .map(|p| gf.coeff(n).coeff(p, 0))
                    .collect()
            })
            .collect();
        Self { r, counts }
    }

    /// Build the triangle by brute-force path enumeration.
    pub fn from_oracle(r: usize, nmax: usize, cap: usize) -> Result<Self, OracleError> {
        let spec = StatisticSpec::plateau(r);
        let mut counts = Vec::with_capacity(nmax + 1);
        for n in 0..=nmax {
            let w = oracle::weighted_count_with_cap(n, &spec, cap)?;
            counts.push(
                (0..=(n / (r + 2)) as u32)
                    .map(|p| w.coeff(p, 0))
                    .collect(),
            );
        }
        Ok(Self { r, counts })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn nmax(&self) -> usize {
        self.counts.len() - 1
    }

    /// c[n][p], with zero outside the stored range.
    pub fn entry(&self, n: usize, p: usize) -> BigInt {
        self.counts
            .get(n)
            .and_then(|row| row.get(p))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.counts[n]
    }

    /// All entries flattened row-major (n ascending, p ascending).
    pub fn flatten(&self) -> Vec<BigInt> {
        self.counts.iter().flatten().cloned().collect()
    }
}

/// The plateau-free column c_n^0 for plateau length r, by the
/// Catalan-like recurrence
/// c_n^0 = c_{n-1}^0 + sum_{k=0}^{n-2} c_k^0 c_{n-2-k}^0 - c_{n-r-2}^0
/// with out-of-range terms zero.
pub fn base_column(r: usize, nmax: usize) -> Vec<BigInt> {
    assert!(r >= 1, "the base-column recurrence needs r >= 1");
    let mut c: Vec<BigInt> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let v = match n {
            0 | 1 => BigInt::one(),
            _ => {
                let mut v = c[n - 1].clone();
                for k in 0..=n - 2 {
                    v += &c[k] * &c[n - 2 - k];
                }
                if n >= r + 2 {
                    v -= &c[n - r - 2];
                }
                v
            }
        };
        c.push(v);
    }
    c
}

/// The r = 1 column in its other published shape:
/// c_n^0 = c_{n-1}^0 + c_{n-2}^0 + sum_{k=2}^{n-2} c_k^0 c_{n-k-2}^0.
pub fn base_column_noplats(nmax: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let v = match n {
            0 | 1 => BigInt::one(),
            _ => {
                let mut v = &c[n - 1] + &c[n - 2];
                for k in 2..=n - 2 {
                    v += &c[k] * &c[n - k - 2];
                }
                v
            }
        };
        c.push(v);
    }
    c
}

/// Full table by the sewing recursion
/// c_n^p = ((n-(r+1)p)/p) c_{n-(r+2)}^{p-1} + (r+1) c_{n-(r+2)}^p.
///
/// The division by p is carried out in exact rationals and must clear;
/// a remainder would falsify the recursion and raises
/// `IntegralityViolation`.
pub fn table_from_recursion(r: usize, nmax: usize) -> Result<PlateauTable, EngineError> {
    assert!(r >= 1, "the sewing recursion needs r >= 1");
    let base = base_column(r, nmax);
    let mut counts: Vec<Vec<BigInt>> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let width = n / (r + 2) + 1;
        let mut row = Vec::with_capacity(width);
        row.push(base[n].clone());
        for p in 1..width {
            let prev_low = if n >= r + 2 {
                counts[n - (r + 2)]
                    .get(p - 1)
                    .cloned()
                    .unwrap_or_else(BigInt::zero)
            } else {
                BigInt::zero()
            };
            let prev_same = if n >= r + 2 {
                counts[n - (r + 2)]
                    .get(p)
                    .cloned()
                    .unwrap_or_else(BigInt::zero)
            } else {
                BigInt::zero()
            };
            let coefficient = BigInt::from(n as i64 - ((r + 1) * p) as i64);
            let divided = BigRational::new(coefficient * prev_low, BigInt::from(p as i64));
            if !divided.is_integer() {
                return Err(EngineError::IntegralityViolation {
                    context: format!("c_{n}^{p} (r={r}): {divided} is not an integer"),
                });
            }
            row.push(divided.to_integer() + BigInt::from((r + 1) as i64) * prev_same);
        }
        counts.push(row);
    }
    Ok(PlateauTable { r, counts })
}
