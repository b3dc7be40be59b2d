//! Property tests for the series kernel: ring axioms, inverse laws,
//! the product rule, and the structure of the substitutions.

use num::bigint::BigInt;
use proptest::prelude::*;

use motzkin_plateaus::{MarkerPoly, XSeries};

fn arb_poly() -> impl Strategy<Value = MarkerPoly> {
    prop::collection::vec(((0u32..3), (0u32..3), (-3i64..=3)), 0..4).prop_map(|terms| {
        let mut p = MarkerPoly::zero();
        for (dy, dz, c) in terms {
            p.add_term(dy, dz, BigInt::from(c));
        }
        p
    })
}

fn arb_series(order: usize) -> impl Strategy<Value = XSeries> {
    prop::collection::vec(arb_poly(), order + 1).prop_map(XSeries::from_coeffs)
}

/// Series with constant term 1, suitable for recip and sqrt.
fn arb_unit_series(order: usize) -> impl Strategy<Value = XSeries> {
    arb_series(order).prop_map(|s| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = MarkerPoly::one();
        XSeries::from_coeffs(coeffs)
    })
}

/// z-free series in which every monomial x^n y^p satisfies n >= 3p, the
/// domain of the r = 1 diagonal substitution.
fn arb_diagonal_input(order: usize) -> impl Strategy<Value = XSeries> {
    prop::collection::vec(((0u32..3), (0usize..4), (-3i64..=3)), 0..6).prop_map(move |terms| {
        let mut s = XSeries::zero(order);
        let mut out = s.coeffs().to_vec();
        for (p, extra, c) in terms {
            let n = 3 * p as usize + extra;
            if n <= order {
                out[n].add_term(p, 0, BigInt::from(c));
            }
        }
        s = XSeries::from_coeffs(out);
        s
    })
}

proptest! {
    #[test]
    fn add_commutes(a in arb_series(6), b in arb_series(6)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn mul_commutes(a in arb_series(6), b in arb_series(6)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn add_associates(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_associates(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn recip_is_right_inverse(a in arb_unit_series(7)) {
        let inv = a.recip().unwrap();
        prop_assert_eq!(a.mul(&inv), XSeries::one(7));
        prop_assert_eq!(inv.mul(&a), XSeries::one(7));
    }

    #[test]
    fn sqrt_inverts_squaring(a in arb_unit_series(6)) {
        prop_assert_eq!(a.mul(&a).sqrt().unwrap(), a);
    }

    #[test]
    fn product_rule(a in arb_series(6), b in arb_series(6)) {
        let lhs = a.mul(&b).dx();
        let rhs = a.dx().mul(&b).add(&a.mul(&b.dx()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn subst_y_one_is_a_ring_homomorphism(a in arb_series(5), b in arb_series(5)) {
        prop_assert_eq!(a.add(&b).subst_y_const(1), a.subst_y_const(1).add(&b.subst_y_const(1)));
        prop_assert_eq!(a.mul(&b).subst_y_const(1), a.subst_y_const(1).mul(&b.subst_y_const(1)));
    }

    #[test]
    fn subst_diagonal_is_linear(a in arb_diagonal_input(9), b in arb_diagonal_input(9)) {
        let lhs = a.add(&b).subst_diagonal(1).unwrap();
        let rhs = a.subst_diagonal(1).unwrap().add(&b.subst_diagonal(1).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn subst_diagonal_is_multiplicative_on_monomials(
        p1 in 0u32..3, e1 in 0usize..3, p2 in 0u32..3, e2 in 0usize..3,
    ) {
        let order = 20;
        let m1: XSeries = XSeries::poly(order, &[(1, 3 * p1 as usize + e1, p1, 0)]);
        let m2: XSeries = XSeries::poly(order, &[(1, 3 * p2 as usize + e2, p2, 0)]);
        let lhs = m1.mul(&m2).subst_diagonal(1).unwrap();
        let rhs = m1.subst_diagonal(1).unwrap().mul(&m2.subst_diagonal(1).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
