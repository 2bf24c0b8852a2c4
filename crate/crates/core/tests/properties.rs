//! Property tests for the spec-level invariants of the arithmetic and
//! moduli layers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use kummer_core::arith::rational::{exact_sqrt, parse_rational, rat, Rational};
use kummer_core::arith::{
    legendre_symbol, sqrt_mod_p, FieldOps, PrimeFieldCtx, QuadExt, Scalar, Sign,
};
use kummer_core::counting::twist_factor;
use kummer_core::moduli::{
    elliptic_two_isogeny_modulus, kummer_quartic_params, nodal_quartic_condition,
    richelot_transform_rational, two_isogeny_locus_residual, RosenhainModuli,
};

fn bigint_256() -> impl Strategy<Value = BigInt> {
    proptest::collection::vec(any::<u64>(), 4).prop_map(|limbs| {
        let mut acc = BigInt::zero();
        for l in limbs {
            acc = (acc << 64) + BigInt::from(l);
        }
        acc
    })
}

fn rational_256() -> impl Strategy<Value = Rational> {
    (bigint_256(), bigint_256(), any::<bool>()).prop_map(|(n, d, neg)| {
        let d = if d.is_zero() { BigInt::one() } else { d };
        let n = if neg { -n } else { n };
        Rational::new(n, d)
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn rational_parse_format_round_trip(q in rational_256()) {
        let shown = q.to_string();
        let back = parse_rational(&shown).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn legendre_symbol_is_multiplicative(a in 1u64..10_000, b in 1u64..10_000) {
        let ctx = PrimeFieldCtx::new(10_007).unwrap();
        let prod = (a as u128 * b as u128 % 10_007) as u64;
        prop_assert_eq!(
            legendre_symbol(prod, &ctx),
            legendre_symbol(a, &ctx) * legendre_symbol(b, &ctx)
        );
    }

    #[test]
    fn sqrt_mod_p_squares_back(a in 0u64..10_007) {
        let ctx = PrimeFieldCtx::new(10_007).unwrap();
        if legendre_symbol(a, &ctx) == 1 {
            let r = sqrt_mod_p(a, &ctx).unwrap();
            prop_assert_eq!((r as u128 * r as u128 % 10_007) as u64, a);
        } else if a != 0 {
            prop_assert!(sqrt_mod_p(a, &ctx).is_none());
        }
    }

    /// A quadratic scalar with square discriminant must behave exactly like
    /// its rational collapse under all four operations.
    #[test]
    fn quad_ext_with_square_discriminant_collapses(
        a1 in small_rational(), b1 in small_rational(),
        a2 in small_rational(), b2 in small_rational(),
        root in 1i64..20,
    ) {
        let d = rat(root * root, 1);
        let sqrt_d = rat(root, 1);
        // Construct values through Scalar so the collapse rule applies.
        let mk = |a: &Rational, b: &Rational| -> Scalar {
            Scalar::Rat(a.clone()).add(
                &Scalar::sqrt_rational(&d, Sign::Plus).unwrap()
                    .mul(&Scalar::Rat(b.clone())),
            )
        };
        let x = mk(&a1, &b1);
        let y = mk(&a2, &b2);
        let xr = &a1 + &b1 * &sqrt_d;
        let yr = &a2 + &b2 * &sqrt_d;
        prop_assert!(x.is_rational());
        prop_assert_eq!(x.add(&y), Scalar::Rat(&xr + &yr));
        prop_assert_eq!(x.sub(&y), Scalar::Rat(&xr - &yr));
        prop_assert_eq!(x.mul(&y), Scalar::Rat(&xr * &yr));
        if !yr.is_zero() {
            prop_assert_eq!(x.div(&y).unwrap(), Scalar::Rat(&xr / &yr));
        }
    }

    /// Nontrivial extensions: (a + b√d)(a − b√d) = a² − b²d, and division
    /// round-trips.
    #[test]
    fn quad_ext_norm_and_division(
        a in small_rational(), b in small_rational(),
    ) {
        let d = rat(2, 1);
        let x = Scalar::Ext(QuadExt { a: a.clone(), b: b.clone(), d: d.clone() });
        if b.is_zero() {
            return Ok(());
        }
        let conj = Scalar::Ext(QuadExt { a: a.clone(), b: -b.clone(), d });
        let norm = x.mul(&conj);
        prop_assert_eq!(norm.as_rational().unwrap(), &(&a * &a - &b * &b * rat(2, 1)));
        let y = Scalar::Ext(QuadExt { a: rat(1, 3), b: rat(5, 2), d: rat(2, 1) });
        let z = x.div(&y).unwrap();
        prop_assert_eq!(z.mul(&y), x);
    }

    /// Richelot applied twice is the identity (left column inverts right).
    #[test]
    fn richelot_involution(
        l1 in small_rational(), l2 in small_rational(), l3 in small_rational(),
    ) {
        let values = [l1, l2, l3];
        match richelot_transform_rational(&values) {
            Err(_) => {} // degenerate denominator: outside the domain
            Ok(image) => {
                if let Ok(back) = richelot_transform_rational(&image) {
                    prop_assert_eq!(back, values);
                }
            }
        }
    }

    /// ν(Λ)·ν(Λ′) = 1 exactly.
    #[test]
    fn twist_reciprocity(
        l1 in small_rational(), l2 in small_rational(), l3 in small_rational(),
    ) {
        let values = [l1, l2, l3];
        if let (Ok(image), Ok(nu)) = (
            richelot_transform_rational(&values),
            twist_factor(&values),
        ) {
            if nu.degenerate {
                return Ok(());
            }
            let nu_image = twist_factor(&image).unwrap();
            prop_assert_eq!(nu.nu * nu_image.nu, rat(1, 1));
        }
    }

    /// D² = A² + B² + C² + ABC − 4 and the nodal residual vanish for
    /// parameters built from any admissible Rosenhain triple.
    #[test]
    fn quartic_identity_and_nodal_residual(
        l1 in small_rational(), l2 in small_rational(), l3 in small_rational(),
    ) {
        let Ok(ros) = RosenhainModuli::new(l1, l2, l3) else { return Ok(()) };
        let Ok(params) = kummer_quartic_params(&ros) else { return Ok(()) };
        prop_assert!(params.identity_residual().is_zero());
        let xi = [
            rat(1, 1),
            -params.a.clone(),
            -params.b.clone(),
            -params.c.clone(),
            rat(2, 1) * &params.d,
        ];
        prop_assert!(nodal_quartic_condition(&xi).is_zero());
    }

    /// The isogenous-modulus construction lands on the two-isogeny locus.
    #[test]
    fn isogeny_modulus_lies_on_locus(n in 2i64..40, d in 1i64..12) {
        let lambda = rat(n * n, d * d); // square, so the image is rational
        if lambda.is_one() {
            return Ok(());
        }
        let image = elliptic_two_isogeny_modulus(&lambda, Sign::Plus).unwrap();
        let image = image.as_rational().unwrap().clone();
        if image.is_zero() || image.is_one() {
            return Ok(());
        }
        let locus = two_isogeny_locus_residual(&lambda, &image).unwrap();
        prop_assert!(locus.on_locus, "residual {}", locus.residual);
    }
}

#[test]
fn exact_sqrt_against_squaring() {
    for n in 0..200i64 {
        let q = rat(n * n, 49);
        assert_eq!(exact_sqrt(&q), Some(rat(n, 7)));
    }
}
