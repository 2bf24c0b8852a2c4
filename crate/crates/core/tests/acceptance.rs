//! The acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with --nocapture). Tolerances and thresholds are pinned
//! here, not configurable.

use std::time::Instant;

use num_traits::{One, Zero};

use kummer_core::arith::rational::{rat, rat_i64, Rational};
use kummer_core::arith::{PrimeFieldCtx, Sign};
use kummer_core::counting::{
    character_sum_count, closed_form_count, count_relation_check, jacobian_order, twist_factor,
    CountError, Kernel,
};
use kummer_core::maps;
use kummer_core::moduli::{
    elliptic_two_isogeny_modulus, kummer_quartic_params, level_two_from_rosenhain,
    modular_curve_x0_2_residual, nodal_quartic_condition, richelot_transform_rational,
    two_isogeny_locus_residual, x0_2_parametrization, RosenhainModuli,
};
use kummer_core::periods::{holomorphic_period_check, quadratic_transformation_check};
use kummer_core::rng::SplitMix64;
use kummer_core::surfaces::census::{census_diff, expected_census};
use kummer_core::surfaces::degeneration::degeneration_limit_check;
use kummer_core::surfaces::{catalog, singular_fiber_summary, CatalogId};

fn all_small_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi)
        .filter(|&n| kummer_core::arith::fp::is_prime_u64(n) && n > 2)
        .collect()
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[{}] {criterion}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Criterion 1: the closed-form count agrees with the character-sum oracle
/// for every prime 3..=101 and 20 seeded-random triples per prime, with
/// both kernels, in under 60 seconds single-threaded.
#[test]
fn criterion_01_closed_form_exactness() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x1234_5678);
    let mut checked = 0u32;
    for p in all_small_primes(3, 101) {
        let ctx = PrimeFieldCtx::new(p).unwrap();
        for _ in 0..20 {
            let (a, b, c) = (rng.below(p), rng.below(p), rng.below(p));
            let model = catalog(
                CatalogId::Legendre17,
                &[rat_i64(a as i64), rat_i64(b as i64), rat_i64(c as i64)],
            )
            .unwrap();
            let cover = model.as_double_cover().unwrap().reduce_mod_p(&ctx).unwrap();
            let oracle = character_sum_count(&cover, &ctx);
            let naive = closed_form_count(a, b, c, &ctx, Kernel::Naive).unwrap();
            let conv = closed_form_count(a, b, c, &ctx, Kernel::Convolution).unwrap();
            assert_eq!(naive, oracle, "naive kernel at p={p}, ({a},{b},{c})");
            assert_eq!(conv, oracle, "convolution kernel at p={p}, ({a},{b},{c})");
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    let pass = elapsed.as_secs() < 60;
    report(
        "criterion 1 (closed-form exactness)",
        pass,
        &format!("{checked} triples, zero mismatches, {elapsed:.2?}"),
    );
    assert!(pass, "runtime {elapsed:?} exceeded 60 s");
}

/// Criterion 2: the hand-verified anchors.
#[test]
fn criterion_02_hand_anchors() {
    let c3 = PrimeFieldCtx::new(3).unwrap();
    for kernel in [Kernel::Naive, Kernel::Convolution] {
        assert_eq!(closed_form_count(1, 1, 1, &c3, kernel).unwrap(), 1);
        assert_eq!(closed_form_count(1, 2, 0, &c3, kernel).unwrap(), 0);
    }
    let ros = RosenhainModuli::new(rat(2, 1), rat(3, 1), rat(7, 1)).unwrap();
    let q = kummer_quartic_params(&ros).unwrap();
    assert_eq!(
        (q.a.clone(), q.b.clone(), q.c.clone(), q.d.clone()),
        (rat(6, 1), rat(8, 1), rat(5, 1), rat(19, 1))
    );
    assert_eq!(&q.d * &q.d, rat(361, 1));
    assert!(q.identity_residual().is_zero());
    let nu = twist_factor(&[rat(10, 3), rat(5, 2), rat(2, 1)]).unwrap();
    assert_eq!(nu.nu, rat(10, 1));
    report(
        "criterion 2 (hand anchors)",
        true,
        "p=3 counts, (6,8,5,19) with D^2 = 361, nu = 10",
    );
}

fn draw_rational(rng: &mut SplitMix64) -> Rational {
    rat(rng.range_i64(-30, 30), rng.range_i64(1, 9))
}

/// Criterion 3: all twelve expected censuses at seeded-random generic moduli.
#[test]
fn criterion_03_fiber_censuses() {
    let mut rng = SplitMix64::new(0xACCE97);
    let banned = [rat(0, 1), rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1)];
    let draw_generic_pair = |rng: &mut SplitMix64| loop {
        let a = draw_rational(rng);
        let b = draw_rational(rng);
        if banned.contains(&a) || banned.contains(&b) || a == b {
            continue;
        }
        // Stay off the two-isogeny locus so rank-18 members are generic.
        if let Ok(l) = two_isogeny_locus_residual(&a, &b) {
            if !l.on_locus {
                return (a, b);
            }
        }
    };
    let (l1, l2) = draw_generic_pair(&mut rng);
    let rank18 = [l1, l2];
    let lp = loop {
        let a = draw_rational(&mut rng);
        let b = draw_rational(&mut rng);
        let c = draw_rational(&mut rng);
        if banned.contains(&a) || banned.contains(&b) || banned.contains(&c) {
            continue;
        }
        if a == b || a == c || b == c {
            continue;
        }
        break [a, b, c];
    };
    let mirror = loop {
        let l = draw_rational(&mut rng);
        if !banned.contains(&l) {
            break [l];
        }
    };
    let cases: Vec<(CatalogId, &[Rational])> = vec![
        (CatalogId::MirrorG2G3, &mirror),
        (CatalogId::J4, &rank18),
        (CatalogId::J1, &rank18),
        (CatalogId::YRank18, &rank18),
        (CatalogId::J7, &rank18),
        (CatalogId::SPrimeRank18, &rank18),
        (CatalogId::YPrimeRank18, &rank18),
        (CatalogId::SPrime17, &lp),
        (CatalogId::Y17, &lp),
        (CatalogId::S17A, &lp),
        (CatalogId::S17B, &lp),
        (CatalogId::YPrime17, &lp),
    ];
    for (id, params) in cases {
        let model = catalog(id, params).unwrap();
        let summary = singular_fiber_summary(model.as_weierstrass().unwrap()).unwrap();
        assert!(
            summary.warnings.is_empty(),
            "{id:?} at {params:?}: {:?}",
            summary.warnings
        );
        assert_eq!(summary.euler_sum, 24, "{id:?} Euler sum");
        let expected = expected_census(id).unwrap();
        let diff = census_diff(&summary.census(), &expected.census);
        assert!(diff.is_empty(), "{id:?} at {params:?}: diff {diff:?}");
    }
    // The two pinned examples of the criterion.
    let mirror_census = expected_census(CatalogId::MirrorG2G3).unwrap().census;
    assert_eq!(mirror_census.get("I4*"), Some(&2));
    assert_eq!(mirror_census.get("I1"), Some(&4));
    let j1_census = expected_census(CatalogId::J1).unwrap().census;
    assert_eq!(j1_census.get("I8"), Some(&2));
    assert_eq!(j1_census.get("I1"), Some(&8));
    report(
        "criterion 3 (fiber censuses)",
        true,
        "12 censuses match, Euler sums all 24",
    );
}

/// Criterion 4: map suite at p = 2^31 − 1, 100 trials each, no failures.
#[test]
fn criterion_04_map_suite() {
    let ctx = PrimeFieldCtx::new(2_147_483_647).unwrap();
    let p18 = vec![rat(2, 1), rat(3, 1)];
    let ros = RosenhainModuli::new(rat(2, 1), rat(3, 1), rat(6, 1)).unwrap();
    let level = level_two_from_rosenhain(&ros, Sign::Plus).unwrap();
    let image = kummer_core::moduli::richelot_transform(&level.values).unwrap();
    let p17: Vec<Rational> = image
        .iter()
        .map(|s| s.as_rational().unwrap().clone())
        .collect();
    let pick = |id: &str| -> &[Rational] {
        if id.contains("18") {
            &p18
        } else {
            &p17
        }
    };
    let trials = 100;
    for desc in maps::map_catalog() {
        let r = maps::verify_map(&desc, pick(desc.id), &ctx, trials, 0xfeedbead).unwrap();
        assert_eq!(r.passes, trials, "{}: {:?}", desc.id, r.failures.first());
        assert!(r.failures.is_empty());
    }
    for (label, ids) in maps::composite_chains() {
        let chain: Vec<maps::MapDescriptor> =
            ids.iter().map(|id| maps::find_map(id).unwrap()).collect();
        let r = maps::verify_chain(label, &chain, pick(label), &ctx, trials, 0xfeedbead).unwrap();
        assert_eq!(r.passes, trials, "{label}: {:?}", r.failures.first());
    }
    for id in [
        "IOTA_18",
        "JMATH_18",
        "JPP_18",
        "JPRIME_18",
        "VGS_K_18",
        "IOTA_17",
        "JMATH_17",
        "JPRIME_17",
        "VGS_K_17",
    ] {
        let d = maps::find_map(id).unwrap();
        let r = maps::verify_involution(&d, pick(id), &ctx, trials, 0x5eed).unwrap();
        assert_eq!(r.passes + r.exceptional_skips, trials, "{id}");
        assert!(r.failures.is_empty(), "{id}: {:?}", r.failures.first());
    }
    for (a, b) in [("IOTA_18", "JMATH_18"), ("IOTA_17", "JMATH_17")] {
        let da = maps::find_map(a).unwrap();
        let db = maps::find_map(b).unwrap();
        let r = maps::verify_commutation(&da, &db, pick(a), &ctx, trials, 0x5eed).unwrap();
        assert!(r.failures.is_empty(), "[{a},{b}]");
    }
    for (i, d) in [("ISOG_18", "DUAL_ISOG_18"), ("ISOG_17", "DUAL_ISOG_17")] {
        let di = maps::find_map(i).unwrap();
        let dd = maps::find_map(d).unwrap();
        let r = maps::verify_isogeny_doubling(&di, &dd, pick(i), &ctx, trials, 0x5eed).unwrap();
        assert!(r.failures.is_empty(), "{i}/{d}: {:?}", r.failures.first());
    }
    report(
        "criterion 4 (map suite)",
        true,
        "all maps, chains, involutions, commutation and doubling checks pass 100/100",
    );
}

/// Criterion 5: the exact identities on 100 seeded-random instances each.
#[test]
fn criterion_05_exact_identities() {
    let mut rng = SplitMix64::new(0x5eed_cafe);

    // Richelot double application is the identity.
    let mut done = 0;
    while done < 100 {
        let values = [
            draw_rational(&mut rng),
            draw_rational(&mut rng),
            draw_rational(&mut rng),
        ];
        let Ok(image) = richelot_transform_rational(&values) else {
            continue;
        };
        let Ok(back) = richelot_transform_rational(&image) else {
            continue;
        };
        assert_eq!(back, values, "richelot involution at {values:?}");
        done += 1;
    }

    // Twist reciprocity.
    let mut done = 0;
    while done < 100 {
        let values = [
            draw_rational(&mut rng),
            draw_rational(&mut rng),
            draw_rational(&mut rng),
        ];
        let Ok(image) = richelot_transform_rational(&values) else {
            continue;
        };
        let Ok(nu) = twist_factor(&values) else {
            continue;
        };
        if nu.degenerate {
            continue;
        }
        let nu_image = twist_factor(&image).unwrap();
        assert!(
            (&nu.nu * &nu_image.nu).is_one(),
            "reciprocity at {values:?}"
        );
        done += 1;
    }

    // D² identity and vanishing nodal residual from Rosenhain triples.
    let mut done = 0;
    while done < 100 {
        let (a, b, c) = (
            draw_rational(&mut rng),
            draw_rational(&mut rng),
            draw_rational(&mut rng),
        );
        let Ok(ros) = RosenhainModuli::new(a, b, c) else {
            continue;
        };
        let Ok(q) = kummer_quartic_params(&ros) else {
            continue;
        };
        assert!(q.identity_residual().is_zero());
        let xi = [
            rat(1, 1),
            -q.a.clone(),
            -q.b.clone(),
            -q.c.clone(),
            rat(2, 1) * &q.d,
        ];
        assert!(nodal_quartic_condition(&xi).is_zero());
        done += 1;
    }

    // X_0(2) parametrization for h = 1..=20.
    for h in 1..=20i64 {
        let (j1, j2) = x0_2_parametrization(&rat(h, 1)).unwrap();
        assert!(modular_curve_x0_2_residual(&j1, &j2).is_zero(), "h = {h}");
    }

    // Two-isogeny locus residual vanishes on the isogenous-modulus family.
    let mut done = 0;
    while done < 100 {
        let k = draw_rational(&mut rng);
        let lambda = &k * &k;
        if lambda.is_zero() || lambda.is_one() {
            continue;
        }
        let image = elliptic_two_isogeny_modulus(&lambda, Sign::Plus).unwrap();
        let image = image.as_rational().unwrap().clone();
        if image.is_zero() || image.is_one() {
            continue;
        }
        let locus = two_isogeny_locus_residual(&lambda, &image).unwrap();
        assert!(locus.on_locus, "residual {} at {lambda}", locus.residual);
        done += 1;
    }
    report(
        "criterion 5 (exact identities)",
        true,
        "richelot^2 = id, nu-reciprocity, D^2, nodal, X_0(2), isogeny locus: 100 each",
    );
}

/// Criterion 6: the Van Geemen-Sarti quotient towers at the coefficient
/// level, with the inner-coefficient discrepancy reported.
#[test]
fn criterion_06_vgs_quotient_identity() {
    let p18 = [rat(2, 1), rat(3, 1)];
    let y = catalog(CatalogId::YRank18, &p18).unwrap();
    let q = maps::vgs_quotient(y.as_weierstrass().unwrap()).unwrap();
    let target = catalog(CatalogId::SPrimeRank18, &p18).unwrap();
    let target = target.as_weierstrass().unwrap();
    assert_eq!(q.a2, target.a2);
    assert_eq!(q.a4, target.a4);

    let p17 = [rat(26, 3), rat(7, 1), rat(9, 4)];
    let y = catalog(CatalogId::Y17, &p17).unwrap();
    let q = maps::vgs_quotient(y.as_weierstrass().unwrap()).unwrap();
    let target = catalog(CatalogId::SPrime17, &p17).unwrap();
    let target = target.as_weierstrass().unwrap();
    assert_eq!(q.a2, target.a2);
    assert_eq!(q.a4, target.a4);

    // The second rank-18 quotient admits two printed readings; exactly one
    // is consistent with the quotient construction.
    let j7 = catalog(CatalogId::J7, &p18).unwrap();
    let q = maps::vgs_quotient(j7.as_weierstrass().unwrap()).unwrap();
    let consistent = catalog(CatalogId::YPrimeRank18, &p18).unwrap();
    let consistent = consistent.as_weierstrass().unwrap();
    let alt = catalog(CatalogId::YPrimeRank18Alt, &p18).unwrap();
    let alt = alt.as_weierstrass().unwrap();
    let matches_consistent = q.a2 == consistent.a2 && q.a4 == consistent.a4;
    let matches_alt = q.a2 == alt.a2 && q.a4 == alt.a4;
    assert!(
        matches_consistent ^ matches_alt,
        "exactly one variant must match"
    );
    report(
        "criterion 6 (VGS quotient identity)",
        true,
        &format!(
            "quotients match dual models exactly; second-quotient reading: {}",
            if matches_consistent {
                "doubled inner coefficient (consistent)"
            } else {
                "halved inner coefficient"
            }
        ),
    );
}

/// Criterion 7: the degeneration limit, exactly.
#[test]
fn criterion_07_degeneration_limit() {
    for (k1, k2) in [
        (rat(2, 1), rat(3, 1)),
        (rat(1, 2), rat(2, 5)),
        (rat(-3, 2), rat(5, 4)),
        (rat(7, 3), rat(-4, 5)),
    ] {
        let rep = degeneration_limit_check(&k1, &k2).unwrap();
        assert!(rep.pole_free, "pole at ({k1}, {k2})");
        assert!(rep.limit_matches, "limit mismatch at ({k1}, {k2})");
        assert!(rep.sample_consistent, "sample mismatch at ({k1}, {k2})");
    }
    report(
        "criterion 7 (degeneration limit)",
        true,
        "rescaled pencils are pole-free and hit the rank-18 coefficients at eps = 0",
    );
}

/// Criterion 8: the period identities at relative 1e-10, in under 1 s.
#[test]
fn criterion_08_period_identities() {
    let started = Instant::now();
    for lambda in [2.0, 2.5, 3.0, 10.0] {
        let r = holomorphic_period_check(lambda, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        for (p, q) in [(0.125, 0.375), (0.25, 0.75)] {
            let r = quadratic_transformation_check(p, q, lambda, 1e-10).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_millis() < 1000, "periods took {elapsed:?}");
    report(
        "criterion 8 (period identities)",
        true,
        &format!("all identities at 1e-10, {elapsed:.2?}"),
    );
}

/// Criterion 9: Jacobian orders within Weil intervals, even parity, for 50
/// seeded-random curves over p in {5, 7, 11, 13}.
#[test]
fn criterion_09_jacobian_orders() {
    let mut rng = SplitMix64::new(0x1ac0b1a);
    let mut done = 0;
    let primes = [5u64, 7, 11, 13];
    let mut idx = 0;
    while done < 50 {
        let p = primes[idx % primes.len()];
        idx += 1;
        let ctx = PrimeFieldCtx::new(p).unwrap();
        let coeffs: Vec<Rational> = (0..7)
            .map(|k| {
                let v = if k == 6 {
                    1 + rng.below(p - 1)
                } else {
                    rng.below(p)
                };
                rat_i64(v as i64)
            })
            .collect();
        match jacobian_order(&coeffs, &ctx) {
            Ok(rep) => {
                assert!(rep.within_weil, "p={p}: {rep:?}");
                assert!(rep.parity_even, "p={p}: {rep:?}");
                done += 1;
            }
            Err(CountError::NotSquarefree) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
    report(
        "criterion 9 (jacobian orders)",
        true,
        "50 random curves inside Weil bounds, (N1^2 + N2) always even",
    );
}

/// Criterion 10: the counting relations for λ = (2,3,6) over p ≤ 50.
///
/// Exploratory by design: both candidate |S'| fibrations are computed and
/// both square roots of ν are tried. The raw character sums do NOT satisfy
/// the classical factor-2 / sqrt(ν) readings uniformly; what holds at every
/// good-reduction prime is the offset reading
///   |S'| ≡ |Y'|⁽²⁾ − 1  and  |Y'|⁽²⁾ − |Y'|⁽¹⁾ ≡ 1 − χ(ν)  (mod p),
/// for both candidates. The assertions below encode the criterion as
/// stated, so this test documents the failure rather than hiding it.
#[test]
fn criterion_10_counting_relations() {
    let ros = RosenhainModuli::new(rat(2, 1), rat(3, 1), rat(6, 1)).unwrap();
    let mut reports = vec![];
    for p in all_small_primes(3, 50) {
        let ctx = PrimeFieldCtx::new(p).unwrap();
        match count_relation_check(&ros, Sign::Plus, &ctx) {
            Ok(rep) => reports.push(rep),
            Err(CountError::BadReduction { p, what }) => {
                println!("  p={p}: skipped ({what})");
            }
            Err(CountError::Arith(e)) => {
                println!("  p={p}: skipped (bad reduction: {e})");
            }
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
    assert!(!reports.is_empty());
    println!("  p | S'(upper) S'(shioda) Y1 Y2 | rel1(upper) rel1(shioda) rel2 | offset variants");
    for r in &reports {
        println!(
            "  {:2} | {:3} {:3} {:3} {:3} | {:5} {:5} {:10} | v1={} v2={}",
            r.p,
            r.s_prime_upper,
            r.s_prime_shioda,
            r.y_prime_1,
            r.y_prime_2,
            r.relation1_upper_holds,
            r.relation1_shioda_holds,
            r.relation2_branch,
            r.variant1_holds,
            r.variant2_holds
        );
    }
    let variants_uniform = reports.iter().all(|r| r.variant1_holds && r.variant2_holds);
    println!("  offset variants hold at every good-reduction prime: {variants_uniform}");

    let rel1_upper_uniform = reports.iter().all(|r| r.relation1_upper_holds);
    let rel1_shioda_uniform = reports.iter().all(|r| r.relation1_shioda_holds);
    let rel2_ok = reports
        .iter()
        .filter(|r| r.nu_is_residue)
        .all(|r| matches!(r.relation2_branch.as_str(), "plus" | "minus" | "both"));
    let pass = (rel1_upper_uniform || rel1_shioda_uniform) && rel2_ok;
    report(
        "criterion 10 (counting relations)",
        pass,
        &format!(
            "rel1 uniform: upper={rel1_upper_uniform} shioda={rel1_shioda_uniform}; \
             rel2 at residue primes: {rel2_ok}; offset variants uniform: {variants_uniform}"
        ),
    );
    assert!(
        pass,
        "the classical relation readings do not hold for the raw character sums; \
         the uniformly valid offset readings are reported above (variants: {variants_uniform})"
    );
}
