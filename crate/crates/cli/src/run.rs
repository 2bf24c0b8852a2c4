//! Subcommand implementations. Every runner returns Ok(all_checks_passed);
//! anything unparseable or mathematically inadmissible is a usage error.

use std::path::PathBuf;

use serde::Serialize;

use kummer_core::arith::fp::is_prime_u64;
use kummer_core::arith::rational::parse_rational;
use kummer_core::arith::{PrimeFieldCtx, Sign};
use kummer_core::counting::{
    count_relation_check, count_report, jacobian_order, twist_factor, CountReport,
};
use kummer_core::maps;
use kummer_core::moduli::{
    kummer_quartic_params, level_two_from_rosenhain, nodal_quartic_condition, richelot_transform,
    RosenhainModuli,
};
use kummer_core::periods::{holomorphic_period_check, quadratic_transformation_check};
use kummer_core::rng::SplitMix64;
use kummer_core::surfaces::census::{census_diff, expected_census};
use kummer_core::surfaces::{catalog, singular_fiber_summary, CatalogId};
use kummer_core::Rational;

use crate::output::{csv_table, emit, emit_json};
use crate::parallel::ordered_map;
use crate::{Command, Format};

pub fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Count {
            primes,
            moduli,
            triples,
            seed,
            ntt,
            timings,
            format,
            out,
        } => count(primes, moduli, triples, seed, ntt, timings, format, out),
        Command::VerifyMaps {
            p,
            trials,
            seed,
            lambda1,
            lambda2,
            rosenhain,
            format,
            out,
        } => verify_maps(p, trials, seed, lambda1, lambda2, rosenhain, format, out),
        Command::Fibers {
            id,
            l1,
            l2,
            l3,
            params,
            format,
            out,
        } => fibers(id, l1, l2, l3, params, format, out),
        Command::Isogeny {
            rosenhain,
            sign,
            format,
            out,
        } => isogeny(rosenhain, sign, format, out),
        Command::Relations {
            rosenhain,
            primes,
            sign,
            format,
            out,
        } => relations(rosenhain, primes, sign, format, out),
        Command::Jacobian {
            p,
            coeffs,
            random,
            seed,
            format,
            out,
        } => jacobian(p, coeffs, random, seed, format, out),
        Command::Periods {
            lambdas,
            tol,
            format,
            out,
        } => periods(lambdas, tol, format, out),
        Command::Bench {
            primes,
            ntt,
            seed,
            format,
            out,
        } => bench(primes, ntt, seed, format, out),
    }
}

fn parse_primes(spec: &str) -> Result<Vec<u64>, String> {
    let spec = spec.trim();
    let list: Vec<u64> = if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad prime range {spec:?}"))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad prime range {spec:?}"))?;
        (lo..=hi).filter(|&n| is_prime_u64(n) && n > 2).collect()
    } else {
        spec.split(',')
            .map(|tok| {
                let n: u64 = tok
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad prime {tok:?}"))?;
                if !is_prime_u64(n) || n == 2 {
                    return Err(format!("{n} is not an odd prime"));
                }
                Ok(n)
            })
            .collect::<Result<_, _>>()?
    };
    if list.is_empty() {
        return Err(format!("no odd primes in {spec:?}"));
    }
    Ok(list)
}

fn parse_rationals(spec: &str, expect: Option<usize>) -> Result<Vec<Rational>, String> {
    let vals: Vec<Rational> = spec
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()?;
    if let Some(n) = expect {
        if vals.len() != n {
            return Err(format!(
                "expected {n} comma-separated rationals in {spec:?}"
            ));
        }
    }
    Ok(vals)
}

fn parse_sign(spec: &str) -> Result<Sign, String> {
    match spec.trim() {
        "+1" | "+" | "plus" => Ok(Sign::Plus),
        "-1" | "-" | "minus" => Ok(Sign::Minus),
        other => Err(format!("bad sign {other:?}; use +1 or -1")),
    }
}

fn rosenhain_from(spec: &str) -> Result<RosenhainModuli, String> {
    let vals = parse_rationals(spec, Some(3))?;
    RosenhainModuli::new(vals[0].clone(), vals[1].clone(), vals[2].clone())
        .map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn count(
    primes: String,
    moduli: Option<String>,
    triples: u32,
    seed: Option<u64>,
    ntt: bool,
    timings: bool,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let primes = parse_primes(&primes)?;
    let fixed = match &moduli {
        Some(spec) => Some(parse_rationals(spec, Some(3))?),
        None => None,
    };
    if fixed.is_none() && seed.is_none() {
        return Err("--seed is required when sampling random triples".into());
    }
    // Work items are fully determined up front so the fan-out stays ordered.
    let mut items: Vec<(u64, [Rational; 3])> = vec![];
    for &p in &primes {
        match &fixed {
            Some(t) => items.push((p, [t[0].clone(), t[1].clone(), t[2].clone()])),
            None => {
                let mut rng = SplitMix64::new(seed.unwrap() ^ p.wrapping_mul(0x9e3779b97f4a7c15));
                for _ in 0..triples {
                    items.push((
                        p,
                        [
                            kummer_core::arith::rational::rat_i64(rng.below(p) as i64),
                            kummer_core::arith::rational::rat_i64(rng.below(p) as i64),
                            kummer_core::arith::rational::rat_i64(rng.below(p) as i64),
                        ],
                    ));
                }
            }
        }
    }
    let rows: Vec<Result<CountReport, String>> = ordered_map(items, |(p, triple)| {
        let ctx = PrimeFieldCtx::new(*p).map_err(|e| e.to_string())?;
        count_report(triple, &ctx, ntt).map_err(|e| e.to_string())
    });
    let rows: Vec<CountReport> = rows.into_iter().collect::<Result<_, _>>()?;
    let all_agree = rows.iter().all(|r| r.agree);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                p: u64,
                a: &'a str,
                b: &'a str,
                c: &'a str,
                closed_form: u64,
                character_sum: u64,
                agree: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                t_naive_ns: Option<u128>,
                #[serde(skip_serializing_if = "Option::is_none")]
                t_conv_ns: Option<u128>,
            }
            let view: Vec<Row> = rows
                .iter()
                .map(|r| Row {
                    p: r.p,
                    a: &r.a,
                    b: &r.b,
                    c: &r.c,
                    closed_form: r.closed_form,
                    character_sum: r.character_sum,
                    agree: r.agree,
                    t_naive_ns: timings.then_some(r.t_naive_ns),
                    t_conv_ns: timings.then_some(r.t_conv_ns),
                })
                .collect();
            emit_json(&view, &out)?;
        }
        Format::Csv => {
            let mut header = vec!["p", "a", "b", "c", "closed_form", "character_sum", "agree"];
            if timings {
                header.push("t_naive_ns");
                header.push("t_conv_ns");
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.p.to_string(),
                        r.a.clone(),
                        r.b.clone(),
                        r.c.clone(),
                        r.closed_form.to_string(),
                        r.character_sum.to_string(),
                        r.agree.to_string(),
                    ];
                    if timings {
                        row.push(r.t_naive_ns.to_string());
                        row.push(r.t_conv_ns.to_string());
                    }
                    row
                })
                .collect();
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(all_agree)
}

#[allow(clippy::too_many_arguments)]
fn verify_maps(
    p: u64,
    trials: u32,
    seed: u64,
    lambda1: String,
    lambda2: String,
    rosenhain: String,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let ctx = PrimeFieldCtx::new(p).map_err(|e| e.to_string())?;
    let l1 = parse_rational(&lambda1)?;
    let l2 = parse_rational(&lambda2)?;
    let p18 = vec![l1, l2];
    let ros = rosenhain_from(&rosenhain)?;
    let level = level_two_from_rosenhain(&ros, Sign::Plus).map_err(|e| e.to_string())?;
    let image = richelot_transform(&level.values).map_err(|e| e.to_string())?;
    let p17: Vec<Rational> = image
        .iter()
        .map(|s| {
            s.as_rational().cloned().ok_or_else(|| {
                "rank-17 moduli are irrational; pick Rosenhain roots with square product"
                    .to_string()
            })
        })
        .collect::<Result<_, _>>()?;

    enum Job {
        Single(maps::MapDescriptor),
        Chain(&'static str, Vec<maps::MapDescriptor>),
        Involution(maps::MapDescriptor),
        Commutation(maps::MapDescriptor, maps::MapDescriptor),
        Doubling(maps::MapDescriptor, maps::MapDescriptor),
    }
    let mut jobs = vec![];
    for desc in maps::map_catalog() {
        jobs.push(Job::Single(desc));
    }
    for (label, ids) in maps::composite_chains() {
        let chain = ids
            .iter()
            .map(|id| maps::find_map(id).unwrap())
            .collect::<Vec<_>>();
        jobs.push(Job::Chain(label, chain));
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
        jobs.push(Job::Involution(maps::find_map(id).unwrap()));
    }
    jobs.push(Job::Commutation(
        maps::find_map("IOTA_18").unwrap(),
        maps::find_map("JMATH_18").unwrap(),
    ));
    jobs.push(Job::Commutation(
        maps::find_map("IOTA_17").unwrap(),
        maps::find_map("JMATH_17").unwrap(),
    ));
    jobs.push(Job::Doubling(
        maps::find_map("ISOG_18").unwrap(),
        maps::find_map("DUAL_ISOG_18").unwrap(),
    ));
    jobs.push(Job::Doubling(
        maps::find_map("ISOG_17").unwrap(),
        maps::find_map("DUAL_ISOG_17").unwrap(),
    ));

    let pick = |rank18: bool| -> &[Rational] {
        if rank18 {
            &p18
        } else {
            &p17
        }
    };
    let reports: Vec<Result<maps::MapReport, String>> = ordered_map(jobs, |job| {
        let res = match job {
            Job::Single(d) => maps::verify_map(d, pick(d.id.contains("18")), &ctx, trials, seed),
            Job::Chain(label, chain) => {
                maps::verify_chain(label, chain, pick(label.contains("18")), &ctx, trials, seed)
            }
            Job::Involution(d) => {
                maps::verify_involution(d, pick(d.id.contains("18")), &ctx, trials, seed)
            }
            Job::Commutation(a, b) => {
                maps::verify_commutation(a, b, pick(a.id.contains("18")), &ctx, trials, seed)
            }
            Job::Doubling(i, d) => {
                maps::verify_isogeny_doubling(i, d, pick(i.id.contains("18")), &ctx, trials, seed)
            }
        };
        res.map_err(|e| e.to_string())
    });
    let reports: Vec<maps::MapReport> = reports.into_iter().collect::<Result<_, _>>()?;
    let all_ok = reports.iter().all(|r| r.ok());
    match format {
        Format::Json => emit_json(&reports, &out)?,
        Format::Csv => {
            let header = vec![
                "map_id",
                "p",
                "trials",
                "passes",
                "failures",
                "exceptional_skips",
            ];
            let body: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.map_id.clone(),
                        r.p.to_string(),
                        r.trials.to_string(),
                        r.passes.to_string(),
                        r.failures.len().to_string(),
                        r.exceptional_skips.to_string(),
                    ]
                })
                .collect();
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(all_ok)
}

fn fibers(
    id: String,
    l1: Option<String>,
    l2: Option<String>,
    l3: Option<String>,
    params: Option<String>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let id: CatalogId = id.parse().map_err(|e| format!("{e}"))?;
    let mut values: Vec<Rational> = vec![];
    if let Some(spec) = params {
        values = parse_rationals(&spec, None)?;
    } else {
        for slot in [l1, l2, l3].into_iter().flatten() {
            values.push(parse_rational(&slot)?);
        }
    }
    let model = catalog(id, &values).map_err(|e| e.to_string())?;
    let surface = model
        .as_weierstrass()
        .ok_or_else(|| format!("{} is not an elliptic fibration", id.name()))?;
    let summary = singular_fiber_summary(surface).map_err(|e| e.to_string())?;
    let computed = summary.census();
    let expected = expected_census(id);
    let diff = expected
        .as_ref()
        .map(|e| census_diff(&computed, &e.census))
        .unwrap_or_default();
    let pass = diff.is_empty() && summary.warnings.is_empty();

    #[derive(Serialize)]
    struct FiberOut<'a> {
        surface: kummer_core::surfaces::SurfaceDump,
        summary: &'a kummer_core::surfaces::kodaira::FiberSummary,
        census: &'a std::collections::BTreeMap<String, usize>,
        expected: Option<std::collections::BTreeMap<String, usize>>,
        diff: Vec<(String, usize, usize)>,
        pass: bool,
    }
    match format {
        Format::Json => emit_json(
            &FiberOut {
                surface: surface.dump(),
                summary: &summary,
                census: &computed,
                expected: expected.map(|e| e.census),
                diff: diff.clone(),
                pass,
            },
            &out,
        )?,
        Format::Csv => {
            let header = vec!["place", "kodaira", "count"];
            let body: Vec<Vec<String>> = summary
                .fibers
                .iter()
                .map(|f| {
                    vec![
                        format!("{:?}", f.place),
                        f.kodaira.clone(),
                        f.count.to_string(),
                    ]
                })
                .collect();
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(pass)
}

fn isogeny(
    rosenhain: String,
    sign: String,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let ros = rosenhain_from(&rosenhain)?;
    let sign = parse_sign(&sign)?;
    let level = level_two_from_rosenhain(&ros, sign).map_err(|e| e.to_string())?;
    let image = richelot_transform(&level.values).map_err(|e| e.to_string())?;
    let round_trip = richelot_transform(&image).map_err(|e| e.to_string())?;
    let involution_ok = round_trip == level.values;

    let quartic = kummer_quartic_params(&ros).map_err(|e| e.to_string())?;
    let d_sq_ok = quartic.identity_residual() == kummer_core::arith::rational::rat(0, 1);
    let xi = [
        kummer_core::arith::rational::rat(1, 1),
        -quartic.a.clone(),
        -quartic.b.clone(),
        -quartic.c.clone(),
        kummer_core::arith::rational::rat(2, 1) * &quartic.d,
    ];
    let nodal = nodal_quartic_condition(&xi);
    let nodal_ok = nodal == kummer_core::arith::rational::rat(0, 1);

    // The twist factor needs rational level-two moduli.
    let rational_level: Option<[Rational; 3]> = level
        .values
        .iter()
        .map(|s| s.as_rational().cloned())
        .collect::<Option<Vec<_>>>()
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()]);
    let (nu, reciprocity_ok) = match &rational_level {
        Some(lam) => {
            let nu = twist_factor(lam).map_err(|e| e.to_string())?;
            let lamp: Vec<Rational> = image
                .iter()
                .map(|s| s.as_rational().cloned().unwrap())
                .collect();
            let nup = twist_factor(&[lamp[0].clone(), lamp[1].clone(), lamp[2].clone()])
                .map_err(|e| e.to_string())?;
            let ok = &nu.nu * &nup.nu == kummer_core::arith::rational::rat(1, 1);
            (Some(nu.nu.to_string()), Some(ok))
        }
        None => (None, None),
    };

    #[derive(Serialize)]
    struct IsogenyOut {
        rosenhain: [String; 3],
        l: String,
        level_two: [String; 3],
        richelot_image: [String; 3],
        richelot_involution_ok: bool,
        quartic_a: String,
        quartic_b: String,
        quartic_c: String,
        quartic_d: String,
        d_squared_identity_ok: bool,
        nodal_residual: String,
        nodal_ok: bool,
        nu: Option<String>,
        nu_reciprocity_ok: Option<bool>,
    }
    let report = IsogenyOut {
        rosenhain: [ros.l1.to_string(), ros.l2.to_string(), ros.l3.to_string()],
        l: level.l.to_string(),
        level_two: [
            level.values[0].to_string(),
            level.values[1].to_string(),
            level.values[2].to_string(),
        ],
        richelot_image: [
            image[0].to_string(),
            image[1].to_string(),
            image[2].to_string(),
        ],
        richelot_involution_ok: involution_ok,
        quartic_a: quartic.a.to_string(),
        quartic_b: quartic.b.to_string(),
        quartic_c: quartic.c.to_string(),
        quartic_d: quartic.d.to_string(),
        d_squared_identity_ok: d_sq_ok,
        nodal_residual: nodal.to_string(),
        nodal_ok,
        nu,
        nu_reciprocity_ok: reciprocity_ok,
    };
    let pass = involution_ok && d_sq_ok && nodal_ok && report.nu_reciprocity_ok.unwrap_or(true);
    match format {
        Format::Json => emit_json(&report, &out)?,
        Format::Csv => {
            let header = vec!["field", "value"];
            let body = vec![
                vec!["l".into(), report.l.clone()],
                vec!["Lambda".into(), report.level_two.join(";")],
                vec!["Lambda_prime".into(), report.richelot_image.join(";")],
                vec!["A".into(), report.quartic_a.clone()],
                vec!["B".into(), report.quartic_b.clone()],
                vec!["C".into(), report.quartic_c.clone()],
                vec!["D".into(), report.quartic_d.clone()],
                vec!["nu".into(), report.nu.clone().unwrap_or_default()],
                vec!["pass".into(), pass.to_string()],
            ];
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(pass)
}

fn relations(
    rosenhain: String,
    primes: String,
    sign: String,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let ros = rosenhain_from(&rosenhain)?;
    let sign = parse_sign(&sign)?;
    let primes = parse_primes(&primes)?;
    let mut reports = vec![];
    let mut skipped = vec![];
    for p in primes {
        let ctx = PrimeFieldCtx::new(p).map_err(|e| e.to_string())?;
        match count_relation_check(&ros, sign, &ctx) {
            Ok(rep) => reports.push(rep),
            Err(kummer_core::counting::CountError::Arith(e)) => {
                skipped.push((p, e.to_string()));
            }
            Err(e @ kummer_core::counting::CountError::BadReduction { .. }) => {
                skipped.push((p, e.to_string()));
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    // The classical factor-2 and sqrt(nu) readings are ambiguous and do not
    // hold for raw character sums; the pass signal is the uniform validity
    // of the offset readings, with everything reported either way.
    let pass = !reports.is_empty() && reports.iter().all(|r| r.variant1_holds && r.variant2_holds);
    #[derive(Serialize)]
    struct RelationsOut {
        reports: Vec<kummer_core::counting::RelationReport>,
        skipped_bad_reduction: Vec<(u64, String)>,
        all_variants_hold: bool,
    }
    match format {
        Format::Json => emit_json(
            &RelationsOut {
                reports,
                skipped_bad_reduction: skipped,
                all_variants_hold: pass,
            },
            &out,
        )?,
        Format::Csv => {
            let header = vec![
                "p",
                "s_prime_upper",
                "s_prime_shioda",
                "y_prime_1",
                "y_prime_2",
                "relation1_upper",
                "relation1_shioda",
                "relation2_branch",
                "variant1",
                "variant2",
            ];
            let body: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.s_prime_upper.to_string(),
                        r.s_prime_shioda.to_string(),
                        r.y_prime_1.to_string(),
                        r.y_prime_2.to_string(),
                        r.relation1_upper_holds.to_string(),
                        r.relation1_shioda_holds.to_string(),
                        r.relation2_branch.clone(),
                        r.variant1_holds.to_string(),
                        r.variant2_holds.to_string(),
                    ]
                })
                .collect();
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(pass)
}

fn jacobian(
    p: u64,
    coeffs: Option<String>,
    random: u32,
    seed: Option<u64>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let ctx = PrimeFieldCtx::new(p).map_err(|e| e.to_string())?;
    let mut curves: Vec<Vec<Rational>> = vec![];
    match coeffs {
        Some(spec) => curves.push(parse_rationals(&spec, None)?),
        None => {
            let seed = seed.ok_or("--seed is required for random curves")?;
            let mut rng = SplitMix64::new(seed);
            while curves.len() < random as usize {
                let candidate: Vec<Rational> = (0..7)
                    .map(|k| {
                        let v = if k == 6 {
                            1 + rng.below(p - 1)
                        } else {
                            rng.below(p)
                        };
                        kummer_core::arith::rational::rat_i64(v as i64)
                    })
                    .collect();
                if jacobian_order(&candidate, &ctx).is_ok() {
                    curves.push(candidate);
                }
            }
        }
    }
    let reports: Vec<kummer_core::counting::JacobianReport> = curves
        .iter()
        .map(|c| jacobian_order(c, &ctx).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let pass = reports.iter().all(|r| r.within_weil && r.parity_even);
    match format {
        Format::Json => emit_json(&reports, &out)?,
        Format::Csv => {
            let header = vec!["p", "curve", "n1", "n2", "jac_order", "within_weil"];
            let body: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.curve.join(";"),
                        r.n1.to_string(),
                        r.n2.to_string(),
                        r.jac_order.to_string(),
                        r.within_weil.to_string(),
                    ]
                })
                .collect();
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(pass)
}

fn periods(
    lambdas: String,
    tol: f64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let values = parse_rationals(&lambdas, None)?;
    let mut checks = vec![];
    for lam in &values {
        let lf = kummer_core::arith::rational::to_f64(lam);
        checks.push(holomorphic_period_check(lf, tol).map_err(|e| e.to_string())?);
        for (pp, qq) in [(0.125, 0.375), (0.25, 0.75)] {
            checks
                .push(quadratic_transformation_check(pp, qq, lf, tol).map_err(|e| e.to_string())?);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    match format {
        Format::Json => emit_json(&checks, &out)?,
        Format::Csv => {
            let header = vec!["label", "lhs", "rhs", "relative_difference", "pass"];
            let body: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.label.clone(),
                        format!("{:.15e}", c.lhs),
                        format!("{:.15e}", c.rhs),
                        format!("{:.3e}", c.relative_difference),
                        c.pass.to_string(),
                    ]
                })
                .collect();
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(pass)
}

fn bench(
    primes: String,
    ntt: bool,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, String> {
    let primes = parse_primes(&primes)?;
    #[derive(Serialize)]
    struct BenchRow {
        p: u64,
        t_char_ns: u128,
        t_naive_ns: u128,
        t_conv_ns: u128,
        t_ntt_ns: Option<u128>,
        agree: bool,
    }
    let mut rows = vec![];
    for p in primes {
        let ctx = PrimeFieldCtx::new(p).map_err(|e| e.to_string())?;
        let mut rng = SplitMix64::new(seed ^ p);
        let triple = [
            kummer_core::arith::rational::rat_i64(rng.below(p) as i64),
            kummer_core::arith::rational::rat_i64(rng.below(p) as i64),
            kummer_core::arith::rational::rat_i64(rng.below(p) as i64),
        ];
        let model = catalog(CatalogId::Legendre17, &triple).map_err(|e| e.to_string())?;
        let cover = model
            .as_double_cover()
            .unwrap()
            .reduce_mod_p(&ctx)
            .map_err(|e| e.to_string())?;
        let a = ctx.reduce_rational(&triple[0]).map_err(|e| e.to_string())?;
        let b = ctx.reduce_rational(&triple[1]).map_err(|e| e.to_string())?;
        let c = ctx.reduce_rational(&triple[2]).map_err(|e| e.to_string())?;
        use kummer_core::counting::{character_sum_count, closed_form_count, Kernel};
        let t0 = std::time::Instant::now();
        let cs = character_sum_count(&cover, &ctx);
        let t_char_ns = t0.elapsed().as_nanos();
        let t1 = std::time::Instant::now();
        let naive = closed_form_count(a, b, c, &ctx, Kernel::Naive).map_err(|e| e.to_string())?;
        let t_naive_ns = t1.elapsed().as_nanos();
        let t2 = std::time::Instant::now();
        let conv =
            closed_form_count(a, b, c, &ctx, Kernel::Convolution).map_err(|e| e.to_string())?;
        let t_conv_ns = t2.elapsed().as_nanos();
        let (t_ntt_ns, ntt_val) = if ntt {
            let t3 = std::time::Instant::now();
            let v = closed_form_count(a, b, c, &ctx, Kernel::Ntt).map_err(|e| e.to_string())?;
            (Some(t3.elapsed().as_nanos()), Some(v))
        } else {
            (None, None)
        };
        let agree = naive == cs && conv == cs && ntt_val.is_none_or(|v| v == cs);
        rows.push(BenchRow {
            p,
            t_char_ns,
            t_naive_ns,
            t_conv_ns,
            t_ntt_ns,
            agree,
        });
    }
    let pass = rows.iter().all(|r| r.agree);
    match format {
        Format::Json => emit_json(&rows, &out)?,
        Format::Csv => {
            let header = vec![
                "p",
                "t_char_ns",
                "t_naive_ns",
                "t_conv_ns",
                "t_ntt_ns",
                "agree",
            ];
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.t_char_ns.to_string(),
                        r.t_naive_ns.to_string(),
                        r.t_conv_ns.to_string(),
                        r.t_ntt_ns.map(|t| t.to_string()).unwrap_or_default(),
                        r.agree.to_string(),
                    ]
                })
                .collect();
            emit(&csv_table(&header, &body), &out)?;
        }
    }
    Ok(pass)
}
