//! The fixed catalog of rational maps between the catalog fibrations:
//! quotient charts, Nikulin involutions, Van Geemen-Sarti translations and
//! the dual two-isogenies, with point-wise verification over prime fields.
//!
//! Verification is probabilistic by design: for identities of total degree
//! at most 24, one hundred on-surface samples at p = 2³¹−1 make the failure
//! probability of a wrong identity vanishingly small (Schwartz-Zippel).

use serde::Serialize;
use thiserror::Error;

use crate::arith::rational::{rat_i64, Rational};
use crate::arith::{ArithError, FieldOps, FpElem, PrimeFieldCtx};
use crate::poly::UniPoly;
use crate::rng::SplitMix64;
use crate::surfaces::{catalog, sample_point, CatalogId, SurfaceError, WeierstrassSurface};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("unknown map id {0:?}")]
    UnknownMap(String),
    #[error("{map}: the denominator {denominator} vanishes at the input point")]
    ExceptionalLocus {
        map: &'static str,
        denominator: &'static str,
    },
    #[error("vgs_quotient needs a6 = 0 and a4 != 0")]
    NotATorsionModel,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The evaluator shapes: every catalog map is one of these, applied to the
/// appropriate source/target pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// (t, x, y) ↦ (t², t²x, t³y)
    Psi,
    /// (u, X, Y) ↦ (u + 1/u, (u²−1)²X/u⁴, (u²−1)³Y/u⁶)
    PhiChart,
    /// (t, x, y) ↦ (−t, x, −y)
    Iota,
    /// (t, x, y) ↦ (1/t, x/t⁴, −y/t⁶)
    JmathChart,
    /// Fiberwise translation by (0,0): (X, Y) ↦ (p₁/X, −p₁Y/X²)
    VgsTranslate,
    /// Two-isogeny (X, Y) ↦ (Y²/4X², Y(X²−p₁)/8X²)
    Isogeny,
    /// Dual two-isogeny (x, y) ↦ (y²/x², y(16x²−p₂²+4p₁)/16x²), where
    /// p₂, p₁ are the coefficients of the target model.
    DualIsogeny,
}

#[derive(Debug, Clone, Copy)]
pub struct MapDescriptor {
    pub id: &'static str,
    pub kind: MapKind,
    pub source: CatalogId,
    pub target: CatalogId,
    pub degree: u32,
    /// Pullback factor of the holomorphic two-form; recorded as metadata,
    /// not verified (pointwise sampling cannot see it).
    pub two_form_factor: i64,
}

/// Every map of the catalog, both in Picard rank 18 and rank 17.
#[rustfmt::skip]
pub fn map_catalog() -> Vec<MapDescriptor> {
    use CatalogId::*;
    use MapKind::*;
    vec![
        MapDescriptor { id: "PSI_18", kind: Psi, source: J1, target: YRank18, degree: 2, two_form_factor: 2 },
        MapDescriptor { id: "PHI_18", kind: PhiChart, source: YRank18, target: J7, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "CHI_18", kind: Isogeny, source: J7, target: YPrimeRank18, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "ISOG_18", kind: Isogeny, source: YRank18, target: SPrimeRank18, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "DUAL_ISOG_18", kind: DualIsogeny, source: SPrimeRank18, target: YRank18, degree: 2, two_form_factor: 2 },
        MapDescriptor { id: "PHI_PRIME_18", kind: PhiChart, source: SPrimeRank18, target: YPrimeRank18, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "IOTA_18", kind: Iota, source: J1, target: J1, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "JMATH_18", kind: JmathChart, source: J1, target: J1, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "JPRIME_18", kind: JmathChart, source: SPrimeRank18, target: SPrimeRank18, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "JPP_18", kind: JmathChart, source: YRank18, target: YRank18, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "VGS_K_18", kind: VgsTranslate, source: YRank18, target: YRank18, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "PSI_17", kind: Psi, source: S17A, target: Y17, degree: 2, two_form_factor: 2 },
        MapDescriptor { id: "PHI_17", kind: PhiChart, source: Y17, target: S17B, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "CHI_17", kind: Isogeny, source: S17B, target: YPrime17, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "ISOG_17", kind: Isogeny, source: Y17, target: SPrime17, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "DUAL_ISOG_17", kind: DualIsogeny, source: SPrime17, target: Y17, degree: 2, two_form_factor: 2 },
        MapDescriptor { id: "PHI_PRIME_17", kind: PhiChart, source: SPrime17, target: YPrime17, degree: 2, two_form_factor: 1 },
        MapDescriptor { id: "IOTA_17", kind: Iota, source: S17A, target: S17A, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "JMATH_17", kind: JmathChart, source: S17A, target: S17A, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "JPRIME_17", kind: JmathChart, source: Y17, target: Y17, degree: 1, two_form_factor: 1 },
        MapDescriptor { id: "VGS_K_17", kind: VgsTranslate, source: Y17, target: Y17, degree: 1, two_form_factor: 1 },
    ]
}

pub fn find_map(id: &str) -> Result<MapDescriptor, MapError> {
    map_catalog()
        .into_iter()
        .find(|d| d.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| MapError::UnknownMap(id.to_string()))
}

/// The composite chains verified end to end: both sandwich factorizations
/// in each Picard rank, and the product (2,2)-isogenies as composites.
pub fn composite_chains() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("SANDWICH_18", vec!["PSI_18", "PHI_18"]),
        ("CHAIN_18_CHI", vec!["PSI_18", "PHI_18", "CHI_18"]),
        (
            "CHAIN_18_PHI_PRIME",
            vec!["PSI_18", "ISOG_18", "PHI_PRIME_18"],
        ),
        ("BIG_PSI_18", vec!["PSI_18", "ISOG_18"]),
        ("BIG_PSI_PRIME_18", vec!["DUAL_ISOG_18", "PHI_18"]),
        ("SANDWICH_17", vec!["PSI_17", "PHI_17"]),
        ("CHAIN_17_CHI", vec!["PSI_17", "PHI_17", "CHI_17"]),
        (
            "CHAIN_17_PHI_PRIME",
            vec!["PSI_17", "ISOG_17", "PHI_PRIME_17"],
        ),
        ("BIG_PSI_17", vec!["PSI_17", "ISOG_17"]),
        ("BIG_PSI_PRIME_17", vec!["DUAL_ISOG_17", "PHI_17"]),
    ]
}

/// A fibration point in an arbitrary field.
#[derive(Debug, Clone, PartialEq)]
pub struct MapPoint<F> {
    pub base: F,
    pub x: F,
    pub y: F,
}

/// A surface with coefficients converted into the working field once.
#[derive(Debug, Clone)]
pub struct SurfaceView<F> {
    pub a2: Vec<F>,
    pub a4: Vec<F>,
    pub a6: Vec<F>,
}

impl<F: FieldOps> SurfaceView<F> {
    pub fn build(surface: &WeierstrassSurface, conv: &impl Fn(&Rational) -> F) -> Self {
        let cv = |p: &UniPoly| p.coeffs().iter().map(conv).collect();
        SurfaceView {
            a2: cv(&surface.a2),
            a4: cv(&surface.a4),
            a6: cv(&surface.a6),
        }
    }

    fn eval(coeffs: &[F], x: &F) -> F {
        let mut acc = x.zero_val();
        for c in coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn rhs(&self, base: &F, x: &F) -> F {
        let a2 = Self::eval(&self.a2, base);
        let a4 = Self::eval(&self.a4, base);
        let a6 = Self::eval(&self.a6, base);
        x.add(&a2).mul(x).add(&a4).mul(x).add(&a6)
    }

    pub fn contains(&self, pt: &MapPoint<F>) -> bool {
        pt.y.mul(&pt.y) == self.rhs(&pt.base, &pt.x)
    }
}

/// Apply one map. `target` is consulted only by the dual isogeny, whose
/// formula is written in terms of the target model's coefficients.
pub fn apply_map<F: FieldOps>(
    desc: &MapDescriptor,
    source: &SurfaceView<F>,
    target: &SurfaceView<F>,
    pt: &MapPoint<F>,
) -> Result<MapPoint<F>, MapError> {
    let exceptional = |den: &'static str| MapError::ExceptionalLocus {
        map: desc.id,
        denominator: den,
    };
    match desc.kind {
        MapKind::Psi => {
            let t2 = pt.base.mul(&pt.base);
            Ok(MapPoint {
                base: t2.clone(),
                x: t2.mul(&pt.x),
                y: t2.mul(&pt.base).mul(&pt.y),
            })
        }
        MapKind::PhiChart => {
            let uinv = pt.base.inv().ok_or_else(|| exceptional("u"))?;
            let one = pt.base.one_val();
            let w = pt.base.mul(&pt.base).sub(&one).mul(&uinv).mul(&uinv);
            let w2 = w.mul(&w);
            Ok(MapPoint {
                base: pt.base.add(&uinv),
                x: w2.mul(&pt.x),
                y: w2.mul(&w).mul(&pt.y),
            })
        }
        MapKind::Iota => Ok(MapPoint {
            base: pt.base.neg(),
            x: pt.x.clone(),
            y: pt.y.neg(),
        }),
        MapKind::JmathChart => {
            let tinv = pt.base.inv().ok_or_else(|| exceptional("t"))?;
            let t4 = tinv.mul(&tinv).mul(&tinv).mul(&tinv);
            Ok(MapPoint {
                base: tinv.clone(),
                x: pt.x.mul(&t4),
                y: pt.y.mul(&t4).mul(&tinv).mul(&tinv).neg(),
            })
        }
        MapKind::VgsTranslate => {
            let xinv = pt.x.inv().ok_or_else(|| exceptional("X"))?;
            let p1 = SurfaceView::eval(&source.a4, &pt.base);
            Ok(MapPoint {
                base: pt.base.clone(),
                x: p1.mul(&xinv),
                y: p1.mul(&pt.y).mul(&xinv).mul(&xinv).neg(),
            })
        }
        MapKind::Isogeny => {
            let xinv = pt.x.inv().ok_or_else(|| exceptional("X"))?;
            let p1 = SurfaceView::eval(&source.a4, &pt.base);
            let quarter = pt
                .base
                .from_i64(4)
                .inv()
                .expect("4 invertible in odd characteristic");
            let eighth = pt.base.from_i64(8).inv().expect("8 invertible");
            let y_over_x = pt.y.mul(&xinv);
            Ok(MapPoint {
                base: pt.base.clone(),
                x: y_over_x.mul(&y_over_x).mul(&quarter),
                y: pt
                    .y
                    .mul(&pt.x.mul(&pt.x).sub(&p1))
                    .mul(&xinv)
                    .mul(&xinv)
                    .mul(&eighth),
            })
        }
        MapKind::DualIsogeny => {
            let xinv = pt.x.inv().ok_or_else(|| exceptional("x"))?;
            let p2 = SurfaceView::eval(&target.a2, &pt.base);
            let p1 = SurfaceView::eval(&target.a4, &pt.base);
            let sixteen = pt.base.from_i64(16);
            let sixteenth = sixteen.inv().expect("16 invertible");
            let y_over_x = pt.y.mul(&xinv);
            let num = sixteen
                .mul(&pt.x)
                .mul(&pt.x)
                .sub(&p2.mul(&p2))
                .add(&p1.mul(&pt.base.from_i64(4)));
            Ok(MapPoint {
                base: pt.base.clone(),
                x: y_over_x.mul(&y_over_x),
                y: pt.y.mul(&num).mul(&xinv).mul(&xinv).mul(&sixteenth),
            })
        }
    }
}

/// The Van Geemen-Sarti quotient of y² = x³ + p₂x² + p₁x:
/// y² = x³ − (p₂/2)x² + ((p₂²/4 − p₁)/4)x. Applying it twice returns the
/// input under the rescale (a₂, a₄) → (a₂/4, a₄/16), i.e. (x, y) → (4x, 8y).
pub fn vgs_quotient(surface: &WeierstrassSurface) -> Result<WeierstrassSurface, MapError> {
    if !surface.a6.is_zero() || surface.a4.is_zero() {
        return Err(MapError::NotATorsionModel);
    }
    let a2 = surface.a2.scale(&(rat_i64(-1) / rat_i64(2)));
    let a4 = surface
        .a2
        .mul(&surface.a2)
        .sub(&surface.a4.scale(&rat_i64(4)))
        .scale(&rat_i64(16).recip());
    Ok(WeierstrassSurface::new(
        surface.id,
        surface.base_var,
        a2,
        a4,
        UniPoly::zero(),
    )?)
}

/// (a₂, a₄, a₆) → (m·a₂, m²·a₄, m³·a₆): the coefficient action of the fiber
/// rescale used to compare quotient towers.
pub fn rescale_model(surface: &WeierstrassSurface, m: &Rational) -> WeierstrassSurface {
    WeierstrassSurface::new(
        surface.id,
        surface.base_var,
        surface.a2.scale(m),
        surface.a4.scale(&(m * m)),
        surface.a6.scale(&(m * m * m)),
    )
    .expect("rescale preserves degrees")
}

/// A failed sample: the input point and where the chain broke.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub base: u64,
    pub x: u64,
    pub y: u64,
    pub stage: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub map_id: String,
    pub p: u64,
    pub trials: u32,
    pub passes: u32,
    pub failures: Vec<Witness>,
    pub exceptional_skips: u32,
}

impl MapReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passes > 0
    }
}

fn fp_views(
    ids: &[CatalogId],
    params: &[Rational],
    ctx: &PrimeFieldCtx,
) -> Result<Vec<SurfaceView<FpElem>>, MapError> {
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let model = catalog(*id, params)?;
        let s = model
            .as_weierstrass()
            .expect("map catalog endpoints are Weierstrass models");
        // Pre-check reducibility so the conversion closure cannot fail.
        s.reduce_mod_p(ctx)?;
        let p = ctx.p();
        let view = SurfaceView::build(s, &|c: &Rational| FpElem {
            v: ctx.reduce_rational(c).expect("checked reducible"),
            p,
        });
        out.push(view);
    }
    Ok(out)
}

fn source_model_fp(
    id: CatalogId,
    params: &[Rational],
    ctx: &PrimeFieldCtx,
) -> Result<crate::surfaces::WeierstrassFp, MapError> {
    let model = catalog(id, params)?;
    Ok(model.as_weierstrass().unwrap().reduce_mod_p(ctx)?)
}

/// Sample points on the source surface and push them through the map;
/// every image must satisfy the target equation.
pub fn verify_map(
    desc: &MapDescriptor,
    params: &[Rational],
    ctx: &PrimeFieldCtx,
    trials: u32,
    seed: u64,
) -> Result<MapReport, MapError> {
    verify_chain(desc.id, &[*desc], params, ctx, trials, seed)
}

/// Verify a composite chain end to end: each sampled point must map through
/// every stage, landing on the corresponding target each time.
pub fn verify_chain(
    label: &str,
    chain: &[MapDescriptor],
    params: &[Rational],
    ctx: &PrimeFieldCtx,
    trials: u32,
    seed: u64,
) -> Result<MapReport, MapError> {
    assert!(!chain.is_empty());
    for pair in chain.windows(2) {
        assert_eq!(pair[0].target, pair[1].source, "chain stages must compose");
    }
    let mut ids = vec![chain[0].source];
    ids.extend(chain.iter().map(|d| d.target));
    let views = fp_views(&ids, params, ctx)?;
    let source_fp = source_model_fp(chain[0].source, params, ctx)?;

    let mut rng = SplitMix64::new(seed);
    let mut passes = 0;
    let mut skips = 0;
    let mut failures = vec![];
    for _ in 0..trials {
        let start = sample_point(&source_fp, ctx, &mut rng)?;
        let mut pt = MapPoint {
            base: ctx.elem(start.base),
            x: ctx.elem(start.x),
            y: ctx.elem(start.y),
        };
        let mut outcome = Ok(());
        for (k, desc) in chain.iter().enumerate() {
            match apply_map(desc, &views[k], &views[k + 1], &pt) {
                Ok(img) => {
                    if !views[k + 1].contains(&img) {
                        outcome = Err(format!("image off target after {}", desc.id));
                        break;
                    }
                    pt = img;
                }
                Err(MapError::ExceptionalLocus { .. }) => {
                    outcome = Err(String::new()); // skip marker
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        match outcome {
            Ok(()) => passes += 1,
            Err(msg) if msg.is_empty() => skips += 1,
            Err(msg) => failures.push(Witness {
                base: start.base,
                x: start.x,
                y: start.y,
                stage: msg,
            }),
        }
    }
    Ok(MapReport {
        map_id: label.to_string(),
        p: ctx.p(),
        trials,
        passes,
        failures,
        exceptional_skips: skips,
    })
}

/// Involutions must square to the identity pointwise.
pub fn verify_involution(
    desc: &MapDescriptor,
    params: &[Rational],
    ctx: &PrimeFieldCtx,
    trials: u32,
    seed: u64,
) -> Result<MapReport, MapError> {
    assert_eq!(desc.source, desc.target, "involutions are self-maps");
    let views = fp_views(&[desc.source], params, ctx)?;
    let view = &views[0];
    let source_fp = source_model_fp(desc.source, params, ctx)?;
    let mut rng = SplitMix64::new(seed);
    let mut passes = 0;
    let mut skips = 0;
    let mut failures = vec![];
    for _ in 0..trials {
        let start = sample_point(&source_fp, ctx, &mut rng)?;
        let pt = MapPoint {
            base: ctx.elem(start.base),
            x: ctx.elem(start.x),
            y: ctx.elem(start.y),
        };
        let once = match apply_map(desc, view, view, &pt) {
            Ok(img) => img,
            Err(MapError::ExceptionalLocus { .. }) => {
                skips += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let twice = match apply_map(desc, view, view, &once) {
            Ok(img) => img,
            Err(MapError::ExceptionalLocus { .. }) => {
                skips += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if twice == pt && view.contains(&once) {
            passes += 1;
        } else {
            failures.push(Witness {
                base: start.base,
                x: start.x,
                y: start.y,
                stage: format!("{} applied twice is not the identity", desc.id),
            });
        }
    }
    Ok(MapReport {
        map_id: format!("{}^2 = id", desc.id),
        p: ctx.p(),
        trials,
        passes,
        failures,
        exceptional_skips: skips,
    })
}

/// ι and ȷ on the same surface must commute.
pub fn verify_commutation(
    a: &MapDescriptor,
    b: &MapDescriptor,
    params: &[Rational],
    ctx: &PrimeFieldCtx,
    trials: u32,
    seed: u64,
) -> Result<MapReport, MapError> {
    assert_eq!(a.source, b.source);
    let views = fp_views(&[a.source], params, ctx)?;
    let view = &views[0];
    let source_fp = source_model_fp(a.source, params, ctx)?;
    let mut rng = SplitMix64::new(seed);
    let mut passes = 0;
    let mut skips = 0;
    let mut failures = vec![];
    for _ in 0..trials {
        let start = sample_point(&source_fp, ctx, &mut rng)?;
        let pt = MapPoint {
            base: ctx.elem(start.base),
            x: ctx.elem(start.x),
            y: ctx.elem(start.y),
        };
        let ab = apply_map(a, view, view, &pt).and_then(|q| apply_map(b, view, view, &q));
        let ba = apply_map(b, view, view, &pt).and_then(|q| apply_map(a, view, view, &q));
        match (ab, ba) {
            (Ok(u), Ok(v)) => {
                if u == v {
                    passes += 1;
                } else {
                    failures.push(Witness {
                        base: start.base,
                        x: start.x,
                        y: start.y,
                        stage: format!("{} and {} do not commute", a.id, b.id),
                    });
                }
            }
            _ => skips += 1,
        }
    }
    Ok(MapReport {
        map_id: format!("[{}, {}] = 0", a.id, b.id),
        p: ctx.p(),
        trials,
        passes,
        failures,
        exceptional_skips: skips,
    })
}

/// The dual isogeny composed with the isogeny is multiplication by two on
/// each fiber: checked as membership plus the x-coordinate of doubling.
pub fn verify_isogeny_doubling(
    isog: &MapDescriptor,
    dual: &MapDescriptor,
    params: &[Rational],
    ctx: &PrimeFieldCtx,
    trials: u32,
    seed: u64,
) -> Result<MapReport, MapError> {
    assert_eq!(isog.target, dual.source);
    assert_eq!(isog.source, dual.target);
    let views = fp_views(&[isog.source, isog.target], params, ctx)?;
    let (src, mid) = (&views[0], &views[1]);
    let source_fp = source_model_fp(isog.source, params, ctx)?;
    let mut rng = SplitMix64::new(seed);
    let mut passes = 0;
    let mut skips = 0;
    let mut failures = vec![];
    for _ in 0..trials {
        let start = sample_point(&source_fp, ctx, &mut rng)?;
        let pt = MapPoint {
            base: ctx.elem(start.base),
            x: ctx.elem(start.x),
            y: ctx.elem(start.y),
        };
        if pt.y.is_zero_val() {
            skips += 1; // two-torsion: the double is the zero section
            continue;
        }
        let round_trip = apply_map(isog, src, mid, &pt).and_then(|q| apply_map(dual, mid, src, &q));
        let image = match round_trip {
            Ok(img) => img,
            Err(MapError::ExceptionalLocus { .. }) => {
                skips += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        // x([2]P) from the tangent line: m = (3x² + 2a₂x + a₄)/(2y),
        // x₂ = m² − a₂ − 2x.
        let a2 = SurfaceView::eval(&src.a2, &pt.base);
        let a4 = SurfaceView::eval(&src.a4, &pt.base);
        let three = pt.base.from_i64(3);
        let two = pt.base.from_i64(2);
        let m = three
            .mul(&pt.x)
            .mul(&pt.x)
            .add(&two.mul(&a2).mul(&pt.x))
            .add(&a4)
            .mul(&two.mul(&pt.y).inv().expect("y nonzero"));
        let x2 = m.mul(&m).sub(&a2).sub(&two.mul(&pt.x));
        if src.contains(&image) && image.x == x2 {
            passes += 1;
        } else {
            failures.push(Witness {
                base: start.base,
                x: start.x,
                y: start.y,
                stage: format!("{} then {} is not doubling", isog.id, dual.id),
            });
        }
    }
    Ok(MapReport {
        map_id: format!("{} . {} = [2]", dual.id, isog.id),
        p: ctx.p(),
        trials,
        passes,
        failures,
        exceptional_skips: skips,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::Sign;
    use crate::moduli::{level_two_from_rosenhain, richelot_transform, RosenhainModuli};

    fn ctx() -> PrimeFieldCtx {
        PrimeFieldCtx::new(2147483647).unwrap()
    }

    fn rank18_params() -> Vec<Rational> {
        vec![rat(2, 1), rat(3, 1)]
    }

    fn rank17_params() -> Vec<Rational> {
        // Λ′ from the Richelot transform of Λ(2, 3, 6) = (10/3, 5/2, 2).
        let ros = RosenhainModuli::new(rat(2, 1), rat(3, 1), rat(6, 1)).unwrap();
        let level = level_two_from_rosenhain(&ros, Sign::Plus).unwrap();
        let image = richelot_transform(&level.values).unwrap();
        image
            .iter()
            .map(|s| s.as_rational().unwrap().clone())
            .collect()
    }

    #[test]
    fn psi_at_t_equal_one_fixes_coordinates() {
        let desc = find_map("PSI_18").unwrap();
        let model = catalog(desc.source, &rank18_params()).unwrap();
        let s = model.as_weierstrass().unwrap();
        let conv = |c: &Rational| c.clone();
        let view = SurfaceView::build(s, &conv);
        let tmodel = catalog(desc.target, &rank18_params()).unwrap();
        let tview = SurfaceView::build(tmodel.as_weierstrass().unwrap(), &conv);
        let pt = MapPoint {
            base: rat(1, 1),
            x: rat(5, 7),
            y: rat(-2, 9),
        };
        let img = apply_map(&desc, &view, &tview, &pt).unwrap();
        assert_eq!(img.base, rat(1, 1));
        assert_eq!(img.x, pt.x);
        assert_eq!(img.y, pt.y);
    }

    #[test]
    fn every_catalog_map_passes_sampling() {
        let ctx = ctx();
        let p18 = rank18_params();
        let p17 = rank17_params();
        for desc in map_catalog() {
            let params = if desc.id.ends_with("18") { &p18 } else { &p17 };
            let report = verify_map(&desc, params, &ctx, 25, 0xabcdef).unwrap();
            assert!(report.ok(), "{}: {:?}", desc.id, report.failures.first());
        }
    }

    #[test]
    fn composite_chains_pass_sampling() {
        let ctx = ctx();
        let p18 = rank18_params();
        let p17 = rank17_params();
        for (label, ids) in composite_chains() {
            let chain: Vec<MapDescriptor> = ids.iter().map(|id| find_map(id).unwrap()).collect();
            let params = if label.contains("18") { &p18 } else { &p17 };
            let report = verify_chain(label, &chain, params, &ctx, 25, 0x1234).unwrap();
            assert!(report.ok(), "{label}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn involutions_and_commutation() {
        let ctx = ctx();
        for (a, b, params) in [
            ("IOTA_18", "JMATH_18", rank18_params()),
            ("IOTA_17", "JMATH_17", rank17_params()),
        ] {
            let ia = find_map(a).unwrap();
            let jb = find_map(b).unwrap();
            let r = verify_involution(&ia, &params, &ctx, 25, 7).unwrap();
            assert!(r.ok(), "{a}: {:?}", r.failures.first());
            let r = verify_involution(&jb, &params, &ctx, 25, 7).unwrap();
            assert!(r.ok(), "{b}: {:?}", r.failures.first());
            let r = verify_commutation(&ia, &jb, &params, &ctx, 25, 7).unwrap();
            assert!(r.ok(), "[{a},{b}]: {:?}", r.failures.first());
        }
        for (v, params) in [("VGS_K_18", rank18_params()), ("VGS_K_17", rank17_params())] {
            let d = find_map(v).unwrap();
            let r = verify_involution(&d, &params, &ctx, 25, 9).unwrap();
            assert!(r.ok(), "{v}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn isogeny_then_dual_is_doubling() {
        let ctx = ctx();
        for (i, d, params) in [
            ("ISOG_18", "DUAL_ISOG_18", rank18_params()),
            ("ISOG_17", "DUAL_ISOG_17", rank17_params()),
        ] {
            let isog = find_map(i).unwrap();
            let dual = find_map(d).unwrap();
            let r = verify_isogeny_doubling(&isog, &dual, &params, &ctx, 25, 11).unwrap();
            assert!(r.ok(), "{i}/{d}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn vgs_quotient_reproduces_catalog_targets() {
        // Rank 18: the quotient of the Y-family is exactly the catalog dual
        // model; rank 17 likewise, with no rescale needed.
        let p18 = rank18_params();
        let y = catalog(CatalogId::YRank18, &p18).unwrap();
        let q = vgs_quotient(y.as_weierstrass().unwrap()).unwrap();
        let target = catalog(CatalogId::SPrimeRank18, &p18).unwrap();
        let target = target.as_weierstrass().unwrap();
        assert_eq!(q.a2, target.a2);
        assert_eq!(q.a4, target.a4);

        let p17 = rank17_params();
        let y = catalog(CatalogId::Y17, &p17).unwrap();
        let q = vgs_quotient(y.as_weierstrass().unwrap()).unwrap();
        let target = catalog(CatalogId::SPrime17, &p17).unwrap();
        let target = target.as_weierstrass().unwrap();
        assert_eq!(q.a2, target.a2);
        assert_eq!(q.a4, target.a4);
    }

    #[test]
    fn vgs_quotient_of_j7_picks_the_consistent_variant() {
        let p18 = rank18_params();
        let j7 = catalog(CatalogId::J7, &p18).unwrap();
        let q = vgs_quotient(j7.as_weierstrass().unwrap()).unwrap();
        let consistent = catalog(CatalogId::YPrimeRank18, &p18).unwrap();
        let consistent = consistent.as_weierstrass().unwrap();
        let alt = catalog(CatalogId::YPrimeRank18Alt, &p18).unwrap();
        let alt = alt.as_weierstrass().unwrap();
        assert_eq!(q.a2, consistent.a2);
        assert_eq!(q.a4, consistent.a4);
        assert_ne!(q.a4, alt.a4);
    }

    #[test]
    fn double_quotient_is_input_up_to_rescale() {
        let mv = catalog(CatalogId::YRank18, &rank18_params()).unwrap();
        let s = mv.as_weierstrass().unwrap();
        let twice = vgs_quotient(&vgs_quotient(s).unwrap()).unwrap();
        let expect = rescale_model(s, &rat(1, 4));
        assert_eq!(twice.a2, expect.a2);
        assert_eq!(twice.a4, expect.a4);
    }

    #[test]
    fn quotient_example_from_unit_coefficients() {
        // p₂ = 0, p₁ = 1 gives a₂ = 0, a₄ = −1/4.
        let s = WeierstrassSurface::new(
            CatalogId::EllipticE,
            "u",
            UniPoly::zero(),
            UniPoly::from_i64(&[1]),
            UniPoly::zero(),
        )
        .unwrap();
        let q = vgs_quotient(&s).unwrap();
        assert!(q.a2.is_zero());
        assert_eq!(q.a4, UniPoly::from_coeffs(vec![rat(-1, 4)]));
        // a₆ ≠ 0 rejected.
        let bad = WeierstrassSurface::new(
            CatalogId::EllipticE,
            "u",
            UniPoly::zero(),
            UniPoly::from_i64(&[1]),
            UniPoly::from_i64(&[1]),
        )
        .unwrap();
        assert!(matches!(
            vgs_quotient(&bad),
            Err(MapError::NotATorsionModel)
        ));
    }

    #[test]
    fn vgs_translate_exceptional_at_two_torsion() {
        let ctx = PrimeFieldCtx::new(101).unwrap();
        let desc = find_map("VGS_K_18").unwrap();
        let views = fp_views(&[desc.source], &rank18_params(), &ctx).unwrap();
        let pt = MapPoint {
            base: ctx.elem(3),
            x: ctx.elem(0),
            y: ctx.elem(0),
        };
        let err = apply_map(&desc, &views[0], &views[0], &pt).unwrap_err();
        assert!(matches!(
            err,
            MapError::ExceptionalLocus {
                denominator: "X",
                ..
            }
        ));
    }

    #[test]
    fn sample_point_is_deterministic_and_on_surface() {
        let ctx = ctx();
        let model = catalog(CatalogId::YRank18, &rank18_params()).unwrap();
        let s = model.as_weierstrass().unwrap().reduce_mod_p(&ctx).unwrap();
        let mut r1 = SplitMix64::new(99);
        let mut r2 = SplitMix64::new(99);
        let a = sample_point(&s, &ctx, &mut r1).unwrap();
        let b = sample_point(&s, &ctx, &mut r2).unwrap();
        assert_eq!(a, b);
        assert!(s.contains(&ctx, &a));
    }

    #[test]
    fn reduce_rejects_divisible_denominator() {
        // λ = 1/p makes the model irreducible mod p.
        let ctx = PrimeFieldCtx::new(101).unwrap();
        let model = catalog(CatalogId::YRank18, &[rat(1, 101), rat(3, 1)]).unwrap();
        assert!(model.as_weierstrass().unwrap().reduce_mod_p(&ctx).is_err());
    }
}
