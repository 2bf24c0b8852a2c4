//! The exact surface catalog: Weierstrass fibrations, affine double covers,
//! quartics, discriminant machinery, and membership checks over any field.

pub mod catalog;
pub mod census;
pub mod degeneration;
pub mod kodaira;

pub use catalog::{catalog, catalog_with_sign, CatalogId};
pub use kodaira::{kodaira_classify, singular_fiber_summary, KodairaType, Place};

use serde::Serialize;
use thiserror::Error;

use crate::arith::rational::{rat_i64, Rational};
use crate::arith::{ArithError, FieldOps, PrimeFieldCtx, Scalar};
use crate::poly::{BiPoly, UniPoly};
use crate::rng::SplitMix64;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("catalog entry {id} expects {expected} parameters, got {got}")]
    WrongArity {
        id: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("parameter constraint violated: {0}")]
    BadParameter(String),
    #[error("the twist l of {0} is irrational here (l^2 = {1}); only rational twists define a model over the rationals")]
    IrrationalTwist(&'static str, Rational),
    #[error("discriminant vanishes identically: the surface is singular")]
    IdenticallySingular,
    #[error("degree bound exceeded for {role}: degree {got} > {bound}")]
    DegreeBound {
        role: &'static str,
        got: usize,
        bound: usize,
    },
    #[error("vanishing orders (c4, c6, delta) = ({c4}, {c6}, {delta}) match no Kodaira type")]
    Unclassifiable { c4: usize, c6: usize, delta: usize },
    #[error("sampling failed after {0} draws (p too small or surface degenerate)")]
    SamplingExhausted(u32),
    #[error("p = {0} must be 1 mod 4 so that sqrt(-1) exists")]
    NeedPOneModFour(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Monic Weierstrass fibration y² = x³ + a₂(u)x² + a₄(u)x + a₆(u) over the
/// affine base coordinate `base_var`, within the K3 degree bounds
/// deg a₂ ≤ 4, deg a₄ ≤ 8, deg a₆ ≤ 12.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassSurface {
    pub id: CatalogId,
    pub base_var: &'static str,
    pub a2: UniPoly,
    pub a4: UniPoly,
    pub a6: UniPoly,
}

impl WeierstrassSurface {
    pub fn new(
        id: CatalogId,
        base_var: &'static str,
        a2: UniPoly,
        a4: UniPoly,
        a6: UniPoly,
    ) -> Result<Self, SurfaceError> {
        for (poly, role, bound) in [(&a2, "a2", 4usize), (&a4, "a4", 8), (&a6, "a6", 12)] {
            if let Some(d) = poly.degree() {
                if d > bound {
                    return Err(SurfaceError::DegreeBound {
                        role,
                        got: d,
                        bound,
                    });
                }
            }
        }
        Ok(WeierstrassSurface {
            id,
            base_var,
            a2,
            a4,
            a6,
        })
    }

    /// Right-hand side x³ + a₂(u)x² + a₄(u)x + a₆(u) in any field.
    pub fn rhs<F: FieldOps>(&self, conv: &impl Fn(&Rational) -> F, u: &F, x: &F) -> F {
        let a2 = self.a2.eval_map(conv, u);
        let a4 = self.a4.eval_map(conv, u);
        let a6 = self.a6.eval_map(conv, u);
        x.add(&a2).mul(x).add(&a4).mul(x).add(&a6)
    }

    pub fn contains_point<F: FieldOps>(
        &self,
        conv: &impl Fn(&Rational) -> F,
        u: &F,
        x: &F,
        y: &F,
    ) -> bool {
        y.mul(y) == self.rhs(conv, u, x)
    }

    /// b₂ = 4a₂, b₄ = 2a₄, b₆ = 4a₆; c₄ = b₂² − 24b₄,
    /// c₆ = −b₂³ + 36b₂b₄ − 216b₆, Δ = (c₄³ − c₆²)/1728.
    pub fn c4_c6_delta(&self) -> Result<(UniPoly, UniPoly, UniPoly), SurfaceError> {
        let b2 = self.a2.scale(&rat_i64(4));
        let b4 = self.a4.scale(&rat_i64(2));
        let b6 = self.a6.scale(&rat_i64(4));
        let c4 = b2.mul(&b2).sub(&b4.scale(&rat_i64(24)));
        let c6 = b2
            .mul(&b2)
            .mul(&b2)
            .neg()
            .add(&b2.mul(&b4).scale(&rat_i64(36)))
            .sub(&b6.scale(&rat_i64(216)));
        let delta = c4
            .mul(&c4)
            .mul(&c4)
            .sub(&c6.mul(&c6))
            .scale(&rat_i64(1728).recip());
        if delta.is_zero() {
            return Err(SurfaceError::IdenticallySingular);
        }
        Ok((c4, c6, delta))
    }

    pub fn reduce_mod_p(&self, ctx: &PrimeFieldCtx) -> Result<WeierstrassFp, ArithError> {
        Ok(WeierstrassFp {
            a2: self.a2.reduce_mod_p(ctx)?,
            a4: self.a4.reduce_mod_p(ctx)?,
            a6: self.a6.reduce_mod_p(ctx)?,
            p: ctx.p(),
        })
    }

    pub fn dump(&self) -> SurfaceDump {
        let strings = |p: &UniPoly| p.coeffs().iter().map(|c| c.to_string()).collect();
        SurfaceDump {
            catalog_id: self.id.name().to_string(),
            base_variable: self.base_var.to_string(),
            a2: strings(&self.a2),
            a4: strings(&self.a4),
            a6: strings(&self.a6),
        }
    }
}

/// JSON dump of a Weierstrass model: coefficient arrays of "n/d" strings,
/// ascending in the base variable.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceDump {
    pub catalog_id: String,
    pub base_variable: String,
    pub a2: Vec<String>,
    pub a4: Vec<String>,
    pub a6: Vec<String>,
}

/// A Weierstrass model with coefficients reduced mod p.
#[derive(Debug, Clone)]
pub struct WeierstrassFp {
    pub a2: Vec<u64>,
    pub a4: Vec<u64>,
    pub a6: Vec<u64>,
    pub p: u64,
}

impl WeierstrassFp {
    pub fn rhs_at(&self, ctx: &PrimeFieldCtx, u: u64, x: u64) -> u64 {
        let a2 = crate::poly::eval_mod_p(&self.a2, u, ctx);
        let a4 = crate::poly::eval_mod_p(&self.a4, u, ctx);
        let a6 = crate::poly::eval_mod_p(&self.a6, u, ctx);
        ctx.add(ctx.mul(ctx.add(ctx.mul(ctx.add(x, a2), x), a4), x), a6)
    }

    pub fn contains(&self, ctx: &PrimeFieldCtx, pt: &FiberedPointFp) -> bool {
        ctx.mul(pt.y, pt.y) == self.rhs_at(ctx, pt.base, pt.x)
    }
}

/// Affine point (base, x, y) of a fibration over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiberedPointFp {
    pub base: u64,
    pub x: u64,
    pub y: u64,
}

/// Draw (base, x) uniformly until the Weierstrass right-hand side is a
/// square, then take the deterministic smaller root. Errors after a bounded
/// number of draws.
pub fn sample_point(
    surface: &WeierstrassFp,
    ctx: &PrimeFieldCtx,
    rng: &mut SplitMix64,
) -> Result<FiberedPointFp, SurfaceError> {
    const MAX_DRAWS: u32 = 4096;
    for _ in 0..MAX_DRAWS {
        let base = rng.below(ctx.p());
        let x = rng.below(ctx.p());
        let rhs = surface.rhs_at(ctx, base, x);
        if let Some(y) = crate::arith::sqrt_mod_p(rhs, ctx) {
            return Ok(FiberedPointFp { base, x, y });
        }
    }
    Err(SurfaceError::SamplingExhausted(MAX_DRAWS))
}

/// Double cover y² = twist · f(x, w) with f a rational bivariate polynomial
/// of total degree ≤ 8 and the twist possibly in a quadratic extension.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineDoubleCover {
    pub id: CatalogId,
    pub var_x: &'static str,
    pub var_w: &'static str,
    pub twist: Scalar,
    pub poly: BiPoly,
}

impl AffineDoubleCover {
    pub fn new(
        id: CatalogId,
        var_x: &'static str,
        var_w: &'static str,
        twist: Scalar,
        poly: BiPoly,
    ) -> Result<Self, SurfaceError> {
        if let Some(d) = poly.total_degree() {
            if d > 8 {
                return Err(SurfaceError::DegreeBound {
                    role: "double cover",
                    got: d,
                    bound: 8,
                });
            }
        }
        Ok(AffineDoubleCover {
            id,
            var_x,
            var_w,
            twist,
            poly,
        })
    }

    pub fn f_rational(&self, x: &Rational, w: &Rational) -> Option<Rational> {
        let t = self.twist.as_rational()?;
        Some(t * self.poly.eval_rational(x, w))
    }

    pub fn f_scalar(&self, x: &Scalar, w: &Scalar) -> Scalar {
        let v = self.poly.eval(&|c: &Rational| Scalar::Rat(c.clone()), x, w);
        self.twist.mul(&v)
    }

    pub fn contains_point_scalar(&self, x: &Scalar, w: &Scalar, y: &Scalar) -> bool {
        y.mul(y) == self.f_scalar(x, w)
    }

    /// Coefficient grid of twist·f mod p.
    pub fn reduce_mod_p(&self, ctx: &PrimeFieldCtx) -> Result<CoverFp, ArithError> {
        let t = self.twist.reduce_mod_p(ctx)?;
        let mut grid = self.poly.reduce_mod_p(ctx)?;
        for row in &mut grid {
            for c in row.iter_mut() {
                *c = ctx.mul(*c, t);
            }
        }
        Ok(CoverFp { grid, p: ctx.p() })
    }
}

/// Dense coefficient grid of a double cover mod p; `grid[i][j]` multiplies
/// x^i w^j.
#[derive(Debug, Clone)]
pub struct CoverFp {
    pub grid: Vec<Vec<u64>>,
    pub p: u64,
}

impl CoverFp {
    pub fn eval(&self, ctx: &PrimeFieldCtx, x: u64, w: u64) -> u64 {
        let mut acc = 0u64;
        for row in self.grid.iter().rev() {
            let rowv = crate::poly::eval_mod_p(row, w, ctx);
            acc = ctx.add(ctx.mul(acc, x), rowv);
        }
        acc
    }
}

/// Member of the symmetric quartic family in ξ-coordinates
/// ξ₀ΣXᵢ⁴ + ξ₄X₀X₁X₂X₃ + ξ₁(X₀²X₁²+X₂²X₃²) + ξ₂(…) + ξ₃(…).
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticSurface {
    pub id: CatalogId,
    pub xi: [Rational; 5],
}

impl QuarticSurface {
    /// Goepel normal form: ξ = (1, −A, −B, −C, 2D).
    pub fn from_abcd(
        id: CatalogId,
        a: &Rational,
        b: &Rational,
        c: &Rational,
        d: &Rational,
    ) -> Self {
        QuarticSurface {
            id,
            xi: [
                rat_i64(1),
                -a.clone(),
                -b.clone(),
                -c.clone(),
                rat_i64(2) * d,
            ],
        }
    }

    pub fn nodal_residual(&self) -> Rational {
        crate::moduli::nodal_quartic_condition(&self.xi)
    }

    pub fn equation_value<F: FieldOps>(&self, conv: &impl Fn(&Rational) -> F, pt: &[F; 4]) -> F {
        let [x0, x1, x2, x3] = pt;
        let sq = |v: &F| v.mul(v);
        let quart = |v: &F| sq(v).mul(&sq(v));
        let pair = |a: &F, b: &F, c: &F, d: &F| sq(a).mul(&sq(b)).add(&sq(c).mul(&sq(d)));
        let mut acc =
            conv(&self.xi[0]).mul(&quart(x0).add(&quart(x1)).add(&quart(x2)).add(&quart(x3)));
        acc = acc.add(&conv(&self.xi[4]).mul(&x0.mul(x1).mul(x2).mul(x3)));
        acc = acc.add(&conv(&self.xi[1]).mul(&pair(x0, x1, x2, x3)));
        acc = acc.add(&conv(&self.xi[2]).mul(&pair(x0, x2, x1, x3)));
        acc.add(&conv(&self.xi[3]).mul(&pair(x0, x3, x1, x2)))
    }
}

/// Affine birational model of the mirror family at n = 3:
/// x₁x₂x₃(x₁+x₂+x₃+1) + μ/256 = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorCubic {
    pub mu: Rational,
}

impl MirrorCubic {
    pub fn residual<F: FieldOps>(&self, conv: &impl Fn(&Rational) -> F, pt: &[F; 3]) -> F {
        let [x1, x2, x3] = pt;
        let one = x1.one_val();
        let s = x1.add(x2).add(x3).add(&one);
        let c = conv(&(self.mu.clone() / rat_i64(256)));
        x1.mul(x2).mul(x3).mul(&s).add(&c)
    }
}

/// Any catalog model.
#[derive(Debug, Clone)]
pub enum Model {
    Weierstrass(WeierstrassSurface),
    DoubleCover(AffineDoubleCover),
    Quartic(QuarticSurface),
    Cubic(MirrorCubic),
}

impl Model {
    pub fn as_weierstrass(&self) -> Option<&WeierstrassSurface> {
        match self {
            Model::Weierstrass(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_double_cover(&self) -> Option<&AffineDoubleCover> {
        match self {
            Model::DoubleCover(c) => Some(c),
            _ => None,
        }
    }
}

/// Report of the Narumiya-Shiga substitution check: sampled points of the
/// mirror fibration pushed through the substitution must satisfy the affine
/// mirror cubic with μ = 1/λ⁴.
#[derive(Debug, Clone, Serialize)]
pub struct NarumiyaShigaReport {
    pub p: u64,
    pub lambda: String,
    pub trials: u32,
    pub passes: u32,
    pub failures: u32,
    pub excluded: u32,
}

/// Sample points on the mirror fibration over F_p (p ≡ 1 mod 4) and verify
/// the substitution into the mirror cubic. Samples hitting a vanishing
/// denominator are excluded and counted.
pub fn narumiya_shiga_substitution_check(
    lambda: &Rational,
    ctx: &PrimeFieldCtx,
    trials: u32,
    seed: u64,
) -> Result<NarumiyaShigaReport, SurfaceError> {
    let p = ctx.p();
    if p % 4 != 1 {
        return Err(SurfaceError::NeedPOneModFour(p));
    }
    let lam = ctx.reduce_rational(lambda)?;
    if lam == 0 {
        return Err(SurfaceError::BadParameter(format!(
            "lambda = {lambda} vanishes mod {p}"
        )));
    }
    let i = crate::arith::sqrt_mod_p(p - 1, ctx).expect("p = 1 mod 4");
    let surface = catalog(CatalogId::MirrorG2G3, std::slice::from_ref(lambda))?;
    let surface = surface.as_weierstrass().unwrap().reduce_mod_p(ctx)?;
    let mu = ctx.inv(ctx.pow(lam, 4))?;
    let mu_over_256 = ctx.mul(mu, ctx.inv(256 % p)?);
    let lam2 = ctx.mul(lam, lam);

    let mut rng = SplitMix64::new(seed);
    let mut passes = 0;
    let mut failures = 0;
    let mut excluded = 0;
    for _ in 0..trials {
        let pt = sample_point(&surface, ctx, &mut rng)?;
        // Monic model (x, y) = (4X, 4Y): undo the conversion.
        let inv4 = ctx.inv(4)?;
        let (u, xx, yy) = (pt.base, ctx.mul(pt.x, inv4), ctx.mul(pt.y, inv4));
        let u2 = ctx.mul(u, u);
        let u3 = ctx.mul(u2, u);
        let u4 = ctx.mul(u3, u);
        // P₁ = 4u²λ² + 3Xλ² + u³ + u, P₂ = 4u²λ² + 3Xλ² + u³ − 2u
        let common = ctx.add(
            ctx.add(ctx.mul(4, ctx.mul(u2, lam2)), ctx.mul(3, ctx.mul(xx, lam2))),
            u3,
        );
        let p1 = ctx.add(common, u);
        let p2 = ctx.sub(common, ctx.mul(2, u));
        // K = 16u³λ² − 3iYλ² + 12Xuλ² + 4u⁴ + 4u²
        let k = ctx.add(
            ctx.sub(
                ctx.mul(16, ctx.mul(u3, lam2)),
                ctx.mul(3, ctx.mul(i, ctx.mul(yy, lam2))),
            ),
            ctx.add(
                ctx.mul(12, ctx.mul(xx, ctx.mul(u, lam2))),
                ctx.add(ctx.mul(4, u4), ctx.mul(4, u2)),
            ),
        );
        if u == 0 || k == 0 || p2 == 0 {
            excluded += 1;
            continue;
        }
        let x1 = ctx.neg(ctx.mul(
            ctx.mul(p1, p2),
            ctx.inv(ctx.mul(6, ctx.mul(lam2, ctx.mul(u, k))))?,
        ));
        let x2 = ctx.neg(ctx.mul(k, ctx.inv(ctx.mul(8, ctx.mul(u, p2)))?));
        let x3 = ctx.mul(ctx.mul(u2, p2), ctx.inv(ctx.mul(2, ctx.mul(lam2, k)))?);
        let s = ctx.add(ctx.add(x1, x2), ctx.add(x3, 1));
        let residual = ctx.add(ctx.mul(ctx.mul(x1, x2), ctx.mul(x3, s)), mu_over_256);
        if residual == 0 {
            passes += 1;
        } else {
            failures += 1;
        }
    }
    Ok(NarumiyaShigaReport {
        p,
        lambda: lambda.to_string(),
        trials,
        passes,
        failures,
        excluded,
    })
}
