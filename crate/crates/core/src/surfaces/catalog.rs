//! The fixed catalog of surface models, one entry per displayed fibration.
//! Models written with u⁻¹ terms are stored after multiplying through by the
//! minimal power of the base variable, which here never changes the equation
//! (the displayed coefficients are already polynomial once expanded).

use num_traits::{One, Zero};

use super::{
    AffineDoubleCover, MirrorCubic, Model, QuarticSurface, SurfaceError, WeierstrassSurface,
};
use crate::arith::rational::{is_square, rat_i64, Rational};
use crate::arith::{FieldOps, Scalar, Sign};
use crate::poly::{BiPoly, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogId {
    MirrorG2G3,
    J4,
    J1,
    J1Unscaled,
    YRank18,
    J7,
    SPrimeRank18,
    YPrimeRank18,
    /// Variant of the second quotient with the inner coefficient halved.
    /// The two forms circulate; exactly one matches the Van Geemen-Sarti
    /// quotient construction, and the consistency tests report which, so
    /// the discrepancy is surfaced rather than silently corrected.
    YPrimeRank18Alt,
    Legendre18,
    Legendre19,
    ShiodaSextic,
    SPrime17,
    Y17,
    S17A,
    S17B,
    YPrime17,
    Legendre17Tilde,
    Legendre17,
    Quartic,
    MirrorCubic,
    EllipticE,
    EllipticEPrime,
}

impl CatalogId {
    pub const ALL: [CatalogId; 23] = [
        CatalogId::MirrorG2G3,
        CatalogId::J4,
        CatalogId::J1,
        CatalogId::J1Unscaled,
        CatalogId::YRank18,
        CatalogId::J7,
        CatalogId::SPrimeRank18,
        CatalogId::YPrimeRank18,
        CatalogId::YPrimeRank18Alt,
        CatalogId::Legendre18,
        CatalogId::Legendre19,
        CatalogId::ShiodaSextic,
        CatalogId::SPrime17,
        CatalogId::Y17,
        CatalogId::S17A,
        CatalogId::S17B,
        CatalogId::YPrime17,
        CatalogId::Legendre17Tilde,
        CatalogId::Legendre17,
        CatalogId::Quartic,
        CatalogId::MirrorCubic,
        CatalogId::EllipticE,
        CatalogId::EllipticEPrime,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CatalogId::MirrorG2G3 => "MIRROR_G2G3",
            CatalogId::J4 => "J4",
            CatalogId::J1 => "J1",
            CatalogId::J1Unscaled => "J1_UNSCALED",
            CatalogId::YRank18 => "Y_RANK18",
            CatalogId::J7 => "J7",
            CatalogId::SPrimeRank18 => "S_PRIME_RANK18",
            CatalogId::YPrimeRank18 => "Y_PRIME_RANK18",
            CatalogId::YPrimeRank18Alt => "Y_PRIME_RANK18_ALT",
            CatalogId::Legendre18 => "LEGENDRE18",
            CatalogId::Legendre19 => "LEGENDRE19",
            CatalogId::ShiodaSextic => "SHIODA_SEXTIC",
            CatalogId::SPrime17 => "S_PRIME_17",
            CatalogId::Y17 => "Y_17",
            CatalogId::S17A => "S_17_A",
            CatalogId::S17B => "S_17_B",
            CatalogId::YPrime17 => "Y_PRIME_17",
            CatalogId::Legendre17Tilde => "LEGENDRE17_TILDE",
            CatalogId::Legendre17 => "LEGENDRE17",
            CatalogId::Quartic => "QUARTIC",
            CatalogId::MirrorCubic => "MIRROR_CUBIC",
            CatalogId::EllipticE => "ELLIPTIC_E",
            CatalogId::EllipticEPrime => "ELLIPTIC_E_PRIME",
        }
    }

    /// Number of rational parameters the entry takes.
    pub fn arity(&self) -> usize {
        match self {
            CatalogId::MirrorG2G3
            | CatalogId::Legendre19
            | CatalogId::EllipticE
            | CatalogId::EllipticEPrime
            | CatalogId::MirrorCubic => 1,
            CatalogId::J4
            | CatalogId::J1
            | CatalogId::J1Unscaled
            | CatalogId::YRank18
            | CatalogId::J7
            | CatalogId::SPrimeRank18
            | CatalogId::YPrimeRank18
            | CatalogId::YPrimeRank18Alt
            | CatalogId::Legendre18 => 2,
            CatalogId::ShiodaSextic
            | CatalogId::SPrime17
            | CatalogId::Y17
            | CatalogId::S17A
            | CatalogId::S17B
            | CatalogId::YPrime17
            | CatalogId::Legendre17Tilde
            | CatalogId::Legendre17 => 3,
            CatalogId::Quartic => 4,
        }
    }
}

impl std::str::FromStr for CatalogId {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, SurfaceError> {
        CatalogId::ALL
            .iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| SurfaceError::UnknownId(s.to_string()))
    }
}

/// Build a catalog entry at the given parameter values with the plus branch
/// wherever a square root is involved.
pub fn catalog(id: CatalogId, params: &[Rational]) -> Result<Model, SurfaceError> {
    catalog_with_sign(id, params, Sign::Plus)
}

pub fn catalog_with_sign(
    id: CatalogId,
    params: &[Rational],
    sign: Sign,
) -> Result<Model, SurfaceError> {
    if params.len() != id.arity() {
        return Err(SurfaceError::WrongArity {
            id: id.name(),
            expected: id.arity(),
            got: params.len(),
        });
    }
    match id {
        CatalogId::MirrorG2G3 => mirror_g2g3(&params[0]),
        CatalogId::J4 => j4(&params[0], &params[1]),
        CatalogId::J1 => j1(&params[0], &params[1]),
        CatalogId::J1Unscaled => j1_unscaled(&params[0], &params[1]),
        CatalogId::YRank18 => y_rank18(&params[0], &params[1]),
        CatalogId::J7 => j7(&params[0], &params[1]),
        CatalogId::SPrimeRank18 => s_prime_rank18(&params[0], &params[1]),
        CatalogId::YPrimeRank18 => y_prime_rank18(&params[0], &params[1], false),
        CatalogId::YPrimeRank18Alt => y_prime_rank18(&params[0], &params[1], true),
        CatalogId::Legendre18 => legendre18(&params[0], &params[1], sign),
        CatalogId::Legendre19 => legendre19(&params[0], sign),
        CatalogId::ShiodaSextic => shioda_sextic(&params[0], &params[1], &params[2]),
        CatalogId::SPrime17 => s_prime_17(&params[0], &params[1], &params[2]),
        CatalogId::Y17 => y_17(&params[0], &params[1], &params[2]),
        CatalogId::S17A => s_17_a(&params[0], &params[1], &params[2]),
        CatalogId::S17B => s_17_b(&params[0], &params[1], &params[2]),
        CatalogId::YPrime17 => y_prime_17(&params[0], &params[1], &params[2]),
        CatalogId::Legendre17Tilde => legendre17_tilde(&params[0], &params[1], &params[2]),
        CatalogId::Legendre17 => legendre17(&params[0], &params[1], &params[2]),
        CatalogId::Quartic => quartic(&params[0], &params[1], &params[2], &params[3]),
        CatalogId::MirrorCubic => Ok(Model::Cubic(MirrorCubic {
            mu: params[0].clone(),
        })),
        CatalogId::EllipticE => elliptic_e(&params[0]),
        CatalogId::EllipticEPrime => elliptic_e_prime(&params[0]),
    }
}

fn require_nonzero(value: &Rational, what: &str) -> Result<(), SurfaceError> {
    if value.is_zero() {
        return Err(SurfaceError::BadParameter(format!(
            "{what} must be nonzero"
        )));
    }
    Ok(())
}

/// g₂ = (4/3λ⁴)u²(u⁴+8λ²u³+(16λ⁴−1)u²+8λ²u+1),
/// g₃ = (4/27λ⁶)u³(u²+4λ²u+1)(2u⁴+16λ²u³+(32λ⁴−5)u²+16λ²u+2).
/// Stored monically via (x, y) = (4X, 4Y): a₄ = −4g₂, a₆ = −16g₃.
fn mirror_g2g3(lambda: &Rational) -> Result<Model, SurfaceError> {
    require_nonzero(lambda, "lambda")?;
    let (g2, g3) = mirror_g2_g3(lambda);
    let s = WeierstrassSurface::new(
        CatalogId::MirrorG2G3,
        "u",
        UniPoly::zero(),
        g2.scale(&rat_i64(-4)),
        g3.scale(&rat_i64(-16)),
    )?;
    Ok(Model::Weierstrass(s))
}

/// The Weierstrass data of the mirror fibration in its original
/// Y² = 4X³ − g₂X − g₃ form.
pub fn mirror_g2_g3(lambda: &Rational) -> (UniPoly, UniPoly) {
    let l2 = lambda * lambda;
    let l4 = &l2 * &l2;
    let g2_inner = UniPoly::from_coeffs(vec![
        Rational::one(),
        rat_i64(8) * &l2,
        rat_i64(16) * &l4 - rat_i64(1),
        rat_i64(8) * &l2,
        Rational::one(),
    ]);
    let g2 = g2_inner
        .shift_up(2)
        .scale(&(rat_i64(4) / (rat_i64(3) * &l4)));
    let quad = UniPoly::from_coeffs(vec![Rational::one(), rat_i64(4) * &l2, Rational::one()]);
    let quart = UniPoly::from_coeffs(vec![
        rat_i64(2),
        rat_i64(16) * &l2,
        rat_i64(32) * &l4 - rat_i64(5),
        rat_i64(16) * &l2,
        rat_i64(2),
    ]);
    let g3 = quad
        .mul(&quart)
        .shift_up(3)
        .scale(&(rat_i64(4) / (rat_i64(27) * &l4 * &l2)));
    (g2, g3)
}

/// x-coordinate of the two-torsion section of the mirror fibration, in the
/// monic chart: x = −(4/3λ²) u (u² + 4λ²u + 1). (The printed form has the
/// middle term garbled; this is the root of the fiber cubic, verified as an
/// exact polynomial identity by the tests.)
pub fn mirror_torsion_section_x(lambda: &Rational) -> UniPoly {
    let l2 = lambda * lambda;
    UniPoly::from_coeffs(vec![Rational::one(), rat_i64(4) * &l2, Rational::one()])
        .shift_up(1)
        .scale(&(rat_i64(-4) / (rat_i64(3) * &l2)))
}

/// Double Kummer pencil y² = x₁(x₁−1)(x₁−λ₁)·x₂(x₂−1)(x₂−λ₂), written as a
/// monic Weierstrass model over the base x₁ by the usual leading-coefficient
/// absorption (x, y) = (c·x₂, c·y₁₂) with c = x₁(x₁−1)(x₁−λ₁).
fn j4(l1: &Rational, l2: &Rational) -> Result<Model, SurfaceError> {
    let c = UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
        .mul(&UniPoly::from_coeffs(vec![
            -Rational::one(),
            Rational::one(),
        ]))
        .mul(&UniPoly::from_coeffs(vec![-l1.clone(), Rational::one()]));
    let a2 = c.scale(&-(Rational::one() + l2));
    let a4 = c.mul(&c).scale(l2);
    let s = WeierstrassSurface::new(CatalogId::J4, "x1", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

fn e1_e2_m(l1: &Rational, l2: &Rational) -> (Rational, Rational, Rational) {
    let one = Rational::one();
    (
        (l1 - &one) * (l2 - &one),
        (l1 + &one) * (l2 + &one),
        rat_i64(16) * l1 * l2,
    )
}

/// y² = x³ + (e₁(t⁴+1) − 2e₂t²)x² + 16λ₁λ₂t⁴x with e₁ = (λ₁−1)(λ₂−1),
/// e₂ = (λ₁+1)(λ₂+1).
fn j1(l1: &Rational, l2: &Rational) -> Result<Model, SurfaceError> {
    let (e1, e2, m) = e1_e2_m(l1, l2);
    let a2 = UniPoly::from_coeffs(vec![
        e1.clone(),
        Rational::zero(),
        rat_i64(-2) * &e2,
        Rational::zero(),
        e1,
    ]);
    let a4 = UniPoly::monomial(m, 4);
    let s = WeierstrassSurface::new(CatalogId::J1, "t", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// The unscaled model y² = x³ + ((λ₁−1)²t⁴ − 2e₂t² + (λ₂−1)²)x² + 16λ₁λ₂t⁴x.
fn j1_unscaled(l1: &Rational, l2: &Rational) -> Result<Model, SurfaceError> {
    let one = Rational::one();
    let (_, e2, m) = e1_e2_m(l1, l2);
    let a2 = UniPoly::from_coeffs(vec![
        (l2 - &one) * (l2 - &one),
        Rational::zero(),
        rat_i64(-2) * &e2,
        Rational::zero(),
        (l1 - &one) * (l1 - &one),
    ]);
    let a4 = UniPoly::monomial(m, 4);
    let s = WeierstrassSurface::new(CatalogId::J1Unscaled, "t", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// y² = x³ + (e₁(u³+u) − 2e₂u²)x² + 16λ₁λ₂u⁴x.
fn y_rank18(l1: &Rational, l2: &Rational) -> Result<Model, SurfaceError> {
    let (e1, e2, m) = e1_e2_m(l1, l2);
    let a2 = UniPoly::from_coeffs(vec![Rational::zero(), e1.clone(), rat_i64(-2) * &e2, e1]);
    let a4 = UniPoly::monomial(m, 4);
    let s = WeierstrassSurface::new(CatalogId::YRank18, "u", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

fn v_squared_minus_4() -> UniPoly {
    UniPoly::from_i64(&[-4, 0, 1])
}

/// y² = x³ + (v²−4)(e₁v − 2e₂)x² + 16λ₁λ₂(v²−4)²x.
fn j7(l1: &Rational, l2: &Rational) -> Result<Model, SurfaceError> {
    let (e1, e2, m) = e1_e2_m(l1, l2);
    let lin = UniPoly::from_coeffs(vec![rat_i64(-2) * &e2, e1]);
    let vsq = v_squared_minus_4();
    let a2 = vsq.mul(&lin);
    let a4 = vsq.mul(&vsq).scale(&m);
    let s = WeierstrassSurface::new(CatalogId::J7, "v", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// The Van Geemen-Sarti quotient of Y_RANK18:
/// y² = x³ − ½uQ·x² + (1/16)(u²Q² − 64λ₁λ₂u⁴)x with Q = e₁(u²+1) − 2e₂u.
fn s_prime_rank18(l1: &Rational, l2: &Rational) -> Result<Model, SurfaceError> {
    let (e1, e2, m) = e1_e2_m(l1, l2);
    let q = UniPoly::from_coeffs(vec![e1.clone(), rat_i64(-2) * &e2, e1]);
    let a2 = q.shift_up(1).scale(&-(Rational::one() / rat_i64(2)));
    let u2q2 = q.mul(&q).shift_up(2);
    let a4 = u2q2
        .sub(&UniPoly::monomial(rat_i64(4) * &m, 4))
        .scale(&rat_i64(16).recip());
    let s = WeierstrassSurface::new(CatalogId::SPrimeRank18, "u", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// y² = x³ − ½(v²−4)P·x² + (1/16)(v²−4)²(P² − 64λ₁λ₂)x.
/// The quotient-consistent form has P = e₁v − 2e₂ inside the square as
/// well; the alternate variant halves it there (P̃ = e₁v − e₂).
fn y_prime_rank18(l1: &Rational, l2: &Rational, alt: bool) -> Result<Model, SurfaceError> {
    let (e1, e2, m) = e1_e2_m(l1, l2);
    let p_outer = UniPoly::from_coeffs(vec![rat_i64(-2) * &e2, e1.clone()]);
    let p_inner = if alt {
        UniPoly::from_coeffs(vec![-e2.clone(), e1])
    } else {
        p_outer.clone()
    };
    let vsq = v_squared_minus_4();
    let a2 = vsq.mul(&p_outer).scale(&-(Rational::one() / rat_i64(2)));
    let inner = p_inner
        .mul(&p_inner)
        .sub(&UniPoly::constant(rat_i64(4) * &m));
    let a4 = vsq.mul(&vsq).mul(&inner).scale(&rat_i64(16).recip());
    let id = if alt {
        CatalogId::YPrimeRank18Alt
    } else {
        CatalogId::YPrimeRank18
    };
    let s = WeierstrassSurface::new(id, "v", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// Twisted Legendre pencil y² = 16l·x(x−1)(x−w)(w−(l+1)²/4l)(w−(l+λ₁)²/4lλ₁)
/// with l² = λ₁λ₂. Defined over the rationals only when λ₁λ₂ is a square.
fn legendre18(l1: &Rational, l2: &Rational, sign: Sign) -> Result<Model, SurfaceError> {
    require_nonzero(l1, "lambda_1")?;
    require_nonzero(l2, "lambda_2")?;
    let prod = l1 * l2;
    if !is_square(&prod) {
        return Err(SurfaceError::IrrationalTwist("LEGENDRE18", prod));
    }
    let l = match Scalar::sqrt_rational(&prod, sign) {
        Ok(Scalar::Rat(q)) => q,
        _ => unreachable!("square checked"),
    };
    let alpha = (&l + rat_i64(1)) * (&l + rat_i64(1)) / (rat_i64(4) * &l);
    let beta = (&l + l1) * (&l + l1) / (rat_i64(4) * &l * l1);
    let poly = legendre_shape_x_branch(&alpha, &beta);
    let cover = AffineDoubleCover::new(
        CatalogId::Legendre18,
        "x",
        "w",
        Scalar::Rat(rat_i64(16) * &l),
        poly,
    )?;
    Ok(Model::DoubleCover(cover))
}

/// x(x−1)(x−w)(w−α)(w−β)
pub fn legendre_shape_x_branch(alpha: &Rational, beta: &Rational) -> BiPoly {
    let x = BiPoly::x();
    let w = BiPoly::w();
    let one = BiPoly::constant(Rational::one());
    x.mul(&x.sub(&one))
        .mul(&x.sub(&w))
        .mul(&w.sub(&BiPoly::constant(alpha.clone())))
        .mul(&w.sub(&BiPoly::constant(beta.clone())))
}

/// y² = 16l·x(x−1)(x−w)(w−λ²)(w−1−λ²) with l = 1 + 2λ√(λ²−1) − 2λ².
/// The branch points are rational; only the twist may live in ℚ(√(λ²−1)).
fn legendre19(lambda: &Rational, sign: Sign) -> Result<Model, SurfaceError> {
    let lsq = lambda * lambda;
    let disc = &lsq - rat_i64(1);
    if disc.is_zero() {
        return Err(SurfaceError::BadParameter(
            "lambda^2 - 1 must be nonzero".into(),
        ));
    }
    let root = Scalar::sqrt_rational(&disc, sign).expect("nonzero disc");
    let twist = Scalar::Rat(Rational::one() - rat_i64(2) * &lsq)
        .add(&root.mul(&Scalar::Rat(rat_i64(2) * lambda)));
    let alpha = lsq.clone();
    let beta = rat_i64(1) + &lsq;
    let poly = legendre_shape_x_branch(&alpha, &beta);
    let cover = AffineDoubleCover::new(
        CatalogId::Legendre19,
        "x",
        "w",
        twist.mul(&Scalar::Rat(rat_i64(16))),
        poly,
    )?;
    Ok(Model::DoubleCover(cover))
}

/// The twist l = 1 + 2λ√(λ²−1) − 2λ² of the rank-19 pencil, on its own.
pub fn legendre19_twist(lambda: &Rational, sign: Sign) -> Result<Scalar, SurfaceError> {
    let lsq = lambda * lambda;
    let disc = &lsq - rat_i64(1);
    if disc.is_zero() {
        return Err(SurfaceError::BadParameter(
            "lambda^2 - 1 must be nonzero".into(),
        ));
    }
    let root = Scalar::sqrt_rational(&disc, sign).expect("nonzero disc");
    Ok(Scalar::Rat(Rational::one() - rat_i64(2) * &lsq)
        .add(&root.mul(&Scalar::Rat(rat_i64(2) * lambda))))
}

/// Shioda sextic Y² = U(U−X+1)·Π(λᵢ²U − λᵢX + 1), as a double cover in the
/// symmetric-product coordinates (U, X).
fn shioda_sextic(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    // Variables: cover x-slot carries U, w-slot carries X.
    let u = BiPoly::x();
    let x = BiPoly::w();
    let one = BiPoly::constant(Rational::one());
    let mut poly = u.mul(&u.sub(&x).add(&one));
    for l in [l1, l2, l3] {
        let term = u.scale(&(l * l)).sub(&x.scale(l)).add(&one);
        poly = poly.mul(&term);
    }
    let cover = AffineDoubleCover::new(
        CatalogId::ShiodaSextic,
        "U",
        "X",
        Scalar::Rat(Rational::one()),
        poly,
    )?;
    Ok(Model::DoubleCover(cover))
}

fn rank17_abc(lp: [&Rational; 3]) -> (Rational, Rational, Rational) {
    let [l1, l2, l3] = lp;
    (
        rat_i64(2) * l1 - l2 - l3,
        rat_i64(2) * l2 * l3 - l1 * l2 - l1 * l3,
        l2 - l3,
    )
}

/// y² = x(x − u(u²−uΛ′₃+1)(Λ′₁−Λ′₂))(x − u(u²−uΛ′₂+1)(Λ′₁−Λ′₃)).
fn s_prime_17(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    let c1 = UniPoly::from_coeffs(vec![Rational::one(), -l3.clone(), Rational::one()])
        .shift_up(1)
        .scale(&(l1 - l2));
    let c2 = UniPoly::from_coeffs(vec![Rational::one(), -l2.clone(), Rational::one()])
        .shift_up(1)
        .scale(&(l1 - l3));
    let a2 = c1.add(&c2).neg();
    let a4 = c1.mul(&c2);
    let s = WeierstrassSurface::new(CatalogId::SPrime17, "u", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// y² = x³ + 2(A(u³+u) + Bu²)x² + C²u²(u²−Λ′₁u+1)²x with
/// A = 2Λ′₁−Λ′₂−Λ′₃, B = 2Λ′₂Λ′₃−Λ′₁Λ′₂−Λ′₁Λ′₃, C = Λ′₂−Λ′₃.
fn y_17(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    let (a, b, c) = rank17_abc([l1, l2, l3]);
    let a2 = UniPoly::from_coeffs(vec![
        Rational::zero(),
        rat_i64(2) * &a,
        rat_i64(2) * &b,
        rat_i64(2) * &a,
    ]);
    let core = UniPoly::from_coeffs(vec![Rational::one(), -l1.clone(), Rational::one()]);
    let a4 = core.mul(&core).shift_up(2).scale(&(&c * &c));
    let s = WeierstrassSurface::new(CatalogId::Y17, "u", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// y² = x³ + 2(A(t⁴+1) + Bt²)x² + C²(t⁴−Λ′₁t²+1)²x: the pullback of Y_17
/// under u = t².
fn s_17_a(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    let (a, b, c) = rank17_abc([l1, l2, l3]);
    let a2 = UniPoly::from_coeffs(vec![
        rat_i64(2) * &a,
        Rational::zero(),
        rat_i64(2) * &b,
        Rational::zero(),
        rat_i64(2) * &a,
    ]);
    let core = UniPoly::from_coeffs(vec![
        Rational::one(),
        Rational::zero(),
        -l1.clone(),
        Rational::zero(),
        Rational::one(),
    ]);
    let a4 = core.mul(&core).scale(&(&c * &c));
    let s = WeierstrassSurface::new(CatalogId::S17A, "t", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// y² = x³ + 2(v²−4)(Av+B)x² + (v²−4)²C²(v−Λ′₁)²x.
fn s_17_b(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    let (a, b, c) = rank17_abc([l1, l2, l3]);
    let vsq = v_squared_minus_4();
    let a2 = vsq.mul(&UniPoly::from_coeffs(vec![
        rat_i64(2) * &b,
        rat_i64(2) * &a,
    ]));
    let lin = UniPoly::from_coeffs(vec![-l1.clone(), Rational::one()]);
    let a4 = vsq.mul(&vsq).mul(&lin).mul(&lin).scale(&(&c * &c));
    let s = WeierstrassSurface::new(CatalogId::S17B, "v", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// y² = x³ − (v²−4)(Av+B)x² + (v²−4)²(Λ′₁−Λ′₂)(Λ′₁−Λ′₃)(v−Λ′₂)(v−Λ′₃)x.
fn y_prime_17(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    let (a, b, _) = rank17_abc([l1, l2, l3]);
    let vsq = v_squared_minus_4();
    let a2 = vsq.mul(&UniPoly::from_coeffs(vec![b, a])).neg();
    let scale = (l1 - l2) * (l1 - l3);
    let lin2 = UniPoly::from_coeffs(vec![-l2.clone(), Rational::one()]);
    let lin3 = UniPoly::from_coeffs(vec![-l3.clone(), Rational::one()]);
    let a4 = vsq.mul(&vsq).mul(&lin2).mul(&lin3).scale(&scale);
    let s = WeierstrassSurface::new(CatalogId::YPrime17, "v", a2, a4, UniPoly::zero())?;
    Ok(Model::Weierstrass(s))
}

/// ỹ² = −ν(Λ)·(x̃²−4)(x̃−ṽ)(ṽ−Λ₁)(ṽ−Λ₂)(ṽ−Λ₃) with
/// ν = 16(Λ₁−Λ₃)(Λ₁−Λ₂)/((Λ₂−Λ₃)²(Λ₁²−4)).
fn legendre17_tilde(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    let nu = counting_twist(l1, l2, l3)?;
    let poly = legendre_shape_x2_minus_4(l1, l2, l3);
    let cover =
        AffineDoubleCover::new(CatalogId::Legendre17Tilde, "x", "w", Scalar::Rat(-nu), poly)?;
    Ok(Model::DoubleCover(cover))
}

/// y² = −(x²−4)(x−w)(w−Λ′₁)(w−Λ′₂)(w−Λ′₃): the counting model of the
/// rank-17 pencil with respect to the isogenous moduli.
fn legendre17(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Model, SurfaceError> {
    let poly = legendre_shape_x2_minus_4(l1, l2, l3);
    let cover = AffineDoubleCover::new(
        CatalogId::Legendre17,
        "x",
        "w",
        Scalar::Rat(-Rational::one()),
        poly,
    )?;
    Ok(Model::DoubleCover(cover))
}

/// (x²−4)(x−w)(w−a)(w−b)(w−c)
pub fn legendre_shape_x2_minus_4(a: &Rational, b: &Rational, c: &Rational) -> BiPoly {
    let x = BiPoly::x();
    let w = BiPoly::w();
    let xsq = x.mul(&x).sub(&BiPoly::constant(rat_i64(4)));
    xsq.mul(&x.sub(&w))
        .mul(&w.sub(&BiPoly::constant(a.clone())))
        .mul(&w.sub(&BiPoly::constant(b.clone())))
        .mul(&w.sub(&BiPoly::constant(c.clone())))
}

/// ν(Λ₁,Λ₂,Λ₃) = 16(Λ₁−Λ₃)(Λ₁−Λ₂)/((Λ₂−Λ₃)²(Λ₁²−4)); shared with the
/// counting module, which re-exports it as the twist factor.
pub(crate) fn counting_twist(
    l1: &Rational,
    l2: &Rational,
    l3: &Rational,
) -> Result<Rational, SurfaceError> {
    let d23 = l2 - l3;
    if d23.is_zero() {
        return Err(SurfaceError::BadParameter(
            "Lambda_2 - Lambda_3 must be nonzero".into(),
        ));
    }
    let denom = l1 * l1 - rat_i64(4);
    if denom.is_zero() {
        return Err(SurfaceError::BadParameter(
            "Lambda_1^2 - 4 must be nonzero".into(),
        ));
    }
    Ok(rat_i64(16) * (l1 - l3) * (l1 - l2) / (&d23 * &d23 * denom))
}

fn quartic(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Model, SurfaceError> {
    let q = QuarticSurface::from_abcd(CatalogId::Quartic, a, b, c, d);
    Ok(Model::Quartic(q))
}

/// yₙ² = xₙ(xₙ−1)(xₙ−λ): a₂ = −(1+λ), a₄ = λ.
fn elliptic_e(lambda: &Rational) -> Result<Model, SurfaceError> {
    let s = WeierstrassSurface::new(
        CatalogId::EllipticE,
        "const",
        UniPoly::constant(-(Rational::one() + lambda)),
        UniPoly::constant(lambda.clone()),
        UniPoly::zero(),
    )?;
    Ok(Model::Weierstrass(s))
}

/// The two-isogenous curve Y² = X³ + ((1+λ)/2)X² + ((1−λ)²/4)X.
fn elliptic_e_prime(lambda: &Rational) -> Result<Model, SurfaceError> {
    let one = Rational::one();
    let s = WeierstrassSurface::new(
        CatalogId::EllipticEPrime,
        "const",
        UniPoly::constant((&one + lambda) / rat_i64(2)),
        UniPoly::constant((&one - lambda) * (&one - lambda) / rat_i64(4)),
        UniPoly::zero(),
    )?;
    Ok(Model::Weierstrass(s))
}

/// Substitute t² = u into a polynomial with only even-degree terms.
/// Returns None when an odd coefficient is present.
pub fn even_substitute(f: &UniPoly) -> Option<UniPoly> {
    let coeffs = f.coeffs();
    let mut out = vec![];
    for (k, c) in coeffs.iter().enumerate() {
        if k % 2 == 1 {
            if !c.is_zero() {
                return None;
            }
        } else {
            out.push(c.clone());
        }
    }
    Some(UniPoly::from_coeffs(out))
}
