//! Moduli-level formulas: Rosenhain roots to level-two moduli, the Richelot
//! transformation, Kummer-quartic parameters, two-isogeny relations for
//! elliptic curves with level-two structure, and the X₀(2) check.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::rational::{rat_i64, Rational};
use crate::arith::{FieldOps, Scalar, Sign};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModuliError {
    #[error("Rosenhain roots must be pairwise distinct and avoid {{0, 1}}: {0}")]
    InvalidRosenhain(String),
    #[error("lambda_1 * lambda_2 * lambda_3 = 0 has no square root")]
    ZeroProduct,
    #[error("degenerate denominator: {0} vanishes")]
    DegenerateDenominator(&'static str),
    #[error("modulus {0} must avoid {{0, 1}}")]
    InvalidModulus(Rational),
    #[error("branch k = -1: the Moebius factor (1-k)/(1+k) has a pole")]
    IsogenyPole,
    #[error("h = 0 is outside the X_0(2) parametrization")]
    ZeroParameter,
    #[error("the Kummer-quartic identity D^2 = A^2+B^2+C^2+ABC-4 failed; inputs degenerate")]
    QuarticIdentityFailed,
}

/// Rosenhain roots (λ₁, λ₂, λ₃): the branch points of a genus-two curve
/// y² = x(x−1)(x−λ₁)(x−λ₂)(x−λ₃) besides 0, 1, ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct RosenhainModuli {
    pub l1: Rational,
    pub l2: Rational,
    pub l3: Rational,
}

impl RosenhainModuli {
    pub fn new(l1: Rational, l2: Rational, l3: Rational) -> Result<Self, ModuliError> {
        let bad = |l: &Rational| l.is_zero() || l.is_one();
        if bad(&l1) || bad(&l2) || bad(&l3) || l1 == l2 || l1 == l3 || l2 == l3 {
            return Err(ModuliError::InvalidRosenhain(format!("({l1}, {l2}, {l3})")));
        }
        Ok(RosenhainModuli { l1, l2, l3 })
    }

    pub fn product(&self) -> Rational {
        &self.l1 * &self.l2 * &self.l3
    }

    /// Swap λ₂ ↔ λ₃ (changes the sign of the C and D quartic parameters).
    pub fn swap23(&self) -> RosenhainModuli {
        RosenhainModuli {
            l1: self.l1.clone(),
            l2: self.l3.clone(),
            l3: self.l2.clone(),
        }
    }
}

/// Level-two moduli Λᵢ on the double cover l² = λ₁λ₂λ₃.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTwoModuli {
    pub values: [Scalar; 3],
    pub l: Scalar,
}

/// Λ₁ = (λ₁ + λ₂λ₃)/l, Λ₂ = (λ₂ + λ₁λ₃)/l, Λ₃ = (λ₃ + λ₁λ₂)/l with
/// l = sign·√(λ₁λ₂λ₃). Rational whenever the product is a perfect square.
pub fn level_two_from_rosenhain(
    rosenhain: &RosenhainModuli,
    sign: Sign,
) -> Result<LevelTwoModuli, ModuliError> {
    let prod = rosenhain.product();
    if prod.is_zero() {
        return Err(ModuliError::ZeroProduct);
    }
    let l = Scalar::sqrt_rational(&prod, sign).map_err(|_| ModuliError::ZeroProduct)?;
    let linv = l.inv().expect("nonzero square root");
    let num = |a: &Rational, b: &Rational, c: &Rational| -> Scalar { Scalar::Rat(a + b * c) };
    let v1 = num(&rosenhain.l1, &rosenhain.l2, &rosenhain.l3).mul(&linv);
    let v2 = num(&rosenhain.l2, &rosenhain.l1, &rosenhain.l3).mul(&linv);
    let v3 = num(&rosenhain.l3, &rosenhain.l1, &rosenhain.l2).mul(&linv);
    Ok(LevelTwoModuli {
        values: [v1, v2, v3],
        l,
    })
}

/// The Richelot (2,2)-isogeny on level-two moduli:
///   Λ′₁ = 2(2Λ₁−Λ₂−Λ₃)/(Λ₂−Λ₃),
///   Λ′₂ = Λ′₁ − 4(Λ₁−Λ₂)(Λ₁−Λ₃)/((Λ₁+2)(Λ₂−Λ₃)),
///   Λ′₃ = Λ′₁ − 4(Λ₁−Λ₂)(Λ₁−Λ₃)/((Λ₁−2)(Λ₂−Λ₃)).
/// Applying it twice returns the input.
pub fn richelot_transform(values: &[Scalar; 3]) -> Result<[Scalar; 3], ModuliError> {
    let [l1, l2, l3] = values;
    let two = l1.from_i64(2);
    let four = l1.from_i64(4);
    let d23 = l2.sub(l3);
    if d23.is_zero_val() {
        return Err(ModuliError::DegenerateDenominator("Lambda_2 - Lambda_3"));
    }
    let l1p2 = l1.add(&two);
    if l1p2.is_zero_val() {
        return Err(ModuliError::DegenerateDenominator("Lambda_1 + 2"));
    }
    let l1m2 = l1.sub(&two);
    if l1m2.is_zero_val() {
        return Err(ModuliError::DegenerateDenominator("Lambda_1 - 2"));
    }
    let top = two.mul(l1).sub(l2).sub(l3);
    let out1 = two.mul(&top).div(&d23).expect("checked");
    let num = four.mul(&l1.sub(l2)).mul(&l1.sub(l3));
    let out2 = out1.sub(&num.div(&l1p2.mul(&d23)).expect("checked"));
    let out3 = out1.sub(&num.div(&l1m2.mul(&d23)).expect("checked"));
    Ok([out1, out2, out3])
}

/// Rational-input convenience for [`richelot_transform`].
pub fn richelot_transform_rational(values: &[Rational; 3]) -> Result<[Rational; 3], ModuliError> {
    let s = [
        Scalar::Rat(values[0].clone()),
        Scalar::Rat(values[1].clone()),
        Scalar::Rat(values[2].clone()),
    ];
    let out = richelot_transform(&s)?;
    Ok(out.map(|v| match v {
        Scalar::Rat(q) => q,
        Scalar::Ext(_) => unreachable!("rational inputs stay rational"),
    }))
}

/// Parameters (A, B, C, D) of the Goepel-normal Kummer quartic, satisfying
/// D² = A² + B² + C² + ABC − 4 exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct KummerQuarticParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl KummerQuarticParams {
    /// D² − (A² + B² + C² + ABC − 4); zero for valid parameters.
    pub fn identity_residual(&self) -> Rational {
        &self.d * &self.d
            - (&self.a * &self.a
                + &self.b * &self.b
                + &self.c * &self.c
                + &self.a * &self.b * &self.c
                - rat_i64(4))
    }
}

/// Quartic parameters from Rosenhain roots, for the Weierstrass-point
/// pairing (λ₁, 1), (λ₂, λ₃), (0, ∞):
///   A = 2(λ₁+1)/(λ₁−1),
///   B = 2(λ₁λ₂+λ₁λ₃−2λ₂λ₃−2λ₁+λ₂+λ₃)/((λ₂−λ₃)(λ₁−1)),
///   C = 2(λ₃+λ₂)/(λ₃−λ₂),
///   D = 4(λ₁−λ₂λ₃)/((λ₂−λ₃)(λ₁−1)).
pub fn kummer_quartic_params(
    rosenhain: &RosenhainModuli,
) -> Result<KummerQuarticParams, ModuliError> {
    let (l1, l2, l3) = (&rosenhain.l1, &rosenhain.l2, &rosenhain.l3);
    let one = Rational::one();
    let l1m1 = l1 - &one;
    if l1m1.is_zero() {
        return Err(ModuliError::DegenerateDenominator("lambda_1 - 1"));
    }
    let d23 = l2 - l3;
    if d23.is_zero_val() {
        return Err(ModuliError::DegenerateDenominator("lambda_2 - lambda_3"));
    }
    let a = rat_i64(2) * (l1 + &one) / &l1m1;
    let b_num = l1 * l2 + l1 * l3 - rat_i64(2) * l2 * l3 - rat_i64(2) * l1 + l2 + l3;
    let b = rat_i64(2) * b_num / (&d23 * &l1m1);
    let c = rat_i64(2) * (l3 + l2) / (l3 - l2);
    let d = rat_i64(4) * (l1 - l2 * l3) / (&d23 * &l1m1);
    let params = KummerQuarticParams { a, b, c, d };
    if !params.identity_residual().is_zero() {
        return Err(ModuliError::QuarticIdentityFailed);
    }
    Ok(params)
}

/// Residual of the degree-three discriminant factor cutting out the Kummer
/// locus inside the symmetric quartic family:
/// ξ₀(16ξ₀² − 4ξ₁² − 4ξ₂² − 4ξ₃² + ξ₄²) + 4ξ₁ξ₂ξ₃.
pub fn nodal_quartic_condition(xi: &[Rational; 5]) -> Rational {
    let sq = |q: &Rational| q * q;
    let inner = rat_i64(16) * sq(&xi[0])
        - rat_i64(4) * sq(&xi[1])
        - rat_i64(4) * sq(&xi[2])
        - rat_i64(4) * sq(&xi[3])
        + sq(&xi[4]);
    &xi[0] * inner + rat_i64(4) * &xi[1] * &xi[2] * &xi[3]
}

/// λ′ = ((1−k)/(1+k))² with k = branch·√λ: the modulus of the two-isogenous
/// elliptic curve. Rational iff λ is a perfect square.
pub fn elliptic_two_isogeny_modulus(
    lambda: &Rational,
    branch: Sign,
) -> Result<Scalar, ModuliError> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(ModuliError::InvalidModulus(lambda.clone()));
    }
    let k = Scalar::sqrt_rational(lambda, branch).map_err(|_| ModuliError::ZeroProduct)?;
    let one = k.one_val();
    let denom = one.add(&k);
    if denom.is_zero_val() {
        return Err(ModuliError::IsogenyPole);
    }
    let m = one.sub(&k).div(&denom).expect("checked");
    Ok(m.mul(&m))
}

/// The six values of the cross-ratio orbit of a modulus under the
/// anharmonic action.
pub fn cross_ratio_orbit(lambda: &Rational) -> Result<Vec<Rational>, ModuliError> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(ModuliError::InvalidModulus(lambda.clone()));
    }
    let one = Rational::one();
    Ok(vec![
        lambda.clone(),
        &one - lambda,
        lambda.recip(),
        &one - lambda.recip(),
        (&one - lambda).recip(),
        lambda / (lambda - &one),
    ])
}

/// Result of the two-isogeny locus check for a pair of elliptic moduli.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoIsogenyLocus {
    /// λ₁²λ₂² − 2λ₁λ₂(λ₁+λ₂) + λ₁² + λ₂² − 12λ₁λ₂ − 2(λ₁+λ₂) + 1
    pub residual: Rational,
    /// λ² = −(λ₁+1)(λ₂+1)/[2(λ₁−1)(λ₂−1)], meaningful on the locus but
    /// computed regardless; `on_locus` is the flag.
    pub lambda_sq: Rational,
    pub on_locus: bool,
}

pub fn two_isogeny_locus_residual(
    l1: &Rational,
    l2: &Rational,
) -> Result<TwoIsogenyLocus, ModuliError> {
    for l in [l1, l2] {
        if l.is_zero() || l.is_one() {
            return Err(ModuliError::InvalidModulus(l.clone()));
        }
    }
    let one = Rational::one();
    let prod = l1 * l2;
    let sum = l1 + l2;
    let residual = &prod * &prod - rat_i64(2) * &prod * &sum + l1 * l1 + l2 * l2
        - rat_i64(12) * &prod
        - rat_i64(2) * &sum
        + &one;
    let lambda_sq = -((l1 + &one) * (l2 + &one)) / (rat_i64(2) * (l1 - &one) * (l2 - &one));
    Ok(TwoIsogenyLocus {
        on_locus: residual.is_zero(),
        residual,
        lambda_sq,
    })
}

/// j = 256(λ²−λ+1)³/(λ²(λ−1)²), the j-invariant of the curve with
/// level-two modulus λ.
pub fn j_invariant(lambda: &Rational) -> Result<Rational, ModuliError> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(ModuliError::InvalidModulus(lambda.clone()));
    }
    let one = Rational::one();
    let t = lambda * lambda - lambda + &one;
    let num = rat_i64(256) * &t * &t * &t;
    let den = lambda * lambda * (lambda - &one) * (lambda - &one);
    Ok(num / den)
}

/// The classical modular polynomial Φ₂(j₁, j₂) cutting out X₀(2):
/// −j₁²j₂² + j₁³ + j₂³ + 1488 j₁j₂(j₁+j₂) − 2⁴3⁴5³ (j₁²+j₂²)
/// + 3⁴5³·4027 j₁j₂ + 2⁷3⁷5⁵ (j₁+j₂) − 2¹²3⁹5⁹.
pub fn modular_curve_x0_2_residual(j1: &Rational, j2: &Rational) -> Rational {
    let c1 = rat_i64(1488);
    let c2 = rat_i64(162_000); // 2^4 3^4 5^3
    let c3 = rat_i64(40_773_375); // 3^4 5^3 4027
    let c4 = rat_i64(8_748_000_000); // 2^7 3^7 5^5
    let c5 = rat_i64(157_464_000_000_000); // 2^12 3^9 5^9
    let jj = j1 * j2;
    let s = j1 + j2;
    -(&jj * &jj) + j1 * j1 * j1 + j2 * j2 * j2 + &c1 * &jj * &s - &c2 * (j1 * j1 + j2 * j2)
        + &c3 * &jj
        + &c4 * &s
        - c5
}

/// Rational parametrization of X₀(2): j₁ = (h+256)³/h², j₂ = (h+16)³/h.
pub fn x0_2_parametrization(h: &Rational) -> Result<(Rational, Rational), ModuliError> {
    if h.is_zero() {
        return Err(ModuliError::ZeroParameter);
    }
    let a = h + rat_i64(256);
    let b = h + rat_i64(16);
    Ok((&a * &a * &a / (h * h), &b * &b * &b / h))
}

/// Moduli of the degenerating pencil:
/// Λ′₁ = k′₂ε′²/k′₁ + k′₁/(k′₂ε′²), Λ′₂ = k′₁/k′₂ + k′₂/k′₁,
/// Λ′₃ = k′₁k′₂ + 1/(k′₁k′₂).
pub fn degeneration_moduli(
    k1p: &Rational,
    k2p: &Rational,
    epsp: &Rational,
) -> Result<[Rational; 3], ModuliError> {
    if k1p.is_zero() {
        return Err(ModuliError::DegenerateDenominator("k'_1"));
    }
    if k2p.is_zero() {
        return Err(ModuliError::DegenerateDenominator("k'_2"));
    }
    if epsp.is_zero() {
        return Err(ModuliError::DegenerateDenominator("epsilon'"));
    }
    let e2 = epsp * epsp;
    let t1 = k2p * &e2 / k1p;
    let v1 = &t1 + t1.recip();
    let t2 = k1p / k2p;
    let v2 = &t2 + t2.recip();
    let t3 = k1p * k2p;
    let v3 = &t3 + t3.recip();
    Ok([v1, v2, v3])
}
