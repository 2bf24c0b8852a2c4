//! The rank-17 to rank-18 degeneration: with the pencil moduli
//! λ′₁ = (k′₁)², λ′₂ = (k′₂ε′)², λ′₃ = (ε′)² and the substitutions
//! k′ᵢ = (1−kᵢ)/(1+kᵢ), ε′ = 2ε/((k₁+1)(k₂−1)), the rescaled fibration
//! (x, y) → (x/ε², y/ε³) of the Kummer pencil converges, coefficient by
//! coefficient, to the rank-18 pencil at λᵢ = kᵢ². The check is exact: the
//! coefficients are Laurent polynomials in ε, the rescale must clear every
//! pole, and the constant terms must match the rank-18 catalog entry.

use num_traits::{One, Zero};

use super::catalog::{catalog, CatalogId};
use super::SurfaceError;
use crate::arith::rational::{rat_i64, Rational};
use crate::moduli::degeneration_moduli;
use crate::poly::UniPoly;

/// Dense Laurent polynomial in ε: coeffs[k] multiplies ε^(min_deg + k).
#[derive(Debug, Clone, PartialEq)]
struct Laurent {
    min_deg: i64,
    coeffs: Vec<Rational>,
}

impl Laurent {
    fn zero() -> Self {
        Laurent {
            min_deg: 0,
            coeffs: vec![],
        }
    }

    fn constant(c: Rational) -> Self {
        Laurent {
            min_deg: 0,
            coeffs: vec![c],
        }
        .normalized()
    }

    fn monomial(c: Rational, deg: i64) -> Self {
        Laurent {
            min_deg: deg,
            coeffs: vec![c],
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.min_deg += 1;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
        self
    }

    fn coeff(&self, deg: i64) -> Rational {
        if deg < self.min_deg {
            return Rational::zero();
        }
        self.coeffs
            .get((deg - self.min_deg) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add(&self, rhs: &Laurent) -> Laurent {
        if self.coeffs.is_empty() {
            return rhs.clone();
        }
        if rhs.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.min_deg.min(rhs.min_deg);
        let hi =
            (self.min_deg + self.coeffs.len() as i64).max(rhs.min_deg + rhs.coeffs.len() as i64);
        let coeffs = (lo..hi).map(|d| self.coeff(d) + rhs.coeff(d)).collect();
        Laurent {
            min_deg: lo,
            coeffs,
        }
        .normalized()
    }

    fn mul(&self, rhs: &Laurent) -> Laurent {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Laurent::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent {
            min_deg: self.min_deg + rhs.min_deg,
            coeffs,
        }
        .normalized()
    }

    fn scale(&self, c: &Rational) -> Laurent {
        Laurent {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .normalized()
    }

    /// Multiply by ε^k.
    fn shift(&self, k: i64) -> Laurent {
        if self.coeffs.is_empty() {
            return Laurent::zero();
        }
        Laurent {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    fn has_pole(&self) -> bool {
        self.min_deg < 0 && !self.coeffs.is_empty()
    }

    fn at_zero(&self) -> Rational {
        self.coeff(0)
    }

    fn eval(&self, eps: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.min_deg + k as i64;
            acc += c * crate::arith::rational::rat_pow(eps, e as i32);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct DegenerationReport {
    pub k1: Rational,
    pub k2: Rational,
    /// The rescaled pencil coefficients are pole-free in ε.
    pub pole_free: bool,
    /// ε = 0 limit of the rescaled pencil equals the rank-18 model exactly.
    pub limit_matches: bool,
    /// The Laurent coefficients agree with the catalog entry at a sample ε.
    pub sample_consistent: bool,
}

impl DegenerationReport {
    pub fn ok(&self) -> bool {
        self.pole_free && self.limit_matches && self.sample_consistent
    }
}

/// Exact degeneration check at elliptic moduli λᵢ = kᵢ².
pub fn degeneration_limit_check(
    k1: &Rational,
    k2: &Rational,
) -> Result<DegenerationReport, SurfaceError> {
    let one = Rational::one();
    for k in [k1, k2] {
        if k.is_zero() || k == &one || k == &(-one.clone()) {
            return Err(SurfaceError::BadParameter(format!(
                "k = {k} must avoid {{0, 1, -1}}"
            )));
        }
    }
    if k1 * k1 == k2 * k2 {
        return Err(SurfaceError::BadParameter(
            "k1^2 = k2^2 collapses the two elliptic moduli".into(),
        ));
    }
    let k1p = (&one - k1) / (&one + k1);
    let k2p = (&one - k2) / (&one + k2);
    let c = rat_i64(2) / ((k1 + &one) * (k2 - &one));
    let c2 = &c * &c;

    // Λ′₁(ε) = d₂ε² + d₀ε⁻², Λ′₂ and Λ′₃ are ε-free.
    let d2 = &k2p * &c2 / &k1p;
    let d0 = &k1p / (&k2p * &c2);
    let lam1 = Laurent::monomial(d2, 2).add(&Laurent::monomial(d0, -2));
    let t2 = &k1p / &k2p;
    let lam2 = Laurent::constant(&t2 + t2.recip());
    let t3 = &k1p * &k2p;
    let lam3 = Laurent::constant(&t3 + t3.recip());

    // S_17_A data as t-polynomials with Laurent coefficients:
    // a₂ = 2(A(t⁴+1) + Bt²), a₄ = C²(t⁴ − Λ′₁t² + 1)².
    let two = Laurent::constant(rat_i64(2));
    let a = two
        .mul(&lam1)
        .add(&lam2.scale(&rat_i64(-1)))
        .add(&lam3.scale(&rat_i64(-1)));
    let b = two
        .mul(&lam2)
        .mul(&lam3)
        .add(&lam1.mul(&lam2.add(&lam3)).scale(&rat_i64(-1)));
    let c_const = lam2.add(&lam3.scale(&rat_i64(-1)));
    let c_sq = c_const.mul(&c_const);
    let two_a = two.mul(&a);
    let two_b = two.mul(&b);
    let a2_coeffs: Vec<Laurent> = vec![
        two_a.clone(),
        Laurent::zero(),
        two_b,
        Laurent::zero(),
        two_a,
    ];
    let lam1_sq = lam1.mul(&lam1);
    let m2 = lam1.scale(&rat_i64(-2));
    let a4_core: Vec<Laurent> = vec![
        Laurent::constant(one.clone()),
        Laurent::zero(),
        m2.clone(),
        Laurent::zero(),
        lam1_sq.add(&Laurent::constant(rat_i64(2))),
        Laurent::zero(),
        m2,
        Laurent::zero(),
        Laurent::constant(one.clone()),
    ];
    let a4_coeffs: Vec<Laurent> = a4_core.iter().map(|l| l.mul(&c_sq)).collect();

    // Rescale (x, y) → (x/ε², y/ε³): a₂ → ε²a₂, a₄ → ε⁴a₄.
    let a2_rescaled: Vec<Laurent> = a2_coeffs.iter().map(|l| l.shift(2)).collect();
    let a4_rescaled: Vec<Laurent> = a4_coeffs.iter().map(|l| l.shift(4)).collect();
    let pole_free = !a2_rescaled
        .iter()
        .chain(&a4_rescaled)
        .any(Laurent::has_pole);

    // ε = 0 limit against the rank-18 pencil at λᵢ = kᵢ².
    let j1 = catalog(CatalogId::J1, &[k1 * k1, k2 * k2])?;
    let j1 = j1.as_weierstrass().unwrap();
    let limit_a2 = UniPoly::from_coeffs(a2_rescaled.iter().map(Laurent::at_zero).collect());
    let limit_a4 = UniPoly::from_coeffs(a4_rescaled.iter().map(Laurent::at_zero).collect());
    let limit_matches = limit_a2 == j1.a2 && limit_a4 == j1.a4;

    // Guard the transcription: at a sample ε the Laurent coefficients must
    // reproduce the catalog S_17_A at the matching numeric moduli.
    let eps = Rational::new(1.into(), 3.into());
    let epsp = &c * &eps;
    let lamp = degeneration_moduli(&k1p, &k2p, &epsp)
        .map_err(|e| SurfaceError::BadParameter(e.to_string()))?;
    let s17a = catalog(CatalogId::S17A, &lamp)?;
    let s17a = s17a.as_weierstrass().unwrap();
    let sample_a2 = UniPoly::from_coeffs(a2_coeffs.iter().map(|l| l.eval(&eps)).collect());
    let sample_a4 = UniPoly::from_coeffs(a4_coeffs.iter().map(|l| l.eval(&eps)).collect());
    let sample_consistent = sample_a2 == s17a.a2 && sample_a4 == s17a.a4;

    Ok(DegenerationReport {
        k1: k1.clone(),
        k2: k2.clone(),
        pole_free,
        limit_matches,
        sample_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn limit_reproduces_rank18_pencil() {
        for (k1, k2) in [
            (rat(2, 1), rat(3, 1)),
            (rat(1, 2), rat(2, 5)),
            (rat(-3, 2), rat(5, 4)),
        ] {
            let rep = degeneration_limit_check(&k1, &k2).unwrap();
            assert!(rep.pole_free, "pole at ({k1}, {k2})");
            assert!(rep.limit_matches, "limit mismatch at ({k1}, {k2})");
            assert!(rep.sample_consistent, "transcription drift at ({k1}, {k2})");
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(degeneration_limit_check(&rat(1, 1), &rat(2, 1)).is_err());
        assert!(degeneration_limit_check(&rat(2, 1), &rat(-2, 1)).is_err());
        assert!(degeneration_limit_check(&rat(0, 1), &rat(2, 1)).is_err());
    }

    #[test]
    fn laurent_arithmetic() {
        let x = Laurent::monomial(rat(3, 1), -2).add(&Laurent::constant(rat(1, 1)));
        assert!(x.has_pole());
        let y = x.shift(2);
        assert!(!y.has_pole());
        assert_eq!(y.at_zero(), rat(3, 1));
        assert_eq!(x.eval(&rat(1, 2)), rat(13, 1)); // 3·4 + 1
        let sq = x.mul(&x);
        assert_eq!(sq.coeff(-4), rat(9, 1));
        assert_eq!(sq.coeff(-2), rat(6, 1));
        assert_eq!(sq.coeff(0), rat(1, 1));
    }
}
