//! Quadratic-extension scalars `a + b√d` over the rationals, and the `Scalar`
//! enum that collapses to a plain rational whenever the extension is trivial.
//!
//! These carry the square roots the moduli formulas live on: `l` with
//! `l² = λ₁λ₂λ₃`, the Jacobi modulus `k = √λ`, and the twisted-pencil
//! coefficient `l = 1 + 2λ√(λ²−1) − 2λ²`.

use num_traits::{One, Zero};

use super::rational::{exact_sqrt, rat_i64, Rational};
use super::{ArithError, FieldOps, PrimeFieldCtx, Sign};

/// `a + b√d` with `d` a fixed non-square rational and `b ≠ 0`.
/// Values with `b = 0` or square `d` must live in `Scalar::Rat` instead;
/// the `Scalar` constructors and operators maintain that collapse.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl QuadExt {
    pub fn conj(&self) -> QuadExt {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// a² − b²d, the field norm; zero only for the zero element since d is
    /// not a square.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }
}

impl std::fmt::Display for QuadExt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

/// A rational or an element of a quadratic extension ℚ(√d).
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rat(Rational),
    Ext(QuadExt),
}

impl Scalar {
    pub fn from_rational(q: Rational) -> Scalar {
        Scalar::Rat(q)
    }

    pub fn from_i64(n: i64) -> Scalar {
        Scalar::Rat(rat_i64(n))
    }

    /// `sign·√x`: rational when x is a perfect square, else a + b√d form
    /// with d = x. Zero discriminants are rejected.
    pub fn sqrt_rational(x: &Rational, sign: Sign) -> Result<Scalar, ArithError> {
        if x.is_zero() {
            return Err(ArithError::ZeroDiscriminant);
        }
        if let Some(r) = exact_sqrt(x) {
            return Ok(Scalar::Rat(match sign {
                Sign::Plus => r,
                Sign::Minus => -r,
            }));
        }
        Ok(Scalar::Ext(QuadExt {
            a: Rational::zero(),
            b: match sign {
                Sign::Plus => Rational::one(),
                Sign::Minus => -Rational::one(),
            },
            d: x.clone(),
        }))
    }

    fn collapse(a: Rational, b: Rational, d: Rational) -> Scalar {
        if b.is_zero() {
            Scalar::Rat(a)
        } else if let Some(r) = exact_sqrt(&d) {
            Scalar::Rat(a + b * r)
        } else {
            Scalar::Ext(QuadExt { a, b, d })
        }
    }

    fn parts(&self, d_hint: Option<&Rational>) -> (Rational, Rational, Option<Rational>) {
        match self {
            Scalar::Rat(q) => (q.clone(), Rational::zero(), d_hint.cloned()),
            Scalar::Ext(e) => {
                if let Some(d) = d_hint {
                    assert_eq!(
                        d, &e.d,
                        "mixed quadratic extensions: sqrt({}) vs sqrt({})",
                        d, e.d
                    );
                }
                (e.a.clone(), e.b.clone(), Some(e.d.clone()))
            }
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Ext(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    /// Reduce mod p, mapping √d to the deterministic (smaller) square root;
    /// errors when d is a non-residue or a denominator vanishes.
    pub fn reduce_mod_p(&self, ctx: &PrimeFieldCtx) -> Result<u64, ArithError> {
        match self {
            Scalar::Rat(q) => ctx.reduce_rational(q),
            Scalar::Ext(e) => {
                let d = ctx.reduce_rational(&e.d)?;
                let r = super::fp::sqrt_mod_p(d, ctx)
                    .ok_or_else(|| ArithError::NonResidue(e.d.to_string(), ctx.p()))?;
                let a = ctx.reduce_rational(&e.a)?;
                let b = ctx.reduce_rational(&e.b)?;
                Ok(ctx.add(a, ctx.mul(b, r)))
            }
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Ext(e) => write!(f, "{e}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Scalar {
        Scalar::Rat(q)
    }
}

impl FieldOps for Scalar {
    fn zero_val(&self) -> Self {
        Scalar::Rat(Rational::zero())
    }
    fn one_val(&self) -> Self {
        Scalar::Rat(Rational::one())
    }
    fn from_i64(&self, n: i64) -> Self {
        Scalar::from_i64(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        let d0 = match (self, rhs) {
            (Scalar::Ext(e), _) => Some(e.d.clone()),
            (_, Scalar::Ext(e)) => Some(e.d.clone()),
            _ => None,
        };
        let (a1, b1, _) = self.parts(d0.as_ref());
        let (a2, b2, _) = rhs.parts(d0.as_ref());
        match d0 {
            None => Scalar::Rat(a1 + a2),
            Some(d) => Scalar::collapse(a1 + a2, b1 + b2, d),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let d0 = match (self, rhs) {
            (Scalar::Ext(e), _) => Some(e.d.clone()),
            (_, Scalar::Ext(e)) => Some(e.d.clone()),
            _ => None,
        };
        let (a1, b1, _) = self.parts(d0.as_ref());
        let (a2, b2, _) = rhs.parts(d0.as_ref());
        match d0 {
            None => Scalar::Rat(a1 * a2),
            Some(d) => {
                let a = &a1 * &a2 + &b1 * &b2 * &d;
                let b = &a1 * &b2 + &b1 * &a2;
                Scalar::collapse(a, b, d)
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q.clone()),
            Scalar::Ext(e) => Scalar::Ext(QuadExt {
                a: -e.a.clone(),
                b: -e.b.clone(),
                d: e.d.clone(),
            }),
        }
    }
    fn is_zero_val(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Ext(_) => false, // b != 0 and d non-square
        }
    }
    fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rat(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(q.recip()))
                }
            }
            Scalar::Ext(e) => {
                let n = e.norm();
                debug_assert!(!n.is_zero());
                Some(Scalar::collapse(&e.a / &n, -(&e.b / &n), e.d.clone()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::Rat(rat(n, d))
    }

    #[test]
    fn square_discriminant_collapses() {
        let r = Scalar::sqrt_rational(&rat(9, 4), Sign::Plus).unwrap();
        assert_eq!(r, s(3, 2));
        let r = Scalar::sqrt_rational(&rat(9, 4), Sign::Minus).unwrap();
        assert_eq!(r, s(-3, 2));
        assert!(Scalar::sqrt_rational(&rat(0, 1), Sign::Plus).is_err());
    }

    #[test]
    fn sqrt2_squares_back() {
        let r = Scalar::sqrt_rational(&rat(2, 1), Sign::Plus).unwrap();
        assert!(!r.is_rational());
        assert_eq!(r.mul(&r), s(2, 1));
        let inv = r.inv().unwrap();
        assert_eq!(r.mul(&inv), s(1, 1));
    }

    #[test]
    fn conjugate_product_is_norm() {
        // (1 + 2√3)(1 − 2√3) = 1 − 12 = −11
        let x = Scalar::Ext(QuadExt {
            a: rat(1, 1),
            b: rat(2, 1),
            d: rat(3, 1),
        });
        let y = Scalar::Ext(QuadExt {
            a: rat(1, 1),
            b: rat(-2, 1),
            d: rat(3, 1),
        });
        assert_eq!(x.mul(&y), s(-11, 1));
    }

    #[test]
    fn reduce_mod_p_uses_deterministic_root() {
        let ctx = PrimeFieldCtx::new(7).unwrap();
        // √2 mod 7: 3² = 2, roots {3, 4}, smaller is 3.
        let r = Scalar::sqrt_rational(&rat(2, 1), Sign::Plus).unwrap();
        assert_eq!(r.reduce_mod_p(&ctx).unwrap(), 3);
        // 3 is a non-residue mod 7.
        let nr = Scalar::sqrt_rational(&rat(3, 1), Sign::Plus).unwrap();
        assert!(nr.reduce_mod_p(&ctx).is_err());
    }
}
