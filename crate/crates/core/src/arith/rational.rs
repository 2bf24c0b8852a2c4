//! Exact rationals. `Rational` is `num_rational::BigRational`: always reduced,
//! denominator positive, displayed as `n/d` (or `n` when the denominator is 1),
//! which is also the text format accepted by every CLI input.

use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

use super::FieldOps;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "n/d" or "n" with optional sign.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("cannot parse {s:?} as a rational: {e}"))
}

/// Exact square root when the argument is a perfect rational square.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer();
    let den = q.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

pub fn is_square(q: &Rational) -> bool {
    exact_sqrt(q).is_some()
}

/// Signed integer power; negative exponents invert (zero base rejected).
pub fn rat_pow(q: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow::Pow::pow(q, e)
    } else {
        num_traits::pow::Pow::pow(&q.recip(), -e)
    }
}

impl FieldOps for Rational {
    fn zero_val(&self) -> Self {
        Rational::zero()
    }
    fn one_val(&self) -> Self {
        Rational::one()
    }
    fn from_i64(&self, n: i64) -> Self {
        rat_i64(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero_val(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// f64 value of a rational, for the floating-point period checks only.
pub fn to_f64(q: &Rational) -> f64 {
    // Split into integer part + remainder so huge numerators stay accurate.
    let (trunc, rem_num) = {
        let n = q.numer();
        let d = q.denom();
        let t = n / d;
        let r = n - &t * d;
        (t, r)
    };
    let den = q.denom();
    let bits = den.bits().max(rem_num.magnitude().bits());
    if bits <= 52 {
        let r = big_to_f64(&rem_num);
        let d = big_to_f64(den);
        big_to_f64(&trunc) + r / d
    } else {
        // Scale both parts down; relative accuracy is all the callers need.
        let shift = (bits - 52) as usize;
        let r = big_to_f64(&(&rem_num >> shift));
        let d = big_to_f64(&(den >> shift));
        big_to_f64(&trunc) + r / d
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut acc = 0.0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    if sign == BigSign::Minus {
        -acc
    } else {
        acc
    }
}
