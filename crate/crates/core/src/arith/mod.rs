//! Scalar arithmetic: exact rationals, quadratic extensions `a + b√d`, and
//! prime fields with the number-theoretic primitives used by the counting
//! kernels.

pub mod fp;
pub mod quadext;
pub mod rational;

pub use fp::{binomials_mod_p, fp_pow, legendre_symbol, sqrt_mod_p, FpElem, PrimeFieldCtx};
pub use quadext::{QuadExt, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("denominator of {0} is divisible by p = {1}")]
    DenominatorDivisibleByP(String, u64),
    #[error("binomial row m = {m} out of range for p = {p} (need 0 <= m <= p-1)")]
    BinomialRowOutOfRange { m: u64, p: u64 },
    #[error("factorial tables for p = {0} exceed the supported size")]
    TableTooLarge(u64),
    #[error("{0} is not a quadratic residue mod {1}")]
    NonResidue(String, u64),
    #[error("square root of zero extension discriminant")]
    ZeroDiscriminant,
    #[error("division by zero")]
    DivisionByZero,
}

/// Choice of square-root branch wherever the paper works on a double cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The minimal field interface the map evaluators and surface checks need.
/// Constants are built contextually (`self` carries the modulus for `FpElem`).
pub trait FieldOps: Clone + PartialEq + std::fmt::Debug {
    fn zero_val(&self) -> Self;
    fn one_val(&self) -> Self;
    // Contextual constructor: `self` carries the modulus for `FpElem`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero_val(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_val();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}
