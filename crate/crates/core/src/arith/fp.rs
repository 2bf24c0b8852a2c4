//! Prime-field arithmetic with precomputed factorial tables, the Legendre
//! symbol, and deterministic Tonelli-Shanks square roots.

// Divisibility reads as `% == 0` throughout the modular arithmetic here.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

use std::sync::OnceLock;

use num_traits::Signed;

use super::rational::Rational;
use super::{ArithError, FieldOps};

/// Factorial tables above this prime would not fit in memory; the binomial
/// queries are only ever made by the counting kernels at desk-scale primes.
const MAX_TABLE_PRIME: u64 = 1 << 23;

/// An odd prime together with lazily built factorial / inverse-factorial
/// tables. Immutable after construction and shareable across threads.
pub struct PrimeFieldCtx {
    p: u64,
    tables: OnceLock<FactorialTables>,
}

struct FactorialTables {
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl PrimeFieldCtx {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p < 3 || !is_prime_u64(p) {
            return Err(ArithError::NotAnOddPrime(p));
        }
        Ok(PrimeFieldCtx {
            p,
            tables: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        powmod(base % self.p, exp, self.p)
    }

    pub fn inv(&self, a: u64) -> Result<u64, ArithError> {
        if a % self.p == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, n: &num_bigint::BigInt) -> u64 {
        let p = num_bigint::BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        let digits = r.to_u64_digits();
        *digits.1.first().unwrap_or(&0)
    }

    /// n/d mod p; errors when p divides d.
    pub fn reduce_rational(&self, q: &Rational) -> Result<u64, ArithError> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return Err(ArithError::DenominatorDivisibleByP(q.to_string(), self.p));
        }
        let num = self.reduce_bigint(q.numer());
        Ok(self.mul(num, self.inv(den)?))
    }

    pub fn elem(&self, v: u64) -> FpElem {
        FpElem {
            v: v % self.p,
            p: self.p,
        }
    }

    fn factorial_tables(&self) -> Result<&FactorialTables, ArithError> {
        if self.p > MAX_TABLE_PRIME {
            return Err(ArithError::TableTooLarge(self.p));
        }
        Ok(self.tables.get_or_init(|| {
            let p = self.p;
            let n = p as usize;
            let mut fact = vec![1u64; n];
            for k in 1..n {
                fact[k] = mulmod(fact[k - 1], k as u64, p);
            }
            let mut inv_fact = vec![1u64; n];
            inv_fact[n - 1] = powmod(fact[n - 1], p - 2, p);
            for k in (1..n).rev() {
                inv_fact[k - 1] = mulmod(inv_fact[k], k as u64, p);
            }
            FactorialTables { fact, inv_fact }
        }))
    }

    pub fn factorial(&self, k: u64) -> Result<u64, ArithError> {
        if k >= self.p {
            return Err(ArithError::BinomialRowOutOfRange { m: k, p: self.p });
        }
        Ok(self.factorial_tables()?.fact[k as usize])
    }

    /// C(m, k) mod p for 0 <= k <= m <= p-1.
    pub fn binomial(&self, m: u64, k: u64) -> Result<u64, ArithError> {
        if m >= self.p {
            return Err(ArithError::BinomialRowOutOfRange { m, p: self.p });
        }
        if k > m {
            return Ok(0);
        }
        let t = self.factorial_tables()?;
        Ok(mulmod(
            t.fact[m as usize],
            mulmod(t.inv_fact[k as usize], t.inv_fact[(m - k) as usize], self.p),
            self.p,
        ))
    }
}

impl std::fmt::Debug for PrimeFieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PrimeFieldCtx(p = {})", self.p)
    }
}

/// base^exp mod p by square-and-multiply.
pub fn fp_pow(base: u64, exp: u64, ctx: &PrimeFieldCtx) -> u64 {
    ctx.pow(base, exp)
}

/// Euler criterion; 0 iff p | a.
pub fn legendre_symbol(a: u64, ctx: &PrimeFieldCtx) -> i8 {
    let p = ctx.p();
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = powmod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks. Returns the smaller of the two roots {r, p-r} so that
/// sampled points and golden files are reproducible; `None` for non-residues.
pub fn sqrt_mod_p(a: u64, ctx: &PrimeFieldCtx) -> Option<u64> {
    let p = ctx.p();
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_symbol(a, ctx) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        powmod(a, (p + 1) / 4, p)
    } else {
        // Write p-1 = q * 2^s with q odd.
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        // Smallest non-residue as the fixed auxiliary; deterministic.
        let mut z = 2;
        while legendre_symbol(z, ctx) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = powmod(z, q, p);
        let mut t = powmod(a, q, p);
        let mut r = powmod(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mulmod(t2, t2, p);
                i += 1;
                debug_assert!(i < m);
            }
            let b = powmod(c, 1 << (m - i - 1), p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
        r
    };
    Some(r.min(p - r))
}

/// The full row C(m, 0..=m) mod p via the factorial tables.
pub fn binomials_mod_p(m: u64, ctx: &PrimeFieldCtx) -> Result<Vec<u64>, ArithError> {
    if m >= ctx.p() {
        return Err(ArithError::BinomialRowOutOfRange { m, p: ctx.p() });
    }
    (0..=m).map(|k| ctx.binomial(m, k)).collect()
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Horner evaluation of a u64-coefficient polynomial (ascending) mod q.
pub fn eval_u64_poly(coeffs: &[u64], x: u64, q: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (mulmod(acc, x, q) + c % q) % q;
    }
    acc
}

/// Monic gcd of two polynomials over F_q (dense ascending coefficients).
/// Returns a vector of length d+1; length 1 means the gcd is constant.
pub fn gcd_mod_q(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    fn rem(mut num: Vec<u64>, den: &[u64], q: u64) -> Vec<u64> {
        let dd = den.len() - 1;
        let lead_inv = powmod(den[dd], q - 2, q);
        while num.len() > dd {
            let k = num.len() - 1 - dd;
            let c = mulmod(*num.last().unwrap(), lead_inv, q);
            if c != 0 {
                for (j, &dc) in den.iter().enumerate() {
                    let t = mulmod(c, dc, q);
                    num[k + j] = (num[k + j] + q - t) % q;
                }
            }
            num = trim(num);
            if num.is_empty() {
                break;
            }
        }
        num
    }
    let mut a = trim(a.iter().map(|&c| c % q).collect());
    let mut b = trim(b.iter().map(|&c| c % q).collect());
    while !b.is_empty() {
        let r = rem(a, &b, q);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return vec![0];
    }
    let inv = powmod(*a.last().unwrap(), q - 2, q);
    a.iter().map(|&c| mulmod(c, inv, q)).collect()
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime-field element carrying its modulus, so the generic map evaluators
/// can build constants without threading a context through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpElem {
    pub v: u64,
    pub p: u64,
}

impl FieldOps for FpElem {
    fn zero_val(&self) -> Self {
        FpElem { v: 0, p: self.p }
    }
    fn one_val(&self) -> Self {
        FpElem { v: 1, p: self.p }
    }
    fn from_i64(&self, n: i64) -> Self {
        FpElem {
            v: n.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        FpElem {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpElem {
            v: if self.v >= rhs.v {
                self.v - rhs.v
            } else {
                self.v + self.p - rhs.v
            },
            p: self.p,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpElem {
            v: mulmod(self.v, rhs.v, self.p),
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        FpElem {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
    fn is_zero_val(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(FpElem {
                v: powmod(self.v, self.p - 2, self.p),
                p: self.p,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeFieldCtx {
        PrimeFieldCtx::new(p).unwrap()
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeFieldCtx::new(1).is_err());
        assert!(PrimeFieldCtx::new(2).is_err());
        assert!(PrimeFieldCtx::new(91).is_err());
        assert!(PrimeFieldCtx::new(2147483647).is_ok());
    }

    #[test]
    fn fp_pow_examples() {
        let c = ctx(7);
        assert_eq!(fp_pow(2, 0, &c), 1);
        assert_eq!(fp_pow(2, 3, &c), 1); // 8 mod 7
        assert_eq!(fp_pow(0, 5, &c), 0);
    }

    #[test]
    fn legendre_examples() {
        let c = ctx(5);
        assert_eq!(legendre_symbol(0, &c), 0);
        assert_eq!(legendre_symbol(1, &c), 1);
        assert_eq!(legendre_symbol(2, &c), -1); // 2^2 = 4 = -1 mod 5
    }

    #[test]
    fn sqrt_examples() {
        let c7 = ctx(7);
        assert_eq!(sqrt_mod_p(4, &c7), Some(2));
        assert_eq!(sqrt_mod_p(3, &c7), None);
        let c5 = ctx(5);
        assert_eq!(sqrt_mod_p(4, &c5), Some(2)); // sqrt(-1) mod 5
    }

    #[test]
    fn sqrt_prefers_smaller_root_and_squares_back() {
        for p in [5u64, 13, 17, 29, 97, 10007] {
            let c = ctx(p);
            for a in 0..p.min(200) {
                if let Some(r) = sqrt_mod_p(a, &c) {
                    assert_eq!(mulmod(r, r, p), a % p);
                    assert!(r <= p - r);
                } else {
                    assert_eq!(legendre_symbol(a, &c), -1);
                }
            }
        }
    }

    #[test]
    fn binomial_rows() {
        let c5 = ctx(5);
        assert_eq!(binomials_mod_p(2, &c5).unwrap(), vec![1, 2, 1]);
        assert_eq!(binomials_mod_p(4, &c5).unwrap(), vec![1, 4, 1, 4, 1]); // C(4,2)=6=1 mod 5
        let c7 = ctx(7);
        assert_eq!(binomials_mod_p(3, &c7).unwrap(), vec![1, 3, 3, 1]);
        assert!(binomials_mod_p(7, &c7).is_err());
    }

    #[test]
    fn legendre_is_multiplicative() {
        let c = ctx(101);
        for a in 1..101u64 {
            for b in 1..101u64 {
                let lhs = legendre_symbol(mulmod(a, b, 101), &c);
                assert_eq!(lhs, legendre_symbol(a, &c) * legendre_symbol(b, &c));
            }
        }
    }

    #[test]
    fn reduce_rational_rejects_bad_denominator() {
        let c = ctx(5);
        let q = super::super::rational::rat(1, 5);
        assert!(c.reduce_rational(&q).is_err());
        let ok = super::super::rational::rat(3, 4);
        // 3 * 4^{-1} = 3 * 4 = 12 = 2 mod 5
        assert_eq!(c.reduce_rational(&ok).unwrap(), 2);
    }
}
