//! Number-theoretic transforms over two word-size NTT primes with exact
//! integer reconstruction by CRT, so a convolution of mod-p residues can be
//! reduced mod p only after the true integer values are known. Direct
//! mod-p NTT would be invalid: p need not support power-of-two roots.

use super::CountError;
use crate::arith::fp::{mulmod, powmod};
use crate::arith::PrimeFieldCtx;

/// q = 119·2²³ + 1 and q = 17·2²⁷ + 1, both with primitive root 3.
const Q1: u64 = 998_244_353;
const Q2: u64 = 2_281_701_377;
const GEN: u64 = 3;

/// Largest p for which intermediate entries (≤ (m+1)(p−1)² with a mod-p
/// reduction between stages) stay below Q1·Q2.
pub const MAX_NTT_PRIME: u64 = 1_000_000;

fn ntt_in_place(a: &mut [u64], invert: bool, q: u64) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let root = if invert {
            powmod(powmod(GEN, q - 2, q), (q - 1) / len as u64, q)
        } else {
            powmod(GEN, (q - 1) / len as u64, q)
        };
        for start in (0..n).step_by(len) {
            let mut w = 1u64;
            for k in 0..len / 2 {
                let u = a[start + k];
                let v = mulmod(a[start + k + len / 2], w, q);
                a[start + k] = if u + v >= q { u + v - q } else { u + v };
                a[start + k + len / 2] = if u >= v { u - v } else { u + q - v };
                w = mulmod(w, root, q);
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = powmod(n as u64, q - 2, q);
        for v in a.iter_mut() {
            *v = mulmod(*v, n_inv, q);
        }
    }
}

fn convolve_mod_q(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    let mut fa = vec![0u64; n];
    let mut fb = vec![0u64; n];
    for (dst, &src) in fa.iter_mut().zip(a) {
        *dst = src % q;
    }
    for (dst, &src) in fb.iter_mut().zip(b) {
        *dst = src % q;
    }
    ntt_in_place(&mut fa, false, q);
    ntt_in_place(&mut fb, false, q);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mulmod(*x, *y, q);
    }
    ntt_in_place(&mut fa, true, q);
    fa.truncate(out_len);
    fa
}

/// Exact convolution of two residue vectors followed by reduction mod p.
/// The true integer entries are bounded by min(|a|,|b|)·(p−1)², which must
/// stay below Q1·Q2 for the CRT lift to be exact.
pub fn convolve_exact_mod(
    a: &[u64],
    b: &[u64],
    ctx: &PrimeFieldCtx,
) -> Result<Vec<u64>, CountError> {
    let p = ctx.p();
    if p > MAX_NTT_PRIME {
        return Err(CountError::PrimeTooLargeForNtt {
            p,
            max: MAX_NTT_PRIME,
        });
    }
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    let c1 = convolve_mod_q(a, b, Q1);
    let c2 = convolve_mod_q(a, b, Q2);
    // CRT: x ≡ c1 (Q1), x ≡ c2 (Q2), unique below Q1·Q2 ≈ 2.28e18.
    let q1_inv_q2 = powmod(Q1 % Q2, Q2 - 2, Q2);
    let out = c1
        .iter()
        .zip(&c2)
        .map(|(&x1, &x2)| {
            let diff = if x2 >= x1 % Q2 {
                x2 - x1 % Q2
            } else {
                x2 + Q2 - x1 % Q2
            };
            let k = mulmod(diff, q1_inv_q2, Q2);
            let exact = x1 as u128 + Q1 as u128 * k as u128;
            (exact % p as u128) as u64
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_has_full_two_power_order() {
        for q in [Q1, Q2] {
            assert!(crate::arith::fp::is_prime_u64(q));
            // 3 must be a primitive root: nontrivial at every maximal
            // proper-divisor exponent of q − 1.
            let phi = q - 1;
            let mut n = phi;
            let mut prime_factors = vec![];
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    prime_factors.push(d);
                    while n % d == 0 {
                        n /= d;
                    }
                }
                d += 1;
            }
            if n > 1 {
                prime_factors.push(n);
            }
            for f in prime_factors {
                assert_ne!(powmod(GEN, phi / f, q), 1, "q = {q}, factor {f}");
            }
        }
    }

    #[test]
    fn matches_schoolbook_convolution() {
        let ctx = PrimeFieldCtx::new(101).unwrap();
        let a: Vec<u64> = (0..37).map(|k| (k * k + 5) % 101).collect();
        let b: Vec<u64> = (0..23).map(|k| (3 * k + 1) % 101).collect();
        let fast = convolve_exact_mod(&a, &b, &ctx).unwrap();
        let slow = super::super::schoolbook_convolve(&a, &b, &ctx);
        assert_eq!(fast, slow);
    }

    #[test]
    fn rejects_huge_primes() {
        let ctx = PrimeFieldCtx::new(2147483647).unwrap();
        assert!(matches!(
            convolve_exact_mod(&[1, 2], &[3, 4], &ctx),
            Err(CountError::PrimeTooLargeForNtt { .. })
        ));
    }
}
