//! Exact rational roots of rational polynomials, with multiplicities.
//!
//! Strategy: squarefree (Yun) decomposition, then for each squarefree factor
//! find its roots modulo a small auxiliary prime, Hensel-lift them, and
//! recover candidates by rational reconstruction. Every candidate is verified
//! by exact evaluation, and every true rational root u/v survives: v divides
//! the leading coefficient, so the root reduces to a simple root modulo any
//! auxiliary prime that keeps the factor squarefree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::UniPoly;
use crate::arith::fp::{eval_u64_poly, gcd_mod_q};
use crate::arith::rational::Rational;

const AUX_PRIMES: [u64; 8] = [10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079];

/// All rational roots of f with multiplicities, sorted ascending.
pub fn rational_roots(f: &UniPoly) -> Vec<(Rational, usize)> {
    let mut out: Vec<(Rational, usize)> = vec![];
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (g, mult) in f.squarefree_decomposition() {
        for r in squarefree_rational_roots(&g) {
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn squarefree_rational_roots(g: &UniPoly) -> Vec<Rational> {
    let mut roots = vec![];
    let mut ints = g.to_primitive_integer();
    if ints.len() < 2 {
        return roots;
    }
    // A squarefree factor vanishes at 0 at most once.
    if ints[0].is_zero() {
        roots.push(Rational::zero());
        ints.remove(0);
        if ints.len() < 2 {
            return roots;
        }
    }
    if ints.len() == 2 {
        roots.push(Rational::new(-ints[0].clone(), ints[1].clone()));
        return roots;
    }

    let bound = ints[0]
        .magnitude()
        .max(ints.last().unwrap().magnitude())
        .clone();
    let bound = BigInt::from(bound);

    let Some(q) = pick_aux_prime(&ints) else {
        // Exhausted the fixed prime list; cannot happen for squarefree input
        // unless all auxiliary primes divide resultant data. Report no roots
        // rather than loop forever; callers treat missing roots as factors.
        return roots;
    };

    let mod_roots = roots_mod_q(&ints, q);
    for r0 in mod_roots {
        if let Some(candidate) = lift_and_reconstruct(&ints, r0, q, &bound) {
            if g.eval(&candidate).is_zero() && !roots.contains(&candidate) {
                roots.push(candidate);
            }
        }
    }
    roots
}

fn pick_aux_prime(ints: &[BigInt]) -> Option<u64> {
    for &q in &AUX_PRIMES {
        let qa = BigInt::from(q);
        let lead = ints.last().unwrap() % &qa;
        if lead.is_zero() {
            continue;
        }
        let coeffs: Vec<u64> = ints.iter().map(|c| reduce_big(c, q)).collect();
        let deriv: Vec<u64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| ((k as u128 * c as u128) % q as u128) as u64)
            .collect();
        if gcd_mod_q(&coeffs, &deriv, q).len() == 1 {
            return Some(q);
        }
    }
    None
}

fn reduce_big(n: &BigInt, q: u64) -> u64 {
    let qa = BigInt::from(q);
    let mut r = n % &qa;
    if r.is_negative() {
        r += &qa;
    }
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

fn roots_mod_q(ints: &[BigInt], q: u64) -> Vec<u64> {
    let coeffs: Vec<u64> = ints.iter().map(|c| reduce_big(c, q)).collect();
    (0..q)
        .filter(|&x| eval_u64_poly(&coeffs, x, q) == 0)
        .collect()
}

fn eval_big_mod(ints: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in ints.iter().rev() {
        acc = (acc * x + c) % m;
    }
    if acc.is_negative() {
        acc += m;
    }
    acc
}

fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    let mut x = e.x % m;
    if x.is_negative() {
        x += m;
    }
    Some(x)
}

fn lift_and_reconstruct(ints: &[BigInt], r0: u64, q: u64, bound: &BigInt) -> Option<Rational> {
    let deriv: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let target = BigInt::from(2) * bound * bound;
    let mut modulus = BigInt::from(q);
    let mut r = BigInt::from(r0);
    while modulus <= target {
        modulus = &modulus * &modulus;
        let fr = eval_big_mod(ints, &r, &modulus);
        let dfr = eval_big_mod(&deriv, &r, &modulus);
        let inv = mod_inv(&dfr, &modulus)?;
        r = (&r - fr * inv) % &modulus;
        if r.is_negative() {
            r += &modulus;
        }
    }
    rational_reconstruct(&r, &modulus, bound)
}

/// Wang reconstruction: u/v with u ≡ r·v (mod m), |u| ≤ bound, 0 < v ≤ bound.
fn rational_reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut t0) = (m.clone(), BigInt::zero());
    let (mut r1, mut t1) = (r.clone(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.magnitude() > bound.magnitude() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn linear(num: i64, den: i64) -> UniPoly {
        // den*x - num, root num/den
        UniPoly::from_i64(&[-num, den])
    }

    #[test]
    fn finds_integer_and_fractional_roots_with_multiplicity() {
        // (x - 2)^2 (3x + 5) (x^2 + 1)
        let f = linear(2, 1)
            .pow(2)
            .mul(&UniPoly::from_i64(&[5, 3]))
            .mul(&UniPoly::from_i64(&[1, 0, 1]));
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![(rat(-5, 3), 1), (rat(2, 1), 2)]);
    }

    #[test]
    fn huge_coefficients_are_fine() {
        // Root 123456789101112/131415161718, squared, times an irreducible.
        let r = Rational::new(
            BigInt::from(123456789101112i64),
            BigInt::from(131415161718i64),
        );
        let lin = UniPoly::from_coeffs(vec![-r.clone(), Rational::one()]);
        let f = lin.pow(2).mul(&UniPoly::from_i64(&[7, 0, 0, 2]));
        let roots = rational_roots(&f);
        assert!(roots.iter().any(|(x, m)| x == &r && *m == 2));
        // x^3 = -7/2 has no rational root.
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn zero_root_and_no_roots() {
        let f = UniPoly::from_i64(&[0, 0, 1]); // x^2
        assert_eq!(rational_roots(&f), vec![(rat(0, 1), 2)]);
        let g = UniPoly::from_i64(&[1, 0, 1]); // x^2 + 1
        assert!(rational_roots(&g).is_empty());
        let h = UniPoly::from_i64(&[2, 0, -1, 0, 0, 3]);
        for (r, _) in rational_roots(&h) {
            assert!(h.eval(&r).is_zero());
        }
    }
}
