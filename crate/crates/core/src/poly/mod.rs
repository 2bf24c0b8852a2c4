//! Dense polynomials over the exact rationals: univariate (fibration
//! coefficients, discriminants) and bivariate (double-cover equations).

pub mod roots;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{rat_i64, Rational};
use crate::arith::{ArithError, FieldOps, PrimeFieldCtx};

/// Dense univariate polynomial, ascending degree, no trailing zeros.
/// The empty coefficient list is the zero polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// c·x^k
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        UniPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::from_coeffs(v)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat_i64((k + 1) as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in an arbitrary field through a coefficient map.
    pub fn eval_map<F: FieldOps>(&self, conv: &impl Fn(&Rational) -> F, x: &F) -> F {
        let mut acc = x.zero_val();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&conv(c));
        }
        acc
    }

    /// Substitute x -> x², spreading coefficients to even slots.
    pub fn compose_x_squared(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); 2 * self.coeffs.len() - 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[2 * k] = c.clone();
        }
        UniPoly::from_coeffs(v)
    }

    /// x^w · f(1/x) for w >= deg f: the coefficient vector reversed into
    /// length w+1. This is the chart change used at the infinite place.
    pub fn reverse_weighted(&self, w: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let d = self.coeffs.len() - 1;
        assert!(w >= d, "weight {w} below degree {d}");
        let mut v = vec![Rational::zero(); w + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[w - k] = c.clone();
        }
        UniPoly::from_coeffs(v)
    }

    /// Quotient and remainder; panics on zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut q = vec![Rational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[k + j] -= t;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Order of vanishing at a rational point (repeated synthetic division).
    pub fn ord_at(&self, r: &Rational) -> usize {
        assert!(!self.is_zero(), "order of the zero polynomial");
        let mut f = self.clone();
        let lin = UniPoly::from_coeffs(vec![-r.clone(), Rational::one()]);
        let mut ord = 0;
        loop {
            if !f.eval(r).is_zero() {
                return ord;
            }
            f = f.div_exact(&lin);
            ord += 1;
            if f.is_zero() {
                return ord;
            }
        }
    }

    /// Yun's squarefree decomposition: returns [(g₁,1), (g₂,2), ...] with
    /// f = lead · Π gᵢ^i, each gᵢ squarefree and monic, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut out = vec![];
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((b.monic(), i));
                }
                break;
            }
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            i += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    /// Primitive integer form: clears denominators and content, preserving
    /// the sign of the leading coefficient.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        ints.iter().map(|c| c / &content).collect()
    }

    /// Reduce all coefficients mod p; errors if p divides any denominator.
    pub fn reduce_mod_p(&self, ctx: &PrimeFieldCtx) -> Result<Vec<u64>, ArithError> {
        self.coeffs.iter().map(|c| ctx.reduce_rational(c)).collect()
    }

    pub fn to_display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => format!("{c}"),
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{k}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Horner evaluation of reduced coefficients mod p.
pub fn eval_mod_p(coeffs: &[u64], x: u64, ctx: &PrimeFieldCtx) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = ctx.add(ctx.mul(acc, x), c);
    }
    acc
}

/// Dense bivariate polynomial with rational coefficients: `coeffs[i][j]`
/// multiplies x^i w^j.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    coeffs: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            coeffs: vec![vec![c]],
        }
    }

    pub fn x() -> Self {
        BiPoly {
            coeffs: vec![vec![Rational::zero()], vec![Rational::one()]],
        }
    }

    pub fn w() -> Self {
        BiPoly {
            coeffs: vec![vec![Rational::zero(), Rational::one()]],
        }
    }

    /// coefficient of x^i w^j
    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().all(|c| c.is_zero()))
    }

    pub fn total_degree(&self) -> Option<usize> {
        let mut best = None;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    best = Some(best.map_or(i + j, |b: usize| b.max(i + j)));
                }
            }
        }
        best
    }

    fn normalize(mut self) -> Self {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        let ni = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(ni);
        for i in 0..ni {
            let nj = self
                .coeffs
                .get(i)
                .map_or(0, |r| r.len())
                .max(rhs.coeffs.get(i).map_or(0, |r| r.len()));
            let mut row = Vec::with_capacity(nj);
            for j in 0..nj {
                row.push(self.coeff(i, j) + rhs.coeff(i, j));
            }
            out.push(row);
        }
        BiPoly { coeffs: out }.normalize()
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| -c.clone()).collect())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &BiPoly) -> BiPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let di = self.coeffs.len() + rhs.coeffs.len() - 1;
        let dj = self.coeffs.iter().map(|r| r.len()).max().unwrap_or(1)
            + rhs.coeffs.iter().map(|r| r.len()).max().unwrap_or(1);
        let mut out = vec![vec![Rational::zero(); dj]; di];
        for (i1, row1) in self.coeffs.iter().enumerate() {
            for (j1, c1) in row1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (i2, row2) in rhs.coeffs.iter().enumerate() {
                    for (j2, c2) in row2.iter().enumerate() {
                        if c2.is_zero() {
                            continue;
                        }
                        out[i1 + i2][j1 + j2] += c1 * c2;
                    }
                }
            }
        }
        BiPoly { coeffs: out }.normalize()
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
        .normalize()
    }

    /// Linear-in-(x,w) builder: a·x + b·w + c.
    pub fn linear(a: i64, b: i64, c: &Rational) -> BiPoly {
        BiPoly {
            coeffs: vec![vec![c.clone(), rat_i64(b)], vec![rat_i64(a)]],
        }
        .normalize()
    }

    pub fn eval<F: FieldOps>(&self, conv: &impl Fn(&Rational) -> F, x: &F, w: &F) -> F {
        // Horner in x of Horner-in-w rows.
        let mut acc = x.zero_val();
        for row in self.coeffs.iter().rev() {
            let mut rowv = x.zero_val();
            for c in row.iter().rev() {
                rowv = rowv.mul(w).add(&conv(c));
            }
            acc = acc.mul(x).add(&rowv);
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational, w: &Rational) -> Rational {
        self.eval(&|c: &Rational| c.clone(), x, w)
    }

    /// Dense grid of coefficients mod p, for the counting kernels.
    pub fn reduce_mod_p(&self, ctx: &PrimeFieldCtx) -> Result<Vec<Vec<u64>>, ArithError> {
        self.coeffs
            .iter()
            .map(|row| row.iter().map(|c| ctx.reduce_rational(c)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn trailing_zeros_are_stripped() {
        let f = UniPoly::from_coeffs(vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(f.degree(), Some(0));
        assert!(UniPoly::from_i64(&[]).is_zero());
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = UniPoly::from_i64(&[2, -3, 0, 1, 4]);
        let g = UniPoly::from_i64(&[1, 2, 3]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree().unwrap_or(0) < g.degree().unwrap());
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = UniPoly::from_i64(&[-1, 1]); // x - 1
        let b = UniPoly::from_i64(&[1, 1]); // x + 1
        let f = a.mul(&b);
        let g = a.mul(&UniPoly::from_i64(&[3, 1]));
        assert_eq!(f.gcd(&g), a.monic());
    }

    #[test]
    fn ord_at_counts_multiplicity() {
        // (x-2)^3 (x+1)
        let f = UniPoly::from_i64(&[-2, 1])
            .pow(3)
            .mul(&UniPoly::from_i64(&[1, 1]));
        assert_eq!(f.ord_at(&rat(2, 1)), 3);
        assert_eq!(f.ord_at(&rat(-1, 1)), 1);
        assert_eq!(f.ord_at(&rat(0, 1)), 0);
    }

    #[test]
    fn squarefree_decomposition_of_product() {
        // f = (x-1)(x-2)^2(x-3)^3
        let f = UniPoly::from_i64(&[-1, 1])
            .mul(&UniPoly::from_i64(&[-2, 1]).pow(2))
            .mul(&UniPoly::from_i64(&[-3, 1]).pow(3));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (UniPoly::from_i64(&[-1, 1]), 1));
        assert_eq!(parts[1], (UniPoly::from_i64(&[-2, 1]), 2));
        assert_eq!(parts[2], (UniPoly::from_i64(&[-3, 1]), 3));
    }

    #[test]
    fn reverse_weighted_is_infinity_chart() {
        // f = 3x² + 2x + 1, weight 4: x⁴f(1/x) = x⁴ + 2x³ + 3x²
        let f = UniPoly::from_i64(&[1, 2, 3]);
        let g = f.reverse_weighted(4);
        assert_eq!(g, UniPoly::from_i64(&[0, 0, 3, 2, 1]));
    }

    #[test]
    fn bipoly_product_and_eval() {
        // (x - w)(x + w) = x² - w²
        let f = BiPoly::x().sub(&BiPoly::w());
        let g = BiPoly::x().add(&BiPoly::w());
        let h = f.mul(&g);
        assert_eq!(h.coeff(2, 0), rat(1, 1));
        assert_eq!(h.coeff(0, 2), rat(-1, 1));
        assert_eq!(h.coeff(1, 1), rat(0, 1));
        let v = h.eval_rational(&rat(3, 1), &rat(2, 1));
        assert_eq!(v, rat(5, 1));
        assert_eq!(h.total_degree(), Some(2));
    }
}
