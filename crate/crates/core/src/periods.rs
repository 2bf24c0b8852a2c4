//! Floating-point verification of the hypergeometric period identities: the
//! Gauss series for ₂F₁, the quadratic transformation, and the equality of
//! the holomorphic period computed through either fibration. These are
//! smoke tests at double precision, not a special-functions library.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodError {
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("|z| = {0} is outside the series domain (need |z| <= 0.95)")]
    OutsideSeriesDomain(f64),
    #[error("c = {0} is a non-positive integer: the series is undefined")]
    BadParameterC(f64),
    #[error("lambda must satisfy 1/lambda^4 < 1, got lambda = {0}")]
    BadLambda(f64),
}

/// Minimal complex arithmetic for the series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub fn real(re: f64) -> Self {
        Complex { re, im: 0.0 }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    fn add(&self, o: &Complex) -> Complex {
        Complex::new(self.re + o.re, self.im + o.im)
    }

    fn mul(&self, o: &Complex) -> Complex {
        Complex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    fn scale(&self, s: f64) -> Complex {
        Complex::new(self.re * s, self.im * s)
    }
}

/// Parameters of a ₂F₁ evaluation.
#[derive(Debug, Clone, Copy)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: Complex,
    pub tol: f64,
}

const MAX_TERMS: usize = 200_000;

/// Gauss series Σ (a)ₙ(b)ₙ/(c)ₙ · zⁿ/n!, summed until the next term falls
/// below tol·|partial sum|.
pub fn hyp2f1(params: &HypParams) -> Result<Complex, PeriodError> {
    let HypParams { a, b, c, z, tol } = *params;
    if c <= 0.0 && c == c.floor() {
        return Err(PeriodError::BadParameterC(c));
    }
    if z.abs() > 0.95 {
        return Err(PeriodError::OutsideSeriesDomain(z.abs()));
    }
    let mut term = Complex::real(1.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        term = term.mul(&z).scale(ratio);
        sum = sum.add(&term);
        if term.abs() <= tol * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(PeriodError::NoConvergence(MAX_TERMS))
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodCheck {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relative_difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn compare(label: String, lhs: f64, rhs: f64, tol: f64) -> PeriodCheck {
    let denom = lhs.abs().max(1.0);
    let rel = (lhs - rhs).abs() / denom;
    PeriodCheck {
        label,
        lhs,
        rhs,
        relative_difference: rel,
        tolerance: tol,
        pass: rel <= tol,
    }
}

/// ₂F₁(p, q; p+q+½; 1/λ⁴) = ₂F₁(2p, 2q; p+q+½; (1−√(1−1/λ⁴))/2).
pub fn quadratic_transformation_check(
    p_par: f64,
    q_par: f64,
    lambda: f64,
    tol: f64,
) -> Result<PeriodCheck, PeriodError> {
    let z = 1.0 / lambda.powi(4);
    if !z.is_finite() || z >= 1.0 {
        return Err(PeriodError::BadLambda(lambda));
    }
    let c = p_par + q_par + 0.5;
    let lhs = hyp2f1(&HypParams {
        a: p_par,
        b: q_par,
        c,
        z: Complex::real(z),
        tol: tol * 1e-3,
    })?;
    let arg = 0.5 * (1.0 - (1.0 - z).sqrt());
    let rhs = hyp2f1(&HypParams {
        a: 2.0 * p_par,
        b: 2.0 * q_par,
        c,
        z: Complex::real(arg),
        tol: tol * 1e-3,
    })?;
    Ok(compare(
        format!("2F1({p_par},{q_par};{c};1/{lambda}^4) quadratic transformation"),
        lhs.re,
        rhs.re,
        tol,
    ))
}

/// The two period computations agree:
/// (₂F₁(1/4, 3/4; 1; A))² = (₂F₁(1/8, 3/8; 1; 1/λ⁴))² with
/// A = (1 − √(1−1/λ⁴))/2. The (2πi)² factors cancel and are omitted.
pub fn holomorphic_period_check(lambda: f64, tol: f64) -> Result<PeriodCheck, PeriodError> {
    let z = 1.0 / lambda.powi(4);
    if !z.is_finite() || z >= 1.0 {
        return Err(PeriodError::BadLambda(lambda));
    }
    let a_arg = 0.5 * (1.0 - (1.0 - z).sqrt());
    let lhs = hyp2f1(&HypParams {
        a: 0.25,
        b: 0.75,
        c: 1.0,
        z: Complex::real(a_arg),
        tol: tol * 1e-3,
    })?;
    let rhs = hyp2f1(&HypParams {
        a: 0.125,
        b: 0.375,
        c: 1.0,
        z: Complex::real(z),
        tol: tol * 1e-3,
    })?;
    Ok(compare(
        format!("holomorphic period at lambda = {lambda}"),
        lhs.re * lhs.re,
        rhs.re * rhs.re,
        tol,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_is_one() {
        let v = hyp2f1(&HypParams {
            a: 0.125,
            b: 0.375,
            c: 1.0,
            z: Complex::real(0.0),
            tol: 1e-15,
        })
        .unwrap();
        assert_eq!(v.re, 1.0);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn log_closed_form() {
        // ₂F₁(1, 1; 2; z) = −ln(1−z)/z.
        for k in 1..=20 {
            let z = -0.9 + 0.09 * k as f64;
            if z.abs() < 1e-9 {
                continue;
            }
            let v = hyp2f1(&HypParams {
                a: 1.0,
                b: 1.0,
                c: 2.0,
                z: Complex::real(z),
                tol: 1e-15,
            })
            .unwrap();
            let expect = -(1.0 - z).ln() / z;
            assert!(
                (v.re - expect).abs() < 1e-12,
                "z = {z}: {} vs {expect}",
                v.re
            );
        }
        let half = hyp2f1(&HypParams {
            a: 1.0,
            b: 1.0,
            c: 2.0,
            z: Complex::real(0.5),
            tol: 1e-15,
        })
        .unwrap();
        assert!((half.re - 2.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn tolerance_self_consistency() {
        let coarse = hyp2f1(&HypParams {
            a: 0.125,
            b: 0.375,
            c: 1.0,
            z: Complex::real(0.1),
            tol: 1e-12,
        })
        .unwrap();
        let fine = hyp2f1(&HypParams {
            a: 0.125,
            b: 0.375,
            c: 1.0,
            z: Complex::real(0.1),
            tol: 0.5e-12,
        })
        .unwrap();
        assert!((coarse.re - fine.re).abs() < 1e-12);
    }

    #[test]
    fn quadratic_transformation_cases() {
        for (p, q) in [(0.125, 0.375), (0.25, 0.75), (0.25, 0.25)] {
            for lambda in [2.0, 2.5, 3.0, 10.0] {
                let r = quadratic_transformation_check(p, q, lambda, 1e-10).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn period_identity_cases() {
        for lambda in [2.0, 2.5, 5.0] {
            let r = holomorphic_period_check(lambda, 1e-10).unwrap();
            assert!(r.pass, "{r:?}");
        }
        // λ → ∞: both sides → 1.
        let r = holomorphic_period_check(1e6, 1e-10).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-10);
        assert!(r.pass);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            holomorphic_period_check(0.9, 1e-10),
            Err(PeriodError::BadLambda(_))
        ));
        let e = hyp2f1(&HypParams {
            a: 1.0,
            b: 1.0,
            c: 2.0,
            z: Complex::real(0.99),
            tol: 1e-12,
        });
        assert!(matches!(e, Err(PeriodError::OutsideSeriesDomain(_))));
        let e = hyp2f1(&HypParams {
            a: 1.0,
            b: 1.0,
            c: -2.0,
            z: Complex::real(0.5),
            tol: 1e-12,
        });
        assert!(matches!(e, Err(PeriodError::BadParameterC(_))));
    }
}
