//! Exact-arithmetic models for the Kummer-sandwich families of Jacobian
//! elliptic K3 surfaces: the surface catalog, the rational maps and
//! two-isogenies between the fibrations, Richelot moduli transformations,
//! Kodaira fiber censuses, and point-counting kernels over prime fields.
//!
//! All algebraic identities are checked over exact rationals (or quadratic
//! extensions of them); counting statements are checked modulo a prime with
//! independent brute-force character sums as oracles.

pub mod arith;
pub mod counting;
pub mod maps;
pub mod moduli;
pub mod periods;
pub mod poly;
pub mod rng;
pub mod surfaces;

pub use arith::rational::Rational;
pub use arith::{PrimeFieldCtx, Scalar, Sign};
