//! Monte Carlo Funk, cosine and sine transforms on Stiefel manifolds.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: small dense matrices, frames, SPD matrices and their factorizations
//! - [`special`]: Siegel and composite gamma functions, composite powers, the constant registry
//! - [`mc`] and [`manifold`]: seeded, shardable Monte Carlo and Haar samplers
//! - [`fields`]: test functions on frames
//! - [`transforms`]: Monte Carlo realizations of the integral operators
//! - [`identities`]: the fixture catalog that checks identities between them
//!
//! ```
//! use stiefel_xform::{fields::ScalarField, linalg::Frame, mc::MCConfig, transforms};
//!
//! let one = ScalarField::constant(3, 1, 1.0);
//! let u = Frame::canonical(3, 1);
//! let cfg = MCConfig::new(20_000, 7);
//! let est = transforms::cosine(&one, &u, 2.0, &cfg).unwrap();
//! assert!((est.mean - 0.5).abs() < 5.0 * est.se);
//! ```

pub mod fields;
pub mod identities;
pub mod linalg;
pub mod manifold;
pub mod mc;
pub mod quadrature;
pub mod special;
pub mod transforms;

pub use linalg::{Frame, Matrix, SpdMatrix};
pub use mc::{MCConfig, MCEstimate, RandomSource};
pub use special::CompositeExponent;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("columns are not orthonormal (residual {residual:e})")]
    NotAFrame { residual: f64 },
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not positive definite (pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("pole of the gamma function in factor {factor} (argument {argument})")]
    Pole { factor: usize, argument: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inadmissible parameters: {0}")]
    Admissibility(String),
    #[error("point lies outside the matrix interval")]
    OutOfRegion,
    #[error("non-finite integrand value at sample {index}")]
    NonFiniteSample { index: u64 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("constant fit is degenerate: all right-hand sides vanish")]
    DegenerateFit,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("overflow: log-magnitude {0} exceeds the guard")]
    Overflow(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
