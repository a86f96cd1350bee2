//! Gauss and Appell hypergeometric functions with square complex matrix
//! parameters, and a numerical checker for their recursion formulas.
//!
//! ```
//! use hypermat::linalg::Matrix;
//! use hypermat::series::{evaluate, EvalPoint, FunctionKind, ParameterSet, SeriesConfig};
//!
//! let one = Matrix::diag_real(&[1.0]);
//! let two = Matrix::diag_real(&[2.0]);
//! let p = ParameterSet::from_list(FunctionKind::Gauss2F1, vec![two.clone(), one, two]).unwrap();
//! let v = evaluate(&p, &EvalPoint::real(0.3), &SeriesConfig::default()).unwrap();
//! assert!((v.value[(0, 0)].re - 1.0 / 0.7).abs() < 1e-12);
//! ```

pub mod calculus;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod params;
pub mod recursions;
pub mod series;

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/shifted-factorials.md")]
    mod shifted_factorials {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/recursions.md")]
    mod recursions {}
    #[doc = include_str!("../../../book/src/campaigns.md")]
    mod campaigns {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
