//! Exact symbolic Frölicher–Nijenhuis calculus on coordinate charts, and the
//! Lie algebroids it produces.
//!
//! Every coefficient is a canonical rational function over ℚ(i), so every
//! identity the crate checks is decided exactly rather than numerically.
//!
//! ```
//! use nijenhuis::calculus::{fn_bracket, nijenhuis_torsion, Chart, VectorValuedForm};
//!
//! let chart = Chart::new(&["x", "y"]).unwrap();
//! let j = VectorValuedForm::parse_matrix(&chart, &[vec!["0", "-1"], vec!["1", "0"]]).unwrap();
//! assert!(nijenhuis_torsion(&j).unwrap().is_zero());
//! assert!(fn_bracket(&j, &j).unwrap().is_zero());
//! ```

pub mod algebroid;
pub mod calculus;
pub mod error;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    mod calculus {}
    #[doc = include_str!("../../../book/src/algebroids.md")]
    mod algebroids {}
    #[doc = include_str!("../../../book/src/structures.md")]
    mod structures {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
