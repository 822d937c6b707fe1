pub mod arrangement;
pub mod census;
pub mod error;
pub mod gaps;
pub mod geometry;
pub mod orbit;
pub mod parse;
pub mod report;
pub mod scalar;
pub mod shape;
pub mod svg;
pub mod sweep;

pub use dashu_int::IBig;
pub use error::{Error, ParseError, Result};
pub use scalar::Scalar;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/numbers.md")]
    mod numbers {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/gaps.md")]
    mod gaps {}
    #[doc = include_str!("../../../book/src/subdivision.md")]
    mod subdivision {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
