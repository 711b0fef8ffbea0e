//! The guide in `book/src`, compiled so that its snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}

#[doc = include_str!("../../../book/src/dictionaries.md")]
pub mod dictionaries {}

#[doc = include_str!("../../../book/src/arguments.md")]
pub mod arguments {}

#[doc = include_str!("../../../book/src/aggregation.md")]
pub mod aggregation {}

#[doc = include_str!("../../../book/src/defeat.md")]
pub mod defeat {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
