//! Runs the code listings of the guide in `book/` as doc-tests, one module
//! per chapter so a failure points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/inverse-limits.md")]
pub mod inverse_limits {}
#[doc = include_str!("../../../book/src/loops.md")]
pub mod loops {}
#[doc = include_str!("../../../book/src/oscillation.md")]
pub mod oscillation {}
#[doc = include_str!("../../../book/src/counterexample.md")]
pub mod counterexample {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
