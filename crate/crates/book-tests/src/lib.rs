//! The guide's chapters as doc comments, so `cargo test` runs every
//! snippet against the current library. One module per chapter keeps
//! failures traceable to their file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/presentations.md")]
pub mod presentations {}
#[doc = include_str!("../../../book/src/linear_algebra.md")]
pub mod linear_algebra {}
#[doc = include_str!("../../../book/src/cobar.md")]
pub mod cobar {}
#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}
#[doc = include_str!("../../../book/src/identities.md")]
pub mod identities {}
#[doc = include_str!("../../../book/src/massey.md")]
pub mod massey {}
#[doc = include_str!("../../../book/src/recovery.md")]
pub mod recovery {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/json_schema.md")]
pub mod json_schema {}
