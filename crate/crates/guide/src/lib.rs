//! The book under `book/` is written in Markdown for mdbook, which cannot
//! resolve crate dependencies when testing snippets. Each chapter is pulled
//! in here as module docs so `cargo test` runs its snippets instead.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/traces.md")]
pub mod traces {}

#[doc = include_str!("../../../book/src/automata.md")]
pub mod automata {}

#[doc = include_str!("../../../book/src/entropy.md")]
pub mod entropy {}

#[doc = include_str!("../../../book/src/sampling.md")]
pub mod sampling {}

#[doc = include_str!("../../../book/src/bootstrap.md")]
pub mod bootstrap {}

#[doc = include_str!("../../../book/src/discovery.md")]
pub mod discovery {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
