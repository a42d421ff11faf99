// mdbook cannot run book snippets against this crate by itself, so each
// chapter is included here as a doc comment: `cargo test --doc` then
// compiles and runs every ```rust block in the guide, keeping the book and
// the library in sync. One module per chapter so a failure names its
// chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/orthogonal-polynomials.md")]
pub mod orthogonal_polynomials {}

#[doc = include_str!("../../../book/src/hankel-identity.md")]
pub mod hankel_identity {}

#[doc = include_str!("../../../book/src/discrete-measures.md")]
pub mod discrete_measures {}

#[doc = include_str!("../../../book/src/closed-forms.md")]
pub mod closed_forms {}

#[doc = include_str!("../../../book/src/recurrences.md")]
pub mod recurrences {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
