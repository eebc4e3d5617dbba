//! Runs the code blocks in `book/src` as doc-tests.
//!
//! mdbook cannot resolve workspace crates when testing, so each chapter is
//! included as the docs of an empty module and rustdoc does the rest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graded-algebras.md")]
pub mod graded_algebras {}
#[doc = include_str!("../../../book/src/weil-cartan.md")]
pub mod weil_cartan {}
#[doc = include_str!("../../../book/src/connections.md")]
pub mod connections {}
#[doc = include_str!("../../../book/src/characteristic-classes.md")]
pub mod characteristic_classes {}
#[doc = include_str!("../../../book/src/superconnections.md")]
pub mod superconnections {}
#[doc = include_str!("../../../book/src/localization-index.md")]
pub mod localization_index {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
