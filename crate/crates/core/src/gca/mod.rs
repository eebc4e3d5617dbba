//! Free graded-commutative algebras over exact scalars.

mod derivation;
mod element;
mod monomial;
mod rewrite;
mod scalar;
mod text;

pub use derivation::{combine, graded_commutator, DerivationSpec};
pub use element::GradedElement;
pub use monomial::{GeneratorTable, Monomial};
pub use rewrite::{RewriteSystem, Rule, DEFAULT_BUDGET};
pub use scalar::{Rational, Scalar};
pub use text::parse_element;
