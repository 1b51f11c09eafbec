//! Laurent monomials in square-root equivariant parameters, virtual
//! characters, and their exact evaluations.

mod character;
mod measure;
mod monomial;
mod point;

pub use character::Character;
pub use measure::{bracket_eval, bracket_monomial, euler_eval, theta_eval};
pub use monomial::Monomial;
pub use point::{eval_monomial, weight_at, CohPoint, EvalPoint, VariableRegistry};
