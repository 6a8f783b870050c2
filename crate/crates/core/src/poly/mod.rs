//! Exact sparse multivariate polynomials over the entries `p_{x,y}` of a
//! matrix of indeterminates, ordered lexicographically with
//! `p_{u,i} > p_{v,m}` iff `u < v`, or `u = v` and `i < m`.

pub mod field;
pub mod json;
pub mod monomial;
pub mod polynomial;
pub mod rational;

pub use field::{Field, FieldKind, PrimeField, Rationals, DEFAULT_PRIME};
pub use json::{PolynomialJson, TermJson};
pub use monomial::{Monomial, VarIndex};
pub use polynomial::{mono_cmp, var_cmp, Polynomial, Ring, VariableId};
pub use rational::Rational;
