//! Finitely presented associative algebras: degree-bounded Groebner bases,
//! quotient dimensions and comparison with explicit reference algebras.

mod groebner;
mod poly;
mod reference;

pub use groebner::{complete, GroebnerState, NcAlgError, QuotientDim};
pub use poly::{Monomial, MonomialOrder, NCPolynomial, PolyDisplay, Word};
pub use reference::{
    check_homomorphism, permutations, HomomorphismVerdict, ReferenceAlgebra, ReferenceError, Violation,
};

#[cfg(test)]
mod tests;
