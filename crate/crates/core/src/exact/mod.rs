//! Exact arithmetic: rationals, polynomials, elimination.

mod poly;
mod rational;
mod resultant;
mod ring;
mod roots;
mod squarefree;
mod upoly;
pub mod zpoly;

pub use poly::Poly;
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use resultant::{discriminant, resultant, sylvester_resultant};
pub use ring::{Field, Integers, Rationals, Ring};
pub use roots::{rational_roots, rational_roots_upoly};
pub use squarefree::{gcd, squarefree_decompose, SquarefreeDecomposition};
pub use upoly::{PolyRing, UPoly};

/// Dense univariate polynomial ring over `Q`.
pub fn qx() -> PolyRing<Rationals> {
    PolyRing::new(Rationals)
}

/// Dense univariate polynomial ring over `Z`.
pub fn zx() -> PolyRing<Integers> {
    PolyRing::new(Integers)
}
