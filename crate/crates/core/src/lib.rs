//! Exact combinatorics of weight systems and their couplings.
//!
//! A weighted magic square `C` ties two weight systems `(a_1..a_n; h)` and
//! `(b_1..b_n; k)` together. This crate validates and classifies such
//! squares, enumerates them, computes the reduced zeta function of the
//! monodromy of `f = sum_i x^{C_i}` from `C` alone together with its Saito
//! dual and lattice invariants, and checks the polar-duality identities of
//! the associated Newton simplices.
//!
//! Everything is integer or exact rational arithmetic. The crate is
//! `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod linalg;
pub mod magic;
pub mod notation;
pub mod polytope;
pub mod search;
pub mod weights;
pub mod zeta;

/// Exact rational number used throughout.
pub type Rational = num_rational::Ratio<i64>;

pub use linalg::{IntMatrix, RatMatrix};
pub use magic::{recover_weights, Classification, CouplingReport, InverseData, MagicError, MagicSquare};
pub use polytope::{extended_diagram, polar_dual, verify_duality_identity, PolytopeError, RationalSimplex};
pub use search::{enumerate_rows, find_magic_squares, Filter, SearchError, SearchOutcome, SearchQuery};
pub use weights::{equivalent, parse_and_reduce, Reduction, WeightError, WeightSystem};
pub use zeta::{
    characteristic_polynomial, evaluate_at_one, lattice_invariants, reduced_zeta, saito_dual,
    special_subsets, CyclotomicProduct, LatticeInvariants, SpecialSubset, ValueAtOne, ZetaError,
};
