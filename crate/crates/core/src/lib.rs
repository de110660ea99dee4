//! Möbius functions and characteristic polynomials of finite ranked posets,
//! quotients of claw and rooted-tree products, and certified factorizations
//! `χ(L,t) = t^k ∏(t − r_i)`, with the graph-theoretic application to
//! increasing spanning forests and chromatic polynomials.
//!
//! Algebra is generic over exact integer coefficient types through
//! [`Coefficient`]; the aliases below fix it to arbitrary precision.

pub mod error;
pub mod families;
pub mod fuzz;
pub mod graph;
pub mod iso;
pub mod lattice;
pub mod multichain;
pub mod poly;
pub mod poset;
pub mod quotient;
pub mod scalar;
pub mod transversal;

pub use error::{Error, Result};
pub use iso::{is_isomorphic, verify_isomorphism};
pub use graph::{Graph, VertexOrder};
pub use lattice::Lattice;
pub use poly::{elementary_symmetric, FactoredForm, Laurent, Polynomial};
pub use poset::{MobiusVector, Poset, PosetJson};
pub use scalar::Coefficient;

pub use num_bigint::BigInt;

/// Exact integer used throughout the concrete API.
pub type Int = BigInt;
pub type IntPolynomial = Polynomial<Int>;
pub type IntLaurent = Laurent<Int>;
pub type Mobius = MobiusVector<Int>;
