//! Exact computation of restriction multiplicities for discrete series of
//! inner forms of `GL(n)` restricted to `SL(n)` over a p-adic field, from
//! finite data: unit-group cardinalities, character theory of the central
//! extension `A_phi` of `S_phi`, and the packet-cardinality identities.

pub mod arith;
pub mod cases;
pub mod engine;
pub mod error;
pub mod extension;
pub mod group;
pub mod padic;
pub mod scenario;

pub use error::{Error, Finding, Result};
