//! Computational algebra over small finite fields: Hankel and Toeplitz
//! matrices, Bezoutians, expansions of rational functions at infinity, the
//! explicit correspondence between coprime polynomial pairs and nonsingular
//! Hankel matrices, and exact enumeration of both sides of that
//! correspondence.
//!
//! The library is organized around a runtime [`Field`] value describing
//! GF(p^k); everything else (polynomials, structured matrices, pairs,
//! censuses) is an immutable value over such a field, so all operations are
//! pure and freely shareable across threads.

pub mod cli;
pub mod correspondence;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod poly;
pub mod structured;

pub use correspondence::{
    barnett_triple, fiber, fiber_element, sigma, CoprimePair, HermitePair, PadePair,
};
pub use enumeration::{
    brute_coprime_census, brute_hankel_census, count_coprime_tuples, count_hankel_by_rank,
    count_hankel_rank_at_most, count_stratum, count_stratum_rank, in_stratum, in_stratum_rank,
    recurrence_vector, verify_sigma, CensusTable, CoprimeCensus, SigmaReport, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use field::{Elt, Field};
pub use poly::{monic_polys, polys_deg_at_most, tuple_coprime, Poly};
pub use structured::{bezoutian, hankel_matrices, DenseMatrix, HankelMatrix, ToeplitzMatrix};
