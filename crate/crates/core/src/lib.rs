//! Motivic local densities of isolated curve and surface singularities.
//!
//! The closed-form evaluator ([`density`]) works on weighted dual resolution
//! graphs ([`resgraph`]). The [`oracle`] recomputes the same value from
//! scratch by enumerating motivic sphere volumes and taking mean values at
//! infinity in the `L`-degree topology. [`blowup`] evolves multiplicities,
//! inner rates and discrepancies under point blowups.

pub mod mring;
pub mod resgraph;
pub mod blowup;
pub mod density;
pub mod oracle;
pub mod cli;
