//! Closed-form motivic local densities.
//!
//! For a surface, only components with inner rate one contribute:
//!
//! ```text
//! Θ₂ = Σ_{q_i = 1} (1/m_i) ( [E_i^0]/(L+1) + Σ_{edges i–j} T(s_j) ),
//! T(s) = L^{-s}(1 − L^{-1}) / ((1 − L^{-s})(1 + L^{-1})),   s = (q_j − 1)m_j
//! ```
//!
//! For a plane curve with branches of multiplicities `N_i`, `Θ₁ = Σ 1/N_i`.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::mring::{MotivicClass, RationalFunctionL};
use crate::resgraph::{e0_class, validate, DualGraph, GraphError, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("vertices {a} and {b} both have inner rate 1 but intersect; the edge term has a vanishing denominator")]
    NonAdmissibleAdjacency { a: String, b: String },
    #[error("vertex {0} does not have inner rate 1")]
    RateNotOne(String),
    #[error("graph violates admissibility: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Inadmissible(Vec<Violation>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("branch multiplicities must be a nonempty list of positive integers")]
    InvalidBranches,
}

/// `T(s)` for the neighbour exponent `s = (q_j − 1)m_j ≥ 1`.
pub fn edge_term(s: i64) -> MotivicClass {
    assert!(s >= 1, "edge exponent must be positive");
    let one = RationalFunctionL::one();
    let l_inv = RationalFunctionL::lpow(-1);
    let l_s = RationalFunctionL::lpow(-s);
    let num = l_s.mul(&one.sub(&l_inv));
    let den = one.sub(&l_s).mul(&one.add(&l_inv));
    MotivicClass::scalar(num.div(&den).expect("denominator is nonzero for s >= 1"))
}

fn check_admissible(g: &DualGraph) -> Result<(), DensityError> {
    let report = validate(g);
    if let Some(Violation::AdjacentRateOne { a, b }) = report
        .violations
        .iter()
        .find(|v| matches!(v, Violation::AdjacentRateOne { .. }))
    {
        return Err(DensityError::NonAdmissibleAdjacency {
            a: a.clone(),
            b: b.clone(),
        });
    }
    if !report.is_ok() {
        return Err(DensityError::Inadmissible(report.violations));
    }
    Ok(())
}

fn contribution(g: &DualGraph, v: &str) -> Result<MotivicClass, DensityError> {
    let vertex = g.vertex(v).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    if !vertex.has_rate_one() {
        return Err(DensityError::RateNotOne(v.to_string()));
    }
    let l_plus_one = RationalFunctionL::lpow(1).add(&RationalFunctionL::one());
    let mut bracket = e0_class(g, v)?.scale(&l_plus_one.inv().unwrap());
    for e in g.incident_edges(v) {
        let j = g.vertex(e.other(v).unwrap()).unwrap();
        let s = (j.q - 1) * j.m;
        if s.is_zero() {
            return Err(DensityError::NonAdmissibleAdjacency {
                a: v.to_string(),
                b: j.id.clone(),
            });
        }
        if !s.is_integer() || s < Rational64::zero() {
            return Err(DensityError::Inadmissible(validate(g).violations));
        }
        bracket = bracket.add(&edge_term(s.to_integer()));
    }
    Ok(bracket.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(vertex.m))))
}

/// The bracketed term of one rate-one vertex, divided by its multiplicity.
/// Reads only `v` and its neighbours.
pub fn vertex_contribution(g: &DualGraph, v: &str) -> Result<MotivicClass, DensityError> {
    contribution(g, v)
}

/// Motivic local density of the surface resolved by `g`. Zero when no
/// vertex has rate one.
pub fn surface_density(g: &DualGraph) -> Result<MotivicClass, DensityError> {
    check_admissible(g)?;
    g.vertices()
        .iter()
        .filter(|v| v.has_rate_one())
        .try_fold(MotivicClass::zero(), |acc, v| {
            Ok(acc.add(&contribution(g, &v.id)?))
        })
}

/// Multiplicities `N_1..N_r` of the branches of a plane curve germ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveBranchData {
    mults: Vec<u64>,
}

impl CurveBranchData {
    pub fn new(mults: Vec<u64>) -> Result<Self, DensityError> {
        if mults.is_empty() || mults.contains(&0) {
            return Err(DensityError::InvalidBranches);
        }
        Ok(CurveBranchData { mults })
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }
}

/// `Σ 1/N_i`.
pub fn curve_density(b: &CurveBranchData) -> BigRational {
    b.mults.iter().fold(BigRational::zero(), |acc, &n| {
        acc + BigRational::new(BigInt::one(), BigInt::from(n))
    })
}

/// Order of the pulled-back 1-form at a branch of multiplicity `n`: `n − 1`.
pub fn branch_jacobian_order(n: u64) -> u64 {
    assert!(n >= 1, "branch multiplicity must be positive");
    n - 1
}
