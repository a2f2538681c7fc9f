//! Brute-force motivic sphere volumes and mean values at infinity.
//!
//! The preimage of the sphere of valuative radius `n` splits into one
//! stratum per punctured component `E_v^0` and one per intersection point.
//! Each stratum integral is computed exactly for the given `n`:
//!
//! * over `E_v^0`, nonzero only for `m_v | n`: `L^{-(q_v+1)n} L^{-2}(L−1)[E_v^0]`;
//! * over a double point, a finite sum over the solutions `k, l ≥ 1` of
//!   `m_v k + m_w l = n` of `L^{-(a_v k + a_w l + 2)}(L−1)²`, where
//!   `a = m(q+1)` is the Mather log-discrepancy.
//!
//! `θ_n` is the volume normalized by the sphere volume `L^{-2n}(1 − L^{-2})`.
//! Limits along residue classes are detected by the truncated expansion at
//! `L = ∞` becoming constant over a window of consecutive terms; no closed
//! form for the geometric series is used.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::density::{surface_density, CurveBranchData, DensityError};
use crate::mring::{LaurentTruncation, MotivicClass, Poly, RationalFunctionL, TruncationEntry, Q};
use crate::resgraph::{e0_class, period, validate, DualGraph, Vertex, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "no stabilization for residue {residue} up to n = {n_max}{}",
        match (.slowest_decay, .suggested_n_max) {
            (Some(a), Some(s)) => format!(" (slowest decay rate {a} per unit n; try n_max >= {s})"),
            _ => String::new(),
        }
    )]
    NoStabilization {
        residue: u64,
        n_max: u64,
        slowest_decay: Option<Rational64>,
        suggested_n_max: Option<u64>,
    },
    #[error("graph violates admissibility: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Inadmissible(Vec<Violation>),
    #[error("period {} exceeds the oracle limit {limit}", .period.map_or("beyond 2^64".to_string(), |p| p.to_string()))]
    PeriodTooLarge { period: Option<u64>, limit: u64 },
    #[error("invalid oracle parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Density(#[from] DensityError),
}

/// Largest modulus the oracle enumerates.
pub const MAX_PERIOD: u64 = 100_000;

/// Truncation precision `D`, stabilization window `W`, and `n_max` as a
/// multiple of the modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct OracleParams {
    pub precision: u64,
    pub window: usize,
    pub n_max_multiplier: u64,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams {
            precision: 12,
            window: 3,
            n_max_multiplier: 60,
        }
    }
}

impl OracleParams {
    fn check(&self) -> Result<(), OracleError> {
        if self.window < 2 {
            return Err(OracleError::InvalidParams("window must be at least 2".into()));
        }
        if self.n_max_multiplier < 1 {
            return Err(OracleError::InvalidParams("n_max multiplier must be at least 1".into()));
        }
        Ok(())
    }
}

/// Exponent data of one stratum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StratumTerm {
    Vertex(VertexStratum),
    Edge(EdgeStratum),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexStratum {
    pub id: String,
    pub m: i64,
    /// `m(q+1)`.
    pub a: i64,
}

/// A double point `E_v ∩ E_w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeStratum {
    pub v: String,
    pub w: String,
    pub m_v: i64,
    pub m_w: i64,
    pub a_v: i64,
    pub a_w: i64,
}

fn mather_log(v: &Vertex) -> i64 {
    let a = (v.q + 1) * v.m;
    assert!(a.is_integer(), "m(q+1) must be integral");
    a.to_integer()
}

impl EdgeStratum {
    pub fn between(v: &Vertex, w: &Vertex) -> Self {
        EdgeStratum {
            v: v.id.clone(),
            w: w.id.clone(),
            m_v: v.m,
            m_w: w.m,
            a_v: mather_log(v),
            a_w: mather_log(w),
        }
    }

    /// All `(k, l)` with `k, l ≥ 1` and `m_v k + m_w l = n`.
    pub fn solutions(&self, n: u64) -> Vec<(i64, i64)> {
        let n = n as i64;
        let mut out = Vec::new();
        if n < self.m_v + self.m_w {
            return out;
        }
        for k in 1..=(n - self.m_w) / self.m_v {
            let rest = n - self.m_v * k;
            if rest % self.m_w == 0 {
                out.push((k, rest / self.m_w));
            }
        }
        out
    }
}

/// The strata of the sphere preimage, vertices first.
pub fn strata(g: &DualGraph) -> Vec<StratumTerm> {
    let mut out: Vec<StratumTerm> = g
        .vertices()
        .iter()
        .map(|v| {
            StratumTerm::Vertex(VertexStratum {
                id: v.id.clone(),
                m: v.m,
                a: mather_log(v),
            })
        })
        .collect();
    for e in g.edges() {
        let (v, w) = (g.vertex(&e.a).unwrap(), g.vertex(&e.b).unwrap());
        out.push(StratumTerm::Edge(EdgeStratum::between(v, w)));
    }
    out
}

fn l_minus_one() -> RationalFunctionL {
    RationalFunctionL::from_poly(Poly::lpow(1).sub(&Poly::one()))
}

/// Volume of the stratum over `E_v^0` at radius `n`.
pub fn vertex_stratum_volume(v: &Vertex, e0: &MotivicClass, n: u64) -> MotivicClass {
    if n as i64 % v.m != 0 {
        return MotivicClass::zero();
    }
    let exponent = mather_log(v) * (n as i64 / v.m);
    let factor = RationalFunctionL::lpow(-exponent - 2).mul(&l_minus_one());
    e0.scale(&factor)
}

/// Volume of the stratum over one intersection point at radius `n`.
pub fn edge_stratum_volume(t: &EdgeStratum, n: u64) -> MotivicClass {
    let mut sum: BTreeMap<i64, Q> = BTreeMap::new();
    for (k, l) in t.solutions(n) {
        *sum.entry(-(t.a_v * k + t.a_w * l + 2)).or_insert_with(Q::zero) += Q::one();
    }
    if sum.is_empty() {
        return MotivicClass::zero();
    }
    let lm1 = l_minus_one();
    MotivicClass::scalar(RationalFunctionL::from_laurent(&sum).mul(&lm1.mul(&lm1)))
}

/// Per-graph data reused across radii.
struct SphereModel<'a> {
    graph: &'a DualGraph,
    e0: Vec<MotivicClass>,
    edges: Vec<EdgeStratum>,
}

impl<'a> SphereModel<'a> {
    fn new(graph: &'a DualGraph) -> Self {
        let e0 = graph
            .vertices()
            .iter()
            .map(|v| e0_class(graph, &v.id).unwrap())
            .collect();
        let edges = strata(graph)
            .into_iter()
            .filter_map(|s| match s {
                StratumTerm::Edge(e) => Some(e),
                StratumTerm::Vertex(_) => None,
            })
            .collect();
        SphereModel { graph, e0, edges }
    }

    fn volume(&self, n: u64) -> MotivicClass {
        let mut acc = MotivicClass::zero();
        for (v, e0) in self.graph.vertices().iter().zip(&self.e0) {
            acc = acc.add(&vertex_stratum_volume(v, e0, n));
        }
        for e in &self.edges {
            acc = acc.add(&edge_stratum_volume(e, n));
        }
        acc
    }

    fn theta(&self, n: u64) -> MotivicClass {
        self.volume(n).scale(&surface_normalizer(n))
    }
}

/// `1 / (L^{-2n}(1 − L^{-2})) = L^{2n+2}/(L² − 1)`.
fn surface_normalizer(n: u64) -> RationalFunctionL {
    let num = Poly::lpow(2 * n + 2);
    let den = Poly::lpow(2).sub(&Poly::one());
    RationalFunctionL::new(num, den).unwrap()
}

fn require_valid(g: &DualGraph) -> Result<(), OracleError> {
    let rep = validate(g);
    if rep.is_ok() {
        Ok(())
    } else {
        Err(OracleError::Inadmissible(rep.violations))
    }
}

/// Motivic volume of the surface sphere of radius `n`, summed over strata.
pub fn sphere_volume_surface(g: &DualGraph, n: u64) -> Result<MotivicClass, OracleError> {
    require_valid(g)?;
    Ok(SphereModel::new(g).volume(n))
}

/// Normalized sphere volume `θ_n`.
pub fn theta_surface(g: &DualGraph, n: u64) -> Result<MotivicClass, OracleError> {
    require_valid(g)?;
    Ok(SphereModel::new(g).theta(n))
}

/// `min (q − 1)` over vertices with `q > 1`: every transient term of `θ_n`
/// decays at least like `L^{-α n}` with this `α`.
pub fn slowest_decay(g: &DualGraph) -> Option<Rational64> {
    g.vertices()
        .iter()
        .filter(|v| !v.has_rate_one())
        .map(|v| v.q - 1)
        .min()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueLimit {
    pub residue: u64,
    pub truncation: LaurentTruncation,
    /// The last `n` of the stable window.
    pub stabilized_at: u64,
    pub window: usize,
}

fn limit_with_model(
    model: &SphereModel<'_>,
    residue: u64,
    modulus: u64,
    precision: u64,
    window: usize,
    n_max: u64,
) -> Result<ResidueLimit, OracleError> {
    let no_stab = || {
        let decay = slowest_decay(model.graph);
        let suggested = decay.map(|a| {
            let need = Rational64::from_integer(precision as i64 + 4) / a;
            need.ceil().to_integer() as u64 + 2 * modulus * window as u64
        });
        OracleError::NoStabilization {
            residue,
            n_max,
            slowest_decay: decay,
            suggested_n_max: suggested,
        }
    };
    let mut n = if residue == 0 { modulus } else { residue };
    let mut last: Option<LaurentTruncation> = None;
    let mut run = 0;
    while n <= n_max {
        let t = model.theta(n).expand(precision);
        if last.as_ref() == Some(&t) {
            run += 1;
        } else {
            run = 1;
            last = Some(t);
        }
        if run >= window {
            return Ok(ResidueLimit {
                residue,
                truncation: last.unwrap(),
                stabilized_at: n,
                window,
            });
        }
        n += modulus;
    }
    Err(no_stab())
}

/// Truncated limit of `θ_n` along `n ≡ residue (mod modulus)`.
pub fn limit_along(
    g: &DualGraph,
    residue: u64,
    modulus: u64,
    precision: u64,
    window: usize,
    n_max: u64,
) -> Result<ResidueLimit, OracleError> {
    require_valid(g)?;
    if modulus == 0 || residue >= modulus {
        return Err(OracleError::InvalidParams(format!(
            "residue {residue} must lie in 0..{modulus}"
        )));
    }
    if window < 2 {
        return Err(OracleError::InvalidParams("window must be at least 2".into()));
    }
    limit_with_model(&SphereModel::new(g), residue, modulus, precision, window, n_max)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaLimitReport {
    pub period: u64,
    pub limits: Vec<ResidueLimit>,
    /// `(1/e) Σ_c limits[c]`.
    pub mean: LaurentTruncation,
}

/// Mean value at infinity of `θ_n` with the graph's own period.
pub fn mean_value_surface(g: &DualGraph, params: &OracleParams) -> Result<ThetaLimitReport, OracleError> {
    match period(g) {
        Some(e) if e <= MAX_PERIOD => mean_value_surface_with_modulus(g, params, e),
        e => Err(OracleError::PeriodTooLarge { period: e, limit: MAX_PERIOD }),
    }
}

/// Mean value at infinity using an explicit modulus.
pub fn mean_value_surface_with_modulus(
    g: &DualGraph,
    params: &OracleParams,
    modulus: u64,
) -> Result<ThetaLimitReport, OracleError> {
    require_valid(g)?;
    params.check()?;
    if modulus == 0 {
        return Err(OracleError::InvalidParams("modulus must be positive".into()));
    }
    if modulus > MAX_PERIOD {
        return Err(OracleError::PeriodTooLarge { period: Some(modulus), limit: MAX_PERIOD });
    }
    let model = SphereModel::new(g);
    let n_max = params.n_max_multiplier.saturating_mul(modulus);
    let limits = (0..modulus)
        .map(|c| limit_with_model(&model, c, modulus, params.precision, params.window, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    let total = limits
        .iter()
        .fold(LaurentTruncation::empty(params.precision), |acc, l| acc.add(&l.truncation));
    let mean = total.scale(&Q::new(BigInt::one(), BigInt::from(modulus)));
    Ok(ThetaLimitReport {
        period: modulus,
        limits,
        mean,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub params: OracleParams,
    pub density: MotivicClass,
    pub formula: LaurentTruncation,
    pub oracle: ThetaLimitReport,
    pub matched: bool,
    pub formula_time: Duration,
    pub oracle_time: Duration,
}

/// Compares the closed-form density against the oracle's mean value,
/// coefficient by coefficient at the given precision.
pub fn cross_check(g: &DualGraph, params: &OracleParams) -> Result<CheckReport, OracleError> {
    let started = Instant::now();
    let density = surface_density(g)?;
    let formula = density.expand(params.precision);
    let formula_time = started.elapsed();
    let started = Instant::now();
    let oracle = mean_value_surface(g, params)?;
    let oracle_time = started.elapsed();
    let matched = formula == oracle.mean;
    Ok(CheckReport {
        params: *params,
        density,
        formula,
        oracle,
        matched,
        formula_time,
        oracle_time,
    })
}

// ---------------------------------------------------------------------------
// Curves

/// `Σ_{N_i | n} L^{-n}(L − 1)`.
pub fn sphere_volume_curve(b: &CurveBranchData, n: u64) -> MotivicClass {
    let count = b.mults().iter().filter(|&&m| n.is_multiple_of(m)).count() as i64;
    if count == 0 {
        return MotivicClass::zero();
    }
    let per_branch = RationalFunctionL::lpow(-(n as i64)).mul(&l_minus_one());
    MotivicClass::scalar(per_branch.scale(&Q::from_integer(count.into())))
}

/// Sphere volume normalized by the one-dimensional sphere `L^{-n}(L − 1)`.
pub fn theta_curve(b: &CurveBranchData, n: u64) -> MotivicClass {
    let sphere = RationalFunctionL::lpow(-(n as i64)).mul(&l_minus_one());
    sphere_volume_curve(b, n).scale(&sphere.inv().unwrap())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveMeanReport {
    pub period: u64,
    pub limits: Vec<BigRational>,
    pub mean: BigRational,
}

/// Mean value at infinity of `θ_n` for a curve, period `lcm(N_i)`.
///
/// `θ_n` is the number of branches with `N_i | n`, so each residue class is
/// constant from its first term on and the limit is read off directly.
pub fn mean_value_curve(b: &CurveBranchData) -> CurveMeanReport {
    let e = b.mults().iter().fold(1u64, |acc, &m| acc.lcm(&m));
    let counts: Vec<u64> = (0..e)
        .map(|c| {
            let n = if c == 0 { e } else { c };
            b.mults().iter().filter(|&&m| n.is_multiple_of(m)).count() as u64
        })
        .collect();
    let total: u64 = counts.iter().sum();
    CurveMeanReport {
        period: e,
        limits: counts.into_iter().map(|c| BigRational::from_integer(c.into())).collect(),
        mean: BigRational::new(total.into(), e.into()),
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Serialize)]
struct MachineLimit {
    residue: u64,
    stabilized_at: u64,
    window: usize,
    coefficients: Vec<TruncationEntry>,
}

#[derive(Serialize)]
pub struct MachineThetaReport {
    period: u64,
    precision: u64,
    limits: Vec<MachineLimit>,
    mean: Vec<TruncationEntry>,
}

#[derive(Serialize)]
pub struct MachineCheckReport {
    params: OracleParams,
    density: String,
    formula: Vec<TruncationEntry>,
    oracle: MachineThetaReport,
    matched: bool,
}

impl ThetaLimitReport {
    /// Deterministic machine form.
    pub fn to_machine(&self) -> MachineThetaReport {
        MachineThetaReport {
            period: self.period,
            precision: self.mean.precision,
            limits: self
                .limits
                .iter()
                .map(|l| MachineLimit {
                    residue: l.residue,
                    stabilized_at: l.stabilized_at,
                    window: l.window,
                    coefficients: l.truncation.to_entries(),
                })
                .collect(),
            mean: self.mean.to_entries(),
        }
    }
}

impl CheckReport {
    /// Machine form; timings are left out so reruns are byte-identical.
    pub fn to_machine(&self) -> MachineCheckReport {
        MachineCheckReport {
            params: self.params,
            density: self.density.canonical_string(),
            formula: self.formula.to_entries(),
            oracle: self.oracle.to_machine(),
            matched: self.matched,
        }
    }
}

impl fmt::Display for ThetaLimitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "period e = {}", self.period)?;
        for l in &self.limits {
            writeln!(
                f,
                "  n = {} mod {}: {}   (stable through n = {}, window {})",
                l.residue, self.period, l.truncation, l.stabilized_at, l.window
            )?;
        }
        write!(f, "mean value: {}", self.mean)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "precision D = {}, window W = {}, n_max = {} * e",
            self.params.precision, self.params.window, self.params.n_max_multiplier
        )?;
        writeln!(f, "formula:   {}", self.density)?;
        writeln!(f, "expansion: {}", self.formula)?;
        writeln!(f, "oracle:    {}", self.oracle.mean)?;
        writeln!(f, "period e = {}", self.oracle.period)?;
        writeln!(
            f,
            "time: formula {:.3?}, oracle {:.3?}",
            self.formula_time, self.oracle_time
        )?;
        write!(f, "verdict: {}", if self.matched { "match" } else { "MISMATCH" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mring::{parse_class, ClassSymbol};
    use crate::resgraph::{parse_graph, Edge};

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn smooth() -> DualGraph {
        DualGraph::new(vec![Vertex::rational("E1", 1, r(1, 1))], vec![]).unwrap()
    }

    fn two_vertex() -> DualGraph {
        DualGraph::new(
            vec![Vertex::rational("v", 2, r(1, 1)), Vertex::rational("w", 3, r(4, 3))],
            vec![Edge::new("v", "w")],
        )
        .unwrap()
    }

    fn e8() -> DualGraph {
        parse_graph(include_str!("../fixtures/e8.graph")).unwrap()
    }

    fn pc(s: &str) -> MotivicClass {
        parse_class(s).unwrap()
    }

    #[test]
    fn vertex_volumes() {
        let g = smooth();
        let v = &g.vertices()[0];
        let e0 = e0_class(&g, "E1").unwrap();
        assert_eq!(vertex_stratum_volume(v, &e0, 3), pc("L^-6 * L^-2 * (L - 1) * (L + 1)"));
        let w = Vertex::rational("w", 2, r(3, 2));
        assert!(vertex_stratum_volume(&w, &pc("L"), 3).is_zero());
        let g = e8();
        let v6 = g.vertex("v6").unwrap();
        let e0 = e0_class(&g, "v6").unwrap();
        assert_eq!(vertex_stratum_volume(v6, &e0, 3), e0.mul(&pc("L^-7 * L^-2 * (L - 1)")).unwrap());
    }

    #[test]
    fn edge_volumes() {
        let g = two_vertex();
        let t = EdgeStratum::between(g.vertex("v").unwrap(), g.vertex("w").unwrap());
        assert_eq!((t.a_v, t.a_w), (4, 7));
        assert_eq!(edge_stratum_volume(&t, 5), pc("L^-13 * (L - 1)^2"));
        assert!(edge_stratum_volume(&t, 4).is_zero());
        // 2k + 3l = 12 with k, l >= 1: (3, 2) only
        assert_eq!(t.solutions(12), vec![(3, 2)]);
        assert_eq!(edge_stratum_volume(&t, 12), pc("L^-28 * (L - 1)^2"));
    }

    #[test]
    fn edge_solutions_match_exhaustive_search() {
        for (mv, mw) in [(1, 1), (2, 4), (3, 5), (6, 4)] {
            let t = EdgeStratum { v: "a".into(), w: "b".into(), m_v: mv, m_w: mw, a_v: 1, a_w: 1 };
            for n in 1..60u64 {
                let mut brute = Vec::new();
                for k in 1..=n as i64 {
                    for l in 1..=n as i64 {
                        if mv * k + mw * l == n as i64 {
                            brute.push((k, l));
                        }
                    }
                }
                assert_eq!(t.solutions(n), brute);
                if n as i64 % mv.gcd(&mw) != 0 {
                    assert!(edge_stratum_volume(&t, n).is_zero());
                }
            }
        }
    }

    #[test]
    fn sphere_volumes() {
        assert_eq!(sphere_volume_surface(&smooth(), 1).unwrap(), pc("L^-2 * L^-2 * (L - 1) * (L + 1)"));
        assert_eq!(sphere_volume_surface(&two_vertex(), 5).unwrap(), pc("L^-13 * (L - 1)^2"));
        assert!(sphere_volume_surface(&two_vertex(), 1).unwrap().is_zero());
    }

    #[test]
    fn theta_values() {
        for n in 1..6 {
            assert_eq!(theta_surface(&smooth(), n).unwrap(), MotivicClass::one());
        }
        let even = pc("(L^2 + L + 1)/(L + 1)^2");
        let t = theta_surface(&two_vertex(), 80).unwrap();
        assert!(t.eq_truncated(&even, 12));
        assert_ne!(t, even);
    }

    #[test]
    fn residue_limits() {
        let g = two_vertex();
        let even = limit_along(&g, 0, 2, 6, 3, 400).unwrap();
        assert_eq!(even.truncation, pc("(L^2 + L + 1)/(L + 1)^2").expand(6));
        let odd = limit_along(&g, 1, 2, 6, 3, 400).unwrap();
        assert_eq!(odd.truncation, pc("L/(L + 1)^2").expand(6));
        let s = limit_along(&smooth(), 0, 1, 6, 3, 10).unwrap();
        assert_eq!(s.truncation, MotivicClass::one().expand(6));
        assert!(matches!(limit_along(&g, 2, 2, 6, 3, 40), Err(OracleError::InvalidParams(_))));
        assert!(matches!(limit_along(&g, 0, 2, 6, 1, 40), Err(OracleError::InvalidParams(_))));
    }

    #[test]
    fn stabilization_budget() {
        match limit_along(&e8(), 1, 60, 2, 3, 60) {
            Err(OracleError::NoStabilization { slowest_decay, suggested_n_max, .. }) => {
                assert_eq!(slowest_decay, Some(r(1, 3)));
                assert!(suggested_n_max.unwrap() > 60);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mean_values() {
        let params = OracleParams { precision: 6, ..OracleParams::default() };
        let rep = mean_value_surface(&two_vertex(), &params).unwrap();
        assert_eq!(rep.period, 6);
        assert_eq!(rep.mean, pc("1/2").expand(6));
        let rep = mean_value_surface(&e8(), &OracleParams { precision: 8, ..params }).unwrap();
        assert_eq!(rep.mean, pc("1/2").expand(8));
    }

    #[test]
    fn high_rate_vertex_decays() {
        let v = Vertex::rational("v", 2, r(3, 2));
        let e0 = pc("L + 1");
        let theta = |n| vertex_stratum_volume(&v, &e0, n).scale(&surface_normalizer(n));
        assert!(!theta(20).expand(12).is_empty());
        assert!(theta(80).expand(12).is_empty());
    }

    #[test]
    fn symbolic_classes_flow_through() {
        let mut v = Vertex::rational("v", 1, r(1, 1));
        v.class = crate::resgraph::CurveClass::Symbolic { genus: "1".into() };
        let g = DualGraph::new(vec![v, Vertex::rational("w", 1, r(2, 1))], vec![Edge::new("v", "w")])
            .unwrap();
        let rep = cross_check(&g, &OracleParams::default()).unwrap();
        assert!(rep.matched, "{rep}");
        assert!(rep.formula.coefficients().any(|(s, _, _)| *s == ClassSymbol::curve("v")));
    }

    #[test]
    fn curve_oracle() {
        let b = CurveBranchData::new(vec![2, 3]).unwrap();
        let rep = mean_value_curve(&b);
        let ints: Vec<BigRational> = [2, 0, 1, 1, 1, 0].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(rep.limits, ints);
        assert_eq!(rep.mean, BigRational::new(5.into(), 6.into()));
        let b2 = CurveBranchData::new(vec![2]).unwrap();
        assert_eq!(theta_curve(&b2, 4), MotivicClass::one());
        assert!(theta_curve(&b2, 3).is_zero());
        assert_eq!(mean_value_curve(&CurveBranchData::new(vec![1]).unwrap()).mean, BigRational::one());
        for mults in [vec![2, 3], vec![4, 6, 9], vec![5]] {
            let b = CurveBranchData::new(mults).unwrap();
            let rep = mean_value_curve(&b);
            for n in 1..=3 * rep.period {
                let limit = &rep.limits[(n % rep.period) as usize];
                assert_eq!(theta_curve(&b, n), MotivicClass::rational(limit.clone()));
            }
        }
    }
}
