//! Weighted dual resolution graphs: data model, file format and validation.
//!
//! A vertex is an exceptional component `E_v` carrying its multiplicity `m`,
//! its inner rate `q` and the class of the curve. Each edge is one
//! intersection point, so two components meeting in several points are
//! joined by repeated edges.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mring::{ClassSymbol, MotivicClass, RationalFunctionL};

/// Largest accepted `m`, and bound on numerator/denominator of `q`.
pub const MAX_INPUT: i64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurveClass {
    /// A smooth rational curve, class `L + 1`.
    Rational,
    /// A free symbol, tagged with its genus.
    Symbolic { genus: String },
}

impl CurveClass {
    fn tag(&self) -> String {
        match self {
            CurveClass::Rational => "rational".to_string(),
            CurveClass::Symbolic { genus } => format!("genus:{genus}"),
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        if tag == "rational" {
            return Some(CurveClass::Rational);
        }
        let genus = tag.strip_prefix("genus:")?;
        (!genus.is_empty()).then(|| CurveClass::Symbolic {
            genus: genus.to_string(),
        })
    }

    /// Symbolic class of genus 0, which is `L + 1` after substitution.
    pub fn is_symbolic_rational(&self) -> bool {
        matches!(self, CurveClass::Symbolic { genus } if genus == "0")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub id: String,
    pub m: i64,
    pub q: Rational64,
    pub class: CurveClass,
}

impl Vertex {
    pub fn rational(id: impl Into<String>, m: i64, q: Rational64) -> Self {
        Vertex {
            id: id.into(),
            m,
            q,
            class: CurveClass::Rational,
        }
    }

    pub fn has_rate_one(&self) -> bool {
        self.q.is_one()
    }

    /// `m·q` when it is an integer.
    pub fn mq(&self) -> Option<i64> {
        let x = self.q * Rational64::from_integer(self.m);
        x.is_integer().then(|| x.to_integer())
    }

    /// The class `[E_v]`.
    pub fn curve_class(&self) -> MotivicClass {
        match &self.class {
            CurveClass::Rational => MotivicClass::scalar(RationalFunctionL::from_poly(
                crate::mring::Poly::lpow(1).add(&crate::mring::Poly::one()),
            )),
            CurveClass::Symbolic { .. } => MotivicClass::curve(self.id.clone()),
        }
    }

    pub fn symbol(&self) -> ClassSymbol {
        ClassSymbol::curve(self.id.clone())
    }
}

/// One intersection point between two components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub a: String,
    pub b: String,
}

impl Edge {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        Edge {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn touches(&self, v: &str) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint opposite `v`.
    pub fn other(&self, v: &str) -> Option<&str> {
        if self.a == v {
            Some(&self.b)
        } else if self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Same unordered pair.
    pub fn joins(&self, x: &str, y: &str) -> bool {
        (self.a == x && self.b == y) || (self.a == y && self.b == x)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertexId(String),
    #[error("edge endpoint {0:?} is not a vertex")]
    UnknownEndpoint(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl DualGraph {
    /// Checks referential integrity only.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.id.as_str()) {
                return Err(GraphError::DuplicateVertexId(v.id.clone()));
            }
        }
        for e in &edges {
            for end in [&e.a, &e.b] {
                if !seen.contains(end.as_str()) {
                    return Err(GraphError::UnknownEndpoint(end.clone()));
                }
            }
        }
        Ok(DualGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.vertex(id).is_some()
    }

    pub fn incident_edges<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.touches(id))
    }

    /// Number of edge endpoints at `id` (a loop would count twice).
    pub fn degree(&self, id: &str) -> usize {
        self.edges
            .iter()
            .map(|e| (e.a == id) as usize + (e.b == id) as usize)
            .sum()
    }

    pub(crate) fn push_vertex(&mut self, v: Vertex) {
        self.vertices.push(v);
    }

    pub(crate) fn push_edge(&mut self, e: Edge) {
        self.edges.push(e);
    }

    pub(crate) fn remove_edge(&mut self, index: usize) -> Edge {
        self.edges.remove(index)
    }

    fn is_connected(&self) -> bool {
        let Some(first) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([first.id.as_str()]);
        let mut stack = vec![first.id.as_str()];
        while let Some(v) = stack.pop() {
            for e in self.incident_edges(v) {
                let w = e.other(v).unwrap();
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    RateBelowOne { vertex: String },
    NonIntegralMQ { vertex: String },
    AdjacentRateOne { a: String, b: String },
    LoopEdge { vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RateBelowOne { vertex } => write!(f, "RateBelowOne: vertex {vertex} has q < 1"),
            Violation::NonIntegralMQ { vertex } => {
                write!(f, "NonIntegralMQ: vertex {vertex} has m*q not an integer")
            }
            Violation::AdjacentRateOne { a, b } => write!(
                f,
                "AdjacentRateOne: vertices {a} and {b} both have q = 1 but meet"
            ),
            Violation::LoopEdge { vertex } => write!(f, "LoopEdge: edge from {vertex} to itself"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum Warning {
    /// The density formula evaluates to 0.
    NoRateOneVertex,
    Disconnected,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NoRateOneVertex => {
                write!(f, "NoRateOneVertex: no vertex has q = 1, density is 0")
            }
            Warning::Disconnected => write!(f, "Disconnected: the graph is not connected"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(g: &DualGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    for v in &g.vertices {
        if v.q < Rational64::one() {
            report.violations.push(Violation::RateBelowOne { vertex: v.id.clone() });
        }
        if v.mq().is_none() {
            report.violations.push(Violation::NonIntegralMQ { vertex: v.id.clone() });
        }
    }
    for e in &g.edges {
        if e.a == e.b {
            report.violations.push(Violation::LoopEdge { vertex: e.a.clone() });
            continue;
        }
        let (va, vb) = (g.vertex(&e.a).unwrap(), g.vertex(&e.b).unwrap());
        if va.has_rate_one() && vb.has_rate_one() {
            report.violations.push(Violation::AdjacentRateOne {
                a: e.a.clone(),
                b: e.b.clone(),
            });
        }
    }
    if !g.vertices.iter().any(Vertex::has_rate_one) {
        report.warnings.push(Warning::NoRateOneVertex);
    }
    if !g.is_connected() {
        report.warnings.push(Warning::Disconnected);
    }
    report
}

/// `[E_v^0] = [E_v] − d·1`, one point removed per incident edge.
pub fn e0_class(g: &DualGraph, v: &str) -> Result<MotivicClass, GraphError> {
    let vertex = g
        .vertex(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    let d = g.degree(v) as i64;
    Ok(vertex.curve_class().sub(&MotivicClass::integer(d)))
}

/// Least common multiple of all multiplicities, `None` on `u64` overflow.
pub fn period(g: &DualGraph) -> Option<u64> {
    g.vertices.iter().try_fold(1u64, |acc, v| {
        let m = v.m as u64;
        (acc / acc.gcd(&m)).checked_mul(m)
    })
}

// ---------------------------------------------------------------------------
// File format

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<RawVertex>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    m: i64,
    q: RawRate,
    #[serde(default = "default_class")]
    class: String,
}

fn default_class() -> String {
    "rational".to_string()
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum RawRate {
    Int(i64),
    Text(String),
}

fn parse_rate(raw: &RawRate) -> Result<Rational64, String> {
    match raw {
        RawRate::Int(n) => {
            if n.abs() > MAX_INPUT {
                return Err(format!("rate {n} out of range"));
            }
            Ok(Rational64::from_integer(*n))
        }
        RawRate::Text(s) => {
            let s = s.trim();
            let (p, r) = match s.split_once('/') {
                Some((p, r)) => (p.trim(), r.trim()),
                None => (s, "1"),
            };
            let p: i64 = p.parse().map_err(|_| format!("bad rate {s:?}"))?;
            let r: i64 = r.parse().map_err(|_| format!("bad rate {s:?}"))?;
            if r <= 0 {
                return Err(format!("rate {s:?} needs a positive denominator"));
            }
            if p.abs() > MAX_INPUT || r > MAX_INPUT {
                return Err(format!("rate {s:?} out of range"));
            }
            if p.gcd(&r) != 1 && !(p == 0 && r == 1) {
                return Err(format!("rate {s:?} is not in lowest terms"));
            }
            Ok(Rational64::new(p, r))
        }
    }
}

/// Line number of the `"id": <id>` entry, for error messages after JSON parsing.
fn line_of_id(text: &str, id: &str) -> usize {
    let needle = serde_json::to_string(id).unwrap_or_default();
    text.lines()
        .position(|l| l.contains("\"id\"") && l.contains(&needle))
        .map(|i| i + 1)
        .unwrap_or(0)
}

/// Parses the graph file format; semantic checks are left to [`validate`].
pub fn parse_graph(text: &str) -> Result<DualGraph, GraphError> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| GraphError::SyntaxError {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut vertices = Vec::with_capacity(raw.vertices.len());
    for rv in &raw.vertices {
        let line = line_of_id(text, &rv.id);
        let syntax = |message: String| GraphError::SyntaxError { line, message };
        if rv.id.is_empty() || rv.id.contains(['[', ']']) || rv.id.chars().any(char::is_whitespace) {
            return Err(syntax(format!("invalid vertex id {:?}", rv.id)));
        }
        if rv.m < 1 || rv.m > MAX_INPUT {
            return Err(syntax(format!("multiplicity of {} must be in 1..={MAX_INPUT}", rv.id)));
        }
        let q = parse_rate(&rv.q).map_err(syntax)?;
        let class = CurveClass::from_tag(&rv.class)
            .ok_or_else(|| syntax(format!("unknown curve class {:?}", rv.class)))?;
        vertices.push(Vertex {
            id: rv.id.clone(),
            m: rv.m,
            q,
            class,
        });
    }
    let edges = raw.edges.into_iter().map(|(a, b)| Edge { a, b }).collect();
    DualGraph::new(vertices, edges)
}

fn rate_to_raw(q: &Rational64) -> RawRate {
    if q.is_integer() {
        RawRate::Int(q.to_integer())
    } else {
        RawRate::Text(format!("{}/{}", q.numer(), q.denom()))
    }
}

/// Writes the graph file format; [`parse_graph`] inverts it.
pub fn serialize_graph(g: &DualGraph) -> String {
    let raw = RawGraph {
        vertices: g
            .vertices
            .iter()
            .map(|v| RawVertex {
                id: v.id.clone(),
                m: v.m,
                q: rate_to_raw(&v.q),
                class: v.class.tag(),
            })
            .collect(),
        edges: g.edges.iter().map(|e| (e.a.clone(), e.b.clone())).collect(),
    };
    serde_json::to_string_pretty(&raw).expect("graph serializes")
}

// ---------------------------------------------------------------------------
// Random admissible graphs

/// A random tree on `1..=max_vertices` vertices with multiplicities in
/// `1..=max_m` and rates `q ∈ [1, 3]` with `m·q ∈ Z`. No two rate-one
/// vertices are adjacent and at least one vertex has rate one. With
/// `symbolic` set, some vertices carry a free genus-0 or genus-1 class.
pub fn random_admissible<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
    max_m: i64,
    symbolic: bool,
) -> DualGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut parents: Vec<Option<usize>> = vec![None];
    for i in 1..n {
        parents.push(Some(rng.gen_range(0..i)));
    }
    let mut rate_one = vec![false; n];
    for i in 0..n {
        let parent_one = parents[i].map(|p| rate_one[p]).unwrap_or(false);
        rate_one[i] = !parent_one && rng.gen_bool(0.5);
    }
    if !rate_one.iter().any(|&x| x) {
        // nothing is rate-one yet, so the root can be
        rate_one[0] = true;
    }
    let mut vertices = Vec::with_capacity(n);
    for (i, &one) in rate_one.iter().enumerate() {
        let m = rng.gen_range(1..=max_m);
        let q = if one {
            Rational64::one()
        } else {
            // q = (m + j)/m, 1 ≤ j ≤ 2m
            Rational64::new(m + rng.gen_range(1..=2 * m), m)
        };
        let class = if symbolic && rng.gen_bool(0.25) {
            CurveClass::Symbolic {
                genus: rng.gen_range(0..2).to_string(),
            }
        } else {
            CurveClass::Rational
        };
        vertices.push(Vertex {
            id: format!("v{}", i + 1),
            m,
            q,
            class,
        });
    }
    let edges = parents
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| Edge::new(format!("v{}", p + 1), format!("v{}", i + 1))))
        .collect();
    DualGraph::new(vertices, edges).expect("generated graph is well formed")
}
