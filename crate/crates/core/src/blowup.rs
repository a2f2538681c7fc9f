//! Point blowups on dual graphs.
//!
//! Blowing up a smooth point of `E_v` creates `E_w` with `m_w = m_v` and
//! `q_w = q_v + 1/m_v`. Blowing up the double point `E_v ∩ E_v'` creates
//! `E_w` with `m_w = m_v + m_v'` and `q_w` the `m`-weighted mean of the two
//! rates. In smooth mode (blowups of `C²` starting at the origin) the
//! discrepancy `k` follows `k_w = k_v + 1` and `k_w = k_v + k_v' + 1`, and
//! `q = (k + 1)/m − 1` holds at every vertex.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::resgraph::{CurveClass, DualGraph, Edge, Vertex};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Smooth,
    General,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("no edge {a:?}-{b:?} (occurrence {occurrence})")]
    UnknownEdge { a: String, b: String, occurrence: usize },
    #[error("operation needs smooth mode")]
    WrongMode,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlowupState {
    graph: DualGraph,
    /// `ord_E K_{Y/C²}`, smooth mode only.
    k: Option<BTreeMap<String, i64>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexRow {
    pub id: String,
    pub m: i64,
    pub q: Rational64,
    pub k: Option<i64>,
    pub mather_log: Rational64,
}

impl BlowupState {
    /// First blowup of the origin of `C²`: `E1` with `m = 1`, `q = 1`, `k = 1`.
    pub fn init_smooth() -> Self {
        let graph = DualGraph::new(vec![Vertex::rational("E1", 1, Rational64::one())], vec![])
            .expect("single vertex");
        BlowupState {
            graph,
            k: Some(BTreeMap::from([("E1".to_string(), 1)])),
        }
    }

    /// Tracks `m` and `q` only.
    pub fn general(graph: DualGraph) -> Self {
        BlowupState { graph, k: None }
    }

    /// Builds a smooth-mode state from explicit data; no consistency check.
    pub fn smooth_from_parts(graph: DualGraph, k: BTreeMap<String, i64>) -> Self {
        BlowupState { graph, k: Some(k) }
    }

    pub fn mode(&self) -> Mode {
        if self.k.is_some() {
            Mode::Smooth
        } else {
            Mode::General
        }
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn discrepancy(&self, v: &str) -> Option<i64> {
        self.k.as_ref()?.get(v).copied()
    }

    fn fresh_id(&self) -> String {
        (self.graph.vertices().len() + 1..)
            .map(|i| format!("E{i}"))
            .find(|id| !self.graph.contains(id))
            .unwrap()
    }

    fn vertex(&self, v: &str) -> Result<&Vertex, BlowupError> {
        self.graph
            .vertex(v)
            .ok_or_else(|| BlowupError::UnknownVertex(v.to_string()))
    }

    /// Blows up a smooth point of `E_v`; returns the new state and the new id.
    pub fn blowup_free(&self, v: &str) -> Result<(Self, String), BlowupError> {
        let base = self.vertex(v)?.clone();
        let id = self.fresh_id();
        let mut next = self.clone();
        next.graph.push_vertex(Vertex {
            id: id.clone(),
            m: base.m,
            q: base.q + Rational64::new(1, base.m),
            class: CurveClass::Rational,
        });
        next.graph.push_edge(Edge::new(v, id.clone()));
        if let Some(k) = next.k.as_mut() {
            let kv = k[v];
            k.insert(id.clone(), kv + 1);
        }
        Ok((next, id))
    }

    /// Blows up the `occurrence`-th intersection point (0-based) of `E_a`
    /// and `E_b`.
    pub fn blowup_satellite(
        &self,
        a: &str,
        b: &str,
        occurrence: usize,
    ) -> Result<(Self, String), BlowupError> {
        let unknown = || BlowupError::UnknownEdge {
            a: a.to_string(),
            b: b.to_string(),
            occurrence,
        };
        let index = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.joins(a, b))
            .nth(occurrence)
            .map(|(i, _)| i)
            .ok_or_else(unknown)?;
        let (va, vb) = (self.vertex(a)?.clone(), self.vertex(b)?.clone());
        let m = va.m + vb.m;
        let q = (va.q * va.m + vb.q * vb.m) / m;
        let id = self.fresh_id();
        let mut next = self.clone();
        next.graph.remove_edge(index);
        next.graph.push_vertex(Vertex {
            id: id.clone(),
            m,
            q,
            class: CurveClass::Rational,
        });
        next.graph.push_edge(Edge::new(a, id.clone()));
        next.graph.push_edge(Edge::new(b, id.clone()));
        if let Some(k) = next.k.as_mut() {
            let kw = k[a] + k[b] + 1;
            k.insert(id.clone(), kw);
        }
        Ok((next, id))
    }

    /// Mather log-discrepancy `k̂^log = m(q + 1)`.
    pub fn mather_log(&self, v: &str) -> Result<Rational64, BlowupError> {
        let x = self.vertex(v)?;
        Ok(Rational64::from_integer(x.m) * (x.q + 1))
    }

    /// Mather discrepancy `k̂ = m(q + 1) − 1`.
    pub fn mather(&self, v: &str) -> Result<Rational64, BlowupError> {
        Ok(self.mather_log(v)? - 1)
    }

    /// Whether `q = (k + 1)/m − 1` at every vertex.
    pub fn check_smooth_identity(&self) -> Result<bool, BlowupError> {
        let k = self.k.as_ref().ok_or(BlowupError::WrongMode)?;
        Ok(self.graph.vertices().iter().all(|v| {
            k.get(&v.id)
                .is_some_and(|&kv| v.q == Rational64::new(kv + 1, v.m) - 1)
        }))
    }

    pub fn rows(&self) -> Vec<VertexRow> {
        self.graph
            .vertices()
            .iter()
            .map(|v| VertexRow {
                id: v.id.clone(),
                m: v.m,
                q: v.q,
                k: self.discrepancy(&v.id),
                mather_log: self.mather_log(&v.id).unwrap(),
            })
            .collect()
    }

    pub fn apply(&self, op: &BlowupOp) -> Result<Self, BlowupError> {
        match op {
            BlowupOp::Free(v) => self.blowup_free(v).map(|(s, _)| s),
            BlowupOp::Satellite { a, b, occurrence } => {
                self.blowup_satellite(a, b, *occurrence).map(|(s, _)| s)
            }
        }
    }
}

/// Table with columns `id m q k k̂^log`.
impl fmt::Display for BlowupState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<8} {:>6} {:>10} {:>6} {:>8}", "id", "m", "q", "k", "k^log")?;
        for row in self.rows() {
            let k = row.k.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<8} {:>6} {:>10} {:>6} {:>8}",
                row.id,
                row.m,
                row.q.to_string(),
                k,
                row.mather_log.to_string()
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BlowupOp {
    Free(String),
    Satellite { a: String, b: String, occurrence: usize },
}

impl fmt::Display for BlowupOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupOp::Free(v) => write!(f, "free {v}"),
            BlowupOp::Satellite { a, b, occurrence: 0 } => write!(f, "satellite {a} {b}"),
            BlowupOp::Satellite { a, b, occurrence } => write!(f, "satellite {a} {b} {occurrence}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Blowup { line: usize, source: BlowupError },
}

/// Parses `free <id>` / `satellite <a> <b> [occurrence]` lines. Blank lines
/// and `#` comments are skipped.
pub fn parse_script(text: &str) -> Result<Vec<(usize, BlowupOp)>, ScriptError> {
    let mut ops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: &str| ScriptError::Syntax {
            line,
            message: message.to_string(),
        };
        let op = match words.as_slice() {
            ["free", v] => BlowupOp::Free(v.to_string()),
            ["satellite", a, b] => BlowupOp::Satellite {
                a: a.to_string(),
                b: b.to_string(),
                occurrence: 0,
            },
            ["satellite", a, b, occ] => BlowupOp::Satellite {
                a: a.to_string(),
                b: b.to_string(),
                occurrence: occ.parse().map_err(|_| syntax("occurrence must be a non-negative integer"))?,
            },
            _ => return Err(syntax("expected `free <id>` or `satellite <a> <b> [occurrence]`")),
        };
        ops.push((line, op));
    }
    Ok(ops)
}

/// Applies the script to `start`, returning every intermediate state
/// (including `start`).
pub fn run_script(start: &BlowupState, text: &str) -> Result<Vec<BlowupState>, ScriptError> {
    let mut states = vec![start.clone()];
    for (line, op) in parse_script(text)? {
        let next = states
            .last()
            .unwrap()
            .apply(&op)
            .map_err(|source| ScriptError::Blowup { line, source })?;
        states.push(next);
    }
    Ok(states)
}

/// A uniformly chosen free or satellite blowup on the current state.
pub fn random_op<R: Rng + ?Sized>(state: &BlowupState, rng: &mut R) -> BlowupOp {
    let g = state.graph();
    if g.edges().is_empty() || rng.gen_bool(0.5) {
        let v = &g.vertices()[rng.gen_range(0..g.vertices().len())];
        BlowupOp::Free(v.id.clone())
    } else {
        let i = rng.gen_range(0..g.edges().len());
        let e = &g.edges()[i];
        let occurrence = g.edges()[..i].iter().filter(|x| x.joins(&e.a, &e.b)).count();
        BlowupOp::Satellite {
            a: e.a.clone(),
            b: e.b.clone(),
            occurrence,
        }
    }
}

/// `steps` random blowups from `init_smooth`; returns all states visited.
pub fn random_sequence<R: Rng + ?Sized>(steps: usize, rng: &mut R) -> Vec<(Option<BlowupOp>, BlowupState)> {
    let mut out = vec![(None, BlowupState::init_smooth())];
    for _ in 0..steps {
        let cur = &out.last().unwrap().1;
        let op = random_op(cur, rng);
        let next = cur.apply(&op).expect("random op targets existing data");
        out.push((Some(op), next));
    }
    out
}
