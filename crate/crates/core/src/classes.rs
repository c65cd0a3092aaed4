//! Rauzy classes and diagrams.
//!
//! A class is enumerated breadth-first from its seed. Vertices are stored as
//! compact symbol strings (the bottom word for reduced permutations, the two
//! rows back to back for labeled ones) and numbered by BFS layer, then by
//! that symbol string within a layer. The numbering does not depend on how
//! the frontier is scheduled.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::induction::{labeled_move_rows, reduced_move_word, InductionError, MoveKind, Rational};
use crate::perm::{Alphabet, LabeledPermutation, PermError, ReducedPermutation, Symbol};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum ClassError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error("vertex budget of {budget} exceeded ({discovered} vertices discovered so far)")]
    BudgetExceeded { budget: usize, discovered: usize },
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramMode {
    Labeled,
    Reduced,
}

impl std::str::FromStr for DiagramMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "labeled" => Ok(DiagramMode::Labeled),
            "reduced" => Ok(DiagramMode::Reduced),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

impl std::fmt::Display for DiagramMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiagramMode::Labeled => "labeled",
            DiagramMode::Reduced => "reduced",
        })
    }
}

/// Maximum number of vertices an enumeration may discover.
pub type Budget = usize;

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub budget: Budget,
    pub execution: Execution,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            budget: DEFAULT_BUDGET,
            execution: Execution::default(),
        }
    }
}

impl EnumerateOptions {
    pub fn sequential() -> Self {
        EnumerateOptions {
            execution: Execution::Sequential,
            ..Default::default()
        }
    }
}

/// Outgoing edge of a diagram vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub kind: MoveKind,
    pub target: u32,
    pub winner: Symbol,
    pub looser: Symbol,
}

/// A Rauzy class with its move-labeled edges. Vertex 0 is the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyDiagram {
    mode: DiagramMode,
    alphabet: Alphabet,
    states: Vec<Box<[Symbol]>>,
    edges: Vec<[Edge; 2]>,
}

/// Vertex states in final order and their ids.
type Closure = (Vec<Box<[Symbol]>>, HashMap<Box<[Symbol]>, u32>);

type StepFn = fn(&[Symbol], MoveKind) -> Result<(Box<[Symbol]>, Symbol, Symbol), InductionError>;

fn reduced_step(
    state: &[Symbol],
    kind: MoveKind,
) -> Result<(Box<[Symbol]>, Symbol, Symbol), InductionError> {
    reduced_move_word(state, kind)
}

fn labeled_step(
    state: &[Symbol],
    kind: MoveKind,
) -> Result<(Box<[Symbol]>, Symbol, Symbol), InductionError> {
    let d = state.len() / 2;
    let (top, bottom, w, l) = labeled_move_rows(&state[..d], &state[d..], kind)?;
    let mut next = Vec::with_capacity(2 * d);
    next.extend_from_slice(&top);
    next.extend_from_slice(&bottom);
    Ok((next.into_boxed_slice(), w, l))
}

fn step_fn(mode: DiagramMode) -> StepFn {
    match mode {
        DiagramMode::Reduced => reduced_step,
        DiagramMode::Labeled => labeled_step,
    }
}

/// Breadth-first closure of `seed` under both moves. Returns the vertex
/// states in final order together with their ids.
fn closure(
    seed: Box<[Symbol]>,
    step: StepFn,
    opts: &EnumerateOptions,
) -> Result<Closure, ClassError> {
    #[cfg(feature = "parallel")]
    if opts.execution.is_parallel() {
        return closure_parallel(seed, step, opts.budget);
    }
    closure_sequential(seed, step, opts.budget)
}

fn closure_sequential(
    seed: Box<[Symbol]>,
    step: StepFn,
    budget: Budget,
) -> Result<Closure, ClassError> {
    let mut ids: HashMap<Box<[Symbol]>, u32> = HashMap::new();
    let mut states = vec![seed.clone()];
    ids.insert(seed, 0);
    let mut layer_start = 0;
    while layer_start < states.len() {
        let layer_end = states.len();
        let mut next = Vec::new();
        for state in &states[layer_start..layer_end] {
            for kind in MoveKind::BOTH {
                let (t, _, _) = step(state, kind)?;
                if !ids.contains_key(&t) {
                    ids.insert(t.clone(), u32::MAX);
                    next.push(t);
                }
            }
        }
        next.sort_unstable();
        check_budget(states.len() + next.len(), budget)?;
        for t in next {
            *ids.get_mut(&t).unwrap() = states.len() as u32;
            states.push(t);
        }
        layer_start = layer_end;
    }
    Ok((states, ids))
}

#[cfg(feature = "parallel")]
fn closure_parallel(
    seed: Box<[Symbol]>,
    step: StepFn,
    budget: Budget,
) -> Result<Closure, ClassError> {
    use dashmap::mapref::entry::Entry;
    use dashmap::DashMap;
    use rayon::prelude::*;

    let seen: DashMap<Box<[Symbol]>, u32> = DashMap::new();
    let mut states = vec![seed.clone()];
    seen.insert(seed, 0);
    let mut layer_start = 0;
    while layer_start < states.len() {
        let layer_end = states.len();
        let mut next = states[layer_start..layer_end]
            .par_iter()
            .flat_map_iter(|s| MoveKind::BOTH.map(|kind| step(s, kind)))
            .filter_map(|r| match r {
                Ok((t, _, _)) => match seen.entry(t) {
                    Entry::Occupied(_) => None,
                    Entry::Vacant(v) => {
                        let key = v.key().clone();
                        v.insert(u32::MAX);
                        Some(Ok(key))
                    }
                },
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        next.par_sort_unstable();
        check_budget(states.len() + next.len(), budget)?;
        for t in next {
            *seen.get_mut(&t).unwrap() = states.len() as u32;
            states.push(t);
        }
        layer_start = layer_end;
    }
    Ok((states, seen.into_iter().collect()))
}

fn check_budget(discovered: usize, budget: Budget) -> Result<(), ClassError> {
    if discovered > budget {
        Err(ClassError::BudgetExceeded { budget, discovered })
    } else {
        Ok(())
    }
}

fn build_diagram(
    mode: DiagramMode,
    alphabet: Alphabet,
    seed: Box<[Symbol]>,
    opts: &EnumerateOptions,
) -> Result<RauzyDiagram, ClassError> {
    let step = step_fn(mode);
    let (states, ids) = closure(seed, step, opts)?;
    let edges = opts
        .execution
        .map(&states, |s| -> Result<[Edge; 2], InductionError> {
            let edge = |kind| -> Result<Edge, InductionError> {
                let (t, winner, looser) = step(s, kind)?;
                Ok(Edge {
                    kind,
                    target: ids[&t],
                    winner,
                    looser,
                })
            };
            Ok([edge(MoveKind::Top)?, edge(MoveKind::Bottom)?])
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RauzyDiagram {
        mode,
        alphabet,
        states,
        edges,
    })
}

/// Reduced Rauzy class of an irreducible permutation.
pub fn enumerate_reduced(
    seed: &ReducedPermutation,
    opts: &EnumerateOptions,
) -> Result<RauzyDiagram, ClassError> {
    seed.ensure_irreducible()?;
    build_diagram(
        DiagramMode::Reduced,
        Alphabet::numeric(seed.d()),
        seed.word().into(),
        opts,
    )
}

/// Labeled Rauzy class, keeping the seed's alphabet.
pub fn enumerate_labeled(
    seed: &LabeledPermutation,
    opts: &EnumerateOptions,
) -> Result<RauzyDiagram, ClassError> {
    seed.reduce().ensure_irreducible()?;
    let mut state = Vec::with_capacity(2 * seed.d());
    state.extend_from_slice(seed.top());
    state.extend_from_slice(seed.bottom());
    build_diagram(
        DiagramMode::Labeled,
        seed.alphabet().clone(),
        state.into(),
        opts,
    )
}

/// Rauzy class of `seed` in the given mode. A reduced class is seeded by
/// the reduction of `seed`.
pub fn enumerate_class(
    seed: &LabeledPermutation,
    mode: DiagramMode,
    opts: &EnumerateOptions,
) -> Result<RauzyDiagram, ClassError> {
    match mode {
        DiagramMode::Reduced => enumerate_reduced(&seed.reduce(), opts),
        DiagramMode::Labeled => enumerate_labeled(seed, opts),
    }
}

/// Cardinalities of the reduced class of `seed` and of the labeled class of
/// its identity-top representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassSizes {
    pub reduced: usize,
    pub labeled: usize,
}

impl ClassSizes {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.labeled as i128, self.reduced as i128)
    }
}

pub fn class_sizes(
    seed: &ReducedPermutation,
    opts: &EnumerateOptions,
) -> Result<ClassSizes, ClassError> {
    let reduced = enumerate_reduced(seed, opts)?.len();
    let labeled = enumerate_labeled(&seed.embed(), opts)?.len();
    Ok(ClassSizes { reduced, labeled })
}

/// `|R_lab| / |R|` for the class of `seed`.
pub fn ratio(seed: &ReducedPermutation, opts: &EnumerateOptions) -> Result<Rational, ClassError> {
    Ok(class_sizes(seed, opts)?.ratio())
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    mode: DiagramMode,
    start: String,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    key: String,
    top: String,
    bottom: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    src: String,
    #[serde(rename = "move")]
    kind: MoveKind,
    dst: String,
    winner: String,
    looser: String,
}

/// Export format of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl RauzyDiagram {
    pub fn mode(&self) -> DiagramMode {
        self.mode
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn d(&self) -> usize {
        self.alphabet.len()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Compact state of a vertex.
    pub fn state(&self, v: usize) -> &[Symbol] {
        &self.states[v]
    }

    pub fn states(&self) -> &[Box<[Symbol]>] {
        &self.states
    }

    /// Outgoing `[top, bottom]` edges of a vertex.
    pub fn edges(&self, v: usize) -> &[Edge; 2] {
        &self.edges[v]
    }

    pub fn edge_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn labeled(&self, v: usize) -> LabeledPermutation {
        let d = self.d();
        let s = &self.states[v];
        let (top, bottom): (Box<[Symbol]>, Box<[Symbol]>) = match self.mode {
            DiagramMode::Reduced => ((0..d as Symbol).collect(), s.clone()),
            DiagramMode::Labeled => (s[..d].into(), s[d..].into()),
        };
        LabeledPermutation::from_rows_unchecked(self.alphabet.clone(), top, bottom)
    }

    pub fn reduced(&self, v: usize) -> ReducedPermutation {
        match self.mode {
            DiagramMode::Reduced => {
                ReducedPermutation::from_zero_based_unchecked(self.states[v].clone())
            }
            DiagramMode::Labeled => self.labeled(v).reduce(),
        }
    }

    pub fn key(&self, v: usize) -> String {
        match self.mode {
            DiagramMode::Reduced => self.reduced(v).canonical_key(),
            DiagramMode::Labeled => self.labeled(v).canonical_key(),
        }
    }

    pub fn start_key(&self) -> String {
        self.key(0)
    }

    /// Index of the reduced permutation in a reduced diagram.
    pub fn find_reduced(&self, p: &ReducedPermutation) -> Option<usize> {
        if self.mode != DiagramMode::Reduced || p.d() != self.d() {
            return None;
        }
        self.states.iter().position(|s| **s == *p.word())
    }

    /// Number of incoming edges of each vertex.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.len()];
        for e in self.edges.iter().flatten() {
            deg[e.target as usize] += 1;
        }
        deg
    }

    fn to_json_value(&self) -> DiagramJson {
        let keys: Vec<String> = (0..self.len()).map(|v| self.key(v)).collect();
        let vertices = (0..self.len())
            .map(|v| {
                let p = self.labeled(v);
                VertexJson {
                    key: keys[v].clone(),
                    top: p.top_text(),
                    bottom: p.bottom_text(),
                }
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(v, es)| es.iter().map(move |e| (v, e)))
            .map(|(v, e)| EdgeJson {
                src: keys[v].clone(),
                kind: e.kind,
                dst: keys[e.target as usize].clone(),
                winner: self.alphabet.token(e.winner).to_owned(),
                looser: self.alphabet.token(e.looser).to_owned(),
            })
            .collect();
        DiagramJson {
            mode: self.mode,
            start: keys[0].clone(),
            vertices,
            edges,
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value())
            .expect("diagram serialization cannot fail");
        s.push('\n');
        s
    }

    /// Reads a diagram written by [`RauzyDiagram::to_json`], keeping its
    /// vertex order.
    pub fn from_json(text: &str) -> Result<RauzyDiagram, ClassError> {
        let doc: DiagramJson = serde_json::from_str(text)?;
        let first = doc
            .vertices
            .first()
            .ok_or_else(|| ClassError::Malformed("no vertices".into()))?;
        if first.key != doc.start {
            return Err(ClassError::Malformed(
                "start is not the first vertex".into(),
            ));
        }
        let alphabet = Alphabet::from_tokens(first.top.split_whitespace());
        let d = alphabet.len();
        let ids = |row: &str| -> Result<Vec<Symbol>, ClassError> {
            row.split_whitespace()
                .map(|t| {
                    alphabet
                        .lookup(t)
                        .ok_or_else(|| ClassError::Malformed(format!("unknown symbol `{t}`")))
                })
                .collect()
        };
        let mut index: HashMap<&str, u32> = HashMap::new();
        let mut states = Vec::with_capacity(doc.vertices.len());
        for (i, v) in doc.vertices.iter().enumerate() {
            let top = ids(&v.top)?;
            let bottom = ids(&v.bottom)?;
            let p = LabeledPermutation::from_rows(alphabet.clone(), top.clone(), bottom.clone())?;
            let state: Box<[Symbol]> = match doc.mode {
                DiagramMode::Reduced => {
                    if top.iter().enumerate().any(|(j, &s)| s as usize != j) {
                        return Err(ClassError::Malformed(format!(
                            "reduced vertex `{}` has a non-identity top row",
                            v.key
                        )));
                    }
                    bottom.into()
                }
                DiagramMode::Labeled => top.iter().chain(&bottom).copied().collect(),
            };
            let key = match doc.mode {
                DiagramMode::Reduced => p.reduce().canonical_key(),
                DiagramMode::Labeled => p.canonical_key(),
            };
            if key != v.key {
                return Err(ClassError::Malformed(format!(
                    "key `{}` does not match its rows",
                    v.key
                )));
            }
            if index.insert(v.key.as_str(), i as u32).is_some() {
                return Err(ClassError::Malformed(format!(
                    "duplicate vertex `{}`",
                    v.key
                )));
            }
            states.push(state);
        }
        if doc.edges.len() != 2 * states.len() {
            return Err(ClassError::Malformed(
                "expected two edges per vertex".into(),
            ));
        }
        let mut edges = Vec::with_capacity(states.len());
        for (v, pair) in doc.edges.chunks(2).enumerate() {
            let mut out = [None, None];
            for (slot, (e, kind)) in pair.iter().zip(MoveKind::BOTH).enumerate() {
                let src = index.get(e.src.as_str()).copied();
                if e.kind != kind || src != Some(v as u32) {
                    return Err(ClassError::Malformed(format!(
                        "edge {} of vertex `{}` is out of order",
                        slot, doc.vertices[v].key
                    )));
                }
                let target = *index
                    .get(e.dst.as_str())
                    .ok_or_else(|| ClassError::Malformed(format!("unknown vertex `{}`", e.dst)))?;
                let sym = |t: &str| {
                    alphabet
                        .lookup(t)
                        .ok_or_else(|| ClassError::Malformed(format!("unknown symbol `{t}`")))
                };
                out[slot] = Some(Edge {
                    kind,
                    target,
                    winner: sym(&e.winner)?,
                    looser: sym(&e.looser)?,
                });
            }
            edges.push([out[0].unwrap(), out[1].unwrap()]);
        }
        debug_assert_eq!(d, alphabet.len());
        Ok(RauzyDiagram {
            mode: doc.mode,
            alphabet,
            states,
            edges,
        })
    }

    /// Graphviz rendering. Nodes are named by their keys and labeled by the
    /// two rows; edges carry the move letter and the winner.
    pub fn to_dot(&self) -> String {
        let keys: Vec<String> = (0..self.len()).map(|v| self.key(v)).collect();
        let mut out = String::new();
        let _ = writeln!(out, "digraph rauzy {{");
        let _ = writeln!(out, "  // mode: {}, start: {}", self.mode, escape(&keys[0]));
        for (v, key) in keys.iter().enumerate() {
            let p = self.labeled(v);
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{}\\n{}\"];",
                escape(key),
                escape(&p.top_text()),
                escape(&p.bottom_text())
            );
        }
        for (v, es) in self.edges.iter().enumerate() {
            for e in es {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}:{}\"];",
                    escape(&keys[v]),
                    escape(&keys[e.target as usize]),
                    e.kind.letter(),
                    escape(self.alphabet.token(e.winner))
                );
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self, format: ExportFormat, sink: &mut dyn Write) -> Result<(), ClassError> {
        let text = match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
        };
        sink.write_all(text.as_bytes())?;
        sink.flush()?;
        Ok(())
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn reduced(word: &[usize]) -> ReducedPermutation {
        ReducedPermutation::from_word(word).unwrap()
    }

    fn both_modes() -> [EnumerateOptions; 2] {
        [EnumerateOptions::sequential(), EnumerateOptions::default()]
    }

    #[test]
    fn symmetric_class_sizes() {
        for opts in both_modes() {
            let tau4 = reduced(&[4, 3, 2, 1]);
            assert_eq!(enumerate_reduced(&tau4, &opts).unwrap().len(), 7);
            assert_eq!(enumerate_labeled(&tau4.embed(), &opts).unwrap().len(), 7);
        }
    }

    #[test]
    fn pi_family_class_sizes() {
        let p = LabeledPermutation::parse("0 2 3 1 4 / 4 3 2 1 0").unwrap();
        let opts = EnumerateOptions::default();
        assert_eq!(
            enumerate_class(&p, DiagramMode::Reduced, &opts)
                .unwrap()
                .len(),
            11
        );
        assert_eq!(
            enumerate_class(&p, DiagramMode::Labeled, &opts)
                .unwrap()
                .len(),
            33
        );
    }

    #[test]
    fn torus_diagram_is_two_loops() {
        let d = enumerate_reduced(&reduced(&[2, 1]), &EnumerateOptions::default()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.edges(0)[0].target, 0);
        assert_eq!(d.edges(0)[1].target, 0);
        let dot = d.to_dot();
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn reducible_seed_is_rejected() {
        assert!(matches!(
            enumerate_reduced(&reduced(&[1, 3, 2]), &EnumerateOptions::default()),
            Err(ClassError::Perm(PermError::Reducible(_)))
        ));
    }

    #[test]
    fn budget_aborts() {
        let opts = EnumerateOptions {
            budget: 5,
            ..Default::default()
        };
        match enumerate_reduced(&reduced(&[4, 3, 2, 1]), &opts) {
            Err(ClassError::BudgetExceeded {
                budget: 5,
                discovered,
            }) => assert!(discovered > 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schedules_agree() {
        let seed = reduced(&[9, 1, 4, 3, 2, 5, 8, 7, 6]);
        let [seq, par] = both_modes();
        let a = enumerate_labeled(&seed.embed(), &seq).unwrap();
        let b = enumerate_labeled(&seed.embed(), &par).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn vertex_order_is_layered_and_sorted() {
        let d =
            enumerate_reduced(&reduced(&[5, 4, 3, 2, 1]), &EnumerateOptions::default()).unwrap();
        // recompute BFS distances from the seed
        let mut dist = vec![usize::MAX; d.len()];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for e in d.edges(v) {
                let t = e.target as usize;
                if dist[t] == usize::MAX {
                    dist[t] = dist[v] + 1;
                    queue.push_back(t);
                }
            }
        }
        for v in 1..d.len() {
            assert!(
                (dist[v - 1], d.state(v - 1)) < (dist[v], d.state(v)),
                "vertices {} and {v} out of order",
                v - 1
            );
        }
    }

    #[test]
    fn regular_and_strongly_connected() {
        for w in [&[4, 3, 2, 1][..], &[5, 3, 2, 4, 1], &[6, 5, 4, 3, 2, 1]] {
            let seed = reduced(w);
            for diag in [
                enumerate_reduced(&seed, &EnumerateOptions::default()).unwrap(),
                enumerate_labeled(&seed.embed(), &EnumerateOptions::default()).unwrap(),
            ] {
                assert_eq!(diag.edge_count(), 2 * diag.len());
                assert!(diag.in_degrees().iter().all(|&k| k == 2));
                let all: HashSet<_> = diag.states().iter().cloned().collect();
                for v in [diag.len() / 3, diag.len() - 1] {
                    let again = match diag.mode() {
                        DiagramMode::Reduced => {
                            enumerate_reduced(&diag.reduced(v), &EnumerateOptions::default())
                        }
                        DiagramMode::Labeled => {
                            enumerate_labeled(&diag.labeled(v), &EnumerateOptions::default())
                        }
                    }
                    .unwrap();
                    let set: HashSet<_> = again.states().iter().cloned().collect();
                    assert_eq!(set, all);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let seed = LabeledPermutation::parse("0 2 3 1 4 / 4 3 2 1 0").unwrap();
        for mode in [DiagramMode::Reduced, DiagramMode::Labeled] {
            let diag = enumerate_class(&seed, mode, &EnumerateOptions::default()).unwrap();
            let json = diag.to_json();
            let back = RauzyDiagram::from_json(&json).unwrap();
            assert_eq!(back, diag);
            assert_eq!(back.to_json(), json);
        }
    }

    #[test]
    fn json_schema_fields() {
        let diag = enumerate_reduced(&reduced(&[2, 1]), &EnumerateOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&diag.to_json()).unwrap();
        assert_eq!(v["mode"], "reduced");
        assert_eq!(v["start"], "r:2,1");
        assert_eq!(v["vertices"][0]["top"], "1 2");
        assert_eq!(v["vertices"][0]["bottom"], "2 1");
        assert_eq!(v["edges"][0]["move"], "top");
        assert_eq!(v["edges"][0]["winner"], "2");
        assert_eq!(v["edges"][0]["looser"], "1");
        assert_eq!(v["edges"][1]["move"], "bottom");
        assert_eq!(v["edges"][1]["winner"], "1");
    }

    #[test]
    fn malformed_json_is_rejected() {
        let diag = enumerate_reduced(&reduced(&[3, 2, 1]), &EnumerateOptions::default()).unwrap();
        let json = diag.to_json().replace("\"r:3,2,1\"", "\"r:1,2,3\"");
        assert!(matches!(
            RauzyDiagram::from_json(&json),
            Err(ClassError::Malformed(_))
        ));
    }

    #[test]
    fn dot_for_tau4() {
        let diag =
            enumerate_reduced(&reduced(&[4, 3, 2, 1]), &EnumerateOptions::default()).unwrap();
        let dot = diag.to_dot();
        assert_eq!(dot.matches("[label=\"1 2 3 4\\n").count(), 7);
        assert_eq!(dot.matches(" -> ").count(), 14);
        assert!(dot.contains("\"r:4,3,2,1\" -> \"r:4,1,3,2\" [label=\"t:4\"];"));
        assert!(dot.contains("\"r:4,3,2,1\" -> \"r:2,4,3,1\" [label=\"b:1\"];"));
    }

    #[test]
    fn nine_interval_ratio() {
        let seed = reduced(&[9, 1, 4, 3, 2, 5, 8, 7, 6]);
        let sizes = class_sizes(&seed, &EnumerateOptions::default()).unwrap();
        assert_eq!(
            sizes,
            ClassSizes {
                reduced: 1255,
                labeled: 30120
            }
        );
        assert_eq!(sizes.ratio(), Rational::from_integer(24));
    }
}
