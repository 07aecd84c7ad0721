//! Rewrite engine on (X, Y)-instances.
//!
//! A driver repeatedly picks a rule for the current state. Each rule
//! records the exact deltas that turn the parent into the child and the data
//! needed to lift a child solution `(D', P')` back to the parent. Once the
//! empty set dominates, the engine walks the trace backwards, lifting and
//! re-checking the pair against every intermediate state.

mod dh;
mod planar;
pub mod rules;
mod treewidth;
mod twinwidth;
mod twodeg;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dh::{run_distance_hereditary, DistanceHereditaryDriver};
pub use planar::{run_planar, run_planar_graph, PlanarDriver, PLANAR_DEGREE_CAP};
pub use treewidth::{run_treewidth, TreewidthDriver};
pub use twinwidth::{run_twinwidth, TwinwidthDriver};
pub use twodeg::{run_twodeg, x_weight, TwodegDriver, TWODEG_FACTOR};

use crate::families::Trigraph;
use crate::graph::{EdgeColor, GraphBuilder, VertexSet};
use crate::instance::{Mode, XYInstance};
use crate::oracles::{check_xy_dominating, check_xy_packing};
use crate::ratio::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    Planar,
    Treewidth,
    Twodeg,
    Twinwidth,
    Dh,
    Atfree,
    Convex,
    Unitdisk,
    Generic,
}

impl std::str::FromStr for ClassTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| format!("unknown class {s:?}"))
    }
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).expect("class tags serialize");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    R0Isolated,
    R1XElim,
    R2YEdge,
    R3LowDegree,
    R4YPendant,
    TreewidthClassStep,
    TwodegOneOutsideWithX,
    TwodegPendant,
    TwodegNearX,
    TwodegExtraXEdge,
    TwodegXEdge,
    TwodegDegreeTwo,
    TwodegMainSingle,
    TwodegGadget,
    TwinwidthClaim,
    TwinwidthContract,
    DhYPrune,
    DhPendant,
    DhTwin,
    ConvexSwap,
}

/// How a child solution lifts to the parent. Applied in field order:
/// renames, drops from `D`, additions, then conditional repairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unwind {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rename: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub drop_d: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub add_d: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub add_p: Vec<usize>,
    /// `(target, dominator)`: add `dominator` when `target` is not yet
    /// satisfied in the parent.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub repair: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed_vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed_edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub added_vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub added_edges: Vec<(usize, usize, EdgeColor)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub x_added: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub x_removed: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub y_added: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub y_removed: Vec<usize>,
    pub unwind: Unwind,
    /// Rule-specific data for readers of the trace.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub payload: BTreeMap<String, Vec<usize>>,
}

impl RuleApplication {
    pub fn new(rule: RuleId) -> Self {
        RuleApplication {
            rule,
            removed_vertices: Vec::new(),
            removed_edges: Vec::new(),
            added_vertices: Vec::new(),
            added_edges: Vec::new(),
            x_added: Vec::new(),
            x_removed: Vec::new(),
            y_added: Vec::new(),
            y_removed: Vec::new(),
            unwind: Unwind::default(),
            payload: BTreeMap::new(),
        }
    }

    pub fn note(mut self, key: &str, ids: impl IntoIterator<Item = usize>) -> Self {
        self.payload.insert(key.to_string(), ids.into_iter().collect());
        self
    }

    /// Child state. Deleting a vertex also drops its edges and its X/Y
    /// membership; every other change must be listed explicitly.
    pub fn apply(&self, parent: &WorkState) -> Result<WorkState, EngineError> {
        let bad = |msg: String| EngineError::BadDelta { rule: self.rule, reason: msg };
        let mut s = parent.clone();
        for &(u, v) in &self.removed_edges {
            if !s.has_edge(u, v) {
                return Err(bad(format!("edge {u}-{v} absent")));
            }
            s.graph.adj.get_mut(&u).unwrap().remove(&v);
            s.graph.adj.get_mut(&v).unwrap().remove(&u);
            s.graph.red.remove(&(u.min(v), u.max(v)));
        }
        for &v in &self.removed_vertices {
            if !s.graph.contains(v) {
                return Err(bad(format!("vertex {v} absent")));
            }
            s.graph.remove_vertex(v);
            s.x.remove(&v);
            s.y.remove(&v);
        }
        for &v in &self.added_vertices {
            if v != s.next_fresh {
                return Err(bad(format!("fresh vertex {v} should be {}", s.next_fresh)));
            }
            s.graph.adj.insert(v, BTreeSet::new());
            s.next_fresh += 1;
        }
        for &(u, v, c) in &self.added_edges {
            if u == v || !s.graph.contains(u) || !s.graph.contains(v) || s.has_edge(u, v) {
                return Err(bad(format!("cannot add edge {u}-{v}")));
            }
            s.graph.add_edge(u, v, c);
        }
        for &v in &self.x_removed {
            if !s.x.remove(&v) {
                return Err(bad(format!("{v} not in X")));
            }
        }
        for &v in &self.x_added {
            if !s.graph.contains(v) || !s.x.insert(v) {
                return Err(bad(format!("cannot add {v} to X")));
            }
        }
        for &v in &self.y_removed {
            if !s.y.remove(&v) {
                return Err(bad(format!("{v} not in Y")));
            }
        }
        for &v in &self.y_added {
            if !s.graph.contains(v) || !s.y.insert(v) {
                return Err(bad(format!("cannot add {v} to Y")));
            }
        }
        Ok(s)
    }
}

/// Instance over sparse, growable ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkState {
    pub graph: Trigraph,
    pub x: BTreeSet<usize>,
    pub y: BTreeSet<usize>,
    pub mode: Mode,
    pub next_fresh: usize,
}

impl WorkState {
    pub fn from_instance(inst: &XYInstance) -> Self {
        WorkState {
            graph: Trigraph::from_graph(&inst.graph),
            x: inst.x.iter().collect(),
            y: inst.y.iter().collect(),
            mode: inst.mode,
            next_fresh: inst.n(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.graph.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.graph.adj.keys().copied()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.graph.adj[&v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.adj[&v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn black_neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.graph.black_neighbors(v)
    }

    /// `N[X]` restricted to live vertices.
    pub fn closed_x(&self) -> BTreeSet<usize> {
        let mut out = self.x.clone();
        for &x in &self.x {
            out.extend(self.neighbors(x));
        }
        out
    }

    /// Ids at exactly distance two from `v`.
    pub fn second_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        let first = self.neighbors(v);
        let mut out = BTreeSet::new();
        for &a in first {
            for &b in self.neighbors(a) {
                if b != v && !first.contains(&b) {
                    out.insert(b);
                }
            }
        }
        out
    }

    /// Whether `v` meets the mode's domination requirement for `d`.
    pub fn satisfied(&self, d: &BTreeSet<usize>, v: usize) -> bool {
        let nb = self.neighbors(v);
        let in_closed = |s: &BTreeSet<usize>| s.contains(&v) || nb.iter().any(|w| s.contains(w));
        if self.y.contains(&v) || self.x.contains(&v) {
            return true;
        }
        let plain = in_closed(d) || nb.iter().any(|w| self.x.contains(w));
        match self.mode {
            Mode::Plain => plain,
            Mode::Total if nb.is_empty() => d.contains(&v),
            Mode::Total => nb.iter().any(|w| d.contains(w)),
            Mode::Black => {
                let black = self.black_neighbors(v);
                if black.is_empty() {
                    plain
                } else {
                    black.iter().any(|w| d.contains(w))
                }
            }
        }
    }

    /// The empty set already dominates.
    pub fn is_terminal(&self) -> bool {
        let empty = BTreeSet::new();
        self.vertices().all(|v| self.satisfied(&empty, v))
    }

    /// Dense copy; `ids[i]` is the state id of dense vertex `i`.
    pub fn to_instance(&self) -> (XYInstance, Vec<usize>) {
        let ids: Vec<usize> = self.vertices().collect();
        let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut b = GraphBuilder::new(n);
        for (&u, nb) in &self.graph.adj {
            for &v in nb.iter().filter(|&&v| v > u) {
                let color = if self.graph.is_red(u, v) { EdgeColor::Red } else { EdgeColor::Black };
                b.add_colored_edge(index[&u], index[&v], color).expect("state edges are simple");
            }
        }
        let dense = |s: &BTreeSet<usize>| VertexSet::from_iter(n, s.iter().map(|v| index[v]));
        let inst = XYInstance { graph: b.build(), x: dense(&self.x), y: dense(&self.y), mode: self.mode };
        (inst, ids)
    }

    /// Dense set for `ids` produced by [`Self::to_instance`]; `None` when
    /// some member is not a live vertex.
    pub fn dense_set(ids: &[usize], s: &BTreeSet<usize>) -> Option<VertexSet> {
        let mut out = VertexSet::new(ids.len());
        for v in s {
            out.insert(ids.binary_search(v).ok()?);
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("no rule applies to a nonempty instance: {remaining}")]
    Stalled { remaining: String },
    #[error("certificate rejected: {0}")]
    CertificateInvalid(String),
    #[error("contraction sequence rejected: {0}")]
    SequenceInvalid(String),
    #[error("input is outside the class: {0}")]
    NotInClass(String),
    #[error("unwind step {step} ({rule:?}) broke the budget: |D| = {d}, |P| = {p}")]
    GuaranteeViolated { step: usize, rule: RuleId, d: usize, p: usize },
    #[error("unwind step {step} ({rule:?}) produced an invalid pair: {reason}")]
    UnwindInvalid { step: usize, rule: RuleId, reason: String },
    #[error("rule {rule:?} has inconsistent deltas: {reason}")]
    BadDelta { rule: RuleId, reason: String },
}

/// Engine error with the trace recorded up to the failure.
#[derive(Debug, Clone, Error)]
#[error("{error}")]
pub struct EngineFailure {
    pub error: EngineError,
    pub trace: Vec<RuleApplication>,
}

impl From<EngineError> for EngineFailure {
    fn from(error: EngineError) -> Self {
        EngineFailure { error, trace: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub class: ClassTag,
    pub mode: Mode,
    #[serde(with = "ratio::as_string")]
    pub constant: Rational,
    /// Additive slack in the certified bound `|D| <= constant * |P| + additive`.
    #[serde(default)]
    pub additive: u64,
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "P")]
    pub p: Vec<usize>,
    #[serde(with = "ratio::opt_as_string")]
    pub ratio: Option<Rational>,
    #[serde(default)]
    pub trace: Vec<RuleApplication>,
}

impl WitnessPair {
    pub fn new(
        class: ClassTag,
        mode: Mode,
        constant: Rational,
        additive: u64,
        d: impl IntoIterator<Item = usize>,
        p: impl IntoIterator<Item = usize>,
        trace: Vec<RuleApplication>,
    ) -> Self {
        let d: Vec<usize> = d.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let p: Vec<usize> = p.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let ratio = ratio::achieved(d.len(), p.len());
        WitnessPair { class, mode, constant, additive, d, p, ratio, trace }
    }

    pub fn d_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.d.iter().copied())
    }

    pub fn p_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.p.iter().copied())
    }

    pub fn within_budget(&self) -> bool {
        Rational::from_integer(self.d.len() as u64)
            <= self.constant * Rational::from_integer(self.p.len() as u64)
                + Rational::from_integer(self.additive)
    }

    /// Re-derives validity from the instance alone; `Err` explains why not.
    pub fn check(&self, inst: &XYInstance) -> Result<(), String> {
        let n = inst.n();
        if let Some(v) = self.d.iter().chain(&self.p).find(|&&v| v >= n) {
            return Err(format!("vertex {v} out of range"));
        }
        if inst.mode != self.mode {
            return Err(format!("witness mode {} differs from instance mode {}", self.mode, inst.mode));
        }
        if !check_xy_dominating(inst, &self.d_set(n)) {
            return Err("D is not dominating".into());
        }
        if !check_xy_packing(inst, &self.p_set(n)) {
            return Err("P is not a packing".into());
        }
        if !self.within_budget() {
            return Err(format!(
                "|D| = {} exceeds {} * {} + {}",
                self.d.len(),
                ratio::format_ratio(&self.constant),
                self.p.len(),
                self.additive
            ));
        }
        if self.ratio != ratio::achieved(self.d.len(), self.p.len()) {
            return Err("recorded ratio does not match |D| / |P|".into());
        }
        Ok(())
    }
}

pub trait Driver {
    fn class(&self) -> ClassTag;
    fn mode(&self) -> Mode;
    fn constant(&self) -> Rational;
    /// Bound the lifted pair must meet on `parent` after every unwind.
    fn budget_ok(&self, _parent: &WorkState, d: usize, p: usize) -> bool {
        Rational::from_integer(d as u64) <= self.constant() * Rational::from_integer(p as u64)
    }
    /// Next rule for `state`, or `None` when nothing applies.
    fn step(&mut self, state: &WorkState) -> Result<Option<RuleApplication>, EngineError>;
}

/// A finished run with every intermediate state, root first.
#[derive(Debug, Clone)]
pub struct Run {
    pub witness: WitnessPair,
    pub states: Vec<WorkState>,
}

fn describe(state: &WorkState) -> String {
    let (inst, ids) = state.to_instance();
    let pick = |s: &VertexSet| s.iter().map(|i| ids[i]).collect::<Vec<_>>();
    let edges: Vec<(usize, usize)> = inst.graph.edges().map(|(a, b)| (ids[a], ids[b])).collect();
    format!("vertices {:?}, edges {:?}, X {:?}, Y {:?}", ids, edges, pick(&inst.x), pick(&inst.y))
}

/// Lifts `(d, p)` across one rule application onto `parent`.
pub fn lift(
    app: &RuleApplication,
    parent: &WorkState,
    d: &BTreeSet<usize>,
    p: &BTreeSet<usize>,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let u = &app.unwind;
    let rename = |s: &BTreeSet<usize>| -> BTreeSet<usize> {
        s.iter()
            .map(|&v| u.rename.iter().find(|&&(from, _)| from == v).map_or(v, |&(_, to)| to))
            .collect()
    };
    let mut d = rename(d);
    let mut p = rename(p);
    for v in &u.drop_d {
        d.remove(v);
    }
    d.extend(&u.add_d);
    p.extend(&u.add_p);
    for &(target, dominator) in &u.repair {
        if !parent.satisfied(&d, target) {
            d.insert(dominator);
        }
    }
    (d, p)
}

pub fn run_driver<Dr: Driver>(inst: &XYInstance, driver: &mut Dr) -> Result<Run, EngineFailure> {
    let mut states = vec![WorkState::from_instance(inst)];
    let mut trace: Vec<RuleApplication> = Vec::new();
    let fail = |error: EngineError, trace: &[RuleApplication]| EngineFailure { error, trace: trace.to_vec() };
    loop {
        let current = states.last().unwrap();
        if current.is_terminal() {
            break;
        }
        let app = match driver.step(current) {
            Ok(Some(app)) => app,
            Ok(None) => return Err(fail(EngineError::Stalled { remaining: describe(current) }, &trace)),
            Err(e) => return Err(fail(e, &trace)),
        };
        let child = app.apply(current).map_err(|e| fail(e, &trace))?;
        trace.push(app);
        states.push(child);
    }
    let (mut d, mut p) = (BTreeSet::new(), BTreeSet::new());
    for step in (0..trace.len()).rev() {
        let app = &trace[step];
        let parent = &states[step];
        (d, p) = lift(app, parent, &d, &p);
        verify_step(parent, &d, &p, step, app.rule, |s, d, p| driver.budget_ok(s, d, p)).map_err(|e| fail(e, &trace))?;
    }
    let witness = WitnessPair::new(driver.class(), driver.mode(), driver.constant(), 0, d, p, trace);
    Ok(Run { witness, states })
}

fn verify_step(
    parent: &WorkState,
    d: &BTreeSet<usize>,
    p: &BTreeSet<usize>,
    step: usize,
    rule: RuleId,
    budget: impl Fn(&WorkState, usize, usize) -> bool,
) -> Result<(), EngineError> {
    let invalid = |reason: &str| EngineError::UnwindInvalid { step, rule, reason: reason.to_string() };
    let (inst, ids) = parent.to_instance();
    let dd = WorkState::dense_set(&ids, d).ok_or_else(|| invalid("D names a vertex absent from the parent"))?;
    let pp = WorkState::dense_set(&ids, p).ok_or_else(|| invalid("P names a vertex absent from the parent"))?;
    if !check_xy_dominating(&inst, &dd) {
        return Err(invalid("D does not dominate the parent"));
    }
    if !check_xy_packing(&inst, &pp) {
        return Err(invalid("P is not a packing of the parent"));
    }
    if !budget(parent, d.len(), p.len()) {
        return Err(EngineError::GuaranteeViolated { step, rule, d: d.len(), p: p.len() });
    }
    Ok(())
}

/// Re-applies `trace` from the root instance, returning every state.
pub fn replay(inst: &XYInstance, trace: &[RuleApplication]) -> Result<Vec<WorkState>, EngineError> {
    let mut states = vec![WorkState::from_instance(inst)];
    for app in trace {
        let next = app.apply(states.last().unwrap())?;
        states.push(next);
    }
    Ok(states)
}

/// Re-derives `(D, P)` from a trace by replaying and lifting.
pub fn unwind_trace(
    inst: &XYInstance,
    trace: &[RuleApplication],
) -> Result<(BTreeSet<usize>, BTreeSet<usize>), EngineError> {
    let states = replay(inst, trace)?;
    let (mut d, mut p) = (BTreeSet::new(), BTreeSet::new());
    for step in (0..trace.len()).rev() {
        (d, p) = lift(&trace[step], &states[step], &d, &p);
    }
    Ok((d, p))
}

/// Replays `trace` and re-checks the lifted pair against both checkers and
/// `budget` on every parent state, independently of any driver.
pub fn audit(
    inst: &XYInstance,
    trace: &[RuleApplication],
    budget: impl Fn(&WorkState, usize, usize) -> bool,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>), EngineError> {
    let states = replay(inst, trace)?;
    if !states.last().unwrap().is_terminal() {
        return Err(EngineError::Stalled { remaining: describe(states.last().unwrap()) });
    }
    let (mut d, mut p) = (BTreeSet::new(), BTreeSet::new());
    for step in (0..trace.len()).rev() {
        (d, p) = lift(&trace[step], &states[step], &d, &p);
        verify_step(&states[step], &d, &p, step, trace[step].rule, &budget)?;
    }
    Ok((d, p))
}
