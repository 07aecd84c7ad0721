//! Treewidth, twin-width and planarity certificates: validators and
//! desk-scale brute-force finders.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::recognize::recognize_chordal;
use super::FamilyError;
use crate::graph::{EdgeColor, Graph, GraphBuilder, VertexSet};

pub const TW_BRUTE_MAX_N: usize = 10;
pub const TWW_BRUTE_MAX_N: usize = 8;

/// Merges `(u, v, w)`: `u` and `v` become the fresh vertex `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionSequence {
    pub merges: Vec<(usize, usize, usize)>,
    pub declared_width: usize,
}

/// Per-vertex cyclic order of neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub rotation: Vec<Vec<usize>>,
}

/// Graph with black and red edges over growable, sparse vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trigraph {
    pub adj: BTreeMap<usize, BTreeSet<usize>>,
    pub red: BTreeSet<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Trigraph {
    pub fn from_graph(g: &Graph) -> Self {
        let adj = g.vertices().map(|v| (v, g.neighbors(v).iter().collect())).collect();
        Trigraph { adj, red: g.red_edges().collect() }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn is_red(&self, u: usize, v: usize) -> bool {
        self.red.contains(&key(u, v))
    }

    pub fn black_neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.adj[&v].iter().copied().filter(|&w| !self.is_red(v, w)).collect()
    }

    pub fn red_degree(&self, v: usize) -> usize {
        self.adj[&v].iter().filter(|&&w| self.is_red(v, w)).count()
    }

    pub fn max_red_degree(&self) -> usize {
        self.adj.keys().map(|&v| self.red_degree(v)).max().unwrap_or(0)
    }

    pub fn remove_vertex(&mut self, v: usize) {
        if let Some(nb) = self.adj.remove(&v) {
            for w in nb {
                self.adj.get_mut(&w).unwrap().remove(&v);
                self.red.remove(&key(v, w));
            }
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, color: EdgeColor) {
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        if color == EdgeColor::Red {
            self.red.insert(key(u, v));
        } else {
            self.red.remove(&key(u, v));
        }
    }

    /// New edges of `w` after merging `u` and `v`: black exactly towards
    /// vertices that had a black edge to both.
    pub fn merged_edges(&self, u: usize, v: usize) -> Vec<(usize, EdgeColor)> {
        let nu = &self.adj[&u];
        let nv = &self.adj[&v];
        nu.union(nv)
            .copied()
            .filter(|&x| x != u && x != v)
            .map(|x| {
                let black_both = nu.contains(&x)
                    && nv.contains(&x)
                    && !self.is_red(u, x)
                    && !self.is_red(v, x);
                (x, if black_both { EdgeColor::Black } else { EdgeColor::Red })
            })
            .collect()
    }

    pub fn contract(&mut self, u: usize, v: usize, w: usize) {
        let edges = self.merged_edges(u, v);
        self.remove_vertex(u);
        self.remove_vertex(v);
        self.adj.insert(w, BTreeSet::new());
        for (x, c) in edges {
            self.add_edge(w, x, c);
        }
    }
}

/// Replays `seq` on `g`; `Err` carries a human-readable reason.
pub fn check_contraction_sequence(g: &Graph, seq: &ContractionSequence) -> Result<(), String> {
    let k = seq.declared_width;
    let mut t = Trigraph::from_graph(g);
    if t.max_red_degree() > k {
        return Err(format!("input red degree exceeds width {k}"));
    }
    let mut next = g.n();
    for (step, &(u, v, w)) in seq.merges.iter().enumerate() {
        if u == v || !t.contains(u) || !t.contains(v) {
            return Err(format!("step {step}: ({u}, {v}) is not a pair of live vertices"));
        }
        if w != next {
            return Err(format!("step {step}: merged id {w} should be {next}"));
        }
        next += 1;
        t.contract(u, v, w);
        let red = t.max_red_degree();
        if red > k {
            return Err(format!("step {step}: red degree {red} exceeds width {k}"));
        }
    }
    if t.adj.len() > 1 {
        return Err(format!("sequence ends with {} vertices", t.adj.len()));
    }
    Ok(())
}

pub fn validate_contraction_sequence(g: &Graph, seq: &ContractionSequence) -> bool {
    check_contraction_sequence(g, seq).is_ok()
}

/// Largest clique of a chordal graph from a perfect elimination order.
pub fn chordal_clique_number(h: &Graph, peo: &[usize]) -> usize {
    let mut pos = vec![0; h.n()];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    peo.iter()
        .map(|&v| 1 + h.neighbors(v).iter().filter(|&w| pos[w] > pos[v]).count())
        .max()
        .unwrap_or(0)
}

pub fn check_tw_certificate(g: &Graph, completion: &Graph, k: usize) -> Result<(), String> {
    if g.n() != completion.n() {
        return Err(format!("completion has {} vertices, graph has {}", completion.n(), g.n()));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !completion.has_edge(u, v)) {
        return Err(format!("edge {u}-{v} missing from completion"));
    }
    let peo = recognize_chordal(completion).ok_or("completion is not chordal")?;
    let omega = chordal_clique_number(completion, &peo);
    if omega > k + 1 {
        return Err(format!("completion has a clique of size {omega} > {}", k + 1));
    }
    Ok(())
}

pub fn validate_tw_certificate(g: &Graph, completion: &Graph, k: usize) -> bool {
    check_tw_certificate(g, completion, k).is_ok()
}

/// Completion obtained by eliminating vertices in `order`.
pub fn fill_in(g: &Graph, order: &[usize]) -> Graph {
    let n = g.n();
    let mut adj: Vec<VertexSet> = g.vertices().map(|v| g.neighbors(v).clone()).collect();
    let mut gone = VertexSet::new(n);
    for &v in order {
        let later = adj[v].difference(&gone);
        for a in later.iter() {
            for b in later.iter().filter(|&b| b > a) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        gone.insert(v);
    }
    let mut b = GraphBuilder::new(n);
    for v in 0..n {
        for w in adj[v].iter().filter(|&w| w > v) {
            b.add_edge(v, w).unwrap();
        }
    }
    b.build()
}

/// Exact treewidth by dynamic programming over eliminated subsets; returns
/// a completion of width at most `k` when one exists.
pub fn brute_force_tw_certificate(g: &Graph, k: usize) -> Result<Option<Graph>, FamilyError> {
    let n = g.n();
    if n > TW_BRUTE_MAX_N {
        return Err(FamilyError::Oversize { family: "treewidth search", param: n, limit: TW_BRUTE_MAX_N });
    }
    // degree of v when eliminated after the set `s`: vertices outside s ∪ {v}
    // reachable from v through s
    let q = |s: u32, v: usize| -> usize {
        let mut seen = 1u32 << v;
        let mut stack = vec![v];
        let mut count = 0;
        while let Some(x) = stack.pop() {
            for w in g.neighbors(x).iter() {
                if seen >> w & 1 == 1 {
                    continue;
                }
                seen |= 1 << w;
                if s >> w & 1 == 1 {
                    stack.push(w);
                } else {
                    count += 1;
                }
            }
        }
        count
    };
    let full = (1u32 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    let mut choice = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        for v in (0..n).filter(|&v| s >> v & 1 == 1) {
            let rest = s & !(1 << v);
            let cost = best[rest as usize].max(q(rest, v));
            if cost < best[s as usize] {
                best[s as usize] = cost;
                choice[s as usize] = v;
            }
        }
    }
    if n > 0 && best[full as usize] > k {
        return Ok(None);
    }
    let mut order = Vec::new();
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize];
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(Some(fill_in(g, &order)))
}

/// Partition-state search for a contraction sequence of width at most `k`.
pub fn brute_force_tww_sequence(g: &Graph, k: usize) -> Result<Option<ContractionSequence>, FamilyError> {
    let n = g.n();
    if n > TWW_BRUTE_MAX_N {
        return Err(FamilyError::Oversize { family: "twin-width search", param: n, limit: TWW_BRUTE_MAX_N });
    }
    fn search(
        t: &Trigraph,
        parts: &BTreeMap<usize, u32>,
        next: usize,
        k: usize,
        dead: &mut HashSet<Vec<u32>>,
        out: &mut Vec<(usize, usize, usize)>,
    ) -> bool {
        if t.adj.len() <= 1 {
            return true;
        }
        let mut state: Vec<u32> = parts.values().copied().collect();
        state.sort_unstable();
        if dead.contains(&state) {
            return false;
        }
        let ids: Vec<usize> = t.adj.keys().copied().collect();
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                let mut child = t.clone();
                child.contract(u, v, next);
                if child.max_red_degree() > k {
                    continue;
                }
                let mut child_parts = parts.clone();
                let merged = child_parts.remove(&u).unwrap() | child_parts.remove(&v).unwrap();
                child_parts.insert(next, merged);
                out.push((u, v, next));
                if search(&child, &child_parts, next + 1, k, dead, out) {
                    return true;
                }
                out.pop();
            }
        }
        dead.insert(state);
        false
    }
    let t = Trigraph::from_graph(g);
    if t.max_red_degree() > k {
        return Ok(None);
    }
    let parts = g.vertices().map(|v| (v, 1u32 << v)).collect();
    let mut merges = Vec::new();
    let found = search(&t, &parts, n, k, &mut HashSet::new(), &mut merges);
    Ok(found.then_some(ContractionSequence { merges, declared_width: k }))
}

/// Repeatedly contracts the pair giving the smallest maximum red degree
/// (smallest ids on ties). Returns the sequence with its achieved width.
pub fn greedy_tww_sequence(g: &Graph) -> ContractionSequence {
    let mut t = Trigraph::from_graph(g);
    let mut width = t.max_red_degree();
    let mut next = g.n();
    let mut merges = Vec::new();
    while t.adj.len() > 1 {
        let ids: Vec<usize> = t.adj.keys().copied().collect();
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                let mut child = t.clone();
                child.contract(u, v, next);
                let red = child.max_red_degree();
                let score = (red, child.red.len());
                if best.is_none_or(|(r, m, _, _)| score < (r, m)) {
                    best = Some((red, child.red.len(), u, v));
                }
            }
        }
        let (red, _, u, v) = best.unwrap();
        t.contract(u, v, next);
        merges.push((u, v, next));
        width = width.max(red);
        next += 1;
    }
    ContractionSequence { merges, declared_width: width }
}

pub fn check_rotation_planarity(g: &Graph, rs: &RotationSystem) -> Result<(), String> {
    let n = g.n();
    if rs.rotation.len() != n {
        return Err(format!("rotation covers {} vertices, graph has {n}", rs.rotation.len()));
    }
    for (v, cyc) in rs.rotation.iter().enumerate() {
        let listed: BTreeSet<usize> = cyc.iter().copied().collect();
        if listed.len() != cyc.len() || listed != g.neighbors(v).iter().collect() {
            return Err(format!("rotation at {v} is not a cyclic order of its neighbours"));
        }
    }
    let succ = |w: usize, u: usize| -> usize {
        let cyc = &rs.rotation[w];
        let i = cyc.iter().position(|&x| x == u).unwrap();
        cyc[(i + 1) % cyc.len()]
    };
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut faces_of = vec![0usize; n];
    let comp_id = {
        let mut id = vec![0; n];
        for (c, comp) in g.components().iter().enumerate() {
            for v in comp.iter() {
                id[v] = c;
            }
        }
        id
    };
    for (u, w) in g.edges().flat_map(|(a, b)| [(a, b), (b, a)]) {
        if used.contains(&(u, w)) {
            continue;
        }
        let (mut a, mut b) = (u, w);
        while used.insert((a, b)) {
            let c = succ(b, a);
            a = b;
            b = c;
        }
        faces_of[comp_id[u]] += 1;
    }
    for (c, comp) in g.components().iter().enumerate() {
        let verts = comp.len() as i64;
        let edges = comp.iter().map(|v| g.degree(v)).sum::<usize>() as i64 / 2;
        let faces = if edges == 0 { 1 } else { faces_of[c] as i64 };
        if verts - edges + faces != 2 {
            return Err(format!(
                "component {c}: V - E + F = {verts} - {edges} + {faces} != 2"
            ));
        }
    }
    Ok(())
}

pub fn validate_rotation_planarity(g: &Graph, rs: &RotationSystem) -> bool {
    check_rotation_planarity(g, rs).is_ok()
}
