//! Checkers and exact solvers for (X, Y)-domination in all three modes and
//! for (X, Y)-packings.
//!
//! Every domination mode reduces to a hitting-set problem: each vertex that
//! still needs coverage contributes the set of vertices whose membership in
//! `D` would satisfy it. The exact solver is a branch-and-bound over those
//! sets; packing is maximum independent set in the distance-2 conflict graph.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::instance::{Mode, XYInstance};

pub const DEFAULT_MAX_N: usize = 64;
pub const MAX_N_ENV: &str = "DOMPACK_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the limit of {limit} (raise with {MAX_N_ENV})")]
    Oversize { n: usize, limit: usize },
    #[error("no dominating set satisfies the mode's constraints")]
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub value: usize,
    #[serde(serialize_with = "ser_ids")]
    pub witness: VertexSet,
    pub nodes_explored: u64,
}

fn ser_ids<S: serde::Serializer>(s: &VertexSet, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter())
}

/// Size limit from the environment, falling back to [`DEFAULT_MAX_N`].
pub fn max_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::Oversize { n, limit })
    } else {
        Ok(())
    }
}

pub fn check_xy_dominating(inst: &XYInstance, d: &VertexSet) -> bool {
    let g = &inst.graph;
    let free = d.union(&inst.x);
    let covered = g.closed_neighborhood(&free).union(&inst.y);
    if covered.len() != g.n() {
        return false;
    }
    let exempt = inst.x.union(&inst.y);
    match inst.mode {
        Mode::Plain => true,
        Mode::Total => g
            .vertices()
            .filter(|&v| !exempt.contains(v) && g.degree(v) > 0)
            .all(|v| !g.neighbors(v).is_disjoint(d)),
        Mode::Black => g.vertices().filter(|&v| !exempt.contains(v)).all(|v| {
            let black = g.black_neighbors(v);
            black.is_empty() || !black.is_disjoint(d)
        }),
    }
}

pub fn check_xy_packing(inst: &XYInstance, p: &VertexSet) -> bool {
    let g = &inst.graph;
    if !p.is_disjoint(&inst.y) || !p.is_disjoint(&g.closed_neighborhood(&inst.x)) {
        return false;
    }
    // closed neighbourhoods pairwise disjoint <=> pairwise distance >= 3
    let mut seen = g.empty_set();
    for v in p.iter() {
        let ball = g.closed_neighbors(v);
        if !ball.is_disjoint(&seen) {
            return false;
        }
        seen.union_with(&ball);
    }
    true
}

/// For each vertex that still needs coverage, the vertices that would cover
/// it. Ordered by owner id.
pub fn coverage_constraints(inst: &XYInstance) -> Vec<(usize, VertexSet)> {
    let g = &inst.graph;
    let exempt = inst.x.union(&inst.y);
    let pre = g.closed_neighborhood(&inst.x).union(&inst.y);
    g.vertices()
        .filter_map(|v| {
            let need = match inst.mode {
                Mode::Plain => (!pre.contains(v)).then(|| g.closed_neighbors(v)),
                Mode::Total if exempt.contains(v) => None,
                Mode::Total if g.degree(v) == 0 => Some(VertexSet::singleton(g.n(), v)),
                Mode::Total => Some(g.neighbors(v).clone()),
                Mode::Black if exempt.contains(v) => None,
                Mode::Black => {
                    let black = g.black_neighbors(v);
                    if !black.is_empty() {
                        Some(black)
                    } else {
                        (!pre.contains(v)).then(|| g.closed_neighbors(v))
                    }
                }
            };
            need.map(|s| (v, s))
        })
        .collect()
}

/// Minimal bitset interface shared by the single-word fast path and the
/// general [`VertexSet`] path.
trait Bits: Clone {
    fn zero(n: usize) -> Self;
    fn from_set(s: &VertexSet) -> Self;
    fn to_set(&self, n: usize) -> VertexSet;
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn contains(&self, v: usize) -> bool;
    fn and(&self, o: &Self) -> Self;
    fn or_assign(&mut self, o: &Self);
    fn minus(&self, o: &Self) -> Self;
    fn is_empty(&self) -> bool;
    fn intersects(&self, o: &Self) -> bool;
    fn len(&self) -> usize;
    fn first(&self) -> Option<usize>;
    fn ones(&self) -> Vec<usize>;
}

impl Bits for u64 {
    fn zero(_: usize) -> Self {
        0
    }
    fn from_set(s: &VertexSet) -> Self {
        s.as_u64()
    }
    fn to_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.ones())
    }
    fn insert(&mut self, v: usize) {
        *self |= 1 << v;
    }
    fn remove(&mut self, v: usize) {
        *self &= !(1 << v);
    }
    fn contains(&self, v: usize) -> bool {
        self >> v & 1 == 1
    }
    fn and(&self, o: &Self) -> Self {
        self & o
    }
    fn or_assign(&mut self, o: &Self) {
        *self |= o;
    }
    fn minus(&self, o: &Self) -> Self {
        self & !o
    }
    fn is_empty(&self) -> bool {
        *self == 0
    }
    fn intersects(&self, o: &Self) -> bool {
        self & o != 0
    }
    fn len(&self) -> usize {
        self.count_ones() as usize
    }
    fn first(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    fn ones(&self) -> Vec<usize> {
        let mut w = *self;
        let mut out = Vec::with_capacity(w.count_ones() as usize);
        while w != 0 {
            out.push(w.trailing_zeros() as usize);
            w &= w - 1;
        }
        out
    }
}

impl Bits for VertexSet {
    fn zero(n: usize) -> Self {
        VertexSet::new(n)
    }
    fn from_set(s: &VertexSet) -> Self {
        s.clone()
    }
    fn to_set(&self, _: usize) -> VertexSet {
        self.clone()
    }
    fn insert(&mut self, v: usize) {
        VertexSet::insert(self, v);
    }
    fn remove(&mut self, v: usize) {
        VertexSet::remove(self, v);
    }
    fn contains(&self, v: usize) -> bool {
        VertexSet::contains(self, v)
    }
    fn and(&self, o: &Self) -> Self {
        self.intersection(o)
    }
    fn or_assign(&mut self, o: &Self) {
        self.union_with(o);
    }
    fn minus(&self, o: &Self) -> Self {
        self.difference(o)
    }
    fn is_empty(&self) -> bool {
        VertexSet::is_empty(self)
    }
    fn intersects(&self, o: &Self) -> bool {
        !self.is_disjoint(o)
    }
    fn len(&self) -> usize {
        VertexSet::len(self)
    }
    fn first(&self) -> Option<usize> {
        VertexSet::first(self)
    }
    fn ones(&self) -> Vec<usize> {
        self.to_vec()
    }
}

struct HittingSearch<B: Bits> {
    /// `(owner, candidates)` with no constraint a superset of another.
    cons: Vec<(usize, B)>,
    best: usize,
    best_set: B,
    nodes: u64,
}

impl<B: Bits> HittingSearch<B> {
    fn run(&mut self, chosen: &B, count: usize, excluded: &B) {
        self.nodes += 1;
        let mut open: Vec<(usize, usize, B)> = Vec::new();
        for (owner, c) in &self.cons {
            if c.intersects(chosen) {
                continue;
            }
            let avail = c.minus(excluded);
            if avail.is_empty() {
                return;
            }
            open.push((avail.len(), *owner, avail));
        }
        if open.is_empty() {
            if count < self.best {
                self.best = count;
                self.best_set = chosen.clone();
            }
            return;
        }
        open.sort_by_key(|&(len, owner, _)| (len, owner));
        // each pairwise-disjoint open constraint needs its own vertex
        let mut used = open[0].2.clone();
        let mut bound = 1;
        for (_, _, avail) in &open[1..] {
            if !avail.intersects(&used) {
                used.or_assign(avail);
                bound += 1;
            }
        }
        if count + bound >= self.best {
            return;
        }
        let branch = open.swap_remove(0).2;
        let mut excl = excluded.clone();
        for v in branch.ones() {
            let mut next = chosen.clone();
            next.insert(v);
            self.run(&next, count + 1, &excl);
            excl.insert(v);
        }
    }
}

fn solve_hitting<B: Bits>(n: usize, sets: &[(usize, VertexSet)]) -> Result<ExactResult, OracleError> {
    if sets.iter().any(|(_, s)| s.is_empty()) {
        return Err(OracleError::Infeasible);
    }
    let mut cons: Vec<(usize, B)> = Vec::new();
    for (i, (owner, s)) in sets.iter().enumerate() {
        let dominated = sets.iter().enumerate().any(|(j, (_, t))| {
            j != i && t.is_subset(s) && (t != s || j < i)
        });
        if !dominated {
            cons.push((*owner, B::from_set(s)));
        }
    }
    // greedy start: repeatedly take the vertex hitting the most open sets
    let mut greedy = B::zero(n);
    let mut count = 0;
    loop {
        let open: Vec<&B> = cons.iter().map(|(_, c)| c).filter(|c| !c.intersects(&greedy)).collect();
        if open.is_empty() {
            break;
        }
        let v = (0..n)
            .max_by_key(|&v| (open.iter().filter(|c| c.contains(v)).count(), std::cmp::Reverse(v)))
            .unwrap();
        greedy.insert(v);
        count += 1;
    }
    let mut search = HittingSearch { cons, best: count, best_set: greedy, nodes: 0 };
    search.run(&B::zero(n), 0, &B::zero(n));
    Ok(ExactResult { value: search.best, witness: search.best_set.to_set(n), nodes_explored: search.nodes })
}

pub fn exact_domination(inst: &XYInstance) -> Result<ExactResult, OracleError> {
    exact_domination_with_limit(inst, max_n())
}

pub fn exact_domination_with_limit(inst: &XYInstance, limit: usize) -> Result<ExactResult, OracleError> {
    let n = inst.n();
    guard(n, limit)?;
    let sets = coverage_constraints(inst);
    if n <= 64 {
        solve_hitting::<u64>(n, &sets)
    } else {
        solve_hitting::<VertexSet>(n, &sets)
    }
}

struct MisSearch<B: Bits> {
    adj: Vec<B>,
    best: usize,
    best_set: B,
    nodes: u64,
}

impl<B: Bits> MisSearch<B> {
    fn clique_cover(&self, cand: &B) -> usize {
        let mut rest = cand.clone();
        let mut cliques = 0;
        while let Some(v) = rest.first() {
            rest.remove(v);
            let mut grow = self.adj[v].and(&rest);
            while let Some(c) = grow.first() {
                rest.remove(c);
                grow = grow.and(&self.adj[c]);
                grow.remove(c);
            }
            cliques += 1;
        }
        cliques
    }

    fn run(&mut self, cand: B, cur: B, size: usize) {
        self.nodes += 1;
        if cand.is_empty() {
            if size > self.best {
                self.best = size;
                self.best_set = cur;
            }
            return;
        }
        if size + self.clique_cover(&cand) <= self.best {
            return;
        }
        let pivot = cand
            .ones()
            .into_iter()
            .min_by_key(|&v| (self.adj[v].and(&cand).len(), v))
            .unwrap();
        let mut order = vec![pivot];
        order.extend(self.adj[pivot].and(&cand).ones());
        let mut rest = cand;
        for u in order {
            let mut next_cur = cur.clone();
            next_cur.insert(u);
            let mut next = rest.minus(&self.adj[u]);
            next.remove(u);
            self.run(next, next_cur, size + 1);
            rest.remove(u);
        }
    }
}

fn solve_mis<B: Bits>(conflict: &Graph, allowed: &VertexSet) -> ExactResult {
    let n = conflict.n();
    let adj = conflict.vertices().map(|v| B::from_set(conflict.neighbors(v))).collect();
    let mut search = MisSearch { adj, best: 0, best_set: B::zero(n), nodes: 0 };
    search.run(B::from_set(allowed), B::zero(n), 0);
    ExactResult { value: search.best, witness: search.best_set.to_set(n), nodes_explored: search.nodes }
}

/// Vertices eligible for an (X, Y)-packing: `V ∖ (N[X] ∪ Y)`.
pub fn packing_candidates(inst: &XYInstance) -> VertexSet {
    inst.graph
        .closed_neighborhood(&inst.x)
        .union(&inst.y)
        .complement()
}

pub fn exact_packing(inst: &XYInstance) -> Result<ExactResult, OracleError> {
    exact_packing_with_limit(inst, max_n())
}

pub fn exact_packing_with_limit(inst: &XYInstance, limit: usize) -> Result<ExactResult, OracleError> {
    let n = inst.n();
    guard(n, limit)?;
    let conflict = inst.graph.power2_conflict_graph();
    let allowed = packing_candidates(inst);
    Ok(if n <= 64 {
        solve_mis::<u64>(&conflict, &allowed)
    } else {
        solve_mis::<VertexSet>(&conflict, &allowed)
    })
}

/// Exhaustive reference value over all subsets; for cross-checking only.
pub fn naive_domination(inst: &XYInstance) -> Option<usize> {
    let n = inst.n();
    assert!(n <= 20, "naive oracle is exponential");
    (0u32..1 << n)
        .filter(|&mask| check_xy_dominating(inst, &mask_set(n, mask)))
        .map(|mask| mask.count_ones() as usize)
        .min()
}

pub fn naive_packing(inst: &XYInstance) -> usize {
    let n = inst.n();
    assert!(n <= 20, "naive oracle is exponential");
    (0u32..1 << n)
        .filter(|&mask| check_xy_packing(inst, &mask_set(n, mask)))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn mask_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

/// Plain γ and ρ with empty X and Y.
pub fn gamma_rho(g: &Graph) -> Result<(usize, usize), OracleError> {
    let inst = XYInstance::plain(g.clone());
    Ok((exact_domination(&inst)?.value, exact_packing(&inst)?.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_cycle, gen_path, gen_petersen, gen_rook};
    use crate::graph::EdgeColor;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    #[test]
    fn dominating_checker_examples() {
        let c4 = XYInstance::plain(gen_cycle(4));
        assert!(check_xy_dominating(&c4, &set(4, &[0, 2])));
        assert!(!check_xy_dominating(&c4, &set(4, &[0])));
        let red = Graph::from_colored_edges(2, &[], &[(0, 1)]).unwrap();
        let inst = XYInstance::with_mode(red, Mode::Black);
        assert!(check_xy_dominating(&inst, &set(2, &[0])));
    }

    #[test]
    fn packing_checker_examples() {
        let p5 = gen_path(5);
        let p = set(5, &[0, 3]);
        assert!(check_xy_packing(&XYInstance::plain(p5.clone()), &p));
        let with_x = XYInstance::from_ids(p5.clone(), &[1], &[], Mode::Plain).unwrap();
        assert!(!check_xy_packing(&with_x, &p));
        let with_y = XYInstance::from_ids(p5, &[], &[3], Mode::Plain).unwrap();
        assert!(!check_xy_packing(&with_y, &p));
    }

    #[test]
    fn exact_domination_examples() {
        assert_eq!(exact_domination(&XYInstance::plain(gen_cycle(4))).unwrap().value, 2);
        let pet = exact_domination(&XYInstance::plain(gen_petersen())).unwrap();
        assert_eq!(pet.value, 3);
        assert!(check_xy_dominating(&XYInstance::plain(gen_petersen()), &pet.witness));
        let g = gen_petersen();
        let all_y = XYInstance::new(g.clone(), g.empty_set(), g.all(), Mode::Plain).unwrap();
        assert_eq!(exact_domination(&all_y).unwrap().value, 0);
    }

    #[test]
    fn exact_packing_examples() {
        assert_eq!(exact_packing(&XYInstance::plain(gen_cycle(7))).unwrap().value, 2);
        assert_eq!(exact_packing(&XYInstance::plain(gen_rook(3))).unwrap().value, 1);
        let g = gen_petersen();
        let all_y = XYInstance::new(g.clone(), g.empty_set(), g.all(), Mode::Plain).unwrap();
        assert_eq!(exact_packing(&all_y).unwrap().value, 0);
    }

    #[test]
    fn total_and_black_modes() {
        // K_1: totally dominated by membership only
        let k1 = XYInstance::with_mode(Graph::empty(1), Mode::Total);
        assert_eq!(exact_domination(&k1).unwrap().value, 1);
        // P_3 total needs two vertices; plain needs one
        let p3 = gen_path(3);
        assert_eq!(exact_domination(&XYInstance::with_mode(p3.clone(), Mode::Total)).unwrap().value, 2);
        assert_eq!(exact_domination(&XYInstance::plain(p3)).unwrap().value, 1);
        // red star: leaves have no black neighbour, centre alone suffices
        let star = Graph::from_colored_edges(4, &[], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(exact_domination(&XYInstance::with_mode(star, Mode::Black)).unwrap().value, 1);
        // black path a-b with red pendant: b needs a black neighbour in D
        let g = Graph::from_edges(3, &[(0, 1)])
            .unwrap()
            .add_edge(1, 2, EdgeColor::Red)
            .unwrap();
        let r = exact_domination(&XYInstance::with_mode(g.clone(), Mode::Black)).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(naive_domination(&XYInstance::with_mode(g, Mode::Black)), Some(2));
    }

    #[test]
    fn oversize_guard() {
        let g = gen_cycle(70);
        let inst = XYInstance::plain(g);
        assert_eq!(
            exact_domination_with_limit(&inst, 64),
            Err(OracleError::Oversize { n: 70, limit: 64 })
        );
        // the multi-word path agrees with the closed form for cycles
        assert_eq!(exact_domination_with_limit(&inst, 100).unwrap().value, 24);
        assert_eq!(exact_packing_with_limit(&inst, 100).unwrap().value, 23);
    }
}
