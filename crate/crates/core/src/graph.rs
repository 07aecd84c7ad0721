//! Simple undirected graphs with an optional red/black edge colouring.
//!
//! Vertices are dense ids `0..n`. A [`Graph`] is immutable once built; the
//! mutators return fresh values so callers can branch and unwind freely.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} does not exist")]
    MissingEdge(usize, usize),
}

/// Bitset over the vertex ids of one graph.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut s = Self::new(universe);
        s.insert(v);
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Self {
        let mut s = Self::new(universe);
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `v`; returns true if it was absent.
    ///
    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_same(&self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe, "vertex sets over different universes");
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_same(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_same(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Low 64 bits; meaningful only when the universe has at most 64 vertices.
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Black,
    Red,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    red: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?}", self.n(), self.edges().collect::<Vec<_>>())?;
        if !self.is_plain() {
            write!(f, ", red={:?}", self.red_edges().collect::<Vec<_>>())?;
        }
        write!(f, ")")
    }
}

/// Single-owner builder; the only place edges are added in place.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
    red: Vec<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: (0..n).map(|_| VertexSet::new(0)).collect(),
            red: Vec::new(),
            edges: Vec::new(),
            labels: None,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(VertexSet::new(0));
        if let Some(l) = self.labels.as_mut() {
            l.push(String::new());
        }
        self.adj.len() - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        self.add_colored_edge(u, v, EdgeColor::Black)
    }

    pub fn add_colored_edge(
        &mut self,
        u: usize,
        v: usize,
        color: EdgeColor,
    ) -> Result<&mut Self, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::InvalidVertex { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = (u.min(v), u.max(v));
        if self.has_edge(e.0, e.1) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        self.edges.push(e);
        if color == EdgeColor::Red {
            self.red.push(e);
        }
        Ok(self)
    }

    pub fn labels(&mut self, labels: Vec<String>) -> &mut Self {
        self.labels = Some(labels);
        self
    }

    pub fn build(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![VertexSet::new(n); n];
        let mut red = vec![VertexSet::new(n); n];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        for &(u, v) in &self.red {
            red[u].insert(v);
            red[v].insert(u);
        }
        let labels = self.labels.clone().map(|mut l| {
            l.resize(n, String::new());
            l
        });
        Graph { adj, red, labels }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn from_colored_edges(
        n: usize,
        black: &[(usize, usize)],
        red: &[(usize, usize)],
    ) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in black {
            b.add_edge(u, v)?;
        }
        for &(u, v) in red {
            b.add_colored_edge(u, v, EdgeColor::Red)?;
        }
        Ok(b.build())
    }

    /// Rebuilds a builder holding this graph, for incremental edits.
    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new(self.n());
        for (u, v) in self.edges() {
            let color = self.edge_color(u, v).unwrap_or(EdgeColor::Black);
            b.add_colored_edge(u, v, color).expect("existing edge is valid");
        }
        if let Some(l) = &self.labels {
            b.labels(l.clone());
        }
        b
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn red_neighbors(&self, v: usize) -> &VertexSet {
        &self.red[v]
    }

    pub fn black_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].difference(&self.red[v])
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn edge_color(&self, u: usize, v: usize) -> Option<EdgeColor> {
        if !self.has_edge(u, v) {
            None
        } else if self.red[u].contains(v) {
            Some(EdgeColor::Red)
        } else {
            Some(EdgeColor::Black)
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn red_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.red[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_plain(&self) -> bool {
        self.red.iter().all(VertexSet::is_empty)
    }

    /// `N[s]`: `s` together with every neighbour of a member of `s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// `N(s)`: union of the open neighbourhoods of the members of `s`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// BFS distances from `src`; `None` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path length ignoring colours; `None` means infinity.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs(u)[v]
    }

    /// Shortest path from `u` to `v` as a vertex list, ties broken towards
    /// smaller ids.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let dist = self.bfs(v);
        dist[u]?;
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let d = dist[cur].unwrap();
            cur = self.adj[cur]
                .iter()
                .find(|&w| dist[w] == Some(d - 1))
                .expect("BFS layers are consistent");
            path.push(cur);
        }
        Some(path)
    }

    /// Repeatedly removes a minimum-degree vertex (smallest id on ties).
    /// Returns the removal order and the largest degree seen at removal.
    pub fn degeneracy_ordering(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut deg: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .unwrap();
            degeneracy = degeneracy.max(deg[v]);
            removed[v] = true;
            order.push(v);
            for w in self.adj[v].iter() {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        (order, degeneracy)
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_ordering().1
    }

    /// Graph on the same vertices with `uv` an edge iff `0 < dist(u, v) <= 2`.
    /// Packings are exactly the independent sets of this graph.
    pub fn power2_conflict_graph(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![VertexSet::new(n); n];
        for v in self.vertices() {
            let mut ball = self.closed_neighborhood(&self.closed_neighbors(v));
            ball.remove(v);
            adj[v] = ball;
        }
        Graph {
            adj,
            red: vec![VertexSet::new(n); n],
            labels: None,
        }
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(s) {
                continue;
            }
            let comp = VertexSet::from_iter(
                self.n(),
                self.bfs(s)
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.is_some())
                    .map(|(v, _)| v),
            );
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on `s`; vertex `i` of the result is the `i`-th
    /// smallest member of `s`, which the returned map records.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let mut adj = vec![VertexSet::new(k); k];
        let mut red = vec![VertexSet::new(k); k];
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].iter() {
                if index[w] != usize::MAX {
                    adj[i].insert(index[w]);
                    if self.red[v].contains(w) {
                        red[i].insert(index[w]);
                    }
                }
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| map.iter().map(|&v| l[v].clone()).collect());
        (Graph { adj, red, labels }, map)
    }

    /// Removes `v`; ids above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut keep = self.all();
        keep.remove(v);
        Ok(self.induced(&keep).0)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u].remove(v);
        g.adj[v].remove(u);
        g.red[u].remove(v);
        g.red[v].remove(u);
        Ok(g)
    }

    /// Returns the enlarged graph and the id of the new isolated vertex.
    pub fn add_vertex(&self) -> (Graph, usize) {
        let mut b = self.to_builder();
        let v = b.add_vertex();
        (b.build(), v)
    }

    pub fn add_edge(&self, u: usize, v: usize, color: EdgeColor) -> Result<Graph, GraphError> {
        let mut b = self.to_builder();
        b.add_colored_edge(u, v, color)?;
        Ok(b.build())
    }

    /// Same vertices and edges with every edge black.
    pub fn to_plain(&self) -> Graph {
        let n = self.n();
        Graph {
            adj: self.adj.clone(),
            red: vec![VertexSet::new(n); n],
            labels: self.labels.clone(),
        }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut s = self.adj[v].complement();
                s.remove(v);
                s
            })
            .collect();
        Graph {
            adj,
            red: vec![VertexSet::new(n); n],
            labels: None,
        }
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }
}
