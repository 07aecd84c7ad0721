//! Direct constructions: AT-free dominating-pair paths, convex interval
//! sweeps, unit-disk coverings and the maximal-packing fallback.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{ClassTag, RuleApplication, RuleId, WitnessPair};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::instance::Mode;
use crate::ratio::Rational;

/// Tolerance on squared distances.
pub const GEOMETRY_EPS: f64 = 1e-9;
/// Radius around a packing disk that contains every disk within distance two.
pub const UNITDISK_COVER_RADIUS: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no dominating pair: graph is disconnected or not AT-free")]
    NotFound,
    #[error("convex encoding rejected: {0}")]
    EncodingInvalid(String),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("disk file line {line}: {reason}")]
    DiskParse { line: usize, reason: String },
}

/// Unit disks given by their centres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskConfiguration {
    pub centers: Vec<(f64, f64)>,
}

fn dist2(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

impl DiskConfiguration {
    /// Disks `i` and `j` meet when their centres are at most 2 apart.
    pub fn graph(&self) -> Graph {
        let n = self.centers.len();
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if dist2(self.centers[i], self.centers[j]) <= 4.0 + GEOMETRY_EPS {
                    b.add_edge(i, j).expect("pairs are distinct");
                }
            }
        }
        b.build()
    }

    pub fn to_csv(&self) -> String {
        self.centers.iter().map(|(x, y)| format!("{x},{y}\n")).collect()
    }

    /// One `x,y` pair per line; blank lines are skipped.
    pub fn from_csv(text: &str) -> Result<Self, ConstructionError> {
        let mut centers = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| ConstructionError::DiskParse { line: i + 1, reason: reason.to_string() };
            let (x, y) = line.split_once(',').ok_or_else(|| err("expected x,y"))?;
            let x: f64 = x.trim().parse().map_err(|_| err("bad x coordinate"))?;
            let y: f64 = y.trim().parse().map_err(|_| err("bad y coordinate"))?;
            if !x.is_finite() || !y.is_finite() {
                return Err(err("coordinates must be finite"));
            }
            centers.push((x, y));
        }
        Ok(DiskConfiguration { centers })
    }
}

/// Convex bipartite encoding: one side in `x_order`, and for each vertex of
/// the other side its neighbours, which must be consecutive in `x_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexEncoding {
    pub x_order: Vec<usize>,
    pub y_neighbors: BTreeMap<usize, Vec<usize>>,
}

impl ConvexEncoding {
    /// Position of each `x` in the order.
    pub fn positions(&self) -> BTreeMap<usize, usize> {
        self.x_order.iter().enumerate().map(|(i, &x)| (x, i)).collect()
    }

    /// `[lo, hi]` positions for each `y` with at least one neighbour.
    pub fn intervals(&self) -> BTreeMap<usize, (usize, usize)> {
        let pos = self.positions();
        self.y_neighbors
            .iter()
            .filter_map(|(&y, xs)| {
                let ps = xs.iter().filter_map(|x| pos.get(x).copied());
                Some((y, (ps.clone().min()?, ps.max()?)))
            })
            .collect()
    }
}

pub fn check_convex_encoding(g: &Graph, enc: &ConvexEncoding) -> Result<(), String> {
    let n = g.n();
    let mut side = vec![None; n];
    for &x in &enc.x_order {
        if x >= n || side[x].replace('x').is_some() {
            return Err(format!("x_order entry {x} is out of range or repeated"));
        }
    }
    for &y in enc.y_neighbors.keys() {
        if y >= n || side[y].replace('y').is_some() {
            return Err(format!("y vertex {y} is out of range or also listed elsewhere"));
        }
    }
    if let Some(v) = side.iter().position(Option::is_none) {
        return Err(format!("vertex {v} is on neither side"));
    }
    let pos = enc.positions();
    for (&y, xs) in &enc.y_neighbors {
        let listed = VertexSet::from_iter(n, xs.iter().copied().filter(|&x| x < n));
        if listed.len() != xs.len() || &listed != g.neighbors(y) {
            return Err(format!("neighbours of {y} differ from the encoding"));
        }
        if let Some(x) = xs.iter().find(|x| !pos.contains_key(x)) {
            return Err(format!("{y} lists {x}, which is not in x_order"));
        }
        if let (Some(lo), Some(hi)) = (xs.iter().map(|x| pos[x]).min(), xs.iter().map(|x| pos[x]).max()) {
            if hi - lo + 1 != xs.len() {
                return Err(format!("neighbours of {y} are not consecutive"));
            }
        }
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(format!("edge {u}-{v} joins one side to itself"));
    }
    Ok(())
}

pub fn is_convex_order(g: &Graph, enc: &ConvexEncoding) -> bool {
    check_convex_encoding(g, enc).is_ok()
}

/// Extends `start` to a maximal packing, scanning `order`.
pub fn extend_packing(g: &Graph, start: &[usize], order: &[usize]) -> Vec<usize> {
    let mut taken = g.empty_set();
    let mut p = Vec::new();
    for &v in start.iter().chain(order) {
        let ball = g.closed_neighbors(v);
        if ball.is_disjoint(&taken) {
            taken.union_with(&ball);
            p.push(v);
        }
    }
    p.sort_unstable();
    p
}

/// Vertices by ascending degree, then id.
pub fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order
}

pub fn greedy_packing(g: &Graph) -> Vec<usize> {
    extend_packing(g, &[], &degree_order(g))
}

/// A pair `(u, v)` such that every `u`-`v` path dominates `g`: for each `z`
/// whose closed neighbourhood misses both, removing it separates them.
/// Farthest pairs are tried first.
pub fn find_dominating_pair(g: &Graph) -> Result<(usize, usize), ConstructionError> {
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Err(ConstructionError::NotFound);
    }
    if n == 1 {
        return Ok((0, 0));
    }
    let dist: Vec<Vec<Option<usize>>> = g.vertices().map(|v| g.bfs(v)).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.sort_by_key(|&(u, v)| (std::cmp::Reverse(dist[u][v]), u, v));
    let balls: Vec<VertexSet> = g.vertices().map(|z| g.closed_neighbors(z)).collect();
    pairs
        .into_iter()
        .find(|&(u, v)| {
            balls.iter().all(|ball| ball.contains(u) || ball.contains(v) || !connected_avoiding(g, u, v, ball))
        })
        .ok_or(ConstructionError::NotFound)
}

fn connected_avoiding(g: &Graph, u: usize, v: usize, blocked: &VertexSet) -> bool {
    let mut seen = blocked.clone();
    seen.insert(u);
    let mut stack = vec![u];
    while let Some(a) = stack.pop() {
        if a == v {
            return true;
        }
        for b in g.neighbors(a).difference(&seen).iter() {
            seen.insert(b);
            stack.push(b);
        }
    }
    false
}

/// Shortest path between a dominating pair; every third vertex forms the
/// packing. Certified `|D| <= 3|P| + 2`.
pub fn construct_atfree(g: &Graph) -> Result<WitnessPair, ConstructionError> {
    let (u, v) = find_dominating_pair(g)?;
    let path = g.shortest_path(u, v).ok_or(ConstructionError::NotFound)?;
    let p = path.len();
    let packing: Vec<usize> = if p <= 2 { vec![u] } else { (0..p / 3).map(|i| path[3 * i]).collect() };
    Ok(WitnessPair::new(
        ClassTag::Atfree,
        Mode::Plain,
        Rational::from_integer(3),
        2,
        path,
        packing,
        Vec::new(),
    ))
}

/// Interval sweep on a convex bipartite graph. `seed`, if given, is placed
/// in the initial packing before the greedy scan.
pub fn construct_convex(g: &Graph, enc: &ConvexEncoding, seed: Option<usize>) -> Result<WitnessPair, ConstructionError> {
    check_convex_encoding(g, enc).map_err(ConstructionError::EncodingInvalid)?;
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(ConstructionError::IsolatedVertex(v));
    }
    if let Some(s) = seed.filter(|&s| s >= g.n()) {
        return Err(ConstructionError::EncodingInvalid(format!("seed {s} out of range")));
    }
    let iv = enc.intervals();
    let pos = enc.positions();
    let order = degree_order(g);
    let len = |y: usize| iv[&y].1 - iv[&y].0;
    let mut packing = extend_packing(g, &seed.into_iter().collect::<Vec<_>>(), &order);
    let mut trace = Vec::new();
    // Swap a packed y for an unpacked y' whose interval is strictly inside.
    // Each swap plus re-extension lowers (-|P|, total length).
    while let Some((out, inn)) = packing.iter().filter(|y| iv.contains_key(y)).find_map(|&y| {
        let (lo, hi) = iv[&y];
        iv.iter()
            .filter(|&(&z, &(a, b))| z != y && lo <= a && b <= hi && (a, b) != (lo, hi) && !packing.contains(&z))
            .min_by_key(|&(&z, _)| (len(z), z))
            .map(|(&z, _)| (y, z))
    }) {
        let kept: Vec<usize> = packing.iter().copied().filter(|&v| v != out).chain([inn]).collect();
        packing = extend_packing(g, &kept, &order);
        trace.push(RuleApplication::new(RuleId::ConvexSwap).note("out", [out]).note("in", [inn]));
    }

    let mut d: Vec<usize> = packing.clone();
    for &v in &packing {
        if let Some(&(lo, hi)) = iv.get(&v) {
            d.push(enc.x_order[lo]);
            d.push(enc.x_order[hi]);
        } else {
            let p = pos[&v];
            let holding = iv.iter().filter(|&(_, &(a, b))| a <= p && p <= b);
            let first = holding.clone().min_by_key(|&(&y, &(a, _))| (a, y)).map(|(&y, _)| y);
            let last = holding.max_by_key(|&(&y, &(_, b))| (b, std::cmp::Reverse(y))).map(|(&y, _)| y);
            d.extend(first.into_iter().chain(last));
        }
    }
    Ok(WitnessPair::new(ClassTag::Convex, Mode::Plain, Rational::from_integer(3), 0, d, packing, trace))
}

/// Centres of unit disks covering the disk of `radius` about the origin:
/// the hexagonal lattice of spacing sqrt(3), keeping points whose Voronoi
/// hexagon (circumradius 1) meets the target disk.
pub fn covering_points(radius: f64) -> Vec<(f64, f64)> {
    let s3 = 3f64.sqrt();
    let reach = ((radius + 1.0) / (s3 / 2.0)).ceil() as i64 + 1;
    let mut out = Vec::new();
    for j in -reach..=reach {
        for i in -reach..=reach {
            let p = (s3 * (i as f64) + s3 / 2.0 * (j as f64), 1.5 * (j as f64));
            if dist2(p, (0.0, 0.0)) > (radius + 1.0).powi(2) + GEOMETRY_EPS {
                continue;
            }
            if hexagon_distance(p) <= radius + GEOMETRY_EPS {
                out.push(p);
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    out
}

/// Distance from the origin to the hexagon of circumradius 1 centred at `c`
/// with vertices at 30 + 60k degrees.
fn hexagon_distance(c: (f64, f64)) -> f64 {
    let corners: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let t = std::f64::consts::PI / 6.0 + std::f64::consts::PI / 3.0 * k as f64;
            (c.0 + t.cos(), c.1 + t.sin())
        })
        .collect();
    let inside = (0..6).all(|k| {
        let (a, b) = (corners[k], corners[(k + 1) % 6]);
        (b.0 - a.0) * (0.0 - a.1) - (b.1 - a.1) * (0.0 - a.0) >= -GEOMETRY_EPS
    });
    if inside {
        return 0.0;
    }
    (0..6)
        .map(|k| segment_distance((0.0, 0.0), corners[k], corners[(k + 1) % 6]))
        .fold(f64::INFINITY, f64::min)
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    dist2(p, (a.0 + t * dx, a.1 + t * dy)).sqrt()
}

/// Samples the disk of `radius` on a grid of `step`; returns the first
/// sample farther than 1 from every point.
pub fn covering_gap(points: &[(f64, f64)], radius: f64, step: f64) -> Option<(f64, f64)> {
    let steps = (radius / step).ceil() as i64;
    for i in -steps..=steps {
        for j in -steps..=steps {
            let q = (i as f64 * step, j as f64 * step);
            if dist2(q, (0.0, 0.0)) > radius * radius {
                continue;
            }
            if !points.iter().any(|&p| dist2(p, q) <= 1.0 + GEOMETRY_EPS) {
                return Some(q);
            }
        }
    }
    None
}

/// Number of covering points used per packing disk.
pub fn unitdisk_constant() -> usize {
    covering_points(UNITDISK_COVER_RADIUS).len()
}

/// Maximal packing on the intersection graph; around each packed disk, one
/// input disk through each covering point.
pub fn construct_unitdisk(cfg: &DiskConfiguration) -> WitnessPair {
    let g = cfg.graph();
    let packing = greedy_packing(&g);
    let cover = covering_points(UNITDISK_COVER_RADIUS);
    let mut d = Vec::new();
    for &p in &packing {
        let c = cfg.centers[p];
        for &(qx, qy) in &cover {
            let q = (c.0 + qx, c.1 + qy);
            if let Some(i) = cfg.centers.iter().position(|&e| dist2(e, q) <= 1.0 + GEOMETRY_EPS) {
                d.push(i);
            }
        }
    }
    let constant = Rational::from_integer(cover.len() as u64);
    WitnessPair::new(ClassTag::Unitdisk, Mode::Plain, constant, 0, d, packing, Vec::new())
}

/// `D = N[P]` for a greedy maximal packing; certified `(Δ + 1)|P|`.
pub fn construct_generic(g: &Graph) -> WitnessPair {
    let packing = greedy_packing(g);
    let d: Vec<usize> = packing.iter().flat_map(|&p| g.closed_neighbors(p).iter().collect::<Vec<_>>()).collect();
    let constant = Rational::from_integer(g.max_degree() as u64 + 1);
    WitnessPair::new(ClassTag::Generic, Mode::Plain, constant, 0, d, packing, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_complete, gen_complete_bipartite, gen_cycle, gen_path, gen_petersen};
    use crate::instance::XYInstance;

    fn valid(g: &Graph, w: &WitnessPair) {
        w.check(&XYInstance::plain(g.clone())).unwrap();
    }

    #[test]
    fn dominating_pairs() {
        assert_eq!(find_dominating_pair(&gen_path(5)).unwrap(), (0, 4));
        let (u, v) = find_dominating_pair(&gen_cycle(4)).unwrap();
        assert_eq!((u + 2) % 4, v);
        assert!(find_dominating_pair(&gen_cycle(6)).is_ok());
        assert!(find_dominating_pair(&Graph::empty(2)).is_err());
    }

    #[test]
    fn atfree_examples() {
        let g = gen_path(7);
        let w = construct_atfree(&g).unwrap();
        assert_eq!((w.d.len(), w.p.clone()), (7, vec![0, 3]));
        valid(&g, &w);
        let w = construct_atfree(&gen_complete(5)).unwrap();
        assert_eq!((w.d.len(), w.p.len()), (2, 1));
        let g = gen_cycle(5);
        let w = construct_atfree(&g).unwrap();
        assert_eq!((w.d.len(), w.p.len()), (3, 1));
        valid(&g, &w);
    }

    fn natural(g: &Graph, nx: usize) -> ConvexEncoding {
        ConvexEncoding {
            x_order: (0..nx).collect(),
            y_neighbors: (nx..g.n()).map(|y| (y, g.neighbors(y).iter().collect())).collect(),
        }
    }

    #[test]
    fn convex_examples() {
        let g = gen_complete_bipartite(2, 3);
        let w = construct_convex(&g, &natural(&g, 2), None).unwrap();
        valid(&g, &w);
        let g = gen_complete_bipartite(1, 1);
        let w = construct_convex(&g, &natural(&g, 1), None).unwrap();
        assert!(w.d.len() <= 2 && w.p.len() == 1);
    }

    #[test]
    fn convex_swap_fires_from_long_seed() {
        // x = 0..6; y6 spans everything, y7 = [1,2], y8 = [3,4], y9 = [0], y10 = [5]
        let spans = [(0, 5), (1, 2), (3, 4), (0, 0), (5, 5)];
        let mut b = GraphBuilder::new(11);
        for (j, &(lo, hi)) in spans.iter().enumerate() {
            for x in lo..=hi {
                b.add_edge(x, 6 + j).unwrap();
            }
        }
        let g = b.build();
        let enc = natural(&g, 6);
        let w = construct_convex(&g, &enc, Some(6)).unwrap();
        assert!(w.trace.iter().any(|a| a.rule == RuleId::ConvexSwap));
        assert!(!w.p.contains(&6));
        valid(&g, &w);
    }

    #[test]
    fn convex_rejects_bad_encoding() {
        let g = gen_path(4);
        let enc = ConvexEncoding { x_order: vec![0, 2], y_neighbors: BTreeMap::from([(1, vec![0]), (3, vec![2])]) };
        assert!(matches!(construct_convex(&g, &enc, None), Err(ConstructionError::EncodingInvalid(_))));
    }

    #[test]
    fn covering_counts() {
        assert_eq!(covering_points(0.0).len(), 1);
        assert!(covering_points(1.0).len() <= 7);
        let five = covering_points(5.0);
        assert!((32..=50).contains(&five.len()), "{}", five.len());
        for r in [0.0, 1.0, 2.5] {
            assert_eq!(covering_gap(&covering_points(r), r, 0.01), None);
        }
    }

    #[test]
    fn unitdisk_examples() {
        let single = DiskConfiguration { centers: vec![(0.0, 0.0)] };
        let w = construct_unitdisk(&single);
        assert_eq!((w.d.clone(), w.p.clone()), (vec![0], vec![0]));
        let tri = DiskConfiguration { centers: vec![(0.0, 0.0), (1.0, 0.0), (0.5, 0.8)] };
        let w = construct_unitdisk(&tri);
        assert_eq!(w.p.len(), 1);
        valid(&tri.graph(), &w);
    }

    #[test]
    fn disk_csv_round_trip() {
        let cfg = DiskConfiguration { centers: vec![(0.5, -1.25), (3.0, 4.0)] };
        assert_eq!(DiskConfiguration::from_csv(&cfg.to_csv()).unwrap(), cfg);
        assert!(DiskConfiguration::from_csv("1;2").is_err());
        let g = DiskConfiguration { centers: vec![(0.0, 0.0), (2.0, 0.0), (4.1, 0.0)] }.graph();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn generic_examples() {
        let g = gen_cycle(6);
        let w = construct_generic(&g);
        assert_eq!((w.p.len(), w.d.len()), (2, 6));
        assert_eq!(w.ratio, Some(Rational::from_integer(3)));
        let w = construct_generic(&gen_complete(5));
        assert_eq!((w.p.len(), w.d.len()), (1, 5));
        let g = gen_petersen();
        let w = construct_generic(&g);
        assert_eq!((w.p.len(), w.d.len()), (1, 4));
        valid(&g, &w);
    }
}
