//! Seed-deterministic random generators for test corpora.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificates::RotationSystem;
use crate::constructions::{ConvexEncoding, DiskConfiguration};
use crate::graph::{Graph, GraphBuilder};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        for u in 0..v {
            if r.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

/// Uniform labelled tree via a random Prüfer sequence.
pub fn gen_random_tree(n: usize, seed: u64) -> Graph {
    if n <= 2 {
        return super::gen_path(n);
    }
    let mut r = rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| r.gen_range(0..n)).collect();
    let mut degree = vec![1; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut b = GraphBuilder::new(n);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        b.add_edge(leaf, c).unwrap();
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    b.add_edge(rest[0], rest[1]).unwrap();
    b.build()
}

/// `n` centres uniform in the square `[0, side]²`.
pub fn gen_random_unitdisk(n: usize, side: f64, seed: u64) -> DiskConfiguration {
    let mut r = rng(seed);
    let centers = (0..n).map(|_| (r.gen_range(0.0..=side), r.gen_range(0.0..=side))).collect();
    DiskConfiguration { centers }
}

/// Convex bipartite graph: `x` side on ids `0..nx` in a shuffled order, `y`
/// side on `nx..nx+ny`, each `y` adjacent to a random window of the order.
/// Windows are widened until no vertex is isolated.
pub fn gen_random_convex(nx: usize, ny: usize, seed: u64) -> (Graph, ConvexEncoding) {
    assert!(nx >= 1 && ny >= 1, "convex generator needs both sides nonempty");
    let mut r = rng(seed);
    let mut x_order: Vec<usize> = (0..nx).collect();
    x_order.shuffle(&mut r);
    let mut windows: Vec<(usize, usize)> = (0..ny)
        .map(|_| {
            let lo = r.gen_range(0..nx);
            let len = r.gen_range(0..nx.min(4));
            (lo, (lo + len).min(nx - 1))
        })
        .collect();
    for pos in 0..nx {
        if !windows.iter().any(|&(lo, hi)| lo <= pos && pos <= hi) {
            let j = r.gen_range(0..ny);
            let (lo, hi) = windows[j];
            windows[j] = (lo.min(pos), hi.max(pos));
        }
    }
    let mut b = GraphBuilder::new(nx + ny);
    let mut y_neighbors = BTreeMap::new();
    for (j, &(lo, hi)) in windows.iter().enumerate() {
        let xs: Vec<usize> = x_order[lo..=hi].to_vec();
        for &x in &xs {
            b.add_edge(x, nx + j).unwrap();
        }
        y_neighbors.insert(nx + j, xs);
    }
    (b.build(), ConvexEncoding { x_order, y_neighbors })
}

/// Random partial `k`-tree with the `k`-tree it came from as a chordal
/// completion. Each edge of the `k`-tree survives with probability `keep`.
pub fn gen_random_partial_ktree(n: usize, k: usize, keep: f64, seed: u64) -> (Graph, Graph) {
    let mut r = rng(seed);
    let base = n.min(k + 1);
    let mut full = GraphBuilder::new(n);
    for v in 0..base {
        for u in 0..v {
            full.add_edge(u, v).unwrap();
        }
    }
    let mut cliques: Vec<Vec<usize>> = if base == k + 1 {
        (0..base).map(|skip| (0..base).filter(|&v| v != skip).collect()).collect()
    } else {
        Vec::new()
    };
    for v in base..n {
        let c = cliques[r.gen_range(0..cliques.len())].clone();
        for &u in &c {
            full.add_edge(u, v).unwrap();
        }
        for skip in 0..c.len() {
            let mut nc: Vec<usize> = c.iter().copied().enumerate().filter(|&(i, _)| i != skip).map(|(_, u)| u).collect();
            nc.push(v);
            cliques.push(nc);
        }
    }
    let completion = full.build();
    let mut b = GraphBuilder::new(n);
    for (u, v) in completion.edges() {
        if r.gen_bool(keep) {
            b.add_edge(u, v).unwrap();
        }
    }
    (b.build(), completion)
}

/// Stacked triangulation with random edge deletions, with its embedding.
pub fn gen_random_planar(n: usize, delete: f64, seed: u64) -> (Graph, RotationSystem) {
    let mut r = rng(seed);
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    if n >= 2 {
        rot[0].push(1);
        rot[1].push(0);
    }
    if n >= 3 {
        rot[0].push(2);
        rot[1].push(2);
        rot[2].extend([0, 1]);
    }
    // oriented faces (a, b, c): walking a→b→c keeps the face on one side
    let mut faces: Vec<(usize, usize, usize)> = if n >= 3 { vec![(0, 1, 2), (0, 2, 1)] } else { Vec::new() };
    let insert_after = |rot: &mut Vec<Vec<usize>>, at: usize, after: usize, new: usize| {
        let i = rot[at].iter().position(|&x| x == after).unwrap();
        rot[at].insert(i + 1, new);
    };
    for v in 3..n {
        let (a, b, c) = faces.swap_remove(r.gen_range(0..faces.len()));
        insert_after(&mut rot, b, a, v);
        insert_after(&mut rot, c, b, v);
        insert_after(&mut rot, a, c, v);
        rot[v] = vec![a, c, b];
        faces.extend([(a, b, v), (b, c, v), (c, a, v)]);
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (u, nb) in rot.iter().enumerate() {
        edges.extend(nb.iter().filter(|&&w| w > u).map(|&w| (u, w)));
    }
    edges.sort_unstable();
    for (u, w) in edges {
        if r.gen_bool(delete) {
            rot[u].retain(|&x| x != w);
            rot[w].retain(|&x| x != u);
        }
    }
    let mut b = GraphBuilder::new(n);
    for (u, nb) in rot.iter().enumerate() {
        for &w in nb.iter().filter(|&&w| w > u) {
            b.add_edge(u, w).unwrap();
        }
    }
    (b.build(), RotationSystem { rotation: rot })
}

/// Each new vertex joins at most two earlier vertices.
pub fn gen_random_twodeg(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        let want = r.gen_range(1..=2.min(v));
        let mut earlier: Vec<usize> = (0..v).collect();
        earlier.shuffle(&mut r);
        for &u in &earlier[..want] {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

/// Grown from `K_1` by pendant, false-twin and true-twin additions.
pub fn gen_random_distance_hereditary(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut b = GraphBuilder::new(n.min(1));
    for _ in 1..n {
        let x = r.gen_range(0..b.n());
        let g = b.build();
        let v = b.add_vertex();
        match r.gen_range(0..3) {
            0 => {
                b.add_edge(x, v).unwrap();
            }
            op => {
                for w in g.neighbors(x).iter() {
                    b.add_edge(w, v).unwrap();
                }
                if op == 2 || g.degree(x) == 0 {
                    b.add_edge(x, v).unwrap();
                }
            }
        }
    }
    b.build()
}

/// Connected interval graph on shuffled ids.
pub fn gen_random_interval(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut intervals: Vec<(u32, u32)> = Vec::with_capacity(n);
    let mut reach = 0u32;
    let mut left = 0u32;
    for i in 0..n {
        if i > 0 {
            left = (left + r.gen_range(0..=2)).min(reach);
        }
        let right = left + r.gen_range(0..=4);
        reach = reach.max(right);
        intervals.push((left, right));
    }
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut r);
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for j in 0..i {
            let (a, c) = (intervals[i], intervals[j]);
            if a.0 <= c.1 && c.0 <= a.1 {
                b.add_edge(ids[i], ids[j]).unwrap();
            }
        }
    }
    b.build()
}

/// Random cograph: disjoint unions and joins of random splits.
pub fn gen_random_cograph(n: usize, seed: u64) -> Graph {
    fn build(vs: &[usize], r: &mut ChaCha8Rng, b: &mut GraphBuilder) {
        if vs.len() <= 1 {
            return;
        }
        let cut = r.gen_range(1..vs.len());
        let (left, right) = vs.split_at(cut);
        build(left, r, b);
        build(right, r, b);
        if r.gen_bool(0.5) {
            for &u in left {
                for &v in right {
                    b.add_edge(u, v).unwrap();
                }
            }
        }
    }
    let mut r = rng(seed);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut r);
    let mut b = GraphBuilder::new(n);
    build(&ids, &mut r, &mut b);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        recognize_at_free, recognize_distance_hereditary, validate_rotation_planarity,
        validate_tw_certificate,
    };
    use crate::io::to_graph6;

    #[test]
    fn trees_are_trees() {
        for n in 1..15 {
            for seed in 0..20 {
                let t = gen_random_tree(n, seed);
                assert_eq!(t.m(), n.saturating_sub(1));
                assert!(t.is_connected());
            }
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        assert_eq!(to_graph6(&gen_random_graph(12, 0.4, 7)), to_graph6(&gen_random_graph(12, 0.4, 7)));
        assert_eq!(to_graph6(&gen_random_tree(12, 3)), to_graph6(&gen_random_tree(12, 3)));
        assert_ne!(to_graph6(&gen_random_tree(12, 3)), to_graph6(&gen_random_tree(12, 4)));
        assert_eq!(gen_random_unitdisk(10, 5.0, 1), gen_random_unitdisk(10, 5.0, 1));
    }

    #[test]
    fn generated_classes_hold() {
        for seed in 0..30 {
            let (g, h) = gen_random_partial_ktree(14, 3, 0.7, seed);
            assert!(validate_tw_certificate(&g, &h, 3));
            let (p, rs) = gen_random_planar(16, 0.2, seed);
            assert!(validate_rotation_planarity(&p, &rs), "seed {seed}");
            assert!(gen_random_twodeg(16, seed).degeneracy() <= 2);
            let dh = gen_random_distance_hereditary(14, seed);
            assert!(dh.is_connected() && recognize_distance_hereditary(&dh));
            let it = gen_random_interval(12, seed);
            assert!(it.is_connected() && recognize_at_free(&it));
            let (cg, enc) = gen_random_convex(6, 5, seed);
            assert!(crate::families::is_convex_order(&cg, &enc));
            assert!(cg.vertices().all(|v| cg.degree(v) > 0));
        }
    }
}
