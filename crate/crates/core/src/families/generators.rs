//! Deterministic named families.

use super::FamilyError;
use crate::graph::{Graph, GraphBuilder};

pub fn gen_path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are simple")
}

/// `C_n` for `n >= 3`; smaller `n` yields the path on `n` vertices.
pub fn gen_cycle(n: usize) -> Graph {
    if n < 3 {
        return gen_path(n);
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges).expect("cycle edges are simple")
}

pub fn gen_complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    Graph::from_edges(n, &edges).expect("clique edges are simple")
}

pub fn gen_star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
}

/// `K_{a,b}` with the `a` side on ids `0..a`.
pub fn gen_complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edges(a + b, &edges).expect("bipartite edges are simple")
}

/// Outer 5-cycle `0..5`, spokes `i - (i+5)`, inner pentagram on `5..10`.
pub fn gen_petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen edges are simple")
}

/// The 20-vertex dodecahedron: outer 5-cycle, middle 10-cycle, inner 5-cycle.
pub fn gen_dodecahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    Graph::from_edges(20, &edges).expect("dodecahedron edges are simple")
}

/// Rook's graph `K_n □ K_n`; cell `(r, c)` has id `r * n + c`.
pub fn gen_rook(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n * n);
    for r in 0..n {
        for c in 0..n {
            for c2 in c + 1..n {
                b.add_edge(r * n + c, r * n + c2).unwrap();
            }
            for r2 in r + 1..n {
                b.add_edge(r * n + c, r2 * n + c).unwrap();
            }
        }
    }
    b.build()
}

/// Chained blocks closed into a ring through an extra edge `u1 u2`.
///
/// Block `j` (0-based) occupies ids `6j..6j+6` as the path `v1..v6` plus
/// `v1 v5` and `v2 v6`. Consecutive blocks are chained by `a1 b3`, `a6 b4`.
/// The closing edge has ends `u1 = 6i`, `u2 = 6i + 1`.
pub fn gen_chained_blocks(i: usize) -> Result<Graph, FamilyError> {
    if i == 0 {
        return Err(FamilyError::InvalidParameter("chained-blocks needs i >= 1".into()));
    }
    let v = |block: usize, t: usize| 6 * block + t - 1;
    let (u1, u2) = (6 * i, 6 * i + 1);
    let mut b = GraphBuilder::new(6 * i + 2);
    for j in 0..i {
        for t in 1..6 {
            b.add_edge(v(j, t), v(j, t + 1))?;
        }
        b.add_edge(v(j, 1), v(j, 5))?;
        b.add_edge(v(j, 2), v(j, 6))?;
        if j + 1 < i {
            b.add_edge(v(j, 1), v(j + 1, 3))?;
            b.add_edge(v(j, 6), v(j + 1, 4))?;
        }
    }
    b.add_edge(u1, u2)?;
    b.add_edge(u1, v(0, 3))?;
    b.add_edge(u2, v(0, 4))?;
    b.add_edge(u1, v(i - 1, 1))?;
    b.add_edge(u2, v(i - 1, 6))?;
    Ok(b.build())
}

/// Lexicographic `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub const SPLIT_MAX_K: usize = 5;
pub const THREEDEG_MAX_K: usize = 4;

/// Clique `C` on ids `0..2k-1`, and one independent vertex per `k`-subset
/// of `C`, adjacent to exactly that subset.
pub fn gen_split(k: usize) -> Result<Graph, FamilyError> {
    if k == 0 {
        return Err(FamilyError::InvalidParameter("split needs k >= 1".into()));
    }
    if k > SPLIT_MAX_K {
        return Err(FamilyError::Oversize { family: "split", param: k, limit: SPLIT_MAX_K });
    }
    let c = 2 * k - 1;
    let subs = subsets(c, k);
    let mut b = GraphBuilder::new(c + subs.len());
    for v in 0..c {
        for u in 0..v {
            b.add_edge(u, v)?;
        }
    }
    for (i, s) in subs.iter().enumerate() {
        for &v in s {
            b.add_edge(c + i, v)?;
        }
    }
    Ok(b.build())
}

/// `A` on ids `0..2k`, one `B` vertex per pair of `A` (lexicographic),
/// and a last vertex adjacent to all of `B`.
pub fn gen_threedeg(k: usize) -> Result<Graph, FamilyError> {
    if k == 0 {
        return Err(FamilyError::InvalidParameter("threedeg needs k >= 1".into()));
    }
    if k > THREEDEG_MAX_K {
        return Err(FamilyError::Oversize { family: "threedeg", param: k, limit: THREEDEG_MAX_K });
    }
    let a = 2 * k;
    let pairs = subsets(a, 2);
    let apex = a + pairs.len();
    let mut b = GraphBuilder::new(apex + 1);
    for (i, p) in pairs.iter().enumerate() {
        b.add_edge(a + i, p[0])?;
        b.add_edge(a + i, p[1])?;
        b.add_edge(a + i, apex)?;
    }
    Ok(b.build())
}

/// The graph above without its apex; 2-degenerate.
pub fn gen_threedeg_without_apex(k: usize) -> Result<Graph, FamilyError> {
    let g = gen_threedeg(k)?;
    Ok(g.delete_vertex(g.n() - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        for i in 1..=3 {
            let g = gen_chained_blocks(i).unwrap();
            assert_eq!(g.n(), 6 * i + 2);
            assert_eq!(g.max_degree(), 3);
            assert!(g.is_connected());
        }
        let s1 = gen_split(1).unwrap();
        assert_eq!((s1.n(), s1.m()), (2, 1));
        assert_eq!(gen_split(3).unwrap().n(), 15);
        assert!(gen_split(6).is_err());
        let t1 = gen_threedeg(1).unwrap();
        assert_eq!(t1.n(), 4);
        assert_eq!(gen_threedeg(2).unwrap().n(), 11);
        assert_eq!(gen_threedeg(3).unwrap().n(), 22);
        assert_eq!(gen_threedeg_without_apex(2).unwrap().degeneracy(), 2);
        assert_eq!(gen_rook(3).n(), 9);
        let p = gen_petersen();
        assert_eq!((p.n(), p.m(), p.max_degree()), (10, 15, 3));
        let d = gen_dodecahedron();
        assert_eq!((d.n(), d.m()), (20, 30));
        assert!(d.vertices().all(|v| d.degree(v) == 3));
    }

    #[test]
    fn petersen_has_girth_five() {
        let p = gen_petersen();
        for v in p.vertices() {
            // no triangles or 4-cycles: distinct neighbours share only v
            let nb = p.neighbors(v).to_vec();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    assert!(!p.has_edge(a, b));
                    let common = p.neighbors(a).intersection(p.neighbors(b));
                    assert_eq!(common.to_vec(), vec![v]);
                }
            }
        }
    }
}
