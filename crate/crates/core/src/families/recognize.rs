//! Class recognizers.

use crate::graph::{Graph, VertexSet};

/// Repeatedly removes the smallest-id simplicial vertex; returns the removal
/// order (a perfect elimination order) when the graph is chordal.
pub fn recognize_chordal(g: &Graph) -> Option<Vec<usize>> {
    let mut alive = g.all();
    let mut order = Vec::with_capacity(g.n());
    while !alive.is_empty() {
        let v = alive
            .iter()
            .find(|&v| g.is_clique(&g.neighbors(v).intersection(&alive)))?;
        order.push(v);
        alive.remove(v);
    }
    Some(order)
}

/// Vertices of `alive` whose neighbourhood inside `alive` is a clique.
pub fn simplicial_vertices(g: &Graph, alive: &VertexSet) -> VertexSet {
    VertexSet::from_iter(
        g.n(),
        alive.iter().filter(|&v| g.is_clique(&g.neighbors(v).intersection(alive))),
    )
}

/// Degree-sequence test; on success returns `(clique, independent set)`.
pub fn recognize_split(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let mut by_degree: Vec<usize> = g.vertices().collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let d: Vec<usize> = by_degree.iter().map(|&v| g.degree(v)).collect();
    let m = (0..d.len()).filter(|&i| d[i] >= i).count();
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    if head != m * m.saturating_sub(1) + tail {
        return None;
    }
    let clique = VertexSet::from_iter(g.n(), by_degree[..m].iter().copied());
    let independent = clique.complement();
    debug_assert!(g.is_clique(&clique));
    Some((clique, independent))
}

/// No independent triple in which every pair is joined by a path avoiding
/// the closed neighbourhood of the third.
pub fn recognize_at_free(g: &Graph) -> bool {
    find_asteroidal_triple(g).is_none()
}

pub fn find_asteroidal_triple(g: &Graph) -> Option<(usize, usize, usize)> {
    let n = g.n();
    // component label of every vertex in G ∖ N[z], for each z
    let labels: Vec<Vec<usize>> = g
        .vertices()
        .map(|z| {
            let keep = g.closed_neighbors(z).complement();
            let (sub, map) = g.induced(&keep);
            let mut label = vec![usize::MAX; n];
            for (c, comp) in sub.components().iter().enumerate() {
                for v in comp.iter() {
                    label[map[v]] = c;
                }
            }
            label
        })
        .collect();
    let joined = |a: usize, b: usize, z: usize| {
        labels[z][a] != usize::MAX && labels[z][a] == labels[z][b]
    };
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) || g.has_edge(b, c) {
                    continue;
                }
                if joined(a, b, c) && joined(a, c, b) && joined(b, c, a) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Each component prunes to a single vertex by deleting pendant vertices
/// and one of any pair of (true or false) twins.
pub fn recognize_distance_hereditary(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let mut alive = comp.clone();
        while alive.len() > 1 {
            match prunable_vertex(g, &alive) {
                Some(v) => {
                    alive.remove(v);
                }
                None => return false,
            }
        }
        true
    })
}

fn prunable_vertex(g: &Graph, alive: &VertexSet) -> Option<usize> {
    let nb = |v: usize| g.neighbors(v).intersection(alive);
    if let Some(v) = alive.iter().find(|&v| nb(v).len() == 1) {
        return Some(v);
    }
    let ids = alive.to_vec();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            let (mut nu, mut nv) = (nb(u), nb(v));
            nu.remove(v);
            nv.remove(u);
            if nu == nv {
                return Some(v);
            }
        }
    }
    None
}
