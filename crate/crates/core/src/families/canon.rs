//! Canonical labelling by colour refinement with individualization, and an
//! isomorph-free enumerator for connected graphs of maximum degree 3.

use std::collections::BTreeSet;

use crate::graph::{Graph, GraphBuilder};
use crate::io::to_graph6;

/// Stable colouring: repeatedly recolour by (colour, sorted neighbour
/// colours) with new colours numbered in sorted order.
fn refine(g: &Graph, mut color: Vec<usize>) -> Vec<usize> {
    let mut classes = color.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> = sig.iter().collect::<BTreeSet<_>>().into_iter().collect();
        color = sig.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        if distinct.len() == classes {
            return color;
        }
        classes = distinct.len();
    }
}

fn relabel_bits(g: &Graph, label: &[usize]) -> Vec<bool> {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &l) in label.iter().enumerate() {
        inv[l] = v;
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(inv[i], inv[j]));
        }
    }
    bits
}

fn search(g: &Graph, color: Vec<usize>, best: &mut Option<(Vec<bool>, Vec<usize>)>) {
    let color = refine(g, color);
    let n = g.n();
    let mut size = vec![0usize; n];
    for &c in &color {
        size[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| size[c] > 1) else {
        let bits = relabel_bits(g, &color);
        if best.as_ref().is_none_or(|(b, _)| bits > *b) {
            *best = Some((bits, color));
        }
        return;
    };
    for v in g.vertices().filter(|&v| color[v] == target) {
        let split: Vec<usize> = color
            .iter()
            .enumerate()
            .map(|(w, &c)| if c > target || (c == target && w != v) { c + 1 } else { c })
            .collect();
        search(g, split, best);
    }
}

/// Canonical relabelling: isomorphic graphs map to identical graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    let mut best = None;
    search(g, vec![0; n], &mut best);
    let label = best.map(|(_, l)| l).unwrap_or_default();
    let mut b = GraphBuilder::new(n);
    for (u, v) in g.edges() {
        b.add_edge(label[u], label[v]).unwrap();
    }
    b.build()
}

pub fn canonical_graph6(g: &Graph) -> String {
    to_graph6(&canonical_form(g))
}

/// Connected graphs with maximum degree at most 3 on exactly `n` vertices,
/// one per isomorphism class, as canonical graph6 strings in sorted order.
pub fn connected_subcubic(n: usize) -> Vec<String> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<String> = [to_graph6(&Graph::empty(1))].into();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for code in &level {
            let g = crate::io::from_graph6(code).expect("canonical codes parse");
            let open: Vec<usize> = g.vertices().filter(|&v| g.degree(v) < 3).collect();
            for size in 1..=3.min(open.len()) {
                for pick in super::subsets(open.len(), size) {
                    let mut b = g.to_builder();
                    let v = b.add_vertex();
                    for i in pick {
                        b.add_edge(open[i], v).unwrap();
                    }
                    next.insert(canonical_graph6(&b.build()));
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_cycle, gen_petersen, gen_random_graph};

    #[test]
    fn relabelled_copies_agree() {
        for seed in 0..40 {
            let g = gen_random_graph(9, 0.35, seed);
            let perm: Vec<usize> = (0..9).map(|i| (i * 4 + seed as usize) % 9).collect();
            let mut b = GraphBuilder::new(9);
            for (u, v) in g.edges() {
                b.add_edge(perm[u], perm[v]).unwrap();
            }
            assert_eq!(canonical_graph6(&g), canonical_graph6(&b.build()));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_graph6(&two_triangles), canonical_graph6(&gen_cycle(6)));
        let _ = canonical_form(&gen_petersen());
    }

    #[test]
    fn small_counts() {
        // connected graphs with max degree <= 3 on 1..=6 vertices
        let counts: Vec<usize> = (1..=6).map(|n| connected_subcubic(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 10, 29]);
    }
}
