//! Named graph families, random in-class generators, class recognizers and
//! certificate validators.

mod canon;
mod certificates;
mod generators;
mod random;
mod recognize;

use serde::Serialize;
use thiserror::Error;

pub use canon::{canonical_form, canonical_graph6, connected_subcubic};
pub use certificates::{
    brute_force_tw_certificate, brute_force_tww_sequence, check_contraction_sequence,
    check_rotation_planarity, check_tw_certificate, chordal_clique_number, fill_in,
    greedy_tww_sequence, validate_contraction_sequence, validate_rotation_planarity,
    validate_tw_certificate, ContractionSequence, RotationSystem, Trigraph, TWW_BRUTE_MAX_N,
    TW_BRUTE_MAX_N,
};
pub use generators::{
    gen_chained_blocks, gen_complete, gen_complete_bipartite, gen_cycle, gen_dodecahedron,
    gen_path, gen_petersen, gen_rook, gen_split, gen_star, gen_threedeg,
    gen_threedeg_without_apex, subsets, SPLIT_MAX_K, THREEDEG_MAX_K,
};
pub use random::{
    gen_random_cograph, gen_random_convex, gen_random_distance_hereditary, gen_random_graph,
    gen_random_interval, gen_random_partial_ktree, gen_random_planar, gen_random_tree,
    gen_random_twodeg, gen_random_unitdisk, rng,
};
pub use recognize::{
    find_asteroidal_triple, recognize_at_free, recognize_chordal, recognize_distance_hereditary,
    recognize_split, simplicial_vertices,
};

pub use crate::constructions::is_convex_order;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family}: parameter {param} exceeds the limit {limit}")]
    Oversize { family: &'static str, param: usize, limit: usize },
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn degeneracy(g: &Graph) -> usize {
    g.degeneracy()
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub parameters: &'static [&'static str],
    pub guarantees: &'static str,
}

pub fn catalog() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo {
            name: "chained-blocks",
            parameters: &["i"],
            guarantees: "6i+2 vertices, max degree 3, rho = i, gamma = 2i+1",
        },
        FamilyInfo {
            name: "split",
            parameters: &["k"],
            guarantees: "split graph, rho = 1, gamma = k (k <= 5)",
        },
        FamilyInfo {
            name: "threedeg",
            parameters: &["k"],
            guarantees: "3-degenerate, rho <= 2, gamma >= k (k <= 4)",
        },
        FamilyInfo {
            name: "threedeg-minus-apex",
            parameters: &["k"],
            guarantees: "2-degenerate; with Y = pair vertices, rho_XY = 1 and gamma_XY >= k",
        },
        FamilyInfo { name: "rook", parameters: &["n"], guarantees: "K_n x K_n, rho = 1, gamma = n" },
        FamilyInfo {
            name: "cycle",
            parameters: &["n"],
            guarantees: "gamma = rho + 1 iff n = 1, 2 mod 3",
        },
        FamilyInfo { name: "path", parameters: &["n"], guarantees: "tree, gamma = rho" },
        FamilyInfo { name: "complete", parameters: &["n"], guarantees: "gamma = rho = 1" },
        FamilyInfo { name: "petersen", parameters: &[], guarantees: "gamma = 3 = 2 rho + 1" },
        FamilyInfo { name: "dodecahedron", parameters: &[], guarantees: "planar cubic" },
        FamilyInfo { name: "random-graph", parameters: &["n", "p", "seed"], guarantees: "G(n, p)" },
        FamilyInfo { name: "random-tree", parameters: &["n", "seed"], guarantees: "uniform labelled tree" },
        FamilyInfo {
            name: "random-unitdisk",
            parameters: &["n", "side", "seed"],
            guarantees: "disk centres as CSV",
        },
        FamilyInfo {
            name: "random-convex",
            parameters: &["nx", "ny", "seed"],
            guarantees: "convex bipartite graph and its encoding",
        },
        FamilyInfo {
            name: "random-ktree",
            parameters: &["n", "k", "keep", "seed"],
            guarantees: "treewidth <= k with chordal completion",
        },
        FamilyInfo {
            name: "random-planar",
            parameters: &["n", "delete", "seed"],
            guarantees: "planar with rotation system",
        },
        FamilyInfo { name: "random-twodeg", parameters: &["n", "seed"], guarantees: "2-degenerate" },
        FamilyInfo {
            name: "random-dh",
            parameters: &["n", "seed"],
            guarantees: "connected distance-hereditary",
        },
        FamilyInfo {
            name: "random-interval",
            parameters: &["n", "seed"],
            guarantees: "connected interval graph (AT-free)",
        },
        FamilyInfo { name: "random-cograph", parameters: &["n", "seed"], guarantees: "twin-width 0" },
        FamilyInfo {
            name: "subcubic-connected",
            parameters: &["n"],
            guarantees: "all connected max-degree-3 graphs on n vertices up to isomorphism",
        },
    ]
}
