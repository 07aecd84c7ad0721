use dompack::families::{
    brute_force_tw_certificate, brute_force_tww_sequence, connected_subcubic, degeneracy, gen_chained_blocks,
    gen_random_distance_hereditary, gen_random_graph, gen_random_planar, gen_random_tree, gen_rook, gen_split,
    gen_threedeg, max_degree, recognize_chordal, recognize_distance_hereditary, recognize_split,
    validate_contraction_sequence, validate_rotation_planarity, validate_tw_certificate, FamilyError,
};
use dompack::io::{from_graph6, to_graph6};

#[test]
fn chained_blocks_shape() {
    for i in 1..=4 {
        let g = gen_chained_blocks(i).unwrap();
        assert_eq!(g.n(), 6 * i + 2);
        assert!(max_degree(&g) <= 3 && g.is_connected());
    }
}

#[test]
fn split_and_threedeg_shape() {
    for k in 1..=4 {
        assert!(recognize_split(&gen_split(k).unwrap()).is_some());
        assert!(recognize_chordal(&gen_split(k).unwrap()).is_some());
    }
    for k in 2..=4 {
        assert_eq!(degeneracy(&gen_threedeg(k).unwrap()), 3);
    }
    assert!(matches!(gen_split(9), Err(FamilyError::Oversize { .. })));
}

#[test]
fn rook_is_regular() {
    for n in 2..=5 {
        let g = gen_rook(n);
        assert!(g.vertices().all(|v| g.degree(v) == 2 * (n - 1)));
    }
}

#[test]
fn random_generators_are_seeded() {
    for seed in 0..20u64 {
        assert_eq!(to_graph6(&gen_random_graph(15, 0.3, seed)), to_graph6(&gen_random_graph(15, 0.3, seed)));
        assert_eq!(to_graph6(&gen_random_tree(15, seed)), to_graph6(&gen_random_tree(15, seed)));
    }
    assert_ne!(to_graph6(&gen_random_graph(15, 0.3, 1)), to_graph6(&gen_random_graph(15, 0.3, 2)));
}

#[test]
fn random_class_members_pass_recognizers() {
    for seed in 0..40u64 {
        let (g, emb) = gen_random_planar(12, 0.2, seed);
        assert!(validate_rotation_planarity(&g, &emb));
        assert!(recognize_distance_hereditary(&gen_random_distance_hereditary(12, seed)));
    }
}

#[test]
fn brute_force_certificates_validate() {
    for seed in 0..10u64 {
        let g = gen_random_graph(8, 0.35, seed);
        let k = (1..8).find(|&k| brute_force_tw_certificate(&g, k).unwrap().is_some()).unwrap();
        let h = brute_force_tw_certificate(&g, k).unwrap().unwrap();
        assert!(validate_tw_certificate(&g, &h, k));
        if k > 1 {
            assert!(brute_force_tw_certificate(&g, k - 1).unwrap().is_none());
        }
        let g = gen_random_graph(7, 0.4, seed);
        let seq = (0..7).find_map(|k| brute_force_tww_sequence(&g, k).unwrap()).unwrap();
        assert!(validate_contraction_sequence(&g, &seq));
    }
}

#[test]
fn subcubic_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| connected_subcubic(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 10, 29, 64]);
    for code in connected_subcubic(6) {
        let g = from_graph6(&code).unwrap();
        assert!(g.is_connected() && max_degree(&g) <= 3);
    }
}
