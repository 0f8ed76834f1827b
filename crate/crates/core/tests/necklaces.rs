//! Structure of ornate necklaces and the cycles built from them.

use fatgraph_core::chain::contract_edge;
use fatgraph_core::morita::{necklace_terms, verify_cycle, z_coefficients, EdgeClass, NecklaceTerm};
use fatgraph_core::{
    boundary, boundary_of_graph, compositions_up_to_cycle, has_cut_vertex, ornate_necklace, quotient_project,
    Chain, Grade, NecklaceSpec,
};
use num_traits::Signed;

fn contraction(term: &NecklaceTerm, e: usize) -> Chain {
    let (g, o) = contract_edge(&term.graph, &term.orientation, e).unwrap();
    Chain::from_graph(&g, &o).unwrap()
}

fn all_specs(max_k: usize) -> Vec<NecklaceSpec> {
    (1..=max_k).flat_map(compositions_up_to_cycle).collect()
}

#[test]
fn interior_tree_edges_cancel() {
    for spec in all_specs(7) {
        let k = spec.total();
        let mut sum = Chain::zero(Grade::new(1, k, k - 1));
        let mut seen = 0;
        for term in necklace_terms(&spec) {
            for (e, class) in term.edge_classes.iter().enumerate() {
                if *class == EdgeClass::Interior {
                    sum.add_assign_chain(&contraction(&term, e)).unwrap();
                    seen += 1;
                }
            }
        }
        assert!(sum.is_zero(), "{:?}: {seen} interior contractions leave {} terms", spec.parts(), sum.len());
    }
}

#[test]
fn top_edge_contractions_have_cut_vertices() {
    for spec in all_specs(7) {
        for term in necklace_terms(&spec) {
            for (e, class) in term.edge_classes.iter().enumerate() {
                if *class == EdgeClass::Top && !term.graph.is_loop(e) {
                    let (g, _) = contract_edge(&term.graph, &term.orientation, e).unwrap();
                    assert!(has_cut_vertex(&g), "{:?} edge {e}", spec.parts());
                }
            }
        }
    }
}

#[test]
fn only_root_and_loop_edges_contribute() {
    for spec in all_specs(7) {
        let d = quotient_project(&boundary(&ornate_necklace(&spec)));
        let k = spec.total();
        let mut kept = Chain::zero(Grade::new(1, k, k - 1));
        for term in necklace_terms(&spec) {
            for (e, class) in term.edge_classes.iter().enumerate() {
                if matches!(class, EdgeClass::Root | EdgeClass::BigLoop) && !term.graph.is_loop(e) {
                    kept.add_assign_chain(&contraction(&term, e)).unwrap();
                }
            }
        }
        assert_eq!(d, quotient_project(&kept), "{:?}", spec.parts());
    }
}

#[test]
fn terms_are_genus_one_with_k_punctures() {
    for spec in all_specs(7) {
        let k = spec.total();
        let terms = necklace_terms(&spec);
        let trees: usize = spec.parts().iter().map(|&i| fatgraph_core::binary_trees(i).len()).product();
        assert_eq!(terms.len(), trees);
        for t in terms {
            assert_eq!(t.graph.genus_punctures().unwrap(), (1, k));
            assert_eq!(t.graph.num_vertices(), k);
            assert_eq!(t.edge_classes.len(), t.graph.num_edges());
            assert_eq!(t.edge_classes.iter().filter(|c| **c == EdgeClass::BigLoop).count(), spec.parts().len());
        }
    }
}

#[test]
fn rotating_an_odd_necklace_keeps_its_orientation() {
    for k in [3, 5, 7] {
        for spec in compositions_up_to_cycle(k) {
            let base = ornate_necklace(&spec);
            for r in 1..spec.parts().len() {
                assert_eq!(ornate_necklace(&spec.rotated(r)), base, "{:?} rotated by {r}", spec.parts());
            }
        }
    }
}

#[test]
fn necklace_chains_square_to_zero() {
    for spec in all_specs(7) {
        for term in necklace_terms(&spec) {
            let d = boundary_of_graph(&term.graph, &term.orientation).unwrap();
            assert!(boundary(&d).is_zero(), "{:?}", spec.parts());
        }
    }
}

#[test]
fn coefficient_signs_follow_bead_count() {
    for k in [3, 5, 7, 9] {
        for (spec, c) in z_coefficients(k).unwrap() {
            let n = spec.parts().len();
            assert_eq!(c.is_positive(), n % 2 == 0);
            assert_eq!(*c.denom(), num_bigint::BigInt::from(fatgraph_core::cyclic_symmetry_count(&spec)));
        }
    }
}

#[test]
fn larger_cycles() {
    for k in [7, 11] {
        let r = verify_cycle(k).unwrap();
        assert!(r.cycle_ok, "k = {k}");
        eprintln!("Z_{k}: {} terms, {} ms", r.terms, r.elapsed_ms);
    }
}
