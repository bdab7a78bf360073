mod common;

use std::collections::HashMap;

use altgen::diagrams::{enumerate_diagrams, staircase_degree};
use altgen::poly_expand::{
    alt_project, block_diagonal, det_staircase, expand_delta, staircase_reduce, MonomialRelations,
    ReductionPolicy,
};
use altgen::{AltVector, EngineConfig, GradedModule, SliceMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const POLICIES: [ReductionPolicy; 3] = [
    ReductionPolicy::XFirst,
    ReductionPolicy::YFirst,
    ReductionPolicy::Interleaved,
];

#[test]
fn membership_matches_monomial_elimination_small() {
    let g = GradedModule::new(EngineConfig::default().with_exact(true)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        let (checked, bad) =
            common::oracle_disagreements(&g, n, staircase_degree(n) + 1, 30, &mut rng);
        assert_eq!(bad, 0, "n={n}: {bad} of {checked} disagree");
    }
}

#[test]
fn random_vectors_hit_both_outcomes() {
    let g = GradedModule::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let vs = common::random_vectors(&mut rng, 4, 2, 2, 60);
    let inside = vs.iter().filter(|v| g.is_in_relations(v).unwrap()).count();
    assert!(inside > 5 && inside < 55, "{inside} of 60 in R");
}

/// Every sub-staircase diagram of `n` points with deficit at most `max_k`.
fn sub_staircase(n: usize, max_k: u32) -> Vec<altgen::Diagram> {
    let top = staircase_degree(n);
    (top.saturating_sub(max_k)..=top)
        .flat_map(|d| (0..=d).flat_map(move |d1| enumerate_diagrams(n, d1, d - d1, true)))
        .collect()
}

#[test]
fn staircase_determinant_is_congruent_for_every_policy() {
    let mut spaces: HashMap<(u32, u32), MonomialRelations> = HashMap::new();
    for n in 1..=4 {
        for d in sub_staircase(n, u32::MAX) {
            let delta = expand_delta(&d).unwrap();
            let (d1, d2) = d.bidegree();
            let space = spaces
                .entry((d1 * 100 + n as u32, d2))
                .or_insert_with(|| MonomialRelations::new(n, d1, d2).unwrap());
            for policy in POLICIES {
                let det = det_staircase(&staircase_reduce(&d, policy)).unwrap();
                assert!(space.contains(&det.sub(&delta)).unwrap(), "{d} {policy:?}");
            }
        }
    }
}

#[test]
fn block_form_keeps_the_determinant() {
    for n in 1..=4 {
        for d in sub_staircase(n, 3) {
            for policy in POLICIES {
                let s = staircase_reduce(&d, policy);
                let b = block_diagonal(&s).unwrap();
                assert_eq!(
                    det_staircase(&s).unwrap(),
                    det_staircase(&b).unwrap(),
                    "{d} {policy:?}"
                );
            }
        }
    }
}

#[test]
fn antisymmetrization_recovers_every_basis_vector() {
    for n in 1..=5 {
        for d in sub_staircase(n, u32::MAX) {
            let back = alt_project(&expand_delta(&d).unwrap()).unwrap();
            assert_eq!(back, AltVector::delta(&d), "{d}");
        }
    }
}

#[test]
fn projected_slices_match_full_slices() {
    let full = GradedModule::default();
    let proj = GradedModule::new(EngineConfig::default().with_mode(SliceMode::Projected)).unwrap();
    for n in 5..=6 {
        let top = staircase_degree(n);
        for d in 0..=top {
            for d1 in 0..=d {
                let a = full.dim_m(n, d1, d - d1).unwrap().dim_m;
                let b = proj.dim_m(n, d1, d - d1).unwrap().dim_m;
                assert_eq!(a, b, "n={n} ({d1},{})", d - d1);
            }
        }
    }
}

#[test]
fn projected_membership_matches_full() {
    let full = GradedModule::default();
    let proj = GradedModule::new(EngineConfig::default().with_mode(SliceMode::Projected)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (d1, d2) in [(4, 3), (5, 3), (3, 5), (6, 2)] {
        for v in common::random_vectors(&mut rng, 5, d1, d2, 30) {
            assert_eq!(
                full.is_in_relations(&v).unwrap(),
                proj.is_in_relations(&v).unwrap()
            );
        }
    }
}
