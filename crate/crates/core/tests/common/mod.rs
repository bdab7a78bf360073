#![allow(dead_code)]

pub mod props;

use std::collections::HashMap;

use altgen::diagrams::enumerate_diagrams;
use altgen::poly_expand::{expand_alt_vector, MonomialRelations};
use altgen::{AltVector, Diagram, GradedModule, Point};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn pts(v: &[(u32, u32)]) -> Vec<Point> {
    v.iter().map(|&(a, b)| Point(a, b)).collect()
}

pub fn diag(v: &[(u32, u32)]) -> Diagram {
    Diagram::new(pts(v)).unwrap()
}

fn small(rng: &mut ChaCha8Rng) -> BigRational {
    let k: i64 = loop {
        let k = rng.gen_range(-3..=3);
        if k != 0 {
            break k;
        }
    };
    BigRational::from_integer(k.into())
}

/// A random product `p_{c,e} Δ(D')` landing in the bidegree, if any exists.
fn random_row(rng: &mut ChaCha8Rng, n: usize, d1: u32, d2: u32) -> Option<AltVector> {
    let shifts: Vec<(u32, u32)> = (0..=d1)
        .flat_map(|c| (0..=d2).map(move |e| (c, e)))
        .filter(|&(c, e)| c + e > 0)
        .collect();
    if shifts.is_empty() {
        return None;
    }
    for _ in 0..20 {
        let (c, e) = shifts[rng.gen_range(0..shifts.len())];
        let lower = enumerate_diagrams(n, d1 - c, d2 - e, false);
        if lower.is_empty() {
            continue;
        }
        let d = &lower[rng.gen_range(0..lower.len())];
        return Some(AltVector::delta(d).pieri_multiply(c, e).unwrap());
    }
    None
}

/// Random vectors of one bidegree: combinations of relation rows, random
/// basis combinations, and rows perturbed by one basis vector, in turn.
pub fn random_vectors(
    rng: &mut ChaCha8Rng,
    n: usize,
    d1: u32,
    d2: u32,
    count: usize,
) -> Vec<AltVector> {
    let basis = enumerate_diagrams(n, d1, d2, false);
    let mut out = Vec::with_capacity(count);
    if basis.is_empty() {
        return out;
    }
    let mut kind = 0;
    while out.len() < count {
        kind = (kind + 1) % 3;
        let mut v = AltVector::zero(n, (d1, d2));
        if kind != 1 {
            for _ in 0..rng.gen_range(1..=3) {
                if let Some(row) = random_row(rng, n, d1, d2) {
                    v = v.add(&row.scale(&small(rng))).unwrap();
                }
            }
        }
        if kind != 0 {
            for _ in 0..rng.gen_range(1..=3) {
                let d = basis[rng.gen_range(0..basis.len())].clone();
                v.add_term(d, small(rng)).unwrap();
            }
        }
        out.push(v);
    }
    out
}

/// Brute-force membership spaces, built once per bidegree.
#[derive(Default)]
pub struct Oracle {
    spaces: HashMap<(usize, u32, u32), MonomialRelations>,
}

impl Oracle {
    pub fn contains(&mut self, v: &AltVector) -> bool {
        let (d1, d2) = v.bidegree();
        let space = self
            .spaces
            .entry((v.n(), d1, d2))
            .or_insert_with(|| MonomialRelations::new(v.n(), d1, d2).unwrap());
        space.contains(&expand_alt_vector(v).unwrap()).unwrap()
    }
}

/// Number of disagreements between the engine and the brute-force oracle
/// over every basis vector and `per_bidegree` random vectors of every
/// bidegree up to degree `max_degree`.
pub fn oracle_disagreements(
    engine: &GradedModule,
    n: usize,
    max_degree: u32,
    per_bidegree: usize,
    rng: &mut ChaCha8Rng,
) -> (usize, usize) {
    let mut oracle = Oracle::default();
    let mut checked = 0;
    let mut bad = 0;
    for d in 0..=max_degree {
        for d1 in 0..=d {
            let d2 = d - d1;
            let mut vs: Vec<AltVector> = enumerate_diagrams(n, d1, d2, false)
                .iter()
                .map(AltVector::delta)
                .collect();
            vs.extend(random_vectors(rng, n, d1, d2, per_bidegree));
            for v in &vs {
                checked += 1;
                if engine.is_in_relations(v).unwrap() != oracle.contains(v) {
                    bad += 1;
                }
            }
        }
    }
    (checked, bad)
}

/// The drawn instances of the three rewriting moves.
pub fn transfactor_figure() -> (Diagram, usize, usize, Vec<Point>) {
    (
        diag(&[
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 1),
            (2, 0),
            (5, 0),
            (5, 1),
            (6, 0),
            (6, 1),
        ]),
        2,
        6,
        pts(&[
            (0, 0),
            (1, 0),
            (0, 2),
            (1, 1),
            (2, 0),
            (4, 1),
            (5, 1),
            (6, 0),
            (6, 1),
        ]),
    )
}

pub fn permute_figure() -> (Diagram, [usize; 3], Vec<Point>) {
    (
        diag(&[
            (0, 0),
            (1, 0),
            (1, 1),
            (2, 0),
            (2, 1),
            (3, 0),
            (4, 2),
            (5, 1),
            (6, 0),
            (9, 0),
        ]),
        [3, 4, 3],
        pts(&[
            (0, 0),
            (1, 0),
            (0, 2),
            (1, 1),
            (2, 0),
            (4, 1),
            (5, 0),
            (5, 1),
            (6, 0),
            (9, 0),
        ]),
    )
}

/// `(D, t, D↖, D↘)`.
pub fn powerful_figure() -> (Vec<Point>, usize, Vec<Point>, Vec<Point>) {
    (
        pts(&[(0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (4, 0), (4, 1)]),
        1,
        pts(&[(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (4, 0), (3, 2)]),
        pts(&[(0, 0), (0, 1), (2, 0), (2, 1), (3, 1), (4, 0), (5, 0)]),
    )
}
