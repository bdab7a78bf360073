//! Property bodies and input strategies shared by the property suite and
//! the acceptance run.

use std::collections::BTreeSet;

use altgen::diagrams::{canonicalize, enumerate_diagrams};
use altgen::poly_expand::{alt_project, expand_alt_vector, expand_delta, MultiPoly};
use altgen::qt_catalan::{p_of, zero_one_lambdas};
use altgen::{AltVector, Point};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestCaseError, TestRunner};

pub fn seeded_runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

/// An ordered list of distinct points, in arbitrary order.
pub fn point_list() -> impl Strategy<Value = Vec<Point>> {
    (1usize..=7)
        .prop_flat_map(|n| proptest::collection::btree_set((0u32..6, 0u32..6), n))
        .prop_map(|s: BTreeSet<(u32, u32)>| {
            s.into_iter().map(|(a, b)| Point(a, b)).collect::<Vec<_>>()
        })
        .prop_shuffle()
}

/// `(n, bidegree, picks)`; the picks index into the diagram basis.
pub type VectorSeed = (usize, u32, u32, Vec<(usize, i64)>);

pub fn vector_seed(max_n: usize, max_deg: u32) -> impl Strategy<Value = VectorSeed> {
    (
        2usize..=max_n,
        0u32..=max_deg,
        0u32..=max_deg,
        proptest::collection::vec((0usize..1000, -3i64..=3), 1..5),
    )
}

pub fn build_vector((n, d1, d2, picks): &VectorSeed) -> AltVector {
    let basis = enumerate_diagrams(*n, *d1, *d2, false);
    let mut v = AltVector::zero(*n, (*d1, *d2));
    if basis.is_empty() {
        return v;
    }
    for &(i, c) in picks {
        v.add_term(
            basis[i % basis.len()].clone(),
            BigRational::from_integer(c.into()),
        )
        .unwrap();
    }
    v
}

pub fn shift() -> impl Strategy<Value = (u32, u32)> {
    (0u32..3, 0u32..3).prop_filter("nonzero shift", |&(c, e)| c + e > 0)
}

fn parity_of_sort(points: &[Point]) -> bool {
    let mut inv = 0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (a, b) = (points[i], points[j]);
            if (a.degree(), a.0) > (b.degree(), b.0) {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

pub fn canonicalize_is_idempotent(points: Vec<Point>) -> Result<(), TestCaseError> {
    let (d, sign) = canonicalize(&points).expect("distinct points");
    prop_assert_eq!(sign.as_i64() == -1, parity_of_sort(&points));
    let (again, sign2) = canonicalize(d.points()).unwrap();
    prop_assert_eq!(&again, &d);
    prop_assert_eq!(sign2.as_i64(), 1);
    Ok(())
}

pub fn pieri_commutes(
    (seed, a, b): (VectorSeed, (u32, u32), (u32, u32)),
) -> Result<(), TestCaseError> {
    let v = build_vector(&seed);
    let ab = v
        .pieri_multiply(a.0, a.1)
        .unwrap()
        .pieri_multiply(b.0, b.1)
        .unwrap();
    let ba = v
        .pieri_multiply(b.0, b.1)
        .unwrap()
        .pieri_multiply(a.0, a.1)
        .unwrap();
    prop_assert_eq!(ab, ba);
    Ok(())
}

pub fn pieri_is_linear(
    (s1, picks, a): (VectorSeed, Vec<(usize, i64)>, (u32, u32)),
) -> Result<(), TestCaseError> {
    let v = build_vector(&s1);
    let w = build_vector(&(s1.0, s1.1, s1.2, picks));
    let lhs = v
        .add(&w.scale_int(2))
        .unwrap()
        .pieri_multiply(a.0, a.1)
        .unwrap();
    let rhs = v
        .pieri_multiply(a.0, a.1)
        .unwrap()
        .add(&w.pieri_multiply(a.0, a.1).unwrap().scale_int(2))
        .unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn pieri_is_the_polynomial_product(
    (seed, a): (VectorSeed, (u32, u32)),
) -> Result<(), TestCaseError> {
    let v = build_vector(&seed);
    let n = v.n();
    let lhs = expand_alt_vector(&v.pieri_multiply(a.0, a.1).unwrap()).unwrap();
    let rhs = MultiPoly::power_sum(n, a.0, a.1).mul(&expand_alt_vector(&v).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn antisymmetrization_roundtrip(seed: VectorSeed) -> Result<(), TestCaseError> {
    let v = build_vector(&seed);
    let mut poly = MultiPoly::zero(v.n());
    for (d, c) in v.terms() {
        poly = poly.add(&expand_delta(d).unwrap().scale(&c.to_integer()));
    }
    // a zero polynomial carries no bidegree, so compare the terms
    let back = alt_project(&poly).unwrap();
    prop_assert_eq!(
        back.terms().collect::<Vec<_>>(),
        v.terms().collect::<Vec<_>>()
    );
    Ok(())
}

pub fn zero_one_count((k, extra, tail): (usize, usize, usize)) -> Result<(), TestCaseError> {
    let u = 2 * k + extra;
    let n = u + 2 + tail;
    let got = zero_one_lambdas(u, k, n).unwrap().len() as u64;
    prop_assert_eq!(got, p_of(k as u32));
    Ok(())
}

pub fn zero_one_inputs() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..=5).prop_flat_map(|k| (Just(k), 0usize..=12 - 2 * k, 0usize..3))
}

/// Run every property with `cases` each; returns the total case count or
/// the first failure.
pub fn run_all(cases: u32, seed: u64) -> Result<u64, String> {
    fn go<S: Strategy>(
        name: &str,
        cases: u32,
        seed: u64,
        s: S,
        f: impl Fn(S::Value) -> Result<(), TestCaseError>,
    ) -> Result<u64, String> {
        seeded_runner(cases, seed)
            .run(&s, f)
            .map(|_| u64::from(cases))
            .map_err(|e| format!("{name}: {e}"))
    }
    let mut total = 0;
    total += go(
        "canonicalize",
        cases,
        seed,
        point_list(),
        canonicalize_is_idempotent,
    )?;
    total += go(
        "pieri commutes",
        cases,
        seed,
        (vector_seed(5, 4), shift(), shift()),
        pieri_commutes,
    )?;
    total += go(
        "pieri linear",
        cases,
        seed,
        (
            vector_seed(5, 4),
            proptest::collection::vec((0usize..1000, -3i64..=3), 1..5),
            shift(),
        ),
        pieri_is_linear,
    )?;
    total += go(
        "pieri product",
        cases,
        seed,
        (vector_seed(4, 3), shift()),
        pieri_is_the_polynomial_product,
    )?;
    total += go(
        "alt roundtrip",
        cases,
        seed,
        vector_seed(5, 3),
        antisymmetrization_roundtrip,
    )?;
    total += go(
        "zero-one counts",
        cases,
        seed,
        zero_one_inputs(),
        zero_one_count,
    )?;
    Ok(total)
}
