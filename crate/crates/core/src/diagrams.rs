//! Lattice diagrams: sets of `n` distinct points of ℕ², kept in standard order.
//!
//! A point `(α, β)` has degree `s = α + β`. Standard order sorts points by
//! degree and breaks ties by strictly increasing `α`; since `s` and `α`
//! determine the point, this is a total order on distinct points. Every sign
//! in the crate is measured relative to this order.
//!
//! Positions along a diagram are 1-based in every public API of this module
//! (`s_1, …, s_n`), matching the way staircase conditions are usually written.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point `(α, β)` with `α` the x-exponent and `β` the y-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point(pub u32, pub u32);

impl Point {
    pub fn x(self) -> u32 {
        self.0
    }

    pub fn y(self) -> u32 {
        self.1
    }

    pub fn degree(self) -> u32 {
        self.0 + self.1
    }

    /// Translate by `(dx, dy)`; `None` if the result leaves the quadrant.
    pub fn shifted(self, dx: i64, dy: i64) -> Option<Point> {
        let x = i64::from(self.0) + dx;
        let y = i64::from(self.1) + dy;
        if x < 0 || y < 0 || x > i64::from(u32::MAX) || y > i64::from(u32::MAX) {
            None
        } else {
            Some(Point(x as u32, y as u32))
        }
    }

    fn standard_key(self) -> (u32, u32) {
        (self.degree(), self.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

/// `n` distinct lattice points in standard order.
///
/// The derived `Ord` compares the flattened point lists lexicographically,
/// which is the enumeration order used for matrix columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Diagram {
    points: Vec<Point>,
}

impl Diagram {
    /// Build from points already in standard order.
    pub fn new(points: Vec<Point>) -> Result<Diagram> {
        for w in points.windows(2) {
            if w[0].standard_key() >= w[1].standard_key() {
                return Err(Error::InvalidDiagram(format!(
                    "points {} and {} are not in standard order",
                    w[0], w[1]
                )));
            }
        }
        Ok(Diagram { points })
    }

    /// Parse a compact `[[a,b],...]` JSON list (the serialization format).
    pub fn from_json(s: &str) -> Result<Diagram> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        bidegree_of(&self.points)
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|p| p.degree()).sum()
    }

    /// The s-vector `(s_1, …, s_n)`.
    pub fn degrees(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.degree()).collect()
    }

    /// `n(n-1)/2 - degree`; negative for diagrams above the staircase.
    pub fn deficit(&self) -> i64 {
        staircase_degree(self.len()) as i64 - i64::from(self.degree())
    }

    pub fn is_sub_staircase(&self) -> bool {
        first_staircase_violation(&self.degrees()).is_none()
    }
}

impl TryFrom<Vec<Point>> for Diagram {
    type Error = Error;

    fn try_from(points: Vec<Point>) -> Result<Diagram> {
        Diagram::new(points)
    }
}

impl From<Diagram> for Vec<Point> {
    fn from(d: Diagram) -> Vec<Point> {
        d.points
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// `n(n-1)/2`, the degree of a full staircase.
pub fn staircase_degree(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

pub fn bidegree_of(points: &[Point]) -> (u32, u32) {
    points.iter().fold((0, 0), |(a, b), p| (a + p.0, b + p.1))
}

/// Sort an ordered point list into standard order.
///
/// Returns `None` when two points coincide (the determinant vanishes),
/// otherwise the diagram together with the sign of the sorting permutation.
pub fn canonicalize(points: &[Point]) -> Option<(Diagram, Sign)> {
    let mut sorted = points.to_vec();
    let mut odd = false;
    // insertion sort, counting transpositions
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 {
            match sorted[j - 1].standard_key().cmp(&sorted[j].standard_key()) {
                std::cmp::Ordering::Greater => {
                    sorted.swap(j - 1, j);
                    odd = !odd;
                    j -= 1;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => break,
            }
        }
    }
    Some((Diagram { points: sorted }, Sign::from_parity(odd)))
}

/// First 1-based position `j` with `s_j > j - 1`, if any.
pub fn first_staircase_violation(degrees: &[u32]) -> Option<usize> {
    degrees
        .iter()
        .enumerate()
        .find(|&(i, &s)| s as usize > i)
        .map(|(i, _)| i + 1)
}

fn check_sub_staircase(degrees: &[u32]) -> Result<()> {
    match first_staircase_violation(degrees) {
        Some(position) => Err(Error::NotSubStaircase {
            position,
            degree: degrees[position - 1],
        }),
        None => Ok(()),
    }
}

/// All diagrams with `n` points and bidegree `(d1, d2)`, sorted in
/// enumeration order. With `sub_staircase_only`, keeps those with
/// `s_j <= j - 1` for every `j`.
pub fn enumerate_diagrams(n: usize, d1: u32, d2: u32, sub_staircase_only: bool) -> Vec<Diagram> {
    let mut candidates: Vec<Point> = (0..=d1)
        .flat_map(|a| (0..=d2).map(move |b| Point(a, b)))
        .collect();
    candidates.sort_by_key(|p| p.standard_key());

    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    enumerate_rec(
        &candidates,
        0,
        n,
        d1,
        d2,
        sub_staircase_only,
        &mut chosen,
        &mut out,
    );
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    candidates: &[Point],
    start: usize,
    n: usize,
    rem_a: u32,
    rem_b: u32,
    sub_only: bool,
    chosen: &mut Vec<Point>,
    out: &mut Vec<Diagram>,
) {
    let remaining = n - chosen.len();
    if remaining == 0 {
        if rem_a == 0 && rem_b == 0 {
            out.push(Diagram {
                points: chosen.clone(),
            });
        }
        return;
    }
    let position = chosen.len();
    for (idx, &p) in candidates.iter().enumerate().skip(start) {
        let s = p.degree();
        // every later point has degree >= s
        if u64::from(s) * remaining as u64 > u64::from(rem_a + rem_b) {
            break;
        }
        if sub_only && s as usize > position {
            break;
        }
        if p.0 > rem_a || p.1 > rem_b {
            continue;
        }
        chosen.push(p);
        enumerate_rec(
            candidates,
            idx + 1,
            n,
            rem_a - p.0,
            rem_b - p.1,
            sub_only,
            chosen,
            out,
        );
        chosen.pop();
    }
}

/// Blocks cut at the positions `j` with `s_j = j - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    /// 1-based block start positions `r_1 < … < r_ℓ`.
    pub starts: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Per-block sums of `j - 1 - s_j`.
    pub deficits: Vec<u32>,
}

impl BlockStructure {
    pub fn from_degrees(degrees: &[u32]) -> Result<BlockStructure> {
        check_sub_staircase(degrees)?;
        let n = degrees.len();
        let starts: Vec<usize> = (1..=n)
            .filter(|&j| degrees[j - 1] as usize == j - 1)
            .collect();
        let mut sizes = Vec::with_capacity(starts.len());
        let mut deficits = Vec::with_capacity(starts.len());
        for (t, &r) in starts.iter().enumerate() {
            let next = starts.get(t + 1).copied().unwrap_or(n + 1);
            sizes.push(next - r);
            deficits.push((r..next).map(|j| (j - 1) as u32 - degrees[j - 1]).sum());
        }
        Ok(BlockStructure {
            starts,
            sizes,
            deficits,
        })
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// Whether block `t` (0-based) satisfies `s_j >= j - 2` on all its positions.
    pub fn is_block_minimal(&self, degrees: &[u32], t: usize) -> bool {
        let r = self.starts[t];
        (r..r + self.sizes[t]).all(|j| degrees[j - 1] as usize + 2 >= j)
    }
}

pub fn block_structure(d: &Diagram) -> Result<BlockStructure> {
    BlockStructure::from_degrees(&d.degrees())
}

/// An integer partition stored as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionType(Vec<u32>);

impl PartitionType {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> PartitionType {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PartitionType(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Multiset of positive per-block deficits of a sub-staircase s-vector.
pub fn partition_type_of_degrees(degrees: &[u32]) -> Result<PartitionType> {
    let blocks = BlockStructure::from_degrees(degrees)?;
    Ok(PartitionType::new(blocks.deficits))
}

pub fn partition_type(d: &Diagram) -> Result<PartitionType> {
    partition_type_of_degrees(&d.degrees())
}

/// Partition type of a minimal staircase form read from the gaps between the
/// positions with `s_i = i - 1`. `None` if the s-vector is not minimal.
pub fn minimal_gap_type(degrees: &[u32]) -> Option<PartitionType> {
    if !is_minimal_staircase_degrees(degrees) {
        return None;
    }
    let n = degrees.len();
    let tops: Vec<usize> = (1..=n)
        .filter(|&i| degrees[i - 1] as usize == i - 1)
        .collect();
    let mut gaps = Vec::with_capacity(tops.len() + 1);
    let mut prev = 0usize;
    for &i in &tops {
        gaps.push((i - prev - 1) as u32);
        prev = i;
    }
    gaps.push((n - prev) as u32);
    Some(PartitionType::new(gaps))
}

pub fn is_minimal_staircase_degrees(degrees: &[u32]) -> bool {
    degrees
        .iter()
        .enumerate()
        .all(|(i, &s)| s as usize == i || s as usize + 1 == i)
}

/// `s_i ∈ {i-1, i-2}` for every position.
pub fn is_minimal_staircase(d: &Diagram) -> bool {
    is_minimal_staircase_degrees(&d.degrees())
}

/// `μ ≤_P ν`: the parts of `μ` can be grouped into blocks summing to the
/// parts of `ν`.
pub fn partition_leq(mu: &PartitionType, nu: &PartitionType) -> Result<bool> {
    if mu.weight() != nu.weight() {
        return Err(Error::WeightMismatch {
            left: mu.weight(),
            right: nu.weight(),
        });
    }
    if mu.parts().len() < nu.parts().len() {
        return Ok(false);
    }
    let mut bins: Vec<u32> = nu.parts().to_vec();
    Ok(fill_bins(mu.parts(), &mut bins))
}

/// `μ <_P ν`.
pub fn partition_lt(mu: &PartitionType, nu: &PartitionType) -> Result<bool> {
    Ok(mu != nu && partition_leq(mu, nu)?)
}

fn fill_bins(parts: &[u32], bins: &mut [u32]) -> bool {
    let Some((&first, rest)) = parts.split_first() else {
        return bins.iter().all(|&b| b == 0);
    };
    for i in 0..bins.len() {
        if bins[i] < first {
            continue;
        }
        // bins with equal remaining capacity are interchangeable
        if bins[..i].contains(&bins[i]) {
            continue;
        }
        bins[i] -= first;
        let ok = fill_bins(rest, bins);
        bins[i] += first;
        if ok {
            return true;
        }
    }
    false
}

/// All partitions of `k`, largest parts first, in reverse lexicographic order.
pub fn partitions_of(k: u32) -> Vec<PartitionType> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<PartitionType>) {
        if rem == 0 {
            out.push(PartitionType(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(u32, u32)]) -> Vec<Point> {
        v.iter().map(|&(a, b)| Point(a, b)).collect()
    }

    #[test]
    fn canonicalize_examples() {
        let (d, s) = canonicalize(&pts(&[(1, 0), (0, 0)])).unwrap();
        assert_eq!(d.points(), pts(&[(0, 0), (1, 0)]).as_slice());
        assert_eq!(s, Sign::Minus);

        assert!(canonicalize(&pts(&[(0, 0), (0, 0)])).is_none());

        // (0,2),(0,0),(1,0) -> (0,0),(1,0),(0,2): a 3-cycle, even
        let (d, s) = canonicalize(&pts(&[(0, 2), (0, 0), (1, 0)])).unwrap();
        assert_eq!(d.points(), pts(&[(0, 0), (1, 0), (0, 2)]).as_slice());
        assert_eq!(s, Sign::Plus);
    }

    #[test]
    fn standard_order_breaks_ties_by_alpha() {
        let (d, _) = canonicalize(&pts(&[(1, 1), (0, 2), (2, 0)])).unwrap();
        assert_eq!(d.points(), pts(&[(0, 2), (1, 1), (2, 0)]).as_slice());
        assert!(Diagram::new(pts(&[(1, 1), (0, 2)])).is_err());
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(
            enumerate_diagrams(2, 1, 0, false),
            vec![Diagram::new(pts(&[(0, 0), (1, 0)])).unwrap()]
        );
        assert!(enumerate_diagrams(2, 0, 0, false).is_empty());
        assert_eq!(
            enumerate_diagrams(3, 1, 1, true),
            vec![Diagram::new(pts(&[(0, 0), (0, 1), (1, 0)])).unwrap()]
        );
    }

    #[test]
    fn deficit_and_bidegree() {
        let d = Diagram::from_json("[[0,0],[1,0],[0,2],[1,1],[3,1]]").unwrap();
        assert_eq!(d.bidegree(), (5, 4));
        assert_eq!(d.degree(), 9);
        assert_eq!(d.deficit(), 1);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            "[[0,0],[1,0],[0,2],[1,1],[3,1]]"
        );
        let far = Diagram::new(pts(&[(0, 0), (5, 0)])).unwrap();
        assert_eq!(far.deficit(), -4);
    }

    #[test]
    fn block_structure_examples() {
        let b = BlockStructure::from_degrees(&[0, 1, 2, 2, 4, 4, 4, 7, 7, 8, 9]).unwrap();
        assert_eq!(b.starts, vec![1, 2, 3, 5, 8]);
        assert_eq!(b.sizes, vec![1, 1, 2, 3, 4]);
        assert_eq!(b.deficits, vec![0, 0, 1, 3, 3]);

        let b = BlockStructure::from_degrees(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(b.sizes, vec![1; 5]);
        assert_eq!(b.deficits, vec![0; 5]);

        let b = BlockStructure::from_degrees(&[0, 1, 1, 2, 4, 4, 5, 6]).unwrap();
        assert_eq!(b.starts, vec![1, 2, 5]);
        assert_eq!(b.deficits, vec![0, 2, 3]);

        assert!(matches!(
            BlockStructure::from_degrees(&[0, 2, 2]),
            Err(Error::NotSubStaircase {
                position: 2,
                degree: 2
            })
        ));
    }

    #[test]
    fn partition_type_examples() {
        let s = [0, 1, 1, 2, 4, 4, 5, 6];
        assert_eq!(partition_type_of_degrees(&s).unwrap().parts(), &[3, 2]);
        assert_eq!(minimal_gap_type(&s).unwrap().parts(), &[3, 2]);
        assert!(partition_type_of_degrees(&[0, 1, 2, 3]).unwrap().is_empty());
        assert_eq!(
            partition_type_of_degrees(&[0, 1, 2, 2, 4, 4, 4, 7, 7, 8, 9])
                .unwrap()
                .parts(),
            &[3, 3, 1]
        );
    }

    #[test]
    fn minimal_staircase_examples() {
        assert!(is_minimal_staircase_degrees(&[0, 1, 1, 2, 4, 4, 5, 6]));
        assert!(!is_minimal_staircase_degrees(&[
            0, 1, 2, 2, 4, 4, 4, 7, 7, 8, 9
        ]));
        assert!(is_minimal_staircase_degrees(&[0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn partition_order_examples() {
        let p = |v: &[u32]| PartitionType::new(v.to_vec());
        assert!(partition_leq(&p(&[4, 2, 2, 1, 1]), &p(&[5, 3, 2])).unwrap());
        assert!(partition_leq(&p(&[3, 2]), &p(&[3, 2])).unwrap());
        assert!(!partition_leq(&p(&[3, 3]), &p(&[4, 2])).unwrap());
        assert!(matches!(
            partition_leq(&p(&[3]), &p(&[2])),
            Err(Error::WeightMismatch { .. })
        ));
        assert!(partition_lt(&p(&[1, 1]), &p(&[2])).unwrap());
        assert!(!partition_lt(&p(&[2]), &p(&[2])).unwrap());
    }

    #[test]
    fn partitions_enumerated() {
        let counts: Vec<usize> = (0..8).map(|k| partitions_of(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }
}
