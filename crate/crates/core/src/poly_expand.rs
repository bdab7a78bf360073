//! Monomial-level ground truth: determinant expansion, staircase matrices,
//! antisymmetric projection and brute-force membership in `(x,y)I`.
//!
//! Monomials over `x_1, y_1, …, x_n, y_n` are exponent vectors of length
//! `2n` laid out as `[a_1, b_1, a_2, b_2, …]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::alternants::AltVector;
use crate::diagrams::{canonicalize, enumerate_diagrams, BlockStructure, Diagram, Point};
use crate::echelon::Echelon;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};

pub type Monomial = Vec<u32>;

pub const DEFAULT_EXPAND_LIMIT: usize = 7;
pub const DEFAULT_DET_LIMIT: usize = 6;
pub const DEFAULT_MEMBERSHIP_N_LIMIT: usize = 5;
pub const DEFAULT_MEMBERSHIP_COLUMN_LIMIT: usize = 20_000;

/// Sparse polynomial in `x_1, y_1, …, x_n, y_n` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> MultiPoly {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> MultiPoly {
        MultiPoly::monomial(n, vec![0; 2 * n], BigInt::one())
    }

    pub fn monomial(n: usize, exps: Monomial, c: BigInt) -> MultiPoly {
        assert_eq!(exps.len(), 2 * n, "exponent vector length");
        let mut p = MultiPoly::zero(n);
        p.add_term(exps, c);
        p
    }

    /// `x_i`, 1-based.
    pub fn x(n: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; 2 * n];
        e[2 * (i - 1)] = 1;
        MultiPoly::monomial(n, e, BigInt::one())
    }

    /// `y_i`, 1-based.
    pub fn y(n: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; 2 * n];
        e[2 * (i - 1) + 1] = 1;
        MultiPoly::monomial(n, e, BigInt::one())
    }

    /// The polarized power sum `Σ_i x_i^c y_i^e`.
    pub fn power_sum(n: usize, c: u32, e: u32) -> MultiPoly {
        let mut p = MultiPoly::zero(n);
        for i in 0..n {
            let mut m = vec![0; 2 * n];
            m[2 * i] = c;
            m[2 * i + 1] = e;
            p.add_term(m, BigInt::one());
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n);
        let mut out = MultiPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// The common `(x-degree, y-degree)` of all terms; `None` when the
    /// polynomial is zero or not bihomogeneous.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut found = None;
        for m in self.terms.keys() {
            let b = monomial_bidegree(m);
            match found {
                None => found = Some(b),
                Some(f) if f != b => return None,
                _ => {}
            }
        }
        found
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&(m, c.to_string()))?;
        }
        seq.end()
    }
}

pub fn monomial_bidegree(m: &[u32]) -> (u32, u32) {
    let x = m.iter().step_by(2).sum();
    let y = m.iter().skip(1).step_by(2).sum();
    (x, y)
}

/// Calls `f(perm, odd)` for every permutation of `0..n`, with the parity
/// of the permutation.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], bool)) {
    fn rec(k: usize, perm: &mut Vec<usize>, odd: bool, f: &mut impl FnMut(&[usize], bool)) {
        if k == perm.len() {
            f(perm, odd);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, odd ^ (i != k), f);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    rec(0, &mut perm, false, &mut f);
}

fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::SizeGuard { what, value, limit });
    }
    Ok(())
}

/// `Δ(D)` as an explicit polynomial: `det[x_i^{α_j} y_i^{β_j}]`.
pub fn expand_delta(d: &Diagram) -> Result<MultiPoly> {
    expand_delta_with_limit(d, DEFAULT_EXPAND_LIMIT)
}

pub fn expand_delta_with_limit(d: &Diagram, max_n: usize) -> Result<MultiPoly> {
    expand_points(d.points(), max_n)
}

/// Determinant expansion of an ordered point list; zero on a repeated point.
pub fn expand_points(points: &[Point], max_n: usize) -> Result<MultiPoly> {
    let n = points.len();
    guard("points in determinant expansion", n, max_n)?;
    let mut p = MultiPoly::zero(n);
    for_each_permutation(n, |perm, odd| {
        let mut m = vec![0; 2 * n];
        for (i, &j) in perm.iter().enumerate() {
            m[2 * i] = points[j].0;
            m[2 * i + 1] = points[j].1;
        }
        p.add_term(m, if odd { -BigInt::one() } else { BigInt::one() });
    });
    Ok(p)
}

/// One factor `x_i - x_ℓ` or `y_i - y_ℓ` of a staircase entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    X,
    Y,
}

/// Order in which the factors of each staircase column are extracted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ReductionPolicy {
    /// All `α` x-factors, then the `β` y-factors.
    #[default]
    XFirst,
    YFirst,
    /// Alternate x and y starting with x while both remain.
    Interleaved,
}

impl ReductionPolicy {
    fn word(self, alpha: u32, beta: u32) -> Vec<Letter> {
        let (a, b) = (alpha as usize, beta as usize);
        match self {
            ReductionPolicy::XFirst => [vec![Letter::X; a], vec![Letter::Y; b]].concat(),
            ReductionPolicy::YFirst => [vec![Letter::Y; b], vec![Letter::X; a]].concat(),
            ReductionPolicy::Interleaved => {
                let mut w = Vec::with_capacity(a + b);
                let (mut xs, mut ys) = (a, b);
                while xs > 0 || ys > 0 {
                    if xs > 0 {
                        w.push(Letter::X);
                        xs -= 1;
                    }
                    if ys > 0 {
                        w.push(Letter::Y);
                        ys -= 1;
                    }
                }
                w
            }
        }
    }
}

/// `n × n` matrix whose entry `(i, j)` is zero for `i <= s_j` and otherwise
/// the product `∏_{ℓ <= s_j} (z_i - z_ℓ)` with `z` chosen per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseMatrix {
    degrees: Vec<u32>,
    // column-major: column j holds the word shared by all its nonzero rows
    columns: Vec<Vec<Letter>>,
    // entries forced to zero outside the pattern (block diagonal form)
    masked: Vec<Vec<bool>>,
}

impl StaircaseMatrix {
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// The word at 1-based `(row, col)`, or `None` for a zero entry. The
    /// empty word is the constant 1.
    pub fn cell(&self, row: usize, col: usize) -> Option<&[Letter]> {
        let (i, j) = (row - 1, col - 1);
        if self.masked[i][j] || row as u32 <= self.degrees[j] {
            return None;
        }
        Some(&self.columns[j])
    }

    /// The entry written out, e.g. `x51y52x53x54`, `1` or `0`.
    pub fn cell_label(&self, row: usize, col: usize) -> String {
        match self.cell(row, col) {
            None => "0".into(),
            Some([]) => "1".into(),
            Some(word) => {
                let wide = self.n() > 9;
                word.iter()
                    .enumerate()
                    .map(|(l, letter)| {
                        let v = match letter {
                            Letter::X => 'x',
                            Letter::Y => 'y',
                        };
                        if wide {
                            format!("{v}({row},{})", l + 1)
                        } else {
                            format!("{v}{row}{}", l + 1)
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        (1..=self.n())
            .map(|i| (1..=self.n()).map(|j| self.cell_label(i, j)).collect())
            .collect()
    }

    /// The entry as a polynomial.
    pub fn entry_poly(&self, row: usize, col: usize) -> MultiPoly {
        let n = self.n();
        let Some(word) = self.cell(row, col) else {
            return MultiPoly::zero(n);
        };
        let mut p = MultiPoly::one(n);
        for (l, letter) in word.iter().enumerate() {
            let diff = match letter {
                Letter::X => MultiPoly::x(n, row).sub(&MultiPoly::x(n, l + 1)),
                Letter::Y => MultiPoly::y(n, row).sub(&MultiPoly::y(n, l + 1)),
            };
            p = p.mul(&diff);
        }
        p
    }
}

impl fmt::Display for StaircaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.labels();
        let width = labels.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in &labels {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

/// The staircase form of `D` under the given factor order.
pub fn staircase_reduce(d: &Diagram, policy: ReductionPolicy) -> StaircaseMatrix {
    let n = d.len();
    StaircaseMatrix {
        degrees: d.degrees(),
        columns: d.points().iter().map(|p| policy.word(p.0, p.1)).collect(),
        masked: vec![vec![false; n]; n],
    }
}

/// Zero every entry outside the diagonal blocks cut at `{j : s_j = j - 1}`.
pub fn block_diagonal(s: &StaircaseMatrix) -> Result<StaircaseMatrix> {
    let blocks = BlockStructure::from_degrees(s.degrees())?;
    let n = s.n();
    let mut block_of = vec![0usize; n];
    for (b, (&start, &size)) in blocks.starts.iter().zip(&blocks.sizes).enumerate() {
        for slot in &mut block_of[start - 1..start - 1 + size] {
            *slot = b;
        }
    }
    let mut out = s.clone();
    for i in 0..n {
        for j in 0..n {
            if block_of[i] != block_of[j] {
                out.masked[i][j] = true;
            }
        }
    }
    Ok(out)
}

pub fn det_staircase(s: &StaircaseMatrix) -> Result<MultiPoly> {
    det_staircase_with_limit(s, DEFAULT_DET_LIMIT)
}

/// Determinant by expansion over permutations that avoid zero entries.
pub fn det_staircase_with_limit(s: &StaircaseMatrix, max_n: usize) -> Result<MultiPoly> {
    let n = s.n();
    guard("staircase determinant size", n, max_n)?;
    let entries: Vec<Vec<Option<MultiPoly>>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| s.cell(i, j).map(|_| s.entry_poly(i, j)))
                .collect()
        })
        .collect();

    fn rec(
        col: usize,
        used: &mut [bool],
        odd: bool,
        acc: &MultiPoly,
        entries: &[Vec<Option<MultiPoly>>],
        perm_rows: &mut Vec<usize>,
        out: &mut MultiPoly,
    ) {
        let n = used.len();
        if col == n {
            let sign = if odd { -BigInt::one() } else { BigInt::one() };
            *out = out.add(&acc.scale(&sign));
            return;
        }
        for row in 0..n {
            if used[row] {
                continue;
            }
            let Some(e) = &entries[row][col] else {
                continue;
            };
            // parity of the new inversion count: rows already placed above `row`
            let inversions = perm_rows.iter().filter(|&&r| r > row).count();
            used[row] = true;
            perm_rows.push(row);
            rec(
                col + 1,
                used,
                odd ^ (inversions % 2 == 1),
                &acc.mul(e),
                entries,
                perm_rows,
                out,
            );
            perm_rows.pop();
            used[row] = false;
        }
    }
    let mut out = MultiPoly::zero(n);
    rec(
        0,
        &mut vec![false; n],
        false,
        &MultiPoly::one(n),
        &entries,
        &mut Vec::new(),
        &mut out,
    );
    Ok(out)
}

/// `(1/n!) Σ_σ sgn(σ) σ(f)` in `Δ` coordinates. A monomial with per-index
/// exponent pairs `P_1, …, P_n` projects to `Δ(P_1, …, P_n) / n!`.
pub fn alt_project(f: &MultiPoly) -> Result<AltVector> {
    let n = f.n();
    guard("points in antisymmetrization", n, DEFAULT_EXPAND_LIMIT)?;
    let bidegree = match (f.is_zero(), f.bidegree()) {
        (true, _) => (0, 0),
        (false, Some(b)) => b,
        (false, None) => {
            return Err(Error::InvalidDiagram(
                "polynomial is not bihomogeneous".into(),
            ))
        }
    };
    let factorial: BigInt = (1..=n as u64).map(BigInt::from).product();
    let mut v = AltVector::zero(n, bidegree);
    let mut points = Vec::with_capacity(n);
    for (m, c) in f.terms() {
        points.clear();
        points.extend((0..n).map(|i| Point(m[2 * i], m[2 * i + 1])));
        if let Some((d, sign)) = canonicalize(&points) {
            let coeff = BigRational::new(c * sign.as_i64(), factorial.clone());
            v.add_term(d, coeff)?;
        }
    }
    Ok(v)
}

/// Every monomial in `n` variables of total degree `deg`.
fn compositions(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, deg, &mut vec![0; n], &mut out);
    }
    out
}

/// All monomials of bidegree `(d1, d2)` in `x_1, y_1, …, x_n, y_n`.
pub fn bihomogeneous_monomials(n: usize, d1: u32, d2: u32) -> Vec<Monomial> {
    let xs = compositions(n, d1);
    let ys = compositions(n, d2);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for a in &xs {
        for b in &ys {
            out.push(
                (0..2 * n)
                    .map(|k| if k % 2 == 0 { a[k / 2] } else { b[k / 2] })
                    .collect(),
            );
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The bidegree `(d1, d2)` part of `(x,y)I` in the monomial basis, spanned
/// by `m · Δ(D')` over monomials `m` of positive degree.
#[derive(Debug)]
pub struct MonomialRelations {
    n: usize,
    bidegree: (u32, u32),
    columns: HashMap<Monomial, u32>,
    echelon: Echelon<Rationals>,
}

impl MonomialRelations {
    pub fn new(n: usize, d1: u32, d2: u32) -> Result<MonomialRelations> {
        MonomialRelations::with_limits(
            n,
            d1,
            d2,
            DEFAULT_MEMBERSHIP_N_LIMIT,
            DEFAULT_MEMBERSHIP_COLUMN_LIMIT,
        )
    }

    pub fn with_limits(
        n: usize,
        d1: u32,
        d2: u32,
        max_n: usize,
        max_columns: usize,
    ) -> Result<MonomialRelations> {
        guard("points in brute-force membership", n, max_n)?;
        let count = binomial(u64::from(d1) + n as u64 - 1, n as u64 - 1)
            * binomial(u64::from(d2) + n as u64 - 1, n as u64 - 1);
        guard(
            "monomials in brute-force membership",
            count as usize,
            max_columns,
        )?;
        let columns: HashMap<Monomial, u32> = bihomogeneous_monomials(n, d1, d2)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i as u32))
            .collect();
        let mut echelon = Echelon::new(Rationals, columns.len());
        'outer: for total in 1..=d1 + d2 {
            for c in 0..=total.min(d1) {
                let e = total - c;
                if e > d2 {
                    continue;
                }
                let lower = enumerate_diagrams(n, d1 - c, d2 - e, false);
                if lower.is_empty() {
                    continue;
                }
                let multipliers = bihomogeneous_monomials(n, c, e);
                for dp in &lower {
                    let delta = expand_delta_with_limit(dp, max_n)?;
                    for m in &multipliers {
                        let row: Vec<(u32, BigRational)> = delta
                            .terms()
                            .map(|(t, coeff)| {
                                let prod: Monomial = t.iter().zip(m).map(|(a, b)| a + b).collect();
                                (columns[&prod], BigRational::from_integer(coeff.clone()))
                            })
                            .collect();
                        echelon.insert(&row);
                        if echelon.is_full() {
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(MonomialRelations {
            n,
            bidegree: (d1, d2),
            columns,
            echelon,
        })
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// Exact membership of `f` in the relation space.
    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        if f.n() != self.n {
            return Err(Error::PointCountMismatch {
                expected: self.n,
                found: f.n(),
            });
        }
        if f.is_zero() {
            return Ok(true);
        }
        let mut row = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let b = monomial_bidegree(m);
            let Some(&col) = self.columns.get(m) else {
                return Err(Error::BidegreeMismatch {
                    expected: self.bidegree,
                    found: b,
                });
            };
            row.push((
                col,
                Rationals.from_rational(&BigRational::from_integer(c.clone()))?,
            ));
        }
        Ok(self.echelon.contains(&row))
    }
}

/// Whether `f ∈ ((x,y)I)_{d1,d2}`, by exact elimination in the monomial basis.
pub fn membership_bruteforce(f: &MultiPoly, n: usize, d1: u32, d2: u32) -> Result<bool> {
    MonomialRelations::new(n, d1, d2)?.contains(f)
}

/// Integer polynomial from `AltVector` coordinates, scaled to clear
/// denominators; the scale is positive so membership is unaffected.
pub fn expand_alt_vector(v: &AltVector) -> Result<MultiPoly> {
    let mut lcm = BigInt::one();
    for (_, c) in v.terms() {
        lcm = num_integer::Integer::lcm(&lcm, c.denom());
    }
    let mut out = MultiPoly::zero(v.n());
    for (d, c) in v.terms() {
        let k = (c * BigRational::from_integer(lcm.clone())).to_integer();
        out = out.add(&expand_delta(d)?.scale(&k));
    }
    debug_assert!(lcm.is_positive());
    Ok(out)
}

/// The five-point diagram `(0,0),(1,0),(0,2),(1,1),(3,1)` used by the
/// staircase demonstration.
pub fn demo_diagram() -> Diagram {
    Diagram::new(vec![
        Point(0, 0),
        Point(1, 0),
        Point(0, 2),
        Point(1, 1),
        Point(3, 1),
    ])
    .expect("standard order")
}

#[derive(Clone, Debug)]
pub struct StaircaseCheck {
    pub matrix: StaircaseMatrix,
    pub block: StaircaseMatrix,
    /// `det B(S) = det S` as polynomials.
    pub block_det_agrees: bool,
    /// `det S - Δ(D) ∈ (x,y)I`, by monomial-basis elimination.
    pub congruent: bool,
}

pub fn check_staircase(d: &Diagram, policy: ReductionPolicy) -> Result<StaircaseCheck> {
    let matrix = staircase_reduce(d, policy);
    let block = block_diagonal(&matrix)?;
    let det = det_staircase(&matrix)?;
    let block_det_agrees = det == det_staircase(&block)?;
    let diff = det.sub(&expand_delta(d)?);
    let (d1, d2) = d.bidegree();
    let congruent = membership_bruteforce(&diff, d.len(), d1, d2)?;
    Ok(StaircaseCheck {
        matrix,
        block,
        block_det_agrees,
        congruent,
    })
}
