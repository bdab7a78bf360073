//! Dyck-path statistics, the q,t-Catalan polynomial and partition counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{
    is_minimal_staircase, partition_type, staircase_degree, Diagram, PartitionType, Point,
};
use crate::error::{Error, Result};
use crate::graded_module::GradedModule;

/// A weakly decreasing `λ` of length `n` with `λ_i <= n - i` (1-based), so
/// `λ_n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StaircaseLambda(Vec<u32>);

impl StaircaseLambda {
    pub fn new(parts: Vec<u32>) -> Result<StaircaseLambda> {
        let n = parts.len();
        if n == 0 {
            return Err(Error::InvalidDiagram("empty λ".into()));
        }
        for (i, &x) in parts.iter().enumerate() {
            if x as usize > n - 1 - i {
                return Err(Error::InvalidDiagram(format!(
                    "λ_{} = {x} exceeds {}",
                    i + 1,
                    n - 1 - i
                )));
            }
            if i > 0 && parts[i - 1] < x {
                return Err(Error::InvalidDiagram(format!(
                    "λ is not weakly decreasing at {}",
                    i + 1
                )));
            }
        }
        Ok(StaircaseLambda(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }
}

impl TryFrom<Vec<u32>> for StaircaseLambda {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<StaircaseLambda> {
        StaircaseLambda::new(v)
    }
}

impl From<StaircaseLambda> for Vec<u32> {
    fn from(l: StaircaseLambda) -> Vec<u32> {
        l.0
    }
}

impl std::fmt::Display for StaircaseLambda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All of `Λ_n` in lexicographic order.
pub fn enumerate_lambda(n: usize) -> Vec<StaircaseLambda> {
    fn rec(n: usize, i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<StaircaseLambda>) {
        if i == n {
            out.push(StaircaseLambda(cur.clone()));
            return;
        }
        let hi = cap.min((n - 1 - i) as u32);
        for x in 0..=hi {
            cur.push(x);
            rec(n, i + 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 0, u32::MAX, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// `a(λ) = Σ (n - i - λ_i)`, the area between `λ` and the staircase.
pub fn stat_a(l: &StaircaseLambda) -> u32 {
    let n = l.n();
    l.0.iter()
        .enumerate()
        .map(|(i, &x)| (n - 1 - i) as u32 - x)
        .sum()
}

/// `b(λ) = #{i < j : λ_i - λ_j + i - j ∈ {0, 1}}`.
pub fn stat_b(l: &StaircaseLambda) -> u32 {
    let p = &l.0;
    let mut b = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let v = i64::from(p[i]) - i64::from(p[j]) + i as i64 - j as i64;
            if v == 0 || v == 1 {
                b += 1;
            }
        }
    }
    b
}

/// Sparse bivariate polynomial with natural coefficients, keyed by
/// `(d1, d2)`: the `t`-exponent, then the `q`-exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QtPolynomial {
    pub n: usize,
    coeffs: BTreeMap<(u32, u32), u64>,
}

#[derive(Serialize, Deserialize)]
struct QtRecord {
    n: usize,
    coeffs: Vec<(u32, u32, u64)>,
}

impl QtPolynomial {
    pub fn new(n: usize) -> QtPolynomial {
        QtPolynomial {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, d1: u32, d2: u32, c: u64) {
        if c > 0 {
            *self.coeffs.entry((d1, d2)).or_insert(0) += c;
        }
    }

    pub fn coefficient(&self, d1: u32, d2: u32) -> u64 {
        self.coeffs.get(&(d1, d2)).copied().unwrap_or(0)
    }

    /// Nonzero terms in lexicographic order of `(d1, d2)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.coeffs.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(a, b, c)| self.coefficient(b, a) == c)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&QtRecord {
            n: self.n,
            coeffs: self.terms().collect(),
        })?)
    }

    pub fn from_json(s: &str) -> Result<QtPolynomial> {
        let r: QtRecord = serde_json::from_str(s)?;
        let mut p = QtPolynomial::new(r.n);
        for (a, b, c) in r.coeffs {
            p.add(a, b, c);
        }
        Ok(p)
    }
}

impl std::fmt::Display for QtPolynomial {
    /// Terms as `q^a t^b`, highest total degree first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&(d1, d2, _)| (std::cmp::Reverse(d1 + d2), std::cmp::Reverse(d2)));
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mono = |v: &str, e: u32| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let rendered: Vec<String> = terms
            .iter()
            .map(|&(d1, d2, c)| {
                let m = format!("{}{}", mono("q", d2), mono("t", d1));
                match (c, m.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => m,
                    _ => format!("{c}{m}"),
                }
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

/// `C_n(q,t) = Σ_λ q^{a(λ)} t^{b(λ)}`; the coefficient at `(d1, d2)` counts
/// `λ` with `b(λ) = d1` and `a(λ) = d2`.
pub fn qt_catalan(n: usize) -> QtPolynomial {
    let mut p = QtPolynomial::new(n);
    for l in enumerate_lambda(n) {
        p.add(stat_b(&l), stat_a(&l), 1);
    }
    p
}

/// Number of partitions of `k`.
pub fn p_of(k: u32) -> u64 {
    p_bounded(k, k)
}

/// Number of partitions of `k` into at most `δ` parts; `p(δ, 0) = 1` and
/// `p(0, k) = 0` for `k > 0`.
pub fn p_bounded(delta: u32, k: u32) -> u64 {
    // at most δ parts ⟺ (by conjugation) parts of size at most δ
    let k = k as usize;
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for part in 1..=(delta as usize).min(k) {
        for total in part..=k {
            ways[total] = ways[total]
                .checked_add(ways[total - part])
                .expect("partition count overflows u64");
        }
    }
    ways[k]
}

/// A minimal staircase form of bidegree `(d1, d2)` and type `μ`.
///
/// Blocks are laid out as the singletons first, then one block of size
/// `m + 1` per part `m`, smallest part first. Each level of the resulting
/// degree vector holds one or two points; α is assigned from the top level
/// down, as large as the remaining budget allows.
pub fn construct_minimal_staircase(
    n: usize,
    d1: u32,
    d2: u32,
    mu: &PartitionType,
) -> Result<Diagram> {
    let infeasible = || Error::Infeasible {
        n,
        d1,
        d2,
        partition: mu.to_string(),
    };
    let k = mu.weight();
    let total = staircase_degree(n).checked_sub(k).ok_or_else(infeasible)?;
    if d1 + d2 != total {
        return Err(Error::BidegreeMismatch {
            expected: (d1, total.saturating_sub(d1)),
            found: (d1, d2),
        });
    }
    let blocks = mu.parts().len();
    let big: usize = mu.parts().iter().map(|&m| m as usize + 1).sum();
    // the first block must be a singleton or two points share degree 0
    let singles = n.checked_sub(big).ok_or_else(infeasible)?;
    if n == 0 || (blocks > 0 && singles == 0) {
        return Err(infeasible());
    }
    let mut sizes = vec![1usize; singles];
    let mut parts: Vec<u32> = mu.parts().to_vec();
    parts.sort_unstable();
    sizes.extend(parts.iter().map(|&m| m as usize + 1));

    let mut degrees = Vec::with_capacity(n);
    for size in sizes {
        let r = degrees.len() as u32 + 1;
        degrees.push(r - 1);
        for i in 1..size as u32 {
            degrees.push(r + i - 2);
        }
    }

    // levels, each with one or two points
    let mut levels: Vec<(u32, usize)> = Vec::new();
    for &s in &degrees {
        match levels.last_mut() {
            Some((v, c)) if *v == s => *c += 1,
            _ => levels.push((s, 1)),
        }
    }
    let range = |&(v, c): &(u32, usize)| if c == 1 { (0, v) } else { (1, 2 * v - 1) };
    if levels.iter().any(|&(v, c)| c > 2 || (c == 2 && v == 0)) {
        return Err(infeasible());
    }
    let lo: u32 = levels.iter().map(|l| range(l).0).sum();
    let hi: u32 = levels.iter().map(|l| range(l).1).sum();
    if d1 < lo || d1 > hi {
        return Err(infeasible());
    }

    let mut points = Vec::with_capacity(n);
    let mut budget = d1;
    let mut rest_lo = lo;
    for level in levels.iter().rev() {
        let (v, c) = *level;
        let (l, h) = range(level);
        rest_lo -= l;
        let sigma = h.min(budget - rest_lo);
        budget -= sigma;
        if c == 1 {
            points.push(Point(sigma, v - sigma));
        } else {
            let a = v.min(sigma);
            let b = sigma - a;
            points.push(Point(a, v - a));
            points.push(Point(b, v - b));
        }
    }
    debug_assert_eq!(budget, 0);
    points.sort_by_key(|p| (p.degree(), p.0));
    let d = Diagram::new(points)?;
    debug_assert!(is_minimal_staircase(&d));
    debug_assert_eq!(partition_type(&d).ok().as_ref(), Some(mu));
    Ok(d)
}

/// All 0/1 vectors `ε` of length `u` with `Σ ε_i = k` and
/// `Σ i ε_i = k(k+1)/2`, in lexicographic order of their supports.
pub fn zero_one_solutions(u: usize, k: usize) -> Vec<Vec<u8>> {
    fn rec(
        u: usize,
        start: usize,
        left: usize,
        sum_left: i64,
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if left == 0 {
            if sum_left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..u {
            // the smallest remaining choices already overshoot
            let min_rest = (left as i64) * (i as i64) + (left as i64) * (left as i64 - 1) / 2;
            if min_rest > sum_left {
                break;
            }
            cur[i] = 1;
            rec(u, i + 1, left - 1, sum_left - i as i64, cur, out);
            cur[i] = 0;
        }
    }
    let mut out = Vec::new();
    rec(u, 0, k, (k * (k + 1) / 2) as i64, &mut vec![0; u], &mut out);
    out
}

/// The `λ = (u + ε_0, u - 1 + ε_1, …, 1 + ε_{u-1}, 0, …, 0)` of length `n`
/// over all zero-one solutions. Each satisfies `b(λ) = u(u+1)/2` and
/// `a(λ) = v(v+1)/2 + uv - k` with `v = n - 1 - u`.
pub fn zero_one_lambdas(u: usize, k: usize, n: usize) -> Result<Vec<StaircaseLambda>> {
    if k > u || n < 2 || u > n - 2 {
        return Err(Error::PreconditionViolation(format!(
            "need k <= u <= n-2, got k={k} u={u} n={n}"
        )));
    }
    if u < 2 * k {
        return Err(Error::PreconditionViolation(format!(
            "need u >= 2k for the full solution set, got u={u} k={k}"
        )));
    }
    let v = n - 1 - u;
    let want_b = (u * (u + 1) / 2) as u32;
    let want_a = (v * (v + 1) / 2 + u * v - k) as u32;
    let mut out = Vec::new();
    for eps in zero_one_solutions(u, k) {
        let mut parts: Vec<u32> = (0..u).map(|i| (u - i) as u32 + u32::from(eps[i])).collect();
        parts.resize(n, 0);
        let l = StaircaseLambda::new(parts)?;
        assert_eq!(
            (stat_b(&l), stat_a(&l)),
            (want_b, want_a),
            "statistics of {l}"
        );
        out.push(l);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PdkEntry {
    pub d1: u32,
    pub d2: u32,
    pub k: u32,
    pub dim_m: usize,
    pub expected: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PdkReport {
    pub n: usize,
    pub entries: Vec<PdkEntry>,
    pub mismatches: Vec<PdkEntry>,
}

impl PdkReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare `dim M_{d1,d2}` with `p(min(d1, d2), k)` on every bidegree of
/// deficit `k <= n - 3`.
pub fn conjecture_pdk_check(engine: &GradedModule, n: usize) -> Result<PdkReport> {
    let top = staircase_degree(n);
    let max_k = (n as u32).saturating_sub(3).min(top);
    let cells: Vec<(u32, u32, u32)> = (0..=max_k)
        .flat_map(|k| {
            let d = top - k;
            (0..=d).map(move |d1| (d1, d - d1, k))
        })
        .collect();
    let entries = cells
        .into_par_iter()
        .map(|(d1, d2, k)| {
            Ok(PdkEntry {
                d1,
                d2,
                k,
                dim_m: engine.dim_m(n, d1, d2)?.dim_m,
                expected: p_bounded(d1.min(d2), k),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mismatches = entries
        .iter()
        .filter(|e| e.dim_m as u64 != e.expected)
        .cloned()
        .collect();
    Ok(PdkReport {
        n,
        entries,
        mismatches,
    })
}
