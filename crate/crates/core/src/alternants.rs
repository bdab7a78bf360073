//! Alternating polynomials in the `Δ(D)` basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::diagrams::{bidegree_of, canonicalize, Diagram, Point};
use crate::error::{Error, Result};

/// A finite linear combination of `Δ(D)` with exact rational coefficients,
/// homogeneous of one bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltVector {
    n: usize,
    bidegree: (u32, u32),
    terms: BTreeMap<Diagram, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    diagram: Diagram,
    coefficient: String,
}

impl AltVector {
    pub fn zero(n: usize, bidegree: (u32, u32)) -> AltVector {
        AltVector {
            n,
            bidegree,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector `Δ(D)`.
    pub fn delta(d: &Diagram) -> AltVector {
        let mut v = AltVector::zero(d.len(), d.bidegree());
        v.terms.insert(d.clone(), BigRational::one());
        v
    }

    /// `Δ` of an ordered point list: the signed canonical basis vector, or
    /// zero when two points coincide.
    pub fn from_points(points: &[Point]) -> AltVector {
        let mut v = AltVector::zero(points.len(), bidegree_of(points));
        if let Some((d, sign)) = canonicalize(points) {
            v.terms
                .insert(d, BigRational::from_integer(sign.as_i64().into()));
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
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

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> BigRational {
        self.terms.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Add `c · Δ(d)`.
    pub fn add_term(&mut self, d: Diagram, c: BigRational) -> Result<()> {
        self.check_compatible(d.len(), d.bidegree())?;
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(d) {
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
        Ok(())
    }

    fn add_signed(&mut self, points: &[Point], c: &BigRational) {
        if let Some((d, sign)) = canonicalize(points) {
            let c = if sign.as_i64() < 0 {
                -c.clone()
            } else {
                c.clone()
            };
            // bidegree and size agree by construction
            self.add_term(d, c).expect("homogeneous term");
        }
    }

    fn check_compatible(&self, n: usize, bidegree: (u32, u32)) -> Result<()> {
        if n != self.n {
            return Err(Error::PointCountMismatch {
                expected: self.n,
                found: n,
            });
        }
        if bidegree != self.bidegree {
            return Err(Error::BidegreeMismatch {
                expected: self.bidegree,
                found: bidegree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AltVector) -> Result<AltVector> {
        self.check_compatible(other.n, other.bidegree)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AltVector) -> Result<AltVector> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> AltVector {
        if k.is_zero() {
            return AltVector::zero(self.n, self.bidegree);
        }
        AltVector {
            n: self.n,
            bidegree: self.bidegree,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> AltVector {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Multiply by the polarized power sum `Σ_i x_i^c y_i^e`: each term
    /// `Δ(D)` becomes `Σ_j Δ(D with P_j moved by (c, e))`.
    pub fn pieri_multiply(&self, c: u32, e: u32) -> Result<AltVector> {
        if c == 0 && e == 0 {
            return Err(Error::InvalidShift);
        }
        let mut out = AltVector::zero(self.n, (self.bidegree.0 + c, self.bidegree.1 + e));
        let mut buf: Vec<Point> = Vec::with_capacity(self.n);
        for (d, coeff) in &self.terms {
            for j in 0..d.len() {
                buf.clear();
                buf.extend_from_slice(d.points());
                buf[j] = Point(buf[j].0 + c, buf[j].1 + e);
                out.add_signed(&buf, coeff);
            }
        }
        Ok(out)
    }

    /// JSON list of `{diagram, coefficient}` records.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Inverse of [`AltVector::to_json`]; `n` and the bidegree are needed to
    /// type the empty list.
    pub fn from_json(n: usize, bidegree: (u32, u32), s: &str) -> Result<AltVector> {
        let records: Vec<TermRecord> = serde_json::from_str(s)?;
        let mut v = AltVector::zero(n, bidegree);
        for r in records {
            let c: BigRational = r
                .coefficient
                .parse()
                .map_err(|_| Error::InvalidDiagram(format!("bad coefficient {}", r.coefficient)))?;
            v.add_term(r.diagram, c)?;
        }
        Ok(v)
    }
}

impl Serialize for AltVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (d, c) in &self.terms {
            seq.serialize_element(&TermRecord {
                diagram: d.clone(),
                coefficient: c.to_string(),
            })?;
        }
        seq.end()
    }
}

/// The signed canonical terms of `p_{c,e} · Δ(d)`; colliding bumps are
/// dropped. No two bumps of distinct points give the same diagram.
pub fn bump_terms(d: &Diagram, c: u32, e: u32) -> Vec<(Diagram, i64)> {
    let mut out = Vec::with_capacity(d.len());
    let mut buf: Vec<Point> = Vec::with_capacity(d.len());
    for j in 0..d.len() {
        buf.clear();
        buf.extend_from_slice(d.points());
        buf[j] = Point(buf[j].0 + c, buf[j].1 + e);
        if let Some((canon, sign)) = canonicalize(&buf) {
            out.push((canon, sign.as_i64()));
        }
    }
    out
}

/// Free-function form of [`AltVector::pieri_multiply`].
pub fn pieri_multiply(c: u32, e: u32, v: &AltVector) -> Result<AltVector> {
    v.pieri_multiply(c, e)
}
