//! Incremental sparse row echelon form over any [`Field`].
//!
//! Each stored row is normalized so that its largest column carries a 1;
//! that column is the row's pivot and no two rows share a pivot. Reducing a
//! vector eliminates pivot columns from the top down, so the residual is
//! supported on non-pivot columns only and is independent of how the rows
//! were inserted.

use std::collections::BTreeMap;

use crate::field::Field;

pub type SparseVec<E> = Vec<(u32, E)>;

const NO_PIVOT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Echelon<F> {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_PIVOT
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.rows.iter().map(|r| r.last().unwrap().0).collect();
        p.sort_unstable();
        p
    }

    /// Residual of `v` modulo the row space, ascending by column.
    pub fn reduce(&self, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let mut work: BTreeMap<u32, F::Elem> = BTreeMap::new();
        for (c, x) in v {
            assert!((*c as usize) < self.ncols, "column {c} out of range");
            if self.field.is_zero(x) {
                continue;
            }
            let slot = work.entry(*c).or_insert_with(|| self.field.zero());
            *slot = self.field.add(slot, x);
        }
        let mut residual = Vec::new();
        while let Some((c, x)) = work.pop_last() {
            if self.field.is_zero(&x) {
                continue;
            }
            let r = self.pivot_row[c as usize];
            if r == NO_PIVOT {
                residual.push((c, x));
                continue;
            }
            let row = &self.rows[r as usize];
            for (cc, y) in &row[..row.len() - 1] {
                let t = self.field.mul(&x, y);
                let slot = work.entry(*cc).or_insert_with(|| self.field.zero());
                *slot = self.field.sub(slot, &t);
            }
        }
        residual.reverse();
        residual
    }

    pub fn contains(&self, v: &[(u32, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Add `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(u32, F::Elem)]) -> bool {
        let mut residual = self.reduce(v);
        let Some((pivot, lead)) = residual.last().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        for (_, x) in residual.iter_mut() {
            *x = self.field.mul(x, &inv);
        }
        self.pivot_row[pivot as usize] = self.rows.len() as u32;
        self.rows.push(residual);
        true
    }

    /// Rewrite every row as its pivot plus entries on non-pivot columns only,
    /// and order rows by increasing pivot.
    pub fn make_reduced(&mut self) {
        for i in 0..self.rows.len() {
            let row = std::mem::take(&mut self.rows[i]);
            let (pivot, one) = row.last().cloned().unwrap();
            // take the row out of the pivot map while reducing its tail
            self.pivot_row[pivot as usize] = NO_PIVOT;
            let mut reduced = self.reduce(&row[..row.len() - 1]);
            reduced.push((pivot, one));
            self.pivot_row[pivot as usize] = i as u32;
            self.rows[i] = reduced;
        }
        self.rows.sort_by_key(|r| r.last().unwrap().0);
        for (i, r) in self.rows.iter().enumerate() {
            self.pivot_row[r.last().unwrap().0 as usize] = i as u32;
        }
    }

    /// Rebuild from rows that already satisfy the pivot invariant (as written
    /// by [`Echelon::rows`]); returns `None` if they do not.
    pub fn from_rows(field: F, ncols: usize, rows: Vec<SparseVec<F::Elem>>) -> Option<Echelon<F>> {
        let mut e = Echelon::new(field, ncols);
        for (i, r) in rows.iter().enumerate() {
            let (pivot, lead) = r.last()?;
            if *pivot as usize >= ncols
                || *lead != e.field.one()
                || e.pivot_row[*pivot as usize] != NO_PIVOT
                || r.windows(2).any(|w| w[0].0 >= w[1].0)
            {
                return None;
            }
            e.pivot_row[*pivot as usize] = i as u32;
        }
        e.rows = rows;
        Some(e)
    }
}
