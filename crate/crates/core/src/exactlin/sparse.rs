//! Sparse rows and an incremental echelon builder.
//!
//! Constraint systems for cochain spaces have tens of thousands of rows with
//! two or three nonzeros each. [`Echelon`] absorbs rows one at a time and
//! keeps a semi-reduced basis of the row space; [`Echelon::finish`] then
//! back-substitutes into the unique reduced row-echelon form.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Scalar, Vector};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Self { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vector {
        let mut out = vec![Scalar::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&mut self, factor: &Scalar) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v *= factor;
        }
    }

    /// `self - factor * other`.
    pub fn sub_scaled(&self, factor: &Scalar, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, -(factor * y)));
                        b.next();
                    } else {
                        let v = x - factor * y;
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, -(factor * y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    /// Keeps only entries with index below `bound`, re-indexed unchanged.
    pub fn truncated(&self, bound: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i < bound)
                .cloned()
                .collect(),
        }
    }
}

/// Incremental row-echelon builder over a fixed column count.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current basis by leading entries only.
    fn reduce_leading(&self, mut row: SparseVec) -> SparseVec {
        while let Some((lead, value)) = row.leading() {
            let Some(&r) = self.pivot_row.get(lead) else {
                break;
            };
            let factor = value.clone();
            row = row.sub_scaled(&factor, &self.rows[r]);
        }
        row
    }

    /// Adds a row; returns `true` when it was independent of earlier rows.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        debug_assert!(row.entries().last().is_none_or(|(i, _)| *i < self.width));
        let mut row = self.reduce_leading(row);
        let Some((lead, value)) = row.leading() else {
            return false;
        };
        let lead = *lead;
        let inv = value.recip();
        row.scale(&inv);
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Whether `row` lies in the current row space.
    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce_leading(row.clone()).is_zero()
    }

    /// Back-substitutes into reduced row-echelon form.
    pub fn finish(self) -> SparseRref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].entries[0].0));
        let mut done: HashMap<usize, SparseVec> = HashMap::new();
        for r in order {
            let mut row = self.rows[r].clone();
            let pivot = row.entries[0].0;
            loop {
                let target = row
                    .entries
                    .iter()
                    .skip(1)
                    .find(|(c, _)| done.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()));
                let Some((c, v)) = target else { break };
                row = row.sub_scaled(&v, &done[&c]);
            }
            done.insert(pivot, row);
        }
        let mut rows: Vec<(usize, SparseVec)> = done.into_iter().collect();
        rows.sort_by_key(|(p, _)| *p);
        SparseRref {
            width: self.width,
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        }
    }
}

/// Reduced row-echelon form with sparse rows, sorted by pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRref {
    width: usize,
    rows: Vec<SparseVec>,
}

impl SparseRref {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.entries[0].0).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let pivots = self.pivots();
        (0..self.width)
            .filter(|c| pivots.binary_search(c).is_err())
            .collect()
    }

    /// Canonical kernel basis, identical to the dense `nullspace_basis`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        let slot: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut pairs: Vec<Vec<(usize, Scalar)>> =
            free.iter().map(|&c| vec![(c, Scalar::one())]).collect();
        for row in &self.rows {
            let pivot = row.entries[0].0;
            for (c, v) in row.entries.iter().skip(1) {
                if let Some(&k) = slot.get(c) {
                    pairs[k].push((pivot, -v));
                }
            }
        }
        pairs.into_iter().map(SparseVec::from_pairs).collect()
    }
}

/// Solves `sum_j x_j columns[j] = target` exactly, returning the canonical
/// solution (free variables zero) or `None` if `target` is outside the span.
pub fn solve_in_span(columns: &[SparseVec], target: &SparseVec) -> Option<Vector> {
    let ncols = columns.len();
    // Row i of the augmented system [C | t] gathers entry i of every column.
    let mut by_row: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.entries() {
            by_row.entry(*i).or_default().push((j, v.clone()));
        }
    }
    for (i, v) in target.entries() {
        by_row.entry(*i).or_default().push((ncols, v.clone()));
    }
    let mut keys: Vec<usize> = by_row.keys().copied().collect();
    keys.sort_unstable();
    let mut e = Echelon::new(ncols + 1);
    for k in keys {
        e.insert(SparseVec::from_pairs(by_row.remove(&k).unwrap()));
    }
    let r = e.finish();
    if r.pivots().last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for row in r.rows() {
        let pivot = row.entries[0].0;
        x[pivot] = row.get(ncols).cloned().unwrap_or_else(Scalar::zero);
    }
    Some(x)
}

/// Rank of a set of sparse vectors.
pub fn rank_of(vectors: &[SparseVec], width: usize) -> usize {
    let mut e = Echelon::new(width);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Kernel of the map `y -> sum_j y_j columns[j]`, as a canonical basis of
/// coefficient vectors (length `columns.len()`).
pub fn column_kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let ncols = columns.len();
    let mut by_row: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.entries() {
            by_row.entry(*i).or_default().push((j, v.clone()));
        }
    }
    let mut keys: Vec<usize> = by_row.keys().copied().collect();
    keys.sort_unstable();
    let mut e = Echelon::new(ncols);
    for k in keys {
        e.insert(SparseVec::from_pairs(by_row.remove(&k).unwrap()));
    }
    e.finish().nullspace()
}
