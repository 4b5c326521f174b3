use std::sync::Arc;

use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Matrix, Scalar, SparseVec, Vector};
use crate::tensor::{support, MultiIndex};

use super::{Cochain, ComplexContext};

/// Canonical basis of a cochain space: the kernel basis of the constraint
/// system in reduced row-echelon convention (one basis cochain per free
/// coordinate, equal to 1 there and 0 at every other free coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainBasis {
    degree: usize,
    dim_t: usize,
    dim_v: usize,
    columns: Vec<SparseVec>,
    free: Vec<usize>,
    fingerprint: String,
}

impl CochainBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn raw_len(&self) -> usize {
        self.dim_t.pow(self.degree as u32) * self.dim_v
    }

    /// Raw tensor positions carrying the coordinates.
    pub fn free_positions(&self) -> &[usize] {
        &self.free
    }

    /// Hash of (context, degree, cap).
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn sparse_columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> Cochain {
        Cochain::from_sparse(self.degree, self.dim_t, self.dim_v, &self.columns[j])
    }

    pub fn columns(&self) -> Vec<Cochain> {
        (0..self.dim()).map(|j| self.column(j)).collect()
    }

    /// Basis cochains as the columns of a dense matrix.
    pub fn to_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = self.columns.iter().map(|c| c.to_dense(self.raw_len())).collect();
        Matrix::from_columns(self.raw_len(), &cols).expect("columns share the raw length")
    }

    /// `Σ_j coords[j] · basis_j`.
    pub fn combine(&self, coords: &[Scalar]) -> Cochain {
        Cochain::from_sparse(self.degree, self.dim_t, self.dim_v, &self.combine_sparse(coords))
    }

    pub(crate) fn combine_sparse(&self, coords: &[Scalar]) -> SparseVec {
        assert_eq!(coords.len(), self.dim(), "coordinate count");
        let mut pairs = Vec::new();
        for (c, col) in coords.iter().zip(&self.columns) {
            if c.is_zero() {
                continue;
            }
            pairs.extend(col.entries().iter().map(|(i, v)| (*i, c * v)));
        }
        SparseVec::from_pairs(pairs)
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    pub fn coordinates_sparse(&self, v: &SparseVec) -> Option<Vector> {
        let coords: Vector = self
            .free
            .iter()
            .map(|&p| v.get(p).cloned().unwrap_or_else(Scalar::zero))
            .collect();
        (self.combine_sparse(&coords) == *v).then_some(coords)
    }

    pub fn coordinates(&self, f: &Cochain) -> Option<Vector> {
        if f.degree() != self.degree || f.dim_t() != self.dim_t || f.dim_v() != self.dim_v {
            return None;
        }
        self.coordinates_sparse(&f.to_sparse())
    }
}

/// Sparse rows expanding `Σ_q B[p][q] f(x; q) − f(M x_1, …, M x_k; p)` for
/// every basis tuple `x` and output index `p`.
fn twist_rows(n: usize, m: usize, k: usize, on_t: &Matrix, on_v: &Matrix, rows: &mut Vec<SparseVec>) {
    let cols: Vec<Vec<(usize, Scalar)>> = (0..n)
        .map(|i| {
            let c = on_t.column(i);
            support(&c).into_iter().map(|(j, v)| (j, v.clone())).collect()
        })
        .collect();
    for idx in MultiIndex::new(n, k) {
        let base = idx.iter().fold(0, |acc, &i| acc * n + i);
        let slots: Vec<&[(usize, Scalar)]> = idx.iter().map(|&i| cols[i].as_slice()).collect();
        let expanded = expand_product(&slots, n);
        for p in 0..m {
            let mut pairs: Vec<(usize, Scalar)> = (0..m)
                .filter(|&q| !on_v.get(p, q).is_zero())
                .map(|q| (base * m + q, on_v.get(p, q).clone()))
                .collect();
            pairs.extend(expanded.iter().map(|(off, c)| (off * m + p, -c)));
            let row = SparseVec::from_pairs(pairs);
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
}

/// All `(offset, Π coefficients)` for one choice per slot.
pub(crate) fn expand_product(slots: &[&[(usize, Scalar)]], n: usize) -> Vec<(usize, Scalar)> {
    let mut acc: Vec<(usize, Scalar)> = vec![(0, Scalar::from_integer(1.into()))];
    for slot in slots {
        let mut next = Vec::with_capacity(acc.len() * slot.len());
        for (off, c) in &acc {
            for (i, v) in slot.iter() {
                next.push((off * n + i, c * v));
            }
        }
        acc = next;
    }
    acc
}

fn structural_rows(n: usize, m: usize, k: usize, rows: &mut Vec<SparseVec>) {
    let one = Scalar::from_integer(1.into());
    let var = |idx: &[usize], p: usize| idx.iter().fold(0, |acc, &i| acc * n + i) * m + p;
    for idx in MultiIndex::new(n, k) {
        let (a, b) = (idx[k - 3], idx[k - 2]);
        if a > b {
            continue;
        }
        let mut swapped = idx.clone();
        swapped.swap(k - 3, k - 2);
        for p in 0..m {
            let pairs = if a == b {
                vec![(var(&idx, p), one.clone())]
            } else {
                vec![(var(&idx, p), one.clone()), (var(&swapped, p), one.clone())]
            };
            rows.push(SparseVec::from_pairs(pairs));
        }
    }
    for idx in MultiIndex::new(n, k) {
        let mut r1 = idx.clone();
        r1[k - 3..].rotate_left(1);
        let mut r2 = r1.clone();
        r2[k - 3..].rotate_left(1);
        for p in 0..m {
            let row = SparseVec::from_pairs(vec![
                (var(&idx, p), one.clone()),
                (var(&r1, p), one.clone()),
                (var(&r2, p), one.clone()),
            ]);
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
}

/// Canonical basis of `C^degree` (equivariant when the context is).
pub fn cochain_basis(ctx: &ComplexContext, degree: usize) -> Result<Arc<CochainBasis>> {
    if degree.is_multiple_of(2) {
        return Err(Error::contract(format!(
            "cochain degree must be odd, got {degree}"
        )));
    }
    let width = ctx.raw_len(degree)?;
    if let Some(b) = ctx.cached_basis(degree) {
        return Ok(b);
    }
    let (n, m) = (ctx.dim_t(), ctx.dim_v());
    let mut rows = Vec::new();
    if degree >= 3 {
        structural_rows(n, m, degree, &mut rows);
    }
    twist_rows(n, m, degree, ctx.t().alpha(), ctx.rep().a_twist(), &mut rows);
    for (_, rt, rv) in ctx.invariance_pairs() {
        twist_rows(n, m, degree, rt, rv, &mut rows);
    }
    let mut echelon = Echelon::new(width);
    for row in rows {
        echelon.insert(row);
    }
    let rref = echelon.finish();
    let free = rref.free_columns();
    let columns = rref.nullspace();
    let fingerprint = hex::encode(Sha256::digest(
        format!(
            "{}|degree={degree}|cap={}",
            ctx.fingerprint(),
            ctx.max_tensor_entries()
        )
        .as_bytes(),
    ));
    let basis = Arc::new(CochainBasis {
        degree,
        dim_t: n,
        dim_v: m,
        columns,
        free,
        fingerprint,
    });
    ctx.store_basis(degree, basis.clone());
    Ok(basis)
}
