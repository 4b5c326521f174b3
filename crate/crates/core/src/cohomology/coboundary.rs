use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::sparse::{rank_of, solve_in_span};
use crate::exactlin::{Matrix, Scalar, SparseVec};
use crate::tensor::{support, MultiIndex};

use super::basis::expand_product;
use super::cochain::check_shape;
use super::{cochain_basis, is_cochain, Cochain, ComplexContext};

/// The coboundary `δ: C^{2N−1} → C^{2N+1}` on raw tensors, one sparse image
/// column per raw input coordinate.
#[derive(Clone, Debug)]
pub struct CoboundaryOperator {
    source_degree: usize,
    dim_t: usize,
    dim_v: usize,
    columns: Vec<SparseVec>,
}

impl CoboundaryOperator {
    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    pub fn target_degree(&self) -> usize {
        self.source_degree + 2
    }

    pub fn apply_sparse(&self, f: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, c) in f.entries() {
            pairs.extend(self.columns[*i].entries().iter().map(|(r, v)| (*r, c * v)));
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn apply(&self, f: &Cochain) -> Cochain {
        let image = self.apply_sparse(&f.to_sparse());
        Cochain::from_sparse(self.target_degree(), self.dim_t, self.dim_v, &image)
    }

    /// Builds δ term by term, writing `k = 2N+1` for the target degree and
    /// `x_1 … x_k` for the arguments:
    ///
    /// * `θ(α^{N−1}x_{2N}, α^{N−1}x_{2N+1}) f(x_1, …, x_{2N−1})`
    /// * `− θ(α^{N−1}x_{2N−1}, α^{N−1}x_{2N+1}) f(x_1, …, x_{2N−2}, x_{2N})`
    /// * `Σ_{j=1}^{N} (−1)^{j+N} D(α^{N−1}x_{2j−1}, α^{N−1}x_{2j}) f(…)` with
    ///   `x_{2j−1}, x_{2j}` removed and the rest untwisted
    /// * `Σ_{j=1}^{N} Σ_{l=2j+1}^{2N+1} (−1)^{N+j+1} f(αx_1, …, [x_{2j−1}x_{2j}x_l], …, αx_{2N+1})`
    ///   with `x_{2j−1}, x_{2j}` removed and slot `l` carrying the bracket.
    fn build(ctx: &ComplexContext, source_degree: usize) -> Result<Self> {
        let k = source_degree + 2;
        let half = k / 2;
        let (n, m) = (ctx.dim_t(), ctx.dim_v());
        let src_len = ctx.raw_len(source_degree)?;
        ctx.raw_len(k)?;
        let t = ctx.t();
        let rep = ctx.rep();

        let apow = t.alpha().pow(half - 1);
        let apow_cols: Vec<_> = (0..n).map(|i| apow.column(i)).collect();
        let theta_tw: Vec<Vec<Matrix>> = (0..n)
            .map(|i| (0..n).map(|j| rep.theta(&apow_cols[i], &apow_cols[j])).collect())
            .collect();
        let d_tw = |i: usize, j: usize| &theta_tw[j][i] - &theta_tw[i][j];
        let d_all: Vec<Vec<Matrix>> = (0..n).map(|i| (0..n).map(|j| d_tw(i, j)).collect()).collect();
        let owned = |v: &[Scalar]| -> Vec<(usize, Scalar)> {
            support(v).into_iter().map(|(i, x)| (i, x.clone())).collect()
        };
        let alpha_sup: Vec<Vec<(usize, Scalar)>> =
            (0..n).map(|i| owned(&t.alpha().column(i))).collect();
        let mut bracket_sup: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(n * n * n);
        for idx in MultiIndex::new(n, 3) {
            bracket_sup.push(owned(t.basis_bracket(idx[0], idx[1], idx[2])));
        }

        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); src_len];
        let offset = |idx: &[usize]| idx.iter().fold(0usize, |acc, &i| acc * n + i);
        let sign = |e: usize| if e.is_multiple_of(2) { Scalar::from_integer(1.into()) } else { Scalar::from_integer((-1).into()) };

        // θ-type term: out(x; p) += c · Σ_q mat[p][q] f(u; q)
        let push_matrix_term =
            |cols: &mut Vec<Vec<(usize, Scalar)>>, row_base: usize, u: usize, mat: &Matrix, c: &Scalar| {
                for p in 0..m {
                    for q in 0..m {
                        let v = mat.get(p, q);
                        if !v.is_zero() {
                            cols[u * m + q].push((row_base * m + p, c * v));
                        }
                    }
                }
            };

        for x in MultiIndex::new(n, k) {
            let row = offset(&x);
            let one = sign(0);
            // leading θ terms
            let u1 = offset(&x[..k - 2]);
            push_matrix_term(&mut cols, row, u1, &theta_tw[x[k - 2]][x[k - 1]], &one);
            let mut v2: Vec<usize> = x[..k - 3].to_vec();
            v2.push(x[k - 2]);
            push_matrix_term(&mut cols, row, offset(&v2), &theta_tw[x[k - 3]][x[k - 1]], &-one.clone());

            for j in 1..=half {
                let (a, b) = (2 * j - 2, 2 * j - 1);
                let rest: Vec<usize> = x
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s != a && *s != b)
                    .map(|(_, &v)| v)
                    .collect();
                push_matrix_term(&mut cols, row, offset(&rest), &d_all[x[a]][x[b]], &sign(j + half));

                let sub_sign = sign(half + j + 1);
                for l in (2 * j)..k {
                    let br = &bracket_sup[(x[a] * n + x[b]) * n + x[l]];
                    if br.is_empty() {
                        continue;
                    }
                    let slots: Vec<&[(usize, Scalar)]> = (0..k)
                        .filter(|s| *s != a && *s != b)
                        .map(|s| {
                            if s == l {
                                br.as_slice()
                            } else {
                                alpha_sup[x[s]].as_slice()
                            }
                        })
                        .collect();
                    for (u, c) in expand_product(&slots, n) {
                        let c = &sub_sign * c;
                        for p in 0..m {
                            cols[u * m + p].push((row * m + p, c.clone()));
                        }
                    }
                }
            }
        }
        Ok(Self {
            source_degree,
            dim_t: n,
            dim_v: m,
            columns: cols.into_iter().map(SparseVec::from_pairs).collect(),
        })
    }
}

/// The cached coboundary operator on degree-`source_degree` cochains.
pub fn coboundary_operator(ctx: &ComplexContext, source_degree: usize) -> Result<Arc<CoboundaryOperator>> {
    if source_degree.is_multiple_of(2) {
        return Err(Error::contract(format!(
            "coboundary source degree must be odd, got {source_degree}"
        )));
    }
    if let Some(op) = ctx.cached_operator(source_degree) {
        return Ok(op);
    }
    let op = Arc::new(CoboundaryOperator::build(ctx, source_degree)?);
    ctx.store_operator(source_degree, op.clone());
    Ok(op)
}

/// `δf` for a cochain `f` of degree `2N−1`.
pub fn coboundary(ctx: &ComplexContext, f: &Cochain) -> Result<Cochain> {
    check_shape(ctx, f)?;
    let report = is_cochain(ctx, f)?;
    if !report.passed() {
        return Err(Error::contract(format!(
            "coboundary input is not a cochain: fails {:?}",
            report.axioms()
        )));
    }
    Ok(coboundary_operator(ctx, f.degree())?.apply(f))
}

/// `δ` of every basis cochain of degree `source_degree`, as raw sparse
/// tensors of degree `source_degree + 2`.
pub fn coboundary_images(ctx: &ComplexContext, source_degree: usize) -> Result<Vec<SparseVec>> {
    let basis = cochain_basis(ctx, source_degree)?;
    let op = coboundary_operator(ctx, source_degree)?;
    Ok(basis.sparse_columns().iter().map(|c| op.apply_sparse(c)).collect())
}

/// Matrix of `δ^{2n−1}: C^{2n−1} → C^{2n+1}` in the canonical bases.
///
/// Fails with an internal error if some image leaves the target space.
pub fn coboundary_matrix(ctx: &ComplexContext, n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::contract("coboundary index starts at 1"));
    }
    let source = 2 * n - 1;
    let target = cochain_basis(ctx, source + 2)?;
    let images = coboundary_images(ctx, source)?;
    let mut cols = Vec::with_capacity(images.len());
    for (j, img) in images.iter().enumerate() {
        let coords = target.coordinates_sparse(img).ok_or_else(|| {
            Error::internal(format!(
                "image of degree-{source} basis cochain {j} is not a degree-{} cochain",
                source + 2
            ))
        })?;
        cols.push(coords);
    }
    Matrix::from_columns(target.dim(), &cols)
}

/// Dimensions at one degree: `z = dim ker δ`, `b = dim im δ` (incoming),
/// `h = z − b`, plus the dimension of the cochain space itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub cochains: usize,
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

/// Cohomology dimensions at `degree`. For degree 1, `b = 0` and `h = z`.
pub fn cohomology_dims(ctx: &ComplexContext, degree: usize) -> Result<CohomologyDims> {
    let basis = cochain_basis(ctx, degree)?;
    let width_out = ctx.raw_len(degree + 2)?;
    let out = coboundary_images(ctx, degree)?;
    let z = basis.dim() - rank_of(&out, width_out);
    let b = if degree >= 3 {
        let incoming = coboundary_images(ctx, degree - 2)?;
        rank_of(&incoming, basis.raw_len())
    } else {
        0
    };
    if b > z {
        return Err(Error::internal(format!(
            "degree {degree}: boundaries ({b}) exceed cocycles ({z})"
        )));
    }
    Ok(CohomologyDims {
        cochains: basis.dim(),
        z,
        b,
        h: z - b,
    })
}

/// A cochain `e` of degree `deg f − 2` with `δe = f`, if one exists. The
/// witness is canonical (free coordinates zero).
pub fn coboundary_membership(ctx: &ComplexContext, f: &Cochain) -> Result<Option<Cochain>> {
    check_shape(ctx, f)?;
    if f.degree() < 3 {
        return Err(Error::contract("degree-1 cochains are never coboundaries"));
    }
    let report = is_cochain(ctx, f)?;
    if !report.passed() {
        return Err(Error::contract(format!(
            "membership target is not a cochain: fails {:?}",
            report.axioms()
        )));
    }
    let source = f.degree() - 2;
    let basis = cochain_basis(ctx, source)?;
    let images = coboundary_images(ctx, source)?;
    Ok(solve_in_span(&images, &f.to_sparse()).map(|y| basis.combine(&y)))
}

/// A fixed basis of `H^degree`: representatives of cocycle classes chosen
/// greedily, in canonical cocycle order, independent modulo boundaries.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    boundaries: Vec<SparseVec>,
    representatives: Vec<Cochain>,
}

impl CohomologyBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Coordinates of the class of `f` in the representative basis, or
    /// `None` if `f` is not a cocycle of this degree.
    pub fn class_coordinates(&self, f: &Cochain) -> Option<Vec<Scalar>> {
        let mut cols = self.boundaries.clone();
        cols.extend(self.representatives.iter().map(Cochain::to_sparse));
        let y = solve_in_span(&cols, &f.to_sparse())?;
        Some(y[self.boundaries.len()..].to_vec())
    }
}

/// Basis of `H^degree = ker δ / im δ`; for degree 1 there are no boundaries.
pub fn cohomology_basis(ctx: &ComplexContext, degree: usize) -> Result<CohomologyBasis> {
    let basis = cochain_basis(ctx, degree)?;
    let out = coboundary_images(ctx, degree)?;
    let cycles: Vec<SparseVec> = crate::exactlin::sparse::column_kernel(&out)
        .iter()
        .map(|k| basis.combine_sparse(&k.to_dense(basis.dim())))
        .collect();
    let mut echelon = crate::exactlin::Echelon::new(basis.raw_len());
    let mut boundaries = Vec::new();
    if degree >= 3 {
        for b in coboundary_images(ctx, degree - 2)? {
            if echelon.insert(b.clone()) {
                boundaries.push(b);
            }
        }
    }
    let mut representatives = Vec::new();
    for z in cycles {
        if echelon.insert(z.clone()) {
            representatives.push(Cochain::from_sparse(degree, ctx.dim_t(), ctx.dim_v(), &z));
        }
    }
    Ok(CohomologyBasis {
        degree,
        boundaries,
        representatives,
    })
}
