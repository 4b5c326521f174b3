use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{add_vectors, int, Matrix, Scalar, SparseVec, Vector};
use crate::structures::VerificationReport;
use crate::tensor::{checked_pow, pullback, pushforward, tuple_from_offset, MultiIndex};

use super::ComplexContext;

/// A multilinear map `f: T^{⊗degree} → V` stored as a flattened tensor:
/// `f(e_{i_1}, …, e_{i_k}) = Σ_p coeffs[(i_1…i_k) · m + p] v_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    dim_t: usize,
    dim_v: usize,
    coeffs: Vector,
}

impl Cochain {
    pub fn new(degree: usize, dim_t: usize, dim_v: usize, coeffs: Vector) -> Result<Self> {
        let len = checked_pow(dim_t, degree)
            .and_then(|x| x.checked_mul(dim_v))
            .ok_or_else(|| Error::contract("cochain tensor size overflows"))?;
        if coeffs.len() != len {
            return Err(Error::contract(format!(
                "degree-{degree} cochain over ({dim_t}, {dim_v}) needs {len} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self {
            degree,
            dim_t,
            dim_v,
            coeffs,
        })
    }

    pub fn zero(degree: usize, dim_t: usize, dim_v: usize) -> Self {
        let len = dim_t.pow(degree as u32) * dim_v;
        Self {
            degree,
            dim_t,
            dim_v,
            coeffs: vec![Scalar::zero(); len],
        }
    }

    pub(crate) fn from_sparse(degree: usize, dim_t: usize, dim_v: usize, v: &SparseVec) -> Self {
        let len = dim_t.pow(degree as u32) * dim_v;
        Self {
            degree,
            dim_t,
            dim_v,
            coeffs: v.to_dense(len),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_t(&self) -> usize {
        self.dim_t
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    pub fn to_sparse(&self) -> SparseVec {
        SparseVec::from_dense(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn base(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.degree, "index tuple length");
        idx.iter().fold(0, |acc, &i| acc * self.dim_t + i) * self.dim_v
    }

    /// `f(e_{i_1}, …, e_{i_k})`.
    pub fn value(&self, idx: &[usize]) -> &[Scalar] {
        let b = self.base(idx);
        &self.coeffs[b..b + self.dim_v]
    }

    pub fn set_value(&mut self, idx: &[usize], value: Vector) {
        assert_eq!(value.len(), self.dim_v, "value length");
        let b = self.base(idx);
        self.coeffs[b..b + self.dim_v].clone_from_slice(&value);
    }

    /// `f(x_1, …, x_k)` for arbitrary vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vector {
        crate::tensor::eval_multilinear(&self.coeffs, self.dim_t, self.dim_v, args)
    }

    fn check_same_shape(&self, other: &Cochain) -> Result<()> {
        if (self.degree, self.dim_t, self.dim_v) != (other.degree, other.dim_t, other.dim_v) {
            return Err(Error::contract("cochains have different shapes"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_shape(other)?;
        Ok(Self {
            coeffs: add_vectors(&self.coeffs, &other.coeffs),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_shape(other)?;
        Ok(Self {
            coeffs: crate::exactlin::sub_vectors(&self.coeffs, &other.coeffs),
            ..self.clone()
        })
    }

    pub fn scale(&self, factor: &Scalar) -> Cochain {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * factor).collect(),
            ..self.clone()
        }
    }

    /// `(x_1, …, x_k) ↦ f(M x_1, …, M x_k)`.
    pub fn precompose(&self, mat: &Matrix) -> Cochain {
        let mats = vec![mat; self.degree];
        Self {
            coeffs: pullback(&self.coeffs, self.dim_t, self.dim_v, &mats),
            ..self.clone()
        }
    }

    /// `(x_1, …, x_k) ↦ M f(x_1, …, x_k)` for a square `M` on `V`.
    pub fn postcompose(&self, mat: &Matrix) -> Cochain {
        Self {
            coeffs: pushforward(&self.coeffs, self.dim_v, mat),
            ..self.clone()
        }
    }
}

pub(crate) fn check_shape(ctx: &ComplexContext, f: &Cochain) -> Result<()> {
    if f.degree().is_multiple_of(2) {
        return Err(Error::contract(format!(
            "cochain degree must be odd, got {}",
            f.degree()
        )));
    }
    if f.dim_t() != ctx.dim_t() || f.dim_v() != ctx.dim_v() {
        return Err(Error::contract(format!(
            "cochain is over ({}, {}) but the context is over ({}, {})",
            f.dim_t(),
            f.dim_v(),
            ctx.dim_t(),
            ctx.dim_v()
        )));
    }
    Ok(())
}

fn compare_pointwise(
    report: &mut VerificationReport,
    axiom: &str,
    prefix: &[usize],
    lhs: &Cochain,
    rhs: &Cochain,
) {
    let (k, m) = (lhs.degree(), lhs.dim_v());
    for (t, (a, b)) in lhs.coeffs().chunks(m.max(1)).zip(rhs.coeffs().chunks(m.max(1))).enumerate() {
        if a != b {
            let mut at = prefix.to_vec();
            at.extend(tuple_from_offset(t, lhs.dim_t(), k));
            report.push(axiom, at, a.to_vec(), b.to_vec());
        }
    }
}

/// Checks on basis tuples: `A f(x) = f(αx_1, …, αx_k)`; for degree ≥ 3,
/// alternation in the second- and third-to-last slots and the cyclic sum over
/// the last three slots; and, for equivariant contexts,
/// `f(gx_1, …, gx_k) = g f(x_1, …, x_k)` for every `g`.
pub fn is_cochain(ctx: &ComplexContext, f: &Cochain) -> Result<VerificationReport> {
    check_shape(ctx, f)?;
    let mut report = VerificationReport::new();
    let (n, k) = (f.dim_t(), f.degree());

    let lhs = f.postcompose(ctx.rep().a_twist());
    let rhs = f.precompose(ctx.t().alpha());
    compare_pointwise(&mut report, "twist-compatibility", &[], &lhs, &rhs);

    if k >= 3 {
        let zero = vec![Scalar::zero(); f.dim_v()];
        for idx in MultiIndex::new(n, k) {
            let (a, b) = (idx[k - 3], idx[k - 2]);
            if a == b {
                report.check("alternating", &idx, f.value(&idx).to_vec(), zero.clone());
            } else if a < b {
                let mut swapped = idx.clone();
                swapped.swap(k - 3, k - 2);
                let rhs: Vector = f.value(&swapped).iter().map(|x| -x).collect();
                report.check("alternating", &idx, f.value(&idx).to_vec(), rhs);
            }
        }
        for idx in MultiIndex::new(n, k) {
            let mut r1 = idx.clone();
            r1[k - 3..].rotate_left(1);
            let mut r2 = r1.clone();
            r2[k - 3..].rotate_left(1);
            let sum = add_vectors(&add_vectors(f.value(&idx), f.value(&r1)), f.value(&r2));
            report.check("cyclic", &idx, sum, zero.clone());
        }
    }

    for (g, rt, rv) in ctx.invariance_pairs() {
        let lhs = f.precompose(rt);
        let rhs = f.postcompose(rv);
        compare_pointwise(&mut report, "invariance", &[g], &lhs, &rhs);
    }
    Ok(report)
}

/// `(1/|G|) Σ_g g⁻¹ f(g·, …, g·)`, the projection onto invariant cochains.
pub fn reynolds_project(ctx: &ComplexContext, f: &Cochain) -> Result<Cochain> {
    let Some((at, av)) = ctx.actions() else {
        return Err(Error::contract("Reynolds projection needs a group action"));
    };
    let plain = ctx.with_equivariant(false)?;
    if !is_cochain(&plain, f)?.passed() {
        return Err(Error::contract(
            "Reynolds projection input is not a cochain",
        ));
    }
    let order = at.group().order();
    let mut acc = Cochain::zero(f.degree(), f.dim_t(), f.dim_v());
    for g in 0..order {
        let moved = f.precompose(at.matrix(g)).postcompose(av.inverse_matrix(g)?);
        acc = acc.add(&moved)?;
    }
    Ok(acc.scale(&(int(1) / int(order as i64))))
}
