#![allow(dead_code)]

pub mod instances;
pub mod oracle;

use homlts_core::cohomology::{cochain_basis, coboundary_matrix, Cochain, CochainBasis, ComplexContext};
use homlts_core::deformations::{Deformation, FormalIsomorphism};
use homlts_core::exactlin::nullspace_basis;
use homlts_core::exactlin::{int, unit_vector, zero_vector, Matrix, Scalar, Vector};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A combination of basis columns with coefficients in `-2..=2`.
pub fn random_combination(rng: &mut ChaCha8Rng, basis: &CochainBasis) -> Cochain {
    let coords: Vec<_> = (0..basis.dim()).map(|_| int(rng.gen_range(-2..=2))).collect();
    basis.combine(&coords)
}

/// The matrix of a degree-1 cochain `T → T`, column `i` being `f(e_i)`.
pub fn endomorphism(f: &Cochain) -> Matrix {
    let n = f.dim_t();
    let cols: Vec<Vector> = (0..n).map(|i| f.value(&[i]).to_vec()).collect();
    Matrix::from_columns(f.dim_v(), &cols).expect("square")
}

/// A basis of `ker δ³` in the context's cochain space.
pub fn cocycle_basis(ctx: &ComplexContext) -> Vec<Cochain> {
    let basis = cochain_basis(ctx, 3).unwrap();
    let d3 = coboundary_matrix(ctx, 2).unwrap();
    let kernel = if d3.rows() == 0 {
        Matrix::identity(basis.dim())
    } else {
        nullspace_basis(&d3)
    };
    kernel.columns().iter().map(|k| basis.combine(k)).collect()
}

/// A first-order deformation whose infinitesimal is a random (invariant)
/// 3-cocycle, or `None` when there is no nonzero one.
pub fn random_first_order(rng: &mut ChaCha8Rng, inst: &instances::Instance) -> Option<Deformation> {
    let ctx = ComplexContext::adjoint(inst.lts.clone(), inst.action.clone(), inst.action.is_some()).unwrap();
    let zs = cocycle_basis(&ctx);
    let mut mu = Cochain::zero(3, ctx.dim_t(), ctx.dim_v());
    for z in &zs {
        mu = mu.add(&z.scale(&int(rng.gen_range(-2..=2)))).unwrap();
    }
    if mu.is_zero() {
        return None;
    }
    Deformation::new(inst.lts.clone(), inst.action.clone(), vec![mu.into_coeffs()]).ok()
}

/// `Ψ_t` with each `ψ_r` a random element of `C¹` (maps commuting with α
/// and the action).
pub fn random_psi(rng: &mut ChaCha8Rng, d: &Deformation, order: usize) -> FormalIsomorphism {
    let ctx = d.context().unwrap();
    let c1 = cochain_basis(&ctx, 1).unwrap();
    let maps = (0..order).map(|_| endomorphism(&random_combination(rng, &c1))).collect();
    FormalIsomorphism::new(d.base().dim(), maps).unwrap()
}

fn expand_args(args: &[&[Scalar]], n: usize) -> Vec<(usize, Scalar)> {
    let mut acc = vec![(0usize, Scalar::one())];
    for a in args {
        let mut next = Vec::new();
        for (off, w) in &acc {
            for (i, x) in a.iter().enumerate() {
                if !x.is_zero() {
                    next.push((off * n + i, w * x));
                }
            }
        }
        acc = next;
    }
    acc
}

/// `μ(x, y, z)` for a flattened trilinear map on an `n`-dimensional space.
pub fn trilinear(mu: &[Scalar], n: usize, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    let mut out = zero_vector(n);
    for (off, w) in expand_args(&[x, y, z], n) {
        for l in 0..n {
            out[l] += &w * &mu[off * n + l];
        }
    }
    out
}

/// `F_{r}(a,b,c,d,e) = Σ_{i+j=r} μ_i(αa,αb,μ_j(c,d,e)) − μ_i(μ_j(a,b,c),αd,αe)
/// − μ_i(αc,μ_j(a,b,d),αe) − μ_i(αc,αd,μ_j(a,b,e))` with `i, j > 0`, evaluated
/// at every basis tuple; `terms[i − 1] = μ_i`.
pub fn obstruction_by_formula(terms: &[Vector], alpha: &Matrix, r: usize) -> Vector {
    let n = alpha.rows();
    let e = |i: usize| unit_vector(n, i);
    let ac = |i: usize| alpha.column(i);
    let mut out = Vec::with_capacity(n.pow(6));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for x in 0..n {
                        let mut acc = zero_vector(n);
                        for i in 1..r {
                            let (mi, mj) = (&terms[i - 1], &terms[r - i - 1]);
                            let plus = trilinear(mi, n, &ac(a), &ac(b), &trilinear(mj, n, &e(c), &e(d), &e(x)));
                            let m1 = trilinear(mi, n, &trilinear(mj, n, &e(a), &e(b), &e(c)), &ac(d), &ac(x));
                            let m2 = trilinear(mi, n, &ac(c), &trilinear(mj, n, &e(a), &e(b), &e(d)), &ac(x));
                            let m3 = trilinear(mi, n, &ac(c), &ac(d), &trilinear(mj, n, &e(a), &e(b), &e(x)));
                            for l in 0..n {
                                acc[l] += &plus[l] - &m1[l] - &m2[l] - &m3[l];
                            }
                        }
                        out.extend(acc);
                    }
                }
            }
        }
    }
    out
}
