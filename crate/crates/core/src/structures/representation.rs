use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar, Vector};
use crate::tensor::MultiIndex;

use super::{verify_hom_lts, GroupAction, HomLts, VerificationReport};

/// A representation `(V, θ, A)` of a Hom-Lts on `T`: a bilinear
/// `θ: T × T → End(V)` stored as `theta[i][j][p][q]` (the `(p, q)` entry of
/// `θ(e_i, e_j)`) together with a twist `A ∈ End(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    source_dim: usize,
    target_dim: usize,
    theta: Vec<Scalar>,
    a_twist: Matrix,
}

impl Representation {
    pub fn new(source_dim: usize, theta: Vec<Scalar>, a_twist: Matrix) -> Result<Self> {
        let m = a_twist.rows();
        if !a_twist.is_square() {
            return Err(Error::contract("representation twist must be square"));
        }
        let expected = source_dim * source_dim * m * m;
        if theta.len() != expected {
            return Err(Error::contract(format!(
                "theta tensor needs {expected} entries, got {}",
                theta.len()
            )));
        }
        Ok(Self {
            source_dim,
            target_dim: m,
            theta,
            a_twist,
        })
    }

    /// `θ = 0` with the given twist on `V`.
    pub fn trivial(source_dim: usize, a_twist: Matrix) -> Result<Self> {
        let m = a_twist.rows();
        Self::new(
            source_dim,
            vec![Scalar::zero(); source_dim * source_dim * m * m],
            a_twist,
        )
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn a_twist(&self) -> &Matrix {
        &self.a_twist
    }

    pub fn theta_tensor(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn is_trivial(&self) -> bool {
        self.theta.iter().all(Zero::is_zero)
    }

    /// `θ(e_i, e_j)` as an `m × m` matrix.
    pub fn theta_basis(&self, i: usize, j: usize) -> Matrix {
        let m = self.target_dim;
        let base = (i * self.source_dim + j) * m * m;
        Matrix::from_entries(m, m, self.theta[base..base + m * m].to_vec())
            .expect("theta block has m*m entries")
    }

    /// `θ(a, b)` for arbitrary vectors.
    pub fn theta(&self, a: &[Scalar], b: &[Scalar]) -> Matrix {
        let (n, m) = (self.source_dim, self.target_dim);
        let mut entries = vec![Scalar::zero(); m * m];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                let base = (i * n + j) * m * m;
                for (e, t) in entries.iter_mut().zip(&self.theta[base..base + m * m]) {
                    if !t.is_zero() {
                        *e += &xy * t;
                    }
                }
            }
        }
        Matrix::from_entries(m, m, entries).expect("m*m entries")
    }

    /// `D(a, b) = θ(b, a) − θ(a, b)`.
    pub fn d(&self, a: &[Scalar], b: &[Scalar]) -> Matrix {
        &self.theta(b, a) - &self.theta(a, b)
    }
}

/// Checks the three representation identities on basis tuples
///
/// * `θ(αa, αb) A = A θ(a, b)`
/// * `θ(αc, αd) θ(a, b) − θ(αb, αd) θ(a, c) − θ(αa, [bcd]) A + D(αb, αc) θ(a, d) = 0`
/// * `θ(αc, αd) D(a, b) − D(αa, αb) θ(c, d) + θ([abc], αd) A + θ(αc, [abd]) A = 0`
///
/// and, when both actions are given, that `V` is a G-module: the action on
/// `V` is a homomorphism commuting with `A`, and `θ(ga, gb)(gv) = g(θ(a, b)v)`.
pub fn verify_representation(
    t: &HomLts,
    rep: &Representation,
    act_t: Option<&GroupAction>,
    act_v: Option<&GroupAction>,
) -> Result<VerificationReport> {
    let n = t.dim();
    let m = rep.target_dim();
    if rep.source_dim() != n {
        return Err(Error::contract(format!(
            "representation is over dimension {} but the Hom-Lts has dimension {n}",
            rep.source_dim()
        )));
    }
    let actions = match (act_t, act_v) {
        (None, None) => None,
        (Some(at), Some(av)) => {
            if at.group() != av.group() {
                return Err(Error::contract(
                    "actions on T and V must use the same finite group",
                ));
            }
            if at.space_dim() != n || av.space_dim() != m {
                return Err(Error::contract("action dimensions do not match T and V"));
            }
            Some((at, av))
        }
        _ => {
            return Err(Error::contract(
                "a G-module check needs actions on both T and V",
            ))
        }
    };

    let a = rep.a_twist();
    let alpha_cols: Vec<Vector> = (0..n).map(|i| t.alpha().column(i)).collect();
    let basis = |i: usize| crate::exactlin::unit_vector(n, i);
    let theta = |i: usize, j: usize| rep.theta_basis(i, j);
    let theta_tw: Vec<Vec<Matrix>> = (0..n)
        .map(|i| (0..n).map(|j| rep.theta(&alpha_cols[i], &alpha_cols[j])).collect())
        .collect();
    let d_tw = |i: usize, j: usize| &theta_tw[j][i] - &theta_tw[i][j];
    let zero = Matrix::zeros(m, m);
    let mut report = VerificationReport::new();

    for idx in MultiIndex::new(n, 2) {
        let (i, j) = (idx[0], idx[1]);
        let lhs = &theta_tw[i][j] * a;
        let rhs = a * &theta(i, j);
        if lhs != rhs {
            report.push("rep-twist", idx, lhs.entries().to_vec(), rhs.entries().to_vec());
        }
    }

    for idx in MultiIndex::new(n, 4) {
        let (ia, ib, ic, id) = (idx[0], idx[1], idx[2], idx[3]);
        let bcd = t.basis_bracket(ib, ic, id);
        let first = &(&(&(&theta_tw[ic][id] * &theta(ia, ib)) - &(&theta_tw[ib][id] * &theta(ia, ic)))
            - &(&rep.theta(&alpha_cols[ia], bcd) * a))
            + &(&d_tw(ib, ic) * &theta(ia, id));
        if first != zero {
            report.push(
                "rep-first-identity",
                idx.clone(),
                first.entries().to_vec(),
                zero.entries().to_vec(),
            );
        }

        let abc = t.basis_bracket(ia, ib, ic);
        let abd = t.basis_bracket(ia, ib, id);
        let d_ab = rep.d(&basis(ia), &basis(ib));
        let second = &(&(&(&theta_tw[ic][id] * &d_ab) - &(&d_tw(ia, ib) * &theta(ic, id)))
            + &(&rep.theta(abc, &alpha_cols[id]) * a))
            + &(&rep.theta(&alpha_cols[ic], abd) * a);
        if second != zero {
            report.push(
                "rep-second-identity",
                idx,
                second.entries().to_vec(),
                zero.entries().to_vec(),
            );
        }
    }

    if let Some((at, av)) = actions {
        report.merge_scoped("V", av.verify_homomorphism());
        for g in 0..at.group().order() {
            let rt = at.matrix(g);
            let rv = av.matrix(g);
            let lhs = rv * a;
            let rhs = a * rv;
            if lhs != rhs {
                report.push(
                    "fiber-twist-equivariance",
                    vec![g],
                    lhs.entries().to_vec(),
                    rhs.entries().to_vec(),
                );
            }
            let images: Vec<Vector> = (0..n).map(|i| rt.column(i)).collect();
            for idx in MultiIndex::new(n, 2) {
                let lhs = &rep.theta(&images[idx[0]], &images[idx[1]]) * rv;
                let rhs = rv * &theta(idx[0], idx[1]);
                if lhs != rhs {
                    report.push(
                        "g-module",
                        vec![g, idx[0], idx[1]],
                        lhs.entries().to_vec(),
                        rhs.entries().to_vec(),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// The adjoint representation: `V = T`, `A = α`, `θ(a, b)v = [v a b]`.
pub fn adjoint_representation(t: &HomLts) -> Result<Representation> {
    if !verify_hom_lts(t).passed() {
        return Err(Error::contract(
            "adjoint representation requires a verified Hom-Lts",
        ));
    }
    let n = t.dim();
    let mut theta = vec![Scalar::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for q in 0..n {
                // column q of θ(e_i, e_j) is [e_q e_i e_j]
                let col = t.basis_bracket(q, i, j);
                for (p, v) in col.iter().enumerate() {
                    theta[(i * n + j) * n * n + p * n + q] = v.clone();
                }
            }
        }
    }
    Representation::new(n, theta, t.alpha().clone())
}

/// The semidirect sum `T ⊕ V` with bracket
/// `[(a,u)(b,v)(c,w)] = ([abc], θ(b,c)u − θ(a,c)v + D(a,b)w)` and twist
/// `α ⊕ A`. Basis order: `e_1..e_n` of `T`, then `v_1..v_m` of `V`.
pub fn semidirect_sum(t: &HomLts, rep: &Representation) -> Result<HomLts> {
    if !verify_representation(t, rep, None, None)?.passed() {
        return Err(Error::contract(
            "semidirect sum requires a verified representation",
        ));
    }
    let n = t.dim();
    let m = rep.target_dim();
    let total = n + m;
    let mut bracket = vec![Scalar::zero(); total.pow(4)];
    let at = |i: usize, j: usize, k: usize, l: usize| ((i * total + j) * total + k) * total + l;
    for idx in MultiIndex::new(n, 3) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        for (l, v) in t.basis_bracket(i, j, k).iter().enumerate() {
            bracket[at(i, j, k, l)] = v.clone();
        }
    }
    for i in 0..n {
        for j in 0..n {
            let th = rep.theta_basis(i, j);
            let d = &rep.theta_basis(j, i) - &th;
            for p in 0..m {
                for q in 0..m {
                    // [(0,v_q) e_i e_j] = θ(e_i,e_j) v_q
                    bracket[at(n + q, i, j, n + p)] = th.get(p, q).clone();
                    // [e_i (0,v_q) e_j] = −θ(e_i,e_j) v_q
                    bracket[at(i, n + q, j, n + p)] = -th.get(p, q);
                    // [e_i e_j (0,v_q)] = D(e_i,e_j) v_q
                    bracket[at(i, j, n + q, n + p)] = d.get(p, q).clone();
                }
            }
        }
    }
    HomLts::new(total, bracket, t.alpha().direct_sum(rep.a_twist()))
}
