use crate::error::{Error, Result};
use crate::exactlin::{int, unit_vector, Matrix, Vector};
use crate::tensor::MultiIndex;

use super::{HomLts, VerificationReport};

/// A finite group given by its Cayley table: `cayley[a][b]` is the index of
/// the product `a·b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    labels: Vec<String>,
    cayley: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    /// Checks shapes and index ranges only; the group axioms are checked by
    /// [`FiniteGroup::verify`].
    pub fn new(labels: Vec<String>, cayley: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = labels.len();
        if order == 0 {
            return Err(Error::contract("a group needs at least one element"));
        }
        if cayley.len() != order || cayley.iter().any(|r| r.len() != order) {
            return Err(Error::contract(format!(
                "Cayley table must be {order}x{order}"
            )));
        }
        if identity >= order || cayley.iter().flatten().any(|&x| x >= order) {
            return Err(Error::contract("group element index out of range"));
        }
        Ok(Self {
            labels,
            cayley,
            identity,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with labels `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let cayley = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self {
            labels,
            cayley,
            identity: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    /// Latin square, two-sided identity, inverses and associativity.
    pub fn verify(&self) -> VerificationReport {
        let n = self.order();
        let mut report = VerificationReport::new();
        let idx = |v: usize| vec![int(v as i64)];
        for a in 0..n {
            let mut row = self.cayley[a].clone();
            row.sort_unstable();
            let mut col: Vec<usize> = (0..n).map(|b| self.cayley[b][a]).collect();
            col.sort_unstable();
            let expect: Vec<usize> = (0..n).collect();
            if row != expect || col != expect {
                report.push("latin-square", vec![a], idx(a), idx(a));
            }
            report.check("identity", &[a], idx(self.mul(self.identity, a)), idx(a));
            report.check("identity", &[a], idx(self.mul(a, self.identity)), idx(a));
            if self.inverse(a).is_none() {
                report.push("inverse", vec![a], idx(a), idx(self.identity));
            }
        }
        for t in MultiIndex::new(n, 3) {
            let (a, b, c) = (t[0], t[1], t[2]);
            report.check(
                "associativity",
                &t,
                idx(self.mul(self.mul(a, b), c)),
                idx(self.mul(a, self.mul(b, c))),
            );
        }
        report
    }
}

/// A linear action of a finite group: one matrix per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAction {
    group: FiniteGroup,
    space_dim: usize,
    matrices: Vec<Matrix>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::contract(format!(
                "action needs {} matrices, got {}",
                group.order(),
                matrices.len()
            )));
        }
        let space_dim = matrices[0].rows();
        if matrices
            .iter()
            .any(|m| m.rows() != space_dim || m.cols() != space_dim)
        {
            return Err(Error::contract(
                "action matrices must all be square of the same size",
            ));
        }
        Ok(Self {
            group,
            space_dim,
            matrices,
        })
    }

    /// Every element acts as the identity.
    pub fn trivial(group: FiniteGroup, space_dim: usize) -> Self {
        let matrices = vec![Matrix::identity(space_dim); group.order()];
        Self {
            group,
            space_dim,
            matrices,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Elements other than the identity; the identity imposes no condition
    /// once the action is verified.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.group.order()).filter(|&g| g != self.group.identity())
    }

    /// `ρ(e) = I`, `ρ(ab) = ρ(a)ρ(b)`, every `ρ(g)` invertible.
    pub fn verify_homomorphism(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let g = &self.group;
        let e = self.matrix(g.identity());
        if !e.is_identity() {
            report.push(
                "action-identity",
                vec![g.identity()],
                e.entries().to_vec(),
                Matrix::identity(self.space_dim).entries().to_vec(),
            );
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = self.matrix(g.mul(a, b));
                let rhs = self.matrix(a) * self.matrix(b);
                if *lhs != rhs {
                    report.push(
                        "action-homomorphism",
                        vec![a, b],
                        lhs.entries().to_vec(),
                        rhs.entries().to_vec(),
                    );
                }
            }
            if self.matrix(a).inverse().is_none() {
                report.push(
                    "action-invertible",
                    vec![a],
                    self.matrix(a).entries().to_vec(),
                    Vec::new(),
                );
            }
        }
        report
    }

    /// `ρ(g⁻¹)`; the action must be verified.
    pub fn inverse_matrix(&self, g: usize) -> Result<&Matrix> {
        self.group
            .inverse(g)
            .map(|h| self.matrix(h))
            .ok_or_else(|| Error::contract("group element has no inverse"))
    }
}

/// Group axioms, the homomorphism property, equivariance of the bracket
/// under the diagonal action and commutation of each `ρ(g)` with α.
/// Together these say each `ρ(g)` is an automorphism of the Hom-Lts.
pub fn verify_group_action(act: &GroupAction, t: &HomLts) -> Result<VerificationReport> {
    let n = t.dim();
    if act.space_dim() != n {
        return Err(Error::contract(format!(
            "action acts on dimension {} but the Hom-Lts has dimension {n}",
            act.space_dim()
        )));
    }
    let mut report = act.group().verify();
    report.merge(act.verify_homomorphism());
    for g in 0..act.group().order() {
        let rho = act.matrix(g);
        let images: Vec<Vector> = (0..n).map(|i| rho.column(i)).collect();
        for idx in MultiIndex::new(n, 3) {
            let lhs = t.bracket(&images[idx[0]], &images[idx[1]], &images[idx[2]]);
            let rhs = rho.mul_vec(t.basis_bracket(idx[0], idx[1], idx[2]));
            let mut at = vec![g];
            at.extend(&idx);
            report.check("bracket-equivariance", &at, lhs, rhs);
        }
        for (i, image) in images.iter().enumerate() {
            let lhs = t.twist(image);
            let rhs = rho.mul_vec(&t.twist(&unit_vector(n, i)));
            report.check("twist-equivariance", &[g, i], lhs, rhs);
        }
    }
    Ok(report)
}
