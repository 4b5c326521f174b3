use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{add_vectors, Matrix, Scalar, Vector};
use crate::tensor::{eval_multilinear, MultiIndex};

use super::VerificationReport;

/// A finite-dimensional ternary algebra `(T, [ , , ], α)` given by structure
/// constants: `[e_i e_j e_k] = Σ_l c[i][j][k][l] e_l`.
///
/// Construction only checks shapes; use [`verify_hom_lts`] for the axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomLts {
    dim: usize,
    bracket: Vec<Scalar>,
    alpha: Matrix,
}

impl HomLts {
    pub fn new(dim: usize, bracket: Vec<Scalar>, alpha: Matrix) -> Result<Self> {
        if bracket.len() != dim.pow(4) {
            return Err(Error::contract(format!(
                "bracket tensor for dim {dim} needs {} entries, got {}",
                dim.pow(4),
                bracket.len()
            )));
        }
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(Error::contract(format!(
                "twist must be {dim}x{dim}, got {}x{}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        Ok(Self {
            dim,
            bracket,
            alpha,
        })
    }

    /// The zero bracket with the given twist.
    pub fn zero(alpha: Matrix) -> Result<Self> {
        let dim = alpha.rows();
        Self::new(dim, vec![Scalar::zero(); dim.pow(4)], alpha)
    }

    /// Builds from a list of basis brackets `[e_i e_j e_k] = value`; every
    /// unlisted bracket is zero. Later entries overwrite earlier ones.
    pub fn from_brackets(alpha: Matrix, entries: &[([usize; 3], Vector)]) -> Result<Self> {
        let mut t = Self::zero(alpha)?;
        for (idx, value) in entries {
            t.set_basis_bracket(idx[0], idx[1], idx[2], value.clone())?;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// Flattened structure constants; identical in layout to a degree-3
    /// `T`-valued cochain.
    pub fn structure_constants(&self) -> &[Scalar] {
        &self.bracket
    }

    pub fn basis_bracket(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let n = self.dim;
        let base = ((i * n + j) * n + k) * n;
        &self.bracket[base..base + n]
    }

    pub fn set_basis_bracket(&mut self, i: usize, j: usize, k: usize, value: Vector) -> Result<()> {
        let n = self.dim;
        if i >= n || j >= n || k >= n || value.len() != n {
            return Err(Error::contract(format!(
                "bracket entry ({i},{j},{k}) out of range for dim {n}"
            )));
        }
        let base = ((i * n + j) * n + k) * n;
        self.bracket[base..base + n].clone_from_slice(&value);
        Ok(())
    }

    /// Trilinear bracket of arbitrary vectors. Panics on length mismatch;
    /// see [`eval_bracket`] for the checked form.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        eval_multilinear(&self.bracket, self.dim, self.dim, &[x, y, z])
    }

    pub fn twist(&self, v: &[Scalar]) -> Vector {
        self.alpha.mul_vec(v)
    }

    pub fn is_zero_bracket(&self) -> bool {
        self.bracket.iter().all(Zero::is_zero)
    }
}

/// `[x y z]` with length checks.
pub fn eval_bracket(t: &HomLts, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vector> {
    let n = t.dim();
    if x.len() != n || y.len() != n || z.len() != n {
        return Err(Error::contract(format!(
            "bracket arguments must have length {n}"
        )));
    }
    Ok(t.bracket(x, y, z))
}

/// Checks alternation in the first two slots, the cyclic identity and
/// twist compatibility `α∘μ = μ∘(α⊗α⊗α)` for a flattened ternary map
/// `μ: T⊗T⊗T → T`. Shared by Hom-Lts verification and deformation terms.
pub(crate) fn check_ternary_map(
    report: &mut VerificationReport,
    mu: &[Scalar],
    n: usize,
    alpha: &Matrix,
    twist_axiom: &str,
) {
    let value = |i: usize, j: usize, k: usize| -> &[Scalar] {
        let base = ((i * n + j) * n + k) * n;
        &mu[base..base + n]
    };
    let zero = vec![Scalar::zero(); n];
    for idx in MultiIndex::new(n, 3) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        if i == j {
            report.check("alternating", &idx, value(i, i, k).to_vec(), zero.clone());
        } else if i < j {
            let rhs: Vector = value(j, i, k).iter().map(|x| -x).collect();
            report.check("alternating", &idx, value(i, j, k).to_vec(), rhs);
        }
    }
    for idx in MultiIndex::new(n, 3) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let sum = add_vectors(&add_vectors(value(i, j, k), value(j, k, i)), value(k, i, j));
        report.check("cyclic", &idx, sum, zero.clone());
    }
    let cols: Vec<Vector> = (0..n).map(|i| alpha.column(i)).collect();
    for idx in MultiIndex::new(n, 3) {
        let lhs = alpha.mul_vec(value(idx[0], idx[1], idx[2]));
        let rhs = eval_multilinear(mu, n, n, &[&cols[idx[0]], &cols[idx[1]], &cols[idx[2]]]);
        report.check(twist_axiom, &idx, lhs, rhs);
    }
}

/// Checks every Hom-Lts axiom on basis tuples: alternation (as
/// antisymmetry in the first two slots plus vanishing diagonal), the cyclic
/// identity, the twisted five-term identity and multiplicativity of α.
pub fn verify_hom_lts(t: &HomLts) -> VerificationReport {
    let n = t.dim();
    let mut report = VerificationReport::new();
    check_ternary_map(&mut report, &t.bracket, n, &t.alpha, "multiplicative");

    let twisted: Vec<Vector> = (0..n).map(|i| t.alpha.column(i)).collect();
    for idx in MultiIndex::new(n, 5) {
        let (a, b, c, d, e) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        let cde = t.basis_bracket(c, d, e);
        let lhs = t.bracket(&twisted[a], &twisted[b], cde);
        let r1 = t.bracket(t.basis_bracket(a, b, c), &twisted[d], &twisted[e]);
        let r2 = t.bracket(&twisted[c], t.basis_bracket(a, b, d), &twisted[e]);
        let r3 = t.bracket(&twisted[c], &twisted[d], t.basis_bracket(a, b, e));
        let rhs = add_vectors(&add_vectors(&r1, &r2), &r3);
        report.check("twisted-jacobi", &idx, lhs, rhs);
    }
    report
}
