//! Constructors for the standard families of Hom-Lts.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{int, Matrix, Scalar, Vector};
use crate::tensor::{eval_multilinear, MultiIndex};

use super::{verify_hom_lts, FiniteGroup, GroupAction, HomLts};

/// Parameters selecting one example family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleParams {
    /// `[xyz] = λ(B(y,z)αx − B(z,x)αy)` for a symmetric form `B` with
    /// `B(αx, αy) = B(x, y)`.
    Bilinear {
        form: Matrix,
        alpha: Matrix,
        lambda: Scalar,
    },
    /// `[ABC] = (ABᵗ − BAᵗ)C + C(BᵗA − AᵗB)` on `p × q` matrices with
    /// ground-field entries and identity twist. Basis `E_{rs}` row-major.
    MatrixPq { p: usize, q: usize },
    /// `α∘(2[[x,y],z] − [[z,x],y] − [[y,z],x])` for an associative algebra
    /// (constants `c[i][j][k]`, `e_i e_j = Σ c[i][j][k] e_k`) and an algebra
    /// morphism α.
    Associative { constants: Vec<Scalar>, alpha: Matrix },
    /// `μ(x,y)αz − μ(y,x)αz − μ(z,x)αy + μ(z,y)αx` with twist `α²` for a
    /// multiplicative Hom-associative algebra `(A, μ, α)`.
    HomAssociative { constants: Vec<Scalar>, alpha: Matrix },
    /// The two-dimensional system with a ℤ₂-action and a first-order
    /// deformation term.
    Section5,
}

impl ExampleParams {
    pub fn id(&self) -> &'static str {
        match self {
            ExampleParams::Bilinear { .. } => "bilinear",
            ExampleParams::MatrixPq { .. } => "matrix_pq",
            ExampleParams::Associative { .. } => "associative",
            ExampleParams::HomAssociative { .. } => "hom_associative",
            ExampleParams::Section5 => "section5",
        }
    }
}

/// A constructed example.
#[derive(Clone, Debug)]
pub struct Example {
    pub lts: HomLts,
    pub action: Option<GroupAction>,
    /// Deformation terms `μ₁, μ₂, …` as flattened degree-3 tensors.
    pub deformation_terms: Vec<Vector>,
    /// How the bracket was formed, e.g. whether α is composed on the outside.
    pub convention: &'static str,
}

impl Example {
    pub fn first_order_term(&self) -> Option<&Vector> {
        self.deformation_terms.first()
    }
}

/// Builds an example, rejecting parameters that violate its hypotheses
/// with [`Error::Hypothesis`].
pub fn make_example(params: &ExampleParams) -> Result<Example> {
    let (lts, action, deformation_terms, convention) = match params {
        ExampleParams::Bilinear {
            form,
            alpha,
            lambda,
        } => (bilinear(form, alpha, lambda)?, None, Vec::new(), "λ(B(y,z)αx − B(z,x)αy)"),
        ExampleParams::MatrixPq { p, q } => (matrix_pq(*p, *q)?, None, Vec::new(), "α = identity"),
        ExampleParams::Associative { constants, alpha } => (
            associative(constants, alpha)?,
            None,
            Vec::new(),
            "twisted bracket α∘[ ]",
        ),
        ExampleParams::HomAssociative { constants, alpha } => (
            hom_associative(constants, alpha)?,
            None,
            Vec::new(),
            "twist α²",
        ),
        ExampleParams::Section5 => {
            let ex = section5();
            return Ok(ex);
        }
    };
    let report = verify_hom_lts(&lts);
    if !report.passed() {
        return Err(Error::internal(format!(
            "{} example failed verification: {:?}",
            params.id(),
            report.axioms()
        )));
    }
    Ok(Example {
        lts,
        action,
        deformation_terms,
        convention,
    })
}

/// The two-dimensional example: `[e₁e₂e₂] = e₁`, `[e₂e₁e₂] = −e₁`,
/// `α = diag(1, −1)`, ℤ₂ acting by `±I`, and
/// `μ₁(e₂,e₁,e₁) = e₂`, `μ₁(e₁,e₂,e₁) = −e₂`.
pub fn section5() -> Example {
    let alpha = Matrix::diagonal(&[int(1), int(-1)]);
    let lts = HomLts::from_brackets(
        alpha,
        &[
            ([0, 1, 1], vec![int(1), int(0)]),
            ([1, 0, 1], vec![int(-1), int(0)]),
        ],
    )
    .expect("fixed shapes");
    let action = GroupAction::new(
        FiniteGroup::cyclic(2),
        vec![Matrix::identity(2), Matrix::diagonal(&[int(-1), int(-1)])],
    )
    .expect("fixed shapes");
    let mut mu1 = vec![Scalar::zero(); 16];
    let at = |i: usize, j: usize, k: usize, l: usize| ((i * 2 + j) * 2 + k) * 2 + l;
    mu1[at(1, 0, 0, 1)] = int(1);
    mu1[at(0, 1, 0, 1)] = int(-1);
    Example {
        lts,
        action: Some(action),
        deformation_terms: vec![mu1],
        convention: "ℤ₂ acts by ±I",
    }
}

fn bilinear(form: &Matrix, alpha: &Matrix, lambda: &Scalar) -> Result<HomLts> {
    let n = form.rows();
    if !form.is_square() || alpha.rows() != n || !alpha.is_square() {
        return Err(Error::Hypothesis(
            "form and twist must be square of the same size".into(),
        ));
    }
    if form.transpose() != *form {
        return Err(Error::Hypothesis("bilinear form is not symmetric".into()));
    }
    if &(&alpha.transpose() * form) * alpha != *form {
        return Err(Error::Hypothesis(
            "twist does not preserve the bilinear form".into(),
        ));
    }
    let mut t = HomLts::zero(alpha.clone())?;
    for idx in MultiIndex::new(n, 3) {
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        let mut value = vec![Scalar::zero(); n];
        for (l, v) in value.iter_mut().enumerate() {
            *v = lambda * (form.get(y, z) * alpha.get(l, x) - form.get(z, x) * alpha.get(l, y));
        }
        t.set_basis_bracket(x, y, z, value)?;
    }
    Ok(t)
}

fn matrix_pq(p: usize, q: usize) -> Result<HomLts> {
    if p == 0 || q == 0 {
        return Err(Error::Hypothesis("matrix sizes must be positive".into()));
    }
    let n = p * q;
    let basis = |i: usize| {
        let mut m = Matrix::zeros(p, q);
        m.set(i / q, i % q, Scalar::one());
        m
    };
    let mut t = HomLts::zero(Matrix::identity(n))?;
    for idx in MultiIndex::new(n, 3) {
        let (a, b, c) = (basis(idx[0]), basis(idx[1]), basis(idx[2]));
        let (at, bt) = (a.transpose(), b.transpose());
        let left = &(&(&a * &bt) - &(&b * &at)) * &c;
        let right = &c * &(&(&bt * &a) - &(&at * &b));
        let sum = &left + &right;
        t.set_basis_bracket(idx[0], idx[1], idx[2], sum.entries().to_vec())?;
    }
    Ok(t)
}

fn check_algebra_shape(constants: &[Scalar], alpha: &Matrix) -> Result<usize> {
    let n = alpha.rows();
    if !alpha.is_square() || constants.len() != n * n * n {
        return Err(Error::Hypothesis(format!(
            "algebra constants need {} entries for a {n}x{n} twist",
            n * n * n
        )));
    }
    Ok(n)
}

fn product(constants: &[Scalar], n: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
    eval_multilinear(constants, n, n, &[x, y])
}

fn check_multiplicative(constants: &[Scalar], alpha: &Matrix, n: usize) -> Result<()> {
    let cols = alpha.columns();
    for i in 0..n {
        for j in 0..n {
            let lhs = alpha.mul_vec(&product(constants, n, &unit(n, i), &unit(n, j)));
            let rhs = product(constants, n, &cols[i], &cols[j]);
            if lhs != rhs {
                return Err(Error::Hypothesis(format!(
                    "twist is not multiplicative at (e_{}, e_{})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn unit(n: usize, i: usize) -> Vector {
    crate::exactlin::unit_vector(n, i)
}

fn associative(constants: &[Scalar], alpha: &Matrix) -> Result<HomLts> {
    let n = check_algebra_shape(constants, alpha)?;
    for idx in MultiIndex::new(n, 3) {
        let (x, y, z) = (unit(n, idx[0]), unit(n, idx[1]), unit(n, idx[2]));
        let lhs = product(constants, n, &product(constants, n, &x, &y), &z);
        let rhs = product(constants, n, &x, &product(constants, n, &y, &z));
        if lhs != rhs {
            return Err(Error::Hypothesis(format!(
                "product is not associative at (e_{}, e_{}, e_{})",
                idx[0] + 1,
                idx[1] + 1,
                idx[2] + 1
            )));
        }
    }
    check_multiplicative(constants, alpha, n)?;
    let comm = |x: &[Scalar], y: &[Scalar]| {
        crate::exactlin::sub_vectors(&product(constants, n, x, y), &product(constants, n, y, x))
    };
    let mut t = HomLts::zero(alpha.clone())?;
    for idx in MultiIndex::new(n, 3) {
        let (x, y, z) = (unit(n, idx[0]), unit(n, idx[1]), unit(n, idx[2]));
        let xyz = comm(&comm(&x, &y), &z);
        let zxy = comm(&comm(&z, &x), &y);
        let yzx = comm(&comm(&y, &z), &x);
        let value: Vector = (0..n)
            .map(|l| int(2) * &xyz[l] - &zxy[l] - &yzx[l])
            .collect();
        t.set_basis_bracket(idx[0], idx[1], idx[2], alpha.mul_vec(&value))?;
    }
    Ok(t)
}

fn hom_associative(constants: &[Scalar], alpha: &Matrix) -> Result<HomLts> {
    let n = check_algebra_shape(constants, alpha)?;
    let cols = alpha.columns();
    for idx in MultiIndex::new(n, 3) {
        let (x, y, z) = (unit(n, idx[0]), unit(n, idx[1]), unit(n, idx[2]));
        let lhs = product(constants, n, &cols[idx[0]], &product(constants, n, &y, &z));
        let rhs = product(constants, n, &product(constants, n, &x, &y), &cols[idx[2]]);
        if lhs != rhs {
            return Err(Error::Hypothesis(format!(
                "product is not Hom-associative at (e_{}, e_{}, e_{})",
                idx[0] + 1,
                idx[1] + 1,
                idx[2] + 1
            )));
        }
    }
    check_multiplicative(constants, alpha, n)?;
    let mut t = HomLts::zero(alpha.pow(2))?;
    for idx in MultiIndex::new(n, 3) {
        let (x, y, z) = (unit(n, idx[0]), unit(n, idx[1]), unit(n, idx[2]));
        let (ax, ay, az) = (&cols[idx[0]], &cols[idx[1]], &cols[idx[2]]);
        let terms = [
            product(constants, n, &product(constants, n, &x, &y), az),
            product(constants, n, &product(constants, n, &y, &x), az),
            product(constants, n, &product(constants, n, &z, &x), ay),
            product(constants, n, &product(constants, n, &z, &y), ax),
        ];
        let value: Vector = (0..n)
            .map(|l| &terms[0][l] - &terms[1][l] - &terms[2][l] + &terms[3][l])
            .collect();
        t.set_basis_bracket(idx[0], idx[1], idx[2], value)?;
    }
    Ok(t)
}

/// Structure constants of the full matrix algebra `M_k` in the basis
/// `E_{rs}` (row-major).
pub fn matrix_algebra_constants(k: usize) -> Vec<Scalar> {
    let n = k * k;
    let mut c = vec![Scalar::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            let (r, s) = (a / k, a % k);
            let (s2, t) = (b / k, b % k);
            if s == s2 {
                c[(a * n + b) * n + r * k + t] = Scalar::one();
            }
        }
    }
    c
}
