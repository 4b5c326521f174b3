//! Equivariant formal deformations `μ_t = Σ μ_i t^i` truncated at a finite
//! order, their obstructions, and equivalence under formal isomorphisms
//! `Ψ_t = Σ ψ_i t^i` with `ψ_0 = id`.
//!
//! All cochains live in the adjoint complex (`V = T`, `A = α`), equivariant
//! whenever the base carries a group action.

use num_traits::Zero;

use crate::cohomology::{
    cochain_basis, coboundary_images, coboundary_operator, cohomology_basis, is_cochain, Cochain,
    ComplexContext,
};
use crate::error::{Error, Result};
use crate::exactlin::sparse::{column_kernel, solve_in_span};
use crate::exactlin::{add_vectors, sub_vectors, Matrix, Scalar, SparseVec, Vector};
use crate::structures::{check_ternary_map, verify_group_action, verify_hom_lts, GroupAction, HomLts, VerificationReport};
use crate::tensor::{eval_multilinear, pullback, pushforward, MultiIndex};

/// A deformation truncated at order `terms.len()`; `μ_0` is the base
/// bracket and `terms[r-1]` holds `μ_r` in the bracket tensor layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    base: HomLts,
    action: Option<GroupAction>,
    terms: Vec<Vector>,
}

impl Deformation {
    pub fn new(base: HomLts, action: Option<GroupAction>, terms: Vec<Vector>) -> Result<Self> {
        let len = base.dim().pow(4);
        if let Some(r) = terms.iter().position(|t| t.len() != len) {
            return Err(Error::contract(format!(
                "deformation term {} needs {len} entries",
                r + 1
            )));
        }
        if let Some(a) = &action {
            if a.space_dim() != base.dim() {
                return Err(Error::contract("action dimension mismatch"));
            }
        }
        Ok(Self {
            base,
            action,
            terms,
        })
    }

    /// All terms zero up to `order`.
    pub fn zero(base: HomLts, action: Option<GroupAction>, order: usize) -> Self {
        let len = base.dim().pow(4);
        Self {
            base,
            action,
            terms: vec![vec![Scalar::zero(); len]; order],
        }
    }

    pub fn base(&self) -> &HomLts {
        &self.base
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Vector] {
        &self.terms
    }

    /// `μ_r`, with `μ_0` the base bracket and zero beyond the order.
    pub fn mu(&self, r: usize) -> Vector {
        if r == 0 {
            self.base.structure_constants().to_vec()
        } else {
            self.terms
                .get(r - 1)
                .cloned()
                .unwrap_or_else(|| vec![Scalar::zero(); self.base.dim().pow(4)])
        }
    }

    pub fn term_cochain(&self, r: usize) -> Cochain {
        let n = self.base.dim();
        Cochain::new(3, n, n, self.mu(r)).expect("bracket-shaped term")
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut d = self.clone();
        d.terms.truncate(order);
        d
    }

    pub fn extended(&self, term: Vector) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.push(term);
        Self::new(self.base.clone(), self.action.clone(), terms)
    }

    /// The adjoint complex of the base, equivariant when an action is set.
    pub fn context(&self) -> Result<ComplexContext> {
        let eq = self.action.is_some();
        ComplexContext::adjoint(self.base.clone(), self.action.clone(), eq)
    }
}

/// A formal map `Ψ_t = id + Σ_{i≥1} ψ_i t^i` truncated at `maps.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIsomorphism {
    dim: usize,
    maps: Vec<Matrix>,
}

impl FormalIsomorphism {
    pub fn new(dim: usize, maps: Vec<Matrix>) -> Result<Self> {
        if maps.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::contract(format!(
                "formal isomorphism terms must be {dim}x{dim}"
            )));
        }
        Ok(Self { dim, maps })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        Self {
            dim,
            maps: vec![Matrix::zeros(dim, dim); order],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `ψ_r`, with `ψ_0 = id` and zero beyond the order.
    pub fn psi(&self, r: usize) -> Matrix {
        if r == 0 {
            Matrix::identity(self.dim)
        } else {
            self.maps
                .get(r - 1)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(self.dim, self.dim))
        }
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// The formal inverse to `order`: `φ_r = −Σ_{i=1}^{r} ψ_i φ_{r−i}`.
    pub fn inverse(&self, order: usize) -> Self {
        let mut phi: Vec<Matrix> = vec![Matrix::identity(self.dim)];
        for r in 1..=order {
            let mut acc = Matrix::zeros(self.dim, self.dim);
            for i in 1..=r {
                acc = &acc - &(&self.psi(i) * &phi[r - i]);
            }
            phi.push(acc);
        }
        Self {
            dim: self.dim,
            maps: phi.into_iter().skip(1).collect(),
        }
    }

    /// `(self ∘ other)_r = Σ_{i+j=r} ψ_i φ_j` to `order`.
    pub fn compose(&self, other: &Self, order: usize) -> Self {
        let maps = (1..=order)
            .map(|r| {
                let mut acc = Matrix::zeros(self.dim, self.dim);
                for i in 0..=r {
                    acc = &acc + &(&self.psi(i) * &other.psi(r - i));
                }
                acc
            })
            .collect();
        Self {
            dim: self.dim,
            maps,
        }
    }

    /// Each `ψ_i` commutes with `α` and with every group element.
    pub fn verify(&self, base: &HomLts, action: Option<&GroupAction>) -> VerificationReport {
        let mut report = VerificationReport::new();
        for (i, psi) in self.maps.iter().enumerate() {
            let lhs = psi * base.alpha();
            let rhs = base.alpha() * psi;
            if lhs != rhs {
                report.push("twist-commutation", vec![i + 1], lhs.entries().to_vec(), rhs.entries().to_vec());
            }
            if let Some(a) = action {
                for g in a.non_identity() {
                    let lhs = psi * a.matrix(g);
                    let rhs = a.matrix(g) * psi;
                    if lhs != rhs {
                        report.push("equivariance", vec![i + 1, g], lhs.entries().to_vec(), rhs.entries().to_vec());
                    }
                }
            }
        }
        report
    }
}

/// The obstruction `F_{n+1}` and whether it can be killed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionResult {
    pub target_order: usize,
    pub cochain: Cochain,
    /// `F` passes the degree-5 cochain checks of the (equivariant) complex.
    pub in_cochain_space: bool,
    /// `δ⁵F = 0`.
    pub is_cocycle: bool,
    /// Canonical `μ_{n+1}` with `δ³μ_{n+1} = F`, when one exists.
    pub witness: Option<Cochain>,
}

fn bracket_at(mu: &[Scalar], n: usize, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    eval_multilinear(mu, n, n, &[x, y, z])
}

/// `Σ_{i+j=r} [μ_i(αa,αb,μ_j(cde)) − μ_i(μ_j(abc),αd,αe) − μ_i(αc,μ_j(abd),αe)
/// − μ_i(αc,αd,μ_j(abe))]` over the given `(i, j)` pairs, on basis quintuples.
fn convolution(d: &Deformation, pairs: &[(usize, usize)]) -> Cochain {
    let t = &d.base;
    let n = t.dim();
    let mus: Vec<Vector> = (0..=pairs.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0))
        .map(|r| d.mu(r))
        .collect();
    let tw: Vec<Vector> = (0..n).map(|i| t.alpha().column(i)).collect();
    let mut out = Cochain::zero(5, n, n);
    let base = |mu: &[Scalar], i: usize, j: usize, k: usize| -> Vector {
        let b = ((i * n + j) * n + k) * n;
        mu[b..b + n].to_vec()
    };
    for idx in MultiIndex::new(n, 5) {
        let (a, b, c, dd, e) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        let mut acc = vec![Scalar::zero(); n];
        for &(i, j) in pairs {
            let (mi, mj) = (&mus[i], &mus[j]);
            let cde = base(mj, c, dd, e);
            let abc = base(mj, a, b, c);
            let abd = base(mj, a, b, dd);
            let abe = base(mj, a, b, e);
            acc = add_vectors(&acc, &bracket_at(mi, n, &tw[a], &tw[b], &cde));
            acc = sub_vectors(&acc, &bracket_at(mi, n, &abc, &tw[dd], &tw[e]));
            acc = sub_vectors(&acc, &bracket_at(mi, n, &tw[c], &abd, &tw[e]));
            acc = sub_vectors(&acc, &bracket_at(mi, n, &tw[c], &tw[dd], &abe));
        }
        out.set_value(&idx, acc);
    }
    out
}

/// Checks, per term `μ_r` (`1 ≤ r ≤ r_max`): twist compatibility,
/// alternation, the cyclic identity and invariance; and for every
/// `0 ≤ r ≤ r_max` the order-`r` deformation identity on basis quintuples.
/// Order 0 re-verifies the base.
pub fn verify_deformation(d: &Deformation, r_max: usize) -> Result<VerificationReport> {
    if r_max > d.order() {
        return Err(Error::contract(format!(
            "cannot verify to order {r_max}: deformation has order {}",
            d.order()
        )));
    }
    let n = d.base.dim();
    let mut report = VerificationReport::new();
    report.merge_scoped("order-0", verify_hom_lts(&d.base));
    if let Some(a) = &d.action {
        report.merge_scoped("order-0", verify_group_action(a, &d.base)?);
    }
    for r in 1..=r_max {
        let mu = d.mu(r);
        let mut sub = VerificationReport::new();
        check_ternary_map(&mut sub, &mu, n, d.base.alpha(), "twist-compatibility");
        if let Some(a) = &d.action {
            for g in a.non_identity() {
                let rho = a.matrix(g);
                let moved = pullback(&mu, n, n, &[rho, rho, rho]);
                let pushed = pushforward(&mu, n, rho);
                for (t, (x, y)) in moved.chunks(n).zip(pushed.chunks(n)).enumerate() {
                    if x != y {
                        let mut at = vec![g];
                        at.extend(crate::tensor::tuple_from_offset(t, n, 3));
                        sub.push("invariance", at, x.to_vec(), y.to_vec());
                    }
                }
            }
        }
        report.merge_scoped(&format!("order-{r}"), sub);
    }
    for r in 1..=r_max {
        let pairs: Vec<(usize, usize)> = (0..=r).map(|i| (i, r - i)).collect();
        let total = convolution(d, &pairs);
        let mut sub = VerificationReport::new();
        let zero = vec![Scalar::zero(); n];
        for idx in MultiIndex::new(n, 5) {
            sub.check("deformation-identity", &idx, total.value(&idx).to_vec(), zero.clone());
        }
        report.merge_scoped(&format!("order-{r}"), sub);
    }
    Ok(report)
}

/// The first nonzero term of a deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infinitesimal {
    pub index: usize,
    pub cochain: Cochain,
    pub is_cocycle: bool,
}

/// The first nonzero `μ_n` and whether `δ³μ_n = 0`.
pub fn infinitesimal(d: &Deformation) -> Result<Infinitesimal> {
    let index = d
        .terms
        .iter()
        .position(|t| t.iter().any(|x| !x.is_zero()))
        .ok_or(Error::TrivialDeformation)?
        + 1;
    let ctx = d.context()?;
    let cochain = d.term_cochain(index);
    let is_cocycle = coboundary_operator(&ctx, 3)?.apply(&cochain).is_zero();
    Ok(Infinitesimal {
        index,
        cochain,
        is_cocycle,
    })
}

fn require_verified(d: &Deformation, order: usize) -> Result<()> {
    let r = verify_deformation(d, order)?;
    if !r.passed() {
        return Err(Error::contract(format!(
            "deformation fails verification at order {order}: {:?}",
            r.axioms()
        )));
    }
    Ok(())
}

/// `F_{n+1} = Σ_{i+j=n+1, i,j>0} [...]` for a deformation verified to order
/// `n = target_order − 1`, with the checks and the canonical `μ_{n+1}`.
pub fn obstruction(d: &Deformation, target_order: usize) -> Result<ObstructionResult> {
    if target_order < 1 {
        return Err(Error::contract("obstruction target order starts at 1"));
    }
    let n_order = target_order - 1;
    if d.order() < n_order {
        return Err(Error::contract(format!(
            "deformation has order {} but order {n_order} is needed",
            d.order()
        )));
    }
    let d = d.truncated(n_order);
    require_verified(&d, n_order)?;
    let pairs: Vec<(usize, usize)> = (1..target_order).map(|i| (i, target_order - i)).collect();
    let f = convolution(&d, &pairs);
    let ctx = d.context()?;
    let in_cochain_space = is_cochain(&ctx, &f)?.passed();
    let is_cocycle = coboundary_operator(&ctx, 5)?.apply(&f).is_zero();
    let basis = cochain_basis(&ctx, 3)?;
    let images = coboundary_images(&ctx, 3)?;
    let witness = solve_in_span(&images, &f.to_sparse()).map(|y| basis.combine(&y));
    Ok(ObstructionResult {
        target_order,
        cochain: f,
        in_cochain_space,
        is_cocycle,
        witness,
    })
}

/// Extends a deformation verified at its order `n` to order `n+1` with the
/// canonical `μ_{n+1}`, or returns `None` when the obstruction class is
/// nonzero.
pub fn try_extend(d: &Deformation) -> Result<Option<Deformation>> {
    let ob = obstruction(d, d.order() + 1)?;
    let Some(w) = ob.witness else {
        return Ok(None);
    };
    let next = d.extended(w.into_coeffs())?;
    let r = verify_deformation(&next, next.order())?;
    if !r.passed() {
        return Err(Error::internal(format!(
            "extension by the obstruction witness fails {:?}",
            r.axioms()
        )));
    }
    Ok(Some(next))
}

/// Outcome of [`extend_to_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRun {
    pub deformation: Deformation,
    pub first_blocked: Option<usize>,
    /// Coordinates of the blocking obstruction in a fixed basis of `H⁵`.
    pub blocked_class: Option<Vec<Scalar>>,
    /// Per-order obstruction data for every attempted order.
    pub obstructions: Vec<ObstructionResult>,
}

/// Repeats [`try_extend`] up to `target` and reports the first block.
pub fn extend_to_order(d: &Deformation, target: usize) -> Result<ExtensionRun> {
    require_verified(d, d.order())?;
    let mut current = d.clone();
    let mut obstructions = Vec::new();
    while current.order() < target {
        let ob = obstruction(&current, current.order() + 1)?;
        let witness = ob.witness.clone();
        obstructions.push(ob.clone());
        match witness {
            Some(_) => {
                current = try_extend(&current)?.ok_or_else(|| {
                    Error::internal("obstruction witness disappeared on retry")
                })?;
            }
            None => {
                let ctx = current.context()?;
                let h5 = cohomology_basis(&ctx, 5)?;
                return Ok(ExtensionRun {
                    deformation: current,
                    first_blocked: Some(ob.target_order),
                    blocked_class: h5.class_coordinates(&ob.cochain),
                    obstructions,
                });
            }
        }
    }
    Ok(ExtensionRun {
        deformation: current,
        first_blocked: None,
        blocked_class: None,
        obstructions,
    })
}

/// Order-`r` residual of `μ̃_t(Ψa, Ψb, Ψc) = Ψ μ_t(a, b, c)`:
/// `Σ_{s+j+k+l=r} μ̃_s(ψ_j·, ψ_k·, ψ_l·) − Σ_{i+j=r} ψ_i μ_j`, skipping the
/// terms listed by `skip`.
fn transport_residual(
    psi: &FormalIsomorphism,
    source: &Deformation,
    target_terms: &[Vector],
    r: usize,
    skip_target_r: bool,
) -> Vector {
    let n = source.base.dim();
    let len = n.pow(4);
    let mut acc = vec![Scalar::zero(); len];
    for (s, mu_s) in target_terms.iter().enumerate().take(r + 1) {
        if s == r && skip_target_r {
            continue;
        }
        for j in 0..=(r - s) {
            for k in 0..=(r - s - j) {
                let l = r - s - j - k;
                let mats = [psi.psi(j), psi.psi(k), psi.psi(l)];
                let moved = pullback(mu_s, n, n, &[&mats[0], &mats[1], &mats[2]]);
                acc = add_vectors(&acc, &moved);
            }
        }
    }
    for i in 0..=r {
        let pushed = pushforward(&source.mu(r - i), n, &psi.psi(i));
        acc = sub_vectors(&acc, &pushed);
    }
    acc
}

/// The deformation `μ̃_t` with `μ̃_t(Ψa, Ψb, Ψc) = Ψ μ_t(a, b, c)` to `order`,
/// solved triangularly using `ψ_0 = id`.
pub fn apply_isomorphism(psi: &FormalIsomorphism, d: &Deformation, order: usize) -> Result<Deformation> {
    if d.order() < order {
        return Err(Error::contract(format!(
            "deformation has order {} but order {order} was requested",
            d.order()
        )));
    }
    if psi.dim() != d.base.dim() {
        return Err(Error::contract("formal isomorphism dimension mismatch"));
    }
    let check = psi.verify(&d.base, d.action.as_ref());
    if !check.passed() {
        return Err(Error::contract(format!(
            "formal isomorphism fails {:?}",
            check.axioms()
        )));
    }
    let mut target: Vec<Vector> = vec![d.mu(0)];
    for r in 1..=order {
        target.push(vec![Scalar::zero(); d.base.dim().pow(4)]);
        let residual = transport_residual(psi, d, &target, r, true);
        target[r] = residual.iter().map(|x| -x).collect();
    }
    Deformation::new(d.base.clone(), d.action.clone(), target.into_iter().skip(1).collect())
}

/// Checks that `psi` carries `d1` to `d2` up to `order`.
pub fn check_isomorphism(
    psi: &FormalIsomorphism,
    d1: &Deformation,
    d2: &Deformation,
    order: usize,
) -> Result<VerificationReport> {
    let mut report = psi.verify(&d1.base, d1.action.as_ref());
    let target: Vec<Vector> = (0..=order).map(|r| d2.mu(r)).collect();
    let n = d1.base.dim();
    for r in 1..=order {
        let res = transport_residual(psi, d1, &target, r, false);
        for (t, chunk) in res.chunks(n).enumerate() {
            if chunk.iter().any(|x| !x.is_zero()) {
                let mut at = vec![r];
                at.extend(crate::tensor::tuple_from_offset(t, n, 3));
                report.push("transport", at, chunk.to_vec(), vec![Scalar::zero(); n]);
            }
        }
    }
    Ok(report)
}

/// Searches `Ψ` with `d2 = Ψ·d1` order by order. At order `r` the identity
/// reads `δ¹ψ_r = −R_r`, with `R_r` the residual at `ψ_r = 0`. Since `ψ_{r−1}`
/// is only fixed up to `Z¹` (equivariant derivations commuting with `α`),
/// the system is solved jointly in `ψ_r` and a shift `ψ_{r−1} += z`, `z ∈ Z¹`.
/// The effect of `z` on `R_r` is linear modulo `im δ¹`: for `r = 2` the
/// quadratic part is `−½δ¹(z²)`. Solutions are canonical (free variables
/// zero). Returns `None` at the first order with no solution.
pub fn deformations_equivalent(
    d1: &Deformation,
    d2: &Deformation,
    order: usize,
) -> Result<Option<FormalIsomorphism>> {
    if d1.base != d2.base || d1.action != d2.action {
        return Err(Error::contract("deformations must share the base and action"));
    }
    if d1.order() < order || d2.order() < order {
        return Err(Error::contract(format!(
            "both deformations need order at least {order}"
        )));
    }
    let n = d1.base.dim();
    let ctx = d1.context()?;
    let basis = cochain_basis(&ctx, 1)?;
    let images = coboundary_images(&ctx, 1)?;
    let derivations: Vec<Matrix> = column_kernel(&images)
        .iter()
        .map(|y| cochain_to_matrix(&basis.combine(&y.to_dense(basis.dim())), n))
        .collect::<Result<_>>()?;
    let target: Vec<Vector> = (0..=order).map(|r| d2.mu(r)).collect();
    let mut psi = FormalIsomorphism::identity(n, 0);
    for r in 1..=order {
        psi.maps.push(Matrix::zeros(n, n));
        let residual = transport_residual(&psi, d1, &target, r, false);
        if r >= 2 && !derivations.is_empty() {
            let mut columns = images.clone();
            for z in &derivations {
                let mut shifted = psi.clone();
                shifted.maps[r - 2] = &shifted.maps[r - 2] + z;
                let moved = transport_residual(&shifted, d1, &target, r, false);
                columns.push(SparseVec::from_dense(&sub_vectors(&moved, &residual)));
            }
            let rhs: Vector = residual.iter().map(|x| -x).collect();
            let Some(y) = solve_in_span(&columns, &SparseVec::from_dense(&rhs)) else {
                return Ok(None);
            };
            for (c, z) in y[images.len()..].iter().zip(&derivations) {
                if !c.is_zero() {
                    psi.maps[r - 2] = &psi.maps[r - 2] + &z.scale(c);
                }
            }
        }
        let residual = transport_residual(&psi, d1, &target, r, false);
        let rhs: Vector = residual.iter().map(|x| -x).collect();
        let Some(y) = solve_in_span(&images, &SparseVec::from_dense(&rhs)) else {
            if r >= 2 && !derivations.is_empty() {
                return Err(Error::internal(format!(
                    "order-{r} equivalence system solvable only before the Z¹ shift"
                )));
            }
            return Ok(None);
        };
        psi.maps[r - 1] = cochain_to_matrix(&basis.combine(&y), n)?;
    }
    let check = check_isomorphism(&psi, d1, d2, order)?;
    if !check.passed() {
        return Err(Error::internal(format!(
            "equivalence witness fails {:?}",
            check.axioms()
        )));
    }
    Ok(Some(psi))
}

fn cochain_to_matrix(f: &Cochain, n: usize) -> Result<Matrix> {
    let cols: Vec<Vector> = (0..n).map(|i| f.value(&[i]).to_vec()).collect();
    Matrix::from_columns(n, &cols)
}

/// `Ψ` with `μ_0 = Ψ·d` to `order` (a trivializing isomorphism), if found.
pub fn is_trivial(d: &Deformation, order: usize) -> Result<Option<FormalIsomorphism>> {
    let zero = Deformation::zero(d.base.clone(), d.action.clone(), order);
    deformations_equivalent(&d.truncated(order), &zero, order)
}
