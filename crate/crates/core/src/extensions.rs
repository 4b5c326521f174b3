//! Central extensions `0 → V → T_c → T → 0` with a section, classified by
//! the third cohomology with trivial coefficients.

use num_traits::Zero;

use crate::cohomology::{
    coboundary, coboundary_membership, is_cochain, Cochain, ComplexContext,
};
use crate::error::{Error, Result};
use crate::exactlin::{fmt_scalar, nullspace_basis, solve_linear, Matrix, Scalar, Vector};
use crate::structures::{
    verify_group_action, verify_hom_lts, GroupAction, HomLts, Representation, VerificationReport,
};
use crate::tensor::MultiIndex;

/// Basis of the center `{x : [x a b] = 0 for all a, b}` as matrix columns.
pub fn center(t: &HomLts) -> Matrix {
    let n = t.dim();
    let mut rows: Vec<Vector> = Vec::with_capacity(n * n * n);
    for j in 0..n {
        for k in 0..n {
            // row l of the block: x ↦ ([x e_j e_k])_l
            for l in 0..n {
                rows.push((0..n).map(|q| t.basis_bracket(q, j, k)[l].clone()).collect());
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, 0);
    }
    nullspace_basis(&Matrix::from_rows(rows).expect("rectangular rows"))
}

/// The abelian fiber `(V, 0, A)` with an optional G-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub twist: Matrix,
    pub action: Option<GroupAction>,
}

impl Fiber {
    pub fn new(twist: Matrix, action: Option<GroupAction>) -> Result<Self> {
        if !twist.is_square() {
            return Err(Error::contract("fiber twist must be square"));
        }
        if let Some(a) = &action {
            if a.space_dim() != twist.rows() {
                return Err(Error::contract("fiber action dimension mismatch"));
            }
        }
        Ok(Self { twist, action })
    }

    pub fn dim(&self) -> usize {
        self.twist.rows()
    }
}

/// A central extension carried with its inclusion `i`, projection `π` and
/// section `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    base: HomLts,
    base_action: Option<GroupAction>,
    fiber: Fiber,
    total: HomLts,
    incl: Matrix,
    proj: Matrix,
    section: Matrix,
    action_total: Option<GroupAction>,
}

impl CentralExtension {
    /// Checks shapes only; see [`verify_central_extension`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        base: HomLts,
        base_action: Option<GroupAction>,
        fiber: Fiber,
        total: HomLts,
        incl: Matrix,
        proj: Matrix,
        section: Matrix,
        action_total: Option<GroupAction>,
    ) -> Result<Self> {
        let (n, m, tn) = (base.dim(), fiber.dim(), total.dim());
        if incl.rows() != tn || incl.cols() != m {
            return Err(Error::contract("inclusion must be dim(T_c) x dim(V)"));
        }
        if proj.rows() != n || proj.cols() != tn {
            return Err(Error::contract("projection must be dim(T) x dim(T_c)"));
        }
        if section.rows() != tn || section.cols() != n {
            return Err(Error::contract("section must be dim(T_c) x dim(T)"));
        }
        if base_action.is_some() != fiber.action.is_some()
            || base_action.is_some() != action_total.is_some()
        {
            return Err(Error::contract(
                "group actions must be given on T, V and T_c together",
            ));
        }
        if let Some(a) = &action_total {
            if a.space_dim() != tn {
                return Err(Error::contract("total action dimension mismatch"));
            }
        }
        if let Some(a) = &base_action {
            if a.space_dim() != n {
                return Err(Error::contract("base action dimension mismatch"));
            }
        }
        Ok(Self {
            base,
            base_action,
            fiber,
            total,
            incl,
            proj,
            section,
            action_total,
        })
    }

    pub fn base(&self) -> &HomLts {
        &self.base
    }

    pub fn base_action(&self) -> Option<&GroupAction> {
        self.base_action.as_ref()
    }

    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    pub fn total(&self) -> &HomLts {
        &self.total
    }

    pub fn incl(&self) -> &Matrix {
        &self.incl
    }

    pub fn proj(&self) -> &Matrix {
        &self.proj
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn action_total(&self) -> Option<&GroupAction> {
        self.action_total.as_ref()
    }

    /// The same extension with another section.
    pub fn with_section(&self, section: Matrix) -> Result<Self> {
        Self::new(
            self.base.clone(),
            self.base_action.clone(),
            self.fiber.clone(),
            self.total.clone(),
            self.incl.clone(),
            self.proj.clone(),
            section,
            self.action_total.clone(),
        )
    }
}

/// The complex `C*(T; V)` with `θ = 0`, equivariant when actions are given.
pub fn extension_context(
    base: &HomLts,
    base_action: Option<&GroupAction>,
    fiber: &Fiber,
) -> Result<ComplexContext> {
    let rep = Representation::trivial(base.dim(), fiber.twist.clone())?;
    let actions = match (base_action, &fiber.action) {
        (Some(a), Some(b)) => Some((a.clone(), b.clone())),
        (None, None) => None,
        _ => {
            return Err(Error::contract(
                "group actions must be given on both T and V or on neither",
            ))
        }
    };
    let equivariant = actions.is_some();
    ComplexContext::new(base.clone(), rep, actions, equivariant)
}

fn block_columns(n: usize, m: usize, top: bool) -> Matrix {
    // [I_n; 0] when top, else [0; I_m]
    let cols = if top { n } else { m };
    let mut out = Matrix::zeros(n + m, cols);
    for c in 0..cols {
        let r = if top { c } else { n + c };
        out.set(r, c, Scalar::from_integer(1.into()));
    }
    out
}

/// `T ⊕ V` with bracket `([xyz], h(x,y,z))`, twist `α ⊕ A`, diagonal action,
/// `i(a) = (0, a)`, `π(x, a) = x`, `s(x) = (x, 0)`.
pub fn extension_from_cocycle(
    base: &HomLts,
    base_action: Option<&GroupAction>,
    fiber: &Fiber,
    h: &Cochain,
) -> Result<CentralExtension> {
    let ctx = extension_context(base, base_action, fiber)?;
    let (n, m) = (base.dim(), fiber.dim());
    if h.degree() != 3 {
        return Err(Error::contract("extension cocycle must have degree 3"));
    }
    let report = is_cochain(&ctx, h)?;
    if !report.passed() {
        return Err(Error::contract(format!(
            "extension cocycle is not an admissible cochain: fails {:?}",
            report.axioms()
        )));
    }
    let dh = coboundary(&ctx, h)?;
    if let Some(idx) = MultiIndex::new(n, 5).find(|idx| dh.value(idx).iter().any(|x| !x.is_zero())) {
        let value = dh.value(&idx).iter().map(fmt_scalar).collect::<Vec<_>>().join(", ");
        return Err(Error::NotCocycle {
            indices: idx,
            value: format!("({value})"),
        });
    }

    let tn = n + m;
    let mut total = HomLts::zero(base.alpha().direct_sum(&fiber.twist))?;
    for idx in MultiIndex::new(n, 3) {
        let mut value = base.basis_bracket(idx[0], idx[1], idx[2]).to_vec();
        value.extend_from_slice(h.value(&idx));
        total.set_basis_bracket(idx[0], idx[1], idx[2], value)?;
    }
    let action_total = match (base_action, &fiber.action) {
        (Some(at), Some(av)) => Some(GroupAction::new(
            at.group().clone(),
            at.matrices()
                .iter()
                .zip(av.matrices())
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        )?),
        _ => None,
    };
    let mut proj = Matrix::zeros(n, tn);
    for i in 0..n {
        proj.set(i, i, Scalar::from_integer(1.into()));
    }
    let ext = CentralExtension::new(
        base.clone(),
        base_action.cloned(),
        fiber.clone(),
        total,
        block_columns(n, m, false),
        proj,
        block_columns(n, m, true),
        action_total,
    )?;
    let check = verify_central_extension(&ext);
    if !check.passed() {
        return Err(Error::internal(format!(
            "extension built from a cocycle fails {:?}",
            check.axioms()
        )));
    }
    Ok(ext)
}

/// `h` with `i h(x,y,z) = [s x, s y, s z]_c − s[xyz]`.
pub fn cocycle_from_extension(ext: &CentralExtension) -> Result<Cochain> {
    let (n, m) = (ext.base.dim(), ext.fiber.dim());
    let s_cols: Vec<Vector> = (0..n).map(|i| ext.section.column(i)).collect();
    let mut h = Cochain::zero(3, n, m);
    for idx in MultiIndex::new(n, 3) {
        let lifted = ext
            .total
            .bracket(&s_cols[idx[0]], &s_cols[idx[1]], &s_cols[idx[2]]);
        let down = ext.section.mul_vec(ext.base.basis_bracket(idx[0], idx[1], idx[2]));
        let defect = crate::exactlin::sub_vectors(&lifted, &down);
        let Some(value) = solve_linear(&ext.incl, &defect)? else {
            return Err(Error::Exactness(format!(
                "defect at basis triple {:?} is not in the image of the inclusion",
                idx.iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        };
        h.set_value(&idx, value);
    }
    let ctx = extension_context(&ext.base, ext.base_action.as_ref(), &ext.fiber)?;
    if !is_cochain(&ctx, &h)?.passed() || !coboundary(&ctx, &h)?.is_zero() {
        return Err(Error::internal(
            "extracted cocycle fails the cochain or cocycle condition",
        ));
    }
    Ok(h)
}

fn check_matrix_eq(report: &mut VerificationReport, axiom: &str, at: &[usize], lhs: &Matrix, rhs: &Matrix) {
    if lhs != rhs {
        report.push(axiom, at.to_vec(), lhs.entries().to_vec(), rhs.entries().to_vec());
    }
}

/// Checks exactness, the morphism identities for `i` and `π`, `π s = id`,
/// centrality of `i(V)`, the twist relations `α_c i = i A`, `α π = π α_c`,
/// `α_c s = s α`, and G-equivariance of `i`, `π`, `s`.
pub fn verify_central_extension(ext: &CentralExtension) -> VerificationReport {
    let mut report = VerificationReport::new();
    let (n, m, tn) = (ext.base.dim(), ext.fiber.dim(), ext.total.dim());
    report.merge_scoped("base", verify_hom_lts(&ext.base));
    report.merge_scoped("total", verify_hom_lts(&ext.total));

    let (i, p, s) = (&ext.incl, &ext.proj, &ext.section);
    if i.rank() != m {
        report.push("incl-injective", vec![], vec![Scalar::from_integer((i.rank() as i64).into())], vec![Scalar::from_integer((m as i64).into())]);
    }
    if p.rank() != n {
        report.push("proj-surjective", vec![], vec![Scalar::from_integer((p.rank() as i64).into())], vec![Scalar::from_integer((n as i64).into())]);
    }
    if tn != n + m {
        report.push("exactness", vec![], vec![Scalar::from_integer((tn as i64).into())], vec![Scalar::from_integer(((n + m) as i64).into())]);
    }
    check_matrix_eq(&mut report, "exactness", &[], &(p * i), &Matrix::zeros(n, m));
    check_matrix_eq(&mut report, "section", &[], &(p * s), &Matrix::identity(n));

    let i_cols: Vec<Vector> = (0..m).map(|c| i.column(c)).collect();
    let zero_tn = vec![Scalar::zero(); tn];
    for idx in MultiIndex::new(m, 3) {
        let v = ext.total.bracket(&i_cols[idx[0]], &i_cols[idx[1]], &i_cols[idx[2]]);
        report.check("incl-morphism", &idx, v, zero_tn.clone());
    }
    let p_cols: Vec<Vector> = (0..tn).map(|c| p.column(c)).collect();
    for idx in MultiIndex::new(tn, 3) {
        let lhs = p.mul_vec(ext.total.basis_bracket(idx[0], idx[1], idx[2]));
        let rhs = ext.base.bracket(&p_cols[idx[0]], &p_cols[idx[1]], &p_cols[idx[2]]);
        report.check("proj-morphism", &idx, lhs, rhs);
    }
    for (v, iv) in i_cols.iter().enumerate() {
        for a in 0..tn {
            for b in 0..tn {
                let unit_a = crate::exactlin::unit_vector(tn, a);
                let unit_b = crate::exactlin::unit_vector(tn, b);
                let val = ext.total.bracket(iv, &unit_a, &unit_b);
                report.check("centrality", &[v, a, b], val, zero_tn.clone());
            }
        }
    }

    let (alpha, alpha_c, a) = (ext.base.alpha(), ext.total.alpha(), &ext.fiber.twist);
    check_matrix_eq(&mut report, "alpha-incl", &[], &(alpha_c * i), &(i * a));
    check_matrix_eq(&mut report, "alpha-proj", &[], &(alpha * p), &(p * alpha_c));
    check_matrix_eq(&mut report, "alpha-section", &[], &(alpha_c * s), &(s * alpha));

    if let (Some(at), Some(av), Some(ac)) = (&ext.base_action, &ext.fiber.action, &ext.action_total) {
        if at.group() != av.group() || at.group() != ac.group() {
            report.push("same-group", vec![], vec![], vec![]);
            return report;
        }
        match verify_group_action(at, &ext.base) {
            Ok(r) => report.merge_scoped("base-action", r),
            Err(_) => report.push("base-action", vec![], vec![], vec![]),
        }
        match verify_group_action(ac, &ext.total) {
            Ok(r) => report.merge_scoped("total-action", r),
            Err(_) => report.push("total-action", vec![], vec![], vec![]),
        }
        report.merge_scoped("fiber-action", av.verify_homomorphism());
        for g in 0..at.group().order() {
            let (rt, rv, rc) = (at.matrix(g), av.matrix(g), ac.matrix(g));
            check_matrix_eq(&mut report, "g-incl", &[g], &(rc * i), &(i * rv));
            check_matrix_eq(&mut report, "g-proj", &[g], &(rt * p), &(p * rc));
            check_matrix_eq(&mut report, "g-section", &[g], &(rc * s), &(s * rt));
            check_matrix_eq(&mut report, "g-fiber-twist", &[g], &(rv * a), &(a * rv));
        }
    }
    report
}

/// Checks that `φ: T_c → T_c'` is an isomorphism of G-Hom-Lts with
/// `φ i = i'` and `π = π' φ`.
pub fn verify_equivalence_map(
    phi: &Matrix,
    e1: &CentralExtension,
    e2: &CentralExtension,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let tn = e1.total.dim();
    if phi.rows() != e2.total.dim() || phi.cols() != tn {
        report.push("shape", vec![], vec![], vec![]);
        return report;
    }
    if phi.inverse().is_none() {
        report.push("invertible", vec![], phi.entries().to_vec(), vec![]);
    }
    check_matrix_eq(&mut report, "commutes-incl", &[], &(phi * &e1.incl), &e2.incl);
    check_matrix_eq(&mut report, "commutes-proj", &[], &e1.proj, &(&e2.proj * phi));
    check_matrix_eq(&mut report, "twist", &[], &(e2.total.alpha() * phi), &(phi * e1.total.alpha()));
    let cols: Vec<Vector> = (0..tn).map(|c| phi.column(c)).collect();
    for idx in MultiIndex::new(tn, 3) {
        let lhs = phi.mul_vec(e1.total.basis_bracket(idx[0], idx[1], idx[2]));
        let rhs = e2.total.bracket(&cols[idx[0]], &cols[idx[1]], &cols[idx[2]]);
        report.check("bracket", &idx, lhs, rhs);
    }
    if let (Some(a1), Some(a2)) = (&e1.action_total, &e2.action_total) {
        for g in 0..a1.group().order() {
            check_matrix_eq(&mut report, "equivariance", &[g], &(a2.matrix(g) * phi), &(phi * a1.matrix(g)));
        }
    }
    report
}

/// Decides equivalence through the cocycles: if `h₂ − h₁ = δ¹f` then
/// `φ = s₂π₁ + i₂(R₁ − fπ₁)` with `i₁R₁ = 1 − s₁π₁` is returned, which on
/// the standard splitting reads `(x, a) ↦ (x, a − f(x))`. The map is
/// re-verified before it is returned.
pub fn extensions_equivalent(
    e1: &CentralExtension,
    e2: &CentralExtension,
) -> Result<Option<Matrix>> {
    if e1.base != e2.base || e1.base_action != e2.base_action || e1.fiber != e2.fiber {
        return Err(Error::contract(
            "extensions must share the base and the fiber data",
        ));
    }
    let h1 = cocycle_from_extension(e1)?;
    let h2 = cocycle_from_extension(e2)?;
    let ctx = extension_context(&e1.base, e1.base_action.as_ref(), &e1.fiber)?;
    let Some(f) = coboundary_membership(&ctx, &h2.sub(&h1)?)? else {
        return Ok(None);
    };
    let (n, m, tn) = (e1.base.dim(), e1.fiber.dim(), e1.total.dim());
    // R₁ column by column: i₁ R₁ e_c = e_c − s₁ π₁ e_c
    let split = &Matrix::identity(tn) - &(&e1.section * &e1.proj);
    let mut r_cols = Vec::with_capacity(tn);
    for c in 0..tn {
        let col = solve_linear(&e1.incl, &split.column(c))?
            .ok_or_else(|| Error::Exactness("1 − sπ does not factor through i".into()))?;
        r_cols.push(col);
    }
    let r1 = Matrix::from_columns(m, &r_cols)?;
    let f_cols: Vec<Vector> = (0..n).map(|i| f.value(&[i]).to_vec()).collect();
    let f_mat = Matrix::from_columns(m, &f_cols)?;
    let phi = &(&e2.section * &e1.proj) + &(&e2.incl * &(&r1 - &(&f_mat * &e1.proj)));
    let check = verify_equivalence_map(&phi, e1, e2);
    if !check.passed() {
        return Err(Error::internal(format!(
            "equivalence map fails {:?}",
            check.axioms()
        )));
    }
    Ok(Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cochain_basis, coboundary_images};
    use crate::exactlin::{int, SparseVec};
    use crate::structures::{section5, semidirect_sum, FiniteGroup};

    fn s5_fiber() -> (HomLts, Fiber) {
        (section5().lts, Fiber::new(Matrix::identity(1), None).unwrap())
    }

    fn cocycles(ctx: &ComplexContext) -> Vec<Cochain> {
        let basis = cochain_basis(ctx, 3).unwrap();
        let images = coboundary_images(ctx, 3).unwrap();
        crate::exactlin::sparse::column_kernel(&images)
            .iter()
            .map(|k| basis.combine(&k.to_dense(basis.dim())))
            .collect()
    }

    #[test]
    fn center_of_zero_bracket_is_everything() {
        let t = HomLts::zero(Matrix::identity(3)).unwrap();
        assert_eq!(center(&t).cols(), 3);
    }

    #[test]
    fn center_of_section5_is_trivial() {
        assert_eq!(center(&section5().lts).cols(), 0);
    }

    #[test]
    fn semidirect_with_trivial_theta_has_fiber_in_center() {
        let t = section5().lts;
        let rep = Representation::trivial(2, Matrix::identity(1)).unwrap();
        let e = semidirect_sum(&t, &rep).unwrap();
        let z = center(&e);
        let target = SparseVec::from_pairs(vec![(2, int(1))]);
        let cols: Vec<SparseVec> = z.columns().iter().map(|c| SparseVec::from_dense(c)).collect();
        assert!(crate::exactlin::sparse::solve_in_span(&cols, &target).is_some());
    }

    #[test]
    fn zero_cocycle_gives_direct_sum() {
        let (t, fiber) = s5_fiber();
        let ext = extension_from_cocycle(&t, None, &fiber, &Cochain::zero(3, 2, 1)).unwrap();
        for idx in MultiIndex::new(2, 3) {
            assert!(ext.total().basis_bracket(idx[0], idx[1], idx[2])[2].is_zero());
        }
        assert!(cocycle_from_extension(&ext).unwrap().is_zero());
    }

    #[test]
    fn round_trip_over_cocycle_basis() {
        let (t, fiber) = s5_fiber();
        let ctx = extension_context(&t, None, &fiber).unwrap();
        for h in cocycles(&ctx) {
            let ext = extension_from_cocycle(&t, None, &fiber, &h).unwrap();
            assert!(verify_central_extension(&ext).passed());
            assert_eq!(cocycle_from_extension(&ext).unwrap(), h);
        }
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let t = crate::structures::make_example(&crate::structures::ExampleParams::MatrixPq { p: 1, q: 3 })
            .unwrap()
            .lts;
        let fiber = Fiber::new(Matrix::identity(1), None).unwrap();
        let ctx = extension_context(&t, None, &fiber).unwrap();
        let basis = cochain_basis(&ctx, 3).unwrap();
        let images = coboundary_images(&ctx, 3).unwrap();
        let j = images.iter().position(|v| !v.is_zero()).expect("some non-cocycle");
        let err = extension_from_cocycle(&t, None, &fiber, &basis.column(j)).unwrap_err();
        assert!(matches!(err, Error::NotCocycle { .. }));
    }

    #[test]
    fn perturbed_total_is_caught() {
        let (t, fiber) = s5_fiber();
        let ext = extension_from_cocycle(&t, None, &fiber, &Cochain::zero(3, 2, 1)).unwrap();
        let mut total = ext.total().clone();
        total.set_basis_bracket(2, 0, 1, vec![int(0), int(0), int(1)]).unwrap();
        let bad = CentralExtension::new(
            t,
            None,
            fiber,
            total,
            ext.incl().clone(),
            ext.proj().clone(),
            ext.section().clone(),
            None,
        )
        .unwrap();
        let r = verify_central_extension(&bad);
        assert!(r.has("centrality"));
    }

    #[test]
    fn shifted_section_gives_cohomologous_cocycle() {
        let (t, fiber) = s5_fiber();
        let ctx = extension_context(&t, None, &fiber).unwrap();
        let f_basis = cochain_basis(&ctx, 1).unwrap();
        for h in cocycles(&ctx) {
            let ext = extension_from_cocycle(&t, None, &fiber, &h).unwrap();
            for f in f_basis.columns() {
                let f_cols: Vec<Vector> = (0..2).map(|i| f.value(&[i]).to_vec()).collect();
                let f_mat = Matrix::from_columns(1, &f_cols).unwrap();
                let s2 = ext.section() + &(ext.incl() * &f_mat);
                let shifted = ext.with_section(s2).unwrap();
                let h2 = cocycle_from_extension(&shifted).unwrap();
                let df = coboundary(&ctx, &f).unwrap();
                assert_eq!(h2.sub(&h).unwrap(), df);
            }
        }
    }

    #[test]
    fn self_equivalence_is_identity() {
        let (t, fiber) = s5_fiber();
        let ctx = extension_context(&t, None, &fiber).unwrap();
        for h in cocycles(&ctx) {
            let ext = extension_from_cocycle(&t, None, &fiber, &h).unwrap();
            let phi = extensions_equivalent(&ext, &ext).unwrap().unwrap();
            assert!(phi.is_identity());
        }
    }

    #[test]
    fn cohomologous_cocycles_give_equivalent_extensions() {
        let ex = section5();
        let act = ex.action.clone().unwrap();
        let fiber = Fiber::new(
            Matrix::identity(1),
            Some(GroupAction::trivial(FiniteGroup::cyclic(2), 1)),
        )
        .unwrap();
        let ctx = extension_context(&ex.lts, Some(&act), &fiber).unwrap();
        let f_basis = cochain_basis(&ctx, 1).unwrap();
        for h in cocycles(&ctx) {
            let e1 = extension_from_cocycle(&ex.lts, Some(&act), &fiber, &h).unwrap();
            for f in f_basis.columns() {
                let h2 = h.add(&coboundary(&ctx, &f).unwrap()).unwrap();
                let e2 = extension_from_cocycle(&ex.lts, Some(&act), &fiber, &h2).unwrap();
                let phi = extensions_equivalent(&e1, &e2).unwrap().expect("equivalent");
                // (x, a) ↦ (x, a − f(x))
                for x in 0..2 {
                    assert_eq!(phi.get(2, x), &-f.value(&[x])[0].clone());
                }
            }
        }
    }

    #[test]
    fn mismatched_fibers_rejected() {
        let (t, fiber) = s5_fiber();
        let e1 = extension_from_cocycle(&t, None, &fiber, &Cochain::zero(3, 2, 1)).unwrap();
        let other = Fiber::new(Matrix::identity(2), None).unwrap();
        let e2 = extension_from_cocycle(&t, None, &other, &Cochain::zero(3, 2, 2)).unwrap();
        assert!(matches!(extensions_equivalent(&e1, &e2), Err(Error::Contract(_))));
    }
}
