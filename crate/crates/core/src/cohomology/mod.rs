//! The (equivariant) cochain complex `C^{2n+1}(T; V)`: cochain spaces as
//! kernels of sparse constraint systems, the coboundary as an explicit
//! sparse operator, cohomology dimensions and coboundary witnesses.

mod basis;
mod coboundary;
mod cochain;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactlin::{fmt_scalar, Matrix};
use crate::structures::{
    adjoint_representation, verify_group_action, verify_hom_lts, verify_representation, GroupAction,
    HomLts, Representation,
};
use crate::tensor::checked_pow;

pub use basis::{cochain_basis, CochainBasis};
pub use coboundary::{
    cohomology_basis, coboundary, coboundary_images, coboundary_matrix, coboundary_membership, coboundary_operator,
    cohomology_dims, CoboundaryOperator, CohomologyBasis, CohomologyDims,
};
pub use cochain::{is_cochain, reynolds_project, Cochain};

/// Default cap on raw tensor entries `dim_T^degree · dim_V`.
pub const DEFAULT_MAX_TENSOR_ENTRIES: usize = 200_000;

#[derive(Default, Debug)]
struct Cache {
    bases: HashMap<usize, Arc<CochainBasis>>,
    operators: HashMap<usize, Arc<CoboundaryOperator>>,
}

/// A verified pair `(T; V)` with an optional G-action on both spaces.
///
/// Construction verifies the Hom-Lts, the representation and (when given)
/// the actions and the G-module identity. Bases and coboundary operators
/// are cached per degree; clones share the cache.
#[derive(Clone, Debug)]
pub struct ComplexContext {
    t: HomLts,
    rep: Representation,
    actions: Option<(GroupAction, GroupAction)>,
    equivariant: bool,
    max_tensor_entries: usize,
    fingerprint: String,
    cache: Arc<Mutex<Cache>>,
}

impl ComplexContext {
    pub fn new(
        t: HomLts,
        rep: Representation,
        actions: Option<(GroupAction, GroupAction)>,
        equivariant: bool,
    ) -> Result<Self> {
        let report = verify_hom_lts(&t);
        if !report.passed() {
            return Err(Error::contract(format!(
                "Hom-Lts fails {:?}",
                report.axioms()
            )));
        }
        if equivariant && actions.is_none() {
            return Err(Error::contract("equivariant complex needs group actions"));
        }
        let (act_t, act_v) = match &actions {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        if let Some(a) = act_t {
            let r = verify_group_action(a, &t)?;
            if !r.passed() {
                return Err(Error::contract(format!(
                    "group action on T fails {:?}",
                    r.axioms()
                )));
            }
        }
        let r = verify_representation(&t, &rep, act_t, act_v)?;
        if !r.passed() {
            return Err(Error::contract(format!(
                "representation fails {:?}",
                r.axioms()
            )));
        }
        Ok(Self::assemble(
            t,
            rep,
            actions,
            equivariant,
            DEFAULT_MAX_TENSOR_ENTRIES,
        ))
    }

    /// The adjoint complex `C*(T; T)` with `A = α`, the same action on both
    /// copies of `T`.
    pub fn adjoint(t: HomLts, action: Option<GroupAction>, equivariant: bool) -> Result<Self> {
        let rep = adjoint_representation(&t)?;
        let actions = action.map(|a| (a.clone(), a));
        Self::new(t, rep, actions, equivariant)
    }

    fn assemble(
        t: HomLts,
        rep: Representation,
        actions: Option<(GroupAction, GroupAction)>,
        equivariant: bool,
        max_tensor_entries: usize,
    ) -> Self {
        let fingerprint = fingerprint(&t, &rep, actions.as_ref(), equivariant);
        Self {
            t,
            rep,
            actions,
            equivariant,
            max_tensor_entries,
            fingerprint,
            cache: Arc::default(),
        }
    }

    pub fn with_max_tensor_entries(self, cap: usize) -> Self {
        Self::assemble(self.t, self.rep, self.actions, self.equivariant, cap)
    }

    /// The same pair with the equivariance flag changed.
    pub fn with_equivariant(&self, equivariant: bool) -> Result<Self> {
        if equivariant && self.actions.is_none() {
            return Err(Error::contract("equivariant complex needs group actions"));
        }
        Ok(Self::assemble(
            self.t.clone(),
            self.rep.clone(),
            self.actions.clone(),
            equivariant,
            self.max_tensor_entries,
        ))
    }

    pub fn t(&self) -> &HomLts {
        &self.t
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn actions(&self) -> Option<(&GroupAction, &GroupAction)> {
        self.actions.as_ref().map(|(a, b)| (a, b))
    }

    pub fn equivariant(&self) -> bool {
        self.equivariant
    }

    pub fn max_tensor_entries(&self) -> usize {
        self.max_tensor_entries
    }

    pub fn dim_t(&self) -> usize {
        self.t.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rep.target_dim()
    }

    /// SHA-256 over the context data (not including the cap).
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Raw tensor length `dim_T^degree · dim_V`, or a size error.
    pub fn raw_len(&self, degree: usize) -> Result<usize> {
        let (n, m) = (self.dim_t(), self.dim_v());
        let entries = checked_pow(n, degree).and_then(|x| x.checked_mul(m));
        match entries {
            Some(e) if e <= self.max_tensor_entries => Ok(e),
            _ => Err(Error::SizeCap {
                degree,
                dim_t: n,
                dim_v: m,
                entries: (n as u128).saturating_pow(degree as u32).saturating_mul(m as u128),
                cap: self.max_tensor_entries,
            }),
        }
    }

    /// Acting matrices `(ρ_T(g), ρ_V(g))` for the non-identity elements, if
    /// the complex is equivariant.
    pub(crate) fn invariance_pairs(&self) -> Vec<(usize, &Matrix, &Matrix)> {
        match (&self.actions, self.equivariant) {
            (Some((at, av)), true) => at
                .non_identity()
                .map(|g| (g, at.matrix(g), av.matrix(g)))
                .collect(),
            _ => Vec::new(),
        }
    }

    fn cached_basis(&self, degree: usize) -> Option<Arc<CochainBasis>> {
        self.cache.lock().ok()?.bases.get(&degree).cloned()
    }

    fn store_basis(&self, degree: usize, basis: Arc<CochainBasis>) {
        if let Ok(mut c) = self.cache.lock() {
            c.bases.insert(degree, basis);
        }
    }

    fn cached_operator(&self, source_degree: usize) -> Option<Arc<CoboundaryOperator>> {
        self.cache.lock().ok()?.operators.get(&source_degree).cloned()
    }

    fn store_operator(&self, source_degree: usize, op: Arc<CoboundaryOperator>) {
        if let Ok(mut c) = self.cache.lock() {
            c.operators.insert(source_degree, op);
        }
    }
}

fn push_matrix(out: &mut String, label: &str, m: &Matrix) {
    out.push_str(label);
    out.push_str(&format!("{}x{}:", m.rows(), m.cols()));
    for x in m.entries() {
        out.push_str(&fmt_scalar(x));
        out.push(',');
    }
    out.push('\n');
}

fn fingerprint(
    t: &HomLts,
    rep: &Representation,
    actions: Option<&(GroupAction, GroupAction)>,
    equivariant: bool,
) -> String {
    let mut s = format!("dim_t={} dim_v={}\nbracket:", t.dim(), rep.target_dim());
    for x in t.structure_constants() {
        s.push_str(&fmt_scalar(x));
        s.push(',');
    }
    s.push('\n');
    push_matrix(&mut s, "alpha", t.alpha());
    s.push_str("theta:");
    for x in rep.theta_tensor() {
        s.push_str(&fmt_scalar(x));
        s.push(',');
    }
    s.push('\n');
    push_matrix(&mut s, "A", rep.a_twist());
    if let Some((at, av)) = actions {
        s.push_str(&format!("group {:?} e={}\n", at.group().cayley(), at.group().identity()));
        for (a, b) in at.matrices().iter().zip(av.matrices()) {
            push_matrix(&mut s, "gT", a);
            push_matrix(&mut s, "gV", b);
        }
    }
    s.push_str(&format!("equivariant={equivariant}\n"));
    hex::encode(Sha256::digest(s.as_bytes()))
}
