//! Command dispatch and report assembly.

use homlts_core::cohomology::{
    coboundary, coboundary_membership, cohomology_basis, cohomology_dims, is_cochain, ComplexContext,
    DEFAULT_MAX_TENSOR_ENTRIES,
};
use homlts_core::deformations::{
    check_isomorphism, deformations_equivalent, extend_to_order, infinitesimal, is_trivial,
    verify_deformation, Deformation,
};
use homlts_core::exactlin::{fmt_scalar, Scalar};
use homlts_core::extensions::{
    cocycle_from_extension, extension_context, extension_from_cocycle, extensions_equivalent,
    verify_central_extension, verify_equivalence_map,
};
use homlts_core::structures::{
    adjoint_representation, verify_group_action, verify_hom_lts, verify_representation, HomLts,
};
use homlts_core::Error as CoreError;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::instance::{Instance, RepSpec, Space};
use crate::report::{error_entry, verification, Obj, Status};
use crate::syntax::{
    cochain_section, deformation_section, extension_map_section, extension_section,
    isomorphism_section,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Cohomology,
    CentralExtension,
    ExtractCocycle,
    ExtendDeformation,
    Equivalence,
    ReportAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Cohomology => "cohomology",
            Command::CentralExtension => "central-extension",
            Command::ExtractCocycle => "extract-cocycle",
            Command::ExtendDeformation => "extend-deformation",
            Command::Equivalence => "equivalence",
            Command::ReportAll => "report-all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub degree: Option<usize>,
    pub equivariant: bool,
    pub to: Option<usize>,
    pub max_tensor_entries: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            degree: None,
            equivariant: false,
            to: None,
            max_tensor_entries: DEFAULT_MAX_TENSOR_ENTRIES,
        }
    }
}

pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

type Section = CliResult<(Value, Status)>;

fn scalars(v: &[Scalar]) -> Value {
    let items: Vec<String> = v.iter().map(fmt_scalar).collect();
    json!(format!("[{}]", items.join(", ")))
}

fn equivariant_default(inst: &Instance) -> bool {
    inst.action.is_some()
}

/// The complex for cochains valued in `space`.
pub fn context(
    inst: &Instance,
    space: Space,
    equivariant: bool,
    cap: usize,
) -> homlts_core::Result<ComplexContext> {
    let ctx = match (space, &inst.representation) {
        (Space::Adjoint, _) | (Space::Representation, Some(RepSpec::Adjoint)) => {
            ComplexContext::adjoint(inst.lts.clone(), inst.action.clone(), equivariant)?
        }
        (Space::Representation, Some(RepSpec::Explicit { rep, action })) => {
            let actions = match (&inst.action, action) {
                (Some(a), Some(b)) => Some((a.clone(), b.clone())),
                _ => None,
            };
            ComplexContext::new(inst.lts.clone(), rep.clone(), actions, equivariant)?
        }
        (Space::Representation, None) => {
            return Err(CoreError::contract("no [representation] section"))
        }
        (Space::Fiber, _) => {
            let fiber = inst
                .fiber
                .as_ref()
                .ok_or_else(|| CoreError::contract("no [fiber] section"))?;
            extension_context(&inst.lts, inst.action.as_ref(), fiber)?.with_equivariant(equivariant)?
        }
    };
    Ok(ctx.with_max_tensor_entries(cap))
}

/// Turns a core error into a report entry, except for size caps which
/// abort single commands.
fn entry_or_cap(err: CoreError) -> Section {
    match err {
        CoreError::SizeCap { .. } => Err(CliError::Core(err)),
        other => Ok(error_entry(&other)),
    }
}

fn named(name: &str, (value, status): (Value, Status)) -> (Value, Status) {
    let mut obj = Obj::new();
    obj.insert("name".into(), json!(name));
    if let Value::Object(m) = value {
        obj.extend(m);
    }
    (Value::Object(obj), status)
}

fn verify(inst: &Instance, opts: &Options) -> Section {
    let mut checks = Vec::new();
    let mut status = Status::default();
    let mut push = |entry: (Value, Status)| {
        status.absorb(entry.1);
        checks.push(entry.0);
    };
    push(named("hom-lts", verification(&verify_hom_lts(&inst.lts))));
    if let Some(a) = &inst.action {
        push(named("group", verification(&a.group().verify())));
        let r = verify_group_action(a, &inst.lts).map(|r| verification(&r));
        push(named("group-action", r.or_else(entry_or_cap)?));
    }
    if let Some(spec) = &inst.representation {
        let r = match spec {
            RepSpec::Adjoint => adjoint_representation(&inst.lts).and_then(|rep| {
                verify_representation(&inst.lts, &rep, inst.action.as_ref(), inst.action.as_ref())
            }),
            RepSpec::Explicit { rep, action } => {
                verify_representation(&inst.lts, rep, inst.action.as_ref(), action.as_ref())
            }
        };
        push(named("representation", r.map(|r| verification(&r)).or_else(entry_or_cap)?));
    }
    if let Some(fiber) = &inst.fiber {
        if let Some(a) = &fiber.action {
            let r = HomLts::zero(fiber.twist.clone()).and_then(|z| verify_group_action(a, &z));
            push(named("fiber-action", r.map(|r| verification(&r)).or_else(entry_or_cap)?));
        }
    }
    for c in &inst.cochains {
        let r = context(inst, c.space, equivariant_default(inst), opts.max_tensor_entries)
            .and_then(|ctx| is_cochain(&ctx, &c.cochain));
        let label = format!("cochain {}", c.name);
        push(named(&label, r.map(|r| verification(&r)).or_else(entry_or_cap)?));
    }
    for d in &inst.deformations {
        let r = verify_deformation(&d.deformation, d.deformation.order());
        let label = format!("deformation {}", d.name);
        push(named(&label, r.map(|r| verification(&r)).or_else(entry_or_cap)?));
    }
    for iso in &inst.isomorphisms {
        let from = inst.deformation(&iso.from).expect("parser checked");
        let to = inst.deformation(&iso.to).expect("parser checked");
        let order = iso.iso.order().min(from.order()).min(to.order());
        let r = check_isomorphism(&iso.iso, from, to, order);
        let label = format!("isomorphism {}", iso.name);
        push(named(&label, r.map(|r| verification(&r)).or_else(entry_or_cap)?));
    }
    for e in &inst.extensions {
        let label = format!("extension {}", e.name);
        push(named(&label, verification(&verify_central_extension(&e.extension))));
    }
    for m in &inst.extension_maps {
        let from = inst.extension(&m.from).expect("parser checked");
        let to = inst.extension(&m.to).expect("parser checked");
        let label = format!("extension-map {}", m.name);
        push(named(&label, verification(&verify_equivalence_map(&m.map, from, to))));
    }
    Ok((json!({ "checks": checks }), status))
}

fn cohomology_table(
    inst: &Instance,
    space: Space,
    degree: usize,
    equivariant: bool,
    cap: usize,
) -> Section {
    let ctx = match context(inst, space, equivariant, cap) {
        Ok(c) => c,
        Err(e) => return entry_or_cap(e),
    };
    let dims = cohomology_dims(&ctx, degree)?;
    let basis = cohomology_basis(&ctx, degree)?;
    let mut obj = Obj::new();
    obj.insert("space".into(), json!(space.keyword()));
    obj.insert("degree".into(), json!(degree));
    obj.insert("equivariant".into(), json!(equivariant));
    obj.insert("complex_fingerprint".into(), json!(ctx.fingerprint()));
    obj.insert(
        "dims".into(),
        json!({
            "cochains": dims.cochains,
            "cocycles": dims.z,
            "coboundaries": dims.b,
            "cohomology": dims.h,
        }),
    );
    if degree == 1 {
        obj.insert("convention".into(), json!("H¹ = ker δ¹"));
    }
    if basis.dim() > 0 {
        let text: String = basis
            .representatives()
            .iter()
            .enumerate()
            .map(|(i, r)| cochain_section(&format!("h{degree}_{}", i + 1), space, r))
            .collect();
        obj.insert("representatives".into(), json!(text));
    }
    let mut status = Status::default();
    let mut named_rows = Vec::new();
    for c in inst
        .cochains
        .iter()
        .filter(|c| c.space == space && c.cochain.degree() == degree)
    {
        let mut row = Obj::new();
        row.insert("name".into(), json!(c.name));
        let check = is_cochain(&ctx, &c.cochain)?;
        if !check.passed() {
            row.insert("status".into(), json!("not a cochain of this complex"));
            status.absorb(Status::fail());
            named_rows.push(Value::Object(row));
            continue;
        }
        let cocycle = coboundary(&ctx, &c.cochain)?.is_zero();
        row.insert("cocycle".into(), json!(cocycle));
        if cocycle {
            let coords = basis
                .class_coordinates(&c.cochain)
                .ok_or_else(|| CoreError::internal("cocycle outside ker δ"))?;
            row.insert("class".into(), scalars(&coords));
            if degree >= 3 {
                if let Some(w) = coboundary_membership(&ctx, &c.cochain)? {
                    let name = format!("{}_primitive", c.name);
                    row.insert("primitive".into(), json!(cochain_section(&name, space, &w)));
                }
            }
        }
        named_rows.push(Value::Object(row));
    }
    if !named_rows.is_empty() {
        obj.insert("named".into(), Value::Array(named_rows));
    }
    Ok((Value::Object(obj), status))
}

fn cohomology(inst: &Instance, opts: &Options) -> Section {
    let degree = opts.degree.unwrap_or(3);
    if degree.is_multiple_of(2) {
        return Err(CliError::Usage(format!("--degree must be odd, got {degree}")));
    }
    if opts.equivariant && inst.action.is_none() {
        return Err(CliError::Usage("--equivariant needs a [group] section".into()));
    }
    cohomology_table(
        inst,
        inst.default_space(),
        degree,
        opts.equivariant,
        opts.max_tensor_entries,
    )
}

fn central_extension(inst: &Instance, opts: &Options) -> Section {
    let Some(fiber) = &inst.fiber else {
        return Err(CliError::semantic("fiber", "central-extension needs a [fiber] section"));
    };
    let eq = equivariant_default(inst);
    let (h3, mut status) = cohomology_table(inst, Space::Fiber, 3, eq, opts.max_tensor_entries)?;
    let ctx = match context(inst, Space::Fiber, eq, opts.max_tensor_entries) {
        Ok(c) => c,
        Err(e) => return entry_or_cap(e),
    };
    let mut candidates: Vec<(String, homlts_core::cohomology::Cochain)> = inst
        .cochains
        .iter()
        .filter(|c| c.space == Space::Fiber && c.cochain.degree() == 3)
        .map(|c| (c.name.clone(), c.cochain.clone()))
        .collect();
    if candidates.is_empty() {
        candidates = cohomology_basis(&ctx, 3)?
            .representatives()
            .iter()
            .enumerate()
            .map(|(i, r)| (format!("h3_{}", i + 1), r.clone()))
            .collect();
    }
    let mut built = Vec::new();
    let mut rows = Vec::new();
    for (name, h) in &candidates {
        let mut row = Obj::new();
        row.insert("cocycle".into(), json!(name));
        match extension_from_cocycle(&inst.lts, inst.action.as_ref(), fiber, h) {
            Ok(ext) => {
                let ext_name = format!("ext_{name}");
                row.insert("status".into(), json!("pass"));
                row.insert("extension".into(), json!(extension_section(&ext_name, &ext)));
                built.push((ext_name, ext));
            }
            Err(e @ CoreError::SizeCap { .. }) => return Err(e.into()),
            Err(e) => {
                row.insert("status".into(), json!("fail"));
                row.insert("error".into(), json!(e.to_string()));
                status.absorb(Status::fail());
            }
        }
        rows.push(Value::Object(row));
    }
    let mut pairs = Vec::new();
    for i in 0..built.len() {
        for j in i + 1..built.len() {
            let (a, ea) = &built[i];
            let (b, eb) = &built[j];
            let mut row = Obj::new();
            row.insert("from".into(), json!(a));
            row.insert("to".into(), json!(b));
            match extensions_equivalent(ea, eb)? {
                Some(phi) => {
                    row.insert("equivalent".into(), json!(true));
                    let name = format!("{a}_to_{b}");
                    row.insert("map".into(), json!(extension_map_section(&name, a, b, &phi)));
                }
                None => {
                    row.insert("equivalent".into(), json!(false));
                }
            }
            pairs.push(Value::Object(row));
        }
    }
    Ok((
        json!({ "fiber_cohomology": h3, "extensions": rows, "equivalence": pairs }),
        status,
    ))
}

fn extract_cocycle(inst: &Instance, opts: &Options) -> Section {
    if inst.extensions.is_empty() {
        return Err(CliError::semantic("extension", "extract-cocycle needs an [extension NAME] section"));
    }
    let eq = equivariant_default(inst);
    let ctx = match context(inst, Space::Fiber, eq, opts.max_tensor_entries) {
        Ok(c) => c,
        Err(e) => return entry_or_cap(e),
    };
    let h3 = cohomology_basis(&ctx, 3)?;
    let mut status = Status::default();
    let mut rows = Vec::new();
    for e in &inst.extensions {
        let (check, s) = verification(&verify_central_extension(&e.extension));
        let mut row = Obj::new();
        row.insert("name".into(), json!(e.name));
        row.insert("verification".into(), check);
        status.absorb(s);
        if s.failed {
            rows.push(Value::Object(row));
            continue;
        }
        match cocycle_from_extension(&e.extension) {
            Ok(h) => {
                if let Some(coords) = h3.class_coordinates(&h) {
                    row.insert("class".into(), scalars(&coords));
                }
                let name = format!("{}_cocycle", e.name);
                row.insert("cocycle".into(), json!(cochain_section(&name, Space::Fiber, &h)));
            }
            Err(err @ CoreError::SizeCap { .. }) => return Err(err.into()),
            Err(err) => {
                row.insert("error".into(), json!(err.to_string()));
                status.absorb(Status::fail());
            }
        }
        rows.push(Value::Object(row));
    }
    Ok((json!({ "extensions": rows }), status))
}

fn extend_one(name: &str, d: &Deformation, target: usize) -> Section {
    let mut row = Obj::new();
    row.insert("name".into(), json!(name));
    row.insert("from_order".into(), json!(d.order()));
    row.insert("to_order".into(), json!(target));
    let check = verify_deformation(d, d.order())?;
    if !check.passed() {
        let (v, s) = verification(&check);
        row.insert("verification".into(), v);
        return Ok((Value::Object(row), s));
    }
    match infinitesimal(d) {
        Ok(inf) => {
            row.insert(
                "infinitesimal".into(),
                json!({ "index": inf.index, "cocycle": inf.is_cocycle }),
            );
        }
        Err(CoreError::TrivialDeformation) => {
            row.insert("infinitesimal".into(), Value::Null);
        }
        Err(e) => return Err(e.into()),
    }
    let run = extend_to_order(d, target)?;
    let obstructions: Vec<Value> = run
        .obstructions
        .iter()
        .map(|ob| {
            json!({
                "order": ob.target_order,
                "in_cochain_space": ob.in_cochain_space,
                "cocycle": ob.is_cocycle,
                "solvable": ob.witness.is_some(),
            })
        })
        .collect();
    row.insert("obstructions".into(), Value::Array(obstructions));
    let mut status = Status::default();
    match run.first_blocked {
        Some(order) => {
            row.insert("first_blocked".into(), json!(order));
            if let Some(c) = &run.blocked_class {
                row.insert("blocked_class".into(), scalars(c));
            }
            status.absorb(Status::fail());
        }
        None => {
            row.insert("first_blocked".into(), Value::Null);
        }
    }
    let ext_name = format!("{name}_order{}", run.deformation.order());
    row.insert("deformation".into(), json!(deformation_section(&ext_name, &run.deformation)));
    Ok((Value::Object(row), status))
}

fn extend_deformation(inst: &Instance, opts: &Options) -> Section {
    if inst.deformations.is_empty() {
        return Err(CliError::semantic("deformation", "extend-deformation needs a [deformation NAME] section"));
    }
    let mut rows = Vec::new();
    let mut status = Status::default();
    for d in &inst.deformations {
        let target = opts.to.unwrap_or(d.deformation.order() + 1);
        if target < d.deformation.order() {
            return Err(CliError::Usage(format!(
                "--to {target} is below the order {} of deformation {}",
                d.deformation.order(),
                d.name
            )));
        }
        let (row, s) = extend_one(&d.name, &d.deformation, target)?;
        status.absorb(s);
        rows.push(row);
    }
    Ok((json!({ "deformations": rows }), status))
}

fn equivalence(inst: &Instance, opts: &Options) -> Section {
    if inst.deformations.len() < 2 {
        return Err(CliError::semantic("deformation", "equivalence needs at least two deformations"));
    }
    let mut status = Status::default();
    let first = &inst.deformations[0];
    let mut pairs = Vec::new();
    for other in &inst.deformations[1..] {
        let (d1, d2) = (&first.deformation, &other.deformation);
        let max = d1.order().min(d2.order());
        let order = opts.to.unwrap_or(max);
        if order > max {
            return Err(CliError::Usage(format!(
                "--to {order} exceeds the common order {max} of {} and {}",
                first.name, other.name
            )));
        }
        let mut row = Obj::new();
        row.insert("from".into(), json!(first.name));
        row.insert("to".into(), json!(other.name));
        row.insert("order".into(), json!(order));
        if order >= 1 {
            let ctx = d1.context()?;
            let diff = d1.term_cochain(1).sub(&d2.term_cochain(1))?;
            let cohomologous = coboundary_membership(&ctx, &diff)?.is_some();
            row.insert("first_order_cohomologous".into(), json!(cohomologous));
        }
        match deformations_equivalent(d1, d2, order)? {
            Some(psi) => {
                row.insert("equivalent".into(), json!(true));
                let name = format!("{}_to_{}", first.name, other.name);
                row.insert(
                    "isomorphism".into(),
                    json!(isomorphism_section(&name, &first.name, &other.name, &psi)),
                );
            }
            None => {
                row.insert("equivalent".into(), json!(false));
                let mut blocked = order;
                for r in 1..order {
                    if deformations_equivalent(d1, d2, r)?.is_none() {
                        blocked = r;
                        break;
                    }
                }
                row.insert("blocked_at".into(), json!(blocked));
                status.absorb(Status::fail());
            }
        }
        pairs.push(Value::Object(row));
    }
    let mut trivial = Vec::new();
    for d in &inst.deformations {
        let order = opts.to.unwrap_or(d.deformation.order()).min(d.deformation.order());
        let t = is_trivial(&d.deformation, order)?.is_some();
        trivial.push(json!({ "name": d.name, "order": order, "trivial": t }));
    }
    Ok((json!({ "pairs": pairs, "trivial": trivial }), status))
}

fn guarded(section: Section) -> CliResult<(Value, Status)> {
    match section {
        Err(CliError::Core(e)) => Ok(error_entry(&e)),
        other => other,
    }
}

fn report_all(inst: &Instance, opts: &Options) -> Section {
    let mut obj = Obj::new();
    let mut status = Status::default();
    let mut put = |key: &str, entry: (Value, Status)| {
        status.absorb(entry.1);
        obj.insert(key.into(), entry.0);
    };
    put("verify", guarded(verify(inst, opts))?);
    let mut tables = Vec::new();
    let space = inst.default_space();
    let mut table_status = Status::default();
    for eq in [false, true] {
        if eq && inst.action.is_none() {
            continue;
        }
        for degree in [1, 3, 5] {
            let (v, s) = guarded(cohomology_table(inst, space, degree, eq, opts.max_tensor_entries))?;
            table_status.absorb(s);
            tables.push(v);
        }
    }
    put("cohomology", (Value::Array(tables), table_status));
    if inst.fiber.is_some() {
        put("central_extension", guarded(central_extension(inst, opts))?);
    }
    if !inst.extensions.is_empty() {
        put("extract_cocycle", guarded(extract_cocycle(inst, opts))?);
    }
    if !inst.deformations.is_empty() {
        put("extend_deformation", guarded(extend_deformation(inst, opts))?);
    }
    if inst.deformations.len() >= 2 {
        put("equivalence", guarded(equivalence(inst, opts))?);
    }
    Ok((Value::Object(obj), status))
}

/// Runs `command` on a parsed instance. Input and usage problems surface as
/// errors; verification failures and missing witnesses are part of the
/// report and set the exit code.
pub fn execute(inst: &Instance, file_label: &str, command: Command, opts: &Options) -> CliResult<Outcome> {
    let (body, status) = match command {
        Command::Verify => verify(inst, opts)?,
        Command::Cohomology => cohomology(inst, opts)?,
        Command::CentralExtension => central_extension(inst, opts)?,
        Command::ExtractCocycle => extract_cocycle(inst, opts)?,
        Command::ExtendDeformation => extend_deformation(inst, opts)?,
        Command::Equivalence => equivalence(inst, opts)?,
        Command::ReportAll => report_all(inst, opts)?,
    };
    let mut report = Obj::new();
    report.insert("tool".into(), json!(format!("homlts {}", env!("CARGO_PKG_VERSION"))));
    report.insert("command".into(), json!(command.name()));
    let mut options = Obj::new();
    if let Some(d) = opts.degree {
        options.insert("degree".into(), json!(d));
    }
    if opts.equivariant {
        options.insert("equivariant".into(), json!(true));
    }
    if let Some(t) = opts.to {
        options.insert("to".into(), json!(t));
    }
    options.insert("max_tensor_entries".into(), json!(opts.max_tensor_entries));
    report.insert("options".into(), Value::Object(options));
    let mut header = Obj::new();
    header.insert("file".into(), json!(file_label));
    if let Some(n) = &inst.name {
        header.insert("name".into(), json!(n));
    }
    if let Some(d) = &inst.description {
        header.insert("description".into(), json!(d));
    }
    if let Some(c) = &inst.convention {
        header.insert("convention".into(), json!(c));
    }
    header.insert("dim".into(), json!(inst.dim()));
    if let Some(g) = inst.group() {
        header.insert("group_order".into(), json!(g.order()));
    }
    header.insert("fingerprint".into(), json!(inst.fingerprint));
    report.insert("instance".into(), Value::Object(header));
    report.insert("result".into(), body);
    report.insert("status".into(), json!(status.label()));
    report.insert("exit_code".into(), json!(status.exit_code()));
    Ok(Outcome {
        report: Value::Object(report),
        exit_code: status.exit_code(),
    })
}
