//! Small verified instances: exhaustive lists for the oracle and seeded
//! random families up to dimension 3 with groups of order at most 2.

use homlts_core::cohomology::{Cochain, ComplexContext};
use homlts_core::exactlin::{int, ratio, Matrix, Scalar, Vector};
use homlts_core::extensions::{extension_context, extension_from_cocycle, CentralExtension, Fiber};
use homlts_core::structures::{
    make_example, section5, verify_group_action, verify_hom_lts, ExampleParams, FiniteGroup,
    GroupAction, HomLts, Representation,
};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub lts: HomLts,
    pub action: Option<GroupAction>,
}

fn diag(values: &[i64]) -> Matrix {
    Matrix::diagonal(&values.iter().map(|&v| int(v)).collect::<Vec<_>>())
}

/// ℤ₂ acting by `m`, when that is an action by automorphisms of `t`.
pub fn z2(t: &HomLts, m: Matrix) -> Option<GroupAction> {
    let a = GroupAction::new(FiniteGroup::cyclic(2), vec![Matrix::identity(t.dim()), m]).ok()?;
    let ok = a.verify_homomorphism().passed() && verify_group_action(&a, t).ok()?.passed();
    ok.then_some(a)
}

pub fn s5() -> Instance {
    let ex = section5();
    Instance {
        name: "s5".into(),
        lts: ex.lts,
        action: ex.action,
    }
}

fn example(name: &str, params: ExampleParams) -> Instance {
    Instance {
        name: name.into(),
        lts: make_example(&params).expect("valid example").lts,
        action: None,
    }
}

/// `[xyz] = [[x,y],z]` on sl₂ (basis h, e, f) composed with the
/// automorphism `α = diag(1, s, 1/s)`.
pub fn yau_sl2(s: Scalar) -> HomLts {
    let lie = |i: usize, j: usize| -> Vector {
        let mut v = vec![Scalar::zero(); 3];
        match (i, j) {
            (0, 1) => v[1] = int(2),
            (1, 0) => v[1] = int(-2),
            (0, 2) => v[2] = int(-2),
            (2, 0) => v[2] = int(2),
            (1, 2) => v[0] = int(1),
            (2, 1) => v[0] = int(-1),
            _ => {}
        }
        v
    };
    let alpha = Matrix::diagonal(&[int(1), s.clone(), int(1) / s]);
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let xy = lie(i, j);
            for k in 0..3 {
                let mut v = vec![Scalar::zero(); 3];
                for (l, c) in xy.iter().enumerate() {
                    if !c.is_zero() {
                        for (w, d) in v.iter_mut().zip(lie(l, k)) {
                            *w += c * d;
                        }
                    }
                }
                entries.push(([i, j, k], alpha.mul_vec(&v)));
            }
        }
    }
    HomLts::from_brackets(alpha, &entries).expect("shapes fit")
}

/// Every listed system of dimension at most 2 with each ℤ₂-action on it
/// (among `−I`, `diag(1, −1)` and the swap) that verifies.
pub fn small_instances() -> Vec<Instance> {
    let mut bases = vec![
        Instance { name: "zero-1".into(), lts: HomLts::zero(diag(&[1])).unwrap(), action: None },
        Instance { name: "zero-1-neg".into(), lts: HomLts::zero(diag(&[-1])).unwrap(), action: None },
        Instance { name: "zero-2".into(), lts: HomLts::zero(diag(&[1, 1])).unwrap(), action: None },
        Instance { name: "zero-2-sign".into(), lts: HomLts::zero(diag(&[1, -1])).unwrap(), action: None },
        Instance {
            name: "zero-2-swap".into(),
            lts: HomLts::zero(Matrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap(),
            action: None,
        },
        Instance { name: "zero-2-scale".into(), lts: HomLts::zero(diag(&[2, 1])).unwrap(), action: None },
        Instance { lts: s5().lts, action: None, name: "s5".into() },
        example("pq-1-2", ExampleParams::MatrixPq { p: 1, q: 2 }),
        example("pq-2-1", ExampleParams::MatrixPq { p: 2, q: 1 }),
        example(
            "bilinear-euclid",
            ExampleParams::Bilinear { form: diag(&[1, 1]), alpha: diag(&[1, 1]), lambda: int(1) },
        ),
        example(
            "bilinear-lorentz-sign",
            ExampleParams::Bilinear { form: diag(&[1, -1]), alpha: diag(&[1, -1]), lambda: int(2) },
        ),
    ];
    let mut out = Vec::new();
    for base in bases.drain(..) {
        let n = base.lts.dim();
        let mut candidates = vec![Matrix::identity(n).scale(&int(-1))];
        if n == 2 {
            candidates.push(diag(&[1, -1]));
            candidates.push(Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        }
        for (c, m) in candidates.into_iter().enumerate() {
            if let Some(a) = z2(&base.lts, m) {
                out.push(Instance {
                    name: format!("{}/z2-{c}", base.name),
                    lts: base.lts.clone(),
                    action: Some(a),
                });
            }
        }
        out.push(base);
    }
    out
}

/// Contexts over `t` with `dim V ≤ 2`: the adjoint one and trivial
/// representations with small twists, equivariant and plain.
pub fn small_contexts(inst: &Instance) -> Vec<(String, ComplexContext)> {
    let mut out = Vec::new();
    let mut push = |label: String, ctx: ComplexContext| {
        if ctx.actions().is_some() {
            if let Ok(eq) = ctx.with_equivariant(true) {
                out.push((format!("{label}/eq"), eq));
            }
        }
        out.push((label, ctx));
    };
    if let Ok(ctx) = ComplexContext::adjoint(inst.lts.clone(), inst.action.clone(), false) {
        push(format!("{}/adjoint", inst.name), ctx);
    }
    let twists: [(&str, Matrix); 4] = [
        ("1", diag(&[1])),
        ("-1", diag(&[-1])),
        ("I2", diag(&[1, 1])),
        ("sign2", diag(&[1, -1])),
    ];
    for (tl, a) in twists {
        let m = a.rows();
        let rep = Representation::trivial(inst.lts.dim(), a.clone()).unwrap();
        let v_actions: Vec<(String, Option<GroupAction>)> = match &inst.action {
            None => vec![("none".into(), None)],
            Some(act) => [Matrix::identity(m), Matrix::identity(m).scale(&int(-1))]
                .into_iter()
                .enumerate()
                .filter_map(|(i, g)| {
                    GroupAction::new(act.group().clone(), vec![Matrix::identity(m), g])
                        .ok()
                        .map(|b| (format!("v{i}"), Some(b)))
                })
                .collect(),
        };
        for (vl, va) in v_actions {
            let actions = match (&inst.action, va) {
                (Some(t), Some(v)) => Some((t.clone(), v)),
                _ => None,
            };
            if let Ok(ctx) = ComplexContext::new(inst.lts.clone(), rep.clone(), actions, false) {
                push(format!("{}/trivial-{tl}-{vl}", inst.name), ctx);
            }
        }
    }
    out
}

fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items[rng.gen_range(0..items.len())].clone()
}

fn random_signs(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

fn with_random_action(rng: &mut ChaCha8Rng, name: String, lts: HomLts) -> Instance {
    let n = lts.dim();
    let action = if rng.gen_bool(0.7) {
        let m = if rng.gen_bool(0.5) {
            Matrix::identity(n).scale(&int(-1))
        } else {
            diag(&random_signs(rng, n))
        };
        z2(&lts, m)
    } else {
        None
    };
    Instance { name, lts, action }
}

/// A verified system of dimension at most 3, possibly with a ℤ₂-action.
pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let family = rng.gen_range(0..5);
        let (name, lts) = match family {
            0 => {
                let n = rng.gen_range(1..=3);
                let form: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                let alpha = random_signs(rng, n);
                let lambda = rng.gen_range(-2..=2);
                let params = ExampleParams::Bilinear {
                    form: diag(&form),
                    alpha: diag(&alpha),
                    lambda: int(lambda),
                };
                (format!("bilinear{form:?}{alpha:?}x{lambda}"), make_example(&params).unwrap().lts)
            }
            1 => {
                let s = pick(rng, &[int(1), int(2), ratio(1, 2), int(-1), int(3)]);
                (format!("yau-sl2-{s}"), yau_sl2(s))
            }
            2 => {
                let (p, q) = pick(rng, &[(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]);
                let params = ExampleParams::MatrixPq { p, q };
                (format!("pq-{p}-{q}"), make_example(&params).unwrap().lts)
            }
            3 => {
                let n = rng.gen_range(1..=3);
                let alpha: Vec<i64> = (0..n).map(|_| pick(rng, &[1, -1, 2])).collect();
                (format!("zero{alpha:?}"), HomLts::zero(diag(&alpha)).unwrap())
            }
            _ => return s5(),
        };
        if verify_hom_lts(&lts).passed() {
            return with_random_action(rng, name, lts);
        }
    }
}

/// A base system with a fiber for central extensions.
pub struct ExtensionFixture {
    pub name: &'static str,
    pub base: HomLts,
    pub action: Option<GroupAction>,
    pub fiber: Fiber,
}

impl ExtensionFixture {
    pub fn ctx(&self) -> ComplexContext {
        extension_context(&self.base, self.action.as_ref(), &self.fiber).unwrap()
    }

    pub fn build(&self, h: &Cochain) -> CentralExtension {
        extension_from_cocycle(&self.base, self.action.as_ref(), &self.fiber, h).unwrap()
    }
}

fn fiber_z2(sign: i64, m: usize) -> GroupAction {
    let g = Matrix::identity(m).scale(&int(sign));
    GroupAction::new(FiniteGroup::cyclic(2), vec![Matrix::identity(m), g]).unwrap()
}

/// S5 with a two-dimensional fiber, the 1×2 matrix system with a trivial
/// fiber, the zero bracket with ℤ₂ acting by −1 on both sides, and a
/// twisted sl₂ with a two-dimensional fiber.
pub fn extension_fixtures() -> Vec<ExtensionFixture> {
    let s5 = s5();
    let pq = make_example(&ExampleParams::MatrixPq { p: 1, q: 2 }).unwrap().lts;
    let zero = HomLts::zero(Matrix::identity(2)).unwrap();
    let zero_action = z2(&zero, Matrix::identity(2).scale(&int(-1))).unwrap();
    let sl2 = yau_sl2(int(2));
    let sl2_action = z2(&sl2, diag(&[1, -1, -1])).unwrap();
    vec![
        ExtensionFixture {
            name: "s5",
            base: s5.lts,
            action: s5.action,
            fiber: Fiber::new(diag(&[1, -1]), Some(fiber_z2(-1, 2))).unwrap(),
        },
        ExtensionFixture {
            name: "pq-1-2",
            base: pq,
            action: None,
            fiber: Fiber::new(Matrix::identity(1), None).unwrap(),
        },
        ExtensionFixture {
            name: "zero-z2",
            base: zero,
            action: Some(zero_action),
            fiber: Fiber::new(Matrix::identity(1), Some(fiber_z2(-1, 1))).unwrap(),
        },
        ExtensionFixture {
            name: "yau-sl2",
            base: sl2,
            action: Some(sl2_action),
            fiber: Fiber::new(Matrix::identity(2), Some(fiber_z2(1, 2))).unwrap(),
        },
    ]
}
