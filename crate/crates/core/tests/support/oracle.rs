//! Brute-force reference computations. Raw tensors are enumerated in full,
//! constraints are stacked as dense rows and eliminated by plain
//! Gauss-Jordan; the coboundary is evaluated pointwise from its defining
//! formula. None of the engine's sparse machinery is used.

use homlts_core::cohomology::ComplexContext;
use homlts_core::exactlin::{Matrix, Scalar, Vector};
use homlts_core::structures::HomLts;
use num_traits::{One, Zero};

fn zeros(len: usize) -> Vector {
    vec![Scalar::zero(); len]
}

fn unit(len: usize, i: usize) -> Vector {
    let mut v = zeros(len);
    v[i] = Scalar::one();
    v
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn offset(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// Row-reduces in place and returns the pivot columns.
fn reduce(rows: &mut Vec<Vector>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let support: Vec<(usize, Scalar)> = rows[r]
            .iter()
            .enumerate()
            .filter(|(_, y)| !y.is_zero())
            .map(|(j, y)| (j, y.clone()))
            .collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (j, y) in &support {
                    row[*j] -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(vectors: &[Vector], width: usize) -> usize {
    let mut rows = vectors.to_vec();
    reduce(&mut rows, width).len()
}

pub fn nullspace(rows: &[Vector], width: usize) -> Vec<Vector> {
    let mut rows = rows.to_vec();
    let pivots = reduce(&mut rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = unit(width, f);
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Both families are bases of the same subspace.
pub fn same_span(a: &[Vector], b: &[Vector], width: usize) -> bool {
    let ra = rank(a, width);
    let rb = rank(b, width);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == a.len() && rb == b.len() && ra == rb && rank(&both, width) == ra
}

fn data(ctx: &ComplexContext) -> (usize, usize) {
    (ctx.dim_t(), ctx.dim_v())
}

/// Every defining constraint of a degree-`k` cochain as a dense row.
pub fn constraint_rows(ctx: &ComplexContext, k: usize) -> Vec<Vector> {
    let (n, m) = data(ctx);
    let width = n.pow(k as u32) * m;
    let alpha = ctx.t().alpha();
    let a = ctx.rep().a_twist();
    let all = tuples(n, k);
    let mut rows = Vec::new();
    // A f(x) = f(αx₁, …, αx_k)
    for x in &all {
        for p in 0..m {
            let mut row = zeros(width);
            for q in 0..m {
                row[offset(x, n) * m + q] += a.get(p, q);
            }
            for y in &all {
                let mut c = Scalar::one();
                for (yi, xi) in y.iter().zip(x) {
                    c *= alpha.get(*yi, *xi);
                }
                row[offset(y, n) * m + p] -= c;
            }
            rows.push(row);
        }
    }
    if k >= 3 {
        for x in &all {
            let mut swapped = x.clone();
            swapped.swap(k - 3, k - 2);
            let mut r1 = x.clone();
            r1[k - 3..].rotate_left(1);
            let mut r2 = r1.clone();
            r2[k - 3..].rotate_left(1);
            for p in 0..m {
                let mut alt = zeros(width);
                alt[offset(x, n) * m + p] += Scalar::one();
                alt[offset(&swapped, n) * m + p] += Scalar::one();
                rows.push(alt);
                let mut cyc = zeros(width);
                for t in [x, &r1, &r2] {
                    cyc[offset(t, n) * m + p] += Scalar::one();
                }
                rows.push(cyc);
            }
        }
    }
    if ctx.equivariant() {
        let (gt, gv) = ctx.actions().expect("equivariant contexts carry actions");
        for g in 0..gt.group().order() {
            let (mt, mv) = (gt.matrix(g), gv.matrix(g));
            for x in &all {
                for p in 0..m {
                    let mut row = zeros(width);
                    for y in &all {
                        let mut c = Scalar::one();
                        for (yi, xi) in y.iter().zip(x) {
                            c *= mt.get(*yi, *xi);
                        }
                        row[offset(y, n) * m + p] += c;
                    }
                    for q in 0..m {
                        row[offset(x, n) * m + q] -= mv.get(p, q);
                    }
                    rows.push(row);
                }
            }
        }
    }
    rows
}

pub fn cochain_space(ctx: &ComplexContext, k: usize) -> Vec<Vector> {
    let (n, m) = data(ctx);
    nullspace(&constraint_rows(ctx, k), n.pow(k as u32) * m)
}

fn theta(ctx: &ComplexContext, a: &[Scalar], b: &[Scalar]) -> Matrix {
    let (n, m) = data(ctx);
    let tensor = ctx.rep().theta_tensor();
    let mut out = Matrix::zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            let c = &a[i] * &b[j];
            if c.is_zero() {
                continue;
            }
            for p in 0..m {
                for q in 0..m {
                    let v = out.get(p, q) + &c * &tensor[((i * n + j) * m + p) * m + q];
                    out.set(p, q, v);
                }
            }
        }
    }
    out
}

fn sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// One summand of `δf(x)`: `c · M f(args)`, with `M` the identity when absent.
struct Term {
    matrix: Option<Matrix>,
    coeff: Scalar,
    args: Vec<Vector>,
}

/// The summands of `δ^{2n−1} f(x)` at one tuple of basis vectors, term by
/// term: the two θ terms, the D-sum and the substitution sum.
fn delta_terms(ctx: &ComplexContext, k: usize, x: &[usize]) -> Vec<Term> {
    let n = ctx.dim_t();
    let half = k.div_ceil(2);
    let big = k + 2;
    let t = ctx.t();
    let alpha = t.alpha();
    let apow = alpha.pow(half - 1);
    let e = |i: usize| unit(n, i);
    let tw = |i: usize| apow.column(i);
    let args = |ids: &[usize]| ids.iter().map(|&i| e(i)).collect::<Vec<_>>();
    let mut terms = Vec::new();

    terms.push(Term {
        matrix: Some(theta(ctx, &tw(x[big - 2]), &tw(x[big - 1]))),
        coeff: Scalar::one(),
        args: args(&x[..big - 2]),
    });
    let mut ids: Vec<usize> = x[..big - 3].to_vec();
    ids.push(x[big - 2]);
    terms.push(Term {
        matrix: Some(theta(ctx, &tw(x[big - 3]), &tw(x[big - 1]))),
        coeff: -Scalar::one(),
        args: args(&ids),
    });

    for kk in 1..=half {
        let (a, b) = (2 * kk - 2, 2 * kk - 1);
        let rest: Vec<usize> = (0..big).filter(|&s| s != a && s != b).map(|s| x[s]).collect();
        let (ua, ub) = (tw(x[a]), tw(x[b]));
        terms.push(Term {
            matrix: Some(&theta(ctx, &ub, &ua) - &theta(ctx, &ua, &ub)),
            coeff: sign(kk + half),
            args: args(&rest),
        });
        for j in (2 * kk)..big {
            let br = t.bracket(&e(x[a]), &e(x[b]), &e(x[j]));
            let slot_args: Vec<Vector> = (0..big)
                .filter(|&s| s != a && s != b)
                .map(|s| if s == j { br.clone() } else { alpha.column(x[s]) })
                .collect();
            terms.push(Term {
                matrix: None,
                coeff: sign(half + kk + 1),
                args: slot_args,
            });
        }
    }
    terms
}

/// The raw tuples `y` with weights `Π args[i][y_i]`, as `(offset, weight)`.
fn expand(args: &[Vector], n: usize) -> Vec<(usize, Scalar)> {
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

/// `δ` on raw tensors: one sparse row per output coordinate `(x, p)`,
/// obtained by expanding every summand of `δf(x)` linearly in `f`.
pub fn delta_rows(ctx: &ComplexContext, k: usize) -> Vec<Vec<(usize, Scalar)>> {
    let (n, m) = data(ctx);
    let mut rows = Vec::with_capacity(n.pow(k as u32 + 2) * m);
    for x in tuples(n, k + 2) {
        let mut block: Vec<std::collections::BTreeMap<usize, Scalar>> = vec![Default::default(); m];
        for term in delta_terms(ctx, k, &x) {
            for (off, w) in expand(&term.args, n) {
                let cw = &term.coeff * &w;
                for (p, row) in block.iter_mut().enumerate() {
                    match &term.matrix {
                        Some(mat) => {
                            for q in 0..m {
                                let v = mat.get(p, q);
                                if !v.is_zero() {
                                    *row.entry(off * m + q).or_insert_with(Scalar::zero) += &cw * v;
                                }
                            }
                        }
                        None => *row.entry(off * m + p).or_insert_with(Scalar::zero) += cw.clone(),
                    }
                }
            }
        }
        for row in block {
            rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    rows
}

/// `δf` for each `f`, as raw degree-`(k+2)` tensors.
pub fn delta_many(ctx: &ComplexContext, fs: &[Vector], k: usize) -> Vec<Vector> {
    let rows = delta_rows(ctx, k);
    fs.iter()
        .map(|f| {
            rows.iter()
                .map(|row| row.iter().fold(Scalar::zero(), |acc, (j, c)| acc + c * &f[*j]))
                .collect()
        })
        .collect()
}

pub fn delta(ctx: &ComplexContext, f: &[Scalar], k: usize) -> Vector {
    delta_many(ctx, std::slice::from_ref(&f.to_vec()), k).remove(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub cochains: usize,
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

pub fn cohomology(ctx: &ComplexContext, k: usize) -> Dims {
    let (n, m) = data(ctx);
    let basis = cochain_space(ctx, k);
    let out = delta_many(ctx, &basis, k);
    let z = basis.len() - rank(&out, n.pow(k as u32 + 2) * m);
    let b = if k >= 3 {
        let prev = cochain_space(ctx, k - 2);
        let incoming = delta_many(ctx, &prev, k - 2);
        rank(&incoming, n.pow(k as u32) * m)
    } else {
        0
    };
    Dims {
        cochains: basis.len(),
        z,
        b,
        h: z - b,
    }
}

/// `{x : [x a b] = 0 for all a, b}`, one constraint row per `(a, b, l)`.
pub fn center(t: &HomLts) -> Vec<Vector> {
    let n = t.dim();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for l in 0..n {
                let row: Vector = (0..n)
                    .map(|q| t.bracket(&unit(n, q), &unit(n, a), &unit(n, b))[l].clone())
                    .collect();
                rows.push(row);
            }
        }
    }
    nullspace(&rows, n)
}
