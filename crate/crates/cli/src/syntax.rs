//! Printing objects back in instance syntax, so that every witness in a
//! report can be pasted into an instance file.

use std::fmt::Write as _;

use homlts_core::cohomology::Cochain;
use homlts_core::deformations::{Deformation, FormalIsomorphism};
use homlts_core::exactlin::{fmt_scalar, Matrix, Scalar};
use homlts_core::extensions::CentralExtension;
use homlts_core::tensor::MultiIndex;
use num_traits::{One, Signed, Zero};

use crate::instance::Space;

/// `c₁ e_i + c₂ e_j − …`, or `0`.
pub fn fmt_vector(v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = if mag.is_one() {
            format!("e_{}", i + 1)
        } else {
            format!("{} e_{}", fmt_scalar(&mag), i + 1)
        };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => write!(out, " + {body}").unwrap(),
            (false, true) => write!(out, " - {body}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn fmt_row(row: &[Scalar]) -> String {
    row.iter().map(fmt_scalar).collect::<Vec<_>>().join(" ")
}

fn one_based(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn matrix_lines(out: &mut String, prefix: &str, m: &Matrix) {
    for r in 0..m.rows() {
        writeln!(out, "{prefix}row {} = {}", r + 1, fmt_row(m.row(r))).unwrap();
    }
}

pub fn cochain_section(name: &str, space: Space, f: &Cochain) -> String {
    let mut out = format!(
        "[cochain {name}]\nspace = {}\ndegree = {}\n",
        space.keyword(),
        f.degree()
    );
    for idx in MultiIndex::new(f.dim_t(), f.degree()) {
        let v = f.value(&idx);
        if v.iter().any(|x| !x.is_zero()) {
            writeln!(out, "value {} = {}", one_based(&idx), fmt_vector(v)).unwrap();
        }
    }
    out
}

pub fn deformation_section(name: &str, d: &Deformation) -> String {
    let n = d.base().dim();
    let mut out = format!("[deformation {name}]\norder = {}\n", d.order());
    for r in 1..=d.order() {
        let mu = d.mu(r);
        for idx in MultiIndex::new(n, 3) {
            let base = ((idx[0] * n + idx[1]) * n + idx[2]) * n;
            let v = &mu[base..base + n];
            if v.iter().any(|x| !x.is_zero()) {
                writeln!(out, "term {r} {} = {}", one_based(&idx), fmt_vector(v)).unwrap();
            }
        }
    }
    out
}

pub fn isomorphism_section(name: &str, from: &str, to: &str, psi: &FormalIsomorphism) -> String {
    let mut out = format!(
        "[isomorphism {name}]\nfrom = {from}\nto = {to}\norder = {}\n",
        psi.order()
    );
    for (r, m) in psi.maps().iter().enumerate() {
        if !m.is_zero() {
            matrix_lines(&mut out, &format!("map {} ", r + 1), m);
        }
    }
    out
}

pub fn extension_section(name: &str, ext: &CentralExtension) -> String {
    let total = ext.total();
    let tn = total.dim();
    let mut out = format!("[extension {name}]\ndim = {tn}\n");
    for idx in MultiIndex::new(tn, 3) {
        let v = total.basis_bracket(idx[0], idx[1], idx[2]);
        if v.iter().any(|x| !x.is_zero()) {
            writeln!(out, "bracket {} = {}", one_based(&idx), fmt_vector(v)).unwrap();
        }
    }
    matrix_lines(&mut out, "twist ", total.alpha());
    matrix_lines(&mut out, "incl ", ext.incl());
    matrix_lines(&mut out, "proj ", ext.proj());
    matrix_lines(&mut out, "section ", ext.section());
    if let Some(a) = ext.action_total() {
        for g in a.non_identity() {
            matrix_lines(&mut out, &format!("action {} ", a.group().label(g)), a.matrix(g));
        }
    }
    out
}

pub fn extension_map_section(name: &str, from: &str, to: &str, phi: &Matrix) -> String {
    let mut out = format!("[extension-map {name}]\nfrom = {from}\nto = {to}\n");
    matrix_lines(&mut out, "", phi);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use homlts_core::exactlin::{int, ratio};

    #[test]
    fn vector_formatting() {
        assert_eq!(fmt_vector(&[int(0), int(0)]), "0");
        assert_eq!(fmt_vector(&[int(1), int(-1)]), "e_1 - e_2");
        assert_eq!(fmt_vector(&[ratio(-3, 2), int(2)]), "-3/2 e_1 + 2 e_2");
    }

    #[test]
    fn vectors_round_trip_through_the_parser() {
        for v in [
            vec![int(0), int(0), int(0)],
            vec![ratio(1, 3), int(0), int(-7)],
            vec![int(-1), int(1), ratio(-5, 4)],
        ] {
            let text = fmt_vector(&v);
            assert_eq!(crate::instance::parse_vector(&text, 1, 1, 3).unwrap(), v, "{text}");
        }
    }
}
