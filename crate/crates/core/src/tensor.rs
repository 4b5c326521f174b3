//! Flattened multilinear maps `T^{⊗k} → V`.
//!
//! A map is stored row-major with the first argument most significant and
//! the output coordinate last: entry `(i_1, …, i_k; p)` lives at
//! `((i_1·n + i_2)·n + … + i_k)·m + p`.

use num_traits::Zero;

use crate::exactlin::{Matrix, Scalar, Vector};

/// Iterator over `[0, n)^k` in lexicographic order.
#[derive(Clone, Debug)]
pub struct MultiIndex {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl MultiIndex {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: vec![0; k],
            done: n == 0 && k > 0,
        }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut slot = self.current.len();
        loop {
            if slot == 0 {
                self.done = true;
                break;
            }
            slot -= 1;
            self.current[slot] += 1;
            if self.current[slot] < self.n {
                break;
            }
            self.current[slot] = 0;
        }
        Some(out)
    }
}

pub fn tuple_offset(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn tuple_from_offset(mut offset: usize, n: usize, k: usize) -> Vec<usize> {
    let mut idx = vec![0; k];
    for slot in (0..k).rev() {
        idx[slot] = offset % n;
        offset /= n;
    }
    idx
}

/// `n^k`, or `None` on overflow.
pub fn checked_pow(n: usize, k: usize) -> Option<usize> {
    (0..k).try_fold(1usize, |acc, _| acc.checked_mul(n))
}

/// Support of a vector as `(index, value)` pairs.
pub fn support(v: &[Scalar]) -> Vec<(usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Evaluates a flattened multilinear map at vector arguments.
pub fn eval_multilinear(coeffs: &[Scalar], n: usize, m: usize, args: &[&[Scalar]]) -> Vector {
    let mut out = vec![Scalar::zero(); m];
    let supports: Vec<Vec<(usize, &Scalar)>> = args.iter().map(|a| support(a)).collect();
    if supports.iter().any(Vec::is_empty) {
        return out;
    }
    let k = args.len();
    let mut pos = vec![0usize; k];
    loop {
        let mut offset = 0;
        let mut coef = Scalar::from_integer(1.into());
        for s in 0..k {
            let (i, x) = supports[s][pos[s]];
            offset = offset * n + i;
            coef *= x;
        }
        let base = offset * m;
        for p in 0..m {
            let c = &coeffs[base + p];
            if !c.is_zero() {
                out[p] += &coef * c;
            }
        }
        let mut s = k;
        loop {
            if s == 0 {
                return out;
            }
            s -= 1;
            pos[s] += 1;
            if pos[s] < supports[s].len() {
                break;
            }
            pos[s] = 0;
        }
    }
}

/// Precomposition with one linear map per slot:
/// `g(x_1, …, x_k) = f(M_1 x_1, …, M_k x_k)`, every `M_s` being `n × n`.
pub fn pullback(coeffs: &[Scalar], n: usize, m: usize, mats: &[&Matrix]) -> Vector {
    let k = mats.len();
    let mut cur = coeffs.to_vec();
    for (slot, mat) in mats.iter().enumerate() {
        if mat.is_identity() {
            continue;
        }
        // block = n^(k-slot-1) * m entries per value of this slot
        let inner = checked_pow(n, k - slot - 1).unwrap() * m;
        let outer = checked_pow(n, slot).unwrap();
        let mut next = vec![Scalar::zero(); cur.len()];
        for o in 0..outer {
            for y in 0..n {
                let src = (o * n + y) * inner;
                for x in 0..n {
                    let a = mat.get(y, x);
                    if a.is_zero() {
                        continue;
                    }
                    let dst = (o * n + x) * inner;
                    for t in 0..inner {
                        let v = &cur[src + t];
                        if !v.is_zero() {
                            next[dst + t] += a * v;
                        }
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

/// Postcomposition with an `m' × m` matrix on the output coordinate.
pub fn pushforward(coeffs: &[Scalar], m: usize, mat: &Matrix) -> Vector {
    assert_eq!(mat.cols(), m, "pushforward shape mismatch");
    let out_m = mat.rows();
    let count = coeffs.len() / m.max(1);
    let mut out = vec![Scalar::zero(); count * out_m];
    for t in 0..count {
        let value = &coeffs[t * m..(t + 1) * m];
        if value.iter().all(Zero::is_zero) {
            continue;
        }
        out[t * out_m..(t + 1) * out_m].clone_from_slice(&mat.mul_vec(value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, unit_vector};

    #[test]
    fn multi_index_enumerates_lexicographically() {
        let all: Vec<Vec<usize>> = MultiIndex::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(MultiIndex::new(3, 0).count(), 1);
        for (pos, idx) in MultiIndex::new(3, 3).enumerate() {
            assert_eq!(tuple_offset(&idx, 3), pos);
            assert_eq!(tuple_from_offset(pos, 3, 3), idx);
        }
    }

    #[test]
    fn pullback_agrees_with_pointwise_evaluation() {
        // f: T⊗T → V with n = 2, m = 1, arbitrary coefficients
        let f: Vec<Scalar> = [1, -2, 3, 5].iter().map(|&x| int(x)).collect();
        let a = Matrix::from_i64(&[&[1, 2], &[0, -1]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 1]]);
        let g = pullback(&f, 2, 1, &[&a, &b]);
        for idx in MultiIndex::new(2, 2) {
            let x = a.mul_vec(&unit_vector(2, idx[0]));
            let y = b.mul_vec(&unit_vector(2, idx[1]));
            let expect = eval_multilinear(&f, 2, 1, &[&x, &y]);
            assert_eq!(g[tuple_offset(&idx, 2)], expect[0]);
        }
    }
}
