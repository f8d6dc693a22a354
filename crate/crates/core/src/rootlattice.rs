//! Recognition of ADE root lattices from definite integral Gram matrices.
//!
//! Norm-2 vectors are enumerated with a Fincke–Pohst search whose bounds
//! are computed in floating point and widened by one step; every candidate
//! is then checked exactly.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};

use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    /// Components such as `"A4"`, sorted.
    pub components: Vec<String>,
    /// Simple roots as coordinate vectors in the input basis.
    pub simple_roots: Vec<Vec<i64>>,
    /// `+1` if the input was positive definite, `−1` if negative definite.
    pub sign: i64,
}

impl RootSystem {
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            "0".to_string()
        } else {
            self.components.join("+")
        }
    }

    /// Columns are the simple roots.
    pub fn witness(&self, dim: usize) -> IntMatrix {
        IntMatrix::from_columns(dim, &self.simple_roots)
    }
}

/// `+1`, `−1` or `0` for positive, negative or non-definite symmetric `g`.
pub fn definiteness(g: &IntMatrix) -> i64 {
    let n = g.rows();
    let minors: Vec<_> = (1..=n)
        .map(|k| IntMatrix::from_fn(k, k, |r, c| g[(r, c)]).det())
        .collect();
    if minors.iter().all(|m| m.is_positive()) {
        1
    } else if minors.iter().enumerate().all(|(k, m)| if k % 2 == 0 { m.is_negative() } else { m.is_positive() }) {
        -1
    } else {
        0
    }
}

fn norm(g: &IntMatrix, v: &[i64]) -> i64 {
    let gv = g.mul_vec(v);
    v.iter().zip(&gv).map(|(a, b)| a * b).sum()
}

/// All `v ≠ 0` with `vᵀ g v ≤ bound`, for positive definite `g`.
pub fn short_vectors(g: &IntMatrix, bound: i64) -> Vec<Vec<i64>> {
    let n = g.rows();
    // q[i][i] and q[i][j] (j > i) of the decomposition Σ q_ii (x_i + Σ q_ij x_j)²
    let mut q = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            q[i][j] = g[(i, j)] as f64;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    search(g, &q, n, bound, bound as f64, &mut x, &mut out);
    out
}

fn search(g: &IntMatrix, q: &[Vec<f64>], level: usize, bound: i64, remaining: f64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        if x.iter().any(|&v| v != 0) && norm(g, x) <= bound {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let n = q.len();
    let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let r = (remaining.max(0.0) / q[i][i]).sqrt() + 1e-6;
    let lo = (c - r).floor() as i64 - 1;
    let hi = (c + r).ceil() as i64 + 1;
    for v in lo..=hi {
        let t = v as f64 - c;
        let used = q[i][i] * t * t;
        if used > remaining + 1e-6 + 1.0 {
            continue;
        }
        x[i] = v;
        search(g, q, i, bound, remaining - used, x, out);
    }
    x[i] = 0;
}

/// Recognises `g` (or `−g`) as an orthogonal sum of ADE root lattices with
/// Gram matrix the Cartan matrix. Returns `None` if `g` is not definite
/// or not a root lattice.
pub fn recognize(g: &IntMatrix) -> Option<RootSystem> {
    if !g.is_symmetric() {
        return None;
    }
    let n = g.rows();
    if n == 0 {
        return Some(RootSystem { components: Vec::new(), simple_roots: Vec::new(), sign: 1 });
    }
    let sign = definiteness(g);
    if sign == 0 {
        return None;
    }
    let gp = g.scale(&sign);
    let roots: Vec<Vec<i64>> = short_vectors(&gp, 2).into_iter().filter(|v| norm(&gp, v) == 2).collect();
    let max = roots.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
    let base = 2 * max + 1;
    let height = |v: &[i64]| -> i128 {
        v.iter().rev().fold(0i128, |acc, &x| acc * base as i128 + x as i128)
    };
    let positive: Vec<&Vec<i64>> = roots.iter().filter(|v| height(v) > 0).collect();
    let simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|v| {
            !positive.iter().any(|a| {
                let diff: Vec<i64> = v.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                height(&diff) > 0 && positive.iter().any(|b| **b == diff)
            })
        })
        .map(|v| (*v).clone())
        .collect();
    if simple.len() != n {
        return None;
    }
    let u = IntMatrix::from_columns(n, &simple);
    if u.det().abs().to_i64() != Some(1) {
        return None;
    }
    let cartan = gp.congruence(&u);
    let components = classify(&cartan)?;
    Some(RootSystem { components, simple_roots: simple, sign })
}

/// Dynkin types of the connected components of a Cartan matrix.
fn classify(c: &IntMatrix) -> Option<Vec<String>> {
    let n = c.rows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for w in 0..n {
                if w != v && c[(v, w)] != 0 {
                    if c[(v, w)] != -1 {
                        return None;
                    }
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            k += 1;
        }
        out.push(component_type(c, &comp)?);
    }
    out.sort_by_key(|t| (t.chars().next().unwrap(), t[1..].parse::<usize>().unwrap_or(0)));
    Some(out)
}

fn component_type(c: &IntMatrix, comp: &[usize]) -> Option<String> {
    let k = comp.len();
    let deg: BTreeMap<usize, usize> = comp
        .iter()
        .map(|&v| (v, comp.iter().filter(|&&w| w != v && c[(v, w)] != 0).count()))
        .collect();
    let edges: usize = deg.values().sum::<usize>() / 2;
    if edges != k - 1 {
        return None;
    }
    let branch: Vec<usize> = deg.iter().filter(|(_, &d)| d >= 3).map(|(&v, _)| v).collect();
    match branch.as_slice() {
        [] => Some(format!("A{k}")),
        [b] if deg[b] == 3 => {
            let mut arms: Vec<usize> = comp
                .iter()
                .filter(|&&w| w != *b && c[(*b, w)] != 0)
                .map(|&w| arm_length(c, comp, *b, w))
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Some(format!("D{k}")),
                [1, 2, 2] => Some("E6".into()),
                [1, 2, 3] => Some("E7".into()),
                [1, 2, 4] => Some("E8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_length(c: &IntMatrix, comp: &[usize], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next = comp.iter().find(|&&w| w != cur && w != prev && c[(cur, w)] != 0);
        match next {
            Some(&w) => {
                prev = cur;
                cur = w;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Cartan matrix of `A_k`.
pub fn cartan_a(k: usize) -> IntMatrix {
    IntMatrix::from_fn(k, k, |r, c| if r == c { 2 } else if r.abs_diff(c) == 1 { -1 } else { 0 })
}

/// Whether two symmetric definite Gram matrices are recognised as the same
/// root lattice.
pub fn same_root_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    match (recognize(a), recognize(b)) {
        (Some(x), Some(y)) => x.components == y.components && x.sign == y.sign,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognises_a_series() {
        for k in 1..7 {
            let r = recognize(&cartan_a(k)).unwrap();
            assert_eq!(r.label(), format!("A{k}"));
            let neg = recognize(&cartan_a(k).neg()).unwrap();
            assert_eq!(neg.sign, -1);
        }
    }

    #[test]
    fn recognises_d4_e6_and_sums() {
        let d4 = IntMatrix::from_rows(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]);
        assert_eq!(recognize(&d4).unwrap().label(), "D4");
        let e6 = {
            let mut m = cartan_a(5).to_rows();
            for r in m.iter_mut() {
                r.push(0);
            }
            m.push(vec![0, 0, -1, 0, 0, 2]);
            m[2][5] = -1;
            IntMatrix::from_rows(m)
        };
        assert_eq!(recognize(&e6).unwrap().label(), "E6");
        let sum = IntMatrix::block_diagonal(&[cartan_a(4), cartan_a(1), cartan_a(4)]);
        assert_eq!(recognize(&sum).unwrap().label(), "A1+A4+A4");
    }

    #[test]
    fn rejects_non_root_lattices() {
        assert!(recognize(&IntMatrix::from_rows(vec![vec![4]])).is_none());
        assert!(recognize(&IntMatrix::from_rows(vec![vec![2, 0], vec![0, -2]])).is_none());
        // A2 scaled by 2 has no roots
        assert!(recognize(&cartan_a(2).scale(&2)).is_none());
    }

    #[test]
    fn recognises_after_basis_change() {
        let u = IntMatrix::from_rows(vec![vec![1, 2, 0], vec![0, 1, 3], vec![0, 0, 1]]);
        let g = cartan_a(3).congruence(&u);
        let r = recognize(&g).unwrap();
        assert_eq!(r.label(), "A3");
        assert_eq!(recognize(&g.congruence(&r.witness(3))).unwrap().label(), "A3");
    }
}
