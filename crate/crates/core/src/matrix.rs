//! Dense exact matrices over `i64` and `BigRational`, plus the integer
//! lattice routines (Hermite normal form, integer kernels, elementary
//! divisors) and fraction-free determinants.
//!
//! Storage is row-major. Lattice bases are always stored as matrices
//! whose *columns* are the basis vectors.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<T>>", into = "Vec<Vec<T>>")]
#[serde(bound(
    serialize = "T: Clone + Serialize",
    deserialize = "T: Clone + Deserialize<'de>"
))]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<i64>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone> TryFrom<Vec<Vec<T>>> for Matrix<T> {
    type Error = String;

    fn try_from(rows: Vec<Vec<T>>) -> Result<Self, String> {
        Matrix::try_from_rows(rows)
    }
}

impl<T: Clone> From<Matrix<T>> for Vec<Vec<T>> {
    fn from(m: Matrix<T>) -> Self {
        m.to_rows()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn try_from_rows(rows: Vec<Vec<T>>) -> Result<Self, String> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err("ragged matrix rows".into());
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged input; use [`Matrix::try_from_rows`] for untrusted data.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        Self::try_from_rows(rows).expect("rectangular rows")
    }

    /// Matrix whose columns are the given vectors, all of length `len`.
    pub fn from_columns(len: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_fn(len, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self[(r, c)].is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Block-diagonal sum of the given square or rectangular blocks.
    pub fn block_diagonal(blocks: &[Matrix<T>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                other[(r - self.rows, c)].clone()
            }
        })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out: Self = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out[(r, c)].clone() + a.clone() * other[(k, c)].clone();
                    out[(r, c)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + other[(r, c)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - other[(r, c)].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// Kronecker product; row/column index of `a ⊗ b` is `i * dim(b) + j`.
    pub fn kron(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)].clone() * other[(r % other.rows, c % other.cols)].clone()
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `bᵀ · self · b`: the Gram matrix of the form on the columns of `b`.
    pub fn congruence(&self, b: &Self) -> Self {
        b.transpose().mul(self).mul(b)
    }
}

impl IntMatrix {
    pub fn to_rat(&self) -> RatMatrix {
        self.map(|&x| BigRational::from_integer(BigInt::from(x)))
    }

    pub fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn from_big_rows(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Option<Self> {
        let mut m = IntMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = data[r][c].to_i64()?;
            }
        }
        Some(m)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        bareiss_det(self.to_big())
    }

    /// Monodromy-style product check: exactly equal as rational matrices.
    pub fn rat_eq(&self, other: &RatMatrix) -> bool {
        self.to_rat() == *other
    }
}

/// Fraction-free Gaussian elimination; the empty matrix has determinant 1.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl RatMatrix {
    pub fn is_integral(&self) -> bool {
        self.entries().all(|x| x.denom().is_one())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].numer().to_i64()?;
            }
        }
        Some(m)
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = self[(row, col)].recip();
            for c in 0..self.cols {
                let v = &self[(row, c)] * &inv;
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let f = self[(r, col)].clone();
                    for c in 0..self.cols {
                        let v = &self[(r, c)] - &f * &self[(row, c)];
                        self[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = self.hstack(&RatMatrix::identity(n));
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| aug[(r, n + c)].clone()))
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pv = a[(col, col)].clone();
            det *= &pv;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &pv;
                for c in col..n {
                    let v = &a[(r, c)] - &f * &a[(col, c)];
                    a[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Solves `self · X = rhs` for a matrix `self` of full column rank.
    /// Returns `None` when some column of `rhs` is outside the column span.
    pub fn solve(&self, rhs: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let k = self.cols;
        let mut aug = self.hstack(rhs);
        let piv = aug.rref();
        if piv.iter().take_while(|&&p| p < k).count() != k {
            return None;
        }
        if piv.iter().any(|&p| p >= k) {
            return None;
        }
        Some(Matrix::from_fn(k, rhs.cols, |r, c| aug[(r, k + c)].clone()))
    }

    /// Basis (as columns) of the rational null space.
    pub fn null_space(&self) -> RatMatrix {
        let mut a = self.clone();
        let piv = a.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = RatMatrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out[(f, j)] = BigRational::one();
            for (i, &p) in piv.iter().enumerate() {
                out[(p, j)] = -a[(i, f)].clone();
            }
        }
        out
    }

    /// Characteristic polynomial `det(t·I − A)`, coefficients from degree 0
    /// upward, by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<BigRational> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = RatMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = &next[(i, i)] + &coeffs[n - k + 1];
                next[(i, i)] = v;
            }
            let am = self.mul(&next);
            let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[(i, i)]);
            coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
            m = next;
        }
        coeffs
    }

    /// Multiplicative order of a square matrix, if at most `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let id = RatMatrix::identity(self.rows);
        let mut p = self.clone();
        for k in 1..=bound {
            if p == id {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

// ---------------------------------------------------------------------------
// Integer lattices

fn row_sub_mul(a: &mut [Vec<BigInt>], dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let (s, d) = if src < dst {
        let (lo, hi) = a.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x -= f * y;
    }
}

/// Row-style Hermite normal form restricted to the first `pivot_cols`
/// columns: unimodular row operations bring `a` into echelon form on those
/// columns, with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Returns the number of pivot rows.
fn hnf_in_place(a: &mut [Vec<BigInt>], pivot_cols: usize) -> usize {
    let nrows = a.len();
    let mut row = 0;
    for col in 0..pivot_cols {
        if row == nrows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below `row` becomes the pivot
            let best = (row..nrows)
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(best) = best else { break };
            a.swap(row, best);
            let mut done = true;
            for r in row + 1..nrows {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[row][col]);
                row_sub_mul(a, r, row, &q);
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[row][col].is_zero() {
            continue;
        }
        if a[row][col].is_negative() {
            for x in a[row].iter_mut() {
                *x = -x.clone();
            }
        }
        for r in 0..row {
            let q = a[r][col].div_floor(&a[row][col]);
            row_sub_mul(a, r, row, &q);
        }
        row += 1;
    }
    row
}

/// Canonical (Hermite normal form) basis of the `Z`-span of the given
/// integer vectors, each of length `dim`.
pub fn lattice_basis(dim: usize, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = gens.to_vec();
    let rank = hnf_in_place(&mut a, dim);
    a.truncate(rank);
    a
}

/// Saturated canonical basis of `{x ∈ Z^n : A·x = 0}`.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    // rows of [Aᵀ | I]; unimodular row reduction on the Aᵀ part
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..m).map(|r| a[r][i].clone()).collect();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let rank = hnf_in_place(&mut aug, m);
    let kernel: Vec<Vec<BigInt>> = aug[rank..].iter().map(|r| r[m..].to_vec()).collect();
    lattice_basis(n, &kernel)
}

/// Basis of `{x ∈ Z^r : M·x ≡ 0 (mod p)}` as canonical row vectors.
pub fn congruence_sublattice(mm: &[Vec<BigInt>], r: usize, p: &BigInt) -> Vec<Vec<BigInt>> {
    if p.is_one() || mm.is_empty() {
        return lattice_basis(
            r,
            &(0..r)
                .map(|i| (0..r).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect::<Vec<_>>(),
        );
    }
    let k = mm.len();
    // kernel of [M | p·I] projected to the first r coordinates
    let stacked: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut row = mm[i].clone();
            row.extend((0..k).map(|j| if i == j { p.clone() } else { BigInt::zero() }));
            row
        })
        .collect();
    let ker = integer_kernel(&stacked, r + k);
    let proj: Vec<Vec<BigInt>> = ker.iter().map(|v| v[..r].to_vec()).collect();
    lattice_basis(r, &proj)
}

/// Elementary divisors (nonzero Smith invariants) of an integer matrix.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_big();
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero()
                    && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap(t, br);
        for row in a.iter_mut() {
            row.swap(t, bc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            let q = a[r][t].div_floor(&a[t][t]);
            row_sub_mul(&mut a, r, t, &q);
            if !a[r][t].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            let q = a[t][c].div_floor(&a[t][t]);
            for row in a.iter_mut() {
                let v = &row[c] - &q * &row[t];
                row[c] = v;
            }
            if !a[t][c].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition: pivot must divide the rest
        let piv = a[t][t].clone();
        let bad = (t + 1..rows).find_map(|r| {
            (t + 1..cols).find(|&c| !(&a[r][c] % &piv).is_zero()).map(|c| (r, c))
        });
        if let Some((r, _)) = bad {
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in top[t][t..cols].iter_mut().zip(&rest[0][t..cols]) {
                *x += y;
            }
            continue;
        }
        out.push(piv.abs());
        t += 1;
    }
    out
}

pub fn big_rows_to_columns(dim: usize, rows: &[Vec<BigInt>]) -> Option<IntMatrix> {
    let mut m = IntMatrix::zeros(dim, rows.len());
    for (c, v) in rows.iter().enumerate() {
        for r in 0..dim {
            m[(r, c)] = v[r].to_i64()?;
        }
    }
    Some(m)
}
