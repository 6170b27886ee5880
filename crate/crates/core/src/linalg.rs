//! Dense exact integer matrices: fraction-free determinants and Smith
//! normal form with unimodular transforms.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::ExactInt;

/// Row-major dense matrix over an exact integer scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactInt> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Converts entry-wise from `i64`.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Submatrix obtained by deleting row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows.saturating_sub(1) * self.cols.saturating_sub(1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * c.clone();
            self[(dst, j)] = self[(dst, j)].clone() + v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * c.clone();
            self[(i, dst)] = self[(i, dst)].clone() + v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)].clone();
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            self[(i, c)] = -self[(i, c)].clone();
        }
    }
}

impl<T> Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// division is exact, so with `BigInt` the result is exact for any input.
/// The determinant of a 0x0 matrix is 1.
pub fn determinant<T: ExactInt>(m: &IntMatrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)].clone() * pivot.clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num / prev.clone();
            }
            a[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let det = a[(n - 1, n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Smith normal form `P * A * Q = D` with `P`, `Q` unimodular.
///
/// `diagonal` has `min(rows, cols)` entries, nonnegative, each dividing the
/// next among the nonzero ones; zeros come last.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub diagonal: Vec<T>,
    pub p: IntMatrix<T>,
    pub p_inv: IntMatrix<T>,
    pub q: IntMatrix<T>,
    pub q_inv: IntMatrix<T>,
}

impl<T: ExactInt> SmithForm<T> {
    /// Nonzero diagonal entries different from one.
    pub fn nontrivial_factors(&self) -> Vec<T> {
        self.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

struct SmithWork<T> {
    a: IntMatrix<T>,
    p: IntMatrix<T>,
    p_inv: IntMatrix<T>,
    q: IntMatrix<T>,
    q_inv: IntMatrix<T>,
}

impl<T: ExactInt> SmithWork<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_row_multiple(dst, src, c);
        self.p.add_row_multiple(dst, src, c);
        self.p_inv.add_col_multiple(src, dst, &-c.clone());
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_col_multiple(dst, src, c);
        self.q.add_col_multiple(dst, src, c);
        self.q_inv.add_row_multiple(src, dst, &-c.clone());
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.p.negate_row(r);
        self.p_inv.negate_col(r);
    }

    /// Position of the smallest nonzero absolute value in the trailing block.
    fn smallest_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => v.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Computes the Smith normal form, pivoting on the smallest nonzero
/// absolute value of the remaining block.
pub fn smith_normal_form<T: ExactInt>(m: &IntMatrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut w = SmithWork {
        a: m.clone(),
        p: IntMatrix::identity(rows),
        p_inv: IntMatrix::identity(rows),
        q: IntMatrix::identity(cols),
        q_inv: IntMatrix::identity(cols),
    };
    let n = rows.min(cols);
    'outer: for t in 0..n {
        loop {
            let Some((pi, pj)) = w.smallest_pivot(t) else {
                break 'outer;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.a[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..rows {
                let v = w.a[(i, t)].clone();
                if v.is_zero() {
                    continue;
                }
                let quot = v.div_floor(&pivot);
                w.add_row(i, t, &-quot);
                if !w.a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let v = w.a[(t, j)].clone();
                if v.is_zero() {
                    continue;
                }
                let quot = v.div_floor(&pivot);
                w.add_col(j, t, &-quot);
                if !w.a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => w.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }

    let diagonal = (0..n).map(|i| w.a[(i, i)].clone()).collect();
    SmithForm { diagonal, p: w.p, p_inv: w.p_inv, q: w.q, q_inv: w.q_inv }
}
