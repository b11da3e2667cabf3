//! Dense matrices over an exact [`Ring`].

use std::fmt;

use crate::scalar::{LaurentPoly, Rational, Ring, ScalarError};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Matrices acting on a graded module, symbolic in `t`.
pub type RepMatrix = Matrix<LaurentPoly>;

impl<T: Ring> Matrix<T> {
    /// All-zero matrix; `like` supplies the scalar context.
    pub fn zeros(dim: usize, like: &T) -> Self {
        Self::zeros_rect(dim, dim, like)
    }

    pub fn zeros_rect(rows: usize, cols: usize, like: &T) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![like.zero_like(); rows * cols],
        }
    }

    pub fn identity(dim: usize, like: &T) -> Self {
        let mut m = Self::zeros(dim, like);
        for i in 0..dim {
            m.set(i, i, like.one_like());
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_fn_rect(dim, dim, f)
    }

    pub fn from_fn_rect(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        assert_eq!(self.rows, self.cols, "dim() on a non-square matrix");
        self.rows
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero)
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let like = self.entries.first().or(other.entries.first());
        let Some(like) = like else {
            return Self::from_fn_rect(self.rows, other.cols, |_, _| unreachable!());
        };
        let mut out = Self::zeros_rect(self.rows, other.cols, like);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// `self * other - c * other * self`.
    pub fn quommutator(&self, other: &Self, c: &T) -> Self {
        self.mul(other).sub(&other.mul(self).scale(c))
    }

    /// `self * other + c * other * self`.
    pub fn antiquommutator(&self, other: &Self, c: &T) -> Self {
        self.mul(other).add(&other.mul(self).scale(c))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let like = self
            .entries
            .first()
            .or(other.entries.first())
            .expect("nonempty");
        let mut out = Self::zeros_rect(self.rows + other.rows, self.cols + other.cols, like);
        out.put_block(0, 0, self);
        out.put_block(self.rows, self.cols, other);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn put_block(&mut self, row: usize, col: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn_rect(rows, cols, |i, j| self.get(row + i, col + j).clone())
    }
}

impl RepMatrix {
    /// Exact evaluation at `q = t^2`.
    pub fn evaluate_at_q(&self, q: &Rational) -> Result<Matrix<Rational>, ScalarError> {
        self.try_map(|e| e.evaluate_at_q(q))
    }

    /// Exact evaluation at a value of `t` itself.
    pub fn evaluate_at_t(&self, t: &Rational) -> Result<Matrix<Rational>, ScalarError> {
        let a = crate::scalar::Assignment::new().with("t", t.clone());
        self.try_map(|e| e.evaluate(&a))
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_fn(rows.len(), |i, j| rational(rows[i][j], 1))
    }

    #[test]
    fn product_and_brackets() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let b = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[1, 0], &[0, 0]]));
        assert_eq!(
            a.antiquommutator(&b, &rational(1, 1)),
            m(&[&[1, 0], &[0, 1]])
        );
        assert_eq!(a.quommutator(&b, &rational(1, 1)), m(&[&[1, 0], &[0, -1]]));
        let id = Matrix::identity(2, &rational(0, 1));
        assert_eq!(a.mul(&id), a);
    }

    #[test]
    fn direct_sum_layout() {
        let a = m(&[&[2]]);
        let b = m(&[&[0, 1], &[3, 0]]);
        let s = a.direct_sum(&b);
        assert_eq!(s, m(&[&[2, 0, 0], &[0, 0, 1], &[0, 3, 0]]));
        assert_eq!(s.nonzero_entries().count(), 3);
    }
}
