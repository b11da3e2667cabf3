//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Row-major rectangular matrix used for linear systems.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Dense {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduces to reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != lead {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, lead * self.cols + c);
                }
            }
            let inv = self.get(lead, col).recip();
            for c in col..self.cols {
                let v = self.get(lead, c) * &inv;
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r == lead || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let sub = self.get(lead, c) * &factor;
                    if sub.is_zero() {
                        continue;
                    }
                    let v = self.get(r, c) - sub;
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, with the free
    /// variable set to 1.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (c, slot) in is_pivot.iter().enumerate() {
                if let Some(row) = slot {
                    v[c] = -m.get(*row, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally maintained row-echelon basis of a subspace of `Q^n`.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis, returning the residual.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        assert_eq!(v.len(), self.len);
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= r * &f;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // keep rows fully reduced with respect to the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= r * &f;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Rational]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn d(rows: &[&[i64]]) -> Dense {
        Dense::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(d(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(d(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(d(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(d(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = d(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for r in 0..a.rows {
            let dot: Rational = a.row(r).iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(ns[0], vec![rational(1, 1), rational(-2, 1), rational(1, 1)]);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut b = EchelonBasis::new(3);
        let v = |x: &[i64]| x.iter().map(|&k| rational(k, 1)).collect::<Vec<_>>();
        assert!(b.insert(v(&[1, 1, 0])));
        assert!(b.insert(v(&[0, 1, 1])));
        assert!(!b.insert(v(&[1, 2, 1])));
        assert!(b.contains(&v(&[2, 3, 1])));
        assert!(!b.contains(&v(&[0, 0, 1])));
        assert!(b.insert(v(&[0, 0, 5])));
        assert_eq!(b.rank(), 3);
    }
}
