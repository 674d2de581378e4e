use std::fmt;

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        Ok(out)
    }

    /// Row-reduces a copy to echelon form; returns the pivot count and the sign-tracked
    /// product of pivots (the determinant when square and of full rank).
    fn eliminate(&self) -> (usize, Rational) {
        let mut a = self.clone();
        let mut rank = 0;
        let mut det = Rational::one();
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            if p != rank {
                a.swap_rows(p, rank);
                det = -det;
            }
            let pivot = a[(rank, col)].clone();
            det *= &pivot;
            for r in rank + 1..a.rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &pivot;
                for c in col..a.cols {
                    let v = &factor * &a[(rank, c)];
                    a[(r, c)] -= v;
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Rank by Gaussian elimination on rows.
    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Rank by Gaussian elimination on columns, an independent route to [`Self::rank`].
    pub fn rank_by_columns(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for row in 0..a.rows {
            if rank == a.cols {
                break;
            }
            let Some(p) = (rank..a.cols).find(|&c| !a[(row, c)].is_zero()) else {
                continue;
            };
            if p != rank {
                for r in 0..a.rows {
                    a.data.swap(r * a.cols + p, r * a.cols + rank);
                }
            }
            let pivot = a[(row, rank)].clone();
            for c in rank + 1..a.cols {
                if a[(row, c)].is_zero() {
                    continue;
                }
                let factor = &a[(row, c)] / &pivot;
                for r in row..a.rows {
                    let v = &factor * &a[(r, rank)];
                    a[(r, c)] -= v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch("determinant of a non-square matrix".into()));
        }
        let (rank, det) = self.eliminate();
        Ok(if rank < self.rows { Rational::zero() } else { det })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] /= &pivot;
                inv[(col, c)] /= &pivot;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..n {
                    let va = &factor * &a[(col, c)];
                    a[(r, c)] -= va;
                    let vi = &factor * &inv[(col, c)];
                    inv[(r, c)] -= vi;
                }
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_and_determinant() {
        let m = RationalMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant().unwrap(), Rational::zero());
        let m = RationalMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.determinant().unwrap(), Rational::one());
        assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), RationalMatrix::identity(2));
    }

    #[test]
    fn singular_inverse_fails() {
        let m = RationalMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    proptest! {
        #[test]
        fn row_and_column_rank_agree(
            rows in 1usize..6,
            cols in 1usize..6,
            seed in proptest::collection::vec(-2i64..=2, 36),
        ) {
            let data: Vec<Vec<i64>> =
                (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let m = RationalMatrix::from_i64(&data).unwrap();
            let r = m.rank();
            prop_assert!(r <= rows.min(cols));
            prop_assert_eq!(r, m.rank_by_columns());
            prop_assert_eq!(r, m.transpose().rank());
        }
    }
}
