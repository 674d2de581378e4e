use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of the generic matrix `X = (x[i,j])`, `1 <= i <= m`, `1 <= j <= n`.
///
/// Every polynomial lives in the ring `Q[x[i,j], T[k]]` attached to a shape,
/// with one Rees variable `T[k]` per row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n == 0 || m < n {
            return Err(Error::InvalidShape { m, n });
        }
        Ok(Shape { m, n })
    }

    /// The `n x (n-1)` matrix of the Hilbert-Burch setting.
    pub fn hilbert_burch(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidShape { m: n, n: n.saturating_sub(1) });
        }
        Shape::new(n, n - 1)
    }

    pub fn num_x(&self) -> usize {
        self.m * self.n
    }

    pub fn num_t(&self) -> usize {
        self.m
    }

    pub fn num_vars(&self) -> usize {
        self.num_x() + self.num_t()
    }

    /// Position of `x[i,j]` (1-based) in the fixed variable order.
    pub fn x_index(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i > self.m || j == 0 || j > self.n {
            return Err(Error::VariableOutOfRange(format!("x[{i},{j}]")));
        }
        Ok((i - 1) * self.n + (j - 1))
    }

    /// Position of `T[k]` (1-based) in the fixed variable order.
    pub fn t_index(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.m {
            return Err(Error::VariableOutOfRange(format!("T[{k}]")));
        }
        Ok(self.num_x() + k - 1)
    }

    pub fn index_of(&self, var: VarId) -> Result<usize> {
        match var {
            VarId::X { row, col } => self.x_index(row, col),
            VarId::T(k) => self.t_index(k),
        }
    }

    pub fn var_at(&self, index: usize) -> VarId {
        let nx = self.num_x();
        if index < nx {
            VarId::X { row: index / self.n + 1, col: index % self.n + 1 }
        } else {
            VarId::T(index - nx + 1)
        }
    }

    pub fn check_same(&self, other: &Shape) -> Result<()> {
        if self != other {
            return Err(Error::ShapeMismatch { left: *self, right: *other });
        }
        Ok(())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

/// A ring variable. The derived order is the fixed variable order:
/// all `x` before all `T`, `x` row-major, `T` by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    X { row: usize, col: usize },
    T(usize),
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X { row, col } => write!(f, "x[{row},{col}]"),
            VarId::T(k) => write!(f, "T[{k}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order_is_row_major_then_rees() {
        let s = Shape::new(3, 2).unwrap();
        let vars: Vec<VarId> = (0..s.num_vars()).map(|i| s.var_at(i)).collect();
        let mut sorted = vars.clone();
        sorted.sort();
        assert_eq!(vars, sorted);
        assert_eq!(vars[1], VarId::X { row: 1, col: 2 });
        assert_eq!(vars[6], VarId::T(1));
        for (i, v) in vars.iter().enumerate() {
            assert_eq!(s.index_of(*v).unwrap(), i);
        }
    }

    #[test]
    fn rejects_bad_shapes_and_indices() {
        assert!(Shape::new(2, 3).is_err());
        assert!(Shape::new(1, 0).is_err());
        assert!(Shape::hilbert_burch(1).is_err());
        let s = Shape::hilbert_burch(3).unwrap();
        assert_eq!((s.m, s.n), (3, 2));
        assert!(s.x_index(4, 1).is_err());
        assert!(s.x_index(1, 3).is_err());
        assert!(s.t_index(0).is_err());
        assert!(s.t_index(4).is_err());
    }
}
