//! Partitions, dominant weights and Schur-functor dimensions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest partition size handled by enumeration routines.
pub const MAX_PARTITION_SIZE: u32 = 12;

/// A partition, stored without trailing zeros so that `(2,1) == (2,1,0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(parts.iter().map(|&p| p as i64).collect()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(k)`.
    pub fn row(k: u32) -> Self {
        Partition::new(vec![k]).unwrap()
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `n`; `None` if there are more than `n` nonzero parts.
    pub fn padded(&self, n: usize) -> Option<Vec<u32>> {
        if self.0.len() > n {
            return None;
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Some(v)
    }

    /// Transpose of the Young diagram: `λ'_i = #{j : λ_j >= i}`.
    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        Partition((1..=width).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// Componentwise order: `self >= other` iff `self_i >= other_i` for every `i`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        (0..n).all(|i| self.part(i) >= other.part(i))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

/// A weakly decreasing integer vector `(λ_1 >= ... >= λ_n)` of fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(parts));
        }
        Ok(DominantWeight(parts))
    }

    pub fn from_partition(p: &Partition, n: usize) -> Option<Self> {
        p.padded(n).map(|v| DominantWeight(v.into_iter().map(i64::from).collect()))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DominantWeight::new(v)
    }
}

impl From<DominantWeight> for Vec<i64> {
    fn from(w: DominantWeight) -> Vec<i64> {
        w.0
    }
}

/// `dim S_λ(C^n)` for a dominant weight of length `n`, by the product formula
/// `prod_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn schur_dim(weight: &DominantWeight) -> BigUint {
    let l = weight.parts();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num *= BigInt::from(l[i] - l[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero() && !q.is_negative(), "Schur dimension must be a nonnegative integer");
    q.to_biguint().unwrap()
}

/// [`schur_dim`] for a partition viewed in `n` parts; zero if it has more than `n` parts.
pub fn schur_dim_partition(p: &Partition, n: usize) -> BigUint {
    match DominantWeight::from_partition(p, n) {
        Some(w) => schur_dim(&w),
        None => BigUint::zero(),
    }
}

/// Exhaustive count of semistandard Young tableaux of shape `p` with entries in `1..=n`.
pub fn ssyt_count(p: &Partition, n: usize) -> Result<u64> {
    if p.size() > MAX_PARTITION_SIZE {
        return Err(Error::Infeasible(format!(
            "tableau enumeration is limited to |λ| <= {MAX_PARTITION_SIZE}, got {}",
            p.size()
        )));
    }
    let cells: Vec<(usize, usize)> = p
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = p.parts().iter().map(|&len| vec![0; len as usize]).collect();

    fn fill(k: usize, cells: &[(usize, usize)], grid: &mut [Vec<usize>], n: usize) -> u64 {
        let Some(&(r, c)) = cells.get(k) else {
            return 1;
        };
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let mut count = 0;
        for v in lo_row.max(lo_col)..=n {
            grid[r][c] = v;
            count += fill(k + 1, cells, grid, n);
        }
        grid[r][c] = 0;
        count
    }

    Ok(fill(0, &cells, &mut grid, n))
}

/// Partitions of `size` with at most `max_parts` parts, each at most `max_part`,
/// in descending lexicographic order.
pub fn partitions(size: u32, max_parts: usize, max_part: u32) -> Result<Vec<Partition>> {
    if size > MAX_PARTITION_SIZE {
        return Err(Error::Infeasible(format!(
            "partition enumeration is limited to |λ| <= {MAX_PARTITION_SIZE}, got {size}"
        )));
    }
    fn rec(left: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, max_part, max_parts, &mut Vec::new(), &mut out);
    Ok(out)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn check_matrix_dims(m: usize, n: usize) -> Result<()> {
    if n == 0 || m < n {
        return Err(Error::InvalidShape { m, n });
    }
    Ok(())
}

/// Sum of `dim S_λ(C^m) * dim S_λ(C^n)` over partitions with at most `n` parts, every part
/// at most `max_part`, and `|λ| = r`.
pub fn bounded_cauchy_dim(m: usize, n: usize, max_part: u32, r: u32) -> Result<BigUint> {
    check_matrix_dims(m, n)?;
    Ok(partitions(r, n, max_part)?
        .iter()
        .map(|p| schur_dim_partition(p, m) * schur_dim_partition(p, n))
        .sum())
}

/// The degree-`r` piece of `Q[x]` for an `m x n` matrix, summed over its irreducible
/// `GL_m x GL_n` summands. Equals `binomial(mn + r - 1, r)`.
pub fn cauchy_dim(m: usize, n: usize, r: u32) -> Result<BigUint> {
    bounded_cauchy_dim(m, n, r, r)
}

/// Dimension predicted for the degree-`r` part of the quotient of `Q[x]` by the
/// generalized permanents of size `t - n + 1`: summands with first part at most `t - n`.
pub fn permanent_quotient_dim(m: usize, n: usize, t: u32, r: u32) -> Result<BigUint> {
    check_matrix_dims(m, n)?;
    let Some(max_part) = t.checked_sub(n as u32) else {
        return Err(Error::Infeasible(format!("need t >= n, got t = {t}, n = {n}")));
    };
    bounded_cauchy_dim(m, n, max_part, r)
}

/// Converts a small exact count to `u64`.
pub fn to_u64(v: &BigUint) -> u64 {
    v.to_u64().expect("dimension exceeds u64")
}
