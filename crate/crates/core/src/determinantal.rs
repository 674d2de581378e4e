//! Minors, signed maximal minors, sign functions, generalized permanents, `det_λ`, and the
//! `GL_m x GL_n` action on polynomials.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Poly, Rational, RationalMatrix, Shape};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// A strictly increasing set of positive indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts and deduplicates; zero is not a valid index.
    pub fn new<I: IntoIterator<Item = usize>>(items: I) -> Result<Self> {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.first() == Some(&0) {
            return Err(Error::IndexOutOfRange { index: 0, bound: usize::MAX });
        }
        Ok(IndexSet(v))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{1, ..., n}`.
    pub fn range(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet::new([i]).unwrap()
    }

    /// All subsets of `{1..n}` of size `k`, in lexicographic order.
    pub fn subsets(n: usize, k: usize) -> Vec<IndexSet> {
        (1..=n).combinations(k).map(IndexSet).collect()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Complement inside `{1..universe}`.
    pub fn complement(&self, universe: usize) -> IndexSet {
        IndexSet((1..=universe).filter(|i| !self.contains(*i)).collect())
    }

    pub fn without(&self, i: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&a| a != i).collect())
    }

    pub fn with(&self, i: usize) -> IndexSet {
        IndexSet::new(self.0.iter().copied().chain([i])).unwrap()
    }

    /// `sum of elements`, the exponent in `(-1)^A`.
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    fn check_within(&self, bound: usize) -> Result<()> {
        match self.largest() {
            Some(index) if index > bound => Err(Error::IndexOutOfRange { index, bound }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::SizeMismatch(format!("index set {v:?} is not strictly increasing")));
        }
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Vec<usize> {
        s.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `0` if the sets meet, otherwise `(-1)^#{(a, b) in A x B : a > b}`.
pub fn rho(a: &[usize], b: &[usize]) -> i32 {
    if a.iter().any(|x| b.contains(x)) {
        return 0;
    }
    let inversions = a.iter().map(|x| b.iter().filter(|y| x > y).count()).sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

type MinorKey = (Vec<usize>, Vec<usize>);

/// Memoized Laplace-expansion minors of the generic matrix of one shape.
///
/// Not `Sync`; use one instance per thread.
#[derive(Debug)]
pub struct Minors {
    shape: Shape,
    cache: RefCell<HashMap<MinorKey, Poly>>,
}

impl Minors {
    pub fn new(shape: Shape) -> Self {
        Minors { shape, cache: RefCell::new(HashMap::new()) }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Determinant of the submatrix on the given rows and columns (`X_{A,H}`).
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Poly> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows against {} columns",
                rows.len(),
                cols.len()
            )));
        }
        rows.check_within(self.shape.m)?;
        cols.check_within(self.shape.n)?;
        Ok(self.laplace(rows.as_slice(), cols.as_slice()))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> Poly {
        if rows.is_empty() {
            return Poly::one(self.shape);
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(p) = self.cache.borrow().get(&key) {
            return p.clone();
        }
        let mut det = Poly::zero(self.shape);
        let mut sub_cols = Vec::with_capacity(cols.len() - 1);
        for (k, &c) in cols.iter().enumerate() {
            sub_cols.clear();
            sub_cols.extend(cols.iter().copied().filter(|&x| x != c));
            let term = Poly::x(self.shape, rows[0], c) * self.laplace(&rows[1..], &sub_cols);
            if k.is_multiple_of(2) {
                det += &term;
            } else {
                det -= &term;
            }
        }
        self.cache.borrow_mut().insert(key, det.clone());
        det
    }

    /// `d_i`: the maximal minor obtained by deleting row `i` of an `n x (n-1)` matrix.
    pub fn maximal_minor(&self, i: usize) -> Result<Poly> {
        check_hilbert_burch(&self.shape)?;
        let n = self.shape.m;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        self.minor(&IndexSet::singleton(i).complement(n), &IndexSet::range(n - 1))
    }

    /// `Δ_i = (-1)^i d_i`.
    pub fn signed_minor(&self, i: usize) -> Result<Poly> {
        Ok(self.maximal_minor(i)?.scale(&sign(i)))
    }

    /// `d^α = prod_i d_i^{α_i}`.
    pub fn minor_power(&self, alpha: &[u32]) -> Result<Poly> {
        self.power_product(alpha, false)
    }

    /// `Δ^α = prod_i Δ_i^{α_i}`.
    pub fn signed_minor_power(&self, alpha: &[u32]) -> Result<Poly> {
        self.power_product(alpha, true)
    }

    fn power_product(&self, alpha: &[u32], signed: bool) -> Result<Poly> {
        check_hilbert_burch(&self.shape)?;
        if alpha.len() != self.shape.m {
            return Err(Error::SizeMismatch(format!(
                "exponent vector of length {} for {} minors",
                alpha.len(),
                self.shape.m
            )));
        }
        let mut out = Poly::one(self.shape);
        for (i, &e) in alpha.iter().enumerate() {
            if e > 0 {
                let base =
                    if signed { self.signed_minor(i + 1)? } else { self.maximal_minor(i + 1)? };
                out = &out * &base.pow(e);
            }
        }
        Ok(out)
    }
}

/// All exponent vectors of length `len` with entries summing to `total`, in lexicographic
/// order (largest first entry last).
pub fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, total, &mut vec![0; len], &mut out);
    out
}

fn check_hilbert_burch(shape: &Shape) -> Result<()> {
    if shape.m != shape.n + 1 {
        return Err(Error::InvalidShape { m: shape.m, n: shape.n });
    }
    Ok(())
}

/// Determinant of `X_{rows, cols}`.
pub fn minor(shape: Shape, rows: &IndexSet, cols: &IndexSet) -> Result<Poly> {
    Minors::new(shape).minor(rows, cols)
}

/// Signed maximal minor `Δ_i` of an `n x (n-1)` matrix.
pub fn signed_minor(shape: Shape, i: usize) -> Result<Poly> {
    Minors::new(shape).signed_minor(i)
}

/// Determinant of the square matrix `[x[rows[a], cols[b]]]` by the permutation expansion.
/// Rows may repeat, in which case the result is zero.
pub fn leibniz_det(shape: Shape, rows: &[usize], cols: &[usize]) -> Result<Poly> {
    permutation_sum(shape, rows, cols, true)
}

/// Permanent of the square matrix `[x[rows[a], cols[b]]]`.
pub fn permanent(shape: Shape, rows: &[usize], cols: &[usize]) -> Result<Poly> {
    permutation_sum(shape, rows, cols, false)
}

fn permutation_sum(shape: Shape, rows: &[usize], cols: &[usize], signed: bool) -> Result<Poly> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(format!("{} rows, {} columns", rows.len(), cols.len())));
    }
    let mut idx = Vec::with_capacity(rows.len());
    for &r in rows {
        for &c in cols {
            idx.push(shape.x_index(r, c)?);
        }
    }
    let k = rows.len();
    let mut terms = Vec::new();
    for perm in (0..k).permutations(k) {
        let mut exps = vec![0u16; shape.num_vars()];
        for (a, &b) in perm.iter().enumerate() {
            exps[idx[a * k + b]] += 1;
        }
        let inversions = (0..k).tuple_combinations().filter(|&(a, b)| perm[a] > perm[b]).count();
        let c = if signed { sign(inversions) } else { Rational::one() };
        terms.push((Monomial::from_exponents(exps), c));
    }
    Ok(Poly::from_terms(shape, terms))
}

/// `Y_{A,H,i}`: determinant of row `i` restricted to the columns `H^c`, stacked over the
/// submatrix on rows `A^c` and columns `H^c`, for an `n x (n-1)` matrix.
pub fn y_polynomial(shape: Shape, a: &IndexSet, h: &IndexSet, i: usize) -> Result<Poly> {
    check_hilbert_burch(&shape)?;
    let n = shape.m;
    let r = a.len();
    if r < 2 || r > n || h.len() + 2 != r {
        return Err(Error::SizeMismatch(format!("#A = {r}, #H = {} (need #H = #A - 2)", h.len())));
    }
    a.check_within(n)?;
    h.check_within(n - 1)?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    let mut rows = vec![i];
    rows.extend_from_slice(a.complement(n).as_slice());
    leibniz_det(shape, &rows, h.complement(n - 1).as_slice())
}

/// Checks `ρ({α}, A \ {α}) ρ({α}, A^c) = (-1)^(α-1)` inside `{1..universe}`.
pub fn sign_identity_check(alpha: usize, a: &IndexSet, universe: usize) -> Result<bool> {
    if !a.contains(alpha) {
        return Err(Error::SizeMismatch(format!("{alpha} is not an element of {a}")));
    }
    a.check_within(universe)?;
    let lhs = rho(&[alpha], a.without(alpha).as_slice())
        * rho(&[alpha], a.complement(universe).as_slice());
    let rhs = if (alpha - 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(lhs == rhs)
}

/// A generalized permanent together with its row and column multi-indices.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedPermanent {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: Poly,
}

/// Permanents of all `t x t` matrices `[x[α_a, β_b]]` with weakly increasing `α`, `β`,
/// enumerated with `α` outer and `β` inner, duplicates and scalar multiples retained.
pub fn generalized_permanents_indexed(shape: Shape, t: usize) -> Result<Vec<GeneralizedPermanent>> {
    let mut out = Vec::new();
    for rows in (1..=shape.m).combinations_with_replacement(t) {
        for cols in (1..=shape.n).combinations_with_replacement(t) {
            let poly = permanent(shape, &rows, &cols)?;
            out.push(GeneralizedPermanent { rows: rows.clone(), cols, poly });
        }
    }
    Ok(out)
}

pub fn generalized_permanents(shape: Shape, t: usize) -> Result<Vec<Poly>> {
    Ok(generalized_permanents_indexed(shape, t)?.into_iter().map(|g| g.poly).collect())
}

/// `det_λ = prod_i det_{λ'_i}`, where `det_l` is the leading principal `l x l` minor.
pub fn det_lambda(shape: Shape, lambda: &Partition) -> Result<Poly> {
    let minors = Minors::new(shape);
    let mut out = Poly::one(shape);
    for &l in lambda.transpose().parts() {
        let l = l as usize;
        if l > shape.n {
            return Err(Error::PartTooLarge { part: l, n: shape.n });
        }
        out = &out * &minors.minor(&IndexSet::range(l), &IndexSet::range(l))?;
    }
    Ok(out)
}

/// An element `(θ_1, θ_2)` of `GL_m x GL_n` acting by `X -> θ_1 X θ_2^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlElement {
    shape: Shape,
    left: RationalMatrix,
    right: RationalMatrix,
    left_inv: RationalMatrix,
    right_inv: RationalMatrix,
}

impl GlElement {
    pub fn new(shape: Shape, left: RationalMatrix, right: RationalMatrix) -> Result<Self> {
        if left.rows() != shape.m || left.cols() != shape.m {
            return Err(Error::SizeMismatch(format!("left factor must be {0}x{0}", shape.m)));
        }
        if right.rows() != shape.n || right.cols() != shape.n {
            return Err(Error::SizeMismatch(format!("right factor must be {0}x{0}", shape.n)));
        }
        let left_inv = left.inverse()?;
        let right_inv = right.inverse()?;
        Ok(GlElement { shape, left, right, left_inv, right_inv })
    }

    pub fn identity(shape: Shape) -> Self {
        GlElement::new(shape, RationalMatrix::identity(shape.m), RationalMatrix::identity(shape.n))
            .unwrap()
    }

    pub fn left(&self) -> &RationalMatrix {
        &self.left
    }

    pub fn right(&self) -> &RationalMatrix {
        &self.right
    }

    /// `x[i,j] -> sum_{k,l} a[i,k] x[k,l] b[l,j]`.
    fn sandwich(&self, a: &RationalMatrix, b: &RationalMatrix) -> BTreeMap<(usize, usize), Poly> {
        let s = self.shape;
        let mut map = BTreeMap::new();
        for i in 1..=s.m {
            for j in 1..=s.n {
                let mut terms = Vec::new();
                for k in 1..=s.m {
                    let aik = &a[(i - 1, k - 1)];
                    if aik.is_zero() {
                        continue;
                    }
                    for l in 1..=s.n {
                        let c = aik * &b[(l - 1, j - 1)];
                        let idx = s.x_index(k, l).unwrap();
                        terms.push((Monomial::var(&s, idx, 1), c));
                    }
                }
                map.insert((i, j), Poly::from_terms(s, terms));
            }
        }
        map
    }

    /// Action on `R`: `X -> θ_1 X θ_2^{-1}`.
    pub fn act(&self, p: &Poly) -> Result<Poly> {
        p.substitute_linear(&self.sandwich(&self.left, &self.right_inv))
    }

    /// Contragredient action on operator bodies: `X* -> (θ_1^{-1})^T X* θ_2^T`.
    pub fn act_dual(&self, p: &Poly) -> Result<Poly> {
        p.substitute_linear(&self.sandwich(&self.left_inv.transpose(), &self.right.transpose()))
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<i64>> =
            (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let m = RationalMatrix::from_i64(&rows).unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

/// Seeded random element of `GL_m x GL_n` with integer entries in `[-3, 3]`.
pub fn gl_random_element(shape: Shape, seed: u64) -> GlElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = random_invertible(&mut rng, shape.m);
    let right = random_invertible(&mut rng, shape.n);
    GlElement::new(shape, left, right).expect("sampled factors are invertible")
}
