use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use itertools::{EitherOrBoth, Itertools};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::shape::{Shape, VarId};
use super::Rational;
use crate::error::{Error, Result};

/// Dense exponent vector over the variables of a [`Shape`], in the fixed variable order.
///
/// The derived ordering is lexicographic with `x[1,1]` most significant, which is a
/// monomial order; it fixes printing order and matrix column order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(shape: &Shape) -> Self {
        Monomial(vec![0; shape.num_vars()])
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn var(shape: &Shape, index: usize, exp: u16) -> Self {
        let mut e = vec![0; shape.num_vars()];
        e[index] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn x_degree(&self, shape: &Shape) -> u32 {
        self.0[..shape.num_x()].iter().map(|&e| e as u32).sum()
    }

    pub fn t_degree(&self, shape: &Shape) -> u32 {
        self.0[shape.num_x()..].iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of polynomials.
/// The zero polynomial has no terms and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    shape: Shape,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(shape: Shape) -> Self {
        Poly { shape, terms: BTreeMap::new() }
    }

    pub fn one(shape: Shape) -> Self {
        Poly::constant(shape, Rational::one())
    }

    pub fn constant(shape: Shape, c: Rational) -> Self {
        let mut p = Poly::zero(shape);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(&shape), c);
        }
        p
    }

    pub fn from_int(shape: Shape, c: i64) -> Self {
        Poly::constant(shape, Rational::from_integer(c.into()))
    }

    pub fn var(shape: Shape, var: VarId) -> Result<Self> {
        let idx = shape.index_of(var)?;
        Ok(Poly::monomial(shape, Monomial::var(&shape, idx, 1), Rational::one()))
    }

    /// The variable `x[i,j]`. Panics when the index lies outside the shape.
    pub fn x(shape: Shape, i: usize, j: usize) -> Self {
        Poly::var(shape, VarId::X { row: i, col: j }).expect("x index out of range")
    }

    /// The Rees variable `T[k]`. Panics when the index lies outside the shape.
    pub fn t(shape: Shape, k: usize) -> Self {
        Poly::var(shape, VarId::T(k)).expect("T index out of range")
    }

    pub fn monomial(shape: Shape, mono: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(shape);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(shape: Shape, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(shape);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(&self.shape))
    }

    /// Largest term under the lexicographic monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common total degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The common degree in the `T` variables, if every term shares it.
    pub fn t_homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.t_degree(&self.shape));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The common degree in the `x` variables, if every term shares it.
    pub fn x_homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.x_degree(&self.shape));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|m| m.t_degree(&self.shape) == 0)
    }

    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = add_coeff(o.get(), &c);
                *o.get_mut() = sum;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.shape);
        }
        Poly {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), mul_coeff(k, c))).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.shape.check_same(&other.shape)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.shape.check_same(&other.shape)?;
        Ok(self.merge(other, true))
    }

    /// `self ± other` by a single pass over both sorted term lists.
    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let rhs = |c: &Rational| if negate { -c } else { c.clone() };
        let terms = self
            .terms
            .iter()
            .merge_join_by(other.terms.iter(), |a, b| a.0.cmp(b.0))
            .filter_map(|pair| match pair {
                EitherOrBoth::Left((m, c)) => Some((m.clone(), c.clone())),
                EitherOrBoth::Right((m, c)) => Some((m.clone(), rhs(c))),
                EitherOrBoth::Both((m, a), (_, b)) => {
                    let c = if negate { sub_coeff(a, b) } else { add_coeff(a, b) };
                    (!c.is_zero()).then(|| (m.clone(), c))
                }
            })
            .collect();
        Poly { shape: self.shape, terms }
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.shape.check_same(&other.shape)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.shape));
        }
        // Clear denominators so the inner loop runs on machine integers when they fit.
        let (da, ia) = self.integer_form();
        let (db, ib) = other.integer_form();
        let scale = Rational::new(BigInt::one(), da * db);
        let terms = match (small_ints(&ia), small_ints(&ib)) {
            (Some(sa), Some(sb)) => mul_small(&sa, &sb),
            _ => None,
        }
        .unwrap_or_else(|| mul_big(&ia, &ib));
        Ok(Poly {
            shape: self.shape,
            terms: if scale.is_one() {
                terms.into_iter().map(|(m, c)| (m, Rational::from_integer(c))).collect()
            } else {
                terms.into_iter().map(|(m, c)| (m, Rational::from_integer(c) * &scale)).collect()
            },
        })
    }

    /// `(L, [(m, L c_m)])` with `L` the lcm of the coefficient denominators.
    fn integer_form(&self) -> (BigInt, Vec<(&Monomial, BigInt)>) {
        if self.terms.values().all(|c| c.is_integer()) {
            return (BigInt::one(), self.terms.iter().map(|(m, c)| (m, c.numer().clone())).collect());
        }
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self.terms.iter().map(|(m, c)| (m, c.numer() * (&l / c.denom()))).collect();
        (l, ints)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.shape);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multivariate division by a single divisor under the lexicographic order.
    /// Returns `(quotient, remainder)`; the remainder is zero whenever `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.shape.check_same(&divisor.shape)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::Singular),
        };
        let mut p = self.clone();
        let mut quotient = Poly::zero(self.shape);
        let mut remainder = Poly::zero(self.shape);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c / &lc;
                for (dm, dc) in &divisor.terms {
                    p.add_term(dm.mul(&qm), -(dc * &qc));
                }
                quotient.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Ring homomorphism sending each occurring `x[i,j]` to a linear form in the x-variables.
    /// `T` variables are left untouched.
    pub fn substitute_linear(&self, xmap: &BTreeMap<(usize, usize), Poly>) -> Result<Poly> {
        let shape = self.shape;
        let nx = shape.num_x();
        let mut images: Vec<Option<&Poly>> = vec![None; nx];
        for (idx, slot) in images.iter_mut().enumerate() {
            if let VarId::X { row, col } = shape.var_at(idx) {
                if let Some(img) = xmap.get(&(row, col)) {
                    img.shape.check_same(&shape)?;
                    if !img.is_zero()
                        && (!img.is_x_only() || img.homogeneous_degree() != Some(1))
                    {
                        return Err(Error::NotLinear(row, col));
                    }
                    *slot = Some(img);
                }
            }
        }
        for m in self.terms.keys() {
            for (idx, &e) in m.0[..nx].iter().enumerate() {
                if e > 0 && images[idx].is_none() {
                    let (row, col) = match shape.var_at(idx) {
                        VarId::X { row, col } => (row, col),
                        VarId::T(_) => unreachable!(),
                    };
                    return Err(Error::MissingAssignment(row, col));
                }
            }
        }
        let mut powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero(shape);
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            rest[..nx].iter_mut().for_each(|e| *e = 0);
            let mut term = Poly::monomial(shape, Monomial(rest), c.clone());
            for (idx, &e) in m.0[..nx].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((idx, e))
                    .or_insert_with(|| images[idx].unwrap().pow(e as u32));
                term = &term * &*pw;
            }
            out += &term;
        }
        Ok(out)
    }

    /// Substitutes `T[k] -> images[k-1]` for every Rees variable.
    pub fn substitute_t(&self, images: &[Poly]) -> Result<Poly> {
        let shape = self.shape;
        if images.len() != shape.num_t() {
            return Err(Error::SizeMismatch(format!(
                "{} images for {} Rees variables",
                images.len(),
                shape.num_t()
            )));
        }
        for img in images {
            img.shape.check_same(&shape)?;
        }
        let nx = shape.num_x();
        let mut out = Poly::zero(shape);
        for (m, c) in &self.terms {
            let mut xs = m.0.clone();
            xs[nx..].iter_mut().for_each(|e| *e = 0);
            let mut term = Poly::monomial(shape, Monomial(xs), c.clone());
            for (k, &e) in m.0[nx..].iter().enumerate() {
                if e > 0 {
                    term = &term * &images[k].pow(e as u32);
                }
            }
            out += &term;
        }
        Ok(out)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomials from different shape contexts")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.shape.check_same(&rhs.shape).expect("polynomials from different shape contexts");
        if rhs.terms.len() * 8 < self.terms.len() {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), c.clone());
            }
        } else {
            *self = self.merge(rhs, false);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.shape.check_same(&rhs.shape).expect("polynomials from different shape contexts");
        if rhs.terms.len() * 8 < self.terms.len() {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), -c);
            }
        } else {
            *self = self.merge(rhs, true);
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

// Integer coefficients skip the gcd normalization of general rational arithmetic.
fn add_coeff(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn sub_coeff(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

fn mul_coeff(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn small_ints<'a>(terms: &[(&'a Monomial, BigInt)]) -> Option<Vec<(&'a Monomial, i128)>> {
    terms.iter().map(|(m, c)| Some((*m, c.to_i64()? as i128))).collect()
}

/// Exponent vectors of at most 16 variables packed one byte per variable, valid while every
/// exponent of the product stays below 256.
struct Packing {
    len: usize,
}

impl Packing {
    fn for_product(a: &[(&Monomial, i128)], b: &[(&Monomial, i128)]) -> Option<Packing> {
        let len = a.first()?.0 .0.len();
        if len > 16 {
            return None;
        }
        let top = |t: &[(&Monomial, i128)]| t.iter().flat_map(|(m, _)| m.0.iter().copied()).max();
        if top(a)? as u32 + top(b)? as u32 >= 256 {
            return None;
        }
        Some(Packing { len })
    }

    fn pack(&self, m: &Monomial) -> u128 {
        m.0.iter().fold(0u128, |acc, &e| (acc << 8) | e as u128)
    }

    fn unpack(&self, mut key: u128) -> Monomial {
        let mut e = vec![0u16; self.len];
        for slot in e.iter_mut().rev() {
            *slot = (key & 0xff) as u16;
            key >>= 8;
        }
        Monomial(e)
    }
}

fn mul_small(a: &[(&Monomial, i128)], b: &[(&Monomial, i128)]) -> Option<Vec<(Monomial, BigInt)>> {
    if let Some(p) = Packing::for_product(a, b) {
        let pa: Vec<(u128, i128)> = a.iter().map(|(m, c)| (p.pack(m), *c)).collect();
        let pb: Vec<(u128, i128)> = b.iter().map(|(m, c)| (p.pack(m), *c)).collect();
        let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
        acc.reserve(a.len().max(b.len()));
        for (ka, ca) in &pa {
            for (kb, cb) in &pb {
                let slot = acc.entry(ka + kb).or_insert(0);
                *slot = slot.checked_add(ca * cb)?;
            }
        }
        // Byte-packed keys compare like the exponent vectors, so sorting here hands the map
        // an already ordered sequence.
        let mut out: Vec<(u128, i128)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort_unstable_by_key(|(k, _)| *k);
        return Some(out.into_iter().map(|(k, c)| (p.unpack(k), BigInt::from(c))).collect());
    }
    let mut acc: FxHashMap<Monomial, i128> = FxHashMap::default();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let slot = acc.entry(ma.mul(mb)).or_insert(0);
            *slot = slot.checked_add(ca * cb)?;
        }
    }
    Some(acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, BigInt::from(c))).collect())
}

fn mul_big(a: &[(&Monomial, BigInt)], b: &[(&Monomial, BigInt)]) -> Vec<(Monomial, BigInt)> {
    let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for (ma, ca) in a {
        for (mb, cb) in b {
            *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_negative() {
        write!(f, "-{}", c.abs())
    } else {
        write!(f, "{c}")
    }
}

/// Canonical text form: terms in descending monomial order joined by `" + "`, each written
/// `c*x[i,j]^e*...*T[k]^e` with the coefficient always present.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write_coefficient(f, c)?;
            for (idx, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "*{}^{}", self.shape.var_at(idx), e)?;
                }
            }
        }
        Ok(())
    }
}
