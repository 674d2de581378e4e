//! Constant-coefficient differential operators `f* = f(∂)`, their action on polynomials and on
//! Laurent classes of top local cohomology, and the apolar pairing.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{
    parse_terms, q, write_coefficient, x_monomials, Monomial, Poly, Rational, Shape, VarId,
};
use crate::determinantal::Minors;
use crate::error::{Error, Result};

/// `β (β - 1) ... (β - k + 1)`.
fn falling(beta: i64, k: u32) -> Rational {
    (0..k as i64).fold(Rational::one(), |acc, j| acc * q(beta - j))
}

/// The operator obtained from an x-polynomial by `x[i,j] -> ∂/∂x[i,j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarOperator {
    body: Poly,
}

impl StarOperator {
    pub fn new(body: Poly) -> Result<Self> {
        if !body.is_x_only() {
            return Err(Error::ReesVariable);
        }
        Ok(StarOperator { body })
    }

    pub fn identity(shape: Shape) -> Self {
        StarOperator { body: Poly::one(shape) }
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn shape(&self) -> Shape {
        self.body.shape()
    }

    /// `f* • g` by term-wise differentiation.
    pub fn apply(&self, g: &Poly) -> Result<Poly> {
        self.shape().check_same(&g.shape())?;
        if !g.is_x_only() {
            return Err(Error::ReesVariable);
        }
        let nx = self.shape().num_x();
        let mut out = Poly::zero(self.shape());
        for (op, c) in self.body.terms() {
            let ope = op.exponents();
            for (mono, d) in g.terms() {
                let ge = mono.exponents();
                if (0..nx).any(|k| ope[k] > ge[k]) {
                    continue;
                }
                let mut coeff = c * d;
                let mut exps = ge.to_vec();
                for k in 0..nx {
                    if ope[k] > 0 {
                        coeff *= falling(ge[k] as i64, ope[k] as u32);
                        exps[k] -= ope[k];
                    }
                }
                out.add_term(Monomial::from_exponents(exps), coeff);
            }
        }
        Ok(out)
    }

    /// `f* • c` on a Laurent class: `∂ • x^β = β x^(β - e)`.
    pub fn apply_to_laurent(&self, class: &LaurentClass) -> Result<LaurentClass> {
        self.shape().check_same(&class.shape)?;
        let nx = self.shape().num_x();
        let mut out = LaurentClass::zero(self.shape());
        for (op, c) in self.body.terms() {
            let ope = op.exponents();
            for (beta, d) in &class.terms {
                let mut coeff = c * d;
                let mut exps = beta.clone();
                for k in 0..nx {
                    if ope[k] > 0 {
                        coeff *= falling(beta[k], ope[k] as u32);
                        exps[k] -= ope[k] as i64;
                    }
                }
                out.add_term(exps, coeff);
            }
        }
        Ok(out)
    }
}

/// `⟨f*, g⟩`, the constant `f* • g` for homogeneous `f`, `g` of equal degree.
pub fn pairing(f: &Poly, g: &Poly) -> Result<Rational> {
    let df = f.homogeneous_degree();
    let dg = g.homogeneous_degree();
    if (!f.is_zero() && df.is_none()) || (!g.is_zero() && dg.is_none()) {
        return Err(Error::NotHomogeneous);
    }
    if let (Some(a), Some(b)) = (df, dg) {
        if a != b {
            return Err(Error::DegreeMismatch(a, b));
        }
    }
    Ok(StarOperator::new(f.clone())?.apply(g)?.constant_term())
}

/// A finite rational combination of Laurent monomials in the x-variables whose exponents are
/// all negative: an element of `H^{mn}_m(R)` in its Čech presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentClass {
    shape: Shape,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentClass {
    pub fn zero(shape: Shape) -> Self {
        LaurentClass { shape, terms: BTreeMap::new() }
    }

    /// `1/x̲`, every exponent `-1`.
    pub fn socle(shape: Shape) -> Self {
        let mut c = LaurentClass::zero(shape);
        c.terms.insert(vec![-1; shape.num_x()], Rational::one());
        c
    }

    pub fn from_terms<I>(shape: Shape, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Rational)>,
    {
        let mut c = LaurentClass::zero(shape);
        for (exps, coeff) in terms {
            if exps.len() != shape.num_x() {
                return Err(Error::SizeMismatch(format!(
                    "exponent vector of length {} in shape {shape}",
                    exps.len()
                )));
            }
            if exps.iter().any(|&e| e >= 0) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("Laurent exponents must all be negative, got {exps:?}"),
                });
            }
            c.add_term(exps, coeff);
        }
        Ok(c)
    }

    /// Reads the polynomial text format; every x-variable must carry a negative exponent.
    pub fn parse(shape: Shape, input: &str) -> Result<Self> {
        if input.trim() == "0" {
            return Ok(LaurentClass::zero(shape));
        }
        let mut out = Vec::new();
        for term in parse_terms(input)? {
            let mut exps = vec![0i64; shape.num_x()];
            for (var, e) in term.vars {
                if matches!(var, VarId::T(_)) {
                    return Err(Error::ReesVariable);
                }
                exps[shape.index_of(var)?] += e;
            }
            out.push((exps, term.coeff));
        }
        LaurentClass::from_terms(shape, out)
    }

    fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i64]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_exponents(&self) -> Option<&Vec<i64>> {
        self.terms.keys().next_back()
    }

    pub fn scale(&self, c: &Rational) -> LaurentClass {
        if c.is_zero() {
            return LaurentClass::zero(self.shape);
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        LaurentClass { shape: self.shape, terms }
    }

    pub fn try_add(&self, other: &LaurentClass) -> Result<LaurentClass> {
        self.shape.check_same(&other.shape)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// `p · c`: exponents add and every monomial reaching a nonnegative exponent is dropped.
    pub fn r_action(&self, p: &Poly) -> Result<LaurentClass> {
        self.shape.check_same(&p.shape())?;
        if !p.is_x_only() {
            return Err(Error::ReesVariable);
        }
        let nx = self.shape.num_x();
        let mut out = LaurentClass::zero(self.shape);
        for (mono, c) in p.terms() {
            let me = mono.exponents();
            for (beta, d) in &self.terms {
                let exps: Vec<i64> = (0..nx).map(|k| beta[k] + me[k] as i64).collect();
                if exps.iter().all(|&e| e < 0) {
                    out.add_term(exps, c * d);
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `1/x̲`.
    pub fn socle_coefficient(&self) -> Rational {
        self.coefficient(&vec![-1; self.shape.num_x()])
    }
}

/// `p · c`.
pub fn r_action(p: &Poly, class: &LaurentClass) -> Result<LaurentClass> {
    class.r_action(p)
}

impl fmt::Display for LaurentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (exps, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write_coefficient(f, c)?;
            for (idx, &e) in exps.iter().enumerate() {
                write!(f, "*{}^{}", self.shape.var_at(idx), e)?;
            }
        }
        Ok(())
    }
}

/// Largest `|s|` accepted by [`cayley_apply`].
pub const MAX_CAYLEY_DEGREE: u32 = 4;

/// `d_i* • (d_i · d^s)` for the maximal minors of the generic `n x (n-1)` matrix.
pub fn cayley_apply(n: usize, s: &[u32], i: usize) -> Result<Poly> {
    let (minors, _) = cayley_setup(n, s)?;
    let di = minors.maximal_minor(i)?;
    let target = &di * &minors.minor_power(s)?;
    StarOperator::new(di)?.apply(&target)
}

fn cayley_setup(n: usize, s: &[u32]) -> Result<(Minors, u32)> {
    let shape = Shape::hilbert_burch(n)?;
    let total: u32 = s.iter().sum();
    if total > MAX_CAYLEY_DEGREE {
        return Err(Error::Infeasible(format!(
            "|s| = {total} exceeds the bound {MAX_CAYLEY_DEGREE}"
        )));
    }
    Ok((Minors::new(shape), total))
}

/// Outcome of comparing `d_i* • (d_i · d^s)` against `d^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyObservation {
    pub n: usize,
    pub s: Vec<u32>,
    pub i: usize,
    /// `Some(c)` when the result is exactly `c · d^s`.
    pub scalar: Option<Rational>,
    /// `(s_i + 1)(|s| + 2) ... (|s| + n)`.
    pub product_to_s_plus_n: Rational,
    /// `(s_i + 1)(|s| + 2) ... (|s| + n - 1)`.
    pub product_to_s_plus_n_minus_1: Rational,
}

impl CayleyObservation {
    pub fn is_proportional(&self) -> bool {
        self.scalar.is_some()
    }
}

pub fn cayley_observe(n: usize, s: &[u32], i: usize) -> Result<CayleyObservation> {
    let (minors, total) = cayley_setup(n, s)?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    let result = cayley_apply(n, s, i)?;
    let ds = minors.minor_power(s)?;
    let (lead_mono, lead_coeff) = ds.leading_term().expect("products of minors are nonzero");
    let c = result.coefficient(lead_mono) / lead_coeff;
    let scalar = (ds.scale(&c) == result).then_some(c);
    let head = q(s[i - 1] as i64 + 1);
    let tail = |upper: usize| -> Rational {
        (2..=upper).fold(Rational::one(), |acc, k| acc * q(total as i64 + k as i64))
    };
    Ok(CayleyObservation {
        n,
        s: s.to_vec(),
        i,
        scalar,
        product_to_s_plus_n: &head * tail(n),
        product_to_s_plus_n_minus_1: &head * tail(n - 1),
    })
}

/// The two sides of the Fourier-transform equivalence for one `(f, α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierCheck {
    /// Every `μ f` (`μ` a monomial) kills `(d^α)* • 1/x̲`.
    pub laurent_side: bool,
    /// `f* • d^α = 0`.
    pub operator_side: bool,
}

impl FourierCheck {
    pub fn agrees(&self) -> bool {
        self.laurent_side == self.operator_side
    }
}

/// `(d^α)* • 1/x̲` for the `n x (n-1)` generic matrix.
pub fn minor_power_class(minors: &Minors, alpha: &[u32]) -> Result<LaurentClass> {
    let op = StarOperator::new(minors.minor_power(alpha)?)?;
    op.apply_to_laurent(&LaurentClass::socle(minors.shape()))
}

/// Whether `R f` annihilates `class`. Only monomials `μ` dividing the lcm of the numerators
/// `x^(-β - 1)` of the class can act nontrivially, so those are the ones tried.
pub fn annihilates_module(f: &Poly, class: &LaurentClass) -> Result<bool> {
    let shape = class.shape();
    let nx = shape.num_x();
    let mut bound = vec![0i64; nx];
    for (beta, _) in class.terms() {
        for k in 0..nx {
            bound[k] = bound[k].max(-beta[k] - 1);
        }
    }
    let top: i64 = bound.iter().sum();
    for d in 0..=top as u32 {
        for mu in x_monomials(&shape, d) {
            if (0..nx).any(|k| mu.exponents()[k] as i64 > bound[k]) {
                continue;
            }
            let mf = f * &Poly::monomial(shape, mu, Rational::one());
            if !class.r_action(&mf)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Computes both sides of `f · R · (d^α)* • 1/x̲ = 0  <=>  f* • d^α = 0` independently.
pub fn fourier_equivalence_check(f: &Poly, alpha: &[u32], n: usize, t: usize) -> Result<FourierCheck> {
    let total: u32 = alpha.iter().sum();
    if t + 1 < n || total as usize != t + 1 - n {
        return Err(Error::SizeMismatch(format!("|α| = {total} but t - n + 1 = {}", t as i64 + 1 - n as i64)));
    }
    let minors = Minors::new(Shape::hilbert_burch(n)?);
    minors.shape().check_same(&f.shape())?;
    let class = minor_power_class(&minors, alpha)?;
    let laurent_side = annihilates_module(f, &class)?;
    let operator_side = StarOperator::new(f.clone())?.apply(&minors.minor_power(alpha)?)?.is_zero();
    Ok(FourierCheck { laurent_side, operator_side })
}
