//! Koszul complexes on powers of the signed maximal minors of an `n x (n-1)` generic matrix,
//! linear strands of the Koszul complex on `F_1, ..., F_{n-1}` over `S = R[T_1..T_n]`, and the
//! chain map `φ_t` between them.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Poly, Shape};
use crate::determinantal::{compositions, rho, sign, IndexSet, Minors};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    basis: Vec<usize>,
    coeff: String,
}

fn terms_to_json(terms: &BTreeMap<IndexSet, Poly>) -> Value {
    let list: Vec<JsonTerm> = terms
        .iter()
        .map(|(k, p)| JsonTerm { basis: k.as_slice().to_vec(), coeff: p.to_string() })
        .collect();
    serde_json::to_value(list).expect("plain data serializes")
}

fn terms_from_json(shape: Shape, value: &Value) -> Result<Vec<(IndexSet, Poly)>> {
    let list: Vec<JsonTerm> = serde_json::from_value(value.clone())
        .map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
    list.into_iter()
        .map(|t| Ok((IndexSet::try_from(t.basis)?, Poly::parse(shape, &t.coeff)?)))
        .collect()
}

fn accumulate(terms: &mut BTreeMap<IndexSet, Poly>, basis: IndexSet, coeff: &Poly) {
    if coeff.is_zero() {
        return;
    }
    match terms.get_mut(&basis) {
        Some(c) => {
            *c += coeff;
            if c.is_zero() {
                terms.remove(&basis);
            }
        }
        None => {
            terms.insert(basis, coeff.clone());
        }
    }
}

/// `sum_A c_A e_A` in `⋀^r R^n`, coefficients in the x-variables only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    shape: Shape,
    degree: usize,
    terms: BTreeMap<IndexSet, Poly>,
}

impl ExteriorElement {
    pub fn zero(shape: Shape, degree: usize) -> Self {
        ExteriorElement { shape, degree, terms: BTreeMap::new() }
    }

    /// `e_A`.
    pub fn basis(shape: Shape, a: IndexSet) -> Result<Self> {
        let mut v = ExteriorElement::zero(shape, a.len());
        v.add_term(a, &Poly::one(shape))?;
        Ok(v)
    }

    pub fn add_term(&mut self, a: IndexSet, coeff: &Poly) -> Result<()> {
        self.shape.check_same(&coeff.shape())?;
        if a.len() != self.degree {
            return Err(Error::SizeMismatch(format!(
                "e_{a} in exterior degree {}",
                self.degree
            )));
        }
        if a.largest().is_some_and(|i| i > self.shape.m) {
            return Err(Error::IndexOutOfRange { index: a.largest().unwrap(), bound: self.shape.m });
        }
        if !coeff.is_x_only() {
            return Err(Error::ReesVariable);
        }
        accumulate(&mut self.terms, a, coeff);
        Ok(())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &IndexSet) -> Poly {
        self.terms.get(a).cloned().unwrap_or_else(|| Poly::zero(self.shape))
    }

    pub fn to_json(&self) -> Value {
        terms_to_json(&self.terms)
    }

    pub fn from_json(shape: Shape, degree: usize, value: &Value) -> Result<Self> {
        let mut v = ExteriorElement::zero(shape, degree);
        for (a, p) in terms_from_json(shape, value)? {
            v.add_term(a, &p)?;
        }
        Ok(v)
    }
}

/// `sum_K c_K f_K` in `⋀^k S^{n-1}`, every coefficient T-homogeneous of one declared degree.
/// A negative T-degree is allowed only for the zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandElement {
    shape: Shape,
    degree: usize,
    t_degree: i64,
    terms: BTreeMap<IndexSet, Poly>,
}

impl StrandElement {
    pub fn zero(shape: Shape, degree: usize, t_degree: i64) -> Self {
        StrandElement { shape, degree, t_degree, terms: BTreeMap::new() }
    }

    /// `f_K` with T-degree 0.
    pub fn basis(shape: Shape, k: IndexSet) -> Result<Self> {
        let mut w = StrandElement::zero(shape, k.len(), 0);
        w.add_term(k, &Poly::one(shape))?;
        Ok(w)
    }

    pub fn add_term(&mut self, k: IndexSet, coeff: &Poly) -> Result<()> {
        self.shape.check_same(&coeff.shape())?;
        if k.len() != self.degree {
            return Err(Error::SizeMismatch(format!(
                "f_{k} in exterior degree {}",
                self.degree
            )));
        }
        if k.largest().is_some_and(|i| i > self.shape.n) {
            return Err(Error::IndexOutOfRange { index: k.largest().unwrap(), bound: self.shape.n });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match coeff.t_homogeneous_degree() {
            Some(d) if d as i64 == self.t_degree => {}
            Some(d) => return Err(Error::DegreeMismatch(d, self.t_degree.max(0) as u32)),
            None => return Err(Error::NotHomogeneous),
        }
        accumulate(&mut self.terms, k, coeff);
        Ok(())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn t_degree(&self) -> i64 {
        self.t_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: &IndexSet) -> Poly {
        self.terms.get(k).cloned().unwrap_or_else(|| Poly::zero(self.shape))
    }

    /// Multiplies every coefficient by `p`, which must be T-homogeneous.
    pub fn mul_poly(&self, p: &Poly) -> Result<StrandElement> {
        let shift = if p.is_zero() { 0 } else { p.t_homogeneous_degree().ok_or(Error::NotHomogeneous)? };
        let mut out = StrandElement::zero(self.shape, self.degree, self.t_degree + shift as i64);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &(c * p))?;
        }
        Ok(out)
    }

    /// Sum of two elements of the same strand; a zero summand adopts the other's T-degree.
    pub fn try_add(&self, other: &StrandElement) -> Result<StrandElement> {
        self.shape.check_same(&other.shape)?;
        if self.degree != other.degree {
            return Err(Error::SizeMismatch(format!(
                "exterior degrees {} and {}",
                self.degree, other.degree
            )));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        terms_to_json(&self.terms)
    }

    pub fn from_json(shape: Shape, degree: usize, t_degree: i64, value: &Value) -> Result<Self> {
        let mut w = StrandElement::zero(shape, degree, t_degree);
        for (k, p) in terms_from_json(shape, value)? {
            w.add_term(k, &p)?;
        }
        Ok(w)
    }
}

/// Memo tables for one `n`: minors, their powers, `h` polynomials and `φ` on basis elements.
///
/// Not `Sync`; build one per thread.
#[derive(Debug)]
pub struct LiftContext {
    n: usize,
    shape: Shape,
    minors: Minors,
    delta_powers: RefCell<HashMap<(usize, u32), Poly>>,
    phi_memo: RefCell<HashMap<(usize, IndexSet), StrandElement>>,
}

impl LiftContext {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidShape { m: n, n: n.saturating_sub(1) });
        }
        let shape = Shape::hilbert_burch(n)?;
        Ok(LiftContext {
            n,
            shape,
            minors: Minors::new(shape),
            delta_powers: RefCell::new(HashMap::new()),
            phi_memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn minors(&self) -> &Minors {
        &self.minors
    }

    /// `Δ_a^e`.
    pub fn delta_pow(&self, a: usize, e: u32) -> Result<Poly> {
        if let Some(p) = self.delta_powers.borrow().get(&(a, e)) {
            return Ok(p.clone());
        }
        let p = self.minors.signed_minor(a)?.pow(e);
        self.delta_powers.borrow_mut().insert((a, e), p.clone());
        Ok(p)
    }

    /// `Δ_A^e = prod_{a in A} Δ_a^e`.
    pub fn delta_set_pow(&self, a: &IndexSet, e: u32) -> Result<Poly> {
        let mut out = Poly::one(self.shape);
        for &i in a.as_slice() {
            out = &out * &self.delta_pow(i, e)?;
        }
        Ok(out)
    }

    /// `F_j = sum_i x[i,j] T_i`.
    pub fn rees_form(&self, j: usize) -> Poly {
        let mut f = Poly::zero(self.shape);
        for i in 1..=self.n {
            f += &(Poly::x(self.shape, i, j) * Poly::t(self.shape, i));
        }
        f
    }

    /// `d(e_A) = sum_{a in A} ρ({a}, A \ a) Δ_a^t e_{A \ a}`, extended linearly.
    pub fn koszul_diff(&self, t: u32, v: &ExteriorElement) -> Result<ExteriorElement> {
        self.shape.check_same(&v.shape())?;
        if v.degree() == 0 {
            return Err(Error::SizeMismatch("the Koszul differential starts in degree 1".into()));
        }
        let mut out = ExteriorElement::zero(self.shape, v.degree() - 1);
        for (a, c) in v.terms() {
            for &i in a.as_slice() {
                let rest = a.without(i);
                let s = rho(&[i], rest.as_slice());
                let coeff = (c * &self.delta_pow(i, t)?).scale_int(s as i64);
                out.add_term(rest, &coeff)?;
            }
        }
        Ok(out)
    }

    /// `δ(f_K) = sum_{k in K} ρ({k}, K \ k) F_k f_{K \ k}`, extended S-linearly.
    pub fn strand_diff(&self, w: &StrandElement) -> Result<StrandElement> {
        self.shape.check_same(&w.shape())?;
        if w.degree() == 0 {
            return Err(Error::SizeMismatch("the strand differential starts in degree 1".into()));
        }
        let mut out = StrandElement::zero(self.shape, w.degree() - 1, w.t_degree() + 1);
        for (k, c) in w.terms() {
            for &j in k.as_slice() {
                let rest = k.without(j);
                let s = rho(&[j], rest.as_slice());
                let coeff = (c * &self.rees_form(j)).scale_int(s as i64);
                out.add_term(rest, &coeff)?;
            }
        }
        Ok(out)
    }

    /// `Δ_A^e h_e(A) = sum_{|β| = e, supp β ⊆ A} T^β prod_{a in A} Δ_a^(e - β_a)`.
    pub fn h_poly(&self, a: &IndexSet, e: u32) -> Result<Poly> {
        if a.largest().is_some_and(|i| i > self.n) {
            return Err(Error::IndexOutOfRange { index: a.largest().unwrap(), bound: self.n });
        }
        if a.is_empty() {
            return Ok(if e == 0 { Poly::one(self.shape) } else { Poly::zero(self.shape) });
        }
        let mut out = Poly::zero(self.shape);
        for beta in compositions(a.len(), e) {
            let mut term = Poly::one(self.shape);
            for (&i, &b) in a.as_slice().iter().zip(&beta) {
                term = &term * &Poly::t(self.shape, i).pow(b);
                term = &term * &self.delta_pow(i, e - b)?;
            }
            out += &term;
        }
        Ok(out)
    }

    /// `φ_t^{r-1}(e_A)` with `r = #A`.
    pub fn phi(&self, t: u32, a: &IndexSet) -> Result<StrandElement> {
        let r = a.len();
        if r == 0 || r > self.n || a.largest().is_some_and(|i| i > self.n) {
            return Err(Error::SizeMismatch(format!("φ is defined on e_A with 1 <= #A <= {}", self.n)));
        }
        let key = (t as usize, a.clone());
        if let Some(w) = self.phi_memo.borrow().get(&key) {
            return Ok(w.clone());
        }
        let t_degree = t as i64 - r as i64 + 1;
        let w = if r == 1 {
            let mut w = StrandElement::zero(self.shape, 0, t as i64);
            w.add_term(IndexSet::empty(), &Poly::t(self.shape, a.as_slice()[0]).pow(t))?;
            w
        } else if t_degree < 0 {
            StrandElement::zero(self.shape, r - 1, t_degree)
        } else {
            let base = self.phi_base(a)?;
            if t_degree == 0 {
                base
            } else {
                base.mul_poly(&self.h_poly(a, t_degree as u32)?)?
            }
        };
        self.phi_memo.borrow_mut().insert(key, w.clone());
        Ok(w)
    }

    /// `φ_{r-1}^{r-1}(e_A) = (-1)^{r-1} Δ_A^{r-2} sum_{#K = r-1} (-1)^{A+K} X_{A^c, K^c} f_K`.
    fn phi_base(&self, a: &IndexSet) -> Result<StrandElement> {
        let r = a.len();
        let n = self.n;
        let prefactor = self.delta_set_pow(a, (r - 2) as u32)?.scale(&sign(r - 1));
        let rows = a.complement(n);
        let mut w = StrandElement::zero(self.shape, r - 1, 0);
        for k in IndexSet::subsets(n - 1, r - 1) {
            let x = self.minors.minor(&rows, &k.complement(n - 1))?;
            let coeff = (&prefactor * &x).scale(&sign(a.sum() + k.sum()));
            w.add_term(k, &coeff)?;
        }
        Ok(w)
    }

    /// `φ_t` on an arbitrary element of `⋀^r R^n`, by linearity.
    pub fn phi_linear(&self, t: u32, v: &ExteriorElement) -> Result<StrandElement> {
        self.shape.check_same(&v.shape())?;
        let r = v.degree();
        if r == 0 || r > self.n {
            return Err(Error::SizeMismatch(format!("φ is defined in degrees 1..={}", self.n)));
        }
        let mut out = StrandElement::zero(self.shape, r - 1, t as i64 - r as i64 + 1);
        for (a, c) in v.terms() {
            out = out.try_add(&self.phi(t, a)?.mul_poly(c)?)?;
        }
        Ok(out)
    }

    /// `sum_{α in A} ρ({α}, A \ α) Δ_α^{r-2} φ_{r-2}^{r-2}(e_{A \ α})`, which vanishes.
    pub fn key_identity_sum(&self, a: &IndexSet) -> Result<StrandElement> {
        let r = a.len();
        if r < 3 {
            return Err(Error::SizeMismatch("the key identity needs #A >= 3".into()));
        }
        let t = (r - 2) as u32;
        let mut v = ExteriorElement::zero(self.shape, r);
        v.add_term(a.clone(), &Poly::one(self.shape))?;
        self.phi_linear(t, &self.koszul_diff(t, &v)?)
    }

    /// One square `δ ∘ φ_t^{r-1} = φ_t^{r-2} ∘ d` on every `e_A` with `#A = r`.
    pub fn check_square(&self, t: u32, r: usize) -> Result<SquareOutcome> {
        if r < 2 || r > self.n + 1 {
            return Err(Error::SizeMismatch(format!("squares exist for 2 <= r <= {}", self.n + 1)));
        }
        let mut outcome = SquareOutcome { n: self.n, t, r, checked: 0, failures: Vec::new() };
        if r == self.n + 1 {
            // ⋀^{n+1} R^n = 0
            return Ok(outcome);
        }
        for a in IndexSet::subsets(self.n, r) {
            let lhs = self.strand_diff(&self.phi(t, &a)?)?;
            let rhs = self.phi_linear(t, &self.koszul_diff(t, &ExteriorElement::basis(self.shape, a.clone())?)?)?;
            outcome.checked += 1;
            if lhs.terms != rhs.terms {
                outcome.failures.push(SquareFailure { basis: a, lhs, rhs });
            }
        }
        Ok(outcome)
    }

    /// `φ_t^0(e_a)` with `T_i -> Δ_i` equals `Δ_a^t`, for every `a`.
    pub fn check_evaluation(&self, t: u32) -> Result<Vec<usize>> {
        let images: Vec<Poly> =
            (1..=self.n).map(|i| self.minors.signed_minor(i)).collect::<Result<_>>()?;
        let mut bad = Vec::new();
        for a in 1..=self.n {
            let w = self.phi(t, &IndexSet::singleton(a))?;
            let value = w.coefficient(&IndexSet::empty()).substitute_t(&images)?;
            if value != self.delta_pow(a, t)? {
                bad.push(a);
            }
        }
        Ok(bad)
    }

    /// Basis sets `A` with `d(d(e_A)) != 0`.
    pub fn check_koszul_square_zero(&self, t: u32) -> Result<Vec<IndexSet>> {
        let mut bad = Vec::new();
        for r in 2..=self.n {
            for a in IndexSet::subsets(self.n, r) {
                let e = ExteriorElement::basis(self.shape, a.clone())?;
                if !self.koszul_diff(t, &self.koszul_diff(t, &e)?)?.is_zero() {
                    bad.push(a);
                }
            }
        }
        Ok(bad)
    }

    /// Basis sets `K` with `δ(δ(f_K)) != 0`.
    pub fn check_strand_square_zero(&self) -> Result<Vec<IndexSet>> {
        let mut bad = Vec::new();
        for k in 2..self.n {
            for set in IndexSet::subsets(self.n - 1, k) {
                let f = StrandElement::basis(self.shape, set.clone())?;
                if !self.strand_diff(&self.strand_diff(&f)?)?.is_zero() {
                    bad.push(set);
                }
            }
        }
        Ok(bad)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFailure {
    pub basis: IndexSet,
    pub lhs: StrandElement,
    pub rhs: StrandElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareOutcome {
    pub n: usize,
    pub t: u32,
    pub r: usize,
    pub checked: usize,
    pub failures: Vec<SquareFailure>,
}

impl SquareOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn payload(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "basis": f.basis, "delta_phi": f.lhs.to_json(), "phi_d": f.rhs.to_json() }))
            .collect();
        json!({ "n": self.n, "t": self.t, "r": self.r, "checked": self.checked, "failures": failures })
    }
}

/// `δ ∘ φ_t^{r-1} = φ_t^{r-2} ∘ d` on all of `⋀^r R^n`.
pub fn check_square(n: usize, t: u32, r: usize) -> Result<VerificationReport> {
    let ctx = LiftContext::new(n)?;
    let outcome = ctx.check_square(t, r)?;
    let mut report = VerificationReport::new("lift-square", json!({ "n": n, "t": t, "r": r }));
    report.push(format!("square r={r}"), outcome.passed(), outcome.payload());
    Ok(report)
}

/// Every square of the lift, `d² = 0`, `δ² = 0` and the evaluation square.
pub fn check_full_lift(n: usize, t: u32) -> Result<VerificationReport> {
    if t == 0 {
        return Err(Error::SizeMismatch("the lift needs t >= 1".into()));
    }
    let ctx = LiftContext::new(n)?;
    let mut report = VerificationReport::new("lift", json!({ "n": n, "t": t }));
    for r in 2..=n + 1 {
        let outcome = ctx.check_square(t, r)?;
        report.push(format!("square r={r}"), outcome.passed(), outcome.payload());
    }
    let bad = ctx.check_koszul_square_zero(t)?;
    report.push("koszul d∘d = 0", bad.is_empty(), json!({ "failing": bad }));
    let bad = ctx.check_strand_square_zero()?;
    report.push("strand δ∘δ = 0", bad.is_empty(), json!({ "failing": bad }));
    let bad = ctx.check_evaluation(t)?;
    report.push("evaluation T_i -> Δ_i", bad.is_empty(), json!({ "failing": bad }));
    Ok(report)
}
