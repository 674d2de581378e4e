//! `Ext^n_R(R/I^t, R)` inside top local cohomology for the `n x (n-1)` generic matrix, its
//! annihilator, and the Hilbert-function identity for `R/I_{(t-n+1)}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    graded_component_dim, ring_component_dim, Monomial, Poly, Rational, RationalMatrix, Shape,
    MAX_GRADED_DEGREE, MAX_GRADED_VARS,
};
use crate::combinatorics::{permanent_quotient_dim, to_u64};
use crate::complexes::LiftContext;
use crate::determinantal::{compositions, generalized_permanents, generalized_permanents_indexed, IndexSet, Minors};
use crate::error::{Error, Result};
use crate::report::{rational_string, VerificationReport};
use crate::weyl::{fourier_equivalence_check, minor_power_class, LaurentClass, StarOperator};

/// `(d^α)* • 1/x̲` for every `|α| = t - n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGeneratorSet {
    pub n: usize,
    pub t: usize,
    pub generators: BTreeMap<Vec<u32>, LaurentClass>,
}

impl ExtGeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Rank of the coefficient matrix of the generators over their Laurent monomials.
    pub fn rank(&self) -> usize {
        let columns: BTreeSet<&Vec<i64>> =
            self.generators.values().flat_map(|c| c.terms().map(|(e, _)| e)).collect();
        let index: HashMap<&Vec<i64>, usize> =
            columns.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut mat = RationalMatrix::zeros(self.generators.len(), columns.len());
        for (row, class) in self.generators.values().enumerate() {
            for (e, c) in class.terms() {
                mat[(row, index[e])] = c.clone();
            }
        }
        mat.rank()
    }

    pub fn independent(&self) -> bool {
        self.rank() == self.generators.len()
    }
}

/// Empty when `t < n - 1`, where `R/I^t` has projective dimension below `n`.
pub fn ext_generators(n: usize, t: usize) -> Result<ExtGeneratorSet> {
    let minors = Minors::new(Shape::hilbert_burch(n)?);
    let mut generators = BTreeMap::new();
    if t + 1 >= n {
        for alpha in compositions(n, (t + 1 - n) as u32) {
            let class = minor_power_class(&minors, &alpha)?;
            generators.insert(alpha, class);
        }
    }
    Ok(ExtGeneratorSet { n, t, generators })
}

fn check_ext_range(n: usize, t: usize) -> Result<()> {
    if t + 1 < n {
        return Err(Error::SizeMismatch(format!("need t >= n - 1 (n = {n}, t = {t})")));
    }
    Ok(())
}

/// A pair `(p, α)` with `p* • d^α != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentFailure {
    pub generator: String,
    pub alpha: Vec<u32>,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentOutcome {
    pub checked: usize,
    pub failures: Vec<ContainmentFailure>,
}

impl ContainmentOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `p* • d^α = 0` for every given `p` and every `|α| = t - n + 1`.
pub fn containment_for(polys: &[Poly], n: usize, t: usize) -> Result<ContainmentOutcome> {
    check_ext_range(n, t)?;
    let minors = Minors::new(Shape::hilbert_burch(n)?);
    let targets: Vec<(Vec<u32>, Poly)> = compositions(n, (t + 1 - n) as u32)
        .into_iter()
        .map(|a| Ok((a.clone(), minors.minor_power(&a)?)))
        .collect::<Result<_>>()?;
    let mut outcome = ContainmentOutcome { checked: 0, failures: Vec::new() };
    for p in polys {
        let op = StarOperator::new(p.clone())?;
        for (alpha, target) in &targets {
            let image = op.apply(target)?;
            outcome.checked += 1;
            if !image.is_zero() {
                outcome.failures.push(ContainmentFailure {
                    generator: p.to_string(),
                    alpha: alpha.clone(),
                    image: image.to_string(),
                });
            }
        }
    }
    Ok(outcome)
}

/// The generalized permanents of size `t - n + 2` kill every Ext generator.
pub fn annihilator_containment(n: usize, t: usize) -> Result<ContainmentOutcome> {
    check_ext_range(n, t)?;
    let shape = Shape::hilbert_burch(n)?;
    containment_for(&generalized_permanents(shape, t + 2 - n)?, n, t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessOutcome {
    pub alpha: Vec<u32>,
    /// `d_n^{t-n+1} · (d^α)* • 1/x̲` with `α = (0, ..., 0, t - n + 1)`.
    pub product: LaurentClass,
}

impl TightnessOutcome {
    pub fn passed(&self) -> bool {
        !self.product.is_zero()
    }
}

/// `d_n^{t-n+1}` does not annihilate the generator for `α = (0, ..., 0, t - n + 1)`.
pub fn annihilator_tightness(n: usize, t: usize) -> Result<TightnessOutcome> {
    check_ext_range(n, t)?;
    let minors = Minors::new(Shape::hilbert_burch(n)?);
    let e = (t + 1 - n) as u32;
    let mut alpha = vec![0; n];
    alpha[n - 1] = e;
    let class = minor_power_class(&minors, &alpha)?;
    let witness = minors.maximal_minor(n)?.pow(e);
    Ok(TightnessOutcome { alpha, product: class.r_action(&witness)? })
}

/// Both halves of the annihilator description plus the Fourier cross-check on every
/// `(p, α)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnihilatorReport {
    /// The generic matrix is `n x (n-1)`.
    pub n: usize,
    pub t: usize,
    pub containment_passed: bool,
    pub tightness_passed: bool,
    pub fourier_agreed: bool,
    pub witness: Value,
}

impl AnnihilatorReport {
    pub fn passed(&self) -> bool {
        self.containment_passed && self.tightness_passed && self.fourier_agreed
    }

    pub fn to_report(&self) -> VerificationReport {
        let mut r = VerificationReport::new(
            "annihilator",
            json!({ "n": self.n, "t": self.t, "shape": format!("{}x{}", self.n, self.n - 1) }),
        );
        r.push("containment", self.containment_passed, self.witness["containment"].clone());
        r.push("tightness", self.tightness_passed, self.witness["tightness"].clone());
        r.push("fourier equivalence", self.fourier_agreed, self.witness["fourier"].clone());
        r
    }
}

pub fn annihilator(n: usize, t: usize) -> Result<AnnihilatorReport> {
    let containment = annihilator_containment(n, t)?;
    let tightness = annihilator_tightness(n, t)?;

    let shape = Shape::hilbert_burch(n)?;
    let mut pairs = 0;
    let mut disagreements = Vec::new();
    let mut tested: Vec<(String, Poly, Vec<u32>)> = Vec::new();
    for g in generalized_permanents_indexed(shape, t + 2 - n)? {
        for alpha in compositions(n, (t + 1 - n) as u32) {
            tested.push((format!("perm {:?}x{:?}", g.rows, g.cols), g.poly.clone(), alpha));
        }
    }
    let witness_poly = Minors::new(shape).maximal_minor(n)?.pow((t + 1 - n) as u32);
    tested.push(("tightness witness".into(), witness_poly, tightness.alpha.clone()));
    for (label, f, alpha) in &tested {
        let check = fourier_equivalence_check(f, alpha, n, t)?;
        pairs += 1;
        if !check.agrees() {
            disagreements.push(json!({
                "polynomial": label, "alpha": alpha,
                "laurent_side": check.laurent_side, "operator_side": check.operator_side,
            }));
        }
    }

    let witness = json!({
        "containment": {
            "checked": containment.checked,
            "failures": containment.failures,
        },
        "tightness": {
            "alpha": tightness.alpha,
            "terms": tightness.product.len(),
            "socle_coefficient": rational_string(&tightness.product.socle_coefficient()),
        },
        "fourier": { "pairs": pairs, "disagreements": disagreements },
    });
    Ok(AnnihilatorReport {
        n,
        t,
        containment_passed: containment.passed(),
        tightness_passed: tightness.passed(),
        fourier_agreed: disagreements.is_empty(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub r: u32,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub rows: Vec<HilbertRow>,
    pub equal: bool,
}

/// `dim [R / I_{(t-n+1)}]_r` from exact ranks against the bounded Cauchy sum, `0 <= r <= r_max`.
pub fn hilbert_compare(m: usize, n: usize, t: usize, r_max: u32) -> Result<HilbertReport> {
    if m <= n || t < n {
        return Err(Error::SizeMismatch(format!("need m > n and t >= n (m = {m}, n = {n}, t = {t})")));
    }
    if m * n > MAX_GRADED_VARS || r_max > MAX_GRADED_DEGREE {
        return Err(Error::Infeasible(format!(
            "Hilbert comparison is limited to mn <= {MAX_GRADED_VARS} and r_max <= \
             {MAX_GRADED_DEGREE} (got mn = {}, r_max = {r_max})",
            m * n
        )));
    }
    let shape = Shape::new(m, n)?;
    let gens = generalized_permanents(shape, t + 1 - n)?;
    let mut rows = Vec::new();
    for r in 0..=r_max {
        let lhs = ring_component_dim(&shape, r) - graded_component_dim(&shape, &gens, r)?;
        let rhs = to_u64(&permanent_quotient_dim(m, n, t as u32, r)?);
        rows.push(HilbertRow { r, lhs: lhs as u64, rhs });
    }
    let equal = rows.iter().all(|row| row.lhs == row.rhs);
    Ok(HilbertReport { m, n, t, rows, equal })
}

/// The coefficient of `T^α` in `φ_t^{n-1}(e_{1..n})` over `(prod Δ_i)^t`, reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftFraction {
    pub alpha: Vec<u32>,
    /// Numerator after cancelling every available `Δ_i`.
    pub numerator: Poly,
    /// Exponents of `Δ_1, ..., Δ_n` left in the denominator.
    pub denominator: Vec<u32>,
}

impl LiftFraction {
    /// `±1 / (prod Δ_i · Δ^α)`, which is `±1 / (prod d_i · d^α)`.
    pub fn matches_generator(&self) -> bool {
        let unit = self.numerator.len() == 1
            && self.numerator.constant_term().abs().is_one();
        let expected: Vec<u32> = self.alpha.iter().map(|a| a + 1).collect();
        unit && self.denominator == expected
    }

    pub fn sign(&self) -> i32 {
        if self.numerator.constant_term().is_negative() {
            -1
        } else {
            1
        }
    }
}

/// Splits an x/T polynomial by its T-exponent part.
fn coefficients_in_t(p: &Poly) -> BTreeMap<Vec<u32>, Poly> {
    let shape = p.shape();
    let nx = shape.num_x();
    let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for (mono, c) in p.terms() {
        let e = mono.exponents();
        let key: Vec<u32> = e[nx..].iter().map(|&v| v as u32).collect();
        let mut x_part = e.to_vec();
        x_part[nx..].iter_mut().for_each(|v| *v = 0);
        out.entry(key)
            .or_insert_with(|| Poly::zero(shape))
            .add_term(Monomial::from_exponents(x_part), c.clone());
    }
    out
}

pub fn ext_via_lift(n: usize, t: usize) -> Result<Vec<LiftFraction>> {
    check_ext_range(n, t)?;
    let ctx = LiftContext::new(n)?;
    let top = ctx.phi(t as u32, &IndexSet::range(n))?;
    let coeff = top.coefficient(&IndexSet::range(n - 1));
    let by_t = coefficients_in_t(&coeff);
    let deltas: Vec<Poly> = (1..=n).map(|i| ctx.delta_pow(i, 1)).collect::<Result<_>>()?;

    let mut out = Vec::new();
    for alpha in compositions(n, (t + 1 - n) as u32) {
        let mut numerator = by_t.get(&alpha).cloned().unwrap_or_else(|| Poly::zero(ctx.shape()));
        let mut denominator = vec![t as u32; n];
        for (i, delta) in deltas.iter().enumerate() {
            while denominator[i] > 0 && !numerator.is_zero() {
                let (q, r) = numerator.div_rem(delta)?;
                if !r.is_zero() {
                    break;
                }
                numerator = q;
                denominator[i] -= 1;
            }
        }
        out.push(LiftFraction { alpha, numerator, denominator });
    }
    Ok(out)
}

/// The constant `c` with `φ_{n-1}^{n-1}(e_{1..n}) = c (prod Δ_i)^{n-2} f_{1..n-1}`.
pub fn top_lift_constant(n: usize) -> Result<Rational> {
    let ctx = LiftContext::new(n)?;
    let top = ctx.phi((n - 1) as u32, &IndexSet::range(n))?;
    let coeff = top.coefficient(&IndexSet::range(n - 1));
    let base = ctx.delta_set_pow(&IndexSet::range(n), (n - 2) as u32)?;
    let (m, c) = base.leading_term().expect("products of minors are nonzero");
    let ratio = coeff.coefficient(m) / c;
    if base.scale(&ratio) != coeff {
        return Err(Error::InexactDivision);
    }
    Ok(ratio)
}

pub fn ext_report(n: usize, t: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("ext", json!({ "n": n, "t": t }));
    let gens = ext_generators(n, t)?;
    let nonzero = gens.generators.values().all(|c| !c.is_zero());
    report.push(
        "laurent generators",
        nonzero && gens.independent(),
        json!({ "count": gens.len(), "rank": gens.rank(), "nonzero": nonzero }),
    );
    if t + 1 >= n {
        let fractions = ext_via_lift(n, t)?;
        let payload: Vec<Value> = fractions
            .iter()
            .map(|f| {
                json!({
                    "alpha": f.alpha,
                    "numerator": f.numerator.to_string(),
                    "denominator_exponents": f.denominator,
                })
            })
            .collect();
        report.push(
            "lift fractions",
            fractions.iter().all(LiftFraction::matches_generator),
            json!(payload),
        );
    }
    Ok(report)
}

pub fn hilbert_report(m: usize, n: usize, t: usize, r_max: u32) -> Result<VerificationReport> {
    let h = hilbert_compare(m, n, t, r_max)?;
    let mut report =
        VerificationReport::new("hilbert", json!({ "m": m, "n": n, "t": t, "rmax": r_max }));
    report.push("dimension table", h.equal, serde_json::to_value(&h.rows).unwrap());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn generator_counts() {
        assert!(ext_generators(3, 1).unwrap().is_empty());
        let g = ext_generators(3, 2).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.generators[&vec![0, 0, 0]], LaurentClass::socle(Shape::hilbert_burch(3).unwrap()));
        assert_eq!(ext_generators(3, 3).unwrap().len(), 3);
        let g = ext_generators(2, 2).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.independent());
    }

    #[test]
    fn two_by_one_generators_are_first_derivatives() {
        let s = Shape::hilbert_burch(2).unwrap();
        let g = ext_generators(2, 2).unwrap();
        let socle = LaurentClass::socle(s);
        // d_1 = x21, d_2 = x11
        let d21 = StarOperator::new(Poly::x(s, 2, 1)).unwrap().apply_to_laurent(&socle).unwrap();
        let d11 = StarOperator::new(Poly::x(s, 1, 1)).unwrap().apply_to_laurent(&socle).unwrap();
        assert_eq!(g.generators[&vec![1, 0]], d21);
        assert_eq!(g.generators[&vec![0, 1]], d11);
    }

    #[test]
    fn containment_examples() {
        assert!(annihilator_containment(3, 3).unwrap().passed());
        assert!(annihilator_containment(2, 1).unwrap().passed());
        let s = Shape::hilbert_burch(3).unwrap();
        let p = Poly::parse(s, "x[1,1]*x[2,2] + x[1,2]*x[2,1]").unwrap();
        let d3 = Minors::new(s).maximal_minor(3).unwrap();
        assert!(StarOperator::new(p).unwrap().apply(&d3).unwrap().is_zero());
        // a 1x1 permanent is too small
        assert!(!containment_for(&[Poly::x(s, 1, 1)], 3, 3).unwrap().passed());
    }

    #[test]
    fn tightness_examples() {
        assert!(annihilator_tightness(3, 2).unwrap().passed());
        assert!(annihilator_tightness(2, 2).unwrap().passed());
        assert!(annihilator_tightness(3, 3).unwrap().passed());
    }

    #[test]
    fn hilbert_small() {
        let h = hilbert_compare(3, 2, 3, 2).unwrap();
        let lhs: Vec<u64> = h.rows.iter().map(|r| r.lhs).collect();
        assert_eq!(lhs, vec![1, 6, 3]);
        assert!(h.equal);
        let h = hilbert_compare(3, 2, 2, 3).unwrap();
        assert_eq!(h.rows.iter().map(|r| r.lhs).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        assert!(matches!(hilbert_compare(4, 4, 4, 2), Err(Error::SizeMismatch(_))));
        assert!(matches!(hilbert_compare(5, 3, 4, 2), Err(Error::Infeasible(_))));
    }

    #[test]
    fn lift_fractions() {
        for f in ext_via_lift(3, 3).unwrap() {
            assert!(f.matches_generator(), "{f:?}");
        }
        let f = ext_via_lift(2, 2).unwrap();
        let a10 = f.iter().find(|f| f.alpha == vec![1, 0]).unwrap();
        assert_eq!(a10.denominator, vec![2, 1]);
        let base = ext_via_lift(3, 2).unwrap();
        assert_eq!(base.len(), 1);
        assert_eq!(base[0].denominator, vec![1, 1, 1]);
    }

    #[test]
    fn top_constant_is_minus_one() {
        for n in 2..=4 {
            assert_eq!(top_lift_constant(n).unwrap(), q(-1), "n = {n}");
        }
    }
}
