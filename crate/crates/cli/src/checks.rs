//! One function per named check. Each returns a report; parameter problems surface as
//! `Err` and are turned into skipped entries by the caller.

use minorlift::cohomology::{annihilator, ext_report, hilbert_report};
use minorlift::combinatorics::{
    binomial, cauchy_dim, partitions, schur_dim_partition, ssyt_count, to_u64, Partition,
};
use minorlift::complexes::{check_full_lift, LiftContext};
use minorlift::determinantal::{
    compositions, det_lambda, gl_random_element, minor, rho, sign_identity_check, y_polynomial,
    IndexSet, Minors,
};
use minorlift::report::{rational_string, VerificationReport};
use minorlift::weyl::{cayley_observe, pairing, StarOperator, MAX_CAYLEY_DEGREE};
use minorlift::{Error, Monomial, Poly, Result, Shape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub rmax: u32,
    pub seed: u64,
    pub trials: usize,
}

fn desk(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Infeasible(msg()))
    }
}

pub fn lift(p: &Params) -> Result<VerificationReport> {
    desk((2..=4).contains(&p.n) && (1..=5).contains(&p.t) && !(p.n == 4 && p.t > 4), || {
        format!("lift is run for 2 <= n <= 4, 1 <= t <= 5 (t <= 4 at n = 4); got n = {}, t = {}", p.n, p.t)
    })?;
    let mut report = check_full_lift(p.n, p.t as u32)?;
    report.params = json!({ "n": p.n, "t": p.t });
    if p.n <= 3 {
        let ctx = LiftContext::new(p.n)?;
        let mut values = Vec::new();
        for r in 1..=p.n {
            for a in IndexSet::subsets(p.n, r) {
                let w = ctx.phi(p.t as u32, &a)?;
                values.push(json!({ "basis": a, "image": w.to_json() }));
            }
        }
        report.push("phi values", true, Value::Array(values));
    }
    if p.t + 1 >= p.n {
        report.extend(ext_report(p.n, p.t)?);
    }
    Ok(report)
}

pub fn cayley(p: &Params) -> Result<VerificationReport> {
    desk((2..=3).contains(&p.n), || format!("cayley is run for n in 2..=3, got {}", p.n))?;
    let max = (p.t as u32).min(MAX_CAYLEY_DEGREE);
    let mut report = VerificationReport::new("cayley", json!({ "n": p.n, "max_degree": max }));
    for total in 0..=max {
        for s in compositions(p.n, total) {
            for i in 1..=p.n {
                let obs = cayley_observe(p.n, &s, i)?;
                let scalar = obs.scalar.as_ref().map(rational_string);
                let matched = match &obs.scalar {
                    Some(c) if *c == obs.product_to_s_plus_n_minus_1 => "upper index |s|+n-1",
                    Some(c) if *c == obs.product_to_s_plus_n => "upper index |s|+n",
                    Some(_) => "neither",
                    None => "not proportional",
                };
                report.push(
                    format!("s={s:?} i={i}"),
                    obs.is_proportional(),
                    json!({
                        "scalar": scalar,
                        "product_to_s_plus_n": rational_string(&obs.product_to_s_plus_n),
                        "product_to_s_plus_n_minus_1": rational_string(&obs.product_to_s_plus_n_minus_1),
                        "matched": matched,
                    }),
                );
            }
        }
    }
    Ok(report)
}

pub fn annihilator_check(p: &Params) -> Result<VerificationReport> {
    desk((2..=3).contains(&p.n) && p.t <= 4, || {
        format!("annihilator is run for n in 2..=3, t <= 4; got n = {}, t = {}", p.n, p.t)
    })?;
    Ok(annihilator(p.n, p.t)?.to_report())
}

pub fn hilbert(p: &Params) -> Result<VerificationReport> {
    hilbert_report(p.m, p.n, p.t, p.rmax)
}

fn random_form(rng: &mut ChaCha8Rng, shape: Shape, degree: u32) -> Poly {
    let mut f = Poly::zero(shape);
    for _ in 0..4 {
        let mut exps = vec![0u16; shape.num_vars()];
        for _ in 0..degree {
            exps[rng.gen_range(0..shape.num_x())] += 1;
        }
        f.add_term(Monomial::from_exponents(exps), minorlift::algebra::q(rng.gen_range(-4..=4)));
    }
    f
}

pub fn pairing_check(p: &Params) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new("pairing", json!({ "seed": p.seed, "trials": p.trials }));
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut bad = Vec::new();
    let mut ran = 0;
    for trial in 0..p.trials {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=m);
        let shape = Shape::new(m, n)?;
        let degree = rng.gen_range(1..=3);
        let f = random_form(&mut rng, shape, degree);
        let g = random_form(&mut rng, shape, degree);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let theta = gl_random_element(shape, rng.gen());
        let before = pairing(&f, &g)?;
        let after = pairing(&theta.act_dual(&f)?, &theta.act(&g)?)?;
        ran += 1;
        if before != after {
            bad.push(json!({ "trial": trial, "before": rational_string(&before), "after": rational_string(&after) }));
        }
    }
    report.push("equivariance", bad.is_empty(), json!({ "trials": ran, "failures": bad }));

    let shape = Shape::hilbert_burch(3)?;
    let minors = Minors::new(shape);
    let mut bad = Vec::new();
    for k in 0..=2u32 {
        let det = det_lambda(shape, &Partition::row(k + 1))?;
        for _ in 0..5 {
            let op = StarOperator::new(gl_random_element(shape, rng.gen()).act(&det)?)?;
            for alpha in compositions(3, k) {
                if !op.apply(&minors.minor_power(&alpha)?)?.is_zero() {
                    bad.push(json!({ "k": k, "alpha": alpha }));
                }
            }
        }
    }
    report.push("orbit annihilation", bad.is_empty(), json!({ "orbit_elements": 15, "failures": bad }));
    Ok(report)
}

pub fn schur(p: &Params) -> Result<VerificationReport> {
    desk(p.n <= 4 && p.m * p.n <= 12, || {
        format!("schur is run for n <= 4 and mn <= 12; got m = {}, n = {}", p.m, p.n)
    })?;
    let mut report = VerificationReport::new("schur", json!({ "m": p.m, "n": p.n }));
    let mut bad = Vec::new();
    let mut checked = 0;
    for size in 0..=6 {
        for lambda in partitions(size, p.n, size)? {
            let formula = to_u64(&schur_dim_partition(&lambda, p.n));
            let count = ssyt_count(&lambda, p.n)?;
            checked += 1;
            if formula != count {
                bad.push(json!({ "lambda": lambda.parts(), "formula": formula, "tableaux": count }));
            }
        }
    }
    report.push("schur dim = tableaux", bad.is_empty(), json!({ "checked": checked, "failures": bad }));
    let mut rows = Vec::new();
    let mut ok = true;
    for r in 0..=6u32 {
        let lhs = to_u64(&cauchy_dim(p.m, p.n, r)?);
        let rhs = to_u64(&binomial((p.m * p.n) as u64 + r as u64 - 1, r as u64));
        ok &= lhs == rhs;
        rows.push(json!({ "r": r, "cauchy": lhs, "binomial": rhs }));
    }
    report.push("cauchy = binomial", ok, Value::Array(rows));
    Ok(report)
}

pub fn identities(p: &Params) -> Result<VerificationReport> {
    desk((2..=4).contains(&p.n), || format!("identities are run for n in 2..=4, got {}", p.n))?;
    let n = p.n;
    let shape = Shape::hilbert_burch(n)?;
    let minors = Minors::new(shape);
    let mut report = VerificationReport::new("identities", json!({ "n": n }));

    let mut bad = Vec::new();
    for col in 1..n {
        let mut sum = Poly::zero(shape);
        for i in 1..=n {
            sum += &(&minors.signed_minor(i)? * &Poly::x(shape, i, col));
        }
        if !sum.is_zero() {
            bad.push(col);
        }
    }
    report.push("syzygy", bad.is_empty(), json!({ "failing_columns": bad }));

    let mut bad = Vec::new();
    let mut checked = 0;
    for r in 2..=n {
        for a in IndexSet::subsets(n, r) {
            for h in IndexSet::subsets(n - 1, r - 2) {
                let hc = h.complement(n - 1);
                for i in 1..=n {
                    let y = y_polynomial(shape, &a, &h, i)?;
                    let mut rhs = Poly::zero(shape);
                    for &alpha in hc.as_slice() {
                        let sg = rho(&[alpha], hc.without(alpha).as_slice()) as i64;
                        let m = minor(shape, &a.complement(n), &h.with(alpha).complement(n - 1))?;
                        rhs += &(&Poly::x(shape, i, alpha) * &m).scale_int(sg);
                    }
                    checked += 1;
                    if y != rhs {
                        bad.push(json!({ "A": a, "H": h, "i": i }));
                    }
                }
            }
        }
    }
    report.push("row expansion", bad.is_empty(), json!({ "checked": checked, "failures": bad }));

    let mut bad = Vec::new();
    let mut checked = 0;
    for universe in 1..=6 {
        for r in 1..=universe {
            for a in IndexSet::subsets(universe, r) {
                for &alpha in a.as_slice() {
                    checked += 1;
                    if !sign_identity_check(alpha, &a, universe)? {
                        bad.push(json!({ "alpha": alpha, "A": a, "universe": universe }));
                    }
                }
            }
        }
    }
    report.push("sign identity", bad.is_empty(), json!({ "checked": checked, "failures": bad }));

    let ctx = LiftContext::new(n)?;
    if n >= 3 {
        let mut bad = Vec::new();
        for r in 3..=n {
            for a in IndexSet::subsets(n, r) {
                if !ctx.key_identity_sum(&a)?.is_zero() {
                    bad.push(a);
                }
            }
        }
        report.push("key identity", bad.is_empty(), json!({ "failing": bad }));
    } else {
        report.skip("key identity", "needs n >= 3");
    }
    let bad = ctx.check_koszul_square_zero(p.t as u32)?;
    report.push("koszul d∘d = 0", bad.is_empty(), json!({ "failing": bad }));
    let bad = ctx.check_strand_square_zero()?;
    report.push("strand δ∘δ = 0", bad.is_empty(), json!({ "failing": bad }));
    Ok(report)
}
