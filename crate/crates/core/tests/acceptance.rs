//! Acceptance criteria, each run at exact equality and reported as one PASS/FAIL line.
//! Criteria run one after another inside a single test so the timings are not shared
//! with other threads.

mod common;

use std::time::{Duration, Instant};

use minorlift::algebra::q;
use minorlift::cohomology::{annihilator, ext_generators, ext_via_lift, hilbert_compare};
use minorlift::combinatorics::{cauchy_dim, partitions, schur_dim_partition, ssyt_count, to_u64};
use minorlift::complexes::{check_full_lift, LiftContext};
use minorlift::determinantal::{
    compositions, det_lambda, gl_random_element, minor, rho, sign_identity_check, y_polynomial,
    IndexSet, Minors,
};
use minorlift::combinatorics::Partition;
use minorlift::weyl::{cayley_observe, minor_power_class, pairing, LaurentClass, StarOperator};
use minorlift::{Poly, Result, Shape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{binom, brute_ssyt, random_homogeneous};

struct Outcome {
    passed: bool,
    note: String,
}

fn outcome(passed: bool, note: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, note: note.into() })
}

fn run(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (passed, note) = match result {
        Ok(o) => (o.passed && elapsed <= budget, o.note),
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "{} [{id}] {name}: {note} ({:.2?} of {:?})",
        if passed { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    passed
}

fn worked_example() -> Result<Outcome> {
    let ctx = LiftContext::new(3)?;
    let s = ctx.shape();
    let d = |i: usize| ctx.minors().signed_minor(i);
    let (d1, d2, d3) = (d(1)?, d(2)?, d(3)?);
    let x = |i, j| Poly::x(s, i, j);
    let t = |k| Poly::t(s, k);
    let set = |v: &[usize]| IndexSet::new(v.iter().copied());
    let mut ok = true;

    let top = ctx.phi(2, &set(&[1, 2, 3])?)?;
    ok &= top.terms().count() == 1 && top.coefficient(&set(&[1, 2])?) == -(&(&d1 * &d2) * &d3);

    for a in 1..=3 {
        let w = ctx.phi(2, &IndexSet::singleton(a))?;
        ok &= w.terms().count() == 1 && w.coefficient(&IndexSet::empty()) == t(a).pow(2);
    }

    // (a, b, Δ_b T_a + Δ_a T_b, coefficient of f1, coefficient of f2)
    let cases = [
        ((1, 2), &d2 * &t(1) + &d1 * &t(2), x(3, 2), -x(3, 1)),
        ((1, 3), &d3 * &t(1) + &d1 * &t(3), -x(2, 2), x(2, 1)),
        ((2, 3), &d3 * &t(2) + &d2 * &t(3), x(1, 2), -x(1, 1)),
    ];
    for ((a, b), h, c1, c2) in cases {
        let w = ctx.phi(2, &set(&[a, b])?)?;
        ok &= w.coefficient(&IndexSet::singleton(1)) == -(&h * &c1);
        ok &= w.coefficient(&IndexSet::singleton(2)) == -(&h * &c2);
        ok &= w.terms().count() == 2;
        // φ_1^1 before multiplying by h_1
        let w1 = ctx.phi(1, &set(&[a, b])?)?;
        ok &= w1.coefficient(&IndexSet::singleton(1)) == -c1.clone();
        ok &= w1.coefficient(&IndexSet::singleton(2)) == -c2.clone();
    }
    outcome(ok, "φ_2^2, φ_2^1, φ_1^1, φ_2^0 at n = 3")
}

fn lift_commutativity() -> Result<Outcome> {
    let cases = [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 3), (4, 4)];
    let mut bad = Vec::new();
    for (n, t) in cases {
        let report = check_full_lift(n, t)?;
        if !report.passed() {
            bad.push((n, t));
        }
    }
    outcome(bad.is_empty(), format!("{} cases, failing {bad:?}", cases.len()))
}

fn identity_suite() -> Result<Outcome> {
    let mut checked = 0usize;
    let mut bad = Vec::new();

    for n in 2..=5 {
        let s = Shape::hilbert_burch(n)?;
        let minors = Minors::new(s);
        for col in 1..n {
            let mut sum = Poly::zero(s);
            for i in 1..=n {
                sum += &(&minors.signed_minor(i)? * &Poly::x(s, i, col));
            }
            checked += 1;
            if !sum.is_zero() {
                bad.push(format!("syzygy n={n} col={col}"));
            }
        }
    }

    for n in 2..=4 {
        let s = Shape::hilbert_burch(n)?;
        for r in 2..=n {
            for a in IndexSet::subsets(n, r) {
                for h in IndexSet::subsets(n - 1, r - 2) {
                    let hc = h.complement(n - 1);
                    for i in 1..=n {
                        let y = y_polynomial(s, &a, &h, i)?;
                        let mut rhs = Poly::zero(s);
                        for &alpha in hc.as_slice() {
                            let sg = rho(&[alpha], hc.without(alpha).as_slice());
                            let m = minor(s, &a.complement(n), &h.with(alpha).complement(n - 1))?;
                            rhs += &(&Poly::x(s, i, alpha) * &m).scale_int(sg as i64);
                        }
                        checked += 1;
                        if y != rhs || (!a.contains(i) && !y.is_zero()) {
                            bad.push(format!("Y n={n} A={a} H={h} i={i}"));
                        }
                    }
                }
            }
        }
    }

    for universe in 1..=6 {
        for r in 1..=universe {
            for a in IndexSet::subsets(universe, r) {
                for &alpha in a.as_slice() {
                    checked += 1;
                    if !sign_identity_check(alpha, &a, universe)? {
                        bad.push(format!("sign α={alpha} A={a} in {universe}"));
                    }
                }
            }
        }
    }

    for n in 3..=4 {
        let ctx = LiftContext::new(n)?;
        for r in 3..=n {
            for a in IndexSet::subsets(n, r) {
                checked += 1;
                if !ctx.key_identity_sum(&a)?.is_zero() {
                    bad.push(format!("key identity n={n} A={a}"));
                }
            }
        }
    }

    for n in 2..=4 {
        let ctx = LiftContext::new(n)?;
        for t in 0..=4 {
            checked += 1;
            let k = ctx.check_koszul_square_zero(t)?;
            if !k.is_empty() {
                bad.push(format!("d∘d n={n} t={t}"));
            }
        }
        checked += 1;
        if !ctx.check_strand_square_zero()?.is_empty() {
            bad.push(format!("δ∘δ n={n}"));
        }
    }
    outcome(bad.is_empty(), format!("{checked} identities, failing {bad:?}"))
}

fn cayley() -> Result<Outcome> {
    let mut checked = 0;
    let mut non_proportional = Vec::new();
    let mut lower = 0;
    let mut upper = 0;
    for n in 2..=3 {
        for total in 0..=3 {
            for s in compositions(n, total) {
                for i in 1..=n {
                    let obs = cayley_observe(n, &s, i)?;
                    checked += 1;
                    match &obs.scalar {
                        None => non_proportional.push((n, s.clone(), i)),
                        Some(c) => {
                            lower += (*c == obs.product_to_s_plus_n_minus_1) as usize;
                            upper += (*c == obs.product_to_s_plus_n) as usize;
                        }
                    }
                }
            }
        }
    }
    outcome(
        non_proportional.is_empty(),
        format!(
            "{checked} cases proportional; c matched the product to |s|+n-1 in {lower}, \
             to |s|+n in {upper}; failing {non_proportional:?}"
        ),
    )
}

fn ext_realization() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut fractions = 0;
    let mut classes = 0;
    for n in 2..=3 {
        for t in 1..=4 {
            if t + 1 >= n {
                for f in ext_via_lift(n, t)? {
                    fractions += 1;
                    if !f.matches_generator() {
                        bad.push(format!("fraction n={n} t={t} α={:?}", f.alpha));
                    }
                }
            }
            let gens = ext_generators(n, t)?;
            classes += gens.len();
            if gens.generators.values().any(LaurentClass::is_zero) || !gens.independent() {
                bad.push(format!("generators n={n} t={t}"));
            }
        }
    }
    let s = Shape::hilbert_burch(3)?;
    let displayed = LaurentClass::parse(
        s,
        "x[1,1]^-2*x[1,2]^-1*x[2,1]^-1*x[2,2]^-2*x[3,1]^-1*x[3,2]^-1 \
         - x[1,1]^-1*x[1,2]^-2*x[2,1]^-2*x[2,2]^-1*x[3,1]^-1*x[3,2]^-1",
    )?;
    let class = minor_power_class(&Minors::new(s), &[0, 0, 1])?;
    if class != displayed && class != displayed.scale(&q(-1)) {
        bad.push("displayed class for d_3".into());
    }
    let in_set = ext_generators(3, 3)?.generators.get(&vec![0, 0, 1]) == Some(&class);
    if !in_set {
        bad.push("d_3 class missing from n=3 t=3 generators".into());
    }
    outcome(bad.is_empty(), format!("{fractions} fractions, {classes} classes, failing {bad:?}"))
}

fn annihilator_theorem() -> Result<Outcome> {
    let mut bad = Vec::new();
    for (n, t) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        let r = annihilator(n, t)?;
        if !r.containment_passed {
            bad.push(format!("containment ({n},{t})"));
        }
        if !r.tightness_passed {
            bad.push(format!("tightness ({n},{t})"));
        }
        if !r.fourier_agreed {
            bad.push(format!("fourier ({n},{t})"));
        }
    }
    outcome(bad.is_empty(), format!("4 cases, failing {bad:?}"))
}

fn hilbert_identity() -> Result<Outcome> {
    let mut bad = Vec::new();
    for (m, n, t, r_max) in [(3, 2, 2, 4), (3, 2, 3, 5), (3, 2, 4, 5), (4, 2, 3, 4), (4, 3, 4, 4)] {
        let h = hilbert_compare(m, n, t, r_max)?;
        if !h.equal {
            bad.push((m, n, t, r_max));
        }
    }
    outcome(bad.is_empty(), format!("5 tuples, failing {bad:?}"))
}

fn pairing_equivariance() -> Result<Outcome> {
    let mut bad = Vec::new();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=m);
        let shape = Shape::new(m, n)?;
        let degree = rng.gen_range(0..=3);
        let f = random_homogeneous(&mut rng, shape, degree, 4);
        let g = random_homogeneous(&mut rng, shape, degree, 4);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let theta = gl_random_element(shape, seed);
        let lhs = pairing(&theta.act_dual(&f)?, &theta.act(&g)?)?;
        if lhs != pairing(&f, &g)? {
            bad.push(format!("seed {seed}"));
        }
    }

    let shape = Shape::hilbert_burch(3)?;
    let minors = Minors::new(shape);
    for k in 0..=2u32 {
        let det = det_lambda(shape, &Partition::row(k + 1))?;
        for seed in 0..5 {
            let op = StarOperator::new(gl_random_element(shape, 1000 + seed).act(&det)?)?;
            for alpha in compositions(3, k) {
                if !op.apply(&minors.minor_power(&alpha)?)?.is_zero() {
                    bad.push(format!("orbit k={k} seed={seed} α={alpha:?}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("100 pairing trials, 15 orbit elements, failing {bad:?}"))
}

fn combinatorial_oracles() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for size in 0..=6 {
        for n in 1..=4 {
            for p in partitions(size, n, size)? {
                let brute = brute_ssyt(p.parts(), n);
                checked += 1;
                if to_u64(&schur_dim_partition(&p, n)) != brute || ssyt_count(&p, n)? != brute {
                    bad.push(format!("{:?} n={n}", p.parts()));
                }
            }
        }
    }
    for m in 1..=12usize {
        for n in 1..=(12 / m).min(m) {
            for r in 0..=6 {
                checked += 1;
                let expected = binom((m * n) as u64 + r as u64 - 1, r as u64);
                if to_u64(&cauchy_dim(m, n, r)?) as u128 != expected {
                    bad.push(format!("cauchy m={m} n={n} r={r}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} values, failing {bad:?}"))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "worked example", secs(1), worked_example),
        run(2, "lift commutativity", secs(120), lift_commutativity),
        run(3, "identity suite", secs(60), identity_suite),
        run(4, "cayley proportionality", secs(120), cayley),
        run(5, "ext realization", secs(60), ext_realization),
        run(6, "annihilator", secs(120), annihilator_theorem),
        run(7, "hilbert function", secs(300), hilbert_identity),
        run(8, "pairing equivariance", secs(60), pairing_equivariance),
        run(9, "combinatorial oracles", secs(60), combinatorial_oracles),
    ];
    let failed: Vec<usize> =
        results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
