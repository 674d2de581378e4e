use minorlift::complexes::{check_square, ExteriorElement, LiftContext, StrandElement};
use minorlift::determinantal::IndexSet;
use minorlift::{Poly, Shape};

#[test]
fn h_recurrence() {
    for n in 2..=4 {
        let ctx = LiftContext::new(n).unwrap();
        for r in 2..=n {
            for a in IndexSet::subsets(n, r) {
                for e in 0..=2 {
                    for &b in a.as_slice() {
                        let rest = a.without(b);
                        let lhs = ctx.h_poly(&a, e + 1).unwrap();
                        let rhs = &(&Poly::t(ctx.shape(), b) * &ctx.delta_set_pow(&rest, 1).unwrap())
                            * &ctx.h_poly(&a, e).unwrap()
                            + &ctx.delta_pow(b, e + 1).unwrap() * &ctx.h_poly(&rest, e + 1).unwrap();
                        assert_eq!(lhs, rhs, "n={n} A={a} e={e} β={b}");
                    }
                }
            }
        }
    }
}

#[test]
fn key_identity_vanishes() {
    for n in 3..=4 {
        let ctx = LiftContext::new(n).unwrap();
        for r in 3..=n {
            for a in IndexSet::subsets(n, r) {
                assert!(ctx.key_identity_sum(&a).unwrap().is_zero(), "n={n} A={a}");
            }
        }
    }
    let ctx = LiftContext::new(3).unwrap();
    assert!(ctx.key_identity_sum(&IndexSet::range(2)).is_err());
}

#[test]
fn differentials_square_to_zero() {
    for n in 2..=4 {
        let ctx = LiftContext::new(n).unwrap();
        for t in 0..=4 {
            assert!(ctx.check_koszul_square_zero(t).unwrap().is_empty());
        }
        assert!(ctx.check_strand_square_zero().unwrap().is_empty());
    }
}

#[test]
fn single_squares_commute() {
    for (n, t) in [(2, 2), (3, 3), (4, 2)] {
        for r in 2..=n + 1 {
            assert!(check_square(n, t, r).unwrap().passed(), "n={n} t={t} r={r}");
        }
    }
}

#[test]
fn phi_gradings() {
    let ctx = LiftContext::new(4).unwrap();
    for t in 0..=4u32 {
        for r in 1..=4 {
            for a in IndexSet::subsets(4, r) {
                let w = ctx.phi(t, &a).unwrap();
                assert_eq!(w.degree(), r - 1);
                assert_eq!(w.t_degree(), t as i64 - r as i64 + 1);
                if w.t_degree() < 0 {
                    assert!(w.is_zero());
                }
                for (_, c) in w.terms() {
                    assert_eq!(c.t_homogeneous_degree(), Some(w.t_degree() as u32));
                    assert!(c.x_homogeneous_degree().is_some());
                }
            }
        }
    }
}

#[test]
fn evaluation_recovers_powers() {
    for n in 2..=4 {
        let ctx = LiftContext::new(n).unwrap();
        for t in 0..=3 {
            assert!(ctx.check_evaluation(t).unwrap().is_empty());
        }
    }
}

#[test]
fn top_lift_is_minus_the_product() {
    // φ_{n-1}^{n-1}(e_{1..n}) = -(prod Δ_i)^{n-2} f_{1..n-1}
    for n in 2..=4 {
        let ctx = LiftContext::new(n).unwrap();
        let w = ctx.phi((n - 1) as u32, &IndexSet::range(n)).unwrap();
        let expected = -ctx.delta_set_pow(&IndexSet::range(n), (n - 2) as u32).unwrap();
        assert_eq!(w.coefficient(&IndexSet::range(n - 1)), expected, "n={n}");
    }
}

#[test]
fn element_json_round_trip() {
    let ctx = LiftContext::new(3).unwrap();
    let s = ctx.shape();
    let w = ctx.phi(3, &IndexSet::range(2)).unwrap();
    let back = StrandElement::from_json(s, w.degree(), w.t_degree(), &w.to_json()).unwrap();
    assert_eq!(back, w);
    let mut v = ExteriorElement::zero(s, 2);
    v.add_term(IndexSet::range(2), &Poly::x(s, 1, 1)).unwrap();
    assert_eq!(ExteriorElement::from_json(s, 2, &v.to_json()).unwrap(), v);
    assert!(StrandElement::basis(Shape::hilbert_burch(3).unwrap(), IndexSet::range(3)).is_err());
}
