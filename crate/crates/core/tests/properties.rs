use extrafun::expr::{bernstein_approx, differentiate, eval, parse, simplify, Expr, Func};
use extrafun::hyperspace::{equivalent, hyper_add, hyper_scale, project, FunSeq, HyperElement, Window};
use extrafun::seminorm::{seminorm_value, Probe, SeminormFamily};
use proptest::prelude::*;

/// Smooth expressions in x and n: no abs, no log, bounded depth.
fn smooth_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::X),
        Just(Expr::N),
        (-3i64..=3).prop_map(Expr::int),
        (1i64..=4, 2i64..=5).prop_map(|(a, b)| Expr::ratio(a, b)),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), 1i64..=3).prop_map(|(a, k)| Expr::pow(a, Expr::int(k))),
            inner.clone().prop_map(|a| Expr::call(Func::Sin, a)),
            inner.clone().prop_map(|a| Expr::call(Func::Cos, a)),
            inner
                .clone()
                .prop_map(|a| Expr::call(Func::Exp, Expr::mul(Expr::ratio(1, 4), a))),
            inner.prop_map(|a| Expr::div(a, Expr::add(Expr::int(2), Expr::call(Func::Sin, Expr::X)))),
        ]
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivative_matches_central_difference(e in smooth_expr(), x in -2.0f64..2.0, n in 1u64..=4) {
        let d = differentiate(&e).into_result().unwrap();
        let h = 1e-5;
        let (Ok(dv), Ok(hi), Ok(lo)) = (eval(&d, x, n), eval(&e, x + h, n), eval(&e, x - h, n)) else {
            return Ok(());
        };
        prop_assume!(dv.is_finite() && dv.abs() < 1e6);
        let fd = (hi - lo) / (2.0 * h);
        prop_assert!((dv - fd).abs() <= 1e-4 * (1.0 + dv.abs()), "{e}: {dv} vs {fd}");
    }

    #[test]
    fn derivative_is_linear(
        f in smooth_expr(), g in smooth_expr(), a in -4.0f64..4.0, b in -4.0f64..4.0,
        x in -2.0f64..2.0, n in 1u64..=4,
    ) {
        let combo = Expr::add(Expr::mul(Expr::real(a), f.clone()), Expr::mul(Expr::real(b), g.clone()));
        let lhs = differentiate(&combo).into_result().unwrap();
        let (df, dg) = (differentiate(&f).into_result().unwrap(), differentiate(&g).into_result().unwrap());
        let (Ok(l), Ok(p), Ok(q)) = (eval(&lhs, x, n), eval(&df, x, n), eval(&dg, x, n)) else {
            return Ok(());
        };
        prop_assert!(close(l, a * p + b * q, 1e-9));
    }

    #[test]
    fn leibniz_rule_in_value(f in smooth_expr(), g in smooth_expr(), x in -2.0f64..2.0, n in 1u64..=4) {
        let lhs = differentiate(&Expr::mul(f.clone(), g.clone())).into_result().unwrap();
        let (df, dg) = (differentiate(&f).into_result().unwrap(), differentiate(&g).into_result().unwrap());
        let values = (eval(&lhs, x, n), eval(&df, x, n), eval(&dg, x, n), eval(&f, x, n), eval(&g, x, n));
        let (Ok(l), Ok(p), Ok(q), Ok(fv), Ok(gv)) = values else {
            return Ok(());
        };
        prop_assert!(close(l, p * gv + fv * q, 1e-9));
    }

    #[test]
    fn simplify_is_idempotent_and_keeps_value(e in smooth_expr(), x in -2.0f64..2.0, n in 1u64..=4) {
        let s = simplify(&e);
        prop_assert_eq!(simplify(&s), s.clone());
        if let (Ok(a), Ok(b)) = (eval(&e, x, n), eval(&s, x, n)) {
            prop_assert!(close(a, b, 1e-12));
        }
    }

    #[test]
    fn printing_round_trips(e in smooth_expr(), x in -2.0f64..2.0, n in 1u64..=4) {
        let back = parse(&e.to_string()).unwrap();
        if let (Ok(a), Ok(b)) = (eval(&e, x, n), eval(&back, x, n)) {
            prop_assert!(close(a, b, 1e-12), "{e}");
        }
    }

    #[test]
    fn seminorm_axioms(
        f in smooth_expr(), g in smooth_expr(), c in -5.0f64..5.0, n in 1u64..=4,
        a in -2.0f64..0.0, w in 0.5f64..2.0, pt in -2.0f64..2.0,
    ) {
        let probes = [Probe::point(pt), Probe::interval(a, a + w, 257).unwrap(), Probe::Abs];
        for p in &probes {
            if matches!(p, Probe::Abs) && (f.has_x() || g.has_x()) {
                continue;
            }
            let q = |e: &Expr| seminorm_value(p, e, n);
            let (Ok(qf), Ok(qg), Ok(qs)) = (q(&f), q(&g), q(&Expr::add(f.clone(), g.clone()))) else {
                continue;
            };
            prop_assert!(qs <= qf + qg + 1e-9 * (1.0 + qf + qg));
            let qc = q(&Expr::mul(Expr::real(c), f.clone())).unwrap();
            prop_assert!((qc - c.abs() * qf).abs() <= 1e-9 * (1.0 + qc));
            prop_assert_eq!(
                q(&Expr::sub(f.clone(), g.clone())).unwrap(),
                q(&Expr::sub(g.clone(), f.clone())).unwrap()
            );
        }
    }

    #[test]
    fn nested_grids_never_lower_the_sup(e in smooth_expr(), a in -2.0f64..0.0, w in 0.1f64..3.0, n in 1u64..=4) {
        let mut last = f64::NEG_INFINITY;
        for k in 3..=10 {
            let p = Probe::interval(a, a + w, (1 << k) + 1).unwrap();
            let Ok(v) = seminorm_value(&p, &e, n) else { return Ok(()) };
            prop_assert!(v >= last, "grid 2^{k}+1: {v} < {last}");
            last = v;
        }
    }

    #[test]
    fn equivalence_is_symmetric(f in smooth_expr(), g in smooth_expr()) {
        let q = SeminormFamily::compact_sup(&[(0.0, 1.0)], 65).unwrap();
        let w = Window::new(4, 24, 1e-3).unwrap();
        let (f, g) = (FunSeq::Expr(f), FunSeq::Expr(g));
        let ab = equivalent(&f, &g, &q, &w);
        let ba = equivalent(&g, &f, &q, &w);
        match (ab, ba) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.verdict, y.verdict),
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }

    #[test]
    fn class_inverse_and_identity(e in smooth_expr(), c in -3.0f64..3.0) {
        let q = SeminormFamily::pointwise(&[0.25, 0.75]).unwrap();
        let w = Window::new(4, 24, 1e-6).unwrap();
        let f = project(FunSeq::Expr(e), &q);
        let zero = HyperElement::zero(&q);
        if let Ok(d) = hyper_add(&f, &zero).unwrap().equals(&f, &w) {
            prop_assert!(d.holds());
        }
        let inv = hyper_add(&f, &hyper_scale(-1.0, &f)).unwrap();
        if let Ok(d) = inv.equals(&zero, &w) {
            prop_assert!(d.holds());
        }
        let scaled = hyper_scale(c, &hyper_scale(2.0, &f));
        if let Ok(d) = scaled.equals(&hyper_scale(2.0 * c, &f), &w) {
            prop_assert!(!d.fails());
        }
    }

    #[test]
    fn window_text_round_trips(start in 1u64..100, len in 1u64..500, eps in 1e-9f64..1.0) {
        let w = Window::new(start, start + len, eps).unwrap();
        prop_assert_eq!(w.to_string().parse::<Window>().unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bernstein_error_shrinks_with_degree(k in 0.5f64..3.0, phase in -1.0f64..1.0, d in 4usize..64) {
        let f = Expr::call(Func::Sin, Expr::add(Expr::mul(Expr::real(k), Expr::X), Expr::real(phase)));
        let err = |deg: usize| {
            let b = bernstein_approx(&f, 1, -1.0, 1.0, deg).unwrap();
            (0..=400)
                .map(|j| {
                    let x = -1.0 + j as f64 / 200.0;
                    (eval(&b, x, 1).unwrap() - eval(&f, x, 1).unwrap()).abs()
                })
                .fold(0.0, f64::max)
        };
        prop_assert!(err(2 * d) <= err(d) + 1e-12);
    }
}
