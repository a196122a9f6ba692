use sun_casimir::casimir::lemmas::{verify_trace_lemmas, verify_trace_normalizations};
use sun_casimir::casimir::{
    adjoint_conjecture, build_rep, casimir_eigenvalue, casimir_operator, compute_index, conjugation_check,
    gdi_from_eigenvalue, gdi_single_component, scalarity, ClosedForm, RouteChoice,
};
use sun_casimir::invariants::t_closed_form;
use sun_casimir::reps::RepKind;
use sun_casimir::SuN;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn kinds(n: usize) -> Vec<RepKind> {
    let mut v = vec![RepKind::Defining, RepKind::Adjoint, RepKind::SymPower(2)];
    v.extend((2..n).map(RepKind::Fund));
    v
}

#[test]
fn routes_agree_up_to_su4() {
    for n in [3, 4] {
        let alg = SuN::new(n).unwrap();
        for kind in kinds(n) {
            let rep = build_rep(&alg, &kind).unwrap();
            for m in 2..=n {
                let r = compute_index(&alg, &rep, m, RouteChoice::Both).unwrap();
                assert!(r.is_consistent(), "su({n}) {kind} m={m}: {r:?}");
                assert!(r.imaginary_residual < 1e-9);
            }
        }
    }
}

#[test]
fn defining_index_is_one_and_eigenvalues_follow() {
    for n in 3..=5 {
        let alg = SuN::new(n).unwrap();
        let def = build_rep(&alg, &RepKind::Defining).unwrap();
        for m in 2..=n {
            let r = compute_index(&alg, &def, m, RouteChoice::Both).unwrap();
            assert_eq!(r.gdi_rounded, 1, "su({n}) m={m}");
            assert!(r.is_consistent());
            let from_norm = ClosedForm::DefiningEigenvalueFromNorm { m }.evaluate(n).unwrap();
            assert!(rel(r.c_value, from_norm) < 1e-8, "su({n}) m={m}: {}", r.c_value);
            if m <= 4 {
                let table = ClosedForm::DefiningEigenvalue { m }.evaluate(n).unwrap();
                assert!(rel(r.c_value, table) < 1e-8, "su({n}) m={m}");
            }
        }
    }
}

#[test]
fn tabulated_quintic_defining_eigenvalue_is_three_times_computed() {
    let alg = SuN::new(5).unwrap();
    let def = build_rep(&alg, &RepKind::Defining).unwrap();
    let c = casimir_eigenvalue(&alg, &def, 5).unwrap().value;
    assert!(rel(c, 14.4) < 1e-10, "{c}");
    let table = ClosedForm::DefiningEigenvalue { m: 5 }.evaluate(5).unwrap();
    assert!(rel(table / c, 3.0) < 1e-10);
}

#[test]
fn printed_quintic_t_is_seven_ninths_of_computed() {
    let alg = SuN::new(5).unwrap();
    let t = alg.t_tensor(5).unwrap();
    let printed = t_closed_form(&alg, 5).unwrap().unwrap();
    let scaled = printed.scale(9.0 / 7.0);
    assert!(t.body.max_abs_diff(&scaled) / scaled.max_abs() < 1e-10);
}

#[test]
fn adjoint_values() {
    for n in 3..=5 {
        let alg = SuN::new(n).unwrap();
        let ad = build_rep(&alg, &RepKind::Adjoint).unwrap();
        let c2 = casimir_eigenvalue(&alg, &ad, 2).unwrap().value;
        assert!(rel(c2, (n * n) as f64) < 1e-10);
        for m in 2..=n {
            let r = gdi_from_eigenvalue(&alg, &ad, m).unwrap();
            let want = ClosedForm::AdjointIndex { m }.evaluate(n).unwrap();
            assert!((r.gdi_value - want).abs() < 1e-8, "su({n}) m={m}: {}", r.gdi_value);
            if m % 2 == 1 {
                assert!(r.c_value.abs() < 1e-9);
            }
        }
    }
    let alg = SuN::new(4).unwrap();
    let ad = build_rep(&alg, &RepKind::Adjoint).unwrap();
    let r = gdi_from_eigenvalue(&alg, &ad, 4).unwrap();
    assert!(rel(r.c_value, 8.0 * 1344.0 / 720.0) < 1e-10);
}

#[test]
fn adjoint_conjecture_even_orders() {
    for (n, p) in [(3, 2), (4, 4), (5, 4)] {
        let alg = SuN::new(n).unwrap();
        let c = adjoint_conjecture(&alg, p, RouteChoice::Auto).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn spinor_su3() {
    let alg = SuN::new(3).unwrap();
    let sp = build_rep(&alg, &RepKind::Spinor).unwrap();
    assert_eq!(sp.dim(), 16);
    let r2 = compute_index(&alg, &sp, 2, RouteChoice::Both).unwrap();
    assert_eq!(r2.gdi_rounded, 12);
    assert!(rel(r2.c_value, 9.0) < 1e-10);
    let ad = build_rep(&alg, &RepKind::Adjoint).unwrap();
    let a2 = gdi_from_eigenvalue(&alg, &ad, 2).unwrap();
    assert_eq!(r2.gdi_rounded, 2 * a2.gdi_rounded);
    let r3 = compute_index(&alg, &sp, 3, RouteChoice::Both).unwrap();
    assert!(r3.c_value.abs() < 1e-9 && r3.is_consistent());
}

#[test]
fn symmetric_powers_match_closed_forms() {
    for n in 3..=5 {
        let alg = SuN::new(n).unwrap();
        for p in 1..=4 {
            let rep = build_rep(&alg, &RepKind::SymPower(p)).unwrap();
            for m in 2..=n.min(4) {
                let r = compute_index(&alg, &rep, m, RouteChoice::Auto).unwrap();
                let want = ClosedForm::SymPowerIndex { m, p }.evaluate(n).unwrap();
                assert!(r.residual < 1e-4, "su({n}) sym:{p} m={m}");
                assert!(
                    (r.gdi_value - want).abs() < 1e-6,
                    "su({n}) sym:{p} m={m}: {} vs {want}",
                    r.gdi_value
                );
            }
        }
    }
}

#[test]
fn fundamentals_match_closed_forms() {
    for n in 3..=5 {
        let alg = SuN::new(n).unwrap();
        for s in 1..n {
            let rep = build_rep(&alg, &RepKind::Fund(s)).unwrap();
            for m in 2..=n {
                let Some(form) = ClosedForm::for_fundamental(m, s) else {
                    continue;
                };
                let r = compute_index(&alg, &rep, m, RouteChoice::Auto).unwrap();
                let want = form.evaluate(n).unwrap();
                assert!(
                    (r.gdi_value - want).abs() < 1e-6,
                    "su({n}) fund:{s} m={m}: {} vs {want}",
                    r.gdi_value
                );
            }
        }
    }
}

#[test]
fn dynkin_label_eigenvalues() {
    let alg = SuN::new(3).unwrap();
    let cases = [
        (RepKind::Defining, (1, 0)),
        (RepKind::Fund(2), (0, 1)),
        (RepKind::Adjoint, (1, 1)),
        (RepKind::SymPower(2), (2, 0)),
        (RepKind::SymPower(3), (3, 0)),
    ];
    for (kind, (lambda, mu)) in cases {
        let rep = build_rep(&alg, &kind).unwrap();
        let c2 = casimir_eigenvalue(&alg, &rep, 2).unwrap().value;
        let c3 = casimir_eigenvalue(&alg, &rep, 3).unwrap().value;
        assert!(
            rel(c2, ClosedForm::Su3Quadratic { lambda, mu }.evaluate(3).unwrap()) < 1e-10,
            "{kind}"
        );
        assert!(
            rel(c3, ClosedForm::Su3Cubic { lambda, mu }.evaluate(3).unwrap()) < 1e-10,
            "{kind}"
        );
    }
    let alg = SuN::new(4).unwrap();
    for (kind, (l, u, v)) in [
        (RepKind::Defining, (1, 0, 0)),
        (RepKind::Fund(2), (0, 1, 0)),
        (RepKind::Fund(3), (0, 0, 1)),
        (RepKind::Adjoint, (1, 0, 1)),
        (RepKind::SymPower(2), (2, 0, 0)),
    ] {
        let rep = build_rep(&alg, &kind).unwrap();
        let c2 = casimir_eigenvalue(&alg, &rep, 2).unwrap().value;
        let want = ClosedForm::Su4Quadratic {
            lambda: l,
            mu: u,
            nu: v,
        }
        .evaluate(4)
        .unwrap();
        assert!(rel(c2, want) < 1e-10, "{kind}: {c2} vs {want}");
    }
}

#[test]
fn conjugation_flips_odd_orders() {
    let alg = SuN::new(4).unwrap();
    for kind in [
        RepKind::Defining,
        RepKind::Adjoint,
        RepKind::Fund(2),
        RepKind::SymPower(2),
    ] {
        let rep = build_rep(&alg, &kind).unwrap();
        for m in 2..=4 {
            for c in conjugation_check(&alg, &rep, m, RouteChoice::Auto).unwrap() {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
    let alg = SuN::new(3).unwrap();
    let def = build_rep(&alg, &RepKind::Defining).unwrap();
    let conj = build_rep(&alg, &"conj:def".parse().unwrap()).unwrap();
    let c = casimir_eigenvalue(&alg, &conj, 3).unwrap().value;
    assert!(rel(c, -10.0 / 3.0) < 1e-12);
    assert!(rel(casimir_eigenvalue(&alg, &def, 3).unwrap().value, 10.0 / 3.0) < 1e-12);
}

#[test]
fn casimir_operator_is_scalar_su3() {
    let alg = SuN::new(3).unwrap();
    for kind in [RepKind::Defining, RepKind::Adjoint] {
        let rep = build_rep(&alg, &kind).unwrap();
        for m in [2, 3] {
            let op = casimir_operator(&alg, &rep, m).unwrap();
            let (off, spread) = scalarity(&op);
            assert!(off < 1e-9 && spread < 1e-9, "{kind} m={m}: {off} {spread}");
            let c = casimir_eigenvalue(&alg, &rep, m).unwrap().value;
            assert!((op[(0, 0)].re - c).abs() < 1e-9);
        }
    }
}

#[test]
fn absent_orders_report_zero() {
    let alg = SuN::new(3).unwrap();
    let def = build_rep(&alg, &RepKind::Defining).unwrap();
    for route in [RouteChoice::SymmetricTrace, RouteChoice::AntisymComponent] {
        let r = compute_index(&alg, &def, 4, route).unwrap();
        assert!(r.absent && r.c_value == 0.0 && r.gdi_value == 0.0);
    }
}

#[test]
fn trace_lemmas_su3_su4() {
    for n in [3, 4] {
        let alg = SuN::new(n).unwrap();
        let checks = verify_trace_lemmas(&alg)
            .unwrap()
            .into_iter()
            .chain(verify_trace_normalizations(&alg).unwrap());
        for c in checks {
            assert!(c.passed(), "su({n}) {}: {:e}", c.name, c.residual);
        }
    }
}

#[test]
fn component_route_reaches_su6_top_order() {
    let alg = SuN::new(6).unwrap();
    let rep = build_rep(&alg, &RepKind::Fund(3)).unwrap();
    let r = gdi_single_component(&alg, &rep, 6).unwrap();
    assert_eq!(r.gdi_rounded, 66);
    assert!(r.residual < 1e-6 && r.imaginary_residual < 1e-9);
}
