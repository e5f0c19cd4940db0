use super::*;
use crate::chord::{enumerate_diagrams, parse_diagram, ChordDiagram, Symmetry};
use crate::killing::casimir_theta;
use crate::lie_algebra::tests::sl2_hef;
use crate::lie_algebra::{build_classical, ClassicalFamily};
use crate::linalg::{rat, ratio};

fn algebra(family: ClassicalFamily, m: usize) -> (StructureConstants, KillingData) {
    let sc = build_classical(family, m).unwrap();
    let kd = casimir_theta(&sc).unwrap();
    (sc, kd)
}

#[test]
fn network_shape() {
    for m in 1..=4 {
        for d in enumerate_diagrams(m, Symmetry::Rotation) {
            let net = build_network(&d);
            assert_eq!(net.mu_nodes, 2 * m);
            assert_eq!(net.theta_nodes, m);
            assert_eq!(net.edges.len(), 4 * m);
            assert!(net.is_closed(), "{:?}", net.structural_violations());
        }
    }
}

#[test]
fn plan_widths() {
    let one = parse_diagram("1-2").unwrap();
    assert!(plan_contraction(&build_network(&one), 3).peak_width <= 3);
    let nc = parse_diagram("1-2,3-4").unwrap();
    assert!(plan_contraction(&build_network(&nc), 3).peak_width <= 3);
    for m in 1..=4 {
        for d in enumerate_diagrams(m, Symmetry::Rotation) {
            for n in [3, 8, 21] {
                let plan = plan_contraction(&build_network(&d), n);
                assert!(plan.peak_width <= 2 * m + 2);
                assert!(plan.predicted_cost <= plan.naive_cost, "{d} n={n}");
                assert_eq!(plan.steps.len(), 2 * m);
                assert_eq!(plan.steps.last().unwrap().width_after(), 2);
            }
        }
    }
}

#[test]
fn sl2_small_values() {
    let sc = sl2_hef();
    let kd = casimir_theta(&sc).unwrap();
    let one = parse_diagram("1-2").unwrap();
    assert_eq!(evaluate_diagram(&one, &sc, &kd).unwrap(), rat(3));
    let nc = parse_diagram("1-2,3-4").unwrap();
    let cr = parse_diagram("1-3,2-4").unwrap();
    assert_eq!(evaluate_naive(&nc, &sc, &kd).unwrap(), rat(3));
    assert_eq!(evaluate_naive(&cr, &sc, &kd).unwrap(), ratio(3, 2));
    assert_eq!(evaluate_diagram(&nc, &sc, &kd).unwrap(), rat(3));
    assert_eq!(evaluate_diagram(&cr, &sc, &kd).unwrap(), ratio(3, 2));
    assert!((evaluate_float(&one, &sc, &kd).unwrap() - 3.0).abs() < 1e-9);
    assert!((evaluate_float(&cr, &sc, &kd).unwrap() - 1.5).abs() < 1e-9);
}

#[test]
fn one_chord_is_dimension() {
    for (family, m, dim) in [
        (ClassicalFamily::SpecialLinear, 3, 8),
        (ClassicalFamily::Orthogonal, 5, 10),
    ] {
        let (sc, kd) = algebra(family, m);
        let one = parse_diagram("1-2").unwrap();
        assert_eq!(evaluate_naive(&one, &sc, &kd).unwrap(), rat(dim));
        assert_eq!(evaluate_diagram(&one, &sc, &kd).unwrap(), rat(dim));
    }
}

#[test]
fn sweep_greedy_and_naive_agree() {
    for (family, m) in [(ClassicalFamily::SpecialLinear, 2), (ClassicalFamily::Orthogonal, 4)] {
        let (sc, kd) = algebra(family, m);
        for chords in 1..=3 {
            for d in enumerate_diagrams(chords, Symmetry::Rotation) {
                let sweep = evaluate_diagram(&d, &sc, &kd).unwrap();
                let general = evaluate_network(&TensorNetwork { circle: None, ..build_network(&d) }, &sc, &kd).unwrap();
                assert_eq!(sweep, general, "{d}");
                if chords <= 2 || sc.dim() <= 3 {
                    assert_eq!(sweep, evaluate_naive(&d, &sc, &kd).unwrap(), "{d}");
                }
            }
        }
    }
}

#[test]
fn float_tracks_exact_on_so5() {
    let (sc, kd) = algebra(ClassicalFamily::Orthogonal, 5);
    let fe = FloatEvaluator::new(&sc, &kd).unwrap();
    let ex = DiagramEvaluator::new(&sc, &kd).unwrap();
    for d in crate::chord::enumerate_up_to(3, Symmetry::Rotation) {
        let exact = crate::linalg::rational_to_f64(&ex.evaluate(&d).unwrap());
        let approx = fe.evaluate(&d).unwrap();
        assert!((approx - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{d}: {approx} vs {exact}");
    }
}

#[test]
fn naive_budget_enforced() {
    let (sc, kd) = algebra(ClassicalFamily::SpecialLinear, 3);
    let d = parse_diagram("1-2,3-4").unwrap();
    assert!(matches!(
        evaluate_naive_with_budget(&d, &sc, &kd, 1000),
        Err(Error::BudgetExceeded(_))
    ));
}

#[test]
fn dimension_mismatch_rejected() {
    let (sc, _) = algebra(ClassicalFamily::SpecialLinear, 3);
    let kd = casimir_theta(&sl2_hef()).unwrap();
    let d = parse_diagram("1-2").unwrap();
    assert!(matches!(evaluate_diagram(&d, &sc, &kd), Err(Error::MalformedInput(_))));
    assert!(matches!(evaluate_naive(&d, &sc, &kd), Err(Error::MalformedInput(_))));
}

#[test]
fn rotation_reflection_and_input_swap() {
    let sc = sl2_hef();
    let kd = casimir_theta(&sc).unwrap();
    let ev = DiagramEvaluator::new(&sc, &kd).unwrap();
    for m in 1..=3 {
        for d in enumerate_diagrams(m, Symmetry::None) {
            let v = ev.evaluate(&d).unwrap();
            for s in 0..d.points() {
                assert_eq!(ev.evaluate(&d.rotated(s)).unwrap(), v);
            }
            assert_eq!(ev.evaluate(&d.reflected()).unwrap(), v, "{d}");
            // swap in1/in2 on every μ
            let mut net = build_network(&d);
            net.circle = None;
            for e in net.edges.iter_mut() {
                e.1 = match e.1 {
                    Port::In1(u) => Port::In2(u),
                    Port::In2(u) => Port::In1(u),
                    p => p,
                };
            }
            assert_eq!(evaluate_network(&net, &sc, &kd).unwrap(), v);
        }
    }
}

#[test]
fn open_network_rejected() {
    let sc = sl2_hef();
    let kd = casimir_theta(&sc).unwrap();
    let mut net = build_network(&ChordDiagram::parse_matching("1-2").unwrap());
    net.edges.pop();
    assert!(evaluate_network(&net, &sc, &kd).is_err());
}
