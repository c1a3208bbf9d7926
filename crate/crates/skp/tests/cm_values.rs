use skp::bigc::{projective_dist, BigComplex};
use skp::cm::{CASES, CLASS_POLYNOMIALS, J_VALUES, LAMBDA_VALUES};
use skp::radical::Radical;
use skp::siegel_theta::{j_invariant, lambda, theta4_vector, SiegelPoint};

const PREC: u32 = 256;

fn eval(s: &str) -> BigComplex {
    Radical::parse(s).unwrap().eval(PREC)
}

fn rel(a: &BigComplex, b: &BigComplex) -> f64 {
    a.dist(b) / b.abs_f64().max(1.0)
}

#[test]
fn published_j_values_match_theta_evaluation() {
    for (tau, j) in &J_VALUES {
        let got = j_invariant(&eval(tau), PREC).unwrap();
        let r = rel(&got, &eval(j));
        assert!(r < 1e-40, "j({tau}): relative error {r:e}");
    }
}

#[test]
fn published_lambda_values_match_theta_evaluation() {
    for (tau, l) in &LAMBDA_VALUES {
        let got = lambda(&eval(tau), PREC).unwrap();
        let r = rel(&got, &l.eval(PREC).unwrap());
        assert!(r < 1e-40, "lambda({tau}): relative error {r:e}");
    }
}

#[test]
fn class_polynomials_vanish_at_cm_j_values() {
    for poly in &CLASS_POLYNOMIALS {
        for tau in poly.roots {
            let j = j_invariant(&eval(tau), PREC).unwrap();
            let r = poly.relative_residual(&j);
            assert!(r < 1e-40, "D = {}: residual {r:e} at {tau}", poly.d);
        }
    }
}

#[test]
fn corrected_quintuples_match_theta_at_printed_matrices() {
    for case in &CASES {
        let [a, b, c] = case.tau.map(eval);
        let mut tau = SiegelPoint::new(a, b, c).unwrap();
        if case.printed_reduced {
            tau = tau.transform([[1, -1], [0, 1]]);
        }
        let x = theta4_vector(&tau, PREC).unwrap();
        let published = projective_dist(&x, &case.quintuple_eval(PREC).unwrap());
        let corrected = projective_dist(&x, &case.corrected_eval(PREC).unwrap());
        assert!(corrected < 1e-50, "case {}: projective distance {corrected:e}", case.index);
        assert_eq!(published < 1e-50, case.erratum.is_none(), "case {}", case.index);
    }
}
