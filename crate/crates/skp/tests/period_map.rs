use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skp::bigc::BigComplex;
use skp::exact::z;
use skp::fuchsian::{conj_action_real, lift, normalize_to_domain, random_generic_point};
use skp::period_inverse::{
    cm_nullspace_points, invert_period, invert_period_limit, invert_theta, pullbacks, recognize_projective,
    relation_residuals, shimura_residuals, theta_combos, PeriodError, ThetaVector,
};
use skp::quartic_family::{enumerate_singular_params, FiberParam};
use skp::quatalg::Standard;
use skp::siegel_theta::{theta4_vector, SiegelPoint};

const PREC: u32 = 256;

fn fp(a: i64, b: i64) -> FiberParam {
    FiberParam::new(z(a), z(b))
}

/// The parameter at the elliptic point `xi_nu`, through the exact limit
/// when the map is 0/0 there.
fn param_at_elliptic(std: &Standard, nu: usize) -> FiberParam {
    let x = normalize_to_domain(std, &lift(nu), PREC).unwrap();
    match invert_period(std, &x, PREC) {
        Ok(inv) => inv.recognize(1e-30).expect("rational parameter"),
        Err(PeriodError::Indeterminate(_)) => {
            let r = invert_period_limit(std, &lift(nu), PREC).unwrap();
            let one = BigComplex::one(PREC);
            recognize_projective(&one, &r, 1e-30).expect("rational limit")
        }
        Err(e) => panic!("xi_{nu}: {e}"),
    }
}

#[test]
fn elliptic_points_map_to_singular_fibers() {
    let std = Standard::new();
    let expected = [fp(4, -1), fp(2, -1), fp(30, -7), fp(20, -13), fp(0, 1)];
    let mut got = Vec::new();
    for nu in 1..=5 {
        let t = param_at_elliptic(&std, nu);
        assert_eq!(t, expected[nu - 1], "xi_{nu}");
        got.push(t);
    }
    let mut family = enumerate_singular_params().unwrap();
    got.sort();
    family.sort();
    assert_eq!(got, family);
}

#[test]
fn relations_hold_on_random_generic_points() {
    let std = Standard::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..6 {
        let x = random_generic_point(&std, &mut rng, PREC);
        let th = pullbacks(&std, &x, PREC).unwrap();
        assert!(th.x.iter().all(|v| !v.is_zero()));
        let r = relation_residuals(&th.y);
        assert!(r.max() < 1e-40, "{r:?}");
        let inv = invert_theta(th).unwrap();
        let s = shimura_residuals(&inv).unwrap();
        assert!(s.max() < 1e-35, "{s:?}");
    }
}

#[test]
fn relations_fail_at_generic_siegel_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let tau = skp::siegel_theta::random_point(&mut rng, PREC);
        let y = theta_combos(&theta4_vector(&tau, PREC).unwrap());
        let r = relation_residuals(&y);
        assert!(r.f2 > 1e-5 && r.f4 > 1e-5, "{r:?}");
    }
}

#[test]
fn inverse_map_is_invariant_under_elliptic_elements() {
    let std = Standard::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for nu in 1..=5 {
        let x = random_generic_point(&std, &mut rng, PREC);
        let gx = conj_action_real(&std, &lift(nu), &x).unwrap();
        let a = invert_period(&std, &x, PREC).unwrap();
        let b = invert_period(&std, &gx, PREC).unwrap();
        let (ra, rb) = (a.t_ratio().unwrap(), b.t_ratio().unwrap());
        assert!(ra.dist(&rb) < 1e-30 * (1.0 + ra.abs_f64()), "nu = {nu}");
    }
}

#[test]
fn cm_nullspace_is_spanned_by_f5() {
    let pts = cm_nullspace_points(PREC).unwrap();
    assert_eq!(pts.len(), 10);
    let rep = skp::period_inverse::monomial_nullspace(&pts, 1e-40).unwrap();
    assert!(rep.annihilation < 1e-35, "{rep:?}");
    assert_eq!(rep.nullity, 1, "{rep:?}");
    assert!(rep.proportionality.unwrap() < 1e-30, "{rep:?}");
}

#[test]
fn cm_points_satisfy_relations_numerically() {
    let std = Standard::new();
    for k in 1..=8 {
        let tau: SiegelPoint = skp::embedding::cm_image(&std, k, PREC).unwrap();
        let th = ThetaVector::at(&tau, PREC).unwrap();
        let r = relation_residuals(&th.y);
        assert!(r.max() < 1e-40, "case {k}: {r:?}");
    }
}

#[test]
fn elliptic_elements_act_by_sign_changes_and_swaps() {
    use skp::bigc::projective_dist;
    use skp::period_inverse::{apply_sigma, SIGMAS};
    let std = Standard::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = random_generic_point(&std, &mut rng, PREC);
    let y = pullbacks(&std, &x, PREC).unwrap().y;
    // g_2, g_3, g_4 induce sigma_1, sigma_2, sigma_3.
    for (nu, k) in [(2, 0), (3, 1), (4, 2)] {
        let gx = conj_action_real(&std, &lift(nu), &x).unwrap();
        let gy = pullbacks(&std, &gx, PREC).unwrap().y;
        let d = projective_dist(&apply_sigma(&SIGMAS[k], &y), &gy);
        assert!(d < 1e-40, "g_{nu}: {d:e}");
    }
}
