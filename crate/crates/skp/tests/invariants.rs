use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skp::exact::{q, z};
use skp::lattice_core::{determinant, discriminant_form, dual_twist, twist, GramLattice};
use skp::quartic_family::{orbit_size, permuted, point, quartic_value, FiberParam};
use skp::quatalg::{psi, QuatElem, Standard};
use skp::radical::Radical;

fn radical(a: i64, b: i64, c: i64, d: i64) -> Radical {
    // a + b sqrt(2) + c sqrt(-3) + d sqrt(5)
    [(1, a), (2, b), (-3, c), (5, d)]
        .iter()
        .fold(Radical::zero(), |acc, &(n, k)| acc.add(&Radical::sqrt_int(n).scale(&q(k, 1))))
}

fn small() -> impl Strategy<Value = i64> {
    -20i64..=20
}

fn quat() -> impl Strategy<Value = QuatElem> {
    prop::array::uniform4(-6i64..=6).prop_map(QuatElem::from_ints)
}

/// Symmetric nondegenerate integer Gram matrices of rank 2 or 3.
fn gram() -> impl Strategy<Value = GramLattice> {
    prop::collection::vec(-6i64..=6, 6)
        .prop_map(|v| GramLattice::from_rows(&[&[2 * v[0], v[1], v[2]], &[v[1], 2 * v[3], v[4]], &[v[2], v[4], 2 * v[5]]]))
        .prop_filter_map("degenerate", |g| g.ok().filter(|l| !determinant(l).is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radical_ring_laws(x in prop::array::uniform4(small()), y in prop::array::uniform4(small()), w in prop::array::uniform4(small())) {
        let (a, b, c) = (radical(x[0], x[1], x[2], x[3]), radical(y[0], y[1], y[2], y[3]), radical(w[0], w[1], w[2], w[3]));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c)).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn radical_evaluation_is_a_ring_map(x in prop::array::uniform4(small()), y in prop::array::uniform4(small())) {
        let (a, b) = (radical(x[0], x[1], x[2], x[3]), radical(y[0], y[1], y[2], y[3]));
        let prec = 128;
        let lhs = a.mul(&b).unwrap().eval(prec);
        let rhs = &a.eval(prec) * &b.eval(prec);
        prop_assert!(lhs.dist(&rhs) < 1e-30 * (1.0 + rhs.abs_f64()));
    }

    #[test]
    fn radical_display_round_trips(x in prop::array::uniform4(small())) {
        let a = radical(x[0], x[1], x[2], x[3]);
        prop_assert_eq!(Radical::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn discriminant_group_order_is_abs_det(l in gram()) {
        let f = discriminant_form(&l).unwrap();
        prop_assert_eq!(f.group_order(), determinant(&l).abs());
    }

    #[test]
    fn twist_scales_determinant(l in gram(), k in 1i64..=5) {
        let t = twist(&l, &q(k, 1)).unwrap();
        prop_assert_eq!(determinant(&t), determinant(&l) * BigInt::from(k).pow(3));
    }

    #[test]
    fn double_adjugate_is_scaled_original(l in gram()) {
        // The dual Gram is adj(G)/det(G), so twisting by det gives the adjugate.
        let d = determinant(&l);
        let lambda = num_rational::BigRational::from_integer(d.clone());
        let adj = dual_twist(&l, &lambda).unwrap();
        let back = dual_twist(&adj, &num_rational::BigRational::from_integer(determinant(&adj))).unwrap();
        // adj(adj(G)) = det(G)^(n-2) G for n = 3.
        let expect = twist(&l, &lambda).unwrap();
        prop_assert_eq!(back, expect);
    }

    #[test]
    fn reduced_norm_is_multiplicative(a in quat(), b in quat()) {
        let std = Standard::new();
        let alg = std.algebra();
        prop_assert_eq!(alg.nr(&alg.mul(&a, &b)), alg.nr(&a) * alg.nr(&b));
        prop_assert_eq!(alg.mul(&a, &b).conj(), alg.mul(&b.conj(), &a.conj()));
    }

    #[test]
    fn left_multiplication_scales_the_symplectic_form(x in quat(), v in quat(), w in quat()) {
        let std = Standard::new();
        let alg = std.algebra();
        let lhs = psi(alg, &std.i, &alg.mul(&x, &v), &alg.mul(&x, &w));
        prop_assert_eq!(lhs, alg.nr(&x) * psi(alg, &std.i, &v, &w));
        prop_assert_eq!(psi(alg, &std.i, &v, &w), -psi(alg, &std.i, &w, &v));
    }

    #[test]
    fn fiber_params_are_normalized(a in -50i64..=50, b in -50i64..=50, k in prop::sample::select(vec![-7i64, -2, -1, 1, 3, 11])) {
        prop_assume!(a != 0 || b != 0);
        let t = FiberParam::new(z(a), z(b));
        prop_assert_eq!(&FiberParam::new(z(k * a), z(k * b)), &t);
        prop_assert_eq!(num_integer::Integer::gcd(&t.t0, &t.t1), z(1));
        prop_assert!(t.t0.is_positive() || (t.t0.is_zero() && t.t1.is_positive()));
    }

    #[test]
    fn quartic_is_symmetric(c in prop::array::uniform5(-9i64..=9), t0 in -9i64..=9, t1 in -9i64..=9) {
        prop_assume!(t0 != 0 || t1 != 0);
        prop_assume!(c.iter().any(|&v| v != 0));
        let t = FiberParam::new(z(t0), z(t1));
        let p = point(c);
        let v = quartic_value(&t, &p);
        for r in permuted(&p) {
            prop_assert_eq!(quartic_value(&t, &r), v.clone());
        }
        prop_assert_eq!(120 % orbit_size(&p).unwrap(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn embedding_is_equivariant(seed in any::<u64>(), nu in 1usize..=5) {
        use skp::embedding::{act_on_tau, phi_dom};
        use skp::fuchsian::{conj_action_real, lift, random_generic_point};
        let std = Standard::new();
        let prec = 160;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_generic_point(&std, &mut rng, prec);
        let g = lift(nu);
        let lhs = phi_dom(&std, &conj_action_real(&std, &g, &x).unwrap()).unwrap();
        let rhs = act_on_tau(&std, &g, &phi_dom(&std, &x).unwrap()).unwrap();
        prop_assert!(lhs.dist(&rhs) < 1e-35, "distance {:e}", lhs.dist(&rhs));
    }
}
