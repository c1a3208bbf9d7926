//! The registry of verification checks. Each check reproduces one published
//! value or one numerical identity and reports a residual where one exists.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skp::bigc::{pow2_neg, projective_dist, BigComplex};
use skp::cm::{CmCase, CASES, CLASS_POLYNOMIALS, J_VALUES, LAMBDA_VALUES};
use skp::embedding::{
    act_on_tau, cm_golden_distance, eta_elements, mod2_goldens, mod2_group_order, phi_dom, published_mod2_generators,
    y_anticommutators, y_basis,
};
use skp::exact::{q, qi, z};
use skp::fuchsian::{
    conj_action_real, eigen_invariants, elliptic_data, lift, norm_class, normalize_to_domain, random_generic_point,
    relation_check,
};
use skp::lattice_core::{
    cyclic_value, determinant, discriminant_form, dual_twist, pform_decompose, render_pform, s5_invariant_lattice,
};
use skp::period_inverse::{
    cm_nullspace_points, curve_identities, exact_relations, f2, f4, f5, fraction_invariant, invert_period,
    invert_period_limit, invert_theta, monomial_nullspace, pullbacks, r_fractions, recognize_projective,
    relation_residuals, semi_invariance, shimura_residuals, theta_combos, PeriodError, ThetaVector, SIGMAS,
};
use skp::quartic_family::{
    a1_check, double_quadric_certificate, enumerate_singular_params, gradient_rank, orbit_size, permuted, point,
    FiberParam,
};
use skp::quatalg::{
    eta_isometry, hilbert_ramification, reduced_discriminant, symplectic_check, t_lattice, t_star_lattice, Place,
    QuatElem, Standard,
};
use skp::radical::Radical;
use skp::siegel_theta::{
    doubling_residual, even_chars, factorization_residual, identities_g1, igusa_residual, j_invariant, lambda,
    random_point, theta4_vector, SiegelPoint,
};

/// Verification suites selectable on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lattice,
    Quaternion,
    Fuchsian,
    Theta,
    Embedding,
    Period,
    Family,
}

impl Suite {
    /// All suites in report order.
    pub const ALL: [Suite; 7] =
        [Suite::Lattice, Suite::Quaternion, Suite::Fuchsian, Suite::Theta, Suite::Embedding, Suite::Period, Suite::Family];

    /// Lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Quaternion => "quaternion",
            Suite::Fuchsian => "fuchsian",
            Suite::Theta => "theta",
            Suite::Embedding => "embedding",
            Suite::Period => "period",
            Suite::Family => "family",
        }
    }

    /// Parses a suite name.
    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Numerical settings shared by all checks.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Config {
    /// Working precision in bits.
    pub precision_bits: u32,
    /// Tolerance for comparisons against published algebraic values.
    pub tolerance: f64,
    /// Tolerance for end-to-end residuals (relations, curve equations).
    pub e2e_tolerance: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config { precision_bits: skp::DEFAULT_PRECISION, tolerance: 1e-50, e2e_tolerance: 1e-35 }
    }
}

impl Config {
    /// Tolerance of the theta identity suite: `2^(-prec + 20)`.
    pub fn identity_tolerance(&self) -> f64 {
        pow2_neg(self.precision_bits as i64 - 20)
    }
}

/// Shared state passed to every check.
pub struct Ctx {
    pub cfg: Config,
    pub std: Standard,
}

impl Ctx {
    pub fn new(cfg: Config) -> Self {
        Ctx { cfg, std: Standard::new() }
    }

    fn prec(&self) -> u32 {
        self.cfg.precision_bits
    }
}

/// Result of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    /// Largest residual or exact difference, when the check is numerical.
    pub residual: Option<f64>,
    pub detail: String,
}

impl Outcome {
    fn exact(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, residual: None, detail: detail.into() }
    }

    fn below(residual: f64, tol: f64, detail: impl Into<String>) -> Self {
        Outcome { passed: residual < tol, residual: Some(residual), detail: format!("{} (tolerance {tol:e})", detail.into()) }
    }
}

type CheckFn = fn(&Ctx) -> Result<Outcome, String>;

/// A registered check.
pub struct Check {
    pub id: &'static str,
    pub suite: Suite,
    /// Acceptance criterion (1 to 10) this check belongs to, 0 for
    /// supplementary checks.
    pub criterion: u8,
    /// The claim being checked, in words.
    pub description: &'static str,
    pub run: CheckFn,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn radical(s: &str, prec: u32) -> Result<BigComplex, String> {
    Ok(Radical::parse(s).map_err(err)?.eval(prec))
}

// ---------------------------------------------------------------- lattice

fn lattice_t_determinant(_: &Ctx) -> Result<Outcome, String> {
    let d = determinant(&t_lattice());
    Ok(Outcome::exact(d == z(-300), format!("det T = {d}")))
}

fn lattice_invariant_determinant(_: &Ctx) -> Result<Outcome, String> {
    let d = determinant(&s5_invariant_lattice());
    Ok(Outcome::exact(d == z(-300), format!("det = {d}")))
}

fn lattice_invariant_form(_: &Ctx) -> Result<Outcome, String> {
    let f = discriminant_form(&s5_invariant_lattice()).map_err(err)?;
    let two = cyclic_value(&f.p_part(2));
    let three = render_pform(&pform_decompose(&f, 3).map_err(err)?, 3);
    let five = render_pform(&pform_decompose(&f, 5).map_err(err)?, 5);
    let orders_ok = f.p_part(2).orders == vec![z(4)] && f.p_part(3).orders == vec![z(3)];
    let ok = orders_ok && two == Some(q(5, 4)) && three == "<2/3>" && five == "<1/5>+<2/5>";
    let two = two.map_or("non-cyclic".into(), |v| format!("<{v}>"));
    Ok(Outcome::exact(ok, format!("{two} + {three} + {five}")))
}

fn lattice_t_group(_: &Ctx) -> Result<Outcome, String> {
    let f = discriminant_form(&t_lattice()).map_err(err)?;
    let ok = f.group_order() == z(300)
        && f.p_part(2).orders == vec![z(4)]
        && f.p_part(3).orders == vec![z(3)]
        && f.p_part(5).orders == vec![z(5), z(5)];
    Ok(Outcome::exact(ok, format!("|A_T| = {}", f.group_order())))
}

fn lattice_dual_twist(_: &Ctx) -> Result<Outcome, String> {
    let ts = dual_twist(&t_lattice(), &q(-60, 1)).map_err(err)?;
    Ok(Outcome::exact(ts == t_star_lattice(), format!("Gram {:?}", ts.gram_i64())))
}

// ------------------------------------------------------------- quaternion

fn quat_structure_constants(ctx: &Ctx) -> Result<Outcome, String> {
    let a = ctx.std.algebra();
    let want: [((usize, usize), [i64; 4]); 9] = [
        ((1, 1), [48, 0, 0, 0]),
        ((2, 2), [48, 0, 0, 0]),
        ((3, 3), [-240, 0, 0, 0]),
        ((1, 2), [12, 0, 0, -3]),
        ((2, 1), [12, 0, 0, 3]),
        ((2, 3), [0, 16, -4, 0]),
        ((3, 2), [0, -16, 4, 0]),
        ((3, 1), [0, -4, 16, 0]),
        ((1, 3), [0, 4, -16, 0]),
    ];
    let bad: Vec<String> = want
        .iter()
        .filter(|((i, j), c)| a.structure(*i, *j) != &c.map(|v| q(v, 1)))
        .map(|((i, j), _)| format!("e{i}e{j}"))
        .collect();
    Ok(Outcome::exact(bad.is_empty(), if bad.is_empty() { "all nine products".into() } else { bad.join(", ") }))
}

fn quat_cl_discriminant(ctx: &Ctx) -> Result<Outcome, String> {
    let d = reduced_discriminant(&ctx.std.cl_order).map_err(err)?;
    Ok(Outcome::exact(d == z(2880), format!("d = {d}")))
}

fn quat_ext_discriminant(ctx: &Ctx) -> Result<Outcome, String> {
    let d = reduced_discriminant(&ctx.std.ext_order).map_err(err)?;
    Ok(Outcome::exact(d == z(30), format!("d = {d}")))
}

fn quat_ramification(ctx: &Ctx) -> Result<Outcome, String> {
    // u = e2 - e1/4 anticommutes with e1, so the algebra is (e1^2, u^2).
    let a = ctx.std.algebra();
    let (e1, e2) = (a.basis(1), a.basis(2));
    let u = e2.sub(&e1.scale(&q(1, 4)));
    let anti = a.mul(&e1, &u).add(&a.mul(&u, &e1));
    let (s1, s2) = (a.mul(&e1, &e1), a.mul(&u, &u));
    if anti != QuatElem::zero() || !s1.is_scalar() || !s2.is_scalar() {
        return Ok(Outcome::exact(false, "no orthogonal pair found"));
    }
    let r = hilbert_ramification(&s1.c[0], &s2.c[0]).map_err(err)?;
    let ok = r.places == vec![Place::Prime(3), Place::Prime(5)] && r.discriminant == 15;
    Ok(Outcome::exact(ok, format!("({}, {}) ramified at {:?}", s1.c[0], s2.c[0], r.places)))
}

fn quat_symplectic(ctx: &Ctx) -> Result<Outcome, String> {
    let c = symplectic_check(ctx.std.algebra(), &ctx.std.i, &ctx.std.symplectic).map_err(err)?;
    Ok(Outcome::exact(c.standard, "Psi_I Gram on (a1, a2, b1, b2)"))
}

fn quat_eta(ctx: &Ctx) -> Result<Outcome, String> {
    let eta = eta_isometry(&ctx.std.clifford).map_err(err)?;
    let t = t_lattice();
    let ok = (0..3).all(|i| {
        (0..3).all(|j| {
            let want = qi(&t.gram()[i][j]) * q(-12, 1);
            eta.norm_gram[i][j] == want && eta.image_gram[i][j] == want && eta.square_gram[i][j] == -want.clone()
        })
    });
    Ok(Outcome::exact(ok, "norm form -12 T, square form 12 T"))
}

// --------------------------------------------------------------- fuchsian

fn fuchsian_relations(ctx: &Ctx) -> Result<Outcome, String> {
    let r = relation_check(&ctx.std).map_err(err)?;
    let ok = r.squares_scalar.iter().all(|&b| b) && r.lifts_non_scalar.iter().all(|&b| b) && r.product_scalar;
    Ok(Outcome::exact(ok, format!("g1 g3 g5 g4 g2 = {:?}", r.product)))
}

fn fuchsian_normalizing(ctx: &Ctx) -> Result<Outcome, String> {
    let r = relation_check(&ctx.std).map_err(err)?;
    Ok(Outcome::exact(r.normalizing.iter().all(|&b| b), format!("{:?}", r.normalizing)))
}

fn fuchsian_norm_classes(ctx: &Ctx) -> Result<Outcome, String> {
    let got: Vec<String> = (1..=5)
        .map(|nu| norm_class(ctx.std.algebra(), &lift(nu)).map(|v| v.to_string()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    Ok(Outcome::exact(got == ["10", "15", "15", "30", "3"], got.join(", ")))
}

/// Expected `(+1 Gram, -1 Gram, index)` for `g_1..g_5`.
const EIGEN_TABLE: [(i64, [[i64; 2]; 2], i64); 5] = [
    (-30, [[4, 0], [0, 10]], 2),
    (-20, [[4, 1], [1, 4]], 1),
    (-20, [[4, 2], [2, 16]], 2),
    (-10, [[6, 0], [0, 20]], 2),
    (-4, [[20, 10], [10, 20]], 2),
];

fn fuchsian_eigenlattices(ctx: &Ctx) -> Result<Outcome, String> {
    let mut bad = Vec::new();
    for nu in 1..=5 {
        let (plus, minus, index) = EIGEN_TABLE[nu - 1];
        let inv = eigen_invariants(ctx.std.algebra(), &lift(nu)).map_err(err)?.ok_or("not an involution")?;
        let minus_ok = inv.minus == minus.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        if inv.plus != vec![vec![plus]] || !minus_ok || inv.index != index {
            bad.push(format!("g{nu}: {:?} {:?} {}", inv.plus, inv.minus, inv.index));
        }
    }
    Ok(Outcome::exact(bad.is_empty(), if bad.is_empty() { "five rows".into() } else { bad.join("; ") }))
}

fn fuchsian_fixed_points(ctx: &Ctx) -> Result<Outcome, String> {
    let e = elliptic_data(&ctx.std, ctx.prec()).map_err(err)?;
    let mut worst: f64 = 0.0;
    for nu in 1..=5 {
        let p = &e.points[nu - 1];
        let y = conj_action_real(&ctx.std, &lift(nu), p).map_err(err)?;
        // Projective points: g x g^-1 may return the representative -x.
        let (mut minus, mut plus) = (0f64, 0f64);
        for i in 0..3 {
            minus = minus.max(rug::Float::with_val(ctx.prec(), &y.coords[i] - &p.coords[i]).abs().to_f64());
            plus = plus.max(rug::Float::with_val(ctx.prec(), &y.coords[i] + &p.coords[i]).abs().to_f64());
        }
        worst = worst.max(minus.min(plus));
    }
    Ok(Outcome::below(worst, ctx.cfg.tolerance, "g_nu fixes xi_nu"))
}

// ------------------------------------------------------------------ theta

fn quintuple_at_case(case: &CmCase, prec: u32) -> Result<[BigComplex; 5], String> {
    let [a, b, c] = case.tau_exact().map_err(err)?.map(|r| r.eval(prec));
    let mut tau = SiegelPoint::new(a, b, c).map_err(err)?;
    if case.printed_reduced {
        tau = tau.transform([[1, -1], [0, 1]]);
    }
    theta4_vector(&tau, prec).map_err(err)
}

fn theta_cm_quintuple(ctx: &Ctx, k: usize) -> Result<Outcome, String> {
    let case = &CASES[k - 1];
    let x = quintuple_at_case(case, ctx.prec())?;
    let published = projective_dist(&x, &case.quintuple_eval(ctx.prec()).map_err(err)?);
    Ok(Outcome::below(published, ctx.cfg.tolerance, "published theta^4 ratios"))
}

macro_rules! cm_checks {
    ($($name:ident $k:literal),*) => {
        $(fn $name(ctx: &Ctx) -> Result<Outcome, String> {
            theta_cm_quintuple(ctx, $k)
        })*
    };
}
cm_checks!(theta_cm1 1, theta_cm2 2, theta_cm3 3, theta_cm4 4, theta_cm5 5, theta_cm6 6, theta_cm7 7, theta_cm8 8);

fn theta_cm4_corrected(ctx: &Ctx) -> Result<Outcome, String> {
    let case = &CASES[3];
    let x = quintuple_at_case(case, ctx.prec())?;
    let d = projective_dist(&x, &case.corrected_eval(ctx.prec()).map_err(err)?);
    Ok(Outcome::below(d, ctx.cfg.tolerance, "X5 = X2 (1024 - X2)/1024"))
}

fn rel(a: &BigComplex, b: &BigComplex) -> f64 {
    a.dist(b) / b.abs_f64().max(1.0)
}

fn theta_j_values(ctx: &Ctx) -> Result<Outcome, String> {
    let mut worst: f64 = 0.0;
    for (tau, j) in &J_VALUES {
        let got = j_invariant(&radical(tau, ctx.prec())?, ctx.prec()).map_err(err)?;
        worst = worst.max(rel(&got, &radical(j, ctx.prec())?));
    }
    Ok(Outcome::below(worst, 1e-40, format!("{} j-values", J_VALUES.len())))
}

fn theta_lambda_values(ctx: &Ctx) -> Result<Outcome, String> {
    let mut worst: f64 = 0.0;
    for (tau, l) in &LAMBDA_VALUES {
        let got = lambda(&radical(tau, ctx.prec())?, ctx.prec()).map_err(err)?;
        worst = worst.max(rel(&got, &l.eval(ctx.prec()).map_err(err)?));
    }
    Ok(Outcome::below(worst, 1e-40, format!("{} lambda-values", LAMBDA_VALUES.len())))
}

fn theta_class_polynomials(ctx: &Ctx) -> Result<Outcome, String> {
    let mut worst: f64 = 0.0;
    for poly in &CLASS_POLYNOMIALS {
        for tau in poly.roots {
            let j = j_invariant(&radical(tau, ctx.prec())?, ctx.prec()).map_err(err)?;
            worst = worst.max(poly.relative_residual(&j));
        }
    }
    Ok(Outcome::below(worst, 1e-40, "class polynomials at CM j-values"))
}

fn random_tau_g1(r: &mut ChaCha8Rng, prec: u32) -> BigComplex {
    BigComplex::from_f64(r.gen_range(-0.5..0.5), r.gen_range(0.6..1.6), prec)
}

fn theta_jacobi(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(61);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let id = identities_g1(&random_tau_g1(&mut r, ctx.prec()), ctx.prec()).map_err(err)?;
        worst = worst.max(id.jacobi).max(id.odd_vanishing);
    }
    Ok(Outcome::below(worst, ctx.cfg.identity_tolerance(), "50 random tau"))
}

fn theta_duplication(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(62);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let id = identities_g1(&random_tau_g1(&mut r, ctx.prec()), ctx.prec()).map_err(err)?;
        worst = worst.max(id.duplication).max(id.duplication_odd);
    }
    Ok(Outcome::below(worst, ctx.cfg.identity_tolerance(), "50 random tau"))
}

fn theta_doubling(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(63);
    let chars = even_chars();
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let tau = random_point(&mut r, ctx.prec());
        worst = worst.max(doubling_residual(&chars[k % chars.len()], &tau, ctx.prec()).map_err(err)?);
    }
    Ok(Outcome::below(worst, ctx.cfg.identity_tolerance(), "50 random points, characteristics cycled"))
}

fn theta_factorization(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(64);
    let chars = even_chars();
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let t11 = random_tau_g1(&mut r, ctx.prec());
        let t22 = random_tau_g1(&mut r, ctx.prec());
        let t12 = BigComplex::from_i64((k % 3) as i64 - 1, ctx.prec());
        let tau = SiegelPoint::new(t11, t12, t22).map_err(err)?;
        worst = worst.max(factorization_residual(&chars[k % chars.len()], &tau, ctx.prec()).map_err(err)?);
    }
    Ok(Outcome::below(worst, ctx.cfg.identity_tolerance(), "50 random diagonal points, off-diagonal in {-1, 0, 1}"))
}

fn theta_igusa(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(65);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let x = random_generic_point(&ctx.std, &mut r, ctx.prec());
        let tau = phi_dom(&ctx.std, &x).map_err(err)?;
        worst = worst.max(igusa_residual(&tau, ctx.prec()).map_err(err)?);
    }
    Ok(Outcome::below(worst, ctx.cfg.identity_tolerance(), "50 points on the embedded curve"))
}

// -------------------------------------------------------------- embedding

fn embedding_cm(ctx: &Ctx, k: usize) -> Result<Outcome, String> {
    let d = cm_golden_distance(&ctx.std, &CASES[k - 1], ctx.prec()).map_err(err)?;
    Ok(Outcome::below(d, ctx.cfg.tolerance, "max entry error against the published matrix"))
}

macro_rules! tau_checks {
    ($($name:ident $k:literal),*) => {
        $(fn $name(ctx: &Ctx) -> Result<Outcome, String> {
            embedding_cm(ctx, $k)
        })*
    };
}
tau_checks!(emb_tau1 1, emb_tau2 2, emb_tau3 3, emb_tau4 4, emb_tau5 5, emb_tau6 6, emb_tau7 7, emb_tau8 8);

fn embedding_mod2(ctx: &Ctx) -> Result<Outcome, String> {
    let res = mod2_goldens(&ctx.std).map_err(err)?;
    let bad: Vec<&str> = res.iter().filter(|r| !r.matches).map(|r| r.label).collect();
    Ok(Outcome::exact(bad.is_empty(), format!("{} matrices, mismatches: {:?}", res.len(), bad)))
}

fn embedding_mod2_order(_: &Ctx) -> Result<Outcome, String> {
    let n = mod2_group_order(&published_mod2_generators());
    Ok(Outcome::exact(n == 16, format!("order {n}")))
}

fn embedding_eta(ctx: &Ctx) -> Result<Outcome, String> {
    let r = eta_elements(&ctx.std).map_err(err)?;
    let ok = r.fixes_i.iter().all(|&b| b)
        && r.xi2_eta2_is_one_plus_w1
        && r.xi2_eta2_norm == "-1"
        && r.xi4_eta4_is_minus_one
        && r.units_of_order.iter().all(|&b| b);
    Ok(Outcome::exact(ok, format!("xi2 eta2 = {:?}", r.xi2_eta2)))
}

fn embedding_y_basis(ctx: &Ctx) -> Result<Outcome, String> {
    let a = ctx.std.algebra();
    let y = y_basis(&ctx.std);
    let norms: Vec<String> = y.iter().map(|v| a.nr(v).to_string()).collect();
    let anti = y_anticommutators(&ctx.std).iter().all(|v| *v == QuatElem::zero());
    let minus30i = ctx.std.i.scale(&q(-30, 1));
    let ok = norms == ["-2", "-15", "30"] && anti && y[2] == minus30i;
    Ok(Outcome::exact(ok, format!("Nr = {}", norms.join(", "))))
}

fn embedding_equivariance(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(71);
    let mut worst: f64 = 0.0;
    for nu in 1..=5 {
        let x = random_generic_point(&ctx.std, &mut r, ctx.prec());
        let g = lift(nu);
        let lhs = phi_dom(&ctx.std, &conj_action_real(&ctx.std, &g, &x).map_err(err)?).map_err(err)?;
        let rhs = act_on_tau(&ctx.std, &g, &phi_dom(&ctx.std, &x).map_err(err)?).map_err(err)?;
        worst = worst.max(lhs.dist(&rhs));
    }
    Ok(Outcome::below(worst, ctx.cfg.e2e_tolerance, "phi(g x g^-1) = g . phi(x) for g_1..g_5"))
}

// ----------------------------------------------------------------- period

fn period_relations_cm(ctx: &Ctx) -> Result<Outcome, String> {
    let mut worst: f64 = 0.0;
    for (k, case) in CASES.iter().enumerate() {
        let exact = exact_relations(&case.corrected_exact().map_err(err)?).map_err(err)?;
        if exact.iter().any(|v| !v.is_zero()) {
            return Ok(Outcome::exact(false, format!("case {}: exact value nonzero", k + 1)));
        }
        let tau = skp::embedding::cm_image(&ctx.std, k + 1, ctx.prec()).map_err(err)?;
        let th = ThetaVector::at(&tau, ctx.prec()).map_err(err)?;
        worst = worst.max(relation_residuals(&th.y).max());
    }
    Ok(Outcome::below(worst, ctx.cfg.e2e_tolerance, "exact zero at the eight CM quintuples; numeric residual"))
}

fn period_relations_random(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(81);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = random_generic_point(&ctx.std, &mut r, ctx.prec());
        worst = worst.max(relation_residuals(&pullbacks(&ctx.std, &x, ctx.prec()).map_err(err)?.y).max());
    }
    Ok(Outcome::below(worst, ctx.cfg.e2e_tolerance, "20 random points on the curve"))
}

fn period_negative_control(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(82);
    let mut least = f64::INFINITY;
    let mut per_relation = [f64::INFINITY; 3];
    for _ in 0..10 {
        let tau = random_point(&mut r, ctx.prec());
        let res = relation_residuals(&theta_combos(&theta4_vector(&tau, ctx.prec()).map_err(err)?));
        least = least.min(res.max());
        for (m, v) in per_relation.iter_mut().zip([res.f2, res.f4, res.f5]) {
            *m = m.min(v);
        }
    }
    Ok(Outcome {
        passed: least > 1e-5,
        residual: Some(least),
        detail: format!(
            "smallest per-point max of f2, f4, f5 at 10 generic Siegel points (must exceed 1e-5); per relation {:.2e} {:.2e} {:.2e}",
            per_relation[0], per_relation[1], per_relation[2]
        ),
    })
}

fn period_nullspace(ctx: &Ctx) -> Result<Outcome, String> {
    let pts = cm_nullspace_points(ctx.prec()).map_err(err)?;
    let rep = monomial_nullspace(&pts, pow2_neg(ctx.prec() as i64 / 2)).map_err(err)?;
    let prop = rep.proportionality.unwrap_or(f64::INFINITY);
    let ok = rep.nullity == 1 && rep.annihilation < ctx.cfg.e2e_tolerance && prop < 1e-30;
    Ok(Outcome {
        passed: ok,
        residual: Some(prop.max(rep.annihilation)),
        detail: format!(
            "{} rows, rank {}, nullity {}, annihilation {:e}, proportionality {:e}",
            rep.rows, rep.rank, rep.nullity, rep.annihilation, prop
        ),
    })
}

/// Expected parameter at `xi_1..xi_5`.
pub const XI_PARAMS: [(i64, i64); 5] = [(4, -1), (2, -1), (30, -7), (20, -13), (0, 1)];

/// The inverse period map at `xi_nu`, through the limit when the map is
/// 0/0 there. Returns the recognized parameter and how it was obtained.
pub fn param_at_elliptic(ctx: &Ctx, nu: usize) -> Result<(Option<FiberParam>, &'static str), String> {
    let prec = ctx.prec();
    let x = normalize_to_domain(&ctx.std, &lift(nu), prec).map_err(err)?;
    match invert_period(&ctx.std, &x, prec) {
        Ok(inv) => Ok((inv.recognize(1e-30), "direct")),
        Err(PeriodError::Indeterminate(_)) => {
            let r = invert_period_limit(&ctx.std, &lift(nu), prec).map_err(err)?;
            Ok((recognize_projective(&BigComplex::one(prec), &r, 1e-30), "limit"))
        }
        Err(e) => Err(err(e)),
    }
}

fn period_xi(ctx: &Ctx, nu: usize) -> Result<Outcome, String> {
    let (got, how) = param_at_elliptic(ctx, nu)?;
    let (a, b) = XI_PARAMS[nu - 1];
    let want = FiberParam::new(z(a), z(b));
    let shown = got.as_ref().map_or("unrecognized".to_string(), |t| t.to_string());
    Ok(Outcome::exact(got.as_ref() == Some(&want), format!("t = {shown} ({how})")))
}

macro_rules! xi_checks {
    ($($name:ident $k:literal),*) => {
        $(fn $name(ctx: &Ctx) -> Result<Outcome, String> {
            period_xi(ctx, $k)
        })*
    };
}
xi_checks!(period_xi1 1, period_xi2 2, period_xi3 3, period_xi4 4, period_xi5 5);

fn period_family_agreement(ctx: &Ctx) -> Result<Outcome, String> {
    let mut from_map = BTreeSet::new();
    for nu in 1..=5 {
        from_map.insert(param_at_elliptic(ctx, nu)?.0.ok_or(format!("xi_{nu} not recognized"))?);
    }
    let family: BTreeSet<FiberParam> = enumerate_singular_params().map_err(err)?.into_iter().collect();
    let show = |s: &BTreeSet<FiberParam>| s.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
    Ok(Outcome::exact(from_map == family, format!("map: {}; family: {}", show(&from_map), show(&family))))
}

fn period_shimura_curve(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(91);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = random_generic_point(&ctx.std, &mut r, ctx.prec());
        let inv = invert_theta(pullbacks(&ctx.std, &x, ctx.prec()).map_err(err)?).map_err(err)?;
        worst = worst.max(shimura_residuals(&inv).map_err(err)?.plane_curve);
    }
    Ok(Outcome::below(worst, ctx.cfg.e2e_tolerance, "plane quartic at 20 random points"))
}

fn period_curve_relations(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng(92);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = random_generic_point(&ctx.std, &mut r, ctx.prec());
        let inv = invert_theta(pullbacks(&ctx.std, &x, ctx.prec()).map_err(err)?).map_err(err)?;
        worst = worst.max(shimura_residuals(&inv).map_err(err)?.max());
    }
    Ok(Outcome::below(worst, ctx.cfg.e2e_tolerance, "r4^2, r5^2, hyperelliptic model, r-identity, s^2 = 1 - 1/r1"))
}

fn period_curve_identity(_: &Ctx) -> Result<Outcome, String> {
    let c = curve_identities();
    let ok = c.quadratic_coefficient && c.constant_coefficient && c.root_identity;
    Ok(Outcome::exact(ok, format!("{c:?}")))
}

fn period_hyperelliptic_identity(_: &Ctx) -> Result<Outcome, String> {
    Ok(Outcome::exact(curve_identities().hyperelliptic_identity, "octic under X = (Z + 1)/(Z - 1)"))
}

fn period_sigma_invariance(_: &Ctx) -> Result<Outcome, String> {
    let mut ok = true;
    let mut f5_signs = Vec::new();
    for s in &SIGMAS {
        ok &= semi_invariance(&f2(), s) == Some(1) && semi_invariance(&f4(), s) == Some(1);
        let sign = semi_invariance(&f5(), s);
        ok &= sign.is_some();
        f5_signs.push(sign.unwrap_or(0));
        for (n, d) in r_fractions() {
            ok &= fraction_invariant(&n, &d, s);
        }
    }
    Ok(Outcome::exact(ok, format!("r1, r2, f2, f4 fixed; f5 signs {f5_signs:?}")))
}

fn period_elliptic_invariance(ctx: &Ctx) -> Result<Outcome, String> {
    let prec = ctx.prec();
    let e = elliptic_data(&ctx.std, prec).map_err(err)?;
    let mut r = rng(93);
    let mut worst: f64 = 0.0;
    for nu in 1..=5 {
        let c: [rug::Float; 3] = std::array::from_fn(|i| {
            rug::Float::with_val(prec, &e.points[nu - 1].coords[i]) + rug::Float::with_val(prec, r.gen_range(-0.01..0.01))
        });
        let x = skp::fuchsian::normalize_real(&ctx.std, &c).map_err(err)?;
        let gx = conj_action_real(&ctx.std, &lift(nu), &x).map_err(err)?;
        let a = invert_period(&ctx.std, &x, prec).map_err(err)?;
        let b = invert_period(&ctx.std, &gx, prec).map_err(err)?;
        let d = projective_dist(&[a.t0.clone(), a.t1.clone()], &[b.t0.clone(), b.t1.clone()]);
        worst = worst.max(d);
    }
    Ok(Outcome::below(worst, 1e-30, "t(g x g^-1) = t(x) near each xi_nu"))
}

// ----------------------------------------------------------------- family

const TABLE_POINTS: [((i64, i64), [i64; 5], usize); 4] = [
    ((4, -1), [1, -1, 1, -1, 0], 15),
    ((2, -1), [1, -1, 0, 0, 0], 10),
    ((30, -7), [3, 3, -2, -2, -2], 10),
    ((20, -13), [4, -1, -1, -1, -1], 5),
];

fn family_enumerate(_: &Ctx) -> Result<Outcome, String> {
    let got: BTreeSet<FiberParam> = enumerate_singular_params().map_err(err)?.into_iter().collect();
    let want: BTreeSet<FiberParam> = XI_PARAMS.iter().map(|&(a, b)| FiberParam::new(z(a), z(b))).collect();
    let shown: Vec<String> = got.iter().map(|t| t.to_string()).collect();
    Ok(Outcome::exact(got == want, shown.join(" ")))
}

fn family_table_points(_: &Ctx) -> Result<Outcome, String> {
    let mut bad = Vec::new();
    for ((a, b), p, n) in TABLE_POINTS {
        let t = FiberParam::new(z(a), z(b));
        let p = point(p);
        let g = gradient_rank(&t, &p).map_err(err)?;
        let ok = g.singular() && a1_check(&t, &p).map_err(err)? && orbit_size(&p).map_err(err)? == n;
        if !ok {
            bad.push(t.to_string());
        }
    }
    Ok(Outcome::exact(bad.is_empty(), format!("on fiber, rank 1, A1, orbit sizes 15/10/10/5; failures {bad:?}")))
}

fn family_double_quadric(_: &Ctx) -> Result<Outcome, String> {
    Ok(Outcome::exact(double_quadric_certificate().map_err(err)?, "(0:1) is s2^2 = 0, gradient vanishes on s1 = s2 = 0"))
}

fn family_s5_invariance(_: &Ctx) -> Result<Outcome, String> {
    let mut ok = true;
    for ((a, b), p, _) in TABLE_POINTS {
        let t = FiberParam::new(z(a), z(b));
        for r in permuted(&point(p)) {
            ok &= gradient_rank(&t, &r).map_err(err)?.singular() && a1_check(&t, &r).map_err(err)?;
        }
    }
    Ok(Outcome::exact(ok, "all 120 permutations of each table point"))
}

fn family_smooth_control(_: &Ctx) -> Result<Outcome, String> {
    let t = FiberParam::new(z(1), z(0));
    let p = point([1, 2, 3, 4, 5]);
    let off = !gradient_rank(&t, &p).map_err(err)?.on_fiber;
    Ok(Outcome::exact(off && a1_check(&t, &p).is_err(), "point off the fiber rejected"))
}

/// All registered checks, ordered by id.
pub fn registry() -> Vec<Check> {
    use Suite::*;
    let c = |id, suite, criterion, description, run| Check { id, suite, criterion, description, run };
    let mut v = vec![
        c("lattice.t_determinant", Lattice, 1, "disc(T) = -300", lattice_t_determinant as CheckFn),
        c("lattice.invariant_determinant", Lattice, 1, "disc of the rank-5 invariant lattice = -300", lattice_invariant_determinant),
        c("lattice.invariant_form", Lattice, 1, "discriminant form <5/4>+<2/3>+<1/5>+<2/5>", lattice_invariant_form),
        c("lattice.t_group", Lattice, 1, "A_T = Z/4 + Z/3 + Z/5 + Z/5", lattice_t_group),
        c("lattice.dual_twist", Lattice, 1, "dual of T twisted by -60 is T*", lattice_dual_twist),
        c("quaternion.structure_constants", Quaternion, 2, "multiplication table of Cl+(T*)", quat_structure_constants),
        c("quaternion.cl_discriminant", Quaternion, 2, "reduced discriminant of Cl+(T*) = 2880", quat_cl_discriminant),
        c("quaternion.ext_discriminant", Quaternion, 2, "reduced discriminant of the extended order = 30", quat_ext_discriminant),
        c("quaternion.ramification", Quaternion, 2, "the algebra ramifies exactly at 3 and 5", quat_ramification),
        c("quaternion.symplectic_basis", Quaternion, 2, "(1, 1+w1, w1+w3, w1+w2+w3) is symplectic for Psi_I", quat_symplectic),
        c("quaternion.eta_isometry", Quaternion, 2, "pure part with reduced norm is T[-12]", quat_eta),
        c("fuchsian.relations", Fuchsian, 3, "g_nu^2 and g1 g3 g5 g4 g2 are nonzero scalars", fuchsian_relations),
        c("fuchsian.normalizing", Fuchsian, 3, "each g_nu normalizes the extended order", fuchsian_normalizing),
        c("fuchsian.norm_classes", Fuchsian, 3, "norm classes (10, 15, 15, 30, 3)", fuchsian_norm_classes),
        c("fuchsian.eigenlattices", Fuchsian, 3, "eigenlattice Grams and overlattice indices", fuchsian_eigenlattices),
        c("fuchsian.fixed_points", Fuchsian, 0, "g_nu fixes the elliptic point xi_nu", fuchsian_fixed_points),
        c("theta.cm_quintuple_1", Theta, 5, "theta^4 ratios at tau_1", theta_cm1),
        c("theta.cm_quintuple_2", Theta, 5, "theta^4 ratios at tau_2", theta_cm2),
        c("theta.cm_quintuple_3", Theta, 5, "theta^4 ratios at tau_3", theta_cm3),
        c("theta.cm_quintuple_4", Theta, 5, "theta^4 ratios at tau_4", theta_cm4),
        c("theta.cm_quintuple_5", Theta, 5, "theta^4 ratios at tau_5", theta_cm5),
        c("theta.cm_quintuple_6", Theta, 5, "theta^4 ratios at tau_6", theta_cm6),
        c("theta.cm_quintuple_7", Theta, 5, "theta^4 ratios at tau_7", theta_cm7),
        c("theta.cm_quintuple_8", Theta, 5, "theta^4 ratios at tau_8", theta_cm8),
        c("theta.cm_quintuple_4_corrected", Theta, 0, "theta^4 ratios at tau_4 with corrected fifth entry", theta_cm4_corrected),
        c("theta.j_values", Theta, 5, "published j-invariants at CM points", theta_j_values),
        c("theta.lambda_values", Theta, 5, "published lambda-invariants at CM points", theta_lambda_values),
        c("theta.class_polynomials", Theta, 5, "class polynomials vanish at CM j-values", theta_class_polynomials),
        c("theta.jacobi", Theta, 6, "Jacobi identity and odd vanishing in genus 1", theta_jacobi),
        c("theta.duplication", Theta, 6, "genus-1 duplication formulas", theta_duplication),
        c("theta.doubling", Theta, 6, "genus-2 doubling formula", theta_doubling),
        c("theta.factorization", Theta, 6, "factorization at block-diagonal period matrices", theta_factorization),
        c("theta.igusa", Theta, 6, "quartic relation among theta constants", theta_igusa),
        c("embedding.tau_1", Embedding, 4, "image of p_1 is tau_1", emb_tau1),
        c("embedding.tau_2", Embedding, 4, "image of p_2 is tau_2", emb_tau2),
        c("embedding.tau_3", Embedding, 4, "image of p_3 is tau_3", emb_tau3),
        c("embedding.tau_4", Embedding, 4, "image of p_4 is tau_4", emb_tau4),
        c("embedding.tau_5", Embedding, 4, "image of p_5 is tau_5", emb_tau5),
        c("embedding.tau_6", Embedding, 4, "image of p_6 is tau_6", emb_tau6),
        c("embedding.tau_7", Embedding, 4, "image of p_7 is tau_7", emb_tau7),
        c("embedding.tau_8", Embedding, 4, "image of p_8 is tau_8", emb_tau8),
        c("embedding.mod2_matrices", Embedding, 10, "published level-2 matrices", embedding_mod2),
        c("embedding.mod2_group_order", Embedding, 10, "the four generators give a group of order 16", embedding_mod2_order),
        c("embedding.eta_elements", Embedding, 0, "eta_2, eta_4 fix I; xi_2 eta_2 = 1 + w1; xi_4 eta_4 = -1", embedding_eta),
        c("embedding.y_basis", Embedding, 0, "orthogonal basis y1, y2, y3 with norms -2, -15, 30", embedding_y_basis),
        c("embedding.equivariance", Embedding, 0, "the embedding intertwines the group actions", embedding_equivariance),
        c("period.relations_cm", Period, 7, "f2, f4, f5 vanish at the CM quintuples", period_relations_cm),
        c("period.relations_random", Period, 7, "f2, f4, f5 vanish on the embedded curve", period_relations_random),
        c("period.negative_control", Period, 7, "f2, f4, f5 do not vanish at generic Siegel points", period_negative_control),
        c("period.nullspace", Period, 7, "the quintic relation spans the CM monomial nullspace", period_nullspace),
        c("period.xi1", Period, 8, "t = (4:-1) at xi_1", period_xi1),
        c("period.xi2", Period, 8, "t = (2:-1) at xi_2", period_xi2),
        c("period.xi3", Period, 8, "t = (30:-7) at xi_3", period_xi3),
        c("period.xi4", Period, 8, "t = (20:-13) at xi_4", period_xi4),
        c("period.xi5", Period, 8, "t = (0:1) at xi_5", period_xi5),
        c("period.family_agreement", Period, 8, "elliptic values equal the singular-fiber parameters", period_family_agreement),
        c("period.shimura_curve", Period, 9, "plane quartic model of the Shimura curve", period_shimura_curve),
        c("period.curve_identity", Period, 9, "y = sqrt(A) + sqrt(B) satisfies the quartic", period_curve_identity),
        c("period.curve_relations", Period, 0, "r4, r5, hyperelliptic model and r-identities", period_curve_relations),
        c("period.hyperelliptic_identity", Period, 0, "the hyperelliptic model is a Moebius change of the quartic", period_hyperelliptic_identity),
        c("period.sigma_invariance", Period, 0, "r1, r2 and the relations under the level-2 substitutions", period_sigma_invariance),
        c("period.elliptic_invariance", Period, 0, "t is invariant under the elliptic elements", period_elliptic_invariance),
        c("family.enumerate", Family, 8, "singular fibers by exact case analysis", family_enumerate),
        c("family.table_points", Family, 0, "listed singular points are A1 with the listed counts", family_table_points),
        c("family.double_quadric", Family, 0, "the fiber over (0:1) is a double quadric", family_double_quadric),
        c("family.s5_invariance", Family, 0, "permuted singular points stay A1 singular", family_s5_invariance),
        c("family.smooth_control", Family, 0, "generic points are rejected", family_smooth_control),
    ];
    v.sort_by_key(|c| c.id);
    v
}

/// Short titles of the ten acceptance criteria.
pub const CRITERIA: [&str; 10] = [
    "lattice goldens",
    "quaternion goldens",
    "fuchsian relations",
    "CM embedding",
    "theta CM values",
    "theta identities",
    "relation vanishing",
    "inverse period map",
    "Shimura curve",
    "mod-2 group",
];
