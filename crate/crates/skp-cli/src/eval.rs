//! Single evaluations exposed by the `eval` subcommand.

use rug::Float;
use serde::Serialize;
use skp::bigc::{float_parse, BigComplex};
use skp::cm::{CASES, P_TILDE};
use skp::embedding::{cm_image, phi_dom};
use skp::fuchsian::{lift, normalize_real, normalize_to_domain, DomainPoint};
use skp::period_inverse::{
    invert_period, invert_period_limit, recognize_projective, relation_residuals, shimura_residuals, t_ratio_string,
    PeriodError,
};
use skp::quatalg::{QuatElem, Standard};
use skp::radical::Radical;
use skp::siegel_theta::{igusa_residual, theta_g2, SiegelPoint, SiegelPointJson, ThetaChar};
use thiserror::Error;

/// Digits printed for decimal values.
pub const DIGITS: usize = 40;

/// Errors from parsing or evaluating a request.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("cannot parse {0:?} as a number")]
    Number(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("CM point index must be 1..=8, got {0}")]
    CmIndex(String),
    #[error("elliptic point index must be 1..=5, got {0}")]
    XiIndex(String),
    #[error("characteristic entries must be 0 or 1/2, got {0:?}")]
    Characteristic(String),
    #[error("{0}")]
    Skp(String),
}

fn skp_err<E: std::fmt::Display>(e: E) -> EvalError {
    EvalError::Skp(e.to_string())
}

/// Parses an exact radical expression, falling back to a decimal.
pub fn parse_number(s: &str, prec: u32) -> Result<BigComplex, EvalError> {
    if let Ok(r) = Radical::parse(s) {
        return Ok(r.eval(prec));
    }
    float_parse(s, prec).map(|f| BigComplex::from_real(&f)).ok_or_else(|| EvalError::Number(s.to_string()))
}

fn parse_real(s: &str, prec: u32) -> Result<Float, EvalError> {
    let z = parse_number(s, prec)?;
    if !z.im.is_zero() {
        return Err(EvalError::Number(s.to_string()));
    }
    Ok(z.re)
}

fn parse_index(s: &str, max: usize, err: fn(String) -> EvalError) -> Result<usize, EvalError> {
    s.parse::<usize>().ok().filter(|k| (1..=max).contains(k)).ok_or_else(|| err(s.to_string()))
}

/// A point of the period domain given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    /// Three real coordinates in the basis `e1, e2, e3`.
    Coords(Vec<String>),
    /// The CM point `p_k`.
    Cm(usize),
    /// The elliptic point `xi_nu`.
    Xi(usize),
}

impl DomainSpec {
    /// Parses `x1 x2 x3`, `cm:k` or `xi:nu`.
    pub fn parse(args: &[String]) -> Result<Self, EvalError> {
        if let [one] = args {
            if let Some(k) = one.strip_prefix("cm:") {
                return Ok(DomainSpec::Cm(parse_index(k, 8, EvalError::CmIndex)?));
            }
            if let Some(nu) = one.strip_prefix("xi:") {
                return Ok(DomainSpec::Xi(parse_index(nu, 5, EvalError::XiIndex)?));
            }
        }
        if args.len() != 3 {
            return Err(EvalError::Arity { expected: 3, got: args.len() });
        }
        Ok(DomainSpec::Coords(args.to_vec()))
    }

    /// The exact element behind a CM or elliptic point.
    pub fn exact(&self) -> Option<QuatElem> {
        match self {
            DomainSpec::Cm(k) => {
                let [a, b, c] = P_TILDE[k - 1];
                Some(QuatElem::pure(a, b, c))
            }
            DomainSpec::Xi(nu) => Some(lift(*nu)),
            DomainSpec::Coords(_) => None,
        }
    }

    /// The normalized domain point.
    pub fn point(&self, std: &Standard, prec: u32) -> Result<DomainPoint, EvalError> {
        match self.exact() {
            Some(x) => normalize_to_domain(std, &x, prec).map_err(skp_err),
            None => {
                let DomainSpec::Coords(c) = self else { unreachable!() };
                let coords = [parse_real(&c[0], prec)?, parse_real(&c[1], prec)?, parse_real(&c[2], prec)?];
                normalize_real(std, &coords).map_err(skp_err)
            }
        }
    }
}

/// A period matrix given on the command line: `t11,t12,t22` or `cm:k`.
pub fn parse_tau(s: &str, std: &Standard, prec: u32) -> Result<SiegelPoint, EvalError> {
    if let Some(k) = s.strip_prefix("cm:") {
        let k = parse_index(k, 8, EvalError::CmIndex)?;
        return cm_image(std, k, prec).map_err(skp_err);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(EvalError::Arity { expected: 3, got: parts.len() });
    }
    let [a, b, c] = [parts[0], parts[1], parts[2]].map(|p| parse_number(p, prec));
    SiegelPoint::new(a?, b?, c?).map_err(skp_err)
}

/// Parses four characteristic entries, each `0` or `1/2`.
pub fn parse_char(entries: &[String]) -> Result<ThetaChar, EvalError> {
    if entries.len() != 4 {
        return Err(EvalError::Arity { expected: 4, got: entries.len() });
    }
    let mut h = [0i64; 4];
    for (slot, e) in h.iter_mut().zip(entries) {
        *slot = match e.trim() {
            "0" => 0,
            "1/2" | "0.5" => 1,
            _ => return Err(EvalError::Characteristic(e.clone())),
        };
    }
    Ok(ThetaChar::halves(h))
}

/// Output of `eval theta-g2`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaOutput {
    pub characteristic: String,
    pub tau: SiegelPointJson,
    pub value: String,
}

/// Evaluates a genus-2 theta constant.
pub fn theta(chars: &[String], tau: &str, prec: u32) -> Result<ThetaOutput, EvalError> {
    let m = parse_char(chars)?;
    let tau = parse_tau(tau, &Standard::new(), prec)?;
    let v = theta_g2(&m, &tau, prec).map_err(skp_err)?;
    Ok(ThetaOutput { characteristic: m.to_string(), tau: tau.to_json(DIGITS), value: v.to_decimal(DIGITS) })
}

/// Output of `eval phi-dom`.
#[derive(Clone, Debug, Serialize)]
pub struct PhiOutput {
    pub point: [String; 3],
    pub tau: SiegelPointJson,
}

/// Evaluates the modular embedding at a domain point.
pub fn phi(args: &[String], prec: u32) -> Result<PhiOutput, EvalError> {
    let std = Standard::new();
    let x = DomainSpec::parse(args)?.point(&std, prec)?;
    let tau = phi_dom(&std, &x).map_err(skp_err)?;
    Ok(PhiOutput { point: x.to_strings(DIGITS), tau: tau.to_json(DIGITS) })
}

/// Residuals reported by `eval invert-period`.
#[derive(Clone, Debug, Serialize)]
pub struct Residuals {
    pub f2: f64,
    pub f4: f64,
    pub f5: f64,
    pub igusa: f64,
    /// Largest residual of the Shimura curve equations, if defined.
    pub shimura: Option<f64>,
}

/// Output of `eval invert-period`.
#[derive(Clone, Debug, Serialize)]
pub struct InverseOutput {
    pub point: [String; 3],
    /// `None` where the map is evaluated as a limit.
    #[serde(rename = "X")]
    pub x: Option<[String; 5]>,
    #[serde(rename = "Y")]
    pub y: Option<[String; 5]>,
    pub r1: Option<String>,
    pub r2: Option<String>,
    pub s: Option<String>,
    /// `t1 / t0` as a decimal or `"infinity"`.
    pub t_ratio: String,
    /// The exact fiber parameter `(t0:t1)`, when recognized.
    pub t: Option<String>,
    pub residuals: Option<Residuals>,
    /// The CM point paired with this elliptic point, if any.
    pub paired_cm_point: Option<usize>,
    /// How `t` was computed: `direct` or `limit`.
    pub method: String,
}

fn dec(z: &BigComplex) -> String {
    z.to_decimal(DIGITS)
}

/// Evaluates the inverse period map.
pub fn inverse(args: &[String], prec: u32) -> Result<InverseOutput, EvalError> {
    let std = Standard::new();
    let spec = DomainSpec::parse(args)?;
    let x = spec.point(&std, prec)?;
    let paired = match spec {
        DomainSpec::Xi(nu) => CASES.iter().find(|c| c.elliptic_partner == Some(nu)).map(|c| c.index),
        _ => None,
    };
    let point = x.to_strings(DIGITS);
    match invert_period(&std, &x, prec) {
        Ok(inv) => {
            let r = relation_residuals(&inv.theta.y);
            let tau = phi_dom(&std, &x).map_err(skp_err)?;
            let shimura = shimura_residuals(&inv).ok().map(|s| s.max());
            Ok(InverseOutput {
                point,
                x: Some(inv.theta.x.each_ref().map(dec)),
                y: Some(inv.theta.y.each_ref().map(dec)),
                r1: inv.r1.as_ref().map(dec),
                r2: inv.r2.as_ref().map(dec),
                s: inv.s.as_ref().map(dec),
                t_ratio: t_ratio_string(&inv, DIGITS),
                t: inv.recognize(1e-30).map(|t| t.to_string()),
                residuals: Some(Residuals {
                    f2: r.f2,
                    f4: r.f4,
                    f5: r.f5,
                    igusa: igusa_residual(&tau, prec).map_err(skp_err)?,
                    shimura,
                }),
                paired_cm_point: paired,
                method: "direct".into(),
            })
        }
        Err(PeriodError::Indeterminate(_)) => {
            let center = spec.exact().ok_or_else(|| EvalError::Skp("the map is 0/0 at this point; give it as xi:nu to evaluate the limit".into()))?;
            let ratio = invert_period_limit(&std, &center, prec).map_err(skp_err)?;
            let t = recognize_projective(&BigComplex::one(prec), &ratio, 1e-30).map(|t| t.to_string());
            Ok(InverseOutput {
                point,
                x: None,
                y: None,
                r1: None,
                r2: None,
                s: None,
                t_ratio: dec(&ratio),
                t,
                residuals: None,
                paired_cm_point: paired,
                method: "limit".into(),
            })
        }
        Err(e) => Err(skp_err(e)),
    }
}
