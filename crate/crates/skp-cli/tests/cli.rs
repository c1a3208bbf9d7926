use std::process::Command;

use serde_json::Value;
use skp::bigc::{float_parse, BigComplex};
use skp::radical::Radical;
use skp_cli::checks::{registry, Config, Suite};
use skp_cli::eval::{parse_char, parse_number, DomainSpec, EvalError};
use skp_cli::report::{build_report, Status};

fn skp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_skp")).args(args).output().expect("run skp")
}

fn complex(s: &str) -> BigComplex {
    // Decimal output has the form "a+bi" or "a-bi".
    let body = s.strip_suffix('i').expect("imaginary unit");
    let split = body
        .char_indices()
        .rev()
        .find(|&(k, c)| k > 0 && (c == '+' || c == '-') && !body[..k].ends_with('e'))
        .map(|(k, _)| k)
        .expect("sign");
    let re = float_parse(&body[..split], 200).unwrap();
    let im = float_parse(&body[split..], 200).unwrap();
    BigComplex::from_parts(&re, &im, 200)
}

fn strings(args: &[&str]) -> Vec<String> {
    args.iter().map(|s| s.to_string()).collect()
}

#[test]
fn registry_ids_are_unique_and_cover_every_criterion() {
    let reg = registry();
    let mut ids: Vec<&str> = reg.iter().map(|c| c.id).collect();
    ids.dedup();
    assert_eq!(ids.len(), reg.len());
    for k in 1..=10 {
        assert!(reg.iter().any(|c| c.criterion == k), "criterion {k}");
    }
    for s in Suite::ALL {
        assert!(reg.iter().any(|c| c.suite == s), "{s:?}");
        assert_eq!(Suite::parse(s.name()), Some(s));
    }
}

#[test]
fn domain_specs_parse() {
    assert_eq!(DomainSpec::parse(&strings(&["cm:3"])).unwrap(), DomainSpec::Cm(3));
    assert_eq!(DomainSpec::parse(&strings(&["xi:5"])).unwrap(), DomainSpec::Xi(5));
    assert!(matches!(DomainSpec::parse(&strings(&["cm:9"])), Err(EvalError::CmIndex(_))));
    assert!(matches!(DomainSpec::parse(&strings(&["xi:0"])), Err(EvalError::XiIndex(_))));
    assert!(matches!(DomainSpec::parse(&strings(&["1", "2"])), Err(EvalError::Arity { expected: 3, got: 2 })));
    assert_eq!(DomainSpec::parse(&strings(&["0", "0", "1"])).unwrap(), DomainSpec::Coords(strings(&["0", "0", "1"])));
}

#[test]
fn numbers_parse_as_radicals_or_decimals() {
    let r = parse_number("(1+sqrt(5))/2", 128).unwrap();
    assert!((r.re.to_f64() - 1.618033988749895).abs() < 1e-15);
    let d = parse_number("-0.25", 128).unwrap();
    assert_eq!(d.re.to_f64(), -0.25);
    assert!(parse_number("abc", 128).is_err());
    assert_eq!(parse_char(&strings(&["0", "1/2", "0", "1/2"])).unwrap().to_string(), "(0,1/2,0,1/2)");
    assert!(parse_char(&strings(&["0", "1", "0", "0"])).is_err());
}

#[test]
fn phi_dom_at_basis_vector_is_tau4() {
    let out = skp(&["eval", "phi-dom", "0", "0", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let m = &v["tau"]["matrix"];
    let diag = Radical::parse("(sqrt(-15)-1)/2").unwrap().eval(200);
    assert!(complex(m[0][0].as_str().unwrap()).dist(&diag) < 1e-35);
    assert!(complex(m[1][1].as_str().unwrap()).dist(&diag) < 1e-35);
    assert!(complex(m[0][1].as_str().unwrap()).dist(&BigComplex::one(200)) < 1e-35);
}

#[test]
fn invert_period_reports_exact_parameters() {
    let out = skp(&["eval", "invert-period", "xi:1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["t"], "(4:-1)");
    assert_eq!(v["paired_cm_point"], 8);
    assert_eq!(v["method"], "direct");
    assert!(v["residuals"]["f2"].as_f64().unwrap() < 1e-35);

    let out = skp(&["eval", "invert-period", "xi:3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["t"], "(30:-7)");
    assert_eq!(v["method"], "limit");
}

#[test]
fn theta_eval_accepts_cm_points() {
    let out = skp(&["--precision", "128", "eval", "theta-g2", "1/2", "0", "1/2", "0", "--tau", "cm:1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // An odd characteristic: the constant vanishes.
    assert!(complex(v["value"].as_str().unwrap()).abs_f64() < 1e-30);
}

#[test]
fn bad_arguments_exit_with_an_error() {
    let out = skp(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
    let out = skp(&["--precision", "16", "verify", "lattice"]);
    assert_eq!(out.status.code(), Some(2));
    let out = skp(&["eval", "phi-dom", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_a_report_and_exits_zero_when_all_pass() {
    let dir = std::env::temp_dir().join(format!("skp-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = skp(&["verify", "lattice", "--out", path.to_str().unwrap(), "--jobs", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["precision_bits"], 256);
    assert_eq!(v["summary"]["failed"], 0);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["suite"], "lattice");
        assert_eq!(c["status"], "pass");
        assert!(c["paper_ref"].as_str().is_some_and(|s| !s.is_empty()));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let cfg = Config::default();
    let a = build_report(cfg.clone(), &[Suite::Quaternion, Suite::Fuchsian], 1).unwrap();
    let b = build_report(cfg, &[Suite::Quaternion, Suite::Fuchsian], 4).unwrap();
    let key = |r: &skp_cli::report::Report| -> Vec<(String, Status, String)> {
        r.checks.iter().map(|c| (c.id.clone(), c.status, c.detail.clone())).collect()
    };
    assert_eq!(key(&a), key(&b));
    assert!(a.all_passed());
}

#[test]
fn theta_suite_exits_nonzero_on_the_published_case_4_entry() {
    let out = skp(&["verify", "theta", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["theta.cm_quintuple_4"]);
}
