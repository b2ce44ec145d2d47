use std::process::Command;

use num_complex::Complex64;
use qbarnes_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_POLE, EXIT_USAGE, EXIT_VERIFY_FAILED};
use qbarnes_core::qzeta::qzeta_direct;
use qbarnes_core::{QParam, TruncationPolicy, Weights};
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qbarnes(args: &str) -> Outcome {
    let argv = std::iter::once("qbarnes").chain(args.split_whitespace());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json_rows(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn f(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn qgamma_at_one_is_one() {
    let o = qbarnes("eval qgamma --q 0.5 --z 1 --format json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let row = &json_rows(&o.stdout)[0];
    assert_eq!(f(row, "value_re"), 1.0);
    assert_eq!(f(row, "value_im"), 0.0);
}

#[test]
fn qzeta_eval_matches_direct_sum() {
    let o = qbarnes("eval qzeta --r 2 --q 0.5 --s 2 --t 3 --z 1 --format json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let row = &json_rows(&o.stdout)[0];
    assert_eq!(row["method"], "qzeta-binomial");
    let c = |x: f64| Complex64::new(x, 0.0);
    let direct = qzeta_direct(
        2,
        QParam::new(0.5).unwrap(),
        c(2.0),
        c(3.0),
        c(1.0),
        &Weights::ones(2),
        &TruncationPolicy::default(),
    )
    .unwrap();
    let got = Complex64::new(f(row, "value_re"), f(row, "value_im"));
    assert!((got - direct.value).norm() < 1e-10, "{got} vs {}", direct.value);
}

#[test]
fn every_route_agrees() {
    let base = "eval qzeta --r 2 --q 0.6 --s 1.5+0.5i --t 2.5 --z 1.2 --format json";
    let value = |route: &str| {
        let o = qbarnes(&format!("{base} --route {route}"));
        assert_eq!(o.code, EXIT_OK, "{route}: {}", o.stderr);
        let row = &json_rows(&o.stdout)[0];
        Complex64::new(f(row, "value_re"), f(row, "value_im"))
    };
    let auto = value("auto");
    for route in ["direct", "qbinom", "reduce", "ladder"] {
        assert!((value(route) - auto).norm() < 1e-9, "{route}");
    }
}

#[test]
fn real_axis_pole_exits_two() {
    let o = qbarnes("eval qzeta-nu --r 2 --nu 2 --q 0.5 --s 2 --z 1");
    assert_eq!(o.code, EXIT_POLE);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("error: pole"), "{}", o.stderr);
    assert!(o.stderr.contains("at: 2\n"), "{}", o.stderr);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qbarnes");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["eval", "qgamma", "--q", "0.5", "--z", "2"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let text = String::from_utf8_lossy(&ok.stdout);
    let value: f64 = text.lines().next().unwrap().trim_start_matches("qgamma = ").parse().unwrap();
    // q^(-1/q) [1]_q^(1/q) = 4 at q = 1/2
    assert!((value - 4.0).abs() < 1e-13, "{text}");
    let pole = status(&["eval", "qzeta-nu", "--r", "2", "--nu", "2", "--q", "0.5", "--s", "2"]);
    assert_eq!(pole.status.code(), Some(EXIT_POLE));
    let bad_q = status(&["eval", "qgamma", "--q", "1", "--z", "1"]);
    assert_eq!(bad_q.status.code(), Some(EXIT_USAGE));
}

#[test]
fn parse_errors_exit_64() {
    for args in [
        "eval qgamma --q 1.2 --z 1",
        "eval qgamma --q 0 --z 1",
        "eval qzeta --r 0 --q 0.5 --s 2 --t 3",
        "eval qzeta-nu --r 2 --q 0.5 --s 2 --weights 1,-1",
        "eval qzeta-nu --r 2 --q 0.5 --s 2 --weights 1,2,3",
        "eval qgamma --q 0.5 --z 1+",
        "eval qzeta --q 0.5 --s 2",
        "eval nosuch --q 0.5",
        "verify --suite nosuch",
        "sweep --r 1 --phi t+1 --s 2",
        "sweep --r 1 --nu 1 --phi s-1 --s 2",
        "frobnicate",
    ] {
        let o = qbarnes(args);
        assert_eq!(o.code, EXIT_USAGE, "{args}: {}", o.stderr);
        assert!(!o.stderr.is_empty(), "{args}");
    }
}

#[test]
fn domain_errors_exit_65() {
    // gamma_q is only defined for Re(z) > 0
    let o = qbarnes("eval gamma-q --q 0.5 --z -1.5");
    assert_eq!(o.code, EXIT_DOMAIN, "{}", o.stderr);
    let o = qbarnes("eval qzeta --r 1 --q 0.5 --s 2 --t 3 --route em --N 2 --M 2");
    assert_eq!(o.code, EXIT_DOMAIN, "{}", o.stderr);
}

#[test]
fn help_goes_to_stdout() {
    let o = qbarnes("--help");
    assert_eq!(o.code, EXIT_OK);
    for sub in ["eval", "verify", "sweep", "poles"] {
        assert!(o.stdout.contains(sub), "{sub}");
    }
}

#[test]
fn verify_examples_pass() {
    for args in [
        "verify --suite qbinom",
        "verify --suite gauss-legendre --N 2 --q 0.5",
        "verify --suite route-equiv --seed 7",
    ] {
        let o = qbarnes(args);
        assert_eq!(o.code, EXIT_OK, "{args}: {}{}", o.stdout, o.stderr);
        assert!(o.stdout.contains("PASS"), "{args}");
    }
}

#[test]
fn gauss_legendre_residual_below_pin() {
    let o = qbarnes("verify --suite gauss-legendre --N 2 --q 0.5 --format json");
    let rows = json_rows(&o.stdout);
    assert!(!rows.is_empty());
    for r in &rows {
        assert!(f(r, "residual") < 1e-10, "{r}");
        assert_eq!(r["passed"], true);
    }
}

#[test]
fn verify_failure_reports_counterexample() {
    // a term cap of 1 starves every series
    let o = qbarnes("verify --suite route-equiv --points 3 --max-terms 1");
    assert_eq!(o.code, EXIT_VERIFY_FAILED);
    assert!(o.stderr.contains("verify failed: suite route-equiv"), "{}", o.stderr);
    assert!(o.stderr.contains("inputs: "), "{}", o.stderr);
}

#[test]
fn verify_csv_is_machine_readable() {
    let o = qbarnes("verify --suite qbinom --format csv");
    assert_eq!(o.code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["suite", "check", "inputs", "residual", "tolerance", "passed", "note"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert!(rows.len() > 100);
    assert!(rows.iter().all(|r| &r[5] == "true"));
}

#[test]
fn sweep_csv_converges() {
    let o = qbarnes("sweep --r 1 --nu 1 --s -0.5 --z 1 --format csv");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    for col in ["q", "value_re", "value_im", "target_re", "target_im", "gap"] {
        assert!(header.iter().any(|h| h == col), "{col}");
    }
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    assert!(rows[..11].iter().all(|r| &r[0] == "point"));
    let summary = &rows[11];
    assert_eq!(&summary[0], "summary");
    assert_eq!(&summary[7], "converging");
    let gap: f64 = summary[6].parse().unwrap();
    assert!(gap < 1e-2);
}

#[test]
fn sweep_csv_is_byte_identical() {
    let args = "sweep --r 2 --nu 1 --s 3.5 --z 1 --k-max 9 --format csv";
    let a = qbarnes(args);
    let b = qbarnes(args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout.as_bytes(), b.stdout.as_bytes());
    let v1 = qbarnes("verify --suite route-equiv --seed 11 --points 20 --format csv");
    let v2 = qbarnes("verify --suite route-equiv --seed 11 --points 20 --format csv");
    assert_eq!(v1.stdout, v2.stdout);
}

#[test]
fn necessity_rule_rows_are_flagged_poles() {
    // t = s - 0.5 = 0 sits on the pole at t = 0 for every q
    let o = qbarnes("sweep --r 1 --phi s-0.5 --s 0.5 --z 1 --format json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let rows = json_rows(&o.stdout);
    let (summary, points) = rows.split_last().unwrap();
    assert!(points.iter().all(|r| r["kind"] == "pole"));
    assert!(points.iter().all(|r| r["value_re"].is_null()));
    assert_eq!(summary["classification"], "inconclusive");
}

#[test]
fn necessity_rule_off_the_pole_diverges() {
    let o = qbarnes("sweep --r 1 --phi s-0.5 --s 0.501 --z 1 --format json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let rows = json_rows(&o.stdout);
    let summary = rows.last().unwrap();
    assert_eq!(summary["classification"], "diverging");
    assert!(f(summary, "slope") > 0.0);
}

#[test]
fn dterm_table() {
    let o = qbarnes("sweep --dterms --N 2 --M 4 --s 2 --z 1 --k-max 7 --format json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let rows = json_rows(&o.stdout);
    let points: Vec<&Value> = rows.iter().filter(|r| r["kind"] == "point").collect();
    assert_eq!(points.len(), 5);
    for key in ["d1_gap", "d2_gap", "d3_gap"] {
        let gaps: Vec<f64> = points.iter().map(|r| f(r, key)).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{key}: {gaps:?}");
    }
    let target = rows.iter().find(|r| r["kind"] == "target").unwrap();
    // B_2/2! (s)_1 z^(-s-1) at (s, z) = (2, 1)
    assert!((f(target, "d1_re") - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn json_numbers_round_trip() {
    let o = qbarnes("eval hurwitz --s 0.3+2.7i --z 0.7 --format json");
    assert_eq!(o.code, EXIT_OK);
    let line = o.stdout.lines().next().unwrap();
    let row: Value = serde_json::from_str(line).unwrap();
    let re = f(&row, "value_re");
    let re_again: f64 = serde_json::to_string(&re).unwrap().parse().unwrap();
    assert_eq!(re.to_bits(), re_again.to_bits());
    // the CSV rendering carries 17 significant digits and recovers the same double
    let c = qbarnes("eval hurwitz --s 0.3+2.7i --z 0.7 --format csv");
    let mut rdr = csv::Reader::from_reader(c.stdout.as_bytes());
    let rec = rdr.records().next().unwrap().unwrap();
    let from_csv: f64 = rec[1].parse().unwrap();
    assert_eq!(from_csv.to_bits(), re.to_bits());
}

#[test]
fn complex_literal_forms() {
    let v = |z: &str| {
        let o = qbarnes(&format!("eval hurwitz --s 2 --z {z} --format json"));
        assert_eq!(o.code, EXIT_OK, "{z}: {}", o.stderr);
        let row = &json_rows(&o.stdout)[0];
        Complex64::new(f(row, "value_re"), f(row, "value_im"))
    };
    assert_eq!(v("1"), v("1+0i"));
    assert_eq!(v("1.5-0.5i"), v("1.5-0.5i"));
    assert!((v("1") - std::f64::consts::PI.powi(2) / 6.0).norm() < 1e-12);
}

#[test]
fn poles_scan_finds_real_axis_poles() {
    let o = qbarnes("poles --r 2 --nu 2 --q 0.5 --format json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let rows = json_rows(&o.stdout);
    let real: Vec<i64> = rows
        .iter()
        .filter(|r| r["kind"] == "real-axis" && r["pole"] == true)
        .map(|r| f(r, "s_re") as i64)
        .collect();
    assert_eq!(real, [1, 2, 3]);
    assert!(rows
        .iter()
        .filter(|r| r["kind"] == "lattice")
        .all(|r| r["pole"] == true));
}

#[test]
fn special_value_matches_nearby_limit() {
    let o = qbarnes("eval special-value --r 2 --q 0.5 --m 1 --z 1 --nu 1 --format json");
    assert_eq!(o.code, EXIT_OK);
    let exact = f(&json_rows(&o.stdout)[0], "value_re");
    let o = qbarnes("eval qzeta-nu --r 2 --q 0.5 --s -1.000001 --z 1 --nu 1 --format json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let near = f(&json_rows(&o.stdout)[0], "value_re");
    assert!((exact - near).abs() < 1e-5, "{exact} vs {near}");
}
