use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use qbarnes_core::classical::{barnes_r1_scaled, barnes_zeta, hurwitz_direct, hurwitz_em, EMConfig};
use qbarnes_core::limits::{
    dterm_limit_check, dyadic_grid, limit_sweep, sweep_policy, DTermReport,
};
use qbarnes_core::qgamma::{gamma_q_euler, qgamma};
use qbarnes_core::qzeta::{
    qzeta1_em, qzeta_binomial_ac, qzeta_direct, qzeta_ladder, qzeta_nu, qzeta_qbinom,
    qzeta_reduce, qzeta_special_value,
};
use qbarnes_core::suites::{run_suite, Suite, SuiteOptions, SuiteReport};
use qbarnes_core::{
    ContinuationParams, EvalResult, Method, QGammaContext, QParam, SweepReport, SweepSpec,
    TRule, TruncationPolicy, Weights,
};

use crate::args::{EvalArgs, Function, PolesArgs, Route, SweepArgs, VerifyArgs};
use crate::complex::format_complex;
use crate::output::{Cell, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_POLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Eval(qbarnes_core::Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Eval(e) if e.is_pole() => EXIT_POLE,
            CliError::Eval(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn report(&self, err: &mut dyn Write) {
        let _ = match self {
            CliError::Usage(m) => writeln!(err, "error: {m}"),
            CliError::Eval(qbarnes_core::Error::Pole { op, location, detail }) => writeln!(
                err,
                "error: pole\n  at: {}\n  in: {op}\n  detail: {detail}",
                format_complex(*location)
            ),
            CliError::Eval(e) => writeln!(err, "error: {e}"),
            CliError::Io(e) => writeln!(err, "error: cannot write output: {e}"),
        };
    }
}

impl From<qbarnes_core::Error> for CliError {
    fn from(e: qbarnes_core::Error) -> Self {
        CliError::Eval(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn required<T: Copy>(v: Option<T>, flag: &str, function: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{function} needs --{flag}")))
}

fn weights_for(r: usize, weights: &Option<Weights>) -> CliResult<Weights> {
    match weights {
        None => Ok(Weights::ones(r)),
        Some(w) if w.r() == r => Ok(w.clone()),
        Some(w) => Err(CliError::Usage(format!("{} weights given for r = {r}", w.r()))),
    }
}

struct Evaluated {
    function: &'static str,
    result: EvalResult,
    method: String,
}

fn exact(value: Complex64, method: &str, function: &'static str) -> Evaluated {
    Evaluated {
        function,
        result: EvalResult::new(value, 16.0 * f64::EPSILON * value.norm(), Method::SpecialValue),
        method: method.to_string(),
    }
}

fn evaluated(result: EvalResult, function: &'static str) -> Evaluated {
    Evaluated {
        function,
        method: result.method.tag().to_string(),
        result,
    }
}

fn eval_qzeta(a: &EvalArgs, policy: &TruncationPolicy) -> CliResult<EvalResult> {
    let q = required(a.q, "q", "qzeta")?;
    let s = required(a.s, "s", "qzeta")?;
    let t = required(a.t, "t", "qzeta")?;
    let (r, z) = (a.r, a.z);
    let w = weights_for(r, &a.weights)?;
    let unit_only = |route: &str| -> CliResult<()> {
        if w.is_unit() {
            Ok(())
        } else {
            Err(CliError::Usage(format!("route {route} needs unit weights")))
        }
    };
    let em_params = || -> CliResult<ContinuationParams> {
        let mut cp = ContinuationParams::new(a.n, a.m_cont, a.n_max)?;
        cp.policy = *policy;
        Ok(cp)
    };
    let out = match a.route {
        Route::Auto => qzeta_binomial_ac(r, q, s, t, z, &w, policy)?,
        Route::Direct => qzeta_direct(r, q, s, t, z, &w, policy)?,
        Route::Qbinom => {
            unit_only("qbinom")?;
            qzeta_qbinom(r, q, s, t, z, policy)?
        }
        Route::Ladder => {
            unit_only("ladder")?;
            qzeta_ladder(r, q, s, t, z, policy)?
        }
        Route::Reduce => {
            unit_only("reduce")?;
            let one = Weights::ones(1);
            qzeta_reduce(r, q, s, t, z, |s1, t1, z1| {
                qzeta_binomial_ac(1, q, s1, t1, z1, &one, policy)
            })?
        }
        Route::Em => {
            if r != 1 || !w.is_unit() {
                return Err(CliError::Usage("route em is for r = 1 with unit weight".into()));
            }
            qzeta1_em(q, s, t, z, &em_params()?)?
        }
    };
    Ok(out)
}

fn evaluate(a: &EvalArgs, policy: &TruncationPolicy) -> CliResult<Evaluated> {
    let name = match a.function {
        Function::Hurwitz => "hurwitz",
        Function::Barnes => "barnes",
        Function::Qzeta => "qzeta",
        Function::QzetaNu => "qzeta-nu",
        Function::Qgamma => "qgamma",
        Function::GammaQ => "gamma-q",
        Function::SpecialValue => "special-value",
    };
    let em = EMConfig {
        policy: *policy,
        ..EMConfig::with_depth(a.depth)
    };
    Ok(match a.function {
        Function::Hurwitz => {
            let s = required(a.s, "s", name)?;
            let r = if s.re > 1.0 {
                hurwitz_direct(s, a.z, policy)?
            } else {
                hurwitz_em(s, a.z, &em)?
            };
            evaluated(r, name)
        }
        Function::Barnes => {
            let s = required(a.s, "s", name)?;
            let w = weights_for(a.r, &a.weights)?;
            let r = if w.is_unit() {
                barnes_zeta(a.r, s, a.z, &[em])?
            } else if a.r == 1 {
                barnes_r1_scaled(s, a.z, w.as_slice()[0], &em)?
            } else {
                return Err(CliError::Usage(
                    "barnes with non-unit weights is available for r = 1 only".into(),
                ));
            };
            evaluated(r, name)
        }
        Function::Qzeta => evaluated(eval_qzeta(a, policy)?, name),
        Function::QzetaNu => {
            let q = required(a.q, "q", name)?;
            let s = required(a.s, "s", name)?;
            let w = weights_for(a.r, &a.weights)?;
            evaluated(qzeta_nu(a.r, q, s, a.z, a.nu, &w, policy)?, name)
        }
        Function::SpecialValue => {
            let q = required(a.q, "q", name)?;
            let m = required(a.m, "m", name)?;
            let w = weights_for(a.r, &a.weights)?;
            let v = qzeta_special_value(a.r, q, m, a.z, a.nu, &w)?;
            exact(v, Method::SpecialValue.tag(), name)
        }
        Function::Qgamma => {
            let q = required(a.q, "q", name)?;
            let ctx = QGammaContext::new(q)?;
            let method = if a.z.re > 0.0 { "qgamma-series" } else { "qgamma-ladder" };
            let v = if a.log { ctx.ln_qgamma(a.z)? } else { qgamma(&ctx, a.z)? };
            exact(v, method, if a.log { "ln-qgamma" } else { name })
        }
        Function::GammaQ => {
            let q = required(a.q, "q", name)?;
            exact(gamma_q_euler(q, a.z, policy)?, "gamma-q-series", name)
        }
    })
}

pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult<i32> {
    let policy = a.truncation.apply(TruncationPolicy::from_env());
    let e = evaluate(a, &policy)?;
    let v = e.result.value;
    match a.format {
        Format::Text => {
            writeln!(out, "{} = {}", e.function, format_complex(v))?;
            writeln!(out, "abs_err = {:e}", e.result.abs_err)?;
            writeln!(out, "method = {}", e.method)?;
        }
        f => {
            let mut t = Table::new(&["function", "value_re", "value_im", "abs_err", "method"]);
            t.push(vec![
                e.function.into(),
                v.re.into(),
                v.im.into(),
                e.result.abs_err.into(),
                e.method.into(),
            ]);
            t.write(f, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn suites_for(name: &str) -> CliResult<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    name.split(',')
        .map(|n| n.trim().parse::<Suite>().map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let suites = suites_for(&a.suite)?;
    let opts = SuiteOptions {
        seed: a.seed,
        points: a.points,
        n: a.n,
        q: a.q.map(QParam::value),
        policy: a.truncation.apply(TruncationPolicy::from_env()),
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &opts)).collect();
    match a.format {
        Format::Text => {
            for rep in &reports {
                let failed = rep.checks.iter().filter(|c| !c.passed).count();
                writeln!(
                    out,
                    "{:<15} {}  checks={} failed={} max_residual={:.3e}",
                    rep.suite.name(),
                    if rep.passed() { "PASS" } else { "FAIL" },
                    rep.checks.len(),
                    failed,
                    rep.max_residual()
                )?;
                for c in rep.checks.iter().filter(|c| !c.passed) {
                    writeln!(
                        out,
                        "  FAIL {} [{}] residual={:e} tol={:e}{}",
                        c.name,
                        c.inputs,
                        c.residual,
                        c.tolerance,
                        c.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
                    )?;
                }
            }
        }
        f => {
            let mut t = Table::new(&[
                "suite", "check", "inputs", "residual", "tolerance", "passed", "note",
            ]);
            for rep in &reports {
                for c in &rep.checks {
                    t.push(vec![
                        rep.suite.name().into(),
                        c.name.clone().into(),
                        c.inputs.clone().into(),
                        c.residual.into(),
                        c.tolerance.into(),
                        c.passed.into(),
                        c.note.clone().into(),
                    ]);
                }
            }
            t.write(f, out)?;
        }
    }
    let first = reports
        .iter()
        .find_map(|rep| rep.first_failure().map(|c| (rep.suite, c)));
    match first {
        None => Ok(EXIT_OK),
        Some((suite, c)) => {
            writeln!(
                err,
                "verify failed: suite {suite}, check {}\n  inputs: {}\n  residual: {:e} (tolerance {:e}){}",
                c.name,
                c.inputs,
                c.residual,
                c.tolerance,
                c.note.as_deref().map(|n| format!("\n  note: {n}")).unwrap_or_default()
            )?;
            Ok(EXIT_VERIFY_FAILED)
        }
    }
}

fn grid(a: &SweepArgs, default_k_max: i32) -> CliResult<Vec<f64>> {
    let k_max = a.k_max.unwrap_or(default_k_max);
    if a.k_min < 1 || k_max < a.k_min || k_max > 52 {
        return Err(CliError::Usage(format!(
            "need 1 <= k-min <= k-max <= 52 (got {}..{k_max})",
            a.k_min
        )));
    }
    Ok(dyadic_grid(a.k_min, k_max))
}

fn sweep_table(report: &SweepReport) -> Table {
    let mut t = Table::new(&[
        "kind", "q", "value_re", "value_im", "target_re", "target_im", "gap", "classification",
        "slope", "note",
    ]);
    let target = report.target;
    for p in &report.points {
        let kind = match (&p.value, p.pole) {
            (Some(_), _) => "point",
            (None, true) => "pole",
            (None, false) => "error",
        };
        t.push(vec![
            kind.into(),
            p.q.into(),
            p.value.map(|v| v.re).into(),
            p.value.map(|v| v.im).into(),
            target.re.into(),
            target.im.into(),
            p.gap.into(),
            Cell::Empty,
            Cell::Empty,
            p.note.clone().into(),
        ]);
    }
    let evaluated = report.points.iter().filter(|p| p.value.is_some()).count();
    t.push(vec![
        "summary".into(),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        target.re.into(),
        target.im.into(),
        report.final_gap().into(),
        report.classification.to_string().into(),
        report.slope.into(),
        format!("{evaluated} of {} grid points evaluated", report.points.len()).into(),
    ]);
    t
}

fn dterm_table(report: &DTermReport) -> Table {
    let mut t = Table::new(&[
        "kind", "q", "d1_re", "d1_im", "d1_gap", "d2_re", "d2_im", "d2_gap", "d3_re", "d3_im",
        "d3_gap", "fourier_err", "note",
    ]);
    let gaps: Vec<Vec<f64>> = (0..3).map(|i| report.gaps(i)).collect();
    for (k, row) in report.rows.iter().enumerate() {
        let mut cells: Vec<Cell> = vec!["point".into(), row.q.into()];
        for (i, v) in [row.d1, row.d2, row.d3].into_iter().enumerate() {
            cells.extend([v.re.into(), v.im.into(), gaps[i][k].into()]);
        }
        cells.extend([row.fourier_err.into(), Cell::Empty]);
        t.push(cells);
    }
    let mut cells: Vec<Cell> = vec!["target".into(), Cell::Empty];
    for v in report.targets {
        cells.extend([v.re.into(), v.im.into(), Cell::Empty]);
    }
    cells.extend([Cell::Empty, format!("N = {}, M = {}", report.n, report.m).into()]);
    t.push(cells);
    let flags: Vec<String> = (0..3)
        .map(|i| format!("D{} gaps decreasing: {}", i + 1, report.decreasing(i)))
        .collect();
    let mut cells: Vec<Cell> = vec!["summary".into(), Cell::Empty];
    for g in &gaps {
        cells.extend([Cell::Empty, Cell::Empty, g.last().copied().into()]);
    }
    cells.extend([Cell::Empty, flags.join("; ").into()]);
    t.push(cells);
    t
}

pub fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> CliResult<i32> {
    let policy = a.truncation.apply(sweep_policy());
    let table = if a.dterms {
        let mut cp = ContinuationParams::new(a.n, a.m, a.n_max)?;
        cp.policy = a.truncation.apply(cp.policy);
        dterm_table(&dterm_limit_check(a.s, a.t, a.z, &cp, &grid(a, 10)?)?)
    } else {
        let rule = a.phi.unwrap_or(TRule::Shift(a.nu.unwrap_or(1)));
        let spec = SweepSpec::new(a.r, a.s, a.z, rule)
            .with_grid(grid(a, 13)?)
            .with_weights(weights_for(a.r, &a.weights)?);
        sweep_table(&limit_sweep(&spec, &policy)?)
    };
    table.write(a.format, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_poles(a: &PolesArgs, out: &mut dyn Write) -> CliResult<i32> {
    if a.nu == 0 {
        return Err(CliError::Usage("nu must be at least 1".into()));
    }
    let policy = a.truncation.apply(TruncationPolicy::from_env());
    let w = weights_for(a.r, &a.weights)?;
    let s_max = a.s_max.unwrap_or((a.r + a.nu + 1) as i64);
    if s_max < a.s_min {
        return Err(CliError::Usage(format!("empty scan {}..{s_max}", a.s_min)));
    }
    let mut t = Table::new(&["kind", "s_re", "s_im", "pole", "detail"]);
    let mut probe = |kind: &str, s: Complex64| {
        let (pole, detail) = match qzeta_nu(a.r, a.q, s, a.z, a.nu, &w, &policy) {
            Ok(v) => (false, format!("value {}", format_complex(v.value))),
            Err(e) => (e.is_pole(), e.to_string()),
        };
        t.push(vec![kind.into(), s.re.into(), s.im.into(), pole.into(), detail.into()]);
    };
    for k in a.s_min..=s_max {
        probe("real-axis", Complex64::new(k as f64, 0.0));
    }
    // s = nu + j - 1 + n delta_j puts t = s - nu on the j-th lattice
    for (j, wj) in w.as_slice().iter().enumerate() {
        let delta = 2.0 * PI / (wj * a.q.ln());
        for n in [-1.0, 1.0] {
            probe("lattice", Complex64::new((a.nu + j) as f64, n * delta));
        }
    }
    t.write(a.format, out)?;
    Ok(EXIT_OK)
}
