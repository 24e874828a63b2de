mod args;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Map, Value};

use quadlcm_core::arith::Factorization;
use quadlcm_core::congruence::{solve_brute, solve_with_case};
use quadlcm_core::distance::{min_distance_closed, min_distance_from_set, MinimalDistance};
use quadlcm_core::oracle::{
    asymptotic_slope, empirical_smallest_period, oracle_report, EMPIRICAL_NOTE,
};
use quadlcm_core::period::{
    local_period_via_bracket, normalize, smallest_period, smallest_period_capped,
};
use quadlcm_core::selftest::{self, SelftestConfig};
use quadlcm_core::Error;

use args::{AsymArgs, Cli, Command, MindistArgs, OracleArgs, PeriodArgs, SelftestArgs, SolveArgs};

const SCHEMA_VERSION: u32 = 1;

const RESIDUE_CONVENTION: &str = "residues are canonical representatives in [0, p^e); \
     the one-based convention [1, p^e] gives the same set with 0 read as p^e";

/// What a subcommand produced, before rendering.
struct Outcome {
    result: Value,
    checks: Map<String, Value>,
    text: String,
    /// False when a requested cross-check disagreed.
    consistent: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let request = request_json(&cli.command);
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "request": request,
                    "result": out.result,
                    "checks": out.checks,
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.consistent {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a consistency check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "request": request,
                    "result": Value::Null,
                    "checks": {},
                    "error": e.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

fn request_json(command: &Command) -> Value {
    let mut request = serde_json::to_value(command).expect("serializable");
    let poly = match command {
        Command::Period(a) => Some(a.poly),
        Command::Oracle(a) => Some(a.poly),
        _ => None,
    };
    if let (Some(poly), Value::Object(map)) = (poly, &mut request) {
        map.insert(
            "normalized".into(),
            json!({
                "f": normalize(&poly),
                "content": poly.content(),
                "negated": poly.a() < 0,
            }),
        );
    }
    request
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Solve(a) => run_solve(a),
        Command::Mindist(a) => run_mindist(a),
        Command::Period(a) => run_period(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Asym(a) => run_asym(a),
        Command::Selftest(a) => run_selftest(a),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Adds the residue convention to a result, wrapping non-objects as `rows`.
fn with_note(v: Value) -> Value {
    let mut map = match v {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("rows".into(), other);
            map
        }
    };
    map.insert("residue_convention".into(), RESIDUE_CONVENTION.into());
    Value::Object(map)
}

fn label<T: Serialize>(v: &T) -> String {
    match to_value(v) {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn factor_string(factors: &Factorization) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors
        .iter()
        .map(|(p, e)| format!("{p}^{e}"))
        .collect::<Vec<_>>()
        .join(" * ")
}

fn run_solve(a: &SolveArgs) -> Result<Outcome, Error> {
    let (set, case) = solve_with_case(&a.poly, a.prime, a.exp)?;
    let mut result = to_value(&set);
    result["case"] = to_value(&case);
    let mut text = format!(
        "f = {}, modulus {}^{} = {}\nresidues: {:?}\ncase: {}\n",
        a.poly,
        a.prime,
        a.exp,
        set.modulus(),
        set.residues(),
        label(&case)
    );
    let mut checks = Map::new();
    let mut consistent = true;
    if a.brute {
        let brute = solve_brute(&a.poly, a.prime, a.exp, a.oracle_cap)?;
        let matched = brute == set;
        consistent &= matched;
        let verdict = if matched { "match" } else { "mismatch" };
        checks.insert("brute".into(), verdict.into());
        checks.insert("brute_residues".into(), to_value(&brute.residues()));
        let _ = writeln!(text, "brute: {verdict}");
    }
    let _ = writeln!(text, "note: {RESIDUE_CONVENTION}");
    Ok(Outcome {
        result: with_note(result),
        checks,
        text,
        consistent,
    })
}

fn run_mindist(a: &MindistArgs) -> Result<Outcome, Error> {
    if a.e_min > a.e_max {
        return Err(Error::InvalidArgument(format!(
            "empty exponent range {}..={}",
            a.e_min, a.e_max
        )));
    }
    let mut rows: Vec<MinimalDistance> = Vec::new();
    let mut brute_rows: Vec<MinimalDistance> = Vec::new();
    let mut text = format!("f = {}, p = {}\n{:>4} {:>12}", a.poly, a.prime, "e", "d");
    if a.brute {
        let _ = write!(text, " {:>12}", "brute");
    }
    text.push('\n');
    for e in a.e_min..=a.e_max {
        let closed = min_distance_closed(&a.poly, a.prime, e)?;
        let _ = write!(text, "{e:>4} {:>12}", closed.d.to_string());
        if a.brute {
            let direct = min_distance_from_set(&solve_brute(&a.poly, a.prime, e, a.oracle_cap)?);
            let _ = write!(text, " {:>12}", direct.d.to_string());
            brute_rows.push(direct);
        }
        text.push('\n');
        rows.push(closed);
    }
    let nondecreasing = rows.windows(2).all(|w| w[0].d <= w[1].d);
    let mut checks = Map::new();
    checks.insert("nondecreasing_in_e".into(), nondecreasing.into());
    let _ = writeln!(text, "nondecreasing in e: {nondecreasing}");
    let mut consistent = nondecreasing;
    if a.brute {
        let matched = brute_rows == rows;
        consistent &= matched;
        checks.insert("brute".into(), if matched { "match" } else { "mismatch" }.into());
        checks.insert("brute_rows".into(), to_value(&brute_rows));
        let _ = writeln!(text, "brute: {}", if matched { "match" } else { "mismatch" });
    }
    let _ = writeln!(text, "note: distances use the same residue convention: {RESIDUE_CONVENTION}");
    Ok(Outcome {
        result: with_note(to_value(&rows)),
        checks,
        text,
        consistent,
    })
}

fn run_period(a: &PeriodArgs) -> Result<Outcome, Error> {
    let report = smallest_period_capped(&a.poly, a.k, a.k_cap)?;
    let mut text = format!("f = {}, k = {}\n", report.input, report.k);
    if report.f != report.input {
        let _ = writeln!(text, "normalized: {} (content {})", report.f, report.input.content());
    }
    let eta = report
        .eta
        .iter()
        .map(|(p, v)| format!("{p}: {v}"))
        .collect::<Vec<_>>()
        .join(", ");
    let locals = report
        .local_periods
        .values()
        .filter(|pp| pp.exp > 0)
        .map(|pp| format!("{}^{}", pp.p, pp.exp))
        .collect::<Vec<_>>();
    let _ = writeln!(text, "B_k = {} = {}", report.b_k, factor_string(&report.b_k_factors));
    let _ = writeln!(text, "L_k = {}", report.l_k);
    let _ = writeln!(text, "xi_2 = {}", report.xi2);
    let _ = writeln!(text, "eta = {{{eta}}}");
    let _ = writeln!(text, "A_k = {}", report.a_k);
    let _ = writeln!(
        text,
        "local periods: {}",
        if locals.is_empty() { "1".into() } else { locals.join(" * ") }
    );
    match report.exceptional_prime {
        Some(q) => {
            let _ = writeln!(text, "exceptional prime: {} (exponent {} in A_k)", q.q, q.exp);
        }
        None => text.push_str("exceptional prime: none\n"),
    }
    let _ = writeln!(text, "P = {}", report.period);

    let mut checks = Map::new();
    let mut consistent = true;
    if a.verify {
        let emp = empirical_smallest_period(&a.poly, a.k, &a.window.window())?;
        let agrees = emp.period == report.period;
        let mut bracket = true;
        for (&p, local) in &report.local_periods {
            if report.f.a() % p as i64 != 0 {
                bracket &= local_period_via_bracket(&report.f, p, a.k)? == *local;
            }
        }
        consistent &= agrees && bracket;
        checks.insert("empirical_period".into(), to_value(&emp.period));
        checks.insert("empirical_agrees".into(), agrees.into());
        checks.insert("n0".into(), emp.n0.into());
        checks.insert("horizon".into(), emp.horizon.into());
        checks.insert("evidence".into(), EMPIRICAL_NOTE.into());
        checks.insert("bracket_paths_agree".into(), bracket.into());
        let _ = writeln!(
            text,
            "empirical period: {} ({}; n0 = {}, horizon {})",
            emp.period,
            if agrees { "agrees" } else { "DISAGREES" },
            emp.n0,
            emp.horizon
        );
        let _ = writeln!(text, "bracket path agrees: {bracket}");
        let _ = writeln!(text, "note: {EMPIRICAL_NOTE}");
    }
    Ok(Outcome {
        result: with_note(to_value(&report)),
        checks,
        text,
        consistent,
    })
}

fn run_oracle(a: &OracleArgs) -> Result<Outcome, Error> {
    let report = oracle_report(&a.poly, a.k, &a.window.window())?;
    let mut text = format!("f = {}, k = {}\n", report.f, report.k);
    for (n, g) in &report.samples {
        let _ = writeln!(text, "g({n}) = {g}");
    }
    let _ = writeln!(
        text,
        "empirical period: {} (n0 = {}, horizon {})",
        report.empirical_period, report.n0, report.horizon
    );
    let locals = report
        .empirical_local_periods
        .iter()
        .filter(|(_, &e)| e > 0)
        .map(|(p, e)| format!("{p}^{e}"))
        .collect::<Vec<_>>();
    let _ = writeln!(
        text,
        "empirical local periods: {}",
        if locals.is_empty() { "1".into() } else { locals.join(" * ") }
    );
    let _ = writeln!(text, "alternating gcd identity: {}", report.hua_consistent);
    let _ = writeln!(text, "pairwise gcd divides B_k: {}", report.gcd_divides_bk);
    let _ = writeln!(text, "valuation counts: {}", report.valuation_counts_consistent);
    let _ = writeln!(text, "note: {}", report.evidence);
    let mut consistent =
        report.hua_consistent && report.gcd_divides_bk && report.valuation_counts_consistent;
    let mut checks = Map::new();
    if a.verify {
        let engine = smallest_period(&a.poly, a.k)?;
        let agrees = engine.period == report.empirical_period;
        consistent &= agrees;
        checks.insert("engine_period".into(), to_value(&engine.period));
        checks.insert("engine_agrees".into(), agrees.into());
        let _ = writeln!(
            text,
            "closed-form period: {} ({})",
            engine.period,
            if agrees { "agrees" } else { "DISAGREES" }
        );
    }
    Ok(Outcome {
        result: with_note(to_value(&report)),
        checks,
        text,
        consistent,
    })
}

fn run_asym(a: &AsymArgs) -> Result<Outcome, Error> {
    let report = asymptotic_slope(&a.poly, a.k, &a.samples)?;
    let mut points = report.points.clone();
    points.sort_by_key(|p| p.n);
    let c = report.predicted_c as f64;
    let toward_c = points
        .windows(2)
        .all(|w| (w[1].ratio - c).abs() <= (w[0].ratio - c).abs());
    let mut text = String::new();
    if a.csv {
        text.push_str("n,log_lcm,ratio,predicted_C\n");
        for p in &report.points {
            let _ = writeln!(text, "{},{},{},{}", p.n, p.log_lcm, p.ratio, report.predicted_c);
        }
    } else {
        let _ = writeln!(text, "f = {}, k = {}, predicted C = {}", report.f, report.k, report.predicted_c);
        let _ = writeln!(text, "{:>12} {:>14} {:>10}", "n", "log lcm", "ratio");
        for p in &report.points {
            let _ = writeln!(text, "{:>12} {:>14.4} {:>10.4}", p.n, p.log_lcm, p.ratio);
        }
        let _ = writeln!(text, "relative deviation at largest n: {:.4}", report.relative_deviation);
        let _ = writeln!(text, "ratios move toward C: {toward_c}");
    }
    let mut checks = Map::new();
    checks.insert("ratios_move_toward_c".into(), toward_c.into());
    Ok(Outcome {
        result: to_value(&report),
        checks,
        text,
        consistent: true,
    })
}

fn run_selftest(a: &SelftestArgs) -> Result<Outcome, Error> {
    let config = if a.quick {
        SelftestConfig::quick()
    } else {
        SelftestConfig::default()
    };
    let outcomes = selftest::run(&config)?;
    let mut text = String::new();
    let mut all = true;
    for check in &outcomes {
        all &= check.passed();
        let _ = writeln!(
            text,
            "{} {} ({} cases)",
            if check.passed() { "PASS" } else { "FAIL" },
            check.name,
            check.cases
        );
        for failure in &check.failures {
            let _ = writeln!(text, "    {failure}");
        }
    }
    let mut checks = Map::new();
    checks.insert("all_passed".into(), all.into());
    checks.insert("config".into(), to_value(&config));
    Ok(Outcome {
        result: to_value(&outcomes),
        checks,
        text,
        consistent: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadlcm_core::QuadPoly;

    #[test]
    fn note_wraps_non_objects() {
        let v = with_note(json!([1, 2]));
        assert_eq!(v["rows"], json!([1, 2]));
        assert_eq!(v["residue_convention"], RESIDUE_CONVENTION);
        let v = with_note(json!({"x": 1}));
        assert_eq!(v["x"], 1);
    }

    #[test]
    fn factor_strings() {
        assert_eq!(factor_string(&Factorization::new()), "1");
        let f: Factorization = [(2, 3), (5, 1)].into_iter().collect();
        assert_eq!(factor_string(&f), "2^3 * 5^1");
    }

    #[test]
    fn request_reports_normalization() {
        let cli = Cli::try_parse_from(["quadlcm", "period", "--poly", "-2,0,-2", "--k", "1"]).unwrap();
        let r = request_json(&cli.command);
        assert_eq!(r["subcommand"], "period");
        assert_eq!(r["normalized"]["f"], to_value(&QuadPoly::new(1, 0, 1).unwrap()));
        assert_eq!(r["normalized"]["content"], 2);
        assert_eq!(r["normalized"]["negated"], true);
    }
}
