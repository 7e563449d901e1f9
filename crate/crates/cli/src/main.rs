mod args;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command, FamilyCmd, Format, GfArg, SeriesArgs, VerifyArgs};
use output::{poly_json, OutputRecord};
use wordstat::oracle::BUDGET_ENV;
use wordstat::query;
use wordstat::series::{build_ak_series, build_bk_series};
use wordstat::verify::{run_suite, VerifyOptions};
use wordstat::{Error, GeneratingFunction, TrackingSpec};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

enum Failure {
    Usage(String),
    Resource(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    check_budget_env()?;
    match cli.command {
        Command::Count { family } => count(family),
        Command::Table { family } => table(family),
        Command::Series(a) => series(a),
        Command::Verify(a) => verify(a),
    }
}

/// A set but malformed budget is a usage error rather than a silent default.
fn check_budget_env() -> Result<(), Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) if v.trim().parse::<u64>().is_err() => Err(Failure::Usage(format!(
            "{BUDGET_ENV} must be a non-negative integer, got '{v}'"
        ))),
        _ => Ok(()),
    }
}

fn count(cmd: FamilyCmd) -> Result<(), Failure> {
    let q = cmd.resolve();
    if q.format == Format::Csv {
        return Err(Failure::Usage(
            "csv output is only available for table".into(),
        ));
    }
    let value = q.value.clone().ok_or_else(|| {
        Failure::Usage(format!("count {} needs a statistic value", q.family.name()))
    })?;
    let c = query::count(&q.family, q.n, &value, q.engine)?;
    let mut result = json!({
        "family": q.family.name(),
        "n": q.n.to_string(),
        "value": value.iter().map(u32::to_string).collect::<Vec<_>>(),
        "count": c.to_string(),
    });
    if q.engine == query::Engine::ClosedForm {
        result["formula"] = json!(q.family.formula_id().name());
    }
    OutputRecord::new("count", &q.params, Some(q.engine.name()), result).print();
    Ok(())
}

fn table(cmd: FamilyCmd) -> Result<(), Failure> {
    let q = cmd.resolve();
    if q.value.is_some() {
        return Err(Failure::Usage("table takes no statistic value".into()));
    }
    let t = query::table(&q.family, q.n, q.engine)?;
    match q.format {
        Format::Csv => output::print_table_csv(&t).map_err(|e| Failure::Resource(e.to_string())),
        Format::Json => {
            let rows: Vec<_> = t
                .rows
                .iter()
                .map(|(k, c)| {
                    json!({
                        "value": k.iter().map(u32::to_string).collect::<Vec<_>>(),
                        "count": c.to_string(),
                    })
                })
                .collect();
            let result = json!({
                "family": q.family.name(),
                "n": q.n.to_string(),
                "labels": t.labels,
                "rows": rows,
                "total": t.total().to_string(),
            });
            OutputRecord::new("table", &q.params, Some(q.engine.name()), result).print();
            Ok(())
        }
    }
}

fn series(a: SeriesArgs) -> Result<(), Failure> {
    let p = args::parse_partition(a.k, &a.partition).map_err(Failure::Usage)?;
    let mut spec = TrackingSpec::untracked(p.t()).with_q(a.q.into());
    for name in &a.track {
        if name == "all" {
            for b in 1..=p.t() {
                for m in ["x", "y", "z"] {
                    spec = spec.track_named(&format!("{m}{b}"))?;
                }
            }
        } else {
            spec = spec.track_named(name)?;
        }
    }
    let (gf, s) = match a.gf {
        GfArg::A => (
            GeneratingFunction::A,
            build_ak_series(a.k, &p, &spec, a.order)?,
        ),
        GfArg::B => (
            GeneratingFunction::B,
            build_bk_series(a.k, &p, &spec, a.order)?,
        ),
    };
    let coefficients: Vec<_> = s
        .coefficients()
        .iter()
        .enumerate()
        .map(|(d, c)| {
            let mut v = poly_json(c, s.vars());
            v["degree"] = json!(d.to_string());
            v
        })
        .collect();
    let params = vec![
        ("gf", format!("{gf:?}")),
        ("k", a.k.to_string()),
        ("partition", a.partition.clone()),
        ("track", a.track.join(",")),
        ("q", format!("{:?}", a.q).to_lowercase()),
        ("order", a.order.to_string()),
    ];
    let result = json!({
        "variable": s.var().name(),
        "vars": s.vars().names(),
        "coefficients": coefficients,
    });
    OutputRecord::new("series", &params, Some("series"), result).print();
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let mut opts = VerifyOptions::new(a.k_max, a.n_max);
    opts.inject_fault = a.inject_fault;
    let mut reports = Vec::new();
    let mut failed = false;
    for suite in a.suite.suites() {
        let r = run_suite(suite, &opts)?;
        if let Some(first) = &r.first_failure {
            eprintln!("{suite}: first failure: {first}");
        }
        failed |= !r.passed();
        reports.push(json!({
            "suite": suite.name(),
            "checked": r.checked.to_string(),
            "failures": r.failures.to_string(),
            "first_failure": r.first_failure,
        }));
    }
    let params = vec![
        ("suite", format!("{:?}", a.suite)),
        ("k_max", a.k_max.to_string()),
        ("n_max", a.n_max.to_string()),
        ("inject_fault", a.inject_fault.to_string()),
    ];
    let result = json!({ "passed": !failed, "reports": reports });
    OutputRecord::new("verify", &params, None, result).print();
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}
