mod args;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{AuditArgs, Cli, Command, CongruenceCmd, Format};
use quartic_core::arith::build_tables;
use quartic_core::congruence as cg;
use quartic_core::sequence::{self, EnumerationConfig, SieveParams};
use quartic_core::series::{big_h, main_term_coefficient};
use quartic_core::verify::{run_suite, Suite};
use quartic_core::LabError;
use report::{envelope, params, render};

/// Exit status for a violated precondition.
const EXIT_PRECONDITION: u8 = 2;

enum Failure {
    Lab(LabError),
    Io(io::Error),
    /// Computation finished but a check failed; the report is still printed.
    Checks(String),
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        Failure::Lab(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                | ErrorKind::MissingSubcommand => 1,
                _ => EXIT_PRECONDITION,
            });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_PRECONDITION);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut stdout = io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Checks(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Lab(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_precondition() { EXIT_PRECONDITION } else { 1 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli, stdout: &mut impl Write) -> Outcome {
    let config = EnumerationConfig {
        budget: cli.budget,
        ..Default::default()
    };
    let fmt = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Constant { c } => {
            let model = main_term_coefficient(*c)?;
            let h = big_h(*c)?;
            let result = json!({
                "G": model.g_c,
                "H": h.value,
                "H_divisor_sum": h.divisor_sum,
                "kappa": model.kappa,
                "coefficient": model.coefficient,
                "G_is_zero": model.g_c.is_zero(),
            });
            Ok(render(&envelope("constant", params(&[("c", json!(c))]), result), fmt))
        }
        Command::Tally { c, x, out } => tally_cmd(*c, *x, out.as_ref(), &config, fmt, stdout),
        Command::Audit(a) => audit_cmd(a, &config, fmt),
        Command::Primes { c, x } => {
            let primes = sequence::sequence_primes(*c, *x, &config)?;
            Ok(match fmt {
                Format::Json => render(
                    &envelope("primes", params(&[("c", json!(c)), ("x", json!(x))]), &primes),
                    fmt,
                ),
                _ => primes.iter().map(|p| format!("{p}\n")).collect(),
            })
        }
        Command::Congruence(cmd) => congruence_cmd(cmd, fmt),
        Command::Verify { suite } => verify_cmd(suite, cli.format.unwrap_or(Format::Table)),
    }
}

fn resolve_out(path: &PathBuf) -> PathBuf {
    match std::env::var_os("QUARTIC_OUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn write_csv(t: &sequence::SequenceTally, w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "n,a_n")?;
    for (n, a) in t.rows() {
        writeln!(w, "{n},{a}")?;
    }
    w.flush()
}

fn tally_cmd(
    c: u64,
    x: u64,
    out: Option<&PathBuf>,
    config: &EnumerationConfig,
    fmt: Format,
    stdout: &mut impl Write,
) -> Outcome {
    config.check(c, x)?;
    let t = sequence::tally_with(c, x, config)?;
    let Some(out) = out else {
        write_csv(&t, stdout)?;
        return Ok(String::new());
    };
    let path = resolve_out(out);
    write_csv(&t, &mut BufWriter::new(File::create(&path)?))?;
    let summary = json!({
        "out": path.display().to_string(),
        "total": t.total(),
        "nonzero": t.rows().filter(|&(_, a)| a > 0).count(),
        "sum_of_squares": t.sum_of_squares().to_string(),
    });
    Ok(render(
        &envelope("tally", params(&[("c", json!(c)), ("x", json!(x))]), summary),
        fmt,
    ))
}

fn audit_cmd(a: &AuditArgs, config: &EnumerationConfig, fmt: Format) -> Outcome {
    config.check(a.c, a.x)?;
    if a.x < 100 {
        return Err(LabError::Precondition(format!("audit needs x >= 100, got {}", a.x)).into());
    }
    let mut p = SieveParams::defaults_for(a.x);
    p.big_d = a.big_d.unwrap_or(p.big_d);
    p.k = a.k.unwrap_or(p.k);
    p.n = a.n.unwrap_or(p.n);
    p.p = a.p.unwrap_or(p.p);
    p.validate(a.x)?;
    let t = sequence::tally_with(a.c, a.x, config)?;
    let tables = build_tables(a.x)?;
    let report = sequence::hypothesis_audit(&t, &tables, &p)?;
    let ps = params(&[("c", json!(a.c)), ("x", json!(a.x)), ("sieve", serde_json::to_value(p).unwrap())]);
    Ok(render(&envelope("audit", ps, report), fmt))
}

fn congruence_cmd(cmd: &CongruenceCmd, fmt: Format) -> Outcome {
    use CongruenceCmd::*;
    let (name, ps, result): (&str, Value, Value) = match *cmd {
        Chen { ell, semiprime } => (
            "congruence chen",
            params(&[("ell", json!(ell)), ("semiprime", json!(semiprime))]),
            json!(cg::chen_search(ell, semiprime)?),
        ),
        Frey { p, q, ell } => (
            "congruence frey",
            params(&[("p", json!(p)), ("q", json!(q)), ("ell", json!(ell))]),
            json!(cg::frey_invariants(p, q, ell)?),
        ),
        Trace { a2, a4, a6, p } => {
            let curve = cg::CurveQ::new(a2, a4, a6)?;
            let ap = cg::trace_of_frobenius(&curve, p)?;
            (
                "congruence trace",
                params(&[
                    ("a2", json!(a2.to_string())),
                    ("a4", json!(a4.to_string())),
                    ("a6", json!(a6.to_string())),
                    ("p", json!(p)),
                ]),
                json!({ "a_p": ap, "hasse_bound": 2.0 * (p as f64).sqrt() }),
            )
        }
        Degree { ell, q } => (
            "congruence degree",
            params(&[("ell", json!(ell)), ("q", json!(q))]),
            json!({ "degree": cg::degree_lower_bound(ell, q)? }),
        ),
        Ogg { p, q } => (
            "congruence ogg",
            params(&[("p", json!(p)), ("q", json!(q))]),
            json!({ "numerator": cg::ogg_numerator(p, q)? }),
        ),
        Eisenstein { ell, t } => (
            "congruence eisenstein",
            params(&[("ell", json!(ell)), ("t", json!(t))]),
            json!(cg::eisenstein_level_search(ell, t)?),
        ),
        Quartic { ell, bound } => (
            "congruence quartic",
            params(&[("ell", json!(ell)), ("bound", json!(bound))]),
            json!(cg::quartic_solution_search(ell, bound)?),
        ),
        Qcurve { a, b, ell, p } => {
            let r = cg::qcurve_construct(a, b, ell, p)?;
            let mut v = json!(r);
            v["norm_identity"] = json!(r.norm_identity());
            (
                "congruence qcurve",
                params(&[("A", json!(a)), ("B", json!(b)), ("ell", json!(ell)), ("p", json!(p))]),
                v,
            )
        }
    };
    Ok(render(&envelope(name, ps, result), fmt))
}

fn verify_cmd(suite: &str, fmt: Format) -> Outcome {
    let suite: Suite = suite.parse()?;
    let checks = run_suite(suite);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = match fmt {
        Format::Json => render(
            &envelope(
                "verify",
                params(&[("suite", json!(suite.to_string()))]),
                json!({ "checks": checks, "failed": failed }),
            ),
            fmt,
        ),
        _ => {
            let mut s = String::new();
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{mark}  {}/{}  {}\n", c.suite, c.name, c.detail));
            }
            s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            s
        }
    };
    if failed > 0 {
        Err(Failure::Checks(text))
    } else {
        Ok(text)
    }
}
