mod checks;

use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use minorlift::report::{Status, VerificationReport};
use rayon::prelude::*;
use serde_json::{json, Value};

use checks::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Lift,
    Cayley,
    Annihilator,
    Hilbert,
    Pairing,
    Schur,
    Identities,
    All,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Lift => "lift",
            Check::Cayley => "cayley",
            Check::Annihilator => "annihilator",
            Check::Hilbert => "hilbert",
            Check::Pairing => "pairing",
            Check::Schur => "schur",
            Check::Identities => "identities",
            Check::All => "all",
        }
    }

    fn run(self, p: &Params) -> VerificationReport {
        let result = match self {
            Check::Lift => checks::lift(p),
            Check::Cayley => checks::cayley(p),
            Check::Annihilator => checks::annihilator_check(p),
            Check::Hilbert => checks::hilbert(p),
            Check::Pairing => checks::pairing_check(p),
            Check::Schur => checks::schur(p),
            Check::Identities => checks::identities(p),
            Check::All => unreachable!("expanded by the caller"),
        };
        result.unwrap_or_else(|e| {
            let mut r = VerificationReport::new(self.name(), json!({}));
            r.skip(self.name(), e.to_string());
            r
        })
    }
}

const SINGLE: [Check; 7] = [
    Check::Lift,
    Check::Cayley,
    Check::Annihilator,
    Check::Hilbert,
    Check::Pairing,
    Check::Schur,
    Check::Identities,
];

/// Runs exact verification checks for the minor-power lift and its consequences.
#[derive(Debug, Parser)]
#[command(name = "minorlift", version)]
struct Cli {
    #[arg(long, value_enum)]
    check: Check,
    /// Rows of the general matrix (hilbert, schur). Defaults to n + 1.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    t: usize,
    #[arg(long, default_value_t = 4)]
    rmax: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn envelope(check: Check, params: &Params, report: &VerificationReport, elapsed_ms: u128) -> Value {
    json!({
        "tool": "minorlift",
        "version": env!("CARGO_PKG_VERSION"),
        "check": check.name(),
        "params": params,
        "status": report.status(),
        "details": report.details,
        "elapsed_ms": elapsed_ms,
    })
}

fn render_text(check: Check, report: &VerificationReport, elapsed_ms: u128) -> String {
    let mut out = format!(
        "minorlift {} check={} status={} ({elapsed_ms} ms)\n",
        env!("CARGO_PKG_VERSION"),
        check.name(),
        report.status().as_str()
    );
    for d in &report.details {
        out.push_str(&format!("  {:<7} {}", d.status.as_str(), d.name));
        if d.status == Status::Skipped {
            out.push_str(&format!(": {}", d.payload["reason"].as_str().unwrap_or("")));
        }
        out.push('\n');
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let params = Params {
        m: cli.m.unwrap_or(cli.n + 1),
        n: cli.n,
        t: cli.t,
        rmax: cli.rmax,
        seed: cli.seed,
        trials: cli.trials,
    };

    let start = Instant::now();
    let report = if cli.check == Check::All {
        let parts: Vec<VerificationReport> = SINGLE.par_iter().map(|c| c.run(&params)).collect();
        let mut merged = VerificationReport::new("all", json!({}));
        for (check, part) in SINGLE.iter().zip(parts) {
            for mut d in part.details {
                d.name = format!("{}: {}", check.name(), d.name);
                merged.details.push(d);
            }
        }
        merged
    } else {
        cli.check.run(&params)
    };
    let elapsed_ms = start.elapsed().as_millis();

    let rendered = if cli.text {
        render_text(cli.check, &report, elapsed_ms)
    } else {
        let mut s = serde_json::to_string_pretty(&envelope(cli.check, &params, &report, elapsed_ms))
            .expect("reports are plain JSON");
        s.push('\n');
        s
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("minorlift: cannot write report: {e}");
        return ExitCode::from(2);
    }

    ExitCode::from(match report.status() {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Skipped => 3,
    })
}
