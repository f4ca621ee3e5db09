//! Command-line front end: `classify`, `survey`, `verify` and `parse-ring`.

mod twist_spec;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{
    classify, survey, verify_theorems, ClassificationReport, TheoremCheckResult, TheoremId,
};
use crate::error::{Error, Result};
use crate::ring::{enumerate_automorphisms, ring_from_str};
use crate::skew::parse_polynomial;

pub use twist_spec::build_context;

/// Environment variable that overrides `--parallelism`.
pub const THREADS_ENV: &str = "SKEWSEP_THREADS";

pub const CSV_HEADER: [&str; 8] = [
    "ring",
    "twist",
    "poly",
    "invariant",
    "separable",
    "weakly_separable",
    "weakly_quasi_separable",
    "agreement",
];

#[derive(Debug, Parser)]
#[command(
    name = "skewsep",
    version,
    about = "Separability of polynomials in skew polynomial rings over finite rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one polynomial
    Classify {
        #[command(flatten)]
        context: ContextArgs,
        /// monic polynomial in right normal form, e.g. "X^2 + X*2 + 1"
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify every invariant monic polynomial of the given degrees
    Survey {
        #[command(flatten)]
        context: ContextArgs,
        #[command(flatten)]
        degrees: DegreeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check theorems on every invariant monic polynomial of the given degrees
    Verify {
        /// comma-separated ids from P1.2, T2.4, L2.1, E2.2, T3.2, C3.3, T3.4,
        /// P3.5, T3.8, C3.8d, T3.9, P3.10
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        context: ContextArgs,
        #[command(flatten)]
        degrees: DegreeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Parse a ring spec and describe the ring
    ParseRing {
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct ContextArgs {
    /// e.g. "Zmod(6)", "GF(2,2)", "TruncPoly(Zmod(2),2)", "UT2(Zmod(2))"
    #[arg(long)]
    ring: String,
    /// identity, frobenius, swap or map:{gen->image,...}
    #[arg(long, default_value = "identity")]
    auto: String,
    /// zero, ddt, ddt:<u>, inner:<element> or map:{gen->image,...}
    #[arg(long, default_value = "zero")]
    deriv: String,
}

#[derive(Debug, Args)]
struct DegreeArgs {
    /// a single degree
    #[arg(long, conflicts_with_all = ["min_degree", "max_degree"])]
    degree: Option<usize>,
    #[arg(long, default_value_t = 2)]
    min_degree: usize,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// worker threads, 0 = one per core
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
}

impl DegreeArgs {
    fn degrees(&self) -> std::result::Result<Vec<usize>, String> {
        let (lo, hi) = match self.degree {
            Some(d) => (d, d),
            None => (self.min_degree, self.max_degree),
        };
        if lo == 0 || lo > hi {
            return Err(format!("empty or invalid degree range {lo}..={hi}"));
        }
        Ok((lo..=hi).collect())
    }

    fn threads(&self) -> std::result::Result<usize, String> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")),
            Err(_) => Ok(self.parallelism),
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Outcome of a command: rendered output plus whether every check was clean.
struct Rendered {
    text: String,
    clean: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Runs the command line `argv` (including the program name) and returns the
/// exit code: 0 success, 1 usage or input error, 2 mismatches found.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(r) => {
            if out.write_all(r.text.as_bytes()).is_err() {
                return 1;
            }
            if r.clean {
                0
            } else {
                let _ = writeln!(err, "mismatches or discrepancies found");
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command) -> Result<Rendered> {
    match command {
        Command::Classify {
            context,
            poly,
            output,
        } => {
            let ctx = build_context(&context.ring, &context.auto, &context.deriv)?;
            let f = parse_polynomial(&ctx, &poly)?;
            let report = classify(&f)?;
            let clean = report.agreement;
            let text = match output.format {
                Format::Json => json_line(&report),
                Format::Csv => csv_rows(std::slice::from_ref(&report)),
                Format::Text => text_report(&report),
            };
            Ok(Rendered { text, clean })
        }
        Command::Survey {
            context,
            degrees,
            output,
        } => {
            let ctx = build_context(&context.ring, &context.auto, &context.deriv)?;
            let ds = degrees.degrees().map_err(usage)?;
            let threads = degrees.threads().map_err(usage)?;
            let reports = survey(&ctx, &ds, threads)?;
            let clean = reports.iter().all(|r| r.agreement);
            let text = match output.format {
                Format::Json => json_line(&reports),
                Format::Csv => csv_rows(&reports),
                Format::Text => reports
                    .iter()
                    .map(text_report)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok(Rendered { text, clean })
        }
        Command::Verify {
            theorem,
            context,
            degrees,
            output,
        } => {
            let ids = theorem
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<Vec<TheoremId>>>()?;
            let ctx = build_context(&context.ring, &context.auto, &context.deriv)?;
            let ds = degrees.degrees().map_err(usage)?;
            let threads = degrees.threads().map_err(usage)?;
            let results = verify_theorems(&ids, &ctx, &ds, threads)?;
            Ok(render_verify(&results, output.format))
        }
        Command::ParseRing { ring, format } => {
            let r = ring_from_str(&ring)?;
            let summary = RingSummary {
                spec: r.spec().to_string(),
                size: r.size(),
                characteristic: r.characteristic(),
                commutative: r.is_commutative(),
                domain: r.is_domain(),
                additive_generators: r
                    .additive_generators()
                    .into_iter()
                    .map(|g| r.format_element(g))
                    .collect(),
                automorphisms: if r.size() <= 256 {
                    Some(enumerate_automorphisms(&r)?.len())
                } else {
                    None
                },
            };
            let text = match format {
                Format::Json => json_line(&summary),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["spec", "size", "characteristic", "commutative", "domain"])
                        .expect("in memory");
                    w.write_record([
                        summary.spec.clone(),
                        summary.size.to_string(),
                        summary.characteristic.to_string(),
                        summary.commutative.to_string(),
                        summary.domain.to_string(),
                    ])
                    .expect("in memory");
                    String::from_utf8(w.into_inner().expect("in memory")).expect("utf-8")
                }
                Format::Text => format!(
                    "{}: {} elements, characteristic {}, {}commutative{}\n",
                    summary.spec,
                    summary.size,
                    summary.characteristic,
                    if summary.commutative { "" } else { "non-" },
                    if summary.domain { ", a field" } else { "" },
                ),
            };
            Ok(Rendered { text, clean: true })
        }
    }
}

#[derive(Serialize)]
struct RingSummary {
    spec: String,
    size: u32,
    characteristic: u32,
    commutative: bool,
    domain: bool,
    additive_generators: Vec<String>,
    /// counted only for carriers of at most 256 elements
    automorphisms: Option<usize>,
}

fn json_line<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Header plus one row per report; an empty list gives the header only.
pub fn csv_rows(reports: &[ClassificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in memory");
    let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
    for r in reports {
        let v = r.verdicts;
        w.write_record([
            r.ring.clone(),
            r.twist.clone(),
            r.poly.clone(),
            r.invariant.to_string(),
            opt(v.map(|v| v.separable)),
            opt(v.map(|v| v.weakly_separable)),
            opt(v.map(|v| v.weakly_quasi_separable)),
            r.agreement.to_string(),
        ])
        .expect("in memory");
    }
    String::from_utf8(w.into_inner().expect("in memory")).expect("utf-8")
}

fn text_report(r: &ClassificationReport) -> String {
    let mut s = format!("{} over {} ({})\n", r.poly, r.ring, r.twist);
    match r.verdicts {
        None => s.push_str("  not invariant\n"),
        Some(v) => {
            s.push_str(&format!(
                "  separable: {}\n  weakly separable: {}\n  weakly quasi-separable: {}\n",
                v.separable, v.weakly_separable, v.weakly_quasi_separable
            ));
        }
    }
    for m in &r.methods {
        s.push_str(&format!("  {:?} {}: {:?}\n", m.kind, m.method, m.outcome));
    }
    let w = &r.witnesses;
    for (name, value) in [
        ("separability witness", &w.separability),
        ("non-inner derivation x ->", &w.non_inner_derivation),
        ("central derivation x ->", &w.central_derivation),
    ] {
        if let Some(v) = value {
            s.push_str(&format!("  {name} {v}\n"));
        }
    }
    for d in &r.discrepancies {
        s.push_str(&format!(
            "  DISCREPANCY {:?} {}: expected {:?}, found {:?}\n",
            d.property, d.method, d.expected, d.found
        ));
    }
    s.push_str(&format!("  agreement: {}\n", r.agreement));
    s
}

/// JSON is one summary object for a single theorem and an array otherwise;
/// CSV lists the checked instances of each theorem in turn.
fn render_verify(results: &[TheoremCheckResult], format: Format) -> Rendered {
    let text = match (format, results) {
        (Format::Json, [one]) => json_line(one),
        (Format::Json, many) => json_line(many),
        (Format::Csv, _) => {
            let reports: Vec<ClassificationReport> = results
                .iter()
                .flat_map(|r| r.reports.iter().cloned())
                .collect();
            csv_rows(&reports)
        }
        (Format::Text, _) => results.iter().map(text_verify).collect(),
    };
    Rendered {
        text,
        clean: results.iter().all(TheoremCheckResult::is_clean),
    }
}

fn text_verify(r: &TheoremCheckResult) -> String {
    let mut s = format!(
        "{} over {} ({}), degrees {:?}: {} enumerated, {} checked, {} mismatches, {} discrepancies, {} structural violations\n",
        r.theorem,
        r.ring,
        r.twist,
        r.degrees,
        r.enumerated,
        r.instances_checked,
        r.mismatches.len(),
        r.discrepancies.len(),
        r.structural_violations.len()
    );
    for m in r.mismatches.iter().chain(&r.discrepancies) {
        s.push_str(&format!(
            "  {}: {} oracle={} condition={}\n",
            m.poly, m.method, m.lhs, m.rhs
        ));
    }
    for v in &r.structural_violations {
        s.push_str(&format!("  {}: {} {}\n", v.poly, v.check, v.detail));
    }
    s
}
