//! Command-line front end. [`run`] does all the work and returns the exit
//! code with both output streams, so tests can drive it without a process.
//!
//! Exit codes: 0 ok, 1 mismatch or failed verification, 2 open question,
//! 3 input error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::TowerConfig;
use crate::families::{
    build, decomposition_certificate, general_position_audit, FamilyError, FamilyKind,
};
use crate::invariants::FourfoldRecord;
use crate::tables::{compare, emit_all, published, to_markdown, to_tsv, Table};
use crate::threefolds::elementary_bound_scan;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fano4",
    version,
    about = "Exact invariants of Fano 4-folds built from P^4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the five invariant tables.
    Tables {
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Compare every cell with the expected values; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
        /// JSON file of expected tables, replacing the built-in values.
        #[arg(long, value_name = "PATH")]
        expected: Option<PathBuf>,
    },
    /// Evaluate a tower file.
    Tower {
        config: PathBuf,
        /// Print the record after every step.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Invariants of one family member.
    Family {
        family: FamilyKind,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// -K degrees of special curves through the blown-up points.
    Audit {
        #[arg(long)]
        points: u32,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Check the anticanonical decomposition of a family member.
    Certify {
        family: FamilyKind,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Picard number bounds from the 3-fold bases.
    Bounds {
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        min_rho: i64,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_INPUT, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Tables {
            format,
            check,
            expected,
        } => cmd_tables(format, check, expected),
        Command::Tower {
            config,
            trace,
            format,
        } => cmd_tower(&config, trace, format),
        Command::Family { family, r, format } => cmd_family(family, r, format),
        Command::Audit { points, format } => cmd_audit(points, format),
        Command::Certify { family, r, format } => cmd_certify(family, r, format),
        Command::Bounds { min_rho, format } => cmd_bounds(min_rho, format),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn family_error(e: &FamilyError) -> Outcome {
    let code = match e {
        FamilyError::Unsupported { .. } => EXIT_UNSUPPORTED,
        FamilyError::OutOfRange { .. } => EXIT_INPUT,
        _ => EXIT_MISMATCH,
    };
    Outcome::fail(code, format!("error: {e}\n"))
}

fn cmd_tables(format: Format, check: bool, expected: Option<PathBuf>) -> Outcome {
    let tables = match emit_all() {
        Ok(t) => t,
        Err(e) => return family_error(&e),
    };
    let stdout = match format {
        Format::Md => tables
            .iter()
            .map(to_markdown)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Tsv => tables.iter().map(to_tsv).collect::<Vec<_>>().join("\n"),
        Format::Json => json(&tables),
    };
    if !check && expected.is_none() {
        return Outcome::ok(stdout);
    }
    let want: Vec<Table> = match expected {
        None => published(),
        Some(path) => {
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    return Outcome::fail(EXIT_INPUT, format!("error: {}: {e}\n", path.display()))
                }
            };
            match serde_json::from_str(&text) {
                Ok(t) => t,
                Err(e) => {
                    return Outcome::fail(EXIT_INPUT, format!("error: {}: {e}\n", path.display()))
                }
            }
        }
    };
    let mismatches = compare(&tables, &want);
    if mismatches.is_empty() {
        let cells: usize = tables
            .iter()
            .flat_map(|t| &t.rows)
            .map(|r| r.cells.len())
            .sum();
        return Outcome {
            code: EXIT_OK,
            stdout,
            stderr: format!("check: all {cells} cells match\n"),
        };
    }
    let show = |v: Option<i64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut stderr = format!("check: {} mismatched cells\n", mismatches.len());
    for m in &mismatches {
        let _ = writeln!(
            stderr,
            "table {} row r={} column {}: got {}, want {}",
            m.table,
            m.r,
            m.column,
            show(m.got),
            show(m.want)
        );
    }
    Outcome {
        code: EXIT_MISMATCH,
        stdout,
        stderr,
    }
}

fn record_lines(rec: &FourfoldRecord) -> String {
    let mut s = String::new();
    for (name, v) in FourfoldRecord::FIELDS.iter().zip(rec.to_array()) {
        let _ = writeln!(s, "{name}: {v}");
    }
    let _ = writeln!(s, "b4: {}", rec.b4());
    s
}

fn record_tsv(rec: &FourfoldRecord) -> String {
    let values: Vec<String> = rec.to_array().iter().map(i64::to_string).collect();
    values.join("\t")
}

fn cmd_tower(path: &PathBuf, trace: bool, format: Format) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: {}: {e}\n", path.display())),
    };
    let config = match TowerConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: {}: {e}\n", path.display())),
    };
    let entries = match config.run() {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: {e}\n")),
    };
    let shown = if trace {
        &entries[..]
    } else {
        &entries[entries.len() - 1..]
    };
    let stdout = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry<'a> {
                step: usize,
                op: &'a str,
                record: &'a FourfoldRecord,
            }
            let out: Vec<Entry> = shown
                .iter()
                .map(|e| Entry {
                    step: e.step,
                    op: e.op,
                    record: &e.record,
                })
                .collect();
            if trace {
                json(&out)
            } else {
                json(out[0].record)
            }
        }
        Format::Tsv => {
            let mut s = format!("step\top\t{}\n", FourfoldRecord::FIELDS.join("\t"));
            for e in shown {
                let _ = writeln!(s, "{}\t{}\t{}", e.step, e.op, record_tsv(&e.record));
            }
            s
        }
        Format::Md => {
            let mut s = String::new();
            for e in shown {
                if trace {
                    let _ = writeln!(s, "step {} ({}):", e.step, e.op);
                }
                s.push_str(&record_lines(&e.record));
                if trace {
                    s.push('\n');
                }
            }
            s
        }
    };
    Outcome::ok(stdout)
}

fn cmd_family(family: FamilyKind, r: u32, format: Format) -> Outcome {
    let spec = match build(family, r) {
        Ok(s) => s,
        Err(e) => return family_error(&e),
    };
    let stdout = match format {
        Format::Json => json(&spec),
        Format::Tsv => format!(
            "{}\n{}\n",
            FourfoldRecord::FIELDS.join("\t"),
            record_tsv(&spec.record)
        ),
        Format::Md => {
            let mut s = format!("family {} r={}\n", spec.family, spec.r);
            s.push_str(&record_lines(&spec.record));
            if let Some(surface) = &spec.surface {
                let parts: Vec<String> = crate::surfaces::SurfaceData::FIELDS
                    .iter()
                    .zip(surface.to_array())
                    .map(|(n, v)| format!("{n}={v}"))
                    .collect();
                let _ = writeln!(s, "surface: {}", parts.join(" "));
            }
            s
        }
    };
    Outcome::ok(stdout)
}

fn cmd_audit(points: u32, format: Format) -> Outcome {
    let entries = match general_position_audit(points) {
        Ok(e) => e,
        Err(e) => return family_error(&e),
    };
    let stdout = match format {
        Format::Json => json(&entries),
        Format::Tsv | Format::Md => {
            let mut s = "curve\tdegree\tpoints\t-K.C\tclass\n".to_string();
            for e in &entries {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}",
                    e.curve,
                    e.degree,
                    e.mults.len(),
                    e.anticanonical_degree,
                    e.class
                );
            }
            s
        }
    };
    Outcome::ok(stdout)
}

fn cmd_certify(family: FamilyKind, r: u32, format: Format) -> Outcome {
    let report = match decomposition_certificate(family, r) {
        Ok(rep) => rep,
        Err(e) => return family_error(&e),
    };
    let stdout = match format {
        Format::Json => json(&report),
        Format::Tsv | Format::Md => format!(
            "family {} r={}\nidentity: {}\nidentity_ok: {}\ncoefficients_nonneg: {}\nK4: {}\nK4_positive: {}\n",
            report.family,
            report.r,
            report.identity,
            report.identity_ok,
            report.coefficients_nonneg,
            report.k4,
            report.k4_positive
        ),
    };
    Outcome {
        code: if report.all_ok() {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        },
        stdout,
        stderr: String::new(),
    }
}

fn cmd_bounds(min_rho: i64, format: Format) -> Outcome {
    let scan = elementary_bound_scan(min_rho);
    let stdout = match format {
        Format::Json => json(&scan),
        Format::Tsv | Format::Md => {
            let mut s = "Y0\t-K^3\trho_Y0\tr_max\tbound\n".to_string();
            for row in &scan.rows {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}",
                    row.base.name, row.base.minus_k3, row.base.rho, row.r_max, row.relation
                );
            }
            for cap in &scan.cap_bounds {
                let _ = writeln!(
                    s,
                    "cap -K^3 <= {} for rho_Y0 = {}: r <= {}, rho_X <= {}",
                    cap.cap, cap.rho_y0, cap.r_max, cap.rho_x_max
                );
            }
            let _ = writeln!(s, "rho_X <= {}", scan.global_max_rho_x);
            s
        }
    };
    Outcome::ok(stdout)
}
