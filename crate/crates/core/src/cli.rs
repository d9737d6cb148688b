//! Command-line front end.
//!
//! Exit codes: `analyze` returns 0 for playable input, 2 for a valid but
//! unplayable game and 1 for unreadable input. `verify` returns 0 when every
//! check passes, 1 on a failed check or bad arguments, and 3 when the time
//! budget runs out.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::construct::{blow_up, classic_cycle, imbalanced_equilibrium_closed_form, imbalanced_rps};
use crate::equilibrium::{classify_playability, PlayabilityClass, PlayabilityReport, ProbabilityVector};
use crate::imbalance::{imbalance_report, ImbalanceReport};
use crate::rational::Rational;
use crate::tournament::{
    k_minimizing_check, k_minimizing_range, landau_bound_check, DegreeProfile, Tournament,
};
use crate::verify::{
    max_theorem_half, verify_even_unplayable, verify_structural_lemmas, verify_theorem, Budget, EvenReport,
    StructuralReport, TheoremReport, VerifyError,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNPLAYABLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
}

#[derive(Debug, Parser)]
#[command(
    name = "tourneylab",
    version,
    about = "Exact analysis of Rock-Paper-Scissors tournaments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Equilibria, playability and imbalance statistics of one game.
    Analyze {
        input: PathBuf,
        /// Input format; `auto` picks CSV for `.csv` files.
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
        /// Markdown instead of JSON.
        #[arg(long)]
        md: bool,
        /// Theil normalization floor, strictly between 0 and 1.
        #[arg(long, default_value = "1/2")]
        alpha: Rational,
    },
    /// Emit a generated game as an edge list.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        /// Half-size for `imbalanced` (2n+1 objects); object count for
        /// `classic-cycle`.
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Replace one object of the first game by a copy of the second.
    Blowup {
        outer: PathBuf,
        /// Label or index of the replaced object.
        vertex: String,
        inner: PathBuf,
    },
    /// Exhaustive verification suites; writes JSON and Markdown reports.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Half-size for the theorem suite (2n+1 objects); the structural
        /// suite runs on 2n+1 objects as well.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Largest even order for the even suite.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Time budget in seconds; defaults to TOURNEYLAB_BUDGET_SECS.
        #[arg(long)]
        budget: Option<u64>,
        /// Directory for report.json and report.md.
        #[arg(long, default_value = "verify-report")]
        out: PathBuf,
        /// Permit the theorem suite on 9 objects.
        #[arg(long)]
        allow_nine: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Edges,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenerateKind {
    Imbalanced,
    ClassicCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem,
    Even,
    Structural,
    All,
}

/// Entry point used by the binary.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation against the given streams and returns the exit code.
pub fn run(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_ERROR
                }
            };
        }
    };
    let result = match cli.command {
        Command::Analyze {
            input,
            format,
            md,
            alpha,
        } => analyze(&input, format, md, &alpha, out),
        Command::Generate { kind, n, json } => generate(kind, n, json, out),
        Command::Blowup { outer, vertex, inner } => blowup(&outer, &vertex, &inner, out),
        Command::Verify {
            suite,
            n,
            max_n,
            jobs,
            budget,
            out: dir,
            allow_nine,
        } => {
            let budget = budget.map_or_else(Budget::from_env, Budget::seconds);
            verify(suite, n, max_n, jobs, budget, &dir, allow_nine, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_tournament(path: &Path, format: InputFormat) -> Result<Tournament, CliError> {
    let text = read(path)?;
    let csv = match format {
        InputFormat::Csv => true,
        InputFormat::Edges => false,
        InputFormat::Auto => path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")),
    };
    if csv {
        parse_win_rate_csv(&text)
    } else {
        Tournament::parse_edge_list(&text).map_err(|e| CliError::Input(e.to_string()))
    }
}

/// Square win-rate matrix with a header row and a label column; cell
/// `(i, j)` is the observed rate at which `i` beats `j`. Rates above 1/2 are
/// wins, below are losses, and exactly 1/2 is rejected. The diagonal is
/// ignored.
pub fn parse_win_rate_csv(text: &str) -> Result<Tournament, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::Csv {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let labels: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let n = labels.len();
    if n == 0 {
        return Err(CliError::Csv {
            line: 1,
            message: "header names no objects".into(),
        });
    }
    let half = Rational::ratio(1, 2);
    // rates[i][j] = Some(rate > 1/2)
    let mut wins: Vec<Vec<Option<bool>>> = vec![vec![None; n]; n];
    let mut row_count = 0;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let i = row_count;
        row_count += 1;
        if i >= n {
            return Err(CliError::Csv {
                line,
                message: format!("more than {n} rows"),
            });
        }
        if record.len() != n + 1 {
            return Err(CliError::Csv {
                line,
                message: format!("expected {} fields, found {}", n + 1, record.len()),
            });
        }
        if &record[0] != labels[i].as_str() {
            return Err(CliError::Csv {
                line,
                message: format!("row label {:?} does not match column {:?}", &record[0], labels[i]),
            });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let cell = &record[j + 1];
            let rate: Rational = cell.parse().map_err(|_| CliError::Csv {
                line,
                message: format!("invalid rate {cell:?} for ({}, {})", labels[i], labels[j]),
            })?;
            if rate.is_negative() || rate > 1 {
                return Err(CliError::Csv {
                    line,
                    message: format!(
                        "rate {cell} for ({}, {}) lies outside [0, 1]",
                        labels[i], labels[j]
                    ),
                });
            }
            if rate == half {
                return Err(CliError::Csv {
                    line,
                    message: format!(
                        "rate 0.5 between {} and {} is a tie and cannot be oriented",
                        labels[i], labels[j]
                    ),
                });
            }
            let beats = rate > half;
            if let Some(other) = wins[j][i] {
                if other == beats {
                    return Err(CliError::Csv {
                        line,
                        message: format!("rates for {} and {} contradict each other", labels[i], labels[j]),
                    });
                }
            }
            wins[i][j] = Some(beats);
        }
    }
    if row_count != n {
        return Err(CliError::Csv {
            line: row_count as u64 + 1,
            message: format!("expected {n} rows, found {row_count}"),
        });
    }
    let t = Tournament::from_fn(n, |i, j| wins[i][j].expect("every pair filled"))
        .map_err(|e| CliError::Input(e.to_string()))?;
    t.with_labels(labels).map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Debug, Serialize)]
struct InputEcho {
    n: usize,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize)]
struct PlayabilityDoc {
    class: &'static str,
    is_strong: bool,
    witness: Option<crate::equilibrium::UnplayableWitness>,
    witness_text: Option<String>,
}

#[derive(Debug, Serialize)]
struct EquilibriumDoc {
    kernel_dim: usize,
    unique: Option<ProbabilityVector>,
    unique_approx: Option<Vec<f64>>,
    vertices: Vec<ProbabilityVector>,
    support: Vec<bool>,
}

#[derive(Debug, Serialize)]
struct ImbalanceDoc {
    #[serde(flatten)]
    report: ImbalanceReport,
    ui_v_approx: f64,
    n_t_approx: Option<f64>,
}

#[derive(Debug, Serialize)]
struct KCheck {
    k: usize,
    holds: bool,
}

#[derive(Debug, Serialize)]
struct StructuralDoc {
    /// Only defined for an odd number of objects.
    landau: Option<bool>,
    k_minimizing: Vec<KCheck>,
}

#[derive(Debug, Serialize)]
struct AnalysisDocument {
    schema: u32,
    input: InputEcho,
    playability: PlayabilityDoc,
    equilibrium: EquilibriumDoc,
    imbalance: Option<ImbalanceDoc>,
    degree_profile: DegreeProfile,
    structural: StructuralDoc,
}

fn analysis_document(t: &Tournament, alpha: &Rational) -> Result<(AnalysisDocument, bool), CliError> {
    let PlayabilityReport {
        class,
        is_strong,
        polytope,
    } = classify_playability(t);
    let witness = match &class {
        PlayabilityClass::Unplayable(w) => Some(w.clone()),
        _ => None,
    };
    let playable = class.is_playable();
    let imbalance = if t.len() >= 2 {
        let report = imbalance_report(t, alpha).map_err(|e| CliError::Input(e.to_string()))?;
        Some(ImbalanceDoc {
            ui_v_approx: report.ui_v.to_f64(),
            n_t_approx: report.n_t.as_ref().map(Rational::to_f64),
            report,
        })
    } else {
        None
    };
    let unique = polytope.unique_point().cloned();
    let doc = AnalysisDocument {
        schema: SCHEMA_VERSION,
        input: InputEcho {
            n: t.len(),
            labels: (0..t.len()).map(|i| t.label(i)).collect(),
            edges: t.edges(),
        },
        playability: PlayabilityDoc {
            class: class.name(),
            is_strong,
            witness_text: witness.as_ref().map(|w| w.describe(t)),
            witness,
        },
        equilibrium: EquilibriumDoc {
            kernel_dim: polytope.kernel_dim,
            unique_approx: unique.as_ref().map(ProbabilityVector::to_f64),
            unique,
            vertices: polytope.vertices.clone(),
            support: polytope.support_mask.clone(),
        },
        imbalance,
        degree_profile: t.degree_profile(),
        structural: StructuralDoc {
            landau: landau_bound_check(t).ok(),
            k_minimizing: k_minimizing_range(t.len())
                .map(|k| KCheck {
                    k,
                    holds: k_minimizing_check(t, k).expect("k in range"),
                })
                .collect(),
        },
    };
    Ok((doc, playable))
}

fn analysis_markdown(doc: &AnalysisDocument) -> String {
    let mut out = String::new();
    let labels = &doc.input.labels;
    let _ = writeln!(out, "# Analysis of a {}-object game\n", doc.input.n);
    let _ = writeln!(
        out,
        "Playability: **{}** (strongly connected: {})",
        doc.playability.class, doc.playability.is_strong
    );
    if let Some(w) = &doc.playability.witness_text {
        let _ = writeln!(out, "\nWitness: {w}");
    }
    out.push_str("\n## Equilibrium\n\n");
    match &doc.equilibrium.unique {
        Some(v) => {
            out.push_str("| object | probability | approx |\n|---|---|---|\n");
            for (i, p) in v.entries().iter().enumerate() {
                let _ = writeln!(out, "| {} | {} | {:.6} |", labels[i], p, p.to_f64());
            }
        }
        None => {
            let _ = writeln!(
                out,
                "Kernel dimension {}, {} vertices.",
                doc.equilibrium.kernel_dim,
                doc.equilibrium.vertices.len()
            );
        }
    }
    out.push_str("\n## Degrees\n\n| object | wins | losses |\n|---|---|---|\n");
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            label, doc.degree_profile.e_in[i], doc.degree_profile.e_out[i]
        );
    }
    if let Some(im) = &doc.imbalance {
        let r = &im.report;
        out.push_str("\n## Imbalance\n\n| statistic | value |\n|---|---|\n");
        let _ = writeln!(out, "| UI_v | {} ({:.6}) |", r.ui_v, im.ui_v_approx);
        let _ = writeln!(out, "| UI_e | {:.12} |", r.ui_e);
        let _ = writeln!(out, "| Theil (alpha = {}) | {:.12} |", r.alpha, r.ui_theil);
        if let Some(nt) = &r.n_t {
            let _ = writeln!(out, "| N_t | {} ({:.6}) |", nt, nt.to_f64());
        }
        if let Some(ne) = r.n_e {
            let _ = writeln!(out, "| N_e | {:.12} |", ne);
        }
    }
    out.push_str("\n## Structural conditions\n\n");
    if let Some(l) = doc.structural.landau {
        let _ = writeln!(out, "- Landau prefix bounds: {l}");
    }
    for k in &doc.structural.k_minimizing {
        let _ = writeln!(out, "- k-minimizing condition at k = {}: {}", k.k, k.holds);
    }
    out
}

fn analyze(
    path: &Path,
    format: InputFormat,
    md: bool,
    alpha: &Rational,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let t = load_tournament(path, format)?;
    let (doc, playable) = analysis_document(&t, alpha)?;
    let text = if md {
        analysis_markdown(&doc)
    } else {
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    };
    write_out(out, &text)?;
    Ok(if playable { EXIT_OK } else { EXIT_UNPLAYABLE })
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

#[derive(Debug, Serialize)]
struct GeneratedDoc {
    schema: u32,
    n: usize,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    equilibrium: Option<ProbabilityVector>,
}

fn generate(kind: GenerateKind, n: usize, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let (t, eq) = match kind {
        GenerateKind::Imbalanced => {
            let t = imbalanced_rps(n).map_err(|e| CliError::Input(e.to_string()))?;
            let eq = imbalanced_equilibrium_closed_form(n).map_err(|e| CliError::Input(e.to_string()))?;
            (t, Some(eq))
        }
        GenerateKind::ClassicCycle => {
            let t = classic_cycle(n).map_err(|e| CliError::Input(e.to_string()))?;
            (t, Some(ProbabilityVector::uniform(n)))
        }
    };
    let text = if json {
        let doc = GeneratedDoc {
            schema: SCHEMA_VERSION,
            n: t.len(),
            labels: (0..t.len()).map(|i| t.label(i)).collect(),
            edges: t.edges(),
            equilibrium: eq,
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else {
        let mut text = t.to_edge_list_text();
        if let Some(eq) = eq {
            let parts: Vec<String> = eq.entries().iter().map(|p| p.to_string()).collect();
            let _ = writeln!(text, "# equilibrium: {}", parts.join(" "));
        }
        text
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn blowup(outer: &Path, vertex: &str, inner: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let g1 = load_tournament(outer, InputFormat::Auto)?;
    let g2 = load_tournament(inner, InputFormat::Auto)?;
    let l = g1
        .resolve(vertex)
        .ok_or_else(|| CliError::Input(format!("unknown object {vertex:?} in {}", outer.display())))?;
    let g = blow_up(&g1, l, &g2).map_err(|e| CliError::Input(e.to_string()))?;
    write_out(out, &g.to_edge_list_text())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Default, Serialize)]
struct VerifyDocument {
    schema: u32,
    suite: String,
    theorem: Option<TheoremReport>,
    even: Option<EvenReport>,
    structural: Option<StructuralReport>,
    passed: bool,
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Suite,
    n: usize,
    max_n: usize,
    jobs: Option<usize>,
    budget: Budget,
    dir: &Path,
    allow_nine: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if n == 0 || n > max_theorem_half(allow_nine) {
        return Err(CliError::Input(format!(
            "--n must lie in 1..={}",
            max_theorem_half(allow_nine)
        )));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Input(format!("cannot start workers: {e}")))?;
    let run_theorem = matches!(suite, Suite::Theorem | Suite::All);
    let run_even = matches!(suite, Suite::Even | Suite::All);
    let run_structural = matches!(suite, Suite::Structural | Suite::All);
    let objects = 2 * n + 1;
    if run_structural && objects > 7 {
        return Err(CliError::Input(
            "the structural suite supports at most 7 objects".into(),
        ));
    }

    let outcome: Result<VerifyDocument, VerifyError> = pool.install(|| {
        let mut doc = VerifyDocument {
            schema: SCHEMA_VERSION,
            suite: format!("{suite:?}").to_lowercase(),
            ..Default::default()
        };
        if run_theorem {
            doc.theorem = Some(verify_theorem(n, allow_nine, &budget)?);
        }
        if run_even {
            doc.even = Some(verify_even_unplayable(max_n, &budget)?);
        }
        if run_structural {
            doc.structural = Some(verify_structural_lemmas(objects, &budget)?);
        }
        doc.passed = doc.theorem.as_ref().is_none_or(|r| r.passed)
            && doc.even.as_ref().is_none_or(|r| r.passed)
            && doc.structural.as_ref().is_none_or(|r| r.passed);
        Ok(doc)
    });
    let doc = match outcome {
        Ok(doc) => doc,
        Err(e @ VerifyError::BudgetExceeded { .. }) => {
            let _ = writeln!(out, "budget exceeded: {e}");
            return Ok(EXIT_BUDGET);
        }
        Err(VerifyError::OutOfRange(m)) => return Err(CliError::Input(m)),
    };

    let mut md = format!("# Verification: {}\n\n", doc.suite);
    if let Some(r) = &doc.theorem {
        md.push_str(&r.to_markdown());
        md.push('\n');
    }
    if let Some(r) = &doc.even {
        md.push_str(&r.to_markdown());
        md.push('\n');
    }
    if let Some(r) = &doc.structural {
        md.push_str(&r.to_markdown());
        md.push('\n');
    }
    let _ = writeln!(md, "Overall: {}", if doc.passed { "pass" } else { "FAIL" });

    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let json = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    for (name, body) in [("report.json", &json), ("report.md", &md)] {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|source| CliError::Io { path, source })?;
    }
    write_out(out, &md)?;
    Ok(if doc.passed { EXIT_OK } else { EXIT_ERROR })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("tourneylab")
            .chain(args.iter().copied())
            .map(OsString::from);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn csv_thresholds() {
        let text = "x,a,b,c\na,,0.9,0.2\nb,0.1,,0.7\nc,0.8,0.3,\n";
        let t = parse_win_rate_csv(text).unwrap();
        assert!(t.beats(0, 1) && t.beats(1, 2) && t.beats(2, 0));
        assert_eq!(t.labels().unwrap(), ["a", "b", "c"]);
    }

    #[test]
    fn csv_rejects_ties_and_contradictions() {
        let tie = "x,a,b\na,,0.5\nb,0.5,\n";
        let e = parse_win_rate_csv(tie).unwrap_err().to_string();
        assert!(e.contains("line 2") && e.contains("tie"), "{e}");
        let bad = "x,a,b\na,,0.6\nb,0.7,\n";
        let e = parse_win_rate_csv(bad).unwrap_err().to_string();
        assert!(e.contains("line 3") && e.contains("contradict"), "{e}");
        let ragged = "x,a,b\na,,0.6\n";
        assert!(parse_win_rate_csv(ragged).is_err());
    }

    #[test]
    fn generate_prints_edges_and_equilibrium() {
        let (code, out, _) = run_args(&["generate", "imbalanced", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("5\n# labels: r1 p1 r2 p2 s\n"));
        assert!(out.contains("# equilibrium: 1/3 1/3 1/9 1/9 1/9"));
        let t = Tournament::parse_edge_list(&out).unwrap();
        assert_eq!(t, imbalanced_rps(2).unwrap());
        let (code, _, err) = run_args(&["generate", "classic-cycle", "4"]);
        assert_eq!(code, 1);
        assert!(err.contains("odd"));
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("analyze"));
        let (code, _, _) = run_args(&["frobnicate"]);
        assert_eq!(code, 1);
    }
}
