//! `runmin`: BWT construction under arbitrary alphabet orderings, run
//! minimization, and the ordering-hardness gadget toolkit.
//!
//! Every command writes one JSON report to stdout (or `--out`). Reports are
//! byte-stable for fixed inputs and seeds; pass `--timing` to fill in
//! `elapsed_ms`. Exit codes: 0 success, 2 usage error, 3 domain error.

mod ingest;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use ingest::UsageError;
use report::{digest, Report};
use runmin::alphabet::{AlphabetOrdering, Symbol, Text};
use runmin::bwt::{build_bwt, count_runs, invert_bwt, BwtOutput};
use runmin::cao::{build_blocks, greedy_tuple_order, reconstruct_pi};
use runmin::reductions::{
    build_ao_string, build_gadget_matrix, linearize_and_cost, verify_l_reduction, CanonicalPolicy,
    ColumnOrdering, LReductionConfig,
};
use runmin::search::{exact_search_with, local_search, ratio_report_with, RatioMode, SearchMethod};
use runmin::wheeler::{proper_order, so_brute_force, validate, wg_bwt, ProperOrdering};

#[derive(Parser)]
#[command(name = "runmin", version, about = "BWT run minimization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Measure wall time (off by default so reports are byte-stable).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchMode {
    Exact,
    Local,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a text and report its run count.
    Bwt {
        #[arg(long)]
        text: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Comma-separated symbols, smallest first ('$' = sentinel), or @file.
        #[arg(long)]
        order: Option<String>,
    },
    /// Count the maximal unary blocks of the raw text itself.
    Runs {
        #[arg(long)]
        text: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Invert a BWT string ('$' marks the sentinel).
    Invert {
        #[arg(long)]
        text: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        order: Option<String>,
    },
    /// Minimize the run count over alphabet orderings.
    Search {
        #[arg(long)]
        text: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SearchMode::Exact)]
        mode: SearchMode,
        /// Seed ordering for local search (defaults to the natural order).
        #[arg(long)]
        order: Option<String>,
        /// Local-search evaluation budget.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Free-symbol cap for exhaustive enumeration.
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Solve constrained alphabet ordering for a string collection
    /// (one string per line; terminators are implicit).
    Cao {
        #[arg(long)]
        input: PathBuf,
        /// Include the block tuple sequence in the report.
        #[arg(long)]
        emit_tuples: bool,
    },
    /// Reduction gadgets over a unit-edge graph ("u v" per line).
    Gadget {
        #[command(subcommand)]
        cmd: GadgetCmd,
    },
    /// Wheeler graph operations over a labeled edge list ("u v label").
    Wheeler {
        #[command(subcommand)]
        cmd: WheelerCmd,
    },
    /// Min/max run statistics over alphabet orderings.
    Ratio {
        #[arg(long)]
        text: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Sample this many orderings instead of enumerating all.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Build the padded incidence matrix and report its shape.
    Build {
        #[arg(long)]
        input: PathBuf,
        /// Padding override; the theorem value is 4m.
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Build the alphabet-ordering instance string.
    AoString {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Check the L-reduction conditions numerically.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum WheelerCmd {
    /// Check a vertex ordering for properness.
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated vertex ids in rank order (default: ascending).
        #[arg(long)]
        order: Option<String>,
    },
    /// Induced BWT string under a constructed proper ordering.
    Bwt {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated source ids in rank order (default: ascending).
        #[arg(long)]
        order: Option<String>,
    },
    /// Brute-force source ordering.
    So {
        #[arg(long)]
        input: PathBuf,
        /// Maximum source permutations to enumerate.
        #[arg(long, default_value_t = 5040)]
        limit: u128,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn natural_ordering(text: &Text) -> AlphabetOrdering {
    AlphabetOrdering::natural(text.alphabet().iter().copied())
}

fn ordering_names(ordering: &AlphabetOrdering) -> Vec<String> {
    ordering.symbols().iter().map(|s| s.to_string()).collect()
}

fn reject_sentinel_byte(bytes: &[u8]) -> Result<(), CliError> {
    if bytes.contains(&b'$') {
        return Err(CliError::Domain(
            "the sentinel '$' may not appear in a text (it is appended internally)".into(),
        ));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Bwt { text, input, order } => {
            let bytes = ingest::text_bytes(text, input)?;
            reject_sentinel_byte(&bytes)?;
            let text = Text::from_bytes(&bytes);
            let ordering = match order {
                Some(spec) => ingest::ordering_spec(spec, &text)?,
                None => natural_ordering(&text),
            };
            let out = build_bwt(&text, &ordering).map_err(domain)?;
            let mut report = Report::new("bwt", digest(&bytes), "direct");
            report.runs = Some(out.runs());
            report.ordering = Some(ordering_names(&ordering));
            report.text = Some(out.bwt().iter().map(|s| s.to_string()).collect());
            report
        }
        Command::Runs { text, input } => {
            let bytes = ingest::text_bytes(text, input)?;
            let mut report = Report::new("runs", digest(&bytes), "direct");
            report.runs = Some(count_runs(&bytes));
            report
        }
        Command::Invert { text, input, order } => {
            let bytes = ingest::text_bytes(text, input)?;
            let symbols = ingest::bwt_sequence(&bytes);
            let alphabet: Vec<Symbol> = symbols
                .iter()
                .copied()
                .filter(|s| *s != Symbol::Sentinel)
                .collect();
            let ordering = match order {
                Some(spec) => {
                    let shell = Text::new(alphabet).map_err(domain)?;
                    ingest::ordering_spec(spec, &shell)?
                }
                None => AlphabetOrdering::natural(alphabet),
            };
            let out = BwtOutput::from_sequence(symbols, &ordering).map_err(domain)?;
            let recovered = invert_bwt(&out, &ordering).map_err(domain)?;
            let mut report = Report::new("invert", digest(&bytes), "direct");
            report.runs = Some(out.runs());
            report.ordering = Some(ordering_names(&ordering));
            report.text = Some(recovered.to_display_string());
            report
        }
        Command::Search {
            text,
            input,
            mode,
            order,
            budget,
            seed,
            limit,
            threads,
        } => {
            let bytes = ingest::text_bytes(text, input)?;
            reject_sentinel_byte(&bytes)?;
            let text = Text::from_bytes(&bytes);
            let result = match mode {
                SearchMode::Exact => exact_search_with(&text, *limit, *threads).map_err(domain)?,
                SearchMode::Local => {
                    let seed_ordering = match order {
                        Some(spec) => ingest::ordering_spec(spec, &text)?,
                        None => natural_ordering(&text),
                    };
                    local_search(&text, &seed_ordering, *budget, *seed).map_err(domain)?
                }
            };
            let method = match result.method {
                SearchMethod::Exact => "exact",
                SearchMethod::Local => "local",
                SearchMethod::Sample => "sample",
            };
            let mut report = Report::new("search", digest(&bytes), method);
            report.runs = Some(result.runs);
            report.ordering = Some(ordering_names(&result.ordering));
            report.explored = Some(result.explored);
            report
        }
        Command::Cao { input, emit_tuples } => {
            let bytes = ingest::read_file(input)?;
            let c = ingest::collection(&bytes)?;
            let blocks = build_blocks(&c);
            let arrangement = greedy_tuple_order(&blocks);
            let pi = reconstruct_pi(&blocks, &arrangement);
            let mut report = Report::new("cao", digest(&bytes), "direct");
            report.runs = Some(arrangement.runs());
            report.ordering = Some(pi.pi.iter().map(|i| format!("${i}")).collect());
            report.d = Some(c.d());
            report.total_len = Some(c.total_len());
            if *emit_tuples {
                report.tuples = Some(
                    blocks
                        .tuple_labels()
                        .iter()
                        .map(|t| t.iter().map(|l| l.to_string()).collect())
                        .collect(),
                );
            }
            report
        }
        Command::Gadget { cmd } => run_gadget(cmd)?,
        Command::Wheeler { cmd } => run_wheeler(cmd)?,
        Command::Ratio {
            text,
            input,
            samples,
            seed,
            limit,
        } => {
            let bytes = ingest::text_bytes(text, input)?;
            reject_sentinel_byte(&bytes)?;
            let text = Text::from_bytes(&bytes);
            let (mode, method) = match samples {
                Some(k) => (RatioMode::Sampled { k: *k, seed: *seed }, "sample"),
                None => (RatioMode::Exhaustive, "exhaustive"),
            };
            let stats = ratio_report_with(&text, mode, *limit).map_err(domain)?;
            let mut report = Report::new("ratio", digest(&bytes), method);
            report.min_runs = Some(stats.min_runs);
            report.max_runs = Some(stats.max_runs);
            report.ratio = Some(stats.ratio);
            report.log2n_reference = Some(stats.log2n_reference);
            report.explored = Some(stats.explored);
            report
        }
    };
    if cli.timing {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

fn run_gadget(cmd: &GadgetCmd) -> Result<Report, CliError> {
    let regime_flags = |theorem: bool| -> Vec<String> {
        if theorem {
            Vec::new()
        } else {
            vec!["outside-theorem-regime".to_string()]
        }
    };
    match cmd {
        GadgetCmd::Build { input, ell } => {
            let bytes = ingest::read_file(input)?;
            let g = ingest::edge_list(&bytes)?;
            let gad = build_gadget_matrix(&g, *ell);
            let mut report = Report::new("gadget-build", digest(&bytes), "direct");
            report.rows = Some(gad.n_rows());
            report.cols = Some(gad.n_cols());
            report.m = Some(gad.m());
            report.ell = Some(gad.ell());
            report.flags = regime_flags(gad.theorem_regime());
            // Runs of the identity linearization, for orientation.
            report.runs =
                Some(linearize_and_cost(&gad, &ColumnOrdering::identity(gad.n_cols())).runs);
            Ok(report)
        }
        GadgetCmd::AoString { input, ell } => {
            let bytes = ingest::read_file(input)?;
            let g = ingest::edge_list(&bytes)?;
            let gad = build_gadget_matrix(&g, *ell);
            let inst = build_ao_string(&gad);
            let mut report = Report::new("gadget-ao-string", digest(&bytes), "direct");
            report.sigma = Some(inst.sigma());
            report.substring_count = Some(inst.substrings().len());
            report.total_len = Some(inst.text().len());
            report.text = Some(
                inst.text()
                    .symbols()
                    .iter()
                    .map(|&s| inst.symbol_name(s))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            report.m = Some(gad.m());
            report.ell = Some(gad.ell());
            report.flags = regime_flags(gad.theorem_regime());
            Ok(report)
        }
        GadgetCmd::Verify {
            input,
            ell,
            samples,
            seed,
        } => {
            let bytes = ingest::read_file(input)?;
            let g = ingest::edge_list(&bytes)?;
            let cfg = LReductionConfig {
                ell: *ell,
                samples: *samples,
                seed: *seed,
                phase2: g.n_vertices() <= 3,
                policy: CanonicalPolicy::default(),
            };
            let outcome = verify_l_reduction(&g, &cfg);
            let gad = build_gadget_matrix(&g, *ell);
            let mut report = Report::new("gadget-verify", digest(&bytes), "exact");
            report.condition_i = Some(outcome.condition_i);
            report.condition_ii = Some(outcome.condition_ii);
            report.alpha = Some(outcome.alpha);
            report.beta_phase1 = Some(outcome.beta_phase1);
            report.beta_phase2 = Some(outcome.beta_phase2);
            report.runs = Some(outcome.opt_co);
            report.m = Some(gad.m());
            report.ell = Some(gad.ell());
            report.flags = regime_flags(gad.theorem_regime());
            if outcome.phase2_checked {
                report.flags.push("phase2-checked".to_string());
            }
            if !outcome.violations.is_empty() {
                report.violation = Some(outcome.violations.join("; "));
            }
            Ok(report)
        }
    }
}

fn render_labels(labels: &[u32]) -> String {
    labels
        .iter()
        .map(|&k| {
            if (0x21..=0x7e).contains(&k) {
                (k as u8 as char).to_string()
            } else {
                k.to_string()
            }
        })
        .collect()
}

fn run_wheeler(cmd: &WheelerCmd) -> Result<Report, CliError> {
    match cmd {
        WheelerCmd::Validate { input, order } => {
            let bytes = ingest::read_file(input)?;
            let g = ingest::wg_edge_list(&bytes)?;
            let rank = match order {
                Some(spec) => {
                    let by_rank = ingest::id_list(spec)?;
                    if by_rank.len() != g.n_vertices() {
                        return Err(CliError::Usage(format!(
                            "ordering must list all {} vertices",
                            g.n_vertices()
                        )));
                    }
                    let mut rank = vec![0u32; g.n_vertices()];
                    for (r, &v) in by_rank.iter().enumerate() {
                        if v as usize >= g.n_vertices() {
                            return Err(CliError::Usage(format!("unknown vertex {v}")));
                        }
                        rank[v as usize] = r as u32;
                    }
                    rank
                }
                None => (0..g.n_vertices() as u32).collect(),
            };
            let phi = ProperOrdering::new(rank);
            let mut report = Report::new("wheeler-validate", digest(&bytes), "direct");
            match validate(&g, &phi) {
                Ok(()) => report.valid = Some(true),
                Err(v) => {
                    report.valid = Some(false);
                    report.violation = Some(format!("{v:?}"));
                }
            }
            report.sources = Some(g.sources());
            Ok(report)
        }
        WheelerCmd::Bwt { input, order } => {
            let bytes = ingest::read_file(input)?;
            let g = ingest::wg_edge_list(&bytes)?;
            let source_order = match order {
                Some(spec) => ingest::id_list(spec)?,
                None => g.sources(),
            };
            let phi = proper_order(&g, &source_order).map_err(domain)?;
            let bwt = wg_bwt(&g, &phi).map_err(domain)?;
            let mut report = Report::new("wheeler-bwt", digest(&bytes), "direct");
            report.runs = Some(bwt.runs);
            report.string = Some(render_labels(&bwt.string));
            report.sources = Some(source_order);
            Ok(report)
        }
        WheelerCmd::So { input, limit } => {
            let bytes = ingest::read_file(input)?;
            let g = ingest::wg_edge_list(&bytes)?;
            let result = so_brute_force(&g, *limit).map_err(domain)?;
            let mut report = Report::new("wheeler-so", digest(&bytes), "exact");
            report.runs = Some(result.runs);
            report.sources = Some(result.source_order);
            report.explored = Some(result.explored);
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let json = report.to_json();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &json) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{json}"),
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
