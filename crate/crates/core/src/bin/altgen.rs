use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use altgen::cache::default_cache_dir;
use altgen::diagrams::staircase_degree;
use altgen::field::PrimeField;
use altgen::generators::{conjecture_41_check, Verdict};
use altgen::graded_module::DEFAULT_SEED;
use altgen::lemma_engine::{scan, Relation, ScanReport, Selection};
use altgen::poly_expand::{check_staircase, demo_diagram, ReductionPolicy, StaircaseMatrix};
use altgen::qt_catalan::{conjecture_pdk_check, qt_catalan};
use altgen::{EngineConfig, GradedModule, SliceMode};

const EXIT_USAGE: u8 = 1;
const EXIT_COMPUTE: u8 = 2;
const EXIT_FAIL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "altgen",
    version,
    about = "Minimal generators of the diagonal ideal, slice by slice"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also eliminate over the rationals on slices small enough.
    #[arg(long, global = true)]
    exact: bool,
    /// Pin the modulus; repeat for several.
    #[arg(long = "prime", global = true)]
    primes: Vec<u64>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seeds the primes and any sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Projected,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Transfactor,
    Permute,
    Powerful,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    XFirst,
    YFirst,
    Interleaved,
}

#[derive(Subcommand)]
enum Command {
    /// Print C_n(q,t) from the statistics.
    Qt {
        #[arg(value_parser = point_count)]
        n: usize,
    },
    /// One slice of M.
    Dim {
        #[arg(value_parser = point_count)]
        n: usize,
        d1: u32,
        d2: u32,
    },
    /// Every slice of M for n points.
    Table {
        #[arg(value_parser = point_count)]
        n: usize,
        #[arg(long)]
        compare_stats: bool,
    },
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Staircase(Staircase),
}

#[derive(Subcommand)]
enum Verify {
    /// Apply and check the rewriting moves.
    Relations {
        #[arg(value_parser = point_count)]
        n: usize,
        #[arg(long, value_enum)]
        relation: Option<RelationArg>,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = u32::MAX)]
        max_deficit: u32,
    },
    /// Do the Δ(D(λ)) span every slice?
    Conj41 {
        #[arg(value_parser = point_count)]
        n: usize,
    },
    /// dim M against p(min(d1,d2), k) for k <= n - 3.
    Pdk {
        #[arg(value_parser = point_count)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Staircase {
    /// Staircase and block diagonal forms of the five-point demo diagram.
    Demo {
        #[arg(long, value_enum, default_value_t = PolicyArg::XFirst)]
        policy: PolicyArg,
    },
}

fn point_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("need at least one point".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

struct Outcome {
    json: serde_json::Value,
    text: String,
    csv: String,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match engine_config(&cli.opts) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(j) = cli.opts.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .expect("thread pool configured once");
    }
    let engine = match GradedModule::new(config.clone()) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli, &engine) {
        Ok(out) => {
            emit(&cli.opts, &config, &out);
            if out.failed {
                ExitCode::from(EXIT_FAIL)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

fn engine_config(opts: &Opts) -> Result<EngineConfig, String> {
    let mut config = EngineConfig::from_seed(opts.seed)
        .with_exact(opts.exact)
        .with_mode(match opts.mode {
            ModeArg::Full => SliceMode::Full,
            ModeArg::Projected => SliceMode::Projected,
        });
    if !opts.primes.is_empty() {
        for &p in &opts.primes {
            PrimeField::new(p).map_err(|e| e.to_string())?;
        }
        config = config.with_primes(opts.primes.clone());
    }
    if !opts.no_cache {
        config = config.with_cache_dir(default_cache_dir());
    }
    Ok(config)
}

fn emit(opts: &Opts, config: &EngineConfig, out: &Outcome) {
    let mode = match config.mode {
        SliceMode::Full => "full",
        SliceMode::Projected => "projected",
    };
    match opts.format {
        Format::Json => {
            let doc = json!({
                "primes": config.primes,
                "seed": config.seed,
                "mode": mode,
                "exact": config.verify_exact,
                "result": out.json,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Format::Csv | Format::Table => {
            let primes: Vec<String> = config.primes.iter().map(u64::to_string).collect();
            println!(
                "# primes {} seed {:#x} mode {mode}{}",
                primes.join(","),
                config.seed,
                if config.verify_exact { " exact" } else { "" }
            );
            let body = if opts.format == Format::Csv {
                &out.csv
            } else {
                &out.text
            };
            print!("{body}");
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn csv_rows(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

/// Triangle of values indexed by `(d1, d2)` with `d1 + d2 <= top`; rows are `d2`.
fn grid(top: u32, cell: impl Fn(u32, u32) -> String) -> String {
    let cells: Vec<Vec<String>> = (0..=top)
        .map(|d2| (0..=top - d2).map(|d1| cell(d1, d2)).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(top.to_string().len());
    let mut s = format!("{:>5} |", "d2\\d1");
    for d1 in 0..=top {
        s.push_str(&format!(" {d1:>width$}"));
    }
    s.push('\n');
    for (d2, row) in cells.iter().enumerate() {
        s.push_str(&format!("{d2:>5} |"));
        for c in row {
            s.push_str(&format!(" {c:>width$}"));
        }
        s.push('\n');
    }
    s
}

fn run(cli: &Cli, engine: &GradedModule) -> altgen::Result<Outcome> {
    match &cli.command {
        Command::Qt { n } => {
            let c = qt_catalan(*n);
            let top = staircase_degree(*n);
            let text = format!(
                "C_{n}(q,t) = {c}\nC_{n}(1,1) = {}\n{}",
                c.eval_at_one(),
                grid(top, |d1, d2| match c.coefficient(d1, d2) {
                    0 => ".".into(),
                    x => x.to_string(),
                })
            );
            Ok(Outcome {
                json: serde_json::from_str(&c.to_json()?)?,
                csv: csv_rows(
                    "d1,d2,coefficient",
                    c.terms().map(|(a, b, x)| format!("{a},{b},{x}")),
                ),
                text,
                failed: false,
            })
        }
        Command::Dim { n, d1, d2 } => {
            let s = engine.dim_m(*n, *d1, *d2)?;
            let backends: Vec<String> = s.backends.iter().map(|b| b.to_string()).collect();
            Ok(Outcome {
                json: to_json(&s),
                text: format!(
                    "n={} ({},{}): dim A = {}, rank R = {}, dim M = {}  [{}]\n",
                    s.n,
                    s.d1,
                    s.d2,
                    s.dim_a,
                    s.rank_r,
                    s.dim_m,
                    backends.join(", ")
                ),
                csv: csv_rows(
                    "n,d1,d2,dim_a,rank_r,dim_m",
                    [format!(
                        "{},{},{},{},{},{}",
                        s.n, s.d1, s.d2, s.dim_a, s.rank_r, s.dim_m
                    )],
                ),
                failed: false,
            })
        }
        Command::Table { n, compare_stats } => table(engine, *n, *compare_stats),
        Command::Verify(Verify::Relations {
            n,
            relation,
            exhaustive: _,
            samples,
            max_deficit,
        }) => {
            let relations: Vec<Relation> = match relation {
                Some(RelationArg::Transfactor) => vec![Relation::Transfactor],
                Some(RelationArg::Permute) => vec![Relation::Permute],
                Some(RelationArg::Powerful) => vec![Relation::Powerful],
                None => vec![Relation::Transfactor, Relation::Permute, Relation::Powerful],
            };
            let selection = match samples {
                Some(count) => Selection::Sample {
                    count: *count,
                    seed: cli.opts.seed,
                },
                None => Selection::Exhaustive,
            };
            let reports = relations
                .iter()
                .map(|&r| scan(engine, r, *n, *max_deficit, selection))
                .collect::<altgen::Result<Vec<ScanReport>>>()?;
            let verdict = |r: &ScanReport| if r.holds() { "PASS" } else { "FAIL" };
            let text = reports
                .iter()
                .map(|r| {
                    format!(
                        "{} n={}: {}/{} verified ({} legal) {}\n",
                        r.relation,
                        r.n,
                        r.passed,
                        r.checked,
                        r.available,
                        verdict(r)
                    )
                })
                .collect();
            Ok(Outcome {
                json: to_json(&reports),
                csv: csv_rows(
                    "relation,n,available,checked,passed,verdict",
                    reports.iter().map(|r| {
                        format!(
                            "{},{},{},{},{},{}",
                            r.relation,
                            r.n,
                            r.available,
                            r.checked,
                            r.passed,
                            verdict(r)
                        )
                    }),
                ),
                text,
                failed: reports.iter().any(|r| !r.holds()),
            })
        }
        Command::Verify(Verify::Conj41 { n }) => {
            let r = conjecture_41_check(engine, *n)?;
            let mut text = format!(
                "generators n={}: {} over {} slices; counts {}; D(λ) {}\n",
                r.n,
                r.verdict,
                r.slices.len(),
                if r.count_mismatches.is_empty() {
                    "match dim M"
                } else {
                    "differ from dim M"
                },
                if r.injective {
                    "injective"
                } else {
                    "not injective"
                },
            );
            if let Some(w) = &r.witness {
                text.push_str(&format!(
                    "witness ({},{}): rank {} < dim M {}\n",
                    w.d1, w.d2, w.rank, w.dim_m
                ));
            }
            Ok(Outcome {
                json: to_json(&r),
                csv: csv_rows(
                    "d1,d2,count,dim_M,rank",
                    r.slices
                        .iter()
                        .map(|s| format!("{},{},{},{},{}", s.d1, s.d2, s.count, s.dim_m, s.rank)),
                ),
                text,
                failed: r.verdict == Verdict::Fail,
            })
        }
        Command::Verify(Verify::Pdk { n }) => {
            let r = conjecture_pdk_check(engine, *n)?;
            let mut text = format!(
                "p(delta,k) n={}: {} over {} slices\n",
                r.n,
                if r.holds() { "PASS" } else { "FAIL" },
                r.entries.len()
            );
            for m in &r.mismatches {
                text.push_str(&format!(
                    "mismatch ({},{}) k={}: dim M {} but p = {}\n",
                    m.d1, m.d2, m.k, m.dim_m, m.expected
                ));
            }
            Ok(Outcome {
                json: to_json(&r),
                csv: csv_rows(
                    "d1,d2,k,dim_M,expected",
                    r.entries
                        .iter()
                        .map(|e| format!("{},{},{},{},{}", e.d1, e.d2, e.k, e.dim_m, e.expected)),
                ),
                text,
                failed: !r.holds(),
            })
        }
        Command::Staircase(Staircase::Demo { policy }) => {
            let policy = match policy {
                PolicyArg::XFirst => ReductionPolicy::XFirst,
                PolicyArg::YFirst => ReductionPolicy::YFirst,
                PolicyArg::Interleaved => ReductionPolicy::Interleaved,
            };
            let d = demo_diagram();
            let c = check_staircase(&d, policy)?;
            let matrix_csv = |m: &StaircaseMatrix, name: &str| -> Vec<String> {
                m.labels()
                    .iter()
                    .enumerate()
                    .map(|(i, row)| format!("{name},{},{}", i + 1, row.join(",")))
                    .collect()
            };
            let mut rows = matrix_csv(&c.matrix, "S");
            rows.extend(matrix_csv(&c.block, "B"));
            Ok(Outcome {
                json: json!({
                    "diagram": d,
                    "policy": format!("{policy:?}"),
                    "staircase": c.matrix.labels(),
                    "block_diagonal": c.block.labels(),
                    "block_det_agrees": c.block_det_agrees,
                    "congruent": c.congruent,
                }),
                text: format!(
                    "D = {d}  policy {policy:?}\nS =\n{}B(S) =\n{}det B(S) = det S: {}\ndet S - Δ(D) in (x,y)I: {}\n",
                    c.matrix, c.block, c.block_det_agrees, c.congruent
                ),
                csv: csv_rows("matrix,row,c1,c2,c3,c4,c5", rows),
                failed: !(c.block_det_agrees && c.congruent),
            })
        }
    }
}

fn table(engine: &GradedModule, n: usize, compare: bool) -> altgen::Result<Outcome> {
    use rayon::prelude::*;
    let top = staircase_degree(n);
    let cells: Vec<(u32, u32)> = (0..=top)
        .flat_map(|s| (0..=s).map(move |d1| (d1, s - d1)))
        .collect();
    let slices = cells
        .par_iter()
        .map(|&(d1, d2)| engine.dim_m(n, d1, d2))
        .collect::<altgen::Result<Vec<_>>>()?;
    let stats = qt_catalan(n);
    let lookup = |d1: u32, d2: u32| {
        slices
            .iter()
            .find(|s| s.d1 == d1 && s.d2 == d2)
            .map_or(0, |s| s.dim_m)
    };
    let mismatches: Vec<(u32, u32)> = slices
        .iter()
        .filter(|s| s.dim_m as u64 != stats.coefficient(s.d1, s.d2))
        .map(|s| (s.d1, s.d2))
        .collect();
    let mut text = grid(top, |d1, d2| match lookup(d1, d2) {
        0 => ".".into(),
        x => x.to_string(),
    });
    text.push_str(&format!(
        "total dim M = {}\n",
        slices.iter().map(|s| s.dim_m).sum::<usize>()
    ));
    let failed = compare && !mismatches.is_empty();
    if compare {
        text.push_str(&format!(
            "statistics: {} of {} cells match{}\n",
            slices.len() - mismatches.len(),
            slices.len(),
            if mismatches.is_empty() { "" } else { " (FAIL)" }
        ));
        for (d1, d2) in &mismatches {
            text.push_str(&format!(
                "  ({d1},{d2}): dim M {} vs statistics {}\n",
                lookup(*d1, *d2),
                stats.coefficient(*d1, *d2)
            ));
        }
    }
    let (header, rows): (&str, Vec<String>) = if compare {
        (
            "d1,d2,dim_a,rank_r,dim_m,stats,match",
            slices
                .iter()
                .map(|s| {
                    let c = stats.coefficient(s.d1, s.d2);
                    format!(
                        "{},{},{},{},{},{c},{}",
                        s.d1,
                        s.d2,
                        s.dim_a,
                        s.rank_r,
                        s.dim_m,
                        s.dim_m as u64 == c
                    )
                })
                .collect(),
        )
    } else {
        (
            "d1,d2,dim_a,rank_r,dim_m",
            slices
                .iter()
                .map(|s| format!("{},{},{},{},{}", s.d1, s.d2, s.dim_a, s.rank_r, s.dim_m))
                .collect(),
        )
    };
    let json = if compare {
        json!({
            "n": n,
            "slices": slices.iter().map(|s| json!({
                "d1": s.d1, "d2": s.d2, "dim_a": s.dim_a, "rank_r": s.rank_r, "dim_m": s.dim_m,
                "stats": stats.coefficient(s.d1, s.d2),
                "match": s.dim_m as u64 == stats.coefficient(s.d1, s.d2),
            })).collect::<Vec<_>>(),
            "mismatches": mismatches,
        })
    } else {
        json!({ "n": n, "slices": slices })
    };
    Ok(Outcome {
        json,
        text,
        csv: csv_rows(header, rows),
        failed,
    })
}
