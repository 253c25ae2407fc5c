use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use arrow3::harness::{
    read_records, run_comparison, series_paths, sorted_differences, write_records, write_series,
    Distribution, HarnessError, RunConfig,
};
use arrow3::{solve, Method, SolverConfig, SymMat3};

#[derive(Parser)]
#[command(
    name = "arrow3",
    version,
    about = "Symmetric 3x3 eigensolver and accuracy harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bg,
    Newton,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Bg => Method::Rational,
            MethodArg::Newton => Method::Newton,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Uniform,
    Normal,
    Chisq,
}

impl From<DistArg> for Distribution {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Uniform => Distribution::Uniform,
            DistArg::Normal => Distribution::Normal,
            DistArg::Chisq => Distribution::Chisq,
        }
    }
}

#[derive(clap::Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "bg")]
    method: MethodArg,
    #[arg(long, default_value_t = 8.0)]
    c_deflate: f64,
    #[arg(long, default_value_t = 4.0)]
    c_term: f64,
    /// Zero-finder iteration cap (default 20 for bg, 100 for newton).
    #[arg(long)]
    max_iter: Option<usize>,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, Failure> {
        for (name, v) in [("--c-deflate", self.c_deflate), ("--c-term", self.c_term)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Failure::Usage(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(SolverConfig {
            method: self.method.into(),
            c_deflate: self.c_deflate,
            c_term: self.c_term,
            max_iter: self.max_iter,
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve matrices given one per line as `a11 a12 a13 a22 a23 a33`.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run the accuracy comparison and write per-trial metrics as CSV.
    Bench {
        #[arg(long, value_enum)]
        dist: DistArg,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Sort per-trial differences (baseline - arrow) from a bench CSV.
    /// Writes `<out>.orth.csv` and `<out>.resid.csv`.
    Diff {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Solver(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::Solver(_) => 3,
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Solver { .. } | HarnessError::Baseline { .. } => {
                Failure::Solver(e.to_string())
            }
            HarnessError::Empty => Failure::Usage(e.to_string()),
            HarnessError::Io(_) | HarnessError::Csv(_) => Failure::Io(e.to_string()),
        }
    }
}

fn io_err(path: &std::path::Path) -> impl Fn(std::io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn parse_line(line: &str, lineno: usize) -> Result<Option<SymMat3>, Failure> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let vals: Vec<f64> = line
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("line {lineno}: {e}")))?;
    let upper: [f64; 6] = vals.try_into().map_err(|v: Vec<f64>| {
        Failure::Usage(format!("line {lineno}: expected 6 values, got {}", v.len()))
    })?;
    SymMat3::from_upper(upper)
        .map(Some)
        .map_err(|e| Failure::Usage(format!("line {lineno}: {e}")))
}

fn cmd_solve(input: PathBuf, cfg: SolverConfig) -> Result<(), Failure> {
    let reader = BufReader::new(File::open(&input).map_err(io_err(&input))?);
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let write_err = |e: std::io::Error| Failure::Io(format!("stdout: {e}"));
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err(&input))?;
        let Some(s) = parse_line(&line, i + 1)? else {
            continue;
        };
        let d = solve(&s, &cfg).map_err(|e| Failure::Solver(format!("line {}: {e}", i + 1)))?;
        let [l1, l2, l3] = d.values;
        writeln!(out, "lambda {l1:e} {l2:e} {l3:e}").map_err(write_err)?;
        for row in d.vectors.rows() {
            writeln!(out, "v {:e} {:e} {:e}", row[0], row[1], row[2]).map_err(write_err)?;
        }
    }
    out.flush().map_err(write_err)
}

fn cmd_bench(cfg: RunConfig, out: PathBuf) -> Result<(), Failure> {
    let start = Instant::now();
    let cmp = run_comparison(&cfg)?;
    let elapsed = start.elapsed();
    let file = File::create(&out).map_err(io_err(&out))?;
    write_records(&cmp.records, BufWriter::new(file))?;
    let s = cmp.summary;
    let n = cmp.records.len();
    eprintln!("{} trials of {} in {:.2?}", n, cfg.dist.name(), elapsed);
    eprintln!("              {:>12} {:>12}", "max", "median");
    for (name, st) in [
        ("orth arrow", s.orth_main),
        ("orth base", s.orth_base),
        ("resid arrow", s.resid_main),
        ("resid base", s.resid_base),
    ] {
        eprintln!("{name:<13} {:>12.3e} {:>12.3e}", st.max, st.median);
    }
    eprintln!(
        "arrow strictly better: orth {:.1}%, resid {:.1}%",
        100.0 * s.main_better_orth as f64 / n as f64,
        100.0 * s.main_better_resid as f64 / n as f64
    );
    Ok(())
}

fn cmd_diff(input: PathBuf, out: PathBuf) -> Result<(), Failure> {
    let records = read_records(File::open(&input).map_err(io_err(&input))?)?;
    let diffs = sorted_differences(&records)?;
    let (orth_path, resid_path) = series_paths(&out);
    write_series(
        &diffs.orth,
        BufWriter::new(File::create(&orth_path).map_err(io_err(&orth_path))?),
    )?;
    write_series(
        &diffs.resid,
        BufWriter::new(File::create(&resid_path).map_err(io_err(&resid_path))?),
    )?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Cmd::Solve { input, solver } => solver.config().and_then(|cfg| cmd_solve(input, cfg)),
        Cmd::Bench {
            dist,
            n,
            seed,
            out,
            solver,
        } => {
            if n == 0 {
                Err(Failure::Usage("--n must be at least 1".into()))
            } else {
                solver.config().and_then(|solver| {
                    cmd_bench(
                        RunConfig {
                            n_matrices: n,
                            dist: dist.into(),
                            seed,
                            solver,
                        },
                        out,
                    )
                })
            }
        }
        Cmd::Diff { input, out } => cmd_diff(input, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Io(m) | Failure::Solver(m)) = &f;
            eprintln!("arrow3: {m}");
            ExitCode::from(f.code())
        }
    }
}
