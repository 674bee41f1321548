use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pte_core::bounds::{bounds_table, corpus_gcd_upper_bound};
use pte_core::corpus::{check_corpus, gaussian_table, parse_corpus, parse_gaussian_table, CORPUS_TOML};
use pte_core::format::{emit_solutions, parse_solutions};
use pte_core::gint::factor;
use pte_core::pte::{conjugate_solution, constant, equivalent, verify_degree};
use pte_core::search::{run, Mode, RunOptions, SearchConfig, SieveSpec};
use pte_core::{Error, GaussianInt, PteSolution};

const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "pte", version, about = "Ideal Prouhet-Tarry-Escott solutions over the Gaussian integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check each solution in FILE at its claimed degree.
    Verify { file: PathBuf },
    /// Print the constant of each ideal solution in FILE, with its factorization.
    Constant { file: PathBuf },
    /// Factor a Gaussian integer given as "(a,b)".
    Factor {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Lower bounds for sizes 2..=N with provenance.
    Bounds {
        #[arg(long)]
        max_size: u64,
    },
    /// Pairwise affine equivalence of the solutions in FILE.
    Equiv { file: PathBuf },
    /// Gcd of the constants of the solutions in FILE.
    GcdUpper {
        file: PathBuf,
        #[arg(long)]
        with_conjugates: bool,
    },
    /// Operations on the bundled corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Search for ideal solutions.
    Search {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        mode: Mode,
        #[arg(long = "box")]
        box_size: i64,
        #[arg(long)]
        k: Option<usize>,
        /// `none`, `auto`, or two primes such as `(3,2),(3,-2)`.
        #[arg(long, default_value = "none", allow_hyphen_values = true)]
        sieve: SieveSpec,
        #[arg(long, default_value_t = 1)]
        chunks: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: PTE_WORKERS, then all CPUs).
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Re-verify the corpus and compare the reference table with the bounds engine.
    Check {
        /// Directory holding `corpus.toml` and `table1.toml` to use instead of the bundled data.
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => INTERNAL,
            Error::InvalidArgument(_) => USAGE,
            _ => VERIFY_FAILED,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

type Outcome = Result<u8, Failure>;

fn read_solutions(path: &Path) -> Result<Vec<PteSolution>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))?;
    Ok(parse_solutions(&text)?)
}

fn factored(c: &GaussianInt) -> Result<String, Failure> {
    Ok(factor(c)?.to_string())
}

fn cmd_verify(file: &Path) -> Outcome {
    let mut code = 0;
    for (i, s) in read_solutions(file)?.iter().enumerate() {
        let d = verify_degree(s);
        let ok = d >= s.claimed_degree();
        if !ok {
            code = VERIFY_FAILED;
        }
        println!(
            "{}: degree={d} claimed={} ideal={} {}",
            i + 1,
            s.claimed_degree(),
            if d + 1 >= s.n() { "yes" } else { "no" },
            if ok { "ok" } else { "FAIL" }
        );
    }
    Ok(code)
}

fn cmd_constant(file: &Path) -> Outcome {
    let mut code = 0;
    for (i, s) in read_solutions(file)?.iter().enumerate() {
        match constant(s) {
            Ok(c) => println!("{}: C={c} = {}", i + 1, factored(&c)?),
            Err(e @ Error::Internal(_)) => return Err(e.into()),
            Err(e) => {
                code = VERIFY_FAILED;
                println!("{}: {e}", i + 1);
            }
        }
    }
    Ok(code)
}

fn cmd_factor(value: &str) -> Outcome {
    let z: GaussianInt = value.parse().map_err(|e: Error| fail(USAGE, e.to_string()))?;
    if z.is_zero() {
        return Err(fail(USAGE, "cannot factor zero"));
    }
    println!("{z} = {}", factored(&z)?);
    Ok(0)
}

fn cmd_bounds(max: u64) -> Outcome {
    if max < 2 {
        return Err(fail(USAGE, "--max-size must be at least 2"));
    }
    for row in bounds_table(max) {
        println!("{}", row.to_line());
    }
    Ok(0)
}

fn cmd_equiv(file: &Path) -> Outcome {
    let sols = read_solutions(file)?;
    let n = sols.len();
    let mut witnesses = Vec::new();
    let mut matrix = vec![vec!['.'; n]; n];
    for i in 0..n {
        for j in 0..n {
            if sols[i].n() != sols[j].n() {
                continue;
            }
            if let Some(w) = equivalent(&sols[i], &sols[j])? {
                matrix[i][j] = '=';
                if i < j {
                    witnesses.push(format!(
                        "{} ~ {}: {}{}",
                        i + 1,
                        j + 1,
                        w.map,
                        if w.swapped { " (sides swapped)" } else { "" }
                    ));
                }
            }
        }
    }
    for row in matrix {
        println!("{}", row.into_iter().collect::<String>());
    }
    for w in witnesses {
        println!("{w}");
    }
    Ok(0)
}

fn cmd_gcd_upper(file: &Path, with_conjugates: bool) -> Outcome {
    let mut sols = read_solutions(file)?;
    if with_conjugates {
        let conj: Vec<_> = sols.iter().map(conjugate_solution).collect();
        sols.extend(conj);
    }
    if sols.iter().any(|s| s.n() != sols[0].n()) {
        return Err(fail(USAGE, "solutions of different sizes"));
    }
    println!("{}", corpus_gcd_upper_bound(&sols)?.to_factored_string());
    Ok(0)
}

fn cmd_corpus_check(data: Option<&Path>) -> Outcome {
    let (entries, table) = match data {
        Some(dir) => {
            let read = |name: &str| {
                fs::read_to_string(dir.join(name)).map_err(|e| fail(USAGE, format!("{}: {e}", dir.join(name).display())))
            };
            (parse_corpus(&read("corpus.toml")?)?, parse_gaussian_table(&read("table1.toml")?)?)
        }
        None => (parse_corpus(CORPUS_TOML)?, gaussian_table()?),
    };
    let report = check_corpus(&entries, &table);
    for line in &report.lines {
        println!("{line}");
    }
    Ok(if report.ok() { 0 } else { VERIFY_FAILED })
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    size: usize,
    mode: Mode,
    box_size: i64,
    k: Option<usize>,
    sieve: SieveSpec,
    chunks: usize,
    checkpoint: Option<PathBuf>,
    out: Option<PathBuf>,
    workers: Option<usize>,
) -> Outcome {
    let mut cfg = SearchConfig::new(size, mode, box_size);
    cfg.k = k;
    cfg.sieve = sieve;
    cfg.chunk_count = chunks;
    cfg.checkpoint = checkpoint;
    cfg.output = out.clone();
    let report = run(&cfg, &RunOptions { workers, stop_after: None })?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for u in &report.unresolved {
        eprintln!("unresolved: {u}");
    }
    eprintln!(
        "leaves={} candidates={} chunks={}/{} classes={}",
        report.leaves,
        report.candidates,
        report.chunks_done,
        report.chunks_total,
        report.solutions.len()
    );
    let pairs = report.solutions.iter().filter(|d| d.conjugate_of.is_some()).count() / 2;
    let self_conj = report.solutions.iter().filter(|d| d.self_conjugate).count();
    eprintln!("conjugate pairs={pairs} self-conjugate={self_conj}");
    if out.is_none() {
        let reps: Vec<_> = report.solutions.iter().map(|d| d.solution.clone()).collect();
        print!("{}", emit_solutions(&reps));
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { file } => cmd_verify(&file),
        Command::Constant { file } => cmd_constant(&file),
        Command::Factor { value } => cmd_factor(&value),
        Command::Bounds { max_size } => cmd_bounds(max_size),
        Command::Equiv { file } => cmd_equiv(&file),
        Command::GcdUpper { file, with_conjugates } => cmd_gcd_upper(&file, with_conjugates),
        Command::Corpus { action: CorpusAction::Check { data } } => cmd_corpus_check(data.as_deref()),
        Command::Search {
            size,
            mode,
            box_size,
            k,
            sieve,
            chunks,
            checkpoint,
            out,
            workers,
        } => cmd_search(size, mode, box_size, k, sieve, chunks, checkpoint, out, workers),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
