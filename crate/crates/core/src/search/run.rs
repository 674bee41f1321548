//! Parallel, resumable execution of a search over chunks.

use std::collections::BTreeSet;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::format::{emit_solution, emit_solutions, parse_solutions};
use crate::gint::GaussianInt;
use crate::pte::PteSolution;
use crate::{Error, Result};

use super::complete::{complete_general, complete_sym_even, complete_sym_odd, Outcome};
use super::dedup::{dedup_canonical, DedupEntry};
use super::enumerate::{plan_chunks, Enumerator};
use super::kernel::{screen_general, screen_sym_even, screen_sym_odd, G};
use super::{Mode, Resolved, SearchConfig};

pub const WORKERS_ENV: &str = "PTE_WORKERS";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Worker threads; falls back to `PTE_WORKERS`, then to the number of CPUs.
    pub workers: Option<usize>,
    /// Stop after this many chunks have been completed in this invocation.
    pub stop_after: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    /// Deduplicated solutions, filled in once every chunk is done.
    pub solutions: Vec<DedupEntry>,
    /// Every solution found, before deduplication.
    pub raw: Vec<PteSolution>,
    /// Prefixes handed to the exact completion.
    pub candidates: u64,
    pub leaves: u64,
    pub chunks_done: usize,
    pub chunks_total: usize,
    pub completed: bool,
    pub warnings: Vec<String>,
    pub unresolved: Vec<String>,
}

/// SHA-256 of the resolved configuration, in hex.
pub fn fingerprint(r: &Resolved) -> String {
    hex::encode(Sha256::digest(r.canonical_text().as_bytes()))
}

struct ChunkResult {
    id: usize,
    found: Vec<PteSolution>,
    candidates: u64,
    leaves: u64,
    unresolved: Vec<String>,
}

fn gi(v: G) -> GaussianInt {
    GaussianInt::new(v.re, v.im)
}

fn plane(e: &Enumerator, a: &[usize]) -> (Vec<GaussianInt>, Vec<GaussianInt>) {
    let p = e.leaf_prefix(a);
    (p.x, p.y)
}

fn process_chunk(r: &Resolved, e: &Enumerator, id: usize, range: std::ops::Range<usize>) -> Result<ChunkResult> {
    let mut out = ChunkResult {
        id,
        found: Vec::new(),
        candidates: 0,
        leaves: 0,
        unresolved: Vec::new(),
    };
    let mut err: Option<Error> = None;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    e.for_each(range, &mut |a| {
        if err.is_some() {
            return;
        }
        out.leaves += 1;
        e.leaf_values(a, &mut xs, &mut ys);
        let screen = match r.mode {
            Mode::General => screen_general(&xs, &ys),
            Mode::SymEven => screen_sym_even(&xs, &ys, r.n / 2),
            Mode::SymOdd => screen_sym_odd(&xs),
        };
        if screen == Some(false) {
            return;
        }
        out.candidates += 1;
        let outcome = match r.mode {
            Mode::General => complete_general(&xs.iter().map(|v| gi(*v)).collect::<Vec<_>>(), &ys.iter().map(|v| gi(*v)).collect::<Vec<_>>(), r.n),
            Mode::SymEven => {
                let (px, py) = plane(e, a);
                complete_sym_even(&px, &py, r.n)
            }
            Mode::SymOdd => complete_sym_odd(&xs.iter().map(|v| gi(*v)).collect::<Vec<_>>(), r.n),
        };
        match outcome {
            Ok(Outcome::Found(c)) => out.found.push(c.solution),
            Ok(Outcome::Rejected(_)) => {}
            Ok(Outcome::Unresolved(msg)) => out.unresolved.push(format!("{:?}: {msg}", plane(e, a))),
            Err(x) => err = Some(x),
        }
    });
    match err {
        Some(x) => Err(x),
        None => Ok(out),
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a checkpoint; a last line without newline is an interrupted write and is dropped.
fn read_checkpoint(path: &Path, expected: &str) -> Result<BTreeSet<usize>> {
    let text = fs::read_to_string(path)?;
    let complete_part = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let mut lines = complete_part.lines();
    let fp = lines
        .next()
        .and_then(|l| l.strip_prefix("fingerprint="))
        .ok_or_else(|| Error::Checkpoint(format!("{} has no fingerprint line", path.display())))?;
    if fp != expected {
        return Err(Error::Checkpoint(format!(
            "{} belongs to a different configuration",
            path.display()
        )));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.strip_prefix("done=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Checkpoint(format!("bad checkpoint line {l:?}")))
        })
        .collect()
}

fn checkpoint_text(fp: &str, done: &BTreeSet<usize>) -> String {
    let mut s = format!("fingerprint={fp}\n");
    for id in done {
        s.push_str(&format!("done={id}\n"));
    }
    s
}

fn worker_count(opts: &RunOptions) -> Result<usize> {
    if let Some(w) = opts.workers {
        return if w == 0 { Err(Error::InvalidArgument("workers must be positive".into())) } else { Ok(w) };
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|w| *w > 0)
            .ok_or_else(|| Error::InvalidArgument(format!("{WORKERS_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs (or resumes) a search. Solutions are appended to the output file
/// chunk by chunk; the checkpoint is written after each append, and the
/// output is rewritten deduplicated once every chunk is done.
pub fn run(cfg: &SearchConfig, opts: &RunOptions) -> Result<RunReport> {
    let r = cfg.resolve()?;
    let fp = fingerprint(&r);
    let workers = worker_count(opts)?;
    let chunks = plan_chunks(&r);

    let mut done = BTreeSet::new();
    if let Some(cp) = &cfg.checkpoint {
        if cp.exists() {
            done = read_checkpoint(cp, &fp)?;
        }
    }
    if let Some(out) = &cfg.output {
        if done.is_empty() {
            File::create(out)?;
        } else if !out.exists() {
            return Err(Error::Checkpoint(format!(
                "checkpoint lists finished chunks but {} is missing",
                out.display()
            )));
        } else {
            // drop an interrupted append
            let text = fs::read_to_string(out)?;
            if !text.is_empty() && !text.ends_with('\n') {
                let keep = text.rfind('\n').map_or(0, |i| i + 1);
                write_atomic(out, &text[..keep])?;
            }
        }
    }

    let mut raw: Vec<PteSolution> = match (&cfg.output, done.is_empty()) {
        (Some(out), false) => parse_solutions(&fs::read_to_string(out)?)?,
        _ => Vec::new(),
    };

    let todo: Vec<_> = chunks.iter().filter(|c| !done.contains(&c.id)).cloned().collect();
    let enumerator = Enumerator::new(&r);
    let started = AtomicUsize::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;

    let (tx, rx) = mpsc::channel::<ChunkResult>();
    let mut candidates = 0;
    let mut leaves = 0;
    let mut unresolved = Vec::new();

    let (work, collected) = std::thread::scope(|scope| {
        let collector = scope.spawn(|| -> Result<Vec<ChunkResult>> {
            let mut results = Vec::new();
            let mut out_file = match &cfg.output {
                Some(p) => Some(OpenOptions::new().append(true).open(p)?),
                None => None,
            };
            for res in rx {
                if let Some(f) = out_file.as_mut() {
                    let mut text = String::new();
                    for s in &res.found {
                        text.push_str(&emit_solution(s));
                        text.push('\n');
                    }
                    f.write_all(text.as_bytes())?;
                    f.sync_data()?;
                }
                done.insert(res.id);
                if let Some(cp) = &cfg.checkpoint {
                    write_atomic(cp, &checkpoint_text(&fp, &done))?;
                }
                results.push(res);
            }
            Ok(results)
        });
        let work = pool.install(|| {
            todo.par_iter().try_for_each_with(tx, |tx, chunk| -> Result<()> {
                if let Some(limit) = opts.stop_after {
                    if started.fetch_add(1, Ordering::SeqCst) >= limit {
                        return Ok(());
                    }
                }
                let res = process_chunk(&r, &enumerator, chunk.id, chunk.range.clone())?;
                tx.send(res).map_err(|_| Error::Internal("collector stopped".into()))?;
                Ok(())
            })
        });
        (work, collector.join().expect("collector thread panicked"))
    });
    work?;
    let collected = collected?;
    for res in collected {
        candidates += res.candidates;
        leaves += res.leaves;
        unresolved.extend(res.unresolved);
        raw.extend(res.found);
    }

    let chunks_done = done.len();
    let completed = chunks_done == chunks.len();
    let mut solutions = Vec::new();
    if completed {
        solutions = dedup_canonical(&raw);
        if let Some(out) = &cfg.output {
            let reps: Vec<PteSolution> = solutions.iter().map(|d| d.solution.clone()).collect();
            write_atomic(out, &emit_solutions(&reps))?;
        }
    }
    Ok(RunReport {
        solutions,
        raw,
        candidates,
        leaves,
        chunks_done,
        chunks_total: chunks.len(),
        completed,
        warnings: r.warnings.clone(),
        unresolved,
    })
}
