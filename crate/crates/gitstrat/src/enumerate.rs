//! Parallel enumeration of the chamber-normalized min-norm points.
//!
//! The flat lattice of the weights is walked level by level; every level is
//! processed in parallel and merged into a value-keyed map, so the result
//! does not depend on the number of threads.

use crate::model::{format_primitive, parse_primitive, InputError};
use gitstrat_core::beta::{normalize_record, sort_canonical, BetaRecord, FlatEngine, Mask};
use gitstrat_core::exact::RatVec;
use gitstrat_core::rep::RepSpec;
use gitstrat_core::strata::split_zwy;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Options of [`enumerate`].
#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// File rewritten after every level; an existing file is resumed from.
    pub checkpoint: Option<PathBuf>,
    /// Per-level progress on stderr.
    pub progress: bool,
}

/// Result of [`enumerate`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Chamber-normalized records in canonical order.
    pub records: Vec<BetaRecord>,
    /// Number of flats visited in this run.
    pub flats: usize,
    /// Whether the run started from a checkpoint.
    pub resumed: bool,
}

/// State saved between levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub level: usize,
    pub betas: Vec<RatVec>,
    pub frontier: Vec<Mask>,
}

impl Checkpoint {
    /// Plain text: `#` comments, `level N`, one `beta` per line as a primitive
    /// integer tuple and denominator, and `@<hex>` lines for the pending flats.
    pub fn to_text(&self) -> String {
        let mut s = String::from("# gitstrat enumeration checkpoint\n");
        s.push_str(&format!("level {}\n", self.level));
        for b in &self.betas {
            s.push_str(&format_primitive(b));
            s.push('\n');
        }
        for m in &self.frontier {
            s.push_str(&format!("@{m:x}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let mut level = None;
        let mut betas = Vec::new();
        let mut frontier = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            let bad = |m: &str| InputError::schema(format!("checkpoint line {}: {m}", k + 1));
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(n) = line.strip_prefix("level ") {
                level = Some(n.trim().parse().map_err(|_| bad("bad level"))?);
            } else if let Some(h) = line.strip_prefix('@') {
                frontier.push(Mask::from_str_radix(h, 16).map_err(|_| bad("bad flat"))?);
            } else {
                betas.push(parse_primitive(line).map_err(|e| bad(&e.to_string()))?);
            }
        }
        let level = level.ok_or_else(|| InputError::schema("checkpoint without level line"))?;
        Ok(Checkpoint { level, betas, frontier })
    }

    fn write(&self, path: &Path) -> Result<(), InputError> {
        let tmp = path.with_extension("tmp");
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(self.to_text().as_bytes())?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// A witness record for a known `beta`: the min-norm point of its `Z` weights.
fn witness(rep: &RepSpec, engine: &FlatEngine, beta: &RatVec) -> Result<BetaRecord, InputError> {
    let (z, _) = split_zwy(beta, &rep.weights());
    let mask = z.iter().fold(0 as Mask, |m, &o| m | 1 << (o - 1));
    match engine.flat_beta(mask) {
        Some(r) if r.beta == *beta => Ok(normalize_record(rep, &r)),
        _ => Err(InputError::schema(format!("checkpoint value {} is not a min-norm point", format_primitive(beta)))),
    }
}

fn run(rep: &RepSpec, opts: &EnumerateOptions) -> Result<Enumeration, InputError> {
    let weights = rep.weights();
    if weights.is_empty() {
        return Ok(Enumeration { records: Vec::new(), flats: 0, resumed: false });
    }
    let engine = FlatEngine::new(&weights.gamma);
    let mut acc: BTreeMap<RatVec, BetaRecord> = BTreeMap::new();
    let mut level_no = 0;
    let mut level = engine.initial_level();
    let mut resumed = false;
    if let Some(path) = opts.checkpoint.as_deref().filter(|p| p.exists()) {
        let cp = Checkpoint::parse(&std::fs::read_to_string(path)?)?;
        for b in &cp.betas {
            acc.insert(b.clone(), witness(rep, &engine, b)?);
        }
        level_no = cp.level;
        level = cp.frontier;
        resumed = true;
    }
    let mut flats = 0;
    while !level.is_empty() {
        let results: Vec<(Vec<Mask>, Option<BetaRecord>)> =
            level.par_iter().map(|&f| (engine.covers(f), engine.flat_beta(f).map(|r| normalize_record(rep, &r)))).collect();
        flats += level.len();
        let mut next = Vec::new();
        for (covers, rec) in results {
            next.extend(covers);
            if let Some(r) = rec {
                acc.entry(r.beta.clone()).or_insert(r);
            }
        }
        next.par_sort_unstable();
        next.dedup();
        level = next;
        level_no += 1;
        if opts.progress {
            eprintln!("level {level_no}: {} values so far, {} flats pending", acc.len(), level.len());
        }
        if let Some(path) = &opts.checkpoint {
            let cp = Checkpoint { level: level_no, betas: acc.keys().cloned().collect(), frontier: level.clone() };
            cp.write(path)?;
        }
    }
    Ok(Enumeration { records: sort_canonical(acc.into_values().collect()), flats, resumed })
}

/// Enumerates the chamber-normalized min-norm points of `rep`.
pub fn enumerate(rep: &RepSpec, opts: &EnumerateOptions) -> Result<Enumeration, InputError> {
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| InputError::schema(format!("thread pool: {e}")))?;
            pool.install(|| run(rep, opts))
        }
        None => run(rep, opts),
    }
}
