//! Task enumeration and the worker pool.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use csflab_core::poset::enumerate_hessenberg;
use csflab_core::qcore::{partitions, Composition, Partition};
use rayon::prelude::*;
use serde_json::json;

use crate::cache::{audit_selected, task_key, Cache};
use crate::conjecture::{check, Conjecture, Outcome, PosetContext, Status};
use crate::report::Report;
use crate::table::OvercountTable;
use crate::HarnessError;

/// Largest `n` swept without the extended flag.
pub const DEFAULT_N_CAP: usize = 8;
/// Largest `n` swept with it.
pub const EXTENDED_N_CAP: usize = 10;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub conjecture: Conjecture,
    pub n_max: usize,
    pub jobs: usize,
    pub cache: Option<PathBuf>,
    pub extended: bool,
    pub audit_seed: u64,
    pub audit_rate: f64,
}

impl RunConfig {
    pub fn new(conjecture: Conjecture, n_max: usize) -> Self {
        RunConfig { conjecture, n_max, jobs: 1, cache: None, extended: false, audit_seed: 0, audit_rate: 0.1 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RunStats {
    pub tasks: usize,
    pub cache_hits: usize,
    pub audited: usize,
    pub audit_mismatches: usize,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub reports: Vec<Report>,
    pub stats: RunStats,
}

/// Barbell clique sizes `(a, 2, ..., 2, b)` with `a, b ≥ 2` on exactly `n` vertices.
pub fn barbell_shapes(n: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    for middle in 0..n {
        for a in 2..=n {
            let Some(b) = (n + middle + 1).checked_sub(a + 2 * middle) else {
                continue;
            };
            if b < 2 {
                continue;
            }
            let mut parts = vec![a];
            parts.extend(std::iter::repeat_n(2, middle));
            parts.push(b);
            out.push(Composition::new(parts).expect("positive parts"));
        }
    }
    out
}

fn contexts(conjecture: Conjecture, n_max: usize) -> Result<Vec<PosetContext>, HarnessError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if conjecture == Conjecture::BarbellPowerful {
            for gamma in barbell_shapes(n) {
                out.push(PosetContext::from_kchain(gamma)?);
            }
        } else {
            out.extend(enumerate_hessenberg(n).into_iter().map(PosetContext::new));
        }
    }
    Ok(out)
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "non-string panic payload".to_string())
}

/// Runs one check with panics and errors turned into failing outcomes.
pub fn guarded_check(conjecture: Conjecture, ctx: &PosetContext, lambda: &Partition, table: &OvercountTable) -> Outcome {
    guarded(|| check(conjecture, ctx, lambda, table))
}

fn guarded(f: impl FnOnce() -> Result<Outcome, csflab_core::Error>) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(out)) => out,
        Ok(Err(e)) => Outcome { status: Status::Fails, detail: None, witness: Some(json!({ "error": e.to_string() })) },
        Err(payload) => Outcome {
            status: Status::Fails,
            detail: None,
            witness: Some(json!({ "panic": panic_message(payload) })),
        },
    }
}

fn make_report(conjecture: Conjecture, ctx: &PosetContext, lambda: &Partition, out: Outcome) -> Report {
    Report {
        conjecture,
        n: ctx.n(),
        m: ctx.m.values().to_vec(),
        gamma: ctx.gamma.as_ref().map(|g| g.parts().to_vec()),
        lambda: lambda.parts().to_vec(),
        status: out.status,
        detail: out.detail,
        witness: out.witness,
    }
}

/// Sweeps every `(m, λ)` with `|m| ≤ n_max`; report order follows the
/// enumeration and does not depend on `jobs`.
pub fn run_verification(cfg: &RunConfig) -> Result<RunOutput, HarnessError> {
    let cap = if cfg.extended { EXTENDED_N_CAP } else { DEFAULT_N_CAP };
    if cfg.n_max > cap {
        return Err(HarnessError::SizeCap { n: cfg.n_max, cap, extended: EXTENDED_N_CAP });
    }
    let table = OvercountTable::load()?;
    let cache = cfg.cache.as_deref().map(Cache::open).transpose()?;
    let ctxs = contexts(cfg.conjecture, cfg.n_max)?;
    let tasks: Vec<(&PosetContext, Partition)> =
        ctxs.iter().flat_map(|c| partitions(c.n()).into_iter().map(move |l| (c, l))).collect();
    let hits = AtomicUsize::new(0);
    let audited = AtomicUsize::new(0);
    let mismatches = AtomicUsize::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let reports: Vec<Result<Report, HarnessError>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(ctx, lambda)| {
                let compute = || make_report(cfg.conjecture, ctx, lambda, guarded_check(cfg.conjecture, ctx, lambda, &table));
                let Some(cache) = &cache else {
                    return Ok(compute());
                };
                let gamma = ctx.gamma.as_ref().map(|g| g.parts().to_vec());
                let key = task_key(cfg.conjecture.id(), ctx.m.values(), gamma.as_deref(), lambda.parts());
                if let Some(stored) = cache.get(&key) {
                    hits.fetch_add(1, Ordering::Relaxed);
                    if !audit_selected(cfg.audit_seed, &key, cfg.audit_rate) {
                        return Ok(stored);
                    }
                    audited.fetch_add(1, Ordering::Relaxed);
                    let fresh = compute();
                    if fresh == stored {
                        return Ok(stored);
                    }
                    mismatches.fetch_add(1, Ordering::Relaxed);
                    cache.put(&key, &fresh)?;
                    return Ok(fresh);
                }
                let fresh = compute();
                cache.put(&key, &fresh)?;
                Ok(fresh)
            })
            .collect()
    });
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let stats = RunStats {
        tasks: tasks.len(),
        cache_hits: hits.into_inner(),
        audited: audited.into_inner(),
        audit_mismatches: mismatches.into_inner(),
    };
    Ok(RunOutput { reports, stats })
}
