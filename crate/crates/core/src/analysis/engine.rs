//! Prefix-partitioned parallel search with deterministic aggregation and
//! resumable JSON checkpoints.
//!
//! A search is split into numbered prefixes `0..count`, ordered so that a
//! lower prefix holds lexicographically earlier candidates. Workers pull
//! prefixes from a shared counter and solve each independently; the result
//! never depends on the worker count or on scheduling:
//!
//! * [`Aggregate::FirstPrefix`] keeps the witness of the lowest prefix that
//!   has one, and skips prefixes above it once found.
//! * [`Aggregate::Least`] keeps the least witness over all prefixes.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use super::AnalysisError;

/// Knobs shared by every exhaustive search.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Worker threads; 0 is treated as 1.
    pub workers: usize,
    /// Checkpoint file. An existing file must belong to the same task and
    /// params; it is resumed from.
    pub checkpoint: Option<PathBuf>,
    /// Lift the default search-space guards.
    pub lift_guards: bool,
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> SearchOptions {
        SearchOptions { workers, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aggregate {
    FirstPrefix,
    Least,
}

struct State<T> {
    completed: Vec<bool>,
    best: Option<(usize, T)>,
    last_write: Instant,
}

const WRITE_INTERVAL: Duration = Duration::from_millis(500);

fn checkpoint_json<T: Serialize>(task: &str, params: &Value, st: &State<T>) -> Value {
    let done: Vec<usize> = st.completed.iter().enumerate().filter(|(_, &d)| d).map(|(i, _)| i).collect();
    json!({
        "task": task,
        "params": params,
        "completed_prefixes": done,
        "best": st.best.as_ref().map(|(p, w)| json!({ "prefix": p, "witness": w })),
    })
}

fn write_atomic(path: &Path, v: &Value) -> Result<(), AnalysisError> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string_pretty(v).expect("checkpoint serializes");
    fs::write(&tmp, text + "\n").map_err(|e| AnalysisError::Checkpoint(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| AnalysisError::Checkpoint(e.to_string()))
}

fn load<T: DeserializeOwned>(
    path: &Path,
    task: &str,
    params: &Value,
    count: usize,
) -> Result<Option<State<T>>, AnalysisError> {
    let Ok(text) = fs::read_to_string(path) else {
        return Ok(None);
    };
    let bad = |m: &str| AnalysisError::Checkpoint(format!("{}: {m}", path.display()));
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    if v.get("task").and_then(Value::as_str) != Some(task) || v.get("params") != Some(params) {
        return Err(AnalysisError::CheckpointMismatch(path.display().to_string()));
    }
    let mut completed = vec![false; count];
    for p in v.get("completed_prefixes").and_then(Value::as_array).ok_or_else(|| bad("prefixes"))? {
        let i = p.as_u64().ok_or_else(|| bad("prefix index"))? as usize;
        *completed.get_mut(i).ok_or_else(|| bad("prefix out of range"))? = true;
    }
    let best = match v.get("best") {
        None | Some(Value::Null) => None,
        Some(b) => {
            let p = b.get("prefix").and_then(Value::as_u64).ok_or_else(|| bad("best prefix"))?;
            let w = serde_json::from_value(b.get("witness").cloned().unwrap_or(Value::Null))
                .map_err(|e| bad(&e.to_string()))?;
            Some((p as usize, w))
        }
    };
    Ok(Some(State { completed, best, last_write: Instant::now() }))
}

/// Solves every prefix with `solve` and aggregates. Returns the winning
/// prefix and witness.
pub fn run<T, F>(
    task: &str,
    params: Value,
    count: usize,
    aggregate: Aggregate,
    opts: &SearchOptions,
    solve: F,
) -> Result<Option<(usize, T)>, AnalysisError>
where
    T: Serialize + DeserializeOwned + Ord + Clone + Send,
    F: Fn(usize) -> Option<T> + Sync,
{
    let initial = match &opts.checkpoint {
        Some(path) => load(path, task, &params, count)?,
        None => None,
    };
    let state =
        Mutex::new(initial.unwrap_or(State { completed: vec![false; count], best: None, last_write: Instant::now() }));
    let next = AtomicUsize::new(0);
    // lowest prefix known to hold a witness (FirstPrefix cutoff)
    let cutoff = AtomicUsize::new(match &state.lock().unwrap().best {
        Some((p, _)) if aggregate == Aggregate::FirstPrefix => *p,
        _ => usize::MAX,
    });
    let failure: Mutex<Option<AnalysisError>> = Mutex::new(None);

    let worker = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= count {
            break;
        }
        if aggregate == Aggregate::FirstPrefix && i > cutoff.load(Ordering::Acquire) {
            continue;
        }
        if state.lock().unwrap().completed[i] {
            continue;
        }
        let found = solve(i);
        let mut st = state.lock().unwrap();
        st.completed[i] = true;
        if let Some(w) = found {
            let better = match (&st.best, aggregate) {
                (None, _) => true,
                (Some((p, _)), Aggregate::FirstPrefix) => i < *p,
                (Some((p, b)), Aggregate::Least) => (&w, i) < (b, *p),
            };
            if better {
                st.best = Some((i, w));
                if aggregate == Aggregate::FirstPrefix {
                    cutoff.fetch_min(i, Ordering::AcqRel);
                }
            }
        }
        if let Some(path) = &opts.checkpoint {
            if st.last_write.elapsed() >= WRITE_INTERVAL {
                st.last_write = Instant::now();
                if let Err(e) = write_atomic(path, &checkpoint_json(task, &params, &st)) {
                    failure.lock().unwrap().get_or_insert(e);
                }
            }
        }
    };

    let workers = opts.workers.max(1).min(count.max(1));
    if workers == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(worker);
            }
        });
    }
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let mut st = state.into_inner().unwrap();
    // prefixes skipped by the cutoff are settled too
    st.completed.iter_mut().for_each(|d| *d = true);
    if let Some(path) = &opts.checkpoint {
        write_atomic(path, &checkpoint_json(task, &params, &st))?;
    }
    Ok(st.best)
}
