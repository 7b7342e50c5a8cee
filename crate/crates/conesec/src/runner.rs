//! Parallel execution of independent checks.

use std::cmp::Ordering;

use conesec_core::verify::CheckResult;
use rayon::prelude::*;

type JobFn = dyn Fn() -> conesec_core::Result<Vec<CheckResult>> + Send + Sync;

/// A unit of work producing check records.
pub struct Job {
    pub name: String,
    pub body: String,
    run: Box<JobFn>,
}

impl Job {
    pub fn new(
        name: impl Into<String>,
        body: impl Into<String>,
        run: impl Fn() -> conesec_core::Result<Vec<CheckResult>> + Send + Sync + 'static,
    ) -> Self {
        Job { name: name.into(), body: body.into(), run: Box::new(run) }
    }

    /// Runs the job. An error becomes a failed record carrying the message,
    /// so one bad configuration does not hide the rest of a batch.
    pub fn execute(&self) -> Vec<CheckResult> {
        match (self.run)() {
            Ok(v) => v,
            Err(e) => {
                let mut r = CheckResult::bound(&self.name, &self.body, f64::NAN, f64::NAN, 0.0);
                r.passed = false;
                r.notes = format!("error: {e}");
                vec![r]
            }
        }
    }
}

/// Runs the jobs on `threads` workers and returns the records in canonical
/// order, independent of completion order.
pub fn run_jobs(jobs: &[Job], threads: usize) -> Vec<CheckResult> {
    let nested = map_parallel(jobs, threads, Job::execute);
    let mut out: Vec<CheckResult> = nested.into_iter().flatten().collect();
    sort_records(&mut out);
    out
}

/// `items.map(f)` on `threads` workers, in input order. Falls back to the
/// calling thread when a pool cannot be built.
pub fn map_parallel<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if threads > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(|| items.par_iter().map(&f).collect());
        }
    }
    items.iter().map(f).collect()
}

/// Stable sort by `(name, body, parameters)`.
pub fn sort_records(records: &mut [CheckResult]) {
    records.sort_by(|a, b| {
        a.name
            .cmp(&b.name)
            .then_with(|| a.body_spec.cmp(&b.body_spec))
            .then_with(|| compare_parameters(a, b))
    });
}

fn compare_parameters(a: &CheckResult, b: &CheckResult) -> Ordering {
    let mut ia = a.parameters.iter();
    let mut ib = b.parameters.iter();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ka, va)), Some((kb, vb))) => {
                let o = ka.cmp(kb).then_with(|| va.total_cmp(vb));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}
