use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::failure::{user, Failure, Outcome};

/// Files under `dir` (recursively) accepted by `keep`, sorted.
pub fn find_files(dir: &Path, keep: &dyn Fn(&Path) -> bool) -> Outcome<Vec<PathBuf>> {
    fn walk(dir: &Path, keep: &dyn Fn(&Path) -> bool, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, keep, out)?;
            } else if keep(&path) {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(dir, keep, &mut out).map_err(|e| user(format!("{}: {e}", dir.display())))?;
    out.sort();
    Ok(out)
}

/// Runs `job` over `items` on `jobs` threads. Every failure is reported; the
/// first one (in input order) decides the result.
pub fn run_all<T: Sync>(items: &[T], jobs: usize, job: impl Fn(&T) -> Outcome + Sync + Send) -> Outcome {
    if jobs == 0 {
        return Err(user("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Internal(format!("cannot start worker threads: {e}")))?;
    let results: Vec<Outcome> = pool.install(|| items.par_iter().map(&job).collect());
    let mut first = None;
    for r in results {
        if let Err(f) = r {
            eprintln!("error: {f}");
            first.get_or_insert(f);
        }
    }
    match first {
        None => Ok(()),
        Some(f) => Err(match f {
            Failure::User(_) => user("some inputs failed"),
            Failure::Internal(_) => Failure::Internal("some inputs failed".into()),
        }),
    }
}
