use std::path::Path;

use crisp_core::io::{parse_hypothesis, parse_reference, read_to_string};
use crisp_core::metrics::{collar_csv, evaluate, EvalReport, Metric};

use crate::batch::{find_files, run_all};
use crate::failure::{emit, user, Outcome};
use crate::EvalArgs;

fn report(args: &EvalArgs, hyp: &Path, reference: &Path) -> Outcome<EvalReport> {
    let pred = parse_hypothesis(&read_to_string(hyp)?, &hyp.display().to_string())?;
    let refs = parse_reference(&read_to_string(reference)?, &reference.display().to_string())?;
    let metrics: Vec<Metric> = args.metrics.iter().map(|&m| m.into()).collect();
    evaluate(&pred, &refs, &args.collars, &metrics)
        .map_err(|e| user(format!("{}: {e}", reference.display())))
}

fn to_json(report: &EvalReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serializable");
    s.push('\n');
    s
}

pub fn run(args: EvalArgs) -> Outcome {
    if let Some(c) = args.collars.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
        return Err(user(format!("collar must be a non-negative number of seconds, got {c}")));
    }
    match (args.hyp.is_dir(), args.reference.is_dir()) {
        (false, false) => {
            let r = report(&args, &args.hyp, &args.reference)?;
            if let Some(csv) = &args.csv {
                emit(Some(csv), &collar_csv(&r))?;
            }
            emit(args.out.as_deref(), &to_json(&r))
        }
        (true, true) => {
            if args.csv.is_some() {
                return Err(user("--csv applies to a single hypothesis/reference pair"));
            }
            let out_dir = args
                .out
                .clone()
                .ok_or_else(|| user("evaluating directories needs --out DIR"))?;
            let is_json = |p: &Path| p.extension().is_some_and(|e| e == "json");
            let hyps = find_files(&args.hyp, &is_json)?;
            if hyps.is_empty() {
                return Err(user(format!("no .json files under {}", args.hyp.display())));
            }
            run_all(&hyps, args.jobs, |h| {
                let relative = h.strip_prefix(&args.hyp).unwrap_or(h);
                let r = report(&args, h, &args.reference.join(relative))?;
                emit(Some(&out_dir.join(relative)), &to_json(&r))
            })
        }
        _ => Err(user("--hyp and --ref must both be files or both be directories")),
    }
}
