mod common;

use common::*;
use tempfile::tempdir;

#[test]
fn synth_align_eval_round_trip() {
    let dir = tempdir().unwrap();
    let fx = dir.path().join("fx");
    let r = run(&["synth", s(&example_spec()), "--out", s(&fx)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for f in ["attn.cwat", "manifest.json", "reference.json"] {
        assert!(fx.join(f).is_file(), "{f} missing");
    }
    assert!(schema_errors("manifest.schema.json", &read(&fx.join("manifest.json"))).is_empty());
    assert!(schema_errors("reference.schema.json", &read(&fx.join("reference.json"))).is_empty());

    let words = dir.path().join("words.json");
    let r = run(&["align", s(&fx.join("manifest.json")), "--out", s(&words)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(schema_errors("words.schema.json", &read(&words)).is_empty());

    let r = run(&["eval", "--hyp", s(&words), "--ref", s(&fx.join("reference.json"))]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(schema_errors("eval-report.schema.json", &r.stdout).is_empty());
    let report: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["collars"][0]["collar_s"], 0.2);
    assert_eq!(report["collars"][0]["f1"], 1.0);
    assert!(report["miou"].as_f64().unwrap() > 0.8);
    assert_eq!(report["wer"], 0.0);
}

#[test]
fn synth_is_deterministic_and_seeded() {
    let dir = tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(run(&["synth", s(&example_spec()), "--out", s(&a)]).code, 0);
    assert_eq!(run(&["synth", s(&example_spec()), "--out", s(&b)]).code, 0);
    for f in ["attn.cwat", "manifest.json", "reference.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let mut spec: serde_json::Value = serde_json::from_str(&read(&example_spec())).unwrap();
    spec["seed"] = 8.into();
    let other = dir.path().join("seed8.json");
    std::fs::write(&other, spec.to_string()).unwrap();
    let c = dir.path().join("c");
    assert_eq!(run(&["synth", s(&other), "--out", s(&c)]).code, 0);
    assert_ne!(std::fs::read(a.join("attn.cwat")).unwrap(), std::fs::read(c.join("attn.cwat")).unwrap());
}

#[test]
fn synth_rejects_bad_specs() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"words":[{"text":"a","start":0,"end":0.5},{"text":"b","start":0.4,"end":0.9}]}"#).unwrap();
    let r = run(&["synth", s(&bad), "--out", s(&dir.path().join("o"))]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("overlaps"), "{}", r.stderr);

    std::fs::write(&bad, r#"{"words":[{"text":"a","start":0,"end":0.5}],"nosie_sigma":0}"#).unwrap();
    assert_eq!(run(&["synth", s(&bad), "--out", s(&dir.path().join("o"))]).code, 2);
}

#[test]
fn original_tokenizer_keeps_prefixed_spaces() {
    let dir = tempdir().unwrap();
    let fx = dir.path().join("fx");
    assert_eq!(run(&["synth", s(&example_spec()), "--out", s(&fx), "--original-tokenizer"]).code, 0);
    let m: serde_json::Value = serde_json::from_str(&read(&fx.join("manifest.json"))).unwrap();
    let texts: Vec<&str> = m["tokens"].as_array().unwrap().iter().map(|t| t["text"].as_str().unwrap()).collect();
    assert!(texts.contains(&" is"), "{texts:?}");
}

#[test]
fn single_token_spans_all_frames() {
    let dir = tempdir().unwrap();
    diagonal_cwat(&dir.path().join("attn.cwat"), 1, 5);
    let m = manifest(dir.path(), &["Hello"]);
    let r = run(&["align", s(&m)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let out: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(out["words"], serde_json::json!([{"text": "Hello", "start": 0.0, "end": 0.1}]));
    assert_eq!(out["pauses"], serde_json::json!([]));
}

#[test]
fn align_flags_override_the_manifest() {
    let dir = tempdir().unwrap();
    // One frame per token: every token is shorter than the default 50 ms.
    diagonal_cwat(&dir.path().join("attn.cwat"), 3, 3);
    let m = manifest(dir.path(), &["a", " ", "b"]);
    let filtered = run(&["align", s(&m)]);
    assert_eq!(filtered.code, 0);
    assert!(filtered.stdout.contains("\"words\": []"), "{}", filtered.stdout);

    let kept = run(&["align", s(&m), "--no-filter"]);
    let out: serde_json::Value = serde_json::from_str(&kept.stdout).unwrap();
    assert_eq!(out["words"].as_array().unwrap().len(), 2);

    let kept = run(&["align", s(&m), "--min-token-duration", "0.01"]);
    let out: serde_json::Value = serde_json::from_str(&kept.stdout).unwrap();
    assert_eq!(out["words"].as_array().unwrap().len(), 2);

    assert_eq!(run(&["align", s(&m), "--pause-cap", "0"]).code, 2);
    assert_eq!(run(&["align", s(&m), "--no-filter", "--hallucination-filter"]).code, 2);
}

#[test]
fn align_input_errors() {
    let dir = tempdir().unwrap();
    diagonal_cwat(&dir.path().join("attn.cwat"), 2, 4);

    let m = manifest(dir.path(), &[".", "!"]);
    let r = run(&["align", s(&m)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("punctuation"), "{}", r.stderr);

    let m = manifest(dir.path(), &["a", "b", "c"]);
    let r = run(&["align", s(&m)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("3 tokens"), "{}", r.stderr);

    std::fs::write(dir.path().join("attn.cwat"), b"CWAX").unwrap();
    let m = manifest(dir.path(), &["a"]);
    assert_eq!(run(&["align", s(&m)]).code, 2);

    assert_eq!(run(&["align", s(&dir.path().join("missing.json"))]).code, 2);
}

#[test]
fn batch_align_matches_single_runs() {
    let dir = tempdir().unwrap();
    let inputs = dir.path().join("in");
    for seed in 0..4 {
        let mut spec: serde_json::Value = serde_json::from_str(&read(&example_spec())).unwrap();
        spec["seed"] = seed.into();
        let path = dir.path().join(format!("spec{seed}.json"));
        std::fs::write(&path, spec.to_string()).unwrap();
        let r = run(&["synth", s(&path), "--out", s(&inputs.join(format!("f{seed}")))]);
        assert_eq!(r.code, 0);
    }
    let (one, four) = (dir.path().join("one"), dir.path().join("four"));
    assert_eq!(run(&["align", s(&inputs), "--out", s(&one)]).code, 0);
    assert_eq!(run(&["align", s(&inputs), "--out", s(&four), "--jobs", "4"]).code, 0);
    for seed in 0..4 {
        let rel = format!("f{seed}/words.json");
        let single = run(&["align", s(&inputs.join(format!("f{seed}/manifest.json")))]);
        assert_eq!(read(&one.join(&rel)), single.stdout);
        assert_eq!(read(&four.join(&rel)), single.stdout);
    }
    assert_eq!(run(&["align", s(&inputs)]).code, 2);
    assert_eq!(run(&["align", s(&inputs), "--out", s(&one), "--jobs", "0"]).code, 2);
}

fn write(dir: &std::path::Path, name: &str, json: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p
}

#[test]
fn eval_identical_sweep() {
    let dir = tempdir().unwrap();
    let r = write(dir.path(), "r.json", r#"[{"word":"Hi","start":0,"end":0.4},{"word":"there","start":0.5,"end":0.9}]"#);
    let out = run(&["eval", "--hyp", s(&r), "--ref", s(&r), "--collar", "0.1", "--collar", "0.2"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let f1: Vec<f64> = v["collars"].as_array().unwrap().iter().map(|c| c["f1"].as_f64().unwrap()).collect();
    assert_eq!(f1, [1.0, 1.0]);
}

#[test]
fn eval_crafted_pair() {
    let dir = tempdir().unwrap();
    let r = write(
        dir.path(),
        "r.json",
        r#"[{"word":"one","start":0,"end":0.5},{"word":"two","start":0.6,"end":1.0},{"word":"three","start":1.2,"end":1.8}]"#,
    );
    let h = write(
        dir.path(),
        "h.json",
        r#"{"words":[{"text":"One,","start":0,"end":0.69},{"text":"two","start":0.6,"end":1.21},{"text":"tree","start":1.2,"end":1.8}],"pauses":[]}"#,
    );
    let csv = dir.path().join("sweep.csv");
    let out = run(&["eval", "--hyp", s(&h), "--ref", s(&r), "--collar", "0.2", "--csv", s(&csv)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let c = &v["collars"][0];
    assert_eq!((c["tp"].as_u64(), c["fp"].as_u64(), c["fn"].as_u64()), (Some(1), Some(2), Some(2)));
    assert_eq!(v["counts"]["substitutions"], 1);
    assert!((v["wer"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(read(&csv), format!("collar,f1\n0.2,{}\n", c["f1"].as_f64().unwrap()));

    let only = run(&["eval", "--hyp", s(&h), "--ref", s(&r), "--metrics", "miou"]);
    let v: serde_json::Value = serde_json::from_str(&only.stdout).unwrap();
    assert!(v.get("collars").is_none() && v.get("wer").is_none() && v.get("miou").is_some());
}

#[test]
fn eval_errors() {
    let dir = tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", "[]");
    let h = write(dir.path(), "h.json", r#"[{"word":"a","start":0,"end":1}]"#);
    assert_eq!(run(&["eval", "--hyp", s(&h), "--ref", s(&empty)]).code, 2);
    assert_eq!(run(&["eval", "--hyp", s(&h), "--ref", s(&h), "--collar", "-1"]).code, 2);
    assert_eq!(run(&["eval", "--hyp", s(&h), "--ref", s(&h), "--metrics", "bleu"]).code, 2);
    let backwards = write(dir.path(), "b.json", r#"[{"word":"a","start":1,"end":0.5}]"#);
    assert_eq!(run(&["eval", "--hyp", s(&h), "--ref", s(&backwards)]).code, 2);
    assert_eq!(run(&["eval", "--hyp", s(dir.path()), "--ref", s(&h)]).code, 2);
}

#[test]
fn eval_batch() {
    let dir = tempdir().unwrap();
    let (hd, rd, od) = (dir.path().join("h"), dir.path().join("r"), dir.path().join("o"));
    std::fs::create_dir_all(&hd).unwrap();
    std::fs::create_dir_all(&rd).unwrap();
    for name in ["x.json", "y.json"] {
        write(&hd, name, r#"[{"word":"a","start":0.05,"end":1}]"#);
        write(&rd, name, r#"[{"word":"a","start":0,"end":1}]"#);
    }
    let r = run(&["eval", "--hyp", s(&hd), "--ref", s(&rd), "--out", s(&od), "--jobs", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for name in ["x.json", "y.json"] {
        assert!(schema_errors("eval-report.schema.json", &read(&od.join(name))).is_empty());
    }
    std::fs::remove_file(rd.join("y.json")).unwrap();
    assert_eq!(run(&["eval", "--hyp", s(&hd), "--ref", s(&rd), "--out", s(&od)]).code, 2);
}

const MINI_VOCAB: &str = r#"{"a": 0, " ": 1, "ab": 2, "b": 3, " a": 4}"#;
// The first merge joins a space and "a".
const MINI_MERGES: &str = "#version: 0.2\n  a\na b\n";

#[test]
fn retokenize_four_token_spec_is_a_fixed_point() {
    let dir = tempdir().unwrap();
    let v = write(dir.path(), "vocab.json", r#"{"a": 0, " ": 1, "ab": 2, "b": 3}"#);
    let m = write(dir.path(), "merges.txt", "a b\n");
    let out = dir.path().join("out");
    assert_eq!(run(&["retokenize", "--vocab", s(&v), "--merges", s(&m), "--out", s(&out)]).code, 0);
    let summary: serde_json::Value = serde_json::from_str(&read(&out.join("summary.json"))).unwrap();
    assert_eq!(summary["collapsed_duplicates"], 0);
    assert_eq!(summary["retokenized_vocab_size"], 4);
}

#[test]
fn retokenize_minimal_spec() {
    let dir = tempdir().unwrap();
    let v = write(dir.path(), "vocab.json", MINI_VOCAB);
    let m = write(dir.path(), "merges.txt", MINI_MERGES);
    let out = dir.path().join("out");
    let r = run(&["retokenize", "--vocab", s(&v), "--merges", s(&m), "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let summary = read(&out.join("summary.json"));
    assert!(schema_errors("retokenize-summary.schema.json", &summary).is_empty());
    let summary: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(summary["collapsed_duplicates"], 1);
    assert_eq!(summary["dropped_merges"], 1);

    // The output loads back and is already retokenized.
    let again = dir.path().join("again");
    let r = run(&[
        "retokenize",
        "--vocab",
        s(&out.join("vocab.json")),
        "--merges",
        s(&out.join("merges.txt")),
        "--out",
        s(&again),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(read(&out.join("vocab.json")), read(&again.join("vocab.json")));
    assert_eq!(read(&out.join("merges.txt")), read(&again.join("merges.txt")));
}

#[test]
fn retokenize_bundled_vocabulary() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(run(&["retokenize", "--out", s(&out)]).code, 0);
    let summary: serde_json::Value = serde_json::from_str(&read(&out.join("summary.json"))).unwrap();
    assert_eq!(summary["original_vocab_size"], 50257);
    assert_eq!(summary["retokenized_vocab_size"], 45066);
}

#[test]
fn retokenize_errors() {
    let dir = tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let m = write(dir.path(), "merges.txt", MINI_MERGES);
    let r = run(&["retokenize", "--vocab", s(&missing), "--merges", s(&m), "--out", s(dir.path())]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("nope.json"), "{}", r.stderr);

    let v = write(dir.path(), "vocab.json", r#"{"a ": 0}"#);
    let empty = write(dir.path(), "empty.txt", "");
    let r = run(&["retokenize", "--vocab", s(&v), "--merges", s(&empty), "--out", s(dir.path())]);
    assert_eq!(r.code, 2, "{}", r.stderr);

    assert_eq!(run(&["retokenize", "--vocab", s(&v), "--out", s(dir.path())]).code, 2);
}

#[test]
fn unwritable_output_is_an_internal_error() {
    assert_eq!(run(&["retokenize", "--out", "/dev/null/x"]).code, 1);
    assert_eq!(run(&["synth", s(&example_spec()), "--out", "/dev/null/x"]).code, 1);
}

#[test]
fn log_level_from_environment() {
    let dir = tempdir().unwrap();
    let out = crisp()
        .env("CRISP_LOG", "info")
        .args(["retokenize", "--out", s(dir.path())])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("vocabulary 50257 -> 45066"));
    let quiet = run(&["retokenize", "--out", s(dir.path())]);
    assert!(quiet.stderr.is_empty(), "{}", quiet.stderr);
}
