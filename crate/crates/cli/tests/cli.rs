//! End-to-end runs of the command line, in process.

use std::path::Path;

use orbitlab::report::SummaryJson;
use orbitlab::{main_with_args, ResultEnvelope, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE};
use orbitlab_core::{run_orbit, OrbitSummary, OrbitWalker, RunOptions, SieveSource, TauSieve};

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("orbitlab").chain(args.iter().copied()))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(run(&["run", "--x", "-5"]), EXIT_USAGE);
    assert_eq!(run(&["run", "--x", "1.5"]), EXIT_USAGE);
    assert_eq!(run(&["run"]), EXIT_USAGE);
    assert_eq!(run(&["no-such-command"]), EXIT_USAGE);
    assert_eq!(run(&["mixing", "--x", "1e4", "--scale", "12"]), EXIT_USAGE);
    // A progression longer than the interval cannot be sampled.
    assert_eq!(run(&["ladder-sample", "--N", "10", "--T", "100", "--emit", "/dev/null"]), EXIT_USAGE);
    // The orbit from 100 never crosses (1024, 2048].
    assert_eq!(run(&["conc-scan", "--x", "100", "--min-scale", "1024", "--emit", "/dev/null"]), EXIT_USAGE);
    assert_eq!(run(&["--help"]), EXIT_OK);
}

#[test]
fn summary_envelope_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.json");
    assert_eq!(run(&["run", "--x", "1e5", "--emit", path_str(&out)]), EXIT_OK);

    let env = ResultEnvelope::load(&out).unwrap();
    assert_eq!(env.kind, "orbit-summary");
    let payload: SummaryJson = env.payload_as().unwrap();
    assert_eq!(payload.a_x, 7534);
    let summary = OrbitSummary::from(&payload);
    assert_eq!(summary, run_orbit(100_000, &RunOptions::default()).unwrap().summary);

    // Wide integers are strings, so readers without 64-bit ints stay exact.
    let raw: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(raw["payload"]["x"], "100000");
    assert!(raw.get("created_unix").is_none());
}

#[test]
fn output_does_not_depend_on_threads_or_block_size() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(run(&["--threads", "1", "run", "--x", "3e5", "--emit", path_str(&a)]), EXIT_OK);
    assert_eq!(
        run(&["--threads", "3", "--block-size", "4096", "run", "--x", "3e5", "--emit", path_str(&b)]),
        EXIT_OK
    );
    let (a, b) = (read(&a), read(&b));
    // The block size is echoed in the config; the payloads must agree exactly.
    let pa: serde_json::Value = serde_json::from_str(&a).unwrap();
    let pb: serde_json::Value = serde_json::from_str(&b).unwrap();
    assert_eq!(pa["payload"], pb["payload"]);
}

#[test]
fn interrupted_walk_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let x = 400_000u64;
    let fresh = dir.path().join("fresh.json");
    assert_eq!(run(&["run", "--x", "4e5", "--emit", path_str(&fresh)]), EXIT_OK);

    // Stop a walk part-way and save it where the CLI will find it.
    let ckpt = dir.path().join("walk.ckpt");
    let options = RunOptions {
        block_size: 1 << 12,
        ..RunOptions::default()
    };
    let source = SieveSource::new(TauSieve::new(1 << 12).unwrap());
    let mut walker = OrbitWalker::new(x, source, &options).unwrap();
    assert!(!walker.advance(10_000, i64::MIN).unwrap());
    std::fs::write(&ckpt, walker.state().to_bytes()).unwrap();

    let resumed = dir.path().join("resumed.json");
    let code = run(&[
        "run",
        "--x",
        "4e5",
        "--checkpoint",
        path_str(&ckpt),
        "--every",
        "5000",
        "--emit",
        path_str(&resumed),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(read(&fresh), read(&resumed));
    assert!(!ckpt.exists(), "a finished walk removes its checkpoint");
}

#[test]
fn checkpoint_for_another_start_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("walk.ckpt");
    let state = orbitlab_core::WalkState::new(1000).unwrap();
    std::fs::write(&ckpt, state.to_bytes()).unwrap();
    assert_eq!(run(&["run", "--x", "2000", "--checkpoint", path_str(&ckpt), "--emit", "/dev/null"]), EXIT_USAGE);

    std::fs::write(&ckpt, b"not a checkpoint at all").unwrap();
    assert_eq!(
        run(&["run", "--x", "1000", "--checkpoint", path_str(&ckpt), "--emit", "/dev/null"]),
        EXIT_INVARIANT
    );
}

#[test]
fn table_csv_has_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    assert_eq!(run(&["table", "--x", "10,1e4", "--round", "4", "--emit", path_str(&out)]), EXIT_OK);
    assert_eq!(
        read(&out),
        "x,a_x,r_logx,r_loglog,r_li\n10,3,0.6908,0.9410,0.4866\n10000,962,0.8860,1.0996,0.7720\n"
    );
    assert_eq!(run(&["table", "--x", "9", "--emit", "/dev/null"]), EXIT_USAGE);
}

#[test]
fn tau_dump_matches_trial_division() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tau.csv");
    assert_eq!(run(&["tau", "--lo", "1e6", "--hi", "1000020", "--out", path_str(&out)]), EXIT_OK);
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,tau"));
    let rows: Vec<(u64, u64)> = lines
        .map(|l| {
            let (n, t) = l.split_once(',').unwrap();
            (n.parse().unwrap(), t.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 21);
    for (n, t) in rows {
        assert_eq!(orbitlab_core::divisor_count(n).unwrap(), t, "n = {n}");
    }
}

#[test]
fn segments_are_written_per_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let segs = dir.path().join("segs");
    let code = run(&[
        "run",
        "--x",
        "5000",
        "--segments",
        "dyadic",
        "--segments-dir",
        path_str(&segs),
        "--emit",
        "/dev/null",
    ]);
    assert_eq!(code, EXIT_OK);
    let text = read(&segs.join("N_1024.csv"));
    assert!(text.starts_with("j,n,tau\n"));
    for line in text.lines().skip(1) {
        let n: u64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(n > 1024 && n <= 2048);
    }
}

#[test]
fn sampler_files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "4"].iter().enumerate() {
        let rows = dir.path().join(format!("rows{i}.csv"));
        let hist = dir.path().join(format!("hist{i}.csv"));
        let code = run(&[
            "--threads",
            threads,
            "ladder-sample",
            "--N",
            "1e4",
            "--T",
            "sweep",
            "--samples",
            "50",
            "--emit",
            path_str(&rows),
            "--hist",
            path_str(&hist),
        ]);
        assert_eq!(code, EXIT_OK);
        outputs.push((read(&rows), read(&hist)));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(outputs[0].0.starts_with("N,T,sample,start,len,eps,energy,band_energy,ratio\n"));
}
