use std::fs;
use std::process::{Command, Output};

fn pslsearch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pslsearch"))
        .args(args)
        .output()
        .expect("run pslsearch")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_barker_13() {
    let out = pslsearch(&["compute", "00CA", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sequence: +++++--++-+-+"));
    assert!(text.contains("PSL: 1"));
    assert!(text.contains("MF: 14.083 (169/12)"));
}

#[test]
fn compute_rejects_overflowing_hex() {
    let out = pslsearch(&["compute", "FF", "7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mps_25_is_unique() {
    let out = pslsearch(&["search", "--length", "25", "--mode", "mps"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"n\":25,\"psl\":2,\"canonical_hex\":\"031FAB6\",\"mf\":\"7.102\",\"mf_num\":625,\"mf_den\":88}\n\
         {\"summary\":[{\"n\":25,\"psl\":2,\"count\":1}]}\n"
    );
}

#[test]
fn feasible_exit_codes() {
    let none = pslsearch(&[
        "search", "--length", "14", "--mode", "feasible", "--bound", "1",
    ]);
    assert_eq!(none.status.code(), Some(2));
    assert_eq!(stdout(&none), "{\"summary\":[]}\n");
    let found = pslsearch(&[
        "search", "--length", "13", "--mode", "feasible", "--bound", "1",
    ]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).contains("\"canonical_hex\":\"00CA\""));
}

#[test]
fn flag_validation() {
    for args in [
        &["search", "--length", "20", "--mode", "mps", "--bound", "2"][..],
        &["search", "--length", "20", "--mode", "enumerate"],
        &[
            "search",
            "--lengths",
            "10,12",
            "--mode",
            "enumerate",
            "--bound",
            "2",
        ],
        &[
            "search",
            "--lengths",
            "10,13",
            "--mode",
            "package",
            "--bound",
            "2",
        ],
        &[
            "search",
            "--length",
            "20",
            "--mode",
            "mps",
            "--checkpoint",
            "x",
        ],
        &[
            "search",
            "--length",
            "20",
            "--mode",
            "enumerate",
            "--bound",
            "2",
            "--resume",
        ],
    ] {
        let out = pslsearch(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn table_matches_golden() {
    let golden = include_str!("golden/table_2_21.tsv");
    let oracle = pslsearch(&["table", "--min", "2", "--max", "21"]);
    assert!(oracle.status.success());
    assert_eq!(stdout(&oracle), golden);
    let bnb = pslsearch(&["table", "--min", "2", "--max", "21", "--engine", "bnb"]);
    assert_eq!(stdout(&bnb), golden);
}

#[test]
fn output_is_identical_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (workers, split) in [("1", "6"), ("3", "4"), ("4", "9")] {
        let path = dir.path().join(format!("w{workers}.jsonl"));
        let out = pslsearch(&[
            "search",
            "--length",
            "24",
            "--mode",
            "enumerate",
            "--bound",
            "3",
            "--workers",
            workers,
            "--split-depth",
            split,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        outputs.push(fs::read(&path).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert!(String::from_utf8_lossy(&outputs[0])
        .ends_with("{\"summary\":[{\"n\":24,\"psl\":3,\"count\":858}]}\n"));
}

#[test]
fn checkpoint_resume_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("run.ckpt");
    let ckpt = ckpt.to_str().unwrap();
    let base = [
        "search",
        "--length",
        "22",
        "--mode",
        "enumerate",
        "--bound",
        "3",
        "--workers",
        "2",
    ];

    let fresh = pslsearch(&base);
    assert!(fresh.status.success());

    let mut partial = base.to_vec();
    partial.extend(["--checkpoint", ckpt, "--stop-after", "5"]);
    assert_eq!(pslsearch(&partial).status.code(), Some(1));

    let mut resume = base.to_vec();
    resume.extend(["--checkpoint", ckpt, "--resume"]);
    let resumed = pslsearch(&resume);
    assert!(resumed.status.success());
    assert_eq!(resumed.stdout, fresh.stdout);
}

#[test]
fn package_matches_single_lengths() {
    let package = stdout(&pslsearch(&[
        "search",
        "--lengths",
        "20,22",
        "--mode",
        "package",
        "--bound",
        "3",
    ]));
    assert!(package.ends_with(
        "{\"summary\":[{\"n\":20,\"psl\":2,\"count\":3},{\"n\":20,\"psl\":3,\"count\":625},{\"n\":22,\"psl\":3,\"count\":378}]}\n"
    ));
}
