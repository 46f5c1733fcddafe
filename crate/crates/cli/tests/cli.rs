use std::process::{Command, Output};

fn cyclo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .output()
        .expect("run cyclo")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lc_methods_agree() {
    for method in ["gcd", "bm", "smatrix", "split", "closed"] {
        let o = cyclo(&["lc", "--p", "17", "--q", "41", "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        assert_eq!(stdout(&o), "696\n", "{method}");
    }
    let o = cyclo(&["lc", "--p", "73", "--q", "17", "--method", "bm", "--g", "5"]);
    assert_eq!(stdout(&o), "916\n");
}

#[test]
fn lc_verbose() {
    let o = cyclo(&["lc", "--p", "17", "--q", "73", "--verbose"]);
    let s = stdout(&o);
    assert!(s.starts_with("1204\n"));
    assert!(s.contains("case 5"));
    assert!(s.contains("minimal polynomial degree: 1204"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        cyclo(&["lc", "--p", "17", "--q", "19", "--method", "closed"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        cyclo(&["lc", "--p", "17", "--q", "19", "--method", "smatrix"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        cyclo(&["lc", "--p", "41", "--q", "73", "--method", "smatrix"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        cyclo(&["lc", "--p", "17", "--q", "45"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cyclo(&["lc", "--p", "17", "--q", "17"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cyclo(&["lc", "--p", "17", "--q", "41", "--g", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cyclo(&["lc", "--p", "17"]).status.code(), Some(2));
    assert_eq!(
        cyclo(&["lc", "--p", "17", "--q", "41", "--method", "magic"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cyclo(&["classify", "--p", "17", "--q", "19"]).status.code(),
        Some(3)
    );
    // other orders still work through the sequence methods
    assert_eq!(stdout(&cyclo(&["lc", "--p", "17", "--q", "19"])), "171\n");
}

#[test]
fn verify_small() {
    let o = cyclo(&[
        "verify",
        "--max",
        "100",
        "--methods",
        "gcd,bm,smatrix,split,closed",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 8);
    assert!(!s.contains("FAIL"));
    assert!(s.contains("SKIP (41,73) smatrix: field degree 180 > 128"));
    assert!(s.contains("summary: 8 pairs, 8 passed, 0 failed"));

    let o = cyclo(&["verify", "--max", "16"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "no pairs\n");
}

#[test]
fn verify_seeded_is_reproducible() {
    let args = [
        "verify",
        "--max",
        "100",
        "--methods",
        "gcd,closed",
        "--seed",
        "11",
    ];
    let a = cyclo(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .env("CYCLO_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_formats() {
    let csv = stdout(&cyclo(&["table", "--max", "100"]));
    assert_eq!(csv.lines().next(), Some("p,q,L_pq,L_qp"));
    assert_eq!(csv.lines().nth(1), Some("17,41,696,696"));
    assert_eq!(stdout(&cyclo(&["table", "--max", "40"])), "p,q,L_pq,L_qp\n");

    let big = stdout(&cyclo(&["table", "--max", "500"]));
    assert!(big.contains("\n113,137,11672,15480\n"));
    assert!(big.ends_with("449,457,205192,205192\n"));

    let md = stdout(&cyclo(&["table", "--max", "100", "--format", "markdown"]));
    assert!(md.contains("| 17 | 73 | 1204 | 916 |"));

    let json = stdout(&cyclo(&["table", "--max", "100", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    assert_eq!(v[0]["L_pq"], 696);
}

#[test]
fn classify_output() {
    let s = stdout(&cyclo(&["classify", "--p", "73", "--q", "17"]));
    assert!(s.contains("Res(2,p) = 8\nRes(2,q) = 2\nRes(p,q) = 1\n"));
    assert!(s.contains("case 12"));
    assert!(s.contains("eps=1/2 kappa=0 eta=1/4"));
    let s = stdout(&cyclo(&["classify", "--p", "17", "--q", "409"]));
    assert!(s.contains("Res(2,p) = 2\nRes(2,q) = 2\nRes(p,q) = 8\n"));
    let s = stdout(&cyclo(&["classify", "--p", "113", "--q", "313"]));
    assert!(s.contains("Res(2,p) = 4\nRes(2,q) = 2\nRes(p,q) = 8\n"));
}

#[test]
fn sequence_and_minpoly() {
    let s = stdout(&cyclo(&["sequence", "--p", "17", "--q", "41"]));
    let bits = s.trim_end();
    assert_eq!(bits.len(), 697);
    assert_eq!(bits.chars().filter(|&c| c == '1').count(), 348);

    let o = cyclo(&["sequence", "--p", "17", "--q", "41", "--format", "binary"]);
    assert_eq!(o.stdout.len(), 88);
    let ones: u32 = o.stdout.iter().map(|b| b.count_ones()).sum();
    assert_eq!(ones, 348);

    let s = stdout(&cyclo(&["minpoly", "--p", "17", "--q", "73"]));
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("degree 1204"));
    let hex = lines.next().unwrap();
    let poly = cyclo_core::BitPolynomial::from_hex(hex).unwrap();
    assert_eq!(poly.degree(), Some(1204));
}

#[test]
fn smatrix_printout() {
    let s = stdout(&cyclo(&["smatrix", "--p", "17", "--q", "41"]));
    assert!(s.starts_with("GF(2^40) modulus"));
    assert!(s.contains("zeros: block 0/64, column 0/8, row 0/8, corner 1"));
    assert!(s.trim_end().ends_with("L = 696"));
    let split = stdout(&cyclo(&["smatrix", "--p", "113", "--q", "137", "--split"]));
    assert!(split.contains("zeros: block 16/64"));
}
