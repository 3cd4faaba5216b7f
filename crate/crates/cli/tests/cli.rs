use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn abwt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abwt")).args(args).output().expect("failed to run abwt")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, bytes: &[u8]) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, bytes).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs transform then invert and returns (payload, sidecar, recovered).
fn roundtrip(input: &[u8], extra: &[&str]) -> (Vec<u8>, String, Vec<u8>) {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "in", input);
    let payload = dir.path().join("out.L");
    let mut args = vec!["transform", s(&src), "-o", s(&payload)];
    args.extend_from_slice(extra);
    let out = abwt(&args);
    assert!(out.status.success(), "transform failed: {}", String::from_utf8_lossy(&out.stderr));
    let back = abwt(&["invert", s(&payload)]);
    assert!(back.status.success(), "invert failed: {}", String::from_utf8_lossy(&back.stderr));
    let meta = fs::read_to_string(dir.path().join("out.L.meta")).unwrap();
    (fs::read(&payload).unwrap(), meta, back.stdout)
}

#[test]
fn plain_order_example() {
    let (l, meta, back) = roundtrip(b"acaabr", &["--order", "id"]);
    assert_eq!(l, b"caraab");
    assert!(meta.lines().any(|x| x == "I=2"));
    assert!(meta.lines().any(|x| x == "K=id"));
    assert_eq!(back, b"acaabr");
}

#[test]
fn alternating_examples() {
    let (l, meta, back) = roundtrip(b"acaabr", &["--order", "id:rev"]);
    assert_eq!(l, b"racaab");
    assert!(meta.lines().any(|x| x == "I=0"));
    assert_eq!(back, b"acaabr");

    let (l, meta, back) = roundtrip(b"banana", &["--order", "id:rev", "--sentinel", "forbid"]);
    assert_eq!(l, b"bnnaaa");
    assert_eq!(meta, "n=6\nI=3\nK=id:rev\nsentinel=0\n");
    assert_eq!(back, b"banana");
}

#[test]
fn naive_path_agrees() {
    for order in ["id", "id:rev", "id:cab:rev"] {
        let fast = roundtrip(b"abcacbbac", &["--order", order]);
        let naive = roundtrip(b"abcacbbac", &["--order", order, "--naive"]);
        assert_eq!(fast, naive, "order {order}");
        assert_eq!(fast.2, b"abcacbbac");
    }
}

#[test]
fn sentinel_modes() {
    let (l, meta, back) = roundtrip(b"banana", &["--sentinel", "auto"]);
    assert_eq!(l.len(), 7);
    assert!(meta.lines().any(|x| x == "sentinel=1"));
    assert_eq!(back, b"banana");

    let (_, meta, back) = roundtrip(b"banana\0", &["--sentinel", "require"]);
    assert!(meta.lines().any(|x| x == "sentinel=0"));
    assert_eq!(back, b"banana\0");

    // already terminated input is taken as is by auto
    let (_, _, back) = roundtrip(b"abab\0", &["--sentinel", "auto", "--order", "id"]);
    assert_eq!(back, b"abab\0");

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    let zero = write(&dir, "z", b"ban\0ana");
    for mode in ["forbid", "auto", "require"] {
        assert_eq!(abwt(&["transform", s(&zero), "-o", s(&out), "--sentinel", mode]).status.code(), Some(3));
    }
    let plain = write(&dir, "p", b"banana");
    assert_eq!(abwt(&["transform", s(&plain), "-o", s(&out), "--sentinel", "require"]).status.code(), Some(3));
}

#[test]
fn data_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let payload = dir.path().join("L");
    let power = write(&dir, "power", b"abab");
    assert_eq!(abwt(&["transform", s(&power), "-o", s(&payload)]).status.code(), Some(3));

    let src = write(&dir, "src", b"banana");
    assert!(abwt(&["transform", s(&src), "-o", s(&payload)]).status.success());
    let meta = dir.path().join("L.meta");
    // I out of range, n mismatch, missing keys
    fs::write(&meta, "n=6\nI=9\nK=id:rev\nsentinel=0\n").unwrap();
    assert_eq!(abwt(&["invert", s(&payload)]).status.code(), Some(3));
    fs::write(&meta, "n=5\nI=0\nK=id:rev\nsentinel=0\n").unwrap();
    assert_eq!(abwt(&["invert", s(&payload)]).status.code(), Some(3));
    fs::write(&meta, "n=6\nI=0\n").unwrap();
    assert_eq!(abwt(&["invert", s(&payload)]).status.code(), Some(3));

    // L that is not the transform of any word
    fs::write(&payload, b"aaabbb").unwrap();
    fs::write(&meta, "n=6\nI=0\nK=id:rev\nsentinel=0\n").unwrap();
    assert_eq!(abwt(&["invert", s(&payload)]).status.code(), Some(3));

    let missing = dir.path().join("nope");
    assert_eq!(abwt(&["galois", s(&missing)]).status.code(), Some(3));
}

#[test]
fn other_row_index_gives_a_rotation() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "src", b"acaabr");
    let payload = dir.path().join("L");
    assert!(abwt(&["transform", s(&src), "-o", s(&payload), "--order", "id"]).status.success());
    let meta = dir.path().join("L.meta");
    fs::write(&meta, "n=6\nI=3\nK=id\nsentinel=0\n").unwrap();
    // another row decodes to a different rotation
    let out = abwt(&["invert", s(&payload)]);
    assert!(out.status.success());
    assert_eq!(out.stdout, b"bracaa");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(abwt(&[]).status.code(), Some(2));
    assert_eq!(abwt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(abwt(&["transform", "x", "-o", "y", "--order", "id:xx"]).status.code(), Some(2));
    assert_eq!(abwt(&["transform", "x", "-o", "y", "--sentinel", "maybe"]).status.code(), Some(2));
    assert_eq!(abwt(&["search"]).status.code(), Some(2));
    assert_eq!(abwt(&["rankinv", "--order", "id", "--alphabet", "ab", "--max-len", "1"]).status.code(), Some(2));
    assert_eq!(abwt(&["rankinv", "--order", "id", "--alphabet", "ba"]).status.code(), Some(2));
    assert!(abwt(&["--help"]).status.success());
}

fn build_index(dir: &TempDir, text: &[u8], locate: bool) -> PathBuf {
    let src = write(dir, "text", text);
    let idx = dir.path().join("text.idx");
    let mut args = vec!["index", s(&src), "-o", s(&idx)];
    if locate {
        args.push("--locate");
    }
    let out = abwt(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    idx
}

#[test]
fn search_counts() {
    let dir = TempDir::new().unwrap();
    let idx = build_index(&dir, b"banana", true);
    let out = abwt(&["search", s(&idx), "na", "--positions"]);
    assert_eq!(stdout(&out), "count=2\npositions=2,4\n");
    assert_eq!(stdout(&abwt(&["search", s(&idx), "z"])), "count=0\n");
    assert_eq!(stdout(&abwt(&["search", s(&idx), "ana"])), "count=2\n");

    let dir = TempDir::new().unwrap();
    let idx = build_index(&dir, b"acaabr", false);
    assert_eq!(stdout(&abwt(&["search", s(&idx), "a"])), "count=3\n");
    assert_eq!(abwt(&["search", s(&idx), "a", "--positions"]).status.code(), Some(3));

    fs::write(&idx, b"ABWTIDX1 garbage").unwrap();
    assert_eq!(abwt(&["search", s(&idx), "a"]).status.code(), Some(3));
}

#[test]
fn galois_rotations() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b", b"banana");
    let out = stdout(&abwt(&["galois", s(&b)]));
    assert!(out.starts_with("k=1\nrotation=ananab\n"), "{out}");
    let a = write(&dir, "a", b"aababb");
    let out = stdout(&abwt(&["galois", s(&a)]));
    assert!(out.starts_with("k=1\nrotation=ababba\n"), "{out}");
    let p = write(&dir, "p", b"abab");
    assert_eq!(abwt(&["galois", s(&p)]).status.code(), Some(3));
}

#[test]
fn stats_report() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b", b"banana");
    let out = stdout(&abwt(&["stats", s(&b)]));
    for line in ["rho_transform=3", "rho_bound=12", "run_bound=holds", "entropy_factorization=equal"] {
        assert!(out.lines().any(|x| x == line), "missing {line} in\n{out}");
    }
    let a = write(&dir, "a", b"aaabbb");
    let out = stdout(&abwt(&["stats", s(&a)]));
    assert!(out.lines().any(|x| x == "rho_transform=6"), "{out}");
    assert!(out.lines().any(|x| x == "run_bound=violated"), "{out}");
    let p = write(&dir, "p", b"abab");
    assert_eq!(abwt(&["stats", s(&p)]).status.code(), Some(3));
    let a = write(&dir, "a", b"aaabbbab");
    let out = stdout(&abwt(&["stats", s(&a), "--order", "id", "--r", "2"]));
    assert!(out.lines().any(|x| x == "r=2"));
    assert_eq!(abwt(&["stats", s(&b), "--r", "6"]).status.code(), Some(3));
}

#[test]
fn rankinv_reports_witness() {
    let out = stdout(&abwt(&["rankinv", "--order", "id:rev", "--alphabet", "ab", "--max-len", "8"]));
    assert!(out.lines().any(|x| x == "status=consistent"), "{out}");
    assert!(out.lines().any(|x| x == "predicted=invertible"));

    let out = stdout(&abwt(&["rankinv", "--order", "id:id:rev", "--alphabet", "ab", "--max-len", "8"]));
    assert!(out.lines().any(|x| x == "status=violated"), "{out}");
    assert!(out.lines().any(|x| x == "predicted=not-invertible"));
    let table: Vec<&str> = out.lines().skip_while(|x| !x.starts_with("row\t")).collect();
    let first = out.lines().find_map(|x| x.strip_prefix("first=")).unwrap();
    assert_eq!(table.len(), first.len() + 1);
}

#[test]
fn generic_order_roundtrip() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let w: Vec<u8> = (0..200).map(|_| b"abcd"[rng.gen_range(0..4)]).collect();
        let (_, meta, back) = roundtrip(&w, &["--order", "id:dbca:rev"]);
        assert!(meta.lines().any(|x| x == "n=200"));
        assert_eq!(back, w);
    }
}
