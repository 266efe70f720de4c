use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn file(contents: &[u8]) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents).unwrap();
    f
}

fn dynpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynpat"))
        .args(args)
        .output()
        .unwrap()
}

fn run(text: &[u8], ops: &[u8]) -> Output {
    let (t, o) = (file(text), file(ops));
    dynpat(&[
        "run",
        "--text",
        t.path().to_str().unwrap(),
        "--ops",
        o.path().to_str().unwrap(),
    ])
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn run_prints_a_count_per_op() {
    let out = run(b"abacabababaaca", b"search aba\n");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4\n");

    let out = run(b"cababaa", b"search abcaabb\ninsert 4 b\n");
    assert_eq!(stdout(&out), "0\n0\n");

    let out = run(b"abacabababaaca", b"search aba\ncopy 1 3 3\n");
    assert_eq!(stdout(&out), "4\n2\n");
}

#[test]
fn run_covers_every_op() {
    let ops = b"# comment\n\
        search baa\n\
        move 0 1 1   # -> aba\n\
        count\n\
        insert 3 z\n\
        delete 3\n\
        delsub 0 3\n\
        search\n\
        search abba\n\
        delete 2\n";
    let out = run(b"abacabababaaca", ops);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), "1\n4\n4\n0\n4\n15\n15\n0\n4\n");
}

#[test]
fn trailing_newline_belongs_to_the_text() {
    let out = run(b"ab\n", b"search b\\x0a\nsearch \\x0a\n");
    assert_eq!(stdout(&out), "1\n1\n");
}

#[test]
fn run_is_deterministic() {
    let ops = b"search ab\ninsert 1 a\ncopy 0 2 1\nmove 0 1 2\ndelsub 1 3\n";
    let a = run(b"abababbbaab", ops);
    let b = run(b"abababbbaab", ops);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let ops = file(b"count\n");
    let out = dynpat(&[
        "run",
        "--text",
        "/nonexistent/dynpat-text",
        "--ops",
        ops.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(b"", b"count\n");
    assert_eq!(out.status.code(), Some(2));

    let out = run(b"abc", b"search a\nfrobnicate 1\n");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(out.stdout.is_empty());

    // Counts before the bad op are still printed.
    let out = run(b"abc", b"search ab\ndelete 0\ndelete 5\n");
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stdout(&out), "1\n1\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn fuzz_passes() {
    for args in [
        ["--text-size", "1000", "--ops", "10000", "--alphabet", "2", "--seed", "42"],
        ["--text-size", "1", "--ops", "100", "--alphabet", "1", "--seed", "0"],
        ["--text-size", "300", "--ops", "5000", "--alphabet", "26", "--seed", "3"],
    ] {
        let mut full = vec!["fuzz"];
        full.extend(args);
        full.extend(["--alien-rate", "0.2", "--check-maximality"]);
        let out = dynpat(&full);
        assert!(out.status.success(), "{args:?}: {}", stdout(&out));
        assert!(stdout(&out).ends_with("pass\n"));
    }
}

#[test]
fn fuzz_is_reproducible() {
    let args = ["fuzz", "--text-size", "200", "--ops", "2000", "--alphabet", "4", "--seed", "11"];
    assert_eq!(dynpat(&args).stdout, dynpat(&args).stdout);
}

#[test]
fn bench_prints_a_table() {
    let out = dynpat(&[
        "bench",
        "--text-size",
        "5000",
        "--ops",
        "200",
        "--pattern-size",
        "1000",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("engine edits") && s.contains("naive recount") && s.contains("speedup"));

    let out = dynpat(&["bench", "--text-size", "100", "--ops", "0", "--pattern-size", "10", "--no-naive"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("naive recount"));
}

#[test]
fn dump_shows_arrays_and_partition() {
    let t = file(b"abacabababaaca");
    let out = dynpat(&["dump", "--text", t.path().to_str().unwrap(), "--pattern", "abaz"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "13 10 8 6 4 0 11 2 9 7 5 1 12 3\n\
         1 1 3 5 3 1 3 0 2 4 2 0 2\n\
         (3, 2, 6, -)\n\
         (1, 0, 0, 0x7a)\n\
         count 0\n"
    );
    let out = dynpat(&["dump", "--text", t.path().to_str().unwrap(), "--pattern", "\\q"]);
    assert_eq!(out.status.code(), Some(3));
}
