//! End-to-end checks of the command-line interface: subcommand wiring,
//! file round trips, exit codes and output stability.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
}

struct Workdir(PathBuf);

impl Workdir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("spectra-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Workdir(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("spawning the binary");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn run_ok(args: &[&str]) -> String {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, 0, "args {args:?} failed: {stderr}");
    stdout
}

const FIB_QUEUE: &str = "states: q qF\nalphabet: a b A\ninitial: q\nfinal: qF\n\
q,\"b\" -> q,\"a\"\nq,\"a\" -> q,\"ab\"\nq,\"A\" -> q,\"Ab\"\nq,\"A\" -> qF,\"AA\"\n";

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_check_round_trips_through_files() {
    let dir = Workdir::new("gencheck");
    let s = dir.path("s.fm");
    run_ok(&["gen", "spiral", "8", "-o", path_str(&s)]);
    assert_eq!(run_ok(&["check", "-s", path_str(&s), "-a", "phi-m"]), "true\n");
    let (json, _, code) = run(&[
        "check",
        "--format",
        "json",
        "-s",
        path_str(&s),
        "-a",
        "phi-m",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json, "{\"holds\":true}\n");

    let fib = dir.path("fib.fm");
    run_ok(&["gen", "fibonacci", "13", "--planar-variant", "-o", path_str(&fib)]);
    assert_eq!(
        run_ok(&["check", "-s", path_str(&fib), "-a", "fib", "--planar-variant"]),
        "true\n"
    );
    assert_eq!(run_ok(&["planarity", "-s", path_str(&fib)]), "planar\n");
}

#[test]
fn queue_run_prints_the_fibonacci_lengths() {
    let dir = Workdir::new("queue");
    let m = dir.path("fib.qm");
    std::fs::write(&m, FIB_QUEUE).unwrap();
    let out = run_ok(&[
        "queue",
        "run",
        "--machine",
        path_str(&m),
        "--initial",
        "A",
        "--max-len",
        "60",
    ]);
    let lengths: Vec<usize> = out
        .lines()
        .map(|l| {
            l.strip_prefix("length=")
                .and_then(|rest| rest.split_once(' '))
                .unwrap()
                .0
                .parse()
                .unwrap()
        })
        .collect();
    assert_eq!(lengths, vec![3, 5, 8, 13, 21, 34, 55]);
}

#[test]
fn spectrum_reports_members_and_writes_witnesses_that_check_out() {
    let dir = Workdir::new("spectrum");
    let fol = dir.path("powers.fol");
    let axioms = run_ok(&["axioms", "powers"]);
    std::fs::write(&fol, axioms).unwrap();
    let wdir = dir.path("w");
    let args = [
        "spectrum",
        "--formula",
        path_str(&fol),
        "--range",
        "2..6",
        "--mode",
        "all",
        "--witness-dir",
        path_str(&wdir),
    ];
    let out = run_ok(&args);
    let verdicts: Vec<&str> = out
        .lines()
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(verdicts, ["member", "nonmember", "member", "nonmember", "nonmember"]);

    // The recorded witness satisfies the axioms it was searched for.
    let w = wdir.join("witness_4.fm");
    assert!(w.exists());
    assert_eq!(
        run_ok(&["check", "-s", path_str(&w), "-f", path_str(&fol)]),
        "true\n"
    );

    // Byte-stable: a second identical run prints the same records.
    let dropped: Vec<&str> = args.iter().copied().take(args.len() - 2).collect();
    let again = run_ok(&dropped);
    let stripped: String = out
        .lines()
        .map(|l| {
            let mut parts = l.split(" witness=");
            format!("{}\n", parts.next().unwrap())
        })
        .collect();
    assert_eq!(again, stripped);
}

#[test]
fn gadget_transform_round_trips_via_the_cli() {
    let dir = Workdir::new("gadget");
    let s = dir.path("s.fm");
    let g = dir.path("g.fm");
    let back = dir.path("back.fm");
    run_ok(&["gen", "powers", "9", "-o", path_str(&s)]);
    run_ok(&["transform", "deg3", "-s", path_str(&s), "-o", path_str(&g)]);
    run_ok(&[
        "transform",
        "decode3",
        "-s",
        path_str(&g),
        "--vocab-from",
        path_str(&s),
        "-o",
        path_str(&back),
    ]);
    assert_eq!(
        std::fs::read_to_string(&s).unwrap(),
        std::fs::read_to_string(&back).unwrap()
    );
}

#[test]
fn tm_search_and_encode_agree_with_the_machine_file() {
    let dir = Workdir::new("tm");
    let m = dir.path("scan.tm");
    std::fs::write(
        &m,
        "states: q0 qf\nalphabet: 1 _\ninitial: q0\nfinal: qf\n\
         q0,1 -> q0,1,R\nq0,_ -> qf,_,R\n",
    )
    .unwrap();
    let out = run_ok(&["tm", "search", "--machine", path_str(&m), "--input", "111"]);
    assert_eq!(out, "accepting time=4 space=5\n");
    let enc = run_ok(&["tm", "encode", "--machine", path_str(&m), "--input", "111"]);
    assert!(enc.starts_with("structure N="));
}

#[test]
fn errors_use_the_documented_exit_codes() {
    // Domain error: missing file, exit 1, diagnostic on stderr.
    let (stdout, stderr, code) = run(&["check", "-s", "/nonexistent.fm", "-a", "phi-m"]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.starts_with("error: "));

    // Domain error: unknown family.
    let (_, stderr, code) = run(&["axioms", "nonsense"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown axiom family"));

    // Usage error: bad subcommand, exit 2 from argument parsing.
    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}
