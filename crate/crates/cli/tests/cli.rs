use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn powergraph(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powergraph"))
        .args(args)
        .current_dir(dir)
        .env("POWERGRAPH_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// `key=value` lookup in whitespace separated text.
fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.split_whitespace()
        .find_map(|tok| tok.strip_prefix(key)?.strip_prefix('='))
        .unwrap_or_else(|| panic!("no {key}= in {text:?}"))
}

/// Adds a loop at every vertex of a loopless edge list.
fn with_loops(edge_list: &str) -> String {
    let mut lines = edge_list.lines();
    let header = lines.next().unwrap();
    let n: usize = field(header, "n").parse().unwrap();
    let mut out = format!("n={n} loops=1\n");
    for line in lines {
        out.push_str(line);
        out.push('\n');
    }
    for v in 0..n {
        out.push_str(&format!("{v} {v}\n"));
    }
    out
}

#[test]
fn gen_writes_graph_blueprint_and_audit() {
    let dir = TempDir::new().unwrap();
    let out = powergraph(&["gen", "Gm", "--r", "7", "--m", "5", "-o", "g.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).lines().next(),
        Some("order=22 degree=5 diameter=7 PASS")
    );
    let graph = fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(graph.starts_with("n=22 loops=0\n"));
    let blueprint = fs::read_to_string(dir.path().join("g.txt.blueprint")).unwrap();
    assert!(blueprint.starts_with("family=Gm r=7 m=5\nlayer 0 0..1\n"));
    let audit = fs::read_to_string(dir.path().join("g.txt.audit")).unwrap();
    assert_eq!(audit, stdout(&out));

    let out = powergraph(&["gen", "Hm", "--r", "6", "--m", "1", "-o", "h.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("order=16 degree=4 diameter=7 PASS\n"));
}

#[test]
fn gen_rejects_wrong_residue() {
    let dir = TempDir::new().unwrap();
    let out = powergraph(&["gen", "Gm", "--r", "6", "--m", "5"], dir.path());
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains("Gm requires r ≢ 0 mod 3"), "{err}");
    assert!(stdout(&out).is_empty());
}

#[test]
fn gen_without_output_prints_edge_list() {
    let dir = TempDir::new().unwrap();
    let out = powergraph(&["gen", "cayley", "--p", "13", "--a", "1,5"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("n=13 loops=0\n0 1\n"));
    let err = stderr(&out);
    assert_eq!(err, "order=13 degree=4 diameter=2 PASS\n");
}

#[test]
fn round_trip_reproduces_audit_numbers() {
    let dir = TempDir::new().unwrap();
    for (family, r, m) in [("Gm", "7", "5"), ("Gm", "5", "4"), ("Hm", "6", "2"), ("Hm", "9", "1")] {
        let out = powergraph(&["gen", family, "--r", r, "--m", m, "-o", "g.txt"], dir.path());
        assert_eq!(code(&out), 0, "{family} r={r} m={m}");
        let audit = stdout(&out);

        let power = powergraph(&["power", "g.txt", "--r", r, "-o", "p.txt"], dir.path());
        assert_eq!(code(&power), 0);
        let stats = stdout(&power);
        assert_eq!(field(&stats, "e_power"), field(&audit, "power_edges"));
        let power_file = fs::read_to_string(dir.path().join("p.txt")).unwrap();
        assert!(power_file.starts_with(stats.trim_end()));

        let verify = powergraph(&["verify", "g.txt", "--r", r], dir.path());
        assert_eq!(code(&verify), 0);
        let verdict = stdout(&verify);
        assert!(verdict.starts_with("holds "), "{verdict}");
        assert_eq!(field(&verdict, "observed"), field(&audit, "ratio"));
    }
}

#[test]
fn verify_matches_known_margin() {
    let dir = TempDir::new().unwrap();
    powergraph(&["gen", "Gm", "--r", "7", "--m", "5", "-o", "g.txt"], dir.path());
    let out = powergraph(&["verify", "g.txt", "--r", "7"], dir.path());
    assert!(stdout(&out).starts_with("holds bound=3 observed=21/5 margin=6/5"));

    let out = powergraph(&["verify", "g.txt", "--r", "7", "--format", "json"], dir.path());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["theorem"], "regular-ratio");
    assert_eq!(json["observed"], "21/5");
    assert_eq!(json["holds"], true);
}

/// 0 holds, 1 violation, 2 inapplicable, 3 usage or input error
#[test]
fn exit_code_matrix() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    powergraph(&["gen", "Gm", "--r", "7", "--m", "5", "-o", "g.txt"], p);
    powergraph(&["gen", "Hm", "--r", "6", "--m", "1", "-o", "h.txt"], p);
    powergraph(&["gen", "random", "--n", "20", "--d", "3", "--seed", "4", "-o", "r.txt"], p);
    powergraph(&["gen", "cayley", "--p", "31", "--a", "1", "-o", "c.txt"], p);
    let h = fs::read_to_string(p.join("h.txt")).unwrap();
    fs::write(p.join("hl.txt"), with_loops(&h)).unwrap();
    fs::write(p.join("bad.txt"), "n=3 loops=0\n0 1\n1 x\n").unwrap();
    fs::write(p.join("split.txt"), "n=4 loops=0\n0 1\n2 3\n").unwrap();

    let cases: &[(&[&str], i32)] = &[
        (&["verify", "g.txt", "--r", "7"], 0),
        (&["verify", "g.txt", "--r", "7", "--all"], 0),
        (&["verify", "hl.txt", "--r", "6"], 0),
        (&["verify", "c.txt", "--r", "2", "--cayley"], 0),
        (&["claims", "hl.txt", "--r", "6"], 0),
        // the Cayley bound does not hold for an arbitrary regular graph
        (&["verify", "g.txt", "--r", "6", "--cayley"], 1),
        (&["verify", "r.txt", "--r", "9"], 2),
        (&["verify", "g.txt", "--r", "2"], 2),
        (&["verify", "split.txt", "--r", "3"], 2),
        (&["verify", "hl.txt", "--r", "5"], 2),
        (&["claims", "h.txt", "--r", "6"], 2),
        (&["claims", "hl.txt", "--r", "7"], 2),
        (&["verify", "bad.txt", "--r", "3"], 3),
        (&["verify", "missing.txt", "--r", "3"], 3),
        (&["verify", "g.txt"], 3),
        (&["power", "g.txt", "--r", "0"], 3),
        (&["convergence", "Gm", "--r", "6", "--m", "1..3"], 3),
        (&["gen", "cayley", "--p", "15", "--a", "1"], 3),
        (&["gen", "random", "--n", "7", "--d", "3"], 3),
    ];
    for (args, expected) in cases {
        let out = powergraph(args, p);
        assert_eq!(code(&out), *expected, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn parse_errors_report_line_numbers() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.txt"), "n=3 loops=0\n# comment\n0 1\n1 x\n").unwrap();
    let out = powergraph(&["power", "bad.txt", "--r", "2"], dir.path());
    let err = stderr(&out);
    assert!(err.contains("bad.txt: line 4:"), "{err}");
}

#[test]
fn claims_report_lines() {
    let dir = TempDir::new().unwrap();
    powergraph(&["gen", "Hm", "--r", "6", "--m", "1", "-o", "h.txt"], dir.path());
    let h = fs::read_to_string(dir.path().join("h.txt")).unwrap();
    fs::write(dir.path().join("hl.txt"), with_loops(&h)).unwrap();
    let out = powergraph(&["claims", "hl.txt", "--r", "6"], dir.path());
    let text = stdout(&out);
    let ids: Vec<&str> = text.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(ids, ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"]);
    assert!(text.contains("C4 vacuous\n"));

    let out = powergraph(&["claims", "h.txt", "--r", "6"], dir.path());
    assert!(stdout(&out).starts_with("inapplicable reason="));
}

#[test]
fn convergence_gaps_decrease() {
    let dir = TempDir::new().unwrap();
    let out = powergraph(&["convergence", "Hm", "--r", "6", "--m", "1..5"], dir.path());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m\torder\tratio\tbound\tgap\taudit"));
    let gaps: Vec<f64> = lines
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            assert_eq!(cols[5], "PASS");
            let (p, q) = cols[4].split_once('/').unwrap();
            p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()
        })
        .collect();
    assert_eq!(gaps.len(), 5);
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert!(gaps.iter().all(|&g| g > 0.0));
}

#[test]
fn scan_is_deterministic_and_clean() {
    let dir = TempDir::new().unwrap();
    let args = ["scan", "--n", "24", "--d", "4", "--r", "5", "--trials", "50", "--seed", "7"];
    let first = powergraph(&args, dir.path());
    assert_eq!(code(&first), 0);
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    for (i, line) in lines[..50].iter().enumerate() {
        assert!(line.starts_with(&format!("trial={i} ")), "{line}");
        assert!(!line.contains("violation"), "{line}");
    }
    assert!(lines[50].starts_with("violations=0 "));

    let second = powergraph(&args, dir.path());
    assert_eq!(stdout(&second), text);
}
