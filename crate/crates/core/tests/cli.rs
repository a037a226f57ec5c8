use std::io::Write;
use std::process::{Command, Output, Stdio};

fn asmposet(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_asmposet"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = asmposet(args, "");
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], stdin: &str) -> i32 {
    asmposet(args, stdin).status.code().unwrap()
}

fn lines(s: &str) -> Vec<&str> {
    s.lines().collect()
}

#[test]
fn alt_list() {
    let four = ok(&["alt-list", "4"]);
    assert_eq!(
        lines(&four),
        ["000+", "00+0", "0+-+", "0+00", "+-0+", "+-+0", "+0-+", "+000"]
    );
    assert_eq!(ok(&["alt-list", "1"]), "+\n");
    assert_eq!(lines(&ok(&["alt-list", "6"])).len(), 32);
    assert_eq!(
        lines(&ok(&["alt-list", "2", "--format", "numeric"])),
        ["0 1", "1 0"]
    );
    assert_eq!(
        lines(&ok(&["alt-list", "2", "--format", "json"])),
        ["[0,1]", "[1,0]"]
    );
    assert_eq!(code(&["alt-list", "0"], ""), 2);
    assert_eq!(code(&["alt-list", "25"], ""), 2);
    assert_eq!(code(&["alt-list", "3", "--format", "dot"], ""), 2);
}

#[test]
fn chains() {
    assert_eq!(ok(&["chains", "count", "4"]), "42\n");
    assert_eq!(ok(&["chains", "count", "1"]), "1\n");
    let two = ok(&["chains", "enumerate", "2"]);
    assert_eq!(
        lines(&two),
        [
            r#"{"n":2,"vertices":["00","01","11"]}"#,
            r#"{"n":2,"vertices":["00","10","11"]}"#
        ]
    );
    assert_eq!(lines(&ok(&["chains", "enumerate", "5"])).len(), 429);
    assert_eq!(code(&["chains", "enumerate", "7"], ""), 2);
    assert_eq!(code(&["chains", "count", "21"], ""), 2);
    assert_eq!(code(&["chains", "frobnicate", "3"], ""), 2);
}

#[test]
fn forced_enumeration_streams() {
    let out = asmposet(
        &["chains", "enumerate", "7", "--force", "--format", "text"],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 218348);
    assert_eq!(
        text.lines().next(),
        Some("0000000 0000001 0000011 0000111 0001111 0011111 0111111 1111111")
    );
}

#[test]
fn asm_commands() {
    let odd = "0 1 0\n1 -1 1\n0 1 0\n";
    assert_eq!(code(&["asm", "validate", "-"], odd), 0);
    assert_eq!(code(&["asm", "validate"], "1 1\n0 0\n"), 1);
    let bad = asmposet(&["asm", "validate"], "1 1\n0 0\n");
    assert!(String::from_utf8_lossy(&bad.stderr).contains("row 1 is not alternating"));

    let mut by_chains = lines(&ok(&["asm", "enumerate", "3", "--method", "chains"]))
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    let mut exhaustive = lines(&ok(&["asm", "enumerate", "3", "--method", "exhaustive"]))
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    assert_eq!(by_chains.len(), 7);
    by_chains.sort();
    exhaustive.sort();
    assert_eq!(by_chains, exhaustive);
    assert_eq!(
        lines(&ok(&["asm", "enumerate", "4", "--method", "backtrack"])).len(),
        42
    );
    assert_eq!(
        code(&["asm", "enumerate", "4", "--method", "exhaustive"], ""),
        2
    );

    let text = ok(&["asm", "enumerate", "2", "--format", "text"]);
    assert_eq!(text, "0 1\n1 0\n\n1 0\n0 1\n");

    let out = asmposet(
        &["asm", "to-chain", "--format", "text"],
        "1 0 0\n0 1 0\n0 0 1\n",
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "000 100 110 111\n");
    let out = asmposet(&["asm", "to-chain"], odd);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"n\":3,\"vertices\":[\"000\",\"010\",\"101\",\"111\"]}\n"
    );
    assert_eq!(code(&["asm", "to-chain"], "1 1\n0 0\n"), 1);
    assert_eq!(code(&["asm", "validate", "/nonexistent/matrix.txt"], ""), 1);
}

#[test]
fn chain_to_asm_round_trip() {
    let out = asmposet(&["chain-to-asm"], "000 010 101 111");
    assert_eq!(out.status.code(), Some(0));
    let matrix = String::from_utf8(out.stdout).unwrap();
    assert_eq!(matrix, "0 1 0\n1 -1 1\n0 1 0\n");
    let back = asmposet(&["asm", "to-chain", "--format", "text"], &matrix);
    assert_eq!(String::from_utf8(back.stdout).unwrap(), "000 010 101 111\n");

    let json = asmposet(
        &["chain-to-asm"],
        r#"{"n":3,"vertices":["000","010","101","111"]}"#,
    );
    assert_eq!(String::from_utf8(json.stdout).unwrap(), matrix);

    assert_eq!(
        String::from_utf8(asmposet(&["chain-to-asm"], "0 1").stdout).unwrap(),
        "1\n"
    );

    let short = asmposet(&["chain-to-asm"], "000 110 111");
    assert_eq!(short.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&short.stderr).contains("has 4 vertices, got 3"));
    let bad = asmposet(&["chain-to-asm"], "000 011 101 111");
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("vertex 1 does not cover vertex 0"));
    assert_eq!(code(&["chain-to-asm"], "000 010 110 101"), 1);
}

#[test]
fn hasse_export() {
    assert_eq!(lines(&ok(&["hasse", "3"])).len(), 13);
    assert_eq!(lines(&ok(&["hasse", "2"])).len(), 4);
    assert_eq!(ok(&["hasse", "1"]), "0 1\n");
    assert!(ok(&["hasse", "3"]).contains("010 101\n"));
    assert_eq!(ok(&["hasse-export", "2"]), ok(&["hasse", "2"]));
    assert_eq!(
        ok(&["hasse", "2", "--format", "dot"]),
        "graph hasse {\n  rankdir=BT;\n  { rank=same; \"00\"; }\n  { rank=same; \"01\"; \"10\"; }\n  { rank=same; \"11\"; }\n  \"00\" -- \"01\";\n  \"00\" -- \"10\";\n  \"01\" -- \"11\";\n  \"10\" -- \"11\";\n}\n"
    );
    assert_eq!(
        ok(&["hasse", "1", "--format", "json"]),
        "{\"edges\":[[\"0\",\"1\"]],\"n\":1,\"vertices\":[\"0\",\"1\"]}\n"
    );
    assert_eq!(code(&["hasse", "15"], ""), 2);
    assert_eq!(code(&["hasse", "3", "--format", "svg"], ""), 2);
}

#[test]
fn symmetry_commands() {
    let five = ok(&["sym", "theta-cycles", "5"]);
    let mut sizes: Vec<usize> = five.lines().map(|l| l.split(" -> ").count() - 1).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 10, 10, 10]);
    assert_eq!(
        ok(&["sym", "theta-cycles", "2", "--format", "tuple"]),
        "(0,0) -> (1,0) -> (1,1) -> (0,1) -> (0,0)\n"
    );
    assert_eq!(
        ok(&["sym", "orbits", "3"]),
        "000 001 011 100 110 111\n010 101\n"
    );
    assert_eq!(
        ok(&[
            "sym",
            "orbits",
            "1",
            "--gen",
            "theta,tau",
            "--format",
            "json"
        ]),
        "{\"orbits\":[[\"0\",\"1\"]]}\n"
    );
    assert_eq!(code(&["sym", "orbits", "3", "--gen", "xi"], ""), 2);
    assert_eq!(
        ok(&["sym", "check", "1"]),
        "theta: automorphism\ntau: automorphism\nrealized group order: 2\n"
    );
    assert!(ok(&["sym", "check", "4"]).ends_with("realized group order: 16\n"));
    assert_eq!(code(&["sym", "check", "11"], ""), 2);
    assert_eq!(code(&["sym", "theta-cycles", "13"], ""), 2);
}

#[test]
fn verify_command() {
    let four = ok(&["verify", "4"]);
    assert!(four.contains("count(4)=42 == oracle"));
    assert!(four.contains("23/23 checks passed"));
    assert!(!four.contains("FAIL"));
    assert_eq!(ok(&["verify", "1", "--quiet"]), "23/23 checks passed\n");

    let mutated = asmposet(&["verify", "1", "--inject-fault"], "");
    assert_eq!(mutated.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&mutated.stderr);
    assert!(
        stderr.contains("alt.prefix_vs_pattern failed: n=1"),
        "{stderr}"
    );
    assert!(String::from_utf8_lossy(&mutated.stdout).contains("FAIL"));
    assert_eq!(code(&["verify", "13"], ""), 2);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["chains", "enumerate", "5"][..],
        &["hasse", "6", "--format", "dot"],
        &["sym", "orbits", "6", "--gen", "theta,tau"],
        &["chains", "count", "16"],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(code(&[], ""), 2);
    assert_eq!(code(&["chains", "count", "four"], ""), 2);
    assert_eq!(code(&["--help"], ""), 0);
}
