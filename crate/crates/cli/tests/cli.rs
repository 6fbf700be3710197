//! End-to-end checks of the spec format, the commands and the binary's exit codes.

use std::path::PathBuf;
use std::process::Command;

use towerlab_cli::{
    cmd_build, cmd_census, cmd_classify, cmd_count, cmd_genus, cmd_subext, load_spec, parse_grid, parse_spec,
    Format, SpecFileError,
};

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_towerlab")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn parse_errors_carry_positions() {
    let bad = "p = 2\nq = 2\nn = 2\n\n[[steps]]\nkind = \"artin_schreier\"\nrhs_num = \"{3:x}\"\n";
    match parse_spec(bad) {
        Err(SpecFileError::Parse { line, col, .. }) => {
            assert_eq!(line, 7);
            assert!(col > 11, "column {col} should point inside the string");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    match parse_spec("p = 2\nq = [\n") {
        Err(SpecFileError::Parse { line, .. }) => assert!(line >= 2),
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(matches!(parse_spec("family = \"C\"\np = 2\nn = 2\nm = 1\n"), Err(SpecFileError::Parse { .. })));
    assert!(matches!(parse_spec("p = 4\nq = 4\nn = 2\nalpha = 1\n"), Err(SpecFileError::Parse { .. })));
}

#[test]
fn every_sample_spec_loads() {
    for name in [
        "family_a_q4.spec",
        "family_b_q9.spec",
        "abelian_f27.spec",
        "elliptic_f4.spec",
        "kummer_f125.spec",
        "subext_f8.spec",
    ] {
        let s = load_spec(&spec_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!s.tower.listed_steps().is_empty(), "{name}");
    }
}

#[test]
fn family_a_commands() {
    let s = load_spec(&spec_path("family_a_q4.spec")).unwrap();
    assert!(cmd_build(&s, 3).unwrap().ends_with("3 steps validated (tier: valuation witness)\n"));
    let csv = cmd_count(&s, 4, Format::Csv).unwrap();
    let totals: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(totals, ["5", "9", "15", "33"]);
    let classes = cmd_classify(&s, 2, Format::Csv).unwrap();
    assert_eq!(classes.lines().next().unwrap(), "place,class,predicted,enumerated,method");
    assert_eq!(classes.lines().count(), 1 + 5);
    assert_eq!(classes.lines().filter(|l| l.contains("Split 3")).count(), 2);
    assert!(classes.contains("P_inf,Split 3,3,3,local engine"));
    assert!(matches!(cmd_classify(&s, 1, Format::Csv), Err(e) if e.exit_code() == 1));
    let genus = cmd_genus(&s, 3, Format::Csv).unwrap();
    assert_eq!(genus, "level,kind,genus\n1,exact,0\n2,exact,1\n3,bound,8\n");
    assert!(cmd_genus(&s, 3, Format::Text).unwrap().contains("degDiff"));
}

#[test]
fn subext_is_seed_dependent_but_always_composes() {
    let s = load_spec(&spec_path("subext_f8.spec")).unwrap();
    let mut bases = std::collections::BTreeSet::new();
    for seed in 0..8 {
        let out = cmd_subext(&s, Some(seed)).unwrap();
        assert!(out.contains("composition: x^4 + x^2 + x"));
        assert!(out.contains("equals lhs: true"));
        assert_eq!(out.lines().filter(|l| l.starts_with("step ")).count(), 2);
        bases.insert(out.lines().next().unwrap().to_string());
    }
    assert!(bases.len() > 1);
    assert_eq!(cmd_subext(&s, None).unwrap(), cmd_subext(&s, None).unwrap());
    let kummer = load_spec(&spec_path("family_a_q4.spec")).unwrap();
    assert!(cmd_subext(&kummer, None).is_err());
}

#[test]
fn census_flags_optimal_rows() {
    let grid = parse_grid(
        "depth = 3\n[[points]]\nfamily = \"A\"\np = [2]\nn = [2, 3]\nm = [1]\n\
         [[points]]\nfamily = \"A\"\np = [2]\nn = [2]\nm = [2]\n",
    )
    .unwrap();
    let csv = cmd_census(&grid, 1, Format::Csv).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    let q4 = rows.iter().find(|r| r[1] == "2" && r[2] == "2" && r[3] == "1").unwrap();
    assert_eq!(&q4[7..10], ["5", "9", "15"]);
    assert_eq!(q4[12], "true");
    let q8 = rows.iter().find(|r| r[2] == "3").unwrap();
    assert_eq!(q8[12], "false");
    let skipped = rows.iter().find(|r| r[3] == "2").unwrap();
    assert!(skipped.last().unwrap().starts_with("skipped"));
    assert_eq!(csv, cmd_census(&grid, 1, Format::Csv).unwrap());
}

#[test]
fn binary_exit_codes() {
    let fa = spec_path("family_a_q4.spec");
    let fa = fa.to_str().unwrap();
    let (code, out, _) = run(&["--spec", fa, "count", "--depth", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);

    let (code, _, err) = run(&["--spec", spec_path("abelian_f27.spec").to_str().unwrap(), "build", "--depth", "2"]);
    assert_eq!(code, 2, "{err}");

    let dir = std::env::temp_dir().join(format!("towerlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let big = dir.join("big.spec");
    std::fs::write(&big, "family = \"A\"\np = 2\nn = 11\nm = 1\n").unwrap();
    let (code, _, err) = run(&["--spec", big.to_str().unwrap(), "count", "--depth", "2"]);
    assert_eq!(code, 3, "{err}");

    let bad = dir.join("bad.spec");
    std::fs::write(&bad, "p = 2\nq = 2\nn = 2\n[[steps]]\nkind = \"kummer\"\nk = 3\nrhs_num = \"[1,\"\n").unwrap();
    let (code, _, err) = run(&["--spec", bad.to_str().unwrap(), "build"]);
    assert_eq!(code, 4);
    assert!(err.contains("line 7"), "{err}");

    let out_file = dir.join("count.csv");
    let (code, out, _) = run(&["--spec", fa, "--out", out_file.to_str().unwrap(), "count", "--depth", "2"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&out_file).unwrap().starts_with("j,N_affine"));
    std::fs::remove_dir_all(&dir).unwrap();
}
