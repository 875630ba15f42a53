// Golden and agreement tests for the `homdual` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use homdual::text::{parse_structure, parse_structures, serialize_structure};
use homdual_core::duality::{dual_set, tree_bounds};
use homdual_core::fixtures::{oriented_path, path, tournament};
use homdual_core::hom::{core_of, count_homs, find_hom, hom_exists, is_isomorphic};
use homdual_core::Structure;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_homdual"));
    c.env_remove("HOMDUAL_ENUM_CEILING");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn put(dir: &Path, name: &str, s: &Structure) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serialize_structure(s)).unwrap();
    p
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    put(dir.path(), "P2.st", &path(2));
    put(dir.path(), "P3.st", &path(3));
    put(dir.path(), "T2.st", &tournament(2));
    put(dir.path(), "T3.st", &tournament(3));
    dir
}

#[test]
fn path_does_not_map_to_shorter_tournament() {
    let dir = setup();
    let o = run(dir.path(), &["hom", "P2.st", "T2.st"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "hom: no\n");
}

#[test]
fn witness_and_count_agree_with_library() {
    let dir = setup();
    let o = run(dir.path(), &["--format", "manifest", "hom", "P2.st", "T3.st", "--witness", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    let (a, b) = (path(2), tournament(3));
    let m = find_hom(&a, &b).unwrap().unwrap();
    let expected: Vec<String> = m.iter().enumerate().map(|(v, w)| format!("{v}->{w}")).collect();
    let out = stdout(&o);
    assert!(out.contains(&format!("witness: {}\n", expected.join(" "))), "{out}");
    assert!(out.contains(&format!("count: {}\n", count_homs(&a, &b, u64::MAX).unwrap())));
}

#[test]
fn dual_of_path_is_tournament() {
    let dir = setup();
    let o = run(dir.path(), &["dual-tree", "P2.st"]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(dir.path().join("out.st"), o.stdout).unwrap();
    let o = run(dir.path(), &["iso", "out.st", "T2.st"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn dual_tree_methods_agree() {
    let dir = setup();
    put(dir.path(), "F.st", &homdual_core::algebra::sum(&[path(3), path(1)]).unwrap());
    let mut outs = Vec::new();
    for m in ["bear", "mosquito", "animal:bear", "animal:mosquito"] {
        let o = run(dir.path(), &["dual-tree", "F.st", "--method", m]);
        assert_eq!(o.status.code(), Some(0), "{m}: {}", stderr(&o));
        outs.push(parse_structure(&stdout(&o)).unwrap());
    }
    for d in &outs[1..] {
        assert!(is_isomorphic(d, &outs[0]).unwrap());
    }
}

#[test]
fn bounds_golden() {
    let o = bin().args(["bounds", "--type", "2", "-d", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "t=4 m=2\n");
    let b = tree_bounds(&homdual_core::Signature::new(vec![2]).unwrap(), 1);
    assert_eq!(b.t().unwrap().to_string(), "4");
}

#[test]
fn guard_trip_exits_three() {
    let o = bin().env("HOMDUAL_ENUM_CEILING", "10").args(["enumerate", "--type", "2", "-n", "3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("guard: enumeration-ceiling"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn enumerate_counts_classes() {
    let o = bin().args(["--format", "manifest", "enumerate", "--type", "2", "-n", "3", "--iso"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("count: 116\n"));
    let body = out.split_once("\n\n").unwrap().1;
    assert_eq!(parse_structures(body).unwrap().len(), 116);
}

#[test]
fn mac_manifest() {
    let dir = setup();
    let o = run(dir.path(), &["--format", "manifest", "mac", "P3.st", "T3.st", "--oracle", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("mac: yes\n"));
    assert!(out.contains("oracle: n=3 pass\n"));
    let o = run(dir.path(), &["mac", "P2.st", "T2.st"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mac: no\n"));
}

#[test]
fn dual_set_directory_matches_library() {
    let dir = setup();
    assert_eq!(run(dir.path(), &["dual-set", "P2.st", "P3.st"]).status.code(), Some(2));
    let (a, b) = (oriented_path("+++-+-++").unwrap(), oriented_path("++-++-++").unwrap());
    put(dir.path(), "A.st", &a);
    put(dir.path(), "B.st", &b);
    let o = run(dir.path(), &["dual-set", "A.st", "B.st", "--out-dir", "dd"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (f, d) = homdual::manifest::read_duality(&dir.path().join("dd")).unwrap();
    let fd = dual_set(&[a, b]).unwrap();
    assert_eq!(f, fd.forbidden);
    assert_eq!(d.len(), fd.dual.len());
    for (x, y) in d.iter().zip(&fd.dual) {
        assert!(is_isomorphic(x, y).unwrap());
    }
}

#[test]
fn check_duality() {
    let dir = setup();
    let o = run(dir.path(), &["check-duality", "--forbidden", "P2.st", "--dual", "T2.st", "--oracle", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(dir.path(), &["check-duality", "--forbidden", "P2.st", "--dual", "T3.st", "--oracle", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("oracle: n=3 fail"));
}

#[test]
fn core_output_is_core_of_input() {
    let dir = setup();
    let sum = homdual_core::algebra::sum(&[path(3), tournament(3)]).unwrap();
    put(dir.path(), "S.st", &sum);
    let o = run(dir.path(), &["core", "S.st"]);
    assert_eq!(o.status.code(), Some(0));
    let c = parse_structure(&stdout(&o)).unwrap();
    assert!(is_isomorphic(&c, &core_of(&sum)).unwrap());
}

#[test]
fn structure_verbs_agree_with_library() {
    let dir = setup();
    let o = run(dir.path(), &["product", "P3.st", "T3.st"]);
    let p = parse_structure(&stdout(&o)).unwrap();
    assert!(is_isomorphic(&p, &homdual_core::algebra::product(&[path(3), tournament(3)]).unwrap()).unwrap());
    let o = run(dir.path(), &["power", "T2.st", "P2.st"]);
    let e = parse_structure(&stdout(&o)).unwrap();
    assert!(is_isomorphic(&e, &homdual_core::algebra::exponential(&tournament(2), &path(2)).unwrap()).unwrap());
}

#[test]
fn gcsp_modes() {
    let dir = setup();
    assert_eq!(run(dir.path(), &["gcsp", "--duals", "T3.st", "P2.st"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["gcsp", "--duals", "T2.st", "P2.st"]).status.code(), Some(1));
    // P3 is forbidden, so its dual T3 accepts exactly the inputs avoiding P3
    assert_eq!(run(dir.path(), &["gcsp", "--forbidden", "P3.st", "T3.st"]).status.code(), Some(0));
    let o = run(dir.path(), &["gcsp", "--forbidden", "P2.st", "T3.st"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("obstruction: P2.st"));
    assert!(!hom_exists(&tournament(3), &tournament(2)).unwrap());
}

#[test]
fn three_sat() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("sat.cnf"), "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n").unwrap();
    let o = run(dir.path(), &["encode-3sat", "sat.cnf", "--solve"]);
    assert_eq!(o.status.code(), Some(0));
    // every clause over one variable: x and not x, in every polarity
    let mut unsat = String::from("p cnf 1 8\n");
    for mask in 0..8 {
        let lits: Vec<String> = (0..3).map(|b| if mask >> b & 1 == 1 { "1" } else { "-1" }.to_string()).collect();
        unsat.push_str(&format!("{} 0\n", lits.join(" ")));
    }
    fs::write(dir.path().join("unsat.cnf"), unsat).unwrap();
    let o = run(dir.path(), &["encode-3sat", "unsat.cnf", "--solve"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn lattice_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["lattice", "fixture", "subsets", "2"]);
    fs::write(dir.path().join("b2.lat"), o.stdout).unwrap();
    let o = run(dir.path(), &["lattice", "transversal", "b2.lat", "{0,1}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dual: {0} {1}\n"));
    let o = run(dir.path(), &["lattice", "gaps", "b2.lat"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(dir.path(), &["lattice", "fixture", "n5"]);
    fs::write(dir.path().join("n5.lat"), o.stdout).unwrap();
    let o = run(dir.path(), &["lattice", "check", "n5.lat"]);
    assert!(stdout(&o).contains("heyting: no\n"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.st"), "type: 2\nvertices: a b\nrel 0: (a,b,a)\n").unwrap();
    let o = run(dir.path(), &["core", "bad.st"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: parse: "), "{}", stderr(&o));
    assert!(stderr(&o).contains("line 3, column 8"), "{}", stderr(&o));
    let o = run(dir.path(), &["core", "missing.st"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: io: "));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["fixture", "path"]).status.code(), Some(2));
}
