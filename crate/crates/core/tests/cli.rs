use std::path::{Path, PathBuf};
use std::process::Command;

use semiglue::cli::file::SemigroupFile;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(data("golden").join(name)).unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semiglue"))
        .current_dir(data(""))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    assert!(stderr.is_empty());
    stdout
}

#[test]
fn analyze_reports_match_golden() {
    assert_eq!(ok(&["analyze", "thoma.sg"]), golden("thoma_analyze.txt"));
    assert_eq!(
        ok(&["analyze", "four_six_nine.sg"]),
        golden("four_six_nine_analyze.txt")
    );
}

#[test]
fn reports_are_stable_across_runs_and_seeds() {
    let first = ok(&["present", "thoma.sg"]);
    assert_eq!(first, ok(&["present", "thoma.sg"]));
    let seeded = ok(&["present", "thoma.sg", "--seed", "99"]);
    assert_eq!(seeded.lines().count(), first.lines().count());
}

#[test]
fn free_plane_has_empty_presentation() {
    let out = ok(&["analyze", "free_plane.sg"]);
    assert!(out.contains("Betti degrees: 0\n"));
    assert!(out.contains("minimal presentation: 0\n"));
    assert!(out.contains("complete intersection: yes\n"));
}

#[test]
fn indispensables_and_betti() {
    let out = ok(&["indispensable", "thoma.sg"]);
    assert!(out.starts_with("indispensable binomials: 4\n"));
    let out = ok(&["betti", "four_six_nine.sg"]);
    assert_eq!(
        out,
        "Betti degrees: 2\n  12  fiber 2  components 2\n  18  fiber 3  components 2\n"
    );
    let dot = ok(&["betti", "four_six_nine.sg", "--format", "dot"]);
    assert!(dot.starts_with("graph betti {") && dot.contains("label=\"C_18\""));
}

#[test]
fn is_glued_and_gluings() {
    assert_eq!(
        ok(&["is-glued", "thoma.sg", "--split", "halves"]),
        golden("thoma_is_glued.txt")
    );
    assert_eq!(
        ok(&["is-glued", "thoma.sg", "--split", "1-4|5-8"]),
        golden("thoma_is_glued.txt")
    );
    // the file's only split is the default
    assert_eq!(ok(&["is-glued", "thoma.sg"]), golden("thoma_is_glued.txt"));

    let (code, out, _) = run(&["is-glued", "thoma.sg", "--split", "1|2-8"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("NOT GLUED: "), "{out}");

    assert_eq!(
        ok(&["gluings", "four_six_nine.sg"]),
        golden("four_six_nine_gluings.txt")
    );
    let (code, out, _) = run(&["gluings", "three_five_seven.sg"]);
    assert_eq!((code, out.as_str()), (1, "NO GLUING SPLITS\n"));
}

#[test]
fn export_dot() {
    assert_eq!(
        ok(&["export-dot", "thoma.sg", "--degree", "(13,13)", "--format", "dot"]),
        golden("thoma_13_13.dot")
    );
    let dot = ok(&["export-dot", "thoma.sg", "--degree", "(15,24)", "--format", "dot"]);
    assert_eq!(dot.matches("[label=").count(), 4);
    assert!(dot.contains("\"x3*y1*y4\"") && dot.contains("\"x3*y2*y3\""));
    let single = ok(&["export-dot", "four_six_nine.sg", "--degree", "4", "--format", "dot"]);
    assert_eq!(single.matches("[label=").count(), 1);
    assert!(!single.contains(" -- "));
    let text = ok(&["export-dot", "four_six_nine.sg", "--degree", "18"]);
    assert!(text.starts_with("C_18: 3 members, 2 components\n"));
}

#[test]
fn glue_writes_file_with_verification() {
    let out = ok(&[
        "glue",
        "skew_plane.sg",
        "three_five_seven.sg",
        "--gamma-x",
        "2,0,2,0",
        "--gamma-y",
        "1,2,1",
    ]);
    assert_eq!(out, golden("torsion_glue.sg"));
    let file = SemigroupFile::parse(&out).unwrap();
    assert_eq!(file.torsion, vec![4.into()]);
    assert_eq!(file.free_rank, 2);
    assert!(out.contains("# glued: yes\n") && out.contains("# minimal: yes\n") && out.contains("# affine: no\n"));
    // parse, serialize and compare ignoring the trailer
    let mut back = file.clone();
    back.trailer.clear();
    assert_eq!(SemigroupFile::parse(&back.to_string()).unwrap(), back);
}

#[test]
fn glue_to_output_file() {
    let dir = std::env::temp_dir().join(format!("semiglue-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("glued.sg");
    let out = ok(&[
        "glue",
        "three_five.sg",
        "two_seven.sg",
        "--gamma-x",
        "1,0",
        "--gamma-y",
        "2,0",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert!(out.contains("minimal: no\n"));
    let written = std::fs::read_to_string(&target).unwrap();
    let mut gens: Vec<i64> = SemigroupFile::parse(&written)
        .unwrap()
        .generators
        .iter()
        .map(|(_, f)| i64::try_from(&f[0]).unwrap().abs())
        .collect();
    gens.sort();
    assert_eq!(gens, vec![6, 12, 20, 21]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn glue_affine_reports_gamma() {
    let out = ok(&["glue-affine", "skew_plane.sg", "three_five_seven.sg"]);
    assert!(out.contains("# gamma_x: ") && out.contains("# gamma_y: "));
    assert!(out.contains("# affine: yes\n") && out.contains("# glued: yes\n"));
    assert!(out.contains("torsion:\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).0;
    assert_eq!(code(&["analyze", "malformed.sg"]), 2);
    assert_eq!(code(&["analyze", "missing.sg"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["analyze", "not_reduced.sg"]), 3);
    assert_eq!(code(&["is-glued", "thoma.sg", "--split", "1-4|4-8"]), 4);
    assert_eq!(code(&["is-glued", "three_five_seven.sg"]), 4);
    assert_eq!(code(&["is-glued", "redundant.sg", "--split", "1|2-4"]), 5);
    assert_eq!(
        code(&[
            "glue",
            "not_reduced.sg",
            "two_seven.sg",
            "--gamma-x",
            "1,1",
            "--gamma-y",
            "1,1"
        ]),
        5
    );
    assert_eq!(
        code(&[
            "glue",
            "redundant.sg",
            "two_seven.sg",
            "--gamma-x",
            "1,0,0,1",
            "--gamma-y",
            "2,0"
        ]),
        5
    );
    assert_eq!(
        code(&["glue-affine", "skew_plane.sg", "three_five_seven.sg", "--budget", "0"]),
        6
    );
    assert_eq!(code(&["export-dot", "thoma.sg", "--degree", "(1,1)"]), 7);
    assert_eq!(code(&["export-dot", "thoma.sg", "--degree", "(1,x)"]), 2);
}

#[test]
fn errors_go_to_stderr() {
    let (_, stdout, stderr) = run(&["analyze", "malformed.sg"]);
    assert!(stdout.is_empty());
    assert!(stderr.contains("line 3"), "{stderr}");
}
