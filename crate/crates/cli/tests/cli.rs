use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_torsionlab"));
    c.env_remove("TORSIONLAB_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn last_stderr_line(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap().lines().last().unwrap_or("").to_string()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn number(v: &serde_json::Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn compute_figure_eight_is_symmetric() {
    let first = json(&run(&["compute", "--knot", "4_1", "--s", "0.3,0.1"]));
    let u = format!("{},{}", number(&first["u"][0]), number(&first["u"][1]));
    let doc = json(&run(&["compute", "--knot", "4_1", "--s", "0.3,0.1", "--u", &u]));
    assert!(doc["span"].as_i64().unwrap() <= 2);
    let coeffs = doc["coeffs"].as_object().unwrap();
    for (k, v) in coeffs {
        let mirror = &coeffs[&(-k.parse::<i64>().unwrap()).to_string()];
        for j in 0..2 {
            assert!((number(&v[j]) - number(&mirror[j])).abs() < 1e-12);
        }
    }
    assert!((number(&doc["c"][0]) - 1.0).abs() < 1e-9);
}

#[test]
fn invalid_fraction_exits_2() {
    let o = run(&["compute", "--knot", "2bridge:4/1", "--s", "0.3,0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(last_stderr_line(&o), "error: InvalidFraction");
}

#[test]
fn trivial_representation_gives_alexander_data() {
    let doc = json(&run(&["compute", "--knot", "3_1", "--rep", "trivial"]));
    assert_eq!(doc["value"], "(1-t+t^2) / (-1+t)");
    assert_eq!(doc["numerator"]["2"], "1");
}

#[test]
fn fibered_test_and_genus_bound() {
    let o = run(&["fibered-test", "--knot", "4_1", "--samples", "50"]);
    assert!(stdout(&o).lines().any(|l| l == "consistent_with_fibered: true"));
    let o = run(&["fibered-test", "--knot", "5_2", "--samples", "10"]);
    assert!(stdout(&o).lines().any(|l| l == "consistent_with_fibered: false"));
    let o = run(&["genus-bound", "--knot", "6_2", "--samples", "20"]);
    assert!(stdout(&o).lines().any(|l| l == "genus_bound: 2"));
}

#[test]
fn torsion_of_raw_complexes() {
    let o = run(&["torsion", "--complex", fixture("two_term_doubling.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), "1/2\n");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"degrees":[2,1,0],"boundaries":[[["1"]],[["1"]]]}"#).unwrap();
    let o = run(&["torsion", "--complex", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(last_stderr_line(&o), "error: NotAComplex");
}

#[test]
fn scan_isolates_degenerate_points() {
    let o = run(&["scan", "--knot", "4_1", "--s", "0.6,0.8", "--s", "0,0", "--s", "-0.3,1.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "index,s_re,s_im,u_re,u_im,I_mer_re,I_mer_im,I_ab_re,I_ab_im,span,c_re,c_im,status"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 13));
    let degenerate: Vec<_> = rows.iter().filter(|r| r[0] == "1").collect();
    assert_eq!(degenerate.len(), 1);
    assert_eq!(degenerate[0][12], "DegenerateParameter");
    assert!(rows.iter().filter(|r| r[0] != "1").all(|r| r[12] == "ok" && r[9] == "2"));
}

#[test]
fn ideal_limit_from_seed_file_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let first = json(&run(&["compute", "--knot", "4_1", "--s", "0.8,0.6"]));
    let seed = dir.path().join("seed.json");
    let seed_doc = serde_json::json!({ "s": first["s"], "u": first["u"] });
    std::fs::write(&seed, seed_doc.to_string()).unwrap();
    let (out, csv, plot) = (dir.path().join("run.json"), dir.path().join("run.csv"), dir.path().join("run.dat"));
    let o = run(&[
        "ideal-limit",
        "--knot",
        "4_1",
        "--seed-file",
        seed.to_str().unwrap(),
        "--steps",
        "24",
        "--out",
        out.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let run: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(run["verdict"], "BOUNDED");
    assert_eq!(run["steps"].as_array().unwrap().len(), 25);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 26);
    assert_eq!(std::fs::read_to_string(&plot).unwrap().lines().count(), 26);
}

#[test]
fn input_errors_name_the_failure() {
    let o = bin().args(["compute", "--knot", "3_1", "--s", "0.5,0.5"]).env("TORSIONLAB_PRECISION", "20").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(last_stderr_line(&o), "error: InvalidPrecision");

    let o = run(&["compute", "--knot", "3_1", "--s", "0.5,0.5", "--u", "1,1"]);
    assert_eq!(last_stderr_line(&o), "error: OffCurve");

    let o = run(&["compute", "--knot", "3_1", "--s", "0.5,0.5", "--branch", "7"]);
    assert_eq!(last_stderr_line(&o), "error: NoSuchBranch");

    let o = run(&["compute", "--knot", "3_1", "--s", "0,0"]);
    assert_eq!(last_stderr_line(&o), "error: DegenerateParameter");

    let o = run(&["compute", "--knot", "9_99", "--s", "0.5,0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(last_stderr_line(&o), "error: UnknownKnot");

    let o = run(&["ideal-limit", "--knot", "5_2", "--s", "0.8,0.6", "--ratio", "1"]);
    assert_eq!(last_stderr_line(&o), "error: InvalidSchedule");

    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(last_stderr_line(&o), "error: UsageError");
}

#[test]
fn precision_flag_is_respected() {
    let doc = json(&bin().args(["compute", "--knot", "5_2", "--s", "0.7,0.4"]).env("TORSIONLAB_PRECISION", "512").output().unwrap());
    assert!(doc["precision"].as_u64().unwrap() >= 512);
    let doc = json(&run(&["--precision", "128", "compute", "--knot", "5_2", "--s", "0.7,0.4"]));
    assert!(doc["precision"].as_u64().unwrap() >= 128);
}
