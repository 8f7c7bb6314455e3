use std::path::PathBuf;
use std::process::Command;

use parahoric::io;
use parahoric::{RootSystem, TruncatedLaurentMatrix};
use parahoric_cli::{run, Output};
use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn data(name: &str) -> String {
    format!("@{}", dir("data").join(name).display())
}

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("parahoric").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    io::parse(&ok(&full)).unwrap()
}

fn scratch(name: &str, v: &Value) -> String {
    let path = std::env::temp_dir().join(format!("parahoric-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, io::to_pretty(v)).unwrap();
    format!("@{}", path.display())
}

#[test]
fn golden_tables() {
    let cases: [(&str, &[&str]); 7] = [
        ("a2_theta1", &["mvals", "A2", "--theta", "1/3,0"]),
        ("a2_theta2", &["mvals", "A2", "--theta", "0,1/3"]),
        ("a2_m", &["mvals", "A2", "--theta", "1/3,0", "--theta", "0,1/3"]),
        ("b2_m", &["mvals", "B2", "--theta", "1/3,0", "--theta", "0,1/6"]),
        ("g2_theta1", &["mvals", "G2", "--theta", "1/9,0"]),
        ("g2_theta2", &["mvals", "G2", "--theta", "0,1/6"]),
        ("g2_m", &["mvals", "G2", "--theta", "1/9,0", "--theta", "0,1/6"]),
    ];
    for (name, args) in cases {
        let expected = std::fs::read_to_string(dir("golden").join(format!("{name}.txt"))).unwrap();
        assert_eq!(ok(args), expected, "{name}");
    }
}

#[test]
fn golden_values() {
    // last row of each combined table, independent of layout
    let last = |args: &[&str]| ok(args).lines().last().unwrap().split_whitespace().skip(1).map(String::from).collect::<Vec<_>>();
    assert_eq!(last(&["mvals", "A2", "--theta", "1/3,0", "--theta", "0,1/3"]), ["0", "0", "0", "1", "1", "2"]);
    assert_eq!(last(&["mvals", "B2", "--theta", "1/3,0", "--theta", "0,1/6"]), ["0", "0", "0", "0", "1", "1", "2", "2"]);
    assert_eq!(
        last(&["mvals", "G2", "--theta", "1/9,0", "--theta", "0,1/6"]),
        ["0", "0", "0", "0", "0", "0", "1", "1", "2", "2", "2", "2"]
    );
    assert_eq!(
        last(&["mvals", "G2", "--theta", "1/9,0"]),
        ["0", "0", "0", "0", "0", "0", "1", "0", "1", "1", "1", "1"]
    );
}

#[test]
fn classify_and_fprime_on_g2() {
    let m = data("m_g2.json");
    assert_eq!(ok(&["classify", "G2", "--concave", &m]), "TypeIII certificate=[-1,-1]\n");
    let g = io::concave_from_json(&json(&["fprime", "G2", "--concave", &m])).unwrap();
    let expect: Vec<i64> = vec![0, 0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2];
    let rs = RootSystem::from_name("G2").unwrap();
    assert_eq!(g, parahoric::ConcaveMap::from_ints(&rs, 0, &expect).unwrap());
    assert_eq!(ok(&["concave-check", "G2", "--concave", &m]), "concave\n");
    let w = json(&["classify", "G2", "--concave", &m]);
    assert_eq!(w["certificate"], serde_json::json!([-1, -1]));
}

#[test]
fn fibre_verbs() {
    assert_eq!(ok(&["phitheta", "G2", "--theta", "0,1/2"]), "[1,0] [-1,0] [3,2] [-3,-2]\n");
    assert_eq!(ok(&["facet", "G2", "--nodes", "2"]), "[1,0] [-1,0] [3,2] [-3,-2]\n");
    assert_eq!(ok(&["facet", "A2", "--scaling", "shrunk", "--nodes", "1,2"]), "(empty)\n");
    let rs = RootSystem::from_name("G2").unwrap();
    let f = json(&["fibre", "G2", "--concave", &data("m_g2.json")]);
    assert!(io::fibre_from_json(&rs, &f).unwrap().is_empty());
    let tuple = scratch("tuple", &Value::Array(vec![
        json(&["mvals", "A2", "--theta", "0,0"]),
        json(&["mvals", "A2", "--theta", "1/2,0"]),
    ]));
    assert_eq!(ok(&["subdiag", "A2", "--tuple", &tuple, "--subset", "0,1"]), "[0,1] [0,-1]\n");
    let mk = json(&["mckay", "A1", "--d", "3", "--tau", "1"]);
    assert_eq!(mk["components"][1]["theta"], serde_json::json!(["2/3"]));
    assert_eq!(mk["end_types"], serde_json::json!([[1], [2]]));
}

#[test]
fn apartment_verbs() {
    // w₀ sends −ω₁ to ω₂
    assert_eq!(ok(&["reduce", "A2", "--theta", "-1/3,0"]), "(0,1/3)\n");
    assert_eq!(ok(&["barycenter", "G2", "--nodes", "0,1,2"]), "(1/9,1/6)\n");
    let m = json(&["msets", "A2", "--omega", "1/3,1/3;2/3,2/3"]);
    let rs = RootSystem::from_name("A2").unwrap();
    let f = io::concave_from_json(&m).unwrap();
    assert_eq!(f, parahoric::ConcaveMap::from_ints(&rs, 0, &[0, 0, 0, 1, 1, 2]).unwrap());
    assert!(ok(&["vertices", "B3"]).contains("(0,0,1/2)"));
    assert!(ok(&["constants", "G2"]).contains("coxeter"));
    assert_eq!(json(&["roots", "A2"])["highest"], serde_json::json!([1, 1]));
}

#[test]
fn matrix_pipeline() {
    let pat = json(&["pattern", "A1", "--tuple", &data("a1_pair.json")]);
    assert_eq!(pat["bounds"], serde_json::json!([[null, [0, 0]], [[1, 1], null]]));
    let pat_file = scratch("pattern", &pat);
    let g = json(&["sample", "--pattern", &pat_file, "--seed", "7"]);
    let g_file = scratch("sample", &g);
    assert_eq!(ok(&["member", "--matrix", &g_file, "--pattern", &pat_file]), "true\n");
    let gg = json(&["multiply", "--left", &g_file, "--right", &g_file]);
    assert_eq!(ok(&["member", "--matrix", &scratch("square", &gg), "--pattern", &pat_file]), "true\n");
    let d = json(&["diag", "--matrix", &g_file]);
    assert_eq!(d["nvars"], 1);
    let e = json(&["embed", "--matrix", &scratch("diag", &d), "--n", "3"]);
    assert_eq!(e["nvars"], 3);
    let mp = json(&["pattern", "A2", "--theta", "1/3,1/3", "--depth", "1/2"]);
    assert_eq!(mp["diag_unit_level"], 1);
    let level = json(&["moyprasad", "A2", "--theta", "1/3,1/3", "--depth", "1/2"]);
    assert_eq!(level["torus_level"], 1);
}

#[test]
fn json_roundtrips() {
    let rs = RootSystem::from_name("G2").unwrap();
    let d = rs.dynkin();
    let same = |v: &Value, back: Value| assert_eq!(&back, v);

    let v = json(&["fprime", "G2", "--concave", &data("m_g2.json")]);
    same(&v, io::concave_to_json(&rs, &io::concave_from_json(&v).unwrap()));
    let v = json(&["reduce", "G2", "--theta", "1,1"]);
    same(&v, io::point_to_json(&io::point_from_json(d, &v).unwrap()));
    let v = json(&["phitheta", "G2", "--theta", "0,1/2"]);
    same(&v, io::fibre_to_json(&io::fibre_from_json(&rs, &v).unwrap()));
    let v = json(&["pattern", "A1", "--tuple", &data("a1_pair.json")]);
    same(&v, io::pattern_to_json(&io::pattern_from_json(&v).unwrap()));
    let v = json(&["sample", "--pattern", &scratch("rt-pattern", &v), "--seed", "3"]);
    let m: TruncatedLaurentMatrix = io::matrix_from_json(&v).unwrap();
    same(&v, io::matrix_to_json(&m));
    // emitted maps are accepted back as CLI input
    let v = json(&["mvals", "G2", "--theta", "1/9,0", "--theta", "0,1/6"]);
    let f = scratch("rt-mvals", &v);
    assert_eq!(ok(&["classify", "G2", "--concave", &f]), "TypeIII certificate=[-1,-1]\n");
}

#[test]
fn exit_codes() {
    let out = cli(&["roots", "B1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("InvalidRank"));
    let out = cli(&["classify", "A2", "--concave", &data("m_g2.json")]);
    assert_eq!((out.code, out.stderr.split(':').next()), (1, Some("RankMismatch")));
    let out = cli(&["mvals", "A2", "--theta", "1/0,0"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("ParseError"));
    assert_eq!(cli(&["mvals", "A2"]).code, 2);
    assert_eq!(cli(&["no-such-verb"]).code, 2);
    assert_eq!(cli(&["classify", "A2", "--concave", "@/nonexistent/file.json"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_parahoric");
    let st = Command::new(bin).args(["mvals", "G2", "--theta", "1/9,0"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert_eq!(String::from_utf8(st.stdout).unwrap(), std::fs::read_to_string(dir("golden").join("g2_theta1.txt")).unwrap());
    let st = Command::new(bin).args(["moyprasad", "A2", "--theta", "0,0", "--depth", "-1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8(st.stderr).unwrap().starts_with("NegativeDepth"));
}
