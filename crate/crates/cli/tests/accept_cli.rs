use std::path::{Path, PathBuf};

use fmcurves::rational::frac;
use fmcurves::{KernelClass, Matrix, Rational};
use fmcurves_cli::kernel_file::{emit_kernel, parse_kernel_str};
use fmcurves_cli::run;
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn path_str(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("fmcurves").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

const FIXTURES: [&str; 5] = ["diagonal_g0", "diagonal_g2", "diagonal_twist_g1", "poincare", "point_sheaf_g2"];

#[test]
fn fixtures_match_golden_reports() {
    for name in FIXTURES {
        let file = path_str(&fixture(&format!("{name}.json")));
        for (flag, ext) in [(Some("--json"), "json"), (None, "txt")] {
            let mut args = vec!["analyze", file.as_str()];
            args.extend(flag);
            let out = cli(&args);
            assert_eq!(out.code, 0, "{}", out.stderr);
            let golden = std::fs::read_to_string(fixture(&format!("golden/{name}.{ext}"))).unwrap();
            assert_eq!(out.stdout, golden, "{name}.{ext}");
        }
    }
}

#[test]
fn fixtures_are_canonical() {
    for name in FIXTURES {
        let text = std::fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        assert_eq!(emit_kernel(&parse_kernel_str(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn json_reports_are_deterministic() {
    let file = path_str(&fixture("poincare.json"));
    let first = cli(&["analyze", &file, "--json"]).stdout;
    for _ in 0..3 {
        assert_eq!(cli(&["analyze", &file, "--json"]).stdout, first);
    }
}

#[test]
fn diagonal_report_values() {
    let out = cli(&["analyze", &path_str(&fixture("diagonal_g2.json")), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pic"]["slope"], 1);
    assert_eq!(v["pic"]["translation"], 0);
    assert_eq!(v["jac"], serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
    let point = cli(&["analyze", &path_str(&fixture("point_sheaf_g2.json")), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&point.stdout).unwrap();
    assert_eq!(v["flags"]["numerical_equivalence"], false);
    assert_eq!(v["flags"]["consistent"], true);
}

#[test]
fn malformed_kernel_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\n  \"genus_source\": 1,\n  \"genus_target\": 1,\n  \"rank\": 0,\n  \"a\": 0,\n  \"b\": 0,\n  \"ch2\": 0,\n  \"gamma\": [[1, 0], [0, 1], [0, 0]]\n}\n",
    )
    .unwrap();
    let out = cli(&["analyze", &path_str(&bad)]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("line 8") && out.stderr.contains("gamma"), "{}", out.stderr);

    std::fs::write(&bad, "{\"genus_source\": 0, \"genus_target\": 0, \"rank\": 0.5, \"a\": 0, \"b\": 0, \"ch2\": 0}").unwrap();
    let out = cli(&["check", &path_str(&bad)]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("rank"), "{}", out.stderr);

    assert_eq!(cli(&["analyze", &path_str(&dir.path().join("missing.json"))]).code, 1);
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(cli(&[]).code, 1);
    assert_eq!(cli(&["frobnicate"]).code, 1);
    assert_eq!(cli(&["adjoint", "sideways", "x.json"]).code, 1);
    assert_eq!(cli(&["selftest", "--trials", "many"]).code, 1);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("selftest"));
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn poincare_squared_negates_rank_and_degree() {
    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("sq.json");
    let p = path_str(&fixture("poincare.json"));
    let out = cli(&["convolve", &p, &p, "-o", &path_str(&sq)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report = cli(&["analyze", &path_str(&sq), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&report.stdout).unwrap();
    assert_eq!(v["k_map"], serde_json::json!({"rank": {"r": -1, "d": 0}, "degree": {"r": 0, "d": -1}}));
}

#[test]
fn left_adjoint_of_poincare_has_rank_minus_one() {
    let out = cli(&["adjoint", "left", &path_str(&fixture("poincare.json"))]);
    assert_eq!(out.code, 0);
    assert_eq!(parse_kernel_str(&out.stdout).unwrap().rank, Rational::from_integer((-1).into()));
}

#[test]
fn convolve_rejects_incompatible_genera() {
    let out = cli(&["convolve", &path_str(&fixture("poincare.json")), &path_str(&fixture("diagonal_g2.json"))]);
    assert_eq!(out.code, 1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn check_reports_consistency() {
    for name in FIXTURES {
        let out = cli(&["check", &path_str(&fixture(&format!("{name}.json")))]);
        assert_eq!(out.code, 0, "{name}");
        assert!(out.stdout.contains("consistent"));
    }
}

#[test]
fn catalog_emits_fixtures() {
    let out = cli(&["catalog", "--emit", "diagonal", "--genus", "2"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, std::fs::read_to_string(fixture("diagonal_g2.json")).unwrap());
    let twist = cli(&["catalog", "--emit", "diagonal_twist", "--genus", "1", "--twist-source", "-2", "--twist-target", "3"]);
    assert_eq!(twist.stdout, std::fs::read_to_string(fixture("diagonal_twist_g1.json")).unwrap());
    assert!(cli(&["catalog"]).stdout.contains("point_sheaf"));
    assert_eq!(cli(&["catalog", "--emit", "fourier", "--genus", "1"]).code, 1);
    assert_eq!(cli(&["catalog", "--emit", "poincare", "--genus", "2"]).code, 1);
}

#[test]
fn small_selftest_passes() {
    let out = cli(&["selftest", "--trials", "5", "--seed", "7"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(out.stdout.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-50i64..=50).prop_map(|n| frac(n, 1)),
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| frac(n, d)),
        any::<i128>().prop_map(|n| Rational::from_integer(n.into())),
    ]
}

fn kernel() -> impl Strategy<Value = KernelClass> {
    (0usize..=3, 0usize..=3).prop_flat_map(|(g, h)| {
        (
            proptest::collection::vec(rational(), 4 * g * h),
            rational(),
            rational(),
            rational(),
            rational(),
        )
            .prop_map(move |(entries, r, a, b, s)| {
                let rows: Vec<Vec<Rational>> = entries.chunks(2 * h.max(1)).map(<[Rational]>::to_vec).collect();
                let gamma = if g == 0 || h == 0 { Matrix::zeros(2 * g, 2 * h) } else { Matrix::from_rows(rows, 2 * h).unwrap() };
                KernelClass::new(g, h, r, a, b, gamma, s).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn emit_then_parse_round_trips(e in kernel()) {
        let text = emit_kernel(&e);
        let back = parse_kernel_str(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(emit_kernel(&back), text);
    }
}
