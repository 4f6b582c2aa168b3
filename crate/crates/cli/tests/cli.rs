use std::process::{Command, Output};

use tjspec::conjecture::{closed_form_tau_delta_322, ClosedFormMode};
use tjspec::families::ThreeMonomialParams;
use tjspec::ExactRatio;

fn tjspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tjspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

fn tsv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family\tparams\tmu\ttau\tdelta_exact\tdelta_decimal\tthm31\tav_obs")
    );
    lines
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_of_counterexample() {
    let o = tjspec(&[
        "spectrum", "swh", "--a", "7", "--b", "7", "--c", "1", "--d", "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "mu"), "36");
    assert_eq!(field(&text, "tau"), "35");
    assert_eq!(field(&text, "missing"), "12/7");
    assert_eq!(field(&text, "tjurina_mask"), format!("{}0", "1".repeat(35)));
}

#[test]
fn spectrum_of_a2() {
    let o = tjspec(&["spectrum", "brieskorn", "--a", "2", "--b", "3"]);
    assert_eq!(field(&stdout(&o), "spectrum"), "5/6 7/6");
}

#[test]
fn invalid_parameters_exit_1() {
    let o = tjspec(&[
        "spectrum", "swh", "--a", "4", "--b", "4", "--c", "2", "--d", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("c < a/2"));
    let o = tjspec(&["check", "swh", "--a", "7", "--b", "7", "--c", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(tjspec(&["spectrum", "nosuch"]).status.code(), Some(1));
}

#[test]
fn check_reports_sign() {
    let o = tjspec(&[
        "check", "swh", "--a", "7", "--b", "7", "--c", "1", "--d", "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "delta"), "3/9604 (+)");
    assert_eq!(field(&text, "delta_decimal"), "0.000312369845898");

    let o = tjspec(&[
        "check", "swh", "--a", "5", "--b", "5", "--c", "1", "--d", "1",
    ]);
    assert!(o.status.success());
    let delta: ExactRatio = field(&stdout(&o), "delta")
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(!delta.is_positive());

    let o = tjspec(&["check", "brieskorn", "--a", "6", "--b", "6"]);
    assert_eq!(field(&stdout(&o), "delta"), "0");
}

#[test]
fn check_json_keeps_rationals_as_strings() {
    let o = tjspec(&[
        "check", "swh", "--a", "7", "--b", "7", "--c", "1", "--d", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["delta"], "3/9604");
    assert_eq!(v["mu"], 36);
}

#[test]
fn enumerate_rows() {
    let o = tjspec(&["enumerate", "--poly", "x^7+y^7", "--slack", "1"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows, ["35\t1\t35\t3/9604\t0.000312369845898"]);

    let text = stdout(&tjspec(&[
        "enumerate",
        "--poly",
        "x^7+y^7",
        "--slack",
        "100",
    ]));
    assert!(text.lines().any(|l| l == "# A replaced by 6"));

    let text = stdout(&tjspec(&["enumerate", "--poly", "x^3+y^2"]));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1);

    let o = tjspec(&["enumerate", "--poly", "x^7+y^7+x^5*y^5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn diagonal_sweep_signs() {
    let o = tjspec(&[
        "sweep",
        "swh",
        "--a",
        "3..12",
        "--b",
        "3..12",
        "--c",
        "1",
        "--d",
        "1",
        "--equal-ab",
    ]);
    assert!(o.status.success());
    for row in tsv_rows(&stdout(&o)) {
        let m: i64 = row[1].split(',').next().unwrap().parse().unwrap();
        let delta: ExactRatio = row[4].parse().unwrap();
        assert_eq!(delta.is_positive(), m >= 7, "m={m}");
    }
}

#[test]
fn three_monomial_sweep_gap() {
    let o = tjspec(&[
        "sweep",
        "three-monomial",
        "--a",
        "2..3",
        "--b",
        "3..5",
        "--c",
        "7..11",
        "--d",
        "6..10",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = tsv_rows(&stdout(&o));
    assert!(rows.iter().any(|r| r[1] == "2,4,7,6"));
    for row in rows {
        let p: Vec<u32> = row[1].split(',').map(|s| s.parse().unwrap()).collect();
        let params = ThreeMonomialParams::new(p[0], p[1], p[2], p[3]).unwrap();
        let mu: usize = row[2].parse().unwrap();
        let tau: usize = row[3].parse().unwrap();
        assert_eq!(mu - tau, params.expected_gap(), "{}", row[1]);
    }
}

#[test]
fn puiseux_sweep_matches_closed_form() {
    let o = tjspec(&[
        "sweep", "puiseux", "--a", "3", "--b", "2", "--d", "2", "--q", "-1..9", "--r", "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = tsv_rows(&stdout(&o));
    assert_eq!(rows.len(), 11);
    for row in rows {
        let q: i64 = row[1].split(',').nth(3).unwrap().parse().unwrap();
        let c = (2 * q + 3) as u64;
        let tau: i64 = row[3].parse().unwrap();
        assert_eq!(tau, c as i64 + 13);
        let delta: ExactRatio = row[4].parse().unwrap();
        assert_eq!(
            delta * ExactRatio::from(tau),
            closed_form_tau_delta_322(c, ClosedFormMode::Consecutive).unwrap()
        );
    }
}

#[test]
fn sweep_is_deterministic_and_round_trips() {
    let args = [
        "sweep", "swh", "--a", "5..11", "--b", "5..9", "--c", "1..3", "--d", "1..2",
    ];
    let one = tjspec(&[&args[..], &["--jobs", "1"]].concat());
    let four = tjspec(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);

    let json = tjspec(&[&args[..], &["--format", "json"]].concat());
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows = tsv_rows(&stdout(&one));
    assert_eq!(v.as_array().unwrap().len(), rows.len());
    for (obj, row) in v.as_array().unwrap().iter().zip(&rows) {
        let exact = obj["delta"].as_str().unwrap();
        assert_eq!(exact, row[4]);
        let parsed: ExactRatio = exact.parse().unwrap();
        assert_eq!(parsed.to_string(), exact);
        assert_eq!(obj["delta_decimal"].as_str().unwrap(), row[5]);
    }
}

#[test]
fn empty_sweeps_exit_1() {
    let o = tjspec(&[
        "sweep", "swh", "--a", "5..3", "--b", "5", "--c", "1", "--d", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = tjspec(&[
        "sweep", "swh", "--a", "4", "--b", "4", "--c", "2", "--d", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn milnor_and_tjurina() {
    assert_eq!(
        field(
            &stdout(&tjspec(&["milnor", "--poly", "x^7+y^7+x^5*y^5"])),
            "mu"
        ),
        "36"
    );
    assert_eq!(
        field(
            &stdout(&tjspec(&["tjurina", "--poly", "x^7+y^7+x^5*y^5"])),
            "tau"
        ),
        "35"
    );
    assert_eq!(
        field(&stdout(&tjspec(&["milnor", "--poly", "x^2+y^3+z^4"])), "mu"),
        "6"
    );
    assert_eq!(
        tjspec(&["milnor", "--poly", "x^2*y^2"]).status.code(),
        Some(1)
    );
    assert_eq!(tjspec(&["milnor", "--poly", "x^^2"]).status.code(), Some(1));
    assert_eq!(
        tjspec(&["tjurina", "--poly", "1+x^2+y^2"]).status.code(),
        Some(1)
    );
}

#[test]
fn verify_passes_and_skips() {
    let o = tjspec(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = tjspec(&["verify", "--skip-localg"]);
    assert_eq!(o.status.code(), Some(0));
    let skipped = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("SKIPPED"))
        .count();
    assert_eq!(skipped, 3);
}

#[test]
fn injected_fault_exits_2() {
    let o = tjspec(&["verify", "--skip-localg", "--inject-fault", "closed-form"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("FAIL")).unwrap();
    assert!(line.contains("two-pair closed forms"), "{line}");
}

#[test]
fn help_exits_0() {
    assert_eq!(tjspec(&["--help"]).status.code(), Some(0));
}
