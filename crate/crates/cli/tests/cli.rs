use std::process::{Command, Output};

use mmcurve::fat::{fat_fn_virasoro, fat_frame};
use mmcurve::series::json::from_json;
use mmcurve::series::rational::rat;

fn mmcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmcurve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn thin_z_g3_line() {
    let o = mmcurve(&["thin-z", "--couplings", "g3", "--order", "14", "--degree", "5", "--format", "plain", "--two-n"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for piece in ["(2N)*v", "- 165*g3^3*(2N)^8*v^12", "+ 330*g3*(2N)^7*v^12", "+ 1430*g3^3*(2N)^9*v^14"] {
        assert!(out.contains(piece), "missing `{piece}` in {out}");
    }
}

#[test]
fn fat_fn_motzkin_table() {
    let o = mmcurve(&["fat-fn", "--couplings", "g1", "--nmax", "7", "--degree", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], "f0 = t");
    assert_eq!(lines[4], "f4 = 2*t^3 + 6*g1^2*t^2 + g1^4*t");
    assert_eq!(lines[7], "f7 = 35*g1*t^4 + 70*g1^3*t^3 + 21*g1^5*t^2 + g1^7*t");
}

#[test]
fn json_round_trips() {
    let o = mmcurve(&["fat-fn", "--couplings", "g1,g3", "--nmax", "4", "--degree", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let st = fat_fn_virasoro(&fat_frame(&[1, 3], 3).unwrap(), 4, 3).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 5);
    for (n, item) in items.iter().enumerate() {
        assert_eq!(item["name"], format!("f{n}"));
        let s = from_json(&item["series"].to_string()).unwrap();
        assert_eq!(s, st.f[n]);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["one-cut", "--couplings", "g1,g2,g3", "--degree", "3", "--depth", "4"];
    let a = mmcurve(&args);
    let b = mmcurve(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn numeric_couplings_and_subst() {
    let o = mmcurve(&["fat-fn", "--couplings", "g1=1/2", "--nmax", "3", "--degree", "3", "--subst", "t=2"]);
    assert_eq!(o.status.code(), Some(0));
    let st = fat_fn_virasoro(&fat_frame(&[1], 3).unwrap(), 3, 3).unwrap();
    let f3 = st.f[3].evaluate("g1", &rat(1, 2)).unwrap().evaluate("t", &rat(2, 1)).unwrap();
    assert!(stdout(&o).contains(&format!("f3 = {f3}")));
}

#[test]
fn one_cut_methods_agree() {
    let run = |m: &str| stdout(&mmcurve(&["one-cut", "--couplings", "g2,g4", "--degree", "3", "--depth", "4", "--method", m]));
    let pick = |s: String| s.lines().filter(|l| l.starts_with('f')).map(String::from).collect::<Vec<_>>();
    let h = pick(run("h"));
    assert_eq!(h.len(), 5);
    assert_eq!(h, pick(run("system")));
    assert_eq!(h, pick(run("even")));
}

#[test]
fn verify_all_passes() {
    let o = mmcurve(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let single = Command::new(env!("CARGO_BIN_EXE_mmcurve"))
        .args(["verify", "--suite", "all"])
        .env("MMCURVE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(single.stdout, o.stdout);
}

#[test]
fn identity_check_labels_unproven() {
    let o = mmcurve(&["identity-check", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.contains("arches to order 10 (numerically verified, no independent proof)"));
}

#[test]
fn invert_routes_agree() {
    let a = mmcurve(&["invert", "--phi", "2,1/2,-3,1", "--order", "7"]);
    let b = mmcurve(&["invert", "--phi", "2,1/2,-3,1", "--order", "7", "--via", "composition"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("w = 2*v + "));
}

#[test]
fn usage_errors_exit_2() {
    let o = mmcurve(&["fat-fn", "--couplings", "g1,q7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("q7"));
    assert_eq!(mmcurve(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(mmcurve(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(mmcurve(&["fat-fn", "--couplings", "g2=1"]).status.code(), Some(2));
    assert_eq!(mmcurve(&["one-cut", "--couplings", "g3", "--method", "even"]).status.code(), Some(2));
    let o = mmcurve(&["thin-z", "--couplings", "g3", "--subst", "x=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x=1"));
}
