use std::fs;
use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genus-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_prints_exact_values() {
    let o = forge(&["eval", "--genus", "euler", "--space", "bl-line-P3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "6/1");
    let o = forge(&["eval", "--genus", "chi-y", "--space", "P2"]);
    assert_eq!(stdout(&o).trim(), "1/1 + -1/1*y + 1/1*y^2");
    let o = forge(&["eval", "--genus", "elliptic-algebraic", "--space", "P1", "--params", "k=1/2,a=1,b=0,g2=0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bad_input_exits_with_an_error() {
    let o = forge(&["eval", "--genus", "todd", "--space", "nowhere"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere"));
    let o = forge(&["verify", "theorem-a", "--case", "bl-pt-p2", "--genus", "chi-y"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_writes_deterministic_json() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<String> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("r{i}.json"));
            let o = forge(&[
                "verify",
                "theorem-a",
                "--case",
                "bl-line-p3",
                "--genus",
                "universal",
                "--json",
                path.to_str().unwrap(),
                "--no-timing",
            ]);
            assert!(o.status.success(), "{}", stdout(&o));
            fs::read_to_string(path).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let v: serde_json::Value = serde_json::from_str(&runs[0]).unwrap();
    let r = &v[0];
    assert_eq!(r["check"], "theorem-a/bl-line-p3/universal");
    assert_eq!(r["status"], "pass");
    assert!(r["first_discrepancy"].is_null());
    assert_eq!(r["millis"], 0);
    for key in ["lhs", "rhs"] {
        assert!(r[key].is_string());
    }
}

#[test]
fn verify_commands() {
    let cases: [&[&str]; 5] = [
        &["verify", "theorem-a", "--case", "bl-pt-p2", "--genus", "euler"],
        &["verify", "s1", "--codim", "2", "--order", "4"],
        &["verify", "transition", "--case", "bl-pt-p2-line", "--e1", "1/2", "--order", "8"],
        &["verify", "cov", "--tower", "pt+line-p3", "--order", "8"],
        &["verify", "hodge", "--n", "2", "--lmax", "3", "--pmax", "2"],
    ];
    for args in cases {
        let o = forge(args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("pass"), "{args:?}");
    }
    let o = forge(&["verify", "theorem-a", "--case", "bl-pt-p2", "--genus", "euler"]);
    assert!(stdout(&o).contains("[4/1 = 3/1 + 1/1]"));
}

#[test]
fn solve_fe_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fe.json");
    let o = forge(&["solve-fe", "--order", "8", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("f5 = 3/5*a1*f4 + 3/10*f3^2"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert!(v.is_object());
}
