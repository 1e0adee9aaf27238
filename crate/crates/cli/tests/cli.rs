use std::process::{Command, Output};

fn permword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permword"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = permword(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

const U: &str = "1.2.1.3.2.1";
const V: &str = "3.2.3.1.2.3";

#[test]
fn normal_form() {
    assert_eq!(stdout(&["nf", "--n", "3", "2.1.2"]), "1.2.1");
}

#[test]
fn distance_and_complexity() {
    assert_eq!(
        stdout(&["dist", "--n", "4", U, V]),
        "lower=6 bfs=6 upper≤36 derivation=6"
    );
    assert_eq!(stdout(&["compl", "--n", "4", U, V]), "8 (I=4 II=4 III=10)");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["--json", "compl", "--n", "4", U, V])).unwrap();
    assert_eq!(json["compl"], 8);
}

#[test]
fn reverse_hexagon_sequence() {
    assert_eq!(
        stdout(&["reverse", "--n", "3", "-1.-2.-1.2.1.2"]),
        "terminal=e u'=e v'=e I=1 II=0 III=4"
    );
}

#[test]
fn exit_codes() {
    let domain = permword(&["dist", "--n", "3", "1.2", "2.1"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("error"));
    assert_eq!(permword(&["nf", "--n", "3", "1.7"]).status.code(), Some(1));
    assert_eq!(permword(&["bogus"]).status.code(), Some(2));
    assert_eq!(permword(&["nf"]).status.code(), Some(2));
}

#[test]
fn derivation_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("permword-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.json");
    let path = path.to_str().unwrap();
    stdout(&["--json", "--out", path, "derive", "--n", "4", U, V]);
    let text = std::fs::read_to_string(path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["start"], U);
    let cert = stdout(&["--json", "certify", "--n", "4", U, V, "--derivation", path]);
    let cert: serde_json::Value = serde_json::from_str(&cert).unwrap();
    assert!(cert.is_object());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "derive", "--n", "4", U, V][..],
        &["export", "--n", "4", "--format", "dot", U, V],
        &[
            "experiment",
            "growth",
            "--ns",
            "4",
            "--lmax",
            "3",
            "--samples",
            "5",
            "--seed",
            "3",
        ],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}
