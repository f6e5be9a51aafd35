use std::path::PathBuf;
use std::process::{Command, Output};

fn graph(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("graphs").join(name)
}

fn qgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgraph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_of_dirichlet_interval() {
    let path = graph("interval_dd.qg");
    let o = qgraph(&["spectrum", path.to_str().unwrap(), "--kmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "index,k,lambda,multiplicity\n\
         1,3.14159265359,9.86960440109,1\n\
         2,6.28318530718,39.4784176044,1\n\
         3,9.42477796077,88.8264396098,1\n"
    );
}

#[test]
fn output_is_deterministic() {
    let path = graph("dihedral.qg");
    for cmd in ["spectrum", "nodal", "weylgap"] {
        let a = qgraph(&[cmd, path.to_str().unwrap(), "--kmax", "4"]);
        let b = qgraph(&[cmd, path.to_str().unwrap(), "--kmax", "4"]);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn nodal_counts_of_the_dihedral_graph() {
    let path = graph("dihedral.qg");
    let text = stdout(&qgraph(&["nodal", path.to_str().unwrap(), "--kmax", "2.6"]));
    let phi: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(phi, ["0", "1", "3", "4", "4", "5", "7", "8", "9"]);
}

#[test]
fn sweep_is_even_in_flux() {
    let path = graph("lasso.qg");
    let text = stdout(&qgraph(&["sweep", path.to_str().unwrap(), "--points", "5", "--bands", "2"]));
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 10);
    for r in &rows {
        let mirror = rows.iter().find(|m| m[0] == -r[0] && m[1] == r[1]).unwrap();
        assert!((mirror[2] - r[2]).abs() < 1e-9);
    }
}

#[test]
fn verify_suites_pass() {
    for suite in ["oracles", "isospectral"] {
        let o = qgraph(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).lines().last().unwrap().ends_with("PASS,"));
    }
    let path = graph("dihedral.qg");
    let o = qgraph(&["verify", "--suite", "magnetic-nodal", path.to_str().unwrap(), "--kmax", "2.6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn out_flag_writes_a_file() {
    let out = std::env::temp_dir().join(format!("qgraph-cli-{}.csv", std::process::id()));
    let path = graph("star_mixed.qg");
    let o = qgraph(&["spectrum", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).ok();
    assert!(text.starts_with("index,k,lambda,multiplicity\n"));
}

#[test]
fn errors_exit_with_code_two() {
    let bad = std::env::temp_dir().join(format!("qgraph-bad-{}.qg", std::process::id()));
    std::fs::write(&bad, "[vertices]\n0 N\n1 X\n").unwrap();
    let o = qgraph(&["spectrum", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).ok();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 3"));

    let path = graph("lasso.qg");
    let o = qgraph(&["spectrum", path.to_str().unwrap(), "--flux", "1,2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = qgraph(&["spectrum", "/nonexistent/graph.qg"]);
    assert_eq!(o.status.code(), Some(2));
}
