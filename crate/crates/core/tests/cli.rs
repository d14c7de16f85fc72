use std::path::PathBuf;
use std::process::{Command, Output};

use airykit::evolution::{Grid1D, GridFunction};

fn airykit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_airykit"))
        .args(args)
        .env_remove("AIRYKIT_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("airykit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_examples() {
    let o = airykit(&["eval", "--hermite", "m=3", "n=3", "x=1", "y=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "7");
    let o = airykit(&["eval", "--airy", "x=0"]);
    assert_eq!(stdout(&o).trim(), "0.355028053888");
}

#[test]
fn transform_example() {
    let o = airykit(&["transform", "--airy", "--poly-degree", "0", "x=0.7", "y=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    // x³ → x³ + 6y
    let o = airykit(&["transform", "--airy", "--poly-degree", "3", "x=2", "y=0.5"]);
    assert_eq!(stdout(&o).trim(), "11");
}

#[test]
fn expand_prints_a_json_array() {
    let o = airykit(&["expand", "--input", "gaussian", "--yabs", "1", "--N", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<f64> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 5);
    assert!((v[0] - 0.432217591895).abs() < 1e-9, "{v:?}");
}

#[test]
fn table_sweeps_the_lattice() {
    let o = airykit(&["table", "--hermite", "m=2", "n=2", "y=1", "x0=-1", "x1=1", "step=0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 6, "{text}");
    assert_eq!(rows[3], "0,2");
    let json = airykit(&["--format", "json", "table", "--hermite", "m=2", "n=2", "y=1", "x0=-1", "x1=1", "step=0.5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert!(v.is_array() || v.is_object(), "{v}");
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--generalized", "7", "x0=-3", "x1=1", "step=0.25"];
    let a = airykit(&args);
    let b = airykit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn precision_controls_digits_and_is_bounded() {
    let o = airykit(&["--precision", "4", "eval", "--airy", "x=0"]);
    assert_eq!(stdout(&o).trim(), "0.355");
    assert_eq!(airykit(&["--precision", "3", "eval", "--airy", "x=0"]).status.code(), Some(2));
    assert_eq!(airykit(&["--precision", "18", "eval", "--airy", "x=0"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["eval", "--hermite", "m=1", "n=3", "x=1", "y=1"],
        vec!["eval", "--hermite", "m=3", "n=3", "x=1"],
        vec!["eval", "--airy", "x=0", "bogus=1"],
        vec!["eval", "--airy", "x=0", "x=1"],
        vec!["eval", "--airy-two-var", "x=0", "y=-1"],
        vec!["transform", "--airy", "--poly-degree", "2", "x=0", "y=-1"],
        vec!["transform", "--gauss-weierstrass", "--poly-degree", "2", "x=0", "y=0"],
        vec!["expand", "--input", "gaussian", "--yabs", "1", "--N", "11"],
        vec!["figure", "fig3"],
        vec!["nonsense"],
    ] {
        let o = airykit(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(!err.trim().is_empty(), "{args:?}: no message");
    }
}

#[test]
fn nonconvergence_exits_with_three() {
    let o = airykit(&["--max-nodes", "50", "eval", "--generalized", "7", "x=-6"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_suites() {
    let o = airykit(&["verify", "hermite"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = airykit(&["verify", "transforms"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the Watson ODE check fails (W'' + 4x²W ≠ 0); the failing case is echoed
    let o = airykit(&["verify", "airy"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("x="), "{}", stdout(&o));
}

#[test]
fn config_file_and_environment() {
    let path = scratch("quad.conf");
    std::fs::write(&path, "# starved budget\nmax_nodes = 50\n").unwrap();
    let p = path.to_str().unwrap();
    let args = ["eval", "--generalized", "7", "x=-6"];
    let o = airykit(&[&["--config", p][..], &args[..]].concat());
    assert_eq!(o.status.code(), Some(3));
    // flags override the file
    let o = airykit(&[&["--config", p, "--max-nodes", "200000"][..], &args[..]].concat());
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_airykit"))
        .args(args)
        .env("AIRYKIT_CONFIG", p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(&path, "unknown_key = 1\n").unwrap();
    assert_eq!(airykit(&[&["--config", p][..], &args[..]].concat()).status.code(), Some(2));
}

#[test]
fn evolve_round_trips_grid_files() {
    let grid = Grid1D::new(-30.0, 30.0, 512).unwrap();
    let g = GridFunction::from_real_fn(grid, |x| (-x * x / 2.0).exp());
    let input = scratch("gauss.csv");
    std::fs::write(&input, g.to_csv(17)).unwrap();
    let output = scratch("out.csv");
    let o = airykit(&[
        "--out",
        output.to_str().unwrap(),
        "evolve",
        "--input",
        input.to_str().unwrap(),
        "--equation",
        "spectral",
        "m=3",
        "y=0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let back = GridFunction::from_csv(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let worst = back.samples().iter().zip(g.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(worst < 1e-11, "{worst:e}");
    // backward diffusion is a precondition violation
    let o = airykit(&["evolve", "--input", input.to_str().unwrap(), "--equation", "spectral", "m=2", "y=-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = airykit(&["evolve", "--input", input.to_str().unwrap(), "--equation", "schrodinger", "tau=1", "b=0", "p=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure_writes_to_file() {
    let out = scratch("fig2.json");
    let o = airykit(&["--out", out.to_str().unwrap(), "--format", "json", "figure", "fig2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!v.is_null());
}
