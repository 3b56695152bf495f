use std::path::Path;
use std::process::{Command, Output};

fn hjdg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hjdg"))
        .current_dir(dir)
        .env_remove("HJDG_THREADS")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_writes_both_dumps_and_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = hjdg(dir.path(), &["run", "--case", "burgers1d", "--n", "20", "--k", "1", "--out", "out"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("steps=") && text.contains("Linf="), "{text}");
    let coeffs = std::fs::read_to_string(dir.path().join("out/burgers1d_P1_N20_coeffs.csv")).unwrap();
    let samples = std::fs::read_to_string(dir.path().join("out/burgers1d_P1_N20_samples.csv")).unwrap();
    assert_eq!(samples.lines().next(), Some("x,phi"));
    assert!(coeffs.lines().count() > 20);
}

#[test]
fn identical_invocations_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["run", "--case", "burgers1d", "--n", "16", "--perturb", "0.3", "--seed", "7", "--threads", "1"];
    let read = |sub: &str| {
        let mut a = args.to_vec();
        a.extend(["--out", sub]);
        assert!(hjdg(dir.path(), &a).status.success());
        std::fs::read(dir.path().join(sub).join("burgers1d_P2_N16_coeffs.csv")).unwrap()
    };
    assert_eq!(read("a"), read("b"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = hjdg(dir.path(), &["run", "--case", "burgers2d", "--mesh", "absent.mesh"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!dir.path().join("burgers2d_P2_N16_coeffs.csv").exists());
    let negative = hjdg(dir.path(), &["run", "--case", "burgers1d", "--c", "-1"]);
    assert_eq!(negative.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&negative.stderr).contains(">= 0"));
    let unknown = hjdg(dir.path(), &["run", "--case", "no-such-case"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("r.cfg"), "case = burgers1d\nn = 12\nk = 3\n").unwrap();
    let o = hjdg(dir.path(), &["run", "--config", "r.cfg", "--k", "1"]);
    assert!(o.status.success());
    assert!(dir.path().join("burgers1d_P1_N12_coeffs.csv").exists());
}

#[test]
fn converge_writes_the_error_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = hjdg(dir.path(), &["converge", "--case", "linnonsmth", "--ns", "10,20,40", "--ks", "1"]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("linnonsmth_P1_convergence.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("N,h,L1,L1_order,L2,L2_order,Linf,Linf_order"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn sweep_rejects_negative_constants_and_tabulates_the_rest() {
    let dir = tempfile::tempdir().unwrap();
    let bad = hjdg(dir.path(), &["sweep-c", "--case", "burgers1d", "--cs", "0,-0.5"]);
    assert_eq!(bad.status.code(), Some(2));
    let ok = hjdg(dir.path(), &["sweep-c", "--case", "burgers1d", "--n", "10", "--cs", "0,0.25"]);
    assert!(ok.status.success());
    let csv = std::fs::read_to_string(dir.path().join("burgers1d_sweep_c.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn plot_renders_dumps_and_rejects_empty_ones() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hjdg(dir.path(), &["run", "--case", "burgers1d", "--n", "10"]).status.success());
    let o = hjdg(
        dir.path(),
        &["plot", "--input", "burgers1d_P2_N10_samples.csv", "--case", "burgers1d", "--output", "b.svg"],
    );
    assert!(o.status.success());
    let svg = std::fs::read_to_string(dir.path().join("b.svg")).unwrap();
    assert!(svg.contains("<polyline") && svg.contains("<circle"));

    std::fs::write(dir.path().join("empty.csv"), "").unwrap();
    let empty = hjdg(dir.path(), &["plot", "--input", "empty.csv", "--output", "e.svg"]);
    assert_eq!(empty.status.code(), Some(2));
    assert!(!dir.path().join("e.svg").exists());

    let mismatch = hjdg(
        dir.path(),
        &["plot", "--input", "burgers1d_P2_N10_samples.csv", "--case", "rotation", "--output", "m.svg"],
    );
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn diagonal_cut_of_a_planar_run() {
    let dir = tempfile::tempdir().unwrap();
    let run = hjdg(dir.path(), &["run", "--case", "rotation", "--n", "8", "--tfinal", "0.05"]);
    assert!(run.status.success());
    let o = hjdg(
        dir.path(),
        &["plot", "--input", "rotation_P2_N8_samples.csv", "--case", "rotation", "--tfinal", "0.05", "--cut", "diagonal", "--output", "cut.svg"],
    );
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("cut.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("s,phi,exact"));
    assert!(csv.lines().count() > 10);
}

#[test]
fn generated_meshes_round_trip_through_mesh_info() {
    let dir = tempfile::tempdir().unwrap();
    let gen = hjdg(dir.path(), &["gen-mesh", "--kind", "rectangle", "--n", "4", "--domain", "-2,2,-2,2", "--periodic", "--output", "sq.mesh"]);
    assert!(gen.status.success());
    let info = stdout(&hjdg(dir.path(), &["mesh-info", "--mesh", "sq.mesh"]));
    assert!(info.contains("triangles=32") && info.contains("periodic_pairs=8"), "{info}");
    assert!(info.contains("area=1.6"), "{info}");

    let run = hjdg(dir.path(), &["run", "--case", "burgers2d", "--mesh", "sq.mesh", "--tfinal", "0.05"]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
}
