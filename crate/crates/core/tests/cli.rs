use std::path::Path;
use std::process::{Command, Output};

use polarfermi::functional::PhaseLabel;
use polarfermi::kappa::{kappa_g, kappa_i, kappa_o};
use polarfermi::spectral::{analyze_sphere, RadialPotential};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polarfermi"));
    c.env_remove("POLARFERMI_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "status {:?}, stderr: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Csv {
    meta: Vec<(String, String)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn parse_csv(text: &str) -> Csv {
    let mut meta = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        if let Some(m) = line.strip_prefix("# ") {
            let (k, v) = m.split_once(": ").unwrap();
            meta.push((k.to_string(), v.to_string()));
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let mut reader = csv::ReaderBuilder::new().from_reader(body.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    Csv { meta, header, rows }
}

impl Csv {
    fn meta(&self, key: &str) -> &str {
        &self.meta.iter().find(|(k, _)| k == key).unwrap().1
    }

    fn col(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap()
    }

    fn float(&self, row: usize, name: &str) -> f64 {
        self.rows[row][self.col(name)].parse().unwrap()
    }
}

#[test]
fn kappa_table_reproduces_library_values() {
    let csv = parse_csv(&stdout(&run(&["kappa", "--t-grid", "0:3:4"])));
    assert_eq!(csv.header, ["t", "kappa_i", "kappa_o", "kappa_g", "d_star"]);
    assert_eq!(csv.meta("command"), "kappa");
    assert_eq!(csv.meta("version"), env!("CARGO_PKG_VERSION"));
    assert_eq!(csv.meta("config_hash").len(), 64);
    assert_eq!(csv.rows.len(), 4);
    for r in 0..4 {
        let t = csv.float(r, "t");
        assert_eq!(csv.float(r, "kappa_i"), kappa_i(t).unwrap());
        assert_eq!(csv.float(r, "kappa_o"), kappa_o(t).unwrap());
        assert_eq!(csv.float(r, "kappa_g"), kappa_g(t).unwrap().value);
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["kappa", "--t-grid", "0.5:4:8"];
    let a = stdout(&run(&args));
    let b = stdout(&bin().args(args).arg("--jobs").arg("1").output().unwrap());
    let c = stdout(
        &bin()
            .args(args)
            .env("POLARFERMI_JOBS", "3")
            .output()
            .unwrap(),
    );
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn json_round_trips_against_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("k.json");
    let out = run(&[
        "kappa",
        "--t-grid",
        "0:2.5:6",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    stdout(&out);
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let csv = parse_csv(&stdout(&run(&["kappa", "--t-grid", "0:2.5:6"])));
    assert_eq!(
        value["meta"]["config_hash"].as_str().unwrap(),
        csv.meta("config_hash")
    );
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.rows.len());
    for (i, row) in rows.iter().enumerate() {
        for name in ["t", "kappa_i", "kappa_o", "kappa_g", "d_star"] {
            assert_eq!(row[name].as_f64().unwrap(), csv.float(i, name), "{name}");
        }
    }
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(again, value);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["kappa", "--t-grid", "0:1:1"]).status.code(), Some(2));
    assert_eq!(run(&["kappa", "--t-grid", "1:0:5"]).status.code(), Some(2));
    assert_eq!(run(&["kappa", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["phase", "--root-tol", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["phase", "--quad-tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["kappa", "--jobs", "0"]).status.code(), Some(2));
    let env = bin()
        .args(["kappa", "--t-grid", "0:1:2"])
        .env("POLARFERMI_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
    assert_eq!(
        run(&["kappa", "--config", "/nonexistent/run.conf"])
            .status
            .code(),
        Some(2)
    );

    let numerical = run(&["kappa", "--t-grid", "1e300:1.5e300:2"]);
    assert_eq!(numerical.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&numerical.stderr);
    assert!(msg.contains("kappa") && msg.contains("t = "), "{msg}");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# kappa sweep\nt_grid = 0:1:3\nformat = csv\n").unwrap();
    let conf = conf.to_str().unwrap();

    let from_file = stdout(&run(&["kappa", "--config", conf]));
    let from_flags = stdout(&run(&["kappa", "--t-grid", "0:1:3"]));
    assert_eq!(from_file, from_flags);

    let overridden = parse_csv(&stdout(&run(&[
        "kappa", "--config", conf, "--t-grid", "0:1:5",
    ])));
    assert_eq!(overridden.rows.len(), 5);

    std::fs::write(dir.path().join("bad.conf"), "t_grid 0:1:3\n").unwrap();
    let bad = run(&[
        "kappa",
        "--config",
        dir.path().join("bad.conf").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
    std::fs::write(dir.path().join("unknown.conf"), "colour = red\n").unwrap();
    let unknown = run(&[
        "kappa",
        "--config",
        dir.path().join("unknown.conf").to_str().unwrap(),
    ]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn config_hash_tracks_the_computation_only() {
    let hash = |args: &[&str]| {
        parse_csv(&stdout(&run(args)))
            .meta("config_hash")
            .to_string()
    };
    let base = hash(&["kappa", "--t-grid", "0:1:3"]);
    assert_eq!(base, hash(&["kappa", "--t-grid", "0:1:3", "--jobs", "2"]));
    assert_ne!(base, hash(&["kappa", "--t-grid", "0:1:4"]));
}

#[test]
fn curves_have_the_plotting_columns() {
    let csv = parse_csv(&stdout(&run(&[
        "curves", "--t-grid", "0:100:3", "--kinds", "i,o",
    ])));
    assert_eq!(csv.header, ["kind", "t", "dmu_over_tc", "t_over_tc"]);
    assert_eq!(csv.rows.len(), 6);
    assert_eq!(csv.float(0, "t_over_tc"), 1.0);
    assert_eq!(csv.float(0, "dmu_over_tc"), 0.0);
    let tc: f64 = csv.meta("T_c").parse().unwrap();
    assert!(tc > 0.0);
    let kinds: Vec<&str> = csv.rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(kinds, ["i", "i", "i", "o", "o", "o"]);
}

#[test]
fn spectrum_metadata_matches_library() {
    let csv = parse_csv(&stdout(&run(&[
        "spectrum",
        "--ell-max",
        "12",
        "--lambda",
        "0.5",
    ])));
    let pot = RadialPotential::gaussian(-1.0, 1.0).unwrap();
    let spec = analyze_sphere(&pot, 1.0, 12, 0.5).unwrap();
    assert_eq!(csv.rows.len(), 13);
    for (ell, &e) in spec.e_ell.iter().enumerate() {
        assert_eq!(csv.float(ell, "e_ell"), e);
    }
    assert_eq!(csv.meta("e_mu").parse::<f64>().unwrap(), spec.e_mu);
    assert_eq!(
        csv.meta("rho").parse::<f64>().unwrap(),
        spec.rho.unwrap().value
    );
}

#[test]
fn sampled_potential_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let mut text = String::from("r,V\n");
    for i in 0..=400 {
        let r = i as f64 * 0.02;
        text.push_str(&format!("{r},{}\n", -(-r * r).exp()));
    }
    text.push_str("8.5,0\n");
    std::fs::write(&path, text).unwrap();
    let sampled = parse_csv(&stdout(&run(&[
        "spectrum",
        "--ell-max",
        "4",
        "--potential",
        "sampled",
        "--potential-file",
        path.to_str().unwrap(),
    ])));
    let builtin = parse_csv(&stdout(&run(&["spectrum", "--ell-max", "4"])));
    let (a, b) = (sampled.float(0, "e_ell"), builtin.float(0, "e_ell"));
    assert!((a - b).abs() < 1e-3 * b.abs(), "{a} vs {b}");
    assert_eq!(
        run(&["spectrum", "--potential", "sampled"]).status.code(),
        Some(2)
    );
}

#[test]
fn toy1d_counts_and_curve_file() {
    let dir = tempfile::tempdir().unwrap();
    let curves = dir.path().join("curves.csv");
    let csv = parse_csv(&stdout(&run(&[
        "toy1d",
        "--dmu-grid",
        "0:0.28:3",
        "--temp-grid",
        "0.02:0.3:2",
        "--curve-kinds",
        "i,g",
        "--curves-out",
        curves.to_str().unwrap(),
    ])));
    assert_eq!(csv.header, ["delta_mu", "T", "count", "root_1", "root_2"]);
    let counts: Vec<&str> = csv.rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(counts, ["1", "0", "1", "0", "2", "0"]);
    assert_eq!(csv.rows[1][3], "");

    let curve = parse_csv(&std::fs::read_to_string(&curves).unwrap());
    assert_eq!(curve.header, ["kind", "delta_mu", "branch", "T"]);
    let t0 = curve.float(0, "T");
    assert!((t0 - 0.190664).abs() < 1e-5, "{t0}");
    let terminated = curve
        .rows
        .iter()
        .filter(|r| r[0] == "i" && r[3].is_empty())
        .count();
    assert_eq!(terminated, 1);
}

#[test]
fn phase_labels_parse() {
    let csv = parse_csv(&stdout(&run(&[
        "phase",
        "--dmu-grid",
        "0:0.28:2",
        "--temp-grid",
        "0.02:0.5:2",
    ])));
    assert_eq!(csv.header, ["delta_mu", "T", "label", "F_normal", "F_best"]);
    let labels: Vec<PhaseLabel> = csv.rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(
        labels,
        [
            PhaseLabel::Superfluid,
            PhaseLabel::Normal,
            PhaseLabel::NormalMetastable,
            PhaseLabel::Normal
        ]
    );
    assert_eq!(csv.rows[1][4], "");
}

#[test]
fn writes_into_requested_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.csv");
    let res = run(&["kappa", "--t-grid", "0:1:2", "-o", out.to_str().unwrap()]);
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    assert!(Path::new(&out).exists());
    let missing_dir = dir.path().join("no/such/dir/k.csv");
    let res = run(&[
        "kappa",
        "--t-grid",
        "0:1:2",
        "-o",
        missing_dir.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
}
