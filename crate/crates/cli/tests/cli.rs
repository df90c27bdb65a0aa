use std::process::{Command, Output};

use biaxial_core::quadrature::sphere_measure;
use biaxial_core::special::bessel_i;

fn biaxial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biaxial")).args(args).output().expect("binary runs")
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn verify_exit_codes() {
    let ok = biaxial(&["verify", "algebra", "--p", "2", "--q", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["suite"], "algebra");
    assert_eq!(report["config"]["p"], 2);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let fh = biaxial(&["verify", "funkhecke", "--p", "3", "--res", "64"]);
    assert_eq!(fh.status.code(), Some(0));

    // the FD residual of a cubic radialization sits above 1e-6 at h = 1e-3
    let dirac = biaxial(&["verify", "dirac", "--p", "2", "--q", "2", "--h", "1e-3"]);
    assert_eq!(dirac.status.code(), Some(1));
}

#[test]
fn usage_and_config_errors_are_structured() {
    for args in [
        &["verify", "nonsense"][..],
        &["verify", "algebra", "--p", "1"],
        &["verify", "algebra", "--p", "5", "--q", "4"],
        &["verify", "kernel", "--res", "4"],
        &["verify", "dirac", "--h", "0.5"],
        &["eval", "--field", "gauss"],
    ] {
        let out = biaxial(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(err["error"].is_string() && err["message"].is_string());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn failed_command_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_biaxial"))
        .args(["kernel-table", "--p", "2", "--q", "2", "--r-range", "0:0.95:4", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn exp_hpw_on_axis_is_exponential() {
    let out = biaxial(&["eval", "--field", "exp-hpw", "--p", "3", "--q", "2", "--s", "3,4", "--format", "csv",
        "--x-axis", "0:0:1", "--y-axis", "-1:1:5"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header[5], "1_re");
    assert_eq!(header.len(), 5 + 2 * 32);
    for row in &rows {
        let t = 0.6 * row[3] + 0.8 * row[4];
        assert!((row[5] - t.exp()).abs() < 1e-15 * t.exp().max(1.0));
        assert!(row[6..].iter().all(|v| *v == 0.0));
    }
}

#[test]
fn fourier_kernel_p2_carries_2pi_i0() {
    let out = biaxial(&["eval", "--field", "fourier-kernel", "--p", "2", "--q", "1", "--format", "csv",
        "--x-axis", "0:2:5", "--y-axis", "0.5:0.5:1"]);
    let (header, rows) = csv_rows(&out);
    let re = header.iter().position(|h| h == "e3_re").unwrap();
    for row in &rows {
        let (r, t) = (row[0], row[2]);
        // i·2πI₀(r)·e^{it} along s
        let want = 2.0 * std::f64::consts::PI * bessel_i(0.0, r).unwrap();
        assert!((row[re] + want * t.sin()).abs() < 1e-12 * want);
        assert!((row[re + 1] - want * t.cos()).abs() < 1e-12 * want);
    }
}

#[test]
fn poly_one_matches_closed_coefficient() {
    let out = biaxial(&["eval", "--field", "poly:1", "--p", "2", "--q", "1", "--format", "csv",
        "--x-axis", "0.5:1:2", "--y-axis", "0:0:1"]);
    let (header, rows) = csv_rows(&out);
    let e1 = header.iter().position(|h| h == "e1_re").unwrap();
    for row in &rows {
        assert!((row[e1] - std::f64::consts::PI * row[0]).abs() < 1e-13);
    }
}

#[test]
fn kernel_table_axis_rows() {
    let out = biaxial(&["kernel-table", "--p", "3", "--q", "2", "--res", "64", "--format", "csv",
        "--y", "0.1,0.2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "r,theta,I_closed,I_oracle,abs_diff");
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v[4] <= 1e-8 * v[2].max(1.0));
        if v[0] == 0.0 {
            let (st, ct) = v[1].sin_cos();
            let tau = ct * ct + 0.1f64.powi(2) + (0.2 - st).powi(2);
            let want = sphere_measure(3) * tau.powf(-2.5);
            assert!((v[2] - want).abs() < 1e-12 * want);
        }
    }
}

#[test]
fn reconstruct_report_columns() {
    let out = biaxial(&["reconstruct", "--p", "2", "--q", "2", "--res", "16", "--points", "3", "--field", "constant",
        "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let full = header.iter().position(|h| *h == "err_A_full").unwrap();
    let ball = header.iter().position(|h| *h == "err_full_ball").unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row[0], "constant");
        assert!(row[full].parse::<f64>().unwrap() < 1e-6);
        assert!(row[ball].parse::<f64>().unwrap() < 1e-6);
    }
}
