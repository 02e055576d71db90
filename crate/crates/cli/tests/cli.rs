use std::process::{Command, Output};

use rootscope_cli::{read_csv, Kind, OutputRecord};

fn rootscope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootscope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rootscope_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootscope"))
        .args(args)
        .env("ROOTSCOPE_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn records(o: &Output) -> Vec<OutputRecord> {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    read_csv(o.stdout.as_slice()).unwrap()
}

#[test]
fn solve_n4_contains_the_unit_roots() {
    let out = rootscope(&["solve", "--n", "4"]);
    assert!(stdout(&out).starts_with("n,kind,root_re,root_im,residual,approx_re,approx_im,abs_deviation\n"));
    let recs = records(&out);
    assert_eq!(recs.len(), 5);
    for sign in [1.0, -1.0] {
        let (re, im) = (-0.5, sign * 3f64.sqrt() / 2.0);
        assert!(recs
            .iter()
            .any(|r| (r.root_re - re).abs() < 1e-9 && (r.root_im - im).abs() < 1e-9));
    }
    assert!(recs.iter().all(|r| r.residual <= 1e-10));
}

#[test]
fn solve_n1_is_the_golden_pair() {
    let recs = records(&rootscope(&["solve", "--n", "1"]));
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0].kind, Kind::Positive);
    assert!((recs[0].root_re - 1.618_033_988_7).abs() < 1e-9);
    assert_eq!(recs[1].kind, Kind::Negative);
    assert!((recs[1].root_re + 0.618_033_988_7).abs() < 1e-9);
    assert_eq!(recs[0].root_im, 0.0);
}

#[test]
fn solve_orders_positive_negative_then_by_imaginary_part() {
    let recs = records(&rootscope(&["solve", "--n", "9"]));
    assert_eq!(recs.len(), 10);
    assert_eq!(recs[0].kind, Kind::Positive);
    assert_eq!(recs[1].kind, Kind::Negative);
    let ims: Vec<f64> = recs[2..].iter().map(|r| r.root_im).collect();
    assert!(ims.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn solve_json_matches_csv() {
    let csv = records(&rootscope(&["solve", "--n", "12"]));
    let out = rootscope(&["solve", "--n", "12", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: Vec<OutputRecord> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(csv, json);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["solve", "--n", "0"][..],
        &["solve", "--n", "3", "--tol", "-1"],
        &["solve"],
        &["frobnicate"],
        &["verify", "--n-max", "0"],
        &["verify", "--n-max", "301"],
        &["fit", "--n-min", "5", "--n-max", "4"],
        &["table", "--which", "positive", "--ns", "1"],
    ] {
        let out = rootscope(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let out = rootscope(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify"));
}

#[test]
fn positive_table_rows() {
    let recs = records(&rootscope(&["table", "--which", "positive", "--ns", "5,10,1000"]));
    assert_eq!(recs.iter().map(|r| r.n).collect::<Vec<_>>(), vec![5, 10, 1000]);
    // reference rows reproducible to print precision
    assert!((recs[0].root_re - 3.5063).abs() < 2e-3);
    assert!((recs[0].approx_value_re.unwrap() - 4.4107).abs() < 2e-3);
    assert!((recs[1].root_re - 5.4263).abs() < 2e-3);
    assert!((recs[1].approx_value_re.unwrap() - 6.8092).abs() < 2e-3);
    // n = 1000 against the independently computed root and formula value
    assert!((recs[2].root_re - 190.071_075_2).abs() < 1e-6);
    assert!((recs[2].approx_value_re.unwrap() - 201.000_558_9).abs() < 1e-6);
    for r in &recs {
        // every printed value carries up to half a unit in the tenth digit
        let f = r.approx_value_re.unwrap();
        let dev = (r.root_re - f).abs();
        assert!((r.abs_deviation.unwrap() - dev).abs() <= 1e-9 * (r.root_re.abs() + f.abs() + dev));
    }
}

#[test]
fn negative_table_rows() {
    let recs = records(&rootscope(&["table", "--which", "negative", "--ns", "5,25,55"]));
    for (r, (root, f)) in recs.iter().zip([(-0.5312, -0.5347), (-0.5051, -0.5069), (-0.5023, -0.5031)]) {
        assert_eq!(r.kind, Kind::Negative);
        assert!((r.root_re - root).abs() < 2e-3, "n = {}", r.n);
        assert!((r.approx_value_re.unwrap() - f).abs() < 1e-4, "n = {}", r.n);
    }
}

#[test]
fn negative_table_rejects_even_n() {
    let out = rootscope(&["table", "--which", "negative", "--ns", "5,6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Negative roots exist for odd n only"));
}

#[test]
fn verify_small_range_passes_and_reports_boundary_roots() {
    let out = rootscope(&["verify", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("0 violations"));
    assert!(text.contains("boundary roots at n = 4: -5.000000000e-1-8.660254038e-1i, -5.000000000e-1+8.660254038e-1i"));
    assert!(text.contains("root count                               4/4 passed"));
}

#[test]
fn verify_reports_the_first_nonreal_root_outside_the_lens() {
    // from n = 5 on, a pair of non-real roots has |z| > 1 and Re z > -1/2
    let out = rootscope(&["verify", "--n-max", "50"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("first counterexample: ")).unwrap();
    let ce: serde_json::Value = serde_json::from_str(line.trim_start_matches("first counterexample: ")).unwrap();
    assert_eq!(ce["n"], 5);
    assert_eq!(ce["check"], "R4 no non-real roots");
    assert!((ce["z_re"].as_f64().unwrap() + 0.453_916_771).abs() < 1e-8);
    for check in ["R1", "R2", "R3"] {
        let row = text.lines().find(|l| l.starts_with(check)).unwrap();
        assert!(row.contains("50/50 passed"), "{row}");
    }
    assert!(text.contains("R4 no non-real roots                     4/50 passed, first failure at n = 5"));
}

#[test]
fn verify_output_does_not_depend_on_thread_count() {
    let one = rootscope_with_threads(&["verify", "--n-max", "60"], "1");
    let four = rootscope_with_threads(&["verify", "--n-max", "60"], "4");
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), four.status.code());
    let bad = rootscope_with_threads(&["verify", "--n-max", "3"], "zero");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn fit_reports_both_variants_and_a_winner() {
    let out = rootscope(&["fit", "--n-min", "20", "--n-max", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,nearest_re,nearest_im,deviation_from_limit,err_STATEMENT,err_DERIVATION"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 82);
    assert!(text.contains("# winner: DERIVATION"));
}

#[test]
fn fit_fifty_to_sixty() {
    let out = rootscope(&["fit", "--n-min", "50", "--n-max", "60", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    let derivation = v["mean_abs_error"]["DERIVATION"].as_f64().unwrap();
    let statement = v["mean_abs_error"]["STATEMENT"].as_f64().unwrap();
    assert!(derivation < 0.1);
    // the larger real correction overshoots by about 2 pi sqrt(3)/(3n)
    assert!(statement > 0.1 && statement < 0.11);
    assert_eq!(v["winner"], "DERIVATION");
    // 52 = 4 mod 6: the nearest root is e^(2 pi i/3) itself
    let row52 = &v["rows"][2];
    assert_eq!(row52["n"], 52);
    assert!(row52["deviation_from_limit"].as_f64().unwrap() < 1e-12);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["solve", "--n", "37"][..],
        &["solve", "--n", "37", "--format", "json"],
        &["table", "--which", "positive", "--ns", "5,50,500"],
        &["fit", "--n-min", "10", "--n-max", "30"],
    ] {
        let a = rootscope(args);
        let b = rootscope(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}
