//! End-to-end runs of the `freqfn` binary.

use std::fs;
use std::path::Path;
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn freqfn(args: &[&str]) -> Run {
    let o = Command::new(env!("CARGO_BIN_EXE_freqfn"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn fixtures() -> (TempDir, String, String, String) {
    let dir = TempDir::new().unwrap();
    let f2 = write(&dir, "f2.sf", "-1 1 1\n");
    let f7 = write(&dir, "f7.sf", "-1 0 1\n1 2 100\n");
    let empty = write(&dir, "empty.sf", "");
    (dir, f2, f7, empty)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_prints_key_value_lines() {
    let (_d, f2, _, empty) = fixtures();
    let r = freqfn(&["eval", "--fn", &f2, "--x", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        r.stdout,
        "maximal=1/3\nfrequency=3\nstatus=attained\nwitness=3\n"
    );

    let r = freqfn(&["eval", "--fn", &empty, "--x", "0"]);
    assert_eq!(r.stdout, "maximal=0\nfrequency=0\nstatus=zero_function\n");

    let r = freqfn(&["eval", "--fn", &f2, "--x", "1"]);
    assert_eq!(
        r.stdout,
        "maximal=1/2\nfrequency=0\nstatus=zero_by_local_limit\n"
    );
}

#[test]
fn eval_aux_and_oracle() {
    let (_d, f2, _, _) = fixtures();
    let r = freqfn(&["eval", "--fn", &f2, "--x", "2", "--aux", "4,1"]);
    assert!(r.stdout.contains("aux_frequency=24/11\n"), "{}", r.stdout);
    let r = freqfn(&[
        "eval", "--fn", &f2, "--x", "2", "--oracle", "--r-max", "8", "--grid", "1024",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("oracle_maximal=1/3\n"), "{}", r.stdout);
    assert!(r.stdout.contains("oracle_frequency=3\n"));
    assert!(r.stdout.contains("oracle_grid_count=1024\n"));
}

#[test]
fn malformed_inputs_exit_one() {
    let (d, f2, _, _) = fixtures();
    let bad = write(&d, "bad.sf", "0 1 1\n1/2 2 3\n");
    let r = freqfn(&["eval", "--fn", &bad, "--x", "0"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("overlaps"), "{}", r.stderr);
    assert_eq!(freqfn(&["eval", "--fn", &f2, "--x", "0.5"]).code, 1);
    assert_eq!(
        freqfn(&["eval", "--fn", "/no/such/file", "--x", "1"]).code,
        1
    );
    assert_eq!(freqfn(&["frobnicate"]).code, 1);
    assert_eq!(freqfn(&["scan", "--fn", &f2, "--N", "0"]).code, 1);
    assert_eq!(freqfn(&["corpus", "--id", "f6"]).code, 1);
}

#[test]
fn profile_csv() {
    let (_d, f2, _, _) = fixtures();
    let r = freqfn(&["profile", "--fn", &f2, "--x", "2"]);
    assert_eq!(
        r.stdout,
        "segment_index,r_lo,r_hi,alpha,beta\n0,0,1,0,0\n1,1,3,-1,1\n2,3,inf,2,0\n# center=2\n# local_limit=0\n"
    );
}

#[test]
fn scan_band_and_density_csv() {
    let (_d, f2, _, _) = fixtures();
    let r = freqfn(&["scan", "--fn", &f2, "--N", "2", "--step", "1"]);
    assert_eq!(
        r.stdout,
        "x,maximal,frequency\n-2,1/3,3\n-1,1/2,0\n0,1,0\n1,1/2,0\n2,1/3,3\n# domain_bound=2\n# grid_step=1\n"
    );
    let r = freqfn(&["band", "--fn", &f2, "--N", "10"]);
    assert!(
        r.stdout.starts_with("x,maximal,frequency\n0,1,0\n#"),
        "{}",
        r.stdout
    );
    assert!(r.stdout.contains("# band_extent=0\n"));

    let r = freqfn(&["density", "--fn", &f2, "--N", "10,20,40,80"]);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "N,count,measure,density");
    assert_eq!(lines[1], "10,17,17/8,17/80");
    assert_eq!(lines[4], "80,17,17/8,17/640");
    assert!(r.stdout.contains("# non_increasing=true\n"));
}

#[test]
fn discont_csv() {
    let (_d, _, f7, _) = fixtures();
    let r = freqfn(&["discont", "--fn", &f7]);
    assert_eq!(
        r.stdout,
        "point,maximal_at,side_value,jump_lower_bound,high_side\n1,50,100,50,right\n2,50,100,50,left\n# count=2\n"
    );
}

#[test]
fn check_suites() {
    let (d, _, f7, _) = fixtures();
    let r = freqfn(&[
        "check",
        "--suite",
        "prop1",
        "--fn",
        &f7,
        "--samples",
        "200",
        "--seed",
        "7",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "prop1: 200/200 exact\n");
    for suite in ["prop2", "equivariance", "discont", "thm5", "thm6"] {
        let r = freqfn(&["check", "--suite", suite, "--fn", &f7, "--samples", "50"]);
        assert_eq!(r.code, 0, "{suite}: {}", r.stdout);
    }
    let out = d.path().join("cases.csv");
    let r = freqfn(&[
        "check",
        "--suite",
        "oracle",
        "--fn",
        &f7,
        "--samples",
        "20",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.stdout, "oracle: 20/20 contained\n");
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("at,ok\n") && csv.ends_with("# passed=20\n# total=20\n# seed=0\n"));
    assert_eq!(
        freqfn(&["check", "--suite", "nonsense", "--fn", &f7]).code,
        1
    );
}

#[test]
fn sampled_output_is_reproducible() {
    let (d, _, f7, _) = fixtures();
    let run = |seed: &str, name: &str| {
        let p = d.path().join(name);
        freqfn(&[
            "check",
            "--suite",
            "prop1",
            "--fn",
            &f7,
            "--samples",
            "30",
            "--seed",
            seed,
            "--out",
            path_str(&p),
        ]);
        fs::read(p).unwrap()
    };
    assert_eq!(run("3", "a.csv"), run("3", "b.csv"));
    assert_ne!(run("3", "a.csv"), run("4", "c.csv"));
}

#[test]
fn corpus_round_trips_through_eval() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("f5.sf");
    let r = freqfn(&["corpus", "--id", "f5", "--K", "10", "--out", path_str(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.starts_with("-1 0 1\n"));
    let r = freqfn(&["eval", "--fn", path_str(&out), "--x", "3/8"]);
    assert!(r.stdout.contains("frequency=5/8\n"), "{}", r.stdout);

    let r = freqfn(&["corpus", "--id", "f4", "--k", "5"]);
    assert_eq!(r.stdout, "-1 1 1/5\n");
}

#[test]
fn plots_are_deterministic_with_sibling_csv() {
    let (d, f2, _, _) = fixtures();
    let svg = d.path().join("t.svg");
    let r = freqfn(&[
        "plot",
        "--fn",
        &f2,
        "--kind",
        "line",
        "--N",
        "4",
        "--step",
        "1/4",
        "--out",
        path_str(&svg),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let first = fs::read(&svg).unwrap();
    let csv = fs::read_to_string(d.path().join("t.csv")).unwrap();
    assert!(csv.starts_with("x,maximal,frequency\n-4,1/5,5\n"));
    assert!(String::from_utf8(first.clone())
        .unwrap()
        .starts_with("<svg"));
    freqfn(&[
        "plot",
        "--fn",
        &f2,
        "--kind",
        "line",
        "--N",
        "4",
        "--step",
        "1/4",
        "--out",
        path_str(&svg),
    ]);
    assert_eq!(fs::read(&svg).unwrap(), first);

    let dsvg = d.path().join("density.svg");
    let r = freqfn(&[
        "density",
        "--fn",
        &f2,
        "--N",
        "10,20,40,80",
        "--format",
        "svg",
        "--out",
        path_str(&dsvg),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let body = fs::read_to_string(&dsvg).unwrap();
    assert_eq!(body.matches("<circle").count(), 4);
    assert!(d.path().join("density.csv").exists());

    assert_eq!(
        freqfn(&["plot", "--fn", &f2, "--N", "4,8", "--out", path_str(&svg)]).code,
        1
    );
    assert_eq!(
        freqfn(&["scan", "--fn", &f2, "--N", "4", "--format", "svg"]).code,
        1
    );
    assert_eq!(
        freqfn(&[
            "plot",
            "--fn",
            &f2,
            "--N",
            "4",
            "--out",
            "/no/such/dir/p.svg"
        ])
        .code,
        1
    );
}
