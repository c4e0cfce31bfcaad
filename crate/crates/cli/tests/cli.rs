use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ekr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(args)
        .env_remove("EKR_MAX_UNIVERSE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const EVEN_WEIGHT: &str = "2 3\n000\n011\n101\n110\n";

#[test]
fn bound_prints_size_and_star_count() {
    let o = ekr(&["bound", "-q", "3", "-m", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "bound=27 stars=12\n");
    assert_eq!(
        stdout(&ekr(&["bound", "-q", "2", "-m", "1"])),
        "bound=1 stars=2\n"
    );
    assert_eq!(code(&ekr(&["bound", "-q", "1", "-m", "3"])), 2);
}

#[test]
fn bound_respects_lowered_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(["bound", "-q", "2", "-m", "10"])
        .env("EKR_MAX_UNIVERSE", "512")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(["bound", "-q", "2", "-m", "30"])
        .env("EKR_MAX_UNIVERSE", "99999999999")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2, "the variable never raises the cap");
}

#[test]
fn check_even_weight_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "even.txt", EVEN_WEIGHT);

    let o = ekr(&["check", &path, "-r", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("intersecting=true star=none"));

    let o = ekr(&["check", &path, "-r", "3"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("intersecting(r=3)=false"));
    // 000 and 011 agree only at position 1, where 101 differs
    assert!(out.contains("witness=000,011,101"));
}

#[test]
fn check_json_is_structured() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "star.txt", "3 2\n00\n01\n02\n");
    let o = ekr(&["check", &path, "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["r_wise_intersecting"], true);
    assert_eq!(v["star"]["position"], 1);
    assert_eq!(v["star"]["letter"], 0);
    assert_eq!(v["size"], 3);
}

#[test]
fn malformed_files_exit_two_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.txt", "2 3\n000\n011\n000\n");
    let o = ekr(&["check", &dup]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let bad = write(dir.path(), "bad.txt", "2 3\n000\n0120\n");
    assert_eq!(code(&ekr(&["check", &bad])), 2);
    assert_eq!(code(&ekr(&["check", "/nonexistent/family.txt"])), 2);
}

#[test]
fn enumerate_examples() {
    let o = ekr(&["enumerate", "-q", "2", "-m", "3", "-r", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let families: Vec<&str> = out.lines().filter(|l| l.starts_with("star=")).collect();
    assert_eq!(families.len(), 6);
    assert!(families.iter().all(|l| !l.starts_with("star=none")));
    assert!(out.contains("count=6 stars=6"));

    let o = ekr(&["enumerate", "-q", "2", "-m", "4", "-r", "2", "--count-only"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("count=256 "));

    let o = ekr(&["enumerate", "-q", "3", "-m", "3", "-r", "2"]);
    assert!(stdout(&o).contains("count=9 stars=9"));
}

#[test]
fn enumerate_first_nonstar() {
    let o = ekr(&["enumerate", "-q", "2", "-m", "3", "--first-nonstar"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("nonstar={000,001,010,100}"));
    let o = ekr(&["enumerate", "-q", "3", "-m", "3", "--first-nonstar"]);
    assert!(stdout(&o).starts_with("nonstar=none"));
}

#[test]
fn enumerate_rejects_infeasible_shapes() {
    let o = ekr(&["enumerate", "-q", "4", "-m", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("q=3: m<=3"));
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = ekr(&[
        "enumerate",
        "-q",
        "2",
        "-m",
        "5",
        "--count-only",
        "--node-budget",
        "50",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("exhausted=false"));
    let o = ekr(&["verify", "thm3", "-m", "5", "--node-budget", "50"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn workers_do_not_change_output() {
    for args in [
        &["enumerate", "-q", "2", "-m", "4"][..],
        &["enumerate", "-q", "3", "-m", "3", "--count-only"][..],
        &["verify", "thm3", "-m", "5"][..],
    ] {
        let one = ekr(&[args, &["--workers", "1"]].concat());
        for n in ["2", "4", "7"] {
            let many = ekr(&[args, &["--workers", n]].concat());
            assert_eq!(one.stdout, many.stdout, "{args:?} with {n} workers");
        }
    }
}

fn without_elapsed(doc: &str) -> String {
    doc.lines()
        .filter(|l| !l.contains("\"elapsed_ms\"") && !l.starts_with("sha256 "))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn certificates_differ_only_in_elapsed_time() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    ekr(&[
        "verify",
        "thm2",
        "-q",
        "3",
        "-m",
        "3",
        "--cert",
        a.to_str().unwrap(),
    ]);
    ekr(&[
        "verify",
        "thm2",
        "-q",
        "3",
        "-m",
        "3",
        "--cert",
        b.to_str().unwrap(),
        "--workers",
        "4",
    ]);
    let (a, b) = (
        fs::read_to_string(a).unwrap(),
        fs::read_to_string(b).unwrap(),
    );
    assert_eq!(without_elapsed(&a), without_elapsed(&b));
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("thm3.json");
    let o = ekr(&[
        "verify",
        "thm3",
        "-m",
        "5",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("families=10 "));
    assert!(out.contains("all_stars=true"));
    assert!(out.ends_with("conclusion=holds\n"));

    let o = ekr(&["verify", "thm2", "-q", "3", "-m", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("families=9 stars_expected=9 all_stars=true"));

    let o = ekr(&["verify", "thm2", "-q", "2", "-m", "3"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("all_stars=false"));
    assert!(out.contains("nonstar 000,011,101,110\n"));
    assert!(out.ends_with("conclusion=fails\n"));

    assert_eq!(
        code(&ekr(&["verify", "thm2", "-m", "3"])),
        2,
        "thm2 needs -q"
    );
    assert_eq!(code(&ekr(&["verify", "thm9", "-m", "3"])), 2);
}

#[test]
fn certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = ekr(&[
        "verify",
        "thm3",
        "-m",
        "4",
        "--cert",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&path).unwrap();
    let cert = ekr_words::verify::Certificate::from_document(&text).unwrap();
    let again = cert.revalidate().unwrap();
    assert_eq!(again.count, 8);
    assert!(again.all_stars);

    let tampered = text.replacen("\"m\": 4", "\"m\": 5", 1);
    assert!(ekr_words::verify::Certificate::from_document(&tampered).is_err());
}

#[test]
fn stars_writes_every_star() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stars");
    let o = ekr(&[
        "stars",
        "-q",
        "3",
        "-m",
        "2",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    assert_eq!(names[0], "star_p1_l0.txt");

    let p = out.join("star_p2_l1.txt");
    let o = ekr(&["check", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("star=pos2:1"));
}
