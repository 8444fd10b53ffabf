use std::path::PathBuf;
use std::process::{Command, Output};

fn channel(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../channels").join(name)
}

fn permchan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permchan")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect()
}

#[test]
fn capacity_of_the_z_channel() {
    let o = permchan(&["capacity", "--channel", channel("z.ch").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines = data_lines(&o);
    let header: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    let col = header.iter().position(|&h| h == "capacity").unwrap();
    assert_eq!(row[col], "0.5");
    assert_eq!(row[0], "z-channel");
    let out = stdout(&o);
    assert!(out.contains("# seed: none"));
    assert!(out.contains("# channel-sha256: "));
}

#[test]
fn cover_with_unit_refinement_is_one_center() {
    let o = permchan(&["cover", "--k", "2", "--eps", "1", "--gamma", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(data_lines(&o), vec!["p1,p2".to_string(), "0.5,0.5".to_string()]);
}

#[test]
fn cover_certificate_line() {
    let o = permchan(&["cover", "--k", "3", "--eps", "0.25", "--certify", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.starts_with("# radius on lattice m=500") && last.ends_with(": certified"), "{last}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(permchan(&["capacity"]).status.code(), Some(2));
    assert_eq!(permchan(&["capacity", "--bogus"]).status.code(), Some(2));
    assert_eq!(permchan(&["cover", "--k", "2", "--eps", "0"]).status.code(), Some(2));
    assert_eq!(permchan(&["cover", "--k", "1", "--eps", "0.5"]).status.code(), Some(2));
    let bsc = channel("bsc.ch");
    let o = permchan(&["divergence", "--channel", bsc.to_str().unwrap(), "--n", "7", "--pi", "4,4"]);
    assert_eq!(o.status.code(), Some(2));
    let o =
        permchan(&["simulate", "--channel", bsc.to_str().unwrap(), "--rates", "0.3", "--ns", "256", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_1() {
    let o = permchan(&["capacity", "--channel", "/nonexistent/channel.ch"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ch");
    std::fs::write(&bad, "2 2\n0.5 0.6\n0 1\n").unwrap();
    assert_eq!(permchan(&["capacity", "--channel", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_sandwich_passes() {
    let o = permchan(&["verify", "--suite", "sandwich"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = data_lines(&o);
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.contains(",PASS,")));
}

#[test]
fn divergence_report_columns() {
    let o = permchan(&["divergence", "--channel", channel("bsc.ch").to_str().unwrap(), "--n", "8", "--pi", "4,4"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = data_lines(&o);
    let header: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    let get = |name: &str| row[header.iter().position(|&h| h == name).unwrap()].parse::<f64>().unwrap();
    assert!((get("direct") - get("n_times_d") - get("gap")).abs() < 1e-8);
    assert!(get("gap") > 0.0);
}

#[test]
fn simulate_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let bsc = channel("bsc.ch");
    let run = |threads: &str| {
        let out = dir.path().join(format!("sim{threads}.csv"));
        let svg = dir.path().join(format!("sim{threads}.svg"));
        let status = Command::new(env!("CARGO_BIN_EXE_permchan"))
            .env("PERMCHAN_THREADS", threads)
            .args(["--out", out.to_str().unwrap(), "simulate", "--channel", bsc.to_str().unwrap()])
            .args(["--rates", "0.3,0.8", "--ns", "64,256", "--trials", "3000", "--seed", "7"])
            .args(["--svg", svg.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(status.success());
        (std::fs::read(out).unwrap(), std::fs::read(svg).unwrap())
    };
    let (one, svg_one) = run("1");
    let (four, svg_four) = run("4");
    assert_eq!(one, four);
    assert_eq!(svg_one, svg_four);
    assert!(svg_one.starts_with(b"<svg"));

    let text = String::from_utf8(one).unwrap();
    assert!(text.contains("# seed: 7"));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.starts_with("rate,n,M,trials,errors,err_rate,wilson_lo,wilson_hi"));
}

#[test]
fn text_format_is_aligned() {
    let o = permchan(&["--format", "text", "bounds", "--channel", channel("bsc.ch").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines = data_lines(&o);
    let col = lines[0].find("value").unwrap();
    assert!(lines[1..].iter().all(|l| l.as_bytes()[col - 1] == b' '));
}

#[test]
fn failed_verification_exits_3() {
    let o = permchan(&["verify", "--suite", "threshold", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains(",FAIL,"));
}
