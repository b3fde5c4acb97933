use std::process::{Command, Output};

fn pgfig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgfig"))
        .args(args)
        .output()
        .expect("run pgfig")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_csv_has_seven_rows_summing_to_61() {
    let o = pgfig(&["census", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("category,count,orbit_size,point_type,line_type")
    );
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 7);
    let total: u64 = rows
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 61);
}

#[test]
fn census_json_at_q4() {
    let o = pgfig(&["census", "--q", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = &v["checks"][0]["counts"]["counts"];
    assert_eq!(c["type_iii_sls"], 6);
    assert_eq!(c["iii_points_iii_lines"], 74);
    assert_eq!(v["passed"], true);
}

#[test]
fn figueroa_rejects_q2_with_usage_code() {
    let o = pgfig(&["verify", "--q", "2", "--suite", "figueroa"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q > 2"));
    let o = pgfig(&["figueroa", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_prime_power_and_bad_flags_are_usage_errors() {
    assert_eq!(pgfig(&["census", "--q", "6"]).status.code(), Some(2));
    assert_eq!(
        pgfig(&["verify", "--q", "3", "--check", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pgfig(&["verify", "--q", "3", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn failing_check_exits_one() {
    let o = pgfig(&["figueroa", "--q", "3", "--check", "pr"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn passing_subset_exits_zero() {
    let o = pgfig(&["maps", "--q", "3", "--check", "mu", "--check", "fixed"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["claim"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "maps.mu_involution",
            "maps.mu_tplanes",
            "maps.mu_planes",
            "maps.fixed"
        ]
    );
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let a = pgfig(&["verify", "--q", "3", "--seed", "7", "--jobs", "1"]);
    let b = pgfig(&["verify", "--q", "3", "--seed", "7", "--jobs", "4"]);
    assert_eq!(a.status.code(), b.status.code());
    // the job count is echoed in the header; everything else must match
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .filter(|l| !l.contains("\"jobs\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
    let c = pgfig(&["verify", "--q", "3", "--seed", "7", "--jobs", "1"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn emitted_plane_has_header_and_q3_blocks() {
    let dir = std::env::temp_dir().join(format!("pgfig-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.txt");
    let o = pgfig(&[
        "figueroa",
        "--q",
        "3",
        "--check",
        "build",
        "--emit-plane",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("FIG 27 757"));
    let blocks: Vec<_> = lines.collect();
    assert_eq!(blocks.len(), 757);
    assert!(blocks.iter().all(|b| b.split(' ').count() == 28));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sls_and_tplane_listings() {
    let o = pgfig(&["sls", "--q", "3", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 13);
    let o = pgfig(&["tplane", "--q", "3", "--theta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| !l.starts_with('[')).count(), 13);
    assert_eq!(text.lines().filter(|l| l.starts_with('[')).count(), 13);
}

#[test]
fn text_format_summarises() {
    let o = pgfig(&[
        "verify", "--q", "3", "--suite", "census", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("10 passed, 0 failed, 0 skipped\n"));
}
