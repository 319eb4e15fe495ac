use std::process::{Command, Output};

fn metric_gap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metric-gap"))
        .args(args)
        .env_remove("METRIC_GAP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn compute_path_into_k2() {
    let o = metric_gap(&[
        "compute",
        "--g",
        "family:path:3",
        "--h",
        "family:complete:2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"lambda\":{\"num\":\"4\",\"den\":\"3\"},\"witness\":[0,0,1],\"evaluated\":3,\"skipped_zero_denominator\":0}\n"
    );
}

#[test]
fn compute_complete_into_complete() {
    let o = metric_gap(&[
        "compute",
        "--g",
        "family:complete:5",
        "--h",
        "family:complete:3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"lambda\":{\"num\":\"5\",\"den\":\"4\"},\"witness\":[0,0,0,0,1],\"evaluated\":80,\"skipped_zero_denominator\":0}\n"
    );
}

#[test]
fn compute_csv() {
    let o = metric_gap(&["compute", "--g", "P3", "--h", "K2", "--csv"]);
    assert_eq!(
        stdout(&o),
        "lambda,witness,evaluated,skipped_zero_denominator\n4/3,0 0 1,3,0\n"
    );
    let o = metric_gap(&["compute", "--g", "P3", "--h", "K2", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "lambda,witness,evaluated,skipped_zero_denominator\n4/3,0 0 1,3,0\n"
    );
}

#[test]
fn compute_edgeless_graph_is_undefined() {
    let o = metric_gap(&["compute", "--g", "D??", "--h", "family:complete:2"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "{\"error\":\"undefined_gap\"}\n");
}

#[test]
fn compute_budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_metric-gap"))
        .args(["compute", "--g", "K6", "--h", "K3"])
        .env("METRIC_GAP_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(
        stdout(&o),
        "{\"error\":\"budget_exceeded\",\"required\":\"729\",\"budget\":10,\"upper_bound\":{\"num\":\"6\",\"den\":\"5\"}}\n"
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_metric-gap"))
        .args(["compute", "--g", "K3", "--h", "K2"])
        .env("METRIC_GAP_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two() {
    let o = metric_gap(&["compute", "--g", "D?", "--h", "K2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert_eq!(
        stderr,
        "error: graph6 `D?`: byte 2: expected 3 bytes for n = 5, found 2\n"
    );
    assert_eq!(
        metric_gap(&["compute", "--g", "family:cycle:2", "--h", "K2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(metric_gap(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_single_family() {
    let o = metric_gap(&[
        "verify",
        "--families",
        "path:3",
        "--h",
        "K2",
        "--samples",
        "1",
        "--csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let expected = "\
check,g,h,outcome,direction,bound,subject,detail
complete_upper,path:3,K2,pass,<=,3/2,4/3,
denominator_lower,path:3,K2,not_applicable,,,,\"f=[1, 1, 0]; vol(G) < 6\"
denominator_upper,path:3,K2,pass,<=,4,3,\"f=[1, 1, 0]\"
edge_addition_lower,path:3,K2,not_applicable,,,,+0-2; vol(G) < 6
edge_addition_upper,path:3,K2,not_applicable,,,,+0-2; vol(G) < 6
equality_iff_complete,path:3,K2,pass,<,3/2,4/3,
k2_extremality,path:3,K2,pass,<=,4/3,4/3,
naive_lower,path:3,K2,pass,>=,1,4/3,
naive_lower_regular,path:3,K2,not_applicable,,,,G is not regular
positive_iff_connected,path:3,K2,pass,>,0,4/3,connected
sg_lower,path:3,K2,pass,>=,1/5,4/3,
complete_chain_equal,path:3,K2..K6,pass,=,4/3,4/3,K_4 vs K_3
complete_chain_equal,path:3,K2..K6,pass,=,4/3,4/3,K_5 vs K_4
complete_chain_equal,path:3,K2..K6,pass,=,4/3,4/3,K_6 vs K_5
complete_chain_monotone,path:3,K2..K6,pass,<=,4/3,4/3,K_3 vs K_2
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn verify_json_summary() {
    let o = metric_gap(&[
        "verify",
        "--families",
        "path:3",
        "--h",
        "K2",
        "--samples",
        "1",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with(
        "{\"format_version\":1,\"graphs\":1,\"h_list\":[\"K2\"],\"summary\":{\"total\":15,\"passed\":11,\"failed\":0,\"not_applicable\":4,\"informational\":0,\"errors\":0},\"records\":[{\"check\":\"complete_upper\",\"g\":\"path:3\",\"h\":\"K2\",\"outcome\":\"pass\",\"direction\":\"at_most\",\"bound\":{\"num\":\"3\",\"den\":\"2\"},\"subject\":{\"num\":\"4\",\"den\":\"3\"},\"detail\":\"\"}"
    ));
    assert!(!text.contains("runtime_us"));
    let timed = metric_gap(&["verify", "--families", "path:3", "--h", "K2", "--timing"]);
    assert!(stdout(&timed).contains("runtime_us"));
}

#[test]
fn verify_random_and_worked() {
    let o = metric_gap(&[
        "verify",
        "--random",
        "7",
        "200",
        "0.5",
        "--seed",
        "7",
        "--h",
        "K2",
        "--samples",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["graphs"], 200);

    let o = metric_gap(&["verify", "--families", "paper", "--h", "K2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["summary"]["errors"], 0);
}

#[test]
fn search_apex() {
    let o = metric_gap(&["search-monotonic", "--corpus", "k22-apex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"graph_witnesses\":[{\"change\":\"increase\",\"operation\":\"add apex\",\"before_graph\":\"C]\",\"after_graph\":\"D]{\",\"h\":\"K2\",\"before\":{\"num\":\"1\",\"den\":\"1\"},\"after\":{\"num\":\"16\",\"den\":\"15\"},\"ratio\":{\"num\":\"16\",\"den\":\"15\"}}],\"metric_witnesses\":[]}\n"
    );
}

#[test]
fn search_same_side_csv_and_custom_corpus() {
    let o = metric_gap(&["search-monotonic", "--corpus", "k33-same-side", "--csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("kind,operation,before_graph,after_graph,h,before,after,ratio")
    );
    assert_eq!(
        lines.next(),
        Some("decrease,add edge 0-1,EFz_,Efz_,K2,1,20/21,20/21")
    );
    assert_eq!(lines.count(), 5);

    let o = metric_gap(&[
        "search-monotonic",
        "--g",
        "family:complete_bipartite:3:3",
        "--h",
        "K2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["graph_witnesses"].as_array().unwrap().len(), 7);
}

#[test]
fn embed_two_points() {
    let o = metric_gap(&["embed", "--x", "family:complete:2", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"k\":2,\"dim\":1,\"scales\":1,\"reps\":1,\"seed\":0,\"points\":[[1.0],[0.0]],\"projection\":[1.0,0.0],\"distortion\":{\"l1\":{\"expansion\":1.0,\"contraction\":1.0,\"distortion\":1.0},\"line\":{\"expansion\":1.0,\"contraction\":1.0,\"distortion\":1.0}}}\n"
    );
}

#[test]
fn embed_cycle_and_summary() {
    let o = metric_gap(&["embed", "--x", "family:cycle:8", "--seed", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["distortion"]["l1"]["expansion"].as_f64().unwrap() <= v["dim"].as_f64().unwrap());

    let o = metric_gap(&["embed", "--x", "family:path:8", "--seeds", "32"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seeds"], 32);
    assert_eq!(v["dim"], 9);
    assert!(v["max_l1_expansion"].as_f64().unwrap() <= 9.0);

    assert_eq!(metric_gap(&["embed", "--x", "D??"]).status.code(), Some(2));
}

#[test]
fn spectrum_k2() {
    let o = metric_gap(&["spectrum", "--g", "K2"]);
    assert_eq!(
        stdout(&o),
        "{\"eigenvalues\":[0.0,2.0],\"lambda1\":2.0,\"residual\":0.0,\"trace\":2.0,\"sweeps\":1}\n"
    );
    let o = metric_gap(&["spectrum", "--g", "K2", "--csv"]);
    assert_eq!(stdout(&o), "index,eigenvalue\n0,0\n1,2\n");
}

#[test]
fn examples_all_match() {
    let o = metric_gap(&["examples", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with(
        "name,quantity,relation,expected,computed,matches\nP3 into K2,lambda,=,4/3,4/3,true\n"
    ));
    assert!(text.contains("dumbbell(6) cut map into K2,R_f,=,2/7,2/7,true\n"));
    assert!(text.contains("K33 plus one same-side edge into K2,lambda,=,20/21,20/21,true\n"));
    assert!(!text.contains("false"));
}
