use brauer_cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("brauer").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(out.stdout.lines().next().unwrap()).unwrap()
}

#[test]
fn orbit_example_reports_a_witness() {
    let out = cli(&["orbit", "--n", "5", "--delta", "2", "6,4,-2,3,5", "-4,2,5,-1,4"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("in-orbit: true\npi: "));
    let v = json(&cli(&["orbit", "--n", "5", "--delta", "2", "--json", "6,4,-2,3,5", "-4,2,5,-1,4"]));
    assert_eq!(v["context"], serde_json::json!({ "n": 5, "delta": 2, "p": 0 }));
    assert_eq!(v["witness"]["pi"].as_array().unwrap().len(), 5);
    assert!(v["witness"]["sigma"].as_array().unwrap().iter().all(|s| s.as_i64().unwrap().abs() == 1));
}

#[test]
fn absent_witness_is_null() {
    let v = json(&cli(&["orbit", "--n", "2", "--delta", "2", "--json", "2", "1,1"]));
    assert_eq!(v["result"], Value::Bool(false));
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn blocks_example_is_three_singletons() {
    let out = cli(&["blocks", "--n", "2", "--delta", "2"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "n=2 delta=2 p=0 kind=exact-blocks");
    assert_eq!(&lines[1..], ["2", "1,1", "∅"]);
}

#[test]
fn abacus_example_reports_runner_counts() {
    let out = cli(&["abacus", "--p", "5", "--b", "20", "--n", "16", "5,3,3,2,1,1"]);
    assert_eq!(out.code, 0);
    for want in ["runner 0: 5", "runners 1/4: 8", "runners 2/3: 7"] {
        assert!(out.stdout.contains(want), "{}", out.stdout);
    }
}

#[test]
fn strict_mode_sets_exit_status() {
    let yes = cli(&["balanced", "--n", "4", "--delta", "1", "--strict", "2,2", "2,2"]);
    assert_eq!(yes.code, 0);
    let no = cli(&["block", "--n", "2", "--delta", "2", "--strict", "2", "1,1"]);
    assert_eq!(no.code, 1);
    let lax = cli(&["block", "--n", "2", "--delta", "2", "2", "1,1"]);
    assert_eq!(lax.code, 0);
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["orbit", "--n", "2", "--delta", "1.5", "2", "1,1"],
        vec!["orbit", "--n", "2", "--delta", "1", "--p", "4", "2", "1,1"],
        vec!["orbit", "--n", "2", "--delta", "1", "2,x", "1,1"],
        vec!["balanced", "--n", "2", "--delta", "1", "--p", "3", "2", "1,1"],
        vec!["abacus", "--p", "5", "--b", "21", "--n", "16", "--delta", "2", "5,3"],
        vec!["frobnicate"],
    ] {
        assert_eq!(cli(&args).code, 2, "{args:?}");
    }
    let out = cli(&["orbit", "--n", "2", "--delta", "1.5", "2", "1,1"]);
    assert!(out.stderr.contains("semisimple"));
}

#[test]
fn help_exits_cleanly() {
    let out = cli(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("orbit"));
}

#[test]
fn transpose_labels_conjugate_inputs() {
    let geo = cli(&["balanced", "--n", "3", "--delta", "1", "--json", "3", "1"]);
    let tr = cli(&["balanced", "--n", "3", "--delta", "1", "--json", "--labels", "transpose", "1,1,1", "1"]);
    assert_eq!(json(&geo)["result"], json(&tr)["result"]);
    let out = cli(&["blocks", "--n", "2", "--delta", "2", "--labels", "transpose"]);
    assert_eq!(out.stdout.lines().nth(1), Some("1,1"));
}

#[test]
fn batch_pairs_answer_each_line() {
    let dir = std::env::temp_dir().join(format!("brauer-pairs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("pairs.txt");
    std::fs::write(&file, "2;1,1\n2;2\n\n3,1;1,1\n").unwrap();
    let out = cli(&["block", "--n", "4", "--delta", "2", "--json", "--pairs", file.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 3);
    let strict = cli(&["block", "--n", "4", "--delta", "2", "--strict", "--pairs", file.to_str().unwrap()]);
    assert_eq!(strict.code, 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn json_round_trip_is_byte_identical() {
    let queries: Vec<Vec<&str>> = vec![
        vec!["blocks", "--n", "4", "--delta", "-1", "--json"],
        vec!["blocks", "--n", "5", "--delta", "2", "--p", "3", "--json"],
        vec!["chain", "--n", "7", "--delta", "2", "--json", "8,8,8,7,3,3,2", "6,5,1,1"],
        vec!["abacus", "--p", "5", "--b", "20", "--n", "16", "--json", "5,3,3,2,1,1"],
        vec!["pcore", "--p", "3", "--json", "4,2,1"],
        vec!["obstruction", "--n", "4", "--delta", "3", "--json", "2,2", ""],
        vec!["certify", "--p", "5", "--delta", "2", "--max-n", "12", "--json"],
        vec!["diagram", "--n", "3", "--delta", "2", "--json", "tn"],
    ];
    for q in queries {
        let out = cli(&q);
        assert_eq!(out.code, 0, "{q:?}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap() + "\n", out.stdout);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["query", "context", "result", "witness"]);
    }
}

#[test]
fn chain_word_maps_lambda_to_mu() {
    let v = json(&cli(&["chain", "--n", "7", "--delta", "2", "--json", "8,8,8,7,3,3,2", "6,5,1,1"]));
    let word: brauer_core::ReflectionWord = v["result"].as_str().unwrap().parse().unwrap();
    let ctx = brauer_core::Context::char_zero(7, 2).unwrap();
    let end = word.apply(&"8,8,8,7,3,3,2".parse().unwrap(), &ctx).unwrap();
    assert_eq!(end.to_string(), "6,5,1,1");
}

#[test]
fn diagram_product_counts_loops() {
    let out = cli(&["diagram", "product", "(1,2),(-1,-2)", "(1,2),(-1,-2)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "delta^1 * [(1,2),(-1,-2)]\n");
}

#[test]
fn project_writes_svg() {
    let out = cli(&["project", "--n", "3", "--delta", "2", "4,4,2", "4,3,1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("<svg"));
    assert_eq!(out.stdout.matches("class=\"weight\"").count(), 2);
}
