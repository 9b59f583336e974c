use std::path::Path;
use std::process::{Command, Output};

use dehnkit::diagrams::VanKampenDiagram;
use dehnkit::families::{self, Presentation};
use dehnkit::oracles::NullSequence;
use dehnkit::words::Word;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehnkit"))
        .args(args)
        .env_remove("DEHNKIT_CAPS_MAX_LEN")
        .env_remove("DEHNKIT_FORMAT")
        .env_remove("DEHNKIT_CONFIG")
        .env_remove("DEHNKIT_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_presentation_round_trips() {
    for fam in ["G", "P", "Q", "T"] {
        let o = run(&["gen", fam, "3"]);
        assert_eq!(code(&o), 0);
        let p: Presentation = serde_json::from_str(&stdout(&o)).unwrap();
        let expected = match fam {
            "G" => families::g(3),
            "P" => families::p(3),
            "Q" => families::q(3),
            _ => families::t(3),
        }
        .unwrap();
        assert_eq!(p, expected);
    }
}

#[test]
fn gen_words_round_trip() {
    let w: Word = serde_json::from_str(&stdout(&run(&["gen", "w", "3"]))).unwrap();
    assert_eq!(w, families::w_word(3));
    let g: Word = serde_json::from_str(&stdout(&run(&["gen", "g", "2", "3"]))).unwrap();
    assert_eq!(g, families::g_word(2, 3).unwrap());
    let v: Word = serde_json::from_str(&stdout(&run(&["gen", "v", "3"]))).unwrap();
    assert_eq!(v, families::v_word(3).unwrap());
}

#[test]
fn gen_presentation_feeds_wp() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("g2.json");
    let word = dir.path().join("v2.json");
    assert_eq!(code(&run(&["--out", path(&pres), "gen", "G", "2"])), 0);
    assert_eq!(code(&run(&["--out", path(&word), "gen", "v", "2"])), 0);
    let o = run(&[
        "wp",
        "--presentation",
        path(&pres),
        "--word-file",
        path(&word),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "trivial\n");
    let o = run(&["wp", "--presentation", path(&pres), "--word", "[1]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "nontrivial\n");
}

#[test]
fn wp_on_p_family() {
    let o = run(&["wp", "--family", "P", "--n", "3", "--word", "[1]"]);
    assert_eq!(stdout(&o), "trivial\n");
    let o = run(&["wp", "--family", "P", "--n", "3", "--word", "[4]"]);
    assert_eq!(stdout(&o), "nontrivial\n");
}

#[test]
fn area_and_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let wit = dir.path().join("w.json");
    let o = run(&[
        "area",
        "--family",
        "G",
        "--n",
        "2",
        "--word",
        "w2",
        "--witness",
        path(&wit),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "6\n");
    let seq: NullSequence = serde_json::from_str(&std::fs::read_to_string(&wit).unwrap()).unwrap();
    let stats = seq.replay(&families::g(2).unwrap()).unwrap();
    assert_eq!(stats.cost, 6);
}

#[test]
fn area_absent_exits_one() {
    let o = run(&["area", "--family", "G", "--n", "2", "--word", "[1]"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("absent"));
}

#[test]
fn fill_reports_peak() {
    let o = run(&[
        "--format", "json", "fill", "--family", "G", "--n", "2", "--word", "w1",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fill_length"], 8);
}

#[test]
fn diagram_build_validate_annuli() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w3.json");
    assert_eq!(
        code(&run(&["--out", path(&file), "diagram", "build", "w", "3"])),
        0
    );
    let d: VanKampenDiagram =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(d.area().unwrap(), 14);
    let o = run(&["diagram", "validate", path(&file)]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["valid"], true);
    let o = run(&["diagram", "annuli", path(&file)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[]");

    let xn = dir.path().join("xn.json");
    assert_eq!(
        code(&run(&["--out", path(&xn), "diagram", "build", "xn", "2"])),
        0
    );
    let o = run(&["diagram", "annuli", path(&xn)]);
    let annuli: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(annuli.as_array().unwrap().len(), 1);
}

#[test]
fn invalid_diagram_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let mut d = dehnkit::diagrams::build_w_diagram(2, 1 << 20).unwrap();
    d.darts[3].next = 0;
    std::fs::write(&file, serde_json::to_string(&d).unwrap()).unwrap();
    let o = run(&["--format", "text", "diagram", "validate", path(&file)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn tietze_trivialize_and_replay() {
    let o = run(&["--format", "text", "tietze", "trivialize", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("matches T(3): true"));

    let dir = tempfile::tempdir().unwrap();
    let ops = dir.path().join("ops.json");
    let seq = families::standard_trivialization_sequence(2).unwrap();
    std::fs::write(&ops, serde_json::to_string(&seq).unwrap()).unwrap();
    let o = run(&[
        "tietze",
        "replay",
        "--family",
        "Q",
        "--n",
        "2",
        "--ops",
        path(&ops),
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last: Presentation = serde_json::from_value(v["result"].clone()).unwrap();
    assert!(families::presentations_equal(
        &last,
        &families::t(2).unwrap()
    ));

    std::fs::write(&ops, r#"[{"op":"invert","i":99}]"#).unwrap();
    let o = run(&[
        "tietze",
        "replay",
        "--family",
        "Q",
        "--n",
        "2",
        "--ops",
        path(&ops),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reports_are_csv_and_deterministic() {
    let a = run(&["report", "scaling", "--m", "1..5"]);
    let b = run(&["--parallel", "true", "report", "scaling", "--m", "1..5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("m,diagram_area,min_area,ratio\n1,2,2,3.000000\n"));
    assert!(text.contains("\n3,14,14,"));
    assert!(!text.contains('\r'));

    let p = run(&[
        "report",
        "dehn-profile",
        "--family",
        "G",
        "--n",
        "2",
        "--max-length",
        "5",
    ]);
    assert_eq!(code(&p), 0);
    assert!(stdout(&p).starts_with("length,words,trivial,max_area,lower_bound,witness\n"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&run(&["diagram", "validate", path(&bad)])), 2);
    assert_eq!(
        code(&run(&["wp", "--presentation", path(&bad), "--word", "[1]"])),
        2
    );
    assert_eq!(
        code(&run(&["wp", "--family", "G", "--n", "2", "--word", "[7]"])),
        2
    );
    assert_eq!(
        code(&run(&["wp", "--family", "G", "--n", "2", "--word", "[0]"])),
        2
    );
    assert_eq!(code(&run(&["gen", "X", "2"])), 2);
    assert_eq!(
        code(&run(&[
            "--caps-max-len",
            "0",
            "area",
            "--family",
            "G",
            "--n",
            "2",
            "--word",
            "w1"
        ])),
        2
    );
    assert_eq!(code(&run(&["--format", "csv", "gen", "G", "2"])), 2);
    assert_eq!(code(&run(&["report", "scaling", "--family", "other"])), 2);
}

#[test]
fn precedence_flag_env_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dehnkit.toml");
    std::fs::write(&cfg, "format = \"text\"\n[caps]\nmax_word_length = 16\n").unwrap();
    let area = ["area", "--family", "G", "--n", "2", "--word", "w3"];

    let mut args = vec!["--config", path(&cfg)];
    args.extend(area);
    let o = run(&args);
    assert_eq!(code(&o), 1, "config cap of 16 is too small for w3");

    let o = Command::new(env!("CARGO_BIN_EXE_dehnkit"))
        .args(&args)
        .env("DEHNKIT_CAPS_MAX_LEN", "20")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "env beats config");
    assert_eq!(stdout(&o), "14\n");

    let o = Command::new(env!("CARGO_BIN_EXE_dehnkit"))
        .args(["--caps-max-len", "16"])
        .args(&args)
        .env("DEHNKIT_CAPS_MAX_LEN", "20")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1, "flag beats env");

    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(code(&run(&args)), 2);
}
