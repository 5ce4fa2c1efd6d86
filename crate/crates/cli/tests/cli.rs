use std::fs;
use std::path::{Path, PathBuf};

use subfact_cli::{run, EXIT_DIFFERENT, EXIT_OK, EXIT_SEMANTIC, EXIT_SYNTAX};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let argv = std::iter::once("subfact").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

const G: &str = "{\n  \"order\": \"successor\",\n  \"k\": 2,\n  \"forbidden\": [\n    \"[c]\",\n    \"[a][a]\",\n    \"[b][b]\"\n  ]\n}\n";

#[test]
fn learn_writes_grammar_and_stats() {
    let (code, out, err) = cli(
        &[
            "learn",
            &data("abc.table"),
            &data("alternating.txt"),
            "--k",
            "2",
        ],
        "",
    );
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, G);
    let block: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(block["manifest"]["k"], 2);
    assert_eq!(block["manifest"]["order"], "successor");
    assert_eq!(block["stats"]["grammar_size"], 3);
}

#[test]
fn learn_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let grammar = dir.path().join("g.json").display().to_string();
    let (code, out, _) = cli(
        &[
            "learn",
            &data("abc.table"),
            &data("alternating.txt"),
            "--k",
            "2",
            "--output",
            &grammar,
        ],
        "",
    );
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(fs::read_to_string(&grammar).unwrap(), G);

    let (code, out, _) = cli(
        &["check", &data("abc.table"), &grammar],
        "abab\n# note\nbaa\nac\n",
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "abab\tACCEPT\nbaa\tREJECT\t[a][a]\nac\tREJECT\t[c]\n");

    let (code, out, _) = cli(&["check", &data("abc.table"), &grammar], "ab\nax\n");
    assert_eq!(code, EXIT_SEMANTIC);
    assert!(out.starts_with("ab\tACCEPT\nax\tERROR\t"), "{out}");
}

#[test]
fn oracle_agrees_with_learner() {
    for (table, corpus, order, k) in [
        ("abc.table", "alternating.txt", "successor", "2"),
        ("samala.table", "samala.txt", "precedence", "2"),
    ] {
        let args = [table, corpus].map(data);
        let (_, learned, _) = cli(
            &["learn", &args[0], &args[1], "--order", order, "--k", k],
            "",
        );
        let (code, naive, _) = cli(
            &[
                "oracle-learn",
                &args[0],
                &args[1],
                "--order",
                order,
                "--k",
                k,
            ],
            "",
        );
        assert_eq!(code, EXIT_OK);
        assert_eq!(learned, naive, "{table}");
    }
}

#[test]
fn trace_lines_precede_stats() {
    let (code, _, err) = cli(
        &[
            "learn",
            &data("abc.table"),
            &data("alternating.txt"),
            "--k",
            "1",
            "--trace",
        ],
        "",
    );
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines[0], "enqueue\tε");
    assert_eq!(lines[1], "dequeue\tε");
    assert!(lines.contains(&"forbid\t[c]"));
}

#[test]
fn factors_lists_subfactors() {
    let (code, out, _) = cli(&["factors", &data("abc.table"), "ab", "--k", "2"], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "ε\n[]\n[a]\n[b]\n[][]\n[][b]\n[a][]\n[a][b]\n");
    let (_, out, _) = cli(
        &[
            "factors",
            &data("abc.table"),
            "aba",
            "--k",
            "2",
            "--order",
            "precedence",
        ],
        "",
    );
    assert!(out.lines().any(|l| l == "[a][a]"));
}

#[test]
fn diff_compares_grammars() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", G);
    let h = write(
        dir.path(),
        "h.json",
        r#"{"order":"successor","k":2,"forbidden":["[a][a]","[b][b]"]}"#,
    );
    let (code, out, _) = cli(&["diff", &data("abc.table"), &g, &g], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("languages agree up to length 6\n"), "{out}");

    let (code, out, _) = cli(&["diff", &data("abc.table"), &g, &h, "--upto", "2"], "");
    assert_eq!(code, EXIT_DIFFERENT);
    assert!(
        out.starts_with("forbidden factors only in first: 1\n  [c]\n"),
        "{out}"
    );
    assert!(out.contains("accepted only by second: 6\n  c\n"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let table = data("abc.table");
    let corpus = data("alternating.txt");

    let (code, _, err) = cli(&["learn", "/nonexistent", &corpus, "--k", "2"], "");
    assert_eq!(code, EXIT_SYNTAX, "{err}");

    let bad_table = write(dir.path(), "bad.table", "property a\nsymbol a a\n");
    let (code, _, _) = cli(&["learn", &bad_table, &corpus, "--k", "2"], "");
    assert_eq!(code, EXIT_SYNTAX);

    let (code, _, _) = cli(&["learn", &table, &corpus, "--k", "0"], "");
    assert_eq!(code, EXIT_SEMANTIC);

    let unknown = write(dir.path(), "unknown.txt", "ab\nxy\n");
    let (code, _, err) = cli(&["learn", &table, &unknown, "--k", "2"], "");
    assert_eq!(code, EXIT_SEMANTIC);
    assert!(err.contains("line 2"), "{err}");

    let broken = write(dir.path(), "broken.json", "{\"order\": ");
    let (code, _, _) = cli(&["check", &table, &broken], "ab\n");
    assert_eq!(code, EXIT_SYNTAX);

    let (code, _, _) = cli(&["learn", &table], "");
    assert_eq!(code, EXIT_SYNTAX);
    let (code, out, _) = cli(&["--help"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("learn"));
}

#[test]
fn empty_corpus_warns() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "# nothing\n");
    let (code, out, err) = cli(&["learn", &data("abc.table"), &empty, "--k", "2"], "");
    assert_eq!(code, EXIT_OK);
    assert!(err.starts_with("warning:"));
    assert!(out.contains("\"forbidden\": [\n    \"\"\n  ]"), "{out}");
}

#[test]
fn learned_grammars_accept_their_corpora() {
    let dir = tempfile::tempdir().unwrap();
    let grammar = dir.path().join("g.json").display().to_string();
    for (table, corpus, order) in [
        ("abc.table", "alternating.txt", "successor"),
        ("capitals.table", "lowercase.txt", "successor"),
        ("letters52.table", "lowercase.txt", "precedence"),
        ("samala.table", "samala.txt", "precedence"),
    ] {
        for k in ["1", "2", "3"] {
            let (table, corpus) = (data(table), data(corpus));
            let (code, _, _) = cli(
                &[
                    "learn", &table, &corpus, "--order", order, "--k", k, "--output", &grammar,
                ],
                "",
            );
            assert_eq!(code, EXIT_OK);
            let words = fs::read_to_string(&corpus).unwrap();
            let (code, out, _) = cli(&["check", &table, &grammar], &words);
            assert_eq!(code, EXIT_OK);
            assert!(
                out.lines().all(|l| l.ends_with("\tACCEPT")),
                "{corpus} k={k}: {out}"
            );
        }
    }
}
