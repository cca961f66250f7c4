use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use phonfeat::export::{read_bin, read_csv, read_index};

fn phonfeat(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phonfeat"))
        .args(args)
        .current_dir(cwd)
        .env_remove("PHONFEAT_DATA")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn encode_writes_matrix_and_index() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("in.txt"), "ˈtaɪm\naː\nt͡ʃa, ka.\n").unwrap();
    for format in ["bin", "csv"] {
        let out_name = format!("out.{format}");
        let o = phonfeat(
            &[
                "encode", "--lang", "en", "--input", "in.txt", "--out", &out_name, "--format",
                format,
            ],
            dir.path(),
        );
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let bin = read_bin(fs::File::open(dir.path().join("out.bin")).unwrap()).unwrap();
    let csv = read_csv(std::io::BufReader::new(
        fs::File::open(dir.path().join("out.csv")).unwrap(),
    ))
    .unwrap();
    assert_eq!(bin.bits(), csv.bits());

    let index = read_index(&fs::read(dir.path().join("out.bin.idx")).unwrap()[..]).unwrap();
    assert_eq!(index.len(), 3);
    // taɪm -> t aɪ m EOS; aː -> aː EOS; t͡ʃa, ka. -> t͡ʃ a , k a . EOS
    assert_eq!(
        index.iter().map(|r| r.n_rows).collect::<Vec<_>>(),
        vec![4, 2, 7]
    );
    assert_eq!(index.iter().map(|r| r.n_rows).sum::<usize>(), bin.n_rows());
    assert_eq!(index[2].start_row, 6);
    assert_eq!(bin.row(4)[46], 1.0);
}

#[test]
fn failed_encode_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("in.txt"), "ta\nta7\n").unwrap();
    let o = phonfeat(
        &[
            "encode", "--lang", "en", "--input", "in.txt", "--out", "out.bin",
        ],
        dir.path(),
    );
    assert!(!o.status.success());
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert!(stderr(&o).contains("character 2"), "{}", stderr(&o));
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(leftovers, vec![std::ffi::OsString::from("in.txt")]);
}

#[test]
fn lenient_mode_accepts_unsupported_diacritics() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("in.txt"), "pʰa\n").unwrap();
    let args = [
        "encode", "--lang", "en", "--input", "in.txt", "--out", "o.bin",
    ];
    assert!(!phonfeat(&args, dir.path()).status.success());
    let mut lenient = vec!["--mode", "lenient"];
    lenient.extend(args);
    assert!(phonfeat(&lenient, dir.path()).status.success());
}

#[test]
fn upr_reports_percentages() {
    let dir = tempfile::tempdir().unwrap();
    // 1 of 5 and 4 of 5 phonemes unseen against es
    fs::write(dir.path().join("t.txt"), "pato ʒ\nʒʃ ʃ ʒ a\n").unwrap();
    let o = phonfeat(
        &["upr", "--train", "es", "--test", "t.txt", "--verbose"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0\t20.00\n1\t80.00\n50.00 ± 42.43\n");

    fs::write(dir.path().join("m.txt"), "pat ʃ\nʃʒa ʃ\n").unwrap();
    let o = phonfeat(&["upr", "--train", "es", "--test", "m.txt"], dir.path());
    assert_eq!(stdout(&o), "50.00 ± 35.36\n");

    let o = phonfeat(&["upr", "--train", "es,fr", "--test", "m.txt"], dir.path());
    assert_eq!(stdout(&o), "0.00 ± 0.00\n");
}

#[test]
fn upr_unknown_language() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "pa\n").unwrap();
    let o = phonfeat(&["upr", "--train", "xx", "--test", "t.txt"], dir.path());
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(err.contains("\"xx\"") && err.contains("en, es"), "{err}");
}

#[test]
fn select_prints_records_and_checks_k() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.txt"), "a b\na b c\nc\n").unwrap();
    let o = phonfeat(&["select", "--input", "c.txt", "-k", "3"], dir.path());
    assert_eq!(stdout(&o), "1\t1\t3\t1\n2\t0\t2\t2\n3\t2\t1\t2\n");
    let o = phonfeat(&["select", "--input", "c.txt", "-k", "4"], dir.path());
    assert!(!o.status.success());
    fs::write(dir.path().join("d.txt"), "ab\nabc\nc\n").unwrap();
    let o = phonfeat(
        &[
            "select", "--input", "d.txt", "-k", "1", "--unit", "diphone", "--out", "sel.tsv",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    assert_eq!(
        fs::read_to_string(dir.path().join("sel.tsv")).unwrap(),
        "1\t1\t2\t1\n"
    );
}

#[test]
fn nearest_prints_log_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = phonfeat(&["nearest", "--lang", "es", "y", "--verbose"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("y\ti\t1.414214\n"), "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn wer_on_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("r.txt"), "The cat sat.\nhello world\n").unwrap();
    let o = phonfeat(
        &["wer", "--reference", "r.txt", "--hypothesis", "r.txt"],
        dir.path(),
    );
    assert_eq!(stdout(&o), "0.00\n");
    fs::write(dir.path().join("h.txt"), "the cat\nhello world\n").unwrap();
    let o = phonfeat(
        &[
            "wer",
            "--reference",
            "r.txt",
            "--hypothesis",
            "h.txt",
            "--verbose",
        ],
        dir.path(),
    );
    assert_eq!(stdout(&o), "0\t33.33\n1\t0.00\n20.00\n");
    fs::write(dir.path().join("short.txt"), "x\n").unwrap();
    let o = phonfeat(
        &["wer", "--reference", "r.txt", "--hypothesis", "short.txt"],
        dir.path(),
    );
    assert!(!o.status.success());
}

#[test]
fn inventory_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = phonfeat(&["inventory", "validate"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("ok: 7 inventories"));

    let o = phonfeat(&["inventory", "list"], dir.path());
    let list = stdout(&o);
    assert!(list.contains("es\tSpanish\t29\t33\n"), "{list}");
    assert!(list.contains("gr\tGreek\t32\t-\n"), "{list}");

    let o = phonfeat(&["inventory", "show", "es"], dir.path());
    assert!(stdout(&o).lines().any(|l| l == "t͡ʃ"));
}

#[test]
fn data_dir_from_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    fs::create_dir_all(data.join("inventories")).unwrap();
    fs::write(
        data.join("feature_table.tsv"),
        "a\tvowel\t\t\t1\topen\tfront\t0\nt\tconsonant\talveolar\tplosive\t0\t\t\t\n",
    )
    .unwrap();
    fs::write(
        data.join("inventories/tt.toml"),
        "code = \"tt\"\nname = \"Tiny\"\nphonemes = [\"a\"]\n",
    )
    .unwrap();

    let o = phonfeat(&["--data-dir", "data", "inventory", "list"], dir.path());
    assert_eq!(stdout(&o), "tt\tTiny\t1\t-\n");

    let o = Command::new(env!("CARGO_BIN_EXE_phonfeat"))
        .args(["inventory", "list"])
        .current_dir(dir.path())
        .env("PHONFEAT_DATA", &data)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "tt\tTiny\t1\t-\n");

    // a bad inventory makes every command fail
    fs::write(
        data.join("inventories/bad.toml"),
        "code = \"bad\"\nname = \"B\"\nphonemes = [\"q\"]\n",
    )
    .unwrap();
    let o = phonfeat(&["--data-dir", "data", "inventory", "validate"], dir.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("bad.toml"), "{}", stderr(&o));
}
