use std::path::Path;
use std::process::{Command, Output};

use hmerge::format::{parse_profile, parse_reduced};
use hmerge::{validate_partition, AchievabilityCertificate, MergePartition, Profile};
use serde_json::Value;

fn hmerge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmerge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = hmerge(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn hindex_examples() {
    assert_eq!(ok(&["hindex", "--values", "1 1 2 3 4 4 5 5 5"]), "4\n");
    assert_eq!(ok(&["hindex", "--values", ""]), "0\n");
    assert_eq!(ok(&["hindex", "--values", "5 4 3 3 3 2"]), "3\n");
    assert_eq!(json(&["hindex", "--values", "5 4 3 3 3 2"])["h_index"], 3);
}

#[test]
fn hindex_reads_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let text = write(dir.path(), "p.txt", "5 4 3\n3 3 2\n");
    let structured = write(dir.path(), "p.json", r#"{"citations": [1, 1, 2, 3, 4, 4, 5, 5, 5]}"#);
    assert_eq!(ok(&["hindex", &text]), "3\n");
    assert_eq!(ok(&["hindex", &structured]), "4\n");
}

#[test]
fn improve_examples() {
    let profile = Profile::new([5, 4, 3, 3, 3, 2]).unwrap();
    let v = json(&["improve", "--values", "5 4 3 3 3 2"]);
    assert_eq!(v["improvable"], true);
    assert_eq!(v["witness"]["achieved"], 4);
    let part: MergePartition = serde_json::from_value(v["witness"]["partition"].clone()).unwrap();
    assert_eq!(part, MergePartition::from_indices(vec![vec![0], vec![1], vec![2, 5], vec![3, 4]]));
    validate_partition(&profile, &part).unwrap();

    assert!(ok(&["improve", "--values", "5 4 3 3 3 2"]).starts_with("improvable: h 3 -> 4"));
    assert!(ok(&["improve", "--values", "5 3 3 3 3 2"]).starts_with("not improvable"));
    assert!(ok(&["improve", "--values", "1"]).starts_with("not improvable"));
    assert_eq!(json(&["improve", "--values", "1"])["witness"], Value::Null);
}

#[test]
fn achieve_and_maximize_examples() {
    let profile = Profile::new([5, 4, 3, 3, 3, 2]).unwrap();
    let v = json(&["achieve", "--k", "4", "--values", "5 4 3 3 3 2"]);
    assert_eq!(v["achievable"], true);
    let cert: AchievabilityCertificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    validate_partition(&profile, &cert.partition).unwrap();
    assert!(cert.verify(&profile));
    assert!(v["telemetry"]["nodes_explored"].is_u64());

    let v = json(&["achieve", "--k", "5", "--values", "5 4 3 3 3 2"]);
    assert_eq!(v["achievable"], false);
    assert!(ok(&["achieve", "--k", "5", "--values", "5 4 3 3 3 2"]).starts_with("NO"));

    let v = json(&["maximize", "--greedy", "--values", "5 4 3 3 3 2"]);
    assert_eq!(v["value"], 4);
    assert_eq!(v["greedy"]["value"], 4);
    let cert: AchievabilityCertificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert!(cert.verify(&profile));
    assert!(ok(&["maximize", "--values", "5 4 3 3 3 2"]).starts_with("4\n"));
}

#[test]
fn reduce3p_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("2 10\n3 3 4 3 3 4\n", vec![5, 5, 6, 5, 5, 6], 16u64, 14usize),
        ("1 10\n3 3 4\n", vec![4, 4, 5], 13, 12),
        ("2 6\n1 1 1 1 1 7\n", vec![3, 3, 3, 3, 3, 9], 12, 10),
    ];
    for (i, (body, shifted, k, padding)) in cases.iter().enumerate() {
        let input = write(dir.path(), &format!("i{i}.txt"), body);
        let out = dir.path().join(format!("r{i}.txt"));
        let out_s = out.to_string_lossy().into_owned();
        assert_eq!(ok(&["reduce3p", &input, "-o", &out_s]), "");
        let (profile, got_k) = parse_reduced(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(got_k, *k);
        let c = profile.citations();
        assert_eq!(&c[..shifted.len()], &shifted[..]);
        assert_eq!(c.len(), shifted.len() + padding);
        assert!(c[shifted.len()..].iter().all(|&x| x == *k));

        let v = json(&["reduce3p", &input]);
        assert_eq!(v["k"], *k);
        assert_eq!(v["in_range"], i < 2);
    }
}

#[test]
fn verify3p_reports_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let yes = write(dir.path(), "yes.txt", "2 10\n3 3 4 3 3 4\n");
    let v = json(&["verify3p", &yes]);
    assert_eq!(v["agree"], true);
    assert_eq!(v["achievable"], true);
    assert_eq!(v["max_value"], 16);
    let lifted: AchievabilityCertificate = serde_json::from_value(v["lifted_certificate"].clone()).unwrap();
    assert_eq!(lifted.partition.len(), 16);
    assert!(lifted.partition.groups[..14].iter().all(|g| g.len() == 1));
    assert!(lifted.partition.groups[14..].iter().all(|g| g.len() == 3));
    assert!(ok(&["verify3p", &yes]).contains("agreement: yes"));

    let out_of_range = write(dir.path(), "oor.txt", "2 6\n1 1 1 1 1 7\n");
    assert_eq!(hmerge(&["verify3p", &out_of_range]).status.code(), Some(3));
    let malformed = write(dir.path(), "bad.txt", "1 10\n3 3 3\n");
    assert_eq!(hmerge(&["verify3p", &malformed]).status.code(), Some(2));
    assert_eq!(hmerge(&["verify3p", "/nonexistent/file"]).status.code(), Some(1));
}

#[test]
fn oracle_check_modes() {
    let out = ok(&["oracle-check", "--exhaustive", "--max-size", "6", "--max-value", "6"]);
    assert!(out.starts_with("PASS"), "{out}");
    let a = json(&["oracle-check", "--count", "200", "--max-size", "9", "--max-value", "12", "--seed", "7"]);
    assert_eq!(a["pass"], true);
    assert_eq!(a["checked"], 200);
    let b = json(&["oracle-check", "--count", "200", "--max-size", "9", "--max-value", "12", "--seed", "7"]);
    assert_eq!(a, b);
    assert_eq!(hmerge(&["oracle-check", "--max-size", "12"]).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(hmerge(&["hindex", "--values", "3 x"]).status.code(), Some(2));
    assert_eq!(hmerge(&["hindex", "--values", "3 0"]).status.code(), Some(2));
    let ones = vec!["1"; 80].join(" ");
    let out = hmerge(&["maximize", "--node-budget", "3", "--values", &ones]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(hmerge(&["gen", "3p", "--m", "2", "--b", "4"]).status.code(), Some(3));
}

#[test]
fn generators_are_seeded() {
    let a = ok(&["gen", "profile", "--n", "12", "--seed", "3"]);
    assert_eq!(a, ok(&["gen", "profile", "--n", "12", "--seed", "3"]));
    assert_eq!(parse_profile(&a).unwrap().len(), 12);
    let z = ok(&["gen", "profile", "--n", "40", "--dist", "zipf", "--max", "50"]);
    assert!(parse_profile(&z).unwrap().citations().iter().all(|&c| (1..=50).contains(&c)));
    let inst = ok(&["gen", "3p", "--m", "2", "--b", "10", "--seed", "9"]);
    let parsed = hmerge::format::parse_3partition(&inst).unwrap();
    assert!(parsed.in_range());
    assert_eq!(inst, ok(&["gen", "3p", "--m", "2", "--b", "10", "--seed", "9"]));
}
