use quorumlace_core::files::{ConfigFile, ModelFile};
use quorumlace_core::fixtures::{asymmetric_four, four_process};
use quorumlace_core::{oracle, Error, ProcSet};

const FOUR_PROCESS: &str = r#"{
  "processes": {
    "p1": {"trusted": ["p1", "p2", "p3", "p4"], "fail_prone": [["p3", "p4"]]},
    "p2": {"trusted": ["p1", "p2", "p3", "p4"], "fail_prone": [["p1", "p4"]]},
    "p3": {"trusted": ["p1", "p2", "p3", "p4"], "fail_prone": [["p1", "p4"]]},
    "p4": {"trusted": ["p1", "p2", "p3", "p4"], "fail_prone": [["p1", "p2"]]}
  },
  "league": ["p4", "p1", "p2", "p3"]
}"#;

#[test]
fn config_file_defaults_format_and_reads_league() {
    let file = ConfigFile::parse(FOUR_PROCESS).unwrap();
    assert_eq!(file.format, 1);
    let f = file.pfps().unwrap();
    assert_eq!(f.to_wire(), four_process().to_wire());
    assert_eq!(file.league(&f).unwrap(), Some(f.all()));
}

#[test]
fn config_file_errors_name_the_problem() {
    let wrong_format = FOUR_PROCESS.replacen('{', r#"{"format": 2,"#, 1);
    assert!(matches!(ConfigFile::parse(&wrong_format), Err(Error::InvalidInput(m)) if m.contains("format 2")));

    let typo = FOUR_PROCESS.replace("fail_prone", "failprone");
    let err = ConfigFile::parse(&typo).unwrap_err().to_string();
    assert!(err.contains("failprone") && err.contains("line 3"), "{err}");

    let unknown = FOUR_PROCESS.replace(r#""league": ["p4","#, r#""league": ["p9","#);
    let file = ConfigFile::parse(&unknown).unwrap();
    assert!(file.league(&file.pfps().unwrap()).is_err());

    let empty_trust = r#"{"processes": {"p1": {"trusted": [], "fail_prone": []}}}"#;
    let err = ConfigFile::parse(empty_trust).unwrap().pfps().unwrap_err().to_string();
    assert!(err.contains("processes.p1.trusted is empty"), "{err}");
}

#[test]
fn model_file_asymmetric() {
    let model = ModelFile::parse(include_str!("data/asymmetric_four.json")).unwrap();
    assert_eq!(model.kind(), "asymmetric");
    let (sys, faulty) = model.asymmetric().unwrap();
    assert_eq!(sys.fail_prone, asymmetric_four().fail_prone);
    assert_eq!(faulty, ProcSet::EMPTY);
    assert!(model.symmetric().is_err());
    let (f, _, _) = model.pfps().unwrap();
    assert_eq!(f.to_wire(), four_process().to_wire());
}

#[test]
fn model_file_variants() {
    let sym = ModelFile::parse(
        r#"{"model": "symmetric", "universe": ["p1","p2","p3","p4"], "fail_prone": [["p1"],["p2"],["p3"],["p4"]]}"#,
    )
    .unwrap();
    let s = sym.symmetric().unwrap();
    assert!(s.q3_check().holds);
    assert!(oracle::q3(&s.fail_prone, s.universe.all()));

    let fbas = ModelFile::parse(
        r#"{"model": "fbas", "processes": {
            "p1": {"known": ["p1","p2"], "slices": [["p1","p2"]]},
            "p2": {"known": ["p1","p2"], "slices": [["p1","p2"]]}
        }, "set": ["p1","p2"]}"#,
    )
    .unwrap();
    let (f, faulty, set) = fbas.pfps().unwrap();
    assert_eq!((faulty, set), (ProcSet::EMPTY, f.all()));

    let pbqs = ModelFile::parse(r#"{"model": "pbqs", "quorums": {"p1": [["p1"]]}, "set": ["p1"]}"#).unwrap();
    let (sys, _, set) = pbqs.pbqs().unwrap();
    assert!(sys.cluster_check(set, ProcSet::EMPTY).holds());
    assert!(pbqs.pfps().is_err());

    assert!(ModelFile::parse(r#"{"model": "ring", "universe": []}"#).is_err());
    assert!(ModelFile::parse(r#"{"model": "pbqs", "format": 3, "quorums": {}}"#).is_err());
}
