use eqehrhart::cli::load_instance;
use eqehrhart::corpus;
use eqehrhart::instance::{Instance, RawInstance, RawMap};
use eqehrhart::Error;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn shipped_files_match_builders() {
    let shipped = corpus::shipped_corpus();
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    let mut want: Vec<String> = shipped.iter().map(|r| format!("{}.json", r.name)).collect();
    want.sort();
    assert_eq!(names, want, "run `cargo run --example export_corpus` to refresh corpus/");
    for raw in shipped {
        let text = std::fs::read_to_string(corpus_dir().join(format!("{}.json", raw.name))).unwrap();
        assert_eq!(RawInstance::from_json(&text).unwrap(), raw, "{} is stale", raw.name);
    }
}

#[test]
fn files_load_like_names() {
    let path = corpus_dir().join("klein-cube.json");
    let a = load_instance(path.to_str().unwrap()).unwrap();
    let b = load_instance("klein-cube").unwrap();
    assert_eq!(a.polytope.vertices(), b.polytope.vertices());
    assert_eq!(a.group.order(), 4);
}

#[test]
fn non_invariant_polytope_is_rejected() {
    // a reflection that does not preserve a non-symmetric triangle
    let raw = RawInstance::new(
        "bent",
        vec![vec![0, 0], vec![2, 0], vec![0, 1]],
        vec![RawMap::permutation(&[1, 0])],
    );
    assert!(matches!(Instance::from_raw(raw.clone()), Err(Error::NotInvariant(_))));
    let dir = std::env::temp_dir().join(format!("eqehrhart-bent-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bent.json");
    std::fs::write(&f, raw.to_json()).unwrap();
    assert_eq!(eqehrhart::cli::run(["eqehrhart", "hstar", f.to_str().unwrap()]), 2);
    assert_eq!(eqehrhart::cli::run(["eqehrhart", "verify", "--corpus", dir.to_str().unwrap()]), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
