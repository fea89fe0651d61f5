use std::fs;
use std::thread;

use angmom::model::{EliminationOrder, Group};
use angmom_pipeline::{run_case, Cache, CacheKey, CaseSpec, Mode};

#[test]
fn concurrent_stores_of_distinct_keys_are_all_retrievable() {
    let dir = tempfile::tempdir().unwrap();
    let specs = [CaseSpec::new(1, 1, Group::O).unwrap(),
        CaseSpec::new(1, 1, Group::O).unwrap().with_order(EliminationOrder::Lex),
        CaseSpec::new(2, 1, Group::O).unwrap(),
        CaseSpec::new(2, 2, Group::SO).unwrap(),
        CaseSpec::new(2, 2, Group::O).unwrap().with_mode(Mode::QuadraticOnly)];
    let runs: Vec<_> = specs.iter().map(|s| run_case(s).unwrap()).collect();
    thread::scope(|scope| {
        for run in &runs {
            let cache = Cache::new(dir.path()).unwrap();
            scope.spawn(move || {
                for _ in 0..5 {
                    cache.store(run).unwrap();
                }
            });
        }
    });
    let cache = Cache::new(dir.path()).unwrap();
    for (spec, run) in specs.iter().zip(&runs) {
        let key = CacheKey::for_spec(spec).unwrap();
        assert_eq!(cache.load(&key).unwrap().as_ref(), Some(run), "{spec}");
    }
    let entries = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, specs.len(), "scratch directories left behind");
}

#[test]
fn stored_text_is_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let spec = CaseSpec::new(2, 2, Group::O).unwrap();
    let run = run_case(&spec).unwrap();
    let path = cache.store(&run).unwrap();
    assert_eq!(
        fs::read_to_string(path.join("groebner.txt")).unwrap(),
        run.groebner_text
    );
    assert_eq!(
        fs::read_to_string(path.join("generators.txt")).unwrap(),
        run.generators_text
    );
    let loaded = cache.load(&CacheKey::for_spec(&spec).unwrap()).unwrap().unwrap();
    assert_eq!(loaded.groebner_text, run.groebner_text);
}

#[test]
fn truncated_checksum_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let spec = CaseSpec::new(1, 1, Group::O).unwrap();
    let path = cache.store(&run_case(&spec).unwrap()).unwrap();
    fs::write(path.join("checksum"), "00").unwrap();
    assert!(cache.load(&CacheKey::for_spec(&spec).unwrap()).unwrap().is_none());
    fs::remove_file(path.join("report.json")).unwrap();
    assert!(cache.load(&CacheKey::for_spec(&spec).unwrap()).unwrap().is_none());
}
