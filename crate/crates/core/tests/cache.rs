use isolator_core::cache::{cache_load, cache_save};
use isolator_core::{CacheError, Solver};

#[test]
fn warm_cache_needs_no_search() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.bin");
    let mut s = Solver::new();
    let cold = s.solve_cycle(20).unwrap();
    assert!(cold.nodes_expanded > 0);
    cache_save(&s, &path).unwrap();

    let mut t = cache_load(&path).unwrap();
    let warm = t.solve_cycle(20).unwrap();
    assert_eq!(warm.value, cold.value);
    assert_eq!(warm.principal_move, cold.principal_move);
    assert_eq!(warm.nodes_expanded, 0);
}

#[test]
fn saving_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let mut s = Solver::new();
    s.solve_path(15).unwrap();
    cache_save(&s, &a).unwrap();
    cache_save(&cache_load(&a).unwrap(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn damaged_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t");
    let mut s = Solver::new();
    s.solve_cycle(10).unwrap();
    cache_save(&s, &path).unwrap();
    let mut bytes = std::fs::read(&path).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x40;
    std::fs::write(&path, &bytes).unwrap();
    assert!(matches!(cache_load(&path), Err(CacheError::Checksum)));
    assert!(matches!(cache_load(dir.path().join("missing")), Err(CacheError::Io { .. })));
}
