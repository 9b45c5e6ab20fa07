mod common;

#[test]
fn golden_files_match() {
    let results = common::check_goldens();
    assert!(results.len() >= 11);
    let failures: Vec<String> =
        results.into_iter().filter_map(|(name, r)| r.err().map(|e| format!("{name}:\n{e}"))).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n\n"));
}
