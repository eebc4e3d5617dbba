use std::path::Path;

// Every chapter in SUMMARY.md must be pulled into lib.rs, or its snippets go untested.
#[test]
fn every_chapter_is_doc_tested() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let summary = std::fs::read_to_string(root.join("../../book/src/SUMMARY.md")).unwrap();
    let lib = std::fs::read_to_string(root.join("src/lib.rs")).unwrap();
    let chapters: Vec<&str> = summary
        .lines()
        .filter_map(|l| l.split_once("](").map(|(_, rest)| rest.trim_end_matches(')')))
        .collect();
    assert!(!chapters.is_empty());
    for c in chapters {
        assert!(lib.contains(&format!("book/src/{c}\")")), "{c} is not included in lib.rs");
    }
}
