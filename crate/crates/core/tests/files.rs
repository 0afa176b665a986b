use std::path::PathBuf;

use diffuse_core::ags::{parse_group, serialize_group};
use diffuse_core::catalog::Catalog;
use diffuse_core::fixtures;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn bundled_files_match_builders() {
    for (stem, spec) in fixtures::bundled() {
        let text = std::fs::read_to_string(root().join(format!("{stem}.ags"))).unwrap();
        assert_eq!(text, serialize_group(&spec), "{stem}");
        assert_eq!(parse_group(&text).unwrap(), spec);
    }
}

#[test]
fn every_file_reserializes_byte_identically() {
    let mut files = Vec::new();
    let mut stack = vec![root()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|e| e == "ags") {
                files.push(p);
            }
        }
    }
    assert!(files.len() >= 87 + 8);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        assert_eq!(serialize_group(&parse_group(&text).unwrap()), text, "{}", f.display());
    }
}

#[test]
fn catalog_sizes() {
    let cat = Catalog::load(&[root().join("catalog")]).unwrap();
    let count = |d| cat.entries.iter().filter(|(_, s)| s.dimension() == d).count();
    assert_eq!((count(1), count(2), count(3), count(4)), (1, 2, 10, 74));
}

#[test]
fn catalog_holds_the_worked_example() {
    let cat = Catalog::load(&[root().join("catalog/dim4")]).unwrap();
    let (_, spec) = cat.entries.iter().find(|(n, _)| n == "4D-05/01/06/006").unwrap();
    let mut got = spec.generators().to_vec();
    let mut want = fixtures::example_05_01_06_006().generators().to_vec();
    got.sort_by_key(|g| g.to_string());
    want.sort_by_key(|g| g.to_string());
    assert_eq!(got, want);
}
