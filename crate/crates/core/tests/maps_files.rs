use std::fs;
use std::path::PathBuf;

use pfvdc::interval_maps::catalog::by_name;
use pfvdc::interval_maps::file::{map_hash, parse_map};

fn maps_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../maps")
}

#[test]
fn shipped_maps_match_catalog() {
    let mut seen = 0;
    for entry in fs::read_dir(maps_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let doc = parse_map(&fs::read_to_string(&path).unwrap()).unwrap();
        let name = doc.name.clone().unwrap();
        assert_eq!(path.file_stem().unwrap().to_str().unwrap(), name);
        let stock = by_name(&name).unwrap_or_else(|| panic!("{name} not in the catalog"));
        assert_eq!(doc.map.alphabet_size(), stock.alphabet_size(), "{name}");
        for (a, b) in doc.map.branches().iter().zip(stock.branches()) {
            assert_eq!(a.sign, b.sign, "{name}");
            for (x, y) in [
                (a.left, b.left),
                (a.right, b.right),
                (a.beta, b.beta),
                (a.image_left, b.image_left),
                (a.image_right, b.image_right),
            ] {
                assert!((x - y).abs() < 1e-12, "{name}: {x} vs {y}");
            }
        }
        seen += 1;
    }
    assert_eq!(seen, 6);
}

#[test]
fn hash_tracks_branch_data() {
    let a = by_name("doubling").unwrap();
    let b = by_name("tent").unwrap();
    assert_eq!(map_hash(&a), map_hash(&by_name("doubling").unwrap()));
    assert_ne!(map_hash(&a), map_hash(&b));
}

#[test]
fn malformed_maps_are_rejected() {
    for text in [
        "{",
        r#"{"branches": []}"#,
        r#"{"branches": [{"left": 0, "right": 1, "sign": 2, "beta": 1, "image_left": 0, "image_right": 1}]}"#,
        r#"{"branches": [{"left": 0, "right": "1/", "sign": 1, "beta": 2, "image_left": 0, "image_right": 1}]}"#,
        r#"{"branches": [{"left": 0, "right": 1, "sign": 1, "beta": 1, "image_left": 0, "image_right": 1, "extra": 0}]}"#,
    ] {
        assert!(parse_map(text).is_err(), "{text}");
    }
}
