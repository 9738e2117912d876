use std::collections::BTreeMap;

use premod::groups::{bundled_catalog, character_table, conjugacy_class_count};

const FIXTURE: &str = include_str!("fixtures/group_invariants.tsv");

struct Expected {
    order: usize,
    classes: usize,
    exponent: usize,
    degrees: Vec<u64>,
}

fn fixture() -> BTreeMap<String, Expected> {
    FIXTURE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let mut degrees = Vec::new();
            for part in f[4].split(',') {
                let (d, m) = part.split_once('^').unwrap();
                for _ in 0..m.parse::<usize>().unwrap() {
                    degrees.push(d.parse().unwrap());
                }
            }
            degrees.sort();
            let e = Expected {
                order: f[1].parse().unwrap(),
                classes: f[2].parse().unwrap(),
                exponent: f[3].parse().unwrap(),
                degrees,
            };
            (f[0].to_string(), e)
        })
        .collect()
}

#[test]
fn catalog_matches_independent_invariants() {
    let want = fixture();
    let catalog = bundled_catalog();
    assert_eq!(catalog.len(), want.len());
    for entry in &catalog {
        let e = want.get(&entry.name).unwrap_or_else(|| panic!("{} missing from fixture", entry.name));
        let g = entry.build().unwrap();
        assert_eq!(g.order(), e.order, "{}", entry.name);
        assert_eq!(conjugacy_class_count(&g), e.classes, "{}", entry.name);
        assert_eq!(g.exponent(), e.exponent, "{}", entry.name);
        let t = character_table(&g).unwrap();
        let mut degrees = t.degrees.clone();
        degrees.sort();
        assert_eq!(degrees, e.degrees, "{}", entry.name);
    }
}
