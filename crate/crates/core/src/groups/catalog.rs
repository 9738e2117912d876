use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::character::{character_table, rep_ring_from_table};
use super::{conjugacy_class_count, groups_isomorphic, FiniteGroup, GroupError, Permutation};
use crate::exact_algebra::sylvester_landau_bound;
use crate::fusion_ring::{rings_isomorphic, FusionRing};

pub const BUNDLED_CATALOG: &str = include_str!("../../data/groups.tsv");

const ALIASES: &[(&str, &str)] = &[("Z3:Z7", "Z7:Z3"), ("Z7xZ3", "Z21"), ("K4", "Z2xZ2"), ("V4", "Z2xZ2"), ("Z1", "1"), ("Z5xZ4", "Z20")];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub order: usize,
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub line: usize,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let g = FiniteGroup::from_generators(self.degree, self.generators.clone())?.with_name(self.name.clone());
        if g.order() != self.order {
            return Err(GroupError::Parse {
                line: self.line,
                reason: format!("generators give order {} but {} was declared", g.order(), self.order),
            });
        }
        Ok(g)
    }
}

/// Parses `order<TAB>name<TAB>degree<TAB>gen1;gen2;...`; blank lines and `#` comments are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, GroupError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end();
        if l.trim().is_empty() || l.trim_start().starts_with('#') {
            continue;
        }
        let err = |reason: String| GroupError::Parse { line, reason };
        let fields: Vec<&str> = l.split('\t').collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let order: usize = fields[0].trim().parse().map_err(|_| err(format!("bad order {:?}", fields[0])))?;
        let degree: usize = fields[2].trim().parse().map_err(|_| err(format!("bad degree {:?}", fields[2])))?;
        if degree == 0 || degree > u16::MAX as usize {
            return Err(err(format!("degree {degree} out of range")));
        }
        let generators = fields[3]
            .split(';')
            .map(|s| Permutation::parse_cycles(s, degree).map_err(err))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(CatalogEntry { order, name: fields[1].trim().to_string(), degree, generators, line });
    }
    Ok(out)
}

pub fn bundled_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUNDLED_CATALOG).expect("bundled catalog parses")
}

pub fn named_group(label: &str) -> Result<FiniteGroup, GroupError> {
    let canonical = ALIASES.iter().find(|(a, _)| *a == label).map_or(label, |(_, c)| *c);
    let entry = bundled_catalog()
        .into_iter()
        .find(|e| e.name == canonical)
        .ok_or_else(|| GroupError::UnknownLabel(label.to_string()))?;
    entry.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub order: usize,
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    pub degrees: Vec<u64>,
}

/// Catalog groups of order ≤ max_order with exactly k conjugacy classes, one per isomorphism type,
/// sorted by order then name.
pub fn census(catalog: &[CatalogEntry], k: usize, max_order: usize) -> Result<Vec<CensusEntry>, GroupError> {
    let bound = sylvester_landau_bound(k as u32).to_usize().unwrap_or(usize::MAX);
    let mut kept: Vec<(CensusEntry, FiniteGroup)> = Vec::new();
    for e in catalog {
        if e.order > max_order || e.order > bound {
            continue;
        }
        let g = e.build()?;
        let classes = g.conjugacy_classes();
        if classes.len() != k {
            continue;
        }
        let t = character_table(&g)?;
        let mut class_sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        class_sizes.sort_unstable();
        let entry = CensusEntry { name: e.name.clone(), order: g.order(), classes: k, class_sizes, degrees: t.degrees.clone() };
        let duplicate = kept.iter().any(|(c, h)| {
            c.order == entry.order && c.class_sizes == entry.class_sizes && c.degrees == entry.degrees && groups_isomorphic(h, &g)
        });
        if !duplicate {
            kept.push((entry, g));
        }
    }
    let mut out: Vec<CensusEntry> = kept.into_iter().map(|(c, _)| c).collect();
    out.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
    Ok(out)
}

/// Name of a catalog group G whose representation ring is isomorphic to `ring`, if any.
/// Grothendieck rings do not always determine G (D8 and Q8 share one); the first match is returned.
pub fn identify_rep_ring(ring: &FusionRing) -> Option<String> {
    static CACHE: std::sync::OnceLock<std::sync::Mutex<BTreeMap<(usize, usize), Vec<(String, FusionRing)>>>> =
        std::sync::OnceLock::new();
    let dims = crate::fusion_ring::fp_dimensions(ring).ok()?;
    let order: i64 = dims.as_slice().iter().map(|d| d.to_i64().map(|x| x * x)).sum::<Option<i64>>()?;
    let order = order as usize;
    if order > 60 {
        return None;
    }
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().ok()?;
    let rings = guard.entry((order, ring.rank())).or_insert_with(|| {
        bundled_catalog()
            .into_iter()
            .filter(|e| e.order == order)
            .filter_map(|e| {
                let g = e.build().ok()?;
                if conjugacy_class_count(&g) != ring.rank() {
                    return None;
                }
                let t = character_table(&g).ok()?;
                Some((e.name, rep_ring_from_table(&t)))
            })
            .collect()
    });
    rings
        .iter()
        .find(|(_, f)| rings_isomorphic(f, ring).is_some())
        .map(|(n, _)| n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# header\n2\tZ2\t2\t(1,2)\n3\tZ3\t3\t(1,2,3\n";
        match parse_catalog(text) {
            Err(GroupError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_catalog("2\tZ2\t2"), Err(GroupError::Parse { line: 1, .. })));
    }

    #[test]
    fn small_census() {
        let cat = bundled_catalog();
        let names: Vec<String> = census(&cat, 3, 6).unwrap().into_iter().map(|e| e.name).collect();
        assert_eq!(names, vec!["Z3", "S3"]);
        let one: Vec<String> = census(&cat, 1, 60).unwrap().into_iter().map(|e| e.name).collect();
        assert_eq!(one, vec!["1"]);
    }

    #[test]
    fn identify() {
        let s3 = crate::groups::rep_fusion_ring(&named_group("S3").unwrap()).unwrap();
        assert_eq!(identify_rep_ring(&s3).as_deref(), Some("S3"));
        assert_eq!(identify_rep_ring(&FusionRing::cyclic(2)).as_deref(), Some("Z2"));
    }
}
