//! Finite permutation groups, exact character tables, Rep(G) fusion rings, the irrep census and
//! Grothendieck-level equivariantization bookkeeping.

mod catalog;
mod character;
mod equivariant;
mod perm;
mod zcyclic;

use std::collections::HashMap;

use thiserror::Error;

pub use catalog::{
    bundled_catalog, census, identify_rep_ring, named_group, parse_catalog, CatalogEntry, CensusEntry, BUNDLED_CATALOG,
};
pub use character::{character_table, rep_fusion_ring, CharacterTable, ConjugacyClass};
pub use equivariant::{
    equivariantization_rank, involution_orbit_count, schur_lookup, CocycleClass, EquivariantizationPlan,
    EquivariantizationResult, OrbitSpec, SchurFact,
};
pub use perm::Permutation;

/// Default cap on group order for closure and character computations.
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a permutation")]
    NotAPermutation,
    #[error("generators have different degrees")]
    DegreeMismatch,
    #[error("group order exceeds bound {0}")]
    TooLarge(usize),
    #[error("unknown group label {0:?}")]
    UnknownLabel(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("no Schur multiplier data for {0:?}")]
    NoSchurData(String),
    #[error("character table computation failed: {0}")]
    Character(String),
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::from_generators_bounded(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn from_generators_bounded(degree: usize, generators: Vec<Permutation>, bound: usize) -> Result<Self, GroupError> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let elements = perm::closure(degree, &generators, bound)?;
        let index: HashMap<&Permutation, u32> = elements.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.compose(b)];
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        Ok(FiniteGroup { name: None, degree, generators, elements, mul, inv })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, |acc, o| num_integer::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes as sorted element-index lists; the identity class comes first,
    /// then by element order, class size and smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut cl: Vec<usize> = (0..n).map(|g| self.mul(self.mul(self.inv(g), a), g)).collect();
            cl.sort_unstable();
            cl.dedup();
            for &x in &cl {
                class_of[x] = classes.len();
            }
            classes.push(cl);
        }
        classes.sort_by_key(|c| (self.element_order(c[0]), c.len(), c[0]));
        classes
    }

    /// Closure of a set of element indices under multiplication, sorted.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut list = vec![0usize];
        let mut i = 0;
        while i < list.len() {
            for &s in gens {
                let y = self.mul(list[i], s);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// All subgroups as sorted element-index lists, ordered by size then contents.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut all: std::collections::BTreeSet<Vec<usize>> = (0..n).map(|a| self.generated_by(&[a])).collect();
        loop {
            let current: Vec<Vec<usize>> = all.iter().cloned().collect();
            let mut grew = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let mut gens = a.clone();
                    gens.extend(b);
                    if all.insert(self.generated_by(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// The subgroup on the given elements as a permutation group of the same degree.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup, GroupError> {
        let gens: Vec<Permutation> = elements.iter().map(|&e| self.elements[e].clone()).collect();
        FiniteGroup::from_generators(self.degree, gens)
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }
}

/// Name of the catalog group isomorphic to `g`.
pub fn identify_group(g: &FiniteGroup, catalog: &[CatalogEntry]) -> Option<String> {
    catalog
        .iter()
        .filter(|e| e.order == g.order())
        .find(|e| e.build().is_ok_and(|h| groups_isomorphic(g, &h)))
        .map(|e| e.name.clone())
}

pub fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    g.conjugacy_classes().len()
}

/// Whether two groups are isomorphic, by extending generator images to a homomorphism.
pub fn groups_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let n = g.order();
    let mut og: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    let mut oh: Vec<usize> = (0..n).map(|a| h.element_order(a)).collect();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh {
        return false;
    }
    if n == 1 {
        return true;
    }
    // small generating set of g as element indices
    let gens = generating_set(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..n).filter(|&y| h.element_order(y) == g.element_order(x)).collect())
        .collect();
    let mut choice = vec![0usize; gens.len()];
    fn rec(
        k: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        cand: &[Vec<usize>],
        choice: &mut Vec<usize>,
    ) -> bool {
        if k == gens.len() {
            return extends(g, h, gens, choice);
        }
        for &y in &cand[k] {
            choice[k] = y;
            if rec(k + 1, g, h, gens, cand, choice) {
                return true;
            }
        }
        false
    }
    rec(0, g, h, &gens, &candidates, &mut choice)
}

fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let span_of = |gens: &[usize]| -> Vec<bool> {
        let mut span = vec![false; n];
        span[0] = true;
        let mut list = vec![0usize];
        let mut i = 0;
        while i < list.len() {
            for &s in gens {
                let y = g.mul(list[i], s);
                if !span[y] {
                    span[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        span
    };
    // greedily add elements of largest order not yet in the span
    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&a| std::cmp::Reverse(g.element_order(a)));
    let mut gens = Vec::new();
    let mut span = span_of(&gens);
    for a in by_order {
        if span[a] {
            continue;
        }
        gens.push(a);
        span = span_of(&gens);
        if span.iter().all(|&s| s) {
            break;
        }
    }
    gens
}

fn extends(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], images[k]);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return false;
            }
        }
        i += 1;
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if m == usize::MAX || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_class_count(&named_group("A5").unwrap()), 5);
        assert_eq!(conjugacy_class_count(&named_group("1").unwrap()), 1);
        assert_eq!(conjugacy_class_count(&named_group("S3").unwrap()), 3);
    }

    #[test]
    fn iso() {
        let d8 = named_group("D8").unwrap();
        let q8 = named_group("Q8").unwrap();
        assert!(!groups_isomorphic(&d8, &q8));
        assert!(groups_isomorphic(&q8, &q8));
        let cyc = FiniteGroup::from_generators(4, vec![Permutation::parse_cycles("(1,2,3,4)", 4).unwrap()]).unwrap();
        assert!(groups_isomorphic(&cyc, &named_group("Z4").unwrap()));
    }

    #[test]
    fn subgroup_lattice() {
        let a4 = named_group("A4").unwrap();
        let subs = a4.subgroups();
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 3, 3, 3, 4, 12]);
        let v4 = a4.subgroup(&subs[8]).unwrap();
        assert_eq!(identify_group(&v4, &bundled_catalog()).as_deref(), Some("Z2xZ2"));
        assert_eq!(named_group("S4").unwrap().subgroups().len(), 30);
    }

    #[test]
    fn orders() {
        let g = named_group("Z7:Z3").unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        assert_eq!(named_group("Z3:Z7").unwrap().order(), 21);
        assert_eq!(named_group("Q8").unwrap().order(), 8);
        assert_eq!(named_group("Z5").unwrap().exponent(), 5);
    }
}
