//! Fusion rings: structure constants, axioms, Frobenius–Perron dimensions, subrings,
//! universal grading and a bounded search for fusion rules with prescribed dimensions.

mod dims;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::CyclotomicNumber;

pub use dims::{fp_dimensions, fp_dimensions_with, identify_real_algebraic, DimensionConfig};
pub use search::{
    enumerate_fusion_rings, enumerate_fusion_rings_with, row_solutions, FusionConstraints, RowSolutions, SearchConfig, SearchStats,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("tensor shape does not match rank {0}")]
    Shape(usize),
    #[error("dual is not an involution on 0..{0}")]
    BadDual(usize),
    #[error("no cyclotomic Frobenius-Perron dimension for object {object} with conductor <= {bound}")]
    NoCyclotomicDimension { object: usize, bound: u64 },
    #[error("ring is not valid: {0}")]
    Invalid(String),
    #[error("search space exceeded node budget {0}")]
    SearchSpaceExceeded(u64),
    #[error("dimension vector has length {got}, expected {expected}")]
    DimensionLength { expected: usize, got: usize },
}

/// Based ring with simples 0..rank, unit 0, N[a][b][c] = N_{a,b}^c.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionRing {
    rank: usize,
    n: Vec<u32>,
    dual: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    Unit { a: usize, b: usize, c: usize },
    Rigidity { a: usize, b: usize },
    Associativity { a: usize, b: usize, c: usize, d: usize },
    Commutativity { a: usize, b: usize, c: usize },
    Frobenius { a: usize, b: usize, c: usize },
    DualInvolution { a: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unit { a, b, c } => write!(f, "unit axiom fails at ({a},{b},{c})"),
            Violation::Rigidity { a, b } => write!(f, "rigidity fails at ({a},{b})"),
            Violation::Associativity { a, b, c, d } => write!(f, "associativity fails at ({a},{b},{c},{d})"),
            Violation::Commutativity { a, b, c } => write!(f, "commutativity fails at ({a},{b},{c})"),
            Violation::Frobenius { a, b, c } => write!(f, "Frobenius reciprocity fails at ({a},{b},{c})"),
            Violation::DualInvolution { a } => write!(f, "dual is not an involution at {a}"),
        }
    }
}

impl FusionRing {
    /// Builds a ring from a nested tensor; only the shape and the dual are checked here.
    pub fn new(tensor: Vec<Vec<Vec<u32>>>, dual: Vec<usize>) -> Result<Self, FusionError> {
        let r = tensor.len();
        if r == 0 {
            return Err(FusionError::ZeroRank);
        }
        if dual.len() != r || dual.iter().any(|&d| d >= r) {
            return Err(FusionError::BadDual(r));
        }
        let mut n = Vec::with_capacity(r * r * r);
        for row in &tensor {
            if row.len() != r {
                return Err(FusionError::Shape(r));
            }
            for col in row {
                if col.len() != r {
                    return Err(FusionError::Shape(r));
                }
                n.extend_from_slice(col);
            }
        }
        Ok(FusionRing { rank: r, n, dual })
    }

    pub(crate) fn from_flat(rank: usize, n: Vec<u32>, dual: Vec<usize>) -> Self {
        debug_assert_eq!(n.len(), rank * rank * rank);
        FusionRing { rank, n, dual }
    }

    /// Duals read off from N[a][b][0] = δ_{b,a*}.
    pub fn with_inferred_dual(tensor: Vec<Vec<Vec<u32>>>) -> Result<Self, FusionError> {
        let r = tensor.len();
        let mut dual = vec![0; r];
        for (a, d) in dual.iter_mut().enumerate() {
            *d = (0..r)
                .find(|&b| tensor[a].get(b).and_then(|x| x.first()).copied() == Some(1))
                .ok_or(FusionError::BadDual(r))?;
        }
        Self::new(tensor, dual)
    }

    pub fn trivial() -> Self {
        FusionRing { rank: 1, n: vec![1], dual: vec![0] }
    }

    /// Group ring of Z/m with simple k ↔ residue k.
    pub fn cyclic(m: usize) -> Self {
        Self::pointed(m, |a, b| (a + b) % m)
    }

    /// Group ring for a group with elements 0..order (0 the identity) and the given product.
    pub fn pointed(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut n = vec![0u32; order * order * order];
        let mut dual = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                n[(a * order + b) * order + c] = 1;
                if c == 0 {
                    dual[a] = b;
                }
            }
        }
        FusionRing { rank: order, n, dual }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        self.n[(a * self.rank + b) * self.rank + c]
    }

    pub fn flat(&self) -> &[u32] {
        &self.n
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank;
        (0..r)
            .map(|a| (0..r).map(|b| (0..r).map(|c| self.n(a, b, c)).collect()).collect())
            .collect()
    }

    /// Fusion matrix (N_a)_{b,c} = N_{a,b}^c.
    pub fn fusion_matrix(&self, a: usize) -> Vec<Vec<u32>> {
        (0..self.rank)
            .map(|b| (0..self.rank).map(|c| self.n(a, b, c)).collect())
            .collect()
    }

    /// Nonzero terms of a⊗b as (c, multiplicity).
    pub fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        (0..self.rank)
            .filter_map(|c| {
                let m = self.n(a, b, c);
                (m > 0).then_some((c, m))
            })
            .collect()
    }

    pub fn is_invertible(&self, a: usize) -> bool {
        self.product(a, self.dual[a]) == vec![(0, 1)]
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank;
        (0..r).all(|a| (0..r).all(|b| (0..r).all(|c| self.n(a, b, c) == self.n(b, a, c))))
    }

    /// Checks every axiom; the result is empty iff the ring is a commutative fusion ring.
    pub fn validate(&self) -> Vec<Violation> {
        let r = self.rank;
        let mut v = Vec::new();
        for a in 0..r {
            if self.dual[self.dual[a]] != a {
                v.push(Violation::DualInvolution { a });
            }
        }
        if self.dual[0] != 0 {
            v.push(Violation::DualInvolution { a: 0 });
        }
        for b in 0..r {
            for c in 0..r {
                let want = u32::from(b == c);
                if self.n(0, b, c) != want {
                    v.push(Violation::Unit { a: 0, b, c });
                }
                if self.n(b, 0, c) != want {
                    v.push(Violation::Unit { a: b, b: 0, c });
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                if self.n(a, b, 0) != u32::from(b == self.dual[a]) {
                    v.push(Violation::Rigidity { a, b });
                }
                for c in 0..r {
                    if self.n(a, b, c) != self.n(b, a, c) {
                        v.push(Violation::Commutativity { a, b, c });
                    }
                    if self.n(a, b, c) != self.n(self.dual[c], a, self.dual[b]) {
                        v.push(Violation::Frobenius { a, b, c });
                    }
                }
            }
        }
        for (a, b, c, d) in self.associativity_failures(usize::MAX) {
            v.push(Violation::Associativity { a, b, c, d });
        }
        v
    }

    pub fn associativity_failures(&self, limit: usize) -> Vec<(usize, usize, usize, usize)> {
        let r = self.rank;
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let lhs: u64 = (0..r).map(|e| self.n(a, b, e) as u64 * self.n(e, c, d) as u64).sum();
                        let rhs: u64 = (0..r).map(|f| self.n(b, c, f) as u64 * self.n(a, f, d) as u64).sum();
                        if lhs != rhs {
                            out.push((a, b, c, d));
                            if out.len() >= limit {
                                return out;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Relabels simples: old index i becomes perm[i]. perm[0] must be 0.
    pub fn relabel(&self, perm: &[usize]) -> FusionRing {
        let r = self.rank;
        let mut n = vec![0u32; r * r * r];
        let mut dual = vec![0; r];
        for a in 0..r {
            dual[perm[a]] = perm[self.dual[a]];
            for b in 0..r {
                for c in 0..r {
                    n[(perm[a] * r + perm[b]) * r + perm[c]] = self.n(a, b, c);
                }
            }
        }
        FusionRing { rank: r, n, dual }
    }

    /// Exact check of d_a d_b = Σ_c N_{ab}^c d_c; returns the failing pairs.
    pub fn dimension_equation_failures(&self, dims: &DimensionVector) -> Vec<(usize, usize)> {
        let r = self.rank;
        let d = dims.as_slice();
        let mut bad = Vec::new();
        for a in 0..r {
            for b in a..r {
                let lhs = &d[a] * &d[b];
                let rhs: CyclotomicNumber = (0..r)
                    .filter(|&c| self.n(a, b, c) > 0)
                    .map(|c| &d[c] * &CyclotomicNumber::from_integer(self.n(a, b, c) as i64))
                    .sum();
                if lhs != rhs {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Canonical representative: lexicographically minimal (tensor, dual) over relabelings
    /// fixing 0 that preserve the given class labels (e.g. dimensions).
    pub fn canonical_form<K: PartialEq>(&self, classes: &[K]) -> (FusionRing, Vec<usize>) {
        let r = self.rank;
        let mut best: Option<(Vec<u32>, Vec<usize>, Vec<usize>)> = None;
        for perm in permutations_fixing_zero(r) {
            if (0..r).any(|i| classes[perm[i]] != classes[i]) {
                continue;
            }
            let g = self.relabel(&perm);
            let key = (g.n, g.dual);
            if best.as_ref().is_none_or(|(n, d, _)| (&key.0, &key.1) < (n, d)) {
                best = Some((key.0, key.1, perm));
            }
        }
        let (n, dual, perm) = best.expect("identity permutation always qualifies");
        (FusionRing { rank: r, n, dual }, perm)
    }

    /// Support of a⊗a* over all a, closed under fusion.
    pub fn adjoint_support(&self) -> BTreeSet<usize> {
        let mut seeds = BTreeSet::new();
        for a in 0..self.rank {
            for (c, _) in self.product(a, self.dual[a]) {
                seeds.insert(c);
            }
        }
        self.closure(seeds)
    }

    fn closure(&self, mut set: BTreeSet<usize>) -> BTreeSet<usize> {
        set.insert(0);
        loop {
            let mut added = Vec::new();
            for &x in &set {
                if !set.contains(&self.dual[x]) {
                    added.push(self.dual[x]);
                }
                for &y in &set {
                    for (c, _) in self.product(x, y) {
                        if !set.contains(&c) {
                            added.push(c);
                        }
                    }
                }
            }
            if added.is_empty() {
                return set;
            }
            set.extend(added);
        }
    }

    pub fn subring_generated_by(&self, a: usize) -> BTreeSet<usize> {
        self.closure([a].into_iter().collect())
    }

    pub fn subring_generated_by_set(&self, gens: &[usize]) -> BTreeSet<usize> {
        self.closure(gens.iter().copied().collect())
    }

    /// The fusion subring on `indices` (sorted, containing 0), relabeled 0..k in order.
    pub fn restrict(&self, indices: &[usize]) -> Result<FusionRing, FusionError> {
        let k = indices.len();
        if k == 0 || indices[0] != 0 {
            return Err(FusionError::Invalid("subring must contain the unit first".into()));
        }
        let pos = |x: usize| indices.iter().position(|&i| i == x);
        let mut n = vec![0u32; k * k * k];
        let mut dual = vec![0; k];
        for (i, &a) in indices.iter().enumerate() {
            dual[i] = pos(self.dual[a]).ok_or_else(|| FusionError::Invalid("not closed under duality".into()))?;
            for (j, &b) in indices.iter().enumerate() {
                for (c, m) in self.product(a, b) {
                    let l = pos(c).ok_or_else(|| FusionError::Invalid("not closed under fusion".into()))?;
                    n[(i * k + j) * k + l] = m;
                }
            }
        }
        Ok(FusionRing { rank: k, n, dual })
    }
}

pub fn subring_generated_by(f: &FusionRing, a: usize) -> BTreeSet<usize> {
    f.subring_generated_by(a)
}

pub fn validate(f: &FusionRing) -> Vec<Violation> {
    f.validate()
}

/// All permutations of 0..r with 0 fixed, in lexicographic order.
pub fn permutations_fixing_zero(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..r).collect();
    permute(&mut rest, 0, &mut out);
    out.sort();
    out.into_iter()
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect()
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// A relabeling carrying f to g (g.n(p[a],p[b],p[c]) = f.n(a,b,c)), if one exists.
pub fn rings_isomorphic(f: &FusionRing, g: &FusionRing) -> Option<Vec<usize>> {
    if f.rank != g.rank {
        return None;
    }
    let mut fs: Vec<u32> = f.n.clone();
    let mut gs: Vec<u32> = g.n.clone();
    fs.sort_unstable();
    gs.sort_unstable();
    if fs != gs {
        return None;
    }
    let (fi, gi) = (simple_invariants(f), simple_invariants(g));
    let r = f.rank;
    let mut p = vec![usize::MAX; r];
    let mut used = vec![false; r];
    p[0] = 0;
    used[0] = true;
    if extend_iso(f, g, &fi, &gi, 1, &mut p, &mut used) {
        Some(p)
    } else {
        None
    }
}

/// Relabeling-invariant data of each simple: self-duality, sorted fusion matrix entries and
/// the rank of the subring it generates.
fn simple_invariants(f: &FusionRing) -> Vec<(bool, Vec<u32>, usize)> {
    (0..f.rank)
        .map(|a| {
            let mut row: Vec<u32> = f.fusion_matrix(a).into_iter().flatten().collect();
            row.sort_unstable();
            (f.dual(a) == a, row, f.subring_generated_by(a).len())
        })
        .collect()
}

fn extend_iso(
    f: &FusionRing,
    g: &FusionRing,
    fi: &[(bool, Vec<u32>, usize)],
    gi: &[(bool, Vec<u32>, usize)],
    a: usize,
    p: &mut [usize],
    used: &mut [bool],
) -> bool {
    let r = f.rank;
    if a == r {
        return true;
    }
    for x in 1..r {
        if used[x] || fi[a] != gi[x] {
            continue;
        }
        p[a] = x;
        let consistent = (0..=a).all(|b| {
            let da = f.dual(a);
            (da > a || g.dual(x) == p[da])
                && (0..=a).all(|c| {
                    f.n(a, b, c) == g.n(x, p[b], p[c])
                        && f.n(b, a, c) == g.n(p[b], x, p[c])
                        && f.n(b, c, a) == g.n(p[b], p[c], x)
                })
        });
        if consistent {
            used[x] = true;
            if extend_iso(f, g, fi, gi, a + 1, p, used) {
                return true;
            }
            used[x] = false;
        }
    }
    p[a] = usize::MAX;
    false
}

/// Frobenius–Perron dimensions of the simples, d[0] = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector {
    dims: Vec<CyclotomicNumber>,
}

impl DimensionVector {
    pub fn new(dims: Vec<CyclotomicNumber>) -> Self {
        DimensionVector { dims }
    }

    pub fn from_integers(d: &[i64]) -> Self {
        DimensionVector { dims: d.iter().map(|&x| CyclotomicNumber::from_integer(x)).collect() }
    }

    pub fn as_slice(&self) -> &[CyclotomicNumber] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn get(&self, a: usize) -> &CyclotomicNumber {
        &self.dims[a]
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut d = self.dims.clone();
        for (i, &p) in perm.iter().enumerate() {
            d[p] = self.dims[i].clone();
        }
        DimensionVector { dims: d }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.dims.iter().map(|d| d.to_f64()).collect()
    }
}

impl std::ops::Index<usize> for DimensionVector {
    type Output = CyclotomicNumber;
    fn index(&self, i: usize) -> &CyclotomicNumber {
        &self.dims[i]
    }
}

pub fn global_dimension(dv: &DimensionVector) -> CyclotomicNumber {
    dv.dims.iter().map(|d| d * d).sum()
}

/// Universal grading: the adjoint support, the grading components and Σ d² per component.
#[derive(Clone, Debug, PartialEq)]
pub struct GradingComponents {
    pub adjoint: BTreeSet<usize>,
    pub components: Vec<Vec<usize>>,
    pub totals: Vec<CyclotomicNumber>,
}

pub fn universal_grading_components(f: &FusionRing) -> Result<GradingComponents, FusionError> {
    let dims = fp_dimensions(f)?;
    Ok(universal_grading_with_dims(f, &dims))
}

pub fn universal_grading_with_dims(f: &FusionRing, dims: &DimensionVector) -> GradingComponents {
    let r = f.rank;
    let adjoint = f.adjoint_support();
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &x in &adjoint {
        for a in 0..r {
            for b in 0..r {
                if f.n(x, a, b) > 0 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for a in 0..r {
        let ra = find(&mut parent, a);
        match roots.iter().position(|&x| x == ra) {
            Some(i) => comps[i].push(a),
            None => {
                roots.push(ra);
                comps.push(vec![a]);
            }
        }
    }
    let totals = comps
        .iter()
        .map(|c| c.iter().map(|&a| &dims[a] * &dims[a]).sum())
        .collect();
    GradingComponents { adjoint, components: comps, totals }
}

// JSON: {"rank": r, "dual": [...], "N": [[[...]]]}
#[derive(Serialize, Deserialize)]
struct RawRing {
    rank: usize,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<Vec<Vec<u32>>>,
}

impl Serialize for FusionRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawRing { rank: self.rank, dual: self.dual.clone(), n: self.tensor() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRing::deserialize(d)?;
        if raw.n.len() != raw.rank {
            return Err(serde::de::Error::custom(format!(
                "rank {} but N has {} slices",
                raw.rank,
                raw.n.len()
            )));
        }
        FusionRing::new(raw.n, raw.dual).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rep_s3() -> FusionRing {
        // 0 trivial, 1 sign, 2 standard
        let mut t = vec![vec![vec![0u32; 3]; 3]; 3];
        let prod = |a: usize, b: usize| -> Vec<u32> {
            match (a.min(b), a.max(b)) {
                (0, x) => (0..3).map(|c| u32::from(c == x)).collect(),
                (1, 1) => vec![1, 0, 0],
                (1, 2) => vec![0, 0, 1],
                (2, 2) => vec![1, 1, 1],
                _ => unreachable!(),
            }
        };
        for a in 0..3 {
            for b in 0..3 {
                t[a][b] = prod(a, b);
            }
        }
        FusionRing::new(t, vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(FusionRing::cyclic(2).validate().is_empty());
        assert!(rep_s3().validate().is_empty());
        let mut t = FusionRing::cyclic(2).tensor();
        t[0][1][1] = 2;
        let bad = FusionRing::new(t, vec![0, 1]).unwrap();
        assert!(bad.validate().iter().any(|v| matches!(v, Violation::Unit { .. })));
    }

    #[test]
    fn subrings() {
        let s3 = rep_s3();
        assert_eq!(s3.subring_generated_by(1), [0, 1].into_iter().collect());
        assert_eq!(s3.subring_generated_by(0), [0].into_iter().collect());
        assert_eq!(s3.subring_generated_by(2), [0, 1, 2].into_iter().collect());
    }

    #[test]
    fn grading() {
        let z4 = universal_grading_components(&FusionRing::cyclic(4)).unwrap();
        assert_eq!(z4.components.len(), 4);
        let s3 = universal_grading_components(&rep_s3()).unwrap();
        assert_eq!(s3.components, vec![vec![0, 1, 2]]);
        let tc = FusionRing::pointed(4, |a, b| a ^ b);
        let g = universal_grading_components(&tc).unwrap();
        assert_eq!(g.components.len(), 4);
        assert!(g.totals.iter().all(|t| t.is_one()));
    }

    #[test]
    fn isomorphism() {
        let z4 = FusionRing::cyclic(4);
        let k4 = FusionRing::pointed(4, |a, b| a ^ b);
        assert!(rings_isomorphic(&z4, &k4).is_none());
        assert_eq!(rings_isomorphic(&z4, &z4), Some(vec![0, 1, 2, 3]));
        let z24 = FusionRing::cyclic(24);
        let z2z12 = FusionRing::pointed(24, |a, b| ((a / 12 + b / 12) % 2) * 12 + (a % 12 + b % 12) % 12);
        let z3z8 = FusionRing::pointed(24, |a, b| ((a / 8 + b / 8) % 3) * 8 + (a % 8 + b % 8) % 8);
        assert!(rings_isomorphic(&z24, &z2z12).is_none());
        let p = rings_isomorphic(&z24, &z3z8).unwrap();
        assert_eq!(z24.relabel(&p), z3z8);
    }

    #[test]
    fn json_round_trip() {
        let r = rep_s3();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"rank":3,"dual":[0,1,2],"N":"#));
        assert_eq!(serde_json::from_str::<FusionRing>(&s).unwrap(), r);
    }
}
