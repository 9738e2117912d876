use std::collections::BTreeMap;

use super::{DimensionVector, FusionError, FusionRing};
use crate::exact_algebra::CyclotomicNumber;

const EPS: f64 = 1e-9;

/// Partial fusion data imposed on a search.
#[derive(Clone, Debug, Default)]
pub struct FusionConstraints {
    entries: BTreeMap<(usize, usize, usize), u32>,
    products: Vec<(usize, usize, Vec<(usize, u32)>)>,
    dual: Option<Vec<usize>>,
}

impl FusionConstraints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entry(mut self, a: usize, b: usize, c: usize, m: u32) -> Self {
        self.entries.insert((a, b, c), m);
        self
    }

    /// Fixes the whole product a⊗b; unlisted simples get multiplicity zero.
    pub fn product(mut self, a: usize, b: usize, terms: &[(usize, u32)]) -> Self {
        self.products.push((a, b, terms.to_vec()));
        self
    }

    pub fn dual(mut self, dual: Vec<usize>) -> Self {
        self.dual = Some(dual);
        self
    }

    fn fixed_entries(&self, rank: usize) -> Result<BTreeMap<(usize, usize, usize), u32>, FusionError> {
        let mut out = self.entries.clone();
        for (a, b, terms) in &self.products {
            for c in 0..rank {
                let m = terms.iter().filter(|(x, _)| *x == c).map(|(_, m)| *m).sum();
                if let Some(old) = out.insert((*a, *b, c), m) {
                    if old != m {
                        return Err(FusionError::Invalid(format!("conflicting constraints on N[{a}][{b}][{c}]")));
                    }
                }
            }
        }
        if out.keys().any(|&(a, b, c)| a >= rank || b >= rank || c >= rank) {
            return Err(FusionError::Shape(rank));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub node_budget: u64,
    /// Apply the entrywise bound N_ab^c ≤ min(d_a, d_b, d_c); without it only N_ab^c d_c ≤ d_a d_b is used.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: 20_000_000, prune: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub duals_tried: usize,
    pub solutions_before_dedupe: usize,
}

pub fn enumerate_fusion_rings(
    rank: usize,
    dims: &DimensionVector,
    constraints: &FusionConstraints,
) -> Result<Vec<FusionRing>, FusionError> {
    enumerate_fusion_rings_with(rank, dims, constraints, &SearchConfig::default()).map(|(v, _)| v)
}

/// All commutative fusion rings of the given rank with FP-dimensions `dims` satisfying the
/// constraints, one per relabeling class, in canonical order. Each ring keeps the labels of the input.
pub fn enumerate_fusion_rings_with(
    rank: usize,
    dims: &DimensionVector,
    constraints: &FusionConstraints,
    cfg: &SearchConfig,
) -> Result<(Vec<FusionRing>, SearchStats), FusionError> {
    if rank == 0 {
        return Err(FusionError::ZeroRank);
    }
    if dims.len() != rank {
        return Err(FusionError::DimensionLength { expected: rank, got: dims.len() });
    }
    let fixed = constraints.fixed_entries(rank)?;
    let duals = match &constraints.dual {
        Some(d) => {
            if d.len() != rank || !is_involution(d) {
                return Err(FusionError::BadDual(rank));
            }
            vec![d.clone()]
        }
        None => involutions_preserving(dims),
    };
    let mut stats = SearchStats::default();
    let mut found: BTreeMap<(Vec<u32>, Vec<usize>), FusionRing> = BTreeMap::new();
    for dual in duals {
        stats.duals_tried += 1;
        let Some(mut problem) = Problem::build(rank, dims, &dual, &fixed, cfg.prune) else {
            continue;
        };
        let mut sols = Vec::new();
        problem.solve(cfg.node_budget, &mut stats.nodes, &mut sols)?;
        for ring in sols {
            if !ring.is_valid() || !ring.dimension_equation_failures(dims).is_empty() {
                continue;
            }
            stats.solutions_before_dedupe += 1;
            let (canon, _) = ring.canonical_form(dims.as_slice());
            found.entry((canon.n, canon.dual)).or_insert(ring);
        }
    }
    Ok((found.into_values().collect(), stats))
}

fn is_involution(d: &[usize]) -> bool {
    d[0] == 0 && d.iter().enumerate().all(|(i, &x)| x < d.len() && d[x] == i)
}

fn involutions_preserving(dims: &DimensionVector) -> Vec<Vec<usize>> {
    fn rec(i: usize, d: &mut Vec<Option<usize>>, dims: &DimensionVector, out: &mut Vec<Vec<usize>>) {
        let r = d.len();
        if i == r {
            out.push(d.iter().map(|x| x.unwrap()).collect());
            return;
        }
        if d[i].is_some() {
            rec(i + 1, d, dims, out);
            return;
        }
        for j in i..r {
            if d[j].is_some() || dims[j] != dims[i] {
                continue;
            }
            d[i] = Some(j);
            d[j] = Some(i);
            rec(i + 1, d, dims, out);
            d[i] = None;
            d[j] = None;
        }
    }
    let mut d = vec![None; dims.len()];
    d[0] = Some(0);
    let mut out = Vec::new();
    rec(1, &mut d, dims, &mut out);
    out
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Fixed(u32),
    Var(usize),
}

struct Row {
    target: f64,
    fixed_sum: f64,
    // (variable, total coefficient), sorted by variable
    terms: Vec<(usize, f64)>,
    last_var: Option<usize>,
}

struct Problem {
    rank: usize,
    dual: Vec<usize>,
    slots: Vec<Slot>,
    bounds: Vec<u32>,
    rows: Vec<Row>,
    rows_of_var: Vec<Vec<usize>>,
    assoc_by_var: Vec<Vec<(usize, usize, usize, usize)>>,
    values: Vec<u32>,
    partial: Vec<f64>,
}

impl Problem {
    fn build(
        rank: usize,
        dims: &DimensionVector,
        dual: &[usize],
        fixed: &BTreeMap<(usize, usize, usize), u32>,
        prune: bool,
    ) -> Option<Problem> {
        let r = rank;
        let idx = |a: usize, b: usize, c: usize| (a * r + b) * r + c;
        let d = dims.to_f64();
        let mut uf: Vec<usize> = (0..r * r * r).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, x: usize, y: usize| {
            let (a, b) = (find(p, x), find(p, y));
            if a != b {
                p[a.max(b)] = a.min(b);
            }
        };
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let i = idx(a, b, c);
                    union(&mut uf, i, idx(b, a, c));
                    union(&mut uf, i, idx(dual[a], c, b));
                    union(&mut uf, i, idx(dual[a], dual[b], dual[c]));
                }
            }
        }
        let mut orbit_value: BTreeMap<usize, u32> = BTreeMap::new();
        let mut orbit_bound: BTreeMap<usize, u32> = BTreeMap::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let root = find(&mut uf, idx(a, b, c));
                    let forced = if a == 0 {
                        Some(u32::from(b == c))
                    } else if b == 0 {
                        Some(u32::from(a == c))
                    } else if c == 0 {
                        Some(u32::from(b == dual[a]))
                    } else {
                        fixed.get(&(a, b, c)).copied()
                    };
                    if let Some(v) = forced {
                        if *orbit_value.entry(root).or_insert(v) != v {
                            return None;
                        }
                    }
                    let mut ub = (d[a] * d[b] / d[c] + EPS).floor();
                    if prune {
                        ub = ub.min((d[a].min(d[b]).min(d[c]) + EPS).floor());
                    }
                    let ub = ub.max(0.0) as u32;
                    let e = orbit_bound.entry(root).or_insert(ub);
                    *e = (*e).min(ub);
                }
            }
        }
        for (root, v) in &orbit_value {
            if *v > orbit_bound[root] {
                return None;
            }
        }

        // variables numbered in order of first appearance, row by row
        let mut var_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut bounds = Vec::new();
        let mut slots = vec![Slot::Fixed(0); r * r * r];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let root = find(&mut uf, idx(a, b, c));
                    slots[idx(a, b, c)] = match orbit_value.get(&root) {
                        Some(&v) => Slot::Fixed(v),
                        None => {
                            let next = var_of_root.len();
                            let v = *var_of_root.entry(root).or_insert_with(|| {
                                bounds.push(orbit_bound[&root]);
                                next
                            });
                            Slot::Var(v)
                        }
                    };
                }
            }
        }
        let nv = bounds.len();
        let mut rows = Vec::new();
        let mut rows_of_var = vec![Vec::new(); nv];
        for a in 1..r {
            for b in a..r {
                let mut fixed_sum = 0.0;
                let mut terms: BTreeMap<usize, f64> = BTreeMap::new();
                for c in 0..r {
                    match slots[idx(a, b, c)] {
                        Slot::Fixed(v) => fixed_sum += v as f64 * d[c],
                        Slot::Var(v) => *terms.entry(v).or_insert(0.0) += d[c],
                    }
                }
                let target = d[a] * d[b];
                let terms: Vec<(usize, f64)> = terms.into_iter().collect();
                let last_var = terms.last().map(|t| t.0);
                if last_var.is_none() && (fixed_sum - target).abs() > EPS * target.max(1.0) {
                    return None;
                }
                for &(v, _) in &terms {
                    rows_of_var[v].push(rows.len());
                }
                rows.push(Row { target, fixed_sum, terms, last_var });
            }
        }
        let mut assoc_by_var = vec![Vec::new(); nv];
        let mut p = Problem {
            rank: r,
            dual: dual.to_vec(),
            slots,
            bounds,
            partial: rows.iter().map(|row| row.fixed_sum).collect(),
            rows,
            rows_of_var,
            assoc_by_var: Vec::new(),
            values: vec![0; nv],
        };
        for a in 1..r {
            for b in 1..r {
                for c in 1..r {
                    for dd in 0..r {
                        let mut last: Option<usize> = None;
                        for e in 0..r {
                            for &(x, y, z) in &[(a, b, e), (e, c, dd), (b, c, e), (a, e, dd)] {
                                if let Slot::Var(v) = p.slots[idx(x, y, z)] {
                                    last = Some(last.map_or(v, |l: usize| l.max(v)));
                                }
                            }
                        }
                        match last {
                            Some(v) => assoc_by_var[v].push((a, b, c, dd)),
                            None => {
                                if !p.assoc_holds(a, b, c, dd) {
                                    return None;
                                }
                            }
                        }
                    }
                }
            }
        }
        p.assoc_by_var = assoc_by_var;
        Some(p)
    }

    #[inline]
    fn val(&self, a: usize, b: usize, c: usize) -> u64 {
        match self.slots[(a * self.rank + b) * self.rank + c] {
            Slot::Fixed(v) => v as u64,
            Slot::Var(v) => self.values[v] as u64,
        }
    }

    fn assoc_holds(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let r = self.rank;
        let lhs: u64 = (0..r).map(|e| self.val(a, b, e) * self.val(e, c, d)).sum();
        let rhs: u64 = (0..r).map(|f| self.val(b, c, f) * self.val(a, f, d)).sum();
        lhs == rhs
    }

    fn solve(&mut self, budget: u64, nodes: &mut u64, out: &mut Vec<FusionRing>) -> Result<(), FusionError> {
        self.dfs(0, budget, nodes, out)
    }

    fn dfs(&mut self, i: usize, budget: u64, nodes: &mut u64, out: &mut Vec<FusionRing>) -> Result<(), FusionError> {
        if i == self.values.len() {
            let r = self.rank;
            let n: Vec<u32> = (0..r * r * r)
                .map(|k| match self.slots[k] {
                    Slot::Fixed(v) => v,
                    Slot::Var(v) => self.values[v],
                })
                .collect();
            out.push(FusionRing::from_flat(r, n, self.dual.clone()));
            return Ok(());
        }
        for v in 0..=self.bounds[i] {
            *nodes += 1;
            if *nodes > budget {
                return Err(FusionError::SearchSpaceExceeded(budget));
            }
            self.values[i] = v;
            let mut ok = true;
            let mut touched = 0;
            for (k, &ri) in self.rows_of_var[i].iter().enumerate() {
                let row = &self.rows[ri];
                let coef = row.terms.iter().find(|t| t.0 == i).unwrap().1;
                self.partial[ri] += coef * v as f64;
                touched = k + 1;
                let tol = EPS * row.target.max(1.0);
                if self.partial[ri] > row.target + tol
                    || (row.last_var == Some(i) && (self.partial[ri] - row.target).abs() > tol)
                {
                    ok = false;
                    break;
                }
            }
            if ok {
                ok = self.assoc_by_var[i].iter().all(|&(a, b, c, d)| self.assoc_holds(a, b, c, d));
            }
            let result = if ok { self.dfs(i + 1, budget, nodes, out) } else { Ok(()) };
            for &ri in &self.rows_of_var[i][..touched] {
                let coef = self.rows[ri].terms.iter().find(|t| t.0 == i).unwrap().1;
                self.partial[ri] -= coef * v as f64;
            }
            result?;
            // larger values only overshoot further
            if !ok && self.rows_of_var[i].iter().any(|&ri| self.partial[ri] + self.coef(ri, i) * v as f64 > self.rows[ri].target + EPS * self.rows[ri].target.max(1.0)) {
                break;
            }
        }
        self.values[i] = 0;
        Ok(())
    }

    fn coef(&self, ri: usize, v: usize) -> f64 {
        self.rows[ri].terms.iter().find(|t| t.0 == v).unwrap().1
    }
}

/// Nonnegative integer solutions of Σ_c N_ab^c d_c = d_a d_b for one row, split by whether
/// they respect the entrywise bound N_ab^c ≤ min(d_a, d_b, d_c).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowSolutions {
    pub admissible: Vec<Vec<u32>>,
    pub pruned: Vec<Vec<u32>>,
}

pub fn row_solutions(dims: &DimensionVector, a: usize, b: usize, fixed: &[(usize, u32)]) -> RowSolutions {
    let r = dims.len();
    let d = dims.to_f64();
    let target = &dims[a] * &dims[b];
    let mut row: Vec<Option<u32>> = vec![None; r];
    for &(c, m) in fixed {
        row[c] = Some(m);
    }
    let free: Vec<usize> = (0..r).filter(|&c| row[c].is_none()).collect();
    let mut out = RowSolutions::default();
    let mut cur: Vec<u32> = row.iter().map(|x| x.unwrap_or(0)).collect();
    let base: f64 = (0..r).map(|c| cur[c] as f64 * d[c]).sum();
    fn rec(
        k: usize,
        acc: f64,
        free: &[usize],
        d: &[f64],
        goal: f64,
        cur: &mut Vec<u32>,
        found: &mut Vec<Vec<u32>>,
    ) {
        if k == free.len() {
            if (acc - goal).abs() < EPS * goal.max(1.0) {
                found.push(cur.clone());
            }
            return;
        }
        let c = free[k];
        let mut m = 0u32;
        while acc + m as f64 * d[c] <= goal + EPS * goal.max(1.0) {
            cur[c] = m;
            rec(k + 1, acc + m as f64 * d[c], free, d, goal, cur, found);
            m += 1;
        }
        cur[c] = 0;
    }
    let mut found = Vec::new();
    rec(0, base, &free, &d, target.to_f64(), &mut cur, &mut found);
    for sol in found {
        let exact: CyclotomicNumber = (0..r)
            .filter(|&c| sol[c] > 0)
            .map(|c| &dims[c] * &CyclotomicNumber::from_integer(sol[c] as i64))
            .sum();
        if exact != target {
            continue;
        }
        let within = (0..r).all(|c| sol[c] as f64 <= d[a].min(d[b]).min(d[c]) + EPS);
        if within {
            out.admissible.push(sol);
        } else {
            out.pruned.push(sol);
        }
    }
    out.admissible.sort();
    out.pruned.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_unit_dims() {
        let rings = enumerate_fusion_rings(2, &DimensionVector::from_integers(&[1, 1]), &FusionConstraints::new()).unwrap();
        assert_eq!(rings.len(), 1);
        assert!(crate::fusion_ring::rings_isomorphic(&rings[0], &FusionRing::cyclic(2)).is_some());
    }

    #[test]
    fn rep_s3_is_unique_for_its_dims() {
        let rings = enumerate_fusion_rings(3, &DimensionVector::from_integers(&[1, 1, 2]), &FusionConstraints::new()).unwrap();
        assert_eq!(rings.len(), 1);
        assert_eq!(rings[0].product(2, 2), vec![(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn s4_row_split() {
        let dims = DimensionVector::from_integers(&[1, 1, 2, 3, 3]);
        let rs = row_solutions(&dims, 3, 3, &[(0, 1), (1, 0)]);
        assert!(rs.admissible.iter().all(|s| s[2] == 1 && s[3] + s[4] == 2));
        assert_eq!(rs.admissible.len(), 3);
        assert_eq!(rs.pruned, vec![vec![1, 0, 4, 0, 0]]);
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = SearchConfig { node_budget: 3, prune: true };
        let dims = DimensionVector::from_integers(&[1, 1, 2, 3, 3]);
        let r = enumerate_fusion_rings_with(5, &dims, &FusionConstraints::new(), &cfg);
        assert_eq!(r.unwrap_err(), FusionError::SearchSpaceExceeded(3));
    }

    #[test]
    fn d8_from_pointed_klein_units() {
        let dims = DimensionVector::from_integers(&[1, 1, 2, 1, 1]);
        let c = FusionConstraints::new()
            .product(1, 1, &[(0, 1)])
            .product(3, 3, &[(0, 1)])
            .product(1, 3, &[(4, 1)])
            .dual(vec![0, 1, 2, 3, 4]);
        let rings = enumerate_fusion_rings(5, &dims, &c).unwrap();
        assert_eq!(rings.len(), 1);
        assert_eq!(rings[0].product(2, 2), vec![(0, 1), (1, 1), (3, 1), (4, 1)]);
        let all = enumerate_fusion_rings(5, &dims, &FusionConstraints::new()).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn s4_with_sign_twisting() {
        let dims = DimensionVector::from_integers(&[1, 1, 2, 3, 3]);
        let c = FusionConstraints::new().product(1, 3, &[(4, 1)]);
        let rings = enumerate_fusion_rings(5, &dims, &c).unwrap();
        assert!(!rings.is_empty());
        assert!(rings.iter().all(|f| f.n(3, 3, 2) == 1));
    }
}
