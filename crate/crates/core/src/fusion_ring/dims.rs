use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::{DimensionVector, FusionError, FusionRing};
use crate::exact_algebra::{canonical_conductor, euler_phi, units, CyclotomicNumber, IntPolynomial, Rational};

#[derive(Clone, Debug)]
pub struct DimensionConfig {
    /// Largest conductor tried when identifying an irrational dimension.
    pub max_conductor: u64,
}

impl Default for DimensionConfig {
    fn default() -> Self {
        DimensionConfig { max_conductor: 120 }
    }
}

pub fn fp_dimensions(f: &FusionRing) -> Result<DimensionVector, FusionError> {
    fp_dimensions_with(f, &DimensionConfig::default())
}

/// Exact FP-dimensions. The Perron vector is located numerically; each entry is then
/// identified as an exact cyclotomic integer and the dimension equation is verified exactly.
pub fn fp_dimensions_with(f: &FusionRing, cfg: &DimensionConfig) -> Result<DimensionVector, FusionError> {
    let r = f.rank();
    if !f.associativity_failures(1).is_empty() {
        return Err(FusionError::Invalid("not associative".into()));
    }
    let approx = perron_vector(f);

    // integral dimensions are common enough to try first
    let rounded: Vec<i64> = approx.iter().map(|x| x.round() as i64).collect();
    if rounded.iter().zip(&approx).all(|(&k, &x)| k >= 1 && (k as f64 - x).abs() < 1e-6) {
        let dv = DimensionVector::from_integers(&rounded);
        if f.dimension_equation_failures(&dv).is_empty() {
            return Ok(dv);
        }
    }

    let mut cache: Vec<(IntPolynomial, f64, CyclotomicNumber)> = Vec::new();
    let mut dims = Vec::with_capacity(r);
    for a in 0..r {
        let lambda = approx[a];
        if (lambda - lambda.round()).abs() < 1e-9 {
            dims.push(CyclotomicNumber::from_integer(lambda.round() as i64));
            continue;
        }
        let minpoly = minimal_polynomial_of_eigenvalue(f, a, lambda)
            .ok_or(FusionError::NoCyclotomicDimension { object: a, bound: cfg.max_conductor })?;
        if let Some((_, _, x)) = cache.iter().find(|(p, l, _)| *p == minpoly && (l - lambda).abs() < 1e-9) {
            dims.push(x.clone());
            continue;
        }
        let x = identify_real_algebraic(lambda, &minpoly, cfg.max_conductor)
            .ok_or(FusionError::NoCyclotomicDimension { object: a, bound: cfg.max_conductor })?;
        cache.push((minpoly, lambda, x.clone()));
        dims.push(x);
    }
    let dv = DimensionVector::new(dims);
    if !f.dimension_equation_failures(&dv).is_empty() {
        return Err(FusionError::Invalid("identified dimensions fail the dimension equation".into()));
    }
    Ok(dv)
}

/// Perron eigenvector of Σ_a N_a normalized so the unit has dimension 1; entry a is d_a.
fn perron_vector(f: &FusionRing) -> Vec<f64> {
    let r = f.rank();
    let mut m = DMatrix::<f64>::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                // (Σ_a N_a^T) acting on d: d_b · Σ_a d_a = Σ_c (Σ_a N_ab^c) d_c
                m[(b, c)] += f.n(a, b, c) as f64;
            }
        }
    }
    let mut v = DVector::<f64>::from_element(r, 1.0);
    for _ in 0..10_000 {
        let w = &m * &v + &v;
        let nrm = w[0];
        let w = w / nrm;
        let diff = (&w - &v).amax();
        v = w;
        if diff < 1e-15 {
            break;
        }
    }
    // refine each d_a as the eigenvalue of N_a on v
    (0..r)
        .map(|a| {
            let s: f64 = (0..r).map(|c| f.n(a, 0, c) as f64 * v[c]).sum();
            let _ = s;
            v[a] / v[0]
        })
        .collect()
}

/// Minimal polynomial of the eigenvalue lambda of N_a, found as the smallest product of
/// distinct eigenvalue factors that is an integer polynomial dividing the characteristic polynomial.
fn minimal_polynomial_of_eigenvalue(f: &FusionRing, a: usize, lambda: f64) -> Option<IntPolynomial> {
    let r = f.rank();
    let na: Vec<Vec<i64>> = (0..r).map(|b| (0..r).map(|c| f.n(a, b, c) as i64).collect()).collect();
    let charpoly = integer_charpoly(&na);
    let m = DMatrix::<f64>::from_fn(r, r, |i, j| na[i][j] as f64);
    let eig = m.complex_eigenvalues();
    let mut clusters: Vec<Complex64> = Vec::new();
    for z in eig.iter() {
        if !clusters.iter().any(|w| (w - z).norm() < 1e-7) {
            clusters.push(*z);
        }
    }
    let target = clusters
        .iter()
        .position(|z| (z.re - lambda).abs() < 1e-6 && z.im.abs() < 1e-6)?;
    let others: Vec<Complex64> = clusters
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != target)
        .map(|(_, z)| *z)
        .collect();
    for extra in 0..=others.len() {
        let mut found = None;
        for_each_subset(others.len(), extra, &mut |idx| {
            if found.is_some() {
                return;
            }
            let mut roots = vec![clusters[target]];
            roots.extend(idx.iter().map(|&i| others[i]));
            if let Some(p) = integer_poly_from_roots(&roots) {
                if charpoly.div_exact(&p).is_some() {
                    found = Some(p);
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

fn integer_poly_from_roots(roots: &[Complex64]) -> Option<IntPolynomial> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, x) in c.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= x * z;
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for x in c {
        if x.im.abs() > 1e-6 || (x.re - x.re.round()).abs() > 1e-6 {
            return None;
        }
        out.push(BigInt::from(x.re.round() as i64));
    }
    Some(IntPolynomial::new(out))
}

/// det(xI - M) by Faddeev–LeVerrier in exact rationals.
pub(crate) fn integer_charpoly(m: &[Vec<i64>]) -> IntPolynomial {
    let n = m.len();
    let mr: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::from_integer(BigInt::from(1));
    let mut mk: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let mut t = mk.clone();
        for (i, row) in t.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let mut prod = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if mr[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    prod[i][j] += &mr[i][l] * &t[l][j];
                }
            }
        }
        let tr: Rational = (0..n).map(|i| prod[i][i].clone()).sum();
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k as i64));
        mk = prod;
    }
    IntPolynomial::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

fn numeric_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return vec![];
    }
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let lead = c[d];
    let comp = DMatrix::<f64>::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    comp.complex_eigenvalues().iter().copied().collect()
}

struct VandermondeInverse {
    units: Vec<u64>,
    inv: DMatrix<Complex64>,
}

fn vandermonde_inverse(m: u64) -> Arc<VandermondeInverse> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<VandermondeInverse>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&m) {
        return v.clone();
    }
    let us = units(m);
    let phi = us.len();
    let v = DMatrix::<Complex64>::from_fn(phi, phi, |i, k| {
        let a = 2.0 * std::f64::consts::PI * ((us[i] * k as u64) % m) as f64 / m as f64;
        Complex64::from_polar(1.0, a)
    });
    let inv = v.try_inverse().expect("Vandermonde matrix at distinct roots is invertible");
    let out = Arc::new(VandermondeInverse { units: us, inv });
    cache.lock().unwrap().insert(m, out.clone());
    out
}

/// Subgroups of (Z/m)^× that contain -1 and have the given index, as sorted element lists.
fn real_subgroups_of_index(m: u64, index: usize) -> Vec<Vec<u64>> {
    let us = units(m);
    let order = us.len();
    if order % index != 0 {
        return vec![];
    }
    let target = order / index;
    let gen_closure = |gens: &[u64]| -> BTreeSet<u64> {
        let mut s: BTreeSet<u64> = [1 % m].into_iter().collect();
        loop {
            let mut added = false;
            let cur: Vec<u64> = s.iter().copied().collect();
            for &x in &cur {
                for &g in gens {
                    let y = (x * g) % m;
                    if s.insert(y) {
                        added = true;
                    }
                }
            }
            if !added {
                return s;
            }
        }
    };
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<u64>> = vec![gen_closure(&[m - 1])];
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    while let Some(h) = frontier.pop() {
        let key: Vec<u64> = h.iter().copied().collect();
        if !seen.insert(key.clone()) || h.len() > target {
            continue;
        }
        if h.len() == target {
            found.insert(key);
            continue;
        }
        for &g in &us {
            if !h.contains(&g) {
                let mut gens: Vec<u64> = h.iter().copied().collect();
                gens.push(g);
                let bigger = gen_closure(&gens);
                if target % bigger.len() == 0 {
                    frontier.push(bigger);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Identifies the real root `lambda` of the irreducible `minpoly` as an element of
/// Z[ζ_m] for the smallest conductor m ≤ max_conductor that works.
pub fn identify_real_algebraic(lambda: f64, minpoly: &IntPolynomial, max_conductor: u64) -> Option<CyclotomicNumber> {
    let s = minpoly.degree()?;
    if s == 1 {
        let c = minpoly.coeffs();
        return Some(CyclotomicNumber::from_rational(Rational::new(-c[0].clone(), c[1].clone())));
    }
    let roots = numeric_roots(minpoly);
    let ti = roots
        .iter()
        .position(|z| (z.re - lambda).abs() < 1e-6 && z.im.abs() < 1e-6)?;
    let mut others: Vec<Complex64> = roots.clone();
    others.remove(ti);
    for m in 3..=max_conductor {
        if canonical_conductor(m) != m || (euler_phi(m) as usize / 2) % s != 0 {
            continue;
        }
        let vinv = vandermonde_inverse(m);
        for h in real_subgroups_of_index(m, s) {
            let cosets = coset_reps(m, &h);
            let mut perm: Vec<usize> = (0..others.len()).collect();
            loop {
                if let Some(x) = try_assignment(m, &vinv, &h, &cosets, lambda, &others, &perm, minpoly) {
                    return Some(x);
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    None
}

fn coset_reps(m: u64, h: &[u64]) -> Vec<u64> {
    let mut covered: BTreeSet<u64> = BTreeSet::new();
    let mut reps = Vec::new();
    for u in units(m) {
        if !covered.contains(&u) {
            reps.push(u);
            for &x in h {
                covered.insert((u * x) % m);
            }
        }
    }
    reps
}

#[allow(clippy::too_many_arguments)]
fn try_assignment(
    m: u64,
    vinv: &VandermondeInverse,
    h: &[u64],
    cosets: &[u64],
    lambda: f64,
    others: &[Complex64],
    perm: &[usize],
    minpoly: &IntPolynomial,
) -> Option<CyclotomicNumber> {
    // value of σ_j(α) for each unit j
    let mut w = DVector::<Complex64>::zeros(vinv.units.len());
    for (ci, &rep) in cosets.iter().enumerate() {
        let val = if ci == 0 { Complex64::new(lambda, 0.0) } else { others[perm[ci - 1]] };
        for &x in h {
            let j = (rep * x) % m;
            let idx = vinv.units.binary_search(&j).ok()?;
            w[idx] = val;
        }
    }
    let c = &vinv.inv * w;
    let mut coeffs = Vec::with_capacity(c.len());
    for z in c.iter() {
        if z.im.abs() > 1e-6 || (z.re - z.re.round()).abs() > 1e-6 {
            return None;
        }
        coeffs.push(Rational::from_integer(BigInt::from(z.re.round() as i64)));
    }
    let x = CyclotomicNumber::from_field_coeffs(m, coeffs).ok()?;
    (x.minimal_polynomial() == *minpoly && (x.to_f64() - lambda).abs() < 1e-8).then_some(x)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        let p = integer_charpoly(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(p, IntPolynomial::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn identify_golden_and_sqrt3() {
        let phi = identify_real_algebraic(1.618033988749895, &IntPolynomial::from_i64(&[-1, -1, 1]), 120).unwrap();
        assert_eq!(phi, CyclotomicNumber::golden_ratio());
        let s3 = identify_real_algebraic(3f64.sqrt(), &IntPolynomial::from_i64(&[-3, 0, 1]), 120).unwrap();
        assert_eq!(s3, CyclotomicNumber::sqrt3());
    }

    #[test]
    fn fibonacci_ring() {
        let mut t = vec![vec![vec![0u32; 2]; 2]; 2];
        t[0][0][0] = 1;
        t[0][1][1] = 1;
        t[1][0][1] = 1;
        t[1][1][0] = 1;
        t[1][1][1] = 1;
        let fib = FusionRing::new(t, vec![0, 1]).unwrap();
        let d = fp_dimensions(&fib).unwrap();
        assert_eq!(d[1], CyclotomicNumber::golden_ratio());
    }
}
