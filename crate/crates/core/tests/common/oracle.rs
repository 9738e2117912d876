//! Brute force over every bounded tensor, for comparison with the pruned search.

use std::collections::BTreeSet;

use premod::fusion_ring::{enumerate_fusion_rings_with, DimensionVector, FusionConstraints, FusionRing, SearchConfig};

pub type Key = (Vec<u32>, Vec<usize>);

fn perms_fixing_zero(r: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], &mut (1..r).collect(), &mut out);
    out
}

/// Lexicographically least relabeling that keeps dimensions in place.
fn canonical(n: &[Vec<Vec<u32>>], dual: &[usize], dims: &[u32]) -> Key {
    let r = dims.len();
    perms_fixing_zero(r)
        .into_iter()
        .filter(|p| (0..r).all(|i| dims[p[i]] == dims[i]))
        .map(|p| {
            let mut inv = vec![0; r];
            for i in 0..r {
                inv[p[i]] = i;
            }
            let mut flat = Vec::with_capacity(r * r * r);
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        flat.push(n[p[a]][p[b]][p[c]]);
                    }
                }
            }
            let d: Vec<usize> = (0..r).map(|a| inv[dual[p[a]]]).collect();
            (flat, d)
        })
        .min()
        .unwrap()
}

fn involutions(r: usize, dims: &[u32]) -> Vec<Vec<usize>> {
    perms_fixing_zero(r)
        .into_iter()
        .filter(|p| (0..r).all(|i| p[p[i]] == i && dims[p[i]] == dims[i]))
        .collect()
}

fn is_fusion_ring(n: &[Vec<Vec<u32>>], dual: &[usize], dims: &[u32]) -> bool {
    let r = dims.len();
    for a in 0..r {
        for b in 0..r {
            if (0..r).map(|c| n[a][b][c] * dims[c]).sum::<u32>() != dims[a] * dims[b] {
                return false;
            }
            if n[a][b][0] != u32::from(b == dual[a]) {
                return false;
            }
            for c in 0..r {
                if n[a][b][c] != n[dual[a]][c][b] || n[a][b][c] != n[dual[b]][dual[a]][dual[c]] {
                    return false;
                }
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for e in 0..r {
                    let l: u32 = (0..r).map(|x| n[a][b][x] * n[x][c][e]).sum();
                    let rr: u32 = (0..r).map(|x| n[b][c][x] * n[a][x][e]).sum();
                    if l != rr {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn brute_force(dims: &[u32]) -> BTreeSet<Key> {
    let r = dims.len();
    let mut free = Vec::new();
    for a in 1..r {
        for b in a..r {
            for c in 0..r {
                free.push((a, b, c, dims[a] * dims[b] / dims[c]));
            }
        }
    }
    let mut found = BTreeSet::new();
    for dual in involutions(r, dims) {
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut n = vec![vec![vec![0u32; r]; r]; r];
            for x in 0..r {
                n[0][x][x] = 1;
                n[x][0][x] = 1;
            }
            for (i, &(a, b, c, _)) in free.iter().enumerate() {
                n[a][b][c] = vals[i];
                n[b][a][c] = vals[i];
            }
            if is_fusion_ring(&n, &dual, dims) {
                found.insert(canonical(&n, &dual, dims));
            }
            // odometer step
            let Some(i) = (0..vals.len()).find(|&i| vals[i] < free[i].3) else { break };
            vals[i] += 1;
            vals[..i].iter_mut().for_each(|v| *v = 0);
        }
    }
    found
}

pub fn searched(dims: &[u32], prune: bool) -> BTreeSet<Key> {
    let r = dims.len();
    let dv = DimensionVector::from_integers(&dims.iter().map(|&d| d as i64).collect::<Vec<_>>());
    let cfg = SearchConfig { prune, ..SearchConfig::default() };
    let (rings, _) = enumerate_fusion_rings_with(r, &dv, &FusionConstraints::new(), &cfg).unwrap();
    rings.iter().map(|f: &FusionRing| canonical(&f.tensor(), f.duals(), dims)).collect()
}

pub fn all_dims() -> Vec<Vec<u32>> {
    let mut out = vec![vec![1]];
    for r in 2..=3u32 {
        for mask in 0..(1u32 << (r - 1)) {
            let mut d = vec![1];
            d.extend((0..r - 1).map(|i| 1 + ((mask >> i) & 1)));
            out.push(d);
        }
    }
    out
}
