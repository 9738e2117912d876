use num_bigint::BigInt;

use super::zcyclic::CyclicTable;
use super::{FiniteGroup, GroupError, Permutation};
use crate::exact_algebra::{is_prime, mod_inv, mod_pow, primitive_root, CyclotomicNumber, Rational};
use crate::fusion_ring::FusionRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub rep_index: usize,
    pub size: usize,
    pub element_order: usize,
}

/// Irreducible characters (rows) on conjugacy classes (columns), degrees ascending,
/// trivial character first.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group_order: usize,
    pub classes: Vec<ConjugacyClass>,
    pub chars: Vec<Vec<CyclotomicNumber>>,
    pub degrees: Vec<u64>,
    /// class of the inverses of the elements of each class
    pub inverse_class: Vec<usize>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Σ_C |C| χ_i(C) conj(χ_j(C)) for every pair, compared with δ_ij |G|.
    pub fn row_orthogonality_holds(&self) -> bool {
        let k = self.len();
        if let Some(z) = CyclicTable::new(self) {
            return (0..k).all(|i| {
                (0..k).all(|j| {
                    let mut acc = z.zero();
                    for c in 0..k {
                        z.add_product(&mut acc, &z.values[i][c], &z.conj(&z.values[j][c]), self.classes[c].size as i64);
                    }
                    if i == j {
                        acc[0] -= self.group_order as i128;
                    }
                    z.is_zero(&acc)
                })
            });
        }
        let order = CyclotomicNumber::from_integer(self.group_order as i64);
        (0..k).all(|i| {
            (0..k).all(|j| {
                let s: CyclotomicNumber = (0..k)
                    .map(|c| {
                        &(&self.chars[i][c] * &self.chars[j][c].conj())
                            * &CyclotomicNumber::from_integer(self.classes[c].size as i64)
                    })
                    .sum();
                if i == j {
                    s == order
                } else {
                    s.is_zero()
                }
            })
        })
    }

    /// Σ_χ χ(C) conj(χ(D)) = δ_CD |G|/|C|.
    pub fn column_orthogonality_holds(&self) -> bool {
        let k = self.len();
        if let Some(z) = CyclicTable::new(self) {
            return (0..k).all(|c| {
                (0..k).all(|d| {
                    let mut acc = z.zero();
                    for i in 0..k {
                        z.add_product(&mut acc, &z.values[i][c], &z.conj(&z.values[i][d]), 1);
                    }
                    if c == d {
                        acc[0] -= (self.group_order / self.classes[c].size) as i128;
                    }
                    z.is_zero(&acc)
                })
            });
        }
        (0..k).all(|c| {
            (0..k).all(|d| {
                let s: CyclotomicNumber = (0..k).map(|i| &self.chars[i][c] * &self.chars[i][d].conj()).sum();
                if c == d {
                    s == CyclotomicNumber::from_integer((self.group_order / self.classes[c].size) as i64)
                } else {
                    s.is_zero()
                }
            })
        })
    }
}

fn dixon_prime(order: usize, exponent: usize) -> u64 {
    let lower = (2.0 * (order as f64).sqrt()).ceil() as u64 + 1;
    let e = exponent as u64;
    let mut p = e + 1;
    while p <= lower || !is_prime(p) {
        p += e;
    }
    p
}

/// Nullspace over F_p of a dense matrix (rows × cols), as a list of basis vectors.
fn nullspace_mod_p(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = mod_inv(m[r][c], p).expect("nonzero mod prime");
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Exact character table by the Burnside–Dixon method: simultaneous eigenvectors of the class
/// matrices modulo a prime p ≡ 1 (mod exponent), lifted to cyclotomic integers through the
/// eigenvalue multiplicities of each element.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    let n = g.order();
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let mut class_of = vec![0usize; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let inverse_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    let e = g.exponent();
    let p = dixon_prime(n, e);

    // a[i][j][l] = #{x ∈ C_i : x⁻¹ z_l ∈ C_j}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (l, cl) in classes.iter().enumerate() {
        let z = cl[0];
        for x in 0..n {
            a[class_of[x]][class_of[g.mul(g.inv(x), z)]][l] += 1;
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for ai in a.iter().skip(1) {
        if spaces.len() == k {
            break;
        }
        let mut next = Vec::new();
        for w in spaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            let mut found = 0;
            for lambda in 0..p {
                // columns of (A_i − λ) · W
                let mut m = vec![vec![0u64; w.len()]; k];
                for (t, v) in w.iter().enumerate() {
                    for j in 0..k {
                        let mut s = (p - lambda % p) * v[j] % p;
                        for l in 0..k {
                            s = (s + ai[j][l] % p * v[l]) % p;
                        }
                        m[j][t] = s;
                    }
                }
                let ns = nullspace_mod_p(m, w.len(), p);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|j| w.iter().zip(c).fold(0, |acc, (v, &ct)| (acc + v[j] * ct) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == w.len() {
                    break;
                }
            }
            if found != w.len() {
                return Err(GroupError::Character("class matrix not diagonalizable mod p".into()));
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|w| w.len() != 1) {
        return Err(GroupError::Character("class matrices do not separate characters".into()));
    }

    let zeta = mod_pow(primitive_root(p), (p - 1) / e as u64, p);
    let mut rows: Vec<(u64, Vec<CyclotomicNumber>)> = Vec::with_capacity(k);
    for w in &spaces {
        let v = &w[0];
        let v0inv = mod_inv(v[0], p).ok_or_else(|| GroupError::Character("zero identity coordinate".into()))?;
        let omega: Vec<u64> = v.iter().map(|x| x * v0inv % p).collect();
        let mut s = 0;
        for l in 0..k {
            s = (s + omega[l] * omega[inverse_class[l]] % p * mod_inv(sizes[l] % p, p).unwrap()) % p;
        }
        let d2 = (n as u64 % p) * mod_inv(s, p).ok_or_else(|| GroupError::Character("degenerate norm".into()))? % p;
        let d = (1..=(n as f64).sqrt() as u64 + 1)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| GroupError::Character("no degree".into()))?;
        let chi_p: Vec<u64> = (0..k).map(|l| d * omega[l] % p * mod_inv(sizes[l] % p, p).unwrap() % p).collect();
        let mut chi = Vec::with_capacity(k);
        for cl in &classes {
            let r = cl[0];
            let o = g.element_order(r);
            let mut pow_class = Vec::with_capacity(o);
            let mut x = 0;
            for _ in 0..o {
                pow_class.push(class_of[x]);
                x = g.mul(x, r);
            }
            let step = (e / o) as u64;
            let oinv = mod_inv(o as u64 % p, p).unwrap();
            let mut terms = Vec::new();
            for j in 0..o as u64 {
                let mut m = 0;
                for (l, &c) in pow_class.iter().enumerate() {
                    let ex = (e as u64 - (step * j * l as u64) % e as u64) % e as u64;
                    m = (m + chi_p[c] * mod_pow(zeta, ex, p)) % p;
                }
                let m = m * oinv % p;
                if m > d {
                    return Err(GroupError::Character("eigenvalue multiplicity exceeds degree".into()));
                }
                if m > 0 {
                    terms.push((j as i64, Rational::from_integer(BigInt::from(m))));
                }
            }
            chi.push(CyclotomicNumber::from_power_terms(o as u64, &terms));
        }
        rows.push((d, chi));
    }
    rows.sort_by(|(d1, c1), (d2, c2)| {
        d1.cmp(d2).then_with(|| {
            let key = |c: &[CyclotomicNumber]| -> Vec<(i64, i64)> {
                c.iter()
                    .map(|z| {
                        let w = z.to_c64();
                        (-(w.re * 1e6).round() as i64, -(w.im * 1e6).round() as i64)
                    })
                    .collect()
            };
            key(c1).cmp(&key(c2))
        })
    });
    let table = CharacterTable {
        group_order: n,
        classes: classes
            .iter()
            .map(|c| ConjugacyClass {
                representative: g.elements()[c[0]].clone(),
                rep_index: c[0],
                size: c.len(),
                element_order: g.element_order(c[0]),
            })
            .collect(),
        degrees: rows.iter().map(|r| r.0).collect(),
        chars: rows.into_iter().map(|r| r.1).collect(),
        inverse_class,
    };
    if !table.row_orthogonality_holds() {
        return Err(GroupError::Character("row orthogonality fails".into()));
    }
    Ok(table)
}

/// Grothendieck ring of Rep(G): N_ab^c = ⟨χ_a χ_b, χ_c⟩, simples in character-table order.
pub fn rep_fusion_ring(g: &FiniteGroup) -> Result<FusionRing, GroupError> {
    let t = character_table(g)?;
    Ok(rep_ring_from_table(&t))
}

/// Multiplicities are estimated in floating point and then confirmed exactly by
/// Σ_c N_ab^c χ_c = χ_a χ_b; pairs that fail the confirmation are recomputed exactly.
pub(crate) fn rep_ring_from_table(t: &CharacterTable) -> FusionRing {
    let k = t.len();
    let order = CyclotomicNumber::from_integer(t.group_order as i64);
    let weighted: Vec<Vec<CyclotomicNumber>> = t
        .chars
        .iter()
        .map(|row| {
            row.iter()
                .zip(&t.classes)
                .map(|(x, c)| &x.conj() * &CyclotomicNumber::from_integer(c.size as i64))
                .collect()
        })
        .collect();
    let chars_f: Vec<Vec<num_complex::Complex64>> =
        t.chars.iter().map(|row| row.iter().map(|x| x.to_c64()).collect()).collect();
    let weighted_f: Vec<Vec<num_complex::Complex64>> =
        weighted.iter().map(|row| row.iter().map(|x| x.to_c64()).collect()).collect();
    let cyclic = CyclicTable::new(t);
    let mut tensor = vec![vec![vec![0u32; k]; k]; k];
    for a in 0..k {
        for b in a..k {
            let prod_f: Vec<num_complex::Complex64> = (0..k).map(|l| chars_f[a][l] * chars_f[b][l]).collect();
            let guess: Option<Vec<u32>> = (0..k)
                .map(|c| {
                    let z: num_complex::Complex64 = (0..k).map(|l| prod_f[l] * weighted_f[c][l]).sum();
                    let m = z.re / t.group_order as f64;
                    let r = m.round();
                    (r >= 0.0 && (m - r).abs() < 0.25 && z.im.abs() < 0.25 * t.group_order as f64).then_some(r as u32)
                })
                .collect();
            let confirmed = guess.filter(|g| {
                (0..k).all(|l| match &cyclic {
                    Some(z) => {
                        let mut acc = z.zero();
                        z.add_product(&mut acc, &z.values[a][l], &z.values[b][l], -1);
                        for c in (0..k).filter(|&c| g[c] != 0) {
                            z.add_scaled(&mut acc, &z.values[c][l], g[c] as i64);
                        }
                        z.is_zero(&acc)
                    }
                    None => {
                        let s: CyclotomicNumber = (0..k)
                            .filter(|&c| g[c] != 0)
                            .map(|c| &t.chars[c][l] * &CyclotomicNumber::from_integer(g[c] as i64))
                            .sum();
                        s == (&t.chars[a][l] * &t.chars[b][l])
                    }
                })
            });
            let row = confirmed.unwrap_or_else(|| {
                let prod: Vec<CyclotomicNumber> = (0..k).map(|l| &t.chars[a][l] * &t.chars[b][l]).collect();
                (0..k)
                    .map(|c| {
                        let s: CyclotomicNumber = (0..k).map(|l| &prod[l] * &weighted[c][l]).sum();
                        s.div(&order).expect("nonzero order").to_i64().expect("integral multiplicity") as u32
                    })
                    .collect()
            });
            for (c, m) in row.into_iter().enumerate() {
                tensor[a][b][c] = m;
                tensor[b][a][c] = m;
            }
        }
    }
    let dual: Vec<usize> = (0..k)
        .map(|a| {
            let conj: Vec<CyclotomicNumber> = t.chars[a].iter().map(|x| x.conj()).collect();
            t.chars.iter().position(|r| *r == conj).expect("conjugate character is irreducible")
        })
        .collect();
    FusionRing::new(tensor, dual).expect("shape is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::fp_dimensions;
    use crate::groups::named_group;

    #[test]
    fn z2_table() {
        let t = character_table(&named_group("Z2").unwrap()).unwrap();
        assert_eq!(t.chars[1][1], CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn degrees() {
        for (name, want) in [("S3", vec![1, 1, 2]), ("S4", vec![1, 1, 2, 3, 3]), ("A5", vec![1, 3, 3, 4, 5]), ("D14", vec![1, 1, 2, 2, 2])] {
            let t = character_table(&named_group(name).unwrap()).unwrap();
            assert_eq!(t.degrees, want, "{name}");
            assert!(t.column_orthogonality_holds());
        }
    }

    #[test]
    fn rep_rings() {
        let f = rep_fusion_ring(&named_group("Z7:Z3").unwrap()).unwrap();
        assert!(f.is_valid());
        assert_eq!(fp_dimensions(&f).unwrap(), crate::fusion_ring::DimensionVector::from_integers(&[1, 1, 1, 3, 3]));
        let s4 = rep_fusion_ring(&named_group("S4").unwrap()).unwrap();
        assert_eq!(s4.n(3, 3, 2), 1);
    }
}
