use std::collections::HashMap;
use std::fmt;

use super::GroupError;

/// Permutation of {0..degree−1}; images[i] is the image of i. Products act left to right:
/// (p * q)(i) = q(p(i)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || seen[x as usize] {
                return Err(GroupError::NotAPermutation);
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation with 1-based points, e.g. "(1,2,3)(4,5)" or "()".
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self, String> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let s = s.trim();
        let mut rest = s;
        let mut touched = vec![false; degree];
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(format!("expected '(' in {s:?}"));
            }
            let close = rest.find(')').ok_or_else(|| format!("unclosed cycle in {s:?}"))?;
            let body = rest[1..close].trim();
            rest = rest[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let pts: Vec<usize> = body
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad point {t:?} in {s:?}")))
                .collect::<Result<_, _>>()?;
            for &p in &pts {
                if p == 0 || p > degree {
                    return Err(format!("point {p} outside 1..{degree}"));
                }
                if touched[p - 1] {
                    return Err(format!("point {p} repeated in {s:?}"));
                }
                touched[p - 1] = true;
            }
            for i in 0..pts.len() {
                images[pts[i] - 1] = (pts[(i + 1) % pts.len()] - 1) as u16;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn compose(&self, q: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| q.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for i in 0..n {
            if seen[i] || self.images[i] as usize == i {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut j = i;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", j + 1)?;
                first = false;
                j = self.images[j] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Breadth-first closure of the generators; the identity is element 0.
pub(crate) fn closure(degree: usize, gens: &[Permutation], limit: usize) -> Result<Vec<Permutation>, GroupError> {
    let id = Permutation::identity(degree);
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(id, 0);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = elems[i].compose(g);
            if !index.contains_key(&h) {
                if elems.len() >= limit {
                    return Err(GroupError::TooLarge(limit));
                }
                index.insert(h.clone(), elems.len());
                elems.push(h);
            }
        }
        i += 1;
    }
    Ok(elems)
}
