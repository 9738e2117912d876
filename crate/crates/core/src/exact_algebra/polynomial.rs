use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::numtheory::{divisors, euler_phi, gcd, units};
use super::root_of_unity::RootOfUnity;

/// Polynomial with integer coefficients, stored lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Clears denominators of a rational polynomial and returns its primitive part.
    pub fn from_rational_primitive(coeffs: &[BigRational]) -> Self {
        let l = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Self::new(
            coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).cloned().unwrap_or_default()
                    + other.coeffs.get(i).cloned().unwrap_or_default()
            })
            .collect();
        Self::new(c)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Quotient and remainder over Q; returns None unless both are integral.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        if self.coeffs.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); self.coeffs.len() - dd];
        for i in (0..q.len()).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * dc;
            }
            q[i] = qi;
        }
        rem.truncate(dd);
        Some((Self::new(q), Self::new(rem)))
    }

    /// Exact quotient, if d divides self in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// The n-th cyclotomic polynomial.
    pub fn cyclotomic(n: u64) -> Arc<IntPolynomial> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(p) = cache.lock().unwrap().get(&n) {
            return p.clone();
        }
        let mut p = IntPolynomial::x_pow_minus_one(n as usize);
        for d in divisors(n) {
            if d < n {
                p = p
                    .div_exact(&IntPolynomial::cyclotomic(d))
                    .expect("cyclotomic division is exact");
            }
        }
        debug_assert_eq!(p.degree(), Some(euler_phi(n) as usize));
        let p = Arc::new(p);
        cache.lock().unwrap().insert(n, p.clone());
        p
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !a.is_one() {
                s.push_str(&a.to_string());
            }
            s.push_str(&mono);
        }
        s
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        let c: Result<Vec<BigInt>, _> = v.iter().map(|s| s.parse::<BigInt>()).collect();
        c.map(IntPolynomial::new).map_err(|e| e.to_string())
    }
}

/// All roots of unity among the roots of p, via trial division by Φ_n for φ(n) ≤ deg p.
/// Sorted by order, then by exponent.
pub fn root_of_unity_solutions(p: &IntPolynomial) -> Vec<RootOfUnity> {
    assert!(!p.is_zero(), "root_of_unity_solutions needs a nonzero polynomial");
    let deg = p.degree().unwrap() as u64;
    let mut out = Vec::new();
    if deg == 0 {
        return out;
    }
    for n in super::numtheory::roots_of_unity_with_degree_at_most(deg) {
        if p.div_exact(&IntPolynomial::cyclotomic(n)).is_some() {
            for k in units(n) {
                if n == 1 || gcd(k, n) == 1 {
                    out.push(RootOfUnity::new(k as i64, n));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(*IntPolynomial::cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(*IntPolynomial::cyclotomic(5), IntPolynomial::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(*IntPolynomial::cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        // Φ_105 has a coefficient -2
        assert!(IntPolynomial::cyclotomic(105)
            .coeffs()
            .iter()
            .any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn roots_of_unity() {
        assert!(root_of_unity_solutions(&IntPolynomial::from_i64(&[1, 5, 1])).is_empty());
        let r = root_of_unity_solutions(&IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(r, vec![RootOfUnity::new(0, 1), RootOfUnity::new(1, 2)]);
        let r = root_of_unity_solutions(&IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(r, vec![RootOfUnity::new(1, 3), RootOfUnity::new(2, 3)]);
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(IntPolynomial::from_i64(&[1, 5, 1]).display_var("θ"), "θ^2 + 5θ + 1");
    }
}
