use std::fmt;

use serde::{Deserialize, Serialize};

use super::numtheory::{gcd, lcm};

/// exp(2πi k/n) in lowest terms: 0 ≤ k < n, gcd(k, n) = 1, and n is the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    k: u64,
    n: u64,
}

#[derive(Deserialize)]
struct RawRoot {
    k: i64,
    n: u64,
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRoot::deserialize(d)?;
        if raw.n == 0 {
            return Err(serde::de::Error::custom("root of unity with n = 0"));
        }
        Ok(RootOfUnity::new(raw.k, raw.n))
    }
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { k: 0, n: 1 };

    pub fn new(k: i64, n: u64) -> Self {
        assert!(n >= 1, "root of unity needs n >= 1");
        let k = k.rem_euclid(n as i64) as u64;
        let g = gcd(k, n);
        if k == 0 {
            return RootOfUnity { k: 0, n: 1 };
        }
        RootOfUnity { k: k / g, n: n / g }
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, n: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { k: 1, n: 2 }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn is_one(&self) -> bool {
        self.n == 1
    }

    pub fn mul(&self, o: &Self) -> Self {
        let l = lcm(self.n, o.n);
        let k = self.k * (l / self.n) + o.k * (l / o.n);
        RootOfUnity::new((k % l) as i64, l)
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(-(self.k as i64), self.n)
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = (self.k as i128 * e as i128).rem_euclid(self.n as i128);
        RootOfUnity::new(k as i64, self.n)
    }

    /// Exponent of this root when written as a power of ζ_m (n must divide m).
    pub fn exponent_in(&self, m: u64) -> u64 {
        assert!(m % self.n == 0, "order {} does not divide {}", self.n, m);
        self.k * (m / self.n)
    }

    pub fn angle(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.k as f64 / self.n as f64
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, 1) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, 4) => write!(f, "i"),
            (3, 4) => write!(f, "-i"),
            (1, n) => write!(f, "ζ{n}"),
            (k, n) => write!(f, "ζ{n}^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce() {
        assert_eq!(RootOfUnity::new(2, 4), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(-1, 3), RootOfUnity::new(2, 3));
        assert_eq!(RootOfUnity::new(10, 10), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(1, 5).mul(&RootOfUnity::new(1, 2)).order(), 10);
    }

    #[test]
    fn json() {
        let r = RootOfUnity::new(3, 8);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"k":3,"n":8}"#);
        assert_eq!(serde_json::from_str::<RootOfUnity>(&s).unwrap(), r);
    }
}
