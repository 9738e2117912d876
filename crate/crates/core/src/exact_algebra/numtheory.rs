use num_bigint::BigUint;
use num_integer::Integer;

/// Prime factorization by trial division, as (prime, exponent) pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn distinct_primes(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    factorize(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Units of Z/n in ascending order (for n = 1 the single residue 0).
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&j| gcd(j, n) == 1).collect()
}

/// Q(ζ_n) = Q(ζ_{n/2}) for n ≡ 2 mod 4; this returns the canonical conductor.
pub fn canonical_conductor(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// All n with φ(n) ≤ bound, sorted.
pub fn roots_of_unity_with_degree_at_most(bound: u64) -> Vec<u64> {
    assert!(bound >= 1);
    // φ(n) ≥ sqrt(n/2)
    let limit = 2 * bound * bound + 2;
    (1..=limit).filter(|&n| euler_phi(n) <= bound).collect()
}

pub fn cyclotomic_degree_bound(card_d: u32, quadratic_with_unit_ratio: bool) -> u64 {
    if quadratic_with_unit_ratio {
        1u64 << (card_d + 1)
    } else {
        1u64 << card_d
    }
}

/// a₁ = 1, a_{j+1} = a_j (a_j + 1).
pub fn sylvester_landau_bound(k: u32) -> BigUint {
    assert!(k >= 1);
    let mut a = BigUint::from(1u32);
    for _ in 1..k {
        let next = &a * (&a + 1u32);
        a = next;
    }
    a
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Smallest primitive root modulo a prime p.
pub fn primitive_root(p: u64) -> u64 {
    let fs = distinct_primes(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(10), 4);
        for n in 1..200u64 {
            assert_eq!(euler_phi(n) as usize, units(n).len());
        }
    }

    #[test]
    fn degree_sets() {
        assert_eq!(roots_of_unity_with_degree_at_most(4), vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
        assert_eq!(roots_of_unity_with_degree_at_most(1), vec![1, 2]);
        assert_eq!(roots_of_unity_with_degree_at_most(2), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn bounds() {
        assert_eq!(cyclotomic_degree_bound(1, true), 4);
        assert_eq!(cyclotomic_degree_bound(0, false), 1);
        assert_eq!(cyclotomic_degree_bound(2, false), 4);
        assert_eq!(sylvester_landau_bound(5), BigUint::from(1806u32));
        assert_eq!(sylvester_landau_bound(3), BigUint::from(6u32));
        assert_eq!(sylvester_landau_bound(1), BigUint::from(1u32));
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
