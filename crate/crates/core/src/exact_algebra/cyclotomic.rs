use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::numtheory::{canonical_conductor, distinct_primes, euler_phi, factorize, lcm, units};
use super::polynomial::IntPolynomial;
use super::root_of_unity::RootOfUnity;
use super::AlgebraError;

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Power-basis data for Q(ζ_n): the reduction of ζ_n^k modulo Φ_n for every 0 ≤ k < n.
pub struct CyclotomicField {
    n: u64,
    phi: usize,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn get(n: u64) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&n) {
            return f.clone();
        }
        let f = Arc::new(CyclotomicField::build(n));
        cache.lock().unwrap().insert(n, f.clone());
        f
    }

    fn build(n: u64) -> Self {
        let phi = euler_phi(n) as usize;
        let cyc: Vec<i64> = IntPolynomial::cyclotomic(n)
            .coeffs()
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
            .collect();
        let mut powers = Vec::with_capacity(n as usize);
        let mut v = vec![0i64; phi];
        v[0] = 1;
        powers.push(v.clone());
        for _ in 1..n {
            let top = v[phi - 1];
            for i in (1..phi).rev() {
                v[i] = v[i - 1];
            }
            v[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    v[i] -= top * cyc[i];
                }
            }
            powers.push(v.clone());
        }
        CyclotomicField { n, phi, powers }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.phi]
    }

    /// Adds c·ζ^k into acc.
    pub fn add_power(&self, acc: &mut [Rational], k: u64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let row = &self.powers[(k % self.n) as usize];
        for (a, &r) in acc.iter_mut().zip(row) {
            if r != 0 {
                *a += c * Rational::from_integer(BigInt::from(r));
            }
        }
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.n as usize;
        let mut buckets = vec![Rational::zero(); n];
        let mut used = vec![false; n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = (i + j) % n;
                buckets[t] += x * y;
                used[t] = true;
            }
        }
        let mut out = self.zero();
        for t in 0..n {
            if used[t] {
                self.add_power(&mut out, t as u64, &buckets[t]);
            }
        }
        out
    }

    /// σ_j : ζ ↦ ζ^j
    pub fn galois(&self, a: &[Rational], j: u64) -> Vec<Rational> {
        let mut out = self.zero();
        for (k, c) in a.iter().enumerate() {
            self.add_power(&mut out, (k as u64 * j) % self.n, c);
        }
        out
    }

    pub fn unit(&self, k: u64) -> Vec<Rational> {
        let mut out = self.zero();
        self.add_power(&mut out, k, &Rational::one());
        out
    }
}

/// Left inverse data for the embedding Q(ζ_m) → Q(ζ_n).
struct Descent {
    pivots: Vec<usize>,
    inv: Vec<Vec<Rational>>,
}

fn descent(n: u64, m: u64) -> Arc<Descent> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Descent>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&(n, m)) {
        return d.clone();
    }
    let fe = CyclotomicField::get(n);
    let pm = euler_phi(m) as usize;
    // rows: images of ζ_m^k, k < φ(m)
    let rows: Vec<Vec<Rational>> = (0..pm as u64).map(|k| fe.unit(k * (n / m))).collect();
    // choose pivot columns by elimination on the transpose
    let mut work = rows.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..fe.phi {
        if r == pm {
            break;
        }
        if let Some(p) = (r..pm).find(|&i| !work[i][col].is_zero()) {
            work.swap(r, p);
            let pv = work[r][col].clone();
            for i in 0..pm {
                if i != r && !work[i][col].is_zero() {
                    let f = &work[i][col] / &pv;
                    for c in 0..fe.phi {
                        let d = &f * &work[r][c];
                        work[i][c] -= d;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    assert_eq!(pivots.len(), pm);
    // square matrix A[k][i] = rows[k][pivots[i]]; need inverse so that y = v_P · A^{-1}
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| pivots.iter().map(|&p| row[p].clone()).collect())
        .collect();
    let inv = invert(&a).expect("embedding is injective");
    let d = Arc::new(Descent { pivots, inv });
    cache.lock().unwrap().insert((n, m), d.clone());
    d
}

/// Gauss-Jordan inverse of a square rational matrix.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let pv = m[col][col].clone();
        for c in 0..2 * n {
            m[col][c] = &m[col][c] / &pv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..2 * n {
                    let d = &f * &m[col][c];
                    m[i][c] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Exact element of a cyclotomic field, stored in the power basis of its minimal
/// cyclotomic field Q(ζ_n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        CyclotomicNumber { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Element of Q(ζ_n) given raw power-basis coordinates (length φ(n)); normalized.
    pub fn from_field_coeffs(n: u64, coeffs: Vec<Rational>) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::BadConductor(0));
        }
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(AlgebraError::CoefficientLength { conductor: n, expected: phi, got: coeffs.len() });
        }
        Ok(Self::normalize(n, coeffs))
    }

    /// Σ c·ζ_n^k over the given (k, c) terms.
    pub fn from_power_terms(n: u64, terms: &[(i64, Rational)]) -> Self {
        let f = CyclotomicField::get(n);
        let mut v = f.zero();
        for (k, c) in terms {
            f.add_power(&mut v, k.rem_euclid(n as i64) as u64, c);
        }
        Self::normalize(n, v)
    }

    pub fn root_of_unity(r: &RootOfUnity) -> Self {
        if r.n() <= 2 {
            return Self::from_integer(if r.is_one() { 1 } else { -1 });
        }
        Self::from_power_terms(r.n(), &[(r.k() as i64, Rational::one())])
    }

    pub fn zeta(n: u64) -> Self {
        Self::root_of_unity(&RootOfUnity::new(1, n))
    }

    /// Positive square root of a positive integer, via quadratic Gauss sums.
    pub fn sqrt_int(n: u64) -> Self {
        assert!(n > 0, "sqrt_int needs a positive integer");
        let mut out = Self::one();
        for (p, e) in factorize(n) {
            let sq = Self::from_integer(p.pow(e / 2) as i64);
            out = &out * &sq;
            if e % 2 == 1 {
                out = &out * &sqrt_prime(p);
            }
        }
        out
    }

    pub fn sqrt5() -> Self {
        Self::sqrt_int(5)
    }

    pub fn sqrt3() -> Self {
        Self::sqrt_int(3)
    }

    pub fn sqrt2() -> Self {
        Self::sqrt_int(2)
    }

    /// (1+√5)/2
    pub fn golden_ratio() -> Self {
        &(&Self::one() + &Self::sqrt5()) * &Self::from_ratio(1, 2)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|z| z.to_i64())
    }

    /// Coordinates in the power basis of Q(ζ_l); the conductor must divide l.
    pub fn lift(&self, l: u64) -> Vec<Rational> {
        assert!(l % self.conductor == 0, "conductor {} does not divide {l}", self.conductor);
        let f = CyclotomicField::get(l);
        let mut v = f.zero();
        let step = l / self.conductor;
        for (k, c) in self.coeffs.iter().enumerate() {
            f.add_power(&mut v, k as u64 * step, c);
        }
        v
    }

    /// Canonical form of a raw element of Q(ζ_n).
    pub fn normalize(n: u64, v: Vec<Rational>) -> Self {
        if v.iter().skip(1).all(|c| c.is_zero()) {
            return Self::from_rational(v.into_iter().next().unwrap_or_default());
        }
        let mut n = n;
        let mut v = v;
        if n % 4 == 2 {
            // Q(ζ_n) = Q(ζ_{n/2}) but the power bases differ; re-express through ζ_n = -ζ_{n/2}^{(n/2+1)/2}
            let m = n / 2;
            let f = CyclotomicField::get(m);
            let mut w = f.zero();
            let e = (m + 1) / 2;
            for (k, c) in v.iter().enumerate() {
                let exp = (k as u64 * e) % m;
                if k % 2 == 1 {
                    f.add_power(&mut w, exp, &-c.clone());
                } else {
                    f.add_power(&mut w, exp, c);
                }
            }
            n = m;
            v = w;
        }
        'outer: loop {
            for p in distinct_primes(n) {
                let m = canonical_conductor(n / p);
                if let Some(w) = try_descend(n, m, &v) {
                    if m == 1 {
                        return Self::from_rational(w[0].clone());
                    }
                    n = m;
                    v = w;
                    continue 'outer;
                }
            }
            break;
        }
        if n == 1 {
            return Self::from_rational(v[0].clone());
        }
        CyclotomicNumber { conductor: n, coeffs: v }
    }

    fn binop(&self, o: &Self, f: impl Fn(&CyclotomicField, &[Rational], &[Rational]) -> Vec<Rational>) -> Self {
        let l = lcm(self.conductor, o.conductor);
        let fl = CyclotomicField::get(l);
        let a = if l == self.conductor { self.coeffs.clone() } else { self.lift(l) };
        let b = if l == o.conductor { o.coeffs.clone() } else { o.lift(l) };
        Self::normalize(l, f(&fl, &a, &b))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.is_rational() && o.is_rational() {
            return Self::from_rational(&self.coeffs[0] + &o.coeffs[0]);
        }
        self.binop(o, |_, a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        if self.is_rational() && o.is_rational() {
            return Self::from_rational(&self.coeffs[0] - &o.coeffs[0]);
        }
        self.binop(o, |_, a, b| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_rational() && o.is_rational() {
            return Self::from_rational(&self.coeffs[0] * &o.coeffs[0]);
        }
        if o.is_rational() {
            return self.scale(&o.coeffs[0]);
        }
        if self.is_rational() {
            return o.scale(&self.coeffs[0]);
        }
        self.binop(o, |f, a, b| f.mul(a, b))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn galois(&self, j: u64) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let f = CyclotomicField::get(self.conductor);
        Self::normalize(self.conductor, f.galois(&self.coeffs, j % self.conductor))
    }

    /// Complex conjugation σ₋₁.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Images under σ_j for every unit j mod the conductor, in ascending j.
    pub fn galois_conjugates(&self) -> Vec<Self> {
        units(self.conductor).into_iter().map(|j| self.galois(j)).collect()
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let n = self.conductor;
        if n == 1 {
            return self.coeffs[0].clone();
        }
        let f = CyclotomicField::get(n);
        let mut acc = f.unit(0);
        for j in units(n) {
            acc = f.mul(&acc, &f.galois(&self.coeffs, j));
        }
        acc[0].clone()
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.conductor;
        if n == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let f = CyclotomicField::get(n);
        let mut acc = f.unit(0);
        for j in units(n).into_iter().skip(1) {
            acc = f.mul(&acc, &f.galois(&self.coeffs, j));
        }
        let nrm = f.mul(&acc, &self.coeffs)[0].clone();
        let q = nrm.recip();
        Ok(Self::normalize(n, acc.into_iter().map(|c| c * &q).collect()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Monic minimal polynomial over Q, scaled to a primitive integer polynomial
    /// with positive leading coefficient.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        let roots = self.distinct_conjugates();
        let n = self.conductor;
        let f = CyclotomicField::get(n);
        // coefficients of Π (x - b), lowest degree first, as raw field elements
        let mut poly: Vec<Vec<Rational>> = vec![f.unit(0)];
        for b in &roots {
            let mut next = vec![f.zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                for (t, x) in next[i + 1].iter_mut().zip(c) {
                    *t += x;
                }
                let prod = f.mul(c, b);
                for (t, x) in next[i].iter_mut().zip(prod) {
                    *t -= x;
                }
            }
            poly = next;
        }
        let rational: Vec<Rational> = poly
            .into_iter()
            .map(|c| {
                debug_assert!(c.iter().skip(1).all(|x| x.is_zero()));
                c[0].clone()
            })
            .collect();
        IntPolynomial::from_rational_primitive(&rational)
    }

    fn distinct_conjugates(&self) -> Vec<Vec<Rational>> {
        let n = self.conductor;
        let f = CyclotomicField::get(n);
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        for j in units(n) {
            let g = if n == 1 { self.coeffs.clone() } else { f.galois(&self.coeffs, j) };
            if !seen.contains(&g) {
                seen.push(g);
            }
        }
        seen
    }

    pub fn degree(&self) -> usize {
        self.distinct_conjugates().len()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        if let Some(q) = self.to_rational() {
            return q.is_integer();
        }
        self.minimal_polynomial().is_monic()
    }

    pub fn is_rational_integer(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_integer())
    }

    pub fn to_c64(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), a)
            })
            .sum()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }

    /// Compares real parts numerically; exact when both are rational.
    pub fn cmp_real(&self, o: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.to_rational(), o.to_rational()) {
            return a.cmp(&b);
        }
        if self == o {
            return Ordering::Equal;
        }
        self.to_f64().partial_cmp(&o.to_f64()).unwrap_or(Ordering::Equal)
    }

    /// Human-readable form: rationals as p/q, real quadratic irrationals as (a+b√D)/c,
    /// anything else as a ζ-expansion.
    pub fn pretty(&self) -> String {
        if let Some(q) = self.to_rational() {
            return q.to_string();
        }
        let mp = self.minimal_polynomial();
        if mp.degree() == Some(2) && self.is_real() {
            let c = mp.coeffs();
            let (a, b, cc) = (&c[2], &c[1], &c[0]);
            let disc: BigInt = b * b - BigInt::from(4) * a * cc;
            if let Some(s) = quadratic_form(a, b, &disc, self.to_f64()) {
                return s;
            }
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
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
            let mono = match k {
                0 => String::new(),
                1 => format!("ζ{}", self.conductor),
                _ => format!("ζ{}^{}", self.conductor, k),
            };
            if k == 0 || !a.is_one() {
                s.push_str(&a.to_string());
                if k != 0 {
                    s.push('·');
                }
            }
            s.push_str(&mono);
        }
        s
    }
}

fn sqrt_prime(p: u64) -> CyclotomicNumber {
    if p == 2 {
        // ζ8 + ζ8⁻¹
        return CyclotomicNumber::from_power_terms(8, &[(1, Rational::one()), (7, Rational::one())]);
    }
    let terms: Vec<(i64, Rational)> = (1..p)
        .map(|a| {
            let leg = super::numtheory::mod_pow(a, (p - 1) / 2, p);
            (a as i64, rat(if leg == 1 { 1 } else { -1 }))
        })
        .collect();
    let g = CyclotomicNumber::from_power_terms(p, &terms);
    if p % 4 == 1 {
        g
    } else {
        // g = i√p
        &g * &CyclotomicNumber::root_of_unity(&RootOfUnity::new(3, 4))
    }
}

/// (−b ± √disc)/(2a) written with the square part of disc pulled out.
fn quadratic_form(a: &BigInt, b: &BigInt, disc: &BigInt, value: f64) -> Option<String> {
    let d = disc.to_u64()?;
    let mut sq = 1u64;
    let mut rest = 1u64;
    for (p, e) in factorize(d) {
        sq *= p.pow(e / 2);
        rest *= p.pow(e % 2);
    }
    let two_a = BigInt::from(2) * a;
    let center = Rational::new(-b.clone(), two_a.clone());
    let coef = Rational::new(BigInt::from(sq), two_a);
    let sign = if value >= center.to_f64()? { 1 } else { -1 };
    let coef = coef * rat(sign);
    let surd = if coef.abs().is_one() {
        format!("√{rest}")
    } else if coef.denom().is_one() {
        format!("{}√{rest}", coef.numer().abs())
    } else if coef.numer().abs().is_one() {
        format!("√{rest}/{}", coef.denom())
    } else {
        format!("{}√{rest}/{}", coef.numer().abs(), coef.denom())
    };
    let neg = coef.is_negative();
    Some(if center.is_zero() {
        if neg { format!("-{surd}") } else { surd }
    } else {
        format!("{}{}{}", center, if neg { "-" } else { "+" }, surd)
    })
}

fn try_descend(n: u64, m: u64, v: &[Rational]) -> Option<Vec<Rational>> {
    let d = descent(n, m);
    let pm = d.pivots.len();
    let vp: Vec<&Rational> = d.pivots.iter().map(|&p| &v[p]).collect();
    let mut y = vec![Rational::zero(); pm];
    for (i, yi) in y.iter_mut().enumerate() {
        for (k, x) in vp.iter().enumerate() {
            if !x.is_zero() && !d.inv[k][i].is_zero() {
                *yi += *x * &d.inv[k][i];
            }
        }
    }
    let f = CyclotomicField::get(n);
    let mut back = f.zero();
    for (k, c) in y.iter().enumerate() {
        f.add_power(&mut back, k as u64 * (n / m), c);
    }
    (back == v).then_some(y)
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, o: &CyclotomicNumber) -> CyclotomicNumber {
                self.$imp(o)
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, o: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$imp(&o)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.scale(&rat(-1))
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl std::iter::Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CyclotomicNumber::zero(), |a, b| a + b)
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        CyclotomicNumber::from_integer(n)
    }
}

impl From<&RootOfUnity> for CyclotomicNumber {
    fn from(r: &RootOfUnity) -> Self {
        CyclotomicNumber::root_of_unity(r)
    }
}

/// Accumulates a sum of many terms in one fixed field before normalizing once.
pub struct FieldAccumulator {
    field: Arc<CyclotomicField>,
    acc: Vec<Rational>,
}

impl FieldAccumulator {
    pub fn new(l: u64) -> Self {
        let field = CyclotomicField::get(l);
        let acc = field.zero();
        FieldAccumulator { field, acc }
    }

    pub fn add_scaled_power(&mut self, k: u64, c: &Rational) {
        self.field.add_power(&mut self.acc, k, c);
    }

    pub fn add_raw(&mut self, v: &[Rational]) {
        for (a, x) in self.acc.iter_mut().zip(v) {
            *a += x;
        }
    }

    pub fn finish(self) -> CyclotomicNumber {
        CyclotomicNumber::normalize(self.field.n(), self.acc)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct RawCyclotomic {
    conductor: u64,
    coeffs: Vec<String>,
}

impl serde::Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawCyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawCyclotomic::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<Rational>().map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        CyclotomicNumber::from_field_coeffs(raw.conductor, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let x = &CyclotomicNumber::golden_ratio() + &CyclotomicNumber::zeta(3);
        let s = serde_json::to_string(&x).unwrap();
        let y: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string(&y).unwrap(), s);
        assert_eq!(serde_json::to_string(&CyclotomicNumber::from_ratio(3, 4)).unwrap(), r#"{"conductor":1,"coeffs":["3/4"]}"#);
    }

    fn c(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n)
    }

    #[test]
    fn basic_identities() {
        let s5 = CyclotomicNumber::sqrt5();
        assert_eq!(s5.conductor(), 5);
        assert_eq!(&s5 * &s5, c(5));
        assert_eq!(&(&c(1) + &s5) * &(&c(1) - &s5), c(-4));
        let z3 = CyclotomicNumber::zeta(3);
        assert_eq!(&z3 + &(&z3 * &z3), c(-1));
        let phi = CyclotomicNumber::golden_ratio();
        assert_eq!(&phi * &phi, &phi + &c(1));
        assert_eq!(CyclotomicNumber::sqrt3().conductor(), 12);
        assert_eq!(CyclotomicNumber::sqrt2().conductor(), 8);
        let s3 = CyclotomicNumber::sqrt3();
        assert_eq!(&s3 * &s3, c(3));
        let s10 = CyclotomicNumber::sqrt_int(10);
        assert_eq!(&s10 * &s10, c(10));
        assert!((s10.to_f64() - 10f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn conductor_two_mod_four() {
        // ζ10 = -ζ5^3
        let z10 = CyclotomicNumber::zeta(10);
        assert_eq!(z10.conductor(), 5);
        assert_eq!(z10, -CyclotomicNumber::zeta(5).pow(3).unwrap());
        let z6 = CyclotomicNumber::zeta(6);
        assert_eq!(&z6 * &z6, CyclotomicNumber::zeta(3));
    }

    #[test]
    fn canonical_paths() {
        let z5 = CyclotomicNumber::zeta(5);
        let a = &z5 + &z5.pow(4).unwrap();
        let b = &(&c(-1) + &CyclotomicNumber::sqrt5()) * &CyclotomicNumber::from_ratio(1, 2);
        assert_eq!(a, b);
        // i lies in Q(ζ12) but normalizes to conductor 4
        let i = CyclotomicNumber::zeta(12).pow(3).unwrap();
        assert_eq!(i.conductor(), 4);
    }

    #[test]
    fn min_polys() {
        let phi = CyclotomicNumber::golden_ratio();
        assert_eq!(phi.minimal_polynomial(), IntPolynomial::from_i64(&[-1, -1, 1]));
        assert_eq!(c(3).minimal_polynomial(), IntPolynomial::from_i64(&[-3, 1]));
        assert_eq!(
            CyclotomicNumber::zeta(5).minimal_polynomial(),
            IntPolynomial::from_i64(&[1, 1, 1, 1, 1])
        );
        let q = &(&c(1) + &CyclotomicNumber::sqrt5()) * &CyclotomicNumber::from_ratio(1, 4);
        assert!(!q.is_algebraic_integer());
        let t = c(2).div(&CyclotomicNumber::sqrt3()).unwrap();
        assert!(!t.is_algebraic_integer());
        assert!(phi.is_algebraic_integer());
    }

    #[test]
    fn inverse_and_conj() {
        let z7 = CyclotomicNumber::zeta(7);
        let x = &z7 + &c(2);
        assert_eq!(&x * &x.inv().unwrap(), c(1));
        assert_eq!(CyclotomicNumber::zeta(4).conj(), -CyclotomicNumber::zeta(4));
        assert!(c(0).inv().is_err());
    }

    #[test]
    fn pretty_forms() {
        assert_eq!((&c(1) + &CyclotomicNumber::sqrt5()).pretty(), "1+√5");
        assert_eq!((&c(2) * &CyclotomicNumber::sqrt3()).pretty(), "2√3");
        assert_eq!(CyclotomicNumber::golden_ratio().pretty(), "1/2+√5/2");
        assert_eq!(CyclotomicNumber::from_ratio(-3, 4).pretty(), "-3/4");
    }
}
