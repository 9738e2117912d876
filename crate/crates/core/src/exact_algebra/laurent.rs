use std::collections::BTreeMap;
use std::fmt;

use super::cyclotomic::{CyclotomicNumber, Rational};
use super::polynomial::IntPolynomial;
use super::root_of_unity::RootOfUnity;

/// A twist that is either known or one of a few symbolic unknown roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistSymbol {
    Known(RootOfUnity),
    Unknown(usize),
}

/// Laurent polynomial in unknown roots of unity θ₀, θ₁, … with cyclotomic coefficients.
/// Since every unknown has modulus one, complex conjugation sends θ to θ⁻¹.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, CyclotomicNumber>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: CyclotomicNumber, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var_pow(v: usize, e: i64, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = e;
        let mut p = Self::zero(nvars);
        p.add_term(exps, CyclotomicNumber::one());
        p
    }

    /// θ^e for a twist symbol.
    pub fn twist_pow(t: &TwistSymbol, e: i64, nvars: usize) -> Self {
        match t {
            TwistSymbol::Known(r) => Self::constant(CyclotomicNumber::root_of_unity(&r.pow(e)), nvars),
            TwistSymbol::Unknown(v) => Self::var_pow(*v, e, nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn add_term(&mut self, exps: Vec<i64>, c: CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(CyclotomicNumber::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&CyclotomicNumber::from_integer(-1)))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn conj(&self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.iter().map(|x| -x).collect(), c.conj());
        }
        r
    }

    pub fn as_constant(&self) -> Option<CyclotomicNumber> {
        if self.terms.is_empty() {
            return Some(CyclotomicNumber::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Variables that occur with a nonzero exponent.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|e| e[v] != 0))
            .collect()
    }

    /// Substitutes concrete roots of unity for some variables.
    pub fn substitute(&self, values: &[Option<RootOfUnity>]) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = e.clone();
            for (v, val) in values.iter().enumerate() {
                if let Some(z) = val {
                    coef = &coef * &CyclotomicNumber::root_of_unity(&z.pow(e[v]));
                    exps[v] = 0;
                }
            }
            r.add_term(exps, coef);
        }
        r
    }

    /// For a polynomial in the single variable v: (lowest exponent, coefficients from
    /// that exponent upward).
    pub fn univariate(&self, v: usize) -> Option<(i64, Vec<CyclotomicNumber>)> {
        if self.vars_used().iter().any(|&w| w != v) {
            return None;
        }
        if self.terms.is_empty() {
            return Some((0, vec![]));
        }
        let lo = self.terms.keys().map(|e| e[v]).min().unwrap();
        let hi = self.terms.keys().map(|e| e[v]).max().unwrap();
        let mut c = vec![CyclotomicNumber::zero(); (hi - lo + 1) as usize];
        for (e, x) in &self.terms {
            c[(e[v] - lo) as usize] = x.clone();
        }
        Some((lo, c))
    }

    /// θ^(-lowest) times this polynomial, cleared to a primitive integer polynomial in θ.
    /// None when the coefficients are not all rational or other variables occur.
    pub fn to_int_polynomial(&self, v: usize) -> Option<IntPolynomial> {
        let (_, c) = self.univariate(v)?;
        let q: Option<Vec<Rational>> = c.iter().map(|x| x.to_rational()).collect();
        Some(IntPolynomial::from_rational_primitive(&q?))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(v, &x)| if x == 1 { format!("t{v}") } else { format!("t{v}^{x}") })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})·{}", mono.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conj_inverts_unknowns() {
        let t = LaurentPoly::var_pow(0, 1, 1);
        let p = t.add(&LaurentPoly::constant(CyclotomicNumber::zeta(4), 1));
        let q = p.mul(&p.conj());
        // (t + i)(t⁻¹ - i) = 2 - i t + i t⁻¹
        let (lo, c) = q.univariate(0).unwrap();
        assert_eq!(lo, -1);
        assert_eq!(c[1], CyclotomicNumber::from_integer(2));
    }

    #[test]
    fn int_polynomial() {
        let t = LaurentPoly::var_pow(0, 1, 1);
        let p = t.mul(&t).scale(&CyclotomicNumber::from_integer(9))
            .add(&t.scale(&CyclotomicNumber::from_integer(45)))
            .add(&LaurentPoly::constant(CyclotomicNumber::from_integer(9), 1));
        assert_eq!(p.to_int_polynomial(0).unwrap(), IntPolynomial::from_i64(&[1, 5, 1]));
    }
}
