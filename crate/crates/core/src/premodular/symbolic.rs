use std::collections::BTreeSet;

use serde::Serialize;

use super::PremodularError;
use crate::exact_algebra::{
    root_of_unity_solutions, CyclotomicNumber, IntPolynomial, LaurentPoly, RootOfUnity, TwistSymbol,
};
use crate::fusion_ring::{global_dimension, DimensionVector, FusionRing};

fn nvars_of(twists: &[TwistSymbol]) -> usize {
    twists
        .iter()
        .filter_map(|t| match t {
            TwistSymbol::Unknown(v) => Some(v + 1),
            TwistSymbol::Known(_) => None,
        })
        .max()
        .unwrap_or(0)
}

/// S-matrix from the balancing equation with some twists left as unknown roots of unity.
#[derive(Clone, Debug)]
pub struct SymbolicS {
    pub nvars: usize,
    pub s: Vec<Vec<LaurentPoly>>,
}

impl SymbolicS {
    pub fn entry(&self, x: usize, y: usize) -> &LaurentPoly {
        &self.s[x][y]
    }

    /// Nonzero differences S[x][y] − S[y][x], x < y.
    pub fn symmetry_relations(&self) -> Vec<((usize, usize), LaurentPoly)> {
        let r = self.s.len();
        let mut out = Vec::new();
        for x in 0..r {
            for y in x + 1..r {
                let d = self.s[x][y].sub(&self.s[y][x]);
                if !d.is_zero() {
                    out.push(((x, y), d));
                }
            }
        }
        out
    }
}

pub fn symbolic_s_matrix(ring: &FusionRing, dims: &DimensionVector, twists: &[TwistSymbol]) -> SymbolicS {
    let r = ring.rank();
    let nv = nvars_of(twists);
    let s = (0..r)
        .map(|x| {
            (0..r)
                .map(|y| {
                    let pre = LaurentPoly::twist_pow(&twists[x], -1, nv).mul(&LaurentPoly::twist_pow(&twists[y], -1, nv));
                    let mut sum = LaurentPoly::zero(nv);
                    for (k, m) in ring.product(ring.dual(x), y) {
                        let c = &dims[k] * &CyclotomicNumber::from_integer(m as i64);
                        sum = sum.add(&LaurentPoly::twist_pow(&twists[k], 1, nv).scale(&c));
                    }
                    pre.mul(&sum)
                })
                .collect()
        })
        .collect();
    SymbolicS { nvars: nv, s }
}

/// Σ_k S[k][x] · conj(S[k][y]) as a Laurent polynomial in the unknown twists.
pub fn symbolic_column_residual(s: &SymbolicS, x: usize, y: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(s.nvars);
    for row in &s.s {
        acc = acc.add(&row[x].mul(&row[y].conj()));
    }
    acc
}

/// One integer value m of the right-hand side and the θ solving RHS(θ) = m.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaBranch {
    pub m: i64,
    pub polynomial: IntPolynomial,
    pub solutions: Vec<RootOfUnity>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaCondition {
    /// (1/D²) Σ_{b,c} N_{bc}^x d_b d_c (θ_b/θ_c)²
    pub rhs: LaurentPoly,
    /// |RHS| ≤ bound for every choice of roots of unity
    pub bound: i64,
    pub branches: Vec<ThetaBranch>,
    /// value of the right side when no twist is unknown
    pub concrete: Option<CyclotomicNumber>,
}

impl ThetaCondition {
    /// With all twists known: whether the right side is a rational integer.
    pub fn integral(&self) -> Option<bool> {
        self.concrete.as_ref().map(|c| c.is_rational_integer())
    }

    pub fn admissible(&self) -> Vec<RootOfUnity> {
        let set: BTreeSet<RootOfUnity> = self.branches.iter().flat_map(|b| b.solutions.iter().copied()).collect();
        let mut v: Vec<RootOfUnity> = set.into_iter().collect();
        v.sort_by_key(|r| (r.order(), r.k()));
        v
    }

    pub fn admissible_orders(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self.admissible().iter().map(|r| r.order()).collect();
        set.into_iter().collect()
    }

    /// Largest degree among the integer polynomials of the family.
    pub fn degree(&self) -> Option<usize> {
        self.branches.iter().filter_map(|b| b.polynomial.degree()).max()
    }

    pub fn all_monic(&self) -> bool {
        self.branches.iter().all(|b| b.polynomial.is_monic())
    }
}

/// Evaluates (1/D²) Σ_{b,c} N_{bc}^x d_b d_c (θ_b/θ_c)² with at most one unknown twist and
/// returns, for every integer m the right side can take, the polynomial θ^k (RHS − m) ∈ Z[θ]
/// together with its root-of-unity solutions.
pub fn theta_condition_residual(
    ring: &FusionRing,
    dims: &DimensionVector,
    twists: &[TwistSymbol],
    x: usize,
) -> Result<ThetaCondition, PremodularError> {
    let r = ring.rank();
    if x >= r {
        return Err(PremodularError::Index(x));
    }
    if twists.len() != r {
        return Err(PremodularError::TwistLength { expected: r, got: twists.len() });
    }
    let nv = nvars_of(twists);
    if nv > 1 {
        return Err(PremodularError::Theta("at most one unknown twist is supported".into()));
    }
    let d2 = global_dimension(dims);
    let inv_d2 = d2.inv().map_err(|e| PremodularError::Theta(e.to_string()))?;
    let mut rhs = LaurentPoly::zero(nv);
    for b in 0..r {
        for c in 0..r {
            let m = ring.n(b, c, x);
            if m == 0 {
                continue;
            }
            let coef = &(&dims[b] * &dims[c]) * &CyclotomicNumber::from_integer(m as i64);
            let term = LaurentPoly::twist_pow(&twists[b], 2, nv).mul(&LaurentPoly::twist_pow(&twists[c], -2, nv));
            rhs = rhs.add(&term.scale(&coef));
        }
    }
    let rhs = rhs.scale(&inv_d2);
    let bound = (dims[x].to_f64() + 1e-9).floor() as i64;
    if nv == 0 {
        let c = rhs.as_constant().expect("no unknowns");
        return Ok(ThetaCondition { rhs, bound, branches: Vec::new(), concrete: Some(c) });
    }
    let mut branches = Vec::new();
    for m in -bound..=bound {
        let p = rhs.sub(&LaurentPoly::constant(CyclotomicNumber::from_integer(m), nv));
        if p.is_zero() {
            return Err(PremodularError::Theta(format!("right side is identically {m}")));
        }
        let poly = p
            .to_int_polynomial(0)
            .ok_or_else(|| PremodularError::Theta("right side has irrational coefficients".into()))?;
        let solutions = root_of_unity_solutions(&poly);
        branches.push(ThetaBranch { m, polynomial: poly, solutions });
    }
    Ok(ThetaCondition { rhs, bound, branches, concrete: None })
}
