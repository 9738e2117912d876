//! Premodular data at the level of (N, S, T): the balancing equation, Müger center, degeneracy
//! trichotomy and the arithmetic constraints on twists used by the case analysis.

mod symbolic;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{CyclotomicNumber, RootOfUnity};
use crate::fusion_ring::{fp_dimensions, DimensionVector, FusionError, FusionRing};

pub use symbolic::{
    symbolic_column_residual, symbolic_s_matrix, theta_condition_residual, SymbolicS, ThetaBranch, ThetaCondition,
};

pub type SMatrix = Vec<Vec<CyclotomicNumber>>;

#[derive(Debug, Error)]
pub enum PremodularError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("expected {expected} twists, got {got}")]
    TwistLength { expected: usize, got: usize },
    #[error("S-matrix must be {0}x{0}")]
    SShape(usize),
    #[error("index {0} out of range")]
    Index(usize),
    #[error("theta condition: {0}")]
    Theta(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PremodularDatum {
    pub ring: FusionRing,
    pub dims: DimensionVector,
    pub twists: Vec<RootOfUnity>,
    pub s: SMatrix,
    /// True when S was computed from the balancing equation rather than supplied.
    pub s_synthesized: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DatumViolation {
    TwistOfUnit,
    NotSymmetric { x: usize, y: usize },
    FirstColumn { x: usize },
    DualConjugate { x: usize, y: usize },
    Balancing(BalancingViolation),
    Fusion(String),
    Dimension { a: usize, b: usize },
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumViolation::TwistOfUnit => write!(f, "twist of the unit is not 1"),
            DatumViolation::NotSymmetric { x, y } => write!(f, "S[{x}][{y}] != S[{y}][{x}]"),
            DatumViolation::FirstColumn { x } => write!(f, "S[{x}][0] != d_{x}"),
            DatumViolation::DualConjugate { x, y } => write!(f, "S[{x}*][{y}] is not the conjugate of S[{x}][{y}]"),
            DatumViolation::Balancing(b) => write!(f, "{b}"),
            DatumViolation::Fusion(s) => write!(f, "{s}"),
            DatumViolation::Dimension { a, b } => write!(f, "dimension equation fails at ({a},{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BalancingViolation {
    pub x: usize,
    pub y: usize,
    pub lhs: CyclotomicNumber,
    pub rhs: CyclotomicNumber,
}

impl fmt::Display for BalancingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "balancing fails at ({},{}): S = {} but formula gives {}", self.x, self.y, self.lhs.pretty(), self.rhs.pretty())
    }
}

impl PremodularDatum {
    /// Builds a datum; S is synthesized from the balancing equation when not given.
    pub fn new(
        ring: FusionRing,
        dims: DimensionVector,
        twists: Vec<RootOfUnity>,
        s: Option<SMatrix>,
    ) -> Result<Self, PremodularError> {
        let r = ring.rank();
        if dims.len() != r {
            return Err(FusionError::DimensionLength { expected: r, got: dims.len() }.into());
        }
        if twists.len() != r {
            return Err(PremodularError::TwistLength { expected: r, got: twists.len() });
        }
        let (s, s_synthesized) = match s {
            Some(s) => {
                if s.len() != r || s.iter().any(|row| row.len() != r) {
                    return Err(PremodularError::SShape(r));
                }
                (s, false)
            }
            None => (s_from_balancing(&ring, &dims, &twists), true),
        };
        Ok(PremodularDatum { ring, dims, twists, s, s_synthesized })
    }

    /// Computes FP-dimensions and S from the ring and twists.
    pub fn from_twists(ring: FusionRing, twists: Vec<RootOfUnity>) -> Result<Self, PremodularError> {
        let dims = fp_dimensions(&ring)?;
        Self::new(ring, dims, twists, None)
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn twist(&self, x: usize) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(&self.twists[x])
    }

    pub fn global_dimension(&self) -> CyclotomicNumber {
        crate::fusion_ring::global_dimension(&self.dims)
    }

    /// Every consistency condition on the datum; empty iff it is a valid premodular datum.
    pub fn check(&self) -> Vec<DatumViolation> {
        let r = self.rank();
        let mut v: Vec<DatumViolation> =
            self.ring.validate().into_iter().map(|x| DatumViolation::Fusion(x.to_string())).collect();
        for (a, b) in self.ring.dimension_equation_failures(&self.dims) {
            v.push(DatumViolation::Dimension { a, b });
        }
        if !self.twists[0].is_one() {
            v.push(DatumViolation::TwistOfUnit);
        }
        for x in 0..r {
            if self.s[x][0] != self.dims[x] {
                v.push(DatumViolation::FirstColumn { x });
            }
            for y in 0..r {
                if y > x && self.s[x][y] != self.s[y][x] {
                    v.push(DatumViolation::NotSymmetric { x, y });
                }
                if self.s[self.ring.dual(x)][y] != self.s[x][y].conj() {
                    v.push(DatumViolation::DualConjugate { x, y });
                }
            }
        }
        v.extend(check_balancing(self).into_iter().map(DatumViolation::Balancing));
        v
    }
}

/// S[x][y] = (θ_x θ_y)⁻¹ Σ_k N_{x*,y}^k θ_k d_k.
pub fn s_from_balancing(ring: &FusionRing, dims: &DimensionVector, twists: &[RootOfUnity]) -> SMatrix {
    let r = ring.rank();
    (0..r)
        .map(|x| (0..r).map(|y| balancing_entry(ring, dims, twists, x, y)).collect())
        .collect()
}

fn balancing_entry(ring: &FusionRing, dims: &DimensionVector, twists: &[RootOfUnity], x: usize, y: usize) -> CyclotomicNumber {
    let pre = CyclotomicNumber::root_of_unity(&twists[x].mul(&twists[y]).inv());
    let sum: CyclotomicNumber = ring
        .product(ring.dual(x), y)
        .into_iter()
        .map(|(k, m)| &(&CyclotomicNumber::root_of_unity(&twists[k]) * &dims[k]) * &CyclotomicNumber::from_integer(m as i64))
        .sum();
    &pre * &sum
}

pub fn check_balancing(datum: &PremodularDatum) -> Vec<BalancingViolation> {
    let r = datum.rank();
    let mut out = Vec::new();
    for x in 0..r {
        for y in 0..r {
            let rhs = balancing_entry(&datum.ring, &datum.dims, &datum.twists, x, y);
            if rhs != datum.s[x][y] {
                out.push(BalancingViolation { x, y, lhs: datum.s[x][y].clone(), rhs });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterDescription {
    pub indices: Vec<usize>,
    pub tannakian: bool,
    pub group_label: Option<String>,
}

impl CenterDescription {
    pub fn rank(&self) -> usize {
        self.indices.len()
    }
}

/// Simples that braid trivially with everything: S[x][y] = d_x d_y for all y.
pub fn muger_center(datum: &PremodularDatum) -> CenterDescription {
    let r = datum.rank();
    let indices: Vec<usize> = (0..r)
        .filter(|&x| (0..r).all(|y| datum.s[x][y] == &datum.dims[x] * &datum.dims[y]))
        .collect();
    let tannakian = indices.iter().all(|&x| datum.twists[x].is_one());
    let group_label = if tannakian {
        datum
            .ring
            .restrict(&indices)
            .ok()
            .and_then(|sub| crate::groups::identify_rep_ring(&sub))
    } else {
        None
    };
    CenterDescription { indices, tannakian, group_label }
}

/// Whether a symmetric center spanned by `center` inside `ring` is forced to be Tannakian:
/// every invertible order-2 object of the center fixes some simple of the ambient ring.
/// This always holds when the ambient rank is odd.
pub fn center_forced_tannakian(ring: &FusionRing, center: &[usize]) -> bool {
    center.iter().all(|&g| {
        if g == 0 || !ring.is_invertible(g) || ring.dual(g) != g {
            return true;
        }
        (0..ring.rank()).any(|x| ring.product(g, x) == vec![(x, 1)])
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    Modular,
    Symmetric,
    ProperlyPremodular,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degeneracy::Modular => "modular",
            Degeneracy::Symmetric => "symmetric",
            Degeneracy::ProperlyPremodular => "properly_premodular",
        })
    }
}

pub fn degeneracy_class(datum: &PremodularDatum) -> Degeneracy {
    let c = muger_center(datum).rank();
    if c == datum.rank() {
        Degeneracy::Symmetric
    } else if c == 1 {
        Degeneracy::Modular
    } else {
        Degeneracy::ProperlyPremodular
    }
}

/// When the center has rank r−1, the remaining diagonal entry is S[r−1][r−1] = −dim(center).
pub fn last_entry_value(_rank: usize, center_dim: &CyclotomicNumber) -> CyclotomicNumber {
    -center_dim.clone()
}

/// Σ_k S[k][x] · conj(S[k][y]).
pub fn column_orthogonality_residual(datum: &PremodularDatum, x: usize, y: usize) -> CyclotomicNumber {
    (0..datum.rank()).map(|k| &datum.s[k][x] * &datum.s[k][y].conj()).sum()
}

/// Entries where (S²)[x][y] ≠ dim C · Σ_{w ∈ C′} N_{xy}^w d_w, the orthogonality relation of a
/// premodular S-matrix with Müger center C′.
pub fn orthogonality_failures(datum: &PremodularDatum) -> Vec<(usize, usize)> {
    let r = datum.rank();
    let center = muger_center(datum).indices;
    let dim = datum.global_dimension();
    let mut out = Vec::new();
    for x in 0..r {
        for y in 0..r {
            let lhs: CyclotomicNumber = (0..r).map(|k| &datum.s[x][k] * &datum.s[k][y]).sum();
            let c: CyclotomicNumber = center
                .iter()
                .map(|&w| &datum.dims[w] * &CyclotomicNumber::from_integer(datum.ring.n(x, y, w) as i64))
                .sum();
            if lhs != &dim * &c {
                out.push((x, y));
            }
        }
    }
    out
}

// JSON: fusion ring block plus {"dims", "T", "S"}; dims and S optional
#[derive(Serialize, Deserialize)]
struct RawDatum {
    rank: usize,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<DimensionVector>,
    #[serde(rename = "T")]
    t: Vec<RootOfUnity>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    s: Option<SMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for PremodularDatum {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RawDatum {
            rank: self.rank(),
            dual: self.ring.duals().to_vec(),
            n: self.ring.tensor(),
            dims: Some(self.dims.clone()),
            t: self.twists.clone(),
            s: Some(self.s.clone()),
            label: None,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PremodularDatum {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawDatum::deserialize(de)?;
        if raw.n.len() != raw.rank {
            return Err(D::Error::custom(format!("rank {} but N has {} slices", raw.rank, raw.n.len())));
        }
        let ring = FusionRing::new(raw.n, raw.dual).map_err(D::Error::custom)?;
        let dims = match raw.dims {
            Some(d) => d,
            None => fp_dimensions(&ring).map_err(D::Error::custom)?,
        };
        PremodularDatum::new(ring, dims, raw.t, raw.s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn semion() -> PremodularDatum {
        PremodularDatum::from_twists(FusionRing::cyclic(2), vec![RootOfUnity::one(), RootOfUnity::new(1, 4)]).unwrap()
    }

    #[test]
    fn trivial_twists_give_dd() {
        let f = FusionRing::cyclic(3);
        let d = PremodularDatum::from_twists(f, vec![RootOfUnity::one(); 3]).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(d.s[x][y], &d.dims[x] * &d.dims[y]);
            }
        }
        assert_eq!(degeneracy_class(&d), Degeneracy::Symmetric);
        assert!(d.check().is_empty());
    }

    #[test]
    fn forced_tannakian_needs_a_fixed_simple() {
        assert!(!center_forced_tannakian(&FusionRing::cyclic(2), &[0, 1]));
        // Rep(S3): the sign fixes the 2-dimensional simple
        let mut t = vec![vec![vec![0u32; 3]; 3]; 3];
        for x in 0..3 {
            t[0][x][x] = 1;
            t[x][0][x] = 1;
        }
        t[1][1][0] = 1;
        t[1][2][2] = 1;
        t[2][1][2] = 1;
        t[2][2] = vec![1, 1, 1];
        let s3 = FusionRing::with_inferred_dual(t).unwrap();
        assert!(center_forced_tannakian(&s3, &[0, 1]));
    }

    #[test]
    fn semion_is_modular() {
        let d = semion();
        assert!(d.check().is_empty());
        assert_eq!(muger_center(&d).indices, vec![0]);
        assert_eq!(degeneracy_class(&d), Degeneracy::Modular);
        assert!(column_orthogonality_residual(&d, 0, 1).is_zero());
        assert!(orthogonality_failures(&d).is_empty());
    }

    #[test]
    fn toric_code_s() {
        let tc = FusionRing::pointed(4, |a, b| a ^ b);
        let t = vec![RootOfUnity::one(), RootOfUnity::one(), RootOfUnity::one(), RootOfUnity::minus_one()];
        let d = PremodularDatum::from_twists(tc, t).unwrap();
        let want = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(d.s[x][y], CyclotomicNumber::from_integer(want[x][y]));
            }
        }
        assert_eq!(degeneracy_class(&d), Degeneracy::Modular);
    }

    #[test]
    fn perturbed_s_fails_balancing() {
        let mut d = semion();
        d.twists[1] = RootOfUnity::one();
        assert!(!check_balancing(&d).is_empty());
        let mut wrong = semion();
        wrong.s[1][1] = CyclotomicNumber::from_integer(2);
        assert!(!orthogonality_failures(&wrong).is_empty());
    }

    #[test]
    fn last_entry() {
        assert_eq!(last_entry_value(5, &CyclotomicNumber::from_integer(4)), CyclotomicNumber::from_integer(-4));
    }

    #[test]
    fn json_round_trip_without_s() {
        let j = r#"{"rank":2,"dual":[0,1],"N":[[[1,0],[0,1]],[[0,1],[1,0]]],"T":[{"k":0,"n":1},{"k":1,"n":4}]}"#;
        let d: PremodularDatum = serde_json::from_str(j).unwrap();
        assert!(d.s_synthesized);
        assert_eq!(d, semion());
        let back: PremodularDatum = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back.s, d.s);
        assert!(!back.s_synthesized);
    }
}
