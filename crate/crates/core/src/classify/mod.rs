//! Case analysis of rank-5 premodular data, stratified by the rank of the Müger center.
//!
//! Every leaf of the tree is realized by a checked datum, eliminated by a witness that can be
//! re-verified, delegated to a ledgered external fact, or left open.

mod center2;
mod center3;
mod center4;
mod ledger;
mod report;
mod symmetric;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::data::{DataError, DataSet};
use crate::exact_algebra::{AlgebraError, CyclotomicNumber, IntPolynomial, LaurentPoly, RootOfUnity};
use crate::fusion_ring::{fp_dimensions, FusionError, SearchConfig};
use crate::groups::{equivariantization_rank, EquivariantizationPlan, GroupError};
use crate::premodular::{
    muger_center, orthogonality_failures, CenterDescription, Degeneracy, PremodularDatum, PremodularError,
};

pub use crate::exact_algebra::root_of_unity_solutions;
pub use center2::classify_center_rank2;
pub use center3::classify_center_rank3;
pub use center4::{classify_center_rank4, rank4_twist_filter, TwistSurvivor};
pub use ledger::{near_group_braidable, ExternalFactLedger, LedgerEntry};
pub use report::{ClassificationReport, Summary, SummaryEntry, UsedFact};
pub use symmetric::classify_symmetric_rank5;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Premodular(#[from] PremodularError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("divisibility check needs rational integers, got {0}")]
    NotRational(String),
    #[error("{0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub max_order: usize,
    pub node_budget: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { max_order: 60, node_budget: SearchConfig::default().node_budget }
    }
}

impl ClassifyConfig {
    pub(crate) fn search(&self) -> SearchConfig {
        SearchConfig { node_budget: self.node_budget, ..SearchConfig::default() }
    }
}

/// A contradiction that re-verifies under the owning module's operation.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NonIntegral { value: CyclotomicNumber, display: String },
    Divisibility { sub_dim: CyclotomicNumber, total_dim: CyclotomicNumber },
    NoRootOfUnity { polynomial: IntPolynomial, display: String },
    EmptyTwistFilter { group: String, orders: Vec<u64> },
    RankMismatch { plans: Vec<EquivariantizationPlan>, ranks: Vec<usize>, expected: usize },
    StabilizerMultiplicity { row: Vec<u32>, expected: Vec<u32> },
}

impl Witness {
    pub fn non_integral(value: CyclotomicNumber) -> Self {
        Witness::NonIntegral { display: value.pretty(), value }
    }

    pub fn no_root_of_unity(polynomial: IntPolynomial) -> Self {
        Witness::NoRootOfUnity { display: polynomial.display_var("θ"), polynomial }
    }

    pub fn verify(&self) -> bool {
        match self {
            Witness::NonIntegral { value, .. } => !value.is_algebraic_integer(),
            Witness::Divisibility { sub_dim, total_dim } => matches!(divisibility_check(sub_dim, total_dim), Ok(false)),
            Witness::NoRootOfUnity { polynomial, .. } => {
                !polynomial.is_zero() && root_of_unity_solutions(polynomial).is_empty()
            }
            Witness::EmptyTwistFilter { group, orders } => center4::twist_filter_rejects(group, orders),
            Witness::RankMismatch { plans, ranks, expected } => {
                let got: Option<Vec<usize>> = plans.iter().map(|p| equivariantization_rank(p).ok().map(|r| r.rank)).collect();
                got.as_ref() == Some(ranks) && !ranks.contains(expected)
            }
            Witness::StabilizerMultiplicity { row, expected } => {
                *expected == center3::stabilizer_multiplicities().to_vec() && row.get(3..5) != Some(&expected[..])
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NonIntegral { display, .. } => write!(f, "{display} is not an algebraic integer"),
            Witness::Divisibility { sub_dim, total_dim } => write!(f, "{} does not divide {}", sub_dim.pretty(), total_dim.pretty()),
            Witness::NoRootOfUnity { display, .. } => write!(f, "{display} = 0 has no root-of-unity solution"),
            Witness::EmptyTwistFilter { group, orders } => {
                let o: Vec<String> = orders.iter().map(|n| n.to_string()).collect();
                write!(f, "no consistent (d, N) for twist orders {{{}}} over Rep({group})", o.join(","))
            }
            Witness::RankMismatch { ranks, expected, .. } => {
                let r: Vec<String> = ranks.iter().map(|n| n.to_string()).collect();
                write!(f, "equivariantization ranks {{{}}} miss {expected}", r.join(","))
            }
            Witness::StabilizerMultiplicity { row, expected } => {
                let r: Vec<String> = row.iter().map(|n| n.to_string()).collect();
                write!(
                    f,
                    "X3 ⊗ X3 = [{}] but the stabilizer forces (N33^3, N33^4) = ({}, {})",
                    r.join(","),
                    expected[0],
                    expected[1]
                )
            }
        }
    }
}

/// Admissible twist values from the integrality condition on one unknown twist.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaReport {
    pub object: usize,
    pub rhs: String,
    pub bound: i64,
    pub polynomials: Vec<String>,
    pub coefficients: Vec<IntPolynomial>,
    pub degree: Option<usize>,
    pub monic: bool,
    pub admissible: Vec<RootOfUnity>,
    pub admissible_orders: Vec<u64>,
    /// admissible values whose full datum also passes every premodular check
    pub consistent: Vec<RootOfUnity>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizedDatum {
    pub name: String,
    pub class: Degeneracy,
    pub dims: Vec<String>,
    pub twists: Vec<String>,
    pub center: CenterDescription,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_condition: Option<ThetaReport>,
    pub datum: PremodularDatum,
}

impl RealizedDatum {
    /// The datum must pass every check, have the expected Müger center and FP-dimensions.
    pub(crate) fn checked(name: &str, datum: PremodularDatum, center: &[usize]) -> Result<Self, ClassifyError> {
        let problems = realized_problems(&datum, center);
        if !problems.is_empty() {
            return Err(ClassifyError::Inconsistent(format!("{name}: {}", problems.join("; "))));
        }
        Ok(RealizedDatum {
            name: name.to_string(),
            class: crate::premodular::degeneracy_class(&datum),
            dims: datum.dims.as_slice().iter().map(|d| d.pretty()).collect(),
            twists: datum.twists.iter().map(|t| t.to_string()).collect(),
            center: muger_center(&datum),
            theta_condition: None,
            datum,
        })
    }

    pub fn verify(&self) -> Vec<String> {
        realized_problems(&self.datum, &self.center.indices)
    }
}

fn realized_problems(datum: &PremodularDatum, center: &[usize]) -> Vec<String> {
    let mut out: Vec<String> = datum.check().iter().map(|v| v.to_string()).collect();
    if !orthogonality_failures(datum).is_empty() {
        out.push("orthogonality fails".into());
    }
    let c = muger_center(datum);
    if c.indices != center {
        out.push(format!("Müger center {:?}, expected {:?}", c.indices, center));
    }
    match fp_dimensions(&datum.ring) {
        Ok(d) if d == datum.dims => {}
        _ => out.push("FP-dimensions differ from the stated dims".into()),
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Realized { datum: Box<RealizedDatum> },
    Eliminated { witness: Witness },
    ExternalFact {
        key: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        datum: Option<Box<RealizedDatum>>,
    },
    /// Not decided by the computations here.
    Open { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseNode {
    pub label: String,
    pub hypotheses: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
    /// ledger keys this node's reasoning relies on
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Outcome>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CaseNode>,
}

impl CaseNode {
    pub fn new(label: impl Into<String>) -> Self {
        CaseNode { label: label.into(), hypotheses: vec![], findings: vec![], facts: vec![], outcome: None, children: vec![] }
    }

    pub fn hyp(mut self, h: impl Into<String>) -> Self {
        self.hypotheses.push(h.into());
        self
    }

    pub fn finding(mut self, f: impl Into<String>) -> Self {
        self.findings.push(f.into());
        self
    }

    pub fn fact(mut self, key: &str) -> Self {
        self.facts.push(key.to_string());
        self
    }

    pub fn child(mut self, c: CaseNode) -> Self {
        self.children.push(c);
        self
    }

    pub fn outcome(mut self, o: Outcome) -> Self {
        self.outcome = Some(o);
        self
    }

    pub fn realized(self, d: RealizedDatum) -> Self {
        self.outcome(Outcome::Realized { datum: Box::new(d) })
    }

    pub fn eliminated(self, w: Witness) -> Self {
        self.outcome(Outcome::Eliminated { witness: w })
    }

    pub fn external(self, key: &str) -> Self {
        self.outcome(Outcome::ExternalFact { key: key.to_string(), datum: None })
    }

    pub fn open(self, reason: impl Into<String>) -> Self {
        self.outcome(Outcome::Open { reason: reason.into() })
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Leaves with their label paths, depth first.
    pub fn leaves(&self) -> Vec<(Vec<&str>, &CaseNode)> {
        let mut out = Vec::new();
        fn walk<'a>(n: &'a CaseNode, path: &mut Vec<&'a str>, out: &mut Vec<(Vec<&'a str>, &'a CaseNode)>) {
            path.push(&n.label);
            if n.is_leaf() {
                out.push((path.clone(), n));
            }
            for c in &n.children {
                walk(c, path, out);
            }
            path.pop();
        }
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn find(&self, label: &str) -> Option<&CaseNode> {
        if self.label == label {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(label))
    }
}

/// Whether `sub_dim` divides `total_dim`; both must be rational integers.
pub fn divisibility_check(sub_dim: &CyclotomicNumber, total_dim: &CyclotomicNumber) -> Result<bool, ClassifyError> {
    let a = sub_dim.to_integer().ok_or_else(|| ClassifyError::NotRational(sub_dim.pretty()))?;
    let b = total_dim.to_integer().ok_or_else(|| ClassifyError::NotRational(total_dim.pretty()))?;
    if a == 0.into() {
        return Ok(b == 0.into());
    }
    Ok(b % a == 0.into())
}

/// Whether a relation c·m·(θ_a − θ_b) = 0, m a monomial and c ≠ 0, which forces θ_a = θ_b.
pub fn forces_equal(rel: &LaurentPoly, a: usize, b: usize) -> bool {
    let terms: Vec<(&Vec<i64>, &CyclotomicNumber)> = rel.terms().collect();
    if terms.len() != 2 || a == b {
        return false;
    }
    let (e1, c1) = terms[0];
    let (e2, c2) = terms[1];
    if !(c1 + c2).is_zero() {
        return false;
    }
    let diff: Vec<i64> = e1.iter().zip(e2).map(|(x, y)| x - y).collect();
    let shape = |i: usize| -> i64 {
        if i == a {
            1
        } else if i == b {
            -1
        } else {
            0
        }
    };
    let plus = (0..diff.len()).all(|i| diff[i] == shape(i));
    let minus = (0..diff.len()).all(|i| diff[i] == -shape(i));
    plus || minus
}

/// Runs every branch and assembles the report.
pub fn classify_rank5(data: &DataSet, cfg: &ClassifyConfig) -> Result<ClassificationReport, ClassifyError> {
    let branches = vec![
        classify_symmetric_rank5(data, cfg)?,
        classify_center_rank4(data, cfg)?,
        classify_center_rank3(data, cfg)?,
        classify_center_rank2(data, cfg)?,
        classify_modular(data)?,
    ];
    ClassificationReport::assemble(branches)
}

/// The modular branch, bundled as data and delegated to the rank-5 modular classification.
pub fn classify_modular(data: &DataSet) -> Result<CaseNode, ClassifyError> {
    let mut node = CaseNode::new("modular (trivial Müger center)")
        .hyp("Müger center is Vec")
        .finding(format!("{} bundled modular data, each checked", data.modular.len()));
    for nd in &data.modular {
        let d = RealizedDatum::checked(&nd.label, nd.datum.clone(), &[0])?;
        if d.class != Degeneracy::Modular {
            return Err(ClassifyError::Inconsistent(format!("{} is not modular", nd.label)));
        }
        node = node.child(CaseNode::new(nd.label.clone()).hyp(format!("bundled datum {}", nd.file)).outcome(
            Outcome::ExternalFact { key: "BNRW2".into(), datum: Some(Box::new(d)) },
        ));
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::TwistSymbol;

    #[test]
    fn full_report() {
        let data = DataSet::bundled().unwrap();
        let r = classify_rank5(&data, &ClassifyConfig::default()).unwrap();
        println!("{}", r.render_text());
        assert!(r.verify().is_empty(), "{:?}", r.verify());
    }

    #[test]
    fn divisibility() {
        let c = CyclotomicNumber::from_integer;
        assert_eq!(divisibility_check(&c(10), &c(19)).unwrap(), false);
        assert_eq!(divisibility_check(&c(6), &c(8)).unwrap(), false);
        assert_eq!(divisibility_check(&c(2), &c(14)).unwrap(), true);
        assert!(divisibility_check(&CyclotomicNumber::sqrt5(), &c(5)).is_err());
    }

    #[test]
    fn equal_twist_relation() {
        let t = |v| TwistSymbol::Unknown(v);
        let a = LaurentPoly::twist_pow(&t(0), 1, 2).sub(&LaurentPoly::twist_pow(&t(1), 1, 2));
        let m = LaurentPoly::twist_pow(&t(0), -2, 2).scale(&CyclotomicNumber::from_integer(3));
        assert!(forces_equal(&a.mul(&m), 0, 1));
        assert!(!forces_equal(&a.add(&m), 0, 1));
    }

    #[test]
    fn witnesses_reverify() {
        let w = Witness::non_integral(&(&CyclotomicNumber::one() + &CyclotomicNumber::sqrt5()) * &CyclotomicNumber::from_ratio(1, 4));
        assert!(w.verify());
        assert!(!Witness::non_integral(CyclotomicNumber::golden_ratio()).verify());
        assert!(Witness::no_root_of_unity(IntPolynomial::from_i64(&[1, 5, 1])).verify());
        assert!(!Witness::no_root_of_unity(IntPolynomial::from_i64(&[-1, 0, 1])).verify());
    }
}
