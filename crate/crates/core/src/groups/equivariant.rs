use serde::Serialize;

use super::GroupError;
use crate::exact_algebra::CyclotomicNumber;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleClass {
    pub label: String,
    pub degrees: Vec<u64>,
}

/// Curated Schur multiplier and projective irrep degrees per second-cohomology class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurFact {
    pub group: String,
    pub order: u64,
    pub multiplier: String,
    pub classes: Vec<CocycleClass>,
}

fn linear(label: &str, degrees: &[u64]) -> CocycleClass {
    CocycleClass { label: label.to_string(), degrees: degrees.to_vec() }
}

pub fn schur_lookup(label: &str) -> Result<SchurFact, GroupError> {
    let (order, multiplier, classes) = match label {
        "1" => (1, "1", vec![linear("trivial", &[1])]),
        "Z2" => (2, "1", vec![linear("trivial", &[1, 1])]),
        "Z3" => (3, "1", vec![linear("trivial", &[1, 1, 1])]),
        "Z4" => (4, "1", vec![linear("trivial", &[1, 1, 1, 1])]),
        "Z2xZ2" => (4, "Z2", vec![linear("trivial", &[1, 1, 1, 1]), linear("nontrivial", &[2])]),
        "S3" => (6, "1", vec![linear("trivial", &[1, 1, 2])]),
        _ => return Err(GroupError::NoSchurData(label.to_string())),
    };
    Ok(SchurFact { group: label.to_string(), order, multiplier: multiplier.to_string(), classes })
}

/// `count` orbits of `size` simples of dimension `base_dim`, each with stabilizer `stabilizer`
/// acting through the cocycle class `cocycle` (an index into its Schur data).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitSpec {
    pub count: usize,
    pub size: u64,
    pub stabilizer: String,
    pub cocycle: usize,
    pub base_dim: CyclotomicNumber,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivariantizationPlan {
    pub group: String,
    pub group_order: u64,
    pub orbits: Vec<OrbitSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivariantizationResult {
    pub rank: usize,
    pub dims: Vec<CyclotomicNumber>,
    /// dimensions (input or output) that are not algebraic integers
    pub non_integral: Vec<CyclotomicNumber>,
}

/// Simples of the equivariantization are pairs (orbit, projective irrep of the stabilizer);
/// each has dimension orbit size × base dimension × irrep degree.
pub fn equivariantization_rank(plan: &EquivariantizationPlan) -> Result<EquivariantizationResult, GroupError> {
    let mut dims = Vec::new();
    let mut non_integral = Vec::new();
    for o in &plan.orbits {
        let fact = schur_lookup(&o.stabilizer)?;
        if o.size * fact.order != plan.group_order {
            return Err(GroupError::Character(format!(
                "orbit size {} and stabilizer {} violate orbit-stabilizer for order {}",
                o.size, o.stabilizer, plan.group_order
            )));
        }
        let class = fact
            .classes
            .get(o.cocycle)
            .ok_or_else(|| GroupError::NoSchurData(format!("{} cocycle {}", o.stabilizer, o.cocycle)))?;
        if !o.base_dim.is_algebraic_integer() && !non_integral.contains(&o.base_dim) {
            non_integral.push(o.base_dim.clone());
        }
        for _ in 0..o.count {
            for &deg in &class.degrees {
                let d = &o.base_dim * &CyclotomicNumber::from_integer((o.size * deg) as i64);
                if !d.is_algebraic_integer() && !non_integral.contains(&d) {
                    non_integral.push(d.clone());
                }
                dims.push(d);
            }
        }
    }
    Ok(EquivariantizationResult { rank: dims.len(), dims, non_integral })
}

/// Orbits of x ↦ −x on Z/n for odd n.
pub fn involution_orbit_count(n: u64) -> u64 {
    1 + (n - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(count: usize, size: u64, stab: &str, base: CyclotomicNumber) -> OrbitSpec {
        OrbitSpec { count, size, stabilizer: stab.into(), cocycle: 0, base_dim: base }
    }

    #[test]
    fn schur_table() {
        assert_eq!(schur_lookup("Z2xZ2").unwrap().classes[1].degrees, vec![2]);
        assert_eq!(schur_lookup("S3").unwrap().multiplier, "1");
        assert!(schur_lookup("A4").is_err());
    }

    #[test]
    fn s3_on_pointed_rank_13() {
        let one = CyclotomicNumber::one();
        let trivial = EquivariantizationPlan { group: "S3".into(), group_order: 6, orbits: vec![orbit(13, 1, "S3", one.clone())] };
        assert_eq!(equivariantization_rank(&trivial).unwrap().rank, 39);
        let sign = EquivariantizationPlan {
            group: "S3".into(),
            group_order: 6,
            orbits: vec![orbit(1, 1, "S3", one.clone()), orbit(6, 2, "Z3", one)],
        };
        let r = equivariantization_rank(&sign).unwrap();
        assert_eq!(r.rank, 21);
        let total: CyclotomicNumber = r.dims.iter().map(|d| d * d).sum();
        assert_eq!(total, CyclotomicNumber::from_integer(6 * 13));
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(involution_orbit_count(13), 7);
        assert_eq!(involution_orbit_count(1), 1);
        assert_eq!(involution_orbit_count(5), 3);
    }
}
