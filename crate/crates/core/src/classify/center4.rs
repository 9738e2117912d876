use std::collections::BTreeSet;

use num_integer::Roots;
use num_traits::ToPrimitive;

use super::{CaseNode, ClassifyConfig, ClassifyError, Witness};
use crate::data::DataSet;
use crate::exact_algebra::{roots_of_unity_with_degree_at_most, units, CyclotomicNumber, RootOfUnity};
use crate::fusion_ring::{fp_dimensions, DimensionVector, FusionRing};
use crate::groups::{
    census, equivariantization_rank, identify_group, named_group, rep_fusion_ring, schur_lookup, EquivariantizationPlan,
    OrbitSpec,
};
use crate::premodular::{last_entry_value, muger_center, orthogonality_failures, PremodularDatum};

/// A twist of the non-central simple X for which some (d, N) is consistent.
#[derive(Clone, Debug)]
pub struct TwistSurvivor {
    pub theta: RootOfUnity,
    pub d: CyclotomicNumber,
    /// multiplicity of X in X ⊗ X
    pub n: u32,
    pub datum: PremodularDatum,
}

/// Center ring ⊕ X with g ⊗ X = d_g X and X ⊗ X = Σ d_g g + n X.
fn extension_ring(center: &FusionRing, center_dims: &[i64], n: u32) -> Result<FusionRing, ClassifyError> {
    let r = center.rank();
    let mut t = vec![vec![vec![0u32; r + 1]; r + 1]; r + 1];
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                t[a][b][c] = center.n(a, b, c);
            }
        }
        t[a][r][r] = center_dims[a] as u32;
        t[r][a][r] = center_dims[a] as u32;
        t[r][r][a] = center_dims[a] as u32;
    }
    t[r][r][r] = n;
    let mut dual = center.duals().to_vec();
    dual.push(r);
    Ok(FusionRing::new(t, dual)?)
}

/// Twists of order n with φ(n) ≤ 4 that admit d, N with d² = |G| + N d and S[X][X] = −|G|,
/// with every premodular check passing on the resulting datum.
pub fn rank4_twist_filter(center: &FusionRing) -> Result<Vec<TwistSurvivor>, ClassifyError> {
    let dims = fp_dimensions(center)?;
    let cd: Vec<i64> = dims
        .as_slice()
        .iter()
        .map(|d| d.to_i64().ok_or_else(|| ClassifyError::Inconsistent("center dims must be integers".into())))
        .collect::<Result<_, _>>()?;
    let g: i64 = cd.iter().map(|d| d * d).sum();
    let gc = CyclotomicNumber::from_integer(g);
    let r = center.rank();
    let mut out = Vec::new();
    for n in roots_of_unity_with_degree_at_most(4) {
        for k in units(n) {
            let theta = RootOfUnity::new(k as i64, n);
            let t = CyclotomicNumber::root_of_unity(&theta);
            // θ² S_XX = |G| + N d θ with S_XX = −|G| gives N d = −|G|(θ + θ⁻¹)
            let c = -(&gc * &(&t + &t.inv()?));
            if c.to_f64() < -1e-12 || (&gc + &c).to_f64() <= 0.0 {
                continue;
            }
            let q = (&c * &c).div(&(&gc + &c))?;
            let Some(q) = q.to_integer().and_then(|q| q.to_u64()) else { continue };
            let nn = q.sqrt();
            if nn * nn != q {
                continue;
            }
            let d = if nn == 0 { CyclotomicNumber::sqrt_int(g as u64) } else { c.div(&CyclotomicNumber::from_integer(nn as i64))? };
            let ring = extension_ring(center, &cd, nn as u32)?;
            let mut full = dims.as_slice().to_vec();
            full.push(d.clone());
            let fp = fp_dimensions(&ring)?;
            if fp.as_slice() != full.as_slice() {
                continue;
            }
            let mut twists = vec![RootOfUnity::one(); r];
            twists.push(theta);
            let datum = PremodularDatum::new(ring, DimensionVector::new(full), twists, None)?;
            let consistent = datum.check().is_empty()
                && orthogonality_failures(&datum).is_empty()
                && muger_center(&datum).indices == (0..r).collect::<Vec<_>>()
                && datum.s[r][r] == last_entry_value(r + 1, &gc);
            if consistent {
                out.push(TwistSurvivor { theta, d, n: nn as u32, datum });
            }
        }
    }
    Ok(out)
}

/// True when none of `orders` survives the filter over Rep(group).
pub(crate) fn twist_filter_rejects(group: &str, orders: &[u64]) -> bool {
    let Ok(g) = named_group(group) else { return false };
    let Ok(ring) = rep_fusion_ring(&g) else { return false };
    let Ok(s) = rank4_twist_filter(&ring) else { return false };
    let candidates = roots_of_unity_with_degree_at_most(4);
    orders.iter().all(|n| candidates.contains(n) && !s.iter().any(|t| t.theta.order() == *n))
}

/// Müger center of rank 4: Rep(G) for |Irr G| = 4, plus one non-central simple X.
pub fn classify_center_rank4(data: &DataSet, cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let groups = census(&data.catalog, 4, cfg.max_order)?;
    let mut node = CaseNode::new("Müger center of rank 4")
        .hyp("C′ = Rep(G) Tannakian (odd rank), one non-central simple X, self-dual")
        .fact("Brug")
        .finding(format!("groups with 4 classes: {}", groups.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(", ")));
    for e in groups {
        let g = named_group(&e.name)?;
        let center = rep_fusion_ring(&g)?;
        let order = g.order() as u64;
        let survivors = rank4_twist_filter(&center)?;
        let candidates = roots_of_unity_with_degree_at_most(4);
        let kept: BTreeSet<u64> = survivors.iter().map(|s| s.theta.order()).collect();
        let rejected: Vec<u64> = candidates.iter().copied().filter(|n| !kept.contains(n)).collect();
        let mut gnode = CaseNode::new(format!("center Rep({})", e.name))
            .hyp(format!("center twists 1, S[X][X] = −{order}"))
            .finding(format!(
                "surviving twist orders {{{}}}",
                kept.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
            ));
        if !rejected.is_empty() {
            gnode = gnode.child(
                CaseNode::new(format!("Rep({}): remaining twist orders", e.name))
                    .hyp("θ_X of order n with φ(n) ≤ 4")
                    .eliminated(Witness::EmptyTwistFilter { group: e.name.clone(), orders: rejected }),
            );
        }
        let subgroups: Vec<Vec<usize>> = g.subgroups();
        for s in &survivors {
            let mut snode = CaseNode::new(format!("Rep({}): θ_X = {}, d = {}", e.name, s.theta, s.d.pretty()))
                .hyp(format!("X ⊗ X = Σ d_g g + {} X", s.n))
                .finding("de-equivariantization: X lies over one orbit whose stabilizer H has a unique projective irrep at its cocycle, so |H| is a square");
            let mut seen = BTreeSet::new();
            for h in &subgroups {
                let hsize = h.len() as u64;
                if hsize.sqrt() * hsize.sqrt() != hsize {
                    continue;
                }
                let hg = g.subgroup(h)?;
                let hname = identify_group(&hg, &data.catalog)
                    .ok_or_else(|| ClassifyError::Inconsistent(format!("unidentified subgroup of order {hsize}")))?;
                if !seen.insert(hname.clone()) {
                    continue;
                }
                let schur = schur_lookup(&hname)?;
                for (ci, class) in schur.classes.iter().enumerate() {
                    if class.degrees.len() != 1 {
                        continue;
                    }
                    let delta = class.degrees[0];
                    let orbit = order / hsize;
                    let dy = s.d.div(&CyclotomicNumber::from_integer((orbit * delta) as i64))?;
                    let plan = EquivariantizationPlan {
                        group: e.name.clone(),
                        group_order: order,
                        orbits: vec![OrbitSpec { count: 1, size: orbit, stabilizer: hname.clone(), cocycle: ci, base_dim: dy.clone() }],
                    };
                    let res = equivariantization_rank(&plan)?;
                    if res.dims != vec![s.d.clone()] {
                        return Err(ClassifyError::Inconsistent("equivariantization bookkeeping".into()));
                    }
                    let label = format!("Rep({}): θ_X = {}, stabilizer {} ({} cocycle)", e.name, s.theta, hname, class.label);
                    let leaf = CaseNode::new(label)
                        .hyp(format!("orbit of size {orbit}, projective irrep of degree {delta}"))
                        .finding(format!("de-equivariantized dimension d/({orbit}·{delta}) = {}", dy.pretty()));
                    let leaf = if !res.non_integral.is_empty() {
                        leaf.eliminated(Witness::non_integral(dy))
                    } else if dy.is_one() {
                        leaf.finding(format!("C_G is pointed of rank {}, the orbit simples having twist {}", orbit + 1, s.theta)).open(
                            "a pointed modular de-equivariantization with integral dimensions; the existence of the required braided G-action is not decided here",
                        )
                    } else if orbit == 1 && e.name == "Z2xZ2" {
                        leaf.finding(format!("C_G is modular of rank 2 with dims (1, {}): Fibonacci type", dy.pretty()))
                            .fact("RSW1")
                            .external("GalindoCommunication")
                    } else {
                        leaf.open("integral de-equivariantization not covered by the ledger")
                    };
                    snode = snode.child(leaf);
                }
            }
            gnode = gnode.child(snode);
        }
        node = node.child(gnode);
    }
    Ok(node)
}
