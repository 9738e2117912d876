use std::collections::BTreeSet;

use super::center3::orthogonality_polynomial;
use super::{forces_equal, near_group_braidable, CaseNode, ClassifyConfig, ClassifyError, RealizedDatum, ThetaReport, Witness};
use crate::data::DataSet;
use crate::exact_algebra::{root_of_unity_solutions, CyclotomicNumber, LaurentPoly, RootOfUnity, TwistSymbol};
use crate::fusion_ring::{
    enumerate_fusion_rings_with, global_dimension, rings_isomorphic, row_solutions, DimensionVector, FusionConstraints,
    FusionRing,
};
use crate::groups::{
    census, equivariantization_rank, identify_rep_ring, named_group, rep_fusion_ring, EquivariantizationPlan, OrbitSpec,
};
use crate::premodular::{muger_center, orthogonality_failures, symbolic_s_matrix, theta_condition_residual, PremodularDatum};

const K1: TwistSymbol = TwistSymbol::Known(RootOfUnity::ONE);

fn orbit(count: usize, size: u64, stabilizer: &str, base: CyclotomicNumber) -> OrbitSpec {
    OrbitSpec { count, size, stabilizer: stabilizer.into(), cocycle: 0, base_dim: base }
}

fn z2_plan(orbits: Vec<OrbitSpec>) -> EquivariantizationPlan {
    EquivariantizationPlan { group: "Z2".into(), group_order: 2, orbits }
}

fn show(v: &[CyclotomicNumber]) -> String {
    v.iter().map(|d| d.pretty()).collect::<Vec<_>>().join(",")
}

fn row_string(row: &[u32]) -> String {
    format!("[{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn int(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_integer(n)
}

/// Dimension of the span of {0, 1, 2} when X2 ⊗ X2 = `row` keeps it closed.
fn small_subring_dim(dims: &DimensionVector, row: &[u32]) -> Option<CyclotomicNumber> {
    let support: BTreeSet<usize> = (0..row.len()).filter(|&c| row[c] > 0).chain([0, 1, 2]).collect();
    if support != BTreeSet::from([0, 1, 2]) {
        return None;
    }
    Some(support.iter().map(|&a| &dims[a] * &dims[a]).sum())
}

fn divisibility_leaf(label: String, row: &[u32], sub: CyclotomicNumber, total: CyclotomicNumber) -> CaseNode {
    CaseNode::new(label)
        .hyp(format!("X2 ⊗ X2 = {}", row_string(row)))
        .fact("ENO1")
        .finding(format!("X2 generates a fusion subring on {{0,1,2}} of dimension {}", sub.pretty()))
        .eliminated(Witness::Divisibility { sub_dim: sub, total_dim: total })
}

/// Pointed de-equivariantization: near-group rings with X2 ⊗ X2 = invertibles.
fn pointed(cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let plan = z2_plan(vec![orbit(2, 1, "Z2", int(1)), orbit(1, 2, "1", int(1))]);
    let res = equivariantization_rank(&plan)?;
    let dims = DimensionVector::from_integers(&[1, 1, 2, 1, 1]);
    let total = global_dimension(&dims);
    let rows = row_solutions(&dims, 2, 2, &[(0, 1), (1, 1)]);
    let mut node = CaseNode::new("center Rep(Z2), pointed de-equivariantization")
        .hyp("de-equivariantization pointed of rank 4")
        .finding(format!("equivariantization dims ({}), relabeled (1,1,2,1,1)", show(&res.dims)))
        .finding("X2 is the only simple of dimension 2, so X2* = X2, and N[2][2][1] = N[1][2][2] = 1")
        .finding(format!(
            "X2 ⊗ X2 rows: admissible {}; pruned {}",
            rows.admissible.iter().map(|r| row_string(r)).collect::<Vec<_>>().join(" "),
            rows.pruned.iter().map(|r| row_string(r)).collect::<Vec<_>>().join(" ")
        ));
    for row in &rows.admissible {
        if let Some(sub) = small_subring_dim(&dims, row) {
            node = node.child(divisibility_leaf(
                format!("center Rep(Z2), pointed, X2 ⊗ X2 = {}", row_string(row)),
                row,
                sub,
                total.clone(),
            ));
            continue;
        }
        let terms: Vec<(usize, u32)> = (0..5).filter(|&c| row[c] > 0).map(|c| (c, row[c])).collect();
        let cons = FusionConstraints::new()
            .product(1, 1, &[(0, 1)])
            .product(1, 2, &[(2, 1)])
            .product(1, 3, &[(4, 1)])
            .product(2, 2, &terms);
        let (rings, _) = enumerate_fusion_rings_with(5, &dims, &cons, &cfg.search())?;
        let mut rnode = CaseNode::new(format!("center Rep(Z2), pointed, X2 ⊗ X2 = {}", row_string(row)))
            .hyp("near-group: invertibles {0,1,3,4}, X2 ⊗ X2 = their sum")
            .finding(format!("{} fusion ring(s)", rings.len()));
        for ring in rings {
            rnode = rnode.child(near_group_ring(ring, &dims)?);
        }
        node = node.child(rnode);
    }
    Ok(node)
}

fn near_group_ring(ring: FusionRing, dims: &DimensionVector) -> Result<CaseNode, ClassifyError> {
    let pointed = ring.restrict(&[0, 1, 3, 4])?;
    let gname = identify_rep_ring(&pointed).ok_or_else(|| ClassifyError::Inconsistent("invertibles unidentified".into()))?;
    let elementary = (0..4).all(|g| pointed.dual(g) == g);
    let n = ring.n(2, 2, 2);
    let label = format!("center Rep(Z2), pointed, invertibles {gname}");
    let node = CaseNode::new(label.clone())
        .hyp(format!("X3* = X{}", ring.dual(3)))
        .finding(format!("near-group over {gname} with multiplicity {n}"));
    if !near_group_braidable(4, elementary, &gname, n) {
        return Ok(node.finding("the braiding criterion fails").external("S1"));
    }
    let d8 = rep_fusion_ring(&named_group("D8")?)?;
    if rings_isomorphic(&ring, &d8).is_none() {
        return Err(ClassifyError::Inconsistent("near-group ring over Z2xZ2 is not Rep(D8)".into()));
    }
    let mut node = node.fact("NR1").fact("S1").finding("Grothendieck equivalent to Rep(D8)");
    let u = |v| TwistSymbol::Unknown(v);
    let sym = symbolic_s_matrix(&ring, dims, &[K1, K1, u(0), u(1), u(2)]);
    let central = sym.entry(1, 3).sub(&LaurentPoly::constant(&dims[1] * &dims[3], 3));
    if !forces_equal(&central, 1, 2) {
        return Err(ClassifyError::Inconsistent("X1 central does not force θ3 = θ4".into()));
    }
    let poly = orthogonality_polynomial(&ring, dims, &[K1, K1, u(0), u(1), u(1)], 3, 1)?;
    node = node
        .finding("S[1][3] = d1 d3 forces θ3 = θ4")
        .finding(format!("orthogonality of columns 0 and 3: {} = 0", poly.display_var("θ3")));
    for t3 in root_of_unity_solutions(&poly) {
        let known = TwistSymbol::Known(t3);
        let cond = theta_condition_residual(&ring, dims, &[K1, K1, u(0), known, known], 2)?;
        let admissible = cond.admissible();
        let mut consistent = Vec::new();
        for &t in &admissible {
            let datum = PremodularDatum::new(ring.clone(), dims.clone(), vec![RootOfUnity::ONE, RootOfUnity::ONE, t, t3, t3], None)?;
            if datum.check().is_empty() && orthogonality_failures(&datum).is_empty() && muger_center(&datum).indices == [0, 1] {
                consistent.push(t);
            }
        }
        let report = ThetaReport {
            object: 2,
            rhs: cond.rhs.to_string(),
            bound: cond.bound,
            polynomials: cond.branches.iter().map(|b| format!("m = {}: {}", b.m, b.polynomial.display_var("θ"))).collect(),
            coefficients: cond.branches.iter().map(|b| b.polynomial.clone()).collect(),
            degree: cond.degree(),
            monic: cond.all_monic(),
            admissible_orders: cond.admissible_orders(),
            admissible,
            consistent: consistent.clone(),
        };
        let theta = if consistent.contains(&RootOfUnity::ONE) { RootOfUnity::ONE } else {
            *consistent.first().ok_or_else(|| ClassifyError::Inconsistent("no admissible θ for X2".into()))?
        };
        let datum = PremodularDatum::new(ring.clone(), dims.clone(), vec![RootOfUnity::ONE, RootOfUnity::ONE, theta, t3, t3], None)?;
        let mut d = RealizedDatum::checked("Rep(D8)-type", datum, &[0, 1])?;
        d.theta_condition = Some(report);
        node = node.child(
            CaseNode::new(format!("center Rep(Z2), Rep(D8) ring, θ3 = θ4 = {t3}"))
                .hyp("θ2 = θ unknown")
                .finding(format!(
                    "θ-condition: integer polynomials of degree {}, monic: {}",
                    cond.degree().map_or("?".into(), |x| x.to_string()),
                    cond.all_monic()
                ))
                .realized(d),
        );
    }
    Ok(node)
}

/// Fibonacci-squared de-equivariantization.
fn fib_fib(data: &DataSet, cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let phi = CyclotomicNumber::golden_ratio();
    let phi2 = &phi * &phi;
    let plan = z2_plan(vec![orbit(1, 1, "Z2", int(1)), orbit(1, 1, "Z2", phi2.clone()), orbit(1, 2, "1", phi.clone())]);
    let res = equivariantization_rank(&plan)?;
    let dims = DimensionVector::new(vec![int(1), int(1), &int(2) * &phi, phi2.clone(), phi2]);
    let cons = FusionConstraints::new().product(1, 1, &[(0, 1)]).product(1, 2, &[(2, 1)]).product(1, 3, &[(4, 1)]);
    let (rings, _) = enumerate_fusion_rings_with(5, &dims, &cons, &cfg.search())?;
    let bundled = data
        .premodular_by_label("PSU(2)_8")
        .ok_or_else(|| ClassifyError::Inconsistent("bundled PSU(2)_8 datum missing".into()))?;
    let mut node = CaseNode::new("center Rep(Z2), Fib ⊠ Fib de-equivariantization")
        .hyp("de-equivariantization Fib ⊠ Fib with Z2 swapping the factors")
        .finding(format!("equivariantization dims ({}), relabeled ({})", show(&res.dims), show(dims.as_slice())))
        .finding(format!("{} fusion ring(s) with these dims and X1-action", rings.len()));
    for (i, ring) in rings.into_iter().enumerate() {
        let label = format!("center Rep(Z2), Fib ⊠ Fib, ring {}", i + 1);
        if rings_isomorphic(&ring, &bundled.datum.ring).is_some() {
            let d = RealizedDatum::checked("PSU(2)_8-type", bundled.datum.clone(), &[0, 1])?;
            node = node.child(CaseNode::new(label).finding("Grothendieck equivalent to PSU(2)_8").realized(d));
        } else {
            node = node.child(CaseNode::new(label).hyp(format!("dual {:?}", ring.duals())).open("fusion ring not matched to a known datum"));
        }
    }
    Ok(node)
}

/// Fib ⊠ semion de-equivariantization: a near-group over a group of order 4 with multiplicity 2.
fn fib_sem() -> Result<CaseNode, ClassifyError> {
    let phi = CyclotomicNumber::golden_ratio();
    let plan = z2_plan(vec![orbit(2, 1, "Z2", int(1)), orbit(1, 2, "1", phi)]);
    let res = equivariantization_rank(&plan)?;
    let x = res.dims[4].clone();
    let n = (&(&x * &x) - &int(4)).div(&x)?;
    let n_int = n
        .to_i64()
        .ok_or_else(|| ClassifyError::Inconsistent(format!("near-group multiplicity {} is not an integer", n.pretty())))?;
    let braidable = ["Z4", "Z2xZ2"].iter().any(|g| near_group_braidable(4, *g == "Z2xZ2", g, n_int as u32));
    let node = CaseNode::new("center Rep(Z2), Fib ⊠ Sem de-equivariantization")
        .hyp("de-equivariantization Fib ⊠ Sem, Z2 swapping its two simples of dimension φ")
        .finding(format!("equivariantization dims ({})", show(&res.dims)))
        .finding(format!("near-group over a group of order 4, X ⊗ X = G + {n_int} X"));
    if braidable {
        return Err(ClassifyError::Inconsistent("Fib ⊠ Sem near-group passes the braiding criterion".into()));
    }
    Ok(node.external("S1"))
}

/// X1 fixes every non-invertible simple: dims (1,1,2,2,2) and the Rep(D14) ring.
fn free_action(data: &DataSet, cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let plan = z2_plan(vec![orbit(1, 1, "Z2", int(1)), orbit(3, 2, "1", int(1))]);
    let res = equivariantization_rank(&plan)?;
    let dims = DimensionVector::new(res.dims.clone());
    let total = global_dimension(&dims);
    let rows = row_solutions(&dims, 2, 2, &[(0, 1), (1, 1)]);
    let mut node = CaseNode::new("center Rep(Z2), X1 fixes X2, X3, X4")
        .hyp("X1 ⊗ Xa = Xa for a = 2, 3, 4")
        .fact("BGNPRW1")
        .fact("ENO1")
        .finding("the de-equivariantization has rank 7 and is pointed")
        .finding(format!("equivariantization dims ({})", show(&res.dims)))
        .finding("a duality involution on three simples has a fixed point; take X2* = X2")
        .finding(format!(
            "X2 ⊗ X2 rows: {}",
            rows.admissible.iter().map(|r| row_string(r)).collect::<Vec<_>>().join(" ")
        ));
    let mut chosen = None;
    for row in &rows.admissible {
        if let Some(sub) = small_subring_dim(&dims, row) {
            node = node.child(divisibility_leaf(
                format!("center Rep(Z2), X1 fixes all, X2 ⊗ X2 = {}", row_string(row)),
                row,
                sub,
                total.clone(),
            ));
        } else if chosen.is_none() {
            chosen = Some(row.clone());
        }
    }
    let row = chosen.ok_or_else(|| ClassifyError::Inconsistent("no X2 ⊗ X2 row left".into()))?;
    let terms: Vec<(usize, u32)> = (0..5).filter(|&c| row[c] > 0).map(|c| (c, row[c])).collect();
    let cons = FusionConstraints::new()
        .product(1, 1, &[(0, 1)])
        .product(1, 2, &[(2, 1)])
        .product(1, 3, &[(3, 1)])
        .product(1, 4, &[(4, 1)])
        .product(2, 2, &terms);
    let (rings, _) = enumerate_fusion_rings_with(5, &dims, &cons, &cfg.search())?;
    let d14 = rep_fusion_ring(&named_group("D14")?)?;
    let bundled = data
        .premodular_by_label("Rep(D14)-type")
        .ok_or_else(|| ClassifyError::Inconsistent("bundled Rep(D14)-type datum missing".into()))?;
    let mut rnode = CaseNode::new(format!("center Rep(Z2), X1 fixes all, X2 ⊗ X2 = {}", row_string(&row)))
        .hyp("X3 and X4 are interchangeable, so this row covers the remaining ones")
        .fact("NR1")
        .finding(format!("{} fusion ring(s)", rings.len()));
    for (i, ring) in rings.into_iter().enumerate() {
        let label = format!("center Rep(Z2), X1 fixes all, ring {}", i + 1);
        if rings_isomorphic(&ring, &d14).is_some() && rings_isomorphic(&ring, &bundled.datum.ring).is_some() {
            let d = RealizedDatum::checked("Rep(D14)-type", bundled.datum.clone(), &[0, 1])?;
            rnode = rnode.child(CaseNode::new(label).finding("Grothendieck equivalent to Rep(D14)").fact("BPR1").realized(d));
        } else {
            rnode = rnode.child(CaseNode::new(label).open("fusion ring not matched to a known datum"));
        }
    }
    Ok(node.child(rnode))
}

/// Müger center of rank 2: Rep(Z2) with X1 the nontrivial invertible.
pub fn classify_center_rank2(data: &DataSet, cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let groups = census(&data.catalog, 2, cfg.max_order)?;
    if groups.iter().map(|g| g.name.as_str()).collect::<Vec<_>>() != ["Z2"] {
        return Err(ClassifyError::Inconsistent("groups with 2 classes should be Z2 alone".into()));
    }
    let case_one = CaseNode::new("center Rep(Z2), X1 ⊗ X3 = X4")
        .hyp("X1 ⊗ X2 = X2, X1 swaps X3 and X4")
        .fact("RSW1")
        .finding("the de-equivariantization is modular of rank 4 with a Z2-action pairing equal dimensions")
        .child(pointed(cfg)?)
        .child(fib_fib(data, cfg)?)
        .child(fib_sem()?);
    Ok(CaseNode::new("Müger center of rank 2")
        .hyp("C′ = Rep(Z2) Tannakian (odd rank)")
        .fact("Brug")
        .child(case_one)
        .child(free_action(data, cfg)?))
}
