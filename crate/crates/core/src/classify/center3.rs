use super::{forces_equal, CaseNode, ClassifyConfig, ClassifyError, RealizedDatum, Witness};
use crate::data::DataSet;
use crate::exact_algebra::{root_of_unity_solutions, CyclotomicNumber, IntPolynomial, RootOfUnity, TwistSymbol};
use crate::fusion_ring::{
    enumerate_fusion_rings_with, fp_dimensions, row_solutions, DimensionVector, FusionConstraints, FusionRing,
};
use crate::groups::{
    census, equivariantization_rank, identify_rep_ring, involution_orbit_count, named_group, rep_fusion_ring,
    EquivariantizationPlan, OrbitSpec,
};
use crate::premodular::{symbolic_column_residual, symbolic_s_matrix, PremodularDatum};

const K1: TwistSymbol = TwistSymbol::Known(RootOfUnity::ONE);

fn orbit(count: usize, size: u64, stabilizer: &str, base: i64) -> OrbitSpec {
    OrbitSpec { count, size, stabilizer: stabilizer.into(), cocycle: 0, base_dim: CyclotomicNumber::from_integer(base) }
}

fn row_string(row: &[u32]) -> String {
    format!("[{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Column 0 against column `x` with θ_a = θ_b already identified; the integer polynomial in θ.
pub(crate) fn orthogonality_polynomial(
    ring: &FusionRing,
    dims: &DimensionVector,
    twists: &[TwistSymbol],
    x: usize,
    var: usize,
) -> Result<IntPolynomial, ClassifyError> {
    let s = symbolic_s_matrix(ring, dims, twists);
    symbolic_column_residual(&s, 0, x)
        .to_int_polynomial(var)
        .ok_or_else(|| ClassifyError::Inconsistent(format!("orthogonality residual for column {x} is not univariate")))
}

/// Center Rep(Z3): the Rep(Z7:Z3) fusion ring, then a contradiction on the twist of the 3-dimensional simples.
pub fn z3_branch() -> Result<CaseNode, ClassifyError> {
    let ring = rep_fusion_ring(&named_group("Z7:Z3")?)?;
    let dims = fp_dimensions(&ring)?;
    if ring.dual(3) != 4 {
        return Err(ClassifyError::Inconsistent("expected X3* = X4 in Rep(Z7:Z3)".into()));
    }
    let unknown = [K1, K1, K1, TwistSymbol::Unknown(0), TwistSymbol::Unknown(1)];
    let sym = symbolic_s_matrix(&ring, &dims, &unknown);
    let (_, rel) = sym
        .symmetry_relations()
        .into_iter()
        .find(|((x, y), _)| (*x, *y) == (3, 4))
        .ok_or_else(|| ClassifyError::Inconsistent("no symmetry relation between X3 and X4".into()))?;
    if !forces_equal(&rel, 0, 1) {
        return Err(ClassifyError::Inconsistent(format!("S34 = S43 does not force θ3 = θ4: {rel}")));
    }
    let same = [K1, K1, K1, TwistSymbol::Unknown(0), TwistSymbol::Unknown(0)];
    let poly = orthogonality_polynomial(&ring, &dims, &same, 4, 0)?;
    let node = CaseNode::new("center Rep(Z3)")
        .hyp("C′ = Rep(Z3) Tannakian, de-equivariantization of dimension 7")
        .fact("Brug")
        .fact("BGNPRW1")
        .fact("GN2/DGNO1")
        .fact("EGO1")
        .finding("dim C = 21 and dims (1,1,1,3,3), so the fusion ring is that of Rep(Z7:Z3)")
        .finding(format!("S[3][4] − S[4][3] = {rel}, forcing θ3 = θ4"))
        .finding(format!("orthogonality of columns 0 and 4: {} = 0", poly.display_var("θ")));
    let sols = root_of_unity_solutions(&poly);
    if sols.is_empty() {
        Ok(node.eliminated(Witness::no_root_of_unity(poly)))
    } else {
        Err(ClassifyError::Inconsistent(format!("unexpected roots of {}", poly.display_var("θ"))))
    }
}

/// Multiplicities of (y, triv) and (y, sgn) in X ⊗ X, where X is the S3-orbit of the three
/// nonzero elements of Z2xZ2 and y one of them with stabilizer Z2. Only pairs fixed by a
/// stabilizer element contribute to its trace.
pub(crate) fn stabilizer_multiplicities() -> [u32; 2] {
    let y = 1u8;
    let stab: [[u8; 4]; 2] = [[0, 1, 2, 3], [0, 1, 3, 2]];
    let mut out = [0u32; 2];
    for (k, sign) in [1i32, -1].into_iter().enumerate() {
        let mut total = 0i32;
        for (h, perm) in stab.iter().enumerate() {
            let fixed = (1..4u8)
                .flat_map(|i| (1..4u8).map(move |j| (i, j)))
                .filter(|&(i, j)| i ^ j == y && perm[i as usize] == i && perm[j as usize] == j)
                .count() as i32;
            total += if h == 0 { fixed } else { sign * fixed };
        }
        out[k] = (total / stab.len() as i32) as u32;
    }
    out
}

/// Center Rep(S3) when the nontrivial simple of the de-equivariantization has stabilizer Z2.
fn s3_case_one(cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let plan = EquivariantizationPlan {
        group: "S3".into(),
        group_order: 6,
        orbits: vec![orbit(1, 1, "S3", 1), orbit(1, 3, "Z2", 1)],
    };
    let res = equivariantization_rank(&plan)?;
    let dims = DimensionVector::new(res.dims.clone());
    let rows = row_solutions(&dims, 3, 3, &[(0, 1), (1, 0)]);
    let mut node = CaseNode::new("center Rep(S3), stabilizer Z2")
        .hyp("the de-equivariantization is pointed of rank 4 with one S3-orbit of size 3")
        .fact("BN1")
        .fact("RSW1")
        .finding(format!(
            "equivariantization rank {} with dims ({})",
            res.rank,
            res.dims.iter().map(|d| d.pretty()).collect::<Vec<_>>().join(",")
        ))
        .finding("X3, X4 self-dual and X1 ⊗ X3 = X4")
        .finding(format!(
            "X3 ⊗ X3 rows: admissible {}; pruned by N ≤ min(d) {}",
            rows.admissible.iter().map(|r| row_string(r)).collect::<Vec<_>>().join(" "),
            rows.pruned.iter().map(|r| row_string(r)).collect::<Vec<_>>().join(" ")
        ));
    let cons = FusionConstraints::new()
        .product(1, 1, &[(0, 1)])
        .product(1, 2, &[(2, 1)])
        .product(2, 2, &[(0, 1), (1, 1), (2, 1)])
        .product(1, 3, &[(4, 1)])
        .dual(vec![0, 1, 2, 3, 4]);
    let (rings, _) = enumerate_fusion_rings_with(5, &dims, &cons, &cfg.search())?;
    node = node.finding(format!("{} fusion ring(s) satisfy the constraints", rings.len()));
    for (i, ring) in rings.into_iter().enumerate() {
        let row: Vec<u32> = (0..5).map(|c| ring.n(3, 3, c)).collect();
        let expected = stabilizer_multiplicities();
        if row[3..5] != expected {
            node = node.child(
                CaseNode::new(format!("center Rep(S3), ring {}", i + 1))
                    .hyp(format!("X3 ⊗ X3 = {}", row_string(&row)))
                    .finding("X3 and X4 restrict to the same orbit; the stabilizer Z2 swaps y2 ⊗ y3 and y3 ⊗ y2")
                    .eliminated(Witness::StabilizerMultiplicity { row, expected: expected.to_vec() }),
            );
            continue;
        }
        let group = identify_rep_ring(&ring).unwrap_or_else(|| "?".into());
        let unknown = [K1, K1, K1, TwistSymbol::Unknown(0), TwistSymbol::Unknown(1)];
        let sym = symbolic_s_matrix(&ring, &dims, &unknown);
        let central = sym.entry(1, 3).sub(&crate::exact_algebra::LaurentPoly::constant(&dims[1] * &dims[3], 2));
        if !forces_equal(&central, 0, 1) {
            return Err(ClassifyError::Inconsistent("X1 central does not force θ3 = θ4".into()));
        }
        let same = [K1, K1, K1, TwistSymbol::Unknown(0), TwistSymbol::Unknown(0)];
        let poly = orthogonality_polynomial(&ring, &dims, &same, 3, 0)?;
        let sols = root_of_unity_solutions(&poly);
        let mut rnode = CaseNode::new(format!("center Rep(S3), ring {} (Rep({group}) type)", i + 1))
            .hyp(format!("X3 ⊗ X3 = {}", row_string(&row)))
            .finding("S[1][3] = d1 d3 forces θ3 = θ4")
            .finding(format!("orthogonality of columns 0 and 3: {} = 0", poly.display_var("θ")));
        if sols.is_empty() {
            rnode = rnode.eliminated(Witness::no_root_of_unity(poly));
        } else {
            for theta in sols {
                let twists = vec![RootOfUnity::ONE, RootOfUnity::ONE, RootOfUnity::ONE, theta, theta];
                let datum = PremodularDatum::new(ring.clone(), dims.clone(), twists, None)?;
                let d = RealizedDatum::checked("Rep(S4)-type", datum, &[0, 1, 2])?;
                rnode = rnode.child(CaseNode::new(format!("center Rep(S3): θ3 = θ4 = {theta}")).realized(d));
            }
        }
        node = node.child(rnode);
    }
    Ok(node)
}

/// Center Rep(S3) with free orbits: the de-equivariantization is pointed of rank 13.
fn s3_case_two() -> Result<CaseNode, ClassifyError> {
    let orthogonal: Vec<u64> = (1..13).filter(|k| k * k % 13 == 1).collect();
    let trivial = EquivariantizationPlan { group: "S3".into(), group_order: 6, orbits: vec![orbit(13, 1, "S3", 1)] };
    let pairs = involution_orbit_count(13) as usize - 1;
    let sign = EquivariantizationPlan {
        group: "S3".into(),
        group_order: 6,
        orbits: vec![orbit(1, 1, "S3", 1), orbit(pairs, 2, "Z3", 1)],
    };
    let ranks = vec![equivariantization_rank(&trivial)?.rank, equivariantization_rank(&sign)?.rank];
    Ok(CaseNode::new("center Rep(S3), free orbits")
        .hyp("the de-equivariantization is pointed of rank 13")
        .fact("BGNPRW1")
        .fact("ENO1")
        .finding(format!(
            "automorphisms of Z13 preserving the quadratic form: k with k² ≡ 1 (mod 13), k ∈ {{{}}}",
            orthogonal.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        ))
        .finding("S3 acts through its sign character: trivially or by x ↦ −x")
        .eliminated(Witness::RankMismatch { plans: vec![trivial, sign], ranks, expected: 5 }))
}

/// Müger center of rank 3: Rep(Z3) or Rep(S3).
pub fn classify_center_rank3(data: &DataSet, cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let groups = census(&data.catalog, 3, cfg.max_order)?;
    let mut node = CaseNode::new("Müger center of rank 3")
        .hyp("C′ = Rep(G) Tannakian (odd rank), two non-central simples")
        .finding(format!("groups with 3 classes: {}", groups.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(", ")));
    for e in groups {
        node = match e.name.as_str() {
            "Z3" => node.child(z3_branch()?),
            "S3" => node.child(
                CaseNode::new("center Rep(S3)")
                    .hyp("C′ = Rep(S3)")
                    .fact("Brug")
                    .child(s3_case_one(cfg)?)
                    .child(s3_case_two()?),
            ),
            other => return Err(ClassifyError::Inconsistent(format!("unexpected group {other} with 3 classes"))),
        };
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_stabilizer_splits_evenly() {
        assert_eq!(stabilizer_multiplicities(), [1, 1]);
    }
}
