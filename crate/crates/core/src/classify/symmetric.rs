use super::{CaseNode, ClassifyConfig, ClassifyError, RealizedDatum};
use crate::data::DataSet;
use crate::exact_algebra::{sylvester_landau_bound, RootOfUnity};
use crate::groups::census;
use crate::premodular::PremodularDatum;

/// Symmetric rank 5: Tannakian, so Rep(G) with G one of the groups with five conjugacy classes.
pub fn classify_symmetric_rank5(data: &DataSet, cfg: &ClassifyConfig) -> Result<CaseNode, ClassifyError> {
    let bound = sylvester_landau_bound(5);
    let groups = census(&data.catalog, 5, cfg.max_order)?;
    let mut node = CaseNode::new("symmetric (Müger center is everything)")
        .hyp("rank 5, pseudo-unitary, all of C transparent")
        .fact("D1")
        .finding("odd rank leaves no fermion, so C is Tannakian and equals Rep(G) with five irreducibles")
        .finding(format!("|G| ≤ {bound} for groups with 5 conjugacy classes; catalog searched to order {}", cfg.max_order))
        .finding(format!("census: {}", groups.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(", ")));
    let named = crate::groups::named_group;
    for e in groups {
        let g = data
            .catalog
            .iter()
            .find(|c| c.name == e.name)
            .map(|c| c.build())
            .unwrap_or_else(|| named(&e.name))?;
        let ring = crate::groups::rep_fusion_ring(&g)?;
        let datum = PremodularDatum::from_twists(ring, vec![RootOfUnity::one(); 5])?;
        let name = format!("Rep({})", e.name);
        let d = RealizedDatum::checked(&name, datum, &[0, 1, 2, 3, 4])?;
        let degrees: Vec<String> = e.degrees.iter().map(|x| x.to_string()).collect();
        node = node.child(
            CaseNode::new(format!("G = {}", e.name))
                .hyp(format!("|G| = {}, irreducible degrees ({})", e.order, degrees.join(",")))
                .realized(d),
        );
    }
    Ok(node)
}
