use super::{assemble, AuxiliaryProvider, AuxiliaryRequest, Limits, StagedHypergraph, StagedKind};
use crate::error::{Error, Result};

/// Builds the ordered graph `G^c(g)`: `K_2` for `c = 1`; otherwise a level-0
/// stage holding the auxiliary hypergraph's vertices (no edges inside), and
/// for each auxiliary edge a level-1 stage with one child per member, joined
/// to its parent and carrying one copy of `G^{c-1}(g)`.
pub fn build_gcg(
    c: usize,
    g: usize,
    provider: &mut dyn AuxiliaryProvider,
    limits: Limits,
) -> Result<StagedHypergraph> {
    if c == 0 || g < 2 {
        return Err(Error::InvalidParameter(format!("need c >= 1 and g >= 2, got c={c}, g={g}")));
    }
    if c == 1 {
        return Ok(StagedHypergraph::single_edge(StagedKind::Gcg, 2, Some(g)));
    }
    let template = build_gcg(c - 1, g, provider, limits)?;
    let m = template.n();
    let aux = provider.provide(&AuxiliaryRequest {
        uniformity: m,
        girth: g,
        chromatic_lower_bound: c + 1,
    })?;
    if aux.base.uniformity() != Some(m) {
        return Err(Error::ProviderFailure(format!(
            "auxiliary hypergraph must be {m}-uniform"
        )));
    }
    let predicted = aux.base.n() as u128 + aux.base.num_edges() as u128 * m as u128;
    limits.check(Some(predicted))?;
    let edges = aux.base.edges().to_vec();
    assemble(
        StagedKind::Gcg,
        2,
        c,
        Some(g),
        template,
        Some(aux.clone()),
        aux.base.n(),
        2,
        |level| (level == 1).then_some(m),
        |_, positions| {
            Ok(edges
                .iter()
                .map(|e| e.iter().map(|&v| positions[v]).collect())
                .collect())
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{FixedProvider, OddCycleProvider};
    use crate::hypergraph::{hypergraph_girth, is_c_colorable, OrderedHypergraph};

    #[test]
    fn c1_is_k2() {
        let k2 = build_gcg(1, 5, &mut OddCycleProvider, Limits::default()).unwrap();
        assert_eq!(k2.n(), 2);
        assert_eq!(k2.base().edges(), &[vec![0, 1]]);
        assert_eq!(k2.stages().len(), 1);
    }

    #[test]
    fn g25_on_c5() {
        let g = build_gcg(2, 5, &mut OddCycleProvider, Limits::default()).unwrap();
        assert_eq!(g.n(), 15);
        assert_eq!(g.base().num_edges(), 15);
        assert_eq!(g.stages().len(), 6);
        assert_eq!(g.path_edges().len(), 10);
        assert_eq!(g.base().uniformity(), Some(2));
        assert!(hypergraph_girth(g.base()).girth.at_least(5));
        assert!(is_c_colorable(g.base(), 2).unwrap().is_none());
    }

    #[test]
    fn no_edges_inside_level_zero_or_between_level_one_stages() {
        for girth in [5, 7, 9] {
            let g = build_gcg(2, girth, &mut OddCycleProvider, Limits::default()).unwrap();
            let mut stage_of = vec![0usize; g.n()];
            for (s, _) in g.stages().iter().enumerate() {
                for &v in g.stage_labels(s) {
                    stage_of[v] = s;
                }
            }
            for e in g.base().edges() {
                let (a, b) = (stage_of[e[0]], stage_of[e[1]]);
                assert!(!(a == 0 && b == 0), "edge inside level 0");
                if a != 0 && b != 0 {
                    assert_eq!(a, b, "edge between level-1 stages");
                }
            }
        }
    }

    #[test]
    fn needs_matching_uniformity() {
        let mut p = FixedProvider::from_hypergraphs(vec![
            OrderedHypergraph::new(4, vec![vec![0, 1, 2]]).unwrap(),
        ]);
        assert!(build_gcg(2, 3, &mut p, Limits::default()).is_err());
    }

    #[test]
    fn third_level_needs_an_auxiliary_object_odd_cycles_cannot_supply() {
        let err = build_gcg(3, 5, &mut OddCycleProvider, Limits::default()).unwrap_err();
        assert!(matches!(err, Error::ProviderFailure(_)));
    }
}
