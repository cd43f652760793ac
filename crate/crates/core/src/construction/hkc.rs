use super::{assemble, f_m_subsets, Limits, StagedHypergraph, StagedKind};
use crate::error::{Error, Result};

fn sat_pow(base: u128, exp: u128) -> Option<u128> {
    if base <= 1 {
        return Some(if exp == 0 { 1 } else { base });
    }
    if exp >= 128 {
        return None;
    }
    base.checked_pow(exp as u32)
}

/// Vertex count of `H_k^c` from the stage counts: a level-`j` stage has
/// `m^{k-j}` vertices and spawns `m^{m^{k-j-1}}` stages of level `j+1`.
/// `None` when the count does not fit in 128 bits.
pub fn predicted_hkc_vertices(k: usize, c: usize) -> Option<u128> {
    let mut m: u128 = k as u128;
    for _ in 1..c {
        let k = k as u128;
        let mut stages: u128 = 1;
        let mut total: u128 = 0;
        for j in 0..k {
            let size = sat_pow(m, k - j)?;
            total = total.checked_add(stages.checked_mul(size)?)?;
            if j + 1 < k {
                let blocks = sat_pow(m, k - j - 1)?;
                stages = stages.checked_mul(sat_pow(m, blocks)?)?;
            }
        }
        m = total;
    }
    Some(m)
}

/// Builds `H_k^c`.
pub fn build_hkc(k: usize, c: usize, limits: Limits) -> Result<StagedHypergraph> {
    if k == 0 || c == 0 {
        return Err(Error::InvalidParameter(format!("need k >= 1 and c >= 1, got k={k}, c={c}")));
    }
    limits.check(predicted_hkc_vertices(k, c))?;
    if c == 1 {
        return Ok(StagedHypergraph::single_edge(StagedKind::Hkc, k, None));
    }
    let template = build_hkc(k, c - 1, limits)?;
    let m = template.n();
    let roots = m.pow(k as u32);
    assemble(
        StagedKind::Hkc,
        k,
        c,
        None,
        template,
        None,
        roots,
        k,
        |_| Some(m),
        |_, positions| Ok(f_m_subsets(positions, m)?.collect()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{edge_multiset_equal, OrderedHypergraph};
    use std::collections::HashSet;

    #[test]
    fn base_case_is_one_edge() {
        let h = build_hkc(2, 1, Limits::default()).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.base().edges(), &[vec![0, 1]]);
        assert!(h.is_base_case());
    }

    /// Direct enumeration of H_2^2 following the construction by hand:
    /// roots r0 r1 | r2 r3, four child stages for the choices (r0,r2),
    /// (r0,r3), (r1,r2), (r1,r3).
    #[test]
    fn h22_counts() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        assert_eq!(h.n(), 12);
        assert_eq!(h.base().num_edges(), 14);
        assert_eq!(h.path_edges().len(), 8);
        assert_eq!(h.transversal_edges().len(), 6);
        assert_eq!(h.base().uniformity(), Some(2));
        assert_eq!(h.stages().len(), 5);
        let stage0_transversal = h.transversal_edges().iter().filter(|t| t.stage == 0).count();
        assert_eq!(stage0_transversal, 2);
    }

    #[test]
    fn k1_is_a_single_vertex_with_c_edges() {
        for c in 1..5 {
            let h = build_hkc(1, c, Limits::default()).unwrap();
            assert_eq!(h.n(), 1);
            assert_eq!(h.base().num_edges(), c);
            assert!(h.base().edges().iter().all(|e| e == &vec![0]));
        }
    }

    #[test]
    fn predicted_counts() {
        assert_eq!(predicted_hkc_vertices(2, 1), Some(2));
        assert_eq!(predicted_hkc_vertices(2, 2), Some(12));
        assert_eq!(predicted_hkc_vertices(3, 2), Some(27 + 19_683 * 9 + 531_441 * 3));
        assert_eq!(predicted_hkc_vertices(3, 3), None);
    }

    #[test]
    fn limit_is_enforced() {
        let err = build_hkc(2, 3, Limits::default()).unwrap_err();
        assert!(err.is_resource());
        let err = build_hkc(2, 2, Limits { max_vertices: 11 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    fn check_invariants(h: &StagedHypergraph) {
        let k = h.uniformity();
        let m = h.m() as u64;
        assert_eq!(h.base().uniformity(), Some(k));
        for (sid, st) in h.stages().iter().enumerate() {
            assert_eq!(st.len() as u64, m.pow((k - st.level) as u32));
            let roots: HashSet<usize> = h.stage_labels(sid).iter().map(|&v| h.root(v)).collect();
            assert_eq!(roots.len(), st.len(), "one vertex per tree in stage {sid}");
            if st.level + 1 < k {
                let blocks = m.pow((k - st.level - 1) as u32);
                assert_eq!(st.children.len() as u64, m.pow(blocks as u32));
            }
        }
        for e in h.path_edges() {
            let v = h.path_vertex(e);
            let mut path = h.path(v);
            assert_eq!(path.len(), k);
            path.sort_unstable();
            assert_eq!(h.base().edge(e), path.as_slice());
        }
        let template = h.template().unwrap();
        for sid in 0..h.stages().len() {
            for b in 0..h.stages()[sid].blocks() {
                let mut block = h.block_labels(sid, b).to_vec();
                // left-to-right order inside a block is the stage order
                assert!(block.windows(2).all(|w| w[0] < w[1]));
                block.sort_unstable();
                let copy_edges: Vec<Vec<usize>> = h
                    .transversal_edges()
                    .iter()
                    .filter(|t| t.stage == sid && t.block == b)
                    .map(|t| h.base().edge(t.edge).to_vec())
                    .collect();
                let local = OrderedHypergraph::new(h.n(), copy_edges).unwrap().induced(&block);
                assert!(edge_multiset_equal(&local, template.base()).unwrap());
            }
        }
    }

    #[test]
    fn structural_invariants_small_instances() {
        for &(k, c) in &[(1, 2), (1, 3), (2, 2), (3, 2), (4, 2)] {
            if predicted_hkc_vertices(k, c).is_none_or(|p| p > 200_000) {
                continue;
            }
            let h = build_hkc(k, c, Limits::default()).unwrap();
            check_invariants(&h);
        }
    }

    #[test]
    fn parents_sit_right_of_children() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        for v in 0..h.n() {
            if let Some(p) = h.parent(v) {
                assert!(p > v);
            }
        }
    }
}
