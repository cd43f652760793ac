//! Constructive version of the non-colorability argument for `H_k^c`.
//!
//! Fix a tracked color. In every block of a stage the tracked color either
//! appears, or the block (a copy of `H_k^{c-1}`) is colored with one color
//! fewer and the search recurses into it. Picking a tracked vertex in each
//! block of the level-0 stage gives a member of `f_m`, which names a child
//! stage; repeating down to level `k-1` ends at a single vertex whose whole
//! path is in the tracked color. Only one stage per level is inspected.

use super::{fm_index, StagedHypergraph, StagedKind};
use crate::error::{Error, Result};
use crate::hypergraph::{edge_is_monochromatic, Coloring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonochromaticEdge {
    pub edge: usize,
    pub color: usize,
}

/// Finds a monochromatic edge, tracking color 0 where it is present.
pub fn find_monochromatic_edge(s: &StagedHypergraph, col: &Coloring) -> Result<MonochromaticEdge> {
    find_monochromatic_edge_tracking(s, col, 0)
}

/// As [`find_monochromatic_edge`], preferring `tracked` as the followed color.
/// Whenever the preferred color is absent from the part being searched, the
/// smallest color present there is followed instead.
pub fn find_monochromatic_edge_tracking(
    s: &StagedHypergraph,
    col: &Coloring,
    tracked: usize,
) -> Result<MonochromaticEdge> {
    if s.kind() != StagedKind::Hkc {
        return Err(Error::InvalidParameter(
            "the constructive finder applies to H_k^c only".into(),
        ));
    }
    if col.len() != s.n() {
        return Err(Error::LengthMismatch {
            expected: s.n(),
            got: col.len(),
        });
    }
    let edge = search(s, col.colors(), tracked)?;
    let e = s.base().edge(edge);
    if !edge_is_monochromatic(e, col) {
        return Err(Error::VerificationFailed(format!("edge {edge} is not monochromatic")));
    }
    Ok(MonochromaticEdge {
        edge,
        color: col.color(e[0]),
    })
}

fn followed_color(colors: &[usize], preferred: usize) -> Option<usize> {
    if colors.contains(&preferred) {
        Some(preferred)
    } else {
        colors.iter().copied().min()
    }
}

/// `colors` is indexed by the labels of `s`.
fn search(s: &StagedHypergraph, colors: &[usize], preferred: usize) -> Result<usize> {
    let Some(template) = s.template() else {
        let first = colors.first().copied();
        return if colors.iter().all(|&c| Some(c) == first) {
            Ok(0)
        } else {
            Err(Error::PaletteExceedsGuarantee)
        };
    };
    let red = followed_color(colors, preferred).ok_or(Error::EmptyInput)?;
    let template_edges = template.base().num_edges();
    let mut stage = 0usize;
    loop {
        let st = &s.stages()[stage];
        let m = st.block_size.expect("every stage of H_k^c carries copies");
        let mut choices = Vec::with_capacity(st.blocks());
        for b in 0..st.blocks() {
            let block = s.block_labels(stage, b);
            match block.iter().position(|&v| colors[v] == red) {
                Some(i) => choices.push(i),
                None => {
                    let local: Vec<usize> = block.iter().map(|&v| colors[v]).collect();
                    let inner = search(template, &local, preferred)?;
                    return Ok(st.first_transversal + b * template_edges + inner);
                }
            }
        }
        if st.level + 1 == s.depth() {
            // a deepest stage is a single block
            let pos = st.positions.start + choices[0];
            return Ok(s.path_edges().start + pos - s.first_leaf_position());
        }
        stage = st.children.start + fm_index(&choices, m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_hkc, Limits};
    use crate::hypergraph::naive_monochromatic_edge;

    #[test]
    fn base_case_returns_the_edge() {
        let h = build_hkc(3, 1, Limits::default()).unwrap();
        let col = Coloring::new(1, vec![0, 0, 0]).unwrap();
        assert_eq!(find_monochromatic_edge(&h, &col).unwrap().edge, 0);
        let col = Coloring::new(2, vec![0, 1, 0]).unwrap();
        assert_eq!(find_monochromatic_edge(&h, &col), Err(Error::PaletteExceedsGuarantee));
    }

    #[test]
    fn all_zero_coloring() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        let col = Coloring::new(2, vec![0; 12]).unwrap();
        let found = find_monochromatic_edge(&h, &col).unwrap();
        assert!(edge_is_monochromatic(h.base().edge(found.edge), &col));
    }

    #[test]
    fn every_two_coloring_of_h22() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        for i in 0..1u64 << 12 {
            let col = Coloring::from_index(12, 2, i);
            for tracked in 0..2 {
                let found = find_monochromatic_edge_tracking(&h, &col, tracked).unwrap();
                assert!(naive_monochromatic_edge(h.base(), &col).unwrap().is_some());
                assert!(edge_is_monochromatic(h.base().edge(found.edge), &col));
            }
        }
    }

    #[test]
    fn every_three_coloring_of_h13() {
        let h = build_hkc(1, 3, Limits::default()).unwrap();
        for color in 0..3 {
            let col = Coloring::new(3, vec![color]).unwrap();
            assert!(find_monochromatic_edge(&h, &col).is_ok());
        }
    }

    #[test]
    fn too_many_colors_may_fail() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        // a proper 3-coloring exists, so the finder must eventually give up
        let col = crate::hypergraph::is_c_colorable(h.base(), 3).unwrap().unwrap();
        assert_eq!(find_monochromatic_edge(&h, &col), Err(Error::PaletteExceedsGuarantee));
    }
}
