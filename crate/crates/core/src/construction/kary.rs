use super::Limits;
use crate::error::{Error, Result};
use crate::hypergraph::OrderedHypergraph;

/// Hypergraph of the complete `k`-ary tree in which every root-leaf path has
/// `depth` vertices: one edge per root-leaf path, then one edge per
/// non-leaf vertex holding its children. Vertices are numbered breadth-first.
pub fn build_kary_tree_hypergraph(k: usize, depth: usize, limits: Limits) -> Result<OrderedHypergraph> {
    if k == 0 || depth == 0 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and depth >= 1, got k={k}, depth={depth}"
        )));
    }
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..depth {
        total = total.saturating_add(level);
        level = level.saturating_mul(k as u128);
    }
    limits.check(Some(total))?;
    let n = total as usize;

    // level j occupies [offset_j, offset_j + k^j)
    let mut offsets = vec![0usize];
    let mut width = 1usize;
    for _ in 1..depth {
        offsets.push(offsets.last().unwrap() + width);
        width *= k;
    }
    let leaf_offset = *offsets.last().unwrap();
    let parent = |v: usize, j: usize| offsets[j - 1] + (v - offsets[j]) / k;

    let mut edges = Vec::new();
    for leaf in leaf_offset..n {
        let mut path = vec![leaf];
        let mut v = leaf;
        for j in (1..depth).rev() {
            v = parent(v, j);
            path.push(v);
        }
        path.reverse();
        edges.push(path);
    }
    for j in 0..depth - 1 {
        let count = offsets[j + 1] - offsets[j];
        for i in 0..count {
            let first = offsets[j + 1] + i * k;
            edges.push((first..first + k).collect());
        }
    }
    OrderedHypergraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{is_c_colorable, is_proper_coloring, Coloring};

    #[test]
    fn degenerate_unary_tree() {
        let h = build_kary_tree_hypergraph(1, 2, Limits::default()).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges(), &[vec![0, 1], vec![1]]);
    }

    #[test]
    fn binary_depth_two() {
        let h = build_kary_tree_hypergraph(2, 2, Limits::default()).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn binary_depth_three_has_no_proper_two_coloring() {
        let h = build_kary_tree_hypergraph(2, 3, Limits::default()).unwrap();
        assert_eq!(h.n(), 7);
        let proper = (0..1u64 << 7)
            .filter(|&i| is_proper_coloring(&h, &Coloring::from_index(7, 2, i)).unwrap())
            .count();
        assert_eq!(proper, 0);
        assert!(is_c_colorable(&h, 2).unwrap().is_none());
    }

    #[test]
    fn ternary_is_three_uniform_and_not_two_colorable() {
        let h = build_kary_tree_hypergraph(3, 3, Limits::default()).unwrap();
        assert_eq!(h.uniformity(), Some(3));
        assert!(is_c_colorable(&h, 2).unwrap().is_none());
    }

    #[test]
    fn size_guard() {
        let err = build_kary_tree_hypergraph(10, 10, Limits { max_vertices: 1000 }).unwrap_err();
        assert!(err.is_resource());
    }
}
