//! Dominance order of a planar point set and its Hasse diagram.

use super::Point2;
use crate::error::{Error, Result};
use crate::hypergraph::{Coloring, OrderedHypergraph};

fn x_sorted_without_ties(points: &[Point2]) -> Result<Vec<usize>> {
    let mut by_y: Vec<usize> = (0..points.len()).collect();
    by_y.sort_by(|&a, &b| points[a].y.cmp(&points[b].y).then(a.cmp(&b)));
    if let Some(w) = by_y.windows(2).find(|w| points[w[0]].y == points[w[1]].y) {
        return Err(Error::CoordinateTie(w[0], w[1]));
    }
    let mut by_x: Vec<usize> = (0..points.len()).collect();
    by_x.sort_by(|&a, &b| points[a].x.cmp(&points[b].x).then(a.cmp(&b)));
    if let Some(w) = by_x.windows(2).find(|w| points[w[0]].x == points[w[1]].x) {
        return Err(Error::CoordinateTie(w[0], w[1]));
    }
    Ok(by_x)
}

/// Covering pairs of `p < q  <=>  x(p) < x(q) and y(p) < y(q)`, on the
/// input indices. `O(n^2)`: scanning rightwards from `p`, a dominating `q`
/// is a cover iff it is lower than every dominating point seen before it.
pub fn dominance_hasse(points: &[Point2]) -> Result<OrderedHypergraph> {
    let order = x_sorted_without_ties(points)?;
    let mut edges = Vec::new();
    for (i, &p) in order.iter().enumerate() {
        let mut ceiling: Option<usize> = None;
        for &q in &order[i + 1..] {
            if points[q].y <= points[p].y {
                continue;
            }
            if ceiling.is_none_or(|c| points[q].y < points[c].y) {
                edges.push(vec![p.min(q), p.max(q)]);
                ceiling = Some(q);
            }
        }
    }
    edges.sort_unstable();
    OrderedHypergraph::new(points.len(), edges)
}

/// A chain `v_1 < ... < v_k` of one color whose consecutive members are
/// Hasse-adjacent, or `None`. `k` counts vertices. Longest paths are
/// computed per color over the Hasse diagram in `x`-order; the chain ending
/// at the leftmost possible vertex is returned.
pub fn monochromatic_increasing_path(
    points: &[Point2],
    col: &Coloring,
    k: usize,
) -> Result<Option<Vec<usize>>> {
    if col.len() != points.len() {
        return Err(Error::LengthMismatch {
            expected: points.len(),
            got: col.len(),
        });
    }
    let order = x_sorted_without_ties(points)?;
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let hasse = dominance_hasse(points)?;
    let mut rank = vec![0usize; points.len()];
    for (r, &p) in order.iter().enumerate() {
        rank[p] = r;
    }
    // predecessors of each point among its same-colored lower covers
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for e in hasse.edges() {
        let (a, b) = (e[0], e[1]);
        if col.color(a) != col.color(b) {
            continue;
        }
        let (lo, hi) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
        lower[hi].push(lo);
    }
    let mut len = vec![1usize; points.len()];
    let mut back: Vec<Option<usize>> = vec![None; points.len()];
    for &v in &order {
        let mut best: Option<usize> = None;
        for &u in &lower[v] {
            if best.is_none_or(|b| len[u] > len[b] || (len[u] == len[b] && rank[u] < rank[b])) {
                best = Some(u);
            }
        }
        if let Some(u) = best {
            len[v] = len[u] + 1;
            back[v] = Some(u);
        }
        if len[v] >= k {
            let mut chain = vec![v];
            let mut cur = v;
            while chain.len() < k {
                cur = back[cur].expect("length bookkeeping");
                chain.push(cur);
            }
            chain.reverse();
            return Ok(Some(chain));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::hypergraph_girth;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pts(raw: &[(i64, i64)]) -> Vec<Point2> {
        raw.iter().map(|&(x, y)| Point2::int(x, y)).collect()
    }

    #[test]
    fn chain_of_three() {
        let h = dominance_hasse(&pts(&[(0, 0), (1, 1), (2, 2)])).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn antichain() {
        let h = dominance_hasse(&pts(&[(0, 1), (1, 0)])).unwrap();
        assert_eq!(h.num_edges(), 0);
    }

    #[test]
    fn ties_rejected() {
        assert_eq!(
            dominance_hasse(&pts(&[(0, 0), (0, 1)])),
            Err(Error::CoordinateTie(0, 1))
        );
    }

    #[test]
    fn path_examples() {
        let p = pts(&[(0, 0), (1, 1), (2, 2)]);
        let same = Coloring::new(1, vec![0, 0, 0]).unwrap();
        assert_eq!(monochromatic_increasing_path(&p, &same, 3).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(monochromatic_increasing_path(&p, &same, 4).unwrap(), None);
        let rainbow = Coloring::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(monochromatic_increasing_path(&p, &rainbow, 2).unwrap(), None);
        assert_eq!(monochromatic_increasing_path(&p, &rainbow, 1).unwrap(), Some(vec![0]));
    }

    fn hasse_oracle(p: &[Point2]) -> Vec<Vec<usize>> {
        let lt = |a: usize, b: usize| p[a].x < p[b].x && p[a].y < p[b].y;
        let mut out = Vec::new();
        for a in 0..p.len() {
            for b in 0..p.len() {
                if lt(a, b) && !(0..p.len()).any(|w| lt(a, w) && lt(w, b)) {
                    out.push(vec![a.min(b), a.max(b)]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn random_points(n: usize, seed: u64) -> Vec<Point2> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ys: Vec<i64> = (0..n as i64).collect();
        ys.shuffle(&mut rng);
        ys.into_iter()
            .enumerate()
            .map(|(x, y)| Point2::int(x as i64, y))
            .collect()
    }

    proptest! {
        #[test]
        fn hasse_matches_oracle_and_is_triangle_free(n in 0usize..24, seed in any::<u64>()) {
            let p = random_points(n, seed);
            let h = dominance_hasse(&p).unwrap();
            let oracle = hasse_oracle(&p);
            prop_assert_eq!(h.edges(), oracle.as_slice());
            prop_assert!(hypergraph_girth(&h).girth.at_least(4));
        }
    }
}
