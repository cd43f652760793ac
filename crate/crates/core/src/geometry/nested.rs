//! Nested interval families and their extension to perfect binary families.

use std::collections::BTreeMap;

use super::{midpoint, rat, Rational};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedInterval {
    pub lo: Rational,
    pub hi: Rational,
}

/// Half-open interval `[lo, hi)`; empty when `lo >= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Self { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, y: &Rational) -> bool {
        &self.lo <= y && y < &self.hi
    }
}

/// Pairwise disjoint-or-comparable, by a sweep over intervals sorted by
/// left end. Returns a crossing pair of input indices if there is one.
fn crossing_pair(
    spans: Vec<(usize, &Rational, &Rational)>,
    ends_before: impl Fn(&Rational, &Rational) -> bool,
) -> Option<(usize, usize)> {
    let mut spans = spans;
    spans.sort_by(|a, b| a.1.cmp(b.1).then_with(|| b.2.cmp(a.2)));
    let mut stack: Vec<(usize, &Rational, &Rational)> = Vec::new();
    for cur in spans {
        while stack.last().is_some_and(|top| ends_before(top.2, cur.1)) {
            stack.pop();
        }
        if let Some(top) = stack.last() {
            if cur.2 > top.2 {
                return Some((top.0.min(cur.0), top.0.max(cur.0)));
            }
        }
        stack.push(cur);
    }
    None
}

/// Any two half-open intervals are disjoint or one contains the other.
/// Repeated and empty intervals are allowed.
pub fn is_nested(family: &[Interval]) -> bool {
    nested_violation(family).is_none()
}

fn nested_violation(family: &[Interval]) -> Option<(usize, usize)> {
    let spans = family
        .iter()
        .enumerate()
        .filter(|(_, i)| !i.is_empty())
        .map(|(k, i)| (k, &i.lo, &i.hi))
        .collect();
    crossing_pair(spans, |hi, lo| hi <= lo)
}

/// As [`is_nested`] for closed intervals.
pub fn is_nested_closed(family: &[ClosedInterval]) -> bool {
    closed_crossing_pair(family).is_none()
}

/// Indices of two crossing closed intervals, if any.
pub fn closed_crossing_pair(family: &[ClosedInterval]) -> Option<(usize, usize)> {
    let spans = family
        .iter()
        .enumerate()
        .map(|(k, i)| (k, &i.lo, &i.hi))
        .collect();
    crossing_pair(spans, |hi, lo| hi < lo)
}

/// Replaces each `[lo, hi]` by `[lo, hi')` with `hi'` halfway to the next
/// value above `hi` among the points and all endpoints. Point membership and
/// nestedness are unchanged.
pub fn closed_to_half_open(family: &[ClosedInterval], points_y: &[Rational]) -> Vec<Interval> {
    let mut values: Vec<&Rational> = points_y
        .iter()
        .chain(family.iter().flat_map(|i| [&i.lo, &i.hi]))
        .collect();
    values.sort();
    values.dedup();
    family
        .iter()
        .map(|i| {
            let next = values.partition_point(|v| *v <= &i.hi);
            let hi = match values.get(next) {
                Some(v) => midpoint(&i.hi, v),
                None => &i.hi + rat(1),
            };
            Interval::new(i.lo.clone(), hi)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootMode {
    /// Reuse an input interval as the root when it covers everything.
    #[default]
    Hull,
    /// Always add a new root, so every input interval gets a nonempty label.
    Fresh,
}

/// A perfect nested family stored sparsely: labels that are absent denote
/// empty intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectNestedFamily {
    /// Number of levels; leaf labels have length `depth - 1`.
    pub depth: usize,
    pub nodes: BTreeMap<String, Interval>,
    /// Label of each input interval.
    pub interval_labels: Vec<String>,
    /// Leaf label of each input point.
    pub point_labels: Vec<String>,
}

impl PerfectNestedFamily {
    pub fn interval(&self, label: &str) -> Option<&Interval> {
        self.nodes.get(label)
    }

    /// `I_s = I_{s0} ∪ I_{s1}` for every stored label shorter than
    /// `depth - 1`, and every stored label is reachable from the root.
    pub fn is_perfect(&self) -> bool {
        if !self.nodes.contains_key("") {
            return false;
        }
        self.nodes.iter().all(|(s, i)| {
            if !s.is_empty() && !self.nodes.contains_key(&s[..s.len() - 1]) {
                return false;
            }
            if s.len() + 1 >= self.depth {
                return s.len() < self.depth;
            }
            let left = self.nodes.get(&format!("{s}0")).filter(|c| !c.is_empty());
            let right = self.nodes.get(&format!("{s}1")).filter(|c| !c.is_empty());
            match (left, right) {
                (None, None) => i.is_empty(),
                (Some(c), None) | (None, Some(c)) => c == i,
                (Some(a), Some(b)) => a.lo == i.lo && a.hi == b.lo && b.hi == i.hi,
            }
        })
    }

    /// Membership in input interval `i` agrees with the prefix relation for
    /// every point, checked exhaustively.
    pub fn prefix_matches_membership(&self, family: &[Interval], points_y: &[Rational]) -> bool {
        family.iter().zip(&self.interval_labels).all(|(interval, label)| {
            points_y
                .iter()
                .zip(&self.point_labels)
                .all(|(y, pl)| interval.contains(y) == pl.starts_with(label.as_str()))
        })
    }
}

struct Node {
    interval: Interval,
    children: Vec<usize>,
}

/// Builds a perfect nested family containing every input interval.
///
/// The containment forest of the distinct input intervals is put under a
/// root; each node's children are completed by the gaps between them so
/// that they cover it; children are then combined pairwise from the left
/// into a binary tree, and shallow leaves are extended downward by chains of
/// left children equal to themselves (their right siblings are empty).
pub fn extend_to_perfect_nested(
    family: &[Interval],
    points_y: &[Rational],
    mode: RootMode,
) -> Result<PerfectNestedFamily> {
    if let Some(k) = family.iter().position(Interval::is_empty) {
        return Err(Error::InvalidParameter(format!("interval {k} is empty")));
    }
    if let Some((a, b)) = nested_violation(family) {
        return Err(Error::NotNested(a, b));
    }
    if family.is_empty() && points_y.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut distinct: Vec<Interval> = family.to_vec();
    distinct.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| b.hi.cmp(&a.hi)));
    distinct.dedup();

    let lo = distinct
        .iter()
        .map(|i| &i.lo)
        .chain(points_y)
        .min()
        .cloned()
        .expect("nonempty");
    let hi = distinct
        .iter()
        .map(|i| i.hi.clone())
        .chain(points_y.iter().map(|y| y + rat(1)))
        .max()
        .expect("nonempty");
    let hull = Interval::new(lo, hi);
    let covers_all = |i: &Interval| {
        i.lo <= hull.lo
            && distinct.iter().all(|j| j.hi <= i.hi)
            && points_y.iter().all(|y| i.contains(y))
    };

    let mut nodes: Vec<Node> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let reuse = mode == RootMode::Hull && distinct.first().is_some_and(covers_all);
    let mut rest = distinct.iter();
    let root_interval = if reuse {
        rest.next().expect("first exists").clone()
    } else {
        hull
    };
    nodes.push(Node {
        interval: root_interval,
        children: Vec::new(),
    });
    stack.push(0);
    for i in rest {
        while !nodes[*stack.last().expect("root stays")].interval_contains(i) {
            stack.pop();
        }
        let id = nodes.len();
        nodes.push(Node {
            interval: i.clone(),
            children: Vec::new(),
        });
        let parent = *stack.last().expect("root stays");
        nodes[parent].children.push(id);
        stack.push(id);
    }

    // gap children
    for id in 0..nodes.len() {
        if nodes[id].children.is_empty() {
            continue;
        }
        let mut cursor = nodes[id].interval.lo.clone();
        let mut completed = Vec::new();
        for &c in &nodes[id].children.clone() {
            if cursor < nodes[c].interval.lo {
                completed.push(nodes.len());
                nodes.push(Node {
                    interval: Interval::new(cursor, nodes[c].interval.lo.clone()),
                    children: Vec::new(),
                });
            }
            completed.push(c);
            cursor = nodes[c].interval.hi.clone();
        }
        if cursor < nodes[id].interval.hi {
            completed.push(nodes.len());
            nodes.push(Node {
                interval: Interval::new(cursor, nodes[id].interval.hi.clone()),
                children: Vec::new(),
            });
        }
        nodes[id].children = completed;
    }

    // binarize: children c1..cq become ((c1, c2), c3)...
    for id in 0..nodes.len() {
        let kids = std::mem::take(&mut nodes[id].children);
        if kids.len() <= 2 {
            nodes[id].children = kids;
            continue;
        }
        let mut acc = kids[0];
        for &c in &kids[1..kids.len() - 1] {
            let merged = nodes.len();
            nodes.push(Node {
                interval: Interval::new(nodes[acc].interval.lo.clone(), nodes[c].interval.hi.clone()),
                children: vec![acc, c],
            });
            acc = merged;
        }
        nodes[id].children = vec![acc, *kids.last().expect("q > 2")];
    }

    // labels
    let mut label = vec![String::new(); nodes.len()];
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let id = order[i];
        for (bit, &c) in ["0", "1"].iter().zip(&nodes[id].children) {
            label[c] = format!("{}{bit}", label[id]);
            order.push(c);
        }
        i += 1;
    }
    let depth = label.iter().map(String::len).max().unwrap_or(0) + 1;

    let mut out = BTreeMap::new();
    for &id in &order {
        out.insert(label[id].clone(), nodes[id].interval.clone());
        if nodes[id].children.is_empty() {
            let mut pad = label[id].clone();
            while pad.len() + 1 < depth {
                pad.push('0');
                out.insert(pad.clone(), nodes[id].interval.clone());
            }
        }
    }

    let point_labels = points_y
        .iter()
        .map(|y| {
            let mut id = 0;
            'descend: loop {
                for &c in &nodes[id].children {
                    if nodes[c].interval.contains(y) {
                        id = c;
                        continue 'descend;
                    }
                }
                break;
            }
            let mut s = label[id].clone();
            while s.len() + 1 < depth {
                s.push('0');
            }
            s
        })
        .collect();

    let index: BTreeMap<&Interval, usize> = nodes
        .iter()
        .enumerate()
        .map(|(id, n)| (&n.interval, id))
        .collect();
    let interval_labels = family
        .iter()
        .map(|i| label[index[i]].clone())
        .collect();

    Ok(PerfectNestedFamily {
        depth,
        nodes: out,
        interval_labels,
        point_labels,
    })
}

impl Node {
    fn interval_contains(&self, other: &Interval) -> bool {
        self.interval.lo <= other.lo && other.hi <= self.interval.hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;
    use proptest::prelude::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(rat(lo), rat(hi))
    }

    fn civ(lo: i64, hi: i64) -> ClosedInterval {
        ClosedInterval { lo: rat(lo), hi: rat(hi) }
    }

    #[test]
    fn nested_examples() {
        assert!(is_nested(&[iv(0, 4), iv(0, 2), iv(2, 4), iv(0, 4)]));
        assert!(!is_nested(&[iv(0, 3), iv(2, 5)]));
        assert!(is_nested(&[iv(0, 2), iv(2, 4)]));
        assert!(is_nested_closed(&[civ(0, 4), civ(0, 2), civ(3, 4)]));
        assert!(!is_nested_closed(&[civ(0, 2), civ(2, 4)]));
    }

    #[test]
    fn half_open_conversion() {
        let fam = [civ(0, 2), civ(2, 4)];
        let out = closed_to_half_open(&fam, &[rat(1), rat(3)]);
        assert_eq!(out[0], Interval::new(rat(0), ratio(5, 2)));
        assert_eq!(out[1], Interval::new(rat(2), rat(5)));
    }

    #[test]
    fn identity_case() {
        let fam = [iv(0, 4), iv(0, 2), iv(2, 4)];
        let ys = [rat(1), rat(3)];
        let p = extend_to_perfect_nested(&fam, &ys, RootMode::Hull).unwrap();
        assert_eq!(p.depth, 2);
        assert_eq!(p.interval_labels, vec!["", "0", "1"]);
        assert_eq!(p.point_labels, vec!["0", "1"]);
        assert!(p.is_perfect());
        assert!(p.prefix_matches_membership(&fam, &ys));
    }

    #[test]
    fn single_interval_two_points() {
        let fam = [iv(0, 1)];
        let ys = [ratio(1, 4), ratio(3, 4)];
        for mode in [RootMode::Hull, RootMode::Fresh] {
            let p = extend_to_perfect_nested(&fam, &ys, mode).unwrap();
            assert!(p.is_perfect());
            assert!(p.prefix_matches_membership(&fam, &ys));
        }
        let p = extend_to_perfect_nested(&fam, &ys, RootMode::Fresh).unwrap();
        assert!(p.depth >= 2);
        assert_eq!(p.interval_labels, vec!["0"]);
    }

    #[test]
    fn crossing_family_rejected() {
        let err = extend_to_perfect_nested(&[iv(0, 3), iv(2, 5)], &[], RootMode::Hull).unwrap_err();
        assert_eq!(err, Error::NotNested(0, 1));
    }

    fn nested_family() -> impl Strategy<Value = (Vec<Interval>, Vec<Rational>)> {
        // intervals from a random laminar family over 0..32
        (prop::collection::vec((0i64..32, 1i64..8), 1..12), prop::collection::vec(0i64..64, 0..12))
            .prop_map(|(raw, ys)| {
                let mut fam: Vec<Interval> = Vec::new();
                for (lo, len) in raw {
                    let cand = iv(lo, lo + len);
                    let mut trial = fam.clone();
                    trial.push(cand);
                    if is_nested(&trial) {
                        fam = trial;
                    }
                }
                (fam, ys.into_iter().map(|y| ratio(y, 2)).collect())
            })
    }

    proptest! {
        #[test]
        fn extension_is_perfect_and_faithful((fam, ys) in nested_family(), fresh in any::<bool>()) {
            let mode = if fresh { RootMode::Fresh } else { RootMode::Hull };
            let p = extend_to_perfect_nested(&fam, &ys, mode).unwrap();
            prop_assert!(p.is_perfect());
            prop_assert!(p.prefix_matches_membership(&fam, &ys));
            prop_assert!(p.point_labels.iter().all(|l| l.len() + 1 == p.depth));
            for (i, l) in fam.iter().zip(&p.interval_labels) {
                prop_assert_eq!(p.interval(l), Some(i));
                if fresh {
                    prop_assert!(!l.is_empty());
                }
            }
        }

        #[test]
        fn conversion_keeps_membership_and_nesting(
            raw in prop::collection::vec((0i64..20, 0i64..6), 1..10),
            ys in prop::collection::vec(0i64..26, 0..10),
        ) {
            let mut fam: Vec<ClosedInterval> = Vec::new();
            for (lo, len) in raw {
                let mut trial = fam.clone();
                trial.push(civ(lo, lo + len));
                if is_nested_closed(&trial) {
                    fam = trial;
                }
            }
            let ys: Vec<Rational> = ys.into_iter().map(rat).collect();
            let half = closed_to_half_open(&fam, &ys);
            prop_assert!(is_nested(&half));
            for (c, h) in fam.iter().zip(&half) {
                for y in &ys {
                    prop_assert_eq!(&c.lo <= y && y <= &c.hi, h.contains(y));
                }
            }
        }
    }
}
