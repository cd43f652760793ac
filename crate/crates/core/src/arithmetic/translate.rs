//! Rectangles over points with nested y-projections, rewritten as arithmetic
//! progressions over an integer set `V` with the same incidence hypergraph.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sequence::{greedy_difference_sequence, DifferenceSequence, DifferenceSet};
use super::tree::{build_residue_tree, ResidueTree};
use super::{ap_incidence_hypergraph, FiniteAP, FiniteApJson};
use crate::error::{Error, Result};
use crate::geometry::{
    closed_to_half_open, extend_to_perfect_nested, incidence_hypergraph, closed_crossing_pair,
    ClosedInterval, Incidence, PerfectNestedFamily, Rational, Realization, RootMode,
};
use crate::hypergraph::OrderedHypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApEntry {
    pub ap: FiniteAP,
    /// Index of the rectangle (edge) this progression replaces.
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct APRealization {
    pub offset: BigInt,
    /// `v_i` for the points in increasing `x` order.
    pub v: Vec<BigInt>,
    pub aps: Vec<ApEntry>,
    /// Rectangles containing no point; no progression is emitted for them.
    pub empty_edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApEntryJson {
    pub start: String,
    pub difference: String,
    pub length: serde_json::Value,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct APRealizationJson {
    pub offset: serde_json::Value,
    #[serde(rename = "V")]
    pub v: Vec<String>,
    pub aps: Vec<ApEntryJson>,
}

impl APRealization {
    /// The hypergraph on `V` with edge `e` equal to the progression for
    /// rectangle `e` intersected with `V` (empty for empty rectangles).
    pub fn incidence(&self, edges: usize) -> Result<OrderedHypergraph> {
        let mut aps: Vec<Option<FiniteAP>> = vec![None; edges];
        for entry in &self.aps {
            let slot = aps.get_mut(entry.edge).ok_or_else(|| {
                Error::InvalidParameter(format!("progression for missing edge {}", entry.edge))
            })?;
            *slot = Some(entry.ap.clone());
        }
        let present: Vec<FiniteAP> = aps.iter().flatten().cloned().collect();
        let inc = ap_incidence_hypergraph(&self.v, &present)?;
        let mut got = inc.hypergraph.edges().iter();
        let edges = aps
            .iter()
            .map(|a| match a {
                Some(_) => got.next().cloned().unwrap_or_default(),
                None => Vec::new(),
            })
            .collect();
        OrderedHypergraph::new(self.v.len(), edges)
    }

    pub fn to_json(&self) -> APRealizationJson {
        APRealizationJson {
            offset: super::int_to_json(&self.offset),
            v: self.v.iter().map(BigInt::to_string).collect(),
            aps: self
                .aps
                .iter()
                .map(|e| ApEntryJson {
                    start: e.ap.start.to_string(),
                    difference: e.ap.difference.to_string(),
                    length: super::int_to_json(&e.ap.length),
                    edge: e.edge,
                })
                .collect(),
        }
    }
}

impl APRealizationJson {
    pub fn into_realization(self) -> Result<APRealization> {
        let parse = |s: &str| -> Result<BigInt> {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
        };
        let v = self.v.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
        let aps = self
            .aps
            .iter()
            .map(|e| {
                Ok(ApEntry {
                    ap: FiniteAP::new(
                        parse(&e.start)?,
                        parse(&e.difference)?,
                        super::int_from_json(&e.length)?,
                    )?,
                    edge: e.edge,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(APRealization {
            offset: super::int_from_json(&self.offset)?,
            v,
            aps,
            empty_edges: Vec::new(),
        })
    }
}

impl From<&FiniteAP> for FiniteApJson {
    fn from(ap: &FiniteAP) -> Self {
        FiniteApJson {
            start: ap.start.to_string(),
            difference: ap.difference.to_string(),
            length: super::int_to_json(&ap.length),
        }
    }
}

/// Output of the general translation, with the intermediate objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DTranslation {
    pub realization: APRealization,
    pub sequence: DifferenceSequence,
    pub tree: ResidueTree,
    pub family: PerfectNestedFamily,
}

struct Prepared {
    incidence: Incidence,
    /// Point indices in increasing `x`.
    by_x: Vec<usize>,
    family: PerfectNestedFamily,
}

fn prepare(real: &Realization, mode: RootMode) -> Result<Prepared> {
    let closed: Vec<ClosedInterval> = real.rects.iter().map(|r| r.y_projection()).collect();
    if let Some((a, b)) = closed_crossing_pair(&closed) {
        return Err(Error::NotNested(a, b));
    }
    let ys: Vec<Rational> = real.points.iter().map(|p| p.y.clone()).collect();
    let intervals = closed_to_half_open(&closed, &ys);
    let family = extend_to_perfect_nested(&intervals, &ys, mode)?;
    let incidence = incidence_hypergraph(&real.points, &real.rects)?;
    let mut by_x = vec![0; real.points.len()];
    for (p, &r) in incidence.rank.iter().enumerate() {
        by_x[r] = p;
    }
    Ok(Prepared {
        incidence,
        by_x,
        family,
    })
}

/// One progression per nonempty rectangle: every member has the same
/// residue modulo `d`, and the progression runs from the first member to
/// the last.
fn emit(
    prep: &Prepared,
    v: Vec<BigInt>,
    difference_of: impl Fn(&str) -> Result<BigInt>,
) -> Result<APRealization> {
    let mut aps = Vec::new();
    for (e, members) in prep.incidence.hypergraph.edges().iter().enumerate() {
        let (Some(&first), Some(&last)) = (members.first(), members.last()) else {
            continue;
        };
        let d = difference_of(&prep.family.interval_labels[e])?;
        let span = &v[last] - &v[first];
        let length = span / &d + BigInt::one();
        aps.push(ApEntry {
            ap: FiniteAP::new(v[first].clone(), d, length)?,
            edge: e,
        });
    }
    let out = APRealization {
        offset: BigInt::zero(),
        v,
        aps,
        empty_edges: prep.incidence.empty_edges.clone(),
    };
    let got = out.incidence(prep.incidence.hypergraph.num_edges())?;
    if got.edges() != prep.incidence.hypergraph.edges() {
        let e = got
            .edges()
            .iter()
            .zip(prep.incidence.hypergraph.edges())
            .position(|(a, b)| a != b)
            .unwrap_or(0);
        return Err(Error::VerificationFailed(format!(
            "progression for edge {e} captures a different set"
        )));
    }
    Ok(out)
}

fn leaf_label(prep: &Prepared, rank: usize) -> &str {
    &prep.family.point_labels[prep.by_x[rank]]
}

/// Differences `2^r` for a rectangle labeled `q_1..q_r` and
/// `v_i = sum s_j 2^(j-1) + i * 2^(t-1)` for the point with leaf `s`.
pub fn rects_to_pow2_aps(real: &Realization) -> Result<APRealization> {
    let prep = prepare(real, RootMode::Hull)?;
    let t = prep.family.depth;
    let binary_value = |s: &str| -> BigInt {
        s.bytes()
            .enumerate()
            .filter(|&(_, b)| b == b'1')
            .fold(BigInt::zero(), |acc, (j, _)| acc + (BigInt::one() << j))
    };
    let v: Vec<BigInt> = (0..real.points.len())
        .map(|rank| binary_value(leaf_label(&prep, rank)) + (BigInt::from(rank + 1) << (t - 1)))
        .collect();
    emit(&prep, v, |label| Ok(BigInt::one() << label.len()))
}

/// The same with differences drawn from `set`: the greedy growth sequence
/// `d_1, .., d_(t-1)`, a residue tree over it, `v_i = f_s + i * L_(t-1)`,
/// and difference `d_r` for a rectangle labeled `q_1..q_r`.
pub fn rects_to_d_aps(real: &Realization, set: &dyn DifferenceSet) -> Result<DTranslation> {
    let prep = prepare(real, RootMode::Fresh)?;
    let levels = prep.family.depth - 1;
    let sequence = greedy_difference_sequence(set, levels)?;
    let tree = build_residue_tree(&sequence, levels)?;
    let l = sequence.lcm_upto(levels);
    let v: Vec<BigInt> = (0..real.points.len())
        .map(|rank| &tree.leaf_solutions[leaf_label(&prep, rank)] + &l * BigInt::from(rank + 1))
        .collect();
    let realization = emit(&prep, v, |label| {
        if label.is_empty() {
            return Err(Error::VerificationFailed("rectangle labeled by the root".into()));
        }
        Ok(sequence.terms[label.len() - 1].clone())
    })?;
    for entry in &realization.aps {
        if !set.contains(&entry.ap.difference)? {
            return Err(Error::VerificationFailed(format!(
                "difference {} is not in {}",
                entry.ap.difference,
                set.name()
            )));
        }
    }
    Ok(DTranslation {
        realization,
        sequence,
        tree,
        family: prep.family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::sequence::{Powers, Primes};
    use crate::construction::{build_hkc, Limits};
    use crate::geometry::{ratio, realize_hkc_nested, Point2, Rect};

    fn h22_nested() -> Realization {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        realize_hkc_nested(&h).unwrap()
    }

    fn check(real: &Realization, out: &APRealization) {
        assert!(out.v.windows(2).all(|w| w[0] < w[1]));
        let got = out.incidence(real.hypergraph.num_edges()).unwrap();
        assert_eq!(got, real.hypergraph);
    }

    #[test]
    fn h22_pow2() {
        let real = h22_nested();
        let out = rects_to_pow2_aps(&real).unwrap();
        assert_eq!(out.aps.len(), real.hypergraph.num_edges());
        // 2^0 is allowed here: a rectangle labeled by the root captures every point in its window
        let pow2 = |d: &BigInt| d.is_one() || Powers { base: 2 }.contains(d).unwrap();
        assert!(out.aps.iter().all(|e| pow2(&e.ap.difference)));
        check(&real, &out);
    }

    #[test]
    fn h22_general() {
        let real = h22_nested();
        for set in [&Primes as &dyn DifferenceSet, &Powers { base: 3 }, &Powers { base: 2 }] {
            let tr = rects_to_d_aps(&real, set).unwrap();
            assert!(tr.tree.residues_distinct_per_depth());
            assert!(tr.realization.aps.iter().all(|e| set.contains(&e.ap.difference).unwrap()));
            check(&real, &tr.realization);
        }
    }

    #[test]
    fn single_rectangle_over_two_points() {
        let points = vec![Point2::int(1, 1), Point2::int(2, 2)];
        let rect = Rect::new(ratio(0, 1), ratio(3, 1), ratio(0, 1), ratio(3, 1)).unwrap();
        let h = OrderedHypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let real = Realization { points, rects: vec![rect], hypergraph: h };
        let out = rects_to_pow2_aps(&real).unwrap();
        assert_eq!(out.aps[0].ap.difference, BigInt::one());
        check(&real, &out);
    }

    #[test]
    fn empty_rectangle_is_flagged() {
        let points = vec![Point2::int(1, 1), Point2::int(2, 2)];
        let rects = vec![
            Rect::new(ratio(0, 1), ratio(3, 1), ratio(0, 1), ratio(3, 1)).unwrap(),
            Rect::new(ratio(5, 1), ratio(6, 1), ratio(1, 1), ratio(2, 1)).unwrap(),
        ];
        let h = OrderedHypergraph::new(2, vec![vec![0, 1], vec![]]).unwrap();
        let real = Realization { points, rects, hypergraph: h };
        let out = rects_to_pow2_aps(&real).unwrap();
        assert_eq!(out.empty_edges, vec![1]);
        assert_eq!(out.aps.len(), 1);
    }

    #[test]
    fn crossing_projections_rejected() {
        let points = vec![Point2::int(1, 1), Point2::int(2, 3)];
        let rects = vec![
            Rect::new(ratio(0, 1), ratio(3, 1), ratio(0, 1), ratio(2, 1)).unwrap(),
            Rect::new(ratio(0, 1), ratio(3, 1), ratio(1, 1), ratio(4, 1)).unwrap(),
        ];
        let h = OrderedHypergraph::new(2, vec![vec![0], vec![1]]).unwrap();
        let real = Realization { points, rects, hypergraph: h };
        assert!(matches!(rects_to_pow2_aps(&real), Err(Error::NotNested(_, _))));
    }

    #[test]
    fn json_round_trip() {
        let real = h22_nested();
        let out = rects_to_pow2_aps(&real).unwrap();
        let text = serde_json::to_string(&out.to_json()).unwrap();
        let back: APRealizationJson = serde_json::from_str(&text).unwrap();
        let back = back.into_realization().unwrap();
        assert_eq!(back.v, out.v);
        assert_eq!(back.aps, out.aps);
    }
}
