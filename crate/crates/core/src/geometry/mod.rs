//! Points, closed axis-parallel rectangles and the incidence hypergraph they
//! define, with exact rational coordinates throughout.

mod hasse;
mod nested;
mod realize;
mod svg;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::OrderedHypergraph;

pub use hasse::{dominance_hasse, monochromatic_increasing_path};
pub use nested::{
    closed_crossing_pair, closed_to_half_open, extend_to_perfect_nested, is_nested,
    is_nested_closed, ClosedInterval,
    Interval, PerfectNestedFamily, RootMode,
};
pub use realize::{realize_gcg, realize_hkc, realize_hkc_nested, realize_staged, Realizer, Variant};
pub use svg::{emit_svg, Layout, SvgStyle};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / rat(2)
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(rat(x), rat(y))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Closed box `[x_lo, x_hi] x [y_lo, y_hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

impl Rect {
    pub fn new(x_lo: Rational, x_hi: Rational, y_lo: Rational, y_hi: Rational) -> Result<Self> {
        if x_lo > x_hi || y_lo > y_hi {
            return Err(Error::InvalidParameter("rectangle bounds out of order".into()));
        }
        Ok(Self { x_lo, x_hi, y_lo, y_hi })
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.x_lo <= p.x && p.x <= self.x_hi && self.y_lo <= p.y && p.y <= self.y_hi
    }

    pub fn y_projection(&self) -> ClosedInterval {
        ClosedInterval {
            lo: self.y_lo.clone(),
            hi: self.y_hi.clone(),
        }
    }
}

fn cmp_xy(a: &Point2, b: &Point2) -> Ordering {
    a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y))
}

/// `x`-order equals `y`-order.
pub fn is_ascending(points: &[Point2]) -> bool {
    let mut sorted: Vec<&Point2> = points.iter().collect();
    sorted.sort_by(|a, b| cmp_xy(a, b));
    sorted.windows(2).all(|w| w[0].x < w[1].x && w[0].y < w[1].y)
}

/// Labels sorted by `x`, ties broken by `y`; errors on duplicate points.
pub fn x_order(points: &[Point2]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| cmp_xy(&points[a], &points[b]).then(a.cmp(&b)));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(Error::DuplicatePoints(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(order)
}

/// The incidence hypergraph together with the indices of empty edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub hypergraph: OrderedHypergraph,
    /// Position of each input point in the vertex order.
    pub rank: Vec<usize>,
    pub empty_edges: Vec<usize>,
}

/// Vertices are the points in `x`-order; each rectangle gives the edge of
/// the points it contains (closed containment).
pub fn incidence_hypergraph(points: &[Point2], rects: &[Rect]) -> Result<Incidence> {
    let order = x_order(points)?;
    let mut rank = vec![0usize; points.len()];
    for (r, &p) in order.iter().enumerate() {
        rank[p] = r;
    }
    let sorted: Vec<&Point2> = order.iter().map(|&p| &points[p]).collect();
    let mut edges = Vec::with_capacity(rects.len());
    let mut empty_edges = Vec::new();
    for (e, rect) in rects.iter().enumerate() {
        let edge = members_in_sorted(&sorted, rect);
        if edge.is_empty() {
            empty_edges.push(e);
        }
        edges.push(edge);
    }
    Ok(Incidence {
        hypergraph: OrderedHypergraph::new(points.len(), edges)?,
        rank,
        empty_edges,
    })
}

/// Ranks of the points inside `rect`, given the points sorted by `x`.
fn members_in_sorted(sorted: &[&Point2], rect: &Rect) -> Vec<usize> {
    let start = sorted.partition_point(|p| p.x < rect.x_lo);
    let end = sorted.partition_point(|p| p.x <= rect.x_hi);
    (start..end).filter(|&i| rect.contains(sorted[i])).collect()
}

/// Bounding box of the given points, each side pushed halfway to the nearest
/// coordinate of `points` beyond it (or by `1/2` if there is none), so that
/// it contains exactly the points of the bounding box.
pub fn expanded_bounding_box(points: &[Point2], members: &[usize]) -> Result<Rect> {
    let first = *members.first().ok_or(Error::EmptyInput)?;
    let mut lo = points[first].clone();
    let mut hi = points[first].clone();
    for &v in members {
        let p = &points[v];
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    let below = |v: &Rational, coord: fn(&Point2) -> &Rational| {
        points.iter().map(coord).filter(|c| *c < v).max().cloned()
    };
    let above = |v: &Rational, coord: fn(&Point2) -> &Rational| {
        points.iter().map(coord).filter(|c| *c > v).min().cloned()
    };
    let half = ratio(1, 2);
    let push_down = |v: &Rational, n: Option<Rational>| n.map_or_else(|| v - &half, |n| midpoint(v, &n));
    let push_up = |v: &Rational, n: Option<Rational>| n.map_or_else(|| v + &half, |n| midpoint(v, &n));
    Rect::new(
        push_down(&lo.x, below(&lo.x, |p| &p.x)),
        push_up(&hi.x, above(&hi.x, |p| &p.x)),
        push_down(&lo.y, below(&lo.y, |p| &p.y)),
        push_up(&hi.y, above(&hi.y, |p| &p.y)),
    )
}

/// Points and rectangles realizing a hypergraph: `points[v]` is vertex `v`
/// and `rects[e]` is edge `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub points: Vec<Point2>,
    pub rects: Vec<Rect>,
    pub hypergraph: OrderedHypergraph,
}

impl Realization {
    /// Checks that vertex labels follow the `x`-order and that every
    /// rectangle contains exactly its edge.
    pub fn verify(&self) -> Result<()> {
        if self.points.len() != self.hypergraph.n() {
            return Err(Error::VertexCountMismatch(self.points.len(), self.hypergraph.n()));
        }
        if self.rects.len() != self.hypergraph.num_edges() {
            return Err(Error::VerificationFailed(format!(
                "{} rectangles for {} edges",
                self.rects.len(),
                self.hypergraph.num_edges()
            )));
        }
        let inc = incidence_hypergraph(&self.points, &self.rects)?;
        if let Some(v) = (0..self.points.len()).find(|&v| inc.rank[v] != v) {
            return Err(Error::VerificationFailed(format!(
                "vertex {v} is not at x-rank {v}"
            )));
        }
        for (e, (got, want)) in inc
            .hypergraph
            .edges()
            .iter()
            .zip(self.hypergraph.edges())
            .enumerate()
        {
            if got != want {
                return Err(Error::VerificationFailed(format!(
                    "rectangle {e} contains {got:?}, expected {want:?}"
                )));
            }
        }
        Ok(())
    }

    /// Every rectangle's member set is ascending.
    pub fn all_edges_ascending(&self) -> bool {
        self.hypergraph.edges().iter().all(|e| {
            let pts: Vec<Point2> = e.iter().map(|&v| self.points[v].clone()).collect();
            is_ascending(&pts)
        })
    }

    pub fn to_json(&self) -> RealizationJson {
        RealizationJson {
            points: self
                .points
                .iter()
                .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                .collect(),
            rects: self
                .rects
                .iter()
                .map(|r| {
                    [
                        format_rational(&r.x_lo),
                        format_rational(&r.x_hi),
                        format_rational(&r.y_lo),
                        format_rational(&r.y_hi),
                    ]
                })
                .collect(),
            edge_of_rect: (0..self.rects.len()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub points: Vec<[String; 2]>,
    pub rects: Vec<[String; 4]>,
    pub edge_of_rect: Vec<usize>,
}

impl RealizationJson {
    pub fn points(&self) -> Result<Vec<Point2>> {
        self.points
            .iter()
            .map(|[x, y]| Ok(Point2::new(parse_rational(x)?, parse_rational(y)?)))
            .collect()
    }

    /// Rectangles reordered by the edge they realize.
    pub fn rects(&self) -> Result<Vec<Rect>> {
        if self.edge_of_rect.len() != self.rects.len() {
            return Err(Error::Parse("edge_of_rect must match rects".into()));
        }
        let mut out: Vec<Option<Rect>> = vec![None; self.rects.len()];
        for (r, &e) in self.rects.iter().zip(&self.edge_of_rect) {
            let slot = out
                .get_mut(e)
                .ok_or_else(|| Error::Parse(format!("edge_of_rect entry {e} out of range")))?;
            if slot.is_some() {
                return Err(Error::Parse(format!("edge {e} has two rectangles")));
            }
            *slot = Some(Rect::new(
                parse_rational(&r[0])?,
                parse_rational(&r[1])?,
                parse_rational(&r[2])?,
                parse_rational(&r[3])?,
            )?);
        }
        Ok(out.into_iter().map(|r| r.expect("every slot filled")).collect())
    }

    pub fn into_realization(self, hypergraph: OrderedHypergraph) -> Result<Realization> {
        Ok(Realization {
            points: self.points()?,
            rects: self.rects()?,
            hypergraph,
        })
    }
}

/// Applies strictly increasing maps to the `x`- and `y`-coordinates
/// separately and rebuilds every rectangle as the expanded bounding box of
/// its members. Empty edges keep a rectangle far outside the points.
pub fn remap_monotone(
    real: &Realization,
    fx: impl Fn(&Rational) -> Rational,
    fy: impl Fn(&Rational) -> Rational,
) -> Result<Realization> {
    let points: Vec<Point2> = real.points.iter().map(|p| Point2::new(fx(&p.x), fy(&p.y))).collect();
    let far = points
        .iter()
        .map(|p| p.x.clone())
        .max()
        .unwrap_or_else(Rational::zero)
        + rat(1);
    let rects = real
        .hypergraph
        .edges()
        .iter()
        .map(|e| {
            if e.is_empty() {
                Rect::new(far.clone(), far.clone(), far.clone(), far.clone())
            } else {
                expanded_bounding_box(&points, e)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Realization {
        points,
        rects,
        hypergraph: real.hypergraph.clone(),
    })
}
