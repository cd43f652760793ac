//! Two-phase realization of the staged constructions.
//!
//! Phase 1 puts every stage on its own horizontal line. Roots sit on `y = 0`
//! at `x = 1, 2, ...`; when a stage is processed its `r` child stages get
//! the lines `y(S) - i*h/(r+1)` where `h` is the distance to the next lower
//! line (1 if there is none), and each vertex `v` receives its children at
//! `x(w) + i*(x(v)-x(w))/(r+1)`, `w` being the point immediately left of `v`
//! at that moment and `i` the index of the child stage. Children therefore
//! form a descending set just left of their parent.
//!
//! Phase 2 replaces every block by a copy of the template's realization:
//! `x` is kept, `y` is mapped affinely into a private sub-band of the stage's
//! band `[y(S) - gap/8, y(S) + gap/8]`, where `gap` is the distance to the
//! nearest other line.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{midpoint, rat, ratio, Point2, Rational, Realization, Rect};
use crate::construction::StagedHypergraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Every rectangle is the expanded bounding box of its members.
    #[default]
    Plain,
    /// Rectangles are chosen so that their `y`-projections form a nested
    /// family; all path rectangles share the same top.
    Nested,
}

const NIL: usize = usize::MAX;

/// Computes the points of a realization once and produces rectangles on
/// demand, so that very large instances can be spot-checked.
#[derive(Debug)]
pub struct Realizer<'a> {
    s: &'a StagedHypergraph,
    variant: Variant,
    points: Vec<Point2>,
    stage_of: Vec<u32>,
    line: Vec<Rational>,
    gap: Vec<Rational>,
    lines_top_down: Vec<usize>,
    y_order: Vec<u32>,
    y_rank: Vec<u32>,
    template: Option<Realization>,
    /// `(lo, width)` of the template's `y`-extent.
    template_extent: Option<(Rational, Rational)>,
}

impl<'a> Realizer<'a> {
    pub fn new(s: &'a StagedHypergraph, variant: Variant) -> Result<Self> {
        let n = s.n();
        let mut stage_of = vec![0u32; n];
        for sid in 0..s.stages().len() {
            for &v in s.stage_labels(sid) {
                stage_of[v] = sid as u32;
            }
        }
        let mut me = Self {
            s,
            variant,
            points: Vec::new(),
            stage_of,
            line: Vec::new(),
            gap: Vec::new(),
            lines_top_down: vec![0],
            y_order: Vec::new(),
            y_rank: Vec::new(),
            template: None,
            template_extent: None,
        };
        if s.is_base_case() {
            me.points = (0..n as i64).map(|i| Point2::int(i, i)).collect();
            me.line = vec![rat(0)];
            me.gap = vec![rat(1)];
        } else {
            let template = realize_staged(s.template().expect("not a base case"), variant)?;
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            let ys = template
                .points
                .iter()
                .map(|p| &p.y)
                .chain(template.rects.iter().flat_map(|r| [&r.y_lo, &r.y_hi]));
            for y in ys {
                if lo.as_ref().is_none_or(|l| y < l) {
                    lo = Some(y.clone());
                }
                if hi.as_ref().is_none_or(|h| y > h) {
                    hi = Some(y.clone());
                }
            }
            let lo = lo.ok_or(Error::EmptyInput)?;
            let width = hi.expect("set with lo") - &lo;
            if width <= rat(0) {
                return Err(Error::VerificationFailed("template has zero height".into()));
            }
            me.template_extent = Some((lo, width));
            me.template = Some(template);
            let xs = me.phase_one();
            me.phase_two(xs);
        }
        me.sort_by_y();
        Ok(me)
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn staged(&self) -> &StagedHypergraph {
        self.s
    }

    /// Line of each stage in Phase 1.
    pub fn stage_lines(&self) -> &[Rational] {
        &self.line
    }

    /// Places all stages on lines and returns Phase-1 `x`-coordinates.
    fn phase_one(&mut self) -> Vec<Rational> {
        let s = self.s;
        let n = s.n();
        let stages = s.stages();

        // children of each label in child-stage order, with the 1-based
        // index of their stage among the siblings
        let mut start = vec![0usize; n + 1];
        for v in 0..n {
            if let Some(p) = s.parent(v) {
                start[p + 1] += 1;
            }
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut kids = vec![(0usize, 0u32); start[n]];
        for st in stages {
            for (i, cs) in st.children.clone().enumerate() {
                for &u in s.stage_labels(cs) {
                    let p = s.parent(u).expect("child stage vertex has a parent");
                    kids[fill[p]] = (u, i as u32 + 1);
                    fill[p] += 1;
                }
            }
        }

        let mut x: Vec<Rational> = vec![rat(0); n];
        let mut prev = vec![NIL; n];
        let roots = s.stage_labels(0);
        for (i, &r) in roots.iter().enumerate() {
            x[r] = rat(i as i64 + 1);
            prev[r] = if i == 0 { NIL } else { roots[i - 1] };
        }
        let mut line = vec![rat(0); stages.len()];
        let mut below = vec![NIL; stages.len()];
        for (sid, st) in stages.iter().enumerate() {
            if st.children.is_empty() {
                continue;
            }
            let r = st.children.len();
            let denom = rat(r as i64 + 1);
            let h = if below[sid] == NIL {
                rat(1)
            } else {
                &line[sid] - &line[below[sid]]
            };
            let step = h / &denom;
            let mut last = sid;
            for (i, cs) in st.children.clone().enumerate() {
                line[cs] = &line[sid] - &step * rat(i as i64 + 1);
                below[cs] = below[last];
                below[last] = cs;
                last = cs;
            }
            for &v in s.stage_labels(sid) {
                let w = prev[v];
                let xw = if w == NIL { &x[v] - rat(1) } else { x[w].clone() };
                let unit = (&x[v] - &xw) / &denom;
                for &(ch, i) in &kids[start[v]..start[v + 1]] {
                    x[ch] = &xw + &unit * rat(i as i64);
                    prev[ch] = prev[v];
                    prev[v] = ch;
                }
            }
        }

        // distance to the nearest other line
        let mut gap = vec![rat(1); stages.len()];
        let mut cur = 0;
        let mut top_down = vec![0];
        while below[cur] != NIL {
            let next = below[cur];
            let d = &line[cur] - &line[next];
            if cur == 0 || d < gap[cur] {
                gap[cur] = d.clone();
            }
            gap[next] = d;
            cur = next;
            top_down.push(cur);
        }
        self.lines_top_down = top_down;
        self.line = line;
        self.gap = gap;
        x
    }

    /// Lower end and height of the sub-band of block `b` of `stage`, with a
    /// quarter of the sub-band left free on each side.
    fn block_window(&self, stage: usize, b: usize) -> (Rational, Rational) {
        let st = &self.s.stages()[stage];
        let band = &self.gap[stage] / rat(4);
        let band_lo = &self.line[stage] - &self.gap[stage] / rat(8);
        let h = band / rat(st.blocks() as i64);
        let lo = band_lo + &h * rat(b as i64) + &h / rat(4);
        (lo, h / rat(2))
    }

    /// Image of a template `y`-value inside block `b` of `stage`.
    fn copy_y(&self, stage: usize, b: usize, template_y: &Rational) -> Rational {
        let (lo, w) = self.block_window(stage, b);
        let (t_lo, t_w) = self.template_extent.as_ref().expect("template present");
        lo + (template_y - t_lo) / t_w * w
    }

    fn phase_two(&mut self, xs: Vec<Rational>) {
        let s = self.s;
        let mut ys: Vec<Rational> = vec![rat(0); s.n()];
        let template = self.template.as_ref().expect("template present");
        let (t_lo, t_w) = self.template_extent.as_ref().expect("template present");
        let unit: Vec<Rational> = template.points.iter().map(|p| (&p.y - t_lo) / t_w).collect();
        let mut t_order: Vec<usize> = (0..unit.len()).collect();
        t_order.sort_by(|&a, &b| unit[a].cmp(&unit[b]));

        // bands are disjoint and ordered like their lines, so the y-order
        // falls out of the construction; sort_by_y confirms it
        let mut y_order = Vec::with_capacity(s.n());
        for &sid in self.lines_top_down.iter().rev() {
            let st = &s.stages()[sid];
            match st.block_size {
                Some(_) => {
                    for b in 0..st.blocks() {
                        let (lo, w) = self.block_window(sid, b);
                        let block = s.block_labels(sid, b);
                        for (j, &v) in block.iter().enumerate() {
                            ys[v] = &lo + &unit[j] * &w;
                        }
                        y_order.extend(t_order.iter().map(|&j| block[j] as u32));
                    }
                }
                None => {
                    let band_lo = &self.line[sid] - &self.gap[sid] / rat(8);
                    let step = &self.gap[sid] / rat(4) / rat(st.len() as i64 + 1);
                    for (j, &v) in s.stage_labels(sid).iter().enumerate() {
                        ys[v] = &band_lo + &step * rat(j as i64 + 1);
                        y_order.push(v as u32);
                    }
                }
            }
        }
        self.points = xs.into_iter().zip(ys).map(|(x, y)| Point2::new(x, y)).collect();
        self.y_order = y_order;
    }

    /// Uses the order prepared by Phase 2 when it checks out, sorting
    /// otherwise.
    fn sort_by_y(&mut self) {
        let p = &self.points;
        let prepared = self.y_order.len() == p.len()
            && self
                .y_order
                .windows(2)
                .all(|w| p[w[0] as usize].y < p[w[1] as usize].y);
        if !prepared {
            let mut order: Vec<u32> = (0..p.len() as u32).collect();
            order.sort_by(|&a, &b| p[a as usize].y.cmp(&p[b as usize].y));
            self.y_order = order;
        }
        let mut rank = vec![0u32; self.y_order.len()];
        for (r, &v) in self.y_order.iter().enumerate() {
            rank[v as usize] = r as u32;
        }
        self.y_rank = rank;
    }

    fn x_range(&self, lo: usize, hi: usize) -> (Rational, Rational) {
        let p = &self.points;
        let half = ratio(1, 2);
        let x_lo = if lo == 0 {
            &p[0].x - &half
        } else {
            midpoint(&p[lo - 1].x, &p[lo].x)
        };
        let x_hi = if hi + 1 == p.len() {
            &p[hi].x + &half
        } else {
            midpoint(&p[hi].x, &p[hi + 1].x)
        };
        (x_lo, x_hi)
    }

    fn y_range(&self, lo: usize, hi: usize) -> (Rational, Rational) {
        let p = &self.points;
        let half = ratio(1, 2);
        let (rl, rh) = (self.y_rank[lo] as usize, self.y_rank[hi] as usize);
        let y_lo = if rl == 0 {
            &p[lo].y - &half
        } else {
            midpoint(&p[self.y_order[rl - 1] as usize].y, &p[lo].y)
        };
        let y_hi = if rh + 1 == p.len() {
            &p[hi].y + &half
        } else {
            midpoint(&p[hi].y, &p[self.y_order[rh + 1] as usize].y)
        };
        (y_lo, y_hi)
    }

    /// The rectangle realizing edge `e`.
    pub fn rect(&self, e: usize) -> Result<Rect> {
        let s = self.s;
        let members = s.base().edge(e);
        let (&first, &last) = members.first().zip(members.last()).ok_or(Error::EmptyInput)?;
        let (x_lo, x_hi) = self.x_range(first, last);
        if self.variant == Variant::Plain || s.is_base_case() {
            let lowest = members.iter().min_by_key(|&&v| self.y_rank[v]).expect("nonempty");
            let highest = members.iter().max_by_key(|&&v| self.y_rank[v]).expect("nonempty");
            let (y_lo, y_hi) = self.y_range(*lowest, *highest);
            return Rect::new(x_lo, x_hi, y_lo, y_hi);
        }
        if s.path_edges().contains(&e) {
            let v = s.path_vertex(e);
            let sv = self.stage_of[v] as usize;
            let y_lo = &self.line[sv] - &self.gap[sv] / rat(4);
            let y_hi = &self.line[0] + &self.gap[0] / rat(4);
            return Rect::new(x_lo, x_hi, y_lo, y_hi);
        }
        let tag = &s.transversal_edges()[e - s.path_edges().end];
        let t = &self.template.as_ref().expect("template present").rects[tag.copy_edge];
        let y_lo = self.copy_y(tag.stage, tag.block, &t.y_lo);
        let y_hi = self.copy_y(tag.stage, tag.block, &t.y_hi);
        Rect::new(x_lo, x_hi, y_lo, y_hi)
    }

    /// Labels inside `rect`. Binary search on the `x`-index (labels are in
    /// `x`-order) and on the `y`-index turns both sides into rank ranges.
    pub fn members(&self, rect: &Rect) -> Vec<usize> {
        let p = &self.points;
        let start = p.partition_point(|q| q.x < rect.x_lo);
        let end = p.partition_point(|q| q.x <= rect.x_hi);
        let y_of = |v: &u32| &p[*v as usize].y;
        let lo = self.y_order.partition_point(|v| y_of(v) < &rect.y_lo) as u32;
        let hi = self.y_order.partition_point(|v| y_of(v) <= &rect.y_hi) as u32;
        (start..end)
            .filter(|&v| (lo..hi).contains(&self.y_rank[v]))
            .collect()
    }

    pub fn verify_edge(&self, e: usize) -> Result<()> {
        let got = self.members(&self.rect(e)?);
        let want = self.s.base().edge(e);
        if got != want {
            return Err(Error::VerificationFailed(format!(
                "rectangle {e} contains {got:?}, expected {want:?}"
            )));
        }
        Ok(())
    }

    /// Verifies a seeded sample of `count` edges (all edges if there are
    /// fewer) and returns the sampled edge indices.
    pub fn verify_sample(&self, count: usize, seed: u64) -> Result<Vec<usize>> {
        let total = self.s.base().num_edges();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = sample(&mut rng, total, count.min(total)).into_vec();
        edges.sort_unstable();
        for &e in &edges {
            self.verify_edge(e)?;
        }
        Ok(edges)
    }

    /// Labels must be the `x`-order; checked in linear time.
    pub fn verify_x_order(&self) -> Result<()> {
        match self.points.windows(2).position(|w| w[0].x >= w[1].x) {
            Some(v) => Err(Error::VerificationFailed(format!(
                "x-order broken between vertices {v} and {}",
                v + 1
            ))),
            None => Ok(()),
        }
    }

    /// Builds every rectangle and runs the full incidence check.
    pub fn finish(self) -> Result<Realization> {
        let rects = (0..self.s.base().num_edges())
            .map(|e| self.rect(e))
            .collect::<Result<Vec<_>>>()?;
        let real = Realization {
            points: self.points,
            rects,
            hypergraph: self.s.base().clone(),
        };
        real.verify()?;
        Ok(real)
    }

    /// As [`Realizer::finish`] but checks the `x`-order and a seeded sample
    /// of `count` rectangles instead of the full incidence.
    pub fn finish_sampled(self, count: usize, seed: u64) -> Result<Realization> {
        self.verify_x_order()?;
        self.verify_sample(count, seed)?;
        let rects = (0..self.s.base().num_edges())
            .map(|e| self.rect(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Realization {
            points: self.points,
            rects,
            hypergraph: self.s.base().clone(),
        })
    }
}

/// Realizes `H_k^c` or `G^c(g)` and verifies the result.
pub fn realize_staged(s: &StagedHypergraph, variant: Variant) -> Result<Realization> {
    Realizer::new(s, variant)?.finish()
}

pub fn realize_hkc(s: &StagedHypergraph) -> Result<Realization> {
    realize_staged(s, Variant::Plain)
}

pub fn realize_hkc_nested(s: &StagedHypergraph) -> Result<Realization> {
    realize_staged(s, Variant::Nested)
}

pub fn realize_gcg(s: &StagedHypergraph) -> Result<Realization> {
    realize_staged(s, Variant::Plain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_gcg, build_hkc, Limits, OddCycleProvider};
    use crate::geometry::{incidence_hypergraph, is_ascending, is_nested_closed};
    use crate::hypergraph::{edge_multiset_equal, hypergraph_girth};

    #[test]
    fn base_cases() {
        for k in [2, 3] {
            let h = build_hkc(k, 1, Limits::default()).unwrap();
            let r = realize_hkc(&h).unwrap();
            assert_eq!(r.points.len(), k);
            assert_eq!(r.rects.len(), 1);
            assert!(is_ascending(&r.points));
        }
        let k2 = build_gcg(1, 5, &mut OddCycleProvider, Limits::default()).unwrap();
        let r = realize_gcg(&k2).unwrap();
        assert_eq!(r.points.len(), 2);
        assert!(is_ascending(&r.points));
    }

    #[test]
    fn h22_plain_and_nested() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        for variant in [Variant::Plain, Variant::Nested] {
            let r = realize_staged(&h, variant).unwrap();
            assert_eq!(r.points.len(), 12);
            assert_eq!(r.rects.len(), 14);
            let inc = incidence_hypergraph(&r.points, &r.rects).unwrap();
            assert!(edge_multiset_equal(&inc.hypergraph, h.base()).unwrap());
            assert!(r.all_edges_ascending());
            assert!(r.hypergraph.edges().iter().all(|e| e.len() == 2));
            if variant == Variant::Nested {
                let proj: Vec<_> = r.rects.iter().map(|r| r.y_projection()).collect();
                assert!(is_nested_closed(&proj));
                let tops: Vec<_> = h.path_edges().map(|e| r.rects[e].y_hi.clone()).collect();
                assert!(tops.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn distinct_coordinates() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        let r = realize_hkc(&h).unwrap();
        let mut ys: Vec<_> = r.points.iter().map(|p| p.y.clone()).collect();
        ys.sort();
        ys.dedup();
        assert_eq!(ys.len(), 12);
    }

    #[test]
    fn other_small_instances() {
        for (k, c) in [(1, 2), (1, 4), (3, 1), (4, 1)] {
            let h = build_hkc(k, c, Limits::default()).unwrap();
            for variant in [Variant::Plain, Variant::Nested] {
                let r = realize_staged(&h, variant).unwrap();
                assert!(r.all_edges_ascending(), "k={k} c={c}");
                if variant == Variant::Nested {
                    let proj: Vec<_> = r.rects.iter().map(|r| r.y_projection()).collect();
                    assert!(is_nested_closed(&proj), "k={k} c={c}");
                }
            }
        }
    }

    #[test]
    fn girth_survives_realization() {
        for g in [5, 7, 9] {
            let gg = build_gcg(2, g, &mut OddCycleProvider, Limits::default()).unwrap();
            let r = realize_gcg(&gg).unwrap();
            let inc = incidence_hypergraph(&r.points, &r.rects).unwrap();
            assert!(hypergraph_girth(&inc.hypergraph).girth.at_least(g));
            assert_eq!(inc.hypergraph.n(), 3 * g);
        }
    }

    #[test]
    fn sampled_verification_matches_full() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        let rz = Realizer::new(&h, Variant::Nested).unwrap();
        rz.verify_x_order().unwrap();
        assert_eq!(rz.verify_sample(100, 1).unwrap().len(), 14);
        assert_eq!(rz.verify_sample(5, 1).unwrap(), rz.verify_sample(5, 1).unwrap());
    }
}
