//! Explicit constructions: the k-ary tree hypergraph, the staged
//! hypergraphs `H_k^c`, and the large-girth graphs `G^c(g)`.
//!
//! Both staged families share one representation. Vertices are created
//! stage by stage (level-major, children of a stage in the order they are
//! spawned); the *label* of a vertex is its rank in the left-to-right order
//! of the geometric realization, and every edge list uses labels. Stages
//! therefore refer to contiguous ranges of creation positions, which
//! [`StagedHypergraph::creation_order`] maps to labels.

mod finder;
mod fm;
mod gcg;
mod hkc;
mod kary;
mod provider;

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::OrderedHypergraph;

pub use finder::{find_monochromatic_edge, find_monochromatic_edge_tracking, MonochromaticEdge};
pub use fm::{f_m_subsets, fm_index, FmSubsets};
pub use gcg::build_gcg;
pub use hkc::{build_hkc, predicted_hkc_vertices};
pub use kary::build_kary_tree_hypergraph;
pub use provider::{
    odd_cycle_provider, random_search_provider, AuxiliaryHypergraph, AuxiliaryProvider,
    AuxiliaryRequest, Certificate, FixedProvider, OddCycleProvider, RandomSearchConfig,
    RandomSearchProvider,
};

/// Default cap on constructed vertex counts.
pub const DEFAULT_MAX_VERTICES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, predicted: Option<u128>) -> Result<()> {
        match predicted {
            Some(p) if p <= self.max_vertices as u128 => Ok(()),
            Some(p) => Err(Error::ResourceLimit {
                predicted: p.to_string(),
                limit: self.max_vertices,
            }),
            None => Err(Error::ResourceLimit {
                predicted: "more than 2^128".into(),
                limit: self.max_vertices,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StagedKind {
    Hkc,
    Gcg,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub level: usize,
    /// Creation positions of the stage's vertices, in stage order.
    pub positions: Range<usize>,
    pub parent_stage: Option<usize>,
    /// Ids of the child stages, contiguous.
    pub children: Range<usize>,
    /// Size of the blocks carrying template copies; `None` when the stage
    /// has no internal edges.
    pub block_size: Option<usize>,
    /// Edge index of the first copy edge placed in this stage.
    pub first_transversal: usize,
}

impl Stage {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn blocks(&self) -> usize {
        self.block_size.map_or(0, |m| self.len() / m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalTag {
    pub edge: usize,
    pub stage: usize,
    pub block: usize,
    /// Index of the edge inside the embedded template copy.
    pub copy_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagedHypergraph {
    kind: StagedKind,
    uniformity: usize,
    c: usize,
    girth: Option<usize>,
    depth: usize,
    base: OrderedHypergraph,
    creation: Vec<usize>,
    parents: Vec<Option<usize>>,
    roots: Vec<usize>,
    stages: Vec<Stage>,
    path_edges: Range<usize>,
    transversal: Vec<TransversalTag>,
    template: Option<Box<StagedHypergraph>>,
    auxiliary: Option<AuxiliaryHypergraph>,
}

impl StagedHypergraph {
    /// `k` ordered vertices and one edge containing all of them, carried as a
    /// single level-0 stage.
    pub(crate) fn single_edge(kind: StagedKind, k: usize, girth: Option<usize>) -> Self {
        let base = OrderedHypergraph::new(k, vec![(0..k).collect()]).expect("valid single edge");
        Self {
            kind,
            uniformity: k,
            c: 1,
            girth,
            depth: 1,
            base,
            creation: (0..k).collect(),
            parents: vec![None; k],
            roots: (0..k).collect(),
            stages: vec![Stage {
                level: 0,
                positions: 0..k,
                parent_stage: None,
                children: 1..1,
                block_size: None,
                first_transversal: 0,
            }],
            path_edges: 0..0,
            transversal: Vec::new(),
            template: None,
            auxiliary: None,
        }
    }

    pub fn kind(&self) -> StagedKind {
        self.kind
    }

    /// Edge size (`k` for `H_k^c`, 2 for `G^c(g)`).
    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn girth_parameter(&self) -> Option<usize> {
        self.girth
    }

    /// Number of stage levels.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Vertex count of the embedded template (0 for the base case).
    pub fn m(&self) -> usize {
        self.template.as_ref().map_or(0, |t| t.n())
    }

    pub fn base(&self) -> &OrderedHypergraph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Creation position to label.
    pub fn creation_order(&self) -> &[usize] {
        &self.creation
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parents[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parents
    }

    pub fn root(&self, v: usize) -> usize {
        self.roots[v]
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stage_labels(&self, stage: usize) -> &[usize] {
        &self.creation[self.stages[stage].positions.clone()]
    }

    /// Labels of block `b` of `stage`, in stage order.
    pub fn block_labels(&self, stage: usize, b: usize) -> &[usize] {
        let st = &self.stages[stage];
        let m = st.block_size.expect("stage has blocks");
        let start = st.positions.start + b * m;
        &self.creation[start..start + m]
    }

    pub fn is_base_case(&self) -> bool {
        self.template.is_none()
    }

    /// Edge indices of the path edges (parent-child edges for `G^c(g)`).
    pub fn path_edges(&self) -> Range<usize> {
        self.path_edges.clone()
    }

    /// Tags of the copy edges, aligned with edge indices after the path edges.
    pub fn transversal_edges(&self) -> &[TransversalTag] {
        &self.transversal
    }

    pub fn template(&self) -> Option<&StagedHypergraph> {
        self.template.as_deref()
    }

    pub fn auxiliary(&self) -> Option<&AuxiliaryHypergraph> {
        self.auxiliary.as_ref()
    }

    /// Creation position of the first vertex on the deepest level.
    pub(crate) fn first_leaf_position(&self) -> usize {
        self.n() - self.path_edges.len()
    }

    /// Bottom vertex of the given path edge.
    pub fn path_vertex(&self, edge: usize) -> usize {
        assert!(self.path_edges.contains(&edge));
        self.creation[self.first_leaf_position() + edge - self.path_edges.start]
    }

    /// `path(v)`: `v`, its parent, ..., its root.
    pub fn path(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parents[cur] {
            out.push(p);
            cur = p;
        }
        out
    }
}

/// Shared assembly of a staged hypergraph.
///
/// `spawn(level, positions)` returns the child stages of a stage, each given
/// as the creation positions of the parents of its vertices. Stages are
/// expanded breadth-first. `block_size(level)` names the block size carrying
/// template copies at that level.
#[allow(clippy::too_many_arguments)]
pub(crate) fn assemble(
    kind: StagedKind,
    uniformity: usize,
    c: usize,
    girth: Option<usize>,
    template: StagedHypergraph,
    auxiliary: Option<AuxiliaryHypergraph>,
    root_count: usize,
    depth: usize,
    block_size: impl Fn(usize) -> Option<usize>,
    mut spawn: impl FnMut(usize, &[usize]) -> Result<Vec<Vec<usize>>>,
) -> Result<StagedHypergraph> {
    let mut stages = vec![Stage {
        level: 0,
        positions: 0..root_count,
        parent_stage: None,
        children: 1..1,
        block_size: block_size(0),
        first_transversal: 0,
    }];
    let mut parent_pos: Vec<Option<usize>> = vec![None; root_count];
    let mut sid = 0;
    while sid < stages.len() {
        let level = stages[sid].level;
        if level + 1 < depth {
            let positions: Vec<usize> = stages[sid].positions.clone().collect();
            let kids = spawn(level, &positions)?;
            let first = stages.len();
            for kid in kids {
                let start = parent_pos.len();
                parent_pos.extend(kid.iter().map(|&p| Some(p)));
                stages.push(Stage {
                    level: level + 1,
                    positions: start..parent_pos.len(),
                    parent_stage: Some(sid),
                    children: 0..0,
                    block_size: block_size(level + 1),
                    first_transversal: 0,
                });
            }
            stages[sid].children = first..stages.len();
        } else {
            let end = stages.len();
            stages[sid].children = end..end;
        }
        sid += 1;
    }
    let n = parent_pos.len();

    // children of each position, in child-stage order
    let mut child_start = vec![0usize; n + 1];
    for p in parent_pos.iter().flatten() {
        child_start[p + 1] += 1;
    }
    for i in 0..n {
        child_start[i + 1] += child_start[i];
    }
    let mut fill = child_start.clone();
    let mut children = vec![0usize; child_start[n]];
    for (pos, p) in parent_pos.iter().enumerate() {
        if let Some(p) = *p {
            children[fill[p]] = pos;
            fill[p] += 1;
        }
    }

    // Left-to-right order: roots in order, then each vertex's children are
    // inserted immediately to its left, top child stage leftmost.
    const NIL: usize = usize::MAX;
    let mut prev = vec![NIL; n];
    let mut next = vec![NIL; n];
    for i in 0..root_count {
        prev[i] = if i == 0 { NIL } else { i - 1 };
        next[i] = if i + 1 == root_count { NIL } else { i + 1 };
    }
    let mut head = 0;
    for st in &stages {
        if st.children.is_empty() {
            continue;
        }
        for v in st.positions.clone() {
            for &ch in &children[child_start[v]..child_start[v + 1]] {
                let p = prev[v];
                prev[ch] = p;
                next[ch] = v;
                prev[v] = ch;
                if p == NIL {
                    head = ch;
                } else {
                    next[p] = ch;
                }
            }
        }
    }
    let mut creation = vec![0usize; n];
    let mut cur = head;
    let mut rank = 0;
    while cur != NIL {
        creation[cur] = rank;
        rank += 1;
        cur = next[cur];
    }
    debug_assert_eq!(rank, n);

    let mut parents = vec![None; n];
    for (pos, p) in parent_pos.iter().enumerate() {
        parents[creation[pos]] = p.map(|q| creation[q]);
    }
    let mut roots = vec![0usize; n];
    for pos in 0..n {
        roots[creation[pos]] = match parent_pos[pos] {
            None => creation[pos],
            Some(p) => roots[creation[p]],
        };
    }

    // path edges for every vertex on the deepest level
    let leaf_level = depth - 1;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for st in stages.iter().filter(|s| s.level == leaf_level) {
        for pos in st.positions.clone() {
            let mut path = Vec::with_capacity(depth);
            let mut cur = Some(pos);
            while let Some(p) = cur {
                path.push(creation[p]);
                cur = parent_pos[p];
            }
            path.sort_unstable();
            edges.push(path);
        }
    }
    let path_edges = 0..edges.len();

    let mut transversal = Vec::new();
    let template_edges = template.base().edges();
    for (sid, st) in stages.iter_mut().enumerate() {
        st.first_transversal = edges.len();
        let Some(m) = st.block_size else { continue };
        if m != template.n() || st.len() % m != 0 {
            return Err(Error::InvalidParameter(format!(
                "stage {sid} of size {} cannot carry copies of a {}-vertex template",
                st.len(),
                template.n()
            )));
        }
        for b in 0..st.len() / m {
            let start = st.positions.start + b * m;
            let block = &creation[start..start + m];
            for (ce, te) in template_edges.iter().enumerate() {
                let mut mapped: Vec<usize> = te.iter().map(|&i| block[i]).collect();
                mapped.sort_unstable();
                transversal.push(TransversalTag {
                    edge: edges.len(),
                    stage: sid,
                    block: b,
                    copy_edge: ce,
                });
                edges.push(mapped);
            }
        }
    }

    let base = OrderedHypergraph::new(n, edges)?;
    Ok(StagedHypergraph {
        kind,
        uniformity,
        c,
        girth,
        depth,
        base,
        creation,
        parents,
        roots,
        stages,
        path_edges,
        transversal,
        template: Some(Box::new(template)),
        auxiliary,
    })
}

// ---------------------------------------------------------------------------
// JSON form

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageJson {
    pub level: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StagedJson {
    pub kind: StagedKind,
    pub k: usize,
    pub c: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    pub m: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    pub parents: Vec<Option<usize>>,
    pub stages: Vec<StageJson>,
    pub path_edges: Vec<usize>,
    pub transversal_edges: Vec<TransversalTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub auxiliary: Option<AuxiliaryHypergraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<Box<StagedJson>>,
}

impl StagedHypergraph {
    pub fn to_json(&self) -> StagedJson {
        StagedJson {
            kind: self.kind,
            k: self.uniformity,
            c: self.c,
            g: self.girth,
            m: self.m(),
            n: self.n(),
            edges: self.base.edges().to_vec(),
            parents: self.parents.clone(),
            stages: (0..self.stages.len())
                .map(|s| StageJson {
                    level: self.stages[s].level,
                    vertices: self.stage_labels(s).to_vec(),
                })
                .collect(),
            path_edges: self.path_edges.clone().collect(),
            transversal_edges: self.transversal.clone(),
            auxiliary: self.auxiliary.clone(),
            template: self.template.as_ref().map(|t| Box::new(t.to_json())),
        }
    }

    /// Rebuilds the structure from its parameters (and stored auxiliary
    /// hypergraphs) and checks that it matches the document exactly.
    pub fn from_json(doc: &StagedJson, limits: Limits) -> Result<Self> {
        let rebuilt = match doc.kind {
            StagedKind::Hkc => build_hkc(doc.k, doc.c, limits)?,
            StagedKind::Gcg => {
                let g = doc
                    .g
                    .ok_or_else(|| Error::Parse("gcg document without girth parameter".into()))?;
                let mut chain = Vec::new();
                let mut cur = Some(doc);
                while let Some(d) = cur {
                    if let Some(aux) = &d.auxiliary {
                        chain.push(aux.clone());
                    }
                    cur = d.template.as_deref();
                }
                build_gcg(doc.c, g, &mut FixedProvider::new(chain), limits)?
            }
        };
        let again = rebuilt.to_json();
        let same = serde_json::to_value(&again).map_err(|e| Error::Parse(e.to_string()))?
            == serde_json::to_value(doc).map_err(|e| Error::Parse(e.to_string()))?;
        if !same {
            return Err(Error::Parse(
                "staged document does not match the construction for its parameters".into(),
            ));
        }
        Ok(rebuilt)
    }
}
