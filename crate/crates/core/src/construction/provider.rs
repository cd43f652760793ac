//! Sources of the auxiliary hypergraphs (prescribed uniformity, girth and
//! chromatic lower bound) that seed the large-girth construction.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{hypergraph_girth, is_c_colorable_with_budget, OrderedHypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    VerifiedExhaustively,
    UserAsserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryHypergraph {
    #[serde(flatten)]
    pub base: OrderedHypergraph,
    pub girth: usize,
    pub chromatic_lower_bound: usize,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxiliaryRequest {
    pub uniformity: usize,
    pub girth: usize,
    /// The hypergraph must not be `chromatic_lower_bound - 1`-colorable.
    pub chromatic_lower_bound: usize,
}

pub trait AuxiliaryProvider {
    fn provide(&mut self, request: &AuxiliaryRequest) -> Result<AuxiliaryHypergraph>;
}

/// Checks girth and non-colorability exhaustively. `Ok(false)` means a
/// check failed; a blown node budget is reported as an error.
fn certify(h: &OrderedHypergraph, request: &AuxiliaryRequest, node_budget: u64) -> Result<bool> {
    if h.uniformity() != Some(request.uniformity) {
        return Ok(false);
    }
    if !hypergraph_girth(h).girth.at_least(request.girth) {
        return Ok(false);
    }
    let palette = request.chromatic_lower_bound.saturating_sub(1).max(1);
    Ok(is_c_colorable_with_budget(h, palette, node_budget)?.is_none())
}

/// The cycle `C_{g'}` with `g'` the smallest odd integer `>= max(g, 3)`.
pub fn odd_cycle_provider(g: usize) -> Result<AuxiliaryHypergraph> {
    let mut len = g.max(3);
    if len % 2 == 0 {
        len += 1;
    }
    Ok(AuxiliaryHypergraph {
        base: OrderedHypergraph::cycle(len)?,
        girth: len,
        chromatic_lower_bound: 3,
        certificate: Certificate::VerifiedExhaustively,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OddCycleProvider;

impl AuxiliaryProvider for OddCycleProvider {
    fn provide(&mut self, request: &AuxiliaryRequest) -> Result<AuxiliaryHypergraph> {
        if request.uniformity != 2 || request.chromatic_lower_bound > 3 {
            return Err(Error::ProviderFailure(format!(
                "odd cycles are 2-uniform with chromatic number 3; requested uniformity {} and chromatic number >= {}",
                request.uniformity, request.chromatic_lower_bound
            )));
        }
        odd_cycle_provider(request.girth)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSearchConfig {
    pub seed: u64,
    pub trials: u64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for RandomSearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100_000,
            min_vertices: 0,
            max_vertices: 12,
            node_budget: 1_000_000,
        }
    }
}

/// Uniformly random edge sets, each certified exhaustively; the first
/// certified sample wins.
pub fn random_search_provider(
    uniformity: usize,
    g: usize,
    c: usize,
    budget: u64,
    seed: u64,
) -> Result<AuxiliaryHypergraph> {
    RandomSearchProvider::new(RandomSearchConfig {
        seed,
        trials: budget,
        ..RandomSearchConfig::default()
    })
    .provide(&AuxiliaryRequest {
        uniformity,
        girth: g,
        chromatic_lower_bound: c + 1,
    })
}

#[derive(Debug, Clone)]
pub struct RandomSearchProvider {
    config: RandomSearchConfig,
    rng: ChaCha8Rng,
}

impl RandomSearchProvider {
    pub fn new(config: RandomSearchConfig) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
        }
    }

    fn sample(&mut self, uniformity: usize) -> Option<OrderedHypergraph> {
        let lo = self.config.min_vertices.max(uniformity + 1);
        let hi = self.config.max_vertices.max(lo);
        let n = self.rng.random_range(lo..=hi);
        let edge_count = self.rng.random_range(n / uniformity.max(1)..=2 * n);
        let mut edges = BTreeSet::new();
        let mut attempts = 0;
        while edges.len() < edge_count && attempts < 20 * edge_count + 20 {
            attempts += 1;
            let mut edge = BTreeSet::new();
            while edge.len() < uniformity {
                edge.insert(self.rng.random_range(0..n));
            }
            edges.insert(edge.into_iter().collect::<Vec<usize>>());
        }
        OrderedHypergraph::new(n, edges.into_iter().collect()).ok()
    }
}

impl AuxiliaryProvider for RandomSearchProvider {
    fn provide(&mut self, request: &AuxiliaryRequest) -> Result<AuxiliaryHypergraph> {
        if request.uniformity == 0 {
            return Err(Error::ProviderFailure("uniformity must be positive".into()));
        }
        if request.uniformity >= self.config.max_vertices {
            return Err(Error::ProviderFailure(format!(
                "uniformity {} does not fit in {} vertices",
                request.uniformity, self.config.max_vertices
            )));
        }
        for _ in 0..self.config.trials {
            let Some(h) = self.sample(request.uniformity) else {
                continue;
            };
            match certify(&h, request, self.config.node_budget) {
                Ok(true) => {
                    return Ok(AuxiliaryHypergraph {
                        girth: request.girth,
                        chromatic_lower_bound: request.chromatic_lower_bound,
                        certificate: Certificate::VerifiedExhaustively,
                        base: h,
                    })
                }
                Ok(false) | Err(Error::NodeBudgetExceeded(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::ProviderFailure(format!(
            "no certified hypergraph of uniformity {}, girth >= {}, chromatic number >= {} in {} trials",
            request.uniformity, request.girth, request.chromatic_lower_bound, self.config.trials
        )))
    }
}

/// Hands out pre-supplied hypergraphs (e.g. loaded from files), innermost
/// level last. Each one is re-certified; when certification runs out of
/// budget it is accepted as user-asserted.
#[derive(Debug, Clone)]
pub struct FixedProvider {
    queue: Vec<AuxiliaryHypergraph>,
    node_budget: u64,
}

impl FixedProvider {
    /// `outermost_first[0]` is used for the top-level construction.
    pub fn new(outermost_first: Vec<AuxiliaryHypergraph>) -> Self {
        Self {
            queue: outermost_first,
            node_budget: 10_000_000,
        }
    }

    pub fn from_hypergraphs(outermost_first: Vec<OrderedHypergraph>) -> Self {
        Self::new(
            outermost_first
                .into_iter()
                .map(|base| AuxiliaryHypergraph {
                    base,
                    girth: 0,
                    chromatic_lower_bound: 0,
                    certificate: Certificate::UserAsserted,
                })
                .collect(),
        )
    }
}

impl AuxiliaryProvider for FixedProvider {
    fn provide(&mut self, request: &AuxiliaryRequest) -> Result<AuxiliaryHypergraph> {
        // the recursion asks for the innermost level first
        let Some(mut aux) = self.queue.pop() else {
            return Err(Error::ProviderFailure("no supplied hypergraph left".into()));
        };
        if aux.base.uniformity() != Some(request.uniformity) {
            return Err(Error::ProviderFailure(format!(
                "supplied hypergraph has uniformity {:?}, need {}",
                aux.base.uniformity(),
                request.uniformity
            )));
        }
        aux.girth = request.girth;
        aux.chromatic_lower_bound = request.chromatic_lower_bound;
        aux.certificate = match certify(&aux.base, request, self.node_budget) {
            Ok(true) => Certificate::VerifiedExhaustively,
            Ok(false) => {
                return Err(Error::ProviderFailure(
                    "supplied hypergraph fails the girth or chromatic requirement".into(),
                ))
            }
            Err(Error::NodeBudgetExceeded(_)) => Certificate::UserAsserted,
            Err(e) => return Err(e),
        };
        Ok(aux)
    }
}
