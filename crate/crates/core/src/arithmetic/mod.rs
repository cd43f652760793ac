//! The van der Corput point set and the translation between rectangles over
//! it and arithmetic progressions with prescribed differences.

mod crt;
mod sequence;
mod translate;
mod tree;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point2, Rational, Rect};
use crate::hypergraph::OrderedHypergraph;

pub use crt::{extension_residues, solve_modular_system, ExtensionResidues, ResidueClass};
pub use sequence::{
    greedy_difference_sequence, is_prime, DifferenceSequence, DifferenceSet, ExplicitSet, Powers,
    Primes,
};
pub use translate::{
    rects_to_d_aps, rects_to_pow2_aps, APRealization, APRealizationJson, ApEntry, ApEntryJson,
    DTranslation,
};
pub use tree::{build_residue_tree, ResidueTree, MAX_TREE_LEVELS};

/// `a_n`: the binary digits of `n` mirrored about the radix point.
pub fn van_der_corput(n: &BigUint) -> Rational {
    let bits = n.bits();
    let mut rev = BigUint::zero();
    for i in 0..bits {
        if n.bit(i) {
            rev.set_bit(bits - 1 - i, true);
        }
    }
    Rational::new(BigInt::from(rev), BigInt::one() << bits)
}

pub fn van_der_corput_u64(n: u64) -> Rational {
    van_der_corput(&BigUint::from(n))
}

/// `P_V = {(n, a_n)}` after shifting `V` to start at a nonnegative value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// Added to every element of `V`; zero unless `V` has negative members.
    pub offset: BigInt,
    /// Shifted elements, increasing.
    pub values: Vec<BigUint>,
    pub points: Vec<Point2>,
}

pub fn embed_integers(v: &[BigInt]) -> Result<Embedding> {
    let mut sorted = v.to_vec();
    sorted.sort();
    sorted.dedup();
    let min = sorted.first().ok_or(Error::EmptyInput)?;
    let offset = if min.is_negative() { -min } else { BigInt::zero() };
    let values: Vec<BigUint> = sorted
        .iter()
        .map(|n| (n + &offset).to_biguint().expect("shifted to nonnegative"))
        .collect();
    let points = values
        .iter()
        .map(|n| Point2::new(Rational::from_integer(BigInt::from(n.clone())), van_der_corput(n)))
        .collect();
    Ok(Embedding { offset, values, points })
}

/// `{start + i*difference : 0 <= i < length}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAP {
    pub start: BigInt,
    pub difference: BigInt,
    pub length: BigInt,
}

impl FiniteAP {
    pub fn new(start: BigInt, difference: BigInt, length: impl Into<BigInt>) -> Result<Self> {
        let length = length.into();
        if difference < BigInt::one() || length < BigInt::one() {
            return Err(Error::InvalidParameter(
                "a progression needs difference >= 1 and length >= 1".into(),
            ));
        }
        Ok(Self {
            start,
            difference,
            length,
        })
    }

    pub fn last(&self) -> BigInt {
        &self.start + &self.difference * (&self.length - 1u32)
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        n >= &self.start && n <= &self.last() && (n - &self.start).is_multiple_of(&self.difference)
    }
}

/// `t` with `d = 2^t`.
fn log2_exact(d: &BigInt) -> Result<u64> {
    let not_pow2 = || Error::NotPowerOfTwo(d.to_string());
    if d.sign() != Sign::Plus {
        return Err(not_pow2());
    }
    let t = d.bits() - 1;
    if *d != BigInt::one() << t {
        return Err(not_pow2());
    }
    Ok(t)
}

/// A rectangle capturing exactly the points of `A ∩ V` from `P_V`, for a
/// progression of difference `2^t`: `x` spans the progression and `y` the
/// strip `[a_b, a_b + 2^-t)` with `b = start mod 2^t`, closed just below its
/// top at `2^-(M+1)` with `M = max(t, bit length of max V)`.
pub fn ap_capture_rectangle(ap: &FiniteAP, v: &[BigUint]) -> Result<Rect> {
    let t = log2_exact(&ap.difference)?;
    let big_t = v.iter().map(BigUint::bits).max().unwrap_or(0);
    let m = big_t.max(t);
    let b = ap.start.mod_floor(&ap.difference).to_biguint().expect("nonnegative");
    let a_b = van_der_corput(&b);
    let strip = Rational::new(BigInt::one(), BigInt::one() << t);
    let margin = Rational::new(BigInt::one(), BigInt::one() << (m + 1));
    let top = &a_b + strip - margin;
    Rect::new(
        Rational::from_integer(ap.start.clone()),
        Rational::from_integer(ap.last()),
        a_b,
        top,
    )
}

/// The hypergraph on `V` (vertex `i` is the `i`-th smallest) with one edge
/// `A ∩ V` per progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApIncidence {
    pub hypergraph: OrderedHypergraph,
    pub empty_edges: Vec<usize>,
}

pub fn ap_incidence_hypergraph(v: &[BigInt], aps: &[FiniteAP]) -> Result<ApIncidence> {
    if let Some(i) = v.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "V must be strictly increasing (position {})",
            i + 1
        )));
    }
    let mut edges = Vec::with_capacity(aps.len());
    let mut empty_edges = Vec::new();
    for (e, ap) in aps.iter().enumerate() {
        let lo = v.partition_point(|n| n < &ap.start);
        let last = ap.last();
        let hi = v.partition_point(|n| n <= &last);
        let edge: Vec<usize> = (lo..hi).filter(|&i| ap.contains(&v[i])).collect();
        if edge.is_empty() {
            empty_edges.push(e);
        }
        edges.push(edge);
    }
    Ok(ApIncidence {
        hypergraph: OrderedHypergraph::new(v.len(), edges)?,
        empty_edges,
    })
}

/// Integers in JSON: plain numbers when they fit in `i64`, decimal strings
/// otherwise.
pub(crate) fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(n.to_string()),
    }
}

pub(crate) fn int_from_json(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        serde_json::Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

/// JSON shape shared by the progression outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteApJson {
    pub start: String,
    pub difference: String,
    pub length: serde_json::Value,
}
