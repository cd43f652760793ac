//! Residue trees: residues `r_s (mod d_|s|)` on binary strings such that
//! every root path is a solvable system and residues at one depth differ.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;

use super::crt::{ExtensionResidues, ResidueClass};
use super::sequence::DifferenceSequence;
use crate::error::{Error, Result};

/// Binary strings of length up to this many are materialized.
pub const MAX_TREE_LEVELS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTree {
    /// Label length of the leaves (`t - 1`).
    pub levels: usize,
    pub sequence: DifferenceSequence,
    /// `r_s` for every label of length `1..=levels`.
    pub residues: BTreeMap<String, BigInt>,
    /// `f_s` for every leaf: the solution of its root path, reduced modulo
    /// `lcm(d_1..d_levels)`.
    pub leaf_solutions: BTreeMap<String, BigInt>,
}

impl ResidueTree {
    /// The congruences along the root path of `label`.
    pub fn path_system(&self, label: &str) -> Vec<(BigInt, BigInt)> {
        (1..=label.len())
            .map(|j| (self.residues[&label[..j]].clone(), self.sequence.terms[j - 1].clone()))
            .collect()
    }

    /// Residues at each depth are pairwise distinct and reduced.
    pub fn residues_distinct_per_depth(&self) -> bool {
        (1..=self.levels).all(|j| {
            let d = &self.sequence.terms[j - 1];
            let at_depth: Vec<&BigInt> = self
                .residues
                .iter()
                .filter(|(s, _)| s.len() == j)
                .map(|(_, r)| r)
                .collect();
            let distinct: HashSet<&BigInt> = at_depth.iter().copied().collect();
            distinct.len() == at_depth.len() && at_depth.iter().all(|r| r >= &&BigInt::from(0) && *r < d)
        })
    }
}

fn labels_of_length(len: usize) -> impl Iterator<Item = String> {
    (0..1u64 << len).map(move |i| {
        (0..len)
            .map(|b| if i >> (len - 1 - b) & 1 == 1 { '1' } else { '0' })
            .collect()
    })
}

/// Assigns residues level by level. Parents are visited in lexicographic
/// order and each child takes the smallest residue compatible with its
/// parent's class that is still unused at its depth.
pub fn build_residue_tree(seq: &DifferenceSequence, levels: usize) -> Result<ResidueTree> {
    if levels > seq.len() {
        return Err(Error::InvalidParameter(format!(
            "{levels} levels need {levels} differences, got {}",
            seq.len()
        )));
    }
    if levels > MAX_TREE_LEVELS {
        return Err(Error::ResourceLimit {
            predicted: format!("2^{levels} residue tree leaves"),
            limit: 1 << MAX_TREE_LEVELS,
        });
    }
    let mut residues = BTreeMap::new();
    let mut classes: BTreeMap<String, ResidueClass> = BTreeMap::new();
    classes.insert(String::new(), ResidueClass::all());
    for j in 1..=levels {
        let d = &seq.terms[j - 1];
        let mut used: HashSet<BigInt> = HashSet::new();
        for parent in labels_of_length(j - 1) {
            let class = classes[&parent].clone();
            let mut candidates = ExtensionResidues::new(&class, d);
            for bit in ['0', '1'] {
                let label = format!("{parent}{bit}");
                let r = candidates
                    .find(|r| !used.contains(r))
                    .ok_or_else(|| Error::ResidueAssignment(label.clone()))?;
                used.insert(r.clone());
                let child = class
                    .merge(&ResidueClass::new(r.clone(), d.clone()))
                    .ok_or_else(|| Error::ResidueAssignment(label.clone()))?;
                residues.insert(label.clone(), r);
                classes.insert(label, child);
            }
        }
    }
    let leaf_solutions = labels_of_length(levels)
        .map(|s| {
            let f = classes[&s].residue.clone();
            (s, f)
        })
        .collect();
    Ok(ResidueTree {
        levels,
        sequence: seq.clone(),
        residues,
        leaf_solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::sequence::{greedy_difference_sequence, DifferenceSet, Powers, Primes};
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    /// Solvability straight from the definition: scan `[0, lcm)`.
    fn scan_solvable(system: &[(BigInt, BigInt)]) -> Option<u64> {
        let m: Vec<(u64, u64)> = system
            .iter()
            .map(|(r, d)| (r.to_u64().unwrap(), d.to_u64().unwrap()))
            .collect();
        let lcm = m.iter().fold(1u64, |a, &(_, d)| a.lcm(&d));
        (0..lcm).find(|x| m.iter().all(|&(r, d)| x % d == r))
    }

    fn check(set: &dyn DifferenceSet, levels: usize) {
        let seq = greedy_difference_sequence(set, levels).unwrap();
        let tree = build_residue_tree(&seq, levels).unwrap();
        assert!(tree.residues_distinct_per_depth());
        for j in 1..=levels {
            for s in labels_of_length(j) {
                assert!(scan_solvable(&tree.path_system(&s)).is_some(), "{s}");
            }
        }
        let l = seq.lcm_upto(levels);
        for (s, f) in &tree.leaf_solutions {
            assert!(f < &l);
            assert_eq!(scan_solvable(&tree.path_system(s)), f.to_u64());
        }
    }

    #[test]
    fn one_level_mod_two() {
        let seq = greedy_difference_sequence(&Powers { base: 2 }, 1).unwrap();
        let tree = build_residue_tree(&seq, 1).unwrap();
        assert_eq!(tree.residues["0"], BigInt::from(0));
        assert_eq!(tree.residues["1"], BigInt::from(1));
    }

    #[test]
    fn small_trees_against_scan() {
        check(&Powers { base: 2 }, 2);
        check(&Powers { base: 2 }, 3);
        check(&Primes, 3);
        check(&Powers { base: 3 }, 3);
    }

    #[test]
    fn pow2_two_levels() {
        let seq = greedy_difference_sequence(&Powers { base: 2 }, 2).unwrap();
        let tree = build_residue_tree(&seq, 2).unwrap();
        let depth2: Vec<_> = tree.residues.iter().filter(|(s, _)| s.len() == 2).collect();
        assert_eq!(depth2.len(), 4);
        assert!(depth2.iter().all(|(_, r)| r < &&BigInt::from(8)));
    }

    #[test]
    fn too_few_terms() {
        let seq = greedy_difference_sequence(&Powers { base: 2 }, 1).unwrap();
        assert!(build_residue_tree(&seq, 2).is_err());
    }
}
