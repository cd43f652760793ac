//! Congruence systems with arbitrary (not necessarily coprime) moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `x ≡ residue (mod modulus)`, residue reduced into `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    pub residue: BigInt,
    pub modulus: BigInt,
}

impl ResidueClass {
    pub fn new(residue: BigInt, modulus: BigInt) -> Self {
        assert!(modulus >= BigInt::one(), "modulus must be positive");
        Self {
            residue: residue.mod_floor(&modulus),
            modulus,
        }
    }

    /// Every integer.
    pub fn all() -> Self {
        Self::new(BigInt::zero(), BigInt::one())
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        (x - &self.residue).is_multiple_of(&self.modulus)
    }

    /// Intersection with `x ≡ r (mod m)`: solvable iff the residues agree
    /// modulo `gcd`; the result has modulus `lcm`.
    pub fn merge(&self, other: &ResidueClass) -> Option<ResidueClass> {
        let (m1, m2) = (&self.modulus, &other.modulus);
        let eg = m1.extended_gcd(m2);
        let g = eg.gcd;
        let diff = &other.residue - &self.residue;
        if !diff.is_multiple_of(&g) {
            return None;
        }
        let m2g = m2 / &g;
        // x = r1 + m1 * k with m1 * k ≡ diff (mod m2)
        let k = ((&diff / &g) * eg.x).mod_floor(&m2g);
        let lcm = m1 * &m2g;
        Some(ResidueClass::new(&self.residue + m1 * k, lcm))
    }
}

/// Merges the congruences pairwise; `None` when unsolvable.
pub fn solve_modular_system(system: &[(BigInt, BigInt)]) -> Option<ResidueClass> {
    system.iter().try_fold(ResidueClass::all(), |acc, (r, m)| {
        acc.merge(&ResidueClass::new(r.clone(), m.clone()))
    })
}

/// Residues `ρ` modulo `d_next` with `{class, x ≡ ρ (mod d_next)}` solvable,
/// increasing: those with `ρ ≡ r (mod gcd(L, d_next))`.
pub fn extension_residues(class: &ResidueClass, d_next: &BigInt) -> Vec<BigInt> {
    ExtensionResidues::new(class, d_next).collect()
}

/// Lazy form of [`extension_residues`], for moduli too large to list.
#[derive(Debug, Clone)]
pub struct ExtensionResidues {
    next: BigInt,
    step: BigInt,
    end: BigInt,
}

impl ExtensionResidues {
    pub fn new(class: &ResidueClass, d_next: &BigInt) -> Self {
        let g = class.modulus.gcd(d_next);
        Self {
            next: class.residue.mod_floor(&g),
            step: g,
            end: d_next.clone(),
        }
    }

    /// Number of residues still to come.
    pub fn remaining(&self) -> BigInt {
        if self.next >= self.end {
            BigInt::zero()
        } else {
            (&self.end - &self.next + &self.step - BigInt::one()) / &self.step
        }
    }
}

impl Iterator for ExtensionResidues {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.next >= self.end {
            return None;
        }
        let out = self.next.clone();
        self.next += &self.step;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(pairs: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        pairs.iter().map(|&(r, m)| (BigInt::from(r), BigInt::from(m))).collect()
    }

    fn class(r: i64, m: i64) -> ResidueClass {
        ResidueClass::new(BigInt::from(r), BigInt::from(m))
    }

    #[test]
    fn examples() {
        assert_eq!(solve_modular_system(&sys(&[(1, 2), (3, 8)])), Some(class(3, 8)));
        assert_eq!(solve_modular_system(&sys(&[(0, 4), (1, 2)])), None);
        assert_eq!(solve_modular_system(&[]), Some(ResidueClass::all()));
        assert_eq!(solve_modular_system(&sys(&[(2, 3), (3, 5), (2, 7)])), Some(class(23, 105)));
    }

    #[test]
    fn extension_examples() {
        let big = |v: &[i64]| v.iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>();
        assert_eq!(extension_residues(&class(1, 2), &BigInt::from(8)), big(&[1, 3, 5, 7]));
        assert_eq!(extension_residues(&ResidueClass::all(), &BigInt::from(3)), big(&[0, 1, 2]));
        assert_eq!(ExtensionResidues::new(&class(1, 6), &BigInt::from(9)).remaining(), BigInt::from(3));
    }

    fn scan(system: &[(i64, i64)]) -> Option<(i64, i64)> {
        let lcm = system.iter().fold(1i64, |a, &(_, m)| a.lcm(&m));
        (0..lcm)
            .find(|x| system.iter().all(|&(r, m)| (x - r).rem_euclid(m) == 0))
            .map(|x| (x, lcm))
    }

    proptest! {
        #[test]
        fn matches_scan(raw in prop::collection::vec((0i64..40, 1i64..13), 0..4)) {
            let got = solve_modular_system(&sys(&raw));
            let want = scan(&raw).map(|(r, m)| class(r, m));
            prop_assert_eq!(got, want);
        }

        #[test]
        fn extension_matches_scan(r in 0i64..30, l in 1i64..30, d in 1i64..40) {
            let c = class(r, l);
            let got = extension_residues(&c, &BigInt::from(d));
            let want: Vec<BigInt> = (0..d)
                .filter(|&rho| scan(&[(r, l), (rho, d)]).is_some())
                .map(BigInt::from)
                .collect();
            prop_assert_eq!(got, want);
        }
    }
}
