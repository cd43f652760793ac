//! Difference sets and the greedy growth sequence
//! `d_i = min{ d in D : d > 2^(i-1) * lcm(d_1, ..., d_(i-1)) }`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An increasing set of positive integers, queried by successor.
pub trait DifferenceSet {
    /// Smallest member strictly greater than `bound`; `Ok(None)` when the set
    /// has no such member, an error when it cannot be decided.
    fn least_above(&self, bound: &BigInt) -> Result<Option<BigInt>>;

    fn contains(&self, d: &BigInt) -> Result<bool>;

    fn name(&self) -> String;
}

/// `{base^i : i >= 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Powers {
    pub base: u32,
}

impl DifferenceSet for Powers {
    fn least_above(&self, bound: &BigInt) -> Result<Option<BigInt>> {
        if self.base < 2 {
            return Err(Error::InvalidParameter("power base must be at least 2".into()));
        }
        let base = BigInt::from(self.base);
        let mut p = base.clone();
        while &p <= bound {
            p *= &base;
        }
        Ok(Some(p))
    }

    fn contains(&self, d: &BigInt) -> Result<bool> {
        let base = BigInt::from(self.base);
        let mut p = base.clone();
        while &p < d {
            p *= &base;
        }
        Ok(&p == d)
    }

    fn name(&self) -> String {
        format!("pow{}", self.base)
    }
}

/// Primes. Membership is exact below `3.3 * 10^24` and a Baillie-PSW
/// style probable-prime test above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Primes;

/// Miller-Rabin with bases 2..37 is exact below this value.
const MR_EXACT_BOUND: &str = "3317044064679887385961981";

const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Whether [`is_prime`] is a proof for `n` rather than a probable-prime test.
pub fn primality_is_exact(n: &BigInt) -> bool {
    n < &MR_EXACT_BOUND.parse::<BigInt>().expect("valid constant")
}

fn strong_probable_prime(n: &BigInt, a: u32) -> bool {
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n - 1 is positive");
    let d = &n_minus_1 >> s;
    let mut x = BigInt::from(a).modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x).mod_floor(n);
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n8 = (&n % 8u32).to_u32().expect("small");
        if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
            sign = -sign;
        }
        if (&a % 4u32).to_u32() == Some(3) && n8 % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() { sign } else { 0 }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    (x >> 1u32).mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge's parameters; `n` odd,
/// not a square.
fn strong_lucas_probable_prime(n: &BigInt) -> bool {
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 if &d.abs() != n => return false,
            _ => {}
        }
        d = if d.is_positive() { -(d + 2u32) } else { -d + 2u32 };
    }
    let q: BigInt = (BigInt::one() - &d) / 4i32;
    let k = n + 1u32;
    let s = k.trailing_zeros().expect("positive");
    let odd = &k >> s;
    let (mut u, mut v, mut qk) = (BigInt::one(), BigInt::one(), q.mod_floor(n));
    for i in (0..odd.bits() - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if odd.bit(i) {
            let (u0, v0) = (u, v);
            u = half_mod(&u0 + &v0, n);
            v = half_mod(&d * &u0 + &v0, n);
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Miller-Rabin with the first twelve prime bases, which decides primality
/// below `3.3 * 10^24`; above that a strong Lucas test is added.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for p in BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    if !BASES.iter().all(|&a| strong_probable_prime(n, a)) {
        return false;
    }
    if primality_is_exact(n) {
        return true;
    }
    let r = n.sqrt();
    &r * &r != *n && strong_lucas_probable_prime(n)
}

impl DifferenceSet for Primes {
    fn least_above(&self, bound: &BigInt) -> Result<Option<BigInt>> {
        let mut n = if bound.is_negative() {
            BigInt::zero()
        } else {
            bound + 1
        };
        while !is_prime(&n) {
            n += 1;
        }
        Ok(Some(n))
    }

    fn contains(&self, d: &BigInt) -> Result<bool> {
        Ok(is_prime(d))
    }

    fn name(&self) -> String {
        "primes".into()
    }
}

/// A finite, explicitly listed set (for example read from a file).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitSet {
    values: Vec<BigInt>,
}

impl ExplicitSet {
    pub fn new(mut values: Vec<BigInt>) -> Result<Self> {
        if values.iter().any(|v| v <= &BigInt::zero()) {
            return Err(Error::InvalidParameter("differences must be positive".into()));
        }
        values.sort();
        values.dedup();
        Ok(Self { values })
    }
}

impl DifferenceSet for ExplicitSet {
    fn least_above(&self, bound: &BigInt) -> Result<Option<BigInt>> {
        let i = self.values.partition_point(|v| v <= bound);
        Ok(self.values.get(i).cloned())
    }

    fn contains(&self, d: &BigInt) -> Result<bool> {
        Ok(self.values.binary_search(d).is_ok())
    }

    fn name(&self) -> String {
        "file".into()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSequence {
    pub terms: Vec<BigInt>,
    /// `lcms[j] = lcm(d_1, ..., d_(j+1))`.
    pub lcms: Vec<BigInt>,
}

impl DifferenceSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `lcm(d_1..d_j)`, with `lcm_upto(0) = 1`.
    pub fn lcm_upto(&self, j: usize) -> BigInt {
        if j == 0 {
            BigInt::one()
        } else {
            self.lcms[j - 1].clone()
        }
    }

    /// `d_(j+1) > 2^j * lcm(d_1..d_j)` for every term.
    pub fn satisfies_growth(&self) -> bool {
        self.terms
            .iter()
            .enumerate()
            .all(|(j, d)| d > &(self.lcm_upto(j) << j))
    }
}

/// The first `count` greedy terms.
pub fn greedy_difference_sequence(set: &dyn DifferenceSet, count: usize) -> Result<DifferenceSequence> {
    let mut terms = Vec::with_capacity(count);
    let mut lcms: Vec<BigInt> = Vec::with_capacity(count);
    let mut lcm = BigInt::one();
    for i in 0..count {
        let bound = &lcm << i;
        let d = set.least_above(&bound)?.ok_or_else(|| {
            Error::StreamExhausted(format!("{} has no member above {bound}", set.name()))
        })?;
        lcm = lcm.lcm(&d);
        terms.push(d);
        lcms.push(lcm.clone());
    }
    let seq = DifferenceSequence { terms, lcms };
    if !seq.satisfies_growth() {
        return Err(Error::VerificationFailed("growth condition violated".into()));
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&n| BigInt::from(n)).collect()
    }

    /// The recursion evaluated by scanning integers upward.
    fn oracle(member: impl Fn(u64) -> bool, count: usize) -> Vec<u64> {
        let mut out = Vec::new();
        let mut lcm = 1u64;
        for i in 0..count {
            let bound = lcm << i;
            let d = (bound + 1..).find(|&d| member(d)).unwrap();
            lcm = lcm.lcm(&d);
            out.push(d);
        }
        out
    }

    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
    }

    fn power_of(base: u64) -> impl Fn(u64) -> bool {
        move |mut n| {
            if n < base {
                return false;
            }
            while n % base == 0 {
                n /= base;
            }
            n == 1
        }
    }

    #[test]
    fn greedy_values() {
        let pow2 = greedy_difference_sequence(&Powers { base: 2 }, 3).unwrap();
        assert_eq!(pow2.terms, ints(&[2, 8, 64]));
        assert_eq!(pow2.terms, ints(&oracle(power_of(2), 3)));
        let primes = greedy_difference_sequence(&Primes, 3).unwrap();
        assert_eq!(primes.terms, ints(&[2, 5, 41]));
        assert_eq!(primes.terms, ints(&oracle(naive_prime, 3)));
        let pow3 = greedy_difference_sequence(&Powers { base: 3 }, 3).unwrap();
        assert_eq!(pow3.terms, ints(&oracle(power_of(3), 3)));
        assert_eq!(pow3.terms, ints(&[3, 9, 81]));
    }

    #[test]
    fn longer_prime_sequence_matches_oracle() {
        let primes = greedy_difference_sequence(&Primes, 5).unwrap();
        assert_eq!(primes.terms, ints(&oracle(naive_prime, 5)));
    }

    #[test]
    fn ten_terms_grow() {
        for base in [2, 3, 5] {
            let seq = greedy_difference_sequence(&Powers { base }, 10).unwrap();
            assert!(seq.satisfies_growth());
            assert!(seq.terms.iter().all(|d| Powers { base }.contains(d).unwrap()));
        }
    }

    #[test]
    fn ten_prime_terms() {
        let seq = greedy_difference_sequence(&Primes, 10).unwrap();
        assert!(seq.satisfies_growth());
        assert!(!primality_is_exact(&seq.terms[9]));
    }

    #[test]
    fn explicit_sets_run_out() {
        let set = ExplicitSet::new(ints(&[2, 3, 100])).unwrap();
        let seq = greedy_difference_sequence(&set, 2).unwrap();
        assert_eq!(seq.terms, ints(&[2, 100]));
        assert!(matches!(greedy_difference_sequence(&set, 3), Err(Error::StreamExhausted(_))));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(&BigInt::from(n)), naive_prime(n), "{n}");
        }
        // a strong pseudoprime to bases 2..23
        let n: BigInt = "3825123056546413051".parse().unwrap();
        assert!(!is_prime(&n));
        assert!(is_prime(&BigInt::from(1_000_000_007u64)));
    }

    #[test]
    fn lucas_test_on_known_values() {
        // 2^89 - 1 and 2^127 - 1 are prime; their neighbours are not
        for e in [89u32, 127] {
            let m = (BigInt::one() << e) - 1;
            assert!(strong_lucas_probable_prime(&m));
            assert!(is_prime(&m));
            assert!(!is_prime(&(&m + 2)));
        }
        // the first strong Lucas pseudoprimes
        for n in [5459u32, 5777, 10877, 16109, 18971] {
            assert!(strong_lucas_probable_prime(&BigInt::from(n)), "{n}");
        }
        for n in (3..20000u64).step_by(2) {
            let r = (n as f64).sqrt() as u64;
            if r * r == n || (r + 1) * (r + 1) == n {
                continue;
            }
            if naive_prime(n) {
                assert!(strong_lucas_probable_prime(&BigInt::from(n)), "{n}");
            }
        }
        let m89 = (BigInt::one() << 89u32) - 1;
        assert!(!is_prime(&(&m89 * &m89)));
        assert!(!is_prime(&(&m89 * BigInt::from(1_000_000_007u64))));
    }
}
