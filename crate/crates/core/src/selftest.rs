//! The acceptance checks, runnable from tests and from the command line.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arithmetic::{
    ap_capture_rectangle, build_residue_tree, embed_integers, greedy_difference_sequence,
    rects_to_d_aps, rects_to_pow2_aps, van_der_corput_u64, APRealization, DTranslation,
    DifferenceSet, FiniteAP, Powers, Primes, ResidueTree,
};
use crate::construction::{build_gcg, build_hkc, find_monochromatic_edge, Limits, OddCycleProvider};
use crate::error::{Error, Result};
use crate::geometry::{
    dominance_hasse, emit_svg, incidence_hypergraph, is_nested_closed, monochromatic_increasing_path,
    realize_gcg, realize_hkc_nested, realize_staged, Point2, Rational, Realization, Realizer,
    SvgStyle, Variant,
};
use crate::hypergraph::{
    edge_is_monochromatic, edge_multiset_equal, hypergraph_girth, is_c_colorable, is_proper_coloring,
    naive_monochromatic_edge, Coloring, OrderedHypergraph,
};

/// Seed shared by every randomized check.
pub const SEED: u64 = 20240917;

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {} ({:.2}s, limit {}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

type Check = fn() -> Result<String>;

pub const CRITERIA: [(u32, &str, u64, Check); 10] = [
    (1, "H_2^2 counts and chromatic number", 1, criterion_1),
    (2, "constructive monochromatic edge finder", 120, criterion_2),
    (3, "rectangle realizations", 600, criterion_3),
    (4, "large girth pipeline", 15, criterion_4),
    (5, "van der Corput strip equivalence", 30, criterion_5),
    (6, "progression capture by rectangles", 10, criterion_6),
    (7, "rectangles to progressions", 30, criterion_7),
    (8, "greedy difference sequences", 10, criterion_8),
    (9, "Hasse diagrams of dominance orders", 30, criterion_9),
    (10, "determinism", 60, criterion_10),
];

pub fn run_criterion(id: u32) -> Result<CriterionReport> {
    let &(id, title, limit, check) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::InvalidParameter(format!("no criterion {id}")))?;
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit);
    let (passed, detail) = match outcome {
        Ok(detail) if elapsed <= limit => (true, detail),
        Ok(detail) => (false, format!("{detail}; over time")),
        Err(e) => (false, e.to_string()),
    };
    Ok(CriterionReport {
        id,
        title,
        passed,
        detail,
        elapsed,
        limit,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|c| run_criterion(c.0).expect("listed criterion"))
        .collect()
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::VerificationFailed(what.into()))
    }
}

fn all_colorings(n: usize) -> impl Iterator<Item = Coloring> {
    (0..1u64 << n).map(move |i| Coloring::from_index(n, 2, i))
}

fn no_proper_2_coloring_exhaustive(h: &OrderedHypergraph) -> Result<bool> {
    for col in all_colorings(h.n()) {
        if is_proper_coloring(h, &col)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_1() -> Result<String> {
    let h = build_hkc(2, 2, Limits::default())?;
    let base = h.base();
    ensure(base.n() == 12, format!("{} vertices", base.n()))?;
    ensure(base.num_edges() == 14, format!("{} edges", base.num_edges()))?;
    ensure(base.uniformity() == Some(2), "not 2-uniform")?;
    ensure(no_proper_2_coloring_exhaustive(base)?, "a proper 2-coloring exists")?;
    let three = is_c_colorable(base, 3)?.ok_or_else(|| Error::VerificationFailed("no 3-coloring".into()))?;
    ensure(is_proper_coloring(base, &three)?, "3-coloring not proper")?;
    Ok("12 vertices, 14 edges, none of 4096 2-colorings proper, 3-coloring verified".into())
}

fn criterion_2() -> Result<String> {
    let h = build_hkc(2, 2, Limits::default())?;
    for col in all_colorings(h.n()) {
        let found = find_monochromatic_edge(&h, &col)?;
        ensure(edge_is_monochromatic(h.base().edge(found.edge), &col), "finder edge not monochromatic")?;
    }
    let big = build_hkc(3, 2, Limits::default())?;
    ensure(big.n() == 1_771_497, format!("H_3^2 has {} vertices", big.n()))?;
    ensure(
        big.base().num_edges() == 2_184_822,
        format!("H_3^2 has {} edges", big.base().num_edges()),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..100 {
        let colors = (0..big.n()).map(|_| rng.random_range(0..2)).collect();
        let col = Coloring::new(2, colors)?;
        let found = find_monochromatic_edge(&big, &col)?;
        ensure(edge_is_monochromatic(big.base().edge(found.edge), &col), "finder edge not monochromatic")?;
    }
    Ok("4096 colorings of H_2^2 and 100 random colorings of H_3^2 (1771497 vertices, 2184822 edges)".into())
}

fn check_h22_realization(variant: Variant) -> Result<()> {
    let h = build_hkc(2, 2, Limits::default())?;
    let r = realize_staged(&h, variant)?;
    let inc = incidence_hypergraph(&r.points, &r.rects)?;
    ensure(edge_multiset_equal(&inc.hypergraph, h.base())?, "incidence differs")?;
    ensure(r.all_edges_ascending(), "edge not ascending")?;
    ensure(inc.hypergraph.uniformity() == Some(2), "member set not of size 2")?;
    if variant == Variant::Nested {
        let proj: Vec<_> = r.rects.iter().map(|r| r.y_projection()).collect();
        ensure(is_nested_closed(&proj), "projections not nested")?;
        let tops: Vec<&Rational> = h.path_edges().map(|e| &r.rects[e].y_hi).collect();
        ensure(tops.windows(2).all(|w| w[0] == w[1]), "path tops differ")?;
    }
    Ok(())
}

fn criterion_3() -> Result<String> {
    let start = Instant::now();
    check_h22_realization(Variant::Plain)?;
    check_h22_realization(Variant::Nested)?;
    ensure(start.elapsed() < Duration::from_secs(1), "H_2^2 realizations over 1 s")?;
    let big = build_hkc(3, 2, Limits::default())?;
    let mut sampled = 0;
    for variant in [Variant::Plain, Variant::Nested] {
        let rz = Realizer::new(&big, variant)?;
        rz.verify_x_order()?;
        sampled += rz.verify_sample(1000, SEED)?.len();
    }
    Ok(format!("H_2^2 plain and nested exact; H_3^2 {sampled} sampled rectangles exact"))
}

fn criterion_4() -> Result<String> {
    let mut parts = Vec::new();
    for g in [5, 7, 9] {
        let start = Instant::now();
        let s = build_gcg(2, g, &mut OddCycleProvider, Limits::default())?;
        let h = s.base();
        ensure(h.n() == 3 * g, format!("G^2({g}) has {} vertices", h.n()))?;
        ensure(hypergraph_girth(h).girth.at_least(g), format!("G^2({g}) girth below {g}"))?;
        if g == 5 {
            ensure(no_proper_2_coloring_exhaustive(h)?, "G^2(5) is 2-colorable")?;
        }
        ensure(is_c_colorable(h, 2)?.is_none(), format!("G^2({g}) is 2-colorable"))?;
        let r = realize_gcg(&s)?;
        r.verify()?;
        let inc = incidence_hypergraph(&r.points, &r.rects)?;
        ensure(hypergraph_girth(&inc.hypergraph).girth.at_least(g), "realized girth dropped")?;
        ensure(start.elapsed() < Duration::from_secs(5), format!("g={g} over 5 s"))?;
        parts.push(format!("g={g}: {} vertices", h.n()));
    }
    Ok(parts.join(", "))
}

/// `a_n * 2^24` as an integer, for `n < 2^12`.
fn scaled_vdc(n: u64) -> u64 {
    let a = van_der_corput_u64(n) * Rational::from_integer(BigInt::one() << 24);
    a.to_integer().to_u64().expect("fits")
}

fn criterion_5() -> Result<String> {
    const T: u32 = 12;
    let table: Vec<u64> = (0..1u64 << T).map(scaled_vdc).collect();
    let mut checked = 0u64;
    for t in 0..=T {
        let strip = 1u64 << (24 - t);
        for b in 0..1u64 << t {
            let lo = table[b as usize];
            for (n, &a) in table.iter().enumerate() {
                let congruent = (n as u64) % (1 << t) == b;
                ensure(congruent == (lo <= a && a < lo + strip), format!("n={n}, t={t}, b={b}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples (n, t, b) agree"))
}

fn criterion_6() -> Result<String> {
    let v: Vec<BigInt> = [1, 3, 7, 8, 10, 15].iter().map(|&n| BigInt::from(n)).collect();
    let e = embed_integers(&v)?;
    let a = FiniteAP::new(BigInt::from(3), BigInt::from(2), 3)?;
    let r = ap_capture_rectangle(&a, &e.values)?;
    let captured: Vec<usize> = (0..e.points.len()).filter(|&i| r.contains(&e.points[i])).collect();
    ensure(captured == [1, 2], format!("figure capture gave ranks {captured:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..200 {
        let mut set: Vec<i64> = (0..rng.random_range(1..60)).map(|_| rng.random_range(0..4096)).collect();
        set.sort_unstable();
        set.dedup();
        let v: Vec<BigInt> = set.iter().map(|&n| BigInt::from(n)).collect();
        let e = embed_integers(&v)?;
        let t = rng.random_range(0..=8u32);
        let d = 1i64 << t;
        let b = rng.random_range(0..d);
        let first = b + d * rng.random_range(0..4096 / d);
        let len = rng.random_range(1..=(4096 - first) / d + 1);
        let ap = FiniteAP::new(BigInt::from(first), BigInt::from(d), len)?;
        let r = ap_capture_rectangle(&ap, &e.values)?;
        let got: Vec<usize> = (0..e.points.len()).filter(|&i| r.contains(&e.points[i])).collect();
        let want: Vec<usize> = (0..set.len())
            .filter(|&i| set[i] >= first && set[i] <= first + d * (len - 1) && (set[i] - first) % d == 0)
            .collect();
        ensure(got == want, format!("capture mismatch for start {first}, difference {d}"))?;
    }
    Ok("figure instance captures {3, 7}; 200 random round trips agree".into())
}

/// Solvability by the pairwise condition `r_i ≡ r_j (mod gcd(d_i, d_j))`,
/// and by scanning `[0, lcm)` when the lcm is small.
fn path_solvable_oracle(system: &[(BigInt, BigInt)]) -> bool {
    let pairwise = system.iter().enumerate().all(|(i, (ri, di))| {
        system[..i]
            .iter()
            .all(|(rj, dj)| (ri - rj).is_multiple_of(&di.gcd(dj)))
    });
    let lcm = system.iter().fold(BigInt::one(), |l, (_, d)| l.lcm(d));
    match lcm.to_u64() {
        Some(l) if l <= 1 << 16 => {
            let scan = (0..l).any(|x| {
                let x = BigInt::from(x);
                system.iter().all(|(r, d)| (&x - r).is_multiple_of(d))
            });
            pairwise && scan
        }
        _ => pairwise,
    }
}

fn check_tree(tree: &ResidueTree) -> Result<()> {
    ensure(tree.residues_distinct_per_depth(), "residues repeat within a depth")?;
    for label in tree.residues.keys() {
        ensure(path_solvable_oracle(&tree.path_system(label)), format!("node {label} unsolvable"))?;
    }
    let l = tree.sequence.lcm_upto(tree.levels);
    for (label, f) in &tree.leaf_solutions {
        ensure(f < &l, format!("leaf {label} solution not reduced"))?;
        let system = tree.path_system(label);
        ensure(
            system.iter().all(|(r, d)| (f - r).is_multiple_of(d)),
            format!("leaf {label} solution wrong"),
        )?;
    }
    Ok(())
}

fn check_aps(out: &APRealization, h: &OrderedHypergraph, set: &dyn DifferenceSet) -> Result<()> {
    for e in &out.aps {
        let d = &e.ap.difference;
        ensure(d.is_one() || set.contains(d)?, format!("difference {d} not in {}", set.name()))?;
    }
    let aps: Vec<FiniteAP> = out.aps.iter().map(|e| e.ap.clone()).collect();
    let inc = crate::arithmetic::ap_incidence_hypergraph(&out.v, &aps)?;
    ensure(out.empty_edges.is_empty() && aps.len() == h.num_edges(), "missing progressions")?;
    ensure(edge_multiset_equal(&inc.hypergraph, h)?, "progression incidence differs")
}

fn criterion_7() -> Result<String> {
    let h = build_hkc(2, 2, Limits::default())?;
    let real = realize_hkc_nested(&h)?;
    let pow2 = rects_to_pow2_aps(&real)?;
    check_aps(&pow2, h.base(), &Powers { base: 2 })?;
    let sets: [&dyn DifferenceSet; 3] = [&Powers { base: 2 }, &Primes, &Powers { base: 3 }];
    let mut parts = vec![format!("pow2 direct: {} progressions", pow2.aps.len())];
    for set in sets {
        let start = Instant::now();
        let DTranslation { realization, tree, .. } = rects_to_d_aps(&real, set)?;
        ensure(realization.aps.iter().all(|e| !e.ap.difference.is_one()), "difference 1 in general mode")?;
        check_aps(&realization, h.base(), set)?;
        check_tree(&tree)?;
        ensure(start.elapsed() < Duration::from_secs(10), format!("{} over 10 s", set.name()))?;
        parts.push(format!("{}: {} levels", set.name(), tree.levels));
    }
    Ok(parts.join(", "))
}

/// The greedy recursion evaluated by scanning integers upward.
fn greedy_oracle(member: impl Fn(u64) -> bool, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut lcm = 1u64;
    for i in 0..count {
        let d = ((lcm << i) + 1..).find(|&d| member(d)).expect("unbounded set");
        lcm = lcm.lcm(&d);
        out.push(d);
    }
    out
}

fn criterion_8() -> Result<String> {
    let trial_prime = |n: u64| n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0);
    let pow2 = |n: u64| n >= 2 && n.is_power_of_two();
    let terms = |set: &dyn DifferenceSet, count| -> Result<Vec<u64>> {
        Ok(greedy_difference_sequence(set, count)?
            .terms
            .iter()
            .map(|d| d.to_u64().expect("small"))
            .collect())
    };
    let p2 = terms(&Powers { base: 2 }, 3)?;
    ensure(p2 == [2, 8, 64] && p2 == greedy_oracle(pow2, 3), format!("powers of 2 gave {p2:?}"))?;
    let pr = terms(&Primes, 3)?;
    ensure(pr == [2, 5, 41] && pr == greedy_oracle(trial_prime, 3), format!("primes gave {pr:?}"))?;
    ensure(terms(&Primes, 5)? == greedy_oracle(trial_prime, 5), "five prime terms differ")?;
    let sets: [&dyn DifferenceSet; 3] = [&Powers { base: 2 }, &Powers { base: 3 }, &Primes];
    for set in sets {
        let seq = greedy_difference_sequence(set, 10)?;
        ensure(seq.satisfies_growth(), format!("{} violates growth", set.name()))?;
    }
    Ok("(2, 8, 64) and (2, 5, 41) match the oracle; growth holds for 10 terms of pow2, pow3, primes".into())
}

fn random_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    let mut xs: Vec<i64> = (0..n as i64).collect();
    let mut ys = xs.clone();
    for v in [&mut xs, &mut ys] {
        for i in (1..v.len()).rev() {
            v.swap(i, rng.random_range(0..=i));
        }
    }
    xs.into_iter().zip(ys).map(|(x, y)| Point2::int(x, y)).collect()
}

fn criterion_9() -> Result<String> {
    let h = build_hkc(2, 2, Limits::default())?;
    let real = realize_hkc_nested(&h)?;
    let hasse = dominance_hasse(&real.points)?;
    for col in all_colorings(real.points.len()) {
        ensure(naive_monochromatic_edge(&hasse, &col)?.is_some(), "2-coloring without a monochromatic Hasse edge")?;
        let path = monochromatic_increasing_path(&real.points, &col, 2)?;
        ensure(path.is_some_and(|p| p.len() == 2), "no monochromatic 2-vertex path")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..500 {
        let n = rng.random_range(3..40);
        let pts = random_points(n, &mut rng);
        let g = dominance_hasse(&pts)?;
        ensure(hypergraph_girth(&g).girth.at_least(4), "Hasse diagram has a triangle")?;
    }
    Ok("4096 colorings hit a monochromatic Hasse edge; 500 random diagrams triangle-free".into())
}

fn pretty<T: serde::Serialize + ?Sized>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))
}

/// Every artifact the checks above produce, serialized.
pub fn artifacts() -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let h = build_hkc(2, 2, Limits::default())?;
    out.push(("h22.json".into(), pretty(&h.to_json())?));
    for (name, variant) in [("plain", Variant::Plain), ("nested", Variant::Nested)] {
        let r = realize_staged(&h, variant)?;
        out.push((format!("h22-{name}.json"), pretty(&r.to_json())?));
        out.push((format!("h22-{name}.svg"), emit_svg(&r, &SvgStyle::default())?));
    }
    let g = build_gcg(2, 5, &mut OddCycleProvider, Limits::default())?;
    let gr: Realization = realize_gcg(&g)?;
    out.push(("g5.json".into(), pretty(&g.to_json())?));
    out.push(("g5.svg".into(), emit_svg(&gr, &SvgStyle::default())?));
    let nested = realize_hkc_nested(&h)?;
    out.push(("aps-pow2.json".into(), pretty(&rects_to_pow2_aps(&nested)?.to_json())?));
    let sets: [&dyn DifferenceSet; 2] = [&Primes, &Powers { base: 3 }];
    for set in sets {
        let t = rects_to_d_aps(&nested, set)?;
        out.push((format!("aps-{}.json", set.name()), pretty(&t.realization.to_json())?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut found = Vec::new();
    for _ in 0..20 {
        let colors = (0..h.n()).map(|_| rng.random_range(0..2)).collect();
        found.push(find_monochromatic_edge(&h, &Coloring::new(2, colors)?)?.edge);
    }
    out.push(("finder.json".into(), pretty(&found)?));
    let pts = random_points(30, &mut rng);
    out.push(("hasse.json".into(), pretty(dominance_hasse(&pts)?.edges())?));
    let seq = build_residue_tree(&greedy_difference_sequence(&Primes, 3)?, 3)?;
    let residues: Vec<(String, String)> =
        seq.residues.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
    out.push(("tree.json".into(), pretty(&residues)?));
    Ok(out)
}

fn criterion_10() -> Result<String> {
    let first = artifacts()?;
    let second = artifacts()?;
    ensure(first.len() == second.len(), "artifact count differs")?;
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        ensure(a.as_bytes() == b.as_bytes(), format!("{name} differs between runs"))?;
    }
    Ok(format!("{} artifacts byte-identical across two runs", first.len()))
}
