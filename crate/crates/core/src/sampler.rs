//! Weighted circle sampler for a fixed centre-count stratum.
//!
//! A draw picks a position `i`, a good permutation `sigma` and a pattern `C`
//! from the pattern family with probability `h(C)`, then returns the
//! centres `zeta(sigma(S + i))` together with the leaves `sigma(C + i)`.
//!
//! Conditioned on `i` and `C`, a target set `K` with sibling profile
//! `(k1, k2)` is produced by exactly
//!
//! ```text
//! N(C) = s! * k2! * (k1 - 2 k2)! * (n - t - s)! * 2^(k2 + n - t)
//! ```
//!
//! good permutations (`t = k1 - k2` diameters hold leaves, `k2` of them both
//! leaves). [`WeightScheme::Exact`] sets `f(C) = 1 / N(C)` (halved for the
//! two mirror patterns of a mixed profile), which makes every member of the
//! stratum equally likely. [`WeightScheme::Factorial`] keeps the closed form
//! `f(C) = 1 / ((k1 - k2)! (n - k1 + k2)!)`; it is available for comparison
//! and is not uniform in general.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binom::{factorial, pow2};
use crate::cycle::{count_good, enumerate_good, rotate, CyclePattern, GoodPermutation, Side};
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::independent::{
    enumerate_stratum, sibling_profile, stratum_count, SetType, SiblingProfile,
};
use crate::set::{Family, VertexSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    #[default]
    Exact,
    Factorial,
}

/// Whether a pattern comes from the single-generator part (types I and II)
/// or from a mirror pair (type III).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternGroup {
    Single,
    Mirrored,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPattern {
    pub pattern: CyclePattern,
    pub group: PatternGroup,
    pub profile: SiblingProfile,
    pub f: BigRational,
    pub h: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFamily {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub scheme: WeightScheme,
    /// Single-generator patterns first, then mirror pairs by ascending `t`.
    pub patterns: Vec<WeightedPattern>,
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// `"p/q"` in lowest terms, denominator always written.
pub fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Good permutations producing a fixed target for a fixed `(i, C)`.
pub fn joint_count(n: usize, s: usize, profile: SiblingProfile) -> BigUint {
    let (k1, k2) = (profile.k1 as u64, profile.k2 as u64);
    let (n, s) = (n as u64, s as u64);
    let t = k1 - k2;
    factorial(s) * factorial(k2) * factorial(k1 - 2 * k2) * factorial(n - t - s) * pow2(k2 + n - t)
}

/// Good permutations placing a fixed leaf target at `sigma(C + i)`,
/// ignoring the centres.
pub fn leaf_count(n: usize, profile: SiblingProfile) -> BigUint {
    let (k1, k2, n) = (profile.k1 as u64, profile.k2 as u64, n as u64);
    let t = k1 - k2;
    factorial(k2) * pow2(k2) * factorial(k1 - 2 * k2) * factorial(n - t) * pow2(n - t)
}

fn factorial_denominator(n: usize, profile: SiblingProfile) -> BigUint {
    let t = (profile.k1 - profile.k2) as u64;
    factorial(t) * factorial(n as u64 - t)
}

/// Patterns and weights for stratum `s` of size-`r` sets. Requires
/// `s < r <= n` so every interval fits on the circle.
pub fn build_pattern_family(
    n: usize,
    r: usize,
    s: usize,
    scheme: WeightScheme,
) -> Result<PatternFamily> {
    if !(s < r && r <= n) {
        return Err(domain(format!(
            "pattern family needs s < r <= n, got n={n} r={r} s={s}"
        )));
    }
    let k1 = r - s;
    let mut shapes: Vec<(CyclePattern, PatternGroup)> =
        vec![(CyclePattern::new(s, k1, 0, Side::One), PatternGroup::Single)];
    if k1.is_multiple_of(2) {
        shapes.push((
            CyclePattern::new(s, k1 / 2, k1 / 2, Side::One),
            PatternGroup::Single,
        ));
    }
    for t in k1 / 2 + 1..k1 {
        for side in [Side::One, Side::Two] {
            shapes.push((
                CyclePattern::new(s, t, k1 - t, side),
                PatternGroup::Mirrored,
            ));
        }
    }
    let mut patterns: Vec<WeightedPattern> = shapes
        .into_iter()
        .map(|(pattern, group)| {
            let profile = SiblingProfile {
                k1,
                k2: pattern.sibling_pairs(),
            };
            let den = match scheme {
                WeightScheme::Exact => joint_count(n, s, profile),
                WeightScheme::Factorial => factorial_denominator(n, profile),
            };
            let halve = if group == PatternGroup::Mirrored {
                2u32
            } else {
                1
            };
            let f = ratio(BigUint::one(), den * halve);
            WeightedPattern {
                pattern,
                group,
                profile,
                f,
                h: BigRational::zero(),
            }
        })
        .collect();
    let total: BigRational = patterns.iter().map(|p| p.f.clone()).sum();
    for p in &mut patterns {
        p.h = &p.f / &total;
    }
    Ok(PatternFamily {
        n,
        r,
        s,
        scheme,
        patterns,
    })
}

fn centre_of_label(n: usize, label: usize) -> usize {
    2 * n + (label - 1) % n
}

/// The set drawn for position `i`, permutation `sigma` and pattern `C`.
pub fn sample_point(
    g: &Graph,
    sigma: &GoodPermutation,
    i: usize,
    pattern: &CyclePattern,
) -> VertexSet {
    let n = g.n();
    let centres: VertexSet = pattern
        .s_positions()
        .0
        .iter()
        .map(|&p| centre_of_label(n, sigma.at((p + i) as i64)))
        .collect();
    centres.union(rotate(sigma, &pattern.c_positions(n), i as i64))
}

fn require_paths(g: &Graph) -> Result<()> {
    if g.is_p3_union() {
        Ok(())
    } else {
        Err(domain(
            "the circle sampler is only defined for the path union",
        ))
    }
}

/// Integer weights proportional to `h`, for exact discrete sampling.
fn integer_weights(family: &PatternFamily) -> Vec<BigUint> {
    let lcm = family.patterns.iter().fold(BigInt::one(), |acc, p| {
        num_integer::Integer::lcm(&acc, p.h.denom())
    });
    family
        .patterns
        .iter()
        .map(|p| {
            (&p.h * BigRational::from_integer(lcm.clone()))
                .to_integer()
                .to_biguint()
                .expect("non-negative")
        })
        .collect()
}

/// A seeded sampler over one stratum.
pub struct Sampler {
    family: PatternFamily,
    weights: Vec<BigUint>,
    total: BigUint,
}

impl Sampler {
    pub fn new(g: &Graph, r: usize, s: usize, scheme: WeightScheme) -> Result<Sampler> {
        require_paths(g)?;
        let family = build_pattern_family(g.n(), r, s, scheme)?;
        let weights = integer_weights(&family);
        let total = weights.iter().sum();
        Ok(Sampler {
            family,
            weights,
            total,
        })
    }

    pub fn family(&self) -> &PatternFamily {
        &self.family
    }

    pub fn draw<R: Rng + ?Sized>(&self, g: &Graph, rng: &mut R) -> VertexSet {
        let n = g.n();
        let i = rng.gen_range(1..=2 * n);
        let sigma = GoodPermutation::random(n, rng);
        let mut ticket = rng.gen_biguint_below(&self.total);
        let mut chosen = self.family.patterns.len() - 1;
        for (idx, w) in self.weights.iter().enumerate() {
            if &ticket < w {
                chosen = idx;
                break;
            }
            ticket -= w;
        }
        sample_point(g, &sigma, i, &self.family.patterns[chosen].pattern)
    }
}

/// One draw from stratum `s` of size-`r` independent sets.
pub fn sample_independent_set<R: Rng + ?Sized>(
    g: &Graph,
    r: usize,
    s: usize,
    rng: &mut R,
) -> Result<VertexSet> {
    Ok(Sampler::new(g, r, s, WeightScheme::Exact)?.draw(g, rng))
}

/// Largest `n` for which the sample space is enumerated exactly.
pub const EXACT_MAX_N: usize = 4;

fn check_exact_n(g: &Graph) -> Result<()> {
    require_paths(g)?;
    if g.n() > EXACT_MAX_N {
        return Err(domain(format!(
            "exact enumeration supports n <= {EXACT_MAX_N}, got {}",
            g.n()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MassEntry {
    pub set: VertexSet,
    #[serde(serialize_with = "ser_ratio")]
    pub mass: BigRational,
}

fn ser_ratio<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub scheme: WeightScheme,
    pub stratum_size: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub expected_mass: BigRational,
    /// Canonical set order.
    pub masses: Vec<MassEntry>,
    /// Stratum members with the wrong mass, and produced sets outside the
    /// stratum.
    pub offenders: Vec<MassEntry>,
    pub uniform: bool,
}

/// Exact law of the sampler, by walking every `(sigma, i, C)`.
pub fn exact_distribution(
    g: &Graph,
    r: usize,
    s: usize,
    scheme: WeightScheme,
) -> Result<Distribution> {
    check_exact_n(g)?;
    let n = g.n();
    let family = build_pattern_family(n, r, s, scheme)?;
    let sigmas = enumerate_good(n)?;
    let k = family.patterns.len();
    let counts: HashMap<VertexSet, Vec<u64>> = sigmas
        .par_iter()
        .fold(
            HashMap::new,
            |mut acc: HashMap<VertexSet, Vec<u64>>, sigma| {
                for i in 1..=2 * n {
                    for (idx, p) in family.patterns.iter().enumerate() {
                        let set = sample_point(g, sigma, i, &p.pattern);
                        acc.entry(set).or_insert_with(|| vec![0; k])[idx] += 1;
                    }
                }
                acc
            },
        )
        .reduce(HashMap::new, |mut a, b| {
            for (set, v) in b {
                let e = a.entry(set).or_insert_with(|| vec![0; k]);
                for (x, y) in e.iter_mut().zip(v) {
                    *x += y;
                }
            }
            a
        });
    let space = BigRational::from_integer(BigInt::from(count_good(n) * big(2 * n as u64)));
    let mut masses: Vec<MassEntry> = counts
        .into_iter()
        .map(|(set, per)| {
            let weighted: BigRational = per
                .iter()
                .zip(&family.patterns)
                .map(|(&c, p)| &p.h * BigRational::from_integer(BigInt::from(c)))
                .sum();
            MassEntry {
                set,
                mass: weighted / &space,
            }
        })
        .collect();
    masses.sort_by_key(|m| m.set);

    let stratum = enumerate_stratum(g, r, s)?;
    let expected_mass = ratio(BigUint::one(), stratum_count(n, r, s));
    let mut offenders: Vec<MassEntry> = masses
        .iter()
        .filter(|m| !stratum.contains(m.set) || m.mass != expected_mass)
        .cloned()
        .collect();
    for &k in &stratum {
        if masses.binary_search_by_key(&k, |m| m.set).is_err() {
            offenders.push(MassEntry {
                set: k,
                mass: BigRational::zero(),
            });
        }
    }
    offenders.sort_by_key(|m| m.set);
    Ok(Distribution {
        n,
        r,
        s,
        scheme,
        stratum_size: stratum.len(),
        expected_mass,
        uniform: offenders.is_empty(),
        masses,
        offenders,
    })
}

/// Conditional probabilities behind the weight choice, measured exactly and
/// compared with closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntermediateReport {
    pub target: VertexSet,
    pub set_type: SetType,
    pub profile: SiblingProfile,
    /// Pr[sigma C^i = K ∩ L], identical for every `i`.
    #[serde(serialize_with = "ser_ratio")]
    pub leaf_probability: BigRational,
    /// Pr[zeta(sigma S^i) = K ∩ Y | sigma C^i = K ∩ L], identical for every `i`.
    #[serde(serialize_with = "ser_ratio")]
    pub centre_probability: BigRational,
    pub same_for_every_position: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub corrected_leaf: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub corrected_centre: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub factorial_leaf: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub factorial_centre: BigRational,
    pub matches_corrected: bool,
    pub matches_factorial_leaf: bool,
    pub matches_factorial_centre: bool,
}

pub fn intermediate_probability_check(
    g: &Graph,
    r: usize,
    s: usize,
    target: VertexSet,
    scheme: WeightScheme,
) -> Result<IntermediateReport> {
    check_exact_n(g)?;
    let n = g.n();
    let stratum = enumerate_stratum(g, r, s)?;
    if !stratum.contains(target) {
        return Err(domain(format!(
            "{target:?} is not an independent {r}-set with {s} centres"
        )));
    }
    let family = build_pattern_family(n, r, s, scheme)?;
    let profile = sibling_profile(g, target)?;
    let leaf_target = target.intersection(g.leaves());
    let centre_target = target.intersection(g.centres());
    let sigmas = enumerate_good(n)?;
    let goods = BigRational::from_integer(BigInt::from(count_good(n)));

    let mut per_position = Vec::with_capacity(2 * n);
    for i in 1..=2 * n {
        let mut leaf = BigRational::zero();
        let mut joint = BigRational::zero();
        for p in &family.patterns {
            let c = p.pattern.c_positions(n);
            let (mut hits, mut both) = (0u64, 0u64);
            for sigma in &sigmas {
                if rotate(sigma, &c, i as i64) == leaf_target {
                    hits += 1;
                    if sample_point(g, sigma, i, &p.pattern).intersection(g.centres())
                        == centre_target
                    {
                        both += 1;
                    }
                }
            }
            leaf += &p.h * BigRational::from_integer(BigInt::from(hits)) / &goods;
            joint += &p.h * BigRational::from_integer(BigInt::from(both)) / &goods;
        }
        let centre = if leaf.is_zero() {
            BigRational::zero()
        } else {
            &joint / &leaf
        };
        per_position.push((leaf, centre));
    }
    let same = per_position.windows(2).all(|w| w[0] == w[1]);
    let (leaf_probability, centre_probability) = per_position.swap_remove(0);

    let h_matching: BigRational = family
        .patterns
        .iter()
        .filter(|p| p.profile == profile)
        .map(|p| p.h.clone())
        .sum();
    let t = (profile.k1 - profile.k2) as u64;
    let corrected_leaf = ratio(leaf_count(n, profile), count_good(n)) * &h_matching;
    let corrected_centre = ratio(
        factorial(s as u64) * factorial(n as u64 - t - s as u64),
        factorial(n as u64 - t),
    );
    let factorial_leaf = ratio(factorial_denominator(n, profile), count_good(n)) * &h_matching;
    let factorial_centre = ratio(
        pow2(s as u64) * factorial((n - s) as u64) * factorial(s as u64),
        count_good(n),
    );
    Ok(IntermediateReport {
        target,
        set_type: profile.set_type(),
        profile,
        matches_corrected: same
            && leaf_probability == corrected_leaf
            && centre_probability == corrected_centre,
        matches_factorial_leaf: leaf_probability == factorial_leaf,
        matches_factorial_centre: centre_probability == factorial_centre,
        leaf_probability,
        centre_probability,
        same_for_every_position: same,
        corrected_leaf,
        corrected_centre,
        factorial_leaf,
        factorial_centre,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumBound {
    pub s: usize,
    pub members: usize,
    /// Pr[I in F_s] under the sampler.
    #[serde(serialize_with = "ser_ratio")]
    pub probability: BigRational,
    /// |F_s| / |stratum|.
    #[serde(serialize_with = "ser_ratio")]
    pub density: BigRational,
    /// (r - s) / 2n.
    #[serde(serialize_with = "ser_ratio")]
    pub bound: BigRational,
    /// Largest Pr[I in F_s | sigma, group] over permutations and pattern
    /// groups (a single pattern, or a mirror pair).
    #[serde(serialize_with = "ser_ratio")]
    pub worst_conditional: BigRational,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundChainReport {
    pub n: usize,
    pub r: usize,
    pub family_size: usize,
    pub strata: Vec<StratumBound>,
    /// No member consists of centres only.
    pub top_stratum_empty: bool,
    pub star_bound: String,
    pub ok: bool,
}

/// Largest `n` for [`bound_chain_check`].
pub const BOUND_CHAIN_MAX_N: usize = 5;

/// Measures, for a shifted intersecting family `F` of size-`r` sets, every
/// quantity in the averaging argument: per stratum the sampler probability
/// of landing in `F_s`, its agreement with the stratum density, and the
/// conditional probabilities given `sigma` and a pattern group, each against
/// `(r - s) / 2n`.
pub fn bound_chain_check(g: &Graph, f: &Family, r: usize) -> Result<BoundChainReport> {
    require_paths(g)?;
    let n = g.n();
    if n > BOUND_CHAIN_MAX_N {
        return Err(domain(format!(
            "bound chain check supports n <= {BOUND_CHAIN_MAX_N}, got {n}"
        )));
    }
    if f.uniform_size().is_some_and(|size| size != r) {
        return Err(domain(format!("family members are not {r}-sets")));
    }
    let sigmas = enumerate_good(n)?;
    let centres = g.centres();
    let two_n = BigRational::from_integer(BigInt::from(2 * n));
    let mut strata = Vec::new();
    let mut ok = true;
    let mut star_bound = BigRational::zero();
    for s in 0..r {
        let members = f.filter(|a| a.intersection(centres).len() == s);
        let family = build_pattern_family(n, r, s, WeightScheme::Exact)?;
        let bound = BigRational::new(BigInt::from(r - s), BigInt::from(2 * n));
        star_bound += &bound * BigRational::from_integer(BigInt::from(stratum_count(n, r, s)));

        // Pattern groups: singles alone, mirrored patterns with their partner.
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (idx, p) in family.patterns.iter().enumerate() {
            match p.group {
                PatternGroup::Single => groups.push(vec![idx]),
                PatternGroup::Mirrored if p.pattern.side == Side::One => {
                    let partner = family
                        .patterns
                        .iter()
                        .position(|q| q.pattern == p.pattern.complement())
                        .expect("mirror partner present");
                    groups.push(vec![idx, partner]);
                }
                PatternGroup::Mirrored => {}
            }
        }

        // hits[sigma][pattern] = positions i landing in F_s
        let per_sigma: Vec<Vec<u64>> = sigmas
            .par_iter()
            .map(|sigma| {
                family
                    .patterns
                    .iter()
                    .map(|p| {
                        (1..=2 * n)
                            .filter(|&i| members.contains(sample_point(g, sigma, i, &p.pattern)))
                            .count() as u64
                    })
                    .collect()
            })
            .collect();

        let mut total_hits = vec![0u64; family.patterns.len()];
        let mut worst = BigRational::zero();
        for hits in &per_sigma {
            for (t, h) in total_hits.iter_mut().zip(hits) {
                *t += h;
            }
            for group in &groups {
                let weight: BigRational = group.iter().map(|&i| family.patterns[i].h.clone()).sum();
                let mass: BigRational = group
                    .iter()
                    .map(|&i| {
                        &family.patterns[i].h * BigRational::from_integer(BigInt::from(hits[i]))
                    })
                    .sum();
                let conditional = mass / (&weight * &two_n);
                if conditional > worst {
                    worst = conditional;
                }
            }
        }
        let space = BigRational::from_integer(BigInt::from(count_good(n))) * &two_n;
        let probability: BigRational = total_hits
            .iter()
            .zip(&family.patterns)
            .map(|(&c, p)| &p.h * BigRational::from_integer(BigInt::from(c)))
            .sum::<BigRational>()
            / space;
        let density = ratio(big(members.len() as u64), stratum_count(n, r, s));
        let stratum_ok = probability == density && probability <= bound && worst <= bound;
        ok &= stratum_ok;
        strata.push(StratumBound {
            s,
            members: members.len(),
            probability,
            density,
            bound,
            worst_conditional: worst,
            ok: stratum_ok,
        });
    }
    let top_stratum_empty = f.iter().all(|a| !a.is_subset(centres) || a.is_empty());
    ok &= top_stratum_empty && BigRational::from_integer(BigInt::from(f.len())) <= star_bound;
    Ok(BoundChainReport {
        n,
        r,
        family_size: f.len(),
        strata,
        top_stratum_empty,
        star_bound: ratio_string(&star_bound),
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub seed: u64,
    pub draws: u64,
    pub stratum_size: usize,
    /// Largest |observed - expected| frequency in standard errors.
    pub max_deviation_se: f64,
    pub outside_stratum: u64,
    pub within_tolerance: bool,
    pub tolerance_se: f64,
}

/// Empirical check of the sampler against the uniform law on the stratum.
pub fn monte_carlo(
    g: &Graph,
    r: usize,
    s: usize,
    draws: u64,
    seed: u64,
    tolerance_se: f64,
) -> Result<MonteCarloReport> {
    let sampler = Sampler::new(g, r, s, WeightScheme::Exact)?;
    let stratum = enumerate_stratum(g, r, s)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; stratum.len()];
    let mut outside = 0;
    for _ in 0..draws {
        let set = sampler.draw(g, &mut rng);
        match stratum.members().binary_search(&set) {
            Ok(idx) => counts[idx] += 1,
            Err(_) => outside += 1,
        }
    }
    let p = 1.0 / stratum.len() as f64;
    let se = (p * (1.0 - p) / draws as f64).sqrt();
    let max_dev = counts
        .iter()
        .map(|&c| {
            let dev = (c as f64 / draws as f64 - p).abs();
            if se > 0.0 {
                dev / se
            } else {
                dev
            }
        })
        .fold(0.0, f64::max);
    Ok(MonteCarloReport {
        n: g.n(),
        r,
        s,
        seed,
        draws,
        stratum_size: stratum.len(),
        max_deviation_se: max_dev,
        outside_stratum: outside,
        within_tolerance: outside == 0 && max_dev <= tolerance_se,
        tolerance_se,
    })
}
