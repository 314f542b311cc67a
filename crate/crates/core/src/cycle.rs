//! Circular arrangements of the leaf set and the interval families built on
//! them.
//!
//! Leaves are labelled `1..=2n` (`x_i -> i`, `z_i -> n + i`), which is also
//! their 1-based vertex id. Circle positions are 1-based and taken modulo
//! `2n` with representatives in `1..=2n`.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binom::{factorial, pow2};
use crate::clique::{exhaustive_max_clique, max_clique, AdjacencyGraph, EXHAUSTIVE_LIMIT};
use crate::error::{domain, Result};
use crate::set::{Family, VertexSet};

/// Reduces any integer position to its representative in `1..=modulus`.
pub fn wrap(p: i64, modulus: usize) -> usize {
    (p - 1).rem_euclid(modulus as i64) as usize + 1
}

/// A permutation of the leaf labels listed around a circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrangement {
    order: Vec<usize>,
}

impl Arrangement {
    /// `order[p - 1]` is the label at position `p`. Must be a permutation of
    /// `1..=2n` for some `n >= 1`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let len = order.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(domain(format!(
                "arrangement length {len} is not a positive even number"
            )));
        }
        let mut seen = vec![false; len + 1];
        for &a in &order {
            if a == 0 || a > len || std::mem::replace(&mut seen[a], true) {
                return Err(domain(format!(
                    "arrangement is not a permutation of 1..={len}"
                )));
            }
        }
        Ok(Arrangement { order })
    }

    pub fn identity(n: usize) -> Self {
        Arrangement {
            order: (1..=2 * n).collect(),
        }
    }

    /// Number of paths; the circle has `2n` positions.
    pub fn n(&self) -> usize {
        self.order.len() / 2
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Label at position `p`, any integer, taken modulo `2n`.
    pub fn at(&self, p: i64) -> usize {
        self.order[wrap(p, self.order.len()) - 1]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Sibling pairs sit diametrically opposite each other.
    pub fn is_good(&self) -> bool {
        let n = self.n();
        (0..n).all(|p| sibling_label(self.order[p], n) == self.order[p + n])
    }

    /// The arrangement read starting from position `1 + by`.
    pub fn rotated(&self, by: i64) -> Arrangement {
        Arrangement {
            order: (1..=self.len() as i64).map(|p| self.at(p + by)).collect(),
        }
    }
}

pub fn sibling_label(l: usize, n: usize) -> usize {
    if l > n {
        l - n
    } else {
        l + n
    }
}

fn label_set(labels: impl IntoIterator<Item = usize>) -> VertexSet {
    labels.into_iter().map(|l| l - 1).collect()
}

/// Checks the diametric-sibling condition; rejects non-permutations.
pub fn is_good(order: &[usize]) -> Result<bool> {
    Ok(Arrangement::new(order.to_vec())?.is_good())
}

/// An arrangement with every sibling pair diametrically opposite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Arrangement", into = "Arrangement")]
pub struct GoodPermutation(Arrangement);

impl TryFrom<Arrangement> for GoodPermutation {
    type Error = crate::error::Error;

    fn try_from(a: Arrangement) -> Result<Self> {
        if a.is_good() {
            Ok(GoodPermutation(a))
        } else {
            Err(domain(
                "arrangement does not put siblings diametrically opposite",
            ))
        }
    }
}

impl From<GoodPermutation> for Arrangement {
    fn from(g: GoodPermutation) -> Self {
        g.0
    }
}

impl std::ops::Deref for GoodPermutation {
    type Target = Arrangement;

    fn deref(&self) -> &Arrangement {
        &self.0
    }
}

impl GoodPermutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        Arrangement::new(order)?.try_into()
    }

    pub fn identity(n: usize) -> Self {
        GoodPermutation(Arrangement::identity(n))
    }

    /// Path `paths[p]` (1-based) occupies the diameter through position
    /// `p + 1`; `flip[p]` puts its `z` on the near side.
    pub fn from_diameters(paths: &[usize], flip: &[bool]) -> Result<Self> {
        let n = paths.len();
        if flip.len() != n {
            return Err(domain("orientation count differs from path count"));
        }
        let mut order = vec![0; 2 * n];
        for (p, (&path, &f)) in paths.iter().zip(flip).enumerate() {
            let (near, far) = if f {
                (path + n, path)
            } else {
                (path, path + n)
            };
            order[p] = near;
            order[p + n] = far;
        }
        GoodPermutation::new(order)
    }

    /// Uniformly random good permutation, built directly from a random path
    /// order and random orientations.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut paths: Vec<usize> = (1..=n).collect();
        paths.shuffle(rng);
        let flip: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        GoodPermutation::from_diameters(&paths, &flip).expect("diameter construction is good")
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.0
    }
}

/// Largest `n` accepted by [`enumerate_good`].
pub const ENUMERATE_GOOD_MAX_N: usize = 6;

/// `2^n * n!`.
pub fn count_good(n: usize) -> BigUint {
    pow2(n as u64) * factorial(n as u64)
}

/// Every good permutation, in a fixed order.
pub fn enumerate_good(n: usize) -> Result<Vec<GoodPermutation>> {
    if n == 0 || n > ENUMERATE_GOOD_MAX_N {
        return Err(domain(format!(
            "enumeration of good permutations needs 1 <= n <= {ENUMERATE_GOOD_MAX_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut paths: Vec<usize> = (1..=n).collect();
    permutations(&mut paths, 0, &mut |perm| {
        for bits in 0u32..1 << n {
            let flip: Vec<bool> = (0..n).map(|p| bits >> p & 1 == 1).collect();
            out.push(GoodPermutation::from_diameters(perm, &flip).expect("good by construction"));
        }
    });
    Ok(out)
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// A set of circle positions, kept in the order it was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positions(pub Vec<usize>);

impl Positions {
    /// `[lo, hi]`, empty when `hi < lo`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        Positions(if hi < lo {
            Vec::new()
        } else {
            (lo..=hi).collect()
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn chain(&self, other: &Positions) -> Positions {
        Positions(self.0.iter().chain(&other.0).copied().collect())
    }
}

/// Labels `sigma(c + j)` for `c` in `m`, in the order of `m`.
pub fn rotate_labels(sigma: &Arrangement, m: &Positions, j: i64) -> Vec<usize> {
    m.0.iter().map(|&c| sigma.at(c as i64 + j)).collect()
}

/// The leaf set `{sigma(c + j) : c in m}`; `j = 0` gives `sigma(m)`.
pub fn rotate(sigma: &Arrangement, m: &Positions, j: i64) -> VertexSet {
    label_set(rotate_labels(sigma, m, j))
}

/// Which of the two interval pairs forms the pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    One = 1,
    Two = 2,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// The interval scheme `S, T1, U1, T2, U2` for parameters `(s, t, u)` on a
/// circle of `2n` positions, and the chosen side `C_side = T_side ∪ U_side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclePattern {
    pub s: usize,
    pub t: usize,
    pub u: usize,
    pub side: Side,
}

impl CyclePattern {
    pub fn new(s: usize, t: usize, u: usize, side: Side) -> Self {
        CyclePattern { s, t, u, side }
    }

    /// The intervals are pairwise disjoint exactly when `s + t + u <= n`.
    pub fn check(&self, n: usize) -> Result<()> {
        if self.s + self.t + self.u > n {
            return Err(domain(format!(
                "pattern s={} t={} u={} does not fit on a circle of {} positions",
                self.s,
                self.t,
                self.u,
                2 * n
            )));
        }
        Ok(())
    }

    pub fn s_positions(&self) -> Positions {
        Positions::interval(1, self.s)
    }

    pub fn t1(&self) -> Positions {
        Positions::interval(self.s + 1, self.s + self.t)
    }

    pub fn u1(&self, n: usize) -> Positions {
        Positions::interval(self.s + 1 + n, self.s + self.u + n)
    }

    pub fn t2(&self, n: usize) -> Positions {
        Positions::interval(self.s + self.u + n + 1, self.s + self.u + n + self.t)
    }

    pub fn u2(&self) -> Positions {
        Positions::interval(self.s + self.t + 1, self.s + self.t + self.u)
    }

    /// `T_side` followed by `U_side`.
    pub fn c_positions(&self, n: usize) -> Positions {
        match self.side {
            Side::One => self.t1().chain(&self.u1(n)),
            Side::Two => self.t2(n).chain(&self.u2()),
        }
    }

    /// The same intervals on the other side.
    pub fn complement(&self) -> CyclePattern {
        CyclePattern {
            side: self.side.other(),
            ..*self
        }
    }

    /// Leaves taken: `t + u`.
    pub fn leaf_count(&self) -> usize {
        self.t + self.u
    }

    /// Sibling pairs inside every image of `C_side`: the `U` interval sits
    /// opposite part of the `T` interval.
    pub fn sibling_pairs(&self) -> usize {
        self.u.min(self.t)
    }
}

/// The three parameter regimes of the interval-family bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `u = 0`, `n >= t`: plain arcs, at most `t` pairwise intersecting.
    Arcs,
    /// `t = u`, `n >= 2t`: arc pairs covering `t` full diameters.
    Paired,
    /// `t > u >= 1`, `n >= 2(t + u)`.
    Split,
}

impl Regime {
    pub fn classify(n: usize, t: usize, u: usize) -> Result<Regime> {
        if t >= 1 && u == 0 && n >= t {
            Ok(Regime::Arcs)
        } else if t >= 1 && t == u && n >= 2 * t {
            Ok(Regime::Paired)
        } else if u >= 1 && t > u && n >= 2 * (t + u) {
            Ok(Regime::Split)
        } else {
            Err(domain(format!(
                "(n={n}, t={t}, u={u}) is outside every interval-family regime"
            )))
        }
    }

    pub fn family_size(self, n: usize) -> usize {
        match self {
            Regime::Arcs => 2 * n,
            Regime::Paired => n,
            Regime::Split => 4 * n,
        }
    }

    pub fn bound(self, t: usize, u: usize) -> usize {
        match self {
            Regime::Arcs | Regime::Paired => t,
            Regime::Split => 2 * (t + u),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleMember {
    pub set: VertexSet,
    /// Every `(side, j)` whose rotation produces this set.
    pub tags: Vec<(Side, usize)>,
}

/// `{sigma C_side^j(t, u) : side in {1, 2}, 1 <= j <= 2n}` with duplicates
/// merged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleFamily {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub u: usize,
    pub regime: Regime,
    /// Canonical order of `set`.
    pub members: Vec<CycleMember>,
}

impl CycleFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn family(&self) -> Family {
        Family::from_sets(self.members.iter().map(|m| m.set))
    }
}

pub fn build_cycle_family(
    sigma: &GoodPermutation,
    s: usize,
    t: usize,
    u: usize,
) -> Result<CycleFamily> {
    let n = sigma.n();
    let regime = Regime::classify(n, t, u)?;
    let mut raw: Vec<(VertexSet, (Side, usize))> = Vec::with_capacity(4 * n);
    for side in [Side::One, Side::Two] {
        let pattern = CyclePattern::new(s, t, u, side);
        pattern.check(n)?;
        let c = pattern.c_positions(n);
        for j in 1..=2 * n {
            raw.push((rotate(sigma, &c, j as i64), (side, j)));
        }
    }
    raw.sort();
    let mut members: Vec<CycleMember> = Vec::new();
    for (set, tag) in raw {
        match members.last_mut() {
            Some(last) if last.set == set => last.tags.push(tag),
            _ => members.push(CycleMember {
                set,
                tags: vec![tag],
            }),
        }
    }
    Ok(CycleFamily {
        n,
        s,
        t,
        u,
        regime,
        members,
    })
}

/// Largest family accepted by [`max_intersecting_subfamily_exact`].
pub const MAX_EXACT_FAMILY: usize = 256;

/// Size and one witness of a largest intersecting subfamily. Families of at
/// most 24 members are scanned exhaustively; larger ones go through the
/// clique search.
pub fn max_intersecting_subfamily_exact(f: &Family) -> Result<(usize, Family)> {
    if f.len() > MAX_EXACT_FAMILY {
        return Err(domain(format!(
            "family of {} members exceeds the exact limit {MAX_EXACT_FAMILY}",
            f.len()
        )));
    }
    // Empty members meet nothing, themselves included.
    let pool: Vec<VertexSet> = f.iter().copied().filter(|a| !a.is_empty()).collect();
    let g = AdjacencyGraph::from_fn(pool.len(), |i, j| pool[i].intersects(pool[j]));
    let picked = if pool.len() <= EXHAUSTIVE_LIMIT {
        exhaustive_max_clique(&g)?
    } else {
        max_clique(&g, None, u64::MAX)?.members
    };
    let witness = Family::from_sets(picked.iter().map(|&i| pool[i]));
    Ok((witness.len(), witness))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma23Report {
    pub regime: Regime,
    pub n: usize,
    pub t: usize,
    pub u: usize,
    pub family_size: usize,
    pub expected_family_size: usize,
    pub max_intersecting: usize,
    pub bound: usize,
    /// Arcs regime only: the bound is attained.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight: Option<bool>,
    /// Split regime only: `D^i = D^j` exactly when `j = i + n (mod 2n)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_ok: Option<bool>,
    pub pass: bool,
    pub sigma: Vec<usize>,
}

pub fn verify_lemma23(
    n: usize,
    t: usize,
    u: usize,
    sigma: &GoodPermutation,
) -> Result<Lemma23Report> {
    if sigma.n() != n {
        return Err(domain(format!(
            "permutation covers {} paths, expected {n}",
            sigma.n()
        )));
    }
    let fam = build_cycle_family(sigma, 0, t, u)?;
    let regime = fam.regime;
    let (max_intersecting, _) = max_intersecting_subfamily_exact(&fam.family())?;
    let expected_family_size = regime.family_size(n);
    let bound = regime.bound(t, u);
    let tight = (regime == Regime::Arcs).then_some(max_intersecting == t);
    let pairing_ok = (regime == Regime::Split).then(|| pairing_holds(sigma, t, u));
    let pass = fam.len() == expected_family_size
        && max_intersecting <= bound
        && tight.unwrap_or(true)
        && pairing_ok.unwrap_or(true);
    Ok(Lemma23Report {
        regime,
        n,
        t,
        u,
        family_size: fam.len(),
        expected_family_size,
        max_intersecting,
        bound,
        tight,
        pairing_ok,
        pass,
        sigma: sigma.order().to_vec(),
    })
}

/// Runs [`verify_lemma23`] for every permutation in parallel; reports come
/// back in input order.
pub fn verify_lemma23_many(
    n: usize,
    t: usize,
    u: usize,
    sigmas: &[GoodPermutation],
) -> Result<Vec<Lemma23Report>> {
    sigmas
        .par_iter()
        .map(|s| verify_lemma23(n, t, u, s))
        .collect()
}

/// `D^i = sigma C_1^i ∪ sigma C_2^i` coincide for distinct `i, j` exactly when
/// `j = i + n (mod 2n)`.
pub fn pairing_holds(sigma: &GoodPermutation, t: usize, u: usize) -> bool {
    let n = sigma.n();
    let c1 = CyclePattern::new(0, t, u, Side::One).c_positions(n);
    let c2 = CyclePattern::new(0, t, u, Side::Two).c_positions(n);
    let d: Vec<VertexSet> = (1..=2 * n as i64)
        .map(|i| rotate(sigma, &c1, i).union(rotate(sigma, &c2, i)))
        .collect();
    (0..2 * n).all(|i| {
        (0..2 * n)
            .filter(|&j| j != i)
            .all(|j| (d[i] == d[j]) == (j == (i + n) % (2 * n)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_permutations(len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (1..=len).collect();
        permutations(&mut items, 0, &mut |p| out.push(p.to_vec()));
        out
    }

    #[test]
    fn goodness_examples() {
        assert!(is_good(&[1, 2, 3, 4]).unwrap());
        assert!(!is_good(&[1, 3, 2, 4]).unwrap());
        assert!(is_good(&[1, 2, 2, 4]).is_err());
        assert!(is_good(&[1, 2, 3]).is_err());
    }

    #[test]
    fn good_counts_by_filtering() {
        for n in 1..=3 {
            let filtered = all_permutations(2 * n)
                .into_iter()
                .filter(|p| is_good(p).unwrap())
                .count();
            assert_eq!(BigUint::from(filtered), count_good(n));
            assert_eq!(enumerate_good(n).unwrap().len(), filtered);
        }
        assert_eq!(count_good(1), BigUint::from(2u32));
        assert_eq!(count_good(2), BigUint::from(8u32));
        assert_eq!(count_good(3), BigUint::from(48u32));
        assert!(enumerate_good(7).is_err());
    }

    #[test]
    fn enumerated_good_are_distinct() {
        let mut all: Vec<Vec<usize>> = enumerate_good(4)
            .unwrap()
            .iter()
            .map(|g| g.order().to_vec())
            .collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 384);
    }

    #[test]
    fn rotation_examples() {
        let sigma = Arrangement::new(vec![3, 5, 6, 1, 2, 4]).unwrap();
        let m = Positions(vec![1, 4, 5]);
        assert_eq!(rotate_labels(&sigma, &m, 1), vec![5, 2, 4]);
        assert_eq!(rotate(&sigma, &m, 1), label_set([2, 4, 5]));
        assert_eq!(rotate(&sigma, &m, 3), label_set([1, 3, 5]));
        let id = Arrangement::identity(3);
        assert_eq!(rotate(&id, &m, 0), label_set([1, 4, 5]));
    }

    #[test]
    fn rotation_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let sigma = GoodPermutation::random(n, &mut rng);
            let m = Positions::interval(1, rng.gen_range(0..=2 * n));
            let j = rng.gen_range(-20..20);
            let j2 = rng.gen_range(-20..20);
            let shifted = Positions(m.0.iter().map(|&c| wrap(c as i64 + j2, 2 * n)).collect());
            assert_eq!(rotate(&sigma, &shifted, j), rotate(&sigma, &m, j + j2));
            assert_eq!(rotate(&sigma, &m, j).len(), m.len());
            assert!(sigma.rotated(j).is_good());
        }
    }

    #[test]
    fn random_good_is_good() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=10 {
            for _ in 0..20 {
                assert!(GoodPermutation::random(n, &mut rng).is_good());
            }
        }
    }

    #[test]
    fn interval_layout() {
        let p = CyclePattern::new(2, 6, 3, Side::One);
        let n = 18;
        assert_eq!(p.t1(), Positions::interval(3, 8));
        assert_eq!(p.u1(n), Positions::interval(21, 23));
        assert_eq!(p.t2(n), Positions::interval(24, 29));
        assert_eq!(p.u2(), Positions::interval(9, 11));
        let mut all: Vec<usize> = [p.s_positions(), p.t1(), p.u1(n), p.t2(n), p.u2()]
            .iter()
            .flat_map(|x| x.0.clone())
            .collect();
        let total = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), total);
        assert_eq!(p.c_positions(n).len(), 9);
        assert_eq!(p.complement().c_positions(n).len(), 9);
        assert!(CyclePattern::new(3, 2, 2, Side::One).check(6).is_err());
    }

    #[test]
    fn family_sizes() {
        let cases = [(3, 2, 0, 6), (4, 2, 2, 4), (6, 2, 1, 24)];
        for (n, t, u, want) in cases {
            let f = build_cycle_family(&GoodPermutation::identity(n), 0, t, u).unwrap();
            assert_eq!(f.len(), want);
            for m in &f.members {
                assert!(m.set.is_subset(VertexSet::range(0, 2 * n)));
                assert_eq!(m.set.len(), t + u);
            }
        }
        assert!(build_cycle_family(&GoodPermutation::identity(3), 0, 2, 2).is_err());
        assert!(build_cycle_family(&GoodPermutation::identity(3), 0, 0, 0).is_err());
    }

    #[test]
    fn exact_subfamily_examples() {
        let arcs = build_cycle_family(&GoodPermutation::identity(3), 0, 2, 0)
            .unwrap()
            .family();
        assert_eq!(max_intersecting_subfamily_exact(&arcs).unwrap().0, 2);
        let one = Family::from_sets([label_set([1, 2])]);
        assert_eq!(max_intersecting_subfamily_exact(&one).unwrap().0, 1);
        let disjoint = Family::from_sets([label_set([1]), label_set([2]), label_set([3, 4])]);
        assert_eq!(max_intersecting_subfamily_exact(&disjoint).unwrap().0, 1);
        let big = Family::from_sets((1..=257u128).map(VertexSet::from_bits));
        assert!(max_intersecting_subfamily_exact(&big).is_err());
    }

    #[test]
    fn bound_examples() {
        let r = verify_lemma23(3, 2, 0, &GoodPermutation::identity(3)).unwrap();
        assert_eq!((r.family_size, r.max_intersecting), (6, 2));
        assert!(r.pass && r.tight == Some(true));
        let r = verify_lemma23(4, 2, 2, &GoodPermutation::identity(4)).unwrap();
        assert_eq!(r.family_size, 4);
        assert!(r.max_intersecting <= 2 && r.pass);
        let r = verify_lemma23(6, 2, 1, &GoodPermutation::identity(6)).unwrap();
        assert_eq!(r.family_size, 24);
        assert!(r.max_intersecting <= 6 && r.pass && r.pairing_ok == Some(true));
        assert!(verify_lemma23(5, 2, 1, &GoodPermutation::identity(5)).is_err());
    }

    #[test]
    fn members_avoid_centres_for_any_good_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, t, u) in [(5, 3, 0), (6, 3, 3), (8, 3, 1)] {
            for _ in 0..10 {
                let sigma = GoodPermutation::random(n, &mut rng);
                let f = build_cycle_family(&sigma, 0, t, u).unwrap();
                for m in &f.members {
                    assert!(m.set.is_subset(VertexSet::range(0, 2 * n)));
                }
            }
        }
    }
}
