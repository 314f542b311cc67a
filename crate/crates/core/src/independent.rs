//! Independent-set families: full enumeration, centre-count strata, stars,
//! and the sibling-based type classification of leaf parts.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binom::binom;
use crate::error::{domain, Result};
use crate::graph::{Graph, VertexId};
use crate::set::{Family, VertexSet};

/// All independent sets of size `r`, canonically ordered. Empty when `r`
/// exceeds the independence number.
pub fn enumerate_independent(g: &Graph, r: usize) -> Family {
    let mut out = Vec::new();
    if r <= g.independence_number() {
        extend(g, VertexSet::EMPTY, g.universe(), r, &mut out);
    }
    Family::from_sets(out)
}

/// All independent sets of size at most `r`, including the empty set.
pub fn enumerate_bounded(g: &Graph, r: usize) -> Family {
    Family::from_sets((0..=r).flat_map(|size| enumerate_independent(g, size).into_vec()))
}

fn extend(
    g: &Graph,
    chosen: VertexSet,
    candidates: VertexSet,
    remaining: usize,
    out: &mut Vec<VertexSet>,
) {
    if remaining == 0 {
        out.push(chosen);
        return;
    }
    if candidates.len() < remaining {
        return;
    }
    let mut rest = candidates;
    while let Some(v) = rest.first() {
        rest = rest.without(v);
        let next = rest.difference(g.neighbours(VertexId(v)));
        extend(g, chosen.with(v), next, remaining - 1, out);
    }
}

/// Independent `r`-sets with exactly `s` centres.
pub fn enumerate_stratum(g: &Graph, r: usize, s: usize) -> Result<Family> {
    if s > r {
        return Err(domain(format!("stratum s = {s} exceeds set size r = {r}")));
    }
    let centres = g.centres();
    Ok(enumerate_independent(g, r).filter(|a| a.intersection(centres).len() == s))
}

/// `C(n, s) * C(2n - 2s, r - s)`: choose the centres, then any leaves off
/// their paths.
pub fn stratum_count(n: usize, r: usize, s: usize) -> BigUint {
    if s > r {
        return BigUint::zero();
    }
    let (n, r, s) = (n as i64, r as i64, s as i64);
    binom(n, s) * binom(2 * n - 2 * s, r - s)
}

/// Independent `r`-sets containing `v`.
pub fn star(g: &Graph, v: VertexId, r: usize) -> Family {
    enumerate_independent(g, r).star(v.0)
}

/// Size of the star at a leaf of the path union:
/// `sum_{s<r} C(n-1, s) * C(2n-2s-1, r-s-1)`.
pub fn star_size_formula(n: usize, r: usize) -> BigUint {
    let n = n as i64;
    (0..r as i64)
        .map(|s| binom(n - 1, s) * binom(2 * n - 2 * s - 1, r as i64 - s - 1))
        .sum()
}

/// Cross-multiplied form of `(r-s)/(2n) * |stratum(n, r, s)| = C(n-1, s) * C(2n-2s-1, r-s-1)`,
/// which turns per-stratum bounds into the leaf-star size. Requires `s < r`.
pub fn stratum_star_identity(n: usize, r: usize, s: usize) -> bool {
    debug_assert!(s < r);
    let (ni, ri, si) = (n as i64, r as i64, s as i64);
    let lhs = BigUint::from(r - s) * stratum_count(n, r, s);
    let rhs = BigUint::from(2 * n) * binom(ni - 1, si) * binom(2 * ni - 2 * si - 1, ri - si - 1);
    lhs == rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetType {
    /// No sibling pair inside the leaf part. Sets with no leaves land here.
    TypeI,
    /// Every leaf has its sibling.
    TypeII,
    TypeIII,
}

/// Leaf count and number of complete sibling pairs of a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiblingProfile {
    pub k1: usize,
    pub k2: usize,
}

impl SiblingProfile {
    pub fn unpaired(self) -> usize {
        self.k1 - 2 * self.k2
    }

    pub fn set_type(self) -> SetType {
        if self.k2 == 0 {
            SetType::TypeI
        } else if self.k1 == 2 * self.k2 {
            SetType::TypeII
        } else {
            SetType::TypeIII
        }
    }
}

pub fn sibling_profile(g: &Graph, k: VertexSet) -> Result<SiblingProfile> {
    if !g.is_p3_union() {
        return Err(domain(
            "sibling profiles are only defined for the path union",
        ));
    }
    let n = g.n();
    let leaves = k.intersection(g.leaves());
    // x_i sits at i - 1 and z_i at n + i - 1, so shifting Z down by n lines
    // each z up with its x.
    let x_part = leaves.intersection(VertexSet::range(0, n)).bits();
    let z_part = leaves.bits() >> n;
    let pairs = (x_part & z_part).count_ones() as usize;
    Ok(SiblingProfile {
        k1: leaves.len(),
        k2: pairs,
    })
}

pub fn classify_type(g: &Graph, a: VertexSet) -> Result<SetType> {
    Ok(sibling_profile(g, a)?.set_type())
}
