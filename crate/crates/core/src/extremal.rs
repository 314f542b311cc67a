//! Exact maximum intersecting subfamilies of independent-set families, and
//! the star comparisons built on them.
//!
//! Intersecting subfamilies of a family are exactly the cliques of its
//! compatibility graph (members adjacent when they meet), so the maximum is
//! found by the clique search in [`crate::clique`], seeded with the largest
//! star so only strictly larger families are explored.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::clique::{max_clique, AdjacencyGraph};
use crate::error::{domain, Error, Result};
use crate::graph::{Graph, GraphDescriptor, GraphKind, VertexId};
use crate::independent::{enumerate_bounded, enumerate_independent};
use crate::set::{Family, VertexSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    #[default]
    Full,
    /// Only families whose pairwise intersections meet the leaf set (path
    /// union only). Compression maps every intersecting family to one of
    /// these of the same size, so the optimum is unchanged.
    ShiftedReduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_members: usize,
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_members: 2000,
            max_nodes: 100_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub size: usize,
    pub witness: Family,
    pub nodes: u64,
    /// Members that entered the compatibility graph.
    pub candidates: usize,
}

/// Largest subfamily of `pool` in which every two members (and each member
/// with itself) satisfy `meets`. `incumbent` must already satisfy it.
pub fn max_compatible_subfamily(
    pool: &Family,
    meets: impl Fn(VertexSet, VertexSet) -> bool,
    incumbent: Option<&Family>,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    if pool.len() > budget.max_members {
        return Err(Error::Budget {
            what: "family members",
            used: pool.len() as u64,
            limit: budget.max_members as u64,
        });
    }
    let members: Vec<VertexSet> = pool.iter().copied().filter(|&a| meets(a, a)).collect();
    let graph = AdjacencyGraph::from_fn(members.len(), |i, j| meets(members[i], members[j]));
    let seed: Option<Vec<usize>> = incumbent.map(|f| {
        f.iter()
            .map(|a| {
                members
                    .binary_search(a)
                    .expect("incumbent drawn from the pool")
            })
            .collect()
    });
    let out = max_clique(&graph, seed.as_deref(), budget.max_nodes)?;
    let witness = Family::from_sets(out.members.iter().map(|&i| members[i]));
    Ok(SearchOutcome {
        size: witness.len(),
        witness,
        nodes: out.nodes,
        candidates: members.len(),
    })
}

/// Largest star of `pool`: the centre and its members. Ties go to the
/// smallest vertex index.
pub fn largest_star(g: &Graph, pool: &Family) -> (VertexId, Family) {
    (0..g.vertex_count())
        .map(|v| (VertexId(v), pool.star(v)))
        .fold(None, |best: Option<(VertexId, Family)>, cur| match best {
            Some(b) if b.1.len() >= cur.1.len() => Some(b),
            _ => Some(cur),
        })
        .expect("graphs have at least one vertex")
}

/// Exact size of a largest intersecting subfamily of the independent
/// `r`-sets.
pub fn max_intersecting_family(
    g: &Graph,
    r: usize,
    mode: SearchMode,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    let pool = enumerate_independent(g, r);
    search_pool(g, &pool, mode, budget)
}

fn search_pool(
    g: &Graph,
    pool: &Family,
    mode: SearchMode,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    match mode {
        SearchMode::Full => {
            let (_, star) = largest_star(g, pool);
            let seed = (!star.is_empty()).then_some(&star);
            max_compatible_subfamily(pool, |a, b| a.intersects(b), seed, budget)
        }
        SearchMode::ShiftedReduced => {
            if g.kind() != GraphKind::P3Union {
                return Err(domain(
                    "the reduced search relies on compression and needs the path union",
                ));
            }
            let leaves = g.leaves();
            // Leaf stars meet inside L, so they are valid seeds here.
            let star = pool.star(g.x(1).0);
            let seed = (!star.is_empty()).then_some(&star);
            max_compatible_subfamily(
                pool,
                |a, b| a.intersection(b).intersects(leaves),
                seed,
                budget,
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EkrVerdict {
    pub graph: GraphDescriptor,
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub family_size: usize,
    pub max_intersecting: usize,
    /// Largest star over all centres.
    pub star_size: usize,
    pub star_centre: usize,
    /// Star at the first leaf (`x_1` for the path union).
    pub leaf_star_size: usize,
    pub leaf_attains_largest_star: bool,
    pub is_ekr: bool,
    pub reduced: bool,
    pub nodes: u64,
    pub witness: Family,
    #[serde(skip)]
    pub millis: u128,
}

pub fn verify_ekr(
    g: &Graph,
    r: usize,
    mode: SearchMode,
    budget: SearchBudget,
) -> Result<EkrVerdict> {
    if r == 0 {
        return Err(domain("EKR verdicts need r >= 1"));
    }
    let start = Instant::now();
    let pool = enumerate_independent(g, r);
    let out = search_pool(g, &pool, mode, budget)?;
    let (centre, star) = largest_star(g, &pool);
    let leaf_star = pool.star(0).len();
    assert!(
        out.size >= star.len(),
        "an intersecting family is smaller than a star"
    );
    Ok(EkrVerdict {
        graph: g.descriptor(),
        n: g.n(),
        r,
        k: g.k(),
        family_size: pool.len(),
        max_intersecting: out.size,
        star_size: star.len(),
        star_centre: centre.report_id(),
        leaf_star_size: leaf_star,
        leaf_attains_largest_star: leaf_star == star.len(),
        is_ekr: out.size == star.len(),
        reduced: mode == SearchMode::ShiftedReduced,
        nodes: out.nodes,
        witness: out.witness,
        millis: start.elapsed().as_millis(),
    })
}

/// Which graph family a scan covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    P3,
    Claw { k: usize },
}

impl ScanKind {
    pub fn build(self, n: usize) -> Result<Graph> {
        match self {
            ScanKind::P3 => Graph::p3_union(n),
            ScanKind::Claw { k } => Graph::kclaw_union(n, k),
        }
    }

    pub fn label(self) -> String {
        match self {
            ScanKind::P3 => "p3".into(),
            ScanKind::Claw { k } => format!("claw{k}"),
        }
    }
}

/// Which statement a scan row bears on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowRegime {
    /// Path union, `2r <= n`: proved.
    Proved,
    /// Path union, `n/2 < r <= n`: conjectured.
    Conjecture,
    /// Claws with `k >= 3`, `2r <= n`: open problem.
    ClawProblem,
    /// Outside every stated regime.
    Beyond,
}

pub fn row_regime(kind: ScanKind, n: usize, r: usize) -> RowRegime {
    match kind {
        ScanKind::P3 | ScanKind::Claw { k: 2 } if 2 * r <= n => RowRegime::Proved,
        ScanKind::P3 | ScanKind::Claw { k: 2 } if r <= n => RowRegime::Conjecture,
        ScanKind::Claw { .. } if 2 * r <= n => RowRegime::ClawProblem,
        _ => RowRegime::Beyond,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowOutcome {
    Verdict(Box<EkrVerdict>),
    /// Budget hit; nothing is claimed for this row.
    Skipped {
        reason: String,
    },
    Failed {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub kind: String,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub regime: RowRegime,
    pub outcome: RowOutcome,
}

/// One verdict per `(kind, n, r)` with `1 <= n <= max_n` and
/// `1 <= r <= min(max_r, n)`.
pub fn scan_conjectures(
    max_n: usize,
    max_r: usize,
    kinds: &[ScanKind],
    mode: SearchMode,
    budget: SearchBudget,
) -> Vec<ScanRow> {
    let mut rows = Vec::new();
    for &kind in kinds {
        for n in 1..=max_n {
            for r in 1..=max_r.min(n) {
                let k = match kind {
                    ScanKind::P3 => 2,
                    ScanKind::Claw { k } => k,
                };
                let outcome = match kind.build(n).and_then(|g| {
                    let row_mode = if g.is_p3_union() {
                        mode
                    } else {
                        SearchMode::Full
                    };
                    verify_ekr(&g, r, row_mode, budget)
                }) {
                    Ok(v) => RowOutcome::Verdict(Box::new(v)),
                    Err(e @ Error::Budget { .. }) => RowOutcome::Skipped {
                        reason: e.to_string(),
                    },
                    Err(e) => RowOutcome::Failed {
                        reason: e.to_string(),
                    },
                };
                rows.push(ScanRow {
                    kind: kind.label(),
                    n,
                    k,
                    r,
                    regime: row_regime(kind, n, r),
                    outcome,
                });
            }
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChvatalVerdict {
    pub graph: GraphDescriptor,
    pub n: usize,
    pub r: usize,
    /// Independent sets of size at most `r`, the empty set included.
    pub family_size: usize,
    pub max_intersecting: usize,
    pub star_size: usize,
    pub star_centre: usize,
    pub star_maximal: bool,
    pub nodes: u64,
    pub witness: Family,
}

/// Compares the largest intersecting subfamily of the hereditary family of
/// independent sets of size at most `r` with its largest star.
pub fn verify_chvatal_for_bounded_independents(
    g: &Graph,
    r: usize,
    budget: SearchBudget,
) -> Result<ChvatalVerdict> {
    let pool = enumerate_bounded(g, r);
    let (centre, star) = largest_star(g, &pool);
    let seed = (!star.is_empty()).then_some(&star);
    let out = max_compatible_subfamily(&pool, |a, b| a.intersects(b), seed, budget)?;
    Ok(ChvatalVerdict {
        graph: g.descriptor(),
        n: g.n(),
        r,
        family_size: pool.len(),
        max_intersecting: out.size,
        star_size: star.len(),
        star_centre: centre.report_id(),
        star_maximal: out.size == star.len(),
        nodes: out.nodes,
        witness: out.witness,
    })
}
