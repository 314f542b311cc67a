//! Exact maximum clique by branch and bound with greedy-colouring bounds,
//! plus a subset-scan oracle for small instances.

use crate::error::{domain, Error, Result};

/// Dense bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Undirected simple graph given by symmetric adjacency rows.
#[derive(Clone, Debug)]
pub struct AdjacencyGraph {
    rows: Vec<Bits>,
}

impl AdjacencyGraph {
    /// Builds the graph on `0..len` with an edge `{i, j}` (i != j) wherever
    /// `edge(i, j)` holds. `edge` is only called with `i < j`.
    pub fn from_fn(len: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rows = vec![Bits::new(len); len];
        for i in 0..len {
            for j in i + 1..len {
                if edge(i, j) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        AdjacencyGraph { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count()
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(a, &i)| {
            members[a + 1..]
                .iter()
                .all(|&j| i != j && self.adjacent(i, j))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Clique vertices in ascending original index order.
    pub members: Vec<usize>,
    /// Search nodes expanded.
    pub nodes: u64,
}

impl CliqueOutcome {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Maximum clique of `g`.
///
/// `incumbent`, when given, must be a clique; the search then only looks for
/// strictly larger ones and returns the incumbent if none exists. Vertices
/// are explored in descending degree order with ties broken by index, so
/// the returned clique is a deterministic function of the inputs.
pub fn max_clique(
    g: &AdjacencyGraph,
    incumbent: Option<&[usize]>,
    max_nodes: u64,
) -> Result<CliqueOutcome> {
    let len = g.len();
    if let Some(c) = incumbent {
        if c.iter().any(|&v| v >= len) || !g.is_clique(c) {
            return Err(domain("incumbent is not a clique of the graph"));
        }
    }
    // order[new] = old
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut rank = vec![0; len];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let rows: Vec<Bits> = order
        .iter()
        .map(|&old| {
            let mut row = Bits::new(len);
            for w in g.rows[old].iter() {
                row.insert(rank[w]);
            }
            row
        })
        .collect();

    let mut search = Search {
        rows: &rows,
        best: incumbent
            .map(|c| c.iter().map(|&v| rank[v]).collect())
            .unwrap_or_default(),
        nodes: 0,
        max_nodes,
    };
    let mut all = Bits::new(len);
    for v in 0..len {
        all.insert(v);
    }
    let mut current = Vec::new();
    if len > 0 {
        search.expand(&mut current, all)?;
    }
    let mut members: Vec<usize> = search.best.iter().map(|&v| order[v]).collect();
    members.sort_unstable();
    Ok(CliqueOutcome {
        members,
        nodes: search.nodes,
    })
}

struct Search<'a> {
    rows: &'a [Bits],
    best: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, mut candidates: Bits) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Budget {
                what: "search nodes",
                used: self.nodes,
                limit: self.max_nodes,
            });
        }
        let (order, colours) = self.colour(&candidates);
        for idx in (0..order.len()).rev() {
            if current.len() + colours[idx] <= self.best.len() {
                return Ok(());
            }
            let v = order[idx];
            let next = candidates.and(&self.rows[v]);
            current.push(v);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next)?;
            }
            current.pop();
            candidates.remove(v);
        }
        Ok(())
    }

    // Greedy sequential colouring; returns vertices sorted by colour with the
    // colour number of each. The colour of a vertex bounds the clique size
    // reachable from it and everything before it.
    fn colour(&self, candidates: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = candidates.clone();
        let mut order = Vec::with_capacity(candidates.count());
        let mut colours = Vec::with_capacity(order.capacity());
        let mut k = 0;
        while !uncoloured.is_empty() {
            k += 1;
            let mut open = uncoloured.clone();
            while let Some(v) = open.first() {
                open.remove(v);
                uncoloured.remove(v);
                open.and_not_assign(&self.rows[v]);
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }
}

/// Largest subset scanned by [`exhaustive_max_clique`].
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Maximum clique by scanning every vertex subset; the first maximum in
/// ascending bitmask order is returned. Intended as a test oracle.
pub fn exhaustive_max_clique(g: &AdjacencyGraph) -> Result<Vec<usize>> {
    let len = g.len();
    if len > EXHAUSTIVE_LIMIT {
        return Err(Error::Budget {
            what: "exhaustive scan vertices",
            used: len as u64,
            limit: EXHAUSTIVE_LIMIT as u64,
        });
    }
    let masks: Vec<u32> = (0..len)
        .map(|i| {
            (0..len)
                .filter(|&j| g.adjacent(i, j))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();
    let mut is_clique = vec![false; 1usize << len];
    is_clique[0] = true;
    let mut best = 0u32;
    for mask in 1u32..(1u32 << len) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = is_clique[rest as usize] && masks[low] & rest == rest;
        is_clique[mask as usize] = ok;
        if ok && mask.count_ones() > best.count_ones() {
            best = mask;
        }
    }
    Ok((0..len).filter(|&i| best >> i & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, len: usize, p: f64) -> AdjacencyGraph {
        AdjacencyGraph::from_fn(len, |_, _| rng.gen_bool(p))
    }

    #[test]
    fn agrees_with_exhaustive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let len = rng.gen_range(0..=16);
            let p = rng.gen_range(0.1..0.95);
            let g = random_graph(&mut rng, len, p);
            let bb = max_clique(&g, None, u64::MAX).unwrap();
            let ex = exhaustive_max_clique(&g).unwrap();
            assert_eq!(bb.size(), ex.len());
            assert!(g.is_clique(&bb.members));
            assert!(g.is_clique(&ex));
        }
    }

    #[test]
    fn incumbent_is_kept_when_optimal() {
        // Triangle plus a pendant vertex.
        let g = AdjacencyGraph::from_fn(4, |i, j| j < 3 || (i == 2 && j == 3));
        let out = max_clique(&g, Some(&[0, 1, 2]), 100).unwrap();
        assert_eq!(out.members, vec![0, 1, 2]);
        let out = max_clique(&g, Some(&[2, 3]), 100).unwrap();
        assert_eq!(out.size(), 3);
        assert!(max_clique(&g, Some(&[0, 3]), 100).is_err());
    }

    #[test]
    fn node_budget_is_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_graph(&mut rng, 60, 0.7);
        match max_clique(&g, None, 5) {
            Err(Error::Budget { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_graph(&mut rng, 40, 0.6);
        let a = max_clique(&g, None, u64::MAX).unwrap();
        let b = max_clique(&g, None, u64::MAX).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_and_edgeless() {
        let g = AdjacencyGraph::from_fn(0, |_, _| true);
        assert_eq!(max_clique(&g, None, 10).unwrap().size(), 0);
        let g = AdjacencyGraph::from_fn(5, |_, _| false);
        assert_eq!(max_clique(&g, None, 10).unwrap().size(), 1);
        assert_eq!(exhaustive_max_clique(&g).unwrap().len(), 1);
    }
}
