//! Vertex-disjoint unions of length-2 paths and of k-claws.
//!
//! Vertex layout for `n` components with `k` leaves each (0-based indices):
//! leaf `j` of component `i` is `j * n + i` and the centre of component `i`
//! is `k * n + i`. For the path union (`k = 2`) this puts `x_i` at `i - 1`,
//! `z_i` at `n + i - 1` and `y_i` at `2n + i - 1` for 1-based `i`, so the
//! leaf set `L` is the contiguous block `[0, 2n)` and the 1-based report id of
//! a leaf is its position label on the circle.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::set::{VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    P3Union,
    KClawUnion { k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Leaf,
    Centre,
}

/// 0-based vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    /// 1-based id used in reports.
    pub fn report_id(self) -> usize {
        self.0 + 1
    }
}

/// `{kind, n, k?}` triple identifying a graph in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub kind: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    kind: GraphKind,
    adjacency: Vec<VertexSet>,
    roles: Vec<Role>,
    component_of: Vec<usize>,
}

impl Graph {
    /// Union of `n` paths `x_i - y_i - z_i`.
    pub fn p3_union(n: usize) -> Result<Graph> {
        Self::build(n, 2, GraphKind::P3Union)
    }

    /// Union of `n` stars `K_{1,k}`. With `k = 2` this is the path union with
    /// the same vertex numbering, only the kind tag differs.
    pub fn kclaw_union(n: usize, k: usize) -> Result<Graph> {
        if k < 2 {
            return Err(domain(format!("claw size k must be at least 2, got {k}")));
        }
        Self::build(n, k, GraphKind::KClawUnion { k })
    }

    fn build(n: usize, k: usize, kind: GraphKind) -> Result<Graph> {
        if n == 0 {
            return Err(domain("number of components n must be positive"));
        }
        let vertex_count = (k + 1)
            .checked_mul(n)
            .filter(|&v| v <= MAX_VERTICES)
            .ok_or_else(|| {
                domain(format!(
                    "{n} components of {} vertices exceed the {MAX_VERTICES}-vertex universe",
                    k + 1
                ))
            })?;
        let mut adjacency = vec![VertexSet::EMPTY; vertex_count];
        let mut roles = vec![Role::Leaf; vertex_count];
        let mut component_of = vec![0; vertex_count];
        for i in 0..n {
            let centre = k * n + i;
            roles[centre] = Role::Centre;
            component_of[centre] = i;
            for j in 0..k {
                let leaf = j * n + i;
                component_of[leaf] = i;
                adjacency[leaf] = adjacency[leaf].with(centre);
                adjacency[centre] = adjacency[centre].with(leaf);
            }
        }
        Ok(Graph {
            n,
            kind,
            adjacency,
            roles,
            component_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Leaves per component.
    pub fn k(&self) -> usize {
        match self.kind {
            GraphKind::P3Union => 2,
            GraphKind::KClawUnion { k } => k,
        }
    }

    pub fn is_p3_union(&self) -> bool {
        self.kind == GraphKind::P3Union
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.k() * self.n
    }

    pub fn neighbours(&self, v: VertexId) -> VertexSet {
        self.adjacency[v.0]
    }

    pub fn role(&self, v: VertexId) -> Role {
        self.roles[v.0]
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn descriptor(&self) -> GraphDescriptor {
        match self.kind {
            GraphKind::P3Union => GraphDescriptor {
                kind: "p3_union".into(),
                n: self.n,
                k: None,
            },
            GraphKind::KClawUnion { k } => GraphDescriptor {
                kind: "kclaw_union".into(),
                n: self.n,
                k: Some(k),
            },
        }
    }

    /// All vertices.
    pub fn universe(&self) -> VertexSet {
        VertexSet::range(0, self.vertex_count())
    }

    /// The leaf set `L` (for paths, `X ∪ Z`).
    pub fn leaves(&self) -> VertexSet {
        VertexSet::range(0, self.k() * self.n)
    }

    /// The centre set `Y`.
    pub fn centres(&self) -> VertexSet {
        VertexSet::range(self.k() * self.n, self.vertex_count())
    }

    /// Leaf `j` (0-based) of component `i` (1-based).
    pub fn leaf(&self, i: usize, j: usize) -> VertexId {
        debug_assert!((1..=self.n).contains(&i) && j < self.k());
        VertexId(j * self.n + i - 1)
    }

    /// Centre of component `i` (1-based).
    pub fn centre(&self, i: usize) -> VertexId {
        debug_assert!((1..=self.n).contains(&i));
        VertexId(self.k() * self.n + i - 1)
    }

    /// `x_i`, 1-based.
    pub fn x(&self, i: usize) -> VertexId {
        self.leaf(i, 0)
    }

    /// `y_i`, 1-based.
    pub fn y(&self, i: usize) -> VertexId {
        self.centre(i)
    }

    /// `z_i`, 1-based.
    pub fn z(&self, i: usize) -> VertexId {
        self.leaf(i, 1)
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        v.0 < self.vertex_count() && self.roles[v.0] == Role::Leaf
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| !self.adjacency[v].intersects(set))
    }

    /// The other leaf on the same path.
    pub fn sibling(&self, v: VertexId) -> Result<VertexId> {
        if !self.is_p3_union() {
            return Err(domain("siblings are only defined for the path union"));
        }
        if !self.is_leaf(v) {
            return Err(domain(format!("vertex {} is not a leaf", v.report_id())));
        }
        Ok(VertexId((v.0 + self.n) % (2 * self.n)))
    }

    /// The unique neighbour of a leaf.
    pub fn zeta(&self, l: VertexId) -> Result<VertexId> {
        if !self.is_leaf(l) {
            return Err(domain(format!("vertex {} is not a leaf", l.report_id())));
        }
        Ok(VertexId(self.k() * self.n + l.0 % self.n))
    }

    /// Maximum independent set size: all leaves.
    pub fn independence_number(&self) -> usize {
        self.k() * self.n
    }
}
