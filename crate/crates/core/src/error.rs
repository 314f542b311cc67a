use thiserror::Error;

use crate::set::VertexSet;

/// Failures surfaced by the workbench. Every variant is a refusal to compute,
/// never a degraded answer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inputs outside an operation's domain (bad parameters, wrong graph kind,
    /// regime violations).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("family is not intersecting: {a:?} and {b:?} are disjoint")]
    NotIntersecting { a: VertexSet, b: VertexSet },

    /// A configured resource limit was hit; exact search gave up.
    #[error("budget exceeded: {what} ({used} > {limit})")]
    Budget {
        what: &'static str,
        used: u64,
        limit: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
