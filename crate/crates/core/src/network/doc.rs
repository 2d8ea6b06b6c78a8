//! The JSON network document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Weight;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Source,
    Sink,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

/// One end of an edge, serialized as `[edge_id, "tail" | "head"]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "(String, End)", into = "(String, End)")]
pub struct HalfEdge {
    pub edge: String,
    pub end: End,
}

impl HalfEdge {
    pub fn new(edge: impl Into<String>, end: End) -> Self {
        HalfEdge { edge: edge.into(), end }
    }

    pub fn tail(edge: impl Into<String>) -> Self {
        HalfEdge::new(edge, End::Tail)
    }

    pub fn head(edge: impl Into<String>) -> Self {
        HalfEdge::new(edge, End::Head)
    }
}

impl From<(String, End)> for HalfEdge {
    fn from((edge, end): (String, End)) -> Self {
        HalfEdge { edge, end }
    }
}

impl From<HalfEdge> for (String, End) {
    fn from(h: HalfEdge) -> Self {
        (h.edge, h.end)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryVertex {
    pub id: String,
    pub role: Role,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub weight: Weight,
}

/// Unvalidated network description. Boundary vertices are listed clockwise;
/// rotation lists are clockwise as well.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    #[serde(default)]
    pub name: String,
    pub planar: bool,
    pub boundary: Vec<BoundaryVertex>,
    #[serde(default)]
    pub interior: Vec<String>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<HalfEdge>>>,
}

impl NetworkDoc {
    pub fn edge(&mut self, id: &str, tail: &str, head: &str, weight: Weight) -> &mut Self {
        self.edges.push(Edge {
            id: id.to_owned(),
            tail: tail.to_owned(),
            head: head.to_owned(),
            weight,
        });
        self
    }

    pub fn find_edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }
}
