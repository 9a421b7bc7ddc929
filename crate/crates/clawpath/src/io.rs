//! On-disk formats: edge-list text ("n m" header, then "u v" lines) and the
//! JSON instance format used by the CLI.

use crate::graph::{Graph, Instance, PathCertificate, Variant, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("expected {0} edges, found {1}")]
    EdgeCount(usize, usize),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Instance(#[from] crate::graph::InstanceError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Parse "n m" followed by m lines "u v" (0-based vertex ids).
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines
        .next()
        .ok_or_else(|| FormatError::Parse(0, "empty input".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FormatError::Parse(ln, "bad vertex count".into()))?;
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FormatError::Parse(ln, "bad edge count".into()))?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut it = line.split_whitespace();
        let u: u32 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| FormatError::Parse(ln, "bad endpoint".into()))?;
        let v: u32 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| FormatError::Parse(ln, "bad endpoint".into()))?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount(m, edges.len()));
    }
    Ok(Graph::build(n, &edges)?)
}

pub fn format_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.slot_count(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    edges: Vec<(u32, u32)>,
    terminals: Vec<u32>,
    variant: Variant,
}

/// Parse {"n":…, "edges":[[u,v]…], "terminals":[…], "variant":…}.
pub fn parse_instance_json(text: &str) -> Result<Instance, FormatError> {
    let raw: InstanceJson = serde_json::from_str(text)?;
    let graph = Graph::build(raw.n, &raw.edges)?;
    let terminals = raw.terminals.into_iter().map(VertexId).collect();
    Ok(Instance::new(graph, terminals, raw.variant)?)
}

pub fn format_instance_json(inst: &Instance) -> String {
    let raw = InstanceJson {
        n: inst.graph.slot_count(),
        edges: inst.graph.edges().iter().map(|&(u, v)| (u.0, v.0)).collect(),
        terminals: inst.terminals.iter().map(|t| t.0).collect(),
        variant: inst.variant,
    };
    serde_json::to_string_pretty(&raw).unwrap()
}

/// JSON shape of a solver answer, shared by the CLI and `verify`.
#[derive(Serialize, Deserialize)]
pub struct AnswerJson {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertificateJson {
    Path(Vec<u32>),
    Paths(Vec<Vec<u32>>),
}

impl CertificateJson {
    pub fn from_path(p: &PathCertificate) -> Self {
        CertificateJson::Path(p.vertices.iter().map(|v| v.0).collect())
    }

    pub fn from_paths(ps: &[PathCertificate]) -> Self {
        CertificateJson::Paths(
            ps.iter()
                .map(|p| p.vertices.iter().map(|v| v.0).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_roundtrip() {
        let g = Graph::build(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let text = format_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn instance_json_roundtrip() {
        let inst = Instance::new(
            Graph::cycle(6),
            vec![VertexId(0), VertexId(3)],
            Variant::OrderedPath,
        )
        .unwrap();
        let text = format_instance_json(&inst);
        assert!(text.contains("\"ordered-path\""));
        let back = parse_instance_json(&text).unwrap();
        assert_eq!(back.graph, inst.graph);
        assert_eq!(back.terminals, inst.terminals);
        assert_eq!(back.variant, inst.variant);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("2 1\n0 5").is_err());
        assert!(parse_instance_json("{\"n\":2,\"edges\":[],\"terminals\":[9],\"variant\":\"path\"}").is_err());
    }
}
