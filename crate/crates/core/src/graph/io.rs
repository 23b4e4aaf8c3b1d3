//! Edge-list text and JSON graph formats.
//!
//! Edge list: the first non-comment line holds `n`, every further line one
//! whitespace-separated 0-based pair `u v`. `#` starts a comment.
//! JSON: `{"n": 5, "edges": [[0, 1], ...]}`.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, Node};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Node; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(serializer)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let number = |s: &str| {
            s.parse::<usize>().map_err(|_| parse_error(line_no, format!("expected a non-negative integer, found {s:?}")))
        };
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(number(count)?),
            (None, _) => return Err(parse_error(line_no, "expected the node count on its own line")),
            (Some(count), [u, v]) => {
                let (u, v) = (number(u)?, number(v)?);
                if u >= count || v >= count {
                    return Err(parse_error(line_no, format!("node out of range for n = {count}")));
                }
                if u == v {
                    return Err(parse_error(line_no, format!("self-loop at node {u}")));
                }
                edges.push((u, v));
            }
            (Some(_), _) => return Err(parse_error(line_no, "expected two node ids per line")),
        }
    }
    let n = n.ok_or_else(|| parse_error(1, "missing node count"))?;
    Graph::new(n, edges)
}

pub fn parse_json(text: &str) -> Result<Graph, GraphError> {
    let j: GraphJson = serde_json::from_str(text)
        .map_err(|e| parse_error(e.line(), e.to_string()))?;
    Graph::try_from(j)
}

/// Dispatches on the first non-blank character: `{` selects JSON.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn serialize_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph json is always serialisable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_star_with_comments() {
        let text = "# star\n5\n3 1\n3 2 # spoke\n\n3 4\n3 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.degree(3).unwrap(), 4);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn canonical_text_round_trips() {
        let text = "5\n0 3\n1 3\n2 3\n3 4\n";
        assert_eq!(serialize_edge_list(&parse_edge_list(text).unwrap()), text);
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert_eq!(
            parse_edge_list("3\n0 1\n1 x\n"),
            Err(GraphError::Parse { line: 3, message: "expected a non-negative integer, found \"x\"".into() })
        );
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n0 3\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("# only\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_edge_list("2\n1 1\n"), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn json_format() {
        let g = parse_graph(r#"{"n": 3, "edges": [[0, 1], [2, 1]]}"#).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(serialize_json(&g), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(matches!(parse_json(r#"{"n": 2, "edges": [[0, 2]]}"#), Err(GraphError::InvalidNode { .. })));
        assert!(matches!(parse_json("{"), Err(GraphError::Parse { .. })));
    }

    proptest! {
        #[test]
        fn both_formats_round_trip(n in 1usize..9, mask in any::<u64>()) {
            let g = Graph::from_bitmask(n, mask & ((1u64 << (n * (n - 1) / 2)) - 1));
            prop_assert_eq!(parse_graph(&serialize_edge_list(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_graph(&serialize_json(&g)).unwrap(), g);
        }
    }
}
