//! Graph files: JSON `{"n": <int>, "edges": [[u, v], ...]}` and plain edge
//! lists with one `u v` pair per line and `#` comments.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn file_error(e: impl std::fmt::Display) -> Error {
    Error::InvalidGraphFile(e.to_string())
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
    Graph::new(n, edges).map_err(file_error)
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let parsed: GraphJson = serde_json::from_str(text).map_err(file_error)?;
    build(parsed.n, parsed.edges.into_iter().map(|[u, v]| (u, v)).collect())
}

pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    let edges = g.edges().iter().map(|&(u, v)| [u, v]).collect();
    serde_json::to_value(GraphJson { n: g.node_count(), edges }).expect("plain struct serializes")
}

/// Parses an edge list. The node count is one more than the largest id
/// unless a `# n = <count>` comment states it (for isolated trailing nodes).
pub fn graph_from_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    for (lineno, line) in text.lines().enumerate() {
        let (body, comment) = match line.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (line, None),
        };
        if let Some(c) = comment {
            if let Some(v) = c.trim().strip_prefix("n =").or_else(|| c.trim().strip_prefix("n=")) {
                declared = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| file_error(format!("line {}: bad node count {:?}", lineno + 1, v.trim())))?,
                );
            }
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [u, v] => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| file_error(format!("line {}: {s:?} is not a node id", lineno + 1)))
                };
                edges.push((parse(u)?, parse(v)?));
            }
            _ => return Err(file_error(format!("line {}: expected `u v`", lineno + 1))),
        }
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    build(declared.unwrap_or(implied), edges)
}

/// Reads JSON when the content starts with `{`, an edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        graph_from_edge_list(text)
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| file_error(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cycle;

    #[test]
    fn json_round_trip() {
        let g = cycle(5).unwrap();
        let text = graph_to_json(&g).to_string();
        assert_eq!(text, r#"{"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]],"n":5}"#);
        assert_eq!(graph_from_json(&text).unwrap(), g);
    }

    #[test]
    fn edge_list() {
        let g = graph_from_edge_list("# a triangle\n0 1\n1 2 # closing soon\n\n2 0\n").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        let g = graph_from_edge_list("# n = 4\n0 1\n").unwrap();
        assert_eq!(g.node_count(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            r#"{"n": 3, "edges": [[0, 0]]}"#,
            r#"{"n": 3, "edges": [[0, 1], [1, 0]]}"#,
            r#"{"n": 2, "edges": [[0, 5]]}"#,
            r#"{"n": 2}"#,
            "0 1\n1 0\n",
            "0 1 2\n",
            "a b\n",
        ] {
            assert!(matches!(parse_graph(bad), Err(Error::InvalidGraphFile(_))), "{bad}");
        }
    }
}
