use std::fmt::Write as _;

use super::{Graph, GraphError};

fn parse_err(line: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Parse { line, reason: reason.into() }
}

impl Graph {
    /// `v N`, then for each vertex in order its sorted neighbour list.
    pub fn to_text(&self) -> String {
        let mut out = format!("v {}\n", self.order());
        for v in 0..self.order() {
            let mut nb = self.neighbours(v).to_vec();
            nb.sort_unstable();
            let row: Vec<String> = nb.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut rows = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#'));
        let (_, header) = rows.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n: usize = header
            .trim()
            .strip_prefix("v ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| parse_err(1, "expected `v N`"))?;
        let mut g = Graph::empty(n);
        let mut seen = 0;
        for (i, row) in rows.take(n) {
            for t in row.split_whitespace() {
                let w: usize = t.parse().map_err(|_| parse_err(i + 1, "bad vertex"))?;
                g.add_edge(seen, w).map_err(|e| parse_err(i + 1, e.to_string()))?;
            }
            seen += 1;
        }
        if seen != n {
            return Err(parse_err(seen + 2, format!("expected {n} neighbour lists")));
        }
        Ok(g)
    }

    /// DIMACS edge format: `p edge N M`, `e a b` with 1-based vertices, `c` comments.
    pub fn from_dimacs(text: &str) -> Result<Graph, GraphError> {
        let mut g: Option<Graph> = None;
        for (i, row) in text.lines().enumerate() {
            let mut toks = row.split_whitespace();
            match toks.next() {
                None | Some("c") => {}
                Some("p") => {
                    let n = toks
                        .nth(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err(i + 1, "bad problem line"))?;
                    g = Some(Graph::empty(n));
                }
                Some("e") => {
                    let graph = g.as_mut().ok_or_else(|| parse_err(i + 1, "edge before problem line"))?;
                    let mut end = || -> Result<usize, GraphError> {
                        toks.next()
                            .and_then(|t| t.parse::<usize>().ok())
                            .filter(|&v| v >= 1)
                            .map(|v| v - 1)
                            .ok_or_else(|| parse_err(i + 1, "bad edge"))
                    };
                    let (a, b) = (end()?, end()?);
                    graph.add_edge(a, b).map_err(|e| parse_err(i + 1, e.to_string()))?;
                }
                Some(other) => return Err(parse_err(i + 1, format!("unknown record {other:?}"))),
            }
        }
        g.ok_or_else(|| parse_err(1, "missing problem line"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::petersen;
    use super::*;

    #[test]
    fn text_round_trip() {
        let g = petersen();
        assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
        assert!(Graph::from_text("v 2\n1\n").is_err());
    }

    #[test]
    fn dimacs_import() {
        let g = Graph::from_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 2));
        assert!(Graph::from_dimacs("e 1 2\n").is_err());
    }
}
