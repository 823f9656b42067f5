//! Plain edge-list text: a header line `n m`, then `m` lines `u v`
//! with 0-based labels. Blank lines and `#` comments are ignored.

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("edge list line {line}: {message}")]
pub struct EdgeListError {
    pub line: usize,
    pub message: String,
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), EdgeListError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = |message: String| EdgeListError { line: line_no, message };
    if fields.len() != 2 {
        return Err(bad(format!("expected two integers, found {} fields", fields.len())));
    }
    let a = fields[0].parse().map_err(|_| bad(format!("not an integer: {:?}", fields[0])))?;
    let b = fields[1].parse().map_err(|_| bad(format!("not an integer: {:?}", fields[1])))?;
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(EdgeListError {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        let (u, v) = parse_pair(line_no, line)?;
        if u >= n || v >= n || u == v {
            return Err(EdgeListError {
                line: line_no,
                message: format!("invalid edge {u} {v} for order {n}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(EdgeListError {
            line: last_line,
            message: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::from_edges(n, edges).expect("edges validated above"))
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::cycle(5);
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_edge_list("# triangle\n3 3\n0 1\n1 2 # closing\n2 0\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        let e = parse_edge_list("3 2\n0 1\n1 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(e.message.contains("promises 2"));
    }
}
