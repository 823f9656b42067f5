use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use anyhow::{bail, Context, Result};
use ddom::{parse_graph6, Graph};

/// A graph read from a stream, with its 1-based line number.
pub struct Numbered {
    pub line: usize,
    pub graph: Graph,
}

/// Reads graph6 lines from `path`, or from stdin for `None` or `-`.
/// Blank lines and lines starting with `#` are skipped. The first
/// malformed line aborts the read.
pub fn read_graphs(path: Option<&Path>) -> Result<Vec<Numbered>> {
    let reader: Box<dyn BufRead> = match path {
        None => Box::new(BufReader::new(io::stdin().lock())),
        Some(p) if p.as_os_str() == "-" => Box::new(BufReader::new(io::stdin().lock())),
        Some(p) => Box::new(BufReader::new(File::open(p).with_context(|| format!("opening {}", p.display()))?)),
    };
    parse_lines(reader)
}

fn parse_lines(reader: impl BufRead) -> Result<Vec<Numbered>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.with_context(|| format!("reading line {}", i + 1))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match parse_graph6(text) {
            Ok(graph) if graph.order() == 0 => bail!("line {}: graph has no vertices", i + 1),
            Ok(graph) => out.push(Numbered { line: i + 1, graph }),
            Err(e) => bail!("line {}: {e}", i + 1),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_comments_and_reports_line_numbers() {
        let ok = parse_lines("# header\nCl\n\n@\n".as_bytes()).unwrap();
        assert_eq!(ok.iter().map(|g| g.line).collect::<Vec<_>>(), vec![2, 4]);
        let err = parse_lines("Cl\nC!\n".as_bytes()).err().unwrap();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
        let err = parse_lines("?\n".as_bytes()).err().unwrap();
        assert!(err.to_string().contains("no vertices"));
    }
}
