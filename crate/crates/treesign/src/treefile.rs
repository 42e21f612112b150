//! Plain-text tree files.
//!
//! One edge per line as two 1-based vertex ids, `u v`. A line `root k` picks
//! the root (default: the largest id) and `vertices n` fixes the order
//! (default: the largest id seen), which is how a single vertex is written.
//! Text after `#` and blank lines are ignored.
//!
//! ```text
//! # path on three vertices, rooted at its middle
//! 1 2
//! 2 3
//! root 2
//! ```

use std::fmt::Write as _;
use std::path::Path;

use treesign_core::treediag::{RootedTree, TreeError};

#[derive(Debug, thiserror::Error)]
pub enum TreeFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("the file has no vertices")]
    Empty,
    #[error("vertex {vertex} is larger than the declared order {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("not a tree: {0}")]
    Tree(#[from] TreeError),
}

pub fn read_tree(path: &Path) -> Result<RootedTree, TreeFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| TreeFileError::Io { path: path.display().to_string(), source })?;
    parse_tree(&text)
}

pub fn parse_tree(text: &str) -> Result<RootedTree, TreeFileError> {
    let mut edges = Vec::new();
    let mut root = None;
    let mut declared = None;
    let mut largest = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: &str| TreeFileError::Syntax { line, message: message.to_string() };
        let fields: Vec<&str> = content.split_whitespace().collect();
        let id = |s: &str| -> Result<usize, TreeFileError> {
            match s.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(syntax(&format!("`{s}` is not a vertex id (ids start at 1)"))),
            }
        };
        match fields[..] {
            ["root", k] => {
                let k = id(k)?;
                largest = largest.max(k);
                root = Some(k);
            }
            ["vertices", n] => declared = Some(id(n)?),
            [u, v] => {
                let (u, v) = (id(u)?, id(v)?);
                largest = largest.max(u).max(v);
                edges.push((u - 1, v - 1));
            }
            _ => return Err(syntax("expected `u v`, `root k` or `vertices n`")),
        }
    }
    let n = match declared {
        Some(n) if largest > n => return Err(TreeFileError::OutOfRange { vertex: largest, n }),
        Some(n) => n,
        None => largest,
    };
    if n == 0 {
        return Err(TreeFileError::Empty);
    }
    let root = root.unwrap_or(n) - 1;
    Ok(RootedTree::from_edges(n, &edges, root)?)
}

/// The file form of `tree`, edges as `child parent` in vertex order.
pub fn format_tree(tree: &RootedTree) -> String {
    let mut out = String::new();
    let n = tree.len();
    let _ = writeln!(out, "vertices {n}");
    let _ = writeln!(out, "root {}", tree.root() + 1);
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    edges.sort_unstable();
    for (c, p) in edges {
        let _ = writeln!(out, "{} {}", c + 1, p + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_root() {
        let t = parse_tree("# P3\n1 2\n\n2 3  # last edge\nroot 2\n").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.root(), 1);
        assert_eq!(t.degree(1), 2);
    }

    #[test]
    fn default_root_is_largest_id() {
        let t = parse_tree("1 2\n2 3\n").unwrap();
        assert_eq!(t.root(), 2);
    }

    #[test]
    fn single_vertex_needs_declared_order() {
        assert!(matches!(parse_tree("# nothing\n"), Err(TreeFileError::Empty)));
        assert_eq!(parse_tree("vertices 1\n").unwrap().len(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_tree("1 2\n0 1\n"), Err(TreeFileError::Syntax { line: 2, .. })));
        assert!(matches!(parse_tree("1 2 3\n"), Err(TreeFileError::Syntax { line: 1, .. })));
        assert!(matches!(parse_tree("1 2\n2 3\n3 1\n"), Err(TreeFileError::Tree(_))));
        assert!(matches!(parse_tree("vertices 2\n1 3\n"), Err(TreeFileError::OutOfRange { .. })));
    }

    #[test]
    fn round_trip() {
        let t = parse_tree("1 4\n2 4\n3 4\n4 5\nroot 4\n").unwrap();
        assert_eq!(parse_tree(&format_tree(&t)).unwrap(), t);
    }
}
