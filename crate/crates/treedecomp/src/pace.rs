//! The PACE ".td" exchange format for tree decompositions.
//!
//! ```text
//! c optional comments
//! s td <#bags> <max-bag-size> <n>
//! b <i> <v...>      (bag i, 1-based; vertices 1-based)
//! <i> <j>           (tree edge between bags i and j)
//! ```
//!
//! PACE vertex j corresponds to graph id j - 1. Bags not listed are empty.

use graph_core::Digraph;
use thiserror::Error;

use crate::td::{validate_td, TdViolation, TreeDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PaceError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} vertices but the graph has {actual}")]
    VertexCountMismatch { declared: usize, actual: usize },
    #[error("header declares max bag size {declared} but the largest bag has {actual}")]
    BagSizeMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Invalid(#[from] TdViolation),
}

pub fn read_td_pace(text: &str, g: &Digraph) -> Result<TreeDecomposition, PaceError> {
    let parse_err = |line: usize, msg: &str| PaceError::Parse { line, msg: msg.to_string() };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                let nums: Option<Vec<usize>> = tokens
                    .get(2..5)
                    .map(|t| t.iter().map(|x| x.parse().ok()).collect::<Option<_>>())
                    .flatten();
                match (tokens.get(1), nums, tokens.len()) {
                    (Some(&"td"), Some(nums), 5) => {
                        bags = vec![None; nums[0]];
                        header = Some((nums[0], nums[1], nums[2]));
                    }
                    _ => return Err(parse_err(line, "expected 's td <#bags> <max-bag-size> <n>'")),
                }
            }
            Some(&"b") => {
                let Some((k, _, n)) = header else {
                    return Err(parse_err(line, "'b' before header"));
                };
                let Some(i) = tokens.get(1).and_then(|t| t.parse::<usize>().ok()) else {
                    return Err(parse_err(line, "bad bag index"));
                };
                if i == 0 || i > k {
                    return Err(parse_err(line, "bag index out of range"));
                }
                if bags[i - 1].is_some() {
                    return Err(parse_err(line, "bag listed twice"));
                }
                let mut bag = Vec::new();
                for t in &tokens[2..] {
                    let Ok(v) = t.parse::<usize>() else {
                        return Err(parse_err(line, "bad vertex"));
                    };
                    if v == 0 || v > n {
                        return Err(parse_err(line, "vertex out of range"));
                    }
                    bag.push(v - 1);
                }
                bags[i - 1] = Some(bag);
            }
            Some(_) => {
                let Some((k, _, _)) = header else {
                    return Err(parse_err(line, "edge before header"));
                };
                let pair: Option<Vec<usize>> =
                    tokens.iter().map(|t| t.parse().ok()).collect();
                match pair.as_deref() {
                    Some([i, j]) if (1..=k).contains(i) && (1..=k).contains(j) => {
                        edges.push((i - 1, j - 1));
                    }
                    _ => return Err(parse_err(line, "expected a tree edge '<i> <j>'")),
                }
            }
        }
    }

    let Some((_, max_bag, n)) = header else {
        return Err(parse_err(text.lines().count() + 1, "missing header"));
    };
    if n != g.n() {
        return Err(PaceError::VertexCountMismatch { declared: n, actual: g.n() });
    }
    let td = TreeDecomposition::new(
        bags.into_iter().map(Option::unwrap_or_default).collect(),
        edges,
    );
    let actual = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    if actual != max_bag {
        return Err(PaceError::BagSizeMismatch { declared: max_bag, actual });
    }
    validate_td(g, &td)?;
    Ok(td)
}

pub fn write_td_pace(td: &TreeDecomposition, n: usize) -> String {
    let max_bag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags().len(), max_bag, n);
    for (i, bag) in td.bags().iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for &v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(a, b) in td.edges() {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let g = Digraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let text = "c comment\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let td = read_td_pace(text, &g).unwrap();
        assert_eq!(td.bags(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(td.edges(), &[(0, 1)]);
        let written = write_td_pace(&td, g.n());
        assert_eq!(read_td_pace(&written, &g).unwrap(), td);
    }

    #[test]
    fn rejects_bad_input() {
        let g = Digraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(read_td_pace("", &g), Err(PaceError::Parse { .. })));
        assert!(matches!(
            read_td_pace("s td 1 3 4\nb 1 1 2 3\n", &g),
            Err(PaceError::VertexCountMismatch { declared: 4, actual: 3 })
        ));
        assert!(matches!(
            read_td_pace("s td 2 2 3\nb 1 1 2\nb 1 2 3\n1 2\n", &g),
            Err(PaceError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            read_td_pace("s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n", &g),
            Err(PaceError::BagSizeMismatch { declared: 3, actual: 2 })
        ));
        // structurally fine but not a valid decomposition of g
        assert!(matches!(
            read_td_pace("s td 2 2 3\nb 1 1 2\nb 2 1 3\n1 2\n", &g),
            Err(PaceError::Invalid(TdViolation::ArcNotCovered { tail: 1, head: 2 }))
        ));
    }
}
