//! Plain-text edge-list format.
//!
//! ```text
//! n=<vertices> loops=<0|1>
//! <u> <v>
//! ...
//! ```
//!
//! Anything after `#` on a line is a comment and blank lines are ignored.
//! [`Graph::to_edge_list`] writes the canonical form: no comments, one edge
//! per line with `u <= v`, sorted lexicographically.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub(crate) fn parse_key<T: std::str::FromStr>(line: usize, token: &str, key: &str) -> Result<T> {
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=<value>`, found `{token}`")))?;
    value
        .parse()
        .map_err(|_| parse_err(line, format!("invalid value for `{key}`: `{value}`")))
}

fn parse_header(line: usize, body: &str) -> Result<(usize, bool)> {
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(parse_err(line, "header must be `n=<int> loops=<0|1>`"));
    }
    let n = parse_key(line, tokens[0], "n")?;
    let loops = match parse_key::<u8>(line, tokens[1], "loops")? {
        0 => false,
        1 => true,
        other => return Err(parse_err(line, format!("loops must be 0 or 1, found {other}"))),
    };
    Ok((n, loops))
}

pub(crate) fn parse_graph_lines<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Graph> {
    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (n, loops) = parse_header(line, header)?;
    let mut edges = Vec::new();
    for (line, body) in lines {
        let mut it = body.split_whitespace();
        let mut endpoint = || -> Result<usize> {
            let tok = it
                .next()
                .ok_or_else(|| parse_err(line, "expected two vertices"))?;
            tok.parse()
                .map_err(|_| parse_err(line, format!("invalid vertex `{tok}`")))
        };
        let (u, v) = (endpoint()?, endpoint()?);
        if it.next().is_some() {
            return Err(parse_err(line, "expected exactly two vertices"));
        }
        if u >= n || v >= n {
            return Err(parse_err(
                line,
                format!("vertex {} out of range for n={n}", u.max(v)),
            ));
        }
        if u == v && !loops {
            return Err(parse_err(line, format!("loop at {u} but loops=0")));
        }
        edges.push((u, v));
    }
    Graph::new(n, &edges, loops)
}

impl Graph {
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={} loops={}\n", self.order(), u8::from(self.loops_allowed()));
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        parse_graph_lines(significant_lines(text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_duplicates() {
        let text = "# a path\nn=3 loops=0\n0 1 # first\n\n1 0\n2 1\n";
        let g = Graph::from_edge_list(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.to_edge_list(), "n=3 loops=0\n0 1\n1 2\n");
    }

    #[test]
    fn loops_round_trip() {
        let text = "n=2 loops=1\n0 0\n0 1\n";
        assert_eq!(Graph::from_edge_list(text).unwrap().to_edge_list(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = Graph::from_edge_list("n=3 loops=0\n0 1\n1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Graph::from_edge_list("n=3 loops=0\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Graph::from_edge_list("# only\nn=x loops=0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Graph::from_edge_list("n=3 loops=2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = Graph::from_edge_list("n=3 loops=0\n0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(Graph::from_edge_list("").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..20, any::<bool>()).prop_flat_map(|(n, loops)| {
            prop::collection::vec((0..n, 0..n), 0..60).prop_map(move |pairs| {
                let pairs: Vec<_> = pairs.into_iter().filter(|&(u, v)| loops || u != v).collect();
                Graph::new(n, &pairs, loops).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn edge_list_round_trip_is_bit_exact(g in arb_graph()) {
            let text = g.to_edge_list();
            let back = Graph::from_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_edge_list(), text);
        }
    }
}
