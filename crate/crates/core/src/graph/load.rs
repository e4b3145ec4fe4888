use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use super::{TemporalGraph, Timestamp};
use crate::error::{Error, Result};

/// Field separator of an edge-list file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeFormat {
    /// Runs of spaces or tabs (SNAP style).
    #[default]
    Whitespace,
    Csv,
}

impl FromStr for EdgeFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "whitespace" | "ws" | "txt" | "snap" => Ok(EdgeFormat::Whitespace),
            "csv" => Ok(EdgeFormat::Csv),
            other => Err(Error::InvalidArgument(format!("unknown edge format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    pub allow_self_loops: bool,
}

/// Reads `src dst timestamp` lines. Lines starting with `#` or `%` and blank
/// lines are skipped; errors carry the 1-based physical line number.
pub fn parse_edges<R: BufRead>(reader: R, format: EdgeFormat) -> Result<Vec<(usize, i64, i64, Timestamp)>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse { line: lineno, reason: e.to_string() })?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') || body.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = match format {
            EdgeFormat::Whitespace => body.split_whitespace().collect(),
            EdgeFormat::Csv => body.split(',').map(str::trim).collect(),
        };
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                reason: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        let num = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| Error::Parse { line: lineno, reason: format!("`{s}` is not an integer") })
        };
        out.push((lineno, num(fields[0])?, num(fields[1])?, num(fields[2])?));
    }
    Ok(out)
}

/// Loads an edge-list file into a [`TemporalGraph`].
pub fn load_graph(path: impl AsRef<Path>, format: EdgeFormat, opts: &LoadOptions) -> Result<TemporalGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let rows = parse_edges(BufReader::new(file), format)?;
    graph_from_rows(rows, opts)
}

fn graph_from_rows(rows: Vec<(usize, i64, i64, Timestamp)>, opts: &LoadOptions) -> Result<TemporalGraph> {
    if rows.is_empty() {
        return Err(Error::EmptyGraph);
    }
    // Validate here so errors report file line numbers rather than edge indices.
    for &(line, u, v, t) in &rows {
        if t < 0 {
            return Err(Error::NegativeTimestamp { line, t });
        }
        if u == v && !opts.allow_self_loops {
            return Err(Error::SelfLoop { line, label: u });
        }
    }
    TemporalGraph::from_labeled_edges(rows.into_iter().map(|(_, u, v, t)| (u, v, t)), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_str(s: &str, format: EdgeFormat) -> Result<TemporalGraph> {
        graph_from_rows(parse_edges(s.as_bytes(), format)?, &LoadOptions::default())
    }

    #[test]
    fn remaps_in_first_appearance_order() {
        let g = load_str("5 9 10\n9 7 20\n", EdgeFormat::Whitespace).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.labels(), [5, 9, 7]);
        let e: Vec<_> = g.edges().iter().map(|e| (e.src, e.dst, e.t)).collect();
        assert_eq!(e, [(0, 1, 10), (1, 2, 20)]);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_str("a b 10\n", EdgeFormat::Whitespace).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = load_str("# header\n1 2 3\n1 2\n", EdgeFormat::Whitespace).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn negative_timestamp_and_empty() {
        let err = load_str("1 2 -4\n", EdgeFormat::Whitespace).unwrap_err();
        assert!(matches!(err, Error::NegativeTimestamp { line: 1, t: -4 }));
        let err = load_str("% only a comment\n\n", EdgeFormat::Whitespace).unwrap_err();
        assert!(matches!(err, Error::EmptyGraph));
    }

    #[test]
    fn csv_and_tabs() {
        let g = load_str("1, 2, 10\n2,3,11\n", EdgeFormat::Csv).unwrap();
        assert_eq!(g.num_edges(), 2);
        let g = load_str("1\t2\t10\n2  3   11\n", EdgeFormat::Whitespace).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert!(load_str("1 2 10\n", EdgeFormat::Csv).is_err());
    }

    #[test]
    fn wiki_talk_fragment() {
        // 7 edges in the SNAP wiki-talk-temporal layout, one duplicate line
        let text = "\
# FromNodeId ToNodeId TimeStamp
2 1 1028243088
3 2 1028244401
4 2 1035735374
5 2 1037127124
5 2 1037127124
2 5 1037127538
6 2 1039286006
";
        let g = load_str(text, EdgeFormat::Whitespace).unwrap();
        assert_eq!(g.num_edges(), 7);
        assert_eq!(g.num_vertices(), 6);
        let out_total: usize = (0..6).map(|v| g.out_edges(v).len()).sum();
        let in_total: usize = (0..6).map(|v| g.in_edges(v).len()).sum();
        assert_eq!((out_total, in_total), (7, 7));
        // duplicate lines stay parallel edges
        let (u, v) = (g.labels().iter().position(|&l| l == 5).unwrap() as u32, 0u32);
        assert_eq!(g.pair_edges(u, v).len(), 2);
    }
}
