use std::fmt;
use std::str::FromStr;

use super::ConnectivityGraph;
use crate::error::{Error, Result};

const BRISTLECONE72: &str = include_str!("../../data/bristlecone72.graph");
const TOKYO20: &str = include_str!("../../data/tokyo20.graph");
const ACORN19: &str = include_str!("../../data/acorn19.graph");

pub const ARCHITECTURE_NAMES: &[&str] = &[
    "bristlecone72",
    "tokyo20",
    "acorn19",
    "example6",
    "line<n>",
    "grid<r>x<c>",
];

/// Named coupling graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Architecture {
    Bristlecone72,
    Tokyo20,
    Acorn19,
    /// The 6-qubit example device used in the worked synthesis example.
    Example6,
    Line(usize),
    Grid(usize, usize),
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownArchitecture(s.to_string());
        match s {
            "bristlecone72" | "bristlecone" => Ok(Architecture::Bristlecone72),
            "tokyo20" | "tokyo" => Ok(Architecture::Tokyo20),
            "acorn19" | "acorn" => Ok(Architecture::Acorn19),
            "example6" => Ok(Architecture::Example6),
            _ => {
                if let Some(n) = s.strip_prefix("line") {
                    let n: usize = n.parse().map_err(|_| unknown())?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Ok(Architecture::Line(n))
                } else if let Some(rc) = s.strip_prefix("grid") {
                    let (r, c) = rc.split_once('x').ok_or_else(unknown)?;
                    let r: usize = r.parse().map_err(|_| unknown())?;
                    let c: usize = c.parse().map_err(|_| unknown())?;
                    if r == 0 || c == 0 {
                        return Err(unknown());
                    }
                    Ok(Architecture::Grid(r, c))
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Architecture::Bristlecone72 => f.write_str("bristlecone72"),
            Architecture::Tokyo20 => f.write_str("tokyo20"),
            Architecture::Acorn19 => f.write_str("acorn19"),
            Architecture::Example6 => f.write_str("example6"),
            Architecture::Line(n) => write!(f, "line{n}"),
            Architecture::Grid(r, c) => write!(f, "grid{r}x{c}"),
        }
    }
}

/// Header comment lines of a bundled data file, without the `# ` prefix.
fn source_note(text: &str) -> String {
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .map(|l| l.trim_start_matches('#').trim())
        .collect::<Vec<_>>()
        .join(" ")
}

impl Architecture {
    pub fn graph(self) -> ConnectivityGraph {
        let g = match self {
            Architecture::Bristlecone72 => ConnectivityGraph::parse_text(BRISTLECONE72),
            Architecture::Tokyo20 => ConnectivityGraph::parse_text(TOKYO20),
            Architecture::Acorn19 => ConnectivityGraph::parse_text(ACORN19),
            Architecture::Example6 => ConnectivityGraph::new(
                6,
                [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4), (0, 5), (4, 5)],
            ),
            Architecture::Line(n) => Ok(ConnectivityGraph::line(n)),
            Architecture::Grid(r, c) => Ok(ConnectivityGraph::grid(r, c)),
        };
        g.expect("bundled architecture is valid").with_name(self.to_string())
    }

    pub fn description(self) -> String {
        match self {
            Architecture::Bristlecone72 => source_note(BRISTLECONE72),
            Architecture::Tokyo20 => source_note(TOKYO20),
            Architecture::Acorn19 => source_note(ACORN19),
            Architecture::Example6 => "6-qubit example device (worked synthesis example)".into(),
            Architecture::Line(n) => format!("{n}-qubit linear nearest neighbour"),
            Architecture::Grid(r, c) => format!("{r}x{c} square lattice"),
        }
    }
}

/// Looks up a coupling graph by name (`bristlecone72`, `tokyo20`, `acorn19`,
/// `example6`, `line<n>`, `grid<r>x<c>`).
pub fn builtin_architecture(name: &str) -> Result<ConnectivityGraph> {
    Ok(name.parse::<Architecture>()?.graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn declared_counts(text: &str) -> (usize, usize) {
        let line = text
            .lines()
            .find(|l| l.starts_with("# nodes="))
            .expect("data file declares counts");
        let mut it = line
            .trim_start_matches("# ")
            .split_whitespace()
            .map(|kv| kv.split_once('=').unwrap().1.parse::<usize>().unwrap());
        (it.next().unwrap(), it.next().unwrap())
    }

    #[test]
    fn bundled_files_match_their_headers() {
        for (arch, text, nodes) in [
            (Architecture::Bristlecone72, BRISTLECONE72, 72),
            (Architecture::Tokyo20, TOKYO20, 20),
            (Architecture::Acorn19, ACORN19, 19),
        ] {
            let g = arch.graph();
            assert_eq!(g.node_count(), nodes);
            assert_eq!(declared_counts(text), (g.node_count(), g.edge_count()));
            assert!(g.is_connected());
            assert!(arch.description().contains("Source"));
        }
    }

    #[test]
    fn named_lookups() {
        let line = builtin_architecture("line4").unwrap();
        assert_eq!(line.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        let ex = builtin_architecture("example6").unwrap();
        assert_eq!((ex.node_count(), ex.edge_count()), (6, 7));
        let grid = builtin_architecture("grid3x4").unwrap();
        assert_eq!((grid.node_count(), grid.edge_count()), (12, 17));
        assert!(matches!(
            builtin_architecture("sycamore53"),
            Err(Error::UnknownArchitecture(_))
        ));
        assert!(builtin_architecture("line0").is_err());
        assert!(builtin_architecture("gridx").is_err());
    }
}
