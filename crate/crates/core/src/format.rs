//! Text formats shared by the library and the command line.
//!
//! Graphs: a header `p <n> <m>` followed by `m` lines `e <u> <v>`, 0-indexed.
//! Colored graphs add one `c <v> <color>` line per vertex. Networks add
//! `io input <idx> <v>` and `io output <idx> <v>`. Matchings are lines
//! `<i> <j>`. Invariant tables start with `k <k>` and continue with lines
//! `<value>: u-v u-v ...`, one per graph. Blank lines and lines starting with
//! `#` are ignored everywhere.

use std::fmt::Write as _;
use std::path::Path;

use crate::benes::BenesNetwork;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Matching, Vertex};
use crate::indsub::GraphInvariant;
use crate::ratio;

/// Everything a graph file can carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: Graph,
    pub colors: Option<Vec<usize>>,
    /// `(index, vertex)` pairs from `io input` lines.
    pub inputs: Vec<(usize, Vertex)>,
    pub outputs: Vec<(usize, Vertex)>,
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number(line: usize, field: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {field:?}")))
}

pub fn parse_document(text: &str) -> Result<GraphDocument> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut colors: Vec<Option<usize>> = Vec::new();
    let mut any_color = false;
    let (mut inputs, mut outputs) = (Vec::new(), Vec::new());
    for (line, f) in lines(text) {
        let vertex = |field: &str, n: usize| -> Result<Vertex> {
            let v = number(line, field)?;
            if v >= n {
                return Err(Error::parse(line, format!("vertex {v} out of range 0..{n}")));
            }
            Ok(v)
        };
        match (f[0], header) {
            ("p", None) if f.len() == 3 => {
                let (n, m) = (number(line, f[1])?, number(line, f[2])?);
                header = Some((line, n, m));
                graph = Graph::new(n);
                colors = vec![None; n];
            }
            ("p", Some(_)) => return Err(Error::parse(line, "second header line")),
            (_, None) => return Err(Error::parse(line, "expected header `p <n> <m>` first")),
            ("e", Some((_, n, _))) if f.len() == 3 => {
                let (u, v) = (vertex(f[1], n)?, vertex(f[2], n)?);
                match graph.add_edge(u, v) {
                    Ok(true) => {}
                    Ok(false) => return Err(Error::parse(line, format!("duplicate edge {u}-{v}"))),
                    Err(e) => return Err(Error::parse(line, e.to_string())),
                }
            }
            ("c", Some((_, n, _))) if f.len() == 3 => {
                let v = vertex(f[1], n)?;
                if colors[v].replace(number(line, f[2])?).is_some() {
                    return Err(Error::parse(line, format!("vertex {v} colored twice")));
                }
                any_color = true;
            }
            ("io", Some((_, n, _))) if f.len() == 4 && (f[1] == "input" || f[1] == "output") => {
                let entry = (number(line, f[2])?, vertex(f[3], n)?);
                if f[1] == "input" { inputs.push(entry) } else { outputs.push(entry) }
            }
            _ => return Err(Error::parse(line, format!("unrecognized line {:?}", f.join(" ")))),
        }
    }
    let Some((line, n, m)) = header else {
        return Err(Error::parse(0, "missing header `p <n> <m>`"));
    };
    if graph.m() != m {
        return Err(Error::parse(line, format!("header announces {m} edges, found {}", graph.m())));
    }
    let colors = if any_color {
        let all: Option<Vec<usize>> = colors.into_iter().collect();
        Some(all.ok_or_else(|| Error::parse(line, format!("every one of the {n} vertices needs a color")))?)
    } else {
        None
    };
    Ok(GraphDocument { graph, colors, inputs, outputs })
}

/// The graph part of a document; color and io lines are accepted and ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(parse_document(text)?.graph)
}

pub fn parse_colored(text: &str) -> Result<ColoredGraph> {
    let doc = parse_document(text)?;
    let colors = doc.colors.ok_or_else(|| Error::parse(0, "colored graph without `c` lines"))?;
    ColoredGraph::new(doc.graph, colors)
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn format_colored(g: &ColoredGraph) -> String {
    let mut out = format_graph(&g.graph);
    for (v, c) in g.colors().iter().enumerate() {
        writeln!(out, "c {v} {c}").unwrap();
    }
    out
}

pub fn format_network(net: &BenesNetwork) -> String {
    let mut out = format_graph(&net.graph);
    for (i, v) in net.inputs.iter().enumerate() {
        writeln!(out, "io input {i} {v}").unwrap();
    }
    for (i, v) in net.outputs.iter().enumerate() {
        writeln!(out, "io output {i} {v}").unwrap();
    }
    out
}

/// Lines `<i> <j>` as raw pairs, without the matching checks.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    lines(text)
        .map(|(line, f)| match f[..] {
            [i, j] => Ok((number(line, i)?, number(line, j)?)),
            _ => Err(Error::parse(line, "expected `<i> <j>`")),
        })
        .collect()
}

pub fn parse_matching(text: &str) -> Result<Matching> {
    Matching::new(parse_pairs(text)?)
}

pub fn format_matching(m: &Matching) -> String {
    m.edges().iter().map(|(i, j)| format!("{i} {j}\n")).collect()
}

/// A table invariant: `k <k>`, then `<value>: u-v u-v ...` per graph.
pub fn parse_invariant_table(text: &str) -> Result<GraphInvariant> {
    let mut k = None;
    let mut entries = Vec::new();
    for (line, f) in lines(text) {
        match k {
            None if f.len() == 2 && f[0] == "k" => k = Some(number(line, f[1])?),
            None => return Err(Error::parse(line, "expected `k <k>` first")),
            Some(k) => {
                let joined = f.join(" ");
                let (value, edges) = joined
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line, "expected `<value>: u-v ...`"))?;
                let value = ratio::parse(value).ok_or_else(|| Error::parse(line, format!("bad value {value:?}")))?;
                let mut g = Graph::new(k);
                for e in edges.split_whitespace() {
                    let (u, v) = e.split_once('-').ok_or_else(|| Error::parse(line, format!("bad edge {e:?}")))?;
                    let (u, v) = (number(line, u)?, number(line, v)?);
                    if !g.add_edge(u, v).map_err(|err| Error::parse(line, err.to_string()))? {
                        return Err(Error::parse(line, format!("duplicate edge {e}")));
                    }
                }
                entries.push((g, value));
            }
        }
    }
    let k = k.ok_or_else(|| Error::parse(0, "missing `k <k>` line"))?;
    GraphInvariant::table(k, &entries)
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&read(path.as_ref())?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_graph(g))?)
}

pub fn read_colored(path: impl AsRef<Path>) -> Result<ColoredGraph> {
    parse_colored(&read(path.as_ref())?)
}

pub fn write_colored(g: &ColoredGraph, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_colored(g))?)
}

pub fn read_matching(path: impl AsRef<Path>) -> Result<Matching> {
    parse_matching(&read(path.as_ref())?)
}

pub fn read_invariant_table(path: impl AsRef<Path>) -> Result<GraphInvariant> {
    parse_invariant_table(&read(path.as_ref())?)
}
