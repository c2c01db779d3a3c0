//! Graph exchange formats (graph6, digraph6, edge list, adjacency JSON) and
//! run manifests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::graphs::ColoredDigraph;

pub const GRAPH6_MAX: usize = 68_719_476_735;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Graph6,
    Digraph6,
    EdgeList,
    AdjacencyJson,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" => Ok(GraphFormat::Graph6),
            "digraph6" => Ok(GraphFormat::Digraph6),
            "edge-list" => Ok(GraphFormat::EdgeList),
            "adjacency-json" => Ok(GraphFormat::AdjacencyJson),
            _ => Err(Error::Parse(format!("unknown graph format '{s}'"))),
        }
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let sextet = |b: u8| {
        if (63..=126).contains(&b) {
            Ok((b - 63) as usize)
        } else {
            Err(Error::Parse(format!("byte {b} outside the printable range")))
        }
    };
    let take = |rest: &[u8], k: usize| -> Result<usize> {
        if rest.len() < k {
            return Err(Error::Parse("truncated size header".into()));
        }
        rest[..k].iter().try_fold(0usize, |acc, &b| Ok((acc << 6) | sextet(b)?))
    };
    match bytes {
        [] => Err(Error::Parse("empty input".into())),
        [126, 126, rest @ ..] => Ok((take(rest, 6)?, &rest[6..])),
        [126, rest @ ..] => Ok((take(rest, 3)?, &rest[3..])),
        [b, rest @ ..] => Ok((sextet(*b)?, rest)),
    }
}

fn pack_bits(bits: impl Iterator<Item = bool>, out: &mut Vec<u8>) {
    let mut acc = 0u8;
    let mut k = 0;
    for b in bits {
        acc = (acc << 1) | b as u8;
        k += 1;
        if k == 6 {
            out.push(acc + 63);
            acc = 0;
            k = 0;
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
}

fn unpack_bits(bytes: &[u8], count: usize) -> Result<Vec<bool>> {
    let need = count.div_ceil(6);
    if bytes.len() != need {
        return Err(Error::Parse(format!(
            "expected {need} data bytes, found {}",
            bytes.len()
        )));
    }
    let mut out = Vec::with_capacity(need * 6);
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("byte {b} outside the printable range")));
        }
        let v = b - 63;
        out.extend((0..6).rev().map(|i| (v >> i) & 1 == 1));
    }
    if out[count..].iter().any(|&b| b) {
        return Err(Error::Parse("nonzero padding bits".into()));
    }
    out.truncate(count);
    Ok(out)
}

/// Upper triangle, column by column.
pub fn to_graph6(a: &BitMatrix) -> Result<String> {
    if !a.is_symmetric() || a.has_loops() {
        return Err(Error::AsymmetricForGraph6);
    }
    let n = a.size();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    pack_bits((1..n).flat_map(|j| (0..j).map(move |i| a.get(i, j))), &mut out);
    Ok(String::from_utf8(out).expect("printable ASCII"))
}

pub fn from_graph6(s: &str) -> Result<BitMatrix> {
    let bytes = s.trim_end().as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (n, rest) = decode_size(bytes)?;
    let bits = unpack_bits(rest, n * n.saturating_sub(1) / 2)?;
    let mut a = BitMatrix::new(n);
    let mut it = bits.into_iter();
    for j in 1..n {
        for i in 0..j {
            if it.next() == Some(true) {
                a.set(i, j, true);
                a.set(j, i, true);
            }
        }
    }
    Ok(a)
}

/// `&`, the size, then the full matrix row by row.
pub fn to_digraph6(a: &BitMatrix) -> String {
    let n = a.size();
    let mut out = vec![b'&'];
    encode_size(n, &mut out);
    pack_bits((0..n).flat_map(|i| (0..n).map(move |j| a.get(i, j))), &mut out);
    String::from_utf8(out).expect("printable ASCII")
}

pub fn from_digraph6(s: &str) -> Result<BitMatrix> {
    let bytes = s.trim_end().as_bytes();
    let bytes = bytes.strip_prefix(b">>digraph6<<").unwrap_or(bytes);
    let bytes = bytes
        .strip_prefix(b"&")
        .ok_or_else(|| Error::Parse("digraph6 must start with '&'".into()))?;
    let (n, rest) = decode_size(bytes)?;
    let bits = unpack_bits(rest, n * n)?;
    let mut a = BitMatrix::new(n);
    for (k, b) in bits.into_iter().enumerate() {
        if b {
            a.set(k / n, k % n, true);
        }
    }
    Ok(a)
}

/// First line `n directed|undirected`, then one `x y` per arc (per edge
/// with `x < y` when undirected).
pub fn to_edge_list(a: &BitMatrix) -> String {
    let n = a.size();
    let undirected = a.is_symmetric();
    let mut out = format!("{n} {}\n", if undirected { "undirected" } else { "directed" });
    for x in 0..n {
        for y in a.row_iter(x) {
            if !undirected || x <= y {
                out.push_str(&format!("{x} {y}\n"));
            }
        }
    }
    out
}

pub fn from_edge_list(s: &str) -> Result<BitMatrix> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header '{header}'")))?;
    let undirected = match parts.next() {
        Some("undirected") => true,
        Some("directed") | None => false,
        Some(other) => return Err(Error::Parse(format!("unknown edge-list kind '{other}'"))),
    };
    let mut a = BitMatrix::new(n);
    for line in lines {
        let v: Vec<usize> = line
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad edge '{line}'"))))
            .collect::<Result<_>>()?;
        let [x, y] = v[..] else {
            return Err(Error::Parse(format!("bad edge '{line}'")));
        };
        if x >= n || y >= n {
            return Err(Error::Parse(format!("vertex out of range in '{line}'")));
        }
        a.set(x, y, true);
        if undirected {
            a.set(y, x, true);
        }
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub vertices: usize,
    pub directed: bool,
    pub adjacency: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<u32>>>,
}

pub fn to_adjacency_json(g: &ColoredDigraph) -> String {
    let a = &g.adjacency;
    let doc = AdjacencyJson {
        vertices: a.size(),
        directed: !a.is_symmetric(),
        adjacency: (0..a.size())
            .map(|x| a.row_iter(x).map(|y| y as u32).collect())
            .collect(),
        partition: g.partition.clone(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn from_adjacency_json(s: &str) -> Result<ColoredDigraph> {
    let doc: AdjacencyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.adjacency.len() != doc.vertices {
        return Err(Error::Parse("adjacency list length differs from vertex count".into()));
    }
    let mut a = BitMatrix::new(doc.vertices);
    for (x, row) in doc.adjacency.iter().enumerate() {
        for &y in row {
            if y as usize >= doc.vertices {
                return Err(Error::Parse(format!("vertex {y} out of range")));
            }
            a.set(x, y as usize, true);
        }
    }
    Ok(ColoredDigraph {
        adjacency: a,
        vertex_colors: None,
        partition: doc.partition,
    })
}

pub fn export_graph(g: &ColoredDigraph, format: GraphFormat) -> Result<String> {
    Ok(match format {
        GraphFormat::Graph6 => to_graph6(&g.adjacency)?,
        GraphFormat::Digraph6 => to_digraph6(&g.adjacency),
        GraphFormat::EdgeList => to_edge_list(&g.adjacency),
        GraphFormat::AdjacencyJson => to_adjacency_json(g),
    })
}

pub fn import_graph(s: &str, format: GraphFormat) -> Result<ColoredDigraph> {
    Ok(match format {
        GraphFormat::Graph6 => ColoredDigraph::new(from_graph6(s)?),
        GraphFormat::Digraph6 => ColoredDigraph::new(from_digraph6(s)?),
        GraphFormat::EdgeList => ColoredDigraph::new(from_edge_list(s)?),
        GraphFormat::AdjacencyJson => from_adjacency_json(s)?,
    })
}

/// Guesses the format from the content.
pub fn sniff_format(s: &str) -> GraphFormat {
    let t = s.trim_start();
    if t.starts_with('{') {
        GraphFormat::AdjacencyJson
    } else if t.starts_with('&') || t.starts_with(">>digraph6<<") {
        GraphFormat::Digraph6
    } else if t
        .lines()
        .next()
        .is_some_and(|l| l.split_whitespace().count() >= 2 || l.trim().parse::<usize>().is_ok())
    {
        GraphFormat::EdgeList
    } else {
        GraphFormat::Graph6
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Enough to replay a command and compare its outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub library_version: String,
    /// Modulus of the field used, e.g. `x^3+x+1`, when the command built one.
    pub field_modulus: Option<String>,
    pub ordering_convention: String,
    pub output_hashes: BTreeMap<String, String>,
    pub exit_code: i32,
    #[serde(default)]
    pub created_unix: Option<u64>,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Equal up to the timestamp.
    pub fn same_run(&self, other: &RunManifest) -> bool {
        let strip = |m: &RunManifest| RunManifest {
            created_unix: None,
            ..m.clone()
        };
        strip(self) == strip(other)
    }

    pub fn check_conventions(&self, field_modulus: Option<&str>, ordering_convention: &str) -> Result<()> {
        if self.ordering_convention != ordering_convention {
            return Err(Error::ConventionMismatch(format!(
                "ordering convention '{}' differs from '{ordering_convention}'",
                self.ordering_convention
            )));
        }
        if self.field_modulus.as_deref() != field_modulus {
            return Err(Error::ConventionMismatch(format!(
                "field modulus {:?} differs from {:?}",
                self.field_modulus, field_modulus
            )));
        }
        Ok(())
    }
}
