//! Canonical labeling, isomorphism and automorphism groups of edge-colored
//! digraphs by individualization and refinement with automorphism pruning.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::graphs::{build_dsrg, ColoredDigraph};
use crate::group::{self, Perm, StabChain, UnionFind};
use crate::scheme::Scheme;
use crate::tatra::{det2, diag, Matrix2, Omega};

pub const CANONICAL_CAP: usize = 5000;
pub const AUTOMORPHISM_CAP: usize = 2000;
pub const PREDICTED_AUT_CAP: u64 = 100_000;

/// A complete digraph with a color on every ordered pair and on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredStructure {
    n: usize,
    colors: Vec<u16>,
    vertex_colors: Vec<u32>,
}

impl ColoredStructure {
    pub fn new(n: usize, colors: Vec<u16>, vertex_colors: Vec<u32>) -> Result<Self> {
        if colors.len() != n * n || vertex_colors.len() != n {
            return Err(Error::BadParameters(
                "color data does not match the vertex count".into(),
            ));
        }
        Ok(ColoredStructure {
            n,
            colors,
            vertex_colors,
        })
    }

    pub fn from_digraph(g: &ColoredDigraph) -> Self {
        let n = g.vertex_count();
        let mut colors = vec![0u16; n * n];
        for x in 0..n {
            for y in g.out_neighbors(x) {
                colors[x * n + y] = 1;
            }
        }
        ColoredStructure {
            n,
            colors,
            vertex_colors: g.vertex_colors.clone().unwrap_or_else(|| vec![0; n]),
        }
    }

    /// Off-diagonal pairs carry the relation color, vertices the diagonal color.
    pub fn from_scheme(x: &Scheme) -> Result<Self> {
        if x.rank() > u16::MAX as usize {
            return Err(Error::TooLarge {
                what: "relations",
                size: x.rank() as u64,
                cap: u16::MAX as u64,
            });
        }
        let n = x.points();
        Ok(ColoredStructure {
            n,
            colors: x.colors().iter().map(|&c| c as u16).collect(),
            vertex_colors: (0..n).map(|a| x.color(a, a)).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn color(&self, x: usize, y: usize) -> u16 {
        self.colors[x * self.n + y]
    }

    /// Recolors each pair by its color together with the number of 2-paths
    /// `x -> z -> y` through nonzero colors. The new structure is a function
    /// of the old one that commutes with relabeling, so it has the same
    /// automorphisms and its canonical labelings are canonical for `self`.
    /// `None` if the new colors do not fit in 16 bits.
    pub fn with_path_counts(&self) -> Option<ColoredStructure> {
        let n = self.n;
        let arcs = nonzero_arcs(self);
        let at = arcs.transpose();
        let counts: Vec<u32> = (0..n * n)
            .into_par_iter()
            .map(|p| arcs.and_count(p / n, &at, p % n))
            .collect();
        let mut pairs: Vec<(u16, u32)> = self.colors.iter().copied().zip(counts.iter().copied()).collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.len() > u16::MAX as usize {
            return None;
        }
        let colors = self
            .colors
            .iter()
            .zip(&counts)
            .map(|(&c, &k)| pairs.binary_search(&(c, k)).expect("pair listed") as u16)
            .collect();
        Some(ColoredStructure {
            n,
            colors,
            vertex_colors: self.vertex_colors.clone(),
        })
    }

    pub fn is_automorphism(&self, p: &[u32]) -> bool {
        let n = self.n;
        p.len() == n
            && group::is_permutation(p)
            && (0..n).all(|x| self.vertex_colors[x] == self.vertex_colors[p[x] as usize])
            && (0..n).all(|x| (0..n).all(|y| self.color(x, y) == self.color(p[x] as usize, p[y] as usize)))
    }

    /// `p` maps `self` onto `other` color by color.
    pub fn is_isomorphism(&self, other: &ColoredStructure, p: &[u32]) -> bool {
        let n = self.n;
        n == other.n
            && p.len() == n
            && group::is_permutation(p)
            && (0..n).all(|x| self.vertex_colors[x] == other.vertex_colors[p[x] as usize])
            && (0..n).all(|x| (0..n).all(|y| self.color(x, y) == other.color(p[x] as usize, p[y] as usize)))
    }
}

/// Vertex colors then the color matrix, both in canonical label order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Encoding {
    vertex_colors: Vec<u32>,
    matrix: Vec<u16>,
}

impl Encoding {
    fn of(s: &ColoredStructure, lab: &[u32]) -> Self {
        let n = s.n;
        let mut matrix = Vec::with_capacity(n * n);
        for &x in lab {
            let row = &s.colors[x as usize * n..(x as usize + 1) * n];
            matrix.extend(lab.iter().map(|&y| row[y as usize]));
        }
        Encoding {
            vertex_colors: lab.iter().map(|&x| s.vertex_colors[x as usize]).collect(),
            matrix,
        }
    }

    fn bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 4 * self.vertex_colors.len() + 2 * self.matrix.len());
        out.extend((self.vertex_colors.len() as u64).to_le_bytes());
        for c in &self.vertex_colors {
            out.extend(c.to_le_bytes());
        }
        for c in &self.matrix {
            out.extend(c.to_le_bytes());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// `labeling[x]` is the canonical position of input vertex `x`.
    pub labeling: Perm,
    #[serde(with = "hex_bytes")]
    pub encoding: Vec<u8>,
    pub hash: String,
}

mod hex_bytes {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &[u8], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(b))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u8>, D::Error> {
        let s = String::deserialize(d)?;
        hex::decode(s).map_err(serde::de::Error::custom)
    }
}

impl CanonicalForm {
    pub fn encoding_hex(&self) -> String {
        hex::encode(&self.encoding)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroupReport {
    #[serde(with = "biguint_string")]
    pub order: BigUint,
    pub generators: Vec<Perm>,
    pub orbits: Vec<Vec<u32>>,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&b.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordered partition: `lab` lists vertices cell by cell; cells are named by
/// their first position.
#[derive(Debug, Clone)]
struct Partition {
    lab: Vec<u32>,
    cell_of: Vec<u32>,
    len: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn by_vertex_color(s: &ColoredStructure) -> Self {
        let n = s.n;
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&x| (s.vertex_colors[x as usize], x));
        let mut p = Partition {
            lab,
            cell_of: vec![0; n],
            len: vec![0; n],
            cells: 0,
        };
        let mut start = 0;
        while start < n {
            let c = s.vertex_colors[p.lab[start] as usize];
            let mut end = start;
            while end < n && s.vertex_colors[p.lab[end] as usize] == c {
                p.cell_of[p.lab[end] as usize] = start as u32;
                end += 1;
            }
            p.len[start] = (end - start) as u32;
            p.cells += 1;
            start = end;
        }
        p
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s);
            s += self.len[s] as usize;
        }
        out
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        self.cell_starts()
            .into_iter()
            .filter(|&s| self.len[s] > 1)
            .min_by_key(|&s| (self.len[s], s))
    }

    fn cell(&self, start: usize) -> &[u32] {
        &self.lab[start..start + self.len[start] as usize]
    }

    /// Moves `w` to the front of its cell as a singleton; returns the new cell.
    fn individualize(&mut self, w: u32) -> usize {
        let start = self.cell_of[w as usize] as usize;
        let l = self.len[start] as usize;
        debug_assert!(l > 1);
        let pos = (start..start + l)
            .find(|&i| self.lab[i] == w)
            .expect("vertex in its cell");
        self.lab.swap(start, pos);
        self.len[start] = 1;
        self.len[start + 1] = (l - 1) as u32;
        for i in start + 1..start + l {
            self.cell_of[self.lab[i] as usize] = (start + 1) as u32;
        }
        self.cells += 1;
        start
    }

    /// Splitter-driven refinement to an equitable partition. A vertex's
    /// invariant against a splitter is the sorted multiset of the color pairs
    /// it sends to and receives from the splitter.
    fn refine(&mut self, s: &ColoredStructure, initial: &[usize]) {
        let n = s.n;
        let mut queue: VecDeque<usize> = initial.iter().copied().collect();
        let mut in_queue = vec![false; n];
        for &c in initial {
            in_queue[c] = true;
        }
        let mut keys: Vec<(Vec<(u32, u32)>, u32)> = Vec::new();
        let mut scratch: Vec<u32> = Vec::new();
        while let Some(sp) = queue.pop_front() {
            if self.is_discrete() {
                break;
            }
            in_queue[sp] = false;
            let splitter: Vec<u32> = self.cell(sp).to_vec();
            for start in self.cell_starts() {
                let l = self.len[start] as usize;
                if l == 1 {
                    continue;
                }
                keys.clear();
                for &x in &self.lab[start..start + l] {
                    scratch.clear();
                    let xi = x as usize;
                    for &w in &splitter {
                        let w = w as usize;
                        scratch.push(((s.color(xi, w) as u32) << 16) | s.color(w, xi) as u32);
                    }
                    scratch.sort_unstable();
                    let mut key: Vec<(u32, u32)> = Vec::new();
                    for &c in &scratch {
                        match key.last_mut() {
                            Some((k, cnt)) if *k == c => *cnt += 1,
                            _ => key.push((c, 1)),
                        }
                    }
                    keys.push((key, x));
                }
                if keys.iter().all(|(k, _)| *k == keys[0].0) {
                    continue;
                }
                keys.sort();
                let mut frag_start = start;
                for i in 0..l {
                    if i > 0 && keys[i].0 != keys[i - 1].0 {
                        self.len[frag_start] = (start + i - frag_start) as u32;
                        frag_start = start + i;
                        self.cells += 1;
                    }
                    self.lab[start + i] = keys[i].1;
                    self.cell_of[keys[i].1 as usize] = frag_start as u32;
                }
                self.len[frag_start] = (start + l - frag_start) as u32;
                let mut f = start;
                while f < start + l {
                    if !in_queue[f] {
                        in_queue[f] = true;
                        queue.push_back(f);
                    }
                    f += self.len[f] as usize;
                }
            }
        }
    }
}

struct Leaf {
    lab: Vec<u32>,
    encoding: Encoding,
    path: Vec<u32>,
}

struct Search<'a> {
    s: &'a ColoredStructure,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
    chain: StabChain,
    nodes: u64,
}

fn divergence(a: &[u32], b: &[u32]) -> usize {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .unwrap_or(a.len().min(b.len()))
}

impl<'a> Search<'a> {
    fn new(s: &'a ColoredStructure) -> Self {
        Search {
            s,
            first: None,
            best: None,
            generators: Vec::new(),
            chain: StabChain::new(s.n),
            nodes: 0,
        }
    }

    fn run(&mut self) {
        let mut root = Partition::by_vertex_color(self.s);
        let all = root.cell_starts();
        root.refine(self.s, &all);
        let mut path = Vec::new();
        self.visit(root, &mut path);
    }

    /// `from.lab[i] -> to[i]`
    fn record_automorphism(&mut self, from: &[u32], to: &[u32]) {
        let mut p = vec![0u32; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            p[a as usize] = b;
        }
        assert!(self.s.is_automorphism(&p), "leaf equality produced a non-automorphism");
        if self.chain.insert(&p) {
            self.generators.push(p);
        }
    }

    /// Returns the level to backjump to, if the subtree turned out to be an
    /// image of one already explored.
    fn visit(&mut self, part: Partition, path: &mut Vec<u32>) -> Option<usize> {
        self.nodes += 1;
        let Some(target) = part.target_cell() else {
            return self.leaf(&part.lab, path);
        };
        let depth = path.len();
        let children: Vec<u32> = {
            let mut c = part.cell(target).to_vec();
            c.sort_unstable();
            c
        };
        let mut explored: Vec<u32> = Vec::new();
        let mut seen_gens = usize::MAX;
        let mut uf = UnionFind::new(0);
        for &w in &children {
            if !explored.is_empty() {
                if seen_gens != self.generators.len() {
                    seen_gens = self.generators.len();
                    uf = UnionFind::new(self.s.n);
                    for g in &self.generators {
                        if path.iter().all(|&p| g[p as usize] == p) {
                            for (x, &y) in g.iter().enumerate() {
                                uf.union(x, y as usize);
                            }
                        }
                    }
                }
                let rw = uf.find(w as usize);
                if explored.iter().any(|&u| uf.find(u as usize) == rw) {
                    continue;
                }
            }
            explored.push(w);
            let mut child = part.clone();
            let cell = child.individualize(w);
            child.refine(self.s, &[cell]);
            path.push(w);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, lab: &[u32], path: &[u32]) -> Option<usize> {
        let encoding = Encoding::of(self.s, lab);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                lab: lab.to_vec(),
                encoding,
                path: path.to_vec(),
            };
            self.best = Some(Leaf {
                lab: leaf.lab.clone(),
                encoding: leaf.encoding.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if encoding == first.encoding {
            let (from, level) = (first.lab.clone(), divergence(path, &first.path));
            self.record_automorphism(&from, lab);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best leaf set with the first");
        match encoding.cmp(&best.encoding) {
            std::cmp::Ordering::Equal => {
                let (from, level) = (best.lab.clone(), divergence(path, &best.path));
                self.record_automorphism(&from, lab);
                Some(level)
            }
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    lab: lab.to_vec(),
                    encoding,
                    path: path.to_vec(),
                });
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

/// Result of one full search: canonical form and automorphism group.
pub struct SearchResult {
    pub canonical: CanonicalForm,
    pub aut: AutGroupReport,
    pub nodes: u64,
}

fn check_size(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge {
            what,
            size: n as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

pub fn search(s: &ColoredStructure) -> Result<SearchResult> {
    check_size(s.n, CANONICAL_CAP, "vertices for canonical labeling")?;
    let refined = s.with_path_counts();
    let mut search = Search::new(refined.as_ref().unwrap_or(s));
    if s.n > 0 {
        search.run();
    }
    let lab = search.best.as_ref().map(|b| b.lab.clone()).unwrap_or_default();
    let encoding = Encoding::of(s, &lab);
    let labeling = group::inverse(&lab);
    let bytes = encoding.bytes();
    let hash = hex::encode(Sha256::digest(&bytes));
    for g in &search.generators {
        assert!(s.is_automorphism(g));
    }
    let orbits = group::orbits(s.n, &search.generators);
    Ok(SearchResult {
        canonical: CanonicalForm {
            labeling,
            encoding: bytes,
            hash,
        },
        aut: AutGroupReport {
            order: search.chain.order(),
            generators: search.generators,
            orbits,
        },
        nodes: search.nodes,
    })
}

pub fn canonical_form(s: &ColoredStructure) -> Result<CanonicalForm> {
    Ok(search(s)?.canonical)
}

pub fn automorphism_order(s: &ColoredStructure) -> Result<AutGroupReport> {
    check_size(s.n, AUTOMORPHISM_CAP, "vertices for automorphism search")?;
    Ok(search(s)?.aut)
}

/// Relabels `s` so that vertex `x` becomes `p[x]`.
pub fn relabel(s: &ColoredStructure, p: &[u32]) -> ColoredStructure {
    let n = s.n;
    let mut colors = vec![0u16; n * n];
    let mut vertex_colors = vec![0u32; n];
    for x in 0..n {
        vertex_colors[p[x] as usize] = s.vertex_colors[x];
        for y in 0..n {
            colors[p[x] as usize * n + p[y] as usize] = s.color(x, y);
        }
    }
    ColoredStructure {
        n,
        colors,
        vertex_colors,
    }
}

/// Cell sizes, in order, of the refined partition after individualizing `x`
/// (or of the root partition when `x` is `None`).
fn refined_profile(s: &ColoredStructure, x: Option<u32>) -> Vec<u32> {
    let mut part = Partition::by_vertex_color(s);
    let all = part.cell_starts();
    part.refine(s, &all);
    if let Some(x) = x {
        if part.len[part.cell_of[x as usize] as usize] > 1 {
            let cell = part.individualize(x);
            part.refine(s, &[cell]);
        }
    }
    part.cell_starts().into_iter().map(|c| part.len[c]).collect()
}

/// Histogram over pairs `(y, z)` of the colors among `x, y, z` together with
/// the number of common out-neighbors of all three.
fn triple_profile(s: &ColoredStructure, arcs: &BitMatrix, x: usize) -> Vec<((u16, u16, u16, u32), u32)> {
    let n = s.n;
    let rx = arcs.row(x);
    let mut common = vec![0u64; rx.len()];
    let mut hist: std::collections::HashMap<(u16, u16, u16, u32), u32> = Default::default();
    for y in 0..n {
        for ((c, a), b) in common.iter_mut().zip(rx).zip(arcs.row(y)) {
            *c = a & b;
        }
        for z in 0..n {
            let t: u32 = common.iter().zip(arcs.row(z)).map(|(c, r)| (c & r).count_ones()).sum();
            *hist
                .entry((s.color(x, y), s.color(x, z), s.color(y, z), t))
                .or_default() += 1;
        }
    }
    let mut out: Vec<_> = hist.into_iter().collect();
    out.sort_unstable();
    out
}

fn nonzero_arcs(s: &ColoredStructure) -> BitMatrix {
    let mut arcs = BitMatrix::new(s.n);
    for x in 0..s.n {
        for y in 0..s.n {
            if x != y && s.color(x, y) != 0 {
                arcs.set(x, y, true);
            }
        }
    }
    arcs
}

/// An isomorphism invariant on which `a` and `b` differ, if one is found
/// cheaply: sorted colors, the refined root partition, and two profiles of
/// vertex 0 of `a` (refinement after individualizing it, and common
/// neighborhoods of triples through it) against every vertex of `b`.
pub fn invariant_mismatch(a: &ColoredStructure, b: &ColoredStructure) -> Option<String> {
    if a.n != b.n {
        return Some("vertex counts differ".into());
    }
    let sorted = |s: &ColoredStructure| {
        let mut v = s.vertex_colors.clone();
        v.sort_unstable();
        let mut c = s.colors.clone();
        c.sort_unstable();
        (v, c)
    };
    if sorted(a) != sorted(b) {
        return Some("color multisets differ".into());
    }
    if a.n == 0 {
        return None;
    }
    let (ra, rb) = match (a.with_path_counts(), b.with_path_counts()) {
        (Some(ra), Some(rb)) => (ra, rb),
        _ => return None,
    };
    if sorted(&ra) != sorted(&rb) {
        return Some("2-path count distributions differ".into());
    }
    if refined_profile(&ra, None) != refined_profile(&rb, None) {
        return Some("refined root partitions differ".into());
    }
    let target = refined_profile(&ra, Some(0));
    let found = (0..b.n as u32)
        .into_par_iter()
        .any(|y| refined_profile(&rb, Some(y)) == target);
    if !found {
        return Some("no vertex of the second structure matches the refined profile of vertex 0".into());
    }
    let (arcs_a, arcs_b) = (nonzero_arcs(a), nonzero_arcs(b));
    let target = triple_profile(a, &arcs_a, 0);
    let found = (0..b.n)
        .into_par_iter()
        .any(|y| triple_profile(b, &arcs_b, y) == target);
    (!found).then(|| "no vertex of the second structure matches the triple profile of vertex 0".into())
}

/// A bijection `p` with `color_1(x, y) = color_2(p[x], p[y])`, re-verified.
pub fn are_isomorphic(a: &ColoredStructure, b: &ColoredStructure) -> Result<Option<Perm>> {
    if a.n != b.n {
        return Ok(None);
    }
    check_size(a.n, CANONICAL_CAP, "vertices for canonical labeling")?;
    if let Some(reason) = invariant_mismatch(a, b) {
        debug_assert!(!reason.is_empty());
        return Ok(None);
    }
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    if ca.encoding != cb.encoding {
        return Ok(None);
    }
    let to_b = group::inverse(&cb.labeling);
    let p: Perm = ca.labeling.iter().map(|&pos| to_b[pos as usize]).collect();
    assert!(a.is_isomorphism(b, &p), "equal canonical forms without an isomorphism");
    Ok(Some(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitIso {
    /// Field element indices of `T`, row major.
    pub matrix: [[u32; 2]; 2],
    pub perm: Perm,
    pub verified: bool,
}

/// `T = diag(x, 1)` with the least `x` whose coset is `g`, and the induced
/// map `Gamma(i, 0) -> Gamma(i, g)`, checked arc by arc.
pub fn explicit_iso_from_matrix(omega: &Omega, i: u8, g: u32) -> Result<ExplicitIso> {
    let f = omega.field();
    let k = omega.subgroup();
    let x = f
        .nonzero()
        .find(|&x| k.coset_of(f, x).ok() == Some(g))
        .ok_or_else(|| Error::BadParameters(format!("no element in coset {g}")))?;
    let t: Matrix2 = diag(x, FieldElement::ONE);
    debug_assert_eq!(k.coset_of(f, det2(f, &t)).ok(), Some(g));
    let perm = omega.apply_semilinear(&t, 0)?;
    let source = build_dsrg(omega, i, 0)?;
    let target = build_dsrg(omega, i, g)?;
    let verified = source.adjacency.permuted(&perm) == target.adjacency
        && omega.s_union(&[0]).permuted(&perm) == omega.s_union(&[g]);
    Ok(ExplicitIso {
        matrix: [[t[0][0].0, t[0][1].0], [t[1][0].0, t[1][1].0]],
        perm,
        verified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedAut {
    pub maps_enumerated: u64,
    pub distinct_permutations: u64,
    pub frobenius_powers: Vec<u32>,
}

/// Counts the distinct permutations of Omega induced by `v -> T v^sigma`
/// with `det T` in K and `sigma` in Sigma_0.
pub fn predicted_scheme_aut(omega: &Omega) -> Result<PredictedAut> {
    let f = omega.field();
    let k = omega.subgroup();
    let q = f.order() as u64;
    let sigma0 = crate::field::sigma_zero(f, omega.n());
    let maps = q * (q * q - 1) * k.order as u64 * sigma0.len() as u64;
    if maps > PREDICTED_AUT_CAP {
        return Err(Error::TooLarge {
            what: "semilinear maps",
            size: maps,
            cap: PREDICTED_AUT_CAP,
        });
    }
    let els: Vec<FieldElement> = f.elements().collect();
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut count = 0u64;
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    let t: Matrix2 = [[a, b], [c, d]];
                    let det = det2(f, &t);
                    if det.is_zero() || !k.contains(f, det) {
                        continue;
                    }
                    for &j in &sigma0 {
                        seen.insert(omega.apply_semilinear(&t, j)?);
                        count += 1;
                    }
                }
            }
        }
    }
    debug_assert_eq!(count, maps);
    Ok(PredictedAut {
        maps_enumerated: count,
        distinct_permutations: seen.len() as u64,
        frobenius_powers: sigma0,
    })
}

/// Orbits of the group on ordered pairs coincide with the color classes.
pub fn schurian_check(x: &Scheme, aut: &AutGroupReport) -> bool {
    let n = x.points();
    let mut uf = UnionFind::new(n * n);
    for g in &aut.generators {
        for a in 0..n {
            for b in 0..n {
                uf.union(a * n + b, g[a] as usize * n + g[b] as usize);
            }
        }
    }
    let mut root_of_color: Vec<Option<usize>> = vec![None; x.rank()];
    let mut color_of_root: std::collections::HashMap<usize, u32> = Default::default();
    for a in 0..n {
        for b in 0..n {
            let c = x.color(a, b);
            let r = uf.find(a * n + b);
            match root_of_color[c as usize] {
                None => root_of_color[c as usize] = Some(r),
                Some(r0) if r0 != r => return false,
                _ => {}
            }
            if *color_of_root.entry(r).or_insert(c) != c {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> ColoredStructure {
        let mut a = BitMatrix::new(n);
        for &(x, y) in arcs {
            a.set(x, y, true);
        }
        ColoredStructure::from_digraph(&ColoredDigraph::new(a))
    }

    fn undirected(n: usize, edges: &[(usize, usize)]) -> ColoredStructure {
        let arcs: Vec<_> = edges.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
        digraph(n, &arcs)
    }

    /// Counts automorphisms by trying every permutation.
    fn brute_aut(s: &ColoredStructure) -> u64 {
        fn rec(s: &ColoredStructure, p: &mut Vec<u32>, used: &mut Vec<bool>) -> u64 {
            let k = p.len();
            if k == s.n {
                return 1;
            }
            let mut total = 0;
            for y in 0..s.n {
                if used[y] || s.vertex_colors[k] != s.vertex_colors[y] {
                    continue;
                }
                let ok = (0..k)
                    .all(|x| s.color(x, k) == s.color(p[x] as usize, y) && s.color(k, x) == s.color(y, p[x] as usize))
                    && s.color(k, k) == s.color(y, y);
                if ok {
                    used[y] = true;
                    p.push(y as u32);
                    total += rec(s, p, used);
                    p.pop();
                    used[y] = false;
                }
            }
            total
        }
        rec(s, &mut Vec::new(), &mut vec![false; s.n])
    }

    fn small_graphs() -> Vec<ColoredStructure> {
        let petersen: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
            .collect();
        let cube: Vec<(usize, usize)> = (0..8)
            .flat_map(|x: usize| (0..3).map(move |b| (x, x ^ (1 << b))))
            .filter(|&(x, y)| x < y)
            .collect();
        vec![
            digraph(3, &[(0, 1), (1, 2), (2, 0)]),
            undirected(10, &petersen),
            undirected(8, &cube),
            undirected(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
            undirected(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6)]),
            digraph(
                5,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 0),
                    (0, 2),
                    (1, 3),
                    (2, 4),
                    (3, 0),
                    (4, 1),
                ],
            ),
            digraph(4, &[]),
        ]
    }

    #[test]
    fn orders_match_brute_force() {
        let expected = [3u64, 120, 48, 72, 0, 5, 24];
        for (s, &e) in small_graphs().iter().zip(&expected) {
            let brute = brute_aut(s);
            if e != 0 {
                assert_eq!(brute, e);
            }
            assert_eq!(automorphism_order(s).unwrap().order, BigUint::from(brute));
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in small_graphs() {
            let c = canonical_form(&s).unwrap();
            assert_eq!(Encoding::of(&s, &group::inverse(&c.labeling)).bytes(), c.encoding);
            for _ in 0..10 {
                let mut p: Perm = (0..s.n as u32).collect();
                p.shuffle(&mut rng);
                let t = relabel(&s, &p);
                assert_eq!(canonical_form(&t).unwrap().encoding, c.encoding);
                let w = are_isomorphic(&s, &t).unwrap().unwrap();
                assert!(s.is_isomorphism(&t, &w));
            }
        }
    }

    #[test]
    fn non_isomorphic_small() {
        let c6 = undirected(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two_triangles = &small_graphs()[3];
        assert_eq!(are_isomorphic(&c6, two_triangles).unwrap(), None);
        let tri = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        let rev = digraph(3, &[(1, 0), (2, 1), (0, 2)]);
        assert!(are_isomorphic(&tri, &rev).unwrap().is_some());
        let path = digraph(3, &[(0, 1), (1, 2)]);
        assert_eq!(are_isomorphic(&tri, &path).unwrap(), None);
    }

    #[test]
    fn invariant_prefilter() {
        let c6 = undirected(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two_triangles = &small_graphs()[3];
        assert!(invariant_mismatch(&c6, two_triangles).is_some());
        let s = &small_graphs()[1];
        let t = relabel(s, &[3, 1, 4, 0, 2, 9, 8, 7, 6, 5]);
        assert_eq!(invariant_mismatch(s, &t), None);
    }

    #[test]
    fn too_large() {
        let s = ColoredStructure::new(2001, vec![0; 2001 * 2001], vec![0; 2001]).unwrap();
        assert!(matches!(automorphism_order(&s), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn scheme_aut_at_8_7() {
        let omega = Omega::build(2, 3, 7).unwrap();
        let x0 = Scheme::tatra(&omega);
        let s = ColoredStructure::from_scheme(&x0).unwrap();
        let aut = automorphism_order(&s).unwrap();
        assert_eq!(aut.order, BigUint::from(504u32));
        assert_eq!(predicted_scheme_aut(&omega).unwrap().distinct_permutations, 504);
        assert!(schurian_check(&x0, &aut));
    }

    #[test]
    fn dsrg_aut_and_isomorphism_at_8_7() {
        let omega = Omega::build(2, 3, 7).unwrap();
        let g10 = ColoredStructure::from_digraph(&build_dsrg(&omega, 1, 0).unwrap());
        let g13 = ColoredStructure::from_digraph(&build_dsrg(&omega, 1, 3).unwrap());
        let g20 = ColoredStructure::from_digraph(&build_dsrg(&omega, 2, 0).unwrap());
        assert_eq!(automorphism_order(&g10).unwrap().order, BigUint::from(1512u32));
        assert!(are_isomorphic(&g10, &g13).unwrap().is_some());
        assert_eq!(are_isomorphic(&g10, &g20).unwrap(), None);
    }

    #[test]
    fn explicit_iso() {
        let omega = Omega::build(2, 3, 7).unwrap();
        let e = explicit_iso_from_matrix(&omega, 1, 0).unwrap();
        assert!(group::is_identity(&e.perm));
        assert_eq!(e.matrix, [[1, 0], [0, 1]]);
        for g in 1..7 {
            let e = explicit_iso_from_matrix(&omega, 1, g).unwrap();
            assert!(e.verified, "g = {g}");
        }
        let e = explicit_iso_from_matrix(&omega, 2, 1).unwrap();
        assert_eq!(e.matrix, [[2, 0], [0, 1]]);
        assert!(e.verified);
    }
}
