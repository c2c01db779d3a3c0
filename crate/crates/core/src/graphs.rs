//! Directed strongly regular graphs and divisible design graphs built from
//! relation unions of X0, with exact parameter certification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::bitset::BitMatrix;
use crate::designs::{paley_classes, DifferenceSet};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::tatra::Omega;

pub const DEFAULT_VERTEX_CAP: usize = 25_000;
/// Largest graph for which the integer `A^2` cross-check also runs.
pub const MATRIX_CROSSCHECK_MAX: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    pub adjacency: BitMatrix,
    pub vertex_colors: Option<Vec<u32>>,
    pub partition: Option<Vec<Vec<u32>>>,
}

impl ColoredDigraph {
    pub fn new(adjacency: BitMatrix) -> Self {
        ColoredDigraph {
            adjacency,
            vertex_colors: None,
            partition: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.size()
    }

    pub fn arc_count(&self) -> u64 {
        self.adjacency.count_ones()
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.adjacency.get(x, y)
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency.is_symmetric()
    }

    pub fn out_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.row_iter(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DsrgParams {
    pub v: u64,
    pub k: u64,
    pub t: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl DsrgParams {
    /// `k (k + mu - lambda) = t + (v - 1) mu`
    pub fn feasible(&self) -> bool {
        let lhs = self.k as i128 * (self.k as i128 + self.mu as i128 - self.lambda as i128);
        lhs == self.t as i128 + (self.v as i128 - 1) * self.mu as i128
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DdgParams {
    pub v: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
    pub m: u64,
    pub n: u64,
}

impl DdgParams {
    pub fn is_proper(&self) -> bool {
        self.m > 1 && self.n > 1 && self.lambda1 != self.lambda2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

/// Why a graph failed a parameter check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GraphViolation {
    Loop {
        vertex: usize,
    },
    Irregular {
        vertex: usize,
        out_degree: u64,
        in_degree: u64,
        expected: u64,
    },
    Asymmetric {
        pair: (usize, usize),
    },
    BadPartition {
        reason: String,
    },
    /// Two pairs of the same kind with different 2-path counts.
    Count {
        kind: String,
        pair: (usize, usize),
        count: u64,
        other: (usize, usize),
        other_count: u64,
    },
    MatrixMismatch {
        entry: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DsrgVerdict {
    Dsrg {
        params: DsrgParams,
        srg: bool,
        matrix_checked: bool,
    },
    NotDsrg {
        violation: GraphViolation,
    },
}

impl DsrgVerdict {
    pub fn params(&self) -> Option<DsrgParams> {
        match self {
            DsrgVerdict::Dsrg { params, .. } => Some(*params),
            DsrgVerdict::NotDsrg { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DdgVerdict {
    Ddg {
        params: DdgParams,
        proper: bool,
        matrix_checked: bool,
    },
    NotDdg {
        violation: GraphViolation,
    },
}

impl DdgVerdict {
    pub fn params(&self) -> Option<DdgParams> {
        match self {
            DdgVerdict::Ddg { params, .. } => Some(*params),
            DdgVerdict::NotDdg { .. } => None,
        }
    }
}

/// `q - 1 = p (p - 3) / 4`.
pub fn dsrg_condition(p: u64, q: u64) -> bool {
    if p < 3 || p % 4 != 3 {
        return false;
    }
    let holds = q.checked_sub(1) == Some(p * (p - 3) / 4);
    if holds {
        if let Some((_, d)) = arith::prime_power(q) {
            assert!(d % 2 == 1, "q = {q} satisfies the DSRG condition with even degree");
        }
    }
    holds
}

/// `((q+1)p, q+(p-1)/2, q, (q-1)/p, (q-1)/p+1)`
pub fn predicted_dsrg(p: u64, q: u64) -> DsrgParams {
    let lambda = (q - 1) / p;
    DsrgParams {
        v: (q + 1) * p,
        k: q + (p - 1) / 2,
        t: q,
        lambda,
        mu: lambda + 1,
    }
}

/// `(n(q+1), kq, lambda q, k^2 (q-1)/n, q+1, n)`
pub fn predicted_ddg(q: u64, n: u64, k: u64, lambda: u64) -> DdgParams {
    DdgParams {
        v: n * (q + 1),
        k: k * q,
        lambda1: lambda * q,
        lambda2: k * k * (q - 1) / n,
        m: q + 1,
        n,
    }
}

/// `lambda q = k^2 (q-1) / n`; returns the SRG parameters when it holds.
pub fn srg_condition(q: u64, n: u64, k: u64, lambda: u64) -> Option<SrgParams> {
    if n == 0 || !(k * k * (q - 1)).is_multiple_of(n) || lambda * q != k * k * (q - 1) / n {
        return None;
    }
    Some(SrgParams {
        v: n * (q + 1),
        k: k * q,
        lambda: lambda * q,
        mu: lambda * q,
    })
}

fn check_cap(v: usize) -> Result<()> {
    if v > DEFAULT_VERTEX_CAP {
        return Err(Error::TooLarge {
            what: "vertices",
            size: v as u64,
            cap: DEFAULT_VERTEX_CAP as u64,
        });
    }
    Ok(())
}

/// `Gamma(i, g)`: arcs `s_g` together with `r_c` for `c` in the Paley class `C_i`.
pub fn build_dsrg(omega: &Omega, i: u8, g: u32) -> Result<ColoredDigraph> {
    let p = omega.n();
    if i != 1 && i != 2 {
        return Err(Error::BadParameters(format!("class index must be 1 or 2, got {i}")));
    }
    if g >= p {
        return Err(Error::BadParameters(format!("g = {g} is not in Z_{p}")));
    }
    let classes = paley_classes(p).map_err(|e| Error::BadParameters(format!("n = {p}: {e}")))?;
    check_cap(omega.len())?;
    let mut arcs = omega.s_union(&[g]);
    arcs.union_with(&omega.r_union(classes.class(i)));
    assert!(!arcs.has_loops());
    Ok(ColoredDigraph {
        adjacency: arcs,
        vertex_colors: None,
        partition: Some(omega.line_system().lines),
    })
}

/// `Delta(D)`: the union of `s_g` for `g` in `D`, partitioned into lines.
pub fn build_ddg(omega: &Omega, ds: &DifferenceSet) -> Result<ColoredDigraph> {
    if ds.n != omega.n() {
        return Err(Error::MismatchedN {
            ds: ds.n,
            scheme: omega.n(),
        });
    }
    check_cap(omega.len())?;
    let arcs = omega.s_union(&ds.elements);
    assert!(!arcs.has_loops());
    Ok(ColoredDigraph {
        adjacency: arcs,
        vertex_colors: None,
        partition: Some(omega.line_system().lines),
    })
}

fn regularity(g: &ColoredDigraph) -> std::result::Result<u64, GraphViolation> {
    let a = &g.adjacency;
    let v = a.size();
    if let Some(x) = (0..v).find(|&x| a.get(x, x)) {
        return Err(GraphViolation::Loop { vertex: x });
    }
    let at = a.transpose();
    let k = if v > 0 { a.row_count(0) as u64 } else { 0 };
    for x in 0..v {
        let (out_d, in_d) = (a.row_count(x) as u64, at.row_count(x) as u64);
        if out_d != k || in_d != k {
            return Err(GraphViolation::Irregular {
                vertex: x,
                out_degree: out_d,
                in_degree: in_d,
                expected: k,
            });
        }
    }
    Ok(k)
}

/// Tracks the first value seen for each pair kind and the first conflict.
#[derive(Clone, Default)]
struct Tally {
    slots: Vec<Option<((usize, usize), u64)>>,
    conflict: Option<GraphViolation>,
}

impl Tally {
    fn new(kinds: usize) -> Self {
        Tally {
            slots: vec![None; kinds],
            conflict: None,
        }
    }

    fn record(&mut self, kind: usize, names: &[&str], pair: (usize, usize), count: u64) {
        if self.conflict.is_some() {
            return;
        }
        match self.slots[kind] {
            None => self.slots[kind] = Some((pair, count)),
            Some((other, c)) if c != count => {
                self.conflict = Some(GraphViolation::Count {
                    kind: names[kind].into(),
                    pair: other,
                    count: c,
                    other: pair,
                    other_count: count,
                })
            }
            _ => {}
        }
    }

    fn merge(mut self, other: Tally, names: &[&str]) -> Tally {
        if self.conflict.is_some() {
            return self;
        }
        if other.conflict.is_some() {
            return other;
        }
        for (kind, slot) in other.slots.into_iter().enumerate() {
            if let Some((pair, c)) = slot {
                self.record(kind, names, pair, c);
            }
        }
        self
    }
}

/// Counts `x -> z -> y` paths for every ordered pair by bitset intersections,
/// classifying pairs by `kind`.
fn tally_two_paths<F>(a: &BitMatrix, kinds: usize, names: &[&str], kind: F) -> Tally
where
    F: Fn(usize, usize) -> usize + Sync,
{
    let at = a.transpose();
    let v = a.size();
    (0..v)
        .into_par_iter()
        .fold(
            || Tally::new(kinds),
            |mut t, x| {
                for y in 0..v {
                    let c = a.and_count(x, &at, y) as u64;
                    t.record(kind(x, y), names, (x, y), c);
                }
                t
            },
        )
        .reduce(|| Tally::new(kinds), |a, b| a.merge(b, names))
}

fn first_matrix_mismatch(a: &BitMatrix, expected: impl Fn(usize, usize) -> i64) -> Option<(usize, usize)> {
    let m = IntMatrix::from_bits(a);
    let sq = &m * &m;
    let v = a.size();
    (0..v)
        .flat_map(|x| (0..v).map(move |y| (x, y)))
        .find(|&(x, y)| sq.get(x, y) != expected(x, y))
}

/// Certifies `A^2 = tI + lambda A + mu (J - I - A)` by exhaustive 2-path counts.
pub fn verify_dsrg(g: &ColoredDigraph) -> Result<DsrgVerdict> {
    check_cap(g.vertex_count())?;
    let k = match regularity(g) {
        Ok(k) => k,
        Err(violation) => return Ok(DsrgVerdict::NotDsrg { violation }),
    };
    let a = &g.adjacency;
    const NAMES: [&str; 3] = ["diagonal", "arc", "non-arc"];
    let tally = tally_two_paths(a, 3, &NAMES, |x, y| {
        if x == y {
            0
        } else if a.get(x, y) {
            1
        } else {
            2
        }
    });
    if let Some(violation) = tally.conflict {
        return Ok(DsrgVerdict::NotDsrg { violation });
    }
    let value = |kind: usize| tally.slots[kind].map_or(0, |(_, c)| c);
    let params = DsrgParams {
        v: a.size() as u64,
        k,
        t: value(0),
        lambda: value(1),
        mu: value(2),
    };
    let matrix_checked = a.size() <= MATRIX_CROSSCHECK_MAX;
    if matrix_checked {
        let expect = |x: usize, y: usize| {
            if x == y {
                params.t as i64
            } else if a.get(x, y) {
                params.lambda as i64
            } else {
                params.mu as i64
            }
        };
        if let Some(entry) = first_matrix_mismatch(a, expect) {
            return Ok(DsrgVerdict::NotDsrg {
                violation: GraphViolation::MatrixMismatch { entry },
            });
        }
    }
    debug_assert!(params.feasible());
    Ok(DsrgVerdict::Dsrg {
        params,
        srg: params.t == params.k,
        matrix_checked,
    })
}

fn class_index(v: usize, partition: &[Vec<u32>]) -> std::result::Result<(Vec<usize>, usize), String> {
    let n = partition.first().map_or(0, Vec::len);
    let mut class = vec![usize::MAX; v];
    for (i, c) in partition.iter().enumerate() {
        if c.len() != n {
            return Err(format!("class {i} has size {} but class 0 has size {n}", c.len()));
        }
        for &x in c {
            let x = x as usize;
            if x >= v || class[x] != usize::MAX {
                return Err(format!("vertex {x} is out of range or repeated"));
            }
            class[x] = i;
        }
    }
    if let Some(x) = class.iter().position(|&c| c == usize::MAX) {
        return Err(format!("vertex {x} lies in no class"));
    }
    Ok((class, n))
}

/// Certifies `A^2 = kI + lambda1 (I (x) J - I) + lambda2 (J - I (x) J)` for
/// an undirected graph and a partition into equal classes.
pub fn verify_ddg(g: &ColoredDigraph, partition: &[Vec<u32>]) -> Result<DdgVerdict> {
    check_cap(g.vertex_count())?;
    let a = &g.adjacency;
    let v = a.size();
    let (class, n) = match class_index(v, partition) {
        Ok(c) => c,
        Err(msg) => {
            return Ok(DdgVerdict::NotDdg {
                violation: GraphViolation::BadPartition { reason: msg },
            })
        }
    };
    if let Some(pair) = (0..v)
        .flat_map(|x| (0..v).map(move |y| (x, y)))
        .find(|&(x, y)| a.get(x, y) != a.get(y, x))
    {
        return Ok(DdgVerdict::NotDdg {
            violation: GraphViolation::Asymmetric { pair },
        });
    }
    let k = match regularity(g) {
        Ok(k) => k,
        Err(violation) => return Ok(DdgVerdict::NotDdg { violation }),
    };
    const NAMES: [&str; 3] = ["diagonal", "same class", "different class"];
    let tally = tally_two_paths(a, 3, &NAMES, |x, y| {
        if x == y {
            0
        } else if class[x] == class[y] {
            1
        } else {
            2
        }
    });
    if let Some(violation) = tally.conflict {
        return Ok(DdgVerdict::NotDdg { violation });
    }
    let value = |kind: usize| tally.slots[kind].map_or(0, |(_, c)| c);
    let params = DdgParams {
        v: v as u64,
        k,
        lambda1: value(1),
        lambda2: value(2),
        m: partition.len() as u64,
        n: n as u64,
    };
    debug_assert_eq!(value(0), k);
    let matrix_checked = v <= MATRIX_CROSSCHECK_MAX;
    if matrix_checked {
        let expect = |x: usize, y: usize| {
            if x == y {
                k as i64
            } else if class[x] == class[y] {
                params.lambda1 as i64
            } else {
                params.lambda2 as i64
            }
        };
        if let Some(entry) = first_matrix_mismatch(a, expect) {
            return Ok(DdgVerdict::NotDdg {
                violation: GraphViolation::MatrixMismatch { entry },
            });
        }
    }
    Ok(DdgVerdict::Ddg {
        params,
        proper: params.is_proper(),
        matrix_checked,
    })
}

/// Checks `B_D^2 = kq A_e + lambda q A_(C#) + k^2 m B_C` as an integer matrix
/// identity, where `B_C` is the union of all `s_g`.
pub fn check_ddg_square(omega: &Omega, ds: &DifferenceSet) -> Result<bool> {
    let v = omega.len();
    if v > MATRIX_CROSSCHECK_MAX * 4 {
        return Err(Error::TooLarge {
            what: "vertices for the matrix identity",
            size: v as u64,
            cap: (MATRIX_CROSSCHECK_MAX * 4) as u64,
        });
    }
    let delta = build_ddg(omega, ds)?;
    let n = omega.n();
    let bd = IntMatrix::from_bits(&delta.adjacency);
    let all: Vec<u32> = (0..n).collect();
    let nonzero: Vec<u32> = (1..n).collect();
    let (k, lambda) = (ds.params.k as i64, ds.params.lambda as i64);
    let (q, m) = (omega.q() as i64, omega.m() as i64);
    let mut rhs = IntMatrix::identity(v).scale(k * q);
    rhs.add_scaled(lambda * q, &IntMatrix::from_bits(&omega.r_union(&nonzero)));
    rhs.add_scaled(k * k * m, &IntMatrix::from_bits(&omega.s_union(&all)));
    Ok(&bd * &bd == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub diameter: usize,
    /// `b_0 .. b_(D-1)`
    pub b: Vec<u64>,
    /// `c_1 .. c_D`
    pub c: Vec<u64>,
    pub antipodal: bool,
    /// Size of the antipodal classes `{x} + Gamma_D(x)`, when antipodal.
    pub antipodal_class_size: Option<usize>,
}

impl IntersectionArray {
    /// Diameter 3 and antipodal.
    pub fn is_antipodal_diameter3(&self) -> bool {
        self.diameter == 3 && self.antipodal
    }

    /// `(b_0, ..; c_1, ..)`
    pub fn display(&self) -> String {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        format!("({};{})", join(&self.b), join(&self.c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DrgVerdict {
    Drg(IntersectionArray),
    NotDrg { vertex: usize, reason: String },
}

impl DrgVerdict {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            DrgVerdict::Drg(a) => Some(a),
            DrgVerdict::NotDrg { .. } => None,
        }
    }
}

fn bfs(g: &ColoredDigraph, root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for y in g.out_neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

type ArrayRow = (Vec<u64>, Vec<u64>, Vec<usize>);

/// BFS distance partition from every vertex; constant `b_i`, `c_i` or a witness.
pub fn distance_regular_check(g: &ColoredDigraph) -> Result<DrgVerdict> {
    let v = g.vertex_count();
    check_cap(v)?;
    if !g.is_symmetric() {
        return Err(Error::BadParameters(
            "distance-regularity needs an undirected graph".into(),
        ));
    }
    if v == 0 {
        return Err(Error::Disconnected);
    }
    let rows: Vec<std::result::Result<ArrayRow, (usize, String)>> = (0..v)
        .into_par_iter()
        .map(|x| {
            let dist = bfs(g, x);
            if dist.contains(&usize::MAX) {
                return Err((x, "disconnected".into()));
            }
            let diameter = *dist.iter().max().unwrap();
            let mut b: Vec<Option<u64>> = vec![None; diameter + 1];
            let mut c: Vec<Option<u64>> = vec![None; diameter + 1];
            for y in 0..v {
                let i = dist[y];
                let (mut up, mut down) = (0u64, 0u64);
                for z in g.out_neighbors(y) {
                    if dist[z] == i + 1 {
                        up += 1;
                    } else if dist[z] + 1 == i {
                        down += 1;
                    }
                }
                for (slot, val, name) in [(&mut b[i], up, "b"), (&mut c[i], down, "c")] {
                    match slot {
                        None => *slot = Some(val),
                        Some(prev) if *prev != val => {
                            return Err((x, format!("{name}_{i} is not constant at distance {i} from {x}")))
                        }
                        _ => {}
                    }
                }
            }
            let far: Vec<usize> = (0..v).filter(|&y| dist[y] == diameter).collect();
            Ok((
                b[..diameter].iter().map(|x| x.unwrap()).collect(),
                c[1..].iter().map(|x| x.unwrap()).collect(),
                far,
            ))
        })
        .collect();
    if let Some(Err((x, reason))) = rows.iter().find(|r| r.is_err()) {
        if reason == "disconnected" {
            return Err(Error::Disconnected);
        }
        return Ok(DrgVerdict::NotDrg {
            vertex: *x,
            reason: reason.clone(),
        });
    }
    let rows: Vec<ArrayRow> = rows.into_iter().map(|r| r.unwrap()).collect();
    let (b0, c0, _) = &rows[0];
    for (x, (b, c, _)) in rows.iter().enumerate() {
        if b != b0 || c != c0 {
            return Ok(DrgVerdict::NotDrg {
                vertex: x,
                reason: format!("intersection array from {x} differs from vertex 0"),
            });
        }
    }
    let diameter = b0.len();
    // {x} + Gamma_D(x) must be the same set from each of its members
    let class_of = |x: usize| {
        let mut s = rows[x].2.clone();
        s.push(x);
        s.sort_unstable();
        s
    };
    let antipodal = diameter > 0
        && (0..v).all(|x| {
            let s = class_of(x);
            s.iter().all(|&y| class_of(y) == s)
        });
    Ok(DrgVerdict::Drg(IntersectionArray {
        diameter,
        b: b0.clone(),
        c: c0.clone(),
        antipodal,
        antipodal_class_size: antipodal.then(|| rows[0].2.len() + 1),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{certify, paley_ds, trivial_ds, TrivialKind};

    #[test]
    fn conditions() {
        assert!(dsrg_condition(7, 8));
        assert!(dsrg_condition(11, 23));
        assert!(!dsrg_condition(7, 9));
        assert_eq!(
            predicted_dsrg(7, 8),
            DsrgParams {
                v: 63,
                k: 11,
                t: 8,
                lambda: 1,
                mu: 2
            }
        );
        assert!(predicted_dsrg(11, 23).feasible());
        assert_eq!(
            srg_condition(4, 3, 2, 1),
            Some(SrgParams {
                v: 15,
                k: 8,
                lambda: 4,
                mu: 4
            })
        );
        assert_eq!(
            srg_condition(9, 4, 3, 2),
            Some(SrgParams {
                v: 40,
                k: 27,
                lambda: 18,
                mu: 18
            })
        );
        assert_eq!(srg_condition(8, 7, 3, 1), None);
    }

    #[test]
    fn dsrg_at_8_7() {
        let omega = Omega::build(2, 3, 7).unwrap();
        let g1 = build_dsrg(&omega, 1, 0).unwrap();
        assert_eq!(g1.vertex_count(), 63);
        let verdict = verify_dsrg(&g1).unwrap();
        assert_eq!(verdict.params(), Some(predicted_dsrg(7, 8)));
        assert!(matches!(
            verdict,
            DsrgVerdict::Dsrg {
                srg: false,
                matrix_checked: true,
                ..
            }
        ));

        // Gamma meets its transpose exactly in s_g
        let sym = g1.adjacency.intersection(&g1.adjacency.transpose());
        assert_eq!(sym, omega.s_union(&[0]));

        let g2 = build_dsrg(&omega, 2, 0).unwrap();
        let mut diff = 0;
        for x in 0..63 {
            for y in 0..63 {
                if g1.has_arc(x, y) != g2.has_arc(x, y) {
                    diff += 1;
                    assert_eq!(omega.form(x, y), None);
                }
            }
        }
        assert_eq!(diff as u64, 2 * 63 * 3);
        assert!(build_dsrg(&omega, 3, 0).is_err());
    }

    #[test]
    fn dsrg_failure_paths() {
        assert!(Omega::build(3, 2, 7).is_err());
        let omega = Omega::build(29, 1, 7).unwrap();
        let g = build_dsrg(&omega, 1, 2).unwrap();
        assert!(matches!(verify_dsrg(&g).unwrap(), DsrgVerdict::NotDsrg { .. }));
        let omega = Omega::build(2, 2, 3).unwrap();
        let g = build_dsrg(&omega, 2, 1).unwrap();
        assert!(matches!(verify_dsrg(&g).unwrap(), DsrgVerdict::NotDsrg { .. }));
        let omega = Omega::build(3, 2, 4).unwrap();
        assert!(matches!(build_dsrg(&omega, 1, 0), Err(Error::BadParameters(_))));
    }

    #[test]
    fn irregular_digraph_is_rejected() {
        let mut a = BitMatrix::new(3);
        a.set(0, 1, true);
        a.set(0, 2, true);
        let v = verify_dsrg(&ColoredDigraph::new(a)).unwrap();
        assert!(matches!(
            v,
            DsrgVerdict::NotDsrg {
                violation: GraphViolation::Irregular { .. }
            }
        ));
    }

    #[test]
    fn ddg_examples() {
        let omega = Omega::build(2, 3, 7).unwrap();
        let ds = paley_ds(7).unwrap();
        let delta = build_ddg(&omega, &ds).unwrap();
        assert!(delta.is_symmetric());
        let parts = delta.partition.clone().unwrap();
        let verdict = verify_ddg(&delta, &parts).unwrap();
        assert_eq!(
            verdict.params(),
            Some(DdgParams {
                v: 63,
                k: 24,
                lambda1: 8,
                lambda2: 9,
                m: 9,
                n: 7
            })
        );
        assert_eq!(verdict.params(), Some(predicted_ddg(8, 7, 3, 1)));
        assert!(check_ddg_square(&omega, &ds).unwrap());

        let omega = Omega::build(13, 1, 3).unwrap();
        let ds = certify(3, &[1, 2]).unwrap();
        let delta = build_ddg(&omega, &ds).unwrap();
        let verdict = verify_ddg(&delta, delta.partition.as_ref().unwrap()).unwrap();
        assert_eq!(
            verdict.params(),
            Some(DdgParams {
                v: 42,
                k: 26,
                lambda1: 13,
                lambda2: 16,
                m: 14,
                n: 3
            })
        );
        assert!(check_ddg_square(&omega, &ds).unwrap());

        let wrong = paley_ds(11).unwrap();
        assert_eq!(build_ddg(&omega, &wrong), Err(Error::MismatchedN { ds: 11, scheme: 3 }));
    }

    #[test]
    fn ddg_srg_case_is_improper() {
        let omega = Omega::build(2, 2, 3).unwrap();
        let ds = certify(3, &[1, 2]).unwrap();
        let delta = build_ddg(&omega, &ds).unwrap();
        let verdict = verify_ddg(&delta, delta.partition.as_ref().unwrap()).unwrap();
        assert!(matches!(verdict, DdgVerdict::Ddg { proper: false, .. }));
        assert_eq!(
            verdict.params(),
            Some(DdgParams {
                v: 15,
                k: 8,
                lambda1: 4,
                lambda2: 4,
                m: 5,
                n: 3
            })
        );
    }

    #[test]
    fn full_ds_gives_complement_of_lines() {
        let omega = Omega::build(5, 1, 2).unwrap();
        let full = trivial_ds(2, TrivialKind::Full).unwrap();
        let delta = build_ddg(&omega, &full).unwrap();
        for x in 0..omega.len() {
            for y in 0..omega.len() {
                assert_eq!(delta.has_arc(x, y), omega.line_of(x) != omega.line_of(y));
            }
        }
    }

    #[test]
    fn drg_examples() {
        let omega = Omega::build(2, 3, 7).unwrap();
        let g = ColoredDigraph::new(omega.s_union(&[0]));
        let arr = distance_regular_check(&g).unwrap();
        let arr = arr.array().unwrap();
        assert_eq!((arr.b.clone(), arr.c.clone()), (vec![8, 6, 1], vec![1, 1, 8]));
        assert!(arr.is_antipodal_diameter3());
        assert_eq!(arr.antipodal_class_size, Some(7));

        let omega = Omega::build(3, 2, 4).unwrap();
        let g = ColoredDigraph::new(omega.s_union(&[0]));
        let arr = distance_regular_check(&g).unwrap();
        assert_eq!(arr.array().unwrap().display(), "(9,6,1;1,2,9)");

        let mut k4 = BitMatrix::new(4);
        for x in 0..4 {
            for y in 0..4 {
                k4.set(x, y, x != y);
            }
        }
        let arr = distance_regular_check(&ColoredDigraph::new(k4)).unwrap();
        let arr = arr.array().unwrap();
        assert_eq!(arr.diameter, 1);
        assert!(!arr.is_antipodal_diameter3());

        let mut two = BitMatrix::new(4);
        two.set(0, 1, true);
        two.set(1, 0, true);
        two.set(2, 3, true);
        two.set(3, 2, true);
        assert_eq!(
            distance_regular_check(&ColoredDigraph::new(two)),
            Err(Error::Disconnected)
        );

        // path P3 is not distance-regular
        let mut p3 = BitMatrix::new(3);
        for (x, y) in [(0, 1), (1, 2)] {
            p3.set(x, y, true);
            p3.set(y, x, true);
        }
        assert!(matches!(
            distance_regular_check(&ColoredDigraph::new(p3)).unwrap(),
            DrgVerdict::NotDrg { .. }
        ));
    }
}
