//! The point set Omega = {Kv : v in V \ 0} of a 2-dimensional space over
//! GF(q), the determinant form modulo K, and the basic relations r_g, s_g.
//!
//! Ordering convention (`omega-lines-v1`): line 0 is `{K(0, g^i)}`; line 1 is
//! `{K(g^i, 0)}`; line `2 + l` is `{K(g^i, g^i * g^l)}`. Inside a line the point
//! with `i` is at offset `i`, so point `line * n + i` and multiplication by the
//! coset `c` moves it to offset `(i + c) mod n`. This is the order of the
//! canonical representatives under (zero first, then dlog) lexicographic
//! comparison, lines ordered by their least point.

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, SubgroupK};

pub const ORDERING_CONVENTION: &str = "omega-lines-v1";

/// Default cap on |Omega|.
pub const DEFAULT_OMEGA_CAP: u64 = 100_000;

pub type Vector = (FieldElement, FieldElement);

/// A 2x2 matrix over the field, row major.
pub type Matrix2 = [[FieldElement; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaPoint {
    pub rep: Vector,
    pub index: u32,
}

#[derive(Debug, Clone)]
pub struct Omega {
    field: FiniteField,
    k: SubgroupK,
    points: Vec<Vector>,
}

/// Kind of a basic relation of the Tatra scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicLabel {
    /// `r_g = {(a, ga)}`
    R(u32),
    /// `s_g = {(a, b) : <a, b> = g}`
    S(u32),
}

impl BasicLabel {
    /// Color id used in scheme color matrices: `r_g -> g`, `s_g -> n + g`.
    pub fn id(self, n: u32) -> u32 {
        match self {
            BasicLabel::R(g) => g,
            BasicLabel::S(g) => n + g,
        }
    }

    pub fn from_id(id: u32, n: u32) -> Self {
        if id < n {
            BasicLabel::R(id)
        } else {
            BasicLabel::S(id - n)
        }
    }

    pub fn name(self) -> String {
        match self {
            BasicLabel::R(g) => format!("r{g}"),
            BasicLabel::S(g) => format!("s{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub label: BasicLabel,
    pub arcs: BitMatrix,
    /// Present for `r_g`, which is a permutation of Omega.
    pub perm: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSystem {
    pub lines: Vec<Vec<u32>>,
}

impl Omega {
    pub fn new(field: FiniteField, k: SubgroupK) -> Result<Self> {
        Self::with_cap(field, k, DEFAULT_OMEGA_CAP)
    }

    pub fn with_cap(field: FiniteField, k: SubgroupK, cap: u64) -> Result<Self> {
        let q = field.order() as u64;
        let n = k.index;
        let size = (q + 1) * n as u64;
        if size > cap {
            return Err(Error::TooLarge {
                what: "Omega",
                size,
                cap,
            });
        }
        let mut points = Vec::with_capacity(size as usize);
        for i in 0..n {
            points.push((FieldElement::ZERO, field.exp(i as u64)));
        }
        for i in 0..n {
            points.push((field.exp(i as u64), FieldElement::ZERO));
        }
        for l in 0..q - 1 {
            let t = field.exp(l);
            for i in 0..n {
                let a = field.exp(i as u64);
                points.push((a, field.mul(a, t)));
            }
        }
        Ok(Omega { field, k, points })
    }

    /// Convenience constructor from `(r, d, n)`.
    pub fn build(r: u64, d: u32, n: u32) -> Result<Self> {
        let field = FiniteField::new(r, d)?;
        let k = SubgroupK::new(&field, n)?;
        Self::new(field, k)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn subgroup(&self) -> SubgroupK {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// |C| = index of K.
    pub fn n(&self) -> u32 {
        self.k.index
    }

    /// |K|.
    pub fn m(&self) -> u32 {
        self.k.order
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn rep(&self, index: usize) -> Vector {
        self.points[index]
    }

    pub fn points(&self) -> impl Iterator<Item = OmegaPoint> + '_ {
        self.points
            .iter()
            .enumerate()
            .map(|(i, &rep)| OmegaPoint { rep, index: i as u32 })
    }

    /// Canonical representative of `Kv`: the first nonzero coordinate is
    /// scaled to `g^(dlog mod n)`.
    pub fn canonical(&self, v: Vector) -> Option<Vector> {
        let f = &self.field;
        let n = self.n() as u64;
        let lead = if v.0.is_zero() { v.1 } else { v.0 };
        let l = f.dlog(lead)? as u64;
        // multiply by x in K with dlog(x) = (l mod n) - l
        let shift = (f.order() as u64 - 1) - (l - l % n);
        let x = f.exp(shift);
        Some((f.mul(x, v.0), f.mul(x, v.1)))
    }

    pub fn index_of(&self, v: Vector) -> Option<usize> {
        let f = &self.field;
        let n = self.n() as usize;
        let (a, b) = self.canonical(v)?;
        if a.is_zero() {
            return Some(f.dlog(b)? as usize);
        }
        let i = f.dlog(a)? as usize;
        let t = f.div(b, a).ok()?;
        let line = match f.dlog(t) {
            None => 1,
            Some(l) => 2 + l as usize,
        };
        Some(line * n + i)
    }

    pub fn line_of(&self, index: usize) -> usize {
        index / self.n() as usize
    }

    /// `g * alpha` for the coset `g` in Z_n.
    pub fn scale(&self, index: usize, g: u32) -> usize {
        let n = self.n() as usize;
        let (line, i) = (index / n, index % n);
        line * n + (i + g as usize) % n
    }

    /// `<alpha, beta>`: `None` for 0, otherwise the coset of the determinant.
    pub fn form(&self, alpha: usize, beta: usize) -> Option<u32> {
        let (u, v) = (self.points[alpha], self.points[beta]);
        self.form_of_vectors(u, v)
    }

    pub fn form_of_vectors(&self, u: Vector, v: Vector) -> Option<u32> {
        let f = &self.field;
        let det = f.sub(f.mul(u.0, v.1), f.mul(u.1, v.0));
        self.k.coset_of(f, det).ok()
    }

    /// Label of the basic relation containing `(alpha, beta)`.
    pub fn label(&self, alpha: usize, beta: usize) -> BasicLabel {
        match self.form(alpha, beta) {
            Some(g) => BasicLabel::S(g),
            None => {
                let n = self.n() as usize;
                debug_assert_eq!(alpha / n, beta / n);
                BasicLabel::R(((beta % n + n - alpha % n) % n) as u32)
            }
        }
    }

    /// Row-major color matrix over the ids of [`BasicLabel::id`].
    pub fn color_matrix(&self) -> Vec<u32> {
        let v = self.len();
        let n = self.n();
        let mut out = vec![0u32; v * v];
        for a in 0..v {
            for b in 0..v {
                out[a * v + b] = self.label(a, b).id(n);
            }
        }
        out
    }

    pub fn relation(&self, label: BasicLabel) -> Relation {
        let v = self.len();
        let mut arcs = BitMatrix::new(v);
        match label {
            BasicLabel::R(g) => {
                let perm: Vec<u32> = (0..v).map(|a| self.scale(a, g) as u32).collect();
                for (a, &b) in perm.iter().enumerate() {
                    arcs.set(a, b as usize, true);
                }
                Relation {
                    label,
                    arcs,
                    perm: Some(perm),
                }
            }
            BasicLabel::S(g) => {
                for a in 0..v {
                    for b in 0..v {
                        if self.form(a, b) == Some(g) {
                            arcs.set(a, b, true);
                        }
                    }
                }
                Relation {
                    label,
                    arcs,
                    perm: None,
                }
            }
        }
    }

    /// Union of `s_g` over `g` in `set`.
    pub fn s_union(&self, set: &[u32]) -> BitMatrix {
        let v = self.len();
        let mut member = vec![false; self.n() as usize];
        for &g in set {
            member[g as usize] = true;
        }
        let mut arcs = BitMatrix::new(v);
        for a in 0..v {
            for b in 0..v {
                if self.form(a, b).is_some_and(|g| member[g as usize]) {
                    arcs.set(a, b, true);
                }
            }
        }
        arcs
    }

    /// Union of `r_g` over `g` in `set`.
    pub fn r_union(&self, set: &[u32]) -> BitMatrix {
        let mut arcs = BitMatrix::new(self.len());
        for a in 0..self.len() {
            for &g in set {
                arcs.set(a, self.scale(a, g), true);
            }
        }
        arcs
    }

    pub fn line_system(&self) -> LineSystem {
        let n = self.n() as usize;
        LineSystem {
            lines: (0..self.len() / n)
                .map(|l| (l * n..(l + 1) * n).map(|x| x as u32).collect())
                .collect(),
        }
    }

    /// The permutation `K v -> K (T v^sigma)` with `sigma = x -> x^(r^j)`.
    pub fn apply_semilinear(&self, t: &Matrix2, j: u32) -> Result<Vec<u32>> {
        let f = &self.field;
        if j >= f.degree() {
            return Err(Error::BadFrobenius { j, d: f.degree() });
        }
        if det2(f, t).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self
            .points
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (f.frobenius(a, j), f.frobenius(b, j));
                let image = (
                    f.add(f.mul(t[0][0], a), f.mul(t[0][1], b)),
                    f.add(f.mul(t[1][0], a), f.mul(t[1][1], b)),
                );
                self.index_of(image).expect("T is invertible") as u32
            })
            .collect())
    }
}

pub fn det2(f: &FiniteField, t: &Matrix2) -> FieldElement {
    f.sub(f.mul(t[0][0], t[1][1]), f.mul(t[0][1], t[1][0]))
}

pub fn diag(a: FieldElement, b: FieldElement) -> Matrix2 {
    [[a, FieldElement::ZERO], [FieldElement::ZERO, b]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega(r: u64, d: u32, n: u32) -> Omega {
        Omega::build(r, d, n).unwrap()
    }

    /// Canonical representative by scanning all of K.
    fn scan_canonical(o: &Omega, v: Vector) -> Vector {
        let f = o.field();
        o.subgroup()
            .elements(f)
            .into_iter()
            .map(|x| (f.mul(x, v.0), f.mul(x, v.1)))
            .min_by_key(|w| (f.order_key(w.0), f.order_key(w.1)))
            .unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(omega(2, 3, 7).len(), 63);
        assert_eq!(omega(23, 1, 11).len(), 264);
        assert_eq!(omega(5, 1, 1).len(), 6);
        assert_eq!(omega(3, 2, 4).len(), 40);
    }

    #[test]
    fn canonical_rep_matches_scan_and_ordering() {
        for (r, d, n) in [(2, 3, 7), (3, 2, 4), (5, 1, 2), (13, 1, 3), (2, 2, 3), (7, 1, 3)] {
            let o = omega(r, d, n);
            let f = o.field().clone();
            let mut seen = std::collections::HashSet::new();
            for a in f.elements() {
                for b in f.elements() {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let c = o.canonical((a, b)).unwrap();
                    assert_eq!(c, scan_canonical(&o, (a, b)));
                    let idx = o.index_of((a, b)).unwrap();
                    assert_eq!(o.rep(idx), c);
                    seen.insert(idx);
                }
            }
            assert_eq!(seen.len(), o.len());
            let key = |v: Vector| (f.order_key(v.0), f.order_key(v.1));
            let nn = n as usize;
            for line in 0..o.len() / nn {
                for i in 1..nn {
                    assert!(key(o.rep(line * nn + i - 1)) < key(o.rep(line * nn + i)));
                }
                if line > 0 {
                    assert!(key(o.rep((line - 1) * nn)) < key(o.rep(line * nn)));
                }
            }
        }
    }

    #[test]
    fn form_properties() {
        let o = omega(3, 2, 4);
        let f = o.field().clone();
        for a in 0..o.len() {
            assert_eq!(o.form(a, a), None);
            for b in 0..o.len() {
                assert_eq!(o.form(a, b), o.form(b, a));
                let same_line = o.line_of(a) == o.line_of(b);
                assert_eq!(o.form(a, b).is_none(), same_line);
                for g in 0..4 {
                    assert_eq!(o.form(a, o.scale(b, g)), o.form(a, b).map(|h| (h + g) % 4));
                }
            }
        }
        // well-defined on arbitrary representatives
        for a in 0..o.len() {
            for b in 0..o.len() {
                let u = o.rep(a);
                let x = f.exp(3);
                let v = (f.mul(x, o.rep(b).0), f.mul(x, o.rep(b).1));
                let expect = o.form(a, b).map(|h| (h + 3) % 4);
                assert_eq!(o.form_of_vectors(u, v), expect);
            }
        }
        let o8 = omega(2, 3, 7);
        let a = o8.index_of((FieldElement::ONE, FieldElement::ZERO)).unwrap();
        let b = o8.index_of((FieldElement::ZERO, FieldElement::ONE)).unwrap();
        assert_eq!(o8.form(a, b), Some(0));
    }

    #[test]
    fn relations_partition_and_regularity() {
        let o = omega(2, 3, 7);
        let v = o.len();
        let r0 = o.relation(BasicLabel::R(0));
        assert_eq!(r0.arcs, BitMatrix::identity(v));
        let s0 = o.relation(BasicLabel::S(0));
        assert_eq!(s0.arcs.count_ones(), 504);
        let mut all = BitMatrix::new(v);
        let mut total = 0;
        for g in 0..7 {
            for lab in [BasicLabel::R(g), BasicLabel::S(g)] {
                let rel = o.relation(lab);
                let deg = if matches!(lab, BasicLabel::R(_)) { 1 } else { 8 };
                for a in 0..v {
                    assert_eq!(rel.arcs.row_count(a), deg);
                }
                total += rel.arcs.count_ones();
                all.union_with(&rel.arcs);
            }
        }
        assert_eq!(total, (v * v) as u64);
        assert_eq!(all.count_ones(), (v * v) as u64);
    }

    #[test]
    fn r_relations_compose_and_invert() {
        let o = omega(3, 2, 4);
        for g in 0..4 {
            let pg = o.relation(BasicLabel::R(g)).perm.unwrap();
            for h in 0..4 {
                let ph = o.relation(BasicLabel::R(h)).perm.unwrap();
                let pgh = o.relation(BasicLabel::R((g + h) % 4)).perm.unwrap();
                for a in 0..o.len() {
                    assert_eq!(ph[pg[a] as usize], pgh[a]);
                }
            }
            let rg = o.relation(BasicLabel::R(g)).arcs;
            let rinv = o.relation(BasicLabel::R((4 - g) % 4)).arcs;
            assert_eq!(rg.transpose(), rinv);
            let sg = o.relation(BasicLabel::S(g)).arcs;
            assert!(sg.is_symmetric());
        }
    }

    #[test]
    fn line_systems() {
        let o = omega(2, 3, 7);
        let ls = o.line_system();
        assert_eq!(ls.lines.len(), 9);
        assert!(ls.lines.iter().all(|l| l.len() == 7));
        // r_C is the line equivalence: A_C = I_{q+1} (x) J_n
        let rc = o.r_union(&(0..7).collect::<Vec<_>>());
        for a in 0..o.len() {
            for b in 0..o.len() {
                assert_eq!(rc.get(a, b), a / 7 == b / 7);
            }
        }
        assert_eq!(omega(5, 1, 1).line_system().lines.len(), 6);
        let o23 = omega(23, 1, 11);
        assert_eq!(o23.line_system().lines.len(), 24);
    }

    #[test]
    fn matching_property() {
        for (r, d, n) in [(2, 3, 7), (3, 2, 4), (13, 1, 3)] {
            let o = omega(r, d, n);
            let nn = n as usize;
            let lines = o.len() / nn;
            for g in 0..n {
                for la in 0..lines {
                    for lb in 0..lines {
                        if la == lb {
                            continue;
                        }
                        for a in la * nn..(la + 1) * nn {
                            let hits = (lb * nn..(lb + 1) * nn).filter(|&b| o.form(a, b) == Some(g)).count();
                            assert_eq!(hits, 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn semilinear_action() {
        let o = omega(2, 3, 7);
        let f = o.field().clone();
        let one = FieldElement::ONE;
        let id = o.apply_semilinear(&diag(one, one), 0).unwrap();
        assert!(id.iter().enumerate().all(|(i, &x)| i as u32 == x));
        assert_eq!(
            o.apply_semilinear(&diag(one, FieldElement::ZERO), 0),
            Err(Error::SingularMatrix)
        );
        assert!(matches!(
            o.apply_semilinear(&diag(one, one), 3),
            Err(Error::BadFrobenius { .. })
        ));

        // diag(g, 1) sends s_0 to s_1
        let p = o.apply_semilinear(&diag(f.generator(), one), 0).unwrap();
        let s0 = o.relation(BasicLabel::S(0)).arcs;
        let s1 = o.relation(BasicLabel::S(1)).arcs;
        assert_eq!(s0.permuted(&p), s1);
    }

    /// r_g^f = r_{g^sigma}, s_g^f = s_{det(T) g^sigma} for every T and sigma.
    #[test]
    fn semilinear_relabels_basic_relations() {
        for (r, d, n) in [(2, 3, 7), (3, 2, 4), (2, 4, 5), (2, 4, 3)] {
            let o = omega(r, d, n);
            let f = o.field().clone();
            let k = o.subgroup();
            let mats: Vec<Matrix2> = vec![
                [[f.generator(), f.exp(3)], [FieldElement::ZERO, FieldElement::ONE]],
                [[f.exp(2), f.exp(5)], [f.exp(1), FieldElement::ZERO]],
                [[FieldElement::ONE, f.exp(4)], [f.exp(7), f.exp(1)]],
            ];
            for t in &mats {
                let det = det2(&f, t);
                if det.is_zero() {
                    continue;
                }
                let dc = k.coset_of(&f, det).unwrap();
                for j in 0..d {
                    let p = o.apply_semilinear(t, j).unwrap();
                    let rj = (r as u32).pow(j);
                    for a in 0..o.len() {
                        for b in 0..o.len() {
                            let before = o.label(a, b);
                            let after = o.label(p[a] as usize, p[b] as usize);
                            let expect = match before {
                                BasicLabel::R(g) => BasicLabel::R(g * rj % n),
                                BasicLabel::S(g) => BasicLabel::S((dc + g * rj) % n),
                            };
                            assert_eq!(after, expect);
                        }
                    }
                }
            }
        }
    }
}
