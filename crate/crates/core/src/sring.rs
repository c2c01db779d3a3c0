//! Group rings over Z_n and the dihedral group D_2n, S-rings over D_2n, and
//! fusion of the Tatra scheme along an S-ring.
//!
//! The dihedral element `(e, x)` stands for `b^e x` with `x` in C = Z_n and
//! `b x b = -x`, so `(e1, x1)(e2, x2) = (e1 + e2, (-1)^e2 x1 + x2)`. It is
//! stored as the index `e * n + x`, which coincides with the Tatra label id:
//! `(0, g) <-> r_g` and `(1, g) <-> s_g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::{verify_scheme, Scheme, SchemeVerdict};

pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn identity(&self) -> usize {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroup {
    pub n: usize,
}

impl FiniteGroup for CyclicGroup {
    fn order(&self) -> usize {
        self.n
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        (a + b) % self.n
    }

    fn inv(&self, a: usize) -> usize {
        (self.n - a) % self.n
    }
}

/// Explicit multiplication tables are kept up to this n.
const DIHEDRAL_TABLE_MAX: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralGroup {
    n: usize,
    table: Option<Vec<u32>>,
}

impl DihedralGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut g = DihedralGroup { n, table: None };
        if n <= DIHEDRAL_TABLE_MAX {
            let order = 2 * n;
            let table = (0..order * order)
                .map(|p| g.mul_formula(p / order, p % order) as u32)
                .collect();
            g.table = Some(table);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn element(&self, reflection: bool, x: usize) -> usize {
        usize::from(reflection) * self.n + x % self.n
    }

    pub fn parts(&self, a: usize) -> (bool, usize) {
        (a >= self.n, a % self.n)
    }

    fn mul_formula(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        let ((ea, xa), (eb, xb)) = (self.parts(a), self.parts(b));
        let xa = if eb { (n - xa) % n } else { xa };
        self.element(ea ^ eb, xa + xb)
    }
}

impl FiniteGroup for DihedralGroup {
    fn order(&self) -> usize {
        2 * self.n
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * 2 * self.n + b] as usize,
            None => self.mul_formula(a, b),
        }
    }

    fn inv(&self, a: usize) -> usize {
        match self.parts(a) {
            (false, x) => self.element(false, self.n - x),
            (true, _) => a,
        }
    }
}

/// An integer combination of group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElt {
    pub coeffs: Vec<i64>,
}

impl GroupRingElt {
    pub fn zero(order: usize) -> Self {
        GroupRingElt { coeffs: vec![0; order] }
    }

    /// `underline{X}`, the sum of the elements of `set`.
    pub fn from_set(order: usize, set: &[usize]) -> Self {
        let mut e = Self::zero(order);
        for &x in set {
            e.coeffs[x] += 1;
        }
        e
    }

    pub fn unit(order: usize, g: usize) -> Self {
        Self::from_set(order, &[g])
    }

    /// Augmentation: the sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `xi^(-1)`: the coefficient of `g` moves to `g^-1`.
    pub fn inverted<G: FiniteGroup>(&self, group: &G) -> Self {
        let mut out = Self::zero(self.coeffs.len());
        for (g, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[group.inv(g)] += c;
        }
        out
    }

    pub fn product<G: FiniteGroup>(&self, other: &Self, group: &G) -> Self {
        let mut out = Self::zero(self.coeffs.len());
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb != 0 {
                    out.coeffs[group.mul(a, b)] += ca * cb;
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: i64) -> Self {
        GroupRingElt {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        GroupRingElt {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

pub fn group_ring_product<G: FiniteGroup>(xi: &GroupRingElt, eta: &GroupRingElt, group: &G) -> GroupRingElt {
    xi.product(eta, group)
}

/// A partition of D_2n into candidate basic sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SRing {
    pub group: DihedralGroup,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRingCertificate {
    pub n: usize,
    pub rank: usize,
    pub commutative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SRingViolation {
    NotAPartition {
        element: usize,
    },
    IdentityNotSingleton,
    NotInverseClosed {
        class: usize,
    },
    /// The product of classes `x` and `y` is not constant on class `target`.
    NotClosed {
        x: usize,
        y: usize,
        target: usize,
    },
}

impl SRing {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Self {
        SRing {
            group: DihedralGroup::new(n),
            classes,
        }
    }

    /// Orbits of `x -> u x` (u in `multipliers`, all units mod n) acting on
    /// both cosets of C.
    pub fn cyclotomic(n: usize, multipliers: &[usize]) -> Self {
        let group = DihedralGroup::new(n);
        let mut class_of = vec![usize::MAX; 2 * n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..2 * n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut orbit = vec![start];
            class_of[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let (e, x) = group.parts(orbit[i]);
                for &u in multipliers {
                    let y = group.element(e, x * u % n);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        SRing { group, classes }
    }

    /// `{e}, C#, bD, b(C \ D)` for a difference set `D` in Z_n.
    pub fn from_difference_set(n: usize, ds: &[u32]) -> Self {
        let group = DihedralGroup::new(n);
        let in_d: Vec<bool> = (0..n).map(|x| ds.contains(&(x as u32))).collect();
        let classes = vec![
            vec![0],
            (1..n).collect(),
            (0..n).filter(|&x| in_d[x]).map(|x| group.element(true, x)).collect(),
            (0..n).filter(|&x| !in_d[x]).map(|x| group.element(true, x)).collect(),
        ];
        SRing {
            group,
            classes: classes.into_iter().filter(|c: &Vec<usize>| !c.is_empty()).collect(),
        }
    }

    /// The partition into singletons, i.e. the whole group ring.
    pub fn discrete(n: usize) -> Self {
        SRing::new(n, (0..2 * n).map(|g| vec![g]).collect())
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    fn class_index(&self) -> std::result::Result<Vec<usize>, SRingViolation> {
        let order = self.group.order();
        let mut class_of = vec![usize::MAX; order];
        for (c, class) in self.classes.iter().enumerate() {
            for &g in class {
                if g >= order || class_of[g] != usize::MAX {
                    return Err(SRingViolation::NotAPartition { element: g });
                }
                class_of[g] = c;
            }
        }
        if let Some(g) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(SRingViolation::NotAPartition { element: g });
        }
        Ok(class_of)
    }
}

/// Checks the three S-ring axioms by explicit group-ring products.
pub fn verify_sring(a: &SRing) -> std::result::Result<SRingCertificate, SRingViolation> {
    let class_of = a.class_index()?;
    let g = &a.group;
    let order = g.order();
    if a.classes[class_of[0]].len() != 1 {
        return Err(SRingViolation::IdentityNotSingleton);
    }
    for (c, class) in a.classes.iter().enumerate() {
        let inv_class = class_of[g.inv(class[0])];
        let mut inv: Vec<usize> = class.iter().map(|&x| g.inv(x)).collect();
        inv.sort_unstable();
        let mut target = a.classes[inv_class].clone();
        target.sort_unstable();
        if inv != target {
            return Err(SRingViolation::NotInverseClosed { class: c });
        }
    }
    let sums: Vec<GroupRingElt> = a.classes.iter().map(|c| GroupRingElt::from_set(order, c)).collect();
    let mut commutative = true;
    for (x, sx) in sums.iter().enumerate() {
        for (y, sy) in sums.iter().enumerate() {
            let p = sx.product(sy, g);
            for (t, class) in a.classes.iter().enumerate() {
                let c0 = p.coeffs[class[0]];
                if class.iter().any(|&e| p.coeffs[e] != c0) {
                    return Err(SRingViolation::NotClosed { x, y, target: t });
                }
            }
            if commutative && p != sy.product(sx, g) {
                commutative = false;
            }
        }
    }
    Ok(SRingCertificate {
        n: g.n(),
        rank: a.rank(),
        commutative,
    })
}

/// The fusion of the Tatra scheme whose relations are `r_X` for basic sets
/// `X` inside C and `s_Y` for basic sets `bY` inside bC. The result is
/// re-verified before it is returned.
pub fn fuse_scheme(x0: &Scheme, a: &SRing) -> Result<Scheme> {
    let n = x0
        .tatra_n()
        .ok_or_else(|| Error::BadParameters("fusion needs a Tatra scheme".into()))?;
    if a.group.n() != n as usize {
        return Err(Error::BadParameters(format!(
            "S-ring over D_{} but scheme has n = {n}",
            2 * a.group.n()
        )));
    }
    for (c, class) in a.classes.iter().enumerate() {
        let reflections = class.iter().filter(|&&g| a.group.parts(g).0).count();
        if reflections != 0 && reflections != class.len() {
            return Err(Error::CNotASubgroup(c));
        }
    }
    verify_sring(a).map_err(|v| Error::BadParameters(format!("not an S-ring: {v:?}")))?;
    let mut map = vec![0u32; 2 * n as usize];
    let mut names = Vec::with_capacity(a.rank());
    // identity class first so the fused color 0 is the diagonal
    let mut order: Vec<usize> = (0..a.rank()).collect();
    order.sort_by_key(|&c| (!a.classes[c].contains(&0), a.classes[c][0]));
    for (new, &c) in order.iter().enumerate() {
        let class = &a.classes[c];
        let reflections = class.iter().filter(|&&g| a.group.parts(g).0).count();
        let xs: Vec<String> = class.iter().map(|&g| a.group.parts(g).1.to_string()).collect();
        let prefix = if reflections == 0 { "r" } else { "s" };
        names.push(format!("{prefix}{{{}}}", xs.join(",")));
        for &g in class {
            map[g] = new as u32;
        }
    }
    let fused = x0.fuse_by(&map, names)?;
    match verify_scheme(&fused) {
        SchemeVerdict::Valid(_) => Ok(fused),
        SchemeVerdict::Violation(v) => Err(Error::NotAScheme(format!("{v:?}"))),
    }
}
