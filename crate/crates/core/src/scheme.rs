//! Association schemes given by a color matrix: axiom verification,
//! intersection numbers, commutativity and the thin radical.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::tatra::{BasicLabel, Omega};

/// Above this many points the tensor check samples pairs.
pub const SAMPLED_THRESHOLD: usize = 2000;
pub const SAMPLES_PER_RELATION: usize = 64;
const SAMPLE_SEED: u64 = 0x5eed_7a7a;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    points: usize,
    rank: usize,
    colors: Vec<u32>,
    names: Vec<String>,
    /// `Some(n)` when the labels are the Tatra ids `r_g = g`, `s_g = n + g`.
    tatra_n: Option<u32>,
}

impl Scheme {
    /// Wraps a color matrix. Colors must be exactly `0..rank`.
    pub fn from_colors(points: usize, colors: Vec<u32>, names: Option<Vec<String>>) -> Result<Self> {
        if colors.len() != points * points {
            return Err(Error::BadParameters(format!(
                "color matrix has {} entries, expected {}",
                colors.len(),
                points * points
            )));
        }
        let rank = colors.iter().max().map_or(0, |&c| c as usize + 1);
        let mut used = vec![false; rank];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::BadParameters(format!("color {c} is unused")));
        }
        let names = names.unwrap_or_else(|| (0..rank).map(|c| format!("R{c}")).collect());
        if names.len() != rank {
            return Err(Error::BadParameters("one name per color required".into()));
        }
        Ok(Scheme {
            points,
            rank,
            colors,
            names,
            tatra_n: None,
        })
    }

    /// The rank-2n Tatra scheme X0 on Omega.
    pub fn tatra(omega: &Omega) -> Scheme {
        let n = omega.n();
        let names = (0..2 * n).map(|id| BasicLabel::from_id(id, n).name()).collect();
        Scheme {
            points: omega.len(),
            rank: 2 * n as usize,
            colors: omega.color_matrix(),
            names,
            tatra_n: Some(n),
        }
    }

    /// `{1, complement of 1}` on `v` points.
    pub fn trivial(v: usize) -> Scheme {
        let colors = (0..v * v).map(|p| u32::from(p / v != p % v)).collect();
        Scheme::from_colors(v, colors, Some(vec!["1".into(), "1c".into()])).unwrap()
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tatra_n(&self) -> Option<u32> {
        self.tatra_n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.colors[a * self.points + b]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Merges colors through `map` (old color -> new color).
    pub fn fuse_by(&self, map: &[u32], names: Vec<String>) -> Result<Scheme> {
        let colors = self.colors.iter().map(|&c| map[c as usize]).collect();
        Scheme::from_colors(self.points, colors, Some(names))
    }

    /// Copy with one entry recolored; used to build broken inputs.
    pub fn with_entry(&self, a: usize, b: usize, color: u32) -> Scheme {
        let mut out = self.clone();
        out.colors[a * self.points + b] = color;
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerificationMode {
    Full,
    Sampled,
}

/// `c_{rs}^t`, indexed `[r][s][t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    rank: usize,
    data: Vec<u64>,
}

impl IntersectionTensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, r: usize, s: usize, t: usize) -> u64 {
        self.data[(r * self.rank + s) * self.rank + t]
    }

    pub fn hash_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.rank as u64).to_le_bytes());
        for x in &self.data {
            h.update(x.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.rank;
        (0..k).all(|r| (0..k).all(|s| (0..k).all(|t| self.get(r, s, t) == self.get(s, r, t))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeCertificate {
    pub points: usize,
    pub rank: usize,
    pub identity: u32,
    pub valencies: Vec<u64>,
    pub inverse: Vec<u32>,
    pub commutative: bool,
    pub mode: VerificationMode,
    pub tensor_hash: String,
    #[serde(skip)]
    pub tensor: Option<IntersectionTensor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchemeViolation {
    /// The diagonal is not a single color, or that color leaks off it.
    Diagonal { pair: (usize, usize) },
    /// The transpose of a color class is not a color class.
    Transpose {
        color: u32,
        pair: (usize, usize),
        other: (usize, usize),
    },
    /// Two pairs of color `t` have different counts `c_{rs}^t`.
    Intersection {
        r: u32,
        s: u32,
        t: u32,
        pair: (usize, usize),
        other: (usize, usize),
        counts: (u64, u64),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SchemeVerdict {
    Valid(SchemeCertificate),
    Violation(SchemeViolation),
}

impl SchemeVerdict {
    pub fn certificate(&self) -> Option<&SchemeCertificate> {
        match self {
            SchemeVerdict::Valid(c) => Some(c),
            SchemeVerdict::Violation(_) => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, SchemeVerdict::Valid(_))
    }
}

/// Checks the diagonal and transpose axioms, then every intersection number.
pub fn verify_scheme(x: &Scheme) -> SchemeVerdict {
    let v = x.points;
    let k = x.rank;
    let id = x.color(0, 0);
    for a in 0..v {
        for b in 0..v {
            if (x.color(a, b) == id) != (a == b) {
                return SchemeVerdict::Violation(SchemeViolation::Diagonal { pair: (a, b) });
            }
        }
    }

    let mut inverse: Vec<Option<(u32, (usize, usize))>> = vec![None; k];
    for a in 0..v {
        for b in 0..v {
            let c = x.color(a, b) as usize;
            let ct = x.color(b, a);
            match inverse[c] {
                None => inverse[c] = Some((ct, (a, b))),
                Some((seen, first)) if seen != ct => {
                    return SchemeVerdict::Violation(SchemeViolation::Transpose {
                        color: c as u32,
                        pair: first,
                        other: (a, b),
                    })
                }
                _ => {}
            }
        }
    }
    let inverse: Vec<u32> = inverse.into_iter().map(|e| e.unwrap().0).collect();

    let mode = if v > SAMPLED_THRESHOLD {
        VerificationMode::Sampled
    } else {
        VerificationMode::Full
    };

    let mut reps: Vec<Option<(usize, usize)>> = vec![None; k];
    for a in 0..v {
        for b in 0..v {
            let c = x.color(a, b) as usize;
            if reps[c].is_none() {
                reps[c] = Some((a, b));
            }
        }
    }
    let reps: Vec<(usize, usize)> = reps.into_iter().map(Option::unwrap).collect();
    let rep_counts: Vec<Vec<u64>> = reps.iter().map(|&(a, b)| pair_counts(x, a, b)).collect();

    let check_pair = |a: usize, b: usize, scratch: &mut Vec<u64>| -> Option<SchemeViolation> {
        let t = x.color(a, b) as usize;
        let rep = &rep_counts[t];
        for g in 0..v {
            scratch[(x.color(a, g) as usize) * k + x.color(g, b) as usize] += 1;
        }
        let mut bad = None;
        for g in 0..v {
            let key = (x.color(a, g) as usize) * k + x.color(g, b) as usize;
            if bad.is_none() && scratch[key] != rep[key] {
                bad = Some(SchemeViolation::Intersection {
                    r: (key / k) as u32,
                    s: (key % k) as u32,
                    t: t as u32,
                    pair: reps[t],
                    other: (a, b),
                    counts: (rep[key], scratch[key]),
                });
            }
        }
        for g in 0..v {
            scratch[(x.color(a, g) as usize) * k + x.color(g, b) as usize] = 0;
        }
        bad
    };

    let violation = match mode {
        VerificationMode::Full => (0..v)
            .into_par_iter()
            .map(|a| {
                let mut scratch = vec![0u64; k * k];
                (0..v).find_map(|b| check_pair(a, b, &mut scratch))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .next(),
        VerificationMode::Sampled => {
            let mut by_color: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
            for a in 0..v {
                for b in 0..v {
                    by_color[x.color(a, b) as usize].push((a, b));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let samples: Vec<(usize, usize)> = by_color
                .iter()
                .flat_map(|pairs| {
                    pairs
                        .choose_multiple(&mut rng, SAMPLES_PER_RELATION)
                        .copied()
                        .collect::<Vec<_>>()
                })
                .collect();
            samples
                .par_iter()
                .map(|&(a, b)| check_pair(a, b, &mut vec![0u64; k * k]))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .next()
        }
    };
    if let Some(viol) = violation {
        return SchemeVerdict::Violation(viol);
    }

    let mut data = vec![0u64; k * k * k];
    for (t, counts) in rep_counts.iter().enumerate() {
        for r in 0..k {
            for s in 0..k {
                data[(r * k + s) * k + t] = counts[r * k + s];
            }
        }
    }
    let tensor = IntersectionTensor { rank: k, data };
    let valencies = (0..k)
        .map(|r| tensor.get(r, inverse[r] as usize, id as usize))
        .collect();
    SchemeVerdict::Valid(SchemeCertificate {
        points: v,
        rank: k,
        identity: id,
        valencies,
        inverse,
        commutative: tensor.is_commutative(),
        mode,
        tensor_hash: tensor.hash_hex(),
        tensor: Some(tensor),
    })
}

/// Counts of `(color(a,g), color(g,b))` over all `g`, flattened `r * rank + s`.
fn pair_counts(x: &Scheme, a: usize, b: usize) -> Vec<u64> {
    let k = x.rank;
    let mut out = vec![0u64; k * k];
    for g in 0..x.points {
        out[(x.color(a, g) as usize) * k + x.color(g, b) as usize] += 1;
    }
    out
}

pub fn intersection_numbers(x: &Scheme) -> Result<IntersectionTensor> {
    match verify_scheme(x) {
        SchemeVerdict::Valid(c) => Ok(c.tensor.expect("tensor is always attached")),
        SchemeVerdict::Violation(v) => Err(Error::NotAScheme(format!("{v:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinRadical {
    /// Valency-1 colors, ascending.
    pub elements: Vec<u32>,
    /// `table[i][j]` indexes into `elements`: composition of element i then j.
    pub table: Vec<Vec<usize>>,
    pub cyclic: bool,
}

impl ThinRadical {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The group of valency-1 relations under relational composition.
pub fn thin_radical(cert: &SchemeCertificate) -> ThinRadical {
    let tensor = cert.tensor.as_ref().expect("certificate carries its tensor");
    let elements: Vec<u32> = (0..cert.rank as u32)
        .filter(|&r| cert.valencies[r as usize] == 1)
        .collect();
    let pos = |c: usize| elements.iter().position(|&e| e as usize == c);
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|&r| {
            elements
                .iter()
                .map(|&s| {
                    let t = (0..cert.rank)
                        .find(|&t| tensor.get(r as usize, s as usize, t) > 0)
                        .expect("composition is nonempty");
                    pos(t).expect("thin relations compose to a thin relation")
                })
                .collect()
        })
        .collect();
    let identity = pos(cert.identity as usize).unwrap();
    let order_of = |g: usize| {
        let mut x = g;
        let mut k = 1;
        while x != identity {
            x = table[x][g];
            k += 1;
        }
        k
    };
    let cyclic = (0..elements.len()).any(|g| order_of(g) == elements.len());
    ThinRadical {
        elements,
        table,
        cyclic,
    }
}

/// The star product on basic relations: ordinary composition when one factor
/// is thin, otherwise the unique thin relation in the product.
/// Returns `None` when it is not well defined.
#[allow(clippy::needless_range_loop)]
pub fn star_table(cert: &SchemeCertificate) -> Option<Vec<Vec<u32>>> {
    let tensor = cert.tensor.as_ref()?;
    let k = cert.rank;
    let mut table = vec![vec![0u32; k]; k];
    for r in 0..k {
        for s in 0..k {
            let thin_factor = cert.valencies[r] == 1 || cert.valencies[s] == 1;
            let hits: Vec<usize> = (0..k)
                .filter(|&t| tensor.get(r, s, t) > 0 && (thin_factor || cert.valencies[t] == 1))
                .collect();
            if hits.len() != 1 {
                return None;
            }
            table[r][s] = hits[0] as u32;
        }
    }
    Some(table)
}

/// True when the star product makes the colors a dihedral group of order
/// `rank`: a group whose thin radical is cyclic of index 2 and every element
/// outside it is an involution.
pub fn star_is_dihedral(cert: &SchemeCertificate) -> bool {
    let Some(table) = star_table(cert) else {
        return false;
    };
    let k = cert.rank;
    let e = cert.identity as usize;
    let is_group = (0..k)
        .all(|a| (0..k).all(|b| (0..k).all(|c| table[table[a][b] as usize][c] == table[a][table[b][c] as usize])))
        && (0..k).all(|a| table[e][a] as usize == a && table[a][e] as usize == a)
        && (0..k).all(|a| (0..k).any(|b| table[a][b] as usize == e));
    if !is_group {
        return false;
    }
    let thin = thin_radical(cert);
    thin.cyclic
        && 2 * thin.order() == k
        && (0..k)
            .filter(|&a| cert.valencies[a] != 1)
            .all(|a| table[a][a] as usize == e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x0(r: u64, d: u32, n: u32) -> Scheme {
        Scheme::tatra(&Omega::build(r, d, n).unwrap())
    }

    fn cert(x: &Scheme) -> SchemeCertificate {
        match verify_scheme(x) {
            SchemeVerdict::Valid(c) => c,
            SchemeVerdict::Violation(v) => panic!("not a scheme: {v:?}"),
        }
    }

    /// c_{rs}^t from the definition, for one pair of color t.
    fn brute_c(x: &Scheme, r: u32, s: u32, t: u32) -> u64 {
        let v = x.points();
        let (a, b) = (0..v)
            .flat_map(|a| (0..v).map(move |b| (a, b)))
            .find(|&(a, b)| x.color(a, b) == t)
            .unwrap();
        (0..v).filter(|&g| x.color(a, g) == r && x.color(g, b) == s).count() as u64
    }

    #[test]
    fn tatra_8_7_is_rank_14() {
        let x = x0(2, 3, 7);
        let c = cert(&x);
        assert_eq!(c.rank, 14);
        assert_eq!(c.mode, VerificationMode::Full);
        assert_eq!(c.valencies[..7], [1; 7]);
        assert_eq!(c.valencies[7..], [8; 7]);
        for g in 0..7u32 {
            assert_eq!(c.inverse[g as usize], (7 - g) % 7);
            assert_eq!(c.inverse[7 + g as usize], 7 + g);
        }
        assert!(!c.commutative);
    }

    #[test]
    fn intersection_numbers_at_8_7() {
        let x = x0(2, 3, 7);
        let t = intersection_numbers(&x).unwrap();
        let s = |g: u32| (7 + g) as usize;
        assert_eq!(t.get(s(0), s(0), 0), 8);
        assert_eq!(t.get(s(0), s(0), s(3)), 1);
        for g in 0..7 {
            for h in 0..7 {
                assert_eq!(t.get(g, h, (g + h) % 7), 1);
                for xx in 0..7 {
                    let expect = if xx == (7 - h + g) % 7 { 8 } else { 0 };
                    assert_eq!(t.get(s(h as u32), s(g as u32), xx), expect);
                }
            }
        }
        for (r, s_, tt) in [(7u32, 8u32, 3u32), (0, 9, 9), (12, 3, 8), (2, 5, 0)] {
            assert_eq!(t.get(r as usize, s_ as usize, tt as usize), brute_c(&x, r, s_, tt));
        }
    }

    #[test]
    fn trivial_scheme() {
        let c = cert(&Scheme::trivial(5));
        assert_eq!(c.rank, 2);
        assert_eq!(c.valencies, vec![1, 4]);
        assert!(c.commutative);
    }

    #[test]
    fn moving_one_arc_is_detected() {
        let x = x0(2, 3, 7);
        let (a, b) = (0..63)
            .flat_map(|a| (0..63).map(move |b| (a, b)))
            .find(|&(a, b)| x.color(a, b) == 7)
            .unwrap();
        let broken = x.with_entry(a, b, 8);
        assert!(matches!(
            verify_scheme(&broken),
            SchemeVerdict::Violation(SchemeViolation::Transpose { .. })
                | SchemeVerdict::Violation(SchemeViolation::Intersection { .. })
        ));
        // keep symmetry so the intersection check is what fires
        let broken = broken.with_entry(b, a, 8);
        assert!(matches!(
            verify_scheme(&broken),
            SchemeVerdict::Violation(SchemeViolation::Intersection { .. })
        ));
        assert!(intersection_numbers(&broken).is_err());
    }

    #[test]
    fn commutativity_by_n() {
        assert!(!cert(&x0(2, 3, 7)).commutative);
        let c = cert(&x0(5, 1, 2));
        assert!(c.commutative);
        assert_eq!(c.rank, 4);
        let c = cert(&x0(5, 1, 1));
        assert!(c.commutative);
        assert_eq!(c.rank, 2);
        assert!(!cert(&x0(7, 1, 3)).commutative);
    }

    #[test]
    fn thin_radicals() {
        let c = cert(&x0(2, 3, 7));
        let th = thin_radical(&c);
        assert_eq!(th.order(), 7);
        assert!(th.cyclic);
        assert!(star_is_dihedral(&c));

        let c = cert(&x0(3, 2, 4));
        let th = thin_radical(&c);
        assert_eq!(th.order(), 4);
        assert!(th.cyclic);
        assert!(star_is_dihedral(&c));

        let c = cert(&x0(5, 1, 1));
        assert_eq!(thin_radical(&c).order(), 1);
    }

    #[test]
    fn star_product_matches_dihedral_labels() {
        let c = cert(&x0(2, 3, 7));
        let table = star_table(&c).unwrap();
        // s_h * s_g = r_{g-h}
        for h in 0..7u32 {
            for g in 0..7u32 {
                assert_eq!(table[(7 + h) as usize][(7 + g) as usize], (7 + g - h) % 7);
            }
        }
    }
}
