//! Difference sets in Z_n: verification, the trivial, Paley and Singer
//! families, complements and equivalence.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::sring::{CyclicGroup, GroupRingElt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DsParams {
    pub n: u32,
    pub k: u32,
    pub lambda: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifferenceSet {
    pub n: u32,
    /// Sorted, distinct residues.
    pub elements: Vec<u32>,
    pub params: DsParams,
}

impl DifferenceSet {
    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `n k lambda : e1 e2 ...`
    pub fn catalog_line(&self) -> String {
        let els: Vec<String> = self.elements.iter().map(u32::to_string).collect();
        format!(
            "{} {} {} : {}",
            self.params.n,
            self.params.k,
            self.params.lambda,
            els.join(" ")
        )
    }
}

fn normalize(n: u32, elements: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = elements.iter().map(|&x| x % n).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Brute-force difference count. `None` when some nonzero residue is hit a
/// different number of times than another.
pub fn verify_ds(n: u32, elements: &[u32]) -> Option<DsParams> {
    if n == 0 || elements.is_empty() {
        return None;
    }
    let d = normalize(n, elements);
    let mut counts = vec![0u32; n as usize];
    for &a in &d {
        for &b in &d {
            if a != b {
                counts[((a + n - b) % n) as usize] += 1;
            }
        }
    }
    let lambda = if n > 1 { counts[1] } else { 0 };
    if counts[1..].iter().any(|&c| c != lambda) {
        return None;
    }
    Some(DsParams {
        n,
        k: d.len() as u32,
        lambda,
    })
}

pub fn certify(n: u32, elements: &[u32]) -> Result<DifferenceSet> {
    let params = verify_ds(n, elements)
        .ok_or_else(|| Error::BadParameters(format!("{elements:?} is not a difference set in Z_{n}")))?;
    Ok(DifferenceSet {
        n,
        elements: normalize(n, elements),
        params,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrivialKind {
    Singleton,
    ComplementSingleton,
    Full,
}

pub fn trivial_ds(n: u32, kind: TrivialKind) -> Result<DifferenceSet> {
    if n == 0 {
        return Err(Error::BadParameters("n must be positive".into()));
    }
    let elements: Vec<u32> = match kind {
        TrivialKind::Singleton => vec![0],
        TrivialKind::ComplementSingleton => (1..n).collect(),
        TrivialKind::Full => (0..n).collect(),
    };
    certify(n, &elements)
}

/// Complement in Z_n; parameters `(n, n-k, n-2k+lambda)`.
pub fn complement_ds(ds: &DifferenceSet) -> Result<DifferenceSet> {
    let elements: Vec<u32> = (0..ds.n).filter(|&x| !ds.contains(x)).collect();
    let out = certify(ds.n, &elements)?;
    let DsParams { n, k, lambda } = ds.params;
    debug_assert_eq!(out.params.k, n - k);
    if n > 1 && n - k >= 1 {
        debug_assert_eq!(out.params.lambda as i64, n as i64 - 2 * k as i64 + lambda as i64);
    }
    Ok(out)
}

fn check_paley_prime(p: u32) -> Result<()> {
    if !arith::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p % 4 != 3 {
        return Err(Error::BadCongruence { p: p as u64 });
    }
    Ok(())
}

fn quadratic_residues(p: u32) -> Vec<u32> {
    normalize(
        p,
        &(1..p)
            .map(|x| (x as u64 * x as u64 % p as u64) as u32)
            .collect::<Vec<_>>(),
    )
}

/// Nonzero quadratic residues mod a prime `p = 3 mod 4`.
pub fn paley_ds(p: u32) -> Result<DifferenceSet> {
    check_paley_prime(p)?;
    certify(p, &quadratic_residues(p))
}

/// Singer difference set in Z_n, n = (r^d - 1)/(r - 1): the residues
/// `i mod n` with `Tr(g^i) = 0`.
pub fn singer_ds(r: u32, d: u32) -> Result<DifferenceSet> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: d });
    }
    let field = FiniteField::new(r as u64, d)?;
    let q = field.order();
    let n = (q - 1) / (r - 1);
    let elements: Vec<u32> = (0..n).filter(|&i| field.trace(field.exp(i as u64)) == 0).collect();
    certify(n, &elements)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaleyClasses {
    pub p: u32,
    pub residues: Vec<u32>,
    pub nonresidues: Vec<u32>,
}

impl PaleyClasses {
    /// `C_1` for `i = 1`, `C_2` for `i = 2`.
    pub fn class(&self, i: u8) -> &[u32] {
        match i {
            1 => &self.residues,
            2 => &self.nonresidues,
            _ => panic!("Paley class index must be 1 or 2"),
        }
    }
}

/// Residue and non-residue classes, with `C_i^2 = (p-3)/4 C_i + (p+1)/4 C_(3-i)`
/// checked by explicit convolution.
pub fn paley_classes(p: u32) -> Result<PaleyClasses> {
    check_paley_prime(p)?;
    let residues = quadratic_residues(p);
    let nonresidues: Vec<u32> = (1..p).filter(|x| residues.binary_search(x).is_err()).collect();
    let classes = PaleyClasses {
        p,
        residues,
        nonresidues,
    };
    let group = CyclicGroup { n: p as usize };
    let as_elt = |s: &[u32]| GroupRingElt::from_set(p as usize, &s.iter().map(|&x| x as usize).collect::<Vec<_>>());
    for i in [1u8, 2] {
        let ci = as_elt(classes.class(i));
        let other = as_elt(classes.class(3 - i));
        let expected = ci
            .scaled(((p - 3) / 4) as i64)
            .plus(&other.scaled(((p + 1) / 4) as i64));
        if ci.product(&ci, &group) != expected {
            return Err(Error::BadParameters(format!("Paley identity fails for p = {p}")));
        }
    }
    Ok(classes)
}

/// A witness `u * D1 + g = D2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsEquivalence {
    pub multiplier: u32,
    pub shift: u32,
}

/// Exhaustive search over units `u` and shifts `g`.
pub fn ds_equivalent(d1: &DifferenceSet, d2: &DifferenceSet) -> Option<DsEquivalence> {
    if d1.n != d2.n || d1.elements.len() != d2.elements.len() {
        return None;
    }
    let n = d1.n as u64;
    for u in 1..n.max(2) {
        if arith::gcd(u, n) != 1 {
            continue;
        }
        for g in 0..n {
            let image = normalize(
                d1.n,
                &d1.elements
                    .iter()
                    .map(|&x| ((u * x as u64 + g) % n) as u32)
                    .collect::<Vec<_>>(),
            );
            if image == d2.elements {
                let w = DsEquivalence {
                    multiplier: u as u32,
                    shift: g as u32,
                };
                debug_assert!(apply_equivalence(d1, w) == d2.elements);
                return Some(w);
            }
        }
    }
    None
}

pub fn apply_equivalence(ds: &DifferenceSet, w: DsEquivalence) -> Vec<u32> {
    let n = ds.n as u64;
    normalize(
        ds.n,
        &ds.elements
            .iter()
            .map(|&x| ((w.multiplier as u64 * x as u64 + w.shift as u64) % n) as u32)
            .collect::<Vec<_>>(),
    )
}

pub const CATALOG_PALEY: [u32; 7] = [3, 7, 11, 19, 23, 31, 43];
pub const CATALOG_SINGER: [(u32, u32); 8] = [(2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)];

/// Trivial sets for `n <= 8`, Paley and Singer families and their complements.
pub fn catalog() -> Vec<DifferenceSet> {
    let mut out = Vec::new();
    for n in 2..=8 {
        for kind in [
            TrivialKind::Singleton,
            TrivialKind::ComplementSingleton,
            TrivialKind::Full,
        ] {
            out.push(trivial_ds(n, kind).expect("trivial sets always certify"));
        }
    }
    for p in CATALOG_PALEY {
        let ds = paley_ds(p).expect("catalog primes are 3 mod 4");
        out.push(complement_ds(&ds).expect("complements certify"));
        out.push(ds);
    }
    for (r, d) in CATALOG_SINGER {
        let ds = singer_ds(r, d).expect("catalog Singer parameters are valid");
        out.push(complement_ds(&ds).expect("complements certify"));
        out.push(ds);
    }
    out
}
