//! Permutation groups given by generators: exact order and membership via
//! a deterministic Schreier-Sims chain.

use num_bigint::BigUint;

/// One-line form: `p[x]` is the image of `x`.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Apply `a`, then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(p: &[u32]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

pub fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| {
        let x = x as usize;
        x < seen.len() && !std::mem::replace(&mut seen[x], true)
    })
}

/// Orbits of `<gens>` on `0..n`, each sorted, listed by least element.
pub fn orbits(n: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (x, &y) in g.iter().enumerate() {
            uf.union(x, y as usize);
        }
    }
    uf.classes()
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root, so roots are orbit minima.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<u32>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x as u32);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

struct Level {
    gens: Vec<Perm>,
    /// `transversal[p]` maps the base point of this level to `p`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

/// Stabilizer chain with base `0, 1, .., n-1`.
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(n: usize) -> Self {
        let levels = (0..n)
            .map(|k| {
                let mut transversal = vec![None; n];
                transversal[k] = Some(identity(n));
                Level {
                    gens: Vec::new(),
                    transversal,
                    orbit: vec![k as u32],
                }
            })
            .collect();
        StabChain { n, levels }
    }

    pub fn from_generators(n: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain::new(n);
        for g in gens {
            chain.insert(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Residue of `g` after sifting from level `k`, with the level it stopped at.
    fn sift(&self, k: usize, g: &[u32]) -> (Perm, usize) {
        let mut h = g.to_vec();
        for j in k..self.n {
            let p = h[j] as usize;
            if p == j {
                continue;
            }
            match &self.levels[j].transversal[p] {
                Some(t) => h = compose(&h, &inverse(t)),
                None => return (h, j),
            }
        }
        (h, self.n)
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.n && is_identity(&self.sift(0, g).0)
    }

    /// Adds `g` to the group. Returns false when it was already a member.
    pub fn insert(&mut self, g: &[u32]) -> bool {
        assert_eq!(g.len(), self.n);
        if self.contains(g) {
            return false;
        }
        self.extend(0, g.to_vec());
        true
    }

    /// `g` fixes `0..k`.
    fn extend(&mut self, k: usize, g: Perm) {
        let (residue, _) = self.sift(k, &g);
        if is_identity(&residue) {
            return;
        }
        let level = &mut self.levels[k];
        level.gens.push(g);
        let new = level.gens.len() - 1;
        let mut work: Vec<(u32, usize)> = level.orbit.iter().map(|&p| (p, new)).collect();
        while let Some((p, si)) = work.pop() {
            let level = &self.levels[k];
            let s = &level.gens[si];
            let q = s[p as usize] as usize;
            let tp = level.transversal[p as usize].as_ref().expect("orbit point");
            let tq_candidate = compose(tp, s);
            match &level.transversal[q] {
                Some(tq) => {
                    let schreier = compose(&tq_candidate, &inverse(tq));
                    if !is_identity(&schreier) {
                        self.extend(k + 1, schreier);
                    }
                }
                None => {
                    let level = &mut self.levels[k];
                    level.transversal[q] = Some(tq_candidate);
                    level.orbit.push(q as u32);
                    work.extend((0..level.gens.len()).map(|si| (q as u32, si)));
                }
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Orbit lengths of the basic stabilizers, base point order.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }
}

/// Exact order of `<gens>` on `0..n`.
pub fn group_order(n: usize, gens: &[Perm]) -> BigUint {
    StabChain::from_generators(n, gens).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        (0..n as u32).map(|x| (x + 1) % n as u32).collect()
    }

    fn transposition(n: usize, a: u32, b: u32) -> Perm {
        let mut p = identity(n);
        p.swap(a as usize, b as usize);
        p
    }

    /// Closure by breadth-first multiplication, for small groups only.
    fn brute_order(n: usize, gens: &[Perm]) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut frontier = vec![identity(n)];
        seen.insert(identity(n));
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn symmetric_and_cyclic() {
        assert_eq!(
            group_order(6, &[cycle(6), transposition(6, 0, 1)]),
            BigUint::from(720u32)
        );
        assert_eq!(group_order(7, &[cycle(7)]), BigUint::from(7u32));
        assert_eq!(group_order(5, &[]), BigUint::from(1u32));
        let big = group_order(30, &[cycle(30), transposition(30, 0, 1)]);
        let fact: BigUint = (1..=30u32).map(BigUint::from).product();
        assert_eq!(big, fact);
    }

    #[test]
    fn matches_brute_force() {
        // dihedral group of the 8-gon and a product group
        let refl: Perm = (0..8u32).map(|x| (8 - x) % 8).collect();
        let gens = vec![cycle(8), refl];
        assert_eq!(group_order(8, &gens), BigUint::from(brute_order(8, &gens)));
        let a: Perm = vec![1, 2, 0, 3, 4, 5, 6];
        let b: Perm = vec![0, 1, 2, 4, 5, 6, 3];
        let c: Perm = vec![0, 1, 2, 4, 3, 5, 6];
        let gens = vec![a, b, c];
        assert_eq!(brute_order(7, &gens), 72);
        assert_eq!(group_order(7, &gens), BigUint::from(72u32));
    }

    #[test]
    fn membership_and_helpers() {
        let chain = StabChain::from_generators(8, &[cycle(8)]);
        assert!(chain.contains(&compose(&cycle(8), &cycle(8))));
        assert!(!chain.contains(&transposition(8, 0, 1)));
        let p = cycle(5);
        assert!(is_identity(&compose(&p, &inverse(&p))));
        assert!(is_permutation(&p));
        assert!(!is_permutation(&[0, 0, 1]));
        assert_eq!(orbits(5, &[vec![1, 0, 2, 4, 3]]), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }
}
