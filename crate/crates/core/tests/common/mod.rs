#![allow(dead_code)]

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scheme_forge::bitset::BitMatrix;
use scheme_forge::designs;
use scheme_forge::graphs::{self, ColoredDigraph};
use scheme_forge::identities::{check_group_ring_identities, TatraMatrices};
use scheme_forge::iso::{self, CanonicalForm, ColoredStructure};
use scheme_forge::sring::GroupRingElt;
use scheme_forge::tatra::Omega;

fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> BitMatrix {
    let mut a = BitMatrix::new(n);
    for (x, y) in edges {
        a.set(x, y, true);
        a.set(y, x, true);
    }
    a
}

fn petersen() -> BitMatrix {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    undirected(10, e)
}

fn paley13() -> BitMatrix {
    let squares: Vec<usize> = (1..13).map(|x| x * x % 13).collect();
    let mut e = Vec::new();
    for x in 0..13 {
        for y in 0..13 {
            if x != y && squares.contains(&((y + 13 - x) % 13)) {
                e.push((x, y));
            }
        }
    }
    undirected(13, e)
}

fn random_digraph(n: usize, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = BitMatrix::new(n);
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(0.3) {
                a.set(x, y, true);
            }
        }
    }
    a
}

pub struct Case {
    pub name: &'static str,
    pub structure: ColoredStructure,
    pub form: CanonicalForm,
}

pub fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let o87 = Omega::build(2, 3, 7).unwrap();
        let o43 = Omega::build(2, 2, 3).unwrap();
        let o94 = Omega::build(3, 2, 4).unwrap();
        let ddg43 = graphs::build_ddg(
            &o43,
            &designs::trivial_ds(3, designs::TrivialKind::ComplementSingleton).unwrap(),
        )
        .unwrap();
        let graphs: Vec<(&'static str, ColoredDigraph)> = vec![
            ("petersen", ColoredDigraph::new(petersen())),
            ("paley13", ColoredDigraph::new(paley13())),
            (
                "cycle9",
                ColoredDigraph::new(undirected(9, (0..9).map(|i| (i, (i + 1) % 9)))),
            ),
            (
                "k33",
                ColoredDigraph::new(undirected(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j))))),
            ),
            ("random-digraph", ColoredDigraph::new(random_digraph(14, 7))),
            ("dsrg-1-0", graphs::build_dsrg(&o87, 1, 0).unwrap()),
            ("dsrg-2-3", graphs::build_dsrg(&o87, 2, 3).unwrap()),
            ("ddg-4-3", ddg43),
            ("drg-9-4", ColoredDigraph::new(o94.s_union(&[0]))),
            ("srg-9-4", ColoredDigraph::new(o94.s_union(&[1, 2, 3]))),
        ];
        graphs
            .into_iter()
            .map(|(name, g)| {
                let structure = ColoredStructure::from_digraph(&g);
                let form = iso::canonical_form(&structure).unwrap();
                Case { name, structure, form }
            })
            .collect()
    })
}

type Dense = Vec<Vec<i64>>;

fn dense(b: &BitMatrix) -> Dense {
    (0..b.size())
        .map(|i| (0..b.size()).map(|j| b.get(i, j) as i64).collect())
        .collect()
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn combo(basis: &[Dense], coeffs: &[i64]) -> Dense {
    let n = basis[0].len();
    let mut c = vec![vec![0; n]; n];
    for (m, &x) in basis.iter().zip(coeffs) {
        for i in 0..n {
            for j in 0..n {
                c[i][j] += x * m[i][j];
            }
        }
    }
    c
}

fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    let mut c = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            c[(i + j) % n] += a[i] * b[j];
        }
    }
    c
}

fn invert(a: &[i64]) -> Vec<i64> {
    let n = a.len();
    (0..n).map(|g| a[(n - g) % n]).collect()
}

pub struct RingFixture {
    omega: Omega,
    a: Vec<Dense>,
    b: Vec<Dense>,
    j_minus_ac: Dense,
    matrices: TatraMatrices,
}

pub fn ring_fixture() -> &'static RingFixture {
    static L: OnceLock<RingFixture> = OnceLock::new();
    L.get_or_init(|| {
        let omega = Omega::build(2, 3, 7).unwrap();
        let n = omega.n();
        let a: Vec<Dense> = (0..n).map(|g| dense(&omega.r_union(&[g]))).collect();
        let b: Vec<Dense> = (0..n).map(|g| dense(&omega.s_union(&[g]))).collect();
        let all: Vec<u32> = (0..n).collect();
        let ac = dense(&omega.r_union(&all));
        let j_minus_ac = ac.iter().map(|r| r.iter().map(|x| 1 - x).collect()).collect();
        let matrices = TatraMatrices::new(&omega);
        RingFixture {
            omega,
            a,
            b,
            j_minus_ac,
            matrices,
        }
    })
}

/// All four identities for one pair, by dense matrices built from the
/// relation unions, and by the library's own check.
pub fn group_ring_pair_holds(xi: &[i64], eta: &[i64]) -> Result<(), String> {
    let l = ring_fixture();
    let q = l.omega.q() as i64;
    let m = l.omega.m() as i64;
    let (axi, aeta) = (combo(&l.a, xi), combo(&l.a, eta));
    let (bxi, beta) = (combo(&l.b, xi), combo(&l.b, eta));
    let prod = convolve(xi, eta);
    let inv_prod = convolve(&invert(xi), eta);
    if mul(&axi, &aeta) != combo(&l.a, &prod) {
        return Err("A_xi A_eta".into());
    }
    if mul(&axi, &beta) != combo(&l.b, &inv_prod) {
        return Err("A_xi B_eta".into());
    }
    if mul(&beta, &axi) != combo(&l.b, &prod) {
        return Err("B_eta A_xi".into());
    }
    let aug: i64 = inv_prod.iter().sum();
    let mut rhs = combo(&l.a, &inv_prod);
    for (row, jr) in rhs.iter_mut().zip(&l.j_minus_ac) {
        for (x, y) in row.iter_mut().zip(jr) {
            *x = q * *x + m * aug * y;
        }
    }
    if mul(&bxi, &beta) != rhs {
        return Err("B_xi B_eta".into());
    }
    check_group_ring_identities(
        &l.matrices,
        &GroupRingElt { coeffs: xi.to_vec() },
        &GroupRingElt { coeffs: eta.to_vec() },
    )
}
