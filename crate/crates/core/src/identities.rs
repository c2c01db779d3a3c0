//! Matrix identities of the Tatra scheme, checked as exact integer equations.
//!
//! With `A_g` the adjacency matrix of `r_g` and `B_g` that of `s_g`:
//!
//! 1. `A_h A_g = A_g A_h = A_{h+g}`
//! 2. `A_h B_g = B_{g-h}`, `B_g A_h = B_{g+h}`
//! 3. `B_h B_g = q A_{g-h} + m (J - A_C)`
//! 4. row sums of `A_g` are 1 and of `B_g` are q
//! 5. `A_g^T = A_{-g}`, `B_g^T = B_g`
//!
//! and their linear extension to the group ring Z[C].

use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;
use crate::sring::{CyclicGroup, GroupRingElt};
use crate::tatra::{BasicLabel, Omega};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub instances: usize,
    /// First failing instance, if any.
    pub failure: Option<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// The basic adjacency matrices `A_g`, `B_g` of X0.
pub struct TatraMatrices {
    pub q: i64,
    pub m: i64,
    pub n: usize,
    pub a: Vec<IntMatrix>,
    pub b: Vec<IntMatrix>,
    /// `A_C = sum_g A_g`
    pub a_c: IntMatrix,
    pub j: IntMatrix,
}

impl TatraMatrices {
    pub fn new(omega: &Omega) -> Self {
        let n = omega.n() as usize;
        let v = omega.len();
        let a: Vec<IntMatrix> = (0..n as u32)
            .map(|g| IntMatrix::from_bits(&omega.relation(BasicLabel::R(g)).arcs))
            .collect();
        // one pass over the form instead of one per s_g
        let mut b = vec![IntMatrix::zeros(v); n];
        let mut bits = vec![crate::bitset::BitMatrix::new(v); n];
        for x in 0..v {
            for y in 0..v {
                if let Some(g) = omega.form(x, y) {
                    bits[g as usize].set(x, y, true);
                }
            }
        }
        for (bm, bb) in b.iter_mut().zip(&bits) {
            *bm = IntMatrix::from_bits(bb);
        }
        let mut a_c = IntMatrix::zeros(v);
        for ag in &a {
            a_c.add_scaled(1, ag);
        }
        TatraMatrices {
            q: omega.q() as i64,
            m: omega.m() as i64,
            n,
            a,
            b,
            a_c,
            j: IntMatrix::all_ones(v),
        }
    }

    pub fn a_of(&self, xi: &GroupRingElt) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.j.size());
        for (g, &c) in xi.coeffs.iter().enumerate() {
            out.add_scaled(c, &self.a[g]);
        }
        out
    }

    pub fn b_of(&self, xi: &GroupRingElt) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.j.size());
        for (g, &c) in xi.coeffs.iter().enumerate() {
            out.add_scaled(c, &self.b[g]);
        }
        out
    }

    fn j_minus_ac(&self) -> IntMatrix {
        &self.j - &self.a_c
    }
}

fn compare(name: &str, instance: String, lhs: &IntMatrix, rhs: &IntMatrix) -> Option<String> {
    lhs.first_difference(rhs).map(|(i, j)| {
        format!(
            "{name} fails at {instance}, entry ({i},{j}): {} != {}",
            lhs.get(i, j),
            rhs.get(i, j)
        )
    })
}

/// Checks the five structure statements for every pair `h, g`.
pub fn check_structure_identities(omega: &Omega) -> Vec<IdentityReport> {
    let t = TatraMatrices::new(omega);
    let n = t.n;
    let v = omega.len();
    let mut reports = Vec::new();
    let pairs = || (0..n).flat_map(move |h| (0..n).map(move |g| (h, g)));

    let mut fail = None;
    for (h, g) in pairs() {
        let hg = &t.a[h] * &t.a[g];
        let gh = &t.a[g] * &t.a[h];
        fail = fail
            .or_else(|| compare("A_h A_g = A_(h+g)", format!("h={h} g={g}"), &hg, &t.a[(h + g) % n]))
            .or_else(|| compare("A_g A_h = A_(h+g)", format!("h={h} g={g}"), &gh, &t.a[(h + g) % n]));
    }
    reports.push(IdentityReport {
        name: "A_h A_g = A_g A_h = A_(h+g)".into(),
        instances: n * n,
        failure: fail,
    });

    let mut fail = None;
    for (h, g) in pairs() {
        let ab = &t.a[h] * &t.b[g];
        let ba = &t.b[g] * &t.a[h];
        fail = fail
            .or_else(|| compare("A_h B_g = B_(g-h)", format!("h={h} g={g}"), &ab, &t.b[(g + n - h) % n]))
            .or_else(|| compare("B_g A_h = B_(g+h)", format!("h={h} g={g}"), &ba, &t.b[(g + h) % n]));
    }
    reports.push(IdentityReport {
        name: "A_h B_g = B_(g-h), B_g A_h = B_(g+h)".into(),
        instances: n * n,
        failure: fail,
    });

    let tail = t.j_minus_ac().scale(t.m);
    let mut fail = None;
    for (h, g) in pairs() {
        let bb = &t.b[h] * &t.b[g];
        let mut rhs = tail.clone();
        rhs.add_scaled(t.q, &t.a[(g + n - h) % n]);
        fail = fail.or_else(|| compare("B_h B_g", format!("h={h} g={g}"), &bb, &rhs));
    }
    reports.push(IdentityReport {
        name: "B_h B_g = q A_(g-h) + m (J - A_C)".into(),
        instances: n * n,
        failure: fail,
    });

    let mut fail = None;
    for g in 0..n {
        for x in 0..v {
            let ra: i64 = (0..v).map(|y| t.a[g].get(x, y)).sum();
            let rb: i64 = (0..v).map(|y| t.b[g].get(x, y)).sum();
            if fail.is_none() && (ra != 1 || rb != t.q) {
                fail = Some(format!("valency at g={g}, row {x}: n_r={ra}, n_s={rb}"));
            }
        }
    }
    reports.push(IdentityReport {
        name: "n_(r_g) = 1, n_(s_g) = q".into(),
        instances: n,
        failure: fail,
    });

    let mut fail = None;
    for g in 0..n {
        fail = fail
            .or_else(|| {
                compare(
                    "A_g^T = A_(-g)",
                    format!("g={g}"),
                    &t.a[g].transpose(),
                    &t.a[(n - g) % n],
                )
            })
            .or_else(|| compare("B_g^T = B_g", format!("g={g}"), &t.b[g].transpose(), &t.b[g]));
    }
    reports.push(IdentityReport {
        name: "r_g* = r_(-g), s_g* = s_g".into(),
        instances: n,
        failure: fail,
    });
    reports
}

/// The four group-ring identities for one pair `xi, eta` in Z[C].
pub fn check_group_ring_identities(t: &TatraMatrices, xi: &GroupRingElt, eta: &GroupRingElt) -> Result<(), String> {
    let c = CyclicGroup { n: t.n };
    let xi_eta = xi.product(eta, &c);
    let xi_inv_eta = xi.inverted(&c).product(eta, &c);
    let (axi, aeta, bxi, beta) = (t.a_of(xi), t.a_of(eta), t.b_of(xi), t.b_of(eta));

    let checks = [
        ("A_xi A_eta = A_(xi eta)", &axi * &aeta, t.a_of(&xi_eta)),
        ("A_xi B_eta = B_(xi^-1 eta)", &axi * &beta, t.b_of(&xi_inv_eta)),
        ("B_eta A_xi = B_(xi eta)", &beta * &axi, t.b_of(&xi_eta)),
        ("B_xi B_eta", &bxi * &beta, {
            let mut rhs = t.j_minus_ac().scale(t.m * xi_inv_eta.augmentation());
            rhs.add_scaled(t.q, &t.a_of(&xi_inv_eta));
            rhs
        }),
    ];
    for (name, lhs, rhs) in checks {
        if let Some(msg) = compare(name, format!("xi={:?} eta={:?}", xi.coeffs, eta.coeffs), &lhs, &rhs) {
            return Err(msg);
        }
    }
    Ok(())
}
