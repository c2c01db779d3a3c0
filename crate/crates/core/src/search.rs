//! Admissible `(p, q)` pairs for the DSRG construction and the matching
//! `t` values with `4t + 3` and `(4t + 3) t + 1` both prime.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

pub const MAX_Q_LIMIT: u64 = 1 << 40;
pub const MAX_T_LIMIT: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DsrgPair {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub d: u32,
    pub both_prime: bool,
}

impl DsrgPair {
    /// `p q r d both_prime`
    pub fn table_row(&self) -> String {
        format!("{} {} {} {} {}", self.p, self.q, self.r, self.d, self.both_prime)
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.p, self.q, self.r, self.d, self.both_prime)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    PrimePowerQ,
    PrimeQ,
}

/// `q = p (p - 3) / 4 + 1`
pub fn q_for(p: u64) -> u64 {
    p * (p - 3) / 4 + 1
}

/// All pairs with `q <= max_q`, sorted by `q`.
pub fn search_pairs(max_q: u64, mode: SearchMode) -> Result<Vec<DsrgPair>> {
    if max_q > MAX_Q_LIMIT {
        return Err(Error::TooLarge {
            what: "max_q",
            size: max_q,
            cap: MAX_Q_LIMIT,
        });
    }
    let mut p_max = 7;
    while q_for(p_max + 4) <= max_q {
        p_max += 4;
    }
    let candidates: Vec<u64> = (7..=p_max).step_by(4).collect();
    let mut out: Vec<DsrgPair> = candidates
        .into_par_iter()
        .filter_map(|p| {
            let q = q_for(p);
            if q > max_q || !arith::is_prime(p) {
                return None;
            }
            let (r, d) = arith::prime_power(q)?;
            if mode == SearchMode::PrimeQ && d != 1 {
                return None;
            }
            assert!(d % 2 == 1, "even degree at p = {p}, q = {q}");
            Some(DsrgPair {
                p,
                q,
                r,
                d,
                both_prime: d == 1,
            })
        })
        .collect();
    out.sort_by_key(|pair| pair.q);
    Ok(out)
}

/// `t` in `1..=max_t` with `4t + 3` and `(4t + 3) t + 1` prime.
pub fn bateman_horn_t(max_t: u64) -> Result<Vec<u64>> {
    if max_t > MAX_T_LIMIT {
        return Err(Error::TooLarge {
            what: "max_t",
            size: max_t,
            cap: MAX_T_LIMIT,
        });
    }
    Ok((1..=max_t)
        .into_par_iter()
        .filter(|&t| arith::is_prime(4 * t + 3) && arith::is_prime((4 * t + 3) * t + 1))
        .collect())
}

/// `t -> (4t + 3, (4t + 3) t + 1)`
pub fn pair_of_t(t: u64) -> (u64, u64) {
    (4 * t + 3, (4 * t + 3) * t + 1)
}
