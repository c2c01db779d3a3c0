//! Tatra association schemes over finite fields, the directed strongly
//! regular graphs and divisible design graphs obtained from them as fusions,
//! and exact verification machinery for every claimed identity.

pub mod arith;
pub mod bitset;
pub mod cli;
pub mod designs;
pub mod error;
pub mod field;
pub mod graphs;
pub mod group;
pub mod identities;
pub mod io;
pub mod iso;
pub mod matrix;
pub mod scheme;
pub mod search;
pub mod sring;
pub mod tatra;

pub use error::{Error, Result};
