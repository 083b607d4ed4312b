//! Exact computations for `SL_n` over the finite local rings `W_2(F_q)` and `F_q[t]/t^2`.

pub mod cache;
pub mod centralizer;
pub mod characters;
pub mod chartable;
pub mod clifford;
pub mod error;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod orbits;
pub mod poly;
pub mod reproduce;
pub mod ring;
pub mod run;
pub mod splitting;
pub mod stabilizer;
pub mod weyr;

pub use error::{Error, Result};
pub use matrix::Mat;
