//! Symbolic calculus for local Arthur packets of split Sp(2n) and SO(2n+1)
//! over p-adic fields: extended multi-segments and their operator algebra,
//! packet construction and intersection, Arthur-type decision procedures,
//! corank-indexed classification, and the exact-rational hyperplane-region
//! algorithm for the candidate unitary dual.

pub mod error;
pub mod half;
pub mod label;
pub mod params;
pub mod ldata;
pub mod ems;
pub mod ops;
pub mod packet;
pub mod decide;
pub mod temper;
pub mod corank;
pub mod fourier_motzkin;
pub mod oracle;
pub mod regions;
pub mod symbol;
pub mod par;

pub use error::{Error, Result};
pub use half::{HalfInt, Rat};
pub use label::{CuspLabel, Duality, GroupKind, GroupType};
