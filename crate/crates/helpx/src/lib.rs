//! Exact-arithmetic engine for the extended HeLP method: torsion units in
//! group rings over rings of cyclotomic integers.
//!
//! The crate is organized around the pipeline of the method:
//!
//! * [`cyclotomic`] — exact arithmetic in Q(zeta_n): power-basis numbers,
//!   Galois action, traces, integrality and residue maps.
//! * [`chartab`] — character table data model, validation, bundled fixtures,
//!   class power maps and quotient fusion maps.
//! * [`groupring`] — exact group-ring arithmetic for verifying explicit
//!   torsion units and computing their invariants.
//! * [`help`] — the solver: builds the integer linear system on partial
//!   augmentations, enumerates all solutions over the divisor tower, and
//!   applies the Wagner and quotient filters.

pub mod chartab;
pub mod cyclotomic;
pub mod fixtures;
pub mod groupring;
pub mod help;
mod lp;
