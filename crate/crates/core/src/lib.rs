//! Exact arithmetic for T-singularities on stable surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`hj`]: Hirzebruch–Jung continued fractions and cyclic quotient data.
//! * [`tchain`]: recognition, generation and enumeration of T-chains.
//! * [`discrepancy`]: discrepancies of a contracted chain.
//! * [`invariants`]: bookkeeping identities between chain data and surface invariants.
//! * [`bounds`]: length bounds and the scenario checker, plus the classification fixtures.
//! * [`blowup`]: a Picard-lattice blow-up calculus used to replay constructions.
//! * [`cli`]: the `tsing` command line.

pub mod blowup;
pub mod bounds;
pub mod cli;
pub mod discrepancy;
mod error;
pub mod hj;
pub mod invariants;
pub mod tchain;

pub use error::{Error, Result};
pub use hj::{Chain, CyclicQuotient, Rational};
pub use tchain::{ChainClass, TParams};
