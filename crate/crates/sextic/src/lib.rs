//! Galois groups of integer sextic polynomials.
//!
//! The crate is organised bottom-up: exact polynomial arithmetic ([`polycore`]),
//! factorization ([`ffactor`]), the transitive subgroups of S6 ([`groups`]),
//! numeric resolvents with exact rounding ([`resolvents`]), the decision procedure
//! and an exact splitting-field oracle ([`classifier`]), binary-sextic invariants
//! ([`invariants`]), bounded-height censuses ([`census`]) and a masked neural
//! classifier ([`neurosym`]).

pub mod census;
pub mod classifier;
pub mod error;
pub mod ffactor;
pub mod groups;
pub mod invariants;
pub mod neurosym;
pub mod partition;
pub mod polycore;
pub mod resolvents;

pub use error::{Error, Result};
pub use partition::{CycleType, DegreePattern, Partition};
pub use polycore::{BinaryForm, IntPoly};
