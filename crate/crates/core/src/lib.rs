//! Prime constraint sets, density scans, and factorization statistics.

pub mod constraints;
pub mod error;
pub mod groups;
pub mod modular;
pub mod polyarith;
pub mod primes;

pub use constraints::{
    Checkpoint, ConstraintKind, ConstraintSpec, DedekindReport, DensityReport, FipReport,
    GpruSweep, GpruWitness, Membership, Verdict,
};
pub use error::Error;
pub use groups::{ClassTable, CycleType, GroupModel, Permutation};
pub use modular::Residue;
pub use polyarith::{FactorType, IntPoly};
pub use primes::{Factorization, SieveTable};
