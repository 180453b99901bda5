//! Exact computations on the extended quotients `(T^n/T)//(Z/nZ)`.
//!
//! * [`arith`]: integers and roots of unity as elements of Q/Z.
//! * [`quotient`]: the shift action on `T^n/T`, isotropy, fixed sets and the
//!   component census `X(n, k, ω)`.
//! * [`cohomology`]: cyclic invariants of `∧C^n`, Betti numbers of `X(n)` and
//!   of every component, each with an independent oracle.
//! * [`ktheory`]: rational K-theory ranks aggregated over the components.
//! * [`labels`]: the labelling `μ^s` of constituents and its finite-model checks.
//! * [`report`]: record rendering shared by the CLI and the web demo.

pub mod arith;
#[cfg(feature = "cli")]
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod ktheory;
pub mod labels;
pub mod quotient;
pub mod report;

pub use arith::RationalAngle;
pub use cohomology::{BettiTable, CharacterRow, GradedDims};
pub use error::{Error, Result};
pub use ktheory::{ComponentContribution, KRanks};
pub use labels::{LocalFieldData, ReprLabel, SquareReport};
pub use quotient::{Component, ExtQuotPoint, FixedSet, ProjectivePoint, ShiftElement};
