//! Exact-arithmetic computation of the cohomology of non-Euclidean
//! crystallographic groups from their signatures: presentations and
//! abelianizations, integral (co)homology in all degrees, the cohomology
//! ring of Fuchsian groups, rational Euler characteristics and L2-Betti
//! numbers — together with an independent spectral-sequence oracle built
//! from the fundamental-domain cell complex that cross-validates every
//! closed form.

pub mod abelian;
pub mod checks;
pub mod cohomology;
pub mod corpus;
pub mod l2;
pub mod linalg;
pub mod oracle;
pub mod presentation;
pub mod ring;
pub mod signature;
pub mod stabilizer;

pub use abelian::FinAbGroup;
pub use cohomology::{CohomologyMode, GradedGroupTable, TableKind, DEFAULT_Q_MAX};
pub use linalg::{IntMatrix, SnfResult};
pub use signature::{DerivedCounts, GroupCase, Sign, Signature};
