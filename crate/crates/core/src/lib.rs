//! Weighted branching rules for hook lengths of Young diagrams: the
//! polynomial identities, a bijective proof of the complementary rule,
//! weighted hook walks, and statistics of standard Young tableaux.

pub mod bijection;
pub mod hook_walks;
pub mod identities;
pub mod partition;
pub mod polynomial;
pub mod syt;

pub use identities::{IdentityId, VerificationReport, VerifyMode, VerifyOptions};
pub use partition::{Cell, Partition, PartitionError};
pub use polynomial::{FactoredSum, Monomial, Polynomial, Variable};
