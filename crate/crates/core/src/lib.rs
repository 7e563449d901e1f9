//! Exact enumeration of words over `[k]` by descents, rises and levels,
//! refined by which block of a partition of `[k]` the first letter of each
//! pair belongs to.
//!
//! Three independent routes produce the same numbers:
//!
//! * [`oracle`]: brute-force enumeration and a transfer-matrix recurrence;
//! * [`series`]: truncated expansion of the rational generating function;
//! * [`formulas`] and [`identities`]: closed alternating binomial sums.
//!
//! [`verify`] cross-checks them over parameter grids and [`query`] gives the
//! uniform entry point used by the command-line tool and the Python module.

pub mod binom;
pub mod error;
pub mod formulas;
pub mod identities;
pub mod oracle;
pub mod poly;
pub mod query;
pub mod series;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use formulas::{FormulaId, FormulaResult};
pub use identities::{IdentityId, IdentityReport, Verdict};
pub use oracle::{ConstraintSpec, DistPolynomial, EnumerationBudget};
pub use poly::{CoefficientPolynomial, VarSet};
pub use series::{GeneratingFunction, Marker, PowerSeries, QTracking, TrackingSpec};
pub use word::{BlockPartition, Letter, Stat, StatVector, Word};
