//! Exact verification toolkit for finite irreducible reflection groups.
//!
//! Everything here runs over cyclotomic fields Q(ζ_L) with arbitrary-precision
//! rational coefficients; there is no floating point and no tolerance anywhere.
//! The headline computation: for a reflection group W with root system Φ and a
//! positive integer b, scan every w ∈ W whose characteristic polynomial admits a
//! primitive b-th root of unity, intersect the eigenspace ker(w − ζ_b) with the
//! arrangement of root hyperplanes, and minimise N(x) = |Φ| − |Φ_x| over nonzero
//! eigenvectors x. The toolkit checks N(x) ≥ b·rank, with equality exactly at
//! b = h (the Coxeter number), plus the regularity statement at b = h and the
//! classical eigenspace descriptions that support both.

pub mod cyclo;
pub mod eigenstab;
pub mod error;
pub mod family;
pub mod laurent;
pub mod report;
pub mod verify;
pub mod rootsys;
pub mod springer;
pub mod wgroup;

pub use cyclo::{CycloNum, Matrix, Rational, Subspace};
pub use eigenstab::{EigenVectorPoint, FlatScan, StabilizerReport, VerificationRecord};
pub use error::{Error, Result};
pub use family::{ClassicalWitness, PredictedStabilizer};
pub use laurent::{LaurentLeading, RationalityVerdict};
pub use rootsys::{GroupFacts, RootSet, RootSystem, TypeLabel};
pub use springer::{invariant_polynomials, InvariantSet, Model};
pub use verify::{BResult, TypeRun};
pub use wgroup::{CharPoly, ElementAnalysis, GroupEnumeration};
