//! Symbol-pair distances of repeated-root constacyclic codes of length `n·p^s`
//! over `GF(p^m)` and over the chain ring `GF(p^m) + u·GF(p^m)`.
//!
//! The crate computes distances two ways: from closed forms ([`theory`]) and
//! by exhaustive enumeration ([`pairmetric::min_distance_brute`]), and checks
//! them against each other.

pub mod codes;
pub mod error;
pub mod galois;
pub mod linalg;
pub mod pairmetric;
pub mod quotient;
pub mod theory;

pub use codes::{CodeSpec, CodeVariant, ConstacyclicCode};
pub use error::{Error, Result};
pub use galois::{ChainElement, Field, Gf};
pub use pairmetric::{DistanceReport, Method, Metric, OracleOptions};
pub use quotient::{Base, QPoly, QuotientRing};
