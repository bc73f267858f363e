//! Decreasingly minimal elements of M-convex sets: algorithms, certificates and
//! applications to orientations, matroids and flows.

pub mod applications;
pub mod base;
pub mod brute;
pub mod canonical;
pub mod engine;
pub mod error;
pub mod matroid;
pub mod netflow;
pub mod orientation;
pub mod setfn;
pub mod subset;
pub mod vector;

pub use base::{BaseHandle, Ceiling, MembershipOracle, Modularity};
pub use error::{Error, Result};
pub use setfn::{Oracle, SetFunction};
pub use subset::Subset;
pub use vector::{Comparison, IntVec};
