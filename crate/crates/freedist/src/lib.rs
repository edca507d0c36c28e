//! Exact-arithmetic verification engine for the parabolic geometry of free
//! n-distributions: so(n+1,n) and its grading, Kostant-type homology, polynomial
//! models, tractor calculus, split octonions and G2', and the exceptional inclusions.

pub mod inclusions;
pub mod jet;
pub mod kostant;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod octonion;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod tractor;
