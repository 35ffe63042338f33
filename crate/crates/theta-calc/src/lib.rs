//! Symbolic computation for the cell categories Θ_n and finitely generated
//! presheaves on product Θ-sites.
//!
//! The crate provides:
//!
//! - the categories Θ_n themselves: objects, morphisms, composition,
//!   classification, epi-mono factorization ([`theta`]);
//! - product sites and probe windows ([`site`]);
//! - finitely generated presheaves with exact evaluation, representables,
//!   boundaries, Segal cores, finite (co)limits, hom-set enumeration, and
//!   window tabulation ([`presheaf`]);
//! - latching/matching objects, degeneracy analysis, skeleta, and fibers
//!   ([`reedy`]);
//! - Segal precategory objects, Segal maps, component categories,
//!   Dwyer-Kan checks, reduction, and the coskeleton factorization
//!   ([`segal`]);
//! - categories enriched in presheaves, suspensions, nerves, and
//!   strictification ([`enriched`]);
//! - generating map families and lifting-property search ([`families`]);
//! - randomized instance generators and the verification suites behind the
//!   command-line tool ([`gen`], [`suites`]).
//!
//! See the `examples/` directory for one runnable walkthrough per area.

pub mod enriched;
pub mod error;
pub mod families;
pub mod gen;
pub mod json;
pub mod presheaf;
pub mod reedy;
pub mod report;
pub mod segal;
pub mod site;
pub mod suites;
pub mod theta;

pub use error::{Error, Result};
