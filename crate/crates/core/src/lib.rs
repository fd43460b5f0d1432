//! Exact computations on simplicial lattice fans in dimension 3: validity,
//! smoothness, completeness and projectivity of the toric variety, star
//! subdivisions and ray contractions, flip/flop/anti-flip wall surgery,
//! enumeration of smooth complete fans on a fixed ray set, and a
//! breadth-first search for projective models.
//!
//! All arithmetic is arbitrary precision; there is no floating point.

pub mod arith;
pub mod catalog;
pub mod enumeration;
pub mod error;
pub mod fan;
pub mod io;
pub mod lp;
pub mod primitive;
pub mod projectivity;
pub mod search;
pub mod subdivision;
pub mod surgery;

pub use catalog::{CatalogEntry, CatalogError, CatalogId};
pub use enumeration::{enumerate_smooth_complete_fans, EnumerationReport};
pub use error::FanError;
pub use fan::{CanonicalKey, Cone, Fan, RayVector, Wall};
pub use primitive::{PrimitiveCollection, PrimitiveRelation};
pub use projectivity::{DivisorData, ProjectivityCertificate, ProjectivityVerdict, WallInequality};
pub use search::{projectivize, surgery_graph, SearchOptions, SearchResult, SurgeryGraph};
pub use subdivision::{contract_ray, star_subdivide};
pub use surgery::{SurgeryKind, SurgeryStep, WallClassification};
