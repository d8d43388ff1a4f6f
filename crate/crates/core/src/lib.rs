//! Exact cohomology of finite groups with coefficients in `Z/n`-modules.

pub mod cohomology;
pub mod group;
pub mod linalg;
pub mod module;
pub mod sha;

pub use cohomology::{
    cohomology_group, cohomology_group_with, Cochain, CohomologyClass, CohomologyError, CohomologyGroup, CohomologyMap,
    ResourceGuard, DEFAULT_RESOURCE_BOUND,
};
pub use group::{catalog, lookup, CatalogEntry, FiniteGroup, GroupError, QuotientMap, Subgroup};
pub use linalg::{FinAbGroup, FinAbHom, FinAbSubgroup, IntMatrix, ModMatrix};
pub use module::{GModule, ModuleError, ModuleMap, Pairing, ShortExactSequence};
pub use sha::{propdata_certificate, sha1_omega, ShaCertificate, ShaGroup};
