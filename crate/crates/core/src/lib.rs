//! Combinatorial invariants of compactified Jacobians of nodal curves.
//!
//! A nodal curve is described by its dual graph: one vertex per irreducible
//! component, weighted by geometric genus, and one edge per node. From that
//! graph this crate computes the complexity, the degree class group, the
//! semistable and stable multidegrees of degree `g-1`, the stratification
//! of the canonical compactified Jacobian, theta-divisor strata, and several
//! Abel map predicates.
//!
//! ```
//! use nodal::{complexity, enumerate_semistable, DualGraph};
//!
//! let vine = DualGraph::vine(1, 1, 3).unwrap();
//! assert_eq!(complexity(&vine), 3.into());
//! assert_eq!(enumerate_semistable(&vine).unwrap().len(), 4);
//! ```

pub mod abel;
pub mod classgroup;
pub mod cli;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod picard;
pub mod scalar;
pub mod stability;
pub mod theta;

pub use abel::{
    correction_profile_vine, degree1_abel_is_embedding, natural_g_minus_1, natural_g_minus_1_vine,
    naturality_necessary, NaturalityStatus, NaturalityVerdict,
};
pub use classgroup::{
    degree_class_group, laplacian, semistabilize, twister_lattice, twister_multidegree, ClassLabel,
    DegreeClassGroup, Multidegree,
};
pub use error::{Error, Result};
pub use graph::{
    component_arithmetic_genus, component_codegree, complexity, connected_subcurves, counts,
    essential_connectivity, essential_graph, is_tree_like, partial_normalization, subcurve_pa, Connectivity,
    Counts, DualGraph, Limits, NodeSet, Subcurve, Vertex,
};
pub use picard::{
    classify_type_g_minus_1, d_general_verdict, irreducible_components, neron_fiber, specialize_two_component,
    strata, DGeneral, Stratum,
};
pub use stability::{
    check_stability, enumerate_semistable, enumerate_stable, enumerate_stable_disconnected, StabilityStatus,
    StabilityVerdict,
};
pub use theta::{theta_strata, w_components_vine_strictly_ss, w_dimension, ThetaDim, WAnalysis};

/// Exact matrices over arbitrary-precision integers.
pub type BigIntMatrix = linalg::IntMatrix<num_bigint::BigInt>;
/// Exact matrices over machine integers; may overflow on large inputs.
pub type I64Matrix = linalg::IntMatrix<i64>;
