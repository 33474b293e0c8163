//! Zigzag structure of thin chamber complexes.
//!
//! A thin chamber complex is a pure simplicial complex in which every ridge
//! lies in exactly two facets and the facet graph is connected. The crate
//! builds and validates such complexes, walks their flags with the shift
//! operator `T` to enumerate zigzags (Petrie circuits) and shadows, constructs
//! finite Coxeter groups and their Coxeter complexes by coset enumeration,
//! builds regular abstract polytopes from string diagrams, and decides
//! z-connectedness and geodesic-to-zigzag extension questions.
//!
//! Modules:
//! - [`complex`]: complexes, level graphs Γ_k, path distance, built-ins.
//! - [`zigzag`]: flag operators σ_i, T, R; zigzag orbits, shadows,
//!   reconstruction and enumeration.
//! - [`coxeter`]: Coxeter matrices, group tables, parabolic cosets, the
//!   Coxeter complex and its zigzag law.
//! - [`polytope`]: abstract polytopes, flag complexes, generalized zigzags,
//!   regular polytopes from string diagrams.
//! - [`geodesic`]: distance normal pairs and geodesics, zigzag extension,
//!   z-connectedness, weak adjacency.

pub mod complex;
pub mod coxeter;
pub mod geodesic;
pub mod polytope;
pub mod zigzag;

pub use complex::{
    are_isomorphic, build_complex, builtin, is_k_neighborly, is_simplex, join, parse_cplx,
    path_distance, validate_thin_chamber, AdjacencyGraph, Builtin, Complex, ComplexError, Face,
    ThinChamberComplex, VertexId,
};
pub use coxeter::{
    coxeter_complex, coxeter_number, distinct_reduced_expression_exists, enumerate_group,
    parabolic_cosets, verify_zigzag_law, CoxeterComplexData, CoxeterError, CoxeterMatrix,
    GroupTable, ParabolicCosets, ZigzagLawReport, DEFAULT_ELEMENT_CAP,
};
pub use geodesic::{
    all_geodesics, are_z_connected, facet_distance, is_distance_normal_geodesic,
    is_distance_normal_pair, shadow_contains_path, weakly_adjacent, z_connectedness_report,
    zigzags_through_geodesic, FacetPath, GeodesicError, NormalityVerdict, ZConnectednessReport,
};
pub use polytope::{
    builtin_polytope, check_flag_complex_correspondence, enumerate_generalized_zigzags,
    flag_complex, generalized_zigzag, polytope_from_complex, regular_polytope_from_string,
    AbstractPolytope, CorrespondenceReport, GeneralizedZigzag, PolytopeError, PolytopeFlag,
};
pub use zigzag::{
    enumerate_zigzags, reconstruct_from_shadow, reverse_flag, shadow, sigma, t_step,
    zigzag_from_flag, zigzag_from_vertex_sequence, zigzag_predicates, ComplexAutomorphism, Flag,
    Shadow, Zigzag, ZigzagError, ZigzagInventory, ZigzagSummary,
};
