//! Graph products of finite groups.
//!
//! * [`finite_group`]: multiplication-table groups and their isomorphism test.
//! * [`product_graph`]: the commutation graph and its maximal cliques.
//! * [`word_engine`]: reduced words and canonical normal forms.
//! * [`cayley_ball`]: breadth-first balls in Cayley graphs, DOT export.
//! * [`iso_transport`]: lifting vertex-wise Cayley-graph isomorphisms to the
//!   graph product and verifying them on balls.
//! * [`clique_cert`]: non-isomorphism certificates from maximal-clique
//!   subgroups.

pub mod cayley_ball;
pub mod clique_cert;
pub mod finite_group;
pub mod iso_transport;
pub mod product_graph;
pub mod word_engine;

pub use cayley_ball::{ball, ball_with_cap, generating_set, BallError, BallSummary, CayleyBall};
pub use clique_cert::{clique_subgroup, noniso_certificate, NonIsoCertificate, NonIsoReason};
pub use finite_group::{are_isomorphic, FiniteGroup, GroupError};
pub use iso_transport::{
    build_product_iso, find_vertex_iso, lift_bijection, normalize_iso, verify_iso_on_ball,
    CayleyMap, IsoError, ProductIso, VerificationReport, VertexIso,
};
pub use product_graph::{GraphError, SimplicialGraph};
pub use word_engine::{
    CanonicalWord, Presentation, PresentationError, Syllable, VertexFactor, Word, WordError,
};
