//! Analysis of continuous-time quantum walks on weighted graphs with loops,
//! centred on twin vertices.
//!
//! The walk on a graph X with Hamiltonian M (adjacency or Laplacian) has
//! transition matrix U(t) = e^{itM} = Σ_j e^{itλ_j} E_j over the spectral
//! decomposition M = Σ_j λ_j E_j. This crate decides — exactly where the
//! characteristic polynomial allows it, numerically otherwise —
//!
//! * periodicity of a vertex and its minimum period,
//! * perfect state transfer (PST) between twin vertices,
//! * pretty good state transfer (PGST),
//! * fractional revival (FR) and generalized fractional revival,
//!
//! together with the spectral machinery those verdicts rest on: eigenvalue
//! supports, cospectrality, parallelism, strong cospectrality, and the
//! recognition of supports as integers or quadratic integers θ + b√Δ.
//!
//! Layering:
//!
//! * [`graph`] — weighted graphs, Hamiltonians, twin detection, families;
//! * [`spectral`] — symmetric eigendecomposition into spectral idempotents;
//! * [`numberfield`] — exact characteristic polynomials and recognition;
//! * [`dynamics`] — U(t), probabilities, mixing, definition-level checks;
//! * [`transfer`] — the symbolic decision procedures and verdicts;
//! * [`report`] — JSON/text rendering of analysis results.

pub mod dynamics;
pub mod graph;
pub mod matrix;
pub mod numberfield;
pub mod report;
pub mod spectral;
pub mod transfer;

pub use graph::{
    are_twins, build_hamiltonian, generate_family, join, theta_of, twin_sets, Family, GraphError,
    Hamiltonian, MatrixKind, Rat, TwinKind, TwinSet, WeightedGraph,
};
pub use matrix::{CMatrix, Matrix};
pub use numberfield::{
    char_poly, factor_char_poly, integer_kernel, is_rational_ratio, nu2, recognize_support,
    squarefree_part, CharFactors, ExactPoly, ExactValue, NumberFieldError, QuadraticValue,
    SupportRecognition,
};
pub use spectral::{
    cospectral, decompose, parallel, strong_cospectrality_of_twins, strongly_cospectral, support,
    SpectralDecomposition, SpectralError, SupportProfile, Tolerances,
};
pub use dynamics::{
    check_fr_at, check_generalized_fr_at, check_periodic_at, check_pst_at, evolve,
    local_uniform_mixing_at, mixing_matrix, probability, sweep_trace, walks_equivalent_at_vertex,
    DynamicsError, TraceRow, TransitionMatrix,
};
pub use transfer::{
    analyze_pair, analyze_vertex, fr_between_twins, min_period, pgst_between_twins,
    pst_between_twins, ratio_condition, Confidence, ExactTime, FrOutcome, PairAnalysis,
    PgstOutcome, PeriodicityAnalysis, PstOutcome, RatioCondition, TimeValue, TransferError,
};
