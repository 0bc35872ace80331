//! Exact tools for codes in which every pair of words is at the same
//! Hamming distance.
//!
//! - [`family`]: words, families, Hamming distance, isometries, text format.
//! - [`linalg`]: exact integer determinant and rank, `θJ + γI` closed forms.
//! - [`bounds`]: Delsarte, binary single-distance and conjectured q-ary bounds.
//! - [`certify`]: Gram-matrix certificates and the quadratic-form identity.
//! - [`construct`]: Hadamard matrices and their extremal families.
//! - [`search`]: exhaustive maximum-family search and bound sweeps.

pub mod bounds;
pub mod certify;
pub mod construct;
pub mod error;
pub mod family;
pub mod linalg;
pub mod search;
mod serde_big;

pub use bounds::{
    bound_delsarte, bound_single_distance, conjecture_bound, BoundReport, BoundSource,
};
pub use certify::{
    gram_certificate, quadratic_form_value, signed_incidence_matrix, CoefficientVector,
    Conclusion, GramCertificate,
};
pub use construct::{
    hadamard_kronecker, hadamard_of_order, hadamard_paley, hadamard_sylvester,
    hadamard_to_family, HadamardMatrix,
};
pub use error::{Error, Result};
pub use family::{
    apply_isometry, check_equidistant, hamming_distance, EquidistanceCertificate, Family,
    Isometry,
};
pub use linalg::{
    det_exact, is_positive_definite_structured, rank_exact, structured_det, ExactMatrix,
    StructuredMatrixSpec,
};
pub use search::{
    enumerate_extremal, max_equidistant, sweep_conjecture, sweep_theorem, SearchProblem,
    SearchResult, SweepOptions, SweepReport,
};
