//! Integer linear recurrences of order 3, their exact eigen-decomposition
//! over the splitting field, and zero-freeness certificates.

pub mod baker;
pub mod dominance;
pub mod eigen;
pub mod linrec;
pub mod series;

pub use baker::{baker_constant, baker_gap, baker_threshold, zero_free_bound_from_baker, BakerBound, BakerContext};
pub use dominance::{
    argmax_stabilize, dominant_cone_cert, max_sequence, MaxSequence, PerronConeCert, PerronConeOutcome, PerronData, VectorMargin,
    Stabilization,
};
pub use eigen::{coeffs_in_k, EigenData, SeqCoeffs};
pub use linrec::{
    certify_never_zero, certify_zero_only_at_start, mod_cycle, seq_from_pair, LcmCert, LinRec3, ModCert,
    DEFAULT_STEP_CAP,
};
pub use series::{eventual_rec_detect, series_to_polynomial};
