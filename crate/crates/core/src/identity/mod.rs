//! Power-sum identities: the `det(1 + αF)` expansion, per-family
//! vanishing relations, and their exact verification.

mod derive;
mod poly;
mod sample;
mod tensorize;
mod text;

pub use derive::{g2_reduction, pfaffian_identity, vanishing_identity, Identity, Lhs, Reducer};
pub use poly::{det_expansion, Monomial, PowerSumPoly};
pub use sample::{power_sums, random_rational_vector, residual_at, sample_verify, SampleReport};
pub use tensorize::{covariant_form, tensorize_identity, Atom, AtomCache, CovariantIdentity, TensorExpr, Verdict};
