//! Structural checks built on the cone pipeline, each returning a serializable report.

pub mod counterexample;
pub mod faces;
pub mod family;
pub mod fiber;
pub mod sampling;
pub mod suite;

pub use counterexample::{counterexample_bodies, counterexample_check, CounterexampleReport};
pub use faces::{lemma_split_check, two_face_checks, LemmaSplitReport, TwoFaceReport};
pub use family::{check_family_equals_facets, family_63, FamilyComparison, InequalityFamily63};
pub use fiber::{fiber_rank_check, FiberReport};
pub use sampling::{sample_inequalities, SampleReport};
pub use suite::{run_suite, CheckReport, Suite, SuiteOptions};
