//! Pencils of quadrics, lower-bound certificates, upper-bound witnesses and
//! finite-field enumeration of the rank strata.

pub mod certificate;
pub mod modp;
pub mod pencil;
pub mod phi;
pub mod rank_index;
pub mod section;
pub mod witness;

pub use certificate::{search_certificate, verify_certificate, Certificate, SearchMode, SearchOutcome};
pub use pencil::Pencil;
pub use phi::{bruteforce_rank_index, linear_forms_on_phi, phi_enumerate, phi_scan, PhiSample, PhiScan};
pub use rank_index::{rank_index, Bound, EngineConfig, Evidence, RankIndexResult, Strategy};
pub use section::{section_inequality_check, SectionReport};
pub use witness::{certify_upper, known_witness, lift_witness};
