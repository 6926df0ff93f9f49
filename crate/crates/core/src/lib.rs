//! Lattice computations over Z_(p) for Iwasawa-theoretic triviality criteria
//! of CM-fields of degree 4 and 6.
//!
//! Galois groups of abelian pro-p extensions are modelled as Z_(p)-lattices of
//! exponent vectors; subfields correspond to sublattices.

pub mod constructions;
pub mod criteria;
pub mod error;
pub mod lattice;
pub mod lemmas;
pub mod matrix;
pub mod models;
pub mod oracle;
pub mod scalar;
pub mod wedge;

pub use constructions::{named_construction, named_construction_str, Construction, ConstructionExtras};
pub use criteria::{classify, CaseTag, ClassTag, ClassificationReport, PrimeBehavior};
pub use error::{Error, Result};
pub use lattice::{Lattice, QuotientInvariants};
pub use lemmas::{verify_lemma, LemmaId, LemmaReport, Outcome};
pub use matrix::{PMatrix, SmithData};
pub use models::{build_model, Automorphism, GaloisModel, ModelParams, PrimeLabel, Variant};
pub use scalar::{PLocal, Prime, Val};
