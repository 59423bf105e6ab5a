//! Verification and classification of quasi-ordered commutative rings.
//!
//! A quasi-order on a ring `R` is a total preorder `⪯` with
//!
//! * QR1 `0 ≺ 1`
//! * QR2 `xy ⪯ 0 ⇒ x ⪯ 0 ∨ y ⪯ 0`
//! * QR3 `x ⪯ y, 0 ⪯ z ⇒ xz ⪯ yz`
//! * QR4 `x ⪯ y, z ≁ y ⇒ x + z ⪯ y + z`
//! * QR5 `0 ≺ z, xz ⪯ yz ⇒ x ⪯ y`
//!
//! Every such relation is either a ring order or induced by a valuation.
//! [`classifier::classify`] decides which and rebuilds the relation from the
//! witnessing structure.
//!
//! ```
//! use qring::gallery::builtin;
//! use qring::classifier::{classify, roundtrip_check, Branch};
//!
//! let b = builtin("z_padic_3").unwrap();
//! let c = classify(&b.relation, &b.window).unwrap();
//! assert_eq!(c.branch(), Branch::Valued);
//! assert!(roundtrip_check(&b.relation, &c).unwrap().ok());
//! ```

pub mod checks;
pub mod classifier;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod gallery;
pub mod group;
pub mod model_finder;
pub mod order;
pub mod relation;
pub mod ring;
pub mod structure;
pub mod valuation;

pub use checks::{Check, CheckReport, Status};
pub use classifier::{classify, roundtrip_check, Branch, Classification};
pub use error::{Error, Result};
pub use relation::{check_axioms, compute_support, lemma_suite, AxiomReport, QuasiOrderSpec, Relation};
pub use ring::{Elem, Ideal, Ring, Window};
