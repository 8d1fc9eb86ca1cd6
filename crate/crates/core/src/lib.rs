//! Constructive point-count certificates for a model over `F_p` of the
//! supersingular K3 surface of Artin invariant 1 with Picard number 21.
//!
//! The pipeline picks a trace-zero curve `E/F_p`, builds the Inose pencil
//! of `E x E` and its twists ([`pencil`]), classifies the singular fibers
//! ([`kodaira`]), counts points over `F_p` and `F_{p^2}` ([`counting`]), and
//! turns the counts into a Frobenius spectrum ([`certify`]).
//!
//! ```
//! let run = artin1_core::certify::certify_prime(11).unwrap();
//! assert_eq!(run.certificate.counts.n1, 1 + 20 * 11 + 11 * 11);
//! ```

pub mod certify;
pub mod counting;
pub mod curve;
pub mod error;
pub mod field;
pub mod kodaira;
pub mod pencil;
pub mod poly;

pub use error::{Error, Result};
