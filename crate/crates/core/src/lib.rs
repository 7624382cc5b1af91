//! Exact-arithmetic kernels for the boundary computations of the degree-7
//! cyclic Prym map on genus-2 curves.
//!
//! Everything here is computed over exact fields: rationals with
//! arbitrary-precision integers, the cyclotomic field Q(zeta_p) for a prime
//! conductor p (default 7), and the bivariate quotient ring
//! Q\[c1,c2\]/(c1^p - 1, c2^p - 1) that carries the gluing constants of the
//! boundary limit linear series. No floating point anywhere.
//!
//! The crate is organized around the independent verification suites run by
//! the `prymcheck` binary:
//!
//! * [`cyclo`] - cyclotomic and torus-ring arithmetic,
//! * [`linalg`] - dense determinant / rank / kernel over those rings,
//! * [`shimura`] - signature dimension enumeration for the moduli space of
//!   polarized abelian sixfolds with an order-7 automorphism,
//! * [`mulmap`] - the 3x3 boundary multiplication matrix, its determinant
//!   identity and root-of-unity vanishing sweep,
//! * [`prymdiff`] - the eigenbasis of Prym differentials and the kernel of
//!   the codifferential,
//! * [`covers`] - admissible Z/7-cover combinatorics over stable genus-2
//!   curves and the fiber classification,
//! * [`modular`] - Riemann-Hurwitz bookkeeping, the Gamma_0(7) index, cusp
//!   data and the final degree-10 count,
//! * [`checks`] - the named check lists consumed by the CLI reporter.
//!
//! ```
//! use prym_core::{modular, mulmap};
//!
//! // the displayed determinant identity holds for the printed matrix
//! let report = mulmap::verify_det_identity();
//! assert!(report.printed_symbolic && report.printed_all_points);
//!
//! // and the two boundary degrees sum to 10
//! assert_eq!(modular::total_degree(), 10);
//! ```

// index-pair loops over small matrices and tables read better than
// iterator chains here
#![allow(clippy::needless_range_loop)]

pub mod checks;
pub mod covers;
pub mod cyclo;
pub mod linalg;
pub mod modular;
pub mod mulmap;
pub mod prymdiff;
pub mod rng;
pub mod shimura;

pub use cyclo::{CycloElem, CycloError, Rational, TorusPoly};
pub use linalg::{ExactMatrix, FieldScalar, LinalgError, Scalar};
