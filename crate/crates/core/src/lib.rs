//! Exact q-expansion arithmetic for modular forms, q-Wronskians, divisor and
//! dimension bookkeeping for Fuchsian signatures, and a test deciding whether
//! the cusp at infinity of a modular curve is an m/2-Weierstrass point.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every truncated series carries the precision up to which it is known.
//!
//! Module map:
//!
//! - [`qseries`]: truncated power series in `q` over `Q`.
//! - [`exactlinalg`]: rational matrices, sorted integral echelon reduction
//!   with transformation matrix, fraction-free determinants.
//! - [`level1`]: Eisenstein series, `Delta`, and the monomial basis of `M_m(SL_2(Z))`.
//! - [`wronskian`]: q-Wronskians, span valuations and order identities.
//! - [`surface`]: signatures, dimension/degree formulas, `Gamma_0(N)` invariants.
//! - [`weierstrass`]: the monomial-elimination Weierstrass test.
//! - [`ingest`]: the `QEXP` basis file format and the signature file format.

pub mod error;
pub mod exactlinalg;
pub mod ingest;
pub mod level1;
pub mod qseries;
pub mod surface;
pub mod weierstrass;
pub mod wronskian;

pub use error::{Error, Result};
pub use exactlinalg::{EchelonResult, RatMatrix};
pub use qseries::{QSeries, Rational};
pub use surface::{Gamma0Invariants, HyperellipticStatus, SurfaceSignature};
pub use weierstrass::{CuspBasis, ModularFormRecord, WeierstrassReport};
pub use wronskian::{SpanValuations, WronskianOutput};
