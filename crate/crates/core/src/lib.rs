//! Exact computation of the first vertex of generic Newton polygons of
//! L-functions of additive character sums `sum psi(f(x))` over finite fields.
//!
//! The crate has three independent routes to the same object:
//!
//! * [`modular`] and [`hasse`]: the combinatorial prediction. The p-density of
//!   the exponent set, the minimal irreducible solutions of the associated
//!   modular equations, the support set `Sigma` and the Hasse polynomial whose
//!   non-vanishing decides whether a given polynomial reaches the predicted
//!   first vertex.
//! * [`lfunction`]: the brute-force oracle. Character sums are counted over
//!   every extension field, the L-polynomial is assembled in `Z[zeta_p][T]` and
//!   its Newton polygon is built from exact pi-adic valuations.
//! * [`dwork`]: finite-precision pi-adic arithmetic for the splitting function
//!   coefficients and minors of the Dwork matrix, used to check the congruences
//!   the prediction rests on.
//!
//! Arithmetic that does not depend on the integer width is generic over
//! [`Scalar`]; the aliases below pin the widths used by default.

pub mod config;
pub mod cyclotomic;
pub mod dwork;
pub mod error;
pub mod ffield;
pub mod hasse;
pub mod lfunction;
pub mod modular;
pub mod rational;
pub mod scalar;

pub use config::Budget;
pub use error::{Error, Result};
pub use scalar::Scalar;

use num_bigint::BigInt;

/// Exact element of `Z[zeta_p]` with arbitrary-precision coordinates.
pub type CyclotomicInteger = cyclotomic::Cyclotomic<BigInt>;

/// Fixed-width element of `Z[zeta_p]` used by the sweep hot loops.
pub type FastCyclotomic = cyclotomic::Cyclotomic<i128>;

/// Newton polygon with exact rational heights.
pub type NewtonPolygon = cyclotomic::Polygon<i64>;

/// Element of `Z_p[pi]/(pi^(p-1) + p)` at finite pi-adic precision.
pub type PiAdicElement = dwork::PiAdic<BigInt>;

/// Exact rational used for densities, slopes and vertices.
pub type Rational = num_rational::Ratio<i64>;
