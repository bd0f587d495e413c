//! Exact engine for `q,t`-symmetric functions, modified Macdonald
//! polynomials, the `nabla` operator, the `C`/`B` operator families and the
//! parking-function side of the compositional shuffle identities.

pub mod macdonald;
pub mod parking;
pub mod qt;
pub mod shapes;
pub mod symfunc;
pub mod verify;
