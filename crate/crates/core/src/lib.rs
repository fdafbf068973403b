//! Exact computations in shuffle Hopf algebras over free commutative
//! algebras, their power-series deformations, word quasi-symmetric functions
//! and the Hausdorff series.

pub mod combinat;
pub mod error;
pub mod exact;
pub mod fps;
pub mod freecomm;
pub mod hausdorff;
pub mod lincomb;
pub mod nattrans;
pub mod tensorhopf;
pub mod wqsym;

pub use error::{Error, Result};
pub use exact::{Poly, Rational};
pub mod verify;
