//! Exact computations on jets of commuting matrix pairs: truncated matrix
//! polynomial rings, commutant parametrizations, jet ideals, reducibility
//! bounds and `n = 3` closure certificates.

pub mod commutant;
pub mod error;
pub mod field;
pub mod io;
pub mod irr3;
pub mod jetideal;
pub mod matrix;
pub mod poly;
pub mod redwitness;
mod roots;
pub mod sampling;
pub mod subspace;
pub mod symcalc;
pub mod truncmat;

pub use error::{Error, Result};
pub use field::{Field, FieldError, FieldSpec, PrimeField, Rationals};
pub use matrix::Matrix;
pub use poly::UniPoly;
pub use subspace::{Coordinates, SubspaceBasis};
pub use truncmat::{CombineMode, MatPoly};
