//! Generalized Reed–Solomon codes over finite fields, their Euclidean,
//! Hermitian and Galois hulls, propagation rules that grow length and
//! dimension while tracking the hull, explicit code families, and
//! entanglement-assisted quantum code parameters derived from them.

pub mod descriptor;
pub mod eaqecc;
pub mod error;
pub mod families;
pub mod field;
pub mod grs;
pub mod linalg;
pub mod rules;
pub mod sampling;
pub mod suites;

pub use error::{Error, Result};
pub use field::{make_field, Elem, Field};
pub use grs::{Code, GrsCode, HullReport, InnerProduct, LinearCode};
pub use linalg::Matrix;
