//! Numerical models of the Grassmannian fat category, its matrix and groupoid
//! subcategories, the direct-sum and tensor semiring structure, and Čech
//! cocycles of Grassmannian bundles.

pub mod categories;
pub mod cocycle;
pub mod error;
pub mod grassmann;
pub mod internal_cat;
pub mod linalg;
pub mod mor;
pub mod semiring;
pub mod serial;
pub mod suites;

pub use error::{Error, Result};
pub use linalg::{Complex, Field, Mat, Scalar, Tolerance};
