//! Exact computations with racks, braided vector spaces and braid groups,
//! together with the function-field statistics they predict.

pub mod acceptance;
pub mod braided;
pub mod builtins;
pub mod caps;
pub mod coinv;
pub mod error;
pub mod group;
pub mod homology;
pub mod hurwitz;
pub mod linalg;
pub mod poly;
pub mod rack;
pub mod rational;
pub mod scalar;
pub mod stats;
pub mod symstats;

pub use caps::Caps;
pub use error::{Error, Result};
pub use rational::Q;
pub use scalar::{Field, FieldSpec, Scalar};
