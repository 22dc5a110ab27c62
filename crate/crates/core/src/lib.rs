//! Exact computations for two-term silting theory over finite-dimensional
//! bound quiver algebras over prime fields.

pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod quiver;
pub mod repmod;

pub use error::{Error, Result};
pub use linalg::{FieldElement, Matrix};
pub use quiver::{Algebra, AlgebraFile};
pub use repmod::{Module, ModuleMap, Presentation, ProjSum};
pub mod bijections;
pub mod tautilt;
pub mod torsion;
pub mod twoterm;
