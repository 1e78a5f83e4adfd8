pub mod clifford;
pub mod error;
pub mod kleingeom;
pub mod linalg;
pub mod qalg;
pub mod scalars;
pub mod verify;

pub use clifford::{Certificate, ParallelClass, Parallelism};
pub use error::{Error, Result};
pub use kleingeom::{Bivector, LinearComplex, Regulus};
pub use linalg::{Matrix, Subspace, Vector};
pub use qalg::{Algebra, AlgebraCase, AlgebraConfig, AlgebraElement, ValidationLevel};
pub use scalars::{Field, FieldKind, FieldSpec, Gf2Rat, Rational};
