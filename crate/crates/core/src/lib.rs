//! Exact periods, cycle classes, intersection numbers and Hodge-locus tangent
//! spaces of complete-intersection cycles in smooth projective hypersurfaces.

pub mod artinian;
pub mod error;
pub mod exactalg;
pub mod fermat;
pub mod hodge;
pub mod linalg;
pub mod mpoly;
pub mod periods;

pub use artinian::{GradedIdeal, GradedSubspace, SliceBasis};
pub use error::{Error, ErrorKind, Result};
pub use exactalg::{CycloField, CycloScalar, Rational};
pub use mpoly::{Monomial, Poly, PolyMatrix, PolyRing};
