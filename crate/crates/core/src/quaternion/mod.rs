//! Explicit quaternion arithmetic over `Q` and over `F_p(t)` for odd `p`.

mod algebra;
pub mod hilbert;
mod lattice;
pub mod named;
mod order;

pub use algebra::{Quat, QuaternionAlgebra};
pub use lattice::{ideal_sqrt, ideal_valuation, lattice_from, Lattice, LatticeOps, OrderCheck};
pub use order::Localization;
