//! Combinatorics of pattern-avoiding permutations.
//!
//! * [`perm`]: permutations, containment, sums, components, inversion tables
//! * [`coloring`]: the red/blue merge splitting and the merge-count convolution
//! * [`enumerate`]: pruned generation of avoiders and inversion triangles
//! * [`partition`]: integer partitions and the inversion-table bijections
//! * [`bounds`]: growth-rate bound formulas and partition inequalities
//! * [`asymptotics`]: polynomial fits of inversion-triangle columns

pub mod asymptotics;
pub mod bounds;
pub mod coloring;
pub mod enumerate;
pub mod error;
pub mod partition;
pub mod perm;

pub use error::{Error, Result};
pub use perm::Perm;
