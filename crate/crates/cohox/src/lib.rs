//! Exact-arithmetic computational algebraic topology: finitely
//! presented abelian groups, simplicial and Čech cohomology,
//! obstruction theory for maps into spheres, towers and phantom
//! filtrations.

pub mod cech;
pub mod cli;
pub mod coch;
pub mod cocycle;
pub mod complex;
pub mod cover;
pub mod error;
pub mod fpgroup;
pub mod hom_ext;
pub mod io;
pub mod matrix;
pub mod moore;
pub mod obstruction;
pub mod orbits;
pub mod phantom;
pub mod simplicial;
pub mod subquotient;
pub mod telescope;
pub mod tower;

pub use error::{Budget, CohoxError};
