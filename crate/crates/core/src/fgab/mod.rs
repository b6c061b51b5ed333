//! Exact arithmetic for finitely generated abelian groups.

pub mod error;
pub mod functor;
pub mod group;
pub mod hom;
pub mod matrix;
pub mod partial;
pub mod smith;
pub mod solve;
pub mod subgroup;
pub mod sum;

pub use error::{GroupError, GroupResult};
pub use functor::{n_torsion, n_torsion_hom, restrict, tensor_hom, tensor_zmod, torsion};
pub use group::{group_from_presentation, Element, FgGroup, Presented};
pub use hom::GroupHom;
pub use matrix::{int, reduce, Int, Matrix};
pub use partial::{extend_hom, HomSystem, SubgroupHom};
pub use smith::{hnf, smith, SmithForm};
pub use solve::{Congruences, Solution};
pub use subgroup::{Subgroup, SubgroupStructure};
pub use sum::DirectSum;
