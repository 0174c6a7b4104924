//! Core library for the trigraded cyclic-quiver algebra, the action of the
//! extended affine type-A braid group on complexes of projective modules, the
//! matching calculus of trigraded admissible curves on the punctured disk, and
//! three linear representations used for cross-checking.

pub mod algebra;
pub mod braid;
pub mod complexes;
pub mod curves;
pub mod laurent;
pub mod linrep;
