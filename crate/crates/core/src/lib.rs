//! Word calculus, Fox calculus, explicit resolutions and L²-Betti numbers of
//! one-relator groups, surface-plus-one-relation groups and (under stated
//! assumptions) two-relator groups.
//!
//! Finite cases are checked against an independent oracle that realizes each
//! resolution through the regular representation of a finite cyclic group and
//! computes homology with exact rational ranks.

pub mod betti;
pub mod complexes;
pub mod foxcalc;
pub mod lmod;
pub mod presentations;
pub mod rational;
pub mod vnoracle;
pub mod words;
