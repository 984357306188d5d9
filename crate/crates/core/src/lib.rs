//! Minimal and virtual free resolutions over Cox rings of products of
//! projective spaces.

pub mod ring;
pub mod groebner;
pub mod ideals;
pub mod complexes;
pub mod cohomology;
pub mod punctual;
pub mod linalg;
pub mod cli;
