//! Exact GF(2) engine for Floer-type spectral sequences: bit-packed linear
//! algebra, twisted complexes over Z2[T,T^-1], filtration spectral sequence
//! pages, rank-feasibility deduction, Gysin-sequence chases, and Euler
//! characteristic inequalities.

pub mod catalog;
pub mod complex;
pub mod deduce;
pub mod euler;
pub mod gf2;
pub mod randgen;
pub mod schema;
pub mod specseq;
