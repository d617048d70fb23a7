//! Exact computations for generalised triangle groups
//! `<x, y | x^3 = y^5 = W(x, y)^2 = 1>`.
//!
//! The crate is `no_std` and only needs `alloc`. It covers the trace
//! polynomial of a relator, classification of its roots against the four
//! exceptional traces, essential representations into the binary icosahedral
//! group, the edge-midpoint lattice of the icosahedron, Reidemeister–Schreier
//! presentations of the index-30 subgroup, cellular homology of finite
//! abelian covers over `F_2`, and dual-number checks of the multiple-root
//! criterion.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod covers;
pub mod exact;
pub mod icosians;
pub mod intmat;
pub mod jets;
pub mod lattice;
pub mod numeric;
pub mod subgroups;
pub mod trace;
pub mod verdict;
pub mod words;

pub use exact::{GfPoly, GoldenScalar, ZPhi};
pub use words::{parse_word, GroupWord};
