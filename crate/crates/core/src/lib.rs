//! Exact arithmetic for linear systems over finite abelian groups.
//!
//! The crate certifies columns conditions of integer matrices over ℤ, ℚ and
//! ℤ/nℤ, reduces matrices to unit `k`-determinantal through the Smith normal
//! form, counts subgroups of finite abelian groups by closed formula and by
//! enumeration, counts (monochromatic) solutions of `A x = 0` both by brute
//! force and through an exact character sum, and builds the echelon skeleton
//! structures used to place monochromatic solutions.
//!
//! Everything here is `no_std` with `alloc`; file formats, the command line
//! and threaded drivers live in the companion `rado` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abgroup;
pub mod arith;
pub mod columns;
pub mod count;
mod error;
pub mod extremal;
pub mod intmat;
pub mod ramsey;

pub use error::{Error, Result};

pub use abgroup::{GroupSpec, PGroupType};
pub use columns::{ColumnsCertificate, Ring};
pub use count::{Backend, Coloring, ColoringScheme, ElementSet, SolutionCount};
pub use intmat::{IntMatrix, SnfDecomposition};
