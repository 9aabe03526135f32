//! Symbolic toolkit for fundamental groups of double branched covers.
//!
//! Tangle-labelled planar maps are turned into Brunner-style presentations
//! at three levels of detail. Universal ranges of algebraic tangles are
//! evaluated exactly. Non-left-orderability is certified by range criteria
//! or refuted on a bounded ball of words.
//!
//! The crate is `no_std` and only needs `alloc`; file formats and the
//! command line live in the companion `coarse-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certify;
pub mod exact;
pub mod generate;
pub mod map;
pub mod presentation;
pub mod range;
pub mod refute;
pub mod snf;
pub mod tangle;

pub use certify::{certify, Certificate, Method, Verdict};
pub use exact::{ExtendedRational, Rational};
pub use map::{Dart, EdgeLabel, Face, MapBuilder, MapError, PlanarMap};
pub use presentation::{
    brunner, coarse_brunner, h1_order, reduced_brunner, CoarsePresentation, GenKind, Presentation, Word,
};
pub use range::{range_of_expr, Range};
pub use refute::{refute, RefuteError};
pub use tangle::{parse_tangle, TangleExpr};
