//! Matroids and flag matroids on small ground sets: construction, minors,
//! lifts and majors, representability over prime fields, and graphic flag
//! matroids.

pub mod bits;
pub mod cli;
pub mod flag;
pub mod gf;
pub mod graphic;
mod iso;
pub mod lift;
pub mod matroid;
pub mod repr;
