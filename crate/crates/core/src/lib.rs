//! Combinatorial models of shift and multipush subgroups of big mapping class groups.
//!
//! Words act on surfaces with the rightmost letter first.

pub mod words;
pub mod schreier;
pub mod surfaces;
pub mod actions;
pub mod constructions;
pub mod format;
pub mod dot;
