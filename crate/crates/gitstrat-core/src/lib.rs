//! Exact GIT stratification engine for representations of products of
//! general linear groups.
//!
//! The crate is `no_std` with `alloc`. The companion `gitstrat` crate adds
//! parallel enumeration, file formats and the command line tool.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod exact;
pub mod poly;
pub mod rep;
pub mod ring;
pub mod beta;
pub mod strata;
pub mod certificates;
pub mod invariants;
pub mod stabilizers;
pub mod unipotent;
pub mod substrata;
