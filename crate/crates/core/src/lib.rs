//! A library for constructing, analyzing, and classifying finite quandles.
//!
//! A quandle is an idempotent left-distributive left quasigroup: a set with
//! a binary operation `*` (and its left division `\`) where every left
//! translation is an automorphism fixing its base point. This crate provides
//!
//! * permutation-group and multiplication-table group machinery
//!   ([`perm`], [`group`]),
//! * the [`Quandle`] type with all the standard constructions (projection,
//!   conjugation, affine, principal, coset) and isomorphism search,
//! * the bridge from quandles to their left multiplication and displacement
//!   groups, and the relations and predicates derived from them
//!   ([`structure`]),
//! * congruence lattices, quotients, and the Galois correspondence between
//!   congruences and normal subgroups of the left multiplication group
//!   ([`congruence`]),
//! * an exhaustive enumerator of small connected quandles together with
//!   verification suites that recheck the classification facts this crate
//!   is built around ([`enumerate`], [`verify`]),
//! * plain-text file formats for tables and construction specs ([`fileio`]).
//!
//! Everything works on explicit element sets; caps and node budgets guard
//! the exponential corners and turn them into reportable errors instead of
//! silent truncation.

pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod fileio;
pub mod fixtures;
pub mod group;
pub mod iso;
pub mod perm;
pub mod quandle;
pub mod structure;
pub mod verify;

pub use error::{CongruenceError, EnumError, GroupError, QuandleError};
pub use group::{AbelianGroupSpec, FiniteGroup, GroupMap};
pub use perm::{Perm, PermGroup};
pub use quandle::{Quandle, QuandleMap};
