//! Exact computations in rings of p-permutation modules of finite groups.
//!
//! The crate works with finite groups given by explicit multiplication
//! tables and performs all arithmetic exactly, over cyclotomic fields with
//! rational coefficients. On top of the group layer it provides:
//!
//! * enumeration of pairs (P, s) of a p-subgroup and a normalizing
//!   p'-element, up to conjugacy ([`pairs`]);
//! * species (Brauer characters of Brauer quotients) and the primitive
//!   idempotents of the ring of p-permutation modules, by two independent
//!   formulas ([`ppring`]);
//! * restriction, induction, inflation, deflation and transport of
//!   idempotents, with the predicted right-hand sides ([`ppring`]);
//! * the decomposition of the ring into blocks indexed by reduced pairs,
//!   dimensions of simple evaluations, and essential-algebra invariants
//!   ([`functor`]).
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `pperm` binary for an analysis/verification command line.

pub mod catalog;
pub mod cli;
pub mod cyclo;
pub mod functor;
pub mod group;
pub mod pairs;
pub mod ppring;
pub mod records;
pub mod verify;

use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} has order {size}, exceeding the supported bound {bound}")]
    TooLarge {
        what: String,
        size: usize,
        bound: usize,
    },
    #[error("multiplication table is not a Latin square: {detail}")]
    NotLatinSquare { detail: String },
    #[error("element 0 is not a two-sided identity of the table")]
    IdentityViolation,
    #[error("multiplication table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("input format error: {msg}")]
    Format { msg: String },
    #[error("subgroup is not normal in its parent")]
    NotNormal,
    #[error("{0} is not a valid selector; valid indices are 0..{1}")]
    SelectorOutOfRange(usize, usize),
    #[error("mismatched operands: {msg}")]
    Mismatch { msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown catalog group '{0}'")]
    UnknownCatalog(String),
    #[error("invalid pair: {msg}")]
    InvalidPair { msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
