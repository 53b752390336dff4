//! Online multistage subset maximization.
//!
//! A subset maximization problem asks for a feasible subset of a ground set
//! maximizing a profit; the multistage version strings `T` such instances
//! together and adds a similarity bonus between consecutive solutions
//! (shared objects, or agreement per object). This crate implements the
//! online side of that game at desk scale with exact rational arithmetic:
//!
//! - online policies with and without lookahead ([`algorithms`]),
//! - adaptive lower-bound instance generators ([`adversary`]),
//! - an exact offline optimum used as the ratio denominator ([`offline`]),
//! - a game loop enforcing the information model, plus reporting
//!   ([`harness`]) and a JSON instance schema ([`schema`]).
//!
//! Core arithmetic is generic over an exact [`scalar::Scalar`]; the
//! crate-default instantiation is [`Value`] (arbitrary-precision rationals).

pub mod adversary;
pub mod algorithms;
pub mod bonus;
pub mod error;
pub mod family;
pub mod harness;
pub mod offline;
pub mod oracle;
pub mod scalar;
pub mod schema;
pub mod set;
pub mod value;

pub use bonus::{hamming_bonus, intersection_bonus, BonusModel};
pub use error::{Error, Result};
pub use family::{
    Evolution, FamilyKind, FeasibleFamily, MultistageInstance, ProfitFunction, StageInstance,
    DEFAULT_ENUM_CAP,
};
pub use offline::{offline_optimum, offline_upper_bound, OfflineResult};
pub use oracle::{argmax, argmax_last, argmax_pair, argmax_profit, AugmentedQuery};
pub use scalar::{parse_scalar, scalar_string, Scalar};
pub use set::ObjectSet;
pub use value::{sequence_value, SolutionSequence, ValueBreakdown};

/// Default exact scalar: arbitrary-precision rationals.
pub type Value = num_rational::BigRational;

/// Machine-word rationals for small closed-form work.
pub type Value64 = num_rational::Rational64;

/// Instance over the default scalar.
pub type Instance = MultistageInstance<Value>;

/// Stage over the default scalar.
pub type Stage = StageInstance<Value>;
