//! Transition bonuses between consecutive solutions.
//!
//! The bonus rate is normalized to 1 per object, so profits are assumed to
//! be pre-scaled accordingly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BonusModel {
    /// Rewards agreement per object: n minus the Hamming distance of the
    /// characteristic vectors.
    Hamming,
    /// Rewards retained objects: the size of the intersection.
    Intersection,
}

impl BonusModel {
    pub fn tag(self) -> &'static str {
        match self {
            BonusModel::Hamming => "hamming",
            BonusModel::Intersection => "intersection",
        }
    }

    pub fn eval<S: Scalar>(self, a: &ObjectSet, b: &ObjectSet) -> Result<S> {
        match self {
            BonusModel::Hamming => hamming_bonus(a, b),
            BonusModel::Intersection => intersection_bonus(a, b),
        }
    }
}

fn check_ground(a: &ObjectSet, b: &ObjectSet) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::Argument(format!(
            "bonus over mismatched ground sets: n={} vs n={}",
            a.n(),
            b.n()
        )));
    }
    Ok(())
}

/// `|a ∩ b| + |complement(a) ∩ complement(b)|`, i.e. the number of objects
/// on which the two solutions agree.
pub fn hamming_bonus<S: Scalar>(a: &ObjectSet, b: &ObjectSet) -> Result<S> {
    check_ground(a, b)?;
    Ok(S::from_count(a.n() as usize - a.sym_diff_len(b)))
}

/// `|a ∩ b|`.
pub fn intersection_bonus<S: Scalar>(a: &ObjectSet, b: &ObjectSet) -> Result<S> {
    check_ground(a, b)?;
    Ok(S::from_count(a.intersection_len(b)))
}
