//! Exact single-step and two-step maximization oracles.
//!
//! These are the subroutines every online policy leans on. They enumerate
//! the feasible family (desk scale by design) and break value ties
//! deterministically: larger cardinality first, then lexicographically
//! smallest member list. The Hamming bonus rewards common absences and is
//! therefore not expressible through per-item weights alone, so the
//! two-step and last-step queries take the bonus model explicitly instead
//! of reusing [`AugmentedQuery`].

use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::StageInstance;
use crate::scalar::Scalar;
use crate::set::ObjectSet;

/// A single-step maximization with additive per-item reweighting and an
/// optional restriction of candidate solutions to a fixed subset.
pub struct AugmentedQuery<'a, S: Scalar> {
    pub base: &'a StageInstance<S>,
    pub per_item_bonus: Vec<S>,
    pub restrict_to: Option<ObjectSet>,
}

impl<'a, S: Scalar> AugmentedQuery<'a, S> {
    pub fn plain(base: &'a StageInstance<S>) -> Self {
        AugmentedQuery {
            base,
            per_item_bonus: vec![S::zero(); base.n() as usize],
            restrict_to: None,
        }
    }

    pub fn with_bonus(base: &'a StageInstance<S>, per_item_bonus: Vec<S>) -> Result<Self> {
        if per_item_bonus.len() != base.n() as usize {
            return Err(Error::Argument(format!(
                "per-item bonus has {} entries, stage has n={}",
                per_item_bonus.len(),
                base.n()
            )));
        }
        Ok(AugmentedQuery { base, per_item_bonus, restrict_to: None })
    }

    pub fn restricted(mut self, within: ObjectSet) -> Result<Self> {
        if within.n() != self.base.n() {
            return Err(Error::Argument("restriction has a different ground set".into()));
        }
        self.restrict_to = Some(within);
        Ok(self)
    }

    fn score(&self, set: &ObjectSet) -> S {
        let mut v = self.base.profit.eval(set);
        for i in set.iter() {
            v = v + self.per_item_bonus[(i - 1) as usize].clone();
        }
        v
    }
}

fn better<S: Scalar>(cand_value: &S, cand_set: &ObjectSet, best: &Option<(ObjectSet, S)>) -> bool {
    match best {
        None => true,
        Some((bset, bval)) => {
            cand_value > bval
                || (cand_value == bval && cand_set.preference_cmp(bset) == std::cmp::Ordering::Less)
        }
    }
}

/// Maximizes `p(S) + Σ_{i∈S} per_item_bonus[i]` over the feasible family,
/// within the restriction if one is set.
pub fn argmax<S: Scalar>(query: &AugmentedQuery<'_, S>, cap: usize) -> Result<(ObjectSet, S)> {
    let mut best: Option<(ObjectSet, S)> = None;
    for set in query.base.family.enumerate(cap)? {
        if let Some(within) = &query.restrict_to {
            if !set.is_subset_of(within) {
                continue;
            }
        }
        let v = query.score(&set);
        if better(&v, &set, &best) {
            best = Some((set, v));
        }
    }
    // The empty set is always feasible and always within any restriction.
    best.ok_or_else(|| Error::Internal("family enumeration yielded no feasible set".into()))
}

/// Plain per-step optimum: profit only, no reweighting.
pub fn argmax_profit<S: Scalar>(stage: &StageInstance<S>, cap: usize) -> Result<(ObjectSet, S)> {
    argmax(&AugmentedQuery::plain(stage), cap)
}

/// Maximizes `p1(S) + p2(S') + b(S, S')` over feasible pairs. Ties break by
/// the single-set preference applied to the first set, then the second.
pub fn argmax_pair<S: Scalar>(
    s1: &StageInstance<S>,
    s2: &StageInstance<S>,
    bonus: BonusModel,
    cap: usize,
) -> Result<(ObjectSet, ObjectSet, S)> {
    if s1.n() != s2.n() {
        return Err(Error::Argument(format!(
            "paired stages have n={} and n={}",
            s1.n(),
            s2.n()
        )));
    }
    let firsts = s1.family.enumerate(cap)?;
    let seconds = s2.family.enumerate(cap)?;
    let mut best: Option<(ObjectSet, ObjectSet, S)> = None;
    for a in &firsts {
        let pa = s1.profit.eval(a);
        for b in &seconds {
            let v = pa.clone() + s2.profit.eval(b) + bonus.eval::<S>(a, b)?;
            let replace = match &best {
                None => true,
                Some((ba, bb, bv)) => {
                    v > *bv
                        || (v == *bv && {
                            match a.preference_cmp(ba) {
                                std::cmp::Ordering::Less => true,
                                std::cmp::Ordering::Equal => {
                                    b.preference_cmp(bb) == std::cmp::Ordering::Less
                                }
                                std::cmp::Ordering::Greater => false,
                            }
                        })
                }
            };
            if replace {
                best = Some((a.clone(), b.clone(), v));
            }
        }
    }
    best.ok_or_else(|| Error::Internal("pair enumeration yielded no candidates".into()))
}

/// Maximizes `p(S) + b(prev, S)`: the end-of-horizon query.
pub fn argmax_last<S: Scalar>(
    stage: &StageInstance<S>,
    prev: &ObjectSet,
    bonus: BonusModel,
    cap: usize,
) -> Result<(ObjectSet, S)> {
    if prev.n() != stage.n() {
        return Err(Error::Argument("previous set has a different ground set".into()));
    }
    let mut best: Option<(ObjectSet, S)> = None;
    for set in stage.family.enumerate(cap)? {
        let v = stage.profit.eval(&set) + bonus.eval::<S>(prev, &set)?;
        if better(&v, &set, &best) {
            best = Some((set, v));
        }
    }
    best.ok_or_else(|| Error::Internal("family enumeration yielded no feasible set".into()))
}
