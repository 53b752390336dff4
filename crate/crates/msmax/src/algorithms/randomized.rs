//! The two randomized policies. Both draw all their randomness up front
//! from a seeded generator, so a (policy, seed) pair replays exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::three_part::validate_partition_assumptions;
use super::{GameSetup, ModelRequirements, OnlinePolicy, StageWindow};
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::oracle::{argmax, argmax_pair, argmax_profit, AugmentedQuery};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

/// Uniformly random half of the ground set, sized ⌈n/2⌉.
pub fn sample_half(n: u32, seed: u64) -> ObjectSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items: Vec<u32> = (1..=n).collect();
    items.shuffle(&mut rng);
    let keep = (n as usize).div_ceil(2);
    ObjectSet::from_members(n, items.into_iter().take(keep)).expect("indices in range")
}

/// Restricts every step to one uniformly chosen half of the objects.
/// Requires downward-closed families and submodular profits, like the
/// deterministic partition policy.
pub struct RandPartition<S: Scalar> {
    half: ObjectSet,
    cap: usize,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> RandPartition<S> {
    pub fn new(setup: &GameSetup, seed: u64, fixed: Option<ObjectSet>) -> Result<Self> {
        let half = match fixed {
            Some(set) => {
                if set.n() != setup.n {
                    return Err(Error::Argument(
                        "fixed partition has the wrong ground-set size".into(),
                    ));
                }
                set
            }
            None => sample_half(setup.n, seed),
        };
        Ok(RandPartition { half, cap: setup.cap, _marker: std::marker::PhantomData })
    }

    pub fn half(&self) -> &ObjectSet {
        &self.half
    }
}

impl<S: Scalar> OnlinePolicy<S> for RandPartition<S> {
    fn name(&self) -> &'static str {
        "rand-partition"
    }

    fn lookahead(&self) -> usize {
        0
    }

    fn randomized(&self) -> bool {
        true
    }

    fn requirements(&self) -> ModelRequirements {
        ModelRequirements { evolution: None, bonus: Some(BonusModel::Hamming) }
    }

    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet> {
        let stage = view.stage(t);
        validate_partition_assumptions(stage, t, self.cap)?;
        let query = AugmentedQuery::plain(stage).restricted(self.half.clone())?;
        Ok(argmax(&query, self.cap)?.0)
    }
}

/// Flips one coin to chop the horizon into length-2 blocks starting at
/// step 1 or step 2, then solves every block optimally (pairs need the
/// one-step lookahead; boundary singletons take the plain optimum).
pub struct RandPairing<S: Scalar> {
    bonus: BonusModel,
    horizon: usize,
    cap: usize,
    /// Blocks start at step 2 when set.
    offset: bool,
    planned_second: Option<ObjectSet>,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> RandPairing<S> {
    pub fn new(setup: &GameSetup, seed: u64, fixed_offset: Option<bool>) -> Result<Self> {
        let offset = match fixed_offset {
            Some(o) => o,
            None => ChaCha8Rng::seed_from_u64(seed).gen_bool(0.5),
        };
        Ok(RandPairing {
            bonus: setup.bonus,
            horizon: setup.horizon,
            cap: setup.cap,
            offset,
            planned_second: None,
            _marker: std::marker::PhantomData,
        })
    }

    pub fn offset(&self) -> bool {
        self.offset
    }

    fn starts_block(&self, t: usize) -> bool {
        if self.offset {
            t == 1 || t % 2 == 0
        } else {
            t % 2 == 1
        }
    }
}

impl<S: Scalar> OnlinePolicy<S> for RandPairing<S> {
    fn name(&self) -> &'static str {
        "rand-pairing"
    }

    fn lookahead(&self) -> usize {
        1
    }

    fn randomized(&self) -> bool {
        true
    }

    fn requirements(&self) -> ModelRequirements {
        ModelRequirements { evolution: None, bonus: Some(BonusModel::Intersection) }
    }

    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet> {
        if let Some(planned) = self.planned_second.take() {
            return Ok(planned);
        }
        debug_assert!(self.starts_block(t));
        let singleton = t == self.horizon || (self.offset && t == 1);
        if singleton {
            return Ok(argmax_profit(view.stage(t), self.cap)?.0);
        }
        let (first, second, _) =
            argmax_pair(view.stage(t), view.stage(t + 1), self.bonus, self.cap)?;
        self.planned_second = Some(second);
        Ok(first)
    }
}
