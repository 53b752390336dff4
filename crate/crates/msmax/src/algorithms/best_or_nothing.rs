//! All-or-nothing policy for general evolution with the Hamming bonus.
//!
//! Before the last step, take the per-step optimum only when its profit is
//! at least twice the maximum bonus (2n), otherwise play the empty set and
//! collect the full agreement bonus between empty solutions. The last step
//! has no future bonus to protect, so its bar drops to n; and if the
//! previous step already took its optimum, the last step takes its optimum
//! unconditionally.

use super::{GameSetup, ModelRequirements, OnlinePolicy, StageWindow};
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::oracle::argmax_profit;
use crate::scalar::Scalar;
use crate::set::ObjectSet;

pub struct BestOrNothing<S: Scalar> {
    n: u32,
    horizon: usize,
    cap: usize,
    prev_choice: Option<ObjectSet>,
    prev_best: Option<ObjectSet>,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> BestOrNothing<S> {
    pub fn new(setup: &GameSetup) -> Result<Self> {
        if setup.horizon < 2 {
            return Err(Error::DegenerateHorizon(
                "best-or-nothing needs at least 2 steps".into(),
            ));
        }
        Ok(BestOrNothing {
            n: setup.n,
            horizon: setup.horizon,
            cap: setup.cap,
            prev_choice: None,
            prev_best: None,
            _marker: std::marker::PhantomData,
        })
    }
}

impl<S: Scalar> OnlinePolicy<S> for BestOrNothing<S> {
    fn name(&self) -> &'static str {
        "best-or-nothing"
    }

    fn lookahead(&self) -> usize {
        0
    }

    fn requirements(&self) -> ModelRequirements {
        ModelRequirements { evolution: None, bonus: Some(BonusModel::Hamming) }
    }

    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet> {
        let stage = view.stage(t);
        let (best, profit) = argmax_profit(stage, self.cap)?;
        let n = S::from_int(self.n as i64);
        let choice = if t < self.horizon {
            // Thresholds are non-strict throughout.
            if profit >= S::from_int(2) * n {
                best.clone()
            } else {
                ObjectSet::empty(self.n)
            }
        } else {
            let took_optimum = match (&self.prev_choice, &self.prev_best) {
                (Some(c), Some(b)) => c == b,
                _ => false,
            };
            if took_optimum || profit >= n {
                best.clone()
            } else {
                ObjectSet::empty(self.n)
            }
        };
        self.prev_choice = Some(choice.clone());
        self.prev_best = Some(best);
        Ok(choice)
    }
}
