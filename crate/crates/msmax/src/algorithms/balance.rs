//! Doubling policy for general evolution with the intersection bonus and
//! one step of lookahead.
//!
//! At every step it solves the two-step subproblem on (t, t+1) exactly. It
//! keeps a tentative plan: either confirm the previous pair (locking in its
//! value) or abandon it for a new pair whose value is more than double.
//! After a confirmation it always starts a fresh pair. The last step uses
//! the convention that its "pair" is the single-step profit optimum with an
//! empty second component.

use super::{GameSetup, ModelRequirements, OnlinePolicy, StageWindow};
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::oracle::{argmax_pair, argmax_profit};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

pub struct Balance<S: Scalar> {
    bonus: BonusModel,
    horizon: usize,
    cap: usize,
    n: u32,
    prev_second: Option<ObjectSet>,
    prev_value: Option<S>,
    confirmed_last_step: bool,
}

impl<S: Scalar> Balance<S> {
    pub fn new(setup: &GameSetup) -> Result<Self> {
        Ok(Balance {
            bonus: setup.bonus,
            horizon: setup.horizon,
            cap: setup.cap,
            n: setup.n,
            prev_second: None,
            prev_value: None,
            confirmed_last_step: false,
        })
    }
}

impl<S: Scalar> OnlinePolicy<S> for Balance<S> {
    fn name(&self) -> &'static str {
        "balance"
    }

    fn lookahead(&self) -> usize {
        1
    }

    fn requirements(&self) -> ModelRequirements {
        ModelRequirements { evolution: None, bonus: Some(BonusModel::Intersection) }
    }

    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet> {
        let (first, second, value) = if t < self.horizon {
            argmax_pair(view.stage(t), view.stage(t + 1), self.bonus, self.cap)?
        } else {
            let (best, profit) = argmax_profit(view.stage(t), self.cap)?;
            (best, ObjectSet::empty(self.n), profit)
        };

        let choice = if t == 1 || self.confirmed_last_step {
            // Fresh sequence: commit to the first half of the new pair.
            self.confirmed_last_step = false;
            first
        } else {
            let prev_value = self
                .prev_value
                .as_ref()
                .ok_or_else(|| Error::Internal("pair value missing before step".into()))?;
            if value > S::from_int(2) * prev_value.clone() {
                // The new pair is worth abandoning the old plan for.
                first
            } else {
                let planned = self
                    .prev_second
                    .clone()
                    .ok_or_else(|| Error::Internal("planned second set missing".into()))?;
                self.confirmed_last_step = true;
                planned
            }
        };
        self.prev_second = Some(second);
        self.prev_value = Some(value);
        Ok(choice)
    }
}
