//! Keep-or-best greedy for a static family with the Hamming bonus.
//!
//! At each step compare the best available profit against the maximum
//! possible transition bonus `n`: take the per-step optimum when its profit
//! strictly exceeds `n`, otherwise keep the previously held set (feasible
//! whenever the family is static).

use super::{GameSetup, ModelRequirements, OnlinePolicy, StageWindow};
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::Evolution;
use crate::oracle::argmax_profit;
use crate::scalar::Scalar;
use crate::set::ObjectSet;

pub struct GreedyKeepOrBest<S: Scalar> {
    threshold: S,
    cap: usize,
    held: Option<ObjectSet>,
}

impl<S: Scalar> GreedyKeepOrBest<S> {
    pub fn new(setup: &GameSetup) -> Result<Self> {
        Ok(GreedyKeepOrBest {
            threshold: S::from_int(setup.n as i64),
            cap: setup.cap,
            held: None,
        })
    }
}

impl<S: Scalar> OnlinePolicy<S> for GreedyKeepOrBest<S> {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn lookahead(&self) -> usize {
        0
    }

    fn requirements(&self) -> ModelRequirements {
        ModelRequirements { evolution: Some(Evolution::Ssfs), bonus: Some(BonusModel::Hamming) }
    }

    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet> {
        let stage = view.stage(t);
        let (best, profit) = argmax_profit(stage, self.cap)?;
        let choice = match &self.held {
            None => best,
            // Strict comparison: a profit equal to n is not worth a switch.
            Some(prev) => {
                if profit > self.threshold {
                    best
                } else {
                    if !stage.family.contains(prev) {
                        return Err(Error::ModelMisuse(format!(
                            "previously held set {prev} became infeasible at step {t}; \
                             this policy assumes a static family"
                        )));
                    }
                    prev.clone()
                }
            }
        };
        self.held = Some(choice.clone());
        Ok(choice)
    }
}
