//! Modified-profit greedy for a static family with the intersection bonus.
//!
//! Each step maximizes a reweighted objective that pays 1 per item kept
//! from the previous solution and 1 per item taken at all, so large
//! solutions stay attractive even when raw profits are tiny. The first and
//! last steps drop the term that has no matching transition.

use super::{GameSetup, ModelRequirements, OnlinePolicy, StageWindow};
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::Evolution;
use crate::oracle::{argmax, AugmentedQuery};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

pub struct MpAlgo<S: Scalar> {
    n: u32,
    horizon: usize,
    cap: usize,
    previous: Option<ObjectSet>,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> MpAlgo<S> {
    pub fn new(setup: &GameSetup) -> Result<Self> {
        if setup.horizon < 2 {
            return Err(Error::DegenerateHorizon(
                "modified-profit greedy needs at least 2 steps; use the plain optimum for T=1"
                    .into(),
            ));
        }
        Ok(MpAlgo {
            n: setup.n,
            horizon: setup.horizon,
            cap: setup.cap,
            previous: None,
            _marker: std::marker::PhantomData,
        })
    }
}

impl<S: Scalar> OnlinePolicy<S> for MpAlgo<S> {
    fn name(&self) -> &'static str {
        "mp-algo"
    }

    fn lookahead(&self) -> usize {
        0
    }

    fn requirements(&self) -> ModelRequirements {
        ModelRequirements {
            evolution: Some(Evolution::Ssfs),
            bonus: Some(BonusModel::Intersection),
        }
    }

    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet> {
        let stage = view.stage(t);
        let last = t == self.horizon;
        let mut weights = vec![if last { S::zero() } else { S::one() }; self.n as usize];
        if let Some(prev) = &self.previous {
            for i in prev.iter() {
                weights[(i - 1) as usize] = weights[(i - 1) as usize].clone() + S::one();
            }
        }
        let query = AugmentedQuery::with_bonus(stage, weights)?;
        let (choice, _) = argmax(&query, self.cap)?;
        self.previous = Some(choice.clone());
        Ok(choice)
    }
}
