//! The sequence value function: per-step profits plus transition bonuses.

use crate::error::{Error, Result};
use crate::family::MultistageInstance;
use crate::scalar::Scalar;
use crate::set::ObjectSet;

/// One feasible solution per time step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSequence {
    steps: Vec<ObjectSet>,
}

impl SolutionSequence {
    pub fn new(steps: Vec<ObjectSet>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Argument("solution sequence must not be empty".into()));
        }
        let n = steps[0].n();
        if steps.iter().any(|s| s.n() != n) {
            return Err(Error::Argument("all steps must share one ground set".into()));
        }
        Ok(SolutionSequence { steps })
    }

    pub fn horizon(&self) -> usize {
        self.steps.len()
    }

    pub fn step(&self, t: usize) -> &ObjectSet {
        &self.steps[t - 1]
    }

    pub fn steps(&self) -> &[ObjectSet] {
        &self.steps
    }
}

/// Total value along with its decomposition into profits and bonuses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueBreakdown<S: Scalar> {
    pub total: S,
    pub profits: Vec<S>,
    pub bonuses: Vec<S>,
}

impl<S: Scalar> ValueBreakdown<S> {
    pub fn profit_total(&self) -> S {
        self.profits.iter().fold(S::zero(), |acc, p| acc + p.clone())
    }

    pub fn bonus_total(&self) -> S {
        self.bonuses.iter().fold(S::zero(), |acc, b| acc + b.clone())
    }
}

/// Scores a sequence against an instance. Every step must be feasible in
/// its stage; the first violation is reported with its 1-based step index.
pub fn sequence_value<S: Scalar>(
    inst: &MultistageInstance<S>,
    seq: &SolutionSequence,
) -> Result<ValueBreakdown<S>> {
    let horizon = inst.horizon();
    if seq.horizon() != horizon {
        return Err(Error::Argument(format!(
            "sequence has {} steps, instance horizon is {horizon}",
            seq.horizon()
        )));
    }
    let mut profits = Vec::with_capacity(horizon);
    let mut bonuses = Vec::with_capacity(horizon.saturating_sub(1));
    for t in 1..=horizon {
        let chosen = seq.step(t);
        if chosen.n() != inst.n {
            return Err(Error::Argument(format!(
                "step {t} set has n={}, instance has n={}",
                chosen.n(),
                inst.n
            )));
        }
        let stage = inst.stage(t);
        if !stage.family.contains(chosen) {
            return Err(Error::Infeasible {
                step: t,
                detail: format!("{chosen} is not in the feasible family"),
            });
        }
        profits.push(stage.profit.eval(chosen));
        if t > 1 {
            bonuses.push(inst.bonus.eval(seq.step(t - 1), chosen)?);
        }
    }
    let total = profits
        .iter()
        .chain(bonuses.iter())
        .fold(S::zero(), |acc, v| acc + v.clone());
    Ok(ValueBreakdown { total, profits, bonuses })
}
