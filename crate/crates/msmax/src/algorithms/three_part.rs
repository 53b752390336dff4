//! Partition policy for downward-closed families with submodular profits,
//! general evolution, Hamming bonus.
//!
//! The ground set is split into three fixed thirds A, B, C (padded with
//! dummy objects that are never feasible when 3 does not divide n). Very
//! profitable steps take the plain optimum; otherwise the policy solves the
//! three restricted subproblems and weighs their profits against the bonus
//! guaranteed by staying inside (or moving between) thirds. Both structural
//! assumptions are verified on every arriving stage.

use super::{GameSetup, ModelRequirements, OnlinePolicy, StageWindow};
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::StageInstance;
use crate::oracle::{argmax, argmax_profit, AugmentedQuery};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

#[derive(Clone, Copy, PartialEq)]
enum Case {
    TookOptimum,
    StayedInPart,
}

pub struct ThreePart<S: Scalar> {
    padded_n: u32,
    threshold: S, // x * padded_n
    third: S,     // padded_n / 3
    cap: usize,
    parts: [ObjectSet; 3],
    prev: Option<(Case, Option<usize>)>,
}

pub(crate) fn validate_stage<S: Scalar>(
    stage: &StageInstance<S>,
    t: usize,
    cap: usize,
) -> Result<()> {
    if !stage.family.is_subset_feasible(cap)? {
        return Err(Error::AssumptionViolation(format!(
            "stage {t}: family is not downward closed"
        )));
    }
    if let Some((a, b)) = stage.profit.submodularity_witness()? {
        return Err(Error::AssumptionViolation(format!(
            "stage {t}: profit is not submodular, witness p({a}) + p({b})"
        )));
    }
    Ok(())
}

impl<S: Scalar> ThreePart<S> {
    pub fn new(setup: &GameSetup, x: S) -> Result<Self> {
        let n = setup.n;
        if n == 0 {
            return Err(Error::Argument("partition policy needs a nonempty ground set".into()));
        }
        // One or two dummy objects make the padded size a multiple of 3;
        // they are infeasible everywhere, so decisions see them only in the
        // partition geometry and in the thresholds.
        let padded_n = n.div_ceil(3) * 3;
        let third_size = padded_n / 3;
        let mut parts = Vec::new();
        for part in 0..3 {
            let lo = part * third_size + 1;
            let hi = ((part + 1) * third_size).min(n);
            let members = (lo..=hi).filter(|&i| i <= n);
            parts.push(ObjectSet::from_members(n, members)?);
        }
        Ok(ThreePart {
            padded_n,
            threshold: x * S::from_int(padded_n as i64),
            third: S::from_frac(padded_n as i64, 3),
            cap: setup.cap,
            parts: [parts[0].clone(), parts[1].clone(), parts[2].clone()],
            prev: None,
        })
    }

    /// Ground-set size after dummy padding; a multiple of 3.
    pub fn padded_ground_size(&self) -> u32 {
        self.padded_n
    }

    fn restricted_best(
        &self,
        stage: &StageInstance<S>,
        part: usize,
    ) -> Result<(ObjectSet, S)> {
        let query = AugmentedQuery::plain(stage).restricted(self.parts[part].clone())?;
        argmax(&query, self.cap)
    }
}

impl<S: Scalar> OnlinePolicy<S> for ThreePart<S> {
    fn name(&self) -> &'static str {
        "three-part"
    }

    fn lookahead(&self) -> usize {
        0
    }

    fn requirements(&self) -> ModelRequirements {
        ModelRequirements { evolution: None, bonus: Some(BonusModel::Hamming) }
    }

    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet> {
        let stage = view.stage(t);
        validate_stage(stage, t, self.cap)?;
        let (best, profit) = argmax_profit(stage, self.cap)?;
        if profit >= self.threshold {
            self.prev = Some((Case::TookOptimum, None));
            return Ok(best);
        }

        let restricted: Vec<(ObjectSet, S)> = (0..3)
            .map(|p| self.restricted_best(stage, p))
            .collect::<Result<_>>()?;

        let comeback = match self.prev {
            Some((Case::StayedInPart, Some(prev_part))) if t >= 2 => Some(prev_part),
            _ => None,
        };
        let winner = match comeback {
            // Weigh restricted profits against the bonus floor: staying in
            // the previous third keeps at least 2/3 of the padded agreement,
            // moving keeps at least 1/3. First maximum wins ties (A, B, C).
            Some(prev_part) => {
                let mut best_idx = 0;
                let mut best_score: Option<S> = None;
                for (idx, (_, p)) in restricted.iter().enumerate() {
                    let floor = if idx == prev_part {
                        self.third.clone() + self.third.clone()
                    } else {
                        self.third.clone()
                    };
                    let score = p.clone() + floor;
                    if best_score.as_ref().map_or(true, |b| &score > b) {
                        best_score = Some(score);
                        best_idx = idx;
                    }
                }
                best_idx
            }
            // Fresh start: pick the third with the best restricted profit.
            None => {
                let mut best_idx = 0;
                for (idx, (_, p)) in restricted.iter().enumerate().skip(1) {
                    if p > &restricted[best_idx].1 {
                        best_idx = idx;
                    }
                }
                best_idx
            }
        };
        self.prev = Some((Case::StayedInPart, Some(winner)));
        Ok(restricted[winner].0.clone())
    }
}

pub(crate) use validate_stage as validate_partition_assumptions;
