//! Adaptive generators that reshape the feasible family itself.

use num_traits::ToPrimitive;

use super::constants::{phase_constants_1696, row_schedule, PhaseConstants, RowSchedule};
use super::AdaptiveInstance;
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::{Evolution, FamilyKind, FeasibleFamily, ProfitFunction, StageInstance};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

/// Two-step knapsack game with the Hamming bonus. Step one offers every
/// object at profit `alpha` (a rational stand-in for sqrt(2) - 1); step two
/// prices the taken objects out of the shrunken knapsack and pays 1 for
/// each untaken object. Exact forced ratio `min(2 + alpha, 1/alpha)`,
/// approaching `1 + sqrt(2)` as alpha does its target.
pub struct CapacitySqueeze<S: Scalar> {
    n: u32,
    alpha: S,
}

impl<S: Scalar> CapacitySqueeze<S> {
    pub fn new(n: u32, alpha: S) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("ground set must be nonempty".into()));
        }
        if alpha <= S::zero() || alpha >= S::one() {
            return Err(Error::Argument("alpha must lie strictly between 0 and 1".into()));
        }
        Ok(CapacitySqueeze { n, alpha })
    }
}

impl<S: Scalar> AdaptiveInstance<S> for CapacitySqueeze<S> {
    fn kind_name(&self) -> &'static str {
        "ge-hamming-knapsack"
    }

    fn n(&self) -> u32 {
        self.n
    }

    fn horizon(&self) -> usize {
        2
    }

    fn bonus(&self) -> BonusModel {
        BonusModel::Hamming
    }

    fn evolution(&self) -> Evolution {
        Evolution::Ge
    }

    fn commitment_delay(&self) -> usize {
        0
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        let n = self.n;
        match t {
            1 => {
                let family = FeasibleFamily::new(
                    n,
                    FamilyKind::Knapsack {
                        weights: vec![S::one(); n as usize],
                        capacity: S::from_int(n as i64),
                    },
                )?;
                let profit = ProfitFunction::linear(n, vec![self.alpha.clone(); n as usize])?;
                StageInstance::new(family, profit)
            }
            2 => {
                let first = seen
                    .first()
                    .ok_or_else(|| Error::Protocol("second stage needs the first choice".into()))?;
                let capacity = S::from_int((n as i64) - first.len() as i64);
                // Weight n+1 exceeds any remaining capacity, pricing the
                // taken objects out entirely.
                let mut weights = vec![S::one(); n as usize];
                let mut profits = vec![S::one(); n as usize];
                for i in first.iter() {
                    weights[(i - 1) as usize] = S::from_int(n as i64 + 1);
                    profits[(i - 1) as usize] = S::zero();
                }
                let family = FeasibleFamily::new(n, FamilyKind::Knapsack { weights, capacity })?;
                StageInstance::new(family, ProfitFunction::linear(n, profits)?)
            }
            _ => Err(Error::Protocol(format!("stage {t} beyond the 2-step horizon"))),
        }
    }

    fn target_description(&self) -> String {
        format!("1 + sqrt(2) ~ 2.414214; forced min(2 + a, 1/a) at a = {}", self.alpha)
    }

    fn target_ratio(&self) -> Option<S> {
        let stay = S::from_int(2) + self.alpha.clone();
        let leave = S::one() / self.alpha.clone();
        Some(stay.min(leave))
    }
}

/// Single-item phase game with the Hamming bonus under general evolution.
/// Picking the item makes it infeasible for one step and ends the phase;
/// profits are `beta` at phase starts and `gamma` elsewhere, tuned so that
/// every phase length forces the same ratio `alpha = 2/beta ~ 1.696`.
pub struct SingleItemPhases<S: Scalar> {
    horizon: usize,
    constants: PhaseConstants<S>,
}

#[derive(Clone, Copy, PartialEq)]
enum ItemState {
    Blocked,
    PhaseStart,
    MidPhase,
}

impl<S: Scalar> SingleItemPhases<S> {
    pub fn new(horizon: usize, denom_bound: u64) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::Argument("phase game needs at least 2 steps".into()));
        }
        Ok(SingleItemPhases { horizon, constants: phase_constants_1696(denom_bound)? })
    }

    pub fn constants(&self) -> &PhaseConstants<S> {
        &self.constants
    }

    fn state_at(&self, t: usize, seen: &[ObjectSet]) -> ItemState {
        // Stage 1 is blocked; the first phase starts at stage 2. After a
        // pick the item is blocked for one step, then a new phase starts.
        let mut state = ItemState::Blocked;
        for (idx, choice) in seen.iter().enumerate() {
            let stage_no = idx + 1;
            let next = match state {
                ItemState::Blocked => ItemState::PhaseStart,
                ItemState::PhaseStart | ItemState::MidPhase => {
                    if choice.contains(1) {
                        ItemState::Blocked
                    } else {
                        ItemState::MidPhase
                    }
                }
            };
            let _ = stage_no;
            state = next;
        }
        debug_assert_eq!(seen.len() + 1, t);
        state
    }
}

impl<S: Scalar> AdaptiveInstance<S> for SingleItemPhases<S> {
    fn kind_name(&self) -> &'static str {
        "ge-hamming-phases"
    }

    fn n(&self) -> u32 {
        1
    }

    fn horizon(&self) -> usize {
        self.horizon
    }

    fn bonus(&self) -> BonusModel {
        BonusModel::Hamming
    }

    fn evolution(&self) -> Evolution {
        Evolution::Ge
    }

    fn commitment_delay(&self) -> usize {
        0
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        if t > self.horizon {
            return Err(Error::Protocol(format!("stage {t} beyond horizon {}", self.horizon)));
        }
        let state = self.state_at(t, seen);
        let (family, profit) = match state {
            ItemState::Blocked => (
                FeasibleFamily::new(1, FamilyKind::Explicit(vec![ObjectSet::empty(1)]))?,
                ProfitFunction::zero(1),
            ),
            ItemState::PhaseStart | ItemState::MidPhase => {
                let value = if state == ItemState::PhaseStart {
                    self.constants.beta.clone()
                } else {
                    self.constants.gamma.clone()
                };
                (
                    FeasibleFamily::new(
                        1,
                        FamilyKind::Explicit(vec![
                            ObjectSet::empty(1),
                            ObjectSet::from_members(1, [1])?,
                        ]),
                    )?,
                    ProfitFunction::table(1, [(ObjectSet::from_members(1, [1])?, value)])?,
                )
            }
        };
        StageInstance::new(family, profit)
    }

    fn target_description(&self) -> String {
        format!("~1.696 asymptotically (exact target {})", self.constants.alpha)
    }

    fn target_ratio(&self) -> Option<S> {
        Some(self.constants.alpha.clone())
    }
}

/// The no-lookahead impossibility game with the intersection bonus: two
/// items, one solution slot; whatever the policy holds after step one
/// becomes infeasible, so its bonus is always 0 while the optimum keeps an
/// untouched item for bonus 1. Longer horizons append inert empty stages.
pub struct ForbiddenRepeat {
    horizon: usize,
}

impl ForbiddenRepeat {
    pub fn new(horizon: usize) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::Argument("the impossibility game needs at least 2 steps".into()));
        }
        Ok(ForbiddenRepeat { horizon })
    }
}

impl<S: Scalar> AdaptiveInstance<S> for ForbiddenRepeat {
    fn kind_name(&self) -> &'static str {
        "ge-intersection"
    }

    fn n(&self) -> u32 {
        2
    }

    fn horizon(&self) -> usize {
        self.horizon
    }

    fn bonus(&self) -> BonusModel {
        BonusModel::Intersection
    }

    fn evolution(&self) -> Evolution {
        Evolution::Ge
    }

    fn commitment_delay(&self) -> usize {
        0
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        if t > self.horizon {
            return Err(Error::Protocol(format!("stage {t} beyond horizon {}", self.horizon)));
        }
        let family = match t {
            1 => FeasibleFamily::new(
                2,
                FamilyKind::Explicit(vec![
                    ObjectSet::empty(2),
                    ObjectSet::from_members(2, [1])?,
                    ObjectSet::from_members(2, [2])?,
                ]),
            )?,
            2 => {
                let first = seen
                    .first()
                    .ok_or_else(|| Error::Protocol("second stage needs the first choice".into()))?;
                let mut sets = vec![ObjectSet::empty(2)];
                for j in 1..=2 {
                    if !first.contains(j) {
                        sets.push(ObjectSet::from_members(2, [j])?);
                    }
                }
                FeasibleFamily::new(2, FamilyKind::Explicit(sets))?
            }
            _ => FeasibleFamily::new(2, FamilyKind::Explicit(vec![ObjectSet::empty(2)]))?,
        };
        StageInstance::new(family, ProfitFunction::zero(2))
    }

    fn target_description(&self) -> String {
        "unbounded (no constant is competitive without lookahead)".into()
    }

    fn target_ratio(&self) -> Option<S> {
        None
    }
}

/// The doubling-rows game against 1-lookahead policies. Disjoint object
/// rows grow by almost a factor of 4 minus epsilon in total; confirming a
/// row locks in the previous row size while the offline optimum follows an
/// untouched row the whole way. Every confirmation branch forces exactly
/// `4 - eps` (3 at eps = 1).
pub struct DoublingRows<S: Scalar> {
    schedule: RowSchedule,
    sizes: Vec<u32>,
    max_size: u32,
    eps_num: i64,
    eps_den: i64,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> DoublingRows<S> {
    pub fn new(eps_num: i64, eps_den: i64) -> Result<Self> {
        let schedule = row_schedule(eps_num, eps_den)?;
        let horizon = schedule.horizon();
        let mut sizes = Vec::with_capacity(horizon);
        for v in &schedule.sizes {
            let s = v.to_u32().ok_or_else(|| {
                Error::Capacity("row sizes overflow the supported ground-set range".into())
            })?;
            sizes.push(s);
        }
        let max_size = *sizes.iter().max().expect("nonempty schedule");
        let ground = (horizon as u64) * (max_size as u64);
        if ground > 100_000 {
            return Err(Error::Capacity(format!(
                "epsilon {eps_num}/{eps_den} needs a ground set of {ground} objects; \
                 only the headroom recurrence is supported at this scale"
            )));
        }
        Ok(DoublingRows {
            schedule,
            sizes,
            max_size,
            eps_num,
            eps_den,
            _marker: std::marker::PhantomData,
        })
    }

    pub fn schedule(&self) -> &RowSchedule {
        &self.schedule
    }

    /// The set `R_{row, t}`: the first `a_t` objects of the given row.
    pub fn row_set(&self, row: u32, t: usize) -> Result<ObjectSet> {
        let n = <Self as AdaptiveInstance<S>>::n(self);
        let base = (row - 1) * self.max_size;
        ObjectSet::from_members(n, (1..=self.sizes[t - 1]).map(|j| base + j))
    }

    fn row_of(&self, set: &ObjectSet, t: usize) -> Option<u32> {
        let rows = self.schedule.horizon() as u32;
        (1..=rows).find(|&i| self.row_set(i, t).map_or(false, |r| r == *set))
    }

    /// Cutoff step derived from the visible history: after a confirmation
    /// or an empty pick at step tau, only the empty set is feasible at
    /// steps beyond tau + 1.
    fn cutoff(&self, seen: &[ObjectSet]) -> Option<usize> {
        let mut prev_row: Option<u32> = None;
        for (idx, choice) in seen.iter().enumerate() {
            let tau = idx + 1;
            if choice.is_empty() {
                return Some(tau + 1);
            }
            let row = self.row_of(choice, tau);
            if let (Some(r), Some(p)) = (row, prev_row) {
                if r == p && tau >= 2 {
                    return Some(tau + 1);
                }
            }
            prev_row = row;
        }
        None
    }
}

impl<S: Scalar> AdaptiveInstance<S> for DoublingRows<S> {
    fn kind_name(&self) -> &'static str {
        "ge-intersection-lookahead"
    }

    fn n(&self) -> u32 {
        (self.schedule.horizon() as u32) * self.max_size
    }

    fn horizon(&self) -> usize {
        self.schedule.horizon()
    }

    fn bonus(&self) -> BonusModel {
        BonusModel::Intersection
    }

    fn evolution(&self) -> Evolution {
        Evolution::Ge
    }

    fn commitment_delay(&self) -> usize {
        1
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        let horizon = self.schedule.horizon();
        if t > horizon {
            return Err(Error::Protocol(format!("stage {t} beyond horizon {horizon}")));
        }
        // One step of lookahead: stage t may depend on choices up to t - 2.
        if seen.len() + 2 < t {
            return Err(Error::Protocol(format!(
                "stage {t} needs the first {} choices, got {}",
                t - 2,
                seen.len()
            )));
        }
        let visible = &seen[..(t.saturating_sub(2)).min(seen.len())];
        let n = <Self as AdaptiveInstance<S>>::n(self);
        let mut sets = vec![ObjectSet::empty(n)];
        let closed = self.cutoff(visible).map_or(false, |cut| t > cut);
        if !closed {
            for row in 1..=horizon as u32 {
                // A row stays selectable until the policy has used it at
                // some step tau <= t - 2.
                let used_before = visible.iter().enumerate().any(|(idx, c)| {
                    self.row_of(c, idx + 1) == Some(row)
                });
                if !used_before {
                    sets.push(self.row_set(row, t)?);
                }
            }
        }
        let family = FeasibleFamily::new(n, FamilyKind::Explicit(sets))?;
        StageInstance::new(family, ProfitFunction::zero(n))
    }

    fn target_description(&self) -> String {
        format!(
            "4 - eps = {} with eps = {}/{}",
            self.schedule.growth, self.eps_num, self.eps_den
        )
    }

    fn target_ratio(&self) -> Option<S> {
        Some(S::from_frac(4 * self.eps_den - self.eps_num, self.eps_den))
    }
}
