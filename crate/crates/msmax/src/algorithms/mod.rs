//! Online policies.
//!
//! A policy consumes stages one by one (plus any declared lookahead) and
//! must emit a feasible set for the current step before seeing anything
//! further. The [`StageWindow`] handed to [`OnlinePolicy::decide`] exposes
//! exactly the stages the information model allows; reading beyond the
//! window is an internal assertion failure, so no policy can peek even by
//! accident.

mod balance;
mod best_or_nothing;
mod greedy;
mod modified_profit;
mod randomized;
mod three_part;

pub use balance::Balance;
pub use best_or_nothing::BestOrNothing;
pub use greedy::GreedyKeepOrBest;
pub use modified_profit::MpAlgo;
pub use randomized::{RandPairing, RandPartition};
pub use three_part::ThreePart;

use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::{Evolution, StageInstance};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

/// Fixed facts about the run, known to every policy up front: the ground
/// set, the horizon, the bonus model and the declared evolution type.
#[derive(Debug, Clone)]
pub struct GameSetup {
    pub n: u32,
    pub horizon: usize,
    pub bonus: BonusModel,
    pub evolution: Evolution,
    /// Enumeration cap forwarded to every oracle call.
    pub cap: usize,
}

/// Model tags a policy cares about. The evolution requirement is
/// structural and enforced before a game starts; the bonus tag only states
/// the model the policy's guarantee is proven for — the policy still runs
/// under the other bonus, it just carries no bound there.
#[derive(Debug, Clone, Copy)]
pub struct ModelRequirements {
    pub evolution: Option<Evolution>,
    pub bonus: Option<BonusModel>,
}

impl ModelRequirements {
    pub fn check(&self, setup: &GameSetup, policy: &str) -> Result<()> {
        if let Some(ev) = self.evolution {
            if ev != setup.evolution {
                return Err(Error::ModelMisuse(format!(
                    "{policy} requires {} evolution, instance declares {}",
                    ev.tag(),
                    setup.evolution.tag()
                )));
            }
        }
        Ok(())
    }

    /// True when the declared bonus matches the model the guarantee needs.
    pub fn bound_applies(&self, bonus: BonusModel) -> bool {
        self.bonus.map_or(true, |b| b == bonus)
    }
}

/// The prefix of stages a policy may look at when deciding step `t`:
/// stages `1..=min(t + lookahead, T)`. Indexing beyond that panics.
pub struct StageWindow<'a, S: Scalar> {
    stages: &'a [StageInstance<S>],
    visible: usize,
    horizon: usize,
}

impl<'a, S: Scalar> StageWindow<'a, S> {
    pub fn new(stages: &'a [StageInstance<S>], visible: usize, horizon: usize) -> Self {
        debug_assert!(visible <= stages.len());
        StageWindow { stages, visible, horizon }
    }

    /// Stage at 1-based time `t`. Panics on a peek beyond the window; the
    /// game loop treats that as an internal assertion.
    pub fn stage(&self, t: usize) -> &StageInstance<S> {
        assert!(
            t >= 1 && t <= self.visible,
            "policy peeked at stage {t}, visible prefix is 1..={}",
            self.visible
        );
        &self.stages[t - 1]
    }

    pub fn visible(&self) -> usize {
        self.visible
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

/// An online policy: one decision per step, stateful across the run.
/// Instances are single-use; build a fresh one per game.
pub trait OnlinePolicy<S: Scalar> {
    fn name(&self) -> &'static str;
    fn lookahead(&self) -> usize;
    fn randomized(&self) -> bool {
        false
    }
    fn requirements(&self) -> ModelRequirements;
    fn decide(&mut self, t: usize, view: &StageWindow<'_, S>) -> Result<ObjectSet>;
}

/// Tunables that individual policies read; everything has a default.
#[derive(Debug, Clone)]
pub struct PolicyConfig<S: Scalar> {
    /// Profit threshold multiplier for the partition policy.
    pub part_threshold: S,
    /// Seed for randomized policies.
    pub seed: u64,
    /// Test hook: fix the random half instead of sampling it.
    pub fixed_partition: Option<ObjectSet>,
    /// Test hook: fix the pairing offset instead of flipping the coin.
    pub fixed_pairing_offset: Option<bool>,
}

impl<S: Scalar> Default for PolicyConfig<S> {
    fn default() -> Self {
        PolicyConfig {
            part_threshold: S::from_frac(4, 3),
            seed: 0,
            fixed_partition: None,
            fixed_pairing_offset: None,
        }
    }
}

/// The policy roster, used by the CLI and the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Greedy,
    MpAlgo,
    BestOrNothing,
    ThreePart,
    Balance,
    RandPartition,
    RandPairing,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 7] = [
        PolicyKind::Greedy,
        PolicyKind::MpAlgo,
        PolicyKind::BestOrNothing,
        PolicyKind::ThreePart,
        PolicyKind::Balance,
        PolicyKind::RandPartition,
        PolicyKind::RandPairing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Greedy => "greedy",
            PolicyKind::MpAlgo => "mp-algo",
            PolicyKind::BestOrNothing => "best-or-nothing",
            PolicyKind::ThreePart => "three-part",
            PolicyKind::Balance => "balance",
            PolicyKind::RandPartition => "rand-partition",
            PolicyKind::RandPairing => "rand-pairing",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let canon = name.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL.into_iter().find(|k| k.name() == canon)
    }

    pub fn lookahead(self) -> usize {
        match self {
            PolicyKind::Balance | PolicyKind::RandPairing => 1,
            _ => 0,
        }
    }

    pub fn randomized(self) -> bool {
        matches!(self, PolicyKind::RandPartition | PolicyKind::RandPairing)
    }

    pub fn build<S: Scalar>(
        self,
        setup: &GameSetup,
        config: &PolicyConfig<S>,
    ) -> Result<Box<dyn OnlinePolicy<S>>> {
        Ok(match self {
            PolicyKind::Greedy => Box::new(GreedyKeepOrBest::new(setup)?),
            PolicyKind::MpAlgo => Box::new(MpAlgo::new(setup)?),
            PolicyKind::BestOrNothing => Box::new(BestOrNothing::new(setup)?),
            PolicyKind::ThreePart => {
                Box::new(ThreePart::new(setup, config.part_threshold.clone())?)
            }
            PolicyKind::Balance => Box::new(Balance::new(setup)?),
            PolicyKind::RandPartition => Box::new(RandPartition::new(
                setup,
                config.seed,
                config.fixed_partition.clone(),
            )?),
            PolicyKind::RandPairing => Box::new(RandPairing::new(
                setup,
                config.seed,
                config.fixed_pairing_offset,
            )?),
        })
    }
}
