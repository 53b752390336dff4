//! Adaptive lower-bound instance generators.
//!
//! Each adversary is a pure function from the policy's visible choice
//! history to the next stage, so replaying a game reproduces the stage
//! stream bit for bit and a depth-first walk can enumerate every
//! deterministic policy on small parameterizations. An adversary declares
//! its commitment delay: stage `t` depends only on choices up to
//! `t - 1 - delay`, which is exactly what makes it sound against policies
//! with `delay` steps of lookahead.

mod constants;
mod general;
mod static_family;

pub use constants::{phase_constants_1696, row_schedule, PhaseConstants, RowSchedule};
pub use general::{CapacitySqueeze, DoublingRows, ForbiddenRepeat, SingleItemPhases};
pub use static_family::{AlternatingPhases, TwoStepSplit, VanishingSingles};

use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::{Evolution, MultistageInstance, StageInstance};
use crate::offline::offline_optimum;
use crate::scalar::Scalar;
use crate::set::ObjectSet;
use crate::value::{sequence_value, SolutionSequence};

/// A stateless adaptive instance: stages derive from the observed prefix.
pub trait AdaptiveInstance<S: Scalar> {
    fn kind_name(&self) -> &'static str;
    fn n(&self) -> u32;
    fn horizon(&self) -> usize;
    fn bonus(&self) -> BonusModel;
    fn evolution(&self) -> Evolution;

    /// How many steps ahead of the policy's decisions the stages commit.
    /// A policy may use lookahead up to this value.
    fn commitment_delay(&self) -> usize;

    /// Stage at time `t` (1-based) given the choices the construction is
    /// allowed to react to: exactly those at times `1..=t-1-delay`.
    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>>;

    /// Human-readable statement of the bound this construction forces.
    fn target_description(&self) -> String;

    /// Exact target ratio where one exists; `None` means unbounded.
    fn target_ratio(&self) -> Option<S>;
}

/// How far back an adversary may look when emitting stage `t`.
pub fn committed_prefix_len(t: usize, delay: usize) -> usize {
    t.saturating_sub(1).saturating_sub(delay)
}

/// Rebuilds the full realized instance for a completed choice sequence.
pub fn realize<S: Scalar>(
    adv: &dyn AdaptiveInstance<S>,
    choices: &[ObjectSet],
) -> Result<MultistageInstance<S>> {
    let horizon = adv.horizon();
    if choices.len() != horizon {
        return Err(Error::Protocol(format!(
            "{} choices against a horizon of {horizon}",
            choices.len()
        )));
    }
    let delay = adv.commitment_delay();
    let mut stages = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let seen = &choices[..committed_prefix_len(t, delay).min(choices.len())];
        stages.push(adv.stage_at(t, seen)?);
    }
    MultistageInstance::new(adv.n(), adv.bonus(), adv.evolution(), stages)
}

/// Exact competitive ratio of one finished game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompetitiveRatio<S: Scalar> {
    Finite(S),
    /// Optimum positive, policy value zero.
    Unbounded,
}

impl<S: Scalar> CompetitiveRatio<S> {
    pub fn of(optimum: &S, value: &S) -> Self {
        if value > &S::zero() {
            CompetitiveRatio::Finite(optimum.clone() / value.clone())
        } else if optimum > &S::zero() {
            CompetitiveRatio::Unbounded
        } else {
            // 0/0: the policy matched a worthless optimum.
            CompetitiveRatio::Finite(S::one())
        }
    }

    pub fn at_least(&self, bound: &S) -> bool {
        match self {
            CompetitiveRatio::Finite(r) => r >= bound,
            CompetitiveRatio::Unbounded => true,
        }
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            CompetitiveRatio::Finite(r) => Some(r),
            CompetitiveRatio::Unbounded => None,
        }
    }

    pub fn display_string(&self) -> String {
        match self {
            CompetitiveRatio::Finite(r) => crate::scalar::scalar_string(r),
            CompetitiveRatio::Unbounded => "unbounded".into(),
        }
    }
}

/// Scores a finished sequence against the stages this adversary would have
/// produced for it: exact optimum over the realized instance divided by the
/// sequence value.
pub fn certified_ratio<S: Scalar>(
    adv: &dyn AdaptiveInstance<S>,
    seq: &SolutionSequence,
    cap: usize,
) -> Result<(CompetitiveRatio<S>, S, S)> {
    let realized = realize(adv, seq.steps())?;
    let value = sequence_value(&realized, seq)?.total;
    let optimum = offline_optimum(&realized, cap)?.optimum_value;
    Ok((CompetitiveRatio::of(&optimum, &value), optimum, value))
}

/// One leaf of the deterministic game tree.
pub struct PlayedGame<S: Scalar> {
    pub choices: SolutionSequence,
    pub value: S,
    pub optimum: S,
    pub ratio: CompetitiveRatio<S>,
}

/// Walks every feasible deterministic play against the adversary. Usable
/// only on tiny parameterizations; errors out once `max_games` leaves have
/// been collected.
pub fn enumerate_deterministic_games<S: Scalar>(
    adv: &dyn AdaptiveInstance<S>,
    cap: usize,
    max_games: usize,
) -> Result<Vec<PlayedGame<S>>> {
    let horizon = adv.horizon();
    let delay = adv.commitment_delay();
    let mut games = Vec::new();
    let mut history: Vec<ObjectSet> = Vec::new();
    fn walk<S: Scalar>(
        adv: &dyn AdaptiveInstance<S>,
        horizon: usize,
        delay: usize,
        cap: usize,
        max_games: usize,
        history: &mut Vec<ObjectSet>,
        games: &mut Vec<PlayedGame<S>>,
    ) -> Result<()> {
        let t = history.len() + 1;
        if t > horizon {
            if games.len() >= max_games {
                return Err(Error::Capacity(format!(
                    "game tree exceeds {max_games} deterministic plays"
                )));
            }
            let seq = SolutionSequence::new(history.clone())?;
            let (ratio, optimum, value) = certified_ratio(adv, &seq, cap)?;
            games.push(PlayedGame { choices: seq, value, optimum, ratio });
            return Ok(());
        }
        let seen = &history[..committed_prefix_len(t, delay).min(history.len())];
        let stage = adv.stage_at(t, seen)?;
        for choice in stage.family.enumerate(cap)? {
            history.push(choice);
            walk(adv, horizon, delay, cap, max_games, history, games)?;
            history.pop();
        }
        Ok(())
    }
    walk(adv, horizon, delay, cap, max_games, &mut history, &mut games)?;
    Ok(games)
}

/// Parameter block for building adversaries by name (CLI and sweeps).
#[derive(Debug, Clone)]
pub struct AdversarySpec {
    pub kind: AdversaryKind,
    /// Epsilon (or epsilon-prime) as an exact fraction.
    pub epsilon: Option<(i64, i64)>,
    /// Alpha override for the knapsack game.
    pub alpha: Option<(i64, i64)>,
    pub n: Option<u32>,
    pub horizon: Option<usize>,
    /// Denominator bound for derived irrational constants.
    pub denom_bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryKind {
    StaticHammingTwoStep,
    StaticHammingPhases,
    StaticIntersectionSingles,
    GeHammingKnapsack,
    GeHammingPhases,
    GeIntersectionNoLookahead,
    GeIntersectionLookahead,
}

impl AdversaryKind {
    pub const ALL: [AdversaryKind; 7] = [
        AdversaryKind::StaticHammingTwoStep,
        AdversaryKind::StaticHammingPhases,
        AdversaryKind::StaticIntersectionSingles,
        AdversaryKind::GeHammingKnapsack,
        AdversaryKind::GeHammingPhases,
        AdversaryKind::GeIntersectionNoLookahead,
        AdversaryKind::GeIntersectionLookahead,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AdversaryKind::StaticHammingTwoStep => "static-hamming",
            AdversaryKind::StaticHammingPhases => "static-hamming-phases",
            AdversaryKind::StaticIntersectionSingles => "static-intersection",
            AdversaryKind::GeHammingKnapsack => "ge-hamming-knapsack",
            AdversaryKind::GeHammingPhases => "ge-hamming-phases",
            AdversaryKind::GeIntersectionNoLookahead => "ge-intersection",
            AdversaryKind::GeIntersectionLookahead => "ge-intersection-lookahead",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let canon = name.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL.into_iter().find(|k| k.name() == canon)
    }
}

impl AdversarySpec {
    pub fn new(kind: AdversaryKind) -> Self {
        AdversarySpec {
            kind,
            epsilon: None,
            alpha: None,
            n: None,
            horizon: None,
            denom_bound: 1_000_000,
        }
    }

    fn epsilon_or(&self, default: (i64, i64)) -> (i64, i64) {
        self.epsilon.unwrap_or(default)
    }

    pub fn build<S: Scalar>(&self) -> Result<Box<dyn AdaptiveInstance<S>>> {
        let frac = |(num, den): (i64, i64)| -> Result<S> {
            if den <= 0 || num < 0 {
                return Err(Error::Argument(format!("bad fraction {num}/{den}")));
            }
            Ok(S::from_frac(num, den))
        };
        Ok(match self.kind {
            AdversaryKind::StaticHammingTwoStep => {
                Box::new(TwoStepSplit::new(frac(self.epsilon_or((1, 2)))?)?)
            }
            AdversaryKind::StaticHammingPhases => {
                Box::new(AlternatingPhases::new(self.horizon.unwrap_or(50))?)
            }
            AdversaryKind::StaticIntersectionSingles => match self.horizon {
                Some(t) => Box::new(VanishingSingles::<S>::with_horizon(t)?),
                None => Box::new(VanishingSingles::new(frac(self.epsilon_or((1, 4)))?)?),
            },
            AdversaryKind::GeHammingKnapsack => {
                let alpha = frac(self.alpha.unwrap_or((169, 408)))?;
                Box::new(CapacitySqueeze::new(self.n.unwrap_or(2), alpha)?)
            }
            AdversaryKind::GeHammingPhases => Box::new(SingleItemPhases::new(
                self.horizon.unwrap_or(50),
                self.denom_bound,
            )?),
            AdversaryKind::GeIntersectionNoLookahead => {
                Box::new(ForbiddenRepeat::new(self.horizon.unwrap_or(2))?)
            }
            AdversaryKind::GeIntersectionLookahead => {
                let (num, den) = self.epsilon_or((1, 1));
                Box::new(DoublingRows::new(num, den)?)
            }
        })
    }
}
