//! Adaptive generators over a fixed feasible family (only profits react).

use super::AdaptiveInstance;
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::{Evolution, FamilyKind, FeasibleFamily, ProfitFunction, StageInstance};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

/// Smallest integer `m >= 1` with `m * eps >= 1`.
pub(super) fn ceil_reciprocal<S: Scalar>(eps: &S) -> Result<u32> {
    if eps <= &S::zero() {
        return Err(Error::Argument("epsilon must be positive".into()));
    }
    let mut m: u32 = 1;
    while S::from_int(m as i64) * eps.clone() < S::one() {
        m += 1;
        if m > 1 << 20 {
            return Err(Error::Capacity("epsilon too small; ground set would be huge".into()));
        }
    }
    Ok(m)
}

/// Two-step game over the family `{∅, {1}, {2..n}}` with the Hamming
/// bonus: zero first-step profits, then one of three profit responses to
/// the observed first choice. Forces a ratio of at least `2 - 1/n`.
pub struct TwoStepSplit<S: Scalar> {
    n: u32,
    epsilon: S,
}

impl<S: Scalar> TwoStepSplit<S> {
    pub fn new(epsilon: S) -> Result<Self> {
        let n = 1 + ceil_reciprocal(&epsilon)?;
        Ok(TwoStepSplit { n, epsilon })
    }

    fn family(&self) -> Result<FeasibleFamily<S>> {
        let n = self.n;
        FeasibleFamily::new(
            n,
            FamilyKind::Explicit(vec![
                ObjectSet::empty(n),
                ObjectSet::from_members(n, [1])?,
                ObjectSet::from_members(n, 2..=n)?,
            ]),
        )
    }
}

impl<S: Scalar> AdaptiveInstance<S> for TwoStepSplit<S> {
    fn kind_name(&self) -> &'static str {
        "static-hamming"
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
        Evolution::Ssfs
    }

    fn commitment_delay(&self) -> usize {
        0
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        let n = self.n;
        let family = self.family()?;
        let profit = match t {
            1 => ProfitFunction::zero(n),
            2 => {
                let first = seen
                    .first()
                    .ok_or_else(|| Error::Protocol("second stage needs the first choice".into()))?;
                let singleton = ObjectSet::from_members(n, [1])?;
                let rest = ObjectSet::from_members(n, 2..=n)?;
                let weights = if first.is_empty() {
                    vec![S::one(); n as usize]
                } else if *first == singleton {
                    let mut w = vec![S::one(); n as usize];
                    w[0] = S::zero();
                    w
                } else if *first == rest {
                    let mut w = vec![S::zero(); n as usize];
                    w[0] = S::from_int(n as i64);
                    w
                } else {
                    return Err(Error::Protocol(format!(
                        "first choice {first} was never feasible"
                    )));
                };
                ProfitFunction::linear(n, weights)?
            }
            _ => return Err(Error::Protocol(format!("stage {t} beyond the 2-step horizon"))),
        };
        StageInstance::new(family, profit)
    }

    fn target_description(&self) -> String {
        format!("2 - 1/n = {}/{} at epsilon {}", 2 * self.n - 1, self.n, self.epsilon)
    }

    fn target_ratio(&self) -> Option<S> {
        Some(S::from_frac(2 * self.n as i64 - 1, self.n as i64))
    }
}

/// Phase game over two objects, only one of which may be held at a time.
/// Alternates temptation profits (3 against a held value of 1) with
/// punishment profits (0 on the last pick) to force switches; the per-phase
/// ratio approaches 3/2 over long horizons.
pub struct AlternatingPhases {
    horizon: usize,
}

#[derive(Clone, Copy)]
enum PhaseState {
    /// Waiting for the policy to hold the profitable item (2).
    Warmup,
    /// A phase starts now; argument is the item held coming in.
    PhaseStart(u32),
    /// Punishing the phase-start pick; argument is the punished item.
    Chase(u32),
}

fn other(item: u32) -> u32 {
    3 - item
}

impl AlternatingPhases {
    pub fn new(horizon: usize) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::Argument("phase game needs at least 2 steps".into()));
        }
        Ok(AlternatingPhases { horizon })
    }

    fn replay(&self, seen: &[ObjectSet]) -> Result<PhaseState> {
        let mut state = PhaseState::Warmup;
        let one = ObjectSet::from_members(2, [1])?;
        let two = ObjectSet::from_members(2, [2])?;
        let held_item = |set: &ObjectSet| -> Option<u32> {
            if *set == one {
                Some(1)
            } else if *set == two {
                Some(2)
            } else {
                None
            }
        };
        for choice in seen {
            state = match state {
                PhaseState::Warmup => {
                    if held_item(choice) == Some(2) {
                        PhaseState::PhaseStart(2)
                    } else {
                        PhaseState::Warmup
                    }
                }
                PhaseState::PhaseStart(held) => {
                    // An empty pick counts as staying: the punishment still
                    // lands on the held item.
                    let picked = held_item(choice).unwrap_or(held);
                    PhaseState::Chase(picked)
                }
                PhaseState::Chase(punished) => {
                    if held_item(choice) == Some(other(punished)) {
                        PhaseState::PhaseStart(other(punished))
                    } else {
                        PhaseState::Chase(punished)
                    }
                }
            };
        }
        Ok(state)
    }
}

impl<S: Scalar> AdaptiveInstance<S> for AlternatingPhases {
    fn kind_name(&self) -> &'static str {
        "static-hamming-phases"
    }

    fn n(&self) -> u32 {
        2
    }

    fn horizon(&self) -> usize {
        self.horizon
    }

    fn bonus(&self) -> BonusModel {
        BonusModel::Hamming
    }

    fn evolution(&self) -> Evolution {
        Evolution::Ssfs
    }

    fn commitment_delay(&self) -> usize {
        0
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        if t > self.horizon {
            return Err(Error::Protocol(format!("stage {t} beyond horizon {}", self.horizon)));
        }
        if seen.len() + 1 != t {
            return Err(Error::Protocol(format!(
                "stage {t} needs exactly {} prior choices, got {}",
                t - 1,
                seen.len()
            )));
        }
        let family = FeasibleFamily::new(
            2,
            FamilyKind::Explicit(vec![
                ObjectSet::empty(2),
                ObjectSet::from_members(2, [1])?,
                ObjectSet::from_members(2, [2])?,
            ]),
        )?;
        let (w1, w2) = match self.replay(seen)? {
            PhaseState::Warmup => (S::zero(), S::one()),
            PhaseState::PhaseStart(held) => {
                if held == 2 {
                    (S::from_int(3), S::one())
                } else {
                    (S::one(), S::from_int(3))
                }
            }
            PhaseState::Chase(punished) => {
                if punished == 1 {
                    (S::zero(), S::one())
                } else {
                    (S::one(), S::zero())
                }
            }
        };
        StageInstance::new(family, ProfitFunction::linear(2, vec![w1, w2])?)
    }

    fn target_description(&self) -> String {
        "3/2 asymptotically".into()
    }

    fn target_ratio(&self) -> Option<S> {
        Some(S::from_frac(3, 2))
    }
}

/// Singleton-solution game with the intersection bonus: every object the
/// policy ever takes loses all future profit, so value accrues at most 1
/// per step while some untouched object supports `2T - 1` offline.
pub struct VanishingSingles<S: Scalar> {
    n: u32,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> VanishingSingles<S> {
    pub fn new(epsilon: S) -> Result<Self> {
        let n = ceil_reciprocal(&epsilon)?;
        Self::with_horizon(n as usize)
    }

    /// Direct construction with `T = n = horizon`.
    pub fn with_horizon(horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::Argument("horizon must be positive".into()));
        }
        if horizon > 1 << 16 {
            return Err(Error::Capacity("horizon too large for the singles game".into()));
        }
        Ok(VanishingSingles { n: horizon as u32, _marker: std::marker::PhantomData })
    }
}

impl<S: Scalar> AdaptiveInstance<S> for VanishingSingles<S> {
    fn kind_name(&self) -> &'static str {
        "static-intersection"
    }

    fn n(&self) -> u32 {
        self.n
    }

    fn horizon(&self) -> usize {
        self.n as usize
    }

    fn bonus(&self) -> BonusModel {
        BonusModel::Intersection
    }

    fn evolution(&self) -> Evolution {
        Evolution::Ssfs
    }

    fn commitment_delay(&self) -> usize {
        0
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        if t > self.n as usize {
            return Err(Error::Protocol(format!("stage {t} beyond horizon {}", self.n)));
        }
        let family = FeasibleFamily::new(self.n, FamilyKind::CardinalityAtMost(1))?;
        let mut weights = vec![S::one(); self.n as usize];
        for choice in seen {
            for i in choice.iter() {
                weights[(i - 1) as usize] = S::zero();
            }
        }
        StageInstance::new(family, ProfitFunction::linear(self.n, weights)?)
    }

    fn target_description(&self) -> String {
        format!("2 - 1/T = {}/{}", 2 * self.n - 1, self.n)
    }

    fn target_ratio(&self) -> Option<S> {
        Some(S::from_frac(2 * self.n as i64 - 1, self.n as i64))
    }
}
