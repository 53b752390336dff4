//! The game loop: wiring policies to stage sources under the declared
//! information model, plus reporting and random-instance generation.
//!
//! The loop owns the protocol. Stages are emitted so that stage `t + k`
//! (for a policy with lookahead `k`) is fixed before the policy commits its
//! step-`t` choice, and an adaptive source only ever sees the choice prefix
//! it committed past. Every emitted choice is feasibility-checked; a
//! violation aborts the run rather than scoring zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adversary::{committed_prefix_len, AdaptiveInstance, CompetitiveRatio};
use crate::algorithms::{GameSetup, OnlinePolicy, PolicyConfig, PolicyKind, StageWindow};
use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::{
    Evolution, FamilyKind, FeasibleFamily, MultistageInstance, ProfitFunction, StageInstance,
};
use crate::offline::offline_optimum;
use crate::oracle::argmax_profit;
use crate::scalar::{scalar_string, Scalar};
use crate::set::ObjectSet;
use crate::value::{sequence_value, SolutionSequence, ValueBreakdown};

/// Where stages come from: a fixed instance or an adaptive construction.
pub enum GameSource<S: Scalar> {
    Fixed { instance: MultistageInstance<S>, descriptor: String },
    Adaptive { adversary: Box<dyn AdaptiveInstance<S>>, descriptor: String },
}

impl<S: Scalar> GameSource<S> {
    pub fn fixed(instance: MultistageInstance<S>, descriptor: impl Into<String>) -> Self {
        GameSource::Fixed { instance, descriptor: descriptor.into() }
    }

    pub fn adaptive(adversary: Box<dyn AdaptiveInstance<S>>) -> Self {
        let descriptor = format!("adversary:{}", adversary.kind_name());
        GameSource::Adaptive { adversary, descriptor }
    }

    pub fn n(&self) -> u32 {
        match self {
            GameSource::Fixed { instance, .. } => instance.n,
            GameSource::Adaptive { adversary, .. } => adversary.n(),
        }
    }

    pub fn horizon(&self) -> usize {
        match self {
            GameSource::Fixed { instance, .. } => instance.horizon(),
            GameSource::Adaptive { adversary, .. } => adversary.horizon(),
        }
    }

    pub fn bonus(&self) -> BonusModel {
        match self {
            GameSource::Fixed { instance, .. } => instance.bonus,
            GameSource::Adaptive { adversary, .. } => adversary.bonus(),
        }
    }

    pub fn evolution(&self) -> Evolution {
        match self {
            GameSource::Fixed { instance, .. } => instance.evolution,
            GameSource::Adaptive { adversary, .. } => adversary.evolution(),
        }
    }

    /// Maximum policy lookahead this source can serve.
    pub fn max_lookahead(&self) -> usize {
        match self {
            GameSource::Fixed { .. } => usize::MAX,
            GameSource::Adaptive { adversary, .. } => adversary.commitment_delay(),
        }
    }

    pub fn descriptor(&self) -> &str {
        match self {
            GameSource::Fixed { descriptor, .. } => descriptor,
            GameSource::Adaptive { descriptor, .. } => descriptor,
        }
    }

    fn stage_at(&self, t: usize, seen: &[ObjectSet]) -> Result<StageInstance<S>> {
        match self {
            GameSource::Fixed { instance, .. } => {
                if t > instance.horizon() {
                    return Err(Error::Protocol(format!("stage {t} beyond the horizon")));
                }
                Ok(instance.stage(t).clone())
            }
            GameSource::Adaptive { adversary, .. } => adversary.stage_at(t, seen),
        }
    }
}

/// One line of the per-step trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub t: usize,
    pub chosen: Vec<u32>,
    /// Plain per-step optimum profit, for reading games at a glance.
    pub step_opt_profit: String,
    /// Bonus collected between t-1 and t; "0" at t = 1.
    pub bonus_earned: String,
}

/// Everything a finished run reports, in canonical serializable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameReport {
    pub policy: String,
    pub source: String,
    pub model: String,
    pub n: u32,
    pub horizon: usize,
    pub seed: Option<u64>,
    pub outcome: GameOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameOutcome {
    pub value: String,
    pub profit_total: String,
    pub bonus_total: String,
    pub optimum: String,
    /// Exact rational, or "unbounded" when the policy scored 0 against a
    /// positive optimum.
    pub ratio: String,
    /// Worst-case guarantee for this (policy, model) pair, if one applies.
    pub bound: Option<String>,
    pub within_bound: Option<bool>,
    pub trace: Vec<TraceStep>,
}

/// A finished run with the exact values still attached.
pub struct PlayedRun<S: Scalar> {
    pub report: GameReport,
    pub sequence: SolutionSequence,
    pub realized: MultistageInstance<S>,
    pub breakdown: ValueBreakdown<S>,
    pub optimum: S,
    pub ratio: CompetitiveRatio<S>,
}

/// Runs one game. `seed` is recorded in the report for randomized policies.
pub fn play<S: Scalar>(
    policy: &mut dyn OnlinePolicy<S>,
    source: &GameSource<S>,
    cap: usize,
    seed: Option<u64>,
) -> Result<PlayedRun<S>> {
    let lookahead = policy.lookahead();
    if lookahead > source.max_lookahead() {
        return Err(Error::Protocol(format!(
            "policy {} needs lookahead {lookahead}, source {} only commits {} ahead",
            policy.name(),
            source.descriptor(),
            source.max_lookahead()
        )));
    }
    let horizon = source.horizon();
    let delay = source.max_lookahead();
    let mut stages: Vec<StageInstance<S>> = Vec::new();
    let mut choices: Vec<ObjectSet> = Vec::new();
    for t in 1..=horizon {
        let visible_target = (t + lookahead).min(horizon);
        while stages.len() < visible_target {
            let tau = stages.len() + 1;
            let committed = committed_prefix_len(tau, delay).min(choices.len());
            let stage = source.stage_at(tau, &choices[..committed])?;
            stages.push(stage);
        }
        let window = StageWindow::new(&stages, visible_target, horizon);
        let chosen = policy.decide(t, &window)?;
        if !stages[t - 1].family.contains(&chosen) {
            return Err(Error::Infeasible {
                step: t,
                detail: format!("policy {} emitted {chosen}", policy.name()),
            });
        }
        choices.push(chosen);
    }

    let realized =
        MultistageInstance::new(source.n(), source.bonus(), source.evolution(), stages)?;
    let sequence = SolutionSequence::new(choices)?;
    let breakdown = sequence_value(&realized, &sequence)?;
    let offline = offline_optimum(&realized, cap)?;
    let ratio = CompetitiveRatio::of(&offline.optimum_value, &breakdown.total);

    let mut trace = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let (_, step_opt) = argmax_profit(realized.stage(t), cap)?;
        let bonus_earned =
            if t > 1 { breakdown.bonuses[t - 2].clone() } else { S::zero() };
        trace.push(TraceStep {
            t,
            chosen: sequence.step(t).members(),
            step_opt_profit: scalar_string(&step_opt),
            bonus_earned: scalar_string(&bonus_earned),
        });
    }

    let (bound, within_bound) = match PolicyKind::parse(policy.name()) {
        Some(kind) if policy.requirements().bound_applies(source.bonus()) => {
            guarantee_check(kind, horizon, &breakdown.total, &offline.optimum_value)
        }
        _ => (None, None),
    };

    let report = GameReport {
        policy: policy.name().to_string(),
        source: source.descriptor().to_string(),
        model: format!("{}-{}", source.evolution().tag(), source.bonus().tag()),
        n: source.n(),
        horizon,
        seed: if policy.randomized() { seed } else { None },
        outcome: GameOutcome {
            value: scalar_string(&breakdown.total),
            profit_total: scalar_string(&breakdown.profit_total()),
            bonus_total: scalar_string(&breakdown.bonus_total()),
            optimum: scalar_string(&offline.optimum_value),
            ratio: ratio.display_string(),
            bound,
            within_bound,
            trace,
        },
    };
    Ok(PlayedRun {
        report,
        sequence,
        realized,
        breakdown,
        optimum: offline.optimum_value,
        ratio,
    })
}

/// Builds a policy and plays it in one call.
pub fn play_policy<S: Scalar>(
    kind: PolicyKind,
    source: &GameSource<S>,
    config: &PolicyConfig<S>,
    cap: usize,
) -> Result<PlayedRun<S>> {
    let setup = GameSetup {
        n: source.n(),
        horizon: source.horizon(),
        bonus: source.bonus(),
        evolution: source.evolution(),
        cap,
    };
    let mut policy = kind.build(&setup, config)?;
    policy.requirements().check(&setup, policy.name())?;
    play(policy.as_mut(), source, cap, Some(config.seed))
}

/// Exact worst-case inequality for a deterministic policy on its intended
/// model; `(bound description, holds)`. `None` when no per-run guarantee
/// applies (randomized policies, or horizons outside the stated regime).
pub fn guarantee_check<S: Scalar>(
    kind: PolicyKind,
    horizon: usize,
    value: &S,
    optimum: &S,
) -> (Option<String>, Option<bool>) {
    let t = horizon as i64;
    match kind {
        PolicyKind::Greedy => {
            let holds = S::from_int(2) * value.clone() >= optimum.clone();
            (Some("2".into()), Some(holds))
        }
        PolicyKind::MpAlgo => {
            if t < 4 {
                return (None, None);
            }
            // 2 / (1 - 1/(T-1)) = 2(T-1)/(T-2)
            let holds = S::from_int(2 * (t - 1)) * value.clone()
                >= S::from_int(t - 2) * optimum.clone();
            (Some(format!("{}/{}", 2 * (t - 1), t - 2)), Some(holds))
        }
        PolicyKind::BestOrNothing => {
            if t < 2 {
                return (None, None);
            }
            // 3 + 1/(T-1) = (3T-2)/(T-1)
            let holds = S::from_int(3 * t - 2) * value.clone()
                >= S::from_int(t - 1) * optimum.clone();
            (Some(format!("{}/{}", 3 * t - 2, t - 1)), Some(holds))
        }
        PolicyKind::ThreePart => {
            if t < 2 {
                return (None, None);
            }
            // 21/8 plus the first-step and padding slack.
            let lhs = S::from_frac(21, 8) * value.clone()
                + optimum.clone() / S::from_int(t - 1)
                + S::from_int(2 * (t - 1));
            (Some("21/8+slack".into()), Some(&lhs >= optimum))
        }
        PolicyKind::Balance => {
            let holds = S::from_int(4) * value.clone() >= optimum.clone();
            (Some("4".into()), Some(holds))
        }
        PolicyKind::RandPartition | PolicyKind::RandPairing => (None, None),
    }
}

/// Exact two-branch average of the pairing policy on a fixed instance.
pub fn pairing_expected_value<S: Scalar>(
    instance: &MultistageInstance<S>,
    cap: usize,
) -> Result<S> {
    let mut total = S::zero();
    for offset in [false, true] {
        let source = GameSource::fixed(instance.clone(), "expectation");
        let config =
            PolicyConfig { fixed_pairing_offset: Some(offset), ..PolicyConfig::default() };
        let run = play_policy(PolicyKind::RandPairing, &source, &config, cap)?;
        total = total + run.breakdown.total;
    }
    Ok(total / S::from_int(2))
}

/// Exact average of the partition policy over every half of the ground set
/// (all subsets of size ⌈n/2⌉).
pub fn partition_expected_value<S: Scalar>(
    instance: &MultistageInstance<S>,
    cap: usize,
) -> Result<S> {
    let n = instance.n;
    let keep = (n as usize).div_ceil(2);
    let mut halves = Vec::new();
    collect_subsets_of_size(n, keep, &mut halves);
    let mut total = S::zero();
    for half in &halves {
        let source = GameSource::fixed(instance.clone(), "expectation");
        let config =
            PolicyConfig { fixed_partition: Some(half.clone()), ..PolicyConfig::default() };
        let run = play_policy(PolicyKind::RandPartition, &source, &config, cap)?;
        total = total + run.breakdown.total;
    }
    Ok(total / S::from_count(halves.len()))
}

fn collect_subsets_of_size(n: u32, size: usize, out: &mut Vec<ObjectSet>) {
    fn recurse(
        n: u32,
        size: usize,
        start: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<ObjectSet>,
    ) {
        if current.len() == size {
            out.push(ObjectSet::from_members(n, current.iter().copied()).expect("in range"));
            return;
        }
        for i in start..=n {
            current.push(i);
            recurse(n, size, i + 1, current, out);
            current.pop();
        }
    }
    recurse(n, size, 1, &mut Vec::new(), out);
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyGen {
    AllSubsets,
    Cardinality,
    Knapsack,
    Matching,
    Explicit,
    /// One of the above, chosen per instance (or per stage under general
    /// evolution).
    Mixed,
    /// Downward-closed kinds only; safe for the partition policies.
    DownwardClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfitGen {
    Linear,
    Table,
    /// w * min(|S|, c): concave in the cardinality, hence submodular.
    ConcaveCardinality,
    Mixed,
    /// Submodular kinds only (linear or concave-cardinality).
    Submodular,
}

/// Seeded generator of random instances with small rational profits
/// (denominators at most 16, keeping all downstream arithmetic cheap).
#[derive(Debug, Clone)]
pub struct RandomInstanceSpec {
    pub evolution: Evolution,
    pub bonus: BonusModel,
    pub n: u32,
    pub horizon: usize,
    pub family_gen: FamilyGen,
    pub profit_gen: ProfitGen,
    pub seed: u64,
}

impl RandomInstanceSpec {
    pub fn descriptor(&self) -> String {
        format!(
            "random:{}-{}:n{}t{}:seed{}",
            self.evolution.tag(),
            self.bonus.tag(),
            self.n,
            self.horizon,
            self.seed
        )
    }

    pub fn generate<S: Scalar>(&self) -> Result<MultistageInstance<S>> {
        if self.n == 0 || self.n > 10 {
            return Err(Error::Argument("random instances support 1 <= n <= 10".into()));
        }
        if self.horizon == 0 {
            return Err(Error::Argument("horizon must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let first_family = self.random_family::<S>(&mut rng)?;
        let mut stages = Vec::with_capacity(self.horizon);
        for _ in 0..self.horizon {
            let family = match self.evolution {
                Evolution::Ssfs => first_family.clone(),
                Evolution::Ge => self.random_family::<S>(&mut rng)?,
            };
            let profit = self.random_profit::<S>(&mut rng)?;
            stages.push(StageInstance::new(family, profit)?);
        }
        MultistageInstance::new(self.n, self.bonus, self.evolution, stages)
    }

    fn random_family<S: Scalar>(&self, rng: &mut ChaCha8Rng) -> Result<FeasibleFamily<S>> {
        let n = self.n;
        let pick = match self.family_gen {
            FamilyGen::Mixed => match rng.gen_range(0..5) {
                0 => FamilyGen::AllSubsets,
                1 => FamilyGen::Cardinality,
                2 => FamilyGen::Knapsack,
                3 => FamilyGen::Matching,
                _ => FamilyGen::Explicit,
            },
            FamilyGen::DownwardClosed => match rng.gen_range(0..4) {
                0 => FamilyGen::AllSubsets,
                1 => FamilyGen::Cardinality,
                2 => FamilyGen::Knapsack,
                _ => FamilyGen::Matching,
            },
            other => other,
        };
        match pick {
            FamilyGen::AllSubsets => FeasibleFamily::new(n, FamilyKind::AllSubsets),
            FamilyGen::Cardinality => {
                FeasibleFamily::new(n, FamilyKind::CardinalityAtMost(rng.gen_range(1..=n)))
            }
            FamilyGen::Knapsack => {
                let weights: Vec<S> =
                    (0..n).map(|_| S::from_int(rng.gen_range(0..=3))).collect();
                let capacity = S::from_int(rng.gen_range(1..=(3 * n as i64 / 2).max(1)));
                FeasibleFamily::new(n, FamilyKind::Knapsack { weights, capacity })
            }
            FamilyGen::Matching => {
                let vertices = n + 2;
                let mut edges = Vec::with_capacity(n as usize);
                while edges.len() < n as usize {
                    let u = rng.gen_range(1..=vertices);
                    let v = rng.gen_range(1..=vertices);
                    if u != v && !edges.contains(&(u.min(v), u.max(v))) {
                        edges.push((u.min(v), u.max(v)));
                    }
                }
                FeasibleFamily::new(n, FamilyKind::MatchingEdges { edges })
            }
            FamilyGen::Explicit => {
                let mut sets = vec![ObjectSet::empty(n)];
                for mask in 1u64..(1 << n) {
                    if rng.gen_bool(0.5) {
                        sets.push(ObjectSet::from_mask(n, mask));
                    }
                }
                FeasibleFamily::new(n, FamilyKind::Explicit(sets))
            }
            FamilyGen::Mixed | FamilyGen::DownwardClosed => unreachable!("resolved above"),
        }
    }

    fn random_rational<S: Scalar>(&self, rng: &mut ChaCha8Rng) -> S {
        let den = [1, 2, 3, 4, 8, 16][rng.gen_range(0..6)];
        S::from_frac(rng.gen_range(0..=8), den)
    }

    fn random_profit<S: Scalar>(&self, rng: &mut ChaCha8Rng) -> Result<ProfitFunction<S>> {
        let n = self.n;
        let pick = match self.profit_gen {
            ProfitGen::Mixed => match rng.gen_range(0..3) {
                0 => ProfitGen::Linear,
                1 => ProfitGen::Table,
                _ => ProfitGen::ConcaveCardinality,
            },
            ProfitGen::Submodular => {
                if rng.gen_bool(0.5) {
                    ProfitGen::Linear
                } else {
                    ProfitGen::ConcaveCardinality
                }
            }
            other => other,
        };
        match pick {
            ProfitGen::Linear => {
                let weights = (0..n).map(|_| self.random_rational::<S>(rng)).collect();
                ProfitFunction::linear(n, weights)
            }
            ProfitGen::Table => {
                let entries = (0..rng.gen_range(1..=8u32))
                    .map(|_| {
                        let mask = rng.gen_range(0..(1u64 << n));
                        (ObjectSet::from_mask(n, mask), self.random_rational::<S>(rng))
                    })
                    .collect::<Vec<_>>();
                ProfitFunction::table(n, entries)
            }
            ProfitGen::ConcaveCardinality => {
                let w = self.random_rational::<S>(rng);
                let cut = rng.gen_range(1..=n) as usize;
                let entries = (1u64..(1 << n)).map(|mask| {
                    let set = ObjectSet::from_mask(n, mask);
                    let units = set.len().min(cut) as i64;
                    (set, w.clone() * S::from_int(units))
                });
                ProfitFunction::table(n, entries.collect::<Vec<_>>())
            }
            ProfitGen::Mixed | ProfitGen::Submodular => unreachable!("resolved above"),
        }
    }
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Grid of random runs for one policy; reports are merged in grid order.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub evolution: Evolution,
    pub bonus: BonusModel,
    pub ns: Vec<u32>,
    pub horizons: Vec<usize>,
    pub seeds: Vec<u64>,
    pub family_gen: FamilyGen,
    pub profit_gen: ProfitGen,
}

pub struct SweepOutcome<S: Scalar> {
    pub reports: Vec<GameReport>,
    /// (grid descriptor, error) pairs for failed runs; not fatal.
    pub errors: Vec<(String, Error)>,
    pub max_ratio: Option<S>,
    pub any_unbounded: bool,
    pub all_within_bound: bool,
}

pub fn sweep<S: Scalar>(kind: PolicyKind, grid: &SweepGrid, cap: usize) -> SweepOutcome<S> {
    let mut outcome = SweepOutcome {
        reports: Vec::new(),
        errors: Vec::new(),
        max_ratio: None,
        any_unbounded: false,
        all_within_bound: true,
    };
    for &n in &grid.ns {
        for &horizon in &grid.horizons {
            for &seed in &grid.seeds {
                let spec = RandomInstanceSpec {
                    evolution: grid.evolution,
                    bonus: grid.bonus,
                    n,
                    horizon,
                    family_gen: grid.family_gen,
                    profit_gen: grid.profit_gen,
                    seed,
                };
                let descriptor = spec.descriptor();
                let run = spec.generate::<S>().and_then(|instance| {
                    let source = GameSource::fixed(instance, descriptor.clone());
                    let config = PolicyConfig { seed, ..PolicyConfig::default() };
                    play_policy(kind, &source, &config, cap)
                });
                match run {
                    Ok(run) => {
                        match &run.ratio {
                            CompetitiveRatio::Finite(r) => {
                                if outcome.max_ratio.as_ref().map_or(true, |m| r > m) {
                                    outcome.max_ratio = Some(r.clone());
                                }
                            }
                            CompetitiveRatio::Unbounded => outcome.any_unbounded = true,
                        }
                        if run.report.outcome.within_bound == Some(false) {
                            outcome.all_within_bound = false;
                        }
                        outcome.reports.push(run.report);
                    }
                    Err(err) => outcome.errors.push((descriptor, err)),
                }
            }
        }
    }
    outcome
}

/// CSV header matching [`report_csv_row`].
pub const CSV_HEADER: &str = "policy,model,n,T,seed,value,optimum,ratio,bound,within_bound";

pub fn report_csv_row(report: &GameReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        report.policy,
        report.model,
        report.n,
        report.horizon,
        report.seed.map_or(String::new(), |s| s.to_string()),
        report.outcome.value,
        report.outcome.optimum,
        report.outcome.ratio,
        report.outcome.bound.clone().unwrap_or_default(),
        report.outcome.within_bound.map_or(String::new(), |b| b.to_string()),
    )
}
