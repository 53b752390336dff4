//! Acceptance suite: one test per gate criterion, each printing a PASS
//! line with the measured quantities. All value comparisons are exact
//! rational arithmetic; floating point appears only inside explicitly
//! stated tolerance windows around irrational targets.

use num_traits::One;

use msmax::adversary::{
    certified_ratio, enumerate_deterministic_games, phase_constants_1696, row_schedule,
    AdaptiveInstance, AdversaryKind, AdversarySpec, AlternatingPhases, CapacitySqueeze,
    CompetitiveRatio, DoublingRows, ForbiddenRepeat, SingleItemPhases, TwoStepSplit,
    VanishingSingles,
};
use msmax::algorithms::{PolicyConfig, PolicyKind};
use msmax::harness::{
    pairing_expected_value, partition_expected_value, play_policy, FamilyGen, GameSource,
    ProfitGen, RandomInstanceSpec,
};
use msmax::scalar::Scalar;
use msmax::schema::{instance_from_json, instance_to_json};
use msmax::{
    offline_optimum, sequence_value, BonusModel, Evolution, Instance, ObjectSet,
    SolutionSequence, Value, DEFAULT_ENUM_CAP,
};

const CAP: usize = DEFAULT_ENUM_CAP;

fn val(v: i64) -> Value {
    Value::from_int(v)
}

fn frac(num: i64, den: i64) -> Value {
    Value::from_frac(num, den)
}

fn approx(v: &Value) -> f64 {
    Scalar::to_f64(v)
}

// ---------------------------------------------------------------------------
// A1: the offline optimum equals exhaustive sequence enumeration.
// ---------------------------------------------------------------------------

/// Independent oracle: depth-first walk over every feasible sequence with a
/// running value; no dynamic programming involved.
fn exhaustive_best(inst: &Instance) -> (Value, usize) {
    let layers: Vec<Vec<ObjectSet>> = inst
        .stages
        .iter()
        .map(|s| s.family.enumerate(CAP).expect("enumerable"))
        .collect();
    let mut count = 0usize;
    let mut best: Option<Value> = None;
    fn walk(
        inst: &Instance,
        layers: &[Vec<ObjectSet>],
        t: usize,
        prev: Option<&ObjectSet>,
        acc: Value,
        count: &mut usize,
        best: &mut Option<Value>,
    ) {
        if t == layers.len() {
            *count += 1;
            if best.as_ref().map_or(true, |b| &acc > b) {
                *best = Some(acc);
            }
            return;
        }
        for set in &layers[t] {
            let mut v = acc.clone() + inst.stage(t + 1).profit.eval(set);
            if let Some(p) = prev {
                v = v + inst.bonus.eval::<Value>(p, set).expect("same ground set");
            }
            walk(inst, layers, t + 1, Some(set), v, count, best);
        }
    }
    walk(inst, &layers, 0, None, Value::from_int(0), &mut count, &mut best);
    (best.expect("at least the all-empty sequence"), count)
}

#[test]
fn a1_offline_optimum_matches_exhaustive_enumeration() {
    let mut checked = 0usize;
    let mut seed = 0u64;
    while checked < 200 {
        let spec = RandomInstanceSpec {
            evolution: if seed % 2 == 0 { Evolution::Ssfs } else { Evolution::Ge },
            bonus: if seed % 4 < 2 { BonusModel::Hamming } else { BonusModel::Intersection },
            n: 1 + (seed % 4) as u32,
            horizon: 1 + ((seed / 4) % 4) as usize,
            family_gen: FamilyGen::Mixed,
            profit_gen: ProfitGen::Mixed,
            seed,
        };
        seed += 1;
        let inst = spec.generate::<Value>().expect("generatable");
        let total: usize = inst
            .stages
            .iter()
            .map(|s| s.family.enumerate(CAP).unwrap().len())
            .product();
        if total > 100_000 {
            continue;
        }
        let (brute, sequences) = exhaustive_best(&inst);
        assert!(sequences <= 100_000);
        let dp = offline_optimum(&inst, CAP).expect("dp runs").optimum_value;
        assert_eq!(dp, brute, "instance {}", spec.descriptor());
        checked += 1;
    }
    println!("ACCEPTANCE A1 oracle-equivalence: PASS ({checked} instances, exact equality)");
}

// ---------------------------------------------------------------------------
// A2: worst-case guarantees on random and adversarial instances.
// ---------------------------------------------------------------------------

struct SuiteStats {
    runs: usize,
    max_ratio: Option<Value>,
}

impl SuiteStats {
    fn new() -> Self {
        SuiteStats { runs: 0, max_ratio: None }
    }

    fn record(&mut self, ratio: &CompetitiveRatio<Value>) {
        self.runs += 1;
        if let Some(r) = ratio.as_finite() {
            if self.max_ratio.as_ref().map_or(true, |m| r > m) {
                self.max_ratio = Some(r.clone());
            }
        }
    }

    fn summary(&self) -> String {
        format!(
            "{} runs, max ratio {}",
            self.runs,
            self.max_ratio.as_ref().map_or("n/a".into(), |r| format!("{r} (~{:.4})", approx(r)))
        )
    }
}

/// Plays one game and asserts the policy's exact guarantee inequality.
fn assert_guarantee(
    kind: PolicyKind,
    source: &GameSource<Value>,
    stats: &mut SuiteStats,
) {
    let run = play_policy(kind, source, &PolicyConfig::default(), CAP)
        .unwrap_or_else(|e| panic!("{} on {}: {e}", kind.name(), source.descriptor()));
    assert_eq!(
        run.report.outcome.within_bound,
        Some(true),
        "{} violated its bound on {} (value {}, optimum {})",
        kind.name(),
        source.descriptor(),
        run.report.outcome.value,
        run.report.outcome.optimum,
    );
    stats.record(&run.ratio);
}

fn random_source(
    evolution: Evolution,
    bonus: BonusModel,
    n: u32,
    horizon: usize,
    family_gen: FamilyGen,
    profit_gen: ProfitGen,
    seed: u64,
) -> GameSource<Value> {
    let spec =
        RandomInstanceSpec { evolution, bonus, n, horizon, family_gen, profit_gen, seed };
    let descriptor = spec.descriptor();
    GameSource::fixed(spec.generate().expect("generatable"), descriptor)
}

#[test]
fn a2_greedy_is_2_competitive_on_static_hamming() {
    let mut stats = SuiteStats::new();
    for seed in 0..500u64 {
        let n = 2 + (seed % 5) as u32;
        let horizon = 2 + (seed % 7) as usize;
        let source = random_source(
            Evolution::Ssfs,
            BonusModel::Hamming,
            n,
            horizon,
            FamilyGen::Mixed,
            ProfitGen::Mixed,
            seed,
        );
        assert_guarantee(PolicyKind::Greedy, &source, &mut stats);
    }
    let two_step: TwoStepSplit<Value> = TwoStepSplit::new(frac(1, 2)).unwrap();
    assert_guarantee(PolicyKind::Greedy, &GameSource::adaptive(Box::new(two_step)), &mut stats);
    for horizon in [10, 50] {
        let phases = AlternatingPhases::new(horizon).unwrap();
        assert_guarantee(PolicyKind::Greedy, &GameSource::adaptive(Box::new(phases)), &mut stats);
    }
    println!("ACCEPTANCE A2 greedy 2-competitive: PASS ({})", stats.summary());
}

#[test]
fn a2_mp_algo_meets_its_horizon_bound_on_static_intersection() {
    let mut stats = SuiteStats::new();
    for seed in 0..500u64 {
        let n = 2 + (seed % 5) as u32;
        let horizon = 4 + (seed % 5) as usize;
        let source = random_source(
            Evolution::Ssfs,
            BonusModel::Intersection,
            n,
            horizon,
            FamilyGen::Mixed,
            ProfitGen::Mixed,
            seed,
        );
        assert_guarantee(PolicyKind::MpAlgo, &source, &mut stats);
    }
    for horizon in [4, 5, 6] {
        let singles: VanishingSingles<Value> = VanishingSingles::with_horizon(horizon).unwrap();
        assert_guarantee(PolicyKind::MpAlgo, &GameSource::adaptive(Box::new(singles)), &mut stats);
    }
    println!("ACCEPTANCE A2 mp-algo 2(T-1)/(T-2)-competitive: PASS ({})", stats.summary());
}

#[test]
fn a2_best_or_nothing_meets_its_bound_on_general_hamming() {
    let mut stats = SuiteStats::new();
    for seed in 0..500u64 {
        let n = 2 + (seed % 5) as u32;
        let horizon = 2 + (seed % 7) as usize;
        let source = random_source(
            Evolution::Ge,
            BonusModel::Hamming,
            n,
            horizon,
            FamilyGen::Mixed,
            ProfitGen::Mixed,
            seed,
        );
        assert_guarantee(PolicyKind::BestOrNothing, &source, &mut stats);
    }
    let squeeze = CapacitySqueeze::new(2, frac(169, 408)).unwrap();
    assert_guarantee(
        PolicyKind::BestOrNothing,
        &GameSource::adaptive(Box::new(squeeze)),
        &mut stats,
    );
    let phases: SingleItemPhases<Value> = SingleItemPhases::new(10, 1_000_000).unwrap();
    assert_guarantee(
        PolicyKind::BestOrNothing,
        &GameSource::adaptive(Box::new(phases)),
        &mut stats,
    );
    println!("ACCEPTANCE A2 best-or-nothing (3T-2)/(T-1)-competitive: PASS ({})", stats.summary());
}

#[test]
fn a2_three_part_meets_its_bound_under_validated_assumptions() {
    let mut stats = SuiteStats::new();
    for seed in 0..500u64 {
        let n = 2 + (seed % 5) as u32;
        let horizon = 2 + (seed % 7) as usize;
        let source = random_source(
            Evolution::Ge,
            BonusModel::Hamming,
            n,
            horizon,
            FamilyGen::DownwardClosed,
            ProfitGen::Submodular,
            seed,
        );
        assert_guarantee(PolicyKind::ThreePart, &source, &mut stats);
    }
    let squeeze = CapacitySqueeze::new(3, frac(169, 408)).unwrap();
    assert_guarantee(PolicyKind::ThreePart, &GameSource::adaptive(Box::new(squeeze)), &mut stats);
    let phases: SingleItemPhases<Value> = SingleItemPhases::new(10, 1_000_000).unwrap();
    assert_guarantee(PolicyKind::ThreePart, &GameSource::adaptive(Box::new(phases)), &mut stats);
    println!("ACCEPTANCE A2 three-part 21/8+slack-competitive: PASS ({})", stats.summary());
}

#[test]
fn a2_balance_is_4_competitive_with_one_lookahead() {
    let mut stats = SuiteStats::new();
    for seed in 0..500u64 {
        let n = 2 + (seed % 5) as u32;
        let horizon = 2 + (seed % 7) as usize;
        let source = random_source(
            Evolution::Ge,
            BonusModel::Intersection,
            n,
            horizon,
            FamilyGen::Mixed,
            ProfitGen::Mixed,
            seed,
        );
        assert_guarantee(PolicyKind::Balance, &source, &mut stats);
    }
    let rows: DoublingRows<Value> = DoublingRows::new(1, 1).unwrap();
    assert_guarantee(PolicyKind::Balance, &GameSource::adaptive(Box::new(rows)), &mut stats);
    println!("ACCEPTANCE A2 balance 4-competitive: PASS ({})", stats.summary());
}

// ---------------------------------------------------------------------------
// A3: exact lower-bound reproduction.
// ---------------------------------------------------------------------------

#[test]
fn a3_two_step_hamming_game_forces_five_thirds() {
    let adv: TwoStepSplit<Value> = TwoStepSplit::new(frac(1, 2)).unwrap();
    let bound = frac(5, 3);

    let source = GameSource::adaptive(Box::new(TwoStepSplit::<Value>::new(frac(1, 2)).unwrap()));
    let greedy_run = play_policy(PolicyKind::Greedy, &source, &PolicyConfig::default(), CAP)
        .expect("greedy plays");
    assert!(greedy_run.ratio.at_least(&bound));

    let games = enumerate_deterministic_games(&adv, CAP, 100).unwrap();
    assert_eq!(games.len(), 9, "three choices per step");
    let mut attained = false;
    for game in &games {
        assert!(game.ratio.at_least(&bound), "play {:?}", game.choices.steps());
        attained |= game.ratio.as_finite() == Some(&bound);
    }
    assert!(attained);
    println!(
        "ACCEPTANCE A3a two-step split: PASS (greedy ratio {}, min over {} policies = 5/3)",
        greedy_run.report.outcome.ratio,
        games.len()
    );
}

#[test]
fn a3_vanishing_singles_force_seven_fourths() {
    let adv: VanishingSingles<Value> = VanishingSingles::with_horizon(4).unwrap();
    let bound = frac(7, 4);

    let source =
        GameSource::adaptive(Box::new(VanishingSingles::<Value>::with_horizon(4).unwrap()));
    let mp_run = play_policy(PolicyKind::MpAlgo, &source, &PolicyConfig::default(), CAP)
        .expect("mp-algo plays");
    assert!(mp_run.ratio.at_least(&bound));
    assert!(mp_run.breakdown.total <= val(4), "value is at most T");
    assert_eq!(mp_run.optimum, val(7), "an untouched object earns 2T - 1");

    let games = enumerate_deterministic_games(&adv, CAP, 1000).unwrap();
    assert_eq!(games.len(), 625);
    let mut min_finite: Option<Value> = None;
    for game in &games {
        assert!(game.ratio.at_least(&bound));
        if let Some(r) = game.ratio.as_finite() {
            if min_finite.as_ref().map_or(true, |m| r < m) {
                min_finite = Some(r.clone());
            }
        }
    }
    assert_eq!(min_finite, Some(bound));
    println!(
        "ACCEPTANCE A3b vanishing singles: PASS (mp-algo ratio {}, min over 625 policies = 7/4)",
        mp_run.report.outcome.ratio
    );
}

#[test]
fn a3_no_lookahead_intersection_game_is_unbounded() {
    let adv = ForbiddenRepeat::new(2).unwrap();
    let games = enumerate_deterministic_games::<Value>(&adv, CAP, 100).unwrap();
    for game in &games {
        assert!(matches!(game.ratio, CompetitiveRatio::Unbounded));
    }
    println!(
        "ACCEPTANCE A3c no-lookahead impossibility: PASS (all {} policies score 0 against optimum >= 1)",
        games.len()
    );
}

#[test]
fn a3_doubling_rows_realize_the_scaled_schedule_and_force_three() {
    let adv: DoublingRows<Value> = DoublingRows::new(1, 1).unwrap();
    let sizes: Vec<i64> = adv
        .schedule()
        .sizes
        .iter()
        .map(|v| i64::try_from(v.clone()).unwrap())
        .collect();
    assert_eq!(sizes, vec![1, 2, 3, 3, 3]);
    assert_eq!(AdaptiveInstance::<Value>::horizon(&adv), 5);

    // Every confirmation time: scripted confirmations verified both against
    // the internal schedule ratio and the realized offline optimum.
    for confirm_at in 2..=5usize {
        let mut choices = Vec::new();
        for t in 1..confirm_at - 1 {
            choices.push(adv.row_set(t as u32, t).unwrap());
        }
        choices.push(adv.row_set(confirm_at as u32 - 1, confirm_at - 1).unwrap());
        choices.push(adv.row_set(confirm_at as u32 - 1, confirm_at).unwrap());
        while choices.len() < 5 {
            choices.push(ObjectSet::empty(AdaptiveInstance::<Value>::n(&adv)));
        }
        let seq = SolutionSequence::new(choices).unwrap();
        let (ratio, optimum, value) = certified_ratio(&adv, &seq, CAP).unwrap();
        assert_eq!(ratio.as_finite(), Some(&val(3)), "confirm at {confirm_at}");
        let internal = Value::from(adv.schedule().confirm_ratio(confirm_at));
        assert_eq!(optimum, internal * value);
    }
    println!(
        "ACCEPTANCE A3d doubling rows: PASS (sizes 1,2,3,3,3 over horizon 5; every confirmation branch ratio = 3)"
    );
}

#[test]
fn a3_capacity_squeeze_reproduces_the_knapsack_bound() {
    let alpha = frac(169, 408);
    let closed_form = frac(577, 239); // (1 + a) / (1 - a) at a = 169/408
    let sqrt2_plus_1 = 1.0 + std::f64::consts::SQRT_2;
    assert!((approx(&closed_form) - sqrt2_plus_1).abs() < 1e-4);

    let source =
        GameSource::adaptive(Box::new(CapacitySqueeze::new(2, alpha.clone()).unwrap()));
    let run = play_policy(PolicyKind::BestOrNothing, &source, &PolicyConfig::default(), CAP)
        .expect("plays");
    // The realized game is exact: the policy stays empty, then takes the
    // full second step, for a ratio of exactly 2 + alpha.
    let certified = run.ratio.as_finite().expect("finite").clone();
    assert_eq!(certified, val(2) + alpha.clone());
    // 169/408 approximates its irrational target from above, which leaves
    // the forced ratio a hair under the closed form evaluated at alpha;
    // the documented approximation-gap tolerance covers the difference.
    assert!(approx(&certified) >= approx(&closed_form) - 1e-4);
    assert!((approx(&certified) - sqrt2_plus_1).abs() < 1e-4);

    // A convergent below the target satisfies the closed-form inequality
    // exactly, with no tolerance.
    let low = frac(70, 169);
    let low_target = (Value::one() + low.clone()) / (Value::one() - low.clone());
    let source = GameSource::adaptive(Box::new(CapacitySqueeze::new(2, low.clone()).unwrap()));
    let run = play_policy(PolicyKind::BestOrNothing, &source, &PolicyConfig::default(), CAP)
        .expect("plays");
    let certified_low = run.ratio.as_finite().expect("finite").clone();
    assert_eq!(certified_low, val(2) + low);
    assert!(certified_low >= low_target);
    println!(
        "ACCEPTANCE A3e capacity squeeze: PASS (certified {} ~ {:.6} vs 1+sqrt(2) ~ {:.6}; lower convergent certifies {} >= its closed form exactly)",
        certified,
        approx(&certified),
        sqrt2_plus_1,
        certified_low,
    );
}

#[test]
fn a3_phase_games_converge_to_their_asymptotic_targets() {
    // Static phases against the keep-or-best greedy: toward 3/2.
    let mut previous: Option<f64> = None;
    let mut last = 0.0;
    for horizon in [10usize, 50, 200] {
        let source =
            GameSource::adaptive(Box::new(AlternatingPhases::new(horizon).unwrap()));
        let run = play_policy(PolicyKind::Greedy, &source, &PolicyConfig::default(), CAP)
            .expect("plays");
        let ratio = approx(run.ratio.as_finite().expect("finite"));
        if let Some(prev) = previous {
            assert!(ratio >= prev, "not monotone at T={horizon}: {ratio} < {prev}");
        }
        previous = Some(ratio);
        last = ratio;
    }
    assert!((last - 1.5).abs() < 0.05, "final static-phase ratio {last}");
    let static_last = last;

    // Single-item phases against the general-evolution greedy adaptation:
    // toward ~1.696.
    let mut previous: Option<f64> = None;
    let mut last = 0.0;
    for horizon in [10usize, 50, 200] {
        let adv: SingleItemPhases<Value> = SingleItemPhases::new(horizon, 1_000_000).unwrap();
        let target = approx(&adv.constants().alpha.clone());
        assert!((target - 1.696).abs() < 1e-3);
        let source = GameSource::adaptive(Box::new(adv));
        let run =
            play_policy(PolicyKind::BestOrNothing, &source, &PolicyConfig::default(), CAP)
                .expect("plays");
        let ratio = approx(run.ratio.as_finite().expect("finite"));
        if let Some(prev) = previous {
            assert!(ratio >= prev, "not monotone at T={horizon}: {ratio} < {prev}");
        }
        previous = Some(ratio);
        last = ratio;
    }
    assert!((last - 1.696).abs() < 0.05, "final single-item ratio {last}");
    println!(
        "ACCEPTANCE A3f phase games: PASS (static phases reach {static_last:.4} toward 1.5; single-item reaches {last:.4} toward 1.696)"
    );
}

// ---------------------------------------------------------------------------
// A4: randomized policies, exact expectations.
// ---------------------------------------------------------------------------

#[test]
fn a4_pairing_expectation_is_2_competitive() {
    let mut worst: Option<Value> = None;
    for seed in 0..200u64 {
        let spec = RandomInstanceSpec {
            evolution: Evolution::Ge,
            bonus: BonusModel::Intersection,
            n: 2 + (seed % 4) as u32,
            horizon: 2 + (seed % 5) as usize,
            family_gen: FamilyGen::Mixed,
            profit_gen: ProfitGen::Mixed,
            seed,
        };
        let inst = spec.generate::<Value>().unwrap();
        let expectation = pairing_expected_value(&inst, CAP).unwrap();
        let optimum = offline_optimum(&inst, CAP).unwrap().optimum_value;
        assert!(
            val(2) * expectation.clone() >= optimum,
            "violated on {}",
            spec.descriptor()
        );
        if optimum > val(0) && expectation > val(0) {
            let ratio = optimum / expectation;
            if worst.as_ref().map_or(true, |w| &ratio > w) {
                worst = Some(ratio);
            }
        }
    }
    println!(
        "ACCEPTANCE A4a pairing expectation: PASS (200 instances, worst expected ratio {})",
        worst.map_or("n/a".into(), |w| format!("{w} (~{:.4})", approx(&w)))
    );
}

#[test]
fn a4_partition_expectation_meets_its_slack_bound() {
    for seed in 0..200u64 {
        let n = 2 + (seed % 4) as u32;
        let horizon = 2 + (seed % 5) as usize;
        let spec = RandomInstanceSpec {
            evolution: Evolution::Ge,
            bonus: BonusModel::Hamming,
            n,
            horizon,
            family_gen: FamilyGen::DownwardClosed,
            profit_gen: ProfitGen::Submodular,
            seed,
        };
        let inst = spec.generate::<Value>().unwrap();
        let expectation = partition_expected_value(&inst, CAP).unwrap();
        let optimum = offline_optimum(&inst, CAP).unwrap().optimum_value;
        let slack = frac(2, n as i64) * optimum.clone()
            + val(2 * (horizon as i64 - 1));
        assert!(
            (val(2) + slack) * expectation.clone() >= optimum,
            "violated on {} (E = {expectation}, opt = {optimum})",
            spec.descriptor()
        );
    }
    println!("ACCEPTANCE A4b partition expectation: PASS (200 validated submodular instances)");
}

// ---------------------------------------------------------------------------
// A5: recurrences and derived constants.
// ---------------------------------------------------------------------------

#[test]
fn a5_headroom_recurrence_descends_and_terminates() {
    for (num, den) in [(1i64, 4i64), (1, 2), (1, 1)] {
        let schedule = row_schedule(num, den).unwrap();
        let headroom = &schedule.headroom;
        assert!(
            headroom.last().unwrap() <= &num_rational::BigRational::one(),
            "terminates at headroom <= 1"
        );
        for w in headroom.windows(2) {
            if w[0] >= num_rational::BigRational::one() {
                assert!(w[1] < w[0], "eps {num}/{den}: headroom must strictly fall");
            }
        }
    }
    println!("ACCEPTANCE A5a headroom recurrence: PASS (eps in {{1/4, 1/2, 1}})");
}

#[test]
fn a5_phase_constants_satisfy_the_equalization() {
    let constants = phase_constants_1696::<Value>(1_000_000).unwrap();
    let lhs = Value::one() + constants.gamma.clone();
    let rhs = val(2) / constants.beta.clone();
    let diff = approx(&(lhs.clone() - rhs.clone())).abs();
    assert!(diff <= 1e-6, "1 + gamma vs 2/beta differ by {diff}");
    assert_eq!(lhs, rhs, "the identity holds exactly by construction");
    assert!((approx(&constants.alpha) - 1.696).abs() < 1e-3);
    println!(
        "ACCEPTANCE A5b phase constants: PASS (1 + gamma = 2/beta exactly; alpha ~ {:.6})",
        approx(&constants.alpha)
    );
}

// ---------------------------------------------------------------------------
// A6: determinism and round-trips.
// ---------------------------------------------------------------------------

fn roster_run(index: u64) -> (PolicyKind, GameSource<Value>, PolicyConfig<Value>) {
    let config = PolicyConfig { seed: index, ..PolicyConfig::default() };
    match index % 5 {
        0 => {
            let spec = AdversarySpec::new(AdversaryKind::StaticHammingTwoStep);
            (PolicyKind::Greedy, GameSource::adaptive(spec.build().unwrap()), config)
        }
        1 => {
            let spec = AdversarySpec::new(AdversaryKind::StaticIntersectionSingles);
            (PolicyKind::MpAlgo, GameSource::adaptive(spec.build().unwrap()), config)
        }
        2 => (
            PolicyKind::BestOrNothing,
            random_source(
                Evolution::Ge,
                BonusModel::Hamming,
                2 + (index % 4) as u32,
                2 + (index % 4) as usize,
                FamilyGen::Mixed,
                ProfitGen::Mixed,
                index,
            ),
            config,
        ),
        3 => (
            PolicyKind::RandPartition,
            random_source(
                Evolution::Ge,
                BonusModel::Hamming,
                2 + (index % 4) as u32,
                2 + (index % 4) as usize,
                FamilyGen::DownwardClosed,
                ProfitGen::Submodular,
                index,
            ),
            config,
        ),
        _ => (
            PolicyKind::RandPairing,
            random_source(
                Evolution::Ge,
                BonusModel::Intersection,
                2 + (index % 4) as u32,
                2 + (index % 4) as usize,
                FamilyGen::Mixed,
                ProfitGen::Mixed,
                index,
            ),
            config,
        ),
    }
}

#[test]
fn a6_replays_are_byte_identical() {
    for index in 0..100u64 {
        let (kind, source_a, config) = roster_run(index);
        let (_, source_b, _) = roster_run(index);
        let first = play_policy(kind, &source_a, &config, CAP).expect("first run");
        let second = play_policy(kind, &source_b, &config, CAP).expect("second run");
        let a = serde_json::to_string(&first.report).unwrap();
        let b = serde_json::to_string(&second.report).unwrap();
        assert_eq!(a, b, "replay diverged on roster index {index}");
    }
    println!("ACCEPTANCE A6a determinism: PASS (100 replayed runs byte-identical)");
}

#[test]
fn a6_export_import_reproduces_every_report() {
    for index in 0..100u64 {
        let (kind, source, config) = roster_run(index);
        let original = play_policy(kind, &source, &config, CAP).expect("original run");
        let text = instance_to_json(&original.realized);
        let imported: Instance = instance_from_json(&text).expect("parses back");
        assert_eq!(imported, original.realized);
        let replay_source = GameSource::fixed(imported, "reimport");
        let replayed = play_policy(kind, &replay_source, &config, CAP).expect("replayed run");
        assert_eq!(
            serde_json::to_string(&original.report.outcome).unwrap(),
            serde_json::to_string(&replayed.report.outcome).unwrap(),
            "outcome diverged on roster index {index}"
        );
        // The replayed run re-scores the identical sequence.
        assert_eq!(
            sequence_value(&replayed.realized, &original.sequence).unwrap().total,
            original.breakdown.total
        );
    }
    println!("ACCEPTANCE A6b export/import: PASS (100 realized instances replay to identical outcomes)");
}
