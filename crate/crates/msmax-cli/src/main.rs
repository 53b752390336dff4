//! Command-line front end: run policies on instances or adversaries,
//! compute exact offline optima, certify lower bounds, sweep random grids,
//! validate structural assumptions and export realized games.
//!
//! Exit codes are a stable contract: 0 success (and within the applicable
//! bound), 2 input error, 3 model misuse or protocol mismatch, 4 internal
//! assertion.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use msmax::adversary::{AdversaryKind, AdversarySpec};
use msmax::algorithms::{PolicyConfig, PolicyKind};
use msmax::harness::{
    play_policy, report_csv_row, sweep, FamilyGen, GameReport, GameSource, ProfitGen,
    RandomInstanceSpec, SweepGrid, CSV_HEADER,
};
use msmax::scalar::Scalar;
use msmax::schema::{instance_from_json, instance_to_json};
use msmax::{
    offline_optimum, offline_upper_bound, scalar_string, Error, Evolution, Instance, Value,
    DEFAULT_ENUM_CAP,
};

#[derive(Parser)]
#[command(
    name = "msmax",
    about = "Online multistage subset maximization: policies, adversaries, exact ratios",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one policy against an instance file, an adversary, or a random
    /// instance, and report value, optimum and exact ratio.
    Run(RunArgs),
    /// Exact offline optimum of an instance file.
    Optimum(OptimumArgs),
    /// Play an adversary game and print the certified ratio next to the
    /// construction's target bound.
    Lowerbound(LowerboundArgs),
    /// Random grid of runs for one policy, with an aggregate row.
    Sweep(SweepArgs),
    /// Check downward closure and submodularity per stage.
    Validate(ValidateArgs),
    /// Play an adversary game and export the realized instance as JSON.
    Export(ExportArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Instance JSON file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Adversary kind (static-hamming, static-hamming-phases,
    /// static-intersection, ge-hamming-knapsack, ge-hamming-phases,
    /// ge-intersection, ge-intersection-lookahead).
    #[arg(long)]
    adversary: Option<String>,
    /// Generate a random instance instead (needs --bonus/--evolution).
    #[arg(long)]
    random: bool,
    /// Epsilon parameter as an exact rational, e.g. "1/2" or "0.5".
    #[arg(long)]
    epsilon: Option<String>,
    /// Alpha override for the knapsack adversary.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    /// Number of time steps.
    #[arg(long, visible_alias = "t")]
    horizon: Option<usize>,
    #[arg(long)]
    bonus: Option<BonusArg>,
    #[arg(long)]
    evolution: Option<EvolutionArg>,
    #[arg(long, default_value = "mixed")]
    family_gen: FamilyGenArg,
    #[arg(long, default_value = "mixed")]
    profit_gen: ProfitGenArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RunArgs {
    /// Policy name (greedy, mp-algo, best-or-nothing, three-part, balance,
    /// rand-partition, rand-pairing).
    #[arg(long)]
    policy: String,
    #[command(flatten)]
    source: SourceArgs,
    /// Profit threshold multiplier for three-part.
    #[arg(long)]
    x: Option<String>,
    #[arg(long, default_value = "human")]
    format: FormatArg,
    /// Write the report (JSON) here in addition to stdout output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OptimumArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value = "human")]
    format: FormatArg,
}

#[derive(Args)]
struct LowerboundArgs {
    #[arg(long)]
    adversary: String,
    #[arg(long)]
    policy: String,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    policy: String,
    #[arg(long)]
    bonus: BonusArg,
    #[arg(long)]
    evolution: EvolutionArg,
    #[arg(long, default_value_t = 2)]
    n_min: u32,
    #[arg(long, default_value_t = 4)]
    n_max: u32,
    #[arg(long, default_value_t = 2)]
    t_min: usize,
    #[arg(long, default_value_t = 6)]
    t_max: usize,
    /// Number of seeds per (n, T) cell, starting at 0.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, default_value = "mixed")]
    family_gen: FamilyGenArg,
    #[arg(long, default_value = "mixed")]
    profit_gen: ProfitGenArg,
    #[arg(long, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    adversary: String,
    #[arg(long)]
    policy: String,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Destination for the realized instance JSON.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Json,
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BonusArg {
    Hamming,
    Intersection,
}

impl From<BonusArg> for msmax::BonusModel {
    fn from(b: BonusArg) -> Self {
        match b {
            BonusArg::Hamming => msmax::BonusModel::Hamming,
            BonusArg::Intersection => msmax::BonusModel::Intersection,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EvolutionArg {
    Ssfs,
    Ge,
}

impl From<EvolutionArg> for Evolution {
    fn from(e: EvolutionArg) -> Self {
        match e {
            EvolutionArg::Ssfs => Evolution::Ssfs,
            EvolutionArg::Ge => Evolution::Ge,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyGenArg {
    All,
    Cardinality,
    Knapsack,
    Matching,
    Explicit,
    Mixed,
    DownwardClosed,
}

impl From<FamilyGenArg> for FamilyGen {
    fn from(f: FamilyGenArg) -> Self {
        match f {
            FamilyGenArg::All => FamilyGen::AllSubsets,
            FamilyGenArg::Cardinality => FamilyGen::Cardinality,
            FamilyGenArg::Knapsack => FamilyGen::Knapsack,
            FamilyGenArg::Matching => FamilyGen::Matching,
            FamilyGenArg::Explicit => FamilyGen::Explicit,
            FamilyGenArg::Mixed => FamilyGen::Mixed,
            FamilyGenArg::DownwardClosed => FamilyGen::DownwardClosed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfitGenArg {
    Linear,
    Table,
    ConcaveCard,
    Mixed,
    Submodular,
}

impl From<ProfitGenArg> for ProfitGen {
    fn from(p: ProfitGenArg) -> Self {
        match p {
            ProfitGenArg::Linear => ProfitGen::Linear,
            ProfitGenArg::Table => ProfitGen::Table,
            ProfitGenArg::ConcaveCard => ProfitGen::ConcaveCardinality,
            ProfitGenArg::Mixed => ProfitGen::Mixed,
            ProfitGenArg::Submodular => ProfitGen::Submodular,
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Argument(_) | Error::Schema(_) | Error::Capacity(_) | Error::Precision(_) => 2,
        Error::ModelMisuse(_)
        | Error::Protocol(_)
        | Error::DegenerateHorizon(_)
        | Error::AssumptionViolation(_) => 3,
        Error::Infeasible { .. } | Error::Internal(_) => 4,
    }
}

fn parse_frac(text: &str) -> Result<(i64, i64), Error> {
    let v: msmax::Value64 = msmax::parse_scalar(text)?;
    Ok((*v.numer(), *v.denom()))
}

fn parse_policy(name: &str) -> Result<PolicyKind, Error> {
    PolicyKind::parse(name).ok_or_else(|| {
        Error::Argument(format!(
            "unknown policy {name:?}; expected one of {}",
            PolicyKind::ALL.map(|k| k.name()).join(", ")
        ))
    })
}

fn parse_adversary(args_kind: &str) -> Result<AdversaryKind, Error> {
    AdversaryKind::parse(args_kind).ok_or_else(|| {
        Error::Argument(format!(
            "unknown adversary {args_kind:?}; expected one of {}",
            AdversaryKind::ALL.map(|k| k.name()).join(", ")
        ))
    })
}

fn adversary_spec(
    kind: AdversaryKind,
    epsilon: Option<&String>,
    alpha: Option<&String>,
    n: Option<u32>,
    horizon: Option<usize>,
) -> Result<AdversarySpec, Error> {
    let mut spec = AdversarySpec::new(kind);
    if let Some(e) = epsilon {
        spec.epsilon = Some(parse_frac(e)?);
    }
    if let Some(a) = alpha {
        spec.alpha = Some(parse_frac(a)?);
    }
    spec.n = n;
    spec.horizon = horizon;
    Ok(spec)
}

fn load_instance(path: &PathBuf) -> Result<Instance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
    instance_from_json(&text)
}

fn build_source(args: &SourceArgs) -> Result<GameSource<Value>, Error> {
    let chosen = [args.instance.is_some(), args.adversary.is_some(), args.random]
        .iter()
        .filter(|&&b| b)
        .count();
    if chosen != 1 {
        return Err(Error::Argument(
            "choose exactly one of --instance, --adversary, --random".into(),
        ));
    }
    if let Some(path) = &args.instance {
        let instance = load_instance(path)?;
        return Ok(GameSource::fixed(instance, format!("file:{}", path.display())));
    }
    if let Some(kind) = &args.adversary {
        let kind = parse_adversary(kind)?;
        let spec = adversary_spec(
            kind,
            args.epsilon.as_ref(),
            args.alpha.as_ref(),
            args.n,
            args.horizon,
        )?;
        return Ok(GameSource::adaptive(spec.build()?));
    }
    let (bonus, evolution) = match (args.bonus, args.evolution) {
        (Some(b), Some(e)) => (b.into(), e.into()),
        _ => {
            return Err(Error::Argument(
                "--random needs --bonus and --evolution".into(),
            ))
        }
    };
    let spec = RandomInstanceSpec {
        evolution,
        bonus,
        n: args.n.unwrap_or(4),
        horizon: args.horizon.unwrap_or(5),
        family_gen: args.family_gen.into(),
        profit_gen: args.profit_gen.into(),
        seed: args.seed,
    };
    let descriptor = spec.descriptor();
    Ok(GameSource::fixed(spec.generate()?, descriptor))
}

/// `"p/q"` rendered as `p/q (≈x.xxxxxx)`; passthrough for non-rationals.
fn pretty(text: &str) -> String {
    match msmax::parse_scalar::<Value>(text) {
        Ok(v) => format!("{text} (≈{:.6})", Scalar::to_f64(&v)),
        Err(_) => text.to_string(),
    }
}

fn print_report(report: &GameReport, format: FormatArg) {
    match format {
        FormatArg::Human => {
            println!("policy    {}", report.policy);
            println!("source    {}", report.source);
            println!(
                "model     {}  n={}  T={}{}",
                report.model,
                report.n,
                report.horizon,
                report.seed.map_or(String::new(), |s| format!("  seed={s}")),
            );
            println!(
                "value     {}  [profit {}, bonus {}]",
                pretty(&report.outcome.value),
                report.outcome.profit_total,
                report.outcome.bonus_total,
            );
            println!("optimum   {}", pretty(&report.outcome.optimum));
            println!("ratio     {}", pretty(&report.outcome.ratio));
            if let Some(bound) = &report.outcome.bound {
                println!(
                    "bound     {}  within: {}",
                    bound,
                    report
                        .outcome
                        .within_bound
                        .map_or("n/a".to_string(), |b| b.to_string())
                );
            }
            for step in &report.outcome.trace {
                println!(
                    "  t={:<3} chose {:?}  step-opt-profit {}  bonus {}",
                    step.t, step.chosen, step.step_opt_profit, step.bonus_earned
                );
            }
        }
        FormatArg::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        }
        FormatArg::Jsonl => {
            println!("{}", serde_json::to_string(report).expect("report serializes"));
        }
        FormatArg::Csv => {
            println!("{CSV_HEADER}");
            println!("{}", report_csv_row(report));
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<u8, Error> {
    let policy = parse_policy(&args.policy)?;
    let source = build_source(&args.source)?;
    let mut config = PolicyConfig::<Value> { seed: args.source.seed, ..PolicyConfig::default() };
    if let Some(x) = &args.x {
        config.part_threshold = msmax::parse_scalar(x)?;
    }
    let run = play_policy(policy, &source, &config, DEFAULT_ENUM_CAP)?;
    if let Some(path) = &args.output {
        fs::write(path, serde_json::to_string_pretty(&run.report).expect("report serializes"))
            .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?;
    }
    print_report(&run.report, args.format);
    Ok(if run.report.outcome.within_bound == Some(false) { 1 } else { 0 })
}

fn cmd_optimum(args: &OptimumArgs) -> Result<u8, Error> {
    let instance = load_instance(&args.instance)?;
    let result = offline_optimum(&instance, DEFAULT_ENUM_CAP)?;
    let bound = offline_upper_bound(&instance, DEFAULT_ENUM_CAP)?;
    let value = scalar_string(&result.optimum_value);
    match args.format {
        FormatArg::Human => {
            println!("optimum      {}", pretty(&value));
            println!("upper bound  {}", pretty(&scalar_string(&bound)));
            for (idx, step) in result.optimal_sequence.steps().iter().enumerate() {
                println!("  t={:<3} {}", idx + 1, step);
            }
        }
        _ => {
            let steps: Vec<Vec<u32>> =
                result.optimal_sequence.steps().iter().map(|s| s.members()).collect();
            let json = serde_json::json!({
                "optimum": value,
                "upper_bound": scalar_string(&bound),
                "sequence": steps,
            });
            println!("{}", serde_json::to_string_pretty(&json).expect("serializes"));
        }
    }
    Ok(0)
}

fn cmd_lowerbound(args: &LowerboundArgs) -> Result<u8, Error> {
    let policy = parse_policy(&args.policy)?;
    let kind = parse_adversary(&args.adversary)?;
    let spec = adversary_spec(
        kind,
        args.epsilon.as_ref(),
        args.alpha.as_ref(),
        args.n,
        args.horizon,
    )?;
    let adversary = spec.build::<Value>()?;
    let target_text = adversary.target_description();
    let target = adversary.target_ratio();
    let source = GameSource::adaptive(adversary);
    let config = PolicyConfig::<Value> { seed: args.seed, ..PolicyConfig::default() };
    let run = play_policy(policy, &source, &config, DEFAULT_ENUM_CAP)?;
    println!("adversary  {}", kind.name());
    println!("policy     {}", args.policy);
    println!("certified  {}", pretty(&run.report.outcome.ratio));
    println!("target     {target_text}");

    // Phase constructions are asymptotic; estimate the rate between two
    // horizons, which cancels the additive constants of the final phase.
    let mut adjusted = None;
    if matches!(
        kind,
        AdversaryKind::StaticHammingPhases | AdversaryKind::GeHammingPhases
    ) {
        let horizon = args.horizon.unwrap_or(50);
        let mut doubled_spec = spec.clone();
        doubled_spec.horizon = Some(horizon * 2);
        let doubled_source = GameSource::adaptive(doubled_spec.build()?);
        let doubled = play_policy(policy, &doubled_source, &config, DEFAULT_ENUM_CAP)?;
        let delta_opt = doubled.optimum.clone() - run.optimum.clone();
        let delta_val = doubled.breakdown.total.clone() - run.breakdown.total.clone();
        if delta_val > Value::from_int(0) {
            let rate = delta_opt / delta_val;
            println!(
                "adjusted   {}  [incremental rate T={horizon} → T={}]",
                pretty(&scalar_string(&rate)),
                horizon * 2
            );
            adjusted = Some(rate);
        }
    }

    if let Some(t) = &target {
        let close_enough = |r: &Value| {
            // Allow the rational-approximation gap on irrational targets.
            r >= t || (Scalar::to_f64(r) - Scalar::to_f64(t)).abs() < 1e-4
        };
        let met = run.ratio.at_least(t)
            || run.ratio.as_finite().map_or(false, close_enough)
            || adjusted.as_ref().map_or(false, close_enough);
        println!("met        {met}");
    }
    Ok(0)
}

fn cmd_sweep(args: &SweepArgs) -> Result<u8, Error> {
    let policy = parse_policy(&args.policy)?;
    if args.n_min > args.n_max || args.t_min > args.t_max {
        return Err(Error::Argument("empty ranges: min exceeds max".into()));
    }
    let grid = SweepGrid {
        evolution: args.evolution.into(),
        bonus: args.bonus.into(),
        ns: (args.n_min..=args.n_max).collect(),
        horizons: (args.t_min..=args.t_max).collect(),
        seeds: (0..args.seeds).collect(),
        family_gen: args.family_gen.into(),
        profit_gen: args.profit_gen.into(),
    };
    let outcome = sweep::<Value>(policy, &grid, DEFAULT_ENUM_CAP);

    let mut lines = Vec::new();
    match args.format {
        FormatArg::Csv | FormatArg::Human => {
            lines.push(CSV_HEADER.to_string());
            for report in &outcome.reports {
                lines.push(report_csv_row(report));
            }
        }
        FormatArg::Json | FormatArg::Jsonl => {
            for report in &outcome.reports {
                lines.push(serde_json::to_string(report).expect("report serializes"));
            }
        }
    }
    let body = lines.join("\n");
    match &args.output {
        Some(path) => fs::write(path, body + "\n")
            .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{body}"),
    }

    let max_ratio = outcome
        .max_ratio
        .as_ref()
        .map(scalar_string)
        .unwrap_or_else(|| "n/a".into());
    eprintln!(
        "runs={} errors={} max-ratio={} unbounded={} all-within-bound={}",
        outcome.reports.len(),
        outcome.errors.len(),
        pretty(&max_ratio),
        outcome.any_unbounded,
        outcome.all_within_bound,
    );
    for (descriptor, err) in &outcome.errors {
        eprintln!("  {descriptor}: {err}");
    }
    Ok(if outcome.all_within_bound { 0 } else { 1 })
}

fn cmd_validate(args: &ValidateArgs) -> Result<u8, Error> {
    let instance = load_instance(&args.instance)?;
    let mut ok = true;
    for (idx, stage) in instance.stages.iter().enumerate() {
        let at = idx + 1;
        let closed = stage.family.is_subset_feasible(DEFAULT_ENUM_CAP)?;
        if !closed {
            ok = false;
            println!("stage {at}: FAIL subset-feasibility (not downward closed)");
        }
        match stage.profit.submodularity_witness()? {
            None => {
                if closed {
                    println!("stage {at}: ok");
                }
            }
            Some((a, b)) => {
                ok = false;
                println!("stage {at}: FAIL submodularity, witness sets {a} and {b}");
            }
        }
    }
    println!("{}", if ok { "all stages pass" } else { "violations found" });
    Ok(if ok { 0 } else { 1 })
}

fn cmd_export(args: &ExportArgs) -> Result<u8, Error> {
    let policy = parse_policy(&args.policy)?;
    let kind = parse_adversary(&args.adversary)?;
    let spec = adversary_spec(
        kind,
        args.epsilon.as_ref(),
        args.alpha.as_ref(),
        args.n,
        args.horizon,
    )?;
    let source = GameSource::adaptive(spec.build()?);
    let config = PolicyConfig::<Value> { seed: args.seed, ..PolicyConfig::default() };
    let run = play_policy(policy, &source, &config, DEFAULT_ENUM_CAP)?;
    fs::write(&args.output, instance_to_json(&run.realized))
        .map_err(|e| Error::Argument(format!("cannot write {}: {e}", args.output.display())))?;
    println!(
        "exported realized instance to {} (value {}, optimum {}, ratio {})",
        args.output.display(),
        run.report.outcome.value,
        run.report.outcome.optimum,
        run.report.outcome.ratio,
    );
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Optimum(args) => cmd_optimum(args),
        Command::Lowerbound(args) => cmd_lowerbound(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Export(args) => cmd_export(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(&cli)));
    match outcome {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(err)) => {
            eprintln!("{err}");
            ExitCode::from(exit_code_for(&err))
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .map(|s| s.as_str())
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            eprintln!("internal assertion: {msg}");
            ExitCode::from(4)
        }
    }
}
