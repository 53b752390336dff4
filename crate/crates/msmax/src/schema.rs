//! JSON instance schema.
//!
//! Top level: `{n, T, bonus, evolution, stages: [{family, profit}]}` with
//! rationals carried as strings (`"p/q"`, plain integers, or decimal
//! literals) and sets as sorted 1-based index arrays. Serialization is
//! canonical: reduced rationals, sorted sets, fixed field order, so a
//! round-trip through a file is byte-stable.

use serde::{Deserialize, Serialize};

use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::family::{
    Evolution, FamilyKind, FeasibleFamily, MultistageInstance, ProfitFunction, ProfitKind,
    StageInstance,
};
use crate::scalar::{parse_scalar, scalar_string, Scalar};
use crate::set::ObjectSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: u32,
    #[serde(rename = "T")]
    pub horizon: usize,
    pub bonus: BonusModel,
    pub evolution: EvolutionTag,
    pub stages: Vec<StageFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvolutionTag {
    Ssfs,
    Ge,
}

impl From<Evolution> for EvolutionTag {
    fn from(e: Evolution) -> Self {
        match e {
            Evolution::Ssfs => EvolutionTag::Ssfs,
            Evolution::Ge => EvolutionTag::Ge,
        }
    }
}

impl From<EvolutionTag> for Evolution {
    fn from(e: EvolutionTag) -> Self {
        match e {
            EvolutionTag::Ssfs => Evolution::Ssfs,
            EvolutionTag::Ge => Evolution::Ge,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageFile {
    pub family: FamilyFile,
    pub profit: ProfitFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyFile {
    Explicit { sets: Vec<Vec<u32>> },
    AllSubsets,
    CardinalityAtMost { k: u32 },
    Knapsack { weights: Vec<String>, capacity: String },
    MatchingEdges { edges: Vec<(u32, u32)> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfitFile {
    Linear { weights: Vec<String> },
    Table { entries: Vec<TableEntry> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub set: Vec<u32>,
    pub value: String,
}

fn family_to_file<S: Scalar>(family: &FeasibleFamily<S>) -> FamilyFile {
    match family.kind() {
        FamilyKind::Explicit(sets) => FamilyFile::Explicit {
            sets: {
                let mut sorted = sets.clone();
                sorted.sort_by(|a, b| a.colex_cmp(b));
                sorted.iter().map(|s| s.members()).collect()
            },
        },
        FamilyKind::AllSubsets => FamilyFile::AllSubsets,
        FamilyKind::CardinalityAtMost(k) => FamilyFile::CardinalityAtMost { k: *k },
        FamilyKind::Knapsack { weights, capacity } => FamilyFile::Knapsack {
            weights: weights.iter().map(scalar_string).collect(),
            capacity: scalar_string(capacity),
        },
        FamilyKind::MatchingEdges { edges } => {
            FamilyFile::MatchingEdges { edges: edges.clone() }
        }
    }
}

fn family_from_file<S: Scalar>(
    file: &FamilyFile,
    n: u32,
    at: usize,
) -> Result<FeasibleFamily<S>> {
    let context = |e: Error| Error::Schema(format!("stage {at}: {e}"));
    let kind = match file {
        FamilyFile::Explicit { sets } => FamilyKind::Explicit(
            sets.iter()
                .map(|members| ObjectSet::from_members(n, members.iter().copied()))
                .collect::<Result<Vec<_>>>()
                .map_err(context)?,
        ),
        FamilyFile::AllSubsets => FamilyKind::AllSubsets,
        FamilyFile::CardinalityAtMost { k } => FamilyKind::CardinalityAtMost(*k),
        FamilyFile::Knapsack { weights, capacity } => FamilyKind::Knapsack {
            weights: weights
                .iter()
                .map(|w| parse_scalar(w))
                .collect::<Result<Vec<S>>>()
                .map_err(context)?,
            capacity: parse_scalar(capacity).map_err(context)?,
        },
        FamilyFile::MatchingEdges { edges } => {
            FamilyKind::MatchingEdges { edges: edges.clone() }
        }
    };
    FeasibleFamily::new(n, kind).map_err(context)
}

fn profit_to_file<S: Scalar>(profit: &ProfitFunction<S>) -> ProfitFile {
    match profit.kind() {
        ProfitKind::Linear(weights) => {
            ProfitFile::Linear { weights: weights.iter().map(scalar_string).collect() }
        }
        ProfitKind::Table(map) => ProfitFile::Table {
            entries: map
                .iter()
                .map(|(set, value)| TableEntry {
                    set: set.members(),
                    value: scalar_string(value),
                })
                .collect(),
        },
    }
}

fn profit_from_file<S: Scalar>(
    file: &ProfitFile,
    n: u32,
    at: usize,
) -> Result<ProfitFunction<S>> {
    let context = |e: Error| Error::Schema(format!("stage {at}: {e}"));
    match file {
        ProfitFile::Linear { weights } => {
            let weights = weights
                .iter()
                .map(|w| parse_scalar(w))
                .collect::<Result<Vec<S>>>()
                .map_err(context)?;
            ProfitFunction::linear(n, weights).map_err(context)
        }
        ProfitFile::Table { entries } => {
            let entries = entries
                .iter()
                .map(|e| {
                    Ok((
                        ObjectSet::from_members(n, e.set.iter().copied())?,
                        parse_scalar::<S>(&e.value)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()
                .map_err(context)?;
            ProfitFunction::table(n, entries).map_err(context)
        }
    }
}

pub fn instance_to_file<S: Scalar>(instance: &MultistageInstance<S>) -> InstanceFile {
    InstanceFile {
        n: instance.n,
        horizon: instance.horizon(),
        bonus: instance.bonus,
        evolution: instance.evolution.into(),
        stages: instance
            .stages
            .iter()
            .map(|s| StageFile {
                family: family_to_file(&s.family),
                profit: profit_to_file(&s.profit),
            })
            .collect(),
    }
}

pub fn instance_from_file<S: Scalar>(file: &InstanceFile) -> Result<MultistageInstance<S>> {
    if file.stages.len() != file.horizon {
        return Err(Error::Schema(format!(
            "T = {} but {} stages present",
            file.horizon,
            file.stages.len()
        )));
    }
    let stages = file
        .stages
        .iter()
        .enumerate()
        .map(|(idx, stage)| {
            let at = idx + 1;
            let family = family_from_file(&stage.family, file.n, at)?;
            let profit = profit_from_file(&stage.profit, file.n, at)?;
            StageInstance::new(family, profit)
                .map_err(|e| Error::Schema(format!("stage {at}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    MultistageInstance::new(file.n, file.bonus, file.evolution.into(), stages)
        .map_err(|e| Error::Schema(e.to_string()))
}

pub fn instance_to_json<S: Scalar>(instance: &MultistageInstance<S>) -> String {
    serde_json::to_string_pretty(&instance_to_file(instance)).expect("schema types serialize")
}

pub fn instance_from_json<S: Scalar>(text: &str) -> Result<MultistageInstance<S>> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| {
        Error::Schema(format!(
            "invalid instance JSON at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    instance_from_file(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{FamilyGen, ProfitGen, RandomInstanceSpec};
    use crate::Value;
    use proptest::prelude::*;

    #[test]
    fn parses_a_handwritten_instance() {
        let text = r#"{
            "n": 3, "T": 2, "bonus": "hamming", "evolution": "ssfs",
            "stages": [
                {"family": {"kind": "explicit", "sets": [[], [1], [2, 3]]},
                 "profit": {"kind": "linear", "weights": ["0", "0", "0"]}},
                {"family": {"kind": "explicit", "sets": [[], [1], [2, 3]]},
                 "profit": {"kind": "table", "entries": [{"set": [2, 3], "value": "5/2"}]}}
            ]
        }"#;
        let inst = instance_from_json::<Value>(text).unwrap();
        assert_eq!(inst.n, 3);
        assert_eq!(inst.horizon(), 2);
        let set = ObjectSet::from_members(3, [2, 3]).unwrap();
        assert_eq!(inst.stage(2).profit.eval(&set), Value::from_frac(5, 2));
    }

    #[test]
    fn rejects_mismatched_horizon_and_bad_rationals() {
        let bad_t = r#"{"n": 1, "T": 2, "bonus": "hamming", "evolution": "ge", "stages": []}"#;
        assert!(matches!(instance_from_json::<Value>(bad_t), Err(Error::Schema(_))));

        let bad_q = r#"{
            "n": 1, "T": 1, "bonus": "hamming", "evolution": "ge",
            "stages": [{"family": {"kind": "all_subsets"},
                        "profit": {"kind": "linear", "weights": ["1/0"]}}]
        }"#;
        assert!(matches!(instance_from_json::<Value>(bad_q), Err(Error::Schema(_))));

        let not_json = "{";
        let err = instance_from_json::<Value>(not_json).unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn round_trip_is_identity_and_stable(
            seed in 0u64..500,
            n in 1u32..=5,
            horizon in 1usize..=4,
            ge in any::<bool>(),
        ) {
            let spec = RandomInstanceSpec {
                evolution: if ge { Evolution::Ge } else { Evolution::Ssfs },
                bonus: if seed % 2 == 0 {
                    BonusModel::Hamming
                } else {
                    BonusModel::Intersection
                },
                n,
                horizon,
                family_gen: FamilyGen::Mixed,
                profit_gen: ProfitGen::Mixed,
                seed,
            };
            let instance = spec.generate::<Value>().unwrap();
            let text = instance_to_json(&instance);
            let back = instance_from_json::<Value>(&text).unwrap();
            prop_assert_eq!(&back, &instance);
            prop_assert_eq!(instance_to_json(&back), text);
        }
    }
}
