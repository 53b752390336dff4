//! Feasible families, profit functions and multistage instances.
//!
//! A family always contains the empty set. Enumeration materializes the
//! family in a canonical order (mask order, empty set first) and is the
//! single source of truth for the oracles; structured kinds additionally
//! expose a direct membership test that the tests cross-check against
//! enumeration.

use std::collections::BTreeMap;

use crate::bonus::BonusModel;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::set::ObjectSet;

/// Default cap on materialized family sizes (number of sets).
pub const DEFAULT_ENUM_CAP: usize = 1 << 20;

/// How the stream of stages may evolve over time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evolution {
    /// Static set of feasible solutions: only profits change.
    Ssfs,
    /// General evolution: families and profits both change.
    Ge,
}

impl Evolution {
    pub fn tag(self) -> &'static str {
        match self {
            Evolution::Ssfs => "ssfs",
            Evolution::Ge => "ge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind<S: Scalar> {
    /// Explicit list of feasible sets; must contain the empty set.
    Explicit(Vec<ObjectSet>),
    AllSubsets,
    CardinalityAtMost(u32),
    /// Nonnegative weights per object and a nonnegative capacity.
    Knapsack { weights: Vec<S>, capacity: S },
    /// Objects are edges of a graph; a set is feasible iff it is a matching.
    MatchingEdges { edges: Vec<(u32, u32)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleFamily<S: Scalar> {
    n: u32,
    kind: FamilyKind<S>,
}

impl<S: Scalar> FeasibleFamily<S> {
    pub fn new(n: u32, kind: FamilyKind<S>) -> Result<Self> {
        match &kind {
            FamilyKind::Explicit(sets) => {
                let mut seen: Vec<&ObjectSet> = Vec::new();
                let mut has_empty = false;
                for s in sets {
                    if s.n() != n {
                        return Err(Error::Argument(format!(
                            "explicit family set {s} has n={} but family has n={n}",
                            s.n()
                        )));
                    }
                    if seen.iter().any(|t| *t == s) {
                        return Err(Error::Argument(format!("duplicate set {s} in explicit family")));
                    }
                    seen.push(s);
                    has_empty |= s.is_empty();
                }
                if !has_empty {
                    return Err(Error::Argument("explicit family must contain the empty set".into()));
                }
            }
            FamilyKind::Knapsack { weights, capacity } => {
                if weights.len() != n as usize {
                    return Err(Error::Argument(format!(
                        "knapsack needs {n} weights, got {}",
                        weights.len()
                    )));
                }
                if weights.iter().any(|w| w < &S::zero()) || capacity < &S::zero() {
                    return Err(Error::Argument("knapsack weights and capacity must be nonnegative".into()));
                }
            }
            FamilyKind::MatchingEdges { edges } => {
                if edges.len() != n as usize {
                    return Err(Error::Argument(format!(
                        "matching family over {n} objects needs {n} edges, got {}",
                        edges.len()
                    )));
                }
                if edges.iter().any(|(u, v)| u == v) {
                    return Err(Error::Argument("self-loop edge in matching family".into()));
                }
            }
            FamilyKind::AllSubsets | FamilyKind::CardinalityAtMost(_) => {}
        }
        Ok(FeasibleFamily { n, kind })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> &FamilyKind<S> {
        &self.kind
    }

    /// Direct membership test, independent of enumeration.
    pub fn contains(&self, set: &ObjectSet) -> bool {
        if set.n() != self.n {
            return false;
        }
        match &self.kind {
            FamilyKind::Explicit(sets) => sets.iter().any(|s| s == set),
            FamilyKind::AllSubsets => true,
            FamilyKind::CardinalityAtMost(k) => set.len() <= *k as usize,
            FamilyKind::Knapsack { weights, capacity } => {
                let mut total = S::zero();
                for i in set.iter() {
                    total = total + weights[(i - 1) as usize].clone();
                }
                total <= *capacity
            }
            FamilyKind::MatchingEdges { edges } => {
                let mut used: Vec<u32> = Vec::new();
                for i in set.iter() {
                    let (u, v) = edges[(i - 1) as usize];
                    if used.contains(&u) || used.contains(&v) {
                        return false;
                    }
                    used.push(u);
                    used.push(v);
                }
                true
            }
        }
    }

    /// Materializes every feasible set exactly once, empty set first, in
    /// canonical mask order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<ObjectSet>> {
        let n = self.n;
        match &self.kind {
            FamilyKind::Explicit(sets) => {
                if sets.len() > cap {
                    return Err(self.cap_error(sets.len(), cap));
                }
                let mut out = sets.clone();
                out.sort_by(|a, b| a.colex_cmp(b));
                Ok(out)
            }
            FamilyKind::AllSubsets => {
                if n > 20 {
                    return Err(Error::Capacity(format!(
                        "all-subsets family over n={n} objects cannot be enumerated (limit n=20)"
                    )));
                }
                let count = 1usize << n;
                if count > cap {
                    return Err(self.cap_error(count, cap));
                }
                Ok((0..count as u64).map(|m| ObjectSet::from_mask(n, m)).collect())
            }
            _ => {
                // Structured kinds: walk masks in order for small n, which
                // both filters and yields sorted output.
                if n > 20 {
                    return Err(Error::Capacity(format!(
                        "structured family over n={n} objects is beyond the enumeration regime"
                    )));
                }
                let mut out = Vec::new();
                for m in 0..(1u64 << n) {
                    let set = ObjectSet::from_mask(n, m);
                    if self.contains(&set) {
                        if out.len() == cap {
                            return Err(self.cap_error(out.len() + 1, cap));
                        }
                        out.push(set);
                    }
                }
                Ok(out)
            }
        }
    }

    fn cap_error(&self, need: usize, cap: usize) -> Error {
        Error::Capacity(format!(
            "family enumeration needs at least {need} sets, cap is {cap}"
        ))
    }

    /// True iff the family is downward closed: every subset of a feasible
    /// set is feasible. Checked by single-element deletions, which suffices
    /// by induction.
    pub fn is_subset_feasible(&self, cap: usize) -> Result<bool> {
        let sets = self.enumerate(cap)?;
        for s in &sets {
            for i in s.iter() {
                let mut smaller = ObjectSet::empty(self.n);
                for j in s.iter().filter(|&j| j != i) {
                    smaller.insert(j);
                }
                if !self.contains(&smaller) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfitKind<S: Scalar> {
    /// Profits listed per set; every unlisted set has profit 0.
    Table(BTreeMap<ObjectSet, S>),
    /// Additive profits from nonnegative per-object weights.
    Linear(Vec<S>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfitFunction<S: Scalar> {
    n: u32,
    kind: ProfitKind<S>,
}

impl<S: Scalar> ProfitFunction<S> {
    pub fn zero(n: u32) -> Self {
        ProfitFunction { n, kind: ProfitKind::Table(BTreeMap::new()) }
    }

    pub fn linear(n: u32, weights: Vec<S>) -> Result<Self> {
        if weights.len() != n as usize {
            return Err(Error::Argument(format!(
                "linear profit needs {n} weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| w < &S::zero()) {
            return Err(Error::Argument("profit weights must be nonnegative".into()));
        }
        Ok(ProfitFunction { n, kind: ProfitKind::Linear(weights) })
    }

    pub fn table(n: u32, entries: impl IntoIterator<Item = (ObjectSet, S)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (set, value) in entries {
            if set.n() != n {
                return Err(Error::Argument(format!(
                    "table profit entry {set} has n={}, expected {n}",
                    set.n()
                )));
            }
            if value < S::zero() {
                return Err(Error::Argument(format!("negative profit for {set}")));
            }
            map.insert(set, value);
        }
        Ok(ProfitFunction { n, kind: ProfitKind::Table(map) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> &ProfitKind<S> {
        &self.kind
    }

    pub fn eval(&self, set: &ObjectSet) -> S {
        debug_assert_eq!(set.n(), self.n);
        match &self.kind {
            ProfitKind::Table(map) => map.get(set).cloned().unwrap_or_else(S::zero),
            ProfitKind::Linear(weights) => {
                let mut total = S::zero();
                for i in set.iter() {
                    total = total + weights[(i - 1) as usize].clone();
                }
                total
            }
        }
    }

    /// Checks `p(S ∩ S') + p(S ∪ S') <= p(S) + p(S')` over all pairs of
    /// subsets of the ground set. Linear profits are additive and pass
    /// without enumeration. Returns the witnessing pair on failure.
    pub fn submodularity_witness(&self) -> Result<Option<(ObjectSet, ObjectSet)>> {
        if matches!(self.kind, ProfitKind::Linear(_)) {
            return Ok(None);
        }
        let n = self.n;
        if n > 12 {
            return Err(Error::Capacity(format!(
                "submodularity check enumerates all subset pairs; n={n} exceeds 12"
            )));
        }
        let count = 1u64 << n;
        let eval_mask = |m: u64| self.eval(&ObjectSet::from_mask(n, m));
        let values: Vec<S> = (0..count).map(eval_mask).collect();
        for a in 0..count {
            for b in (a + 1)..count {
                // Comparable pairs satisfy the inequality with equality.
                if a & b == a || a & b == b {
                    continue;
                }
                let lhs = values[(a & b) as usize].clone() + values[(a | b) as usize].clone();
                let rhs = values[a as usize].clone() + values[b as usize].clone();
                if lhs > rhs {
                    return Ok(Some((ObjectSet::from_mask(n, a), ObjectSet::from_mask(n, b))));
                }
            }
        }
        Ok(None)
    }

    pub fn is_submodular(&self) -> Result<bool> {
        Ok(self.submodularity_witness()?.is_none())
    }
}

/// One time step: a feasible family plus its profit function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageInstance<S: Scalar> {
    pub family: FeasibleFamily<S>,
    pub profit: ProfitFunction<S>,
}

impl<S: Scalar> StageInstance<S> {
    pub fn new(family: FeasibleFamily<S>, profit: ProfitFunction<S>) -> Result<Self> {
        if family.n() != profit.n() {
            return Err(Error::Argument(format!(
                "family n={} and profit n={} disagree",
                family.n(),
                profit.n()
            )));
        }
        Ok(StageInstance { family, profit })
    }

    pub fn n(&self) -> u32 {
        self.family.n()
    }
}

/// A full multistage instance over a fixed horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultistageInstance<S: Scalar> {
    pub n: u32,
    pub bonus: BonusModel,
    pub evolution: Evolution,
    pub stages: Vec<StageInstance<S>>,
}

impl<S: Scalar> MultistageInstance<S> {
    pub fn new(
        n: u32,
        bonus: BonusModel,
        evolution: Evolution,
        stages: Vec<StageInstance<S>>,
    ) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::Argument("instance needs at least one stage".into()));
        }
        for (idx, stage) in stages.iter().enumerate() {
            if stage.n() != n {
                return Err(Error::Argument(format!(
                    "stage {} has n={}, instance has n={n}",
                    idx + 1,
                    stage.n()
                )));
            }
        }
        if evolution == Evolution::Ssfs {
            let first = &stages[0].family;
            if stages.iter().any(|s| &s.family != first) {
                return Err(Error::Argument(
                    "ssfs instance must use the same feasible family at every stage".into(),
                ));
            }
        }
        Ok(MultistageInstance { n, bonus, evolution, stages })
    }

    pub fn horizon(&self) -> usize {
        self.stages.len()
    }

    pub fn stage(&self, t: usize) -> &StageInstance<S> {
        &self.stages[t - 1]
    }

    pub fn model_tag(&self) -> String {
        format!("{}-{}", self.evolution.tag(), self.bonus.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Value;

    fn set(n: u32, m: &[u32]) -> ObjectSet {
        ObjectSet::from_members(n, m.iter().copied()).unwrap()
    }

    fn val(v: i64) -> Value {
        Value::from_int(v)
    }

    #[test]
    fn enumerate_all_subsets_n2() {
        let fam: FeasibleFamily<Value> = FeasibleFamily::new(2, FamilyKind::AllSubsets).unwrap();
        let sets = fam.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(sets, vec![set(2, &[]), set(2, &[1]), set(2, &[2]), set(2, &[1, 2])]);
    }

    #[test]
    fn enumerate_cardinality_one_n3() {
        let fam: FeasibleFamily<Value> =
            FeasibleFamily::new(3, FamilyKind::CardinalityAtMost(1)).unwrap();
        let sets = fam.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(sets, vec![set(3, &[]), set(3, &[1]), set(3, &[2]), set(3, &[3])]);
    }

    #[test]
    fn enumerate_knapsack_excludes_overweight() {
        let fam = FeasibleFamily::new(
            2,
            FamilyKind::Knapsack { weights: vec![val(1), val(1)], capacity: val(1) },
        )
        .unwrap();
        let sets = fam.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(sets, vec![set(2, &[]), set(2, &[1]), set(2, &[2])]);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let fam: FeasibleFamily<Value> = FeasibleFamily::new(10, FamilyKind::AllSubsets).unwrap();
        assert!(matches!(fam.enumerate(100), Err(Error::Capacity(_))));
        let wide: FeasibleFamily<Value> = FeasibleFamily::new(30, FamilyKind::AllSubsets).unwrap();
        assert!(matches!(wide.enumerate(DEFAULT_ENUM_CAP), Err(Error::Capacity(_))));
    }

    #[test]
    fn explicit_family_requires_empty_set_and_no_duplicates() {
        let missing: Result<FeasibleFamily<Value>> =
            FeasibleFamily::new(2, FamilyKind::Explicit(vec![set(2, &[1])]));
        assert!(missing.is_err());
        let dup: Result<FeasibleFamily<Value>> = FeasibleFamily::new(
            2,
            FamilyKind::Explicit(vec![set(2, &[]), set(2, &[1]), set(2, &[1])]),
        );
        assert!(dup.is_err());
    }

    #[test]
    fn subset_feasibility_verdicts() {
        let knap = FeasibleFamily::new(
            3,
            FamilyKind::Knapsack { weights: vec![val(2), val(1), val(3)], capacity: val(3) },
        )
        .unwrap();
        assert!(knap.is_subset_feasible(DEFAULT_ENUM_CAP).unwrap());

        let holey: FeasibleFamily<Value> = FeasibleFamily::new(
            2,
            FamilyKind::Explicit(vec![set(2, &[]), set(2, &[1, 2])]),
        )
        .unwrap();
        assert!(!holey.is_subset_feasible(DEFAULT_ENUM_CAP).unwrap());

        let all: FeasibleFamily<Value> = FeasibleFamily::new(4, FamilyKind::AllSubsets).unwrap();
        assert!(all.is_subset_feasible(DEFAULT_ENUM_CAP).unwrap());
    }

    #[test]
    fn matching_membership_matches_brute_force() {
        // Path graph 1-2-3-4 plus chord (1,3): edges indexed 1..=4.
        let fam: FeasibleFamily<Value> = FeasibleFamily::new(
            4,
            FamilyKind::MatchingEdges { edges: vec![(1, 2), (2, 3), (3, 4), (1, 3)] },
        )
        .unwrap();
        let sets = fam.enumerate(DEFAULT_ENUM_CAP).unwrap();
        for m in 0u64..16 {
            let s = ObjectSet::from_mask(4, m);
            let brute = {
                let mems = s.members();
                let mut ok = true;
                for (a, &i) in mems.iter().enumerate() {
                    for &j in &mems[a + 1..] {
                        let (u1, v1) = [(1, 2), (2, 3), (3, 4), (1, 3)][(i - 1) as usize];
                        let (u2, v2) = [(1, 2), (2, 3), (3, 4), (1, 3)][(j - 1) as usize];
                        if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                            ok = false;
                        }
                    }
                }
                ok
            };
            assert_eq!(fam.contains(&s), brute, "set {s}");
            assert_eq!(sets.contains(&s), brute);
        }
    }

    #[test]
    fn linear_profit_is_submodular() {
        let p = ProfitFunction::linear(3, vec![val(1), val(2), val(0)]).unwrap();
        assert!(p.is_submodular().unwrap());
    }

    #[test]
    fn supermodular_table_is_rejected_with_witness() {
        let p = ProfitFunction::table(
            2,
            [(set(2, &[1]), val(0)), (set(2, &[2]), val(0)), (set(2, &[1, 2]), val(1))],
        )
        .unwrap();
        let witness = p.submodularity_witness().unwrap();
        assert_eq!(witness, Some((set(2, &[1]), set(2, &[2]))));
    }

    #[test]
    fn coverage_style_table_is_submodular() {
        // p(S) = min(|S|, 1) over n = 3.
        let entries: Vec<(ObjectSet, Value)> = (1u64..8)
            .map(|m| (ObjectSet::from_mask(3, m), val(1)))
            .collect();
        let p = ProfitFunction::table(3, entries).unwrap();
        assert!(p.is_submodular().unwrap());
    }

    #[test]
    fn ssfs_requires_identical_families() {
        let fam: FeasibleFamily<Value> = FeasibleFamily::new(2, FamilyKind::AllSubsets).unwrap();
        let other: FeasibleFamily<Value> =
            FeasibleFamily::new(2, FamilyKind::CardinalityAtMost(1)).unwrap();
        let s1 = StageInstance::new(fam.clone(), ProfitFunction::zero(2)).unwrap();
        let s2 = StageInstance::new(other, ProfitFunction::zero(2)).unwrap();
        let bad = MultistageInstance::new(
            2,
            BonusModel::Hamming,
            Evolution::Ssfs,
            vec![s1.clone(), s2],
        );
        assert!(bad.is_err());
        let ok = MultistageInstance::new(
            2,
            BonusModel::Hamming,
            Evolution::Ssfs,
            vec![s1.clone(), s1],
        );
        assert!(ok.is_ok());
    }
}
