//! Exact offline optimum over the whole horizon.
//!
//! This is a layered longest-path computation: layer t holds the feasible
//! sets of stage t, arcs carry `p_{t+1}(S') + b(S, S')`. Suffix values are
//! computed backwards; the optimal sequence is then rebuilt forwards,
//! choosing at every step the most-preferred set (oracle order) among those
//! that still attain the optimum. That makes the reconstructed sequence the
//! stepwise-lexicographically best optimal one, and deterministic.

use crate::error::{Error, Result};
use crate::family::MultistageInstance;
use crate::oracle::argmax_profit;
use crate::scalar::Scalar;
use crate::set::ObjectSet;
use crate::value::{sequence_value, SolutionSequence};

#[derive(Debug, Clone)]
pub struct OfflineResult<S: Scalar> {
    pub optimum_value: S,
    pub optimal_sequence: SolutionSequence,
}

/// Exact maximum of the sequence value over all feasible sequences.
pub fn offline_optimum<S: Scalar>(
    inst: &MultistageInstance<S>,
    cap: usize,
) -> Result<OfflineResult<S>> {
    let horizon = inst.horizon();
    let layers: Vec<Vec<ObjectSet>> = inst
        .stages
        .iter()
        .map(|s| s.family.enumerate(cap))
        .collect::<Result<_>>()?;

    let mut arcs: usize = 0;
    for w in layers.windows(2) {
        arcs = arcs.saturating_add(w[0].len().saturating_mul(w[1].len()));
        if arcs > cap.saturating_mul(64) {
            return Err(Error::Capacity(format!(
                "layered graph needs {arcs}+ transitions, beyond the configured budget"
            )));
        }
    }

    // suffix[t][j] = best value of steps t..=T given layer-t set j
    // (profit of step t included, bonus into step t excluded).
    let mut suffix: Vec<Vec<S>> = vec![Vec::new(); horizon];
    suffix[horizon - 1] = layers[horizon - 1]
        .iter()
        .map(|s| inst.stage(horizon).profit.eval(s))
        .collect();
    for t in (0..horizon - 1).rev() {
        let mut row = Vec::with_capacity(layers[t].len());
        for s in &layers[t] {
            let own = inst.stage(t + 1).profit.eval(s);
            let mut best: Option<S> = None;
            for (k, nxt) in layers[t + 1].iter().enumerate() {
                let via = inst.bonus.eval::<S>(s, nxt)? + suffix[t + 1][k].clone();
                if best.as_ref().map_or(true, |b| &via > b) {
                    best = Some(via);
                }
            }
            let tail = best.ok_or_else(|| Error::Internal("empty layer in offline dp".into()))?;
            row.push(own + tail);
        }
        suffix[t] = row;
    }

    let optimum = suffix[0]
        .iter()
        .cloned()
        .max()
        .ok_or_else(|| Error::Internal("empty first layer".into()))?;

    // Forward reconstruction with the oracle preference at each step.
    let mut steps: Vec<ObjectSet> = Vec::with_capacity(horizon);
    let pick = |candidates: Vec<(usize, &ObjectSet)>| -> usize {
        let mut best = candidates[0];
        for cand in &candidates[1..] {
            if cand.1.preference_cmp(best.1) == std::cmp::Ordering::Less {
                best = *cand;
            }
        }
        best.0
    };
    let first: Vec<(usize, &ObjectSet)> = layers[0]
        .iter()
        .enumerate()
        .filter(|(j, _)| suffix[0][*j] == optimum)
        .map(|(j, s)| (j, s))
        .collect();
    let mut at = pick(first);
    steps.push(layers[0][at].clone());
    for t in 0..horizon - 1 {
        let current = &layers[t][at];
        // Remaining value to realize from step t+1 on, given `current`.
        let target = suffix[t][at].clone() - inst.stage(t + 1).profit.eval(current);
        let mut next_candidates = Vec::new();
        for (k, nxt) in layers[t + 1].iter().enumerate() {
            if inst.bonus.eval::<S>(current, nxt)? + suffix[t + 1][k].clone() == target {
                next_candidates.push((k, nxt));
            }
        }
        if next_candidates.is_empty() {
            return Err(Error::Internal("offline reconstruction lost the optimum".into()));
        }
        at = pick(next_candidates);
        steps.push(layers[t + 1][at].clone());
    }

    let optimal_sequence = SolutionSequence::new(steps)?;
    debug_assert_eq!(sequence_value(inst, &optimal_sequence)?.total, optimum);
    Ok(OfflineResult { optimum_value: optimum, optimal_sequence })
}

/// Crude certificate `Σ_t p_t(S*_t) + n (T-1)`: per-step optima plus the
/// maximum possible bonus per transition. Always at least the optimum.
pub fn offline_upper_bound<S: Scalar>(inst: &MultistageInstance<S>, cap: usize) -> Result<S> {
    let mut total = S::zero();
    for stage in &inst.stages {
        total = total + argmax_profit(stage, cap)?.1;
    }
    let transitions = (inst.horizon() - 1) as i64;
    Ok(total + S::from_int(inst.n as i64) * S::from_int(transitions))
}
