//! Exact rational parameterizations used by the asymptotic adversaries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Profit constants for the single-item phase game: the phase-start profit
/// `beta`, the mid-phase profit `gamma`, and the induced ratio
/// `alpha = 2 / beta ≈ 1.696`. The identities `alpha = 1 + gamma = 2 / beta`
/// hold exactly in the returned rationals; only `beta` itself approximates
/// the irrational root.
#[derive(Debug, Clone)]
pub struct PhaseConstants<S: Scalar> {
    pub beta: S,
    pub gamma: S,
    pub alpha: S,
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Equalizing the phase ratios (`1 + (sqrt(4b+1) - 1)/2 = 2/b`) reduces to
/// the cubic below; its single real root sits between 1 and 2.
fn cubic(beta: &BigRational) -> BigRational {
    beta * beta * beta + big(2) * beta - big(4)
}

/// Best rational approximation of the equalizing root with denominator at
/// most `max_denom`; the approximation error is below `1/max_denom`.
pub fn phase_constants_1696<S: Scalar>(max_denom: u64) -> Result<PhaseConstants<S>> {
    if max_denom < 8 {
        return Err(Error::Precision(format!(
            "denominator bound {max_denom} cannot separate the root from its neighbours"
        )));
    }
    if max_denom > (1 << 40) {
        return Err(Error::Precision(format!(
            "denominator bound {max_denom} exceeds the supported range (2^40)"
        )));
    }
    // Bisect well past the target so the convergent step dominates the error.
    let mut lo = big(1);
    let mut hi = big(2);
    let bound = BigRational::new(BigInt::one(), BigInt::from(max_denom));
    let width_goal = &bound * &bound / big(8);
    while (&hi - &lo) > width_goal {
        let mid = (&lo + &hi) / big(2);
        if cubic(&mid) < BigRational::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = (&lo + &hi) / big(2);
    let (num, den) = bounded_convergent(&mid, max_denom)?;
    let beta_approx = BigRational::new(BigInt::from(num), BigInt::from(den));
    if (&beta_approx - &mid).abs() > bound {
        return Err(Error::Precision(format!(
            "no denominator-{max_denom} rational lies within 1/{max_denom} of the root"
        )));
    }
    // alpha = 2q/p and gamma = (2q - p)/p keep the defining identities exact.
    let beta = S::from_frac(num, den);
    let alpha = S::from_frac(2 * den, num);
    let gamma = S::from_frac(2 * den - num, num);
    Ok(PhaseConstants { beta, gamma, alpha })
}

/// Last continued-fraction convergent of `x` with denominator <= `max_denom`.
fn bounded_convergent(x: &BigRational, max_denom: u64) -> Result<(i64, i64)> {
    let limit = BigInt::from(max_denom);
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    let (mut h0, mut h1) = (BigInt::one(), BigInt::zero()); // numerators
    let (mut k0, mut k1) = (BigInt::zero(), BigInt::one()); // denominators
    let mut first = true;
    loop {
        let (a, r) = p.div_rem(&q);
        let h = &a * &h0 + &h1;
        let k = &a * &k0 + &k1;
        if !first && k > limit {
            break;
        }
        first = false;
        h1 = h0;
        k1 = k0;
        h0 = h;
        k0 = k;
        if r.is_zero() {
            break;
        }
        p = q;
        q = r;
    }
    let num = h0
        .to_i64()
        .ok_or_else(|| Error::Precision("convergent numerator exceeds i64".into()))?;
    let den = k0
        .to_i64()
        .ok_or_else(|| Error::Precision("convergent denominator exceeds i64".into()))?;
    if den <= 0 {
        return Err(Error::Internal("convergent with nonpositive denominator".into()));
    }
    Ok((num, den))
}

/// The row-size schedule for the doubling lower-bound game with the
/// intersection bonus: exact rationals from the recurrence
/// `a_t = (4 - eps) a_{t-1} - sum_{j<t} a_j`, stopped at the first headroom
/// value `b_t <= 1`, then two repeats of the final element; everything is
/// scaled integral by the common denominator.
#[derive(Debug, Clone)]
pub struct RowSchedule {
    /// Integer row sizes a_1..a_T, nondecreasing, last three equal.
    pub sizes: Vec<BigInt>,
    /// Headroom sequence b_t tracked during generation (one per generated
    /// prefix element, strictly decreasing while >= 1).
    pub headroom: Vec<BigRational>,
    /// 4 - eps as an exact rational.
    pub growth: BigRational,
}

impl RowSchedule {
    pub fn horizon(&self) -> usize {
        self.sizes.len()
    }

    /// `(sum of the first t sizes) / size_{t-1}`: the ratio a confirming
    /// policy is forced into at time t (capped sum for the final step).
    pub fn confirm_ratio(&self, t: usize) -> BigRational {
        let horizon = self.sizes.len();
        debug_assert!((2..=horizon).contains(&t));
        let upto = if t == horizon { horizon - 1 } else { t };
        let total: BigInt = self.sizes[..upto].iter().cloned().sum();
        BigRational::new(total, self.sizes[t - 2].clone())
    }
}

pub fn row_schedule(eps_num: i64, eps_den: i64) -> Result<RowSchedule> {
    if eps_num <= 0 || eps_den <= 0 || eps_num > eps_den {
        return Err(Error::Argument(format!(
            "epsilon must lie in (0, 1]; got {eps_num}/{eps_den}"
        )));
    }
    let growth = big(4) - BigRational::new(BigInt::from(eps_num), BigInt::from(eps_den));
    let mut values: Vec<BigRational> = vec![BigRational::one()];
    let mut running_sum = BigRational::one();
    let mut headroom: Vec<BigRational> = Vec::new();
    const MAX_STEPS: usize = 4096;
    loop {
        let last = values.last().expect("nonempty").clone();
        let slack = (&growth * &last - &running_sum) / &last;
        if let Some(prev) = headroom.last() {
            // Monotone descent while above 1; the construction relies on it.
            if prev >= &BigRational::one() && &slack >= prev {
                return Err(Error::Internal(format!(
                    "headroom failed to decrease: {prev} then {slack}"
                )));
            }
        }
        headroom.push(slack.clone());
        if slack <= BigRational::one() {
            break;
        }
        if values.len() >= MAX_STEPS {
            return Err(Error::Capacity(format!(
                "row schedule did not terminate within {MAX_STEPS} steps"
            )));
        }
        let next = &growth * &last - &running_sum;
        running_sum += &next;
        values.push(next);
    }
    let last = values.last().expect("nonempty").clone();
    values.push(last.clone());
    values.push(last);

    let mut denom_lcm = BigInt::one();
    for v in &values {
        denom_lcm = denom_lcm.lcm(v.denom());
    }
    let scale = BigRational::from_integer(denom_lcm);
    let sizes = values
        .iter()
        .map(|v| {
            let scaled = v * &scale;
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    Ok(RowSchedule { sizes, headroom, growth })
}
