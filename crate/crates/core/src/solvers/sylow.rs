//! Feasible orders for the normalizer of a Sylow subgroup.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SolverError;
use crate::arith::{big_divisors, factorize_big, is_prime_u64, valuation};
use crate::cyclonum::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowProblem {
    pub name: String,
    pub group_order: BigInt,
    pub p: u64,
    pub sylow_order: BigInt,
    pub must_divide: Option<BigInt>,
    pub must_be_divisible_by: Option<BigInt>,
    pub strict_lower_bound: Option<BigInt>,
    /// Require `N < |G|`, i.e. more than one Sylow subgroup.
    pub proper: bool,
    /// Pre-congruence count stated by the source; only compared, never used to filter.
    pub claimed_pre_congruence: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowResult {
    /// Orders passing every divisibility and bound constraint, ascending.
    pub pre_congruence: Vec<BigInt>,
    /// The subset with `|G|/N ≡ 1 (mod p)`.
    pub feasible: Vec<BigInt>,
}

impl SylowProblem {
    pub fn new(name: &str, group_order: BigInt, p: u64) -> Self {
        let sylow_order = BigInt::from(p).pow(valuation(&group_order, p));
        SylowProblem {
            name: name.to_string(),
            group_order,
            p,
            sylow_order,
            must_divide: None,
            must_be_divisible_by: None,
            strict_lower_bound: None,
            proper: false,
            claimed_pre_congruence: None,
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidProblem(format!("{}: {m}", self.name)));
        if !is_prime_u64(self.p) {
            return bad(format!("{} is not prime", self.p));
        }
        if self.group_order <= BigInt::zero() {
            return bad("group order must be positive".into());
        }
        let exact = BigInt::from(self.p).pow(valuation(&self.group_order, self.p));
        if self.sylow_order != exact {
            return bad(format!(
                "sylow order {} is not the {}-part {} of the group order",
                self.sylow_order, self.p, exact
            ));
        }
        for (label, v) in [
            ("must_divide", &self.must_divide),
            ("must_be_divisible_by", &self.must_be_divisible_by),
        ] {
            if let Some(v) = v {
                if *v <= BigInt::zero() {
                    return bad(format!("{label} must be positive"));
                }
            }
        }
        Ok(())
    }

    fn admits(&self, n: &BigInt) -> bool {
        n.is_positive()
            && (n % &self.sylow_order).is_zero()
            && (&self.group_order % n).is_zero()
            && self
                .must_divide
                .as_ref()
                .map_or(true, |m| (m % n).is_zero())
            && self
                .must_be_divisible_by
                .as_ref()
                .map_or(true, |d| (n % d).is_zero())
            && self.strict_lower_bound.as_ref().map_or(true, |b| n > b)
            && (!self.proper || *n != self.group_order)
    }

    /// Sylow's congruence for a candidate normalizer order.
    pub fn congruence_holds(&self, n: &BigInt) -> bool {
        let count = &self.group_order / n;
        count.mod_floor(&BigInt::from(self.p)).is_one()
    }
}

pub fn sylow_feasible(problem: &SylowProblem) -> Result<SylowResult, SolverError> {
    problem.validate()?;
    let range = match &problem.must_divide {
        Some(m) => problem.group_order.gcd(m),
        None => problem.group_order.clone(),
    };
    let factors = factorize_big(&range, 1_000_000).ok_or_else(|| {
        SolverError::InvalidProblem(format!("{}: cannot factor {range}", problem.name))
    })?;
    let pre: Vec<BigInt> = big_divisors(&factors)
        .into_iter()
        .filter(|n| problem.admits(n))
        .collect();
    let feasible = pre
        .iter()
        .filter(|n| problem.congruence_holds(n))
        .cloned()
        .collect();
    Ok(SylowResult {
        pre_congruence: pre,
        feasible,
    })
}
