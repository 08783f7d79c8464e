//! Exact counting for 2-by-n grids: spanning-tree counts, balanced-tree
//! counts, their ratio, the closed form over Q[sqrt(3)], and the limit
//! constants the ratio converges to.

use crate::decimal::rational_to_decimal;
use crate::error::{Error, Result};
use crate::quadratic::Quadratic;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::sync::{Mutex, OnceLock};

static TREE_COUNT_MEMO: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();

/// Number of spanning trees of the 2-by-n grid.
///
/// T_0 = T_1 = 1, T_2 = 4, and T_{n+2} = 4*T_{n+1} - T_n. Values are
/// memoized behind a mutex, so a sweep over 1..=N costs O(N) big-integer
/// operations and concurrent callers always observe identical values.
pub fn tree_count(n: usize) -> BigUint {
    let memo = TREE_COUNT_MEMO.get_or_init(|| {
        Mutex::new(vec![BigUint::one(), BigUint::one(), BigUint::from(4u32)])
    });
    let mut memo = memo.lock().expect("tree-count memo poisoned");
    while memo.len() <= n {
        let k = memo.len();
        let next = 4u32 * &memo[k - 1] - &memo[k - 2];
        memo.push(next);
    }
    memo[n].clone()
}

/// Scale factor of the closed form: 1/(2*sqrt(3)) = (1/6)*sqrt(3).
fn closed_form_scale() -> Quadratic {
    Quadratic::from_parts(0, 1, 1, 6)
}

/// Growth rate of the closed form: 2 + sqrt(3).
fn closed_form_rate() -> Quadratic {
    Quadratic::from_parts(2, 1, 1, 1)
}

/// Ratio between consecutive tail terms: (2 + sqrt(3))^-2 = 7 - 4*sqrt(3).
fn tail_ratio() -> Quadratic {
    closed_form_rate().pow(-2)
}

/// Evaluates the closed form `scale * (rate^n - rate^-n)` exactly in
/// Q[sqrt(3)] and extracts the integer value.
///
/// Returns a computation error if the result fails to collapse to a
/// nonnegative integer; that would signal a defect in the field arithmetic.
pub fn tree_count_closed(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::invalid("closed form needs n >= 1"));
    }
    let rate_n = closed_form_rate().pow(n as i64);
    // rate has norm 1, so rate^-n is the conjugate of rate^n.
    let value = &closed_form_scale() * &(&rate_n - &rate_n.conjugate());
    if !value.is_rational() {
        return Err(Error::Computation(format!(
            "closed form at n={n} kept an irrational part: {value}"
        )));
    }
    let rational = &value.rational;
    if !rational.is_integer() || rational.is_negative() {
        return Err(Error::Computation(format!(
            "closed form at n={n} is not a nonnegative integer: {rational}"
        )));
    }
    Ok(rational.to_integer().magnitude().clone())
}

/// First `k` power-series coefficients of x/(1 - 4x + x^2), starting at x^1.
///
/// Computed by the series recurrence c_1 = 1, c_2 = 4, c_j = 4c_{j-1} - c_{j-2},
/// independently of the memoized recurrence path.
pub fn generating_coefficients(k: usize) -> Vec<BigUint> {
    let mut coeffs: Vec<BigUint> = Vec::with_capacity(k);
    for j in 0..k {
        let next = match j {
            0 => BigUint::one(),
            1 => BigUint::from(4u32),
            _ => 4u32 * &coeffs[j - 1] - &coeffs[j - 2],
        };
        coeffs.push(next);
    }
    coeffs
}

/// Number of balanced spanning trees of the 2-by-n grid.
///
/// For n >= 2 this is the split-loop count: with m = n/2 rounded down,
/// odd n gives `n + sum_{i=0}^{m-1} (6+4i) * T_{m-i}^2` and even n gives
/// `n + 2*T_m^2 + sum_{i=1}^{m-1} (4+4i) * T_{m-i}^2`. The n = 1 grid has a
/// single tree whose only edge splits 1|1, so the count is 1 there.
pub fn balanced_count(n: usize) -> BigUint {
    assert!(n >= 1, "balanced_count needs n >= 1");
    if n == 1 {
        return BigUint::one();
    }
    let m = n / 2;
    let mut total = BigUint::from(n as u64);
    if n % 2 == 1 {
        for i in 0..m {
            let t = tree_count(m - i);
            total += BigUint::from(6 + 4 * i as u64) * &t * &t;
        }
    } else {
        let t = tree_count(m);
        total += BigUint::from(2u32) * &t * &t;
        for i in 1..m {
            let t = tree_count(m - i);
            total += BigUint::from(4 + 4 * i as u64) * &t * &t;
        }
    }
    total
}

/// One summand of the balanced-tree count.
///
/// `multiplier` doubles configurations that differ from their horizontal
/// reflection, `length` counts cut-edge placements along the split loop,
/// and `square` is the squared tree count of the two end blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedTerm {
    pub multiplier: u32,
    pub length: u64,
    pub square: BigUint,
}

impl BalancedTerm {
    pub fn value(&self) -> BigUint {
        BigUint::from(self.multiplier as u64 * self.length) * &self.square
    }
}

/// The m+1 summands of the balanced-tree count for n >= 2, indexed by the
/// split-loop configuration i = 0..=m. The i = m term always contributes
/// exactly n (loop length n, unit end blocks, no reflection).
pub fn balanced_terms(n: usize) -> Vec<BalancedTerm> {
    assert!(n >= 2, "balanced_terms needs n >= 2");
    let m = n / 2;
    let odd = n % 2 == 1;
    let mut terms = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let (multiplier, length) = if i == m {
            (1, n as u64)
        } else if odd {
            (2, 2 * i as u64 + 3)
        } else if i == 0 {
            // the lone non-reflected configuration of the even case
            (1, 2)
        } else {
            (2, 2 * i as u64 + 2)
        };
        let t = tree_count(m - i);
        terms.push(BalancedTerm {
            multiplier,
            length,
            square: &t * &t,
        });
    }
    terms
}

/// Exact probability that a uniform random spanning tree of the 2-by-n grid
/// is balanced: balanced_count(n) / tree_count(n), reduced.
pub fn ust_balance_probability(n: usize) -> BigRational {
    assert!(n >= 1, "ust_balance_probability needs n >= 1");
    BigRational::new(
        BigInt::from(balanced_count(n)),
        BigInt::from(tree_count(n)),
    )
}

/// Column-count parity; the balance probability converges to a different
/// constant on each parity class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Exact limit of the balance probability along one parity class:
/// odd columns give (3 + sqrt(3))/9 = 1/3 + (1/9)*sqrt(3), even columns
/// give (1 + 4*sqrt(3))/(6*sqrt(3)) = 2/3 + (1/18)*sqrt(3).
pub fn limit_constant(parity: Parity) -> Quadratic {
    match parity {
        Parity::Odd => Quadratic::from_parts(1, 3, 1, 9),
        Parity::Even => Quadratic::from_parts(2, 3, 1, 18),
    }
}

/// Replays the closed-form series evaluations behind both limit constants
/// in exact arithmetic. A false return signals an arithmetic defect.
///
/// With x = 7 - 4*sqrt(3):
///   6/(1-x)        == 3 + 2*sqrt(3)
///   4x/(1-x)^2     == 1/3
///   their sum      == 10/3 + 2*sqrt(3)
///   (scale/rate) * sum                    == odd limit
///   2*scale + scale*(4x/(1-x) + 4x/(1-x)^2) == even limit
pub fn series_identity_check() -> bool {
    let scale = closed_form_scale();
    let rate = closed_form_rate();
    let x = tail_ratio();
    if &rate * &rate.pow(-1) != Quadratic::one() {
        return false;
    }
    let one_minus_x = &Quadratic::one() - &x;
    if one_minus_x != Quadratic::from_parts(-6, 1, 4, 1) {
        return false;
    }
    let six_term = &Quadratic::from_integer(6) / &one_minus_x;
    if six_term != Quadratic::from_parts(3, 1, 2, 1) {
        return false;
    }
    let four_x = &Quadratic::from_integer(4) * &x;
    let linear_term = &four_x / &(&one_minus_x * &one_minus_x);
    if linear_term != Quadratic::from_parts(1, 3, 0, 1) {
        return false;
    }
    let sum = &six_term + &linear_term;
    if sum != Quadratic::from_parts(10, 3, 2, 1) {
        return false;
    }
    let odd = &(&scale / &rate) * &sum;
    if odd != limit_constant(Parity::Odd) {
        return false;
    }
    let even_tail = &(&four_x / &one_minus_x) + &linear_term;
    let even = &(&Quadratic::from_integer(2) * &scale) + &(&scale * &even_tail);
    even == limit_constant(Parity::Even)
}

/// Ratio rendered to six decimals, the table convention.
pub fn ust_balance_probability_6dp(n: usize) -> String {
    rational_to_decimal(&ust_balance_probability(n), 6)
}

/// Exact absolute gap between the finite-n probability and its parity limit.
pub fn limit_gap(n: usize) -> Quadratic {
    let ratio = Quadratic::from_rational(ust_balance_probability(n));
    (&ratio - &limit_constant(Parity::of(n))).abs()
}
