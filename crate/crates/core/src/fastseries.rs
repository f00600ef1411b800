//! Exact-rational binary splitting for series of the shape
//! sum_n (A + n) * (6n)!/((3n)! n!^3) * sign^n / C^n,
//! which powers the pi computation and the series-identity verifications.
//!
//! All interior arithmetic is exact big-integer work; a single float
//! conversion happens at the very end.

use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::kernel::PrecisionContext;

/// Descriptor of one series: linear offset A, positive base C, and sign.
///
/// The base term is t_n = (6n)!/((3n)! n!^3) * sign^n / C^n with exact ratio
/// t_{n+1}/t_n = 8 (6n+1)(6n+3)(6n+5) * sign / ((n+1)^3 C).
#[derive(Debug, Clone)]
pub struct SeriesTermSpec {
    pub linear_offset: Rational,
    pub base: Rational,
    pub sign: i32,
}

impl SeriesTermSpec {
    pub fn new(linear_offset: Rational, base: Rational, sign: i32) -> Result<Self> {
        if base.cmp0() != std::cmp::Ordering::Greater {
            return Err(Error::InvalidInput("series base must be positive".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidInput("sign must be +1 or -1".into()));
        }
        Ok(SeriesTermSpec {
            linear_offset,
            base,
            sign,
        })
    }

    /// Exact term ratio t_{n+1}/t_n.
    pub fn term_ratio(&self, n: u64) -> Rational {
        let num = Integer::from(8)
            * Integer::from(6 * n + 1)
            * Integer::from(6 * n + 3)
            * Integer::from(6 * n + 5)
            * self.sign;
        let den = Integer::from(n + 1).pow(3);
        Rational::from((num, den)) / &self.base
    }

    /// Decimal digits gained per term: log10(C / 1728).
    pub fn digits_per_term(&self) -> f64 {
        (self.base.to_f64() / 1728.0).log10()
    }
}

/// Exact state for a half-open term range [n0, n1):
/// P = prod p(n), Q = prod q(n), and T with
/// sum_{n0 <= n < n1} (A + n) t_n / t_{n0} = T / (Q * denom(A)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitNode {
    pub p: Integer,
    pub q: Integer,
    pub t: Integer,
}

impl SplitNode {
    /// Associative merge of adjacent ranges [n0, m) and [m, n1).
    pub fn merge(left: &SplitNode, right: &SplitNode) -> SplitNode {
        SplitNode {
            p: (&left.p * &right.p).complete(),
            q: (&left.q * &right.q).complete(),
            t: (&left.t * &right.q).complete() + (&left.p * &right.t).complete(),
        }
    }
}

fn leaf(spec: &SeriesTermSpec, n: u64) -> SplitNode {
    // p(n)/q(n) = t_{n+1}/t_n with the rational base C = cn/cd folded in.
    let cn = spec.base.numer();
    let cd = spec.base.denom();
    let p = Integer::from(8)
        * Integer::from(6 * n + 1)
        * Integer::from(6 * n + 3)
        * Integer::from(6 * n + 5)
        * cd
        * spec.sign;
    let q = Integer::from(n + 1).pow(3) * cn;
    // (A + n) scaled by denom(A): numer(A) + n * denom(A)
    let an = spec.linear_offset.numer();
    let ad = spec.linear_offset.denom();
    let t = (an + Integer::from(n) * ad) * &q;
    SplitNode { p, q, t }
}

/// Balanced exact binary splitting over [n0, n1).
pub fn binary_split(spec: &SeriesTermSpec, n0: u64, n1: u64) -> Result<SplitNode> {
    if n0 >= n1 {
        return Err(Error::InvalidInput(format!(
            "empty split range [{n0}, {n1})"
        )));
    }
    Ok(split_rec(spec, n0, n1))
}

fn split_rec(spec: &SeriesTermSpec, n0: u64, n1: u64) -> SplitNode {
    if n1 - n0 == 1 {
        return leaf(spec, n0);
    }
    let mid = n0 + (n1 - n0) / 2;
    let left = split_rec(spec, n0, mid);
    let right = split_rec(spec, mid, n1);
    SplitNode::merge(&left, &right)
}

/// Number of terms needed at `working_bits` given geometric ratio 1728/C.
fn term_count(spec: &SeriesTermSpec, working_bits: u32) -> Result<u64> {
    let ratio_ln = (spec.base.to_f64() / 1728.0).ln();
    if ratio_ln <= 0.0 {
        return Err(Error::Divergence(
            "series base must exceed 12^3 = 1728".into(),
        ));
    }
    Ok(((working_bits as f64) * std::f64::consts::LN_2 / ratio_ln).ceil() as u64 + 8)
}

/// Sum the series to context tolerance. Exact splitting, one final float
/// conversion.
pub fn sum_series(spec: &SeriesTermSpec, ctx: &PrecisionContext) -> Result<Float> {
    let n = term_count(spec, ctx.working_bits())?;
    let node = binary_split(spec, 0, n)?;
    let p = ctx.working_bits() + 64;
    let num = Float::with_val(p, &node.t);
    let den = Float::with_val(p, &node.q) * Float::with_val(p, spec.linear_offset.denom());
    Ok(Float::with_val(ctx.working_bits(), num / den))
}

const PI_A_NUM: u32 = 13591409;
const PI_A_DEN: u32 = 545140134;
const PI_BASE: u32 = 640320;
const CROSS_A_NUM: u32 = 10177;
const CROSS_A_DEN: u32 = 261702;
const CROSS_BASE: u32 = 5280;

fn chudnovsky_spec() -> SeriesTermSpec {
    SeriesTermSpec {
        linear_offset: Rational::from((PI_A_NUM, PI_A_DEN)),
        base: Rational::from(Integer::from(PI_BASE).pow(3)),
        sign: -1,
    }
}

fn cross_check_spec() -> SeriesTermSpec {
    SeriesTermSpec {
        linear_offset: Rational::from((CROSS_A_NUM, CROSS_A_DEN)),
        base: Rational::from(Integer::from(CROSS_BASE).pow(3)),
        sign: -1,
    }
}

/// Working float precision for `digits` decimal digits of pi.
fn pi_working_bits(digits: u32, terms: u64) -> u32 {
    let log_terms = 64 - terms.max(1).leading_zeros();
    (digits as f64 * crate::kernel::LOG2_10).ceil() as u32 + 96 + log_terms
}

/// Truncated decimal expansion with exactly `digits` significant digits:
/// "3" for one digit, otherwise "3." followed by `digits - 1` digits.
fn pi_decimal_string(pi: &Float, digits: u32) -> String {
    if digits == 1 {
        return "3".into();
    }
    let frac = digits - 1;
    let p = pi.prec();
    let scaled = Float::with_val(p, pi * Float::with_val(p, Integer::from(10).pow(frac)));
    let int = scaled.floor().to_integer().expect("finite pi");
    let s = int.to_string();
    debug_assert_eq!(s.len() as u32, digits);
    format!("{}.{}", &s[..1], &s[1..])
}

/// pi by the 1/pi series with linear term 545140134 n + 13591409 over base
/// 640320^3, rearranged exactly into the binary-split node:
/// pi = 640320^{3/2} * Q / (12 T).
pub fn compute_pi(decimal_digits: u32) -> Result<String> {
    if decimal_digits == 0 {
        return Err(Error::InvalidInput("need at least one digit".into()));
    }
    let spec = chudnovsky_spec();
    let terms = (decimal_digits as f64 / spec.digits_per_term()).ceil() as u64 + 2;
    let node = binary_split(&spec, 0, terms)?;
    let p = pi_working_bits(decimal_digits, terms);
    let sqrt_base = Float::with_val(p, PI_BASE).sqrt();
    let num = Float::with_val(p, &node.q) * sqrt_base * PI_BASE;
    let den = Float::with_val(p, &node.t) * 12u32;
    let pi = num / den;
    Ok(pi_decimal_string(&pi, decimal_digits))
}

/// Independent pi from the base-5280^3 series whose closed form is
/// 880 sqrt(330) / (130851 pi): pi = 1760 sqrt(330) * Q / T.
pub fn cross_check_pi(decimal_digits: u32) -> Result<String> {
    if decimal_digits == 0 {
        return Err(Error::InvalidInput("need at least one digit".into()));
    }
    let spec = cross_check_spec();
    let terms = (decimal_digits as f64 / spec.digits_per_term()).ceil() as u64 + 2;
    let node = binary_split(&spec, 0, terms)?;
    let p = pi_working_bits(decimal_digits, terms);
    let sqrt330 = Float::with_val(p, 330u32).sqrt();
    // denom(A)/130851 = 261702/130851 = 2
    let num = Float::with_val(p, &node.q) * sqrt330 * 1760u32;
    let pi = num / Float::with_val(p, &node.t);
    Ok(pi_decimal_string(&pi, decimal_digits))
}
