//! Exact Pochhammer machinery and arbitrary-precision evaluation of 2F1 and
//! 3F2.
//!
//! Every main-theorem parameter set satisfies c = a + b, so arguments near 1
//! land in the logarithmic exceptional case of the connection theory; the
//! `connection_at_1` regime implements that expansion with digamma values
//! advanced by exact rational recurrence. Tail bounds come from the exact
//! rational term ratio, never from heuristics.

use std::collections::HashMap;
use std::sync::RwLock;

use once_cell::sync::Lazy;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::kernel::{digamma_ap, gamma_ap, APComplex, PrecisionContext};

/// Parameters of a Gauss 2F1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && x.cmp0() != std::cmp::Ordering::Greater
}

impl HypParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if is_nonpositive_integer(&c) {
            return Err(Error::InvalidInput(
                "2F1 parameter c must not be a nonpositive integer".into(),
            ));
        }
        Ok(HypParams { a, b, c })
    }

    /// True when c - a - b is an integer, i.e. the z -> 1 connection is
    /// logarithmic.
    pub fn logarithmic_at_1(&self) -> bool {
        let d = self.c.clone() - &self.a - &self.b;
        d.is_integer()
    }

    /// The shifted parameter set of the termwise derivative.
    pub fn shifted(&self) -> HypParams {
        HypParams {
            a: self.a.clone() + 1u32,
            b: self.b.clone() + 1u32,
            c: self.c.clone() + 1u32,
        }
    }
}

/// Parameters of a generalized 3F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyp3F2Params {
    pub a: [Rational; 3],
    pub b: [Rational; 2],
}

/// Evaluation regime chosen for a given argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypRegime {
    DirectSeries,
    ConnectionAt1,
}

/// Exact rising factorial (alpha)_n.
pub fn pochhammer(alpha: &Rational, n: u64) -> Rational {
    let mut acc = Rational::from(1);
    for k in 0..n {
        acc *= alpha.clone() + Rational::from(k);
    }
    acc
}

/// (1/6)_n (5/6)_n (1/2)_n and 12^{-3n} (6n)!/(3n)!, returned as a pair of
/// exact rationals that must agree.
pub fn sextuple_identity(n: u64) -> (Rational, Rational) {
    let lhs = pochhammer(&Rational::from((1, 6)), n)
        * pochhammer(&Rational::from((5, 6)), n)
        * pochhammer(&Rational::from((1, 2)), n);
    let f6 = rug::Integer::from(rug::Integer::factorial(6 * n as u32));
    let f3 = rug::Integer::from(rug::Integer::factorial(3 * n as u32));
    let mut rhs = Rational::from((f6, f3));
    use rug::ops::Pow;
    rhs /= Rational::from(rug::Integer::from(1728).pow(n as u32));
    (lhs, rhs)
}

/// Digamma values cached per (argument, working precision).
static PSI_CACHE: Lazy<RwLock<HashMap<(Rational, u32), Float>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn digamma_cached(x: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let key = (x.clone(), ctx.working_bits());
    {
        let cache = PSI_CACHE.read().unwrap();
        if let Some(v) = cache.get(&key) {
            return Ok(v.clone());
        }
    }
    let v = digamma_ap(x, ctx)?;
    PSI_CACHE.write().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Conservative f64 upper bound on |x|.
fn abs_upper(x: &Float) -> f64 {
    x.to_f64().abs() * (1.0 + 1e-12) + 1e-300
}

const REGIME_RADIUS: f64 = 0.75;
const MAX_TERMS: u64 = 50_000_000;

/// Geometric tail test: mag * rho/(1 - rho) < eps. The term magnitude is
/// kept in arbitrary precision; an f64 magnitude would floor near 1e-300
/// and stall contexts beyond ~300 digits.
fn tail_done(mag: &Float, rho: f64, eps: &Float) -> bool {
    if rho >= 0.95 {
        return false;
    }
    let wp = mag.prec();
    let factor = Float::with_val(wp, rho / (1.0 - rho) * (1.0 + 1e-9));
    Float::with_val(wp, mag * &factor) < *eps
}

/// Pick the regime for (params, z), or fail with an out-of-regime error.
pub fn decide_regime(p: &HypParams, z: &APComplex) -> Result<HypRegime> {
    let az = abs_upper(&z.abs());
    if az <= REGIME_RADIUS * (1.0 + 1e-12) {
        return Ok(HypRegime::DirectSeries);
    }
    let prec = z.prec();
    let w = &APComplex::one(prec) - z;
    let aw = abs_upper(&w.abs());
    if aw <= REGIME_RADIUS * (1.0 + 1e-12) {
        if p.c != p.a.clone() + &p.b {
            return Err(Error::OutOfRegime(
                "connection regime requires c = a + b".into(),
            ));
        }
        if w.im.is_zero() && !w.re.is_sign_positive() && !w.re.is_zero() {
            return Err(Error::OutOfRegime(
                "argument on the branch cut [1, infinity)".into(),
            ));
        }
        return Ok(HypRegime::ConnectionAt1);
    }
    Err(Error::OutOfRegime(format!(
        "|z| = {az:.3} and |1-z| = {aw:.3} both exceed {REGIME_RADIUS}"
    )))
}

/// Direct Maclaurin summation of 2F1 with a tail bound from the exact term
/// ratio (n+a)(n+b)/((n+c)(n+1)): its deviation from 1 is at most K/(n+c)
/// with K = |a+b-c-1| + |ab-c|.
fn gauss_2f1_direct(
    p: &HypParams,
    z: &APComplex,
    ctx: &PrecisionContext,
) -> Result<(APComplex, u64)> {
    let wp = ctx.working_bits() + 32;
    let mut eps = Float::with_val(wp, 1u32);
    eps >>= ctx.working_bits() + 8;

    let k_bound = {
        let alpha = (p.a.clone() + &p.b - &p.c - 1u32).abs();
        let beta = (p.a.clone() * &p.b - &p.c).abs();
        (alpha + beta).to_f64() + 1e-9
    };
    let az = abs_upper(&z.abs());

    let mut sum = APComplex::one(wp);
    let mut term = APComplex::one(wp);
    let mut n = 0u64;
    loop {
        let ratio = (p.a.clone() + Rational::from(n)) * (p.b.clone() + Rational::from(n))
            / ((p.c.clone() + Rational::from(n)) * Rational::from(n + 1));
        let ratio_f = Float::with_val(wp, &ratio);
        term = &term.scale(&ratio_f) * z;
        sum = &sum + &term;
        n += 1;
        // tail starting at index n+1: sup ratio <= |z| (1 + K/(n+1))
        let rho = az * (1.0 + k_bound / ((n + 1) as f64));
        if tail_done(&term.abs(), rho, &eps) {
            break;
        }
        if n > MAX_TERMS {
            return Err(Error::ConsistencyFault(
                "2F1 direct series failed to converge".into(),
            ));
        }
    }
    Ok((sum, n))
}

/// Shared state of the logarithmic connection expansion at z = 1 for
/// c = a + b:
/// F = Gamma(a+b)/(Gamma(a)Gamma(b)) sum_n c_n [beta_n - log w] w^n,
/// w = 1 - z, c_n = (a)_n (b)_n / (n!)^2,
/// beta_n = 2 psi(n+1) - psi(a+n) - psi(b+n).
struct ConnectionState {
    prefactor: Float,
    log_w: APComplex,
    w: APComplex,
    abs_w: f64,
    k2: f64,
}

fn connection_setup(p: &HypParams, z: &APComplex, ctx: &PrecisionContext) -> Result<ConnectionState> {
    if p.a.cmp0() != std::cmp::Ordering::Greater || p.b.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::InvalidInput(
            "connection expansion implemented for positive a, b".into(),
        ));
    }
    let wp = ctx.working_bits() + 32;
    let one = APComplex::one(wp);
    let zz = APComplex {
        re: Float::with_val(wp, &z.re),
        im: Float::with_val(wp, &z.im),
    };
    let w = &one - &zz;
    let log_w = w.ln()?;
    let gc = gamma_ap(&(p.a.clone() + &p.b), ctx)?;
    let ga = gamma_ap(&p.a, ctx)?;
    let gb = gamma_ap(&p.b, ctx)?;
    let prefactor = Float::with_val(wp, gc / (ga * gb));
    let k2 = {
        let s = (p.a.clone() + &p.b - 2u32).abs();
        let q = (p.a.clone() * &p.b - 1u32).abs();
        (s + q).to_f64() + 1e-9
    };
    let abs_w = abs_upper(&w.abs());
    Ok(ConnectionState {
        prefactor,
        log_w,
        w,
        abs_w,
        k2,
    })
}

fn gauss_2f1_connection(
    p: &HypParams,
    z: &APComplex,
    ctx: &PrecisionContext,
) -> Result<(APComplex, u64)> {
    let st = connection_setup(p, z, ctx)?;
    let wp = ctx.working_bits() + 32;
    let mut eps = Float::with_val(wp, 1u32);
    eps >>= ctx.working_bits() + 8;

    // beta_0 = 2 psi(1) - psi(a) - psi(b), advanced by exact recurrence.
    let psi1 = digamma_cached(&Rational::from(1), ctx)?;
    let psia = digamma_cached(&p.a, ctx)?;
    let psib = digamma_cached(&p.b, ctx)?;
    let mut beta = Float::with_val(wp, Float::with_val(wp, &psi1 * &Float::with_val(wp, 2u32)));
    beta -= &psia;
    beta -= &psib;

    let mut cn = Float::with_val(wp, 1u32); // c_n
    let mut wpow = APComplex::one(wp); // w^n
    let mut sum = APComplex::zero(wp);
    let log_abs = abs_upper(&st.log_w.abs());
    let mut n = 0u64;
    loop {
        // term = c_n (beta_n - log w) w^n
        let bracket = &APComplex::from_real(beta.clone()) - &st.log_w;
        let term = bracket.scale(&cn);
        let term = &term * &wpow;
        sum = &sum + &term;

        // tail bound: |beta_m| for m > n is within (|1-a|+|1-b|)/max(n,1) of
        // |beta_n|; c-ratio sup is 1 + K2/(n+1).
        let slack = ((p.a.clone() - 1u32).abs() + (p.b.clone() - 1u32).abs()).to_f64()
            / (n.max(1) as f64);
        let b_bound = abs_upper(&beta) + slack + log_abs;
        let rho = st.abs_w * (1.0 + st.k2 / ((n + 1) as f64));
        let head = Float::with_val(wp, &cn * &wpow.abs()) * Float::with_val(wp, b_bound);
        if tail_done(&head, rho, &eps) {
            break;
        }
        if n > MAX_TERMS {
            return Err(Error::ConsistencyFault(
                "2F1 connection series failed to converge".into(),
            ));
        }

        // advance to n + 1
        let ratio = (p.a.clone() + Rational::from(n)) * (p.b.clone() + Rational::from(n))
            / (Rational::from((n + 1) * (n + 1)));
        cn *= Float::with_val(wp, &ratio);
        let delta = Rational::from((2, n + 1))
            - (p.a.clone() + Rational::from(n)).recip()
            - (p.b.clone() + Rational::from(n)).recip();
        beta += Float::with_val(wp, &delta);
        wpow = &wpow * &st.w;
        n += 1;
    }
    Ok((sum.scale(&st.prefactor), n))
}

/// Gauss hypergeometric 2F1(a, b; c; z) to context tolerance.
pub fn gauss_2f1(p: &HypParams, z: &APComplex, ctx: &PrecisionContext) -> Result<APComplex> {
    gauss_2f1_stats(p, z, ctx).map(|(v, _, _)| v)
}

/// Evaluate 2F1 through an explicitly chosen regime. In the overlap band
/// (both |z| and |1 - z| at most 0.75, c = a + b) either route is valid;
/// route-agreement checks call this twice and compare.
pub fn gauss_2f1_in_regime(
    p: &HypParams,
    z: &APComplex,
    regime: HypRegime,
    ctx: &PrecisionContext,
) -> Result<APComplex> {
    if is_nonpositive_integer(&p.c) {
        return Err(Error::InvalidInput(
            "2F1 parameter c must not be a nonpositive integer".into(),
        ));
    }
    match regime {
        HypRegime::DirectSeries => {
            let az = abs_upper(&z.abs());
            if az > REGIME_RADIUS * (1.0 + 1e-12) {
                return Err(Error::OutOfRegime(format!(
                    "direct series requires |z| <= {REGIME_RADIUS}"
                )));
            }
            gauss_2f1_direct(p, z, ctx).map(|(v, _)| v)
        }
        HypRegime::ConnectionAt1 => {
            if p.c != p.a.clone() + &p.b {
                return Err(Error::OutOfRegime(
                    "connection regime requires c = a + b".into(),
                ));
            }
            let w = &APComplex::one(z.prec()) - z;
            if abs_upper(&w.abs()) > REGIME_RADIUS * (1.0 + 1e-12) {
                return Err(Error::OutOfRegime(format!(
                    "connection regime requires |1 - z| <= {REGIME_RADIUS}"
                )));
            }
            gauss_2f1_connection(p, z, ctx).map(|(v, _)| v)
        }
    }
}

/// Like `gauss_2f1`, but also reports the regime chosen and the number of
/// series terms summed before the tail bound fired.
pub fn gauss_2f1_stats(
    p: &HypParams,
    z: &APComplex,
    ctx: &PrecisionContext,
) -> Result<(APComplex, HypRegime, u64)> {
    if is_nonpositive_integer(&p.c) {
        return Err(Error::InvalidInput(
            "2F1 parameter c must not be a nonpositive integer".into(),
        ));
    }
    let regime = decide_regime(p, z)?;
    let (v, n) = match regime {
        HypRegime::DirectSeries => gauss_2f1_direct(p, z, ctx)?,
        HypRegime::ConnectionAt1 => gauss_2f1_connection(p, z, ctx)?,
    };
    Ok((v, regime, n))
}

/// d/dz 2F1(a, b; c; z).
///
/// Direct regime: (ab/c) 2F1(a+1, b+1; c+1; z). Connection regime: termwise
/// derivative of the logarithmic expansion,
/// dF/dz = pref * sum_n c_n w^{n-1} [1 - n beta_n + n log w].
pub fn gauss_2f1_dz(p: &HypParams, z: &APComplex, ctx: &PrecisionContext) -> Result<APComplex> {
    if is_nonpositive_integer(&p.c) {
        return Err(Error::InvalidInput(
            "2F1 parameter c must not be a nonpositive integer".into(),
        ));
    }
    match decide_regime(p, z)? {
        HypRegime::DirectSeries => {
            let (f, _) = gauss_2f1_direct(&p.shifted(), z, ctx)?;
            let coef = p.a.clone() * &p.b / &p.c;
            Ok(f.scale(&Float::with_val(f.prec(), &coef)))
        }
        HypRegime::ConnectionAt1 => {
            let st = connection_setup(p, z, ctx)?;
            let wp = ctx.working_bits() + 32;
            let mut eps = Float::with_val(wp, 1u32);
            eps >>= ctx.working_bits() + 8;

            let psi1 = digamma_cached(&Rational::from(1), ctx)?;
            let psia = digamma_cached(&p.a, ctx)?;
            let psib = digamma_cached(&p.b, ctx)?;
            let mut beta = Float::with_val(wp, &psi1 * &Float::with_val(wp, 2u32));
            beta -= &psia;
            beta -= &psib;

            let mut cn = Float::with_val(wp, 1u32);
            let mut wpow = st.w.recip(); // w^{n-1}
            let mut sum = APComplex::zero(wp);
            let log_abs = abs_upper(&st.log_w.abs());
            let mut n = 0u64;
            loop {
                // c_n w^{n-1} [1 - n beta_n + n log w]
                let nf = Float::with_val(wp, n);
                let mut bracket = st.log_w.scale(&nf);
                bracket = &bracket - &APComplex::from_real(Float::with_val(wp, &beta * &nf));
                bracket.re += 1u32;
                let term = &bracket.scale(&cn) * &wpow;
                sum = &sum + &term;

                // tail ratio for m >= max(n,1): |w| (1 + K2/(n+1)) (n+1)/n
                let slack = ((p.a.clone() - 1u32).abs() + (p.b.clone() - 1u32).abs()).to_f64()
                    / (n.max(1) as f64);
                let b_bound = abs_upper(&beta) + slack + log_abs;
                let m = n.max(1) as f64;
                let rho = st.abs_w * (1.0 + st.k2 / (m + 1.0)) * (m + 1.0) / m;
                let head = Float::with_val(wp, &cn * &wpow.abs())
                    * Float::with_val(wp, 1.0 + (n as f64 + 1.0) * b_bound);
                if tail_done(&head, rho, &eps) {
                    break;
                }
                if n > MAX_TERMS {
                    return Err(Error::ConsistencyFault(
                        "2F1 connection derivative failed to converge".into(),
                    ));
                }

                let ratio = (p.a.clone() + Rational::from(n)) * (p.b.clone() + Rational::from(n))
                    / (Rational::from((n + 1) * (n + 1)));
                cn *= Float::with_val(wp, &ratio);
                let delta = Rational::from((2, n + 1))
                    - (p.a.clone() + Rational::from(n)).recip()
                    - (p.b.clone() + Rational::from(n)).recip();
                beta += Float::with_val(wp, &delta);
                wpow = &wpow * &st.w;
                n += 1;
            }
            Ok(sum.scale(&st.prefactor))
        }
    }
}

/// Generalized 3F2 by direct summation, |z| <= 0.75 only.
pub fn gen_3f2(p: &Hyp3F2Params, z: &APComplex, ctx: &PrecisionContext) -> Result<APComplex> {
    for b in &p.b {
        if b.cmp0() != std::cmp::Ordering::Greater {
            return Err(Error::InvalidInput(
                "3F2 lower parameters must be positive".into(),
            ));
        }
    }
    let az = abs_upper(&z.abs());
    if az > REGIME_RADIUS * (1.0 + 1e-12) {
        return Err(Error::OutOfRegime(format!(
            "3F2 requires |z| <= {REGIME_RADIUS}, got {az:.3}"
        )));
    }
    let wp = ctx.working_bits() + 32;
    let mut eps = Float::with_val(wp, 1u32);
    eps >>= ctx.working_bits() + 8;

    // term ratio (n+a1)(n+a2)(n+a3)/((n+b1)(n+b2)(n+1)); coefficient gap
    // between the two cubics is bounded by K3 (m+1)^2, so the ratio deviates
    // from 1 by at most 2 K3 / m for m >= 1.
    let k3 = {
        let e1 = p.a[0].clone() + &p.a[1] + &p.a[2];
        let e2 = p.a[0].clone() * &p.a[1] + p.a[0].clone() * &p.a[2] + p.a[1].clone() * &p.a[2];
        let e3 = p.a[0].clone() * &p.a[1] * &p.a[2];
        let f1 = p.b[0].clone() + &p.b[1] + 1u32;
        let f2 = p.b[0].clone() * &p.b[1] + &p.b[0] + &p.b[1];
        let f3 = p.b[0].clone() * &p.b[1];
        ((e1 - f1).abs() + (e2 - f2).abs() + (e3 - f3).abs()).to_f64() + 1e-9
    };

    let mut sum = APComplex::one(wp);
    let mut term = APComplex::one(wp);
    let mut n = 0u64;
    loop {
        let num = (p.a[0].clone() + Rational::from(n))
            * (p.a[1].clone() + Rational::from(n))
            * (p.a[2].clone() + Rational::from(n));
        let den = (p.b[0].clone() + Rational::from(n))
            * (p.b[1].clone() + Rational::from(n))
            * Rational::from(n + 1);
        let ratio_f = Float::with_val(wp, &(num / den));
        term = &term.scale(&ratio_f) * z;
        sum = &sum + &term;
        n += 1;
        let rho = az * (1.0 + 2.0 * k3 / (n as f64 + 1.0));
        if tail_done(&term.abs(), rho, &eps) {
            break;
        }
        if n > MAX_TERMS {
            return Err(Error::ConsistencyFault(
                "3F2 series failed to converge".into(),
            ));
        }
    }
    Ok(sum)
}

/// Singular point of the hypergeometric equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularPoint {
    Zero,
    One,
    Infinity,
}

/// Argument map of a local solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgMap {
    Z,
    OneMinusZ,
    RecipZ,
}

/// Symbolic descriptor: z^{z_exponent} (1-z)^{one_minus_z_exponent}
/// F(params; argument).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionDescriptor {
    pub z_exponent: Rational,
    pub one_minus_z_exponent: Rational,
    pub params: HypParams,
    pub argument: ArgMap,
}

/// Kummer's fundamental pairs at each singular point, for generic
/// parameters (c, c - a - b, a - b all nonintegral).
pub fn kummer_local_solutions(p: &HypParams, point: SingularPoint) -> [SolutionDescriptor; 2] {
    let zero = Rational::new();
    let (a, b, c) = (p.a.clone(), p.b.clone(), p.c.clone());
    match point {
        SingularPoint::Zero => [
            SolutionDescriptor {
                z_exponent: zero.clone(),
                one_minus_z_exponent: zero.clone(),
                params: p.clone(),
                argument: ArgMap::Z,
            },
            SolutionDescriptor {
                z_exponent: Rational::from(1) - &c,
                one_minus_z_exponent: zero,
                params: HypParams {
                    a: a.clone() - &c + 1u32,
                    b: b.clone() - &c + 1u32,
                    c: Rational::from(2) - &c,
                },
                argument: ArgMap::Z,
            },
        ],
        SingularPoint::One => [
            SolutionDescriptor {
                z_exponent: zero.clone(),
                one_minus_z_exponent: zero.clone(),
                params: HypParams {
                    a: a.clone(),
                    b: b.clone(),
                    c: a.clone() + &b - &c + 1u32,
                },
                argument: ArgMap::OneMinusZ,
            },
            SolutionDescriptor {
                z_exponent: zero,
                one_minus_z_exponent: c.clone() - &a - &b,
                params: HypParams {
                    a: c.clone() - &a,
                    b: c.clone() - &b,
                    c: c.clone() - &a - &b + 1u32,
                },
                argument: ArgMap::OneMinusZ,
            },
        ],
        SingularPoint::Infinity => [
            SolutionDescriptor {
                z_exponent: -a.clone(),
                one_minus_z_exponent: zero.clone(),
                params: HypParams {
                    a: a.clone(),
                    b: a.clone() - &c + 1u32,
                    c: a.clone() - &b + 1u32,
                },
                argument: ArgMap::RecipZ,
            },
            SolutionDescriptor {
                z_exponent: -b.clone(),
                one_minus_z_exponent: zero,
                params: HypParams {
                    a: b.clone(),
                    b: b.clone() - &c + 1u32,
                    c: b - &a + 1u32,
                },
                argument: ArgMap::RecipZ,
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::make_context;

    fn r(n: i64, d: u64) -> Rational {
        Rational::from((n, d))
    }

    fn catalog_params() -> [HypParams; 3] {
        [
            HypParams::new(r(1, 12), r(5, 12), r(1, 1)).unwrap(),
            HypParams::new(r(1, 12), r(5, 12), r(1, 2)).unwrap(),
            HypParams::new(r(1, 12), r(7, 12), r(2, 3)).unwrap(),
        ]
    }

    fn real_arg(ctx: &PrecisionContext, q: Rational) -> APComplex {
        APComplex::from_real(ctx.real(&q))
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(&r(7, 3), 0), Rational::from(1));
        let prod = pochhammer(&r(1, 6), 1) * pochhammer(&r(5, 6), 1) * pochhammer(&r(1, 2), 1);
        assert_eq!(prod, r(5, 72));
        // (p/q)_n = q^{-n} prod_k (qk + p - q)
        let alpha = r(3, 7);
        let n = 6u64;
        let mut direct = Rational::from(1);
        for k in 1..=n {
            direct *= Rational::from(7 * k as i64 + 3 - 7);
        }
        use rug::ops::Pow;
        direct /= Rational::from(rug::Integer::from(7).pow(n as u32));
        assert_eq!(pochhammer(&alpha, n), direct);
    }

    #[test]
    fn sextuple_identity_exact() {
        for n in [0u64, 1, 2, 10, 50] {
            let (lhs, rhs) = sextuple_identity(n);
            assert_eq!(lhs, rhs, "mismatch at n = {n}");
        }
        assert_eq!(sextuple_identity(1).0, r(5, 72));
    }

    #[test]
    fn logarithmic_flags() {
        let [p1, p2, p3] = catalog_params();
        assert!(!p1.logarithmic_at_1()); // c - a - b = 1/2
        assert!(p2.logarithmic_at_1()); // c = a + b
        assert!(p3.logarithmic_at_1()); // c = a + b
    }

    #[test]
    fn nonpositive_c_rejected() {
        assert!(HypParams::new(r(1, 2), r(1, 2), r(0, 1)).is_err());
        assert!(HypParams::new(r(1, 2), r(1, 2), r(-2, 1)).is_err());
        assert!(HypParams::new(r(1, 2), r(1, 2), r(-1, 2)).is_ok());
    }

    #[test]
    fn f_at_zero_is_one() {
        let ctx = make_context(60).unwrap();
        for p in catalog_params() {
            let v = gauss_2f1(&p, &APComplex::zero(ctx.working_bits()), &ctx).unwrap();
            assert!((v.re.clone() - 1u32).abs() < ctx.target_eps());
            assert!(v.im.clone().abs() < ctx.target_eps());
        }
    }

    #[test]
    fn log_series_oracle_at_half() {
        // 2F1(1,1;2;z) = -ln(1-z)/z, so the value at 1/2 is 2 ln 2.
        let ctx = make_context(100).unwrap();
        let p = HypParams::new(r(1, 1), r(1, 1), r(2, 1)).unwrap();
        let v = gauss_2f1(&p, &real_arg(&ctx, r(1, 2)), &ctx).unwrap();
        let oracle = ctx.real(2).ln() * 2u32;
        assert!((v.re.clone() - &oracle).abs() < ctx.target_eps());
        assert!(v.im.clone().abs() < ctx.target_eps());
    }

    #[test]
    fn derivative_oracle_at_half() {
        // d/dz [-ln(1-z)/z] at z = 1/2 is [z/(1-z) + ln(1-z)]/z^2 = 4 - 4 ln 2.
        let ctx = make_context(80).unwrap();
        let p = HypParams::new(r(1, 1), r(1, 1), r(2, 1)).unwrap();
        let v = gauss_2f1_dz(&p, &real_arg(&ctx, r(1, 2)), &ctx).unwrap();
        let oracle = ctx.real(4) - ctx.real(2).ln() * 4u32;
        assert!((v.re.clone() - &oracle).abs() < ctx.target_eps());
    }

    #[test]
    fn derivative_at_zero_is_ab_over_c() {
        let ctx = make_context(50).unwrap();
        for p in catalog_params() {
            let v = gauss_2f1_dz(&p, &APComplex::zero(ctx.working_bits()), &ctx).unwrap();
            let expect = ctx.real(&(p.a.clone() * &p.b / &p.c));
            assert!((v.re.clone() - expect).abs() < ctx.target_eps());
        }
    }

    #[test]
    fn derivative_matches_shifted_series() {
        let ctx = make_context(80).unwrap();
        let z = real_arg(&ctx, r(1, 10));
        for p in catalog_params() {
            let lhs = gauss_2f1_dz(&p, &z, &ctx).unwrap();
            let f = gauss_2f1(&p.shifted(), &z, &ctx).unwrap();
            let rhs = f.scale(&ctx.real(&(p.a.clone() * &p.b / &p.c)));
            assert!((&lhs - &rhs).abs() < ctx.target_eps());
        }
    }

    #[test]
    fn regime_agreement_at_half() {
        // z = 1/2 is inside both disks; force each regime and compare.
        let ctx = make_context(120).unwrap();
        for p in catalog_params().into_iter().skip(1) {
            let z = real_arg(&ctx, r(1, 2));
            let (direct, _) = gauss_2f1_direct(&p, &z, &ctx).unwrap();
            let (conn, _) = gauss_2f1_connection(&p, &z, &ctx).unwrap();
            let diff = (&direct - &conn).abs();
            assert!(
                diff < ctx.target_eps(),
                "regimes disagree for {:?}: {diff}",
                p
            );
        }
    }

    #[test]
    fn connection_handles_near_one_argument() {
        // z = 151931373056000/151931373056001, within 7e-15 of 1.
        let ctx = make_context(100).unwrap();
        let p = HypParams::new(r(1, 12), r(7, 12), r(2, 3)).unwrap();
        let z = real_arg(
            &ctx,
            Rational::from((151931373056000u64, 151931373056001u64)),
        );
        let v = gauss_2f1(&p, &z, &ctx).unwrap();
        assert!(v.re.is_finite() && v.re.clone() > 0u32);
        // Sanity from the regime theory: |1 - z| ~ 6.6e-15 means each term
        // adds ~14 digits, so the value is modest and the sum converged fast.
        assert!(v.re.clone() < 100u32);
    }

    #[test]
    fn out_of_regime_and_cut_rejected() {
        let ctx = make_context(40).unwrap();
        // |z| = 0.9, |1-z| = 0.1, but c - a - b = 1/2 for the first set.
        let p1 = HypParams::new(r(1, 12), r(5, 12), r(1, 1)).unwrap();
        let z = real_arg(&ctx, r(9, 10));
        assert!(matches!(
            gauss_2f1(&p1, &z, &ctx),
            Err(Error::OutOfRegime(_))
        ));
        // On the cut [1, infinity).
        let p2 = HypParams::new(r(1, 12), r(5, 12), r(1, 2)).unwrap();
        let z_cut = real_arg(&ctx, r(5, 4));
        assert!(matches!(
            gauss_2f1(&p2, &z_cut, &ctx),
            Err(Error::OutOfRegime(_))
        ));
        // Outside both disks.
        let z_far = real_arg(&ctx, r(-3, 1));
        assert!(matches!(
            gauss_2f1(&p2, &z_far, &ctx),
            Err(Error::OutOfRegime(_))
        ));
    }

    #[test]
    fn clausen_formula() {
        // 2F1(a,b;a+b+1/2;x)^2 = 3F2(2a,2b,a+b;2a+2b,a+b+1/2;x)
        let ctx = make_context(80).unwrap();
        let a = r(1, 12);
        let b = r(5, 12);
        let p2 = HypParams::new(a.clone(), b.clone(), a.clone() + &b + r(1, 2)).unwrap();
        let p3 = Hyp3F2Params {
            a: [a.clone() * 2u32, b.clone() * 2u32, a.clone() + &b],
            b: [a.clone() * 2u32 + b.clone() * 2u32, a.clone() + &b + r(1, 2)],
        };
        for x in [r(1, 10), r(1, 3), r(1, 2)] {
            let z = real_arg(&ctx, x.clone());
            let f = gauss_2f1(&p2, &z, &ctx).unwrap();
            let lhs = &f * &f;
            let rhs = gen_3f2(&p3, &z, &ctx).unwrap();
            assert!(
                (&lhs - &rhs).abs() < ctx.target_eps(),
                "Clausen failed at x = {x}"
            );
        }
    }

    #[test]
    fn sextuple_series_equals_3f2() {
        // sum (6n)!/((3n)! n!^3) x^n 12^{-3n} = 3F2(1/6,5/6,1/2;1,1;x) at 1/4
        let ctx = make_context(60).unwrap();
        let p3 = Hyp3F2Params {
            a: [r(1, 6), r(5, 6), r(1, 2)],
            b: [r(1, 1), r(1, 1)],
        };
        let z = real_arg(&ctx, r(1, 4));
        let f = gen_3f2(&p3, &z, &ctx).unwrap();
        let wp = ctx.working_bits() + 32;
        let mut direct = Float::with_val(wp, 0);
        for n in 0..200u64 {
            let (_, coeff) = sextuple_identity(n);
            // divide by n!^3 and multiply x^n
            let f1 = rug::Integer::from(rug::Integer::factorial(n as u32));
            use rug::ops::Pow;
            let term = coeff / Rational::from(f1.pow(3)) * r(1, 4).pow(n as u32);
            direct += Float::with_val(wp, &term);
        }
        assert!((f.re.clone() - direct).abs() < ctx.target_eps());
    }

    #[test]
    fn ode_residual_small() {
        // z(1-z) F'' + [c - (a+b+1) z] F' - ab F = 0
        let ctx = make_context(60).unwrap();
        let pts = [r(1, 10), r(1, 4), r(2, 5), r(1, 2), r(-1, 2)];
        for p in catalog_params() {
            for x in &pts {
                let z = real_arg(&ctx, x.clone());
                let f = gauss_2f1(&p, &z, &ctx).unwrap();
                let f1 = gauss_2f1_dz(&p, &z, &ctx).unwrap();
                let p1 = p.shifted();
                let f2 = gauss_2f1_dz(&p1, &z, &ctx)
                    .unwrap()
                    .scale(&ctx.real(&(p.a.clone() * &p.b / &p.c)));
                let zf = ctx.real(x);
                let c0 = ctx.real(&(p.a.clone() * &p.b));
                let c1 = ctx.real(&p.c) - ctx.real(&(p.a.clone() + &p.b + 1u32)) * &zf;
                let c2 = zf.clone() * (ctx.real(1) - &zf);
                let resid = f2.scale(&c2).re + f1.scale(&c1).re - f.scale(&c0).re;
                assert!(
                    resid.clone().abs() < ctx.target_eps(),
                    "residual {resid} at x = {x} for {:?}",
                    p
                );
            }
        }
    }

    #[test]
    fn kummer_descriptors_match_table() {
        let p = HypParams::new(r(1, 12), r(5, 12), r(1, 3)).unwrap();
        let [s1, s2] = kummer_local_solutions(&p, SingularPoint::Zero);
        assert_eq!(s1.params, p);
        assert_eq!(s1.argument, ArgMap::Z);
        assert_eq!(s2.z_exponent, r(2, 3)); // 1 - c
        assert_eq!(s2.params.c, r(5, 3)); // 2 - c

        let [t1, t2] = kummer_local_solutions(&p, SingularPoint::One);
        assert_eq!(t1.params.c, r(7, 6)); // a + b - c + 1
        assert_eq!(t1.argument, ArgMap::OneMinusZ);
        assert_eq!(t2.one_minus_z_exponent, r(-1, 6)); // c - a - b
        assert_eq!(t2.params.a, r(1, 4)); // c - a
        assert_eq!(t2.params.b, r(-1, 12)); // c - b

        let [u1, u2] = kummer_local_solutions(&p, SingularPoint::Infinity);
        assert_eq!(u1.z_exponent, r(-1, 12)); // -a
        assert_eq!(u1.argument, ArgMap::RecipZ);
        assert_eq!(u1.params.b, r(3, 4)); // a - c + 1
        assert_eq!(u2.z_exponent, r(-5, 12)); // -b
        assert_eq!(u2.params.c, r(4, 3)); // b - a + 1
    }
}
