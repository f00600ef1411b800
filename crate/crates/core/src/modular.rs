//! q-series evaluation of the Eisenstein series E2, E4, E6, the Dedekind eta
//! function, Weber's f, the discriminant, Klein's J, s2, and dJ/dtau, plus
//! fundamental-domain reduction and the region membership predicates.

use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::kernel::{APComplex, PrecisionContext};

/// A point in the upper half-plane.
#[derive(Debug, Clone)]
pub struct TauPoint {
    pub tau: APComplex,
}

impl TauPoint {
    pub fn new(tau: APComplex) -> Result<Self> {
        if tau.im.cmp0() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidInput(
                "tau must lie in the upper half-plane".into(),
            ));
        }
        Ok(TauPoint { tau })
    }

    /// q = e^{2 pi i tau} at the given working precision.
    pub fn nome(&self, ctx: &PrecisionContext) -> APComplex {
        let wp = ctx.working_bits() + 32;
        let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
        let t = APComplex {
            re: Float::with_val(wp, &self.tau.re),
            im: Float::with_val(wp, &self.tau.im),
        };
        t.mul_i().scale(&two_pi).exp()
    }
}

/// The three regions C_{1/J, inf}, C_{(J-1)/J, i}, C_{J/(J-1), rho}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionId {
    CInf,
    COne,
    CZero,
}

/// Three-valued region verdict: the regions are open, so a point whose test
/// quantity sits within tolerance of the boundary is reported as
/// indeterminate rather than guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    BoundaryIndeterminate,
}

/// Minimum Im(tau) for direct q-series evaluation; |q| < 0.16 there.
pub const MIN_IM: f64 = 0.3;

fn check_regime(tau: &TauPoint) -> Result<()> {
    if tau.tau.im.to_f64() < MIN_IM * (1.0 - 1e-12) {
        return Err(Error::OutOfRegime(format!(
            "q-series requires Im(tau) >= {MIN_IM}"
        )));
    }
    Ok(())
}

/// Truncation index: N = ceil((working + 32) ln2 / (2 pi Im tau)) + 16.
fn trunc_terms(ctx: &PrecisionContext, im_tau: f64) -> u64 {
    let wb = (ctx.working_bits() + 32) as f64;
    (wb * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI * im_tau)).ceil() as u64 + 16
}

/// Normalized Eisenstein series E_k for k in {2, 4, 6}:
/// E_2 = 1 - 24 sum n q^n/(1-q^n), E_4 = 1 + 240 sum n^3 q^n/(1-q^n),
/// E_6 = 1 - 504 sum n^5 q^n/(1-q^n).
pub fn eisenstein(k: u32, tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    check_regime(tau)?;
    let (power, factor): (u32, i32) = match k {
        2 => (1, -24),
        4 => (3, 240),
        6 => (5, -504),
        _ => return Err(Error::InvalidInput("Eisenstein weight must be 2, 4, or 6".into())),
    };
    let wp = ctx.working_bits() + 32;
    let q = tau.nome(ctx);
    let n_max = trunc_terms(ctx, tau.tau.im.to_f64());
    let one = APComplex::one(wp);
    let mut qn = one.clone();
    let mut sum = APComplex::zero(wp);
    for n in 1..=n_max {
        qn = &qn * &q;
        let npow = Float::with_val(wp, Integer::from(n).pow(power));
        let term = &qn.scale(&npow) / &(&one - &qn);
        sum = &sum + &term;
    }
    let f = Float::with_val(wp, factor);
    let mut out = sum.scale(&f);
    out.re += 1u32;
    Ok(out)
}

/// eta(tau) = q^{1/24} prod (1 - q^n), with the product expanded by Euler's
/// pentagonal number theorem: sum_{k in Z} (-1)^k q^{k(3k-1)/2}.
pub fn dedekind_eta(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    check_regime(tau)?;
    let wp = ctx.working_bits() + 32;
    // q^{1/24} = exp(pi i tau / 12), fixing the principal 24th root.
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let twelfth = Float::with_val(wp, &pi / &Float::with_val(wp, 12u32));
    let t = APComplex {
        re: Float::with_val(wp, &tau.tau.re),
        im: Float::with_val(wp, &tau.tau.im),
    };
    let q24 = t.mul_i().scale(&twelfth).exp();
    let q = tau.nome(ctx);
    let n_max = trunc_terms(ctx, tau.tau.im.to_f64());

    let mut prod = APComplex::one(wp);
    let mut k = 1u64;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        if g1 > n_max {
            break;
        }
        let g2 = k * (3 * k + 1) / 2;
        let mut term = q.pow_i32(g1 as i32);
        if g2 <= n_max {
            term = &term + &q.pow_i32(g2 as i32);
        }
        if k % 2 == 1 {
            prod = &prod - &term;
        } else {
            prod = &prod + &term;
        }
        k += 1;
    }
    Ok(&q24 * &prod)
}

/// Weber's f(tau) = e^{-pi i/24} eta((1+tau)/2) / eta(tau).
pub fn weber_f(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    if tau.tau.im.to_f64() < 2.0 * MIN_IM * (1.0 - 1e-12) {
        return Err(Error::OutOfRegime(
            "Weber f requires Im(tau) >= 0.6 so (1+tau)/2 stays in regime".into(),
        ));
    }
    let wp = ctx.working_bits() + 32;
    let half = APComplex {
        re: Float::with_val(wp, (Float::with_val(wp, &tau.tau.re) + 1u32) / 2u32),
        im: Float::with_val(wp, Float::with_val(wp, &tau.tau.im) / 2u32),
    };
    let eta_half = dedekind_eta(&TauPoint::new(half)?, ctx)?;
    let eta_tau = dedekind_eta(tau, ctx)?;
    let phase = unit_phase(ctx, Rational::from((-1, 24)));
    Ok(&(&eta_half / &eta_tau) * &phase)
}

/// e^{pi i r} for rational r.
pub fn unit_phase(ctx: &PrecisionContext, r: Rational) -> APComplex {
    let wp = ctx.working_bits() + 32;
    let ang = Float::with_val(wp, rug::float::Constant::Pi) * Float::with_val(wp, &r);
    let (s, c) = ang.sin_cos(Float::new(wp));
    APComplex { re: c, im: s }
}

/// Discriminant by both classical formulas:
/// (2 pi)^12 eta^24 and (2 pi)^12 (E4^3 - E6^2)/1728.
pub fn discriminant_pair(tau: &TauPoint, ctx: &PrecisionContext) -> Result<(APComplex, APComplex)> {
    let wp = ctx.working_bits() + 32;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let scale = two_pi.pow(12u32);
    let eta = dedekind_eta(tau, ctx)?;
    let d_eta = eta.pow_i32(24).scale(&scale);
    let e4 = eisenstein(4, tau, ctx)?;
    let e6 = eisenstein(6, tau, ctx)?;
    let diff = &e4.pow_i32(3) - &e6.pow_i32(2);
    let d_e = diff.scale(&Float::with_val(wp, &scale / &Float::with_val(wp, 1728u32)));
    Ok((d_eta, d_e))
}

/// Delta(tau), asserting that the eta-product and Eisenstein formulas agree.
pub fn discriminant_tau(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    let (d_eta, d_e) = discriminant_pair(tau, ctx)?;
    let rel = (&d_eta - &d_e).abs() / d_eta.abs();
    if rel > ctx.target_eps() {
        return Err(Error::ConsistencyFault(format!(
            "discriminant formulas disagree: relative gap {rel}"
        )));
    }
    Ok(d_eta)
}

/// Klein's J(tau) = E4^3 / (E4^3 - E6^2). Valid for any Im(tau) > 0:
/// below the q-series regime the point is reduced first (J is invariant).
#[allow(non_snake_case)]
pub fn klein_J(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    let t = if tau.tau.im.to_f64() < MIN_IM {
        reduce_tau(tau, ctx)?.0
    } else {
        tau.clone()
    };
    let e4 = eisenstein(4, &t, ctx)?;
    let e6 = eisenstein(6, &t, ctx)?;
    let num = e4.pow_i32(3);
    let den = &num - &e6.pow_i32(2);
    let mut j = &num / &den;
    // On the boundary arcs of the fundamental domain J is real, and the
    // interior maps to Im J > 0 there; rounding dust in Im J would otherwise
    // pick a branch at random downstream. Snap it to +0, whose principal
    // powers realize the limit from the interior.
    let mut dust = j.abs();
    dust >>= ctx.working_bits() - 16;
    if j.im.clone().abs() < dust {
        j.im = Float::with_val(j.im.prec(), 0u32);
    }
    Ok(j)
}

/// j(tau) = 1728 J(tau).
pub fn klein_j(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    let j = klein_J(tau, ctx)?;
    Ok(j.scale(&Float::with_val(j.prec(), 1728u32)))
}

/// s2(tau) = (E4/E6)(E2 - 3/(pi Im tau)). Fails at the E6 zero tau = i.
pub fn s2(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    check_regime(tau)?;
    let wp = ctx.working_bits() + 32;
    let e2 = eisenstein(2, tau, ctx)?;
    let e4 = eisenstein(4, tau, ctx)?;
    let e6 = eisenstein(6, tau, ctx)?;
    if e6.abs() < pole_tol(ctx) {
        return Err(Error::Pole("s2 has a pole where E6 vanishes (tau = i)".into()));
    }
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let corr = Float::with_val(wp, 3u32) / (pi * Float::with_val(wp, &tau.tau.im));
    let mut inner = e2;
    inner.re -= corr;
    Ok(&(&e4 / &e6) * &inner)
}

/// J'(tau) = dJ/dtau = -2 pi i J E6 / E4. Fails at the E4 zero tau = rho.
#[allow(non_snake_case)]
pub fn dJ_dtau(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    check_regime(tau)?;
    let wp = ctx.working_bits() + 32;
    let e4 = eisenstein(4, tau, ctx)?;
    if e4.abs() < pole_tol(ctx) {
        return Err(Error::Pole("dJ/dtau has a pole where E4 vanishes (tau = rho)".into()));
    }
    let e6 = eisenstein(6, tau, ctx)?;
    let jj = klein_J(tau, ctx)?;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let v = &(&jj * &e6) / &e4;
    Ok((-&v.mul_i()).scale(&two_pi))
}

fn pole_tol(ctx: &PrecisionContext) -> Float {
    let mut t = Float::with_val(64, 1u32);
    t >>= ctx.target_bits() / 2;
    t
}

/// Reduce tau into the closure of the standard fundamental domain
/// (|Re| <= 1/2, |tau| >= 1) by the shift/invert loop. Returns the reduced
/// point and the SL2(Z) matrix g with tau_F = g tau.
pub fn reduce_tau(tau: &TauPoint, ctx: &PrecisionContext) -> Result<(TauPoint, [[Integer; 2]; 2])> {
    let wp = ctx.working_bits() + 32;
    let mut t = APComplex {
        re: Float::with_val(wp, &tau.tau.re),
        im: Float::with_val(wp, &tau.tau.im),
    };
    let mut g = [
        [Integer::from(1), Integer::from(0)],
        [Integer::from(0), Integer::from(1)],
    ];
    let mut tol = Float::with_val(wp, 1u32);
    tol >>= ctx.working_bits() / 2;
    for _ in 0..10_000 {
        // shift Re into [-1/2, 1/2]; points already within tolerance of the
        // strip (e.g. Re = -1/2 exactly) are left alone
        let half = Float::with_val(wp, 0.5f64);
        if t.re.clone().abs() > Float::with_val(wp, &half + &tol) {
            let n = Float::with_val(wp, t.re.clone().round()).to_integer().unwrap();
            t.re -= Float::with_val(wp, &n);
            // g <- T^{-n} g
            g[0][0] -= (&n * &g[1][0]).complete();
            g[0][1] -= (&n * &g[1][1]).complete();
        }
        // invert if strictly inside the unit circle
        let norm = t.norm_sqr();
        if norm < Float::with_val(wp, Float::with_val(wp, 1u32) - &tol) {
            t = -&t.recip();
            // g <- S g
            let (r0, r1) = (g[0].clone(), g[1].clone());
            g[0] = [(-&r1[0]).complete(), (-&r1[1]).complete()];
            g[1] = r0;
        } else {
            return Ok((TauPoint::new(t)?, g));
        }
    }
    Err(Error::ConsistencyFault(
        "fundamental-domain reduction failed to terminate".into(),
    ))
}

/// Coefficientwise check of Ramanujan's differential equations
/// q dE4/dq = (E2 E4 - E6)/3 and q dE6/dq = (E2 E6 - E4^2)/2
/// on exact integer q-expansions to order N.
pub fn ramanujan_ode_qcheck(n: usize) -> bool {
    // sigma_k(m) by sieve
    let mut s1 = vec![Integer::new(); n + 1];
    let mut s3 = vec![Integer::new(); n + 1];
    let mut s5 = vec![Integer::new(); n + 1];
    for d in 1..=n.max(1) {
        let d3 = Integer::from(d).pow(3);
        let d5 = Integer::from(d).pow(5);
        let mut m = d;
        while m <= n {
            s1[m] += d as u64;
            s3[m] += &d3;
            s5[m] += &d5;
            m += d;
        }
    }
    let mut e2 = vec![Integer::new(); n + 1];
    let mut e4 = vec![Integer::new(); n + 1];
    let mut e6 = vec![Integer::new(); n + 1];
    e2[0] = Integer::from(1);
    e4[0] = Integer::from(1);
    e6[0] = Integer::from(1);
    for m in 1..=n {
        e2[m] = s1[m].clone() * -24;
        e4[m] = s3[m].clone() * 240;
        e6[m] = s5[m].clone() * -504;
    }
    let conv = |a: &[Integer], b: &[Integer], m: usize| -> Integer {
        let mut acc = Integer::new();
        for k in 0..=m {
            acc += (&a[k] * &b[m - k]).complete();
        }
        acc
    };
    for m in 0..=n {
        // q dE4/dq = (E2 E4 - E6)/3
        let lhs4 = e4[m].clone() * Integer::from(m) * 3u32;
        let rhs4 = conv(&e2, &e4, m) - &e6[m];
        if lhs4 != rhs4 {
            return false;
        }
        // q dE6/dq = (E2 E6 - E4^2)/2
        let lhs6 = e6[m].clone() * Integer::from(m) * 2u32;
        let rhs6 = conv(&e2, &e6, m) - conv(&e4, &e4, m);
        if lhs6 != rhs6 {
            return false;
        }
    }
    true
}

/// Membership in the closure of the fundamental domain, within tolerance.
fn in_fundamental_domain(tau: &TauPoint, tol: &Float) -> bool {
    let wp = tau.tau.prec();
    let re_ok = tau.tau.re.clone().abs() <= Float::with_val(wp, 0.5f64) + tol.clone();
    let norm_ok = tau.tau.norm_sqr() >= Float::with_val(wp, 1u32) - tol.clone();
    re_ok && norm_ok
}

/// Region membership per the definitions
/// C_inf: tau in F and |1/J| < 1; C_one: tau in F and |(J-1)/J| < 1;
/// C_zero: tau in F and |J/(J-1)| < 1 and Re(tau) < 0.
pub fn domain_member(tau: &TauPoint, r: RegionId, ctx: &PrecisionContext) -> Result<Membership> {
    let tol = pole_tol(ctx);
    if !in_fundamental_domain(tau, &tol) {
        return Ok(Membership::Out);
    }
    let wp = ctx.working_bits() + 32;
    let jj = klein_J(tau, ctx)?;
    let one = APComplex::one(wp);
    let nu = match r {
        RegionId::CInf => jj.recip(),
        RegionId::COne => &(&jj - &one) / &jj,
        RegionId::CZero => &jj / &(&jj - &one),
    };
    let t = nu.abs();
    let upper = Float::with_val(wp, Float::with_val(wp, 1u32) - &tol);
    let lower = Float::with_val(wp, Float::with_val(wp, 1u32) + &tol);
    let nu_verdict = if t < upper {
        Membership::In
    } else if t > lower {
        Membership::Out
    } else {
        Membership::BoundaryIndeterminate
    };
    let re_verdict = if r == RegionId::CZero {
        // additionally Re(tau) < 0
        if tau.tau.re.clone() > tol.clone() {
            Membership::Out
        } else if tau.tau.re.clone().abs() <= tol.clone() {
            Membership::BoundaryIndeterminate
        } else {
            Membership::In
        }
    } else {
        Membership::In
    };
    // a decisive exclusion wins; otherwise any borderline test withholds
    // certification
    Ok(match (nu_verdict, re_verdict) {
        (Membership::Out, _) | (_, Membership::Out) => Membership::Out,
        (Membership::In, Membership::In) => Membership::In,
        _ => Membership::BoundaryIndeterminate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{gamma_ap, make_context};

    fn tau_re_im(ctx: &PrecisionContext, re: Rational, im_sq: Rational) -> TauPoint {
        // tau = re + i sqrt(im_sq)
        TauPoint::new(APComplex {
            re: ctx.real(&re),
            im: ctx.real(&im_sq).sqrt(),
        })
        .unwrap()
    }

    fn sqrt_minus_n(ctx: &PrecisionContext, n: u32) -> TauPoint {
        tau_re_im(ctx, Rational::new(), Rational::from(n))
    }

    fn half_int(ctx: &PrecisionContext, n: u32) -> TauPoint {
        // (-1 + sqrt(-N))/2
        TauPoint::new(APComplex {
            re: ctx.real(Rational::from((-1, 2))),
            im: ctx.real(n).sqrt() / 2u32,
        })
        .unwrap()
    }

    fn rho(ctx: &PrecisionContext) -> TauPoint {
        half_int(ctx, 3)
    }

    fn assert_close(lhs: &Float, rhs: &Float, bound: f64, what: &str) {
        let diff = Float::with_val(lhs.prec(), lhs - rhs).abs();
        assert!(diff < bound, "{what}: |{lhs} - {rhs}| = {diff}");
    }

    #[test]
    fn reduce_translation_and_boundary() {
        let ctx = make_context(40).unwrap();
        let t = TauPoint::new(APComplex {
            re: ctx.real(5),
            im: ctx.real(1),
        })
        .unwrap();
        let (r, g) = reduce_tau(&t, &ctx).unwrap();
        assert!(r.tau.re.clone().abs() < 1e-9);
        assert!((r.tau.im.clone() - 1u32).abs() < 1e-9);
        assert_eq!(g[0][1], Integer::from(-5));

        // rho is on the boundary and stays put
        let (r2, g2) = reduce_tau(&rho(&ctx), &ctx).unwrap();
        assert!((r2.tau.re.clone() + Float::with_val(64, 0.5f64)).abs() < 1e-9);
        assert_eq!(g2[0][0], Integer::from(1));
        assert_eq!(g2[0][1], Integer::from(0));
    }

    #[test]
    fn reduce_small_point() {
        let ctx = make_context(40).unwrap();
        let t = TauPoint::new(APComplex::with_ctx(&ctx, 0.1, 0.1)).unwrap();
        let (r, g) = reduce_tau(&t, &ctx).unwrap();
        assert!(r.tau.re.clone().abs() <= 0.500001);
        assert!(r.tau.norm_sqr() >= 0.999999);
        // determinant 1
        let det = (&g[0][0] * &g[1][1]).complete() - (&g[0][1] * &g[1][0]).complete();
        assert_eq!(det, Integer::from(1));
        // g actually maps t to r
        let wp = ctx.working_bits();
        let num = &t.tau.scale(&ctx.real(&g[0][0])) + &APComplex::from_real(ctx.real(&g[0][1]));
        let den = &t.tau.scale(&ctx.real(&g[1][0])) + &APComplex::from_real(ctx.real(&g[1][1]));
        let mapped = &num / &den;
        assert!((&mapped - &r.tau).abs() < Float::with_val(wp, 1e-9));
    }

    #[test]
    fn eisenstein_zeros_at_elliptic_points() {
        let ctx = make_context(60).unwrap();
        let i_pt = sqrt_minus_n(&ctx, 1);
        let e6 = eisenstein(6, &i_pt, &ctx).unwrap();
        assert!(e6.abs() < 1e-50, "E6(i) = {e6}");
        let e4 = eisenstein(4, &rho(&ctx), &ctx).unwrap();
        assert!(e4.abs() < 1e-50, "E4(rho) = {e4}");
    }

    #[test]
    fn regime_rejected_below_threshold() {
        let ctx = make_context(30).unwrap();
        let low = TauPoint::new(APComplex::with_ctx(&ctx, 0.0, 0.2)).unwrap();
        assert!(matches!(eisenstein(4, &low, &ctx), Err(Error::OutOfRegime(_))));
        assert!(matches!(dedekind_eta(&low, &ctx), Err(Error::OutOfRegime(_))));
        // but J still works by reducing first
        assert!(klein_J(&low, &ctx).is_ok());
    }

    #[test]
    fn eta_at_i_closed_form() {
        // eta(i) = Gamma(1/4) / (2 pi^{3/4})
        let ctx = make_context(80).unwrap();
        let v = dedekind_eta(&sqrt_minus_n(&ctx, 1), &ctx).unwrap();
        let g = gamma_ap(&Rational::from((1, 4)), &ctx).unwrap();
        let wp = ctx.working_bits();
        let pi34 = ctx.pi().pow(Float::with_val(wp, 0.75f64));
        let expect = g / (pi34 * 2u32);
        assert_close(&v.re, &expect, 1e-70, "eta(i)");
        assert!(v.im.clone().abs() < 1e-70);
    }

    #[test]
    fn eta_at_rho_squared_closed_form() {
        // eta(rho)^2 = 3^{1/4} Gamma(1/3)^3 / (4 pi^2 e^{pi i/12})
        let ctx = make_context(80).unwrap();
        let v = dedekind_eta(&rho(&ctx), &ctx).unwrap();
        let sq = &v * &v;
        let g = gamma_ap(&Rational::from((1, 3)), &ctx).unwrap();
        let wp = ctx.working_bits();
        let mag = Float::with_val(wp, 3u32).pow(Float::with_val(wp, 0.25f64))
            * g.clone().pow(3u32)
            / (ctx.pi().square() * 4u32);
        let expect = unit_phase(&ctx, Rational::from((-1, 12))).scale(&mag);
        assert!((&sq - &expect).abs() < 1e-70);
    }

    #[test]
    fn eta_shift_phase() {
        // eta(tau + 1) = e^{pi i/12} eta(tau)
        let ctx = make_context(60).unwrap();
        let t = TauPoint::new(APComplex::with_ctx(&ctx, 0.0, 2.0)).unwrap();
        let t1 = TauPoint::new(APComplex::with_ctx(&ctx, 1.0, 2.0)).unwrap();
        let lhs = dedekind_eta(&t1, &ctx).unwrap();
        let rhs = &unit_phase(&ctx, Rational::from((1, 12))) * &dedekind_eta(&t, &ctx).unwrap();
        assert!((&lhs - &rhs).abs() < 1e-50);
    }

    #[test]
    fn weber_quotient_identity() {
        // f(tau) eta(tau) = e^{pi i/24} eta((-1+tau)/2)
        let ctx = make_context(60).unwrap();
        let t = TauPoint::new(APComplex::with_ctx(&ctx, 0.0, 2.0)).unwrap();
        let f = weber_f(&t, &ctx).unwrap();
        let lhs = &f * &dedekind_eta(&t, &ctx).unwrap();
        let tm = TauPoint::new(APComplex::with_ctx(&ctx, -0.5, 1.0)).unwrap();
        let rhs = &unit_phase(&ctx, Rational::from((1, 24))) * &dedekind_eta(&tm, &ctx).unwrap();
        assert!((&lhs - &rhs).abs() < 1e-50);
    }

    #[test]
    fn discriminant_dual_route() {
        let ctx = make_context(60).unwrap();
        for t in [
            sqrt_minus_n(&ctx, 1),
            TauPoint::new(APComplex::with_ctx(&ctx, 0.0, 2.0)).unwrap(),
            rho(&ctx),
        ] {
            let d = discriminant_tau(&t, &ctx).unwrap();
            assert!(d.abs().to_f64() > 0.0);
        }
        // Delta(i) is real positive and equals (2 pi)^12 eta(i)^24
        let d = discriminant_tau(&sqrt_minus_n(&ctx, 1), &ctx).unwrap();
        assert!(d.re.is_sign_positive());
        assert!(d.im.clone().abs() / d.re.clone() < 1e-40);
    }

    fn table_sqrt() -> Vec<(u32, Rational)> {
        vec![
            (1, Rational::from(1)),
            (2, Rational::from((125, 27))),
            (3, Rational::from((125, 4))),
            (4, Rational::from((1331, 8))),
            (7, Rational::from((614125, 64))),
        ]
    }

    fn table_half() -> Vec<(u32, Rational)> {
        vec![
            (3, Rational::new()),
            (7, Rational::from((-125, 64))),
            (11, Rational::from((-512, 27))),
            (19, Rational::from(-512)),
            (27, Rational::from((-64000, 9))),
            (43, Rational::from(-512000)),
            (67, Rational::from(-85184000)),
            (163, {
                let v = Integer::from(53360).pow(3);
                -Rational::from(v)
            }),
        ]
    }

    #[test]
    fn klein_j_reproduces_all_13_table_values() {
        let ctx = make_context(60).unwrap();
        let bound = 1e-50;
        for (n, expect) in table_sqrt() {
            let jj = klein_J(&sqrt_minus_n(&ctx, n), &ctx).unwrap();
            let rel = if expect.cmp0() == std::cmp::Ordering::Equal {
                jj.abs()
            } else {
                (&jj - &APComplex::from_real(ctx.real(&expect))).abs() / ctx.real(&expect).abs()
            };
            assert!(rel < bound, "J(sqrt(-{n})) off by {rel}");
        }
        for (n, expect) in table_half() {
            let jj = klein_J(&half_int(&ctx, n), &ctx).unwrap();
            let rel = if expect.cmp0() == std::cmp::Ordering::Equal {
                jj.abs()
            } else {
                (&jj - &APComplex::from_real(ctx.real(&expect))).abs() / ctx.real(&expect).abs()
            };
            assert!(rel < bound, "J at half-integer N = {n} off by {rel}");
        }
    }

    fn s2_sqrt_table() -> Vec<(u32, Rational)> {
        vec![
            (2, Rational::from((5, 14))),
            (3, Rational::from((5, 11))),
            (4, Rational::from((11, 21))),
            (7, Rational::from((85, 133))),
        ]
    }

    fn s2_half_table() -> Vec<(u32, Rational)> {
        vec![
            (7, Rational::from((5, 21))),
            (11, Rational::from((32, 77))),
            (19, Rational::from((32, 57))),
            (27, Rational::from((160, 253))),
            (43, Rational::from((640, 903))),
            (67, Rational::from((33440, 43617))),
            (163, Rational::from((77265280u64, 90856689u64))),
        ]
    }

    #[test]
    fn s2_reproduces_all_11_table_values() {
        let ctx = make_context(60).unwrap();
        for (n, expect) in s2_sqrt_table() {
            let v = s2(&sqrt_minus_n(&ctx, n), &ctx).unwrap();
            let rel = (&v - &APComplex::from_real(ctx.real(&expect))).abs();
            assert!(rel < 1e-50, "s2(sqrt(-{n})) off by {rel}");
        }
        for (n, expect) in s2_half_table() {
            let v = s2(&half_int(&ctx, n), &ctx).unwrap();
            let rel = (&v - &APComplex::from_real(ctx.real(&expect))).abs();
            assert!(rel < 1e-50, "s2 at half-integer N = {n} off by {rel}");
        }
    }

    #[test]
    fn s2_pole_at_i() {
        let ctx = make_context(40).unwrap();
        assert!(matches!(
            s2(&sqrt_minus_n(&ctx, 1), &ctx),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn dj_dtau_zero_at_i_and_matches_finite_difference() {
        let ctx = make_context(60).unwrap();
        let at_i = dJ_dtau(&sqrt_minus_n(&ctx, 1), &ctx).unwrap();
        assert!(at_i.abs() < 1e-40);

        // central difference oracle at 2i and sqrt(-2)
        let wp = ctx.working_bits();
        let h = Float::with_val(wp, 1u32) >> (ctx.target_bits() / 3);
        for t in [sqrt_minus_n(&ctx, 4), sqrt_minus_n(&ctx, 2)] {
            let analytic = dJ_dtau(&t, &ctx).unwrap();
            let hh = APComplex::from_real(h.clone());
            let tp = TauPoint::new(&t.tau + &hh).unwrap();
            let tm = TauPoint::new(&t.tau - &hh).unwrap();
            let jp = klein_J(&tp, &ctx).unwrap();
            let jm = klein_J(&tm, &ctx).unwrap();
            let fd = (&jp - &jm).scale(&Float::with_val(wp, Float::with_val(wp, 0.5f64) / &h));
            let rel = (&analytic - &fd).abs() / analytic.abs();
            let bound = Float::with_val(wp, 1u32) >> (ctx.target_bits() / 2);
            assert!(rel < bound, "J' mismatch: {rel}");
        }
    }

    #[test]
    fn dj_pole_at_rho() {
        let ctx = make_context(40).unwrap();
        assert!(matches!(dJ_dtau(&rho(&ctx), &ctx), Err(Error::Pole(_))));
    }

    #[test]
    fn ramanujan_qcheck() {
        assert!(ramanujan_ode_qcheck(0));
        assert!(ramanujan_ode_qcheck(1));
        assert!(ramanujan_ode_qcheck(200));
    }

    #[test]
    fn modularity_under_small_gamma() {
        // E4(g tau) = (c tau + d)^4 E4(tau), weight 6 for E6, J invariant.
        let ctx = make_context(50).unwrap();
        let t = TauPoint::new(APComplex::with_ctx(&ctx, 0.2, 1.2)).unwrap();
        let e4 = eisenstein(4, &t, &ctx).unwrap();
        let e6 = eisenstein(6, &t, &ctx).unwrap();
        let jj = klein_J(&t, &ctx).unwrap();
        let mut tested = 0;
        for a in -2i32..=2 {
            for b in -2i32..=2 {
                for c in -2i32..=2 {
                    for d in -2i32..=2 {
                        if a * d - b * c != 1 {
                            continue;
                        }
                        let num = &t.tau.scale(&ctx.real(a)) + &APComplex::from_real(ctx.real(b));
                        let den = &t.tau.scale(&ctx.real(c)) + &APComplex::from_real(ctx.real(d));
                        let gt = &num / &den;
                        if gt.im.to_f64() < MIN_IM {
                            continue;
                        }
                        let gtp = TauPoint::new(gt).unwrap();
                        let e4g = eisenstein(4, &gtp, &ctx).unwrap();
                        let e6g = eisenstein(6, &gtp, &ctx).unwrap();
                        let jg = klein_J(&gtp, &ctx).unwrap();
                        let w4 = &e4 * &den.pow_i32(4);
                        let w6 = &e6 * &den.pow_i32(6);
                        assert!((&e4g - &w4).abs() / e4g.abs() < 1e-40, "E4 at {a},{b},{c},{d}");
                        assert!((&e6g - &w6).abs() / e6g.abs() < 1e-40, "E6 at {a},{b},{c},{d}");
                        assert!((&jg - &jj).abs() / jj.abs() < 1e-40, "J at {a},{b},{c},{d}");
                        tested += 1;
                        if tested >= 20 {
                            return;
                        }
                    }
                }
            }
        }
        assert!(tested >= 20, "only {tested} matrices tested");
    }

    #[test]
    fn region_membership_matches_catalog_examples() {
        let ctx = make_context(50).unwrap();
        let s2t = sqrt_minus_n(&ctx, 2);
        assert_eq!(domain_member(&s2t, RegionId::CInf, &ctx).unwrap(), Membership::In);
        assert_eq!(domain_member(&s2t, RegionId::COne, &ctx).unwrap(), Membership::In);
        assert_eq!(domain_member(&s2t, RegionId::CZero, &ctx).unwrap(), Membership::Out);
        let h7 = half_int(&ctx, 7);
        assert_eq!(domain_member(&h7, RegionId::CZero, &ctx).unwrap(), Membership::In);
        // tau = i: J = 1, so (J-1)/J = 0 (in C_one test) but 1/J = 1 exactly:
        // boundary for C_inf.
        let i_pt = sqrt_minus_n(&ctx, 1);
        assert_eq!(
            domain_member(&i_pt, RegionId::CInf, &ctx).unwrap(),
            Membership::BoundaryIndeterminate
        );
    }

    #[test]
    fn weber_selberg_p3() {
        // f(sqrt(-3))^2 eta(sqrt(-3))^2 sqrt(6 pi) = (Gamma(1/3)/Gamma(2/3))^{3/2}
        let ctx = make_context(70).unwrap();
        let t = sqrt_minus_n(&ctx, 3);
        let f = weber_f(&t, &ctx).unwrap();
        let eta = dedekind_eta(&t, &ctx).unwrap();
        let wp = ctx.working_bits();
        let scale = Float::with_val(wp, ctx.pi() * 6u32).sqrt();
        let lhs = (&f.pow_i32(2) * &eta.pow_i32(2)).scale(&scale);
        let g13 = gamma_ap(&Rational::from((1, 3)), &ctx).unwrap();
        let g23 = gamma_ap(&Rational::from((2, 3)), &ctx).unwrap();
        let expect = Float::with_val(wp, g13 / g23).pow(Float::with_val(wp, 1.5f64));
        assert!((lhs.re.clone() - &expect).abs() < 1e-55, "got {lhs}, want {expect}");
        assert!(lhs.im.clone().abs() < 1e-55);
    }
}
