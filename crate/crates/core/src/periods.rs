//! Periods and quasi-periods of the normalized curve (discriminant 1),
//! via the three hypergeometric representations, plus the Picard-Fuchs
//! residual, the differential relation for H, and the CM relation.
//!
//! All root extractions use principal branches. The normalized period
//! satisfies omega1~ = 2 pi eta(tau)^2, which serves as the independent
//! oracle for every representation.

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::hypergeom::{gauss_2f1, gauss_2f1_dz, HypParams};
use crate::kernel::{APComplex, PrecisionContext};
use crate::modular::{
    dedekind_eta, domain_member, dJ_dtau, eisenstein, klein_J, Membership, RegionId, TauPoint,
};

/// Heegner point: the root tau = (-b + sqrt(-d))/(2a) of a x^2 + b x + c,
/// with d = 4ac - b^2 > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeegnerPoint {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeegnerPoint {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 {
            return Err(Error::InvalidInput("Heegner point requires a > 0".into()));
        }
        if 4 * a * c - b * b <= 0 {
            return Err(Error::InvalidInput(
                "Heegner point requires positive discriminant d = 4ac - b^2".into(),
            ));
        }
        Ok(HeegnerPoint { a, b, c })
    }

    pub fn disc(&self) -> i64 {
        4 * self.a * self.c - self.b * self.b
    }

    pub fn tau(&self, ctx: &PrecisionContext) -> TauPoint {
        let wp = ctx.working_bits() + 32;
        let re = Float::with_val(wp, Rational::from((-self.b, 2 * self.a)));
        let im = Float::with_val(wp, self.disc()).sqrt() / (2 * self.a as u32);
        TauPoint::new(APComplex { re, im }).expect("positive discriminant")
    }
}

/// Weierstrass data of the lattice Z + tau Z together with the J-line data.
#[derive(Debug, Clone)]
pub struct CurveInvariants {
    pub g2: APComplex,
    pub g3: APComplex,
    pub delta: APComplex,
    pub j_cap: APComplex,
    pub j_small: APComplex,
    /// g = -g2^3/g3^2 = 27 J/(1 - J)
    pub g_ratio: APComplex,
    /// Delta(J) = 3^9 J^2 / (16 (1 - J)^2)
    pub delta_j: APComplex,
}

/// g2 = 4 pi^4 E4 / 3, g3 = 8 pi^6 E6 / 27, Delta = g2^3 - 27 g3^2,
/// j = 1728 g2^3 / Delta, J = j / 1728.
pub fn invariants_from_tau(tau: &TauPoint, ctx: &PrecisionContext) -> Result<CurveInvariants> {
    let wp = ctx.working_bits() + 32;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let e4 = eisenstein(4, tau, ctx)?;
    let e6 = eisenstein(6, tau, ctx)?;
    let g2 = e4.scale(&Float::with_val(wp, pi.clone().pow(4u32) * 4u32 / 3u32));
    let g3 = e6.scale(&Float::with_val(wp, pi.pow(6u32) * 8u32 / 27u32));
    let g2c = g2.pow_i32(3);
    let delta = &g2c - &g3.pow_i32(2).scale(&Float::with_val(wp, 27u32));
    if delta.abs().to_f64() == 0.0 {
        return Err(Error::Pole("vanishing discriminant".into()));
    }
    let j_small = (&g2c / &delta).scale(&Float::with_val(wp, 1728u32));
    let j_cap = j_small.scale(&Float::with_val(wp, Rational::from((1, 1728))));
    // cross-check against the Eisenstein-quotient route
    let j_direct = klein_J(tau, ctx)?;
    if (&j_cap - &j_direct).abs() > ctx.target_eps() * (j_cap.abs() + 1u32) {
        return Err(Error::ConsistencyFault(
            "J from g-invariants disagrees with E4^3/(E4^3 - E6^2)".into(),
        ));
    }
    let one = APComplex::one(wp);
    let one_minus = &one - &j_cap;
    let g_ratio = (&j_cap / &one_minus).scale(&Float::with_val(wp, 27u32));
    let delta_j = (&j_cap.pow_i32(2) / &one_minus.pow_i32(2))
        .scale(&Float::with_val(wp, Rational::from((19683, 16))));
    Ok(CurveInvariants {
        g2,
        g3,
        delta,
        j_cap,
        j_small,
        g_ratio,
        delta_j,
    })
}

fn params_inf() -> HypParams {
    HypParams::new(
        Rational::from((1, 12)),
        Rational::from((5, 12)),
        Rational::from(1),
    )
    .unwrap()
}

fn params_one() -> HypParams {
    HypParams::new(
        Rational::from((1, 12)),
        Rational::from((5, 12)),
        Rational::from((1, 2)),
    )
    .unwrap()
}

fn params_zero() -> HypParams {
    HypParams::new(
        Rational::from((1, 12)),
        Rational::from((7, 12)),
        Rational::from((2, 3)),
    )
    .unwrap()
}

/// alpha = 2 i eta(i)^2 (the i-region constant).
pub fn alpha_one(ctx: &PrecisionContext) -> Result<APComplex> {
    let wp = ctx.working_bits() + 32;
    let i_pt = TauPoint::new(APComplex::i(wp).scale(&Float::with_val(wp, 1u32)))?;
    let eta = dedekind_eta(&i_pt, ctx)?;
    Ok(eta.pow_i32(2).scale(&Float::with_val(wp, 2u32)).mul_i())
}

/// alpha = i sqrt(3) eta(rho)^2 (the rho-region constant).
pub fn alpha_zero(ctx: &PrecisionContext) -> Result<APComplex> {
    let wp = ctx.working_bits() + 32;
    let rho = TauPoint::new(APComplex {
        re: Float::with_val(wp, Rational::from((-1, 2))),
        im: Float::with_val(wp, 3u32).sqrt() / 2u32,
    })?;
    let eta = dedekind_eta(&rho, ctx)?;
    Ok(eta
        .pow_i32(2)
        .scale(&Float::with_val(wp, Float::with_val(wp, 3u32).sqrt()))
        .mul_i())
}

/// rho-bar = conj(e^{2 pi i/3}) = -1/2 - i sqrt(3)/2.
fn rho_bar(wp: u32) -> APComplex {
    APComplex {
        re: Float::with_val(wp, Rational::from((-1, 2))),
        im: -(Float::with_val(wp, 3u32).sqrt() / 2u32),
    }
}

fn require_region(region: RegionId, tau: &TauPoint, ctx: &PrecisionContext) -> Result<()> {
    match domain_member(tau, region, ctx)? {
        Membership::In => Ok(()),
        Membership::Out => Err(Error::Domain(format!(
            "tau is outside region {region:?}"
        ))),
        Membership::BoundaryIndeterminate => Err(Error::Domain(format!(
            "tau is within tolerance of the boundary of {region:?}"
        ))),
    }
}

/// The normalized period from the region's hypergeometric representation,
/// with J supplied explicitly (tau enters only through the i- and rho-region
/// prefactors).
pub fn period_tilde_at(
    region: RegionId,
    j_cap: &APComplex,
    tau: &TauPoint,
    ctx: &PrecisionContext,
) -> Result<APComplex> {
    let wp = ctx.working_bits() + 32;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let one = APComplex::one(wp);
    match region {
        RegionId::CInf => {
            // (2 pi / 12^{1/4}) J^{-1/12} F(1/J)
            let root12 = Float::with_val(wp, 12u32).pow(Float::with_val(wp, 0.25f64));
            let m = Float::with_val(wp, &two_pi / &root12);
            let jr = j_cap.pow_rational(&Rational::from((-1, 12)))?;
            let f = gauss_2f1(&params_inf(), &j_cap.recip(), ctx)?;
            Ok((&jr * &f).scale(&m))
        }
        RegionId::COne => {
            // (2 pi alpha / (tau + i)) J^{-1/12} F((J-1)/J)
            let alpha = alpha_one(ctx)?;
            let m = alpha.scale(&two_pi);
            let tau0 = &tau.tau + &APComplex::i(wp);
            let jr = j_cap.pow_rational(&Rational::from((-1, 12)))?;
            let x = &(j_cap - &one) / j_cap;
            let f = gauss_2f1(&params_one(), &x, ctx)?;
            Ok(&(&m / &tau0) * &(&jr * &f))
        }
        RegionId::CZero => {
            // (2 pi alpha / (tau - rho-bar)) (1-J)^{-1/12} F(J/(J-1))
            let alpha = alpha_zero(ctx)?;
            let m = alpha.scale(&two_pi);
            let tau0 = &tau.tau - &rho_bar(wp);
            let jr = (&one - j_cap).pow_rational(&Rational::from((-1, 12)))?;
            let x = &*j_cap / &(j_cap - &one);
            let f = gauss_2f1(&params_zero(), &x, ctx)?;
            Ok(&(&m / &tau0) * &(&jr * &f))
        }
    }
}

/// Normalized period omega1~ at tau (requires region membership).
pub fn period_tilde(region: RegionId, tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    require_region(region, tau, ctx)?;
    let j_cap = klein_J(tau, ctx)?;
    period_tilde_at(region, &j_cap, tau, ctx)
}

/// Analytic d omega1~/dJ from the region representation. The i- and
/// rho-region prefactors depend on tau, so dtau/dJ = 1/J' enters there.
pub fn dperiod_dj(
    region: RegionId,
    j_cap: &APComplex,
    tau: &TauPoint,
    ctx: &PrecisionContext,
) -> Result<APComplex> {
    let wp = ctx.working_bits() + 32;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let one = APComplex::one(wp);
    let twelve = APComplex::from_real(Float::with_val(wp, 12u32));
    match region {
        RegionId::CInf => {
            // m J^{-1/12} [ -F/(12J) - F'/J^2 ]
            let root12 = Float::with_val(wp, 12u32).pow(Float::with_val(wp, 0.25f64));
            let m = Float::with_val(wp, &two_pi / &root12);
            let jr = j_cap.pow_rational(&Rational::from((-1, 12)))?;
            let x = j_cap.recip();
            let f = gauss_2f1(&params_inf(), &x, ctx)?;
            let fp = gauss_2f1_dz(&params_inf(), &x, ctx)?;
            let j2 = j_cap.pow_i32(2);
            let bracket = &(-&(&f / &(&twelve * j_cap))) - &(&fp / &j2);
            Ok((&jr * &bracket).scale(&m))
        }
        RegionId::COne => {
            // (m/tau0) J^{-1/12} [ F'/J^2 - F (1/(12J) + 1/(tau0 J')) ]
            let alpha = alpha_one(ctx)?;
            let m = alpha.scale(&two_pi);
            let tau0 = &tau.tau + &APComplex::i(wp);
            let jp = dJ_dtau(tau, ctx)?;
            let jr = j_cap.pow_rational(&Rational::from((-1, 12)))?;
            let x = &(j_cap - &one) / j_cap;
            let f = gauss_2f1(&params_one(), &x, ctx)?;
            let fp = gauss_2f1_dz(&params_one(), &x, ctx)?;
            let j2 = j_cap.pow_i32(2);
            let corr = &(&twelve * j_cap).recip() + &(&tau0 * &jp).recip();
            let bracket = &(&fp / &j2) - &(&f * &corr);
            Ok(&(&m / &tau0) * &(&jr * &bracket))
        }
        RegionId::CZero => {
            // (m/tau0) (1-J)^{-1/12} [ -F'/(J-1)^2 + F (1/(12(1-J)) - 1/(tau0 J')) ]
            let alpha = alpha_zero(ctx)?;
            let m = alpha.scale(&two_pi);
            let tau0 = &tau.tau - &rho_bar(wp);
            let jp = dJ_dtau(tau, ctx)?;
            let jr = (&one - j_cap).pow_rational(&Rational::from((-1, 12)))?;
            let x = &*j_cap / &(j_cap - &one);
            let f = gauss_2f1(&params_zero(), &x, ctx)?;
            let fp = gauss_2f1_dz(&params_zero(), &x, ctx)?;
            let jm1 = j_cap - &one;
            let corr = &(&twelve * &(&one - j_cap)).recip() - &(&tau0 * &jp).recip();
            let bracket = &(&f * &corr) - &(&fp / &jm1.pow_i32(2));
            Ok(&(&m / &tau0) * &(&jr * &bracket))
        }
    }
}

/// Normalized quasi-period eta1~ = -2 sqrt(3) J^{2/3} sqrt(J-1) d omega1~/dJ,
/// principal roots.
pub fn quasi_period_tilde(
    region: RegionId,
    tau: &TauPoint,
    ctx: &PrecisionContext,
) -> Result<APComplex> {
    require_region(region, tau, ctx)?;
    let wp = ctx.working_bits() + 32;
    let j_cap = klein_J(tau, ctx)?;
    let one = APComplex::one(wp);
    if (&j_cap - &one).abs() < ctx.target_eps() || j_cap.abs() < ctx.target_eps() {
        return Err(Error::Pole("quasi-period formula is singular at J in {0, 1}".into()));
    }
    let dw = dperiod_dj(region, &j_cap, tau, ctx)?;
    let j23 = j_cap.pow_rational(&Rational::from((2, 3)))?;
    let root = (&j_cap - &one).sqrt();
    let sqrt3 = Float::with_val(wp, 3u32).sqrt();
    Ok((-&(&(&j23 * &root) * &dw)).scale(&Float::with_val(wp, sqrt3 * 2u32)))
}

/// Invert J(tau) = j_target by Newton's method from a seed.
pub fn tau_from_j(
    j_target: &APComplex,
    seed: &TauPoint,
    ctx: &PrecisionContext,
) -> Result<TauPoint> {
    let wp = ctx.working_bits() + 32;
    let mut t = seed.clone();
    let mut tol = Float::with_val(wp, 1u32);
    tol >>= ctx.working_bits();
    let scale = Float::with_val(wp, j_target.abs() + 1u32);
    for _ in 0..64 {
        let jv = klein_J(&t, ctx)?;
        let diff = &jv - j_target;
        if diff.abs() < Float::with_val(wp, &tol * &scale) {
            return Ok(t);
        }
        let jp = dJ_dtau(&t, ctx)?;
        if jp.abs().to_f64() == 0.0 {
            return Err(Error::Pole("J'(tau) = 0 during Newton inversion".into()));
        }
        let step = &diff / &jp;
        t = TauPoint::new(&t.tau - &step)?;
    }
    Err(Error::ConsistencyFault(
        "Newton inversion of J failed to converge".into(),
    ))
}

/// omega1~ as a function of J near a base point, for finite differencing:
/// moves tau along with J by Newton inversion.
fn period_of_j(
    region: RegionId,
    j_cap: &APComplex,
    seed: &TauPoint,
    ctx: &PrecisionContext,
) -> Result<APComplex> {
    let t = match region {
        RegionId::CInf => seed.clone(), // prefactor is tau-free
        _ => tau_from_j(j_cap, seed, ctx)?,
    };
    period_tilde_at(region, j_cap, &t, ctx)
}

/// Omega = omega1~ J^{-1/6} (27/(J-1))^{-1/4}, the Picard-Fuchs normalized
/// solution.
fn omega_pf(j_cap: &APComplex, w: &APComplex, ctx: &PrecisionContext) -> Result<APComplex> {
    let wp = ctx.working_bits() + 32;
    let one = APComplex::one(wp);
    let j16 = j_cap.pow_rational(&Rational::from((-1, 6)))?;
    let quarter = (j_cap - &one)
        .scale(&Float::with_val(wp, Rational::from((1, 27))))
        .pow_rational(&Rational::from((1, 4)))?;
    Ok(&(w * &j16) * &quarter)
}

/// H = eta1~ J^{1/6} (27/(J-1))^{1/4}.
fn h_pf(j_cap: &APComplex, h: &APComplex, ctx: &PrecisionContext) -> Result<APComplex> {
    let wp = ctx.working_bits() + 32;
    let one = APComplex::one(wp);
    let j16 = j_cap.pow_rational(&Rational::from((1, 6)))?;
    let quarter = (&APComplex::from_real(Float::with_val(wp, 27u32)) / &(j_cap - &one))
        .pow_rational(&Rational::from((1, 4)))?;
    Ok(&(h * &j16) * &quarter)
}

fn fd_step(j_cap: &APComplex, ctx: &PrecisionContext) -> Result<Float> {
    let wp = ctx.working_bits() + 32;
    let mut h = j_cap.abs();
    h >>= ctx.working_bits() / 3;
    if h.to_f64() == 0.0 || !h.is_finite() {
        return Err(Error::InvalidInput(
            "finite-difference step underflowed; lower the target precision".into(),
        ));
    }
    Ok(Float::with_val(wp, h))
}

/// Residual of d^2 Omega/dJ^2 + (1/J) dOmega/dJ
/// + (31J - 4)/(144 J^2 (1-J)^2) Omega = 0, by central differences,
/// normalized by |Omega/J^2|.
pub fn picard_fuchs_residual(
    region: RegionId,
    tau: &TauPoint,
    ctx: &PrecisionContext,
) -> Result<Float> {
    require_region(region, tau, ctx)?;
    let wp = ctx.working_bits() + 32;
    let j0 = klein_J(tau, ctx)?;
    let h = fd_step(&j0, ctx)?;
    let hh = APComplex::from_real(h.clone());
    let jp = &j0 + &hh;
    let jm = &j0 - &hh;

    let w0 = period_tilde_at(region, &j0, tau, ctx)?;
    let om0 = omega_pf(&j0, &w0, ctx)?;
    let omp = omega_pf(&jp, &period_of_j(region, &jp, tau, ctx)?, ctx)?;
    let omm = omega_pf(&jm, &period_of_j(region, &jm, tau, ctx)?, ctx)?;

    let h2 = Float::with_val(wp, h.clone().square());
    let d2 = (&(&omp - &om0.scale(&Float::with_val(wp, 2u32))) + &omm)
        .scale(&Float::with_val(wp, h2.recip()));
    let d1 = (&omp - &omm).scale(&Float::with_val(wp, Float::with_val(wp, 0.5f64) / &h));

    let one = APComplex::one(wp);
    let coeff = {
        // (31 J - 4) / (144 J^2 (1 - J)^2)
        let num = &j0.scale(&Float::with_val(wp, 31u32))
            - &APComplex::from_real(Float::with_val(wp, 4u32));
        let den = (&j0 * &(&one - &j0))
            .pow_i32(2)
            .scale(&Float::with_val(wp, 144u32));
        &num / &den
    };
    let resid = &(&d2 + &(&d1 / &j0)) + &(&om0 * &coeff);
    let scale = (&om0 / &j0.pow_i32(2)).abs();
    Ok(Float::with_val(ctx.working_bits(), resid.abs() / scale))
}

/// Residual of 36 J(J-1) dOmega/dJ = 3(2+J) Omega - 2(J-1) H, normalized by
/// the magnitude of the largest participating term.
pub fn differential_relation_check(
    region: RegionId,
    tau: &TauPoint,
    ctx: &PrecisionContext,
) -> Result<Float> {
    require_region(region, tau, ctx)?;
    let wp = ctx.working_bits() + 32;
    let j0 = klein_J(tau, ctx)?;
    let h = fd_step(&j0, ctx)?;
    let hh = APComplex::from_real(h.clone());
    let jp = &j0 + &hh;
    let jm = &j0 - &hh;

    let omp = omega_pf(&jp, &period_of_j(region, &jp, tau, ctx)?, ctx)?;
    let omm = omega_pf(&jm, &period_of_j(region, &jm, tau, ctx)?, ctx)?;
    let d1 = (&omp - &omm).scale(&Float::with_val(wp, Float::with_val(wp, 0.5f64) / &h));

    let w0 = period_tilde_at(region, &j0, tau, ctx)?;
    let om0 = omega_pf(&j0, &w0, ctx)?;
    let eta = quasi_period_tilde(region, tau, ctx)?;
    let h0 = h_pf(&j0, &eta, ctx)?;

    let one = APComplex::one(wp);
    let jm1 = &j0 - &one;
    let lhs = (&(&j0 * &jm1) * &d1).scale(&Float::with_val(wp, 36u32));
    let t1 = (&(&j0 + &APComplex::from_real(Float::with_val(wp, 2u32))) * &om0)
        .scale(&Float::with_val(wp, 3u32));
    let t2 = (&jm1 * &h0).scale(&Float::with_val(wp, 2u32));
    let resid = &lhs - &(&t1 - &t2);
    let scale = Float::with_val(wp, lhs.abs().max(&t1.abs()).max(&t2.abs()));
    Ok(Float::with_val(ctx.working_bits(), resid.abs() / scale))
}

/// Pick the region containing tau (infinity-region first, then i, then rho).
pub fn pick_region(tau: &TauPoint, ctx: &PrecisionContext) -> Result<RegionId> {
    for r in [RegionId::CInf, RegionId::COne, RegionId::CZero] {
        if domain_member(tau, r, ctx)? == Membership::In {
            return Ok(r);
        }
    }
    Err(Error::Domain("tau lies in no evaluation region".into()))
}

/// 3 gamma_3 / (2 gamma_2) on the discriminant-1 curve, computed branch-free
/// from the eta normalization: gamma_2 = E4/(12 eta^8),
/// gamma_3 = E6/(216 eta^12), so the ratio is E6/(12 E4 eta^4).
pub fn gamma_ratio(tau: &TauPoint, ctx: &PrecisionContext) -> Result<APComplex> {
    let wp = ctx.working_bits() + 32;
    let e4 = eisenstein(4, tau, ctx)?;
    let e6 = eisenstein(6, tau, ctx)?;
    let eta = dedekind_eta(tau, ctx)?;
    let den = (&e4 * &eta.pow_i32(4)).scale(&Float::with_val(wp, 12u32));
    Ok(&e6 / &den)
}

/// CM relation residual: |(omega1~/2pi)[eta1~ - omega1~ (3 g3/2 g2) s2(tau)]
/// - a/sqrt(d)| on the discriminant-1 curve.
///
/// The product (3 g3/2 g2) s2 is formed with its Eisenstein factors cancelled
/// algebraically: gamma-ratio times s2 = (E2 - 3/(pi Im tau))/(12 eta^4),
/// which stays finite at the E4 = 0 and E6 = 0 points where the two factors
/// separately blow up or vanish. At J = 0 the quasi-period representation is
/// singular, so eta1~ falls back to the Weierstrass relation
/// eta1 omega1 = pi^2 E2 / 3 (with the hypergeometric omega1~).
pub fn cm_relation(h: &HeegnerPoint, ctx: &PrecisionContext) -> Result<Float> {
    let wp = ctx.working_bits() + 32;
    let tau = h.tau(ctx);
    let region = pick_region(&tau, ctx)?;
    let w = period_tilde(region, &tau, ctx)?;
    let e2 = eisenstein(2, &tau, ctx)?;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let q = match quasi_period_tilde(region, &tau, ctx) {
        Ok(q) => q,
        Err(Error::Pole(_)) => {
            let pi2 = Float::with_val(wp, pi.clone().square());
            (&e2 / &w).scale(&Float::with_val(wp, pi2 / 3u32))
        }
        Err(e) => return Err(e),
    };
    let eta = dedekind_eta(&tau, ctx)?;
    let corr = Float::with_val(wp, 3u32) / Float::with_val(wp, &pi * &tau.tau.im);
    let gs = &(&e2 - &APComplex::from_real(corr))
        / &eta.pow_i32(4).scale(&Float::with_val(wp, 12u32));
    let two_pi = Float::with_val(wp, pi * 2u32);
    let inner = &q - &(&w * &gs);
    let lhs = (&w * &inner).scale(&two_pi.recip());
    let rhs = Float::with_val(wp, h.a) / Float::with_val(wp, h.disc()).sqrt();
    let diff = &lhs - &APComplex::from_real(rhs);
    Ok(Float::with_val(ctx.working_bits(), diff.abs()))
}

/// Residuals of the root identity on the discriminant-1 curve:
/// (3 g3/2 g2) sqrt(J)/sqrt(J-1) = (J Delta)^{1/6}/sqrt(12)  (Delta = 1),
/// and E4/E6 = (2 pi^2/(9 omega1~^2)) J^{1/3} sqrt(27)/sqrt(J-1),
/// principal branches throughout.
pub fn lemma_root_identity(tau: &TauPoint, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let wp = ctx.working_bits() + 32;
    let j_cap = klein_J(tau, ctx)?;
    let one = APComplex::one(wp);
    if j_cap.abs() < ctx.target_eps() || (&j_cap - &one).abs() < ctx.target_eps() {
        return Err(Error::Pole("root identity is singular at J in {0, 1}".into()));
    }
    // gamma_2 = J^{1/3}, gamma_3 = sqrt((J-1)/27), principal
    let g2 = j_cap.pow_rational(&Rational::from((1, 3)))?;
    let g3 = (&j_cap - &one)
        .scale(&Float::with_val(wp, Rational::from((1, 27))))
        .sqrt();
    let ratio = (&g3 / &g2).scale(&Float::with_val(wp, Rational::from((3, 2))));
    let lhs1 = &ratio * &(&j_cap.sqrt() / &(&j_cap - &one).sqrt());
    let rhs1 = j_cap
        .pow_rational(&Rational::from((1, 6)))?
        .scale(&Float::with_val(wp, Float::with_val(wp, 12u32).sqrt().recip()));
    let r1 = (&lhs1 - &rhs1).abs();

    let region = pick_region(tau, ctx)?;
    let w = period_tilde(region, tau, ctx)?;
    let e4 = eisenstein(4, tau, ctx)?;
    let e6 = eisenstein(6, tau, ctx)?;
    let lhs2 = &e4 / &e6;
    let pi2 = Float::with_val(wp, rug::float::Constant::Pi).square();
    let pref = (&APComplex::from_real(Float::with_val(wp, &pi2 * &Float::with_val(wp, 2u32))))
        .scale(&Float::with_val(wp, Rational::from((1, 9))));
    let rhs2 = &(&pref / &w.pow_i32(2))
        * &(&j_cap
            .pow_rational(&Rational::from((1, 3)))?
            .scale(&Float::with_val(wp, Float::with_val(wp, 27u32).sqrt()))
            / &(&j_cap - &one).sqrt());
    let r2 = (&lhs2 - &rhs2).abs();
    Ok((
        Float::with_val(ctx.working_bits(), r1),
        Float::with_val(ctx.working_bits(), r2),
    ))
}
