//! The certification suite behind `selftest` and the acceptance test:
//! one named check per acceptance criterion, each returning pass/fail plus a
//! short residual summary. `Quick` runs everything at 100-digit contexts;
//! `Full` uses the contractual precisions (1000-digit series, 300-digit
//! hypergeometric and Chowla-Selberg suites, 100k-digit pi).

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::Result;
use crate::fastseries::{binary_split, compute_pi, cross_check_pi, SeriesTermSpec, SplitNode};
use crate::hypergeom::{
    decide_regime, gauss_2f1, gauss_2f1_dz, gauss_2f1_in_regime, gauss_2f1_stats, gen_3f2,
    pochhammer, sextuple_identity, Hyp3F2Params, HypParams, HypRegime,
};
use crate::identities::{
    catalog, verify_record, verify_table_values, IdentityKind, RhsDescriptor,
};
use crate::kernel::{make_context, APComplex, PrecisionContext};
use crate::modular::{
    dedekind_eta, domain_member, eisenstein, ramanujan_ode_qcheck, Membership, RegionId, TauPoint,
};
use crate::periods::{
    cm_relation, differential_relation_check, period_tilde, picard_fuchs_residual, HeegnerPoint,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

/// 10^{-k} at working precision.
fn tol(wp: u32, k: i32) -> Float {
    Float::with_val(wp, 10u32).pow(-k)
}

fn sqrt_tau(ctx: &PrecisionContext, n: u32) -> TauPoint {
    let wp = ctx.working_bits() + 32;
    TauPoint::new(APComplex {
        re: Float::with_val(wp, 0u32),
        im: Float::with_val(wp, n).sqrt(),
    })
    .expect("upper half plane")
}

fn half_int_tau(ctx: &PrecisionContext, n: u32) -> TauPoint {
    let wp = ctx.working_bits() + 32;
    TauPoint::new(APComplex {
        re: Float::with_val(wp, Rational::from((-1, 2))),
        im: Float::with_val(wp, n).sqrt() / 2u32,
    })
    .expect("upper half plane")
}

/// The thirteen Heegner points of the value tables.
fn catalog_points() -> Vec<HeegnerPoint> {
    catalog()
        .iter()
        .filter(|r| matches!(r.rhs, RhsDescriptor::TableJ))
        .map(|r| r.heegner.expect("table rows carry a point"))
        .collect()
}

// --- criterion 1: dual-series pi with timing budgets ---

fn check_pi(level: Level) -> Result<(bool, String)> {
    let t0 = Instant::now();
    let small = compute_pi(1000)?;
    let t_small = t0.elapsed().as_secs_f64();
    let mut pass = t_small < 1.0;
    let mut detail = format!("compute_pi(1000) in {t_small:.3} s");
    match level {
        Level::Quick => {
            let cross = cross_check_pi(1000)?;
            pass &= small == cross;
            detail.push_str(if small == cross {
                "; 1000-digit dual-series agreement"
            } else {
                "; 1000-digit dual-series MISMATCH"
            });
        }
        Level::Full => {
            let t1 = Instant::now();
            let big = compute_pi(100_000)?;
            let t_big = t1.elapsed().as_secs_f64();
            let cross = cross_check_pi(10_000)?;
            let agree = big.starts_with(&cross) && big.starts_with(&small);
            pass &= agree && t_big < 60.0;
            detail.push_str(&format!(
                "; compute_pi(100000) in {t_big:.2} s; 10000-digit prefix {}",
                if agree { "agrees" } else { "DISAGREES" }
            ));
        }
    }
    Ok((pass, detail))
}

// --- criteria 2-4: the identity catalog at contractual precision ---

fn verify_kind(
    kind: IdentityKind,
    digits: u32,
    per_record_budget: Option<f64>,
) -> Result<(bool, String, Vec<(String, String)>)> {
    let ctx = make_context(digits)?;
    let mut pass = true;
    let mut worst = Float::with_val(64, 0u32);
    let mut slowest = 0.0f64;
    let mut notes = Vec::new();
    for rec in catalog().iter().filter(|r| r.kind == kind) {
        let t0 = Instant::now();
        let report = verify_record(rec, &ctx)?;
        let dt = t0.elapsed().as_secs_f64();
        slowest = slowest.max(dt);
        if let Some(budget) = per_record_budget {
            pass &= dt < budget;
        }
        pass &= report.pass;
        if report.rel_diff > worst {
            worst = Float::with_val(64, &report.rel_diff);
        }
        notes.push((report.id, report.notes));
    }
    let detail = format!("worst rel_diff {worst:.3e}, slowest record {slowest:.2} s");
    Ok((pass, detail, notes))
}

fn check_series(level: Level) -> Result<(bool, String)> {
    let digits = if level == Level::Quick { 100 } else { 1000 };
    let (mut pass, detail, notes) = verify_kind(IdentityKind::SeriesInfty, digits, None)?;
    // the sqrt(-7) record must also adjudicate its misprinted base
    let adjudicated = notes
        .iter()
        .any(|(id, n)| id == "series.sqrt-7" && n.contains("printed base fails"));
    pass &= adjudicated;
    Ok((
        pass,
        format!(
            "11 records at {digits} digits; {detail}; misprinted base {}",
            if adjudicated { "recorded" } else { "NOT recorded" }
        ),
    ))
}

fn check_hyp_one(level: Level) -> Result<(bool, String)> {
    let digits = if level == Level::Quick { 100 } else { 300 };
    let (mut pass, detail, notes) = verify_kind(IdentityKind::HypOne, digits, None)?;
    let adjudicated = notes
        .iter()
        .any(|(id, n)| id == "one.sqrt-4" && n.contains("printed sign confirmed"));
    pass &= adjudicated;
    Ok((
        pass,
        format!(
            "4 records at {digits} digits; {detail}; sign adjudication {}",
            if adjudicated { "recorded" } else { "NOT recorded" }
        ),
    ))
}

fn check_hyp_zero(level: Level) -> Result<(bool, String)> {
    let digits = if level == Level::Quick { 100 } else { 300 };
    let budget = if level == Level::Full { Some(10.0) } else { None };
    let (mut pass, detail, _) = verify_kind(IdentityKind::HypZero, digits, budget)?;
    // the five large-argument records must route through the z -> 1
    // connection expansion
    let mut routed = 0;
    for rec in catalog().iter().filter(|r| r.kind == IdentityKind::HypZero) {
        if let RhsDescriptor::Hyp { params, arg, .. } = &rec.rhs {
            let big = matches!(
                rec.id,
                "zero.halfint-19"
                    | "zero.halfint-27"
                    | "zero.halfint-43"
                    | "zero.halfint-67"
                    | "zero.halfint-163"
            );
            if !big {
                continue;
            }
            let z = APComplex::from_real(Float::with_val(256, arg));
            if decide_regime(params, &z)? == HypRegime::ConnectionAt1 {
                routed += 1;
            }
        }
    }
    pass &= routed == 5;
    Ok((
        pass,
        format!("7 records at {digits} digits; {detail}; {routed}/5 via connection"),
    ))
}

// --- criterion 5: value tables and the elliptic-point zeros ---

fn check_tables(_level: Level) -> Result<(bool, String)> {
    let ctx = make_context(100)?;
    let wp = ctx.working_bits();
    let reports = verify_table_values(&ctx)?;
    let mut pass = reports.len() == 24 && reports.iter().all(|r| r.pass);
    let mut worst = Float::with_val(64, 0u32);
    for r in &reports {
        if r.rel_diff > worst {
            worst = Float::with_val(64, &r.rel_diff);
        }
    }
    let e6_i = eisenstein(6, &sqrt_tau(&ctx, 1), &ctx)?.abs();
    let e4_rho = eisenstein(4, &half_int_tau(&ctx, 3), &ctx)?.abs();
    let zeros = e6_i < tol(wp, 90) && e4_rho < tol(wp, 90);
    pass &= zeros;
    Ok((
        pass,
        format!(
            "24 table rows, worst rel_diff {worst:.3e}; |E6(i)| = {e6_i:.3e}, |E4(rho)| = {e4_rho:.3e}"
        ),
    ))
}

// --- criterion 6: the eta-square period oracle and region overlap ---

fn check_period_oracle(_level: Level) -> Result<(bool, String)> {
    let ctx = make_context(100)?;
    let wp = ctx.working_bits() + 32;
    let bound = tol(wp, 90);
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let mut pass = true;
    let mut pairs = 0usize;
    let mut worst = Float::with_val(64, 0u32);
    for h in catalog_points() {
        let t = h.tau(&ctx);
        let oracle = dedekind_eta(&t, &ctx)?.pow_i32(2).scale(&two_pi);
        for region in [RegionId::CInf, RegionId::COne, RegionId::CZero] {
            if domain_member(&t, region, &ctx)? != Membership::In {
                continue;
            }
            let w = period_tilde(region, &t, &ctx)?;
            let rel = Float::with_val(wp, (&w - &oracle).abs() / oracle.abs());
            pass &= rel < bound;
            if rel > worst {
                worst = Float::with_val(64, &rel);
            }
            pairs += 1;
        }
    }
    // C_inf and C_one overlap on sqrt(-2), sqrt(-3), 2i, sqrt(-7)
    let mut overlap_worst = Float::with_val(64, 0u32);
    for n in [2u32, 3, 4, 7] {
        let t = sqrt_tau(&ctx, n);
        let a = period_tilde(RegionId::CInf, &t, &ctx)?;
        let b = period_tilde(RegionId::COne, &t, &ctx)?;
        let rel = Float::with_val(wp, (&a - &b).abs() / a.abs());
        pass &= rel < bound;
        if rel > overlap_worst {
            overlap_worst = Float::with_val(64, &rel);
        }
    }
    Ok((
        pass,
        format!(
            "{pairs} in-region (point, representation) pairs, worst {worst:.3e}; overlap worst {overlap_worst:.3e}"
        ),
    ))
}

// --- criterion 7: Picard-Fuchs and differential-relation residuals ---

fn region_samples(ctx: &PrecisionContext, region: RegionId) -> Vec<TauPoint> {
    let wp = ctx.working_bits() + 32;
    let mk = |re: f64, im: f64| {
        TauPoint::new(APComplex {
            re: Float::with_val(wp, re),
            im: Float::with_val(wp, im),
        })
        .expect("upper half plane")
    };
    (0..10)
        .map(|k| {
            let k = k as f64;
            match region {
                RegionId::CInf => mk((k - 4.5) / 40.0, 1.25 + 0.06 * k),
                RegionId::COne => mk(0.02 * (k - 4.5), 1.01 + 0.012 * k),
                RegionId::CZero => mk(-0.46 + 0.004 * k, 1.0 + 0.015 * k),
            }
        })
        .collect()
}

fn check_ode_residuals(_level: Level) -> Result<(bool, String)> {
    let ctx = make_context(100)?;
    let wp = ctx.working_bits();
    let bound = tol(wp, 30);
    let mut pass = true;
    let mut worst = Float::with_val(64, 0u32);
    let mut count = 0usize;
    for region in [RegionId::CInf, RegionId::COne, RegionId::CZero] {
        for t in region_samples(&ctx, region) {
            if domain_member(&t, region, &ctx)? != Membership::In {
                return Ok((false, format!("sample point left region {region:?}")));
            }
            let pf = picard_fuchs_residual(region, &t, &ctx)?;
            let dr = differential_relation_check(region, &t, &ctx)?;
            for r in [&pf, &dr] {
                pass &= *r < bound;
                if *r > worst {
                    worst = Float::with_val(64, r);
                }
            }
            count += 1;
        }
    }
    Ok((
        pass,
        format!("{count} sample points, worst residual {worst:.3e}"),
    ))
}

// --- criterion 8: the CM relation at every applicable Heegner point ---

fn check_cm_relation(_level: Level) -> Result<(bool, String)> {
    let ctx = make_context(100)?;
    let wp = ctx.working_bits();
    let bound = tol(wp, 90);
    let mut pass = true;
    let mut worst = Float::with_val(64, 0u32);
    let mut count = 0usize;
    for h in catalog_points() {
        if h.disc() == 4 && h.b == 0 && h.a == 1 && h.c == 1 {
            continue; // tau = i sits on the s2 pole
        }
        let r = cm_relation(&h, &ctx)?;
        pass &= r < bound;
        if r > worst {
            worst = Float::with_val(64, &r);
        }
        count += 1;
    }
    pass &= count == 12;
    Ok((pass, format!("{count} points, worst residual {worst:.3e}")))
}

// --- criterion 9: exact suites, zero tolerance ---

fn node_value(spec: &SeriesTermSpec, node: &SplitNode) -> Rational {
    Rational::from((node.t.clone(), node.q.clone()))
        / Rational::from(spec.linear_offset.denom().clone())
}

fn brute_force(spec: &SeriesTermSpec, n0: u64, n1: u64) -> Rational {
    let mut rel = Rational::from(1); // t_n / t_{n0}
    let mut sum = Rational::new();
    for n in n0..n1 {
        sum += (spec.linear_offset.clone() + Rational::from(n)) * &rel;
        rel *= spec.term_ratio(n);
    }
    sum
}

fn check_exact_suites(_level: Level) -> Result<(bool, String)> {
    let mut pass = ramanujan_ode_qcheck(200);
    let mut sextuple_ok = true;
    for n in 0..=50u64 {
        let (lhs, rhs) = sextuple_identity(n);
        sextuple_ok &= lhs == rhs;
    }
    pass &= sextuple_ok;
    let mut split_ok = true;
    let mut rng = StdRng::seed_from_u64(0x5eed_ca7a_109);
    for _ in 0..50 {
        let a = Rational::from((rng.gen_range(-999i64..=999), rng.gen_range(1i64..=60)));
        let base = Rational::from((rng.gen_range(2000i64..=1_000_000), rng.gen_range(1i64..=16)));
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let n0 = rng.gen_range(0u64..16);
        let n1 = n0 + rng.gen_range(1u64..24);
        let spec = SeriesTermSpec::new(a, base, sign)?;
        let node = binary_split(&spec, n0, n1)?;
        split_ok &= node_value(&spec, &node) == brute_force(&spec, n0, n1);
    }
    pass &= split_ok;
    Ok((
        pass,
        format!(
            "q-expansion ODE to order 200: {}; sextuple n <= 50: {sextuple_ok}; 50 random splits: {split_ok}",
            ramanujan_ode_qcheck(200)
        ),
    ))
}

// --- criterion 10: Chowla-Selberg and the eta closed forms ---

fn check_chowla_selberg(level: Level) -> Result<(bool, String)> {
    let digits = if level == Level::Quick { 100 } else { 300 };
    let (mut pass, detail, _) = verify_kind(IdentityKind::ChowlaSelberg, digits, None)?;
    // eta(rho)^2 closed form (the p = 3 special value) at the same precision
    let ctx = make_context(digits)?;
    let rho = catalog()
        .into_iter()
        .find(|r| r.id == "eta.rho")
        .expect("catalog record");
    let rho_report = verify_record(&rho, &ctx)?;
    pass &= rho_report.pass;
    // eta(i) closed form at full contractual precision
    let eta_digits = if level == Level::Quick { 100 } else { 1000 };
    let eta_ctx = make_context(eta_digits)?;
    let eta_i = catalog()
        .into_iter()
        .find(|r| r.id == "eta.i")
        .expect("catalog record");
    let eta_report = verify_record(&eta_i, &eta_ctx)?;
    pass &= eta_report.pass;
    Ok((
        pass,
        format!(
            "7 primes at {digits} digits; {detail}; eta(rho)^2 rel {:.3e}; eta(i) at {eta_digits} digits rel {:.3e}",
            rho_report.rel_diff, eta_report.rel_diff
        ),
    ))
}

// --- criterion 11: the hypergeometric engine ---

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn hyp_param_sets() -> [HypParams; 3] {
    [
        HypParams::new(r(1, 12), r(5, 12), r(1, 1)).unwrap(),
        HypParams::new(r(1, 12), r(5, 12), r(1, 2)).unwrap(),
        HypParams::new(r(1, 12), r(7, 12), r(2, 3)).unwrap(),
    ]
}

/// Residual of z(1-z)F'' + (c - (a+b+1)z)F' - abF with F'' from the
/// twice-shifted contiguous representation, normalized by the largest term.
fn hyp_ode_residual(p: &HypParams, z: &APComplex, ctx: &PrecisionContext) -> Result<Float> {
    let wp = ctx.working_bits() + 32;
    let f = gauss_2f1(p, z, ctx)?;
    let fp = gauss_2f1_dz(p, z, ctx)?;
    let p2 = p.shifted().shifted();
    let c2 = p.a.clone() * (p.a.clone() + 1u32) * &p.b * (p.b.clone() + 1u32)
        / (p.c.clone() * (p.c.clone() + 1u32));
    let fpp = gauss_2f1(&p2, z, ctx)?.scale(&Float::with_val(wp, &c2));
    let one = APComplex::one(wp);
    let t2 = &(z * &(&one - z)) * &fpp;
    let lin = &APComplex::from_real(Float::with_val(wp, &p.c))
        - &z.scale(&Float::with_val(wp, p.a.clone() + &p.b + 1u32));
    let t1 = &lin * &fp;
    let t0 = f.scale(&Float::with_val(wp, p.a.clone() * &p.b));
    let resid = &(&t2 + &t1) - &t0;
    let scale = Float::with_val(wp, t2.abs().max(&t1.abs()).max(&t0.abs()));
    Ok(Float::with_val(ctx.working_bits(), resid.abs() / scale))
}

fn check_hypergeom(_level: Level) -> Result<(bool, String)> {
    let ctx = make_context(100)?;
    let wp = ctx.working_bits() + 32;
    let bound = tol(wp, 80);
    let mut pass = true;

    // Clausen: 2F1(a, b; a+b+1/2; z)^2 = 3F2(2a, 2b, a+b; 2a+2b, a+b+1/2; z)
    let a = r(1, 12);
    let b = r(5, 12);
    let cl = HypParams::new(a.clone(), b.clone(), a.clone() + &b + r(1, 2)).unwrap();
    let p32 = Hyp3F2Params {
        a: [
            a.clone() * 2u32,
            b.clone() * 2u32,
            a.clone() + &b,
        ],
        b: [a.clone() * 2u32 + b.clone() * 2u32, a.clone() + &b + r(1, 2)],
    };
    let z = APComplex::from_real(Float::with_val(wp, Rational::from((2, 5))));
    let clausen_rel = {
        let lhs = gauss_2f1(&cl, &z, &ctx)?.pow_i32(2);
        let rhs = gen_3f2(&p32, &z, &ctx)?;
        Float::with_val(wp, (&lhs - &rhs).abs() / rhs.abs())
    };
    pass &= clausen_rel < bound;

    // regime agreement at z = 1/2 for the c = a + b parameter set
    let pc = HypParams::new(r(1, 12), r(5, 12), r(1, 2)).unwrap();
    let zh = APComplex::from_real(Float::with_val(wp, Rational::from((1, 2))));
    let agree_rel = {
        let d = gauss_2f1_in_regime(&pc, &zh, HypRegime::DirectSeries, &ctx)?;
        let c = gauss_2f1_in_regime(&pc, &zh, HypRegime::ConnectionAt1, &ctx)?;
        Float::with_val(wp, (&d - &c).abs() / d.abs())
    };
    pass &= agree_rel < bound;

    // hypergeometric ODE residual for every catalog parameter set
    let mut ode_worst = Float::with_val(64, 0u32);
    for p in hyp_param_sets() {
        for z in [
            APComplex::with_ctx(&ctx, 0.31, 0.2),
            APComplex::with_ctx(&ctx, -0.55, 0.0),
        ] {
            let res = hyp_ode_residual(&p, &z, &ctx)?;
            pass &= res < bound;
            if res > ode_worst {
                ode_worst = Float::with_val(64, &res);
            }
        }
    }

    // convergence budget hard against the z -> 1 edge
    let pz = HypParams::new(r(1, 12), r(7, 12), r(2, 3)).unwrap();
    let z_edge = {
        let one = Float::with_val(wp, 1u32);
        APComplex::from_real(one - Float::with_val(wp, 6.6e-15f64))
    };
    let (v, regime, terms) = gauss_2f1_stats(&pz, &z_edge, &ctx)?;
    let edge_ok = regime == HypRegime::ConnectionAt1 && terms <= 25 && v.abs().is_finite();
    pass &= edge_ok;

    // sanity: the exact Pochhammer machinery agrees with the series front
    let poch = pochhammer(&r(1, 12), 3)
        == r(1, 12) * r(13, 12) * r(25, 12);
    pass &= poch;

    Ok((
        pass,
        format!(
            "Clausen rel {clausen_rel:.3e}; regime agreement {agree_rel:.3e}; ODE worst {ode_worst:.3e}; edge via connection in {terms} terms"
        ),
    ))
}

// --- driver ---

type Check = fn(Level) -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 11] = [
    ("pi-dual-series", check_pi),
    ("series-catalog", check_series),
    ("hyp-one-catalog", check_hyp_one),
    ("hyp-zero-catalog", check_hyp_zero),
    ("value-tables", check_tables),
    ("period-oracle", check_period_oracle),
    ("ode-residuals", check_ode_residuals),
    ("cm-relation", check_cm_relation),
    ("exact-suites", check_exact_suites),
    ("chowla-selberg", check_chowla_selberg),
    ("hypergeometric", check_hypergeom),
];

/// Run every check at the given level, streaming each outcome to `sink`.
/// Returns true only if every check passed.
pub fn run_level(level: Level, mut sink: impl FnMut(&CheckOutcome)) -> bool {
    let mut all = true;
    for (name, f) in CHECKS {
        let t0 = Instant::now();
        let (pass, detail) = match f(level) {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        let outcome = CheckOutcome {
            name,
            pass,
            detail,
            seconds: t0.elapsed().as_secs_f64(),
        };
        all &= outcome.pass;
        sink(&outcome);
    }
    all
}

/// Collect all outcomes (convenience wrapper over `run_level`).
pub fn run(level: Level) -> (bool, Vec<CheckOutcome>) {
    let mut v = Vec::new();
    let all = run_level(level, |o| v.push(o.clone()));
    (all, v)
}
