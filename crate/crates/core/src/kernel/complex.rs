use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::kernel::PrecisionContext;

/// Arbitrary-precision complex number carried at a fixed working precision.
///
/// Log and fractional powers use the principal branch, Arg in (-pi, pi].
#[derive(Debug, Clone, PartialEq)]
pub struct APComplex {
    pub re: Float,
    pub im: Float,
}

impl APComplex {
    pub fn new(re: Float, im: Float) -> Self {
        APComplex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        APComplex {
            re,
            im: Float::with_val(prec, 0),
        }
    }

    pub fn zero(prec: u32) -> Self {
        APComplex {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn one(prec: u32) -> Self {
        APComplex {
            re: Float::with_val(prec, 1),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn i(prec: u32) -> Self {
        APComplex {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn with_ctx(ctx: &PrecisionContext, re: f64, im: f64) -> Self {
        APComplex {
            re: ctx.real(re),
            im: ctx.real(im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        APComplex {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    /// |z|
    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().hypot(&self.im))
    }

    /// |z|^2, cheaper than abs() when only comparisons are needed.
    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        // atan2(im, re); rug's Float::atan2 takes self as the ordinate.
        Float::with_val(self.prec(), self.im.clone().atan2(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        APComplex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn mul_i(&self) -> Self {
        APComplex {
            re: Float::with_val(self.im.prec(), -&self.im),
            im: self.re.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        APComplex {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, Float::with_val(p, -&self.im) / n),
        }
    }

    /// exp(z) = e^re (cos im + i sin im)
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.clone().exp());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        APComplex {
            re: Float::with_val(p, &m * c),
            im: Float::with_val(p, m * s),
        }
    }

    /// Principal logarithm: ln|z| + i Arg(z).
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput("log of zero".into()));
        }
        Ok(APComplex {
            re: self.abs().ln(),
            im: self.arg(),
        })
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        principal_root(self, 2).expect("n = 2 is valid")
    }

    /// Principal rational power z^{p/q}.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self> {
        if self.is_zero() {
            if e.cmp0() == std::cmp::Ordering::Greater {
                return Ok(APComplex::zero(self.prec()));
            }
            return Err(Error::InvalidInput("zero to nonpositive power".into()));
        }
        // Positive reals stay on the real axis; avoids spurious imaginary dust.
        if self.im.is_zero() && self.re.is_sign_positive() {
            let p = self.prec();
            let ef = Float::with_val(p, e);
            return Ok(APComplex::from_real(Float::with_val(
                p,
                self.re.clone().pow(ef),
            )));
        }
        let l = self.ln()?;
        let p = self.prec();
        let ef = Float::with_val(p, e);
        Ok(APComplex {
            re: Float::with_val(p, &l.re * &ef),
            im: Float::with_val(p, &l.im * ef),
        }
        .exp())
    }

    /// z^k for integer k.
    pub fn pow_i32(&self, k: i32) -> Self {
        let p = self.prec();
        let mut acc = APComplex::one(p);
        let mut base = if k < 0 { self.recip() } else { self.clone() };
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// String form "a + b i" with the given number of significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let re = format!("{:.*e}", digits, self.re);
        let im = &self.im;
        if im.is_zero() {
            re
        } else if im.is_sign_positive() {
            format!("{re} + {:.*e} i", digits, im)
        } else {
            format!("{re} - {:.*e} i", digits, Float::with_val(im.prec(), -im))
        }
    }
}

/// Principal n-th root: exp(log(z)/n); the argument of the result lies in
/// (-pi/n, pi/n].
pub fn principal_root(z: &APComplex, n: u32) -> Result<APComplex> {
    if n == 0 {
        return Err(Error::InvalidInput("root order must be positive".into()));
    }
    if z.is_zero() {
        return Ok(APComplex::zero(z.prec()));
    }
    let p = z.prec();
    if z.im.is_zero() && z.re.is_sign_positive() {
        if n == 2 {
            return Ok(APComplex::from_real(z.re.clone().sqrt()));
        }
        let e = Float::with_val(p, Rational::from((1u32, n)));
        return Ok(APComplex::from_real(Float::with_val(
            p,
            z.re.clone().pow(e),
        )));
    }
    let l = z.ln()?;
    let nf = Float::with_val(p, n);
    let w = APComplex {
        re: Float::with_val(p, &l.re / &nf),
        im: Float::with_val(p, &l.im / &nf),
    };
    Ok(w.exp())
}

impl fmt::Display for APComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(17))
    }
}

impl Add for &APComplex {
    type Output = APComplex;
    fn add(self, rhs: &APComplex) -> APComplex {
        let p = self.prec().max(rhs.prec());
        APComplex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl Sub for &APComplex {
    type Output = APComplex;
    fn sub(self, rhs: &APComplex) -> APComplex {
        let p = self.prec().max(rhs.prec());
        APComplex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl Mul for &APComplex {
    type Output = APComplex;
    fn mul(self, rhs: &APComplex) -> APComplex {
        let p = self.prec().max(rhs.prec());
        APComplex {
            re: Float::with_val(p, Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im)),
            im: Float::with_val(p, Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re)),
        }
    }
}

impl Div for &APComplex {
    type Output = APComplex;
    fn div(self, rhs: &APComplex) -> APComplex {
        let p = self.prec().max(rhs.prec());
        let n = rhs.norm_sqr();
        let re = Float::with_val(p, Float::with_val(p, &self.re * &rhs.re) + Float::with_val(p, &self.im * &rhs.im));
        let im = Float::with_val(p, Float::with_val(p, &self.im * &rhs.re) - Float::with_val(p, &self.re * &rhs.im));
        APComplex {
            re: Float::with_val(p, re / &n),
            im: Float::with_val(p, im / n),
        }
    }
}

impl Neg for &APComplex {
    type Output = APComplex;
    fn neg(self) -> APComplex {
        APComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::make_context;

    fn ctx() -> PrecisionContext {
        make_context(50).unwrap()
    }

    #[test]
    fn principal_sqrt_of_negative_real_is_positive_imaginary() {
        let c = ctx();
        let z = APComplex::with_ctx(&c, -16.0, 0.0);
        let r = principal_root(&z, 2).unwrap();
        let four = c.real(4);
        assert!((r.re.clone()).abs() < c.target_eps());
        assert!((r.im.clone() - four).abs() < c.target_eps());
    }

    #[test]
    fn sixth_root_of_one_is_one() {
        let c = ctx();
        let z = APComplex::one(c.working_bits());
        let r = principal_root(&z, 6).unwrap();
        assert!((r.re.clone() - 1u32).abs() < c.target_eps());
        assert!(r.im.is_zero() || r.im.clone().abs() < c.target_eps());
    }

    #[test]
    fn sqrt_matches_exp_log_oracle() {
        // -1323/8 arises as 1 - J at tau = 2i.
        let c = ctx();
        let z = APComplex {
            re: c.real(Rational::from((-1323, 8))),
            im: c.real(0),
        };
        let r = principal_root(&z, 2).unwrap();
        // Oracle: exp(log(z)/2) evaluated straight from ln/exp.
        let l = z.ln().unwrap();
        let half = APComplex {
            re: Float::with_val(c.working_bits(), &l.re / 2u32),
            im: Float::with_val(c.working_bits(), &l.im / 2u32),
        };
        let o = half.exp();
        assert!((&r - &o).abs() < c.target_eps());
        // 12.8597... i
        assert!(r.re.clone().abs() < c.target_eps());
        let expect = c.real(Rational::from((1323, 8))).sqrt();
        assert!((r.im.clone() - expect).abs() < c.target_eps());
    }

    #[test]
    fn root_power_round_trip() {
        let c = ctx();
        for (re, im, n) in [(3.0, 4.0, 5u32), (-2.5, 1.0, 3), (0.1, -7.0, 6)] {
            let z = APComplex::with_ctx(&c, re, im);
            let r = principal_root(&z, n).unwrap();
            let back = r.pow_i32(n as i32);
            assert!(
                (&back - &z).abs() < c.target_eps(),
                "round trip failed for ({re}, {im}, {n})"
            );
        }
    }
}
