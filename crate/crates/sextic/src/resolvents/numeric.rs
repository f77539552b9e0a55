//! Fixed-point multiprecision complex arithmetic and certified polynomial roots.
//!
//! A value is a pair of big integers scaled by 2^prec. Error bounds are tracked as
//! base-2 logarithms in f64 so that very large and very small magnitudes stay finite.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polycore::IntPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

/// log2 |x / 2^prec|, or -inf for zero.
pub fn log2_fixed(x: &BigInt, prec: u32) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x.abs() >> shift).to_f64().unwrap();
    top.log2() + shift as f64 - prec as f64
}

pub fn fixed_to_f64(x: &BigInt, prec: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let shift = x.bits().saturating_sub(60);
    let top = (x.abs() >> shift).to_f64().unwrap();
    let s = if x.sign() == Sign::Minus { -1.0 } else { 1.0 };
    s * ldexp(top, shift as i64 - prec as i64)
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// log2(2^a + 2^b)
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub prec: u32,
}

impl Ctx {
    pub fn new(prec: u32) -> Self {
        Ctx { prec }
    }

    pub fn zero(&self) -> Cx {
        Cx { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_int(&self, c: &BigInt) -> Cx {
        Cx { re: c << self.prec, im: BigInt::zero() }
    }

    fn f64_fixed(&self, x: f64) -> BigInt {
        if x == 0.0 || !x.is_finite() {
            return BigInt::zero();
        }
        // exact conversion of the binary64 value
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let mant = if exp == 0 { (bits & ((1 << 52) - 1)) << 1 } else { (bits & ((1 << 52) - 1)) | (1 << 52) };
        let e = exp - 1075 + self.prec as i64;
        let m = BigInt::from(mant) * sign;
        if e >= 0 {
            m << e as usize
        } else {
            m >> (-e) as usize
        }
    }

    pub fn from_c64(&self, z: Complex64) -> Cx {
        Cx { re: self.f64_fixed(z.re), im: self.f64_fixed(z.im) }
    }

    pub fn to_c64(&self, a: &Cx) -> Complex64 {
        Complex64::new(fixed_to_f64(&a.re, self.prec), fixed_to_f64(&a.im, self.prec))
    }

    /// Re-express at another precision.
    pub fn convert(&self, a: &Cx, to: &Ctx) -> Cx {
        if to.prec >= self.prec {
            let s = (to.prec - self.prec) as usize;
            Cx { re: &a.re << s, im: &a.im << s }
        } else {
            let s = (self.prec - to.prec) as usize;
            Cx { re: &a.re >> s, im: &a.im >> s }
        }
    }

    pub fn add(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: &a.re + &b.re, im: &a.im + &b.im }
    }

    pub fn sub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    pub fn neg(&self, a: &Cx) -> Cx {
        Cx { re: -&a.re, im: -&a.im }
    }

    pub fn mul(&self, a: &Cx, b: &Cx) -> Cx {
        let re = &a.re * &b.re - &a.im * &b.im;
        let im = &a.re * &b.im + &a.im * &b.re;
        Cx { re: re >> self.prec as usize, im: im >> self.prec as usize }
    }

    pub fn mul_int(&self, a: &Cx, k: &BigInt) -> Cx {
        Cx { re: &a.re * k, im: &a.im * k }
    }

    pub fn div(&self, a: &Cx, b: &Cx) -> Cx {
        let den = &b.re * &b.re + &b.im * &b.im;
        assert!(!den.is_zero(), "fixed-point division by zero");
        let nr = (&a.re * &b.re + &a.im * &b.im) << self.prec as usize;
        let ni = (&a.im * &b.re - &a.re * &b.im) << self.prec as usize;
        Cx { re: nr / &den, im: ni / &den }
    }

    /// log2 |a|
    pub fn log2_abs(&self, a: &Cx) -> f64 {
        let lr = log2_fixed(&a.re, self.prec);
        let li = log2_fixed(&a.im, self.prec);
        // |a| <= |re| + |im|, and >= max
        let hi = if lr > li { lr } else { li };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        let lo = if lr > li { li } else { lr };
        hi + 0.5 * (1.0 + (2.0 * (lo - hi)).exp2()).log2()
    }

    /// Horner evaluation of an integer polynomial and its derivative.
    pub fn eval_with_derivative(&self, f: &IntPoly, z: &Cx) -> (Cx, Cx) {
        let mut p = self.zero();
        let mut dp = self.zero();
        for c in f.coeffs().iter().rev() {
            dp = self.add(&self.mul(&dp, z), &p);
            p = self.add(&self.mul(&p, z), &self.from_int(c));
        }
        (p, dp)
    }
}

/// f64 Aberth iteration for the roots of a polynomial (any leading coefficient).
pub fn roots_f64(f: &IntPoly) -> Vec<Complex64> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    let lead = f.lead().to_f64().unwrap();
    let a: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64().unwrap() / lead).collect();
    let r = 1.0 + a[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let r0 = a[0].abs().powf(1.0 / n as f64).max(0.5).min(r);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Roots of a monic squarefree integer polynomial with a certified common error radius.
#[derive(Clone, Debug)]
pub struct CertifiedRoots {
    pub ctx: Ctx,
    pub roots: Vec<Cx>,
    /// log2 of a radius such that each disc around roots[i] holds exactly one root.
    pub log2_err: f64,
    /// log2 of an upper bound on |root| (at least 0).
    pub log2_bound: f64,
}

/// Refine the f64 approximations by Aberth steps at `prec` bits and certify them
/// with Weierstrass-Gerschgorin inclusion discs.
pub fn certified_roots(f: &IntPoly, prec: u32) -> Result<CertifiedRoots> {
    if !f.is_monic() {
        return Err(Error::Contract("certified roots need a monic polynomial".into()));
    }
    let n = f.degree().unwrap_or(0);
    let ctx = Ctx::new(prec + 32);
    let mut z: Vec<Cx> = roots_f64(f).into_iter().map(|r| ctx.from_c64(r)).collect();
    let target = -(prec as f64) + 4.0;
    let mut last = f64::INFINITY;
    for _ in 0..200 {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..n {
            let (p, dp) = ctx.eval_with_derivative(f, &z[i]);
            if (p.re.is_zero() && p.im.is_zero()) || (dp.re.is_zero() && dp.im.is_zero()) {
                continue;
            }
            let ratio = ctx.div(&p, &dp);
            let mut s = ctx.zero();
            for j in 0..n {
                if j != i {
                    let d = ctx.sub(&z[i], &z[j]);
                    if d.re.is_zero() && d.im.is_zero() {
                        continue;
                    }
                    s = ctx.add(&s, &ctx.div(&ctx.from_int(&BigInt::from(1)), &d));
                }
            }
            let den = ctx.sub(&ctx.from_int(&BigInt::from(1)), &ctx.mul(&ratio, &s));
            if den.re.is_zero() && den.im.is_zero() {
                continue;
            }
            let w = ctx.div(&ratio, &den);
            worst = worst.max(ctx.log2_abs(&w));
            z[i] = ctx.sub(&z[i], &w);
        }
        if worst < target || worst >= last && worst < target + 40.0 {
            break;
        }
        last = worst;
    }
    // inclusion radii r_i = n |f(z_i)| / prod |z_i - z_j|, with the evaluation's rounding slack
    let log2_bound = z
        .iter()
        .map(|x| ctx.log2_abs(x))
        .fold(0.0f64, f64::max)
        .max(0.0)
        + 0.01;
    let slack = (n as f64 + 1.0).log2() * 2.0
        + n as f64 * (log2_bound + 1.0)
        + log2_height_plus(f)
        - ctx.prec as f64
        + 2.0;
    let mut err = f64::NEG_INFINITY;
    let mut min_sep = f64::INFINITY;
    for i in 0..n {
        let (p, _) = ctx.eval_with_derivative(f, &z[i]);
        let lp = log_add(ctx.log2_abs(&p), slack);
        let mut ld = 0.0;
        for j in 0..n {
            if j != i {
                let d = ctx.log2_abs(&ctx.sub(&z[i], &z[j]));
                ld += d;
                min_sep = min_sep.min(d);
            }
        }
        err = err.max((n as f64).log2() + lp - ld);
    }
    err += 1.0;
    if n >= 2 && err + 1.0 >= min_sep {
        return Err(Error::Precision(prec));
    }
    Ok(CertifiedRoots { ctx, roots: z, log2_err: err, log2_bound })
}

fn log2_height_plus(f: &IntPoly) -> f64 {
    f.coeffs()
        .iter()
        .map(|c| log2_fixed(c, 0))
        .fold(0.0f64, f64::max)
        + 1.0
}
