//! Pinching gap for the minimum of S between the Calabi values 5/3 and 9/5.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::{discriminant_poly, rat};
use crate::error::{Error, Result};

pub const S_LO: f64 = 5.0 / 3.0;
pub const S_HI: f64 = 9.0 / 5.0;

/// `(K, S)` of the degree-`s` Calabi sphere, exactly.
pub fn calabi_constants_exact(s: i64) -> Result<(BigRational, BigRational)> {
    if s < 1 {
        return Err(Error::InvalidDegree(s));
    }
    let den = s * (s + 1);
    Ok((rat(2, den), rat(2 * (s - 1) * (s + 2), den)))
}

pub fn calabi_constants(s: i64) -> Result<(f64, f64)> {
    let (k, sv) = calabi_constants_exact(s)?;
    Ok((k.to_f64().unwrap_or(f64::NAN), sv.to_f64().unwrap_or(f64::NAN)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapResult {
    pub s_min: f64,
    #[serde(rename = "F")]
    pub big_f: f64,
    pub f: f64,
    pub f_prime: f64,
}

/// `𝓕 = 4(9s² + 3594s − 5231)`
pub fn big_f(s: f64) -> f64 {
    4.0 * ((9.0 * s + 3594.0) * s - 5231.0)
}

/// `(134 − 114s + √𝓕)/108`, rationalized as `8(3s−5)(9−5s)/(√𝓕 − 134 + 114s)`
/// so both endpoint zeros survive in floating point.
fn f_closed(s: f64) -> f64 {
    let b = 134.0 - 114.0 * s;
    8.0 * (3.0 * s - 5.0) * (9.0 - 5.0 * s) / (big_f(s).sqrt() - b)
}

fn f_prime_closed(s: f64) -> f64 {
    let q = (9.0 * s + 3594.0) * s - 5231.0;
    (6.0 * (3.0 * s + 599.0) / q.sqrt() - 114.0) / 108.0
}

/// Central difference of `f`, step `h`.
pub fn f_prime_fd(s: f64, h: f64) -> f64 {
    (f_closed(s + h) - f_closed(s - h)) / (2.0 * h)
}

fn check_domain(s: f64) -> Result<()> {
    if !(S_LO..=S_HI).contains(&s) {
        return Err(Error::GapDomain { value: s });
    }
    Ok(())
}

pub fn gap_function(s_min: f64) -> Result<GapResult> {
    check_domain(s_min)?;
    let f_prime = f_prime_closed(s_min);
    debug_assert!((f_prime - f_prime_fd(s_min, 1e-5)).abs() < 1e-8);
    Ok(GapResult { s_min, big_f: big_f(s_min), f: f_closed(s_min), f_prime })
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Exact `f(s)` when `𝓕(s)` is the square of a rational, `None` otherwise.
pub fn gap_function_exact(s: &BigRational) -> Option<BigRational> {
    let root = rational_sqrt(&discriminant_poly().eval(s))?;
    let b = BigRational::from_integer(BigInt::from(134)) - rat(114, 1) * s;
    Some((b + root) / rat(108, 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// Root of `45s² + 17970s − 31211` in the stable form.
    pub s_star: f64,
    /// Zero of `f′` located by bisection.
    pub s_star_bisection: f64,
    pub f_prime_residual: f64,
    pub f_max: f64,
    /// `s_star` rounded up at five decimals.
    pub forbidden_lo: f64,
    /// `forbidden_lo + f(forbidden_lo)` rounded down at five decimals.
    pub forbidden_hi: f64,
    /// `s_star + f_max` before rounding.
    pub forbidden_hi_unrounded: f64,
}

fn ceil5(x: f64) -> f64 {
    (x * 1e5).ceil() / 1e5
}

fn floor5(x: f64) -> f64 {
    (x * 1e5).floor() / 1e5
}

pub fn critical_point() -> CriticalPoint {
    let disc: f64 = 17970.0 * 17970.0 + 4.0 * 45.0 * 31211.0;
    let s_star = 2.0 * 31211.0 / (17970.0 + disc.sqrt());

    let (mut lo, mut hi) = (S_LO, S_HI);
    while hi - lo >= 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f_prime_closed(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s_star_bisection = 0.5 * (lo + hi);
    let f_prime_residual = f_prime_closed(s_star).abs();
    assert!(f_prime_residual < 1e-10, "f'(s_star) = {f_prime_residual}");
    assert!((s_star - s_star_bisection).abs() < 1e-10);

    let f_max = f_closed(s_star);
    let forbidden_lo = ceil5(s_star);
    // x + f(x) increases on the domain, so its least value above forbidden_lo
    // is attained there
    let forbidden_hi = floor5(forbidden_lo + f_closed(forbidden_lo));
    CriticalPoint {
        s_star,
        s_star_bisection,
        f_prime_residual,
        f_max,
        forbidden_lo,
        forbidden_hi,
        forbidden_hi_unrounded: s_star + f_max,
    }
}

/// Whether an immersion with `min S = s_min`, `max S = s_max` is ruled out.
pub fn theorem_bound(s_min: f64, s_max: f64) -> Result<bool> {
    check_domain(s_min)?;
    check_domain(s_max)?;
    if s_max < s_min {
        return Err(Error::InvalidArgument(format!("s_max {s_max} is below s_min {s_min}")));
    }
    Ok(s_max - s_min < f_closed(s_min))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Endpoints {
    #[serde(rename = "f(5/3)")]
    pub at_five_thirds: String,
    #[serde(rename = "f(9/5)")]
    pub at_nine_fifths: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub s_star: f64,
    pub f_max: f64,
    pub forbidden: [f64; 2],
    pub endpoints: Endpoints,
    pub critical: CriticalPoint,
}

pub fn gap_report() -> GapReport {
    let cp = critical_point();
    let exact = |n, d| {
        gap_function_exact(&rat(n, d)).map_or_else(|| "irrational".to_string(), |v| v.to_string())
    };
    GapReport {
        s_star: cp.s_star,
        f_max: cp.f_max,
        forbidden: [cp.forbidden_lo, cp.forbidden_hi],
        endpoints: Endpoints { at_five_thirds: exact(5, 3), at_nine_fifths: exact(9, 5) },
        critical: cp,
    }
}
