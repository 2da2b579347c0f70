//! Homogeneous polynomials in three variables with exact rational coefficients
//! and the real solid harmonics built from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::jet::Jet;
use crate::real::Real;

pub type Exponent = [u32; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly3 {
    terms: BTreeMap<Exponent, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    acc
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

impl Poly3 {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(coeff: BigRational, exp: Exponent) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `x`, `y` or `z` for `axis` 0, 1, 2.
    pub fn coordinate(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        Self::monomial(BigRational::one(), e)
    }

    fn add_term(&mut self, exp: Exponent, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    /// Total degree if homogeneous, `None` otherwise (or for the zero polynomial).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e[0] + e[1] + e[2]);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::monomial(BigRational::one(), [0, 0, 0]);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact Euclidean Laplacian `∂xx + ∂yy + ∂zz`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            for axis in 0..3 {
                let k = e[axis];
                if k >= 2 {
                    let mut ne = *e;
                    ne[axis] -= 2;
                    out.add_term(ne, c * rat(i64::from(k) * i64::from(k - 1)));
                }
            }
        }
        out
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c.to_f64().unwrap_or(f64::NAN)
                    * x[0].powi(e[0] as i32)
                    * x[1].powi(e[1] as i32)
                    * x[2].powi(e[2] as i32)
            })
            .sum()
    }

    pub fn eval_rational(&self, x: &[BigRational; 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for axis in 0..3 {
                for _ in 0..e[axis] {
                    m *= &x[axis];
                }
            }
            acc += m;
        }
        acc
    }

    /// Evaluates on jets; `powers[axis][k]` must hold the `k`-th power of the
    /// corresponding coordinate jet for every exponent that occurs.
    pub fn eval_jets<T: Real>(&self, powers: &[Vec<Jet<T>>; 3]) -> Jet<T> {
        let order = powers[0][0].order();
        let mut acc = Jet::zero(order);
        for (e, c) in &self.terms {
            let coeff = rational_to_real::<T>(c);
            let m = powers[0][e[0] as usize] * powers[1][e[1] as usize] * powers[2][e[2] as usize];
            acc += m.scale(coeff);
        }
        acc
    }
}

/// Converts a rational with double-representable numerator and denominator.
pub(crate) fn rational_to_real<T: Real>(c: &BigRational) -> T {
    let n = c.numer().to_f64().unwrap_or(f64::NAN);
    let d = c.denom().to_f64().unwrap_or(f64::NAN);
    if d == 1.0 {
        T::from_f64(n)
    } else {
        T::ratio(n, d)
    }
}

/// Which member of a real (cos/sin) pair of order `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicKind {
    Zonal,
    Cos,
    Sin,
}

/// Real solid harmonic `r^l P_l^m(cos θ) {cos, sin}(mφ)` without
/// Condon–Shortley phase and without normalization.
pub fn solid_harmonic(l: u32, m: u32, kind: HarmonicKind) -> Poly3 {
    assert!(m <= l);
    assert!((m == 0) == (kind == HarmonicKind::Zonal));
    let x = Poly3::coordinate(0);
    let y = Poly3::coordinate(1);
    let z = Poly3::coordinate(2);
    let r2 = x.pow(2).add(&y.pow(2)).add(&z.pow(2));

    // d^m/dz^m of the Legendre polynomial, homogenized with r^2
    let mut pi = Poly3::zero();
    let two_l = BigRational::from_integer(BigInt::from(2).pow(l));
    for k in 0..=((l - m) / 2) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = sign
            * binomial(l, k)
            * binomial(2 * l - 2 * k, l)
            * (factorial(l - 2 * k) / factorial(l - 2 * k - m));
        let term = r2.pow(k).mul(&z.pow(l - 2 * k - m)).scale(&(rat(c) / &two_l));
        pi = pi.add(&term);
    }

    // Re / Im of (x + i y)^m
    let mut azimuthal = Poly3::zero();
    for j in 0..=m {
        let keep = match kind {
            HarmonicKind::Zonal | HarmonicKind::Cos => j % 2 == 0,
            HarmonicKind::Sin => j % 2 == 1,
        };
        if !keep {
            continue;
        }
        let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
        let term = x
            .pow(m - j)
            .mul(&y.pow(j))
            .scale(&rat(sign * binomial(m, j)));
        azimuthal = azimuthal.add(&term);
    }
    pi.mul(&azimuthal)
}

/// Squared scale `(2 - δ_{m0}) (l-m)!/(l+m)!` that turns [`solid_harmonic`]
/// into `sqrt(4π/(2l+1))` times an L²(S²)-unit harmonic.
pub fn unit_scale_squared(l: u32, m: u32) -> BigRational {
    let two = if m == 0 { 1 } else { 2 };
    BigRational::new(
        BigInt::from(two * factorial(l - m)),
        BigInt::from(factorial(l + m)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_harmonics_match_textbook_forms() {
        // P_2 = (3z^2 - r^2)/2 = z^2 - x^2/2 - y^2/2
        let p = solid_harmonic(2, 0, HarmonicKind::Zonal);
        let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        let expected = Poly3::monomial(rat(1), [0, 0, 2])
            .add(&Poly3::monomial(half.clone(), [2, 0, 0]))
            .add(&Poly3::monomial(half, [0, 2, 0]));
        assert_eq!(p, expected);

        // degree 1 gives the coordinates
        assert_eq!(solid_harmonic(1, 0, HarmonicKind::Zonal), Poly3::coordinate(2));
        assert_eq!(solid_harmonic(1, 1, HarmonicKind::Cos), Poly3::coordinate(0));
        assert_eq!(solid_harmonic(1, 1, HarmonicKind::Sin), Poly3::coordinate(1));

        // (l,m) = (2,2): 3 (x^2 - y^2)
        let p22 = solid_harmonic(2, 2, HarmonicKind::Cos);
        let expected = Poly3::monomial(rat(3), [2, 0, 0]).add(&Poly3::monomial(rat(-3), [0, 2, 0]));
        assert_eq!(p22, expected);
    }

    #[test]
    fn solid_harmonics_are_harmonic_and_homogeneous() {
        for l in 0..=7 {
            for m in 0..=l {
                let kinds: &[HarmonicKind] = if m == 0 {
                    &[HarmonicKind::Zonal]
                } else {
                    &[HarmonicKind::Cos, HarmonicKind::Sin]
                };
                for &kind in kinds {
                    let p = solid_harmonic(l, m, kind);
                    assert!(p.laplacian().is_zero(), "l={l} m={m} {kind:?}");
                    assert_eq!(p.homogeneous_degree(), Some(l));
                }
            }
        }
    }

    #[test]
    fn laplacian_of_r_squared_is_six() {
        let r2 = (0..3).fold(Poly3::zero(), |acc, i| acc.add(&Poly3::coordinate(i).pow(2)));
        assert_eq!(r2.laplacian(), Poly3::monomial(rat(6), [0, 0, 0]));
    }
}
