//! Exact univariate polynomials over ℚ, the certified polynomial identities,
//! and the pinching inequality for a pair of normal vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in one variable with rational coefficients, lowest degree
/// first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c0 + c1·x`
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::from_ints(&[c0, c1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("S")?,
                _ => write!(f, "S^{k}")?,
            }
        }
        Ok(())
    }
}

/// Exact product of the factors; the empty product is 1.
pub fn expand(factors: &[RationalPoly]) -> RationalPoly {
    factors.iter().fold(RationalPoly::one(), |acc, f| &acc * f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    #[serde(rename = "FINALPOLY")]
    FinalPoly,
    #[serde(rename = "FDISC")]
    FDisc,
    #[serde(rename = "EPSROOTS")]
    EpsRoots,
    #[serde(rename = "CRITQUAD")]
    CritQuad,
    #[serde(rename = "KSREL")]
    KsRel,
    #[serde(rename = "COMBOZERO")]
    ComboZero,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::FinalPoly,
        Identity::FDisc,
        Identity::EpsRoots,
        Identity::CritQuad,
        Identity::KsRel,
        Identity::ComboZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::FinalPoly => "FINALPOLY",
            Identity::FDisc => "FDISC",
            Identity::EpsRoots => "EPSROOTS",
            Identity::CritQuad => "CRITQUAD",
            Identity::KsRel => "KSREL",
            Identity::ComboZero => "COMBOZERO",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Identity::FinalPoly => {
                "1/8 S(3S-4)(-39S^2+112S-80) + 7/8 S(2-S)(3S-4)(9S-14) + 1/4 S(3S-4)^2(7S-12) = -1/2 S(3S-4)(3S-5)(5S-9)"
            }
            Identity::FDisc => "(134-114S)^2 + 864(3S-5)(9-5S) = 4(9S^2+3594S-5231)",
            Identity::EpsRoots => {
                "roots of 4(3S-5)(9-5S) + e(134-114S) - 54e^2 are (134-114S +- sqrt(F))/108 (sum and product)"
            }
            Identity::CritQuad => {
                "d/dS(9S^2+3594S-5231) = 6(3S+599) and 36(3S+599)^2 - 12996(9S^2+3594S-5231) = 2592(-45S^2-17970S+31211)"
            }
            Identity::KsRel => "2 - 2K(s) - S(s) = 0 with K = 2/(s(s+1)), S = 2(s-1)(s+2)/(s(s+1))",
            Identity::ComboZero => {
                "-(21S^2-64S+49)B1 + 7(1-S/2)B2 + 1/4 S(3S-4)^2(7S-12) + B3 = -1/2 S(3S-4)(3S-5)(5S-9) for B1 = 1/2 S(3S-4), B2 = 1/4 S(3S-4)(9S-14), B3 = 1/8 S(3S-4)(45S^2-144S+116); zero at S = 0, 4/3, 5/3, 9/5"
            }
        }
    }

    pub fn from_name(name: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
    }
}

fn p(c: &[i64]) -> RationalPoly {
    RationalPoly::from_ints(c)
}

fn q(n: i64, d: i64) -> RationalPoly {
    RationalPoly::constant(rat(n, d))
}

/// `9S² + 3594S − 5231`
pub fn gap_quadratic() -> RationalPoly {
    p(&[-5231, 3594, 9])
}

/// `𝓕 = (134 − 114S)² + 864(3S − 5)(9 − 5S)`
pub fn discriminant_poly() -> RationalPoly {
    let lin = p(&[134, -114]);
    &lin.pow(2) + &(q(864, 1) * p(&[-5, 3]) * p(&[9, -5]))
}

/// `−(21S²−64S+49)B₁ + 7(1−S/2)B₂ + ¼S(3S−4)²(7S−12) + B₃` with the
/// constant-S closed forms substituted for the `B`s.
pub fn combo_poly() -> RationalPoly {
    let s = RationalPoly::var();
    let t34 = p(&[-4, 3]);
    let b1 = expand(&[q(1, 2), s.clone(), t34.clone()]);
    let b2 = expand(&[q(1, 4), s.clone(), t34.clone(), p(&[-14, 9])]);
    let b3 = expand(&[q(1, 8), s.clone(), t34.clone(), p(&[116, -144, 45])]);
    let terms = [
        -&(&p(&[49, -64, 21]) * &b1),
        expand(&[q(7, 2), p(&[2, -1]), b2]),
        expand(&[q(1, 4), s, t34.pow(2), p(&[-12, 7])]),
        b3,
    ];
    terms.iter().fold(RationalPoly::zero(), |acc, t| &acc + t)
}

/// Both sides of an identity as pairs of polynomials that must coincide.
fn sides(id: Identity) -> Vec<(RationalPoly, RationalPoly)> {
    let s = RationalPoly::var();
    let t34 = p(&[-4, 3]);
    match id {
        Identity::FinalPoly => {
            let lhs = &(&expand(&[q(1, 8), s.clone(), t34.clone(), p(&[-80, 112, -39])])
                + &expand(&[q(7, 8), s.clone(), p(&[2, -1]), t34.clone(), p(&[-14, 9])]))
                + &expand(&[q(1, 4), s.clone(), t34.pow(2), p(&[-12, 7])]);
            let rhs = expand(&[q(-1, 2), s, t34, p(&[-5, 3]), p(&[-9, 5])]);
            vec![(lhs, rhs)]
        }
        Identity::FDisc => vec![(discriminant_poly(), &q(4, 1) * &gap_quadratic())],
        Identity::EpsRoots => {
            // −54ε² + Bε + C with the claimed roots (B ± √𝓕)/108
            let b = p(&[134, -114]);
            let c = expand(&[q(4, 1), p(&[-5, 3]), p(&[9, -5])]);
            let f = discriminant_poly();
            vec![
                // sum of roots: B/54 = 2B/108
                (&b * &q(1, 54), &b * &q(2, 108)),
                // product of roots: C/(−54) = (B² − 𝓕)/108²
                (&c * &q(-1, 54), &(&b.pow(2) - &f) * &q(1, 108 * 108)),
                // discriminant of the quadratic in ε
                (&b.pow(2) + &(&q(4 * 54, 1) * &c), f),
            ]
        }
        Identity::CritQuad => {
            let g = gap_quadratic();
            let lin = p(&[599, 3]);
            vec![
                (g.derivative(), &q(6, 1) * &lin),
                (
                    &(&q(36, 1) * &lin.pow(2)) - &(&q(12996, 1) * &g),
                    &q(2592, 1) * &p(&[31211, -17970, -45]),
                ),
            ]
        }
        Identity::KsRel => {
            // multiply through by s(s + 1): 2s(s+1) − 4 − 2(s−1)(s+2) = 0
            let ss1 = &s * &p(&[1, 1]);
            let lhs = &(&(&q(2, 1) * &ss1) - &q(4, 1)) - &expand(&[q(2, 1), p(&[-1, 1]), p(&[2, 1])]);
            vec![(lhs, RationalPoly::zero())]
        }
        Identity::ComboZero => {
            let combo = combo_poly();
            let product = expand(&[q(-1, 2), s, t34, p(&[-5, 3]), p(&[-9, 5])]);
            let mut out = vec![(combo.clone(), product)];
            for (n, d) in [(0, 1), (4, 3), (5, 3), (9, 5)] {
                out.push((RationalPoly::constant(combo.eval(&rat(n, d))), RationalPoly::zero()));
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub statement: String,
    pub holds: bool,
    /// Expanded `lhs − rhs` for each compared pair.
    pub differences: Vec<String>,
}

/// Exact check of an identity by coefficient comparison.
pub fn certify(id: Identity) -> bool {
    sides(id).iter().all(|(l, r)| l == r)
}

pub fn certificate(id: Identity) -> Certificate {
    let pairs = sides(id);
    Certificate {
        name: id.name().to_string(),
        statement: id.statement().to_string(),
        holds: pairs.iter().all(|(l, r)| l == r),
        differences: pairs.iter().map(|(l, r)| (l - r).to_string()).collect(),
    }
}

pub fn certify_by_name(name: &str) -> Result<bool> {
    Identity::from_name(name).map(certify)
}

pub fn certify_all() -> Vec<Certificate> {
    Identity::ALL.into_iter().map(certificate).collect()
}

/// Normal vectors `a = (h^α_11)`, `b = (h^α_12)` of a traceless second
/// fundamental form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorPair {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchResult {
    /// `−S² + |A|² + ρ⊥ − ½S²`, computed from the definitions.
    pub lhs: f64,
    /// `⟨a,b⟩² + (|a|² − |b|²)²`, zero exactly in the equality case.
    pub equality_gap: f64,
}

impl VectorPair {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::InvalidArgument(format!(
                "vector pair needs equal positive lengths, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(Self { a, b })
    }

    fn dot(x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(y).fold(0.0, |acc, (u, v)| acc + u * v)
    }

    /// `S = 2|a|² + 2|b|²`
    pub fn s(&self) -> f64 {
        2.0 * Self::dot(&self.a, &self.a) + 2.0 * Self::dot(&self.b, &self.b)
    }

    /// `|A|²` with `A = 2aaᵀ + 2bbᵀ`.
    pub fn norm_a2(&self) -> f64 {
        let n = self.a.len();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let e = 2.0 * self.a[i] * self.a[j] + 2.0 * self.b[i] * self.b[j];
                acc += e * e;
            }
        }
        acc
    }

    /// `ρ⊥ = 8 Σ_{α,β} (a^α b^β − a^β b^α)²`
    pub fn rho_perp(&self) -> f64 {
        let n = self.a.len();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let c = self.a[i] * self.b[j] - self.a[j] * self.b[i];
                acc += c * c;
            }
        }
        8.0 * acc
    }
}

pub fn pinch_inequality(vp: &VectorPair) -> PinchResult {
    let s = vp.s();
    let (aa, bb, ab) = (
        VectorPair::dot(&vp.a, &vp.a),
        VectorPair::dot(&vp.b, &vp.b),
        VectorPair::dot(&vp.a, &vp.b),
    );
    PinchResult {
        lhs: -s * s + vp.norm_a2() + vp.rho_perp() - 0.5 * s * s,
        equality_gap: ab * ab + (aa - bb) * (aa - bb),
    }
}

/// Exact version of [`pinch_inequality`]; returns `(lhs, equality_gap)`.
pub fn pinch_inequality_exact(a: &[BigRational], b: &[BigRational]) -> Result<(BigRational, BigRational)> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::InvalidArgument("vector pair needs equal positive lengths".into()));
    }
    let dot = |x: &[BigRational], y: &[BigRational]| {
        x.iter().zip(y).fold(BigRational::zero(), |acc, (u, v)| acc + u * v)
    };
    let two = rat(2, 1);
    let (aa, bb, ab) = (dot(a, a), dot(b, b), dot(a, b));
    let s = &two * (&aa + &bb);
    let n = a.len();
    let mut norm_a2 = BigRational::zero();
    let mut rho = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            let e = &two * (&a[i] * &a[j] + &b[i] * &b[j]);
            norm_a2 += &e * &e;
            let c = &a[i] * &b[j] - &a[j] * &b[i];
            rho += &c * &c;
        }
    }
    rho *= rat(8, 1);
    let lhs = -(&s * &s) + norm_a2 + rho - rat(1, 2) * &s * &s;
    let diff = &aa - &bb;
    Ok((lhs, &ab * &ab + &diff * &diff))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchSweep {
    pub samples: usize,
    pub max_lhs: f64,
    /// Every constructed orthogonal equal-norm pair gave `lhs = 0` exactly.
    pub equality_exact: bool,
}

/// `samples` seeded Gaussian pairs in dimensions 1 to 8, followed by exact
/// equality cases `b = Ja` for a complex structure `J` in dimensions 2, 4, 6, 8.
pub fn pinch_sweep(samples: usize, seed: u64) -> PinchSweep {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_lhs = f64::NEG_INFINITY;
    for _ in 0..samples {
        let n = rng.random_range(1..=8);
        let a: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        max_lhs = max_lhs.max(pinch_inequality(&VectorPair { a, b }).lhs);
    }
    let equality_exact = [2usize, 4, 6, 8].iter().all(|&n| {
        let a: Vec<BigRational> = (0..n).map(|_| rat(rng.random_range(-40..40), rng.random_range(1..12))).collect();
        let b: Vec<BigRational> = (0..n).map(|k| if k % 2 == 0 { -&a[k + 1] } else { a[k - 1].clone() }).collect();
        pinch_inequality_exact(&a, &b).is_ok_and(|(lhs, gap)| lhs.is_zero() && gap.is_zero())
    });
    PinchSweep { samples, max_lhs, equality_exact }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn arb_poly() -> impl Strategy<Value = RationalPoly> {
        prop::collection::vec((-50i64..50, 1i64..7), 0..6)
            .prop_map(|cs| RationalPoly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &a), &RationalPoly::zero());
            prop_assert_eq!(&a * &RationalPoly::one(), a.clone());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), n in -20i64..20, d in 1i64..9) {
            let x = rat(n, d);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }

    #[test]
    fn expand_examples() {
        let e = expand(&[RationalPoly::linear(-4, 3), RationalPoly::linear(-5, 3)]);
        assert_eq!(e, RationalPoly::from_ints(&[20, -27, 9]));
        assert_eq!(e.to_string(), "9S^2 - 27S + 20");
        assert_eq!(expand(&[]), RationalPoly::one());
        let sq = RationalPoly::linear(134, -114).pow(2);
        assert_eq!(sq.coeff(0), rat(17956, 1));
        // S(s) at s = 3
        let num = expand(&[RationalPoly::from_ints(&[2]), RationalPoly::linear(-1, 1), RationalPoly::linear(2, 1)]);
        let den = expand(&[RationalPoly::var(), RationalPoly::linear(1, 1)]);
        assert_eq!(num.eval(&rat(3, 1)) / den.eval(&rat(3, 1)), rat(5, 3));
    }

    #[test]
    fn normalization_and_degree() {
        let z = RationalPoly::new(vec![rat(0, 1), rat(0, 1)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(RationalPoly::from_ints(&[1, 0, 3, 0]).degree(), Some(2));
        assert_eq!(RationalPoly::from_ints(&[1, 2, 3]).derivative(), RationalPoly::from_ints(&[2, 6]));
        assert_eq!(RationalPoly::from_ints(&[-1, 0, 2]).to_string(), "2S^2 - 1");
        assert_eq!(RationalPoly::zero().to_string(), "0");
    }

    #[test]
    fn all_identities_certify() {
        for id in Identity::ALL {
            let c = certificate(id);
            assert!(c.holds, "{}: {:?}", c.name, c.differences);
            assert!(c.differences.iter().all(|d| d == "0"));
        }
        assert_eq!(certify_by_name("finalpoly"), Ok(true));
        assert_eq!(certify_by_name("BOGUS"), Err(Error::UnknownIdentity("BOGUS".into())));
    }

    #[test]
    fn perturbed_identity_is_rejected() {
        let mut pairs = sides(Identity::FinalPoly);
        let (l, r) = pairs.pop().unwrap();
        assert_ne!(&l + &RationalPoly::from_ints(&[0, 0, 0, 0, 1]), r);
    }

    #[test]
    fn discriminant_spot_values() {
        let f = discriminant_poly();
        assert_eq!(f.eval(&rat(5, 3)), rat(3136, 1));
        assert_eq!(f.eval(&rat(9, 5)), (rat(114 * 9, 5) - rat(134, 1)).pow(2));
    }

    #[test]
    fn combo_is_not_identically_zero() {
        let c = combo_poly();
        assert_eq!(c.degree(), Some(4));
        assert_eq!(c.eval(&rat(1, 1)), rat(4, 1));
        for (n, d) in [(0, 1), (4, 3), (5, 3), (9, 5)] {
            assert!(c.eval(&rat(n, d)).is_zero());
        }
    }

    #[test]
    fn combo_spot_value() {
        let v = -rat(2, 3) * rat(5, 6) + rat(7, 6) * rat(5, 12) - rat(5, 36) + rat(5, 24);
        assert!(v.is_zero());
    }

    #[test]
    fn pinch_examples() {
        let r = pinch_inequality(&VectorPair::new(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap());
        assert_eq!((r.lhs, r.equality_gap), (0.0, 0.0));
        let vp = VectorPair::new(vec![1.0, 0.0], vec![1.0, 0.0]).unwrap();
        assert_eq!(vp.s(), 4.0);
        assert_eq!(vp.norm_a2(), 16.0);
        assert_eq!(vp.rho_perp(), 0.0);
        assert_eq!(pinch_inequality(&vp).lhs, -8.0);
        assert!(VectorPair::new(vec![], vec![]).is_err());
        assert!(VectorPair::new(vec![1.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn pinch_matches_closed_form_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.random_range(1..=6);
            let r = |rng: &mut ChaCha8Rng| rat(rng.random_range(-30..30), rng.random_range(1..8));
            let a: Vec<BigRational> = (0..n).map(|_| r(&mut rng)).collect();
            let b: Vec<BigRational> = (0..n).map(|_| r(&mut rng)).collect();
            let (lhs, gap) = pinch_inequality_exact(&a, &b).unwrap();
            let dot = |x: &[BigRational], y: &[BigRational]| {
                x.iter().zip(y).fold(BigRational::zero(), |acc, (u, v)| acc + u * v)
            };
            let d = dot(&a, &a) - dot(&b, &b);
            let ab = dot(&a, &b);
            assert_eq!(lhs, rat(-2, 1) * &d * &d - rat(8, 1) * &ab * &ab);
            assert!(!lhs.is_positive());
            assert_eq!(lhs.is_zero(), gap.is_zero());
            // scaling by t scales lhs by t^4
            let t = rat(rng.random_range(1..9), rng.random_range(1..9));
            let at: Vec<BigRational> = a.iter().map(|x| x * &t).collect();
            let bt: Vec<BigRational> = b.iter().map(|x| x * &t).collect();
            assert_eq!(pinch_inequality_exact(&at, &bt).unwrap().0, lhs * t.pow(4));
        }
    }

    #[test]
    fn pinch_equality_on_rotated_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in [2usize, 4, 6] {
            let a: Vec<BigRational> = (0..n).map(|_| rat(rng.random_range(-20..20), rng.random_range(1..5))).collect();
            // b = J a with J a complex structure: orthogonal, same norm
            let b: Vec<BigRational> = (0..n).map(|k| if k % 2 == 0 { -&a[k + 1] } else { a[k - 1].clone() }).collect();
            let (lhs, gap) = pinch_inequality_exact(&a, &b).unwrap();
            assert!(lhs.is_zero() && gap.is_zero());
        }
    }

    #[test]
    fn sweep_is_seeded() {
        let a = pinch_sweep(500, 3);
        assert_eq!(a, pinch_sweep(500, 3));
        assert!(a.max_lhs <= 1e-12 && a.equality_exact);
        assert_eq!(pinch_sweep(0, 3).max_lhs, f64::NEG_INFINITY);
    }

    #[test]
    fn pinch_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..20_000 {
            let n = rng.random_range(1..=8);
            let a: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            let b: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            worst = worst.max(pinch_inequality(&VectorPair::new(a, b).unwrap()).lhs);
        }
        assert!(worst <= 1e-12, "{worst}");
    }
}
