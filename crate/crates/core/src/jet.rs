//! Truncated bivariate Taylor expansions.
//!
//! A [`Jet`] of order `n` holds the Taylor coefficients
//! `c[p,q] = (1/(p! q!)) ∂ᵘᵖ ∂ᵛᵠ f` of a scalar function of the two chart
//! variables, for all `p + q <= n`. Ring operations truncate exactly, so any
//! expression built from jets carries the exact derivatives of the composed
//! function up to its order (in the working precision).

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::real::Real;

/// Highest order the jet ring supports.
pub const MAX_ORDER: usize = 5;

/// Number of coefficients in a full order-[`MAX_ORDER`] jet.
pub const N_COEFFS: usize = (MAX_ORDER + 1) * (MAX_ORDER + 2) / 2;

/// Chart direction for differentiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    U = 0,
    V = 1,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::U, Axis::V];

    pub fn from_index(i: usize) -> Axis {
        if i == 0 {
            Axis::U
        } else {
            Axis::V
        }
    }
}

#[inline]
const fn offset(degree: usize) -> usize {
    degree * (degree + 1) / 2
}

/// Storage slot of the monomial `du^p dv^q`.
#[inline]
pub const fn index(p: usize, q: usize) -> usize {
    offset(p + q) + q
}

const fn build_exponents() -> [(usize, usize); N_COEFFS] {
    let mut out = [(0, 0); N_COEFFS];
    let mut d = 0;
    while d <= MAX_ORDER {
        let mut q = 0;
        while q <= d {
            out[index(d - q, q)] = (d - q, q);
            q += 1;
        }
        d += 1;
    }
    out
}

const EXPONENTS: [(usize, usize); N_COEFFS] = build_exponents();

#[inline]
fn count(order: usize) -> usize {
    offset(order + 1)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<T> {
    order: usize,
    coeffs: [T; N_COEFFS],
}

impl<T: Real> Jet<T> {
    pub fn constant(order: usize, value: T) -> Self {
        debug_assert!(order <= MAX_ORDER);
        let mut coeffs = [T::zero(); N_COEFFS];
        coeffs[0] = value;
        Self { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(order, T::zero())
    }

    /// The coordinate function `u` (or `v`) expanded around `at`.
    pub fn variable(order: usize, at: T, axis: Axis) -> Self {
        let mut j = Self::constant(order, at);
        if order >= 1 {
            match axis {
                Axis::U => j.coeffs[index(1, 0)] = T::one(),
                Axis::V => j.coeffs[index(0, 1)] = T::one(),
            }
        }
        j
    }

    /// Builds a jet from raw Taylor coefficients laid out by [`index`].
    pub fn from_coeffs(order: usize, coeffs: &[T]) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::JetOrder(order));
        }
        let mut j = Self::zero(order);
        for (slot, c) in j.coeffs.iter_mut().zip(coeffs).take(count(order)) {
            *slot = *c;
        }
        Ok(j)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> T {
        self.coeffs[0]
    }

    /// Taylor coefficient of `du^p dv^q`.
    pub fn coeff(&self, p: usize, q: usize) -> T {
        if p + q > self.order {
            T::zero()
        } else {
            self.coeffs[index(p, q)]
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs[..count(self.order)]
    }

    /// Mixed partial derivative `∂ᵘᵖ ∂ᵛᵠ f` at the expansion point.
    pub fn partial(&self, p: usize, q: usize) -> T {
        self.coeff(p, q) * T::from_f64(factorial(p) * factorial(q))
    }

    /// Truncates to a lower order (no-op if already at or below it).
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order {
            return *self;
        }
        let mut j = *self;
        for c in &mut j.coeffs[count(order)..] {
            *c = T::zero();
        }
        j.order = order;
        j
    }

    /// Derivative along `axis`; the result has one order less.
    ///
    /// Panics if the jet has order 0.
    pub fn derivative(&self, axis: Axis) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let mut out = Self::zero(order);
        for k in 0..count(order) {
            let (p, q) = EXPONENTS[k];
            out.coeffs[k] = match axis {
                Axis::U => self.coeffs[index(p + 1, q)] * T::from_f64((p + 1) as f64),
                Axis::V => self.coeffs[index(p, q + 1)] * T::from_f64((q + 1) as f64),
            };
        }
        out
    }

    pub fn scale(&self, s: T) -> Self {
        let mut j = *self;
        for c in &mut j.coeffs[..count(self.order)] {
            *c *= s;
        }
        j
    }

    pub fn add_constant(&self, s: T) -> Self {
        let mut j = *self;
        j.coeffs[0] += s;
        j
    }

    /// Multiplicative inverse. The value at the expansion point must be
    /// non-zero.
    pub fn recip(&self) -> Self {
        let c0 = self.value();
        let inv0 = T::one() / c0;
        // 1/(c0 + h) = (1/c0) Σ (-h/c0)^k, h nilpotent of degree > order
        let mut h = *self;
        h.coeffs[0] = T::zero();
        let step = h.scale(-inv0);
        let mut term = Self::constant(self.order, T::one());
        let mut sum = term;
        for _ in 0..self.order {
            term = term * step;
            sum += term;
        }
        sum.scale(inv0)
    }

    /// Square root. The value at the expansion point must be positive.
    pub fn sqrt(&self) -> Self {
        let c0 = self.value();
        let r0 = c0.sqrt();
        // sqrt(c0 + h) = r0 Σ binom(1/2, k) (h/c0)^k
        let mut h = *self;
        h.coeffs[0] = T::zero();
        let x = h.scale(T::one() / c0);
        let mut term = Self::constant(self.order, T::one());
        let mut sum = term;
        let mut binom = 1.0_f64;
        for k in 1..=self.order {
            binom *= (0.5 - (k as f64 - 1.0)) / k as f64;
            term = term * x;
            sum += term.scale(T::from_f64(binom));
        }
        sum.scale(r0)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut out = Self::constant(self.order, T::one());
        for _ in 0..n {
            out = out * *self;
        }
        out
    }

    /// Converts the coefficients to `f64`.
    pub fn to_f64(&self) -> Jet<f64> {
        let mut out = Jet::<f64>::zero(self.order);
        for k in 0..count(self.order) {
            out.coeffs[k] = self.coeffs[k].to_f64();
        }
        out
    }

    /// Evaluates the truncated Taylor polynomial at the offset `(du, dv)`.
    pub fn eval_offset(&self, du: T, dv: T) -> T {
        let mut acc = T::zero();
        for k in 0..count(self.order) {
            let (p, q) = EXPONENTS[k];
            let mut m = self.coeffs[k];
            for _ in 0..p {
                m *= du;
            }
            for _ in 0..q {
                m *= dv;
            }
            acc += m;
        }
        acc
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(order);
        for k in 0..count(order) {
            out.coeffs[k] = self.coeffs[k] + rhs.coeffs[k];
        }
        out
    }
}

impl<T: Real> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(order);
        for k in 0..count(order) {
            out.coeffs[k] = self.coeffs[k] - rhs.coeffs[k];
        }
        out
    }
}

impl<T: Real> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> AddAssign for Jet<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> SubAssign for Jet<T> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<T: Real> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(order);
        for k in 0..count(order) {
            let (p, q) = EXPONENTS[k];
            let mut acc = T::zero();
            for p1 in 0..=p {
                for q1 in 0..=q {
                    acc += self.coeffs[index(p1, q1)] * rhs.coeffs[index(p - p1, q - q1)];
                }
            }
            out.coeffs[k] = acc;
        }
        out
    }
}

/// `Σ a_k b_k` over equally long jet slices.
pub fn dot<T: Real>(a: &[Jet<T>], b: &[Jet<T>]) -> Jet<T> {
    debug_assert_eq!(a.len(), b.len());
    let order = a
        .iter()
        .chain(b.iter())
        .map(Jet::order)
        .min()
        .unwrap_or(0);
    a.iter()
        .zip(b)
        .fold(Jet::zero(order), |acc, (x, y)| acc + *x * *y)
}
