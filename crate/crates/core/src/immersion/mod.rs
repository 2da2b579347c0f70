//! Calabi's standard minimal immersions `S² → S^{2s}`.
//!
//! The degree-`s` immersion sends a unit vector `x` to
//! `λ_s (Y_1(x), …, Y_{2s+1}(x))` where the `Y_α` are an L²(S²)-orthonormal
//! basis of real spherical harmonics of degree `s` and
//! `λ_s = sqrt(4π/(2s+1))`. By the addition theorem the image lies on the
//! unit sphere.

mod chart;
mod harmonic;

pub use chart::{Chart, ChartPoint, CHART_RADIUS_SQ_MAX};
pub use harmonic::{solid_harmonic, unit_scale_squared, HarmonicKind, Poly3};

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::jet::{Jet, MAX_ORDER};
use crate::real::Real;

/// One ambient coordinate of the immersion.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicComponent {
    /// Unnormalized solid harmonic.
    pub poly: Poly3,
    pub order_m: u32,
    pub kind: HarmonicKind,
    /// Square of the factor that multiplies `poly` inside the immersion
    /// (normalization `λ_s` included).
    pub scale_sq: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicImmersion {
    degree: u32,
    components: Vec<HarmonicComponent>,
}

/// Builds the standard degree-`s` immersion into `S^{2s}`.
///
/// Components are ordered zonal first, then the `(cos mφ, sin mφ)` pairs for
/// `m = 1..=s`.
pub fn build_calabi(s: i64) -> Result<HarmonicImmersion> {
    if s < 1 {
        return Err(Error::InvalidDegree(s));
    }
    let l = u32::try_from(s).map_err(|_| Error::InvalidDegree(s))?;
    let mut components = Vec::with_capacity(2 * l as usize + 1);
    components.push(HarmonicComponent {
        poly: solid_harmonic(l, 0, HarmonicKind::Zonal),
        order_m: 0,
        kind: HarmonicKind::Zonal,
        scale_sq: unit_scale_squared(l, 0),
    });
    for m in 1..=l {
        for kind in [HarmonicKind::Cos, HarmonicKind::Sin] {
            components.push(HarmonicComponent {
                poly: solid_harmonic(l, m, kind),
                order_m: m,
                kind,
                scale_sq: unit_scale_squared(l, m),
            });
        }
    }
    Ok(HarmonicImmersion {
        degree: l,
        components,
    })
}

impl HarmonicImmersion {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[HarmonicComponent] {
        &self.components
    }

    /// `N + 1 = 2s + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    /// Codimension `p = N - 2` of the surface in `S^N`.
    pub fn codimension(&self) -> usize {
        self.ambient_dim() - 3
    }

    /// `λ_s = sqrt(4π/(2s+1))`.
    pub fn normalization(&self) -> f64 {
        (4.0 * PI / (2 * self.degree + 1) as f64).sqrt()
    }

    /// Factor turning component `alpha`'s polynomial into an L²(S²)-unit
    /// harmonic.
    pub fn unit_factor(&self, alpha: usize) -> f64 {
        let c = &self.components[alpha];
        c.scale_sq.to_f64().unwrap_or(f64::NAN).sqrt() / self.normalization()
    }

    /// Ambient image `F(x)` of a point of the unit sphere.
    pub fn evaluate(&self, x: [f64; 3]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| c.scale_sq.to_f64().unwrap_or(f64::NAN).sqrt() * c.poly.eval(x))
            .collect()
    }

    /// Jets of `F ∘ (inverse stereographic map)` at a chart point.
    pub fn jet<T: Real>(&self, p: &ChartPoint, order: usize) -> Result<Vec<Jet<T>>> {
        if order > MAX_ORDER {
            return Err(Error::JetOrder(order));
        }
        let xyz = p.embed_jet::<T>(order);
        let powers = coordinate_powers(&xyz, self.degree as usize);
        Ok(self
            .components
            .iter()
            .map(|c| {
                let scale = harmonic::rational_to_real::<T>(&c.scale_sq).sqrt();
                c.poly.eval_jets(&powers).scale(scale)
            })
            .collect())
    }
}

/// `f64` immersion jets; see [`HarmonicImmersion::jet`].
pub fn immersion_jet(imm: &HarmonicImmersion, p: &ChartPoint, order: usize) -> Result<Vec<Jet<f64>>> {
    imm.jet::<f64>(p, order)
}

/// Inverse stereographic projection of a chart point.
pub fn embed_chart(p: &ChartPoint) -> [f64; 3] {
    p.embed()
}

fn coordinate_powers<T: Real>(xyz: &[Jet<T>; 3], max: usize) -> [Vec<Jet<T>>; 3] {
    let order = xyz[0].order();
    let build = |j: &Jet<T>| {
        let mut v = Vec::with_capacity(max + 1);
        v.push(Jet::constant(order, T::one()));
        for k in 1..=max {
            let next = v[k - 1] * *j;
            v.push(next);
        }
        v
    };
    [build(&xyz[0]), build(&xyz[1]), build(&xyz[2])]
}

/// A polynomial in the ambient coordinates `x_0 … x_N` of `ℝ^{N+1}`,
/// restricted to the immersed surface.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPoly {
    n_vars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl AmbientPoly {
    pub fn constant(n_vars: usize, c: f64) -> Self {
        Self {
            n_vars,
            terms: vec![(c, vec![0; n_vars])],
        }
    }

    pub fn coordinate(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self {
            n_vars,
            terms: vec![(1.0, e)],
        }
    }

    pub fn monomial(n_vars: usize, coeff: f64, exps: &[(usize, u32)]) -> Self {
        let mut e = vec![0; n_vars];
        for &(i, k) in exps {
            e[i] += k;
        }
        Self {
            n_vars,
            terms: vec![(coeff, e)],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn plus(mut self, other: AmbientPoly) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        self.terms.extend(other.terms);
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, e)| e.iter().all(|&k| k == 0))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .zip(x)
                    .fold(*c, |acc, (&k, xi)| acc * xi.powi(k as i32))
            })
            .sum()
    }

    pub fn eval_jets<T: Real>(&self, x: &[Jet<T>]) -> Result<Jet<T>> {
        if x.len() != self.n_vars {
            return Err(Error::AmbientDimension {
                expected: x.len(),
                got: self.n_vars,
            });
        }
        let order = x.first().map(Jet::order).unwrap_or(0);
        let mut acc = Jet::zero(order);
        for (c, e) in &self.terms {
            let mut m = Jet::constant(order, T::from_f64(*c));
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    m = m * *xi;
                }
            }
            acc += m;
        }
        Ok(acc)
    }
}
