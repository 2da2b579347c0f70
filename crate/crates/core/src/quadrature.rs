//! Product quadrature on the immersed sphere and the integral identities.
//!
//! Nodes are Gauss–Legendre in `cos θ` times a uniform grid in `φ`; each node
//! is mapped to its chart and the round weight is rescaled by the ratio of
//! the induced area element to the round one, so the rule integrates against
//! the induced measure.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    adapted_frame, area_element, geometry_jet_with, invariants, scalar_field_derivs, InvariantReport, Precision,
    ScalarDerivs, ScalarField,
};
use crate::immersion::{AmbientPoly, ChartPoint, HarmonicImmersion};

/// Default number of Gauss–Legendre nodes in `cos θ`.
pub const DEFAULT_ORDER: usize = 24;

/// Sums with recursive halving, so the result does not depend on how work
/// was split between threads.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().fold(0.0, |acc, x| acc + x);
    }
    let (l, r) = values.split_at(values.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<ChartPoint>,
    /// Weights against the induced area measure.
    pub weights: Vec<f64>,
    /// Weights against the round measure of the unit sphere.
    pub round_weights: Vec<f64>,
    /// Unit vectors of the nodes on the parameter sphere.
    pub points: Vec<[f64; 3]>,
    /// Polynomial exactness degree on the round sphere.
    pub order: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    /// `Σ w_k f_k` for values given in node order.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        let terms: Vec<f64> = self.weights.iter().zip(values).map(|(w, v)| w * v).collect();
        pairwise_sum(&terms)
    }

    /// Integral of a function of the unit vector against the round measure.
    pub fn integrate_round(&self, f: impl Fn([f64; 3]) -> f64) -> f64 {
        let terms: Vec<f64> = self.round_weights.iter().zip(&self.points).map(|(w, x)| w * f(*x)).collect();
        pairwise_sum(&terms)
    }

    /// CSV with header `chart,u,v,weight`, one row per node.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("chart,u,v,weight\n");
        for (p, w) in self.nodes.iter().zip(&self.weights) {
            let _ = writeln!(out, "{},{:.17e},{:.17e},{:.17e}", p.chart.name(), p.u, p.v, w);
        }
        out
    }
}

/// `n × 2n` product rule with induced-metric weights.
pub fn build_rule(imm: &HarmonicImmersion, n: usize) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::QuadratureSize(n));
    }
    let (xs, ws) = gauss_legendre(n);
    let dphi = PI / n as f64;
    let mut points = Vec::with_capacity(2 * n * n);
    let mut round_weights = Vec::with_capacity(2 * n * n);
    for (z, w) in xs.iter().zip(&ws) {
        let r = (1.0 - z * z).sqrt();
        for j in 0..2 * n {
            let phi = j as f64 * dphi;
            points.push([r * phi.cos(), r * phi.sin(), *z]);
            round_weights.push(w * dphi);
        }
    }
    let nodes: Vec<ChartPoint> = points.iter().map(|x| ChartPoint::from_unit(*x)).collect();
    let weights = nodes
        .par_iter()
        .zip(&round_weights)
        .map(|(p, w)| Ok(w * area_element(imm, p)? / p.round_conformal_factor()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(QuadratureRule {
        nodes,
        weights,
        round_weights,
        points,
        order: 2 * n - 1,
    })
}

/// Geometry cached at every node of a rule.
pub struct SurfaceIntegrator<'a> {
    imm: &'a HarmonicImmersion,
    rule: &'a QuadratureRule,
    invariants: Vec<InvariantReport>,
    s_derivs: Vec<ScalarDerivs>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralPair {
    pub lhs: f64,
    pub rhs: f64,
}

impl IntegralPair {
    pub fn gap(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BochnerResult {
    pub residual: f64,
    /// `∫|∇u|²`
    pub gradient_energy: f64,
}

impl<'a> SurfaceIntegrator<'a> {
    pub fn new(imm: &'a HarmonicImmersion, rule: &'a QuadratureRule, precision: Precision) -> Result<Self> {
        let rows = rule
            .nodes
            .par_iter()
            .map(|p| {
                let gj = geometry_jet_with(imm, p, precision)?;
                Ok((invariants(&gj), gj.s_field))
            })
            .collect::<Result<Vec<_>>>()?;
        let (invariants, s_derivs) = rows.into_iter().unzip();
        Ok(Self {
            imm,
            rule,
            invariants,
            s_derivs,
        })
    }

    pub fn invariants(&self) -> &[InvariantReport] {
        &self.invariants
    }

    fn integrate_with(&self, f: impl Fn(&InvariantReport, &ScalarDerivs) -> f64) -> f64 {
        let values: Vec<f64> = self.invariants.iter().zip(&self.s_derivs).map(|(i, d)| f(i, d)).collect();
        self.rule.integrate(&values)
    }

    /// Both sides of the first (`which = 1`), second or third integral
    /// identity.
    pub fn identity(&self, which: u8) -> Result<IntegralPair> {
        let pair = match which {
            1 => IntegralPair {
                lhs: self.integrate_with(|r, _| r.s * (3.0 * r.s - 4.0)),
                rhs: 2.0 * self.integrate_with(|r, _| r.b1),
            },
            2 => IntegralPair {
                lhs: self.integrate_with(|r, _| r.s * (3.0 * r.s - 4.0) * (3.0 * r.s - 5.0)),
                rhs: 2.0
                    * self.integrate_with(|r, d| {
                        r.b2 - 0.25 * r.s * (3.0 * r.s - 4.0).powi(2) + 0.5 * d.grad_norm_sq()
                    }),
            },
            3 => IntegralPair {
                lhs: self.integrate_with(|r, _| {
                    r.s * (3.0 * r.s - 4.0) * (3.0 * r.s - 5.0) * (5.0 * r.s - 9.0)
                }),
                rhs: 2.0
                    * self.integrate_with(|r, d| {
                        let s = r.s;
                        r.b3 - s * (3.0 * s - 4.0) * (45.0 * s * s - 144.0 * s + 116.0) / 8.0
                            + (65.0 * s - 166.0) / 8.0 * d.grad_norm_sq()
                            - 5.0 / 8.0 * d.laplacian().powi(2)
                    }),
            },
            other => {
                return Err(Error::InvalidArgument(format!(
                    "integral identity must be 1, 2 or 3, got {other}"
                )))
            }
        };
        Ok(pair)
    }

    /// `∫[2(Δu)² − 2|Hess u|² + (S − 2)|∇u|²]` for a test function `u`.
    pub fn bochner(&self, u: &AmbientPoly) -> Result<BochnerResult> {
        let field = ScalarField::Ambient(u.clone());
        let derivs = self
            .rule
            .nodes
            .par_iter()
            .map(|p| scalar_field_derivs(self.imm, &field, p))
            .collect::<Result<Vec<_>>>()?;
        let integrand: Vec<f64> = derivs
            .iter()
            .zip(&self.invariants)
            .map(|(d, r)| 2.0 * d.laplacian().powi(2) - 2.0 * d.hess_norm_sq() + (r.s - 2.0) * d.grad_norm_sq())
            .collect();
        let energy: Vec<f64> = derivs.iter().map(ScalarDerivs::grad_norm_sq).collect();
        Ok(BochnerResult {
            residual: self.rule.integrate(&integrand),
            gradient_energy: self.rule.integrate(&energy),
        })
    }

    /// `(∫|∇S|², ∫S(3S − 4)(S − S_min))` with `S_min` the smallest nodal value.
    pub fn gradient_bound(&self) -> IntegralPair {
        let s_min = self.invariants.iter().map(|r| r.s).fold(f64::INFINITY, f64::min);
        IntegralPair {
            lhs: self.integrate_with(|_, d| d.grad_norm_sq()),
            rhs: self.integrate_with(|r, _| r.s * (3.0 * r.s - 4.0) * (r.s - s_min)),
        }
    }
}

pub fn integral_identity(imm: &HarmonicImmersion, rule: &QuadratureRule, which: u8) -> Result<IntegralPair> {
    SurfaceIntegrator::new(imm, rule, Precision::Double)?.identity(which)
}

/// `|∫K dA − 4π|` with `K` computed from the Christoffel symbols.
pub fn gauss_bonnet_residual(imm: &HarmonicImmersion, rule: &QuadratureRule) -> Result<f64> {
    let k = rule
        .nodes
        .par_iter()
        .map(|p| Ok(adapted_frame(imm, p)?.gaussian_curvature))
        .collect::<Result<Vec<f64>>>()?;
    Ok((rule.integrate(&k) - 4.0 * PI).abs())
}

pub fn bochner_residual(imm: &HarmonicImmersion, rule: &QuadratureRule, u: &AmbientPoly) -> Result<BochnerResult> {
    SurfaceIntegrator::new(imm, rule, Precision::Double)?.bochner(u)
}

pub fn gradient_bound_check(imm: &HarmonicImmersion, rule: &QuadratureRule) -> Result<IntegralPair> {
    Ok(SurfaceIntegrator::new(imm, rule, Precision::Double)?.gradient_bound())
}

/// `|∫Δu dA|`, which vanishes on a closed surface.
pub fn divergence_residual(imm: &HarmonicImmersion, rule: &QuadratureRule, u: &AmbientPoly) -> Result<f64> {
    let field = ScalarField::Ambient(u.clone());
    let lap = rule
        .nodes
        .par_iter()
        .map(|p| Ok(scalar_field_derivs(imm, &field, p)?.laplacian()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(rule.integrate(&lap).abs())
}

/// Five polynomial test functions in the ambient coordinates: a coordinate,
/// a product of two, a square, a cubic and a mixed sum.
pub fn standard_test_functions(n_vars: usize) -> Vec<AmbientPoly> {
    let last = n_vars - 1;
    let mid = n_vars / 2;
    vec![
        AmbientPoly::coordinate(n_vars, 1 % n_vars),
        AmbientPoly::monomial(n_vars, 1.0, &[(1 % n_vars, 1), (2 % n_vars, 1)]),
        AmbientPoly::monomial(n_vars, 1.0, &[(0, 2)]),
        AmbientPoly::monomial(n_vars, 1.0, &[(0, 1), (mid, 1), (last, 1)]),
        AmbientPoly::coordinate(n_vars, last)
            .plus(AmbientPoly::monomial(n_vars, 0.5, &[(mid, 2)]))
            .plus(AmbientPoly::monomial(n_vars, -0.25, &[(0, 1), (last, 2)])),
    ]
}
