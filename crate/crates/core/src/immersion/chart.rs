//! Stereographic charts on the unit 2-sphere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Axis, Jet};
use crate::real::Real;

/// Largest admissible `u² + v²` for a chart point.
pub const CHART_RADIUS_SQ_MAX: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// Projection from the north pole; the chart center is `(0, 0, -1)`.
    North,
    /// Projection from the south pole; the chart center is `(0, 0, 1)`.
    South,
}

impl Chart {
    pub fn name(self) -> &'static str {
        match self {
            Chart::North => "north",
            Chart::South => "south",
        }
    }

    fn pole_sign(self) -> f64 {
        match self {
            Chart::North => 1.0,
            Chart::South => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: Chart,
    pub u: f64,
    pub v: f64,
}

impl ChartPoint {
    pub fn new(chart: Chart, u: f64, v: f64) -> Result<Self> {
        let r2 = u * u + v * v;
        if !r2.is_finite() || r2 > CHART_RADIUS_SQ_MAX {
            return Err(Error::InvalidArgument(format!(
                "chart point ({u}, {v}) lies too close to the projection pole"
            )));
        }
        Ok(Self { chart, u, v })
    }

    /// Chart point for a unit vector: `z > 0` goes to the south chart,
    /// everything else to the north chart, so `u² + v² <= 1`.
    pub fn from_unit(x: [f64; 3]) -> Self {
        let chart = if x[2] > 0.0 { Chart::South } else { Chart::North };
        Self::project(x, chart)
    }

    /// Stereographic coordinates of `x` in the given chart (no range check).
    pub fn project(x: [f64; 3], chart: Chart) -> Self {
        let d = 1.0 - chart.pole_sign() * x[2];
        Self {
            chart,
            u: x[0] / d,
            v: x[1] / d,
        }
    }

    pub fn radius_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    /// Inverse stereographic projection.
    pub fn embed(&self) -> [f64; 3] {
        let r2 = self.radius_sq();
        let d = 1.0 + r2;
        [
            2.0 * self.u / d,
            2.0 * self.v / d,
            self.chart.pole_sign() * (r2 - 1.0) / d,
        ]
    }

    /// Jets of the three coordinates of [`embed`](Self::embed) around this point.
    pub fn embed_jet<T: Real>(&self, order: usize) -> [Jet<T>; 3] {
        let u = Jet::variable(order, T::from_f64(self.u), Axis::U);
        let v = Jet::variable(order, T::from_f64(self.v), Axis::V);
        let r2 = u * u + v * v;
        let inv = r2.add_constant(T::one()).recip();
        let two = T::from_f64(2.0);
        [
            (u * inv).scale(two),
            (v * inv).scale(two),
            (r2.add_constant(-T::one()) * inv).scale(T::from_f64(self.chart.pole_sign())),
        ]
    }

    /// Conformal factor `4 / (1 + u² + v²)²` of the round metric in this chart.
    pub fn round_conformal_factor(&self) -> f64 {
        let d = 1.0 + self.radius_sq();
        4.0 / (d * d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chart_centers_and_equator() {
        let c = ChartPoint::new(Chart::North, 0.0, 0.0).unwrap().embed();
        assert_eq!(c, [0.0, 0.0, -1.0]);
        let c = ChartPoint::new(Chart::South, 0.0, 0.0).unwrap().embed();
        assert_eq!(c, [0.0, 0.0, 1.0]);
        let e = ChartPoint::new(Chart::North, 1.0, 0.0).unwrap().embed();
        assert_abs_diff_eq!(e[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[2], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_points_near_the_pole() {
        assert!(ChartPoint::new(Chart::North, 3.0, 0.0).is_err());
        assert!(ChartPoint::new(Chart::South, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn round_trip_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let z: f64 = rng.random_range(-1.0..1.0);
            let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - z * z).sqrt();
            let x = [s * phi.cos(), s * phi.sin(), z];
            let p = ChartPoint::from_unit(x);
            assert!(p.radius_sq() <= 1.0 + 1e-15);
            let y = p.embed();
            let norm: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-14);
            for k in 0..3 {
                assert_abs_diff_eq!(x[k], y[k], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn closed_form_inverse_agrees() {
        // u = x/(1-z) for the north chart, independent formula
        let x = [0.36, -0.48, -0.8];
        let p = ChartPoint::from_unit(x);
        assert_eq!(p.chart, Chart::North);
        assert_abs_diff_eq!(p.u, 0.36 / 1.8, epsilon = 1e-15);
        assert_abs_diff_eq!(p.v, -0.48 / 1.8, epsilon = 1e-15);
        let q = ChartPoint::from_unit([0.0, 0.6, 0.8]);
        assert_eq!(q.chart, Chart::South);
        assert_abs_diff_eq!(q.v, 0.6 / 1.8, epsilon = 1e-15);
        // tie at z = 0 goes north
        assert_eq!(ChartPoint::from_unit([1.0, 0.0, 0.0]).chart, Chart::North);
    }

    #[test]
    fn embed_jet_value_matches_embed() {
        let p = ChartPoint::new(Chart::South, 0.3, -0.2).unwrap();
        let j = p.embed_jet::<f64>(5);
        let x = p.embed();
        for k in 0..3 {
            assert_abs_diff_eq!(j[k].value(), x[k], epsilon = 1e-15);
        }
        // the jet of |x|^2 is the constant 1
        let n2 = j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
        assert_abs_diff_eq!(n2.value(), 1.0, epsilon = 1e-15);
        for c in &n2.coeffs()[1..] {
            assert!(c.abs() < 1e-14);
        }
    }
}
