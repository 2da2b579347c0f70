use serde::{Deserialize, Serialize};

use super::GeometryJet;

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).fold(0.0, |acc, (a, b)| acc + a * b)
}

/// Frame-invariant scalars at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    pub s: f64,
    /// Gaussian curvature from the Christoffel symbols.
    pub k: f64,
    /// Gaussian curvature from the Gauss equation, `1 - S/2`.
    pub k_gauss: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub norm_a2: f64,
    pub rho_perp: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub a_sq: f64,
    pub b_sq: f64,
    pub a_dot_b: f64,
    pub a1_sq: f64,
    pub a2_sq: f64,
    pub a1_dot_a2: f64,
    pub a11_sq: f64,
    pub a12_sq: f64,
    pub a21_sq: f64,
    pub a22_sq: f64,
}

impl InvariantReport {
    /// `(name, value)` pairs in a fixed order.
    pub fn fields(&self) -> [(&'static str, f64); 21] {
        [
            ("S", self.s),
            ("K", self.k),
            ("K_gauss", self.k_gauss),
            ("B1", self.b1),
            ("B2", self.b2),
            ("B3", self.b3),
            ("normA2", self.norm_a2),
            ("rhoPerp", self.rho_perp),
            ("C1", self.c1),
            ("C2", self.c2),
            ("C3", self.c3),
            ("|a|^2", self.a_sq),
            ("|b|^2", self.b_sq),
            ("<a,b>", self.a_dot_b),
            ("|a1|^2", self.a1_sq),
            ("|a2|^2", self.a2_sq),
            ("<a1,a2>", self.a1_dot_a2),
            ("|a11|^2", self.a11_sq),
            ("|a12|^2", self.a12_sq),
            ("|a21|^2", self.a21_sq),
            ("|a22|^2", self.a22_sq),
        ]
    }
}

/// Shape operators `S_α = (h^α_ij)` as row-major 2×2 arrays.
fn shape_operators(gj: &GeometryJet) -> Vec<[f64; 4]> {
    (0..gj.codim())
        .map(|a| {
            [
                gj.h2.get(a, &[0, 0]),
                gj.h2.get(a, &[0, 1]),
                gj.h2.get(a, &[1, 0]),
                gj.h2.get(a, &[1, 1]),
            ]
        })
        .collect()
}

fn matmul(x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

pub fn invariants(gj: &GeometryJet) -> InvariantReport {
    let s = gj.h2.norm_sq();
    let ops = shape_operators(gj);
    let mut norm_a2 = 0.0;
    let mut rho_perp = 0.0;
    for x in &ops {
        for y in &ops {
            norm_a2 += dot(x, y).powi(2);
            let (xy, yx) = (matmul(x, y), matmul(y, x));
            rho_perp += xy.iter().zip(&yx).map(|(p, q)| (p - q) * (p - q)).sum::<f64>();
        }
    }

    let p = gj.codim();
    let a = |i: usize, j: usize| gj.h4.vector(&[0, 0, i, j]);
    let c = |i: usize, j: usize, k: usize| gj.h5.vector(&[0, 0, i, j, k]);
    let sq_sum = |f: &dyn Fn(usize) -> f64| (0..p).fold(0.0, |acc, al| acc + f(al).powi(2));

    let (a11, a12, a21, a22) = (a(0, 0), a(0, 1), a(1, 0), a(1, 1));
    let c1 = 2.0 * (sq_sum(&|al| a11[al] - a22[al]) + sq_sum(&|al| a12[al] + a21[al]));
    let (a111, a122, a211, a222) = (c(0, 0, 0), c(0, 1, 1), c(1, 0, 0), c(1, 1, 1));
    let (a112, a121, a212, a221) = (c(0, 0, 1), c(0, 1, 0), c(1, 0, 1), c(1, 1, 0));
    let c2 = 2.0 * (sq_sum(&|al| a111[al] - a122[al]) + sq_sum(&|al| a211[al] - a222[al]));
    let c3 = 2.0 * (sq_sum(&|al| a112[al] + a121[al]) + sq_sum(&|al| a212[al] + a221[al]));

    let (va, vb) = (gj.a(), gj.b());
    let (a1, a2) = (gj.a_i(0), gj.a_i(1));
    InvariantReport {
        s,
        k: gj.frame.gaussian_curvature,
        k_gauss: 1.0 - 0.5 * s,
        b1: gj.h3.norm_sq(),
        b2: gj.h4.norm_sq(),
        b3: gj.h5.norm_sq(),
        norm_a2,
        rho_perp,
        c1,
        c2,
        c3,
        a_sq: dot(&va, &va),
        b_sq: dot(&vb, &vb),
        a_dot_b: dot(&va, &vb),
        a1_sq: dot(&a1, &a1),
        a2_sq: dot(&a2, &a2),
        a1_dot_a2: dot(&a1, &a2),
        a11_sq: dot(&a11, &a11),
        a12_sq: dot(&a12, &a12),
        a21_sq: dot(&a21, &a21),
        a22_sq: dot(&a22, &a22),
    }
}
