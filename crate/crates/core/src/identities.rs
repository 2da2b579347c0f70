//! Pointwise identities of the geometry of minimal surfaces in spheres,
//! evaluated as named residuals on a [`GeometryJet`].
//!
//! Identities that contain derivatives of `S` or `B₁` use the values computed
//! by the pipeline; on the standard immersions these vanish and the separate
//! `CONSTS` check reports how small they actually are.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{geometry_jet_with, invariants, GeometryJet, InvariantReport, Precision};
use crate::immersion::HarmonicImmersion;
use crate::sampling::sample_points;

macro_rules! checks {
    ($($variant:ident => $name:literal, $order:literal, $formula:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum CheckId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(CheckId::$variant => $name,)* }
            }

            /// Highest covariant derivative of `h` the residual depends on.
            pub fn derivative_order(self) -> usize {
                match self { $(CheckId::$variant => $order,)* }
            }

            /// The identity whose residual is reported.
            pub fn formula(self) -> &'static str {
                match self { $(CheckId::$variant => $formula,)* }
            }
        }
    };
}

checks! {
    Minimal => "MINIMAL", 0, "h^a_11 + h^a_22 = 0";
    Codazzi => "CODAZZI", 1, "h^a_ijk totally symmetric";
    Ricci1 => "RICCI1", 2, "h^a_ijkl - h^a_ijlk = h^a_pj R_pikl + h^a_ip R_pjkl + h^b_ij R_bakl";
    Ricci2 => "RICCI2", 3, "h^a_ijklm - h^a_ijkml = h^a_pjk R_pilm + h^a_ipk R_pjlm + h^a_ijp R_pklm + h^b_ijk R_balm";
    Lap1 => "LAP1", 2, "h^a_ijkk = h^a_mmij + h^a_pi R_pmjm + h^a_mp R_pijm + h^d_mi R_dajm";
    Lap2 => "LAP2", 3, "h^a_ijkll = (h^a_ijmm)_k + 2h^a_pjm R_pikm + 2h^a_ipm R_pjkm + h^a_ijp R_pmkm + 2h^d_ijm R_dakm + h^a_pj R_pikmm + h^a_ip R_pjkmm + h^d_ij R_dakmm";
    Curv3 => "CURV3", 1, "R_ab12k = 2(b^b a^a_k + a^a h^b_12k - b^a a^b_k - a^b h^a_12k)";
    Simons => "SIMONS", 1, "1/2 lap S = B1 + 2S - |A|^2 - rho";
    Refined => "REFINED", 1, "1/2 lap S = B1 - 1/2 S(3S-4)";
    Funda => "FUNDA", 0, "<a,b> = 0, |a|^2 = |b|^2 = S/4";
    Norma => "NORMA", 0, "|A|^2 = S^2/2, rho = S^2";
    Twins => "TWINS", 2, "lap a = 1/2 a(4-3S), lap b = 1/2 b(4-3S)";
    Dual => "DUAL", 3, "lap a1 = 1/2 a1(14-9S) + 7/4(-a S1 + b S2), lap a2 = 1/2 a2(14-9S) - 7/4(b S1 + a S2)";
    Fird => "FIRD", 1, "<a1,a2> = 0, |a1|^2 = |a2|^2 = B1/8";
    Deriv01 => "DERIV01", 1, "<a,a1> = <b,a2> = S1/8, <a,a2> = -<b,a1> = S2/8";
    Deriv02 => "DERIV02", 2, "<a,a11> = <b,a21> = (S11-B1)/8, <a,a22> = -<b,a12> = (S22-B1)/8, <a,a12> = <b,a22> = S12/8, <a,a21> = -<b,a11> = S21/8";
    Deriv12 => "DERIV12", 2, "<a1,a21> = -<a2,a11>, <a1,a22> = -<a2,a12>, <a1,a11> = <a2,a21> = (B1)_1/16, <a1,a12> = <a2,a22> = (B1)_2/16";
    Second => "SECOND", 2, "<a11,a21> = <a22,a12> = 0, |a11|^2 = |a21|^2 = B2/16 - (3S-4)(S11-S22)/32, |a22|^2 = |a12|^2 = B2/16 + (3S-4)(S11-S22)/32";
    Gauge => "GAUGE", 2, "a12 - a21 = 1/2 b(3S-4)";
    Swap => "SWAP", 2, "h_ijkl h_ijlk = B2 - 1/4 S(3S-4)^2";
    Double => "DOUBLE", 2, "h_ijkk h_ijll = 1/4 S(3S-4)^2";
    B2Decomp => "B2DECOMP", 2, "B2 = 1/4 S(3S-4)^2 + C1";
    B2Const => "B2CONST", 2, "B2 = 1/4 S(3S-4)(9S-14) - 1/2|grad S|^2 + 15/8 lap S^2 - 9/2 lap S + 1/4 lap lap S";
    SecEq => "SECEQ", 2, "1/2 lap B1 = 7/2 lap S - 9/8 lap S^2 + 1/2|grad S|^2 - 1/4 S(3S-4)(9S-14) + B2";
    B3Decomp => "B3DECOMP", 3, "B3 = 1/4(45S^2-144S+116) B1 + 13/8(7S-8)|grad S|^2 + C2 + C3";
    LapB2Combo => "LAPB2COMBO", 3, "-(21S^2-64S+49) B1 + 7(1-S/2) B2 + 1/4 S(3S-4)^2(7S-12) - 7/2(7S-8)|grad S|^2 - <grad B1, grad S> + 1/4(lap S)^2 - 1/2|Hess S|^2 + B3 = 0";
    Pineq => "PINEQ", 0, "-S^2 + |A|^2 + rho = 1/2 S^2";
    Consts => "CONSTS", 0, "|grad S| = |Hess S| = 0";
}

impl CheckId {
    pub fn from_name(name: &str) -> Result<CheckId> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
    }

    /// Tolerance applied to this check for a base tolerance; residuals that
    /// involve third covariant derivatives of `h` get two extra digits.
    pub fn tolerance(self, base: f64) -> f64 {
        if self.derivative_order() >= 3 {
            base * 100.0
        } else {
            base
        }
    }
}

impl std::fmt::Display for CheckId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).fold(0.0, |acc, (a, b)| acc + a * b)
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

struct Ctx<'a> {
    g: &'a GeometryJet,
    inv: InvariantReport,
    p: usize,
    s: f64,
    k: f64,
}

impl Ctx<'_> {
    fn h2(&self, a: usize, i: usize, j: usize) -> f64 {
        self.g.h2.get(a, &[i, j])
    }
    fn h3(&self, a: usize, i: usize, j: usize, k: usize) -> f64 {
        self.g.h3.get(a, &[i, j, k])
    }
    fn h4(&self, a: usize, idx: [usize; 4]) -> f64 {
        self.g.h4.get(a, &idx)
    }
    fn h5(&self, a: usize, idx: [usize; 5]) -> f64 {
        self.g.h5.get(a, &idx)
    }

    /// `R_pikl = K(δ_pk δ_il − δ_pl δ_ik)`, `K = 1 − S/2`
    fn rt(&self, p: usize, i: usize, k: usize, l: usize) -> f64 {
        self.k * (delta(p, k) * delta(i, l) - delta(p, l) * delta(i, k))
    }

    /// `R_pikl,m = −½ S_m (δ_pk δ_il − δ_pl δ_ik)`
    fn drt(&self, p: usize, i: usize, k: usize, l: usize, m: usize) -> f64 {
        -0.5 * self.g.s_field.grad[m] * (delta(p, k) * delta(i, l) - delta(p, l) * delta(i, k))
    }

    /// `R_αβkl = h^α_km h^β_ml − h^β_km h^α_ml`
    fn rn(&self, a: usize, b: usize, k: usize, l: usize) -> f64 {
        (0..2).fold(0.0, |acc, m| {
            acc + self.h2(a, k, m) * self.h2(b, m, l) - self.h2(b, k, m) * self.h2(a, m, l)
        })
    }

    /// Covariant derivative `R_αβkl,n` of the normal curvature.
    fn drn(&self, a: usize, b: usize, k: usize, l: usize, n: usize) -> f64 {
        (0..2).fold(0.0, |acc, m| {
            acc + self.h3(a, k, m, n) * self.h2(b, m, l) + self.h2(a, k, m) * self.h3(b, m, l, n)
                - self.h3(b, k, m, n) * self.h2(a, m, l)
                - self.h2(b, k, m) * self.h3(a, m, l, n)
        })
    }
}

fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m: f64, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x.abs()) })
}

fn sq(v: &[f64]) -> f64 {
    dot(v, v)
}

fn residual(c: &Ctx<'_>, id: CheckId) -> f64 {
    let g = c.g;
    let inv = &c.inv;
    let (s, p) = (c.s, c.p);
    let alphas = 0..p;
    let ds = &g.s_field;
    let grad_s2 = ds.grad_norm_sq();
    let lap_s = ds.laplacian();
    // Δ(S²) = 2SΔS + 2|∇S|²
    let lap_s2 = 2.0 * s * lap_s + 2.0 * grad_s2;
    let (av, bv) = (g.a(), g.b());
    let (a, b) = (av.as_slice(), bv.as_slice());
    let (a1v, a2v) = (g.a_i(0), g.a_i(1));
    let (a1, a2) = (a1v.as_slice(), a2v.as_slice());
    let aij = [g.a_ij(0, 0), g.a_ij(0, 1), g.a_ij(1, 0), g.a_ij(1, 1)];
    let [a11, a12, a21, a22] = [&aij[0][..], &aij[1][..], &aij[2][..], &aij[3][..]];
    let q = 3.0 * s - 4.0;
    let idx2 = || (0..2).flat_map(|i| (0..2).map(move |j| (i, j)));
    let idx3 = || idx2().flat_map(|(i, j)| (0..2).map(move |k| (i, j, k)));
    let idx4 = || idx3().flat_map(|(i, j, k)| (0..2).map(move |l| (i, j, k, l)));

    match id {
        CheckId::Minimal => max_abs(alphas.map(|al| c.h2(al, 0, 0) + c.h2(al, 1, 1))),
        CheckId::Codazzi => max_abs(alphas.flat_map(|al| {
            idx3().flat_map(move |(i, j, k)| {
                [c.h3(al, i, j, k) - c.h3(al, i, k, j), c.h3(al, i, j, k) - c.h3(al, j, i, k)]
            })
        })),
        CheckId::Ricci1 => max_abs(alphas.flat_map(|al| {
            idx4().map(move |(i, j, k, l)| {
                let lhs = c.h4(al, [i, j, k, l]) - c.h4(al, [i, j, l, k]);
                let mut rhs = 0.0;
                for q in 0..2 {
                    rhs += c.h2(al, q, j) * c.rt(q, i, k, l) + c.h2(al, i, q) * c.rt(q, j, k, l);
                }
                for be in 0..p {
                    rhs += c.h2(be, i, j) * c.rn(be, al, k, l);
                }
                lhs - rhs
            })
        })),
        CheckId::Ricci2 => max_abs(alphas.flat_map(|al| {
            idx4().flat_map(move |(i, j, k, l)| {
                (0..2).map(move |m| {
                    let lhs = c.h5(al, [i, j, k, l, m]) - c.h5(al, [i, j, k, m, l]);
                    let mut rhs = 0.0;
                    for q in 0..2 {
                        rhs += c.h3(al, q, j, k) * c.rt(q, i, l, m)
                            + c.h3(al, i, q, k) * c.rt(q, j, l, m)
                            + c.h3(al, i, j, q) * c.rt(q, k, l, m);
                    }
                    for be in 0..p {
                        rhs += c.h3(be, i, j, k) * c.rn(be, al, l, m);
                    }
                    lhs - rhs
                })
            })
        })),
        CheckId::Lap1 => max_abs(alphas.flat_map(|al| {
            idx2().map(move |(i, j)| {
                let lhs: f64 = (0..2).map(|k| c.h4(al, [i, j, k, k])).sum();
                let mut rhs = 0.0;
                for m in 0..2 {
                    rhs += c.h4(al, [m, m, i, j]);
                    for q in 0..2 {
                        rhs += c.h2(al, q, i) * c.rt(q, m, j, m) + c.h2(al, m, q) * c.rt(q, i, j, m);
                    }
                    for d in 0..p {
                        rhs += c.h2(d, m, i) * c.rn(d, al, j, m);
                    }
                }
                lhs - rhs
            })
        })),
        CheckId::Lap2 => max_abs(alphas.flat_map(|al| {
            idx3().map(move |(i, j, k)| {
                let lhs: f64 = (0..2).map(|l| c.h5(al, [i, j, k, l, l])).sum();
                let mut rhs = 0.0;
                for m in 0..2 {
                    rhs += c.h5(al, [i, j, m, m, k]);
                    for q in 0..2 {
                        rhs += 2.0 * c.h3(al, q, j, m) * c.rt(q, i, k, m)
                            + 2.0 * c.h3(al, i, q, m) * c.rt(q, j, k, m)
                            + c.h3(al, i, j, q) * c.rt(q, m, k, m)
                            + c.h2(al, q, j) * c.drt(q, i, k, m, m)
                            + c.h2(al, i, q) * c.drt(q, j, k, m, m);
                    }
                    for d in 0..p {
                        rhs += 2.0 * c.h3(d, i, j, m) * c.rn(d, al, k, m) + c.h2(d, i, j) * c.drn(d, al, k, m, m);
                    }
                }
                lhs - rhs
            })
        })),
        CheckId::Curv3 => max_abs(alphas.flat_map(|al| {
            (0..p).flat_map(move |be| {
                (0..2).map(move |k| {
                    let closed = 2.0
                        * (b[be] * c.h3(al, 0, 0, k) + a[al] * c.h3(be, 0, 1, k)
                            - b[al] * c.h3(be, 0, 0, k)
                            - a[be] * c.h3(al, 0, 1, k));
                    c.drn(al, be, 0, 1, k) - closed
                })
            })
        })),
        CheckId::Simons => 0.5 * lap_s - (inv.b1 + 2.0 * s - inv.norm_a2 - inv.rho_perp),
        CheckId::Refined => 0.5 * lap_s - (inv.b1 - 0.5 * s * q),
        CheckId::Funda => max_abs([inv.a_dot_b, inv.a_sq - s / 4.0, inv.b_sq - s / 4.0]),
        CheckId::Norma => max_abs([inv.norm_a2 - s * s / 2.0, inv.rho_perp - s * s]),
        CheckId::Twins => max_abs(alphas.flat_map(|al| {
            let lap_a: f64 = (0..2).map(|k| c.h4(al, [0, 0, k, k])).sum();
            let lap_b: f64 = (0..2).map(|k| c.h4(al, [0, 1, k, k])).sum();
            [lap_a - 0.5 * a[al] * (4.0 - 3.0 * s), lap_b - 0.5 * b[al] * (4.0 - 3.0 * s)]
        })),
        CheckId::Dual => {
            let (s1, s2) = (ds.grad[0], ds.grad[1]);
            max_abs(alphas.flat_map(|al| {
                let lap_a1: f64 = (0..2).map(|l| c.h5(al, [0, 0, 0, l, l])).sum();
                let lap_a2: f64 = (0..2).map(|l| c.h5(al, [0, 0, 1, l, l])).sum();
                [
                    lap_a1 - 0.5 * a1[al] * (14.0 - 9.0 * s) - 1.75 * (-a[al] * s1 + b[al] * s2),
                    lap_a2 - 0.5 * a2[al] * (14.0 - 9.0 * s) + 1.75 * (b[al] * s1 + a[al] * s2),
                ]
            }))
        }
        CheckId::Fird => max_abs([inv.a1_dot_a2, inv.a1_sq - inv.b1 / 8.0, inv.a2_sq - inv.b1 / 8.0]),
        CheckId::Deriv01 => {
            let (s1, s2) = (ds.grad[0] / 8.0, ds.grad[1] / 8.0);
            max_abs([dot(a, a1) - s1, dot(b, a2) - s1, dot(a, a2) - s2, dot(b, a1) + s2])
        }
        CheckId::Deriv02 => {
            let h = ds.hess;
            let b1 = inv.b1;
            max_abs([
                dot(a, a11) - (h[0][0] - b1) / 8.0,
                dot(b, a21) - (h[0][0] - b1) / 8.0,
                dot(a, a22) - (h[1][1] - b1) / 8.0,
                dot(b, a12) + (h[1][1] - b1) / 8.0,
                dot(a, a12) - h[0][1] / 8.0,
                dot(b, a22) - h[0][1] / 8.0,
                dot(a, a21) - h[1][0] / 8.0,
                dot(b, a11) + h[1][0] / 8.0,
            ])
        }
        CheckId::Deriv12 => {
            let gb = g.b1_field.grad;
            max_abs([
                dot(a1, a21) + dot(a2, a11),
                dot(a1, a22) + dot(a2, a12),
                dot(a1, a11) - gb[0] / 16.0,
                dot(a2, a21) - gb[0] / 16.0,
                dot(a1, a12) - gb[1] / 16.0,
                dot(a2, a22) - gb[1] / 16.0,
            ])
        }
        CheckId::Second => {
            let corr = q * (ds.hess[0][0] - ds.hess[1][1]) / 32.0;
            max_abs([
                dot(a11, a21),
                dot(a22, a12),
                sq(a11) - (inv.b2 / 16.0 - corr),
                sq(a21) - (inv.b2 / 16.0 - corr),
                sq(a22) - (inv.b2 / 16.0 + corr),
                sq(a12) - (inv.b2 / 16.0 + corr),
            ])
        }
        CheckId::Gauge => max_abs(alphas.map(|al| a12[al] - a21[al] - 0.5 * b[al] * q)),
        CheckId::Swap => {
            let swap: f64 = (0..p)
                .flat_map(|al| idx4().map(move |(i, j, k, l)| c.h4(al, [i, j, k, l]) * c.h4(al, [i, j, l, k])))
                .sum();
            swap - (inv.b2 - 0.25 * s * q * q)
        }
        CheckId::Double => {
            let dbl: f64 = (0..p)
                .flat_map(|al| idx2().map(move |(i, j)| (c.h4(al, [i, j, 0, 0]) + c.h4(al, [i, j, 1, 1])).powi(2)))
                .sum();
            dbl - 0.25 * s * q * q
        }
        CheckId::B2Decomp => inv.b2 - (0.25 * s * q * q + inv.c1),
        CheckId::B2Const => {
            // ΔΔS is out of jet range; use Δ of the refined identity,
            // ΔΔS = 2ΔB₁ − (6S − 4)ΔS − 6|∇S|².
            let lap_lap_s = 2.0 * g.b1_field.laplacian() - (6.0 * s - 4.0) * lap_s - 6.0 * grad_s2;
            inv.b2
                - (0.25 * s * q * (9.0 * s - 14.0) - 0.5 * grad_s2 + 15.0 / 8.0 * lap_s2 - 4.5 * lap_s
                    + 0.25 * lap_lap_s)
        }
        CheckId::SecEq => {
            0.5 * g.b1_field.laplacian()
                - (3.5 * lap_s - 9.0 / 8.0 * lap_s2 + 0.5 * grad_s2 - 0.25 * s * q * (9.0 * s - 14.0) + inv.b2)
        }
        CheckId::B3Decomp => {
            inv.b3
                - (0.25 * (45.0 * s * s - 144.0 * s + 116.0) * inv.b1
                    + 13.0 / 8.0 * (7.0 * s - 8.0) * grad_s2
                    + inv.c2
                    + inv.c3)
        }
        CheckId::LapB2Combo => {
            let gb = g.b1_field.grad;
            -(21.0 * s * s - 64.0 * s + 49.0) * inv.b1 + 7.0 * (1.0 - s / 2.0) * inv.b2
                + 0.25 * s * q * q * (7.0 * s - 12.0)
                - 3.5 * (7.0 * s - 8.0) * grad_s2
                - (gb[0] * ds.grad[0] + gb[1] * ds.grad[1])
                + 0.25 * lap_s * lap_s
                - 0.5 * ds.hess_norm_sq()
                + inv.b3
        }
        CheckId::Pineq => -s * s + inv.norm_a2 + inv.rho_perp - 0.5 * s * s,
        CheckId::Consts => grad_s2.sqrt().max(ds.hess_norm_sq().sqrt()),
    }
    .abs()
}

/// Every catalog residual at one point.
pub fn pointwise_residuals(gj: &GeometryJet) -> BTreeMap<CheckId, f64> {
    let inv = invariants(gj);
    let ctx = Ctx {
        g: gj,
        inv,
        p: gj.codim(),
        s: inv.s,
        k: 1.0 - inv.s / 2.0,
    };
    CheckId::ALL.iter().map(|&id| (id, residual(&ctx, id))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub max_abs: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Aggregate of an invariant over the sample set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spread {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Spread {
    /// Min, max and mean of a nonempty sequence; NaN fields for an empty one.
    pub fn of(values: impl IntoIterator<Item = f64>) -> Spread {
        let (mut min, mut max, mut sum, mut n) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize);
        for v in values {
            min = min.min(v);
            max = max.max(v);
            sum += v;
            n += 1;
        }
        if n == 0 {
            return Spread { min: f64::NAN, max: f64::NAN, mean: f64::NAN };
        }
        Spread { min, max, mean: sum / n as f64 }
    }
}

/// Per-invariant spreads over a set of points.
pub fn invariant_spreads(rows: &[InvariantReport]) -> BTreeMap<String, Spread> {
    let Some(first) = rows.first() else {
        return BTreeMap::new();
    };
    first
        .fields()
        .iter()
        .enumerate()
        .map(|(k, (name, _))| (name.to_string(), Spread::of(rows.iter().map(|r| r.fields()[k].1))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub precision: Precision,
    pub checks: Vec<CheckResult>,
    pub invariants: BTreeMap<String, Spread>,
    pub pass: bool,
}

impl ResidualReport {
    pub fn get(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub precision: Precision,
}

/// Residuals and invariants at the sample points, in sample order.
pub fn evaluate_samples(
    imm: &HarmonicImmersion,
    samples: usize,
    seed: u64,
    precision: Precision,
) -> Result<Vec<(InvariantReport, BTreeMap<CheckId, f64>)>> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    sample_points(samples, seed)
        .par_iter()
        .map(|p| {
            let gj = geometry_jet_with(imm, p, precision)?;
            Ok((invariants(&gj), pointwise_residuals(&gj)))
        })
        .collect()
}

pub fn check_suite_with(imm: &HarmonicImmersion, cfg: &SuiteConfig) -> Result<ResidualReport> {
    if !(cfg.tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", cfg.tolerance)));
    }
    let rows = evaluate_samples(imm, cfg.samples, cfg.seed, cfg.precision)?;
    let checks: Vec<CheckResult> = CheckId::ALL
        .iter()
        .map(|&id| {
            let max_abs = rows.iter().fold(0.0f64, |m, (_, r)| {
                let v = r[&id];
                if v.is_nan() || m.is_nan() {
                    f64::NAN
                } else {
                    m.max(v)
                }
            });
            let tolerance = id.tolerance(cfg.tolerance);
            CheckResult {
                id,
                max_abs,
                tolerance,
                pass: max_abs < tolerance,
            }
        })
        .collect();

    let inv_rows: Vec<InvariantReport> = rows.iter().map(|(inv, _)| *inv).collect();
    let invariants = invariant_spreads(&inv_rows);

    let pass = checks.iter().all(|c| c.pass);
    Ok(ResidualReport {
        degree: imm.degree(),
        samples: cfg.samples,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        precision: cfg.precision,
        checks,
        invariants,
        pass,
    })
}

/// Runs the whole catalog over `n_samples` seeded points in double precision.
pub fn check_suite(imm: &HarmonicImmersion, n_samples: usize, seed: u64, tol: f64) -> Result<ResidualReport> {
    check_suite_with(
        imm,
        &SuiteConfig {
            samples: n_samples,
            seed,
            tolerance: tol,
            precision: Precision::Double,
        },
    )
}

/// The residual catalog as JSON: name, identity, derivative order and the
/// tolerance multiplier.
pub fn catalog_json(base_tolerance: f64) -> serde_json::Value {
    serde_json::Value::Array(
        CheckId::ALL
            .iter()
            .map(|&id| {
                serde_json::json!({
                    "name": id.name(),
                    "identity": id.formula(),
                    "derivative_order": id.derivative_order(),
                    "tolerance": id.tolerance(base_tolerance),
                })
            })
            .collect(),
    )
}
