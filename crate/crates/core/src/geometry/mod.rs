//! Adapted frames, the second fundamental form and its covariant derivatives
//! up to third order, and scalar calculus in the induced metric.

mod invariants;
mod pipeline;
mod tensor;

pub use invariants::{invariants, InvariantReport};
pub use pipeline::MIN_METRIC_DET;
pub use tensor::FrameTensor;

pub(crate) use tensor::all_indices;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::immersion::{AmbientPoly, ChartPoint, HarmonicImmersion};
use crate::jet::{dot, Axis, Jet, MAX_ORDER};
use crate::real::{DoubleDouble, Real};

use pipeline::Surface;

/// Working precision of the jet pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(format!("unknown precision `{other}` (expected double or extended)")),
        }
    }
}

/// Adapted orthonormal frame and connection data at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameData {
    pub point: ChartPoint,
    pub position: Vec<f64>,
    pub tangent: [Vec<f64>; 2],
    pub normal: Vec<Vec<f64>>,
    /// Coordinate metric `g_ab`.
    pub metric: [[f64; 2]; 2],
    /// `christoffel[k][i][j] = Γ^k_ij` in chart coordinates.
    pub christoffel: [[[f64; 2]; 2]; 2],
    /// `normal_connection[β][α][c] = ω_{βα}(∂_c) = ⟨∂_c ν_β, ν_α⟩`.
    pub normal_connection: Vec<Vec<[f64; 2]>>,
    /// `ω_{12}(∂_c) = ⟨∂_c e₁, e₂⟩`.
    pub tangent_connection: [f64; 2],
    /// `e_i = Σ_a frame_coeffs[i][a] ∂_a F`.
    pub frame_coeffs: [[f64; 2]; 2],
    /// Gaussian curvature computed from the Christoffel symbols.
    pub gaussian_curvature: f64,
}

impl FrameData {
    pub fn metric_det(&self) -> f64 {
        self.metric[0][0] * self.metric[1][1] - self.metric[0][1] * self.metric[1][0]
    }

    pub fn codimension(&self) -> usize {
        self.normal.len()
    }

    /// Gram matrix of `(F, e₁, e₂, ν₁, …)`.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let mut all: Vec<&Vec<f64>> = vec![&self.position, &self.tangent[0], &self.tangent[1]];
        all.extend(self.normal.iter());
        all.iter()
            .map(|x| {
                all.iter()
                    .map(|y| x.iter().zip(y.iter()).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect()
    }
}

/// Value, frame gradient and frame Hessian of a scalar field at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScalarDerivs {
    pub value: f64,
    /// `f_i = e_i(f)`
    pub grad: [f64; 2],
    /// Covariant Hessian `f_ij`.
    pub hess: [[f64; 2]; 2],
}

impl ScalarDerivs {
    pub fn grad_norm_sq(&self) -> f64 {
        self.grad[0] * self.grad[0] + self.grad[1] * self.grad[1]
    }

    pub fn hess_norm_sq(&self) -> f64 {
        self.hess.iter().flatten().map(|x| x * x).sum()
    }

    pub fn laplacian(&self) -> f64 {
        self.hess[0][0] + self.hess[1][1]
    }

    /// Derivatives in the frame `e'_i = Σ_j rot[i][j] e_j`.
    pub fn rotated(&self, rot: [[f64; 2]; 2]) -> Self {
        let mut out = *self;
        for i in 0..2 {
            out.grad[i] = rot[i][0] * self.grad[0] + rot[i][1] * self.grad[1];
            for j in 0..2 {
                let mut acc = 0.0;
                for a in 0..2 {
                    for b in 0..2 {
                        acc += rot[i][a] * rot[j][b] * self.hess[a][b];
                    }
                }
                out.hess[i][j] = acc;
            }
        }
        out
    }
}

/// Extrinsic geometry at one point: `h^α_{ij}` and its covariant
/// derivatives `h^α_{ijk}`, `h^α_{ijkl}`, `h^α_{ijklm}` in the adapted frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryJet {
    pub frame: FrameData,
    pub h2: FrameTensor,
    pub h3: FrameTensor,
    pub h4: FrameTensor,
    pub h5: FrameTensor,
    /// The squared norm `S = |h|²` as a field.
    pub s_field: ScalarDerivs,
    /// `B₁ = |∇h|²` as a field.
    pub b1_field: ScalarDerivs,
}

impl GeometryJet {
    pub fn codim(&self) -> usize {
        self.h2.codim()
    }

    /// `a = (h^α_11)`
    pub fn a(&self) -> Vec<f64> {
        self.h2.vector(&[0, 0])
    }

    /// `b = (h^α_12)`
    pub fn b(&self) -> Vec<f64> {
        self.h2.vector(&[0, 1])
    }

    /// `a_i = (h^α_11i)`, with `i` zero-based.
    pub fn a_i(&self, i: usize) -> Vec<f64> {
        self.h3.vector(&[0, 0, i])
    }

    /// `a_ij = (h^α_11ij)`
    pub fn a_ij(&self, i: usize, j: usize) -> Vec<f64> {
        self.h4.vector(&[0, 0, i, j])
    }

    /// `a_ijk = (h^α_11ijk)`
    pub fn a_ijk(&self, i: usize, j: usize, k: usize) -> Vec<f64> {
        self.h5.vector(&[0, 0, i, j, k])
    }

    /// The same geometry expressed in the rotated tangent frame
    /// `e'_i = Σ_j rot(θ)[i][j] e_j` and normal frame `ν'_α = Σ_β q[α][β] ν_β`
    /// (`q` orthogonal).
    pub fn reframed(&self, theta: f64, q: &[Vec<f64>]) -> GeometryJet {
        let (c, s) = (theta.cos(), theta.sin());
        let rot = [[c, s], [-s, c]];
        let mix = |vs: &[Vec<f64>], m: &[Vec<f64>]| -> Vec<Vec<f64>> {
            m.iter()
                .map(|row| {
                    let mut out = vec![0.0; vs.first().map_or(0, Vec::len)];
                    for (w, v) in row.iter().zip(vs) {
                        for (o, x) in out.iter_mut().zip(v) {
                            *o += w * x;
                        }
                    }
                    out
                })
                .collect()
        };
        let mut frame = self.frame.clone();
        let rot_rows: Vec<Vec<f64>> = rot.iter().map(|r| r.to_vec()).collect();
        let t = mix(&self.frame.tangent, &rot_rows);
        frame.tangent = [t[0].clone(), t[1].clone()];
        frame.normal = mix(&self.frame.normal, q);
        for i in 0..2 {
            for a in 0..2 {
                frame.frame_coeffs[i][a] =
                    rot[i][0] * self.frame.frame_coeffs[0][a] + rot[i][1] * self.frame.frame_coeffs[1][a];
            }
        }
        let p = self.codim();
        frame.normal_connection = (0..p)
            .map(|b| {
                (0..p)
                    .map(|a| {
                        let mut w = [0.0; 2];
                        for (cc, slot) in w.iter_mut().enumerate() {
                            for x in 0..p {
                                for y in 0..p {
                                    *slot += q[b][x] * q[a][y] * self.frame.normal_connection[x][y][cc];
                                }
                            }
                        }
                        w
                    })
                    .collect()
            })
            .collect();
        GeometryJet {
            frame,
            h2: self.h2.transformed(rot, q),
            h3: self.h3.transformed(rot, q),
            h4: self.h4.transformed(rot, q),
            h5: self.h5.transformed(rot, q),
            s_field: self.s_field.rotated(rot),
            b1_field: self.b1_field.rotated(rot),
        }
    }
}

fn scalar_derivs<T: Real>(surface: &Surface<T>, f: &Jet<T>) -> ScalarDerivs {
    let mut out = ScalarDerivs {
        value: f.value().to_f64(),
        ..Default::default()
    };
    if f.order() == 0 {
        return out;
    }
    let e = &surface.frame_coeffs;
    let ev = |i: usize, a: usize| e[i][a].value();
    let coord_grad = [f.partial(1, 0), f.partial(0, 1)];
    for i in 0..2 {
        out.grad[i] = (ev(i, 0) * coord_grad[0] + ev(i, 1) * coord_grad[1]).to_f64();
    }
    if f.order() < 2 {
        return out;
    }
    let mut coord_hess = [[T::zero(); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let mut v = f.partial(usize::from(a == 0) + usize::from(b == 0), usize::from(a == 1) + usize::from(b == 1));
            for (c, g) in coord_grad.iter().enumerate() {
                v -= surface.christoffel[c][a][b].value() * *g;
            }
            coord_hess[a][b] = v;
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = T::zero();
            for a in 0..2 {
                for b in 0..2 {
                    acc += ev(i, a) * ev(j, b) * coord_hess[a][b];
                }
            }
            out.hess[i][j] = acc.to_f64();
        }
    }
    out
}

fn to_f64_vec<T: Real>(v: &[Jet<T>]) -> Vec<f64> {
    v.iter().map(|x| x.value().to_f64()).collect()
}

fn frame_data<T: Real>(surface: &Surface<T>, p: &ChartPoint) -> FrameData {
    let christoffel = [0, 1].map(|k| [0, 1].map(|i| [0, 1].map(|j| surface.christoffel[k][i][j].value().to_f64())));
    let d_normal: Vec<[Vec<Jet<T>>; 2]> = surface
        .normal
        .iter()
        .map(|n| Axis::BOTH.map(|a| n.iter().map(|x| x.derivative(a)).collect()))
        .collect();
    let normal_connection = d_normal
        .iter()
        .map(|dn| {
            surface
                .normal
                .iter()
                .map(|n| [0, 1].map(|c| dot(&dn[c], n).value().to_f64()))
                .collect()
        })
        .collect();
    let tangent_connection = [0, 1].map(|c| {
        let de: Vec<Jet<T>> = surface.tangent[0].iter().map(|x| x.derivative(Axis::from_index(c))).collect();
        dot(&de, &surface.tangent[1]).value().to_f64()
    });
    let gaussian_curvature = if surface.christoffel[0][0][0].order() >= 1 {
        surface.intrinsic_curvature().to_f64()
    } else {
        f64::NAN
    };
    FrameData {
        point: *p,
        position: to_f64_vec(&surface.position),
        tangent: [to_f64_vec(&surface.tangent[0]), to_f64_vec(&surface.tangent[1])],
        normal: surface.normal.iter().map(|n| to_f64_vec(n)).collect(),
        metric: [0, 1].map(|i| [0, 1].map(|j| surface.metric[i][j].value().to_f64())),
        christoffel,
        normal_connection,
        tangent_connection,
        frame_coeffs: [0, 1].map(|i| [0, 1].map(|a| surface.frame_coeffs[i][a].value().to_f64())),
        gaussian_curvature,
    }
}

/// Deterministic adapted frame with metric, Christoffel symbols, connection
/// coefficients and intrinsic curvature.
pub fn adapted_frame(imm: &HarmonicImmersion, p: &ChartPoint) -> Result<FrameData> {
    let surface = Surface::<f64>::new(imm, p, 3)?;
    Ok(frame_data(&surface, p))
}

/// `sqrt(det g)` at a chart point (first derivatives only).
pub fn area_element(imm: &HarmonicImmersion, p: &ChartPoint) -> Result<f64> {
    let f = imm.jet::<f64>(p, 1)?;
    let du: Vec<f64> = f.iter().map(|x| x.partial(1, 0)).collect();
    let dv: Vec<f64> = f.iter().map(|x| x.partial(0, 1)).collect();
    let d = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let det = d(&du, &du) * d(&dv, &dv) - d(&du, &dv).powi(2);
    if !(det >= MIN_METRIC_DET) {
        return Err(crate::error::Error::DegenerateMetric(det));
    }
    Ok(det.sqrt())
}

fn squared_norm_in_frame<T: Real>(surface: &Surface<T>, framed: &pipeline::CoordTensor<T>) -> Jet<T> {
    let order = framed.entries[0][0].order();
    let mut acc = Jet::zero(order);
    for entry in &framed.entries {
        for nu in &surface.normal {
            let c = dot(entry, nu);
            acc += c * c;
        }
    }
    acc
}

fn build_geometry<T: Real>(imm: &HarmonicImmersion, p: &ChartPoint) -> Result<GeometryJet> {
    let surface = Surface::<T>::new(imm, p, MAX_ORDER)?;
    let t2 = surface.second_fundamental_form();
    let t3 = surface.covariant_derivative(&t2);
    let t4 = surface.covariant_derivative(&t3);
    let t5 = surface.covariant_derivative(&t4);

    let framed = [t2, t3, t4, t5].map(|t| surface.to_frame_slots(&t));
    let [mut h2, mut h3, mut h4, mut h5] = [0, 1, 2, 3].map(|k| surface.frame_components(&framed[k]));
    for h in [&mut h2, &mut h3, &mut h4, &mut h5] {
        h.symmetrize_leading_pair();
    }

    let s_jet = squared_norm_in_frame(&surface, &framed[0]);
    let b1_jet = squared_norm_in_frame(&surface, &framed[1]);

    Ok(GeometryJet {
        frame: frame_data(&surface, p),
        h2,
        h3,
        h4,
        h5,
        s_field: scalar_derivs(&surface, &s_jet),
        b1_field: scalar_derivs(&surface, &b1_jet),
    })
}

/// Full extrinsic geometry at `p` in double precision.
pub fn geometry_jet(imm: &HarmonicImmersion, p: &ChartPoint) -> Result<GeometryJet> {
    build_geometry::<f64>(imm, p)
}

pub fn geometry_jet_with(imm: &HarmonicImmersion, p: &ChartPoint, precision: Precision) -> Result<GeometryJet> {
    match precision {
        Precision::Double => build_geometry::<f64>(imm, p),
        Precision::Extended => build_geometry::<DoubleDouble>(imm, p),
    }
}

/// `h^α_{ijk}` computed with the moving-frame recursion
/// `h_{ijk} ω_k = dh_{ij} + h_{mj} ω_{mi} + h_{im} ω_{mj} + h^β_{ij} ω_{βα}`
/// from the frame fields and their connection forms, independently of the
/// coordinate covariant derivative used by [`geometry_jet`].
pub fn moving_frame_h3(imm: &HarmonicImmersion, p: &ChartPoint) -> Result<FrameTensor> {
    let surface = Surface::<f64>::new(imm, p, 4)?;
    let framed = surface.to_frame_slots(&surface.second_fundamental_form());
    let codim = surface.normal.len();
    // component fields h^α_ij as jets
    let h: Vec<Vec<Jet<f64>>> = (0..codim)
        .map(|alpha| framed.entries.iter().map(|e| dot(e, &surface.normal[alpha])).collect())
        .collect();
    let e = |k: usize, a: usize| surface.frame_coeffs[k][a].value();
    let along = |k: usize, f: &dyn Fn(Axis) -> f64| e(k, 0) * f(Axis::U) + e(k, 1) * f(Axis::V);

    let d_tangent: Vec<[Vec<Jet<f64>>; 2]> = surface
        .tangent
        .iter()
        .map(|t| Axis::BOTH.map(|a| t.iter().map(|x| x.derivative(a)).collect()))
        .collect();
    let d_normal: Vec<[Vec<Jet<f64>>; 2]> = surface
        .normal
        .iter()
        .map(|n| Axis::BOTH.map(|a| n.iter().map(|x| x.derivative(a)).collect()))
        .collect();
    // ω_mi(e_k) = ⟨D_{e_k} e_m, e_i⟩, ω_βα(e_k) = ⟨D_{e_k} ν_β, ν_α⟩
    let omega_t = |m: usize, i: usize, k: usize| {
        along(k, &|a| dot(&d_tangent[m][a as usize], &surface.tangent[i]).value())
    };
    let omega_n = |b: usize, a: usize, k: usize| {
        along(k, &|ax| dot(&d_normal[b][ax as usize], &surface.normal[a]).value())
    };

    let hv = |alpha: usize, i: usize, j: usize| h[alpha][i | (j << 1)].value();
    let mut out = FrameTensor::zeros(3, codim);
    for alpha in 0..codim {
        for idx in all_indices(3) {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            let hij = &h[alpha][i | (j << 1)];
            let mut v = along(k, &|a| hij.derivative(a).value());
            for m in 0..2 {
                v += hv(alpha, m, j) * omega_t(m, i, k) + hv(alpha, i, m) * omega_t(m, j, k);
            }
            for beta in 0..codim {
                v += hv(beta, i, j) * omega_n(beta, alpha, k);
            }
            out.set(alpha, &idx, v);
        }
    }
    Ok(out)
}

/// A scalar field on the immersed surface.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarField {
    Constant(f64),
    /// Restriction of an ambient polynomial.
    Ambient(AmbientPoly),
    /// `S = |h|²`.
    SquaredNorm,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarCalculus {
    pub grad_norm_sq: f64,
    pub hess_norm_sq: f64,
    pub laplacian: f64,
}

impl From<ScalarDerivs> for ScalarCalculus {
    fn from(d: ScalarDerivs) -> Self {
        Self {
            grad_norm_sq: d.grad_norm_sq(),
            hess_norm_sq: d.hess_norm_sq(),
            laplacian: d.laplacian(),
        }
    }
}

/// Derivatives of a scalar field at a point, in the induced metric.
pub fn scalar_field_derivs(imm: &HarmonicImmersion, field: &ScalarField, p: &ChartPoint) -> Result<ScalarDerivs> {
    match field {
        ScalarField::SquaredNorm => Ok(geometry_jet(imm, p)?.s_field),
        ScalarField::Constant(c) => {
            let surface = Surface::<f64>::new(imm, p, 3)?;
            Ok(scalar_derivs(&surface, &Jet::constant(3, *c)))
        }
        ScalarField::Ambient(poly) => {
            let surface = Surface::<f64>::new(imm, p, 3)?;
            let f = poly.eval_jets(&surface.position)?;
            Ok(scalar_derivs(&surface, &f))
        }
    }
}

/// `(|∇f|², |Hess f|², Δf)` at `p`.
pub fn scalar_calculus(imm: &HarmonicImmersion, field: &ScalarField, p: &ChartPoint) -> Result<ScalarCalculus> {
    scalar_field_derivs(imm, field, p).map(ScalarCalculus::from)
}
