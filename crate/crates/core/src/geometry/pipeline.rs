//! Generic jet-level computation of the extrinsic geometry at a chart point.
//!
//! Covariant derivatives are taken on coordinate tensors with values in the
//! ambient space `ℝ^{N+1}`. For a normal-valued tensor `T_{a₁…a_r}` the
//! covariant derivative is
//!
//! ```text
//! (∇T)_{a₁…a_r c} = P⊥(∂_c T_{a₁…a_r}) − Σ_q Γ^d_{c a_q} T_{a₁…d…a_r}
//! ```
//!
//! where `P⊥` is the orthogonal projection onto the normal bundle of the
//! surface inside `S^N`. The projection realizes the normal connection without
//! choosing a normal frame; frames only enter when components are read off at
//! the expansion point.

use crate::error::{Error, Result};
use crate::immersion::{ChartPoint, HarmonicImmersion};
use crate::jet::{dot, Axis, Jet};
use crate::real::Real;

use super::tensor::FrameTensor;

pub(crate) type AmbientJet<T> = Vec<Jet<T>>;

/// Smallest admissible `det g` at the expansion point.
pub const MIN_METRIC_DET: f64 = 1e-12;

/// Coordinate tensor with ambient-vector entries, packed like [`FrameTensor`].
#[derive(Clone, Debug)]
pub(crate) struct CoordTensor<T> {
    pub rank: usize,
    pub entries: Vec<AmbientJet<T>>,
}

fn axpy<T: Real>(y: &mut AmbientJet<T>, a: Jet<T>, x: &AmbientJet<T>) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = *yi + a * *xi;
    }
}

fn scaled<T: Real>(a: Jet<T>, x: &AmbientJet<T>) -> AmbientJet<T> {
    x.iter().map(|xi| a * *xi).collect()
}

/// Jet fields on a chart neighbourhood of one point.
pub(crate) struct Surface<T> {
    pub position: AmbientJet<T>,
    pub metric: [[Jet<T>; 2]; 2],
    pub det: Jet<T>,
    /// `christoffel[k][i][j] = Γ^k_{ij}`
    pub christoffel: [[[Jet<T>; 2]; 2]; 2],
    /// Orthonormal tangent frame `e₁, e₂` from Gram–Schmidt on `(∂_u F, ∂_v F)`.
    pub tangent: [AmbientJet<T>; 2],
    /// `e_i = Σ_a coeffs[i][a] ∂_a F`.
    pub frame_coeffs: [[Jet<T>; 2]; 2],
    pub normal: Vec<AmbientJet<T>>,
    pub ddf: [[AmbientJet<T>; 2]; 2],
}

impl<T: Real> Surface<T> {
    pub fn new(imm: &HarmonicImmersion, p: &ChartPoint, order: usize) -> Result<Self> {
        let position = imm.jet::<T>(p, order)?;
        let df: [AmbientJet<T>; 2] = Axis::BOTH.map(|a| position.iter().map(|x| x.derivative(a)).collect());
        let ddf: [[AmbientJet<T>; 2]; 2] = [0, 1].map(|i| {
            Axis::BOTH.map(|b| df[i].iter().map(|x| x.derivative(b)).collect())
        });

        let metric = [0, 1].map(|i| [0, 1].map(|j| dot(&df[i], &df[j])));
        let det = metric[0][0] * metric[1][1] - metric[0][1] * metric[1][0];
        let det0 = det.value().to_f64();
        if !(det0 >= MIN_METRIC_DET) {
            return Err(Error::DegenerateMetric(det0));
        }
        let inv_det = det.recip();
        let inverse = [
            [metric[1][1] * inv_det, -(metric[0][1] * inv_det)],
            [-(metric[1][0] * inv_det), metric[0][0] * inv_det],
        ];

        // Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il − ∂_l g_ij)
        let christoffel = if order >= 2 {
            let dg: [[[Jet<T>; 2]; 2]; 2] =
                Axis::BOTH.map(|c| [0, 1].map(|i| [0, 1].map(|j| metric[i][j].derivative(c))));
            let half = T::from_f64(0.5);
            [0, 1].map(|k| {
                [0, 1].map(|i| {
                    [0, 1].map(|j| {
                        let mut acc = Jet::zero(order - 2);
                        for l in 0..2 {
                            let first = dg[i][j][l] + dg[j][i][l] - dg[l][i][j];
                            acc += inverse[k][l] * first;
                        }
                        acc.scale(half)
                    })
                })
            })
        } else {
            [[[Jet::zero(0); 2]; 2]; 2]
        };

        // Gram–Schmidt on (∂_u F, ∂_v F)
        let n1 = metric[0][0].sqrt();
        let inv_n1 = n1.recip();
        let e1 = scaled(inv_n1, &df[0]);
        let c = metric[0][1] * inv_n1;
        let n2 = (metric[1][1] - c * c).sqrt();
        let inv_n2 = n2.recip();
        let mut e2 = df[1].clone();
        axpy(&mut e2, -c, &e1);
        let e2 = scaled(inv_n2, &e2);
        let frame_coeffs = [
            [inv_n1, Jet::zero(order - 1)],
            [-(c * inv_n1 * inv_n2), inv_n2],
        ];

        let mut surface = Self {
            position,
            metric,
            det,
            christoffel,
            tangent: [e1, e2],
            frame_coeffs,
            normal: Vec::new(),
            ddf,
        };
        surface.normal = surface.build_normal_frame(imm.codimension());
        Ok(surface)
    }

    /// Projection onto the normal space of the surface inside the sphere.
    pub fn project_normal(&self, v: &AmbientJet<T>) -> AmbientJet<T> {
        let mut out = v.clone();
        for basis in [&self.position, &self.tangent[0], &self.tangent[1]] {
            let c = dot(v, basis);
            axpy(&mut out, -c, basis);
        }
        out
    }

    /// Gram–Schmidt on the ambient basis vectors projected into the normal
    /// space, picking at each step the candidate with the largest residual
    /// at the expansion point (lowest index on ties).
    fn build_normal_frame(&self, codim: usize) -> Vec<AmbientJet<T>> {
        let dim = self.position.len();
        let order = self.tangent[0][0].order();
        let mut chosen: Vec<AmbientJet<T>> = Vec::with_capacity(codim);
        let mut used = vec![false; dim];
        for _ in 0..codim {
            let residual = |k: usize| -> AmbientJet<T> {
                let mut v: AmbientJet<T> = (0..dim)
                    .map(|i| Jet::constant(order, if i == k { T::one() } else { T::zero() }))
                    .collect();
                v = self.project_normal(&v);
                for n in &chosen {
                    let c = dot(&v, n);
                    axpy(&mut v, -c, n);
                }
                v
            };
            let mut best: Option<(usize, f64)> = None;
            for k in (0..dim).filter(|&k| !used[k]) {
                let v = residual(k);
                let norm: f64 = v.iter().map(|x| x.value().to_f64().powi(2)).sum();
                if best.is_none_or(|(_, b)| norm > b) {
                    best = Some((k, norm));
                }
            }
            let Some((k, _)) = best else { break };
            used[k] = true;
            let v = residual(k);
            let inv = dot(&v, &v).sqrt().recip();
            chosen.push(scaled(inv, &v));
        }
        chosen
    }

    /// Second fundamental form `II_ab = P⊥(∂_a ∂_b F)`.
    pub fn second_fundamental_form(&self) -> CoordTensor<T> {
        let mut entries = Vec::with_capacity(4);
        for bits in 0..4usize {
            let (a, b) = (bits & 1, (bits >> 1) & 1);
            entries.push(self.project_normal(&self.ddf[a][b]));
        }
        CoordTensor { rank: 2, entries }
    }

    pub fn covariant_derivative(&self, t: &CoordTensor<T>) -> CoordTensor<T> {
        let r = t.rank;
        let n = 1usize << r;
        let mut entries = Vec::with_capacity(2 * n);
        for c in 0..2 {
            let axis = Axis::from_index(c);
            for bits in 0..n {
                let d: AmbientJet<T> = t.entries[bits].iter().map(|x| x.derivative(axis)).collect();
                let mut out = self.project_normal(&d);
                for q in 0..r {
                    let aq = (bits >> q) & 1;
                    for dd in 0..2 {
                        let gamma = self.christoffel[dd][c][aq];
                        let other = (bits & !(1 << q)) | (dd << q);
                        axpy(&mut out, -gamma, &t.entries[other]);
                    }
                }
                entries.push(out);
            }
        }
        CoordTensor { rank: r + 1, entries }
    }

    /// Contracts every coordinate slot with the orthonormal frame
    /// coefficients, giving jets of the frame components `T(e_i, …)`.
    pub fn to_frame_slots(&self, t: &CoordTensor<T>) -> CoordTensor<T> {
        let mut cur = t.entries.clone();
        let n = cur.len();
        for slot in 0..t.rank {
            let mut next = Vec::with_capacity(n);
            for bits in 0..n {
                let i = (bits >> slot) & 1;
                let base = bits & !(1 << slot);
                let mut v = scaled(self.frame_coeffs[i][0], &cur[base]);
                axpy(&mut v, self.frame_coeffs[i][1], &cur[base | (1 << slot)]);
                next.push(v);
            }
            cur = next;
        }
        CoordTensor {
            rank: t.rank,
            entries: cur,
        }
    }

    /// Reads off `t^α_{i…} = ⟨ν_α, T(e_i, …)⟩` at the expansion point.
    pub fn frame_components(&self, framed: &CoordTensor<T>) -> FrameTensor {
        let codim = self.normal.len();
        let mut out = FrameTensor::zeros(framed.rank, codim);
        for (bits, entry) in framed.entries.iter().enumerate() {
            for (alpha, nu) in self.normal.iter().enumerate() {
                let mut acc = T::zero();
                for (x, y) in entry.iter().zip(nu) {
                    acc += x.value() * y.value();
                }
                out.set_bits(alpha, bits, acc.to_f64());
            }
        }
        out
    }

    /// Intrinsic Gaussian curvature at the expansion point from the
    /// Christoffel symbols and their first derivatives.
    pub fn intrinsic_curvature(&self) -> T {
        // R^l_{ijk} = ∂_j Γ^l_{ik} − ∂_k Γ^l_{ij} + Γ^l_{jm} Γ^m_{ik} − Γ^l_{km} Γ^m_{ij}
        // K = g_{0l} R^l_{1,0,1} / det g
        let g = &self.christoffel;
        let (i, j, k) = (1, 0, 1);
        let mut r = [T::zero(); 2];
        for l in 0..2 {
            let mut v = g[l][i][k].derivative(Axis::from_index(j)).value()
                - g[l][i][j].derivative(Axis::from_index(k)).value();
            for m in 0..2 {
                v += g[l][j][m].value() * g[m][i][k].value() - g[l][k][m].value() * g[m][i][j].value();
            }
            r[l] = v;
        }
        let num = self.metric[0][0].value() * r[0] + self.metric[0][1].value() * r[1];
        num / self.det.value()
    }
}
