use serde::{Deserialize, Serialize};

/// Normal-valued tensor `t^α_{i₁…i_r}` in an orthonormal adapted frame.
///
/// Tangent indices take values in `{0, 1}`; the index tuple is packed into a
/// bit pattern with `i₁` as the lowest bit. Storage is
/// `data[α · 2^r + bits]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameTensor {
    rank: usize,
    codim: usize,
    data: Vec<f64>,
}

#[inline]
pub(crate) fn pack(idx: &[usize]) -> usize {
    idx.iter()
        .enumerate()
        .fold(0, |acc, (q, &i)| acc | ((i & 1) << q))
}

impl FrameTensor {
    pub fn zeros(rank: usize, codim: usize) -> Self {
        Self {
            rank,
            codim,
            data: vec![0.0; codim << rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn raw(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, alpha: usize, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.rank);
        self.data[(alpha << self.rank) + pack(idx)]
    }

    #[inline]
    pub(crate) fn get_bits(&self, alpha: usize, bits: usize) -> f64 {
        self.data[(alpha << self.rank) + bits]
    }

    #[inline]
    pub fn set(&mut self, alpha: usize, idx: &[usize], value: f64) {
        let k = (alpha << self.rank) + pack(idx);
        self.data[k] = value;
    }

    #[inline]
    pub(crate) fn set_bits(&mut self, alpha: usize, bits: usize, value: f64) {
        self.data[(alpha << self.rank) + bits] = value;
    }

    /// The codimension vector `(t^α_{idx})_α`.
    pub fn vector(&self, idx: &[usize]) -> Vec<f64> {
        let bits = pack(idx);
        (0..self.codim).map(|a| self.get_bits(a, bits)).collect()
    }

    /// `Σ (t^α_{i…})²`.
    pub fn norm_sq(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc + x * x)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Averages each entry with its `(i₁, i₂)`-swapped partner.
    pub fn symmetrize_leading_pair(&mut self) {
        if self.rank < 2 {
            return;
        }
        for alpha in 0..self.codim {
            for bits in 0..(1usize << self.rank) {
                let (b0, b1) = (bits & 1, (bits >> 1) & 1);
                if b0 == 1 && b1 == 0 {
                    let other = (bits & !3) | 2;
                    let avg = 0.5 * (self.get_bits(alpha, bits) + self.get_bits(alpha, other));
                    self.set_bits(alpha, bits, avg);
                    self.set_bits(alpha, other, avg);
                }
            }
        }
    }

    /// Components in the rotated frame `e'_i = Σ_j rot[i][j] e_j`,
    /// `ν'_α = Σ_β q[α][β] ν_β`.
    pub fn transformed(&self, rot: [[f64; 2]; 2], q: &[Vec<f64>]) -> FrameTensor {
        let r = self.rank;
        let n = 1usize << r;
        // normal index first
        let mut cur = FrameTensor::zeros(r, self.codim);
        for a in 0..self.codim {
            for bits in 0..n {
                let v: f64 = (0..self.codim)
                    .map(|b| q[a][b] * self.get_bits(b, bits))
                    .sum();
                cur.set_bits(a, bits, v);
            }
        }
        // then each tangent slot
        for slot in 0..r {
            let mut next = FrameTensor::zeros(r, self.codim);
            for a in 0..self.codim {
                for bits in 0..n {
                    let i = (bits >> slot) & 1;
                    let base = bits & !(1 << slot);
                    let v = rot[i][0] * cur.get_bits(a, base)
                        + rot[i][1] * cur.get_bits(a, base | (1 << slot));
                    next.set_bits(a, bits, v);
                }
            }
            cur = next;
        }
        cur
    }
}

/// Iterates all index tuples of the given rank in packed order.
pub(crate) fn all_indices(rank: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..(1usize << rank)).map(move |bits| (0..rank).map(|q| (bits >> q) & 1).collect())
}
