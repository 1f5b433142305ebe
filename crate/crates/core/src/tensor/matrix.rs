//! Infinite matrices `σ(j, k)` inducing linear operators `(L_σ f)_j = Σ_k σ(j, k) f_k`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::lattice::{bracket_pow, euclid, euclid_diff, AxisBox, Coords};

type MatrixFn = dyn Fn(&[i64], &[i64]) -> Complex64 + Send + Sync;

#[derive(Clone)]
pub enum MatrixKind {
    /// `scale · 1_{j = k}`.
    Identity(Complex64),
    /// `scale · 1_{j = k + offset}`.
    Shift {
        offset: Coords,
        scale: Complex64,
    },
    /// Values on the cube `|j|_∞, |k|_∞ <= radius`, row-major in `(j, k)`.
    Dense {
        radius: i64,
        values: Vec<Complex64>,
    },
    /// `⟨|j| + |k|⟩^ω ⟨|j - k|⟩^{-M}`, cut to `|j - k|_∞ <= band`.
    DecayKernel {
        omega: f64,
        decay: f64,
        band: i64,
    },
    Functional(Arc<MatrixFn>),
}

/// A matrix with declared order `ω` and off-diagonal decay `M`.
#[derive(Clone)]
pub struct Matrix {
    d: usize,
    kind: MatrixKind,
    order: f64,
    decay: f64,
    cube: Option<i64>,
    band: Option<i64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("d", &self.d)
            .field("order", &self.order)
            .field("decay", &self.decay)
            .field("cube", &self.cube)
            .field("band", &self.band)
            .finish()
    }
}

pub(crate) fn cube_index(d: usize, radius: i64, pts: &[&[i64]]) -> Option<usize> {
    let side = 2 * radius + 1;
    let mut idx = 0usize;
    for p in pts {
        debug_assert_eq!(p.len(), d);
        for &c in p.iter() {
            if c.abs() > radius {
                return None;
            }
            idx = idx * side as usize + (c + radius) as usize;
        }
    }
    Some(idx)
}

impl Matrix {
    pub fn identity(d: usize) -> Self {
        Self::scaled_identity(d, Complex64::new(1.0, 0.0))
    }

    pub fn scaled_identity(d: usize, scale: Complex64) -> Self {
        Matrix {
            d,
            kind: MatrixKind::Identity(scale),
            order: 0.0,
            decay: f64::INFINITY,
            cube: None,
            band: Some(0),
        }
    }

    /// `1_{j = k + offset}`.
    pub fn shift(offset: &[i64]) -> Self {
        let band = offset.iter().map(|v| v.abs()).max().unwrap_or(0);
        Matrix {
            d: offset.len(),
            kind: MatrixKind::Shift {
                offset: Coords::from_slice(offset),
                scale: Complex64::new(1.0, 0.0),
            },
            order: 0.0,
            decay: f64::INFINITY,
            cube: None,
            band: Some(band),
        }
    }

    /// Dense matrix on the cube of radius `radius`; the bandwidth is read off the nonzeros.
    pub fn dense(d: usize, radius: i64, values: Vec<Complex64>) -> Self {
        let side = (2 * radius + 1) as usize;
        assert_eq!(values.len(), side.pow(2 * d as u32), "dense matrix size");
        let cube = AxisBox::cube(d, radius);
        let pts: Vec<Coords> = cube.points().collect();
        let mut band = 0;
        for (a, j) in pts.iter().enumerate() {
            for (b, k) in pts.iter().enumerate() {
                if values[a * pts.len() + b] != Complex64::new(0.0, 0.0) {
                    let w = j.iter().zip(k).map(|(x, y)| (x - y).abs()).max().unwrap_or(0);
                    band = band.max(w);
                }
            }
        }
        Matrix {
            d,
            kind: MatrixKind::Dense { radius, values },
            order: 0.0,
            decay: f64::INFINITY,
            cube: Some(radius),
            band: Some(band),
        }
    }

    pub fn dense_from_fn(d: usize, radius: i64, mut f: impl FnMut(&[i64], &[i64]) -> Complex64) -> Self {
        let pts: Vec<Coords> = AxisBox::cube(d, radius).points().collect();
        let mut values = Vec::with_capacity(pts.len() * pts.len());
        for j in &pts {
            for k in &pts {
                values.push(f(j, k));
            }
        }
        Self::dense(d, radius, values)
    }

    pub fn decay_kernel(d: usize, omega: f64, decay: f64, band: i64) -> Self {
        Matrix {
            d,
            kind: MatrixKind::DecayKernel { omega, decay, band },
            order: omega,
            decay,
            cube: None,
            band: Some(band),
        }
    }

    pub fn functional(d: usize, f: impl Fn(&[i64], &[i64]) -> Complex64 + Send + Sync + 'static) -> Self {
        Matrix {
            d,
            kind: MatrixKind::Functional(Arc::new(f)),
            order: 0.0,
            decay: f64::INFINITY,
            cube: None,
            band: None,
        }
    }

    /// Declares the order `ω` and decay `M` of the linear condition.
    pub fn with_order_and_decay(mut self, order: f64, decay: f64) -> Self {
        self.order = order;
        self.decay = decay;
        self
    }

    /// Declares a bandwidth `|j - k|_∞ <= band` for functional matrices.
    pub fn with_band(mut self, band: i64) -> Self {
        self.band = Some(self.band.map_or(band, |b| b.min(band)));
        self
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn cube(&self) -> Option<i64> {
        self.cube
    }

    pub fn band(&self) -> Option<i64> {
        self.band
    }

    pub fn kind(&self) -> &MatrixKind {
        &self.kind
    }

    pub fn evaluate(&self, j: &[i64], k: &[i64]) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        match &self.kind {
            MatrixKind::Identity(c) => {
                if j == k {
                    *c
                } else {
                    zero
                }
            }
            MatrixKind::Shift { offset, scale } => {
                if j.iter().zip(k).zip(offset).all(|((a, b), o)| *a == b + o) {
                    *scale
                } else {
                    zero
                }
            }
            MatrixKind::Dense { radius, values } => match cube_index(self.d, *radius, &[j, k]) {
                Some(i) => values[i],
                None => zero,
            },
            MatrixKind::DecayKernel { omega, decay, band } => {
                let w = j.iter().zip(k).map(|(x, y)| (x - y).abs()).max().unwrap_or(0);
                if w > *band {
                    return zero;
                }
                Complex64::new(
                    bracket_pow(euclid(j) + euclid(k), *omega) * bracket_pow(euclid_diff(j, k), -decay),
                    0.0,
                )
            }
            MatrixKind::Functional(f) => f(j, k),
        }
    }
}

pub(crate) use cube_index as dense_index;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_shift() {
        let id = Matrix::identity(1);
        assert_eq!(id.evaluate(&[2], &[2]).re, 1.0);
        assert_eq!(id.evaluate(&[2], &[1]).re, 0.0);
        let s = Matrix::shift(&[1]);
        assert_eq!(s.evaluate(&[3], &[2]).re, 1.0);
        assert_eq!(s.evaluate(&[2], &[3]).re, 0.0);
        assert_eq!(s.band(), Some(1));
    }

    #[test]
    fn dense_band_is_detected() {
        let m = Matrix::dense_from_fn(1, 3, |j, k| {
            if (j[0] - k[0]).abs() <= 1 {
                Complex64::new((j[0] * 10 + k[0]) as f64, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        assert_eq!(m.band(), Some(1));
        assert_eq!(m.evaluate(&[2], &[3]).re, 23.0);
        assert_eq!(m.evaluate(&[4], &[4]).re, 0.0);
    }
}
