//! Support metadata for lazy tensors.
//!
//! A hint is a conjunction of box-shaped constraints on `(j, k, ℓ)`. It is
//! always a superset of the true support: evaluation outside the hint is
//! exactly zero. Every constraint is a box in one index once the previous
//! indices are fixed, so scans enumerate `j`, then `k ∈ k_box(j)`, then
//! `ℓ ∈ l_box(j, k)`.

use serde::{Deserialize, Serialize};

use crate::lattice::AxisBox;

/// `‖cj·j + ck·k + cl·ℓ‖_∞ <= width` with coefficients in `{-1, +1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plane {
    pub cj: i64,
    pub ck: i64,
    pub cl: i64,
    pub width: i64,
}

impl Plane {
    /// The convolution plane `j = k + ℓ`, thickened by `width`.
    pub fn convolution(width: i64) -> Self {
        Plane {
            cj: 1,
            ck: -1,
            cl: -1,
            width,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportHint {
    /// `max(|j|_∞, |k|_∞, |ℓ|_∞) <= cube`.
    pub cube: Option<i64>,
    /// `|j - k|_∞ <= k_band`.
    pub k_band: Option<i64>,
    /// `|j - ℓ|_∞ <= l_band`.
    pub l_band: Option<i64>,
    pub plane: Option<Plane>,
}

impl SupportHint {
    pub fn everywhere() -> Self {
        Self::default()
    }

    pub fn cube(r: i64) -> Self {
        SupportHint {
            cube: Some(r),
            ..Self::default()
        }
    }

    /// `j = k = ℓ`.
    pub fn diagonal() -> Self {
        SupportHint {
            k_band: Some(0),
            l_band: Some(0),
            ..Self::default()
        }
    }

    pub fn plane(plane: Plane) -> Self {
        SupportHint {
            plane: Some(plane),
            ..Self::default()
        }
    }

    pub fn with_cube(mut self, r: i64) -> Self {
        self.cube = Some(self.cube.map_or(r, |c| c.min(r)));
        self
    }

    pub fn with_bands(mut self, k_band: Option<i64>, l_band: Option<i64>) -> Self {
        self.k_band = min_opt(self.k_band, k_band);
        self.l_band = min_opt(self.l_band, l_band);
        self
    }

    /// True when no constraint is present.
    pub fn is_everywhere(&self) -> bool {
        self == &Self::default()
    }

    pub fn contains(&self, j: &[i64], k: &[i64], l: &[i64]) -> bool {
        let sup = |a: &[i64]| a.iter().map(|x| x.abs()).max().unwrap_or(0);
        let sup_diff = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap_or(0);
        if let Some(c) = self.cube {
            if sup(j) > c || sup(k) > c || sup(l) > c {
                return false;
            }
        }
        if let Some(w) = self.k_band {
            if sup_diff(j, k) > w {
                return false;
            }
        }
        if let Some(w) = self.l_band {
            if sup_diff(j, l) > w {
                return false;
            }
        }
        if let Some(p) = self.plane {
            let off = (0..j.len())
                .map(|m| (p.cj * j[m] + p.ck * k[m] + p.cl * l[m]).abs())
                .max()
                .unwrap_or(0);
            if off > p.width {
                return false;
            }
        }
        true
    }

    /// Hint of `Θ(j + v, k + v, ℓ)` for every `|v|_∞ <= mag`.
    pub fn shift_slot2(&self, mag: i64) -> Self {
        SupportHint {
            cube: self.cube.map(|c| c + mag),
            k_band: self.k_band,
            l_band: self.l_band.map(|w| w + mag),
            plane: self.plane.map(|p| Plane {
                width: p.width + (p.cj + p.ck).abs() * mag,
                ..p
            }),
        }
    }

    /// Hint of `Θ(j + v, k, ℓ + v)` for every `|v|_∞ <= mag`.
    pub fn shift_slot3(&self, mag: i64) -> Self {
        SupportHint {
            cube: self.cube.map(|c| c + mag),
            k_band: self.k_band.map(|w| w + mag),
            l_band: self.l_band,
            plane: self.plane.map(|p| Plane {
                width: p.width + (p.cj + p.cl).abs() * mag,
                ..p
            }),
        }
    }

    /// Hint of `Θ(k, j, ℓ)`.
    pub fn transpose1(&self) -> Self {
        SupportHint {
            cube: self.cube,
            k_band: self.k_band,
            l_band: match (self.k_band, self.l_band) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
            plane: self.plane.map(|p| Plane {
                cj: p.ck,
                ck: p.cj,
                ..p
            }),
        }
    }

    /// Hint of `Θ(ℓ, k, j)`.
    pub fn transpose2(&self) -> Self {
        SupportHint {
            cube: self.cube,
            k_band: match (self.k_band, self.l_band) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
            l_band: self.l_band,
            plane: self.plane.map(|p| Plane {
                cj: p.cl,
                cl: p.cj,
                ..p
            }),
        }
    }

    /// Candidate `j` values inside the scan cube.
    pub fn j_box(&self, scan: &AxisBox) -> AxisBox {
        match self.cube {
            Some(c) => scan.intersect(&AxisBox::cube(scan.dim(), c)),
            None => scan.clone(),
        }
    }

    /// Candidate `k` values for a fixed `j`.
    pub fn k_box(&self, j: &[i64], scan: &AxisBox) -> AxisBox {
        let mut b = self.j_box(scan);
        if let Some(w) = self.k_band {
            b = b.intersect(&AxisBox::around(j, w));
        }
        b
    }

    /// Candidate `ℓ` values for fixed `j, k`.
    pub fn l_box(&self, j: &[i64], k: &[i64], scan: &AxisBox) -> AxisBox {
        let mut b = self.j_box(scan);
        if let Some(w) = self.l_band {
            b = b.intersect(&AxisBox::around(j, w));
        }
        if let Some(p) = self.plane {
            // cl ∈ {±1}, so cl·ℓ ∈ -(cj·j + ck·k) + [-w, w] solves for ℓ.
            let centre: Vec<i64> = (0..j.len()).map(|m| -p.cl * (p.cj * j[m] + p.ck * k[m])).collect();
            b = b.intersect(&AxisBox::around(&centre, p.width));
        }
        b
    }

    pub fn describe(&self) -> String {
        if self.is_everywhere() {
            return "everywhere".into();
        }
        let mut parts = Vec::new();
        if let Some(c) = self.cube {
            parts.push(format!("cube radius {c}"));
        }
        match (self.k_band, self.l_band) {
            (Some(0), Some(0)) => parts.push("diagonal j=k=l".into()),
            (k, l) => {
                if let Some(w) = k {
                    parts.push(format!("|j-k| <= {w}"));
                }
                if let Some(w) = l {
                    parts.push(format!("|j-l| <= {w}"));
                }
            }
        }
        if let Some(p) = self.plane {
            parts.push(format!("plane |{}j{:+}k{:+}l| <= {}", p.cj, p.ck, p.cl, p.width));
        }
        parts.join(", ")
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}
