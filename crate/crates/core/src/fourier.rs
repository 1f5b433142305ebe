//! Band-limited functions on the torus sampled on uniform grids, and the
//! identity between Fourier-side tensors and physical-side operators.
//!
//! Convention: `F̂(k) = n^{-d} Σ_m F(x_m) e^{-2πi k·x_m}` with `x_m = m/n`,
//! synthesis `F(x) = Σ_k F̂(k) e^{2πi k·x}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{check_dim, Result};
use crate::lattice::{
    bracket_pow, euclid, weighted_norm, AxisBox, Exponent, LatticePoint, MultiIndex, WeightParams, WeightedSequence,
};
use crate::operator::apply;
use crate::report::{Report, Verdict};
use crate::tensor::{ConvolutionMode, SymbolFunction, Tensor, TensorKind};
use crate::DboError;

/// Relative tolerance of [`bridge_check`].
pub const BRIDGE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusGrid {
    pub d: usize,
    pub n: usize,
}

impl TorusGrid {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(DboError::InvalidParameter("grid needs d >= 1 and n >= 1".into()));
        }
        Ok(TorusGrid { d, n })
    }

    /// Smallest power of two with `n >= 2K + 1`, resolving frequencies `|k|_∞ <= K`.
    pub fn for_band(d: usize, k: i64) -> Self {
        TorusGrid {
            d,
            n: (2 * k.max(0) as usize + 1).next_power_of_two(),
        }
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest band limit resolved without aliasing.
    pub fn max_band(&self) -> i64 {
        (self.n as i64 - 1) / 2
    }

    /// Node `x_m` for flat index `idx` (first axis slowest).
    pub fn node(&self, idx: usize) -> Vec<f64> {
        self.multi_index(idx)
            .into_iter()
            .map(|m| m as f64 / self.n as f64)
            .collect()
    }

    fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        let mut m = vec![0; self.d];
        for a in (0..self.d).rev() {
            m[a] = idx % self.n;
            idx /= self.n;
        }
        m
    }

    fn flat(&self, m: impl IntoIterator<Item = usize>) -> usize {
        m.into_iter().fold(0, |acc, v| acc * self.n + v)
    }

    fn require(&self, needed: i64) -> Result<()> {
        if (self.n as i64) < needed {
            Err(DboError::GridTooSmall {
                required: needed as usize,
                actual: self.n,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusFunction {
    pub grid: TorusGrid,
    pub samples: Vec<Complex64>,
}

/// In-place unnormalized transform along every axis.
fn transform(grid: &TorusGrid, data: &mut [Complex64], dir: FftDirection) {
    let n = grid.n;
    let fft = FftPlanner::new().plan_fft(n, dir);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..grid.d {
        let stride = n.pow((grid.d - 1 - axis) as u32);
        for base in 0..grid.len() {
            if !(base / stride).is_multiple_of(n) {
                continue;
            }
            for (i, slot) in line.iter_mut().enumerate() {
                *slot = data[base + i * stride];
            }
            fft.process(&mut line);
            for (i, v) in line.iter().enumerate() {
                data[base + i * stride] = *v;
            }
        }
    }
}

impl TorusFunction {
    pub fn new(grid: TorusGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(DboError::InvalidParameter(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        Ok(TorusFunction { grid, samples })
    }

    pub fn from_fn(grid: TorusGrid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let samples = (0..grid.len()).map(|i| f(&grid.node(i))).collect();
        TorusFunction { grid, samples }
    }

    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(DboError::InvalidParameter("grids differ".into()));
        }
        Ok(TorusFunction {
            grid: self.grid,
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect(),
        })
    }

    /// `(n^{-d} Σ_m |F(x_m)|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.grid.len() as f64).sqrt()
    }
}

fn signed(m: usize, n: usize) -> i64 {
    if 2 * m < n {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

/// `F̂` restricted to `|k|_∞ <= K`.
pub fn to_fourier(f: &TorusFunction, k: i64) -> Result<WeightedSequence> {
    let grid = f.grid;
    if k < 0 {
        return Err(DboError::InvalidParameter("band limit must be >= 0".into()));
    }
    grid.require(2 * k + 1)?;
    let mut data = f.samples.clone();
    transform(&grid, &mut data, FftDirection::Forward);
    let scale = 1.0 / grid.len() as f64;
    let cube = AxisBox::cube(grid.d, k);
    let n = grid.n as i64;
    let entries: Vec<_> = cube
        .points()
        .map(|p| {
            let idx = grid.flat(p.iter().map(|&c| c.rem_euclid(n) as usize));
            (LatticePoint::from(p), data[idx] * scale)
        })
        .collect();
    WeightedSequence::new(grid.d, cube, entries)
}

/// `Σ_k f_k e^{2πi k·x}` on the grid.
pub fn from_fourier(f: &WeightedSequence, grid: TorusGrid) -> Result<TorusFunction> {
    check_dim(grid.d, f.dim())?;
    let band = f.iter().map(|(p, _)| p.sup_norm()).max().unwrap_or(0);
    grid.require(2 * band + 1)?;
    let mut data = vec![Complex64::new(0.0, 0.0); grid.len()];
    let n = grid.n as i64;
    for (p, v) in f.iter() {
        data[grid.flat(p.coords().iter().map(|&c| c.rem_euclid(n) as usize))] = *v;
    }
    transform(&grid, &mut data, FftDirection::Inverse);
    TorusFunction::new(grid, data)
}

fn spectral_derivative(f: &TorusFunction, a: &MultiIndex, band: i64) -> Result<TorusFunction> {
    let coeffs = to_fourier(f, band)?;
    let sym = SymbolFunction::monomial(a.clone(), MultiIndex::zero(a.dim()));
    let zero = vec![0i64; a.dim()];
    let diff = WeightedSequence::new(
        f.grid.d,
        coeffs.support().clone(),
        coeffs
            .iter()
            .map(|(k, v)| (k.clone(), v * sym.evaluate_lattice(k.coords(), &zero))),
    )?;
    from_fourier(&diff, f.grid)
}

/// `∂^a F · ∂^b G` on the grid with spectral derivatives; `F`, `G` band-limited by `K`.
pub fn physical_derivative_product(
    f: &TorusFunction,
    g: &TorusFunction,
    a: &MultiIndex,
    b: &MultiIndex,
    band: i64,
) -> Result<TorusFunction> {
    if !a.is_nonnegative() || !b.is_nonnegative() {
        return Err(DboError::InvalidParameter(
            "derivative orders must be nonnegative".into(),
        ));
    }
    check_dim(f.grid.d, a.dim())?;
    check_dim(f.grid.d, b.dim())?;
    f.grid.require(4 * band + 1)?;
    spectral_derivative(f, a, band)?.pointwise_product(&spectral_derivative(g, b, band)?)
}

/// `‖F‖_{H^s}` from the grid: multiply the spectrum by `⟨k⟩^s` (signed
/// frequencies), synthesize and take the quadrature `L²` norm.
pub fn hs_norm_grid(f: &TorusFunction, s: f64) -> f64 {
    let grid = f.grid;
    let mut data = f.samples.clone();
    transform(&grid, &mut data, FftDirection::Forward);
    for (idx, v) in data.iter_mut().enumerate() {
        let k: Vec<i64> = grid.multi_index(idx).into_iter().map(|m| signed(m, grid.n)).collect();
        *v *= bracket_pow(euclid(&k), s) / grid.len() as f64;
    }
    transform(&grid, &mut data, FftDirection::Inverse);
    TorusFunction { grid, samples: data }.l2_norm()
}

/// `‖F̂‖_{ℓ²_s}` from the coefficients.
pub fn hs_norm_coefficients(f: &TorusFunction, s: f64, band: i64) -> Result<f64> {
    Ok(weighted_norm(
        &to_fourier(f, band)?,
        WeightParams::new(s),
        Exponent::two(),
    ))
}

/// Band limit `K_V` and symbol of one physical term `V · Φ(∂)(F, G)`.
struct PhysicalTerm {
    v: WeightedSequence,
    a: MultiIndex,
    b: MultiIndex,
}

fn physical_terms(t: &Tensor) -> Result<Vec<PhysicalTerm>> {
    let d = t.dim();
    let monomial = |phi: &SymbolFunction| -> Result<(MultiIndex, MultiIndex)> {
        phi.as_monomial()
            .map(|(a, b)| (a.clone(), b.clone()))
            .ok_or_else(|| DboError::OutOfScope(format!("symbol {} has no physical-side form", phi.name())))
    };
    let one = WeightedSequence::delta(LatticePoint::origin(d), Complex64::new(1.0, 0.0));
    match t.kind() {
        TensorKind::Convolution { phi, mode } => {
            if *mode == ConvolutionMode::PhiOfDifferences {
                return Err(DboError::OutOfScope(
                    "difference-argument convolutions are not bridged".into(),
                ));
            }
            let (a, b) = monomial(phi)?;
            Ok(vec![PhysicalTerm { v: one, a, b }])
        }
        TensorKind::Multiplication(v) => Ok(vec![PhysicalTerm {
            v: v.coeffs().clone(),
            a: MultiIndex::zero(d),
            b: MultiIndex::zero(d),
        }]),
        TensorKind::VariableCoefficient(terms) => terms
            .iter()
            .map(|(v, phi)| {
                let (a, b) = monomial(phi)?;
                Ok(PhysicalTerm {
                    v: v.coeffs().clone(),
                    a,
                    b,
                })
            })
            .collect(),
        _ => Err(DboError::OutOfScope(format!(
            "family {:?} has no physical-side closed form",
            t.family()
        ))),
    }
}

/// Compares `apply(Θ, F̂, Ĝ)` with the coefficients of the physical-side
/// output `Σ V · ∂^a F · ∂^b G`. Inputs are band-limited by `band`; the grid
/// must resolve the output band `2K + K_V`.
pub fn bridge_check(t: &Tensor, f: &TorusFunction, g: &TorusFunction, band: i64) -> Result<Report> {
    if f.grid != g.grid {
        return Err(DboError::InvalidParameter("F and G must share a grid".into()));
    }
    check_dim(t.dim(), f.grid.d)?;
    let terms = physical_terms(t)?;
    let kv = terms
        .iter()
        .map(|term| term.v.iter().map(|(p, _)| p.sup_norm()).max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let out_band = 2 * band + kv;
    let grid = f.grid;
    grid.require(2 * out_band + 1)?;
    let fh = to_fourier(f, band)?;
    let gh = to_fourier(g, band)?;
    let fourier_side = apply(t, &fh, &gh, out_band)?;

    let mut phys = TorusFunction::new(grid, vec![Complex64::new(0.0, 0.0); grid.len()])?;
    for term in &terms {
        let prod = physical_derivative_product(f, g, &term.a, &term.b, band)?;
        let v = from_fourier(&term.v, grid)?;
        let piece = v.pointwise_product(&prod)?;
        for (acc, x) in phys.samples.iter_mut().zip(&piece.samples) {
            *acc += x;
        }
    }
    let physical_side = to_fourier(&phys, out_band)?;

    let mut residual: f64 = 0.0;
    let mut magnitude: f64 = 0.0;
    let mut worst = None;
    for p in AxisBox::cube(grid.d, out_band).points() {
        let (x, y) = (fourier_side.get(&p), physical_side.get(&p));
        magnitude = magnitude.max(x.norm()).max(y.norm());
        let r = (x - y).norm();
        if r > residual {
            residual = r;
            worst = Some(p.to_vec());
        }
    }
    let tol = BRIDGE_TOLERANCE * (1.0 + magnitude);
    let verdict = if residual <= tol { Verdict::Pass } else { Verdict::Fail };
    let params = json!({
        "family": t.family(),
        "d": grid.d,
        "grid": grid.n,
        "band": band,
        "coefficient_band": kv,
        "output_band": out_band,
    });
    let mut rep = Report::new("bridge", params, verdict);
    rep.value = Some(residual);
    rep.radius = Some(out_band);
    rep.details = json!({
        "residual": residual,
        "tolerance": tol,
        "output_magnitude": magnitude,
        "worst_frequency": worst,
    });
    if verdict == Verdict::Fail {
        rep.witness = Some(json!({
            "frequency": worst,
            "residual": residual,
        }));
    }
    Ok(rep)
}

/// [`bridge_check`] for inputs given by their Fourier coefficients, on the
/// smallest power-of-two grid that resolves the output band.
pub fn bridge_check_coefficients(
    t: &Tensor,
    f_hat: &WeightedSequence,
    g_hat: &WeightedSequence,
    band: i64,
) -> Result<Report> {
    if band < 0 {
        return Err(DboError::InvalidParameter("band must be >= 0".into()));
    }
    let d = t.dim();
    check_dim(d, f_hat.dim())?;
    check_dim(d, g_hat.dim())?;
    for (p, _) in f_hat.iter().chain(g_hat.iter()) {
        if p.sup_norm() > band {
            return Err(DboError::InvalidParameter(format!(
                "coefficient {p} lies outside band {band}"
            )));
        }
    }
    let kv = physical_terms(t)?
        .iter()
        .map(|term| term.v.iter().map(|(p, _)| p.sup_norm()).max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let grid = TorusGrid::for_band(d, 2 * band + kv);
    bridge_check(t, &band_limited(f_hat, grid)?, &band_limited(g_hat, grid)?, band)
}

/// Band-limited function with the given coefficients, sampled on `grid`.
pub fn band_limited(coeffs: &WeightedSequence, grid: TorusGrid) -> Result<TorusFunction> {
    from_fourier(coeffs, grid)
}

/// `e^{2πi k·x}` on the grid.
pub fn plane_wave(grid: TorusGrid, k: &[i64]) -> TorusFunction {
    TorusFunction::from_fn(grid, |x| {
        let phase: f64 = x.iter().zip(k).map(|(xi, ki)| xi * *ki as f64).sum();
        Complex64::from_polar(1.0, 2.0 * PI * phase)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sign_convention_on_four_points() {
        // e^{2πix} at x = 0, 1/4, 1/2, 3/4.
        let grid = TorusGrid::new(1, 4).unwrap();
        let f = TorusFunction::new(grid, vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]).unwrap();
        let fh = to_fourier(&f, 1).unwrap();
        assert!((fh.get(&[1]) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(fh.get(&[-1]).norm() < 1e-15);
        assert!(fh.get(&[0]).norm() < 1e-15);
    }

    #[test]
    fn constant_and_single_mode() {
        let grid = TorusGrid::for_band(2, 3);
        let one = TorusFunction::from_fn(grid, |_| c(1.0, 0.0));
        let fh = to_fourier(&one, 3).unwrap();
        assert_eq!(fh.len(), 1);
        assert!((fh.get(&[0, 0]) - c(1.0, 0.0)).norm() < 1e-14);
        let w = plane_wave(grid, &[1, -2]);
        let wh = to_fourier(&w, 3).unwrap();
        assert!((wh.get(&[1, -2]) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(wh.iter().filter(|(_, v)| v.norm() > 1e-13).count() == 1);
    }

    #[test]
    fn grid_too_small() {
        let grid = TorusGrid::new(1, 4).unwrap();
        let f = TorusFunction::from_fn(grid, |_| c(1.0, 0.0));
        assert!(matches!(
            to_fourier(&f, 2),
            Err(DboError::GridTooSmall { required: 5, actual: 4 })
        ));
    }

    #[test]
    fn derivative_of_single_mode() {
        let grid = TorusGrid::for_band(1, 4);
        let w = plane_wave(grid, &[1]);
        let out = physical_derivative_product(&w, &w, &MultiIndex::new(&[1]), &MultiIndex::zero(1), 1).unwrap();
        let expect = plane_wave(grid, &[2]);
        for (a, b) in out.samples.iter().zip(&expect.samples) {
            assert!((a - b * c(0.0, 2.0 * PI)).norm() < 1e-12);
        }
    }
}
