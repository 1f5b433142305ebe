//! Infinite tensors `Θ: Z^d × Z^d × Z^d → C` as lazy evaluators.
//!
//! Only [`Family::DenseTruncated`] is materialized. Every other family is a
//! closed-form evaluator or a composition over an inner tensor, and carries a
//! [`SupportHint`] that scans use for pruning.

mod hint;
mod matrix;
mod spec;
mod symbol;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{check_dim, Result};
use crate::lattice::{bracket_pow, AxisBox, Coords, LatticePoint, MultiIndex, WeightedSequence};
use crate::DboError;

pub use hint::{Plane, SupportHint};
pub use matrix::{Matrix, MatrixKind};
pub use spec::{dense_spec, MatrixSpec, TensorSpec, TorusCoefficientSpec};
pub use symbol::{SymbolFunction, SymbolKind, SymbolSpec};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    DenseTruncated,
    DiagonalCutoff,
    ConvolutionType,
    MultiplicationType,
    VariableCoefficient,
    Separable,
    Shifted,
    Differenced,
    Transposed,
    Functional,
}

/// Which pair of indices a shift or difference moves: slot 2 moves `(j, k)`, slot 3 moves `(j, ℓ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    Two,
    Three,
}

/// `First`: `Θ^{*1}(j, k, ℓ) = Θ(k, j, ℓ)`. `Second`: `Θ^{*2}(j, k, ℓ) = Θ(ℓ, k, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transpose {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvolutionMode {
    /// `Φ(k, ℓ) · 1_{j = k + ℓ}`.
    PhiOfKl,
    /// `Φ(j - k, j - ℓ) · 1_{j = k + ℓ}`.
    PhiOfDifferences,
    /// `(2πik)^a (2πiℓ)^b · 1_{j = k + ℓ}`; the symbol must be a monomial.
    Monomial,
}

/// Fourier coefficients `V̂` of a smooth torus function, with a recorded decay tag
/// `|V̂(n)| <= C_K ⟨n⟩^{-K}` on the stored support.
#[derive(Clone, Debug)]
pub struct TorusCoefficient {
    coeffs: WeightedSequence,
    decay_order: f64,
    decay_constant: f64,
}

impl TorusCoefficient {
    /// Computes the smallest `C_K` valid on the stored support.
    pub fn new(coeffs: WeightedSequence, decay_order: f64) -> Self {
        let decay_constant = coeffs
            .iter()
            .map(|(n, v)| v.norm() * bracket_pow(n.norm(), decay_order))
            .fold(0.0, f64::max);
        TorusCoefficient {
            coeffs,
            decay_order,
            decay_constant,
        }
    }

    /// `V ≡ c`, i.e. `V̂ = c·δ₀`.
    pub fn constant(d: usize, c: Complex64) -> Self {
        Self::new(WeightedSequence::delta(LatticePoint::origin(d), c), 0.0)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn coeffs(&self) -> &WeightedSequence {
        &self.coeffs
    }

    pub fn decay_order(&self) -> f64 {
        self.decay_order
    }

    pub fn decay_constant(&self) -> f64 {
        self.decay_constant
    }

    pub fn get(&self, n: &[i64]) -> Complex64 {
        self.coeffs.get(n)
    }

    /// Largest `|n|_∞` with `V̂(n) ≠ 0`.
    pub fn band_radius(&self) -> i64 {
        self.coeffs.iter().map(|(n, _)| n.sup_norm()).max().unwrap_or(0)
    }
}

#[derive(Clone)]
pub struct DenseTensor {
    radius: i64,
    values: Vec<Complex64>,
}

impl DenseTensor {
    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

type TensorFn = dyn Fn(&[i64], &[i64], &[i64]) -> Complex64 + Send + Sync;

#[derive(Clone)]
pub enum TensorKind {
    Dense(DenseTensor),
    DiagonalCutoff {
        theta: WeightedSequence,
        cutoff: u64,
    },
    Convolution {
        phi: SymbolFunction,
        mode: ConvolutionMode,
    },
    Multiplication(TorusCoefficient),
    /// `Σ_t V̂_t(j - k - ℓ) Φ_t(k, ℓ)`.
    VariableCoefficient(Vec<(TorusCoefficient, SymbolFunction)>),
    Separable(Matrix, Matrix),
    Shifted {
        inner: Tensor,
        slot: Slot,
        axis: usize,
        steps: i64,
    },
    /// Literal product of single-step differences, outermost first.
    Differenced {
        inner: Tensor,
        alpha: MultiIndex,
        beta: MultiIndex,
        steps: Vec<(Slot, usize, i64)>,
    },
    Transposed {
        inner: Tensor,
        which: Transpose,
    },
    Functional(Arc<TensorFn>),
}

#[derive(Clone)]
pub struct Tensor {
    d: usize,
    kind: Arc<TensorKind>,
    hint: SupportHint,
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tensor({:?}, d={}, hint: {})",
            self.family(),
            self.d,
            self.hint.describe()
        )
    }
}

/// `‖Θ‖_{ω1,ω2,N}` finiteness claim recorded for separable tensors (`N = M/2`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeparableClaim {
    pub omega1: f64,
    pub omega2: f64,
    pub n: f64,
}

impl Tensor {
    fn from_kind(d: usize, kind: TensorKind, hint: SupportHint) -> Self {
        Tensor {
            d,
            kind: Arc::new(kind),
            hint,
        }
    }

    /// Dense tensor on the cube `|j|_∞, |k|_∞, |ℓ|_∞ <= radius`, flattened
    /// lexicographically in `(j, k, ℓ)`.
    pub fn dense(d: usize, radius: i64, values: Vec<Complex64>) -> Result<Self> {
        if d == 0 || radius < 0 {
            return Err(DboError::InvalidParameter(
                "dense tensor needs d >= 1 and radius >= 0".into(),
            ));
        }
        let side = (2 * radius + 1) as usize;
        let expected = side.pow(3 * d as u32);
        if values.len() != expected {
            return Err(DboError::InvalidParameter(format!(
                "dense tensor of radius {radius} in d={d} needs {expected} values, got {}",
                values.len()
            )));
        }
        let pts: Vec<Coords> = AxisBox::cube(d, radius).points().collect();
        let n = pts.len();
        let (mut kb, mut lb) = (0i64, 0i64);
        for (a, j) in pts.iter().enumerate() {
            for (b, k) in pts.iter().enumerate() {
                for (c, l) in pts.iter().enumerate() {
                    if values[(a * n + b) * n + c] != ZERO {
                        kb = kb.max(sup_diff(j, k));
                        lb = lb.max(sup_diff(j, l));
                    }
                }
            }
        }
        let hint = SupportHint::cube(radius).with_bands(Some(kb), Some(lb));
        Ok(Self::from_kind(
            d,
            TensorKind::Dense(DenseTensor { radius, values }),
            hint,
        ))
    }

    pub fn dense_from_fn(d: usize, radius: i64, mut f: impl FnMut(&[i64], &[i64], &[i64]) -> Complex64) -> Self {
        let pts: Vec<Coords> = AxisBox::cube(d, radius).points().collect();
        let mut values = Vec::with_capacity(pts.len().pow(3));
        for j in &pts {
            for k in &pts {
                for l in &pts {
                    values.push(f(j, k, l));
                }
            }
        }
        Self::dense(d, radius, values).expect("sizes agree by construction")
    }

    /// Dense tensor holding one entry `c` at `(j, k, ℓ)`.
    pub fn single_entry(j: &LatticePoint, k: &LatticePoint, l: &LatticePoint, c: Complex64) -> Result<Self> {
        let d = j.dim();
        check_dim(d, k.dim())?;
        check_dim(d, l.dim())?;
        let radius = j.sup_norm().max(k.sup_norm()).max(l.sup_norm());
        Ok(Self::dense_from_fn(d, radius, |a, b, e| {
            if a == j.coords() && b == k.coords() && e == l.coords() {
                c
            } else {
                ZERO
            }
        }))
    }

    /// `Θ₁(j, k, ℓ) = θ_j · 1_{j=k=ℓ} · 1_{|j|+|k|+|ℓ| <= M}`.
    pub fn diagonal_cutoff(theta: WeightedSequence, cutoff: u64) -> Self {
        let d = theta.dim();
        let cube = (cutoff / 3) as i64;
        let hint = SupportHint::diagonal().with_cube(cube);
        Self::from_kind(d, TensorKind::DiagonalCutoff { theta, cutoff }, hint)
    }

    /// `1_{j=k=ℓ}` restricted to the cube `|j|_∞ <= r`.
    pub fn diagonal_indicator(d: usize, r: i64) -> Self {
        let theta = WeightedSequence::constant_on(AxisBox::cube(d, r), Complex64::new(1.0, 0.0));
        let cutoff = (3.0 * r as f64 * (d as f64).sqrt()).ceil() as u64;
        Self::diagonal_cutoff(theta, cutoff)
    }

    /// Convolution-plane tensor in the requested mode.
    pub fn convolution(d: usize, phi: SymbolFunction, mode: ConvolutionMode) -> Result<Self> {
        if mode == ConvolutionMode::Monomial {
            match phi.as_monomial() {
                Some((a, b)) => {
                    check_dim(d, a.dim())?;
                    check_dim(d, b.dim())?;
                }
                None => {
                    return Err(DboError::InvalidParameter(
                        "monomial mode requires a monomial symbol".into(),
                    ))
                }
            }
        }
        Ok(Self::from_kind(
            d,
            TensorKind::Convolution { phi, mode },
            SupportHint::plane(Plane::convolution(0)),
        ))
    }

    /// `Θ_Φ(j, k, ℓ) = Φ(k, ℓ) · 1_{j = k + ℓ}`.
    pub fn theta_phi(d: usize, phi: SymbolFunction) -> Self {
        Self::convolution(d, phi, ConvolutionMode::PhiOfKl).expect("mode needs no checks")
    }

    /// `Θ₂(j, k, ℓ) = Φ(j - k, j - ℓ) · 1_{j = k + ℓ}`.
    pub fn theta2(d: usize, phi: SymbolFunction) -> Self {
        Self::convolution(d, phi, ConvolutionMode::PhiOfDifferences).expect("mode needs no checks")
    }

    /// `Θ_{a,b}(j, k, ℓ) = (2πik)^a (2πiℓ)^b · 1_{j = k + ℓ}`.
    pub fn monomial(a: MultiIndex, b: MultiIndex) -> Result<Self> {
        if a.dim() != b.dim() || !a.is_nonnegative() || !b.is_nonnegative() {
            return Err(DboError::InvalidParameter(
                "monomial exponents must be nonnegative and of equal dimension".into(),
            ));
        }
        let d = a.dim();
        Self::convolution(d, SymbolFunction::monomial(a, b), ConvolutionMode::Monomial)
    }

    /// `Θ_V(j, k, ℓ) = V̂(j - k - ℓ)`.
    pub fn multiplication(v: TorusCoefficient) -> Self {
        let d = v.dim();
        let hint = SupportHint::plane(Plane::convolution(v.band_radius()));
        Self::from_kind(d, TensorKind::Multiplication(v), hint)
    }

    /// `Σ_t V̂_t(j - k - ℓ) Φ_t(k, ℓ)`.
    pub fn variable_coefficient(terms: Vec<(TorusCoefficient, SymbolFunction)>) -> Result<Self> {
        let d = terms
            .first()
            .map(|(v, _)| v.dim())
            .ok_or_else(|| DboError::InvalidParameter("variable-coefficient tensor needs a term".into()))?;
        for (v, _) in &terms {
            check_dim(d, v.dim())?;
        }
        let width = terms.iter().map(|(v, _)| v.band_radius()).max().unwrap_or(0);
        Ok(Self::from_kind(
            d,
            TensorKind::VariableCoefficient(terms),
            SupportHint::plane(Plane::convolution(width)),
        ))
    }

    /// `Θ_{V,Φ}(j, k, ℓ) = V̂(j - k - ℓ) Φ(k, ℓ)`.
    pub fn v_phi(v: TorusCoefficient, phi: SymbolFunction) -> Self {
        Self::variable_coefficient(vec![(v, phi)]).expect("one term")
    }

    /// `Θ(j, k, ℓ) = σ₁(j, k) σ₂(j, ℓ)`.
    pub fn separable(s1: Matrix, s2: Matrix) -> Result<Self> {
        let d = s1.dim();
        check_dim(d, s2.dim())?;
        let bound_j = match (s1.cube(), s2.cube()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let bound_k = s1.cube().or_else(|| Some(bound_j? + s1.band()?));
        let bound_l = s2.cube().or_else(|| Some(bound_j? + s2.band()?));
        let mut hint = SupportHint::everywhere().with_bands(s1.band(), s2.band());
        if let (Some(a), Some(b), Some(c)) = (bound_j, bound_k, bound_l) {
            hint = hint.with_cube(a.max(b).max(c));
        }
        Ok(Self::from_kind(d, TensorKind::Separable(s1, s2), hint))
    }

    /// A closed-form tensor. The caller guarantees the hint is a superset of the support.
    pub fn functional(
        d: usize,
        hint: SupportHint,
        f: impl Fn(&[i64], &[i64], &[i64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self::from_kind(d, TensorKind::Functional(Arc::new(f)), hint)
    }

    pub fn constant(d: usize, c: Complex64) -> Self {
        Self::functional(d, SupportHint::everywhere(), move |_, _, _| c)
    }

    /// `Θ(j ± e_m, k ± e_m, ℓ)` (slot 2) or `Θ(j ± e_m, k, ℓ ± e_m)` (slot 3); `axis` is 0-based.
    pub fn shift(&self, slot: Slot, axis: usize, sign: i64) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(DboError::InvalidParameter("shift sign must be +1 or -1".into()));
        }
        self.shift_by(slot, axis, sign)
    }

    /// Shift by `steps · e_axis`.
    pub fn shift_by(&self, slot: Slot, axis: usize, steps: i64) -> Result<Self> {
        if axis >= self.d {
            return Err(DboError::InvalidParameter(format!(
                "axis {axis} out of range for d={}",
                self.d
            )));
        }
        let hint = match slot {
            Slot::Two => self.hint.shift_slot2(steps.abs()),
            Slot::Three => self.hint.shift_slot3(steps.abs()),
        };
        Ok(Self::from_kind(
            self.d,
            TensorKind::Shifted {
                inner: self.clone(),
                slot,
                axis,
                steps,
            },
            hint,
        ))
    }

    /// `Δ₂^α Δ₃^β Θ`, composed lazily as the literal product
    /// `Δ_{2,1}^{α₁}···Δ_{2,d}^{α_d} Δ_{3,1}^{β₁}···Δ_{3,d}^{β_d}`.
    pub fn finite_difference(&self, alpha: &MultiIndex, beta: &MultiIndex) -> Result<Self> {
        check_dim(self.d, alpha.dim())?;
        check_dim(self.d, beta.dim())?;
        if alpha.is_zero() && beta.is_zero() {
            return Ok(self.clone());
        }
        let mut steps = Vec::new();
        for (slot, mi) in [(Slot::Two, alpha), (Slot::Three, beta)] {
            for (m, &t) in mi.entries().iter().enumerate() {
                for _ in 0..t.abs() {
                    steps.push((slot, m, t.signum()));
                }
            }
        }
        let amax = alpha.entries().iter().map(|v| v.abs()).max().unwrap_or(0);
        let bmax = beta.entries().iter().map(|v| v.abs()).max().unwrap_or(0);
        let hint = self.hint.shift_slot3(bmax).shift_slot2(amax);
        Ok(Self::from_kind(
            self.d,
            TensorKind::Differenced {
                inner: self.clone(),
                alpha: alpha.clone(),
                beta: beta.clone(),
                steps,
            },
            hint,
        ))
    }

    pub fn transpose(&self, which: Transpose) -> Self {
        let hint = match which {
            Transpose::First => self.hint.transpose1(),
            Transpose::Second => self.hint.transpose2(),
        };
        Self::from_kind(
            self.d,
            TensorKind::Transposed {
                inner: self.clone(),
                which,
            },
            hint,
        )
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> &TensorKind {
        &self.kind
    }

    pub fn hint(&self) -> &SupportHint {
        &self.hint
    }

    pub fn family(&self) -> Family {
        match &*self.kind {
            TensorKind::Dense(_) => Family::DenseTruncated,
            TensorKind::DiagonalCutoff { .. } => Family::DiagonalCutoff,
            TensorKind::Convolution { .. } => Family::ConvolutionType,
            TensorKind::Multiplication(_) => Family::MultiplicationType,
            TensorKind::VariableCoefficient(_) => Family::VariableCoefficient,
            TensorKind::Separable(..) => Family::Separable,
            TensorKind::Shifted { .. } => Family::Shifted,
            TensorKind::Differenced { .. } => Family::Differenced,
            TensorKind::Transposed { .. } => Family::Transposed,
            TensorKind::Functional(_) => Family::Functional,
        }
    }

    /// For separable tensors, the norm claim `‖Θ‖_{ω₁,ω₂,N} < ∞` with `N = M/2`.
    pub fn separable_claim(&self) -> Option<SeparableClaim> {
        match &*self.kind {
            TensorKind::Separable(a, b) => Some(SeparableClaim {
                omega1: a.order(),
                omega2: b.order(),
                n: a.decay().min(b.decay()) / 2.0,
            }),
            _ => None,
        }
    }

    /// Checked evaluation.
    pub fn evaluate(&self, j: &LatticePoint, k: &LatticePoint, l: &LatticePoint) -> Result<Complex64> {
        check_dim(self.d, j.dim())?;
        check_dim(self.d, k.dim())?;
        check_dim(self.d, l.dim())?;
        Ok(self.eval(j.coords(), k.coords(), l.coords()))
    }

    /// Unchecked evaluation; slices must have length `d`.
    pub fn eval(&self, j: &[i64], k: &[i64], l: &[i64]) -> Complex64 {
        match &*self.kind {
            TensorKind::Dense(t) => match matrix::dense_index(self.d, t.radius, &[j, k, l]) {
                Some(i) => t.values[i],
                None => ZERO,
            },
            TensorKind::DiagonalCutoff { theta, cutoff } => {
                if j != k || j != l {
                    return ZERO;
                }
                // |j| + |k| + |ℓ| = 3|j| on the diagonal; compare squared to stay exact.
                let n2: i64 = j.iter().map(|v| v * v).sum();
                let m = *cutoff as i128;
                if 9 * n2 as i128 <= m * m {
                    theta.get(j)
                } else {
                    ZERO
                }
            }
            TensorKind::Convolution { phi, mode } => {
                if !on_plane(j, k, l) {
                    return ZERO;
                }
                match mode {
                    ConvolutionMode::PhiOfKl | ConvolutionMode::Monomial => phi.evaluate_lattice(k, l),
                    ConvolutionMode::PhiOfDifferences => {
                        let x: Coords = j.iter().zip(k).map(|(a, b)| a - b).collect();
                        let y: Coords = j.iter().zip(l).map(|(a, b)| a - b).collect();
                        phi.evaluate_lattice(&x, &y)
                    }
                }
            }
            TensorKind::Multiplication(v) => v.get(&plane_offset(j, k, l)),
            TensorKind::VariableCoefficient(terms) => {
                let n = plane_offset(j, k, l);
                let mut acc = ZERO;
                for (v, phi) in terms {
                    let c = v.get(&n);
                    if c != ZERO {
                        acc += c * phi.evaluate_lattice(k, l);
                    }
                }
                acc
            }
            TensorKind::Separable(a, b) => {
                let x = a.evaluate(j, k);
                if x == ZERO {
                    return ZERO;
                }
                x * b.evaluate(j, l)
            }
            TensorKind::Shifted {
                inner,
                slot,
                axis,
                steps,
            } => {
                let mut jj = Coords::from_slice(j);
                jj[*axis] += steps;
                match slot {
                    Slot::Two => {
                        let mut kk = Coords::from_slice(k);
                        kk[*axis] += steps;
                        inner.eval(&jj, &kk, l)
                    }
                    Slot::Three => {
                        let mut ll = Coords::from_slice(l);
                        ll[*axis] += steps;
                        inner.eval(&jj, k, &ll)
                    }
                }
            }
            TensorKind::Differenced { inner, steps, .. } => {
                let mut jj = Coords::from_slice(j);
                let mut kk = Coords::from_slice(k);
                let mut ll = Coords::from_slice(l);
                eval_steps(inner, steps, &mut jj, &mut kk, &mut ll)
            }
            TensorKind::Transposed { inner, which } => match which {
                Transpose::First => inner.eval(k, j, l),
                Transpose::Second => inner.eval(l, k, j),
            },
            TensorKind::Functional(f) => f(j, k, l),
        }
    }

    /// `Θ(j, k, ℓ)` together with the sum of the absolute values of the
    /// undifferenced terms it was assembled from (`|Θ|` for plain tensors).
    /// The ratio of the two measures cancellation in finite differences.
    pub fn eval_with_magnitude(&self, j: &[i64], k: &[i64], l: &[i64]) -> (Complex64, f64) {
        match &*self.kind {
            TensorKind::Differenced { inner, steps, .. } => {
                let mut jj = Coords::from_slice(j);
                let mut kk = Coords::from_slice(k);
                let mut ll = Coords::from_slice(l);
                eval_steps_magnitude(inner, steps, &mut jj, &mut kk, &mut ll)
            }
            _ => {
                let v = self.eval(j, k, l);
                (v, v.norm())
            }
        }
    }

    /// Dense copy on the cube of radius `r` (test and oracle helper).
    pub fn materialize(&self, r: i64) -> Self {
        Self::dense_from_fn(self.d, r, |j, k, l| self.eval(j, k, l))
    }
}

/// `(X)(p)` for `X = D_1 D_2 ··· D_n Θ`, with `(D_i Y)(p) = Y(shift_i p) - Y(p)`.
/// The shifted evaluation is done in place and undone afterwards.
fn eval_steps(
    inner: &Tensor,
    steps: &[(Slot, usize, i64)],
    j: &mut Coords,
    k: &mut Coords,
    l: &mut Coords,
) -> Complex64 {
    let Some((&(slot, m, s), rest)) = steps.split_first() else {
        return inner.eval(j, k, l);
    };
    let base = eval_steps(inner, rest, j, k, l);
    j[m] += s;
    match slot {
        Slot::Two => k[m] += s,
        Slot::Three => l[m] += s,
    }
    let shifted = eval_steps(inner, rest, j, k, l);
    j[m] -= s;
    match slot {
        Slot::Two => k[m] -= s,
        Slot::Three => l[m] -= s,
    }
    shifted - base
}

fn eval_steps_magnitude(
    inner: &Tensor,
    steps: &[(Slot, usize, i64)],
    j: &mut Coords,
    k: &mut Coords,
    l: &mut Coords,
) -> (Complex64, f64) {
    let Some((&(slot, m, s), rest)) = steps.split_first() else {
        return inner.eval_with_magnitude(j, k, l);
    };
    let (base, base_mag) = eval_steps_magnitude(inner, rest, j, k, l);
    j[m] += s;
    match slot {
        Slot::Two => k[m] += s,
        Slot::Three => l[m] += s,
    }
    let (shifted, shifted_mag) = eval_steps_magnitude(inner, rest, j, k, l);
    j[m] -= s;
    match slot {
        Slot::Two => k[m] -= s,
        Slot::Three => l[m] -= s,
    }
    (shifted - base, shifted_mag + base_mag)
}

fn on_plane(j: &[i64], k: &[i64], l: &[i64]) -> bool {
    j.iter().zip(k).zip(l).all(|((a, b), c)| *a == b + c)
}

fn plane_offset(j: &[i64], k: &[i64], l: &[i64]) -> SmallVec<[i64; 4]> {
    j.iter().zip(k).zip(l).map(|((a, b), c)| a - b - c).collect()
}

fn sup_diff(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap_or(0)
}
