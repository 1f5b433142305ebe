//! The bilinear operator `T_Θ`, linear operators `L_σ`, commutators, the
//! duality pairing, certified upper bounds and empirical lower bounds.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_dim, Result};
use crate::lattice::{
    bracket_pow, euclid, euclid_diff, holder_from, power_weight, AxisBox, Coords, Exponent, HolderTriple, LatticePoint,
    WeightParams, WeightedSequence,
};
use crate::norms::{mixed_lebesgue_norm, n0_threshold, nonzero_entries, norm_omega_n, scan_tensor};
use crate::report::Triple;
use crate::tensor::{Matrix, Tensor};
use crate::DboError;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Σ_k kf(k) f_k Σ_ℓ Θ(j, k, ℓ) lf(ℓ) g_ℓ`, with `ℓ` innermost.
fn row_sum(
    t: &Tensor,
    j: &[i64],
    f: &WeightedSequence,
    g: &WeightedSequence,
    kf: impl Fn(&[i64]) -> Complex64,
    lf: impl Fn(&[i64]) -> Complex64,
) -> Complex64 {
    let hint = t.hint();
    let kbox = hint.k_box(j, f.support());
    if kbox.is_empty() {
        return ZERO;
    }
    let mut acc = ZERO;
    let mut visit_k = |k: &[i64], fk: Complex64| {
        let a = kf(k);
        if a == ZERO {
            return;
        }
        let lbox = hint.l_box(j, k, g.support());
        if lbox.is_empty() {
            return;
        }
        let mut inner = ZERO;
        let mut visit_l = |l: &[i64], gl: Complex64| {
            let th = t.eval(j, k, l);
            if th != ZERO {
                inner += th * lf(l) * gl;
            }
        };
        if lbox.volume() < g.len() {
            for l in lbox.points() {
                let gl = g.get(&l);
                if gl != ZERO {
                    visit_l(&l, gl);
                }
            }
        } else {
            for (l, gl) in g.iter() {
                if lbox.contains(l.coords()) {
                    visit_l(l.coords(), *gl);
                }
            }
        }
        if inner != ZERO {
            acc += a * fk * inner;
        }
    };
    if kbox.volume() < f.len() {
        for k in kbox.points() {
            let fk = f.get(&k);
            if fk != ZERO {
                visit_k(&k, fk);
            }
        }
    } else {
        for (k, fk) in f.iter() {
            if kbox.contains(k.coords()) {
                visit_k(k.coords(), *fk);
            }
        }
    }
    acc
}

fn collect_rows(d: usize, out_radius: i64, row: impl Fn(&[i64]) -> Complex64 + Sync) -> Result<WeightedSequence> {
    if out_radius < 0 {
        return Err(DboError::InvalidParameter("output radius must be >= 0".into()));
    }
    let cube = AxisBox::cube(d, out_radius);
    let js: Vec<Coords> = cube.points().collect();
    let vals: Vec<Complex64> = js.par_iter().map(|j| row(j)).collect();
    WeightedSequence::new(
        d,
        cube,
        js.into_iter().zip(vals).map(|(j, v)| (LatticePoint::from(j), v)),
    )
}

/// `(T_Θ(f, g))_j = Σ_k Σ_ℓ Θ(j, k, ℓ) f_k g_ℓ` for `|j|_∞ <= out_radius`.
pub fn apply(t: &Tensor, f: &WeightedSequence, g: &WeightedSequence, out_radius: i64) -> Result<WeightedSequence> {
    check_dim(t.dim(), f.dim())?;
    check_dim(t.dim(), g.dim())?;
    let one = |_: &[i64]| Complex64::new(1.0, 0.0);
    collect_rows(t.dim(), out_radius, |j| row_sum(t, j, f, g, one, one))
}

/// `(L_σ f)_j = Σ_k σ(j, k) f_k` for `|j|_∞ <= out_radius`.
pub fn apply_linear(s: &Matrix, f: &WeightedSequence, out_radius: i64) -> Result<WeightedSequence> {
    check_dim(s.dim(), f.dim())?;
    collect_rows(s.dim(), out_radius, |j| {
        let mut acc = ZERO;
        match s.band() {
            Some(w) => {
                let kbox = AxisBox::around(j, w).intersect(f.support());
                if kbox.volume() < f.len() {
                    for k in kbox.points() {
                        let fk = f.get(&k);
                        if fk != ZERO {
                            acc += s.evaluate(j, &k) * fk;
                        }
                    }
                } else {
                    for (k, fk) in f.iter() {
                        if kbox.contains(k.coords()) {
                            acc += s.evaluate(j, k.coords()) * fk;
                        }
                    }
                }
            }
            None => {
                for (k, fk) in f.iter() {
                    acc += s.evaluate(j, k.coords()) * fk;
                }
            }
        }
        acc
    })
}

/// Which argument the commutator multiplies by `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CommutatorSlot {
    First,
    Second,
}

/// `[T_Θ, b]_1(f, g)_j = Σ Θ(j, k, ℓ)(b_k - b_j) f_k g_ℓ`, or with `(b_ℓ - b_j)` for slot 2.
/// Evaluated from this expanded form, so the trivial cancellations are exact.
pub fn commutator(
    t: &Tensor,
    b: &WeightedSequence,
    slot: CommutatorSlot,
    f: &WeightedSequence,
    g: &WeightedSequence,
    out_radius: i64,
) -> Result<WeightedSequence> {
    check_dim(t.dim(), b.dim())?;
    check_dim(t.dim(), f.dim())?;
    check_dim(t.dim(), g.dim())?;
    let one = |_: &[i64]| Complex64::new(1.0, 0.0);
    collect_rows(t.dim(), out_radius, |j| {
        let bj = b.get(j);
        let diff = |x: &[i64]| b.get(x) - bj;
        match slot {
            CommutatorSlot::First => row_sum(t, j, f, g, diff, one),
            CommutatorSlot::Second => row_sum(t, j, f, g, one, diff),
        }
    })
}

/// `⟨T_Θ(f, g), h⟩ = Σ_{j,k,ℓ} Θ(j, k, ℓ) f_k g_ℓ h_j` (bilinear, no conjugation).
pub fn duality_pairing(
    t: &Tensor,
    f: &WeightedSequence,
    g: &WeightedSequence,
    h: &WeightedSequence,
) -> Result<Complex64> {
    check_dim(t.dim(), f.dim())?;
    check_dim(t.dim(), g.dim())?;
    check_dim(t.dim(), h.dim())?;
    let one = |_: &[i64]| Complex64::new(1.0, 0.0);
    let hs: Vec<(&LatticePoint, &Complex64)> = h.iter().collect();
    let terms: Vec<Complex64> = hs
        .par_iter()
        .map(|(j, hj)| *hj * row_sum(t, j.coords(), f, g, one, one))
        .collect();
    Ok(terms.into_iter().fold(ZERO, |a, b| a + b))
}

/// `‖Θ‖_{ℓ¹_j ℓ²_k ℓ²_ℓ}` on the radius-`r` cube, bounding `‖T_Θ(f, g)‖_{ℓ¹}` by `· ‖f‖₂ ‖g‖₂`.
pub fn cauchy_schwarz_bound(t: &Tensor, r: i64) -> Result<f64> {
    let triple = holder_from(Exponent::two(), Exponent::two());
    Ok(mixed_lebesgue_norm(t, &triple, r, false)?.value)
}

/// Certified constant `C` with
/// `‖T_Θ(f, g)‖_{ℓ^r_{s₁+s₂}} <= C ‖f‖_{ℓ^p_{s₁+ω}} ‖g‖_{ℓ^q_{s₂+ω}}`
/// for `f`, `g` and the output all restricted to the cube of radius `R`.
///
/// `upper = K_w · ‖Θ‖_{ω,N} · Σ_{|m|_∞<=2R} ⟨m⟩^{e₁} · Σ_{|m|_∞<=2R} ⟨m⟩^{e₂}` with
/// `e_i = ω₊ + |s_i + ω| - N_i`, where `K_w` is the maximum over nonzero entries of
/// `⟨|j|+|k|⟩^ω ⟨|j|+|ℓ|⟩^ω ⟨j⟩^{s₁+s₂} / (⟨D⟩^{2N} ⟨k⟩^{s₁+ω} ⟨ℓ⟩^{s₂+ω} ⟨j-k⟩^{e₁} ⟨j-ℓ⟩^{e₂})`
/// and `D = |j-k| + |j-ℓ|`. The kernel sums run over `2R` because `j - k`
/// ranges over that cube when both indices lie in the radius-`R` cube.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub upper: f64,
    pub lower_empirical: Option<f64>,
    pub triple: HolderTriple,
    pub s1: f64,
    pub s2: f64,
    pub omega: f64,
    pub n: u32,
    pub n0: f64,
    pub n1: f64,
    pub n2: f64,
    pub e1: f64,
    pub e2: f64,
    pub radius: i64,
    pub k_w: f64,
    pub k_w_argmax: Option<Triple>,
    pub theta_norm: f64,
    pub theta_norm_argmax: Option<Triple>,
    pub kernel_sum1: f64,
    pub kernel_sum2: f64,
}

/// Options for [`schur_upper_bound`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SchurOptions {
    /// Overrides `N₁`; `N₂ = 2N - N₁`. Both must exceed `d + ω₊ + |s_i + ω|`.
    pub n1: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
pub fn schur_upper_bound(
    t: &Tensor,
    triple: &HolderTriple,
    s1: f64,
    s2: f64,
    omega: f64,
    n: u32,
    r: i64,
    opts: SchurOptions,
) -> Result<BoundCertificate> {
    triple.require_banach_target()?;
    if r < 1 {
        return Err(DboError::InvalidParameter("radius must be >= 1".into()));
    }
    let d = t.dim();
    let n0 = n0_threshold(d, omega, s1, s2);
    let nf = n as f64;
    if nf <= n0 {
        return Err(DboError::HypothesisUnmet(format!(
            "N = {n} does not exceed N0 = {n0}; the certificate requires N > N0"
        )));
    }
    let op = omega.max(0.0);
    let floor1 = d as f64 + op + (s1 + omega).abs();
    let floor2 = d as f64 + op + (s2 + omega).abs();
    let (n1, n2) = match opts.n1 {
        Some(a) => (a, 2.0 * nf - a),
        None => {
            let slack = 2.0 * nf - floor1 - floor2;
            (floor1 + slack / 2.0, floor2 + slack / 2.0)
        }
    };
    if n1 <= floor1 || n2 <= floor2 {
        return Err(DboError::InvalidParameter(format!(
            "split N1 = {n1}, N2 = {n2} must exceed {floor1} and {floor2}"
        )));
    }
    let e1 = op + (s1 + omega).abs() - n1;
    let e2 = op + (s2 + omega).abs() - n2;
    let theta = norm_omega_n(t, omega, n, r)?;
    let two_n = 2.0 * nf;
    let kw = scan_tensor(t, r, |j, k, l, _| {
        let (aj, ak, al) = (euclid(j), euclid(k), euclid(l));
        let (djk, djl) = (euclid_diff(j, k), euclid_diff(j, l));
        bracket_pow(aj + ak, omega) * bracket_pow(aj + al, omega) * bracket_pow(aj, s1 + s2)
            / (bracket_pow(djk + djl, two_n)
                * bracket_pow(ak, s1 + omega)
                * bracket_pow(al, s2 + omega)
                * bracket_pow(djk, e1)
                * bracket_pow(djl, e2))
    });
    let kernel = |e: f64| -> f64 {
        AxisBox::cube(d, 2 * r)
            .points()
            .map(|m| bracket_pow(euclid(&m), e))
            .sum()
    };
    let (k1, k2) = (kernel(e1), kernel(e2));
    Ok(BoundCertificate {
        upper: kw.value * theta.value * k1 * k2,
        lower_empirical: None,
        triple: *triple,
        s1,
        s2,
        omega,
        n,
        n0,
        n1,
        n2,
        e1,
        e2,
        radius: r,
        k_w: kw.value,
        k_w_argmax: kw.argmax,
        theta_norm: theta.value,
        theta_norm_argmax: theta.argmax,
        kernel_sum1: k1,
        kernel_sum2: k2,
    })
}

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn unit_phase(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU)
}

/// Truncated operator on the cube of radius `R` with precomputed weights.
struct Truncation {
    d: usize,
    pts: Vec<Coords>,
    entries: Vec<(usize, usize, usize, Complex64)>,
    w_out: Vec<f64>,
    w_f: Vec<f64>,
    w_g: Vec<f64>,
    triple: HolderTriple,
}

fn cube_pos(p: &[i64], r: i64) -> usize {
    let side = (2 * r + 1) as usize;
    p.iter().fold(0, |acc, &c| acc * side + (c + r) as usize)
}

impl Truncation {
    fn new(t: &Tensor, triple: &HolderTriple, s1: f64, s2: f64, omega: f64, r: i64) -> Self {
        let d = t.dim();
        let pts: Vec<Coords> = AxisBox::cube(d, r).points().collect();
        let entries = nonzero_entries(t, r)
            .into_iter()
            .map(|(j, k, l, v)| (cube_pos(&j, r), cube_pos(&k, r), cube_pos(&l, r), v))
            .collect();
        let w = |s: f64| -> Vec<f64> { pts.iter().map(|p| power_weight(p, WeightParams::new(s))).collect() };
        Truncation {
            d,
            w_out: w(s1 + s2),
            w_f: w(s1 + omega),
            w_g: w(s2 + omega),
            pts,
            entries,
            triple: *triple,
        }
    }

    fn wnorm(v: &[Complex64], w: &[f64], p: Exponent) -> f64 {
        p.norm_of(v.iter().zip(w).map(|(x, wi)| x.norm() * wi))
    }

    fn apply(&self, f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.pts.len()];
        for &(j, k, l, v) in &self.entries {
            out[j] += v * f[k] * g[l];
        }
        out
    }

    fn ratio(&self, f: &[Complex64], g: &[Complex64]) -> f64 {
        let den = Self::wnorm(f, &self.w_f, self.triple.p) * Self::wnorm(g, &self.w_g, self.triple.q);
        if den == 0.0 {
            return 0.0;
        }
        Self::wnorm(&self.apply(f, g), &self.w_out, self.triple.r) / den
    }

    /// Exact ratio for every basis pair `(δ_k, δ_ℓ)`; returns the best pair.
    fn basis_max(&self) -> (f64, Option<(usize, usize)>) {
        let mut cols: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
        for &(j, k, l, v) in &self.entries {
            cols.entry((k, l)).or_default().push(v.norm() * self.w_out[j]);
        }
        let mut best = (0.0, None);
        for ((k, l), vals) in cols {
            let q = self.triple.r.norm_of(vals) / (self.w_f[k] * self.w_g[l]);
            if best.1.is_none() || q > best.0 {
                best = (q, Some((k, l)));
            }
        }
        best
    }

    fn random_unit(&self, rng: &mut ChaCha8Rng, p: Exponent, w: &[f64]) -> Vec<Complex64> {
        let v: Vec<Complex64> = if p.is_infinite() {
            w.iter().map(|wi| unit_phase(rng) / wi).collect()
        } else {
            w.iter().map(|_| complex_gaussian(rng)).collect()
        };
        let nrm = Self::wnorm(&v, w, p);
        v.into_iter().map(|x| x / nrm).collect()
    }

    /// Best `x` for `x ↦ ‖w_out · M x‖_r / ‖w_in · x‖_p` with `M = mat` (row-major, square).
    fn improve(&self, mat: &[Complex64], w_in: &[f64], p: Exponent, start: &[Complex64]) -> Vec<Complex64> {
        let n = self.pts.len();
        let r = self.triple.r;
        // B = W_out M W_in^{-1}; optimise over u = W_in x.
        let b: Vec<Complex64> = (0..n * n)
            .map(|idx| mat[idx] * self.w_out[idx / n] / w_in[idx % n])
            .collect();
        let objective = |bu: &[Complex64], u: &[Complex64]| -> f64 {
            let den = p.norm_of(u.iter().map(|x| x.norm()));
            if den == 0.0 {
                0.0
            } else {
                r.norm_of(bu.iter().map(|x| x.norm())) / den
            }
        };
        let to_x = |u: Vec<Complex64>| -> Vec<Complex64> { u.into_iter().zip(w_in).map(|(x, wi)| x / wi).collect() };
        if p == Exponent::one() {
            let mut best = (0.0, 0usize);
            for c in 0..n {
                let q = r.norm_of((0..n).map(|row| b[row * n + c].norm()));
                if q > best.0 {
                    best = (q, c);
                }
            }
            let mut u = vec![ZERO; n];
            u[best.1] = Complex64::new(1.0, 0.0);
            return to_x(u);
        }
        if p.is_infinite() && r.is_infinite() {
            let mut best = (0.0, 0usize);
            for row in 0..n {
                let q: f64 = (0..n).map(|c| b[row * n + c].norm()).sum();
                if q > best.0 {
                    best = (q, row);
                }
            }
            let u: Vec<Complex64> = (0..n)
                .map(|c| {
                    let z = b[best.1 * n + c];
                    if z == ZERO {
                        Complex64::new(1.0, 0.0)
                    } else {
                        z.conj() / z.norm()
                    }
                })
                .collect();
            return to_x(u);
        }
        let mut u: Vec<Complex64> = start.iter().zip(w_in).map(|(x, wi)| x * wi).collect();
        let mut bu: Vec<Complex64> = (0..n).map(|row| (0..n).map(|c| b[row * n + c] * u[c]).sum()).collect();
        let mut best = objective(&bu, &u);
        let mut step = u.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1e-3) * 0.5;
        let dirs = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        for _sweep in 0..3 {
            for c in 0..n {
                for dir in dirs {
                    let delta = dir * step;
                    let mut trial_u = u.clone();
                    trial_u[c] += delta;
                    let trial_bu: Vec<Complex64> = bu
                        .iter()
                        .enumerate()
                        .map(|(row, y)| y + b[row * n + c] * delta)
                        .collect();
                    let q = objective(&trial_bu, &trial_u);
                    if q > best {
                        best = q;
                        u = trial_u;
                        bu = trial_bu;
                    }
                }
            }
            step *= 0.5;
        }
        to_x(u)
    }

    /// `M[j][k] = Σ_ℓ Θ(j, k, ℓ) g_ℓ` (slot 1) or `Σ_k Θ(j, k, ℓ) f_k` (slot 2).
    fn freeze(&self, other: &[Complex64], free_is_first: bool) -> Vec<Complex64> {
        let n = self.pts.len();
        let mut m = vec![ZERO; n * n];
        for &(j, k, l, v) in &self.entries {
            if free_is_first {
                m[j * n + k] += v * other[l];
            } else {
                m[j * n + l] += v * other[k];
            }
        }
        m
    }

    fn to_sequence(&self, v: &[Complex64], r: i64) -> WeightedSequence {
        WeightedSequence::new(
            self.d,
            AxisBox::cube(self.d, r),
            self.pts.iter().zip(v).map(|(p, x)| (LatticePoint::from(p.clone()), *x)),
        )
        .expect("points lie in the cube")
    }
}

/// Lower bound on the operator norm of the truncation to the radius-`R` cube.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalNorm {
    pub value: f64,
    /// Ratio of each random pair, in sample order.
    pub sample_ratios: Vec<f64>,
    pub basis_max: f64,
    pub ascent_value: f64,
    pub best_f: WeightedSequence,
    pub best_g: WeightedSequence,
}

/// Random pairs (complex Gaussian, or unimodular phases for `ℓ^∞`) normalized
/// in `ℓ^p_{s₁+ω} × ℓ^q_{s₂+ω}`, all basis pairs `(δ_k, δ_ℓ)`, then ten rounds
/// of alternating ascent from the best pair found. Deterministic in `seed`.
#[allow(clippy::too_many_arguments)]
pub fn empirical_operator_norm(
    t: &Tensor,
    triple: &HolderTriple,
    s1: f64,
    s2: f64,
    omega: f64,
    r: i64,
    samples: usize,
    seed: u64,
) -> Result<EmpiricalNorm> {
    if samples < 1 {
        return Err(DboError::InvalidParameter("samples must be >= 1".into()));
    }
    if r < 1 {
        return Err(DboError::InvalidParameter("radius must be >= 1".into()));
    }
    let tr = Truncation::new(t, triple, s1, s2, omega, r);
    let n = tr.pts.len();
    let pairs: Vec<(Vec<Complex64>, Vec<Complex64>, f64)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let f = tr.random_unit(&mut rng, triple.p, &tr.w_f);
            let g = tr.random_unit(&mut rng, triple.q, &tr.w_g);
            let q = tr.ratio(&f, &g);
            (f, g, q)
        })
        .collect();
    let sample_ratios: Vec<f64> = pairs.iter().map(|p| p.2).collect();
    let (basis_max, basis_arg) = tr.basis_max();

    let mut best: (f64, Vec<Complex64>, Vec<Complex64>) = (f64::NEG_INFINITY, Vec::new(), Vec::new());
    for (f, g, q) in &pairs {
        if *q > best.0 {
            best = (*q, f.clone(), g.clone());
        }
    }
    if let Some((k, l)) = basis_arg {
        if basis_max > best.0 {
            let mut f = vec![ZERO; n];
            let mut g = vec![ZERO; n];
            f[k] = Complex64::new(1.0 / tr.w_f[k], 0.0);
            g[l] = Complex64::new(1.0 / tr.w_g[l], 0.0);
            best = (basis_max, f, g);
        }
    }
    let (mut f, mut g) = (best.1.clone(), best.2.clone());
    let mut ascent_value = best.0;
    for _round in 0..10 {
        let m = tr.freeze(&g, true);
        let f_new = tr.improve(&m, &tr.w_f, triple.p, &f);
        let q = tr.ratio(&f_new, &g);
        if q > ascent_value {
            ascent_value = q;
            f = f_new;
        }
        let m = tr.freeze(&f, false);
        let g_new = tr.improve(&m, &tr.w_g, triple.q, &g);
        let q = tr.ratio(&f, &g_new);
        if q > ascent_value {
            ascent_value = q;
            g = g_new;
        }
    }
    let value = sample_ratios
        .iter()
        .copied()
        .chain([basis_max, ascent_value])
        .fold(0.0, f64::max);
    Ok(EmpiricalNorm {
        value,
        sample_ratios,
        basis_max,
        ascent_value: ascent_value.max(0.0),
        best_f: tr.to_sequence(&f, r),
        best_g: tr.to_sequence(&g, r),
    })
}

/// Unit-ball samples used by the compactness harness: `ℓ^p × ℓ^q` normalized
/// pairs on the radius-`r` cube (unweighted).
pub fn unit_pairs(
    d: usize,
    triple: &HolderTriple,
    r: i64,
    samples: usize,
    seed: u64,
) -> Vec<(WeightedSequence, WeightedSequence)> {
    let cube = AxisBox::cube(d, r);
    let pts: Vec<Coords> = cube.points().collect();
    let ones = vec![1.0; pts.len()];
    let build = |v: Vec<Complex64>| {
        WeightedSequence::new(
            d,
            cube.clone(),
            pts.iter().zip(v).map(|(p, x)| (LatticePoint::from(p.clone()), x)),
        )
        .expect("points lie in the cube")
    };
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let draw = |rng: &mut ChaCha8Rng, p: Exponent| -> Vec<Complex64> {
                let v: Vec<Complex64> = if p.is_infinite() {
                    ones.iter().map(|_| unit_phase(rng)).collect()
                } else {
                    ones.iter().map(|_| complex_gaussian(rng)).collect()
                };
                let nrm = p.norm_of(v.iter().map(|x| x.norm()));
                v.into_iter().map(|x| x / nrm).collect()
            };
            let f = draw(&mut rng, triple.p);
            let g = draw(&mut rng, triple.q);
            (build(f), build(g))
        })
        .collect()
}

/// Hint-aware check that every nonzero entry lies in the hint (used by tests).
pub fn hint_is_sound(t: &Tensor, r: i64) -> bool {
    let d = t.dim();
    let cube = AxisBox::cube(d, r);
    cube.points().all(|j| {
        cube.points().all(|k| {
            cube.points()
                .all(|l| t.eval(&j, &k, &l) == ZERO || t.hint().contains(&j, &k, &l))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::holder_triple;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn origin(d: usize) -> Tensor {
        let o = LatticePoint::origin(d);
        Tensor::single_entry(&o, &o, &o, c(1.0)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let d0 = WeightedSequence::delta(LatticePoint::origin(1), c(1.0));
        let out = apply(&origin(1), &d0, &d0, 3).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.get(&[0]), c(1.0));

        let ones = WeightedSequence::constant_on(AxisBox::cube(1, 1), c(1.0));
        let full = Tensor::dense_from_fn(1, 1, |_, _, _| c(1.0));
        let out = apply(&full, &ones, &ones, 2).unwrap();
        for j in -1..=1 {
            assert_eq!(out.get(&[j]), c(9.0));
        }
        assert_eq!(out.get(&[2]), c(0.0));
    }

    #[test]
    fn commutator_trivial_cases_are_exactly_zero() {
        let f = WeightedSequence::constant_on(AxisBox::cube(1, 2), c(0.3));
        let g = WeightedSequence::constant_on(AxisBox::cube(1, 2), Complex64::new(0.1, 0.7));
        let b = WeightedSequence::constant_on(AxisBox::cube(1, 6), c(2.5));
        let t = Tensor::dense_from_fn(1, 2, |j, k, l| c((j[0] + 2 * k[0] - l[0]) as f64 + 0.5));
        for slot in [CommutatorSlot::First, CommutatorSlot::Second] {
            let out = commutator(&t, &b, slot, &f, &g, 3).unwrap();
            assert!(out.is_empty());
        }
        let diag = Tensor::diagonal_indicator(1, 4);
        let b = WeightedSequence::from_entries(
            1,
            (-3..=3).map(|i| (LatticePoint::new(&[i]).unwrap(), c(i as f64 * 1.7))),
        )
        .unwrap();
        let out = commutator(&diag, &b, CommutatorSlot::First, &f, &g, 4).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn certificate_refused_at_threshold() {
        let t = origin(1);
        let tr = holder_triple(2.0, 2.0).unwrap();
        let e = schur_upper_bound(&t, &tr, 0.0, 0.0, 0.0, 1, 3, SchurOptions::default());
        assert!(matches!(e, Err(DboError::HypothesisUnmet(_))));
        let ok = schur_upper_bound(&t, &tr, 0.0, 0.0, 0.0, 2, 3, SchurOptions::default()).unwrap();
        assert!(ok.upper.is_finite() && ok.upper >= 1.0);
    }

    #[test]
    fn empirical_norm_of_rank_one_tensor() {
        let t = origin(1);
        let tr = holder_triple(2.0, 2.0).unwrap();
        let e = empirical_operator_norm(&t, &tr, 0.0, 0.0, 0.0, 2, 16, 7).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
        let again = empirical_operator_norm(&t, &tr, 0.0, 0.0, 0.0, 2, 16, 7).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn diagonal_sup_norm_is_one() {
        let t = Tensor::diagonal_indicator(1, 3);
        let tr = holder_triple(f64::INFINITY, f64::INFINITY).unwrap();
        let e = empirical_operator_norm(&t, &tr, 0.0, 0.0, 0.0, 3, 8, 1).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12, "{}", e.value);
    }
}
