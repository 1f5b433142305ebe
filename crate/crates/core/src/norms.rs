//! Tensor norms and seminorms over truncated index cubes, and the symbol-class
//! membership scanner.
//!
//! Every supremum over `Z^{3d}` is taken over the cube
//! `max(|j|_∞, |k|_∞, |ℓ|_∞) <= R`, pruned by the tensor's support hint.
//! Scans run in parallel over `j`; partial results are combined in `j` order
//! with a first-found tie break, so values and argmax triples do not depend on
//! the number of worker threads.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{check_dim, Result};
use crate::lattice::{bracket_pow, euclid, euclid_diff, AxisBox, Coords, Exponent, HolderTriple, MultiIndex};
use crate::report::{Report, Triple, Verdict};
use crate::tensor::{SupportHint, Tensor};
use crate::DboError;

/// Parameters shared by the norms, seminorms and the threshold `N₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormParams {
    pub omega: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub n: u32,
    pub s1: f64,
    pub s2: f64,
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl NormParams {
    pub fn new(d: usize, omega: f64, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(DboError::InvalidParameter("N must be >= 1".into()));
        }
        Ok(NormParams {
            omega,
            omega1: omega,
            omega2: omega,
            n,
            s1: 0.0,
            s2: 0.0,
            alpha: MultiIndex::zero(d),
            beta: MultiIndex::zero(d),
        })
    }

    pub fn with_orders(mut self, omega1: f64, omega2: f64) -> Self {
        self.omega1 = omega1;
        self.omega2 = omega2;
        self
    }

    pub fn with_smoothness(mut self, s1: f64, s2: f64) -> Self {
        self.s1 = s1;
        self.s2 = s2;
        self
    }

    pub fn with_differences(mut self, alpha: MultiIndex, beta: MultiIndex) -> Self {
        self.alpha = alpha;
        self.beta = beta;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub value: f64,
    pub argmax: Option<Triple>,
    pub radius: i64,
    /// Maximum of the quotient over the shell `max(|j|_∞, |k|_∞, |ℓ|_∞) = R`.
    #[serde(rename = "boundaryRatio")]
    pub boundary_ratio: f64,
}

impl ScanResult {
    pub fn argmax_on_boundary(&self) -> bool {
        self.argmax.as_ref().is_some_and(|a| a.sup_norm() == self.radius)
    }
}

struct Partial {
    best: f64,
    arg: Option<(Coords, Coords, Coords)>,
    boundary: f64,
}

/// Maximizes `f` over the hint-pruned cube of radius `r`. `f` returns `None`
/// for triples that do not contribute (typically zero entries).
pub fn scan_hint<F>(hint: &SupportHint, d: usize, r: i64, f: F) -> ScanResult
where
    F: Fn(&[i64], &[i64], &[i64]) -> Option<f64> + Sync,
{
    let cube = AxisBox::cube(d, r);
    let js: Vec<Coords> = hint.j_box(&cube).points().collect();
    let partials: Vec<Partial> = js
        .par_iter()
        .map(|j| {
            let mut p = Partial {
                best: 0.0,
                arg: None,
                boundary: 0.0,
            };
            let j_sup = j.iter().map(|v| v.abs()).max().unwrap_or(0);
            for k in hint.k_box(j, &cube).points() {
                let jk_sup = j_sup.max(k.iter().map(|v| v.abs()).max().unwrap_or(0));
                for l in hint.l_box(j, &k, &cube).points() {
                    if !hint.contains(j, &k, &l) {
                        continue;
                    }
                    let Some(q) = f(j, &k, &l) else { continue };
                    if p.arg.is_none() || q > p.best {
                        p.best = q;
                        p.arg = Some((j.clone(), k.clone(), l.clone()));
                    }
                    let sup = jk_sup.max(l.iter().map(|v| v.abs()).max().unwrap_or(0));
                    if sup == r && q > p.boundary {
                        p.boundary = q;
                    }
                }
            }
            p
        })
        .collect();
    let mut out = Partial {
        best: 0.0,
        arg: None,
        boundary: 0.0,
    };
    for p in partials {
        if p.arg.is_some() && (out.arg.is_none() || p.best > out.best) {
            out.best = p.best;
            out.arg = p.arg;
        }
        if p.boundary > out.boundary {
            out.boundary = p.boundary;
        }
    }
    ScanResult {
        value: out.best,
        argmax: out.arg.map(|(j, k, l)| Triple::from_coords(&j, &k, &l)),
        radius: r,
        boundary_ratio: out.boundary,
    }
}

/// Finite differences whose modulus is at most this fraction of the summed
/// moduli of their terms are rounding residue of an exact zero.
pub const CANCELLATION_FLOOR: f64 = 1e-12;

/// Maximizes `q(j, k, ℓ, Θ(j, k, ℓ))` over nonzero entries. Differenced
/// entries below [`CANCELLATION_FLOOR`] relative to their terms count as zero.
pub fn scan_tensor<F>(t: &Tensor, r: i64, q: F) -> ScanResult
where
    F: Fn(&[i64], &[i64], &[i64], Complex64) -> f64 + Sync,
{
    scan_hint(t.hint(), t.dim(), r, |j, k, l| {
        let (v, mag) = t.eval_with_magnitude(j, k, l);
        if v == Complex64::new(0.0, 0.0) || v.norm() <= CANCELLATION_FLOOR * mag {
            None
        } else {
            Some(q(j, k, l, v))
        }
    })
}

fn check_radius(r: i64) -> Result<()> {
    if r < 1 {
        Err(DboError::InvalidParameter(format!("scan radius must be >= 1, got {r}")))
    } else {
        Ok(())
    }
}

pub(crate) fn check_decay_order(n: u32) -> Result<()> {
    if n < 1 {
        Err(DboError::InvalidParameter("N must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// `|j - k| + |j - ℓ|`.
pub fn offset_size(j: &[i64], k: &[i64], l: &[i64]) -> f64 {
    euclid_diff(j, k) + euclid_diff(j, l)
}

/// `|j| + |k| + |ℓ|`.
pub fn total_size(j: &[i64], k: &[i64], l: &[i64]) -> f64 {
    euclid(j) + euclid(k) + euclid(l)
}

/// `‖Θ‖_{ω₁,ω₂,N}`: sup of `|Θ| ⟨|j-k|+|j-ℓ|⟩^{2N} / (⟨|j|+|k|⟩^{ω₁} ⟨|j|+|ℓ|⟩^{ω₂})`.
pub fn norm_two_order(t: &Tensor, omega1: f64, omega2: f64, n: u32, r: i64) -> Result<ScanResult> {
    check_radius(r)?;
    check_decay_order(n)?;
    let two_n = 2.0 * n as f64;
    Ok(scan_tensor(t, r, |j, k, l, v| {
        let (aj, ak, al) = (euclid(j), euclid(k), euclid(l));
        v.norm() * bracket_pow(offset_size(j, k, l), two_n)
            / (bracket_pow(aj + ak, omega1) * bracket_pow(aj + al, omega2))
    }))
}

/// `‖Θ‖_{ω,N}`.
pub fn norm_omega_n(t: &Tensor, omega: f64, n: u32, r: i64) -> Result<ScanResult> {
    norm_two_order(t, omega, omega, n, r)
}

/// `‖Θ‖_{0,N}`: sup of `|Θ| ⟨|j-k|+|j-ℓ|⟩^{2N}`.
pub fn norm_zero_n(t: &Tensor, n: u32, r: i64) -> Result<ScanResult> {
    norm_omega_n(t, 0.0, n, r)
}

/// `‖Θ‖_{0,0,ω,N}`: sup of `|Θ| ⟨|j-k|+|j-ℓ|⟩^{2N} / ⟨|j|+|k|+|ℓ|⟩^ω`.
pub fn seminorm00(t: &Tensor, omega: f64, n: u32, r: i64) -> Result<ScanResult> {
    let z = MultiIndex::zero(t.dim());
    bt_seminorm(t, &z, &z, omega, n, r)
}

/// `‖Θ‖_{α,β,ω,N}`: sup of `|Δ₂^α Δ₃^β Θ| ⟨|j-k|+|j-ℓ|⟩^{2N} / ⟨|j|+|k|+|ℓ|⟩^{ω-|α|-|β|}`.
pub fn bt_seminorm(
    t: &Tensor,
    alpha: &MultiIndex,
    beta: &MultiIndex,
    omega: f64,
    n: u32,
    r: i64,
) -> Result<ScanResult> {
    check_radius(r)?;
    check_decay_order(n)?;
    check_dim(t.dim(), alpha.dim())?;
    check_dim(t.dim(), beta.dim())?;
    let dt = t.finite_difference(alpha, beta)?;
    let expo = omega - (alpha.abs_sum() + beta.abs_sum()) as f64;
    Ok(scan_tensor(&dt, r, bt_quotient(expo, n)))
}

/// The seminorm quotient with denominator exponent `expo = ω - |α| - |β|`.
pub fn bt_quotient(expo: f64, n: u32) -> impl Fn(&[i64], &[i64], &[i64], Complex64) -> f64 + Sync {
    let two_n = 2.0 * n as f64;
    move |j, k, l, v| v.norm() * bracket_pow(offset_size(j, k, l), two_n) / bracket_pow(total_size(j, k, l), expo)
}

/// `N₀ = d + ω₊ + (|s₁ + ω| + |s₂ + ω|) / 2`.
pub fn n0_threshold(d: usize, omega: f64, s1: f64, s2: f64) -> f64 {
    d as f64 + omega.max(0.0) + 0.5 * ((s1 + omega).abs() + (s2 + omega).abs())
}

/// Index slots of a tensor entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexSlot {
    J,
    K,
    L,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixedNorm {
    /// `‖Θ‖_{ℓ^r_j ℓ^{p'}_k ℓ^{q'}_ℓ}`, computed `ℓ` innermost, then `k`, then `j`.
    pub value: f64,
    /// All six nestings as `(outer, middle, inner, value)`, when requested.
    pub orders: Vec<(IndexSlot, IndexSlot, IndexSlot, f64)>,
    /// Minimum over the six nestings, when requested.
    pub min_over_orders: Option<f64>,
}

/// Iterated Lebesgue norm with `j ↦ r`, `k ↦ p'`, `ℓ ↦ q'` over the radius-`r` cube.
pub fn mixed_lebesgue_norm(t: &Tensor, triple: &HolderTriple, r: i64, all_orders: bool) -> Result<MixedNorm> {
    check_radius(r)?;
    let entries: Vec<_> = nonzero_entries(t, r)
        .into_iter()
        .map(|(j, k, l, v)| (j, k, l, v.norm()))
        .collect();
    let expo = |s: IndexSlot| match s {
        IndexSlot::J => triple.r,
        IndexSlot::K => triple.p_dual,
        IndexSlot::L => triple.q_dual,
    };
    let eval_order =
        |o: IndexSlot, m: IndexSlot, i: IndexSlot| iterated_norm(&entries, [o, m, i], [expo(o), expo(m), expo(i)]);
    let value = eval_order(IndexSlot::J, IndexSlot::K, IndexSlot::L);
    let (orders, min_over_orders) = if all_orders {
        use IndexSlot::*;
        let perms = [(J, K, L), (J, L, K), (K, J, L), (K, L, J), (L, J, K), (L, K, J)];
        let orders: Vec<_> = perms.iter().map(|&(o, m, i)| (o, m, i, eval_order(o, m, i))).collect();
        let min = orders.iter().map(|o| o.3).fold(f64::INFINITY, f64::min);
        (orders, Some(min))
    } else {
        (Vec::new(), None)
    };
    Ok(MixedNorm {
        value,
        orders,
        min_over_orders,
    })
}

/// `(j, k, ℓ, Θ(j, k, ℓ))` for every nonzero entry in the cube, in scan order.
pub fn nonzero_entries(t: &Tensor, r: i64) -> Vec<(Coords, Coords, Coords, Complex64)> {
    let cube = AxisBox::cube(t.dim(), r);
    let hint = t.hint();
    let js: Vec<Coords> = hint.j_box(&cube).points().collect();
    js.par_iter()
        .map(|j| {
            let mut out = Vec::new();
            for k in hint.k_box(j, &cube).points() {
                for l in hint.l_box(j, &k, &cube).points() {
                    if !hint.contains(j, &k, &l) {
                        continue;
                    }
                    let v = t.eval(j, &k, &l);
                    if v != Complex64::new(0.0, 0.0) {
                        out.push((j.clone(), k.clone(), l.clone(), v));
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn iterated_norm(entries: &[(Coords, Coords, Coords, f64)], order: [IndexSlot; 3], expo: [Exponent; 3]) -> f64 {
    let pick = |e: &(Coords, Coords, Coords, f64), s: IndexSlot| -> Coords {
        match s {
            IndexSlot::J => e.0.clone(),
            IndexSlot::K => e.1.clone(),
            IndexSlot::L => e.2.clone(),
        }
    };
    let mut inner: BTreeMap<(Coords, Coords), Vec<f64>> = BTreeMap::new();
    for e in entries {
        inner
            .entry((pick(e, order[0]), pick(e, order[1])))
            .or_default()
            .push(e.3);
    }
    let mut middle: BTreeMap<Coords, Vec<f64>> = BTreeMap::new();
    for ((o, _), vals) in inner {
        middle.entry(o).or_default().push(expo[2].norm_of(vals));
    }
    expo[0].norm_of(middle.into_values().map(|vals| expo[1].norm_of(vals)))
}

/// Brute-forced constants for the comparisons between `‖Θ‖_{ω,N}` and `‖Θ‖_{0,0,·,N}`.
///
/// For `ω >= 0`: `‖Θ‖_{0,0,2ω,N} <= lower·‖Θ‖_{ω,N}` and `‖Θ‖_{ω,N} <= upper·‖Θ‖_{0,0,ω,N}`.
/// For `ω < 0`: `‖Θ‖_{0,0,ω,N} <= lower·‖Θ‖_{ω,N}` and `‖Θ‖_{ω,N} <= upper·‖Θ‖_{0,0,2ω,N}`.
/// Each constant is the maximum of the pointwise weight ratio over the nonzero
/// entries of the scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonConstants {
    pub omega: f64,
    /// Order of the seminorm on the left of the first inequality.
    pub lower_order: f64,
    /// Order of the seminorm on the right of the second inequality.
    pub upper_order: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn comparison_constants(t: &Tensor, omega: f64, r: i64) -> Result<ComparisonConstants> {
    check_radius(r)?;
    let (e1, e2) = if omega >= 0.0 {
        (2.0 * omega, omega)
    } else {
        (omega, 2.0 * omega)
    };
    let weights = |j: &[i64], k: &[i64], l: &[i64]| {
        let (aj, ak, al) = (euclid(j), euclid(k), euclid(l));
        let ab = bracket_pow(aj + ak, omega) * bracket_pow(aj + al, omega);
        (ab, bracket_pow(aj + ak + al, 1.0))
    };
    let lower = scan_tensor(t, r, |j, k, l, _| {
        let (ab, s) = weights(j, k, l);
        ab / s.powf(e1)
    })
    .value;
    let upper = scan_tensor(t, r, |j, k, l, _| {
        let (ab, s) = weights(j, k, l);
        s.powf(e2) / ab
    })
    .value;
    Ok(ComparisonConstants {
        omega,
        lower_order: e1,
        upper_order: e2,
        lower,
        upper,
    })
}

/// Thresholds and index ranges for [`bt_membership_scan`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipConfig {
    pub alpha_max: i64,
    pub beta_max: i64,
    /// Largest relative change between radii `R` and `2R` still counted as stable.
    pub stability: f64,
    /// Growth factor between radii `R` and `2R` counted as divergence.
    pub divergence: f64,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig {
            alpha_max: 2,
            beta_max: 2,
            stability: 0.10,
            divergence: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeminormRow {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub value_r: f64,
    pub value_2r: f64,
    pub argmax_2r: Option<Triple>,
    pub relative_change: f64,
    pub growth: f64,
    pub status: &'static str,
}

fn classify(a: &ScanResult, b: &ScanResult, cfg: &MembershipConfig) -> (f64, f64, &'static str) {
    let (v1, v2) = (a.value, b.value);
    let (rel, growth) = if v1 == 0.0 {
        if v2 == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY, f64::INFINITY)
        }
    } else {
        ((v2 - v1).abs() / v1, v2 / v1)
    };
    let status = if !v2.is_finite() || (growth >= cfg.divergence && b.argmax_on_boundary()) {
        "divergent"
    } else if rel <= cfg.stability {
        "stable"
    } else {
        "unsettled"
    };
    (rel, growth, status)
}

/// A lattice ray `t ↦ (t·a·e₁, t·b·e₁, t·c·e₁)` along which the quotient grows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayEvidence {
    pub direction: [i64; 3],
    pub t_half: i64,
    pub t_max: i64,
    pub quotient_half: f64,
    pub quotient_max: f64,
    pub growth: f64,
}

/// Probes canonical rays with direction entries in `{-2, ..., 2}` on the
/// first axis, comparing the quotient at the largest in-cube step and at
/// half of it.
pub fn probe_rays<F>(d: usize, r: i64, divergence: f64, q: F) -> Vec<RayEvidence>
where
    F: Fn(&[i64], &[i64], &[i64]) -> f64,
{
    let mut out = Vec::new();
    let point = |c: i64, t: i64| {
        let mut p: Coords = smallvec::smallvec![0; d];
        p[0] = c * t;
        p
    };
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                let m = a.abs().max(b.abs()).max(c.abs());
                if m == 0 || gcd(gcd(a.abs(), b.abs()), c.abs()) != 1 {
                    continue;
                }
                let t_max = r / m;
                let t_half = t_max / 2;
                if t_half < 1 {
                    continue;
                }
                let qh = q(&point(a, t_half), &point(b, t_half), &point(c, t_half));
                let qm = q(&point(a, t_max), &point(b, t_max), &point(c, t_max));
                if qh > 0.0 && qm >= divergence * qh {
                    out.push(RayEvidence {
                        direction: [a, b, c],
                        t_half,
                        t_max,
                        quotient_half: qh,
                        quotient_max: qm,
                        growth: qm / qh,
                    });
                }
            }
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Scans every seminorm with `|α| <= α_max`, `|β| <= β_max` at radii `R` and `2R`.
///
/// Verdicts: `violation` when some seminorm grows by the divergence factor
/// with its maximizer on the outer boundary (the witness records the triple
/// and the canonical rays along which the quotient grows);
/// `consistent-with-membership` when every seminorm is finite and stable;
/// `inconclusive` otherwise.
pub fn bt_membership_scan(t: &Tensor, omega: f64, n: u32, cfg: &MembershipConfig, r: i64) -> Result<Report> {
    check_radius(r)?;
    if cfg.alpha_max < 0 || cfg.beta_max < 0 {
        return Err(DboError::InvalidParameter("alpha_max and beta_max must be >= 0".into()));
    }
    let d = t.dim();
    let mut rows = Vec::new();
    let mut worst: Option<(usize, f64)> = None;
    let mut best_value: Option<(f64, Option<Triple>)> = None;
    for alpha in MultiIndex::all_up_to(d, cfg.alpha_max) {
        for beta in MultiIndex::all_up_to(d, cfg.beta_max) {
            let a = bt_seminorm(t, &alpha, &beta, omega, n, r)?;
            let b = bt_seminorm(t, &alpha, &beta, omega, n, 2 * r)?;
            let (rel, growth, status) = classify(&a, &b, cfg);
            if status == "divergent" && worst.is_none_or(|(_, g)| growth > g) {
                worst = Some((rows.len(), growth));
            }
            if best_value.as_ref().is_none_or(|(v, _)| b.value > *v) {
                best_value = Some((b.value, b.argmax.clone()));
            }
            rows.push(SeminormRow {
                alpha: alpha.clone(),
                beta: beta.clone(),
                value_r: a.value,
                value_2r: b.value,
                argmax_2r: b.argmax,
                relative_change: rel,
                growth,
                status,
            });
        }
    }
    let verdict = if worst.is_some() {
        Verdict::Violation
    } else if rows.iter().all(|row| row.status == "stable") {
        Verdict::ConsistentWithMembership
    } else {
        Verdict::Inconclusive
    };
    let params = json!({
        "omega": omega,
        "N": n,
        "alpha_max": cfg.alpha_max,
        "beta_max": cfg.beta_max,
        "stability": cfg.stability,
        "divergence": cfg.divergence,
        "radii": [r, 2 * r],
        "family": t.family(),
        "support_hint": t.hint().describe(),
    });
    let mut report = Report::new("bt-membership-scan", params, verdict);
    report.radius = Some(2 * r);
    if let Some((v, arg)) = best_value {
        report.value = Some(v);
        report.argmax = arg;
    }
    if let Some((idx, _)) = worst {
        let row = &rows[idx];
        let dt = t.finite_difference(&row.alpha, &row.beta)?;
        let expo = omega - (row.alpha.abs_sum() + row.beta.abs_sum()) as f64;
        let q = bt_quotient(expo, n);
        let rays = probe_rays(d, 2 * r, cfg.divergence, |j, k, l| q(j, k, l, dt.eval(j, k, l)));
        let on_diag_ray = rays.iter().any(|ray| ray.direction == [2, 1, 1]);
        report.argmax = row.argmax_2r.clone();
        report.boundary_ratio = Some(row.value_2r);
        report.witness = Some(json!({
            "alpha": row.alpha,
            "beta": row.beta,
            "triple": row.argmax_2r,
            "value_r": row.value_r,
            "value_2r": row.value_2r,
            "growth": row.growth,
            "diverging_rays": rays,
            "ray_j_eq_2k_eq_2l": on_diag_ray,
        }));
    }
    report.details = json!({ "seminorms": rows_to_json(&rows) });
    Ok(report)
}

fn rows_to_json(rows: &[SeminormRow]) -> Value {
    serde_json::to_value(rows).expect("rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{holder_triple, LatticePoint};
    use crate::tensor::SymbolFunction;

    fn origin_tensor(d: usize) -> Tensor {
        let o = LatticePoint::origin(d);
        Tensor::single_entry(&o, &o, &o, Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn origin_entry_norms_are_one() {
        let t = origin_tensor(1);
        for omega in [-1.0, 0.0, 2.0] {
            let s = norm_omega_n(&t, omega, 3, 4).unwrap();
            assert_eq!(s.value, 1.0);
            assert_eq!(s.argmax, Some(Triple::new(&[0], &[0], &[0])));
            assert_eq!(seminorm00(&t, omega, 3, 4).unwrap().value, 1.0);
            assert_eq!(norm_two_order(&t, omega, 1.0, 3, 4).unwrap().value, 1.0);
        }
    }

    #[test]
    fn single_offdiagonal_entry() {
        let t = Tensor::single_entry(
            &LatticePoint::new(&[0]).unwrap(),
            &LatticePoint::new(&[1]).unwrap(),
            &LatticePoint::new(&[0]).unwrap(),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        for n in 1..5u32 {
            let v = norm_omega_n(&t, 0.0, n, 3).unwrap().value;
            assert!((v - 2f64.powi(n as i32)).abs() < 1e-12 * v);
        }
        // |j-k| + |j-ℓ| = 2 gives ⟨2⟩^{2N} = 5^N.
        let t = Tensor::single_entry(
            &LatticePoint::new(&[0]).unwrap(),
            &LatticePoint::new(&[1]).unwrap(),
            &LatticePoint::new(&[-1]).unwrap(),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let v = norm_zero_n(&t, 2, 3).unwrap().value;
        assert!((v - 25.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_indicator_zero_norm_is_one() {
        let t = Tensor::diagonal_indicator(2, 3);
        assert_eq!(norm_zero_n(&t, 2, 5).unwrap().value, 1.0);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(n0_threshold(3, 0.0, 0.0, 0.0), 3.0);
        assert_eq!(n0_threshold(2, -1.0, 0.0, 3.0), 3.5);
        let s = 1.5;
        assert_eq!(n0_threshold(1, s / 2.0, s / 2.0, s / 2.0), 1.0 + 0.5 * s + s);
    }

    #[test]
    fn mixed_norm_hand_count() {
        let t = Tensor::dense_from_fn(1, 1, |_, _, _| Complex64::new(1.0, 0.0));
        let m = mixed_lebesgue_norm(&t, &holder_triple(2.0, 2.0).unwrap(), 1, true).unwrap();
        assert!((m.value - 9.0).abs() < 1e-12);
        assert_eq!(m.orders.len(), 6);
        assert!((m.min_over_orders.unwrap() - 9.0).abs() < 1e-12);
        let o = origin_tensor(2);
        let m = mixed_lebesgue_norm(&o, &holder_triple(1.0, f64::INFINITY).unwrap(), 2, false).unwrap();
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn theta_v_scan_reports_violation() {
        let v = crate::tensor::TorusCoefficient::constant(1, Complex64::new(1.0, 0.0));
        let t = Tensor::multiplication(v);
        let cfg = MembershipConfig {
            alpha_max: 1,
            beta_max: 1,
            ..Default::default()
        };
        let rep = bt_membership_scan(&t, 0.0, 2, &cfg, 10).unwrap();
        assert_eq!(rep.verdict, Verdict::Violation);
        let w = rep.witness.unwrap();
        assert_eq!(w["ray_j_eq_2k_eq_2l"], true);
    }

    #[test]
    fn constant_symbol_is_consistent_at_shifted_order() {
        let t = Tensor::theta_phi(1, SymbolFunction::constant(Complex64::new(1.0, 0.0)));
        let rep = bt_membership_scan(&t, 4.0, 2, &MembershipConfig::default(), 8).unwrap();
        assert_eq!(rep.verdict, Verdict::ConsistentWithMembership);
    }
}
