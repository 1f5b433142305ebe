//! Desk-scale experiments: boundedness certificates against sampled ratios,
//! commutator tail decay, divergence witnesses and class-membership scans.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::lattice::{bracket_pow, euclid, euclid_diff, AxisBox, Exponent, HolderTriple, MultiIndex, WeightedSequence};
use crate::norms::{bt_membership_scan, bt_quotient, n0_threshold, scan_tensor, MembershipConfig};
use crate::operator::{
    commutator, empirical_operator_norm, schur_upper_bound, unit_pairs, CommutatorSlot, SchurOptions,
};
use crate::report::{Report, Triple, Verdict};
use crate::tensor::{SymbolFunction, Tensor, TorusCoefficient};
use crate::DboError;

/// Floating-point slack added to certified bounds.
pub const DEFAULT_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundednessParams {
    pub triple: HolderTriple,
    pub s1: f64,
    pub s2: f64,
    pub omega: f64,
    pub n: u32,
    pub radius: i64,
    pub samples: usize,
    pub seed: u64,
    pub slack: f64,
    pub n1: Option<f64>,
}

impl BoundednessParams {
    pub fn new(triple: HolderTriple, omega: f64, n: u32, radius: i64) -> Self {
        BoundednessParams {
            triple,
            s1: 0.0,
            s2: 0.0,
            omega,
            n,
            radius,
            samples: 64,
            seed: 0,
            slack: DEFAULT_SLACK,
            n1: None,
        }
    }

    pub fn with_smoothness(mut self, s1: f64, s2: f64) -> Self {
        self.s1 = s1;
        self.s2 = s2;
        self
    }

    pub fn with_sampling(mut self, samples: usize, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }
}

/// Certified upper bound against random, basis and ascent ratios.
///
/// `N <= N₀` yields a `hypothesis-unmet` report rather than an error.
pub fn boundedness_experiment(t: &Tensor, p: &BoundednessParams) -> Result<Report> {
    p.triple.require_banach_target()?;
    let params = serde_json::to_value(p)?;
    let n0 = n0_threshold(t.dim(), p.omega, p.s1, p.s2);
    if (p.n as f64) <= n0 {
        let mut rep = Report::new("boundedness-experiment", params, Verdict::HypothesisUnmet);
        rep.radius = Some(p.radius);
        rep.details = json!({ "n0": n0, "reason": format!("N = {} does not exceed N0 = {n0}", p.n) });
        return Ok(rep);
    }
    let mut cert = schur_upper_bound(
        t,
        &p.triple,
        p.s1,
        p.s2,
        p.omega,
        p.n,
        p.radius,
        SchurOptions { n1: p.n1 },
    )?;
    let emp = empirical_operator_norm(t, &p.triple, p.s1, p.s2, p.omega, p.radius, p.samples, p.seed)?;
    cert.lower_empirical = Some(emp.value);
    let limit = cert.upper + p.slack;
    let worst = emp
        .sample_ratios
        .iter()
        .copied()
        .chain([emp.basis_max, emp.ascent_value])
        .fold(0.0, f64::max);
    let violations = emp.sample_ratios.iter().filter(|q| **q > limit).count()
        + usize::from(emp.basis_max > limit)
        + usize::from(emp.ascent_value > limit);
    let verdict = if violations == 0 { Verdict::Pass } else { Verdict::Fail };
    let mut rep = Report::new("boundedness-experiment", params, verdict);
    rep.value = Some(worst);
    rep.radius = Some(p.radius);
    rep.argmax = cert.theta_norm_argmax.clone();
    if violations > 0 {
        rep.witness = Some(json!({
            "best_f": emp.best_f,
            "best_g": emp.best_g,
            "ratio": worst,
            "upper": cert.upper,
        }));
    }
    rep.details = json!({
        "certificate": cert,
        "empirical": {
            "value": emp.value,
            "basis_max": emp.basis_max,
            "ascent_value": emp.ascent_value,
            "sample_max": emp.sample_ratios.iter().copied().fold(0.0, f64::max),
            "violations": violations,
        },
    });
    Ok(rep)
}

/// Commutator tail experiment on the radius-`R` input cube with output
/// cube of radius `2R`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactnessExperiment {
    pub b: WeightedSequence,
    pub triple: HolderTriple,
    pub epsilons: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    /// Decay order declared for `|Θ| ≲ ⟨|j-k| + |j-ℓ|⟩^{-2N}`.
    pub n: u32,
    pub radius: i64,
    pub slot: CommutatorSlot,
    /// Added to `-(N - d/r)` when judging the fitted slope.
    pub slope_slack: f64,
}

impl CompactnessExperiment {
    pub fn new(b: WeightedSequence, triple: HolderTriple, n: u32, radius: i64) -> Self {
        CompactnessExperiment {
            b,
            triple,
            epsilons: vec![1e-1, 1e-2, 1e-3, 1e-4],
            samples: 100,
            seed: 0,
            n,
            radius,
            slot: CommutatorSlot::First,
            slope_slack: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailPoint {
    pub j0: i64,
    pub tail: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailCurve {
    pub points: Vec<TailPoint>,
    /// Least-squares slope of `log tail` against `log j₀` over positive tails with `j₀ >= 2 j₁`.
    #[serde(rename = "fittedSlope")]
    pub fitted_slope: Option<f64>,
}

impl TailCurve {
    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[1].tail <= w[0].tail)
    }

    /// Smallest `j₀` with `tail(j₀) < ε`.
    pub fn first_below(&self, eps: f64) -> Option<i64> {
        self.points.iter().find(|p| p.tail < eps).map(|p| p.j0)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("j0,tail\n");
        for p in &self.points {
            s.push_str(&format!("{},{:e}\n", p.j0, p.tail));
        }
        s
    }
}

/// Constants realizing each step of the tail estimate on the truncation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateConstant {
    /// `j₁` clamped below by 1.
    pub j1: i64,
    pub b_sup: f64,
    /// `max |Θ| ⟨j-k⟩^N ⟨j-ℓ⟩^N`.
    pub decay: f64,
    /// `Σ_m ⟨m⟩^{-N}` over the difference cube.
    pub kernel_sum: f64,
    /// `max ⟨j⟩^N / ⟨j-k⟩^N` over `|k| <= j₁`, `|j| > 2j₁`.
    pub shift: f64,
    /// `#{|k| <= j₁}^{1/p'} / j₁^{d/p'}` (`q'` for slot 2).
    pub count: f64,
    /// `max_{j₀} ‖1_{|j|>j₀} ⟨j⟩^{-N}‖_r / ⟨j₀⟩^{-N+d/r}`.
    pub tail_sum: f64,
    pub c: f64,
}

impl RateConstant {
    pub fn bound(&self, d: usize, p_dual_recip: f64, n: u32, r_recip: f64, j0: i64) -> f64 {
        self.c
            * (self.j1 as f64).powf(d as f64 * p_dual_recip)
            * bracket_pow(j0 as f64, -(n as f64) + d as f64 * r_recip)
    }
}

fn isqrt_ceil(v: i64) -> i64 {
    let mut s = (v as f64).sqrt() as i64;
    while s * s > v {
        s -= 1;
    }
    while s * s < v {
        s += 1;
    }
    s
}

/// `m(j)`: least integer with `|j| <= m`, so `|j| > j₀` iff `m(j) > j₀`.
fn shell(j: &[i64]) -> i64 {
    isqrt_ceil(j.iter().map(|c| c * c).sum())
}

/// Exponent of the input restricted to the support of `b`.
fn restricted_exponent(e: &CompactnessExperiment) -> Exponent {
    match e.slot {
        CommutatorSlot::First => e.triple.p,
        CommutatorSlot::Second => e.triple.q,
    }
}

fn rate_constant(t: &Tensor, e: &CompactnessExperiment, out_r: i64) -> RateConstant {
    let d = t.dim();
    let nf = e.n as f64;
    let j1_raw = e.b.iter().map(|(k, _)| shell(k.coords())).max().unwrap_or(0);
    let j1 = j1_raw.max(1);
    let b_sup = e.b.max_abs();
    let decay = scan_tensor(t, out_r.max(e.radius), |j, k, l, v| {
        if AxisBox::cube(d, e.radius).contains(k) && AxisBox::cube(d, e.radius).contains(l) {
            v.norm() * bracket_pow(euclid_diff(j, k), nf) * bracket_pow(euclid_diff(j, l), nf)
        } else {
            0.0
        }
    })
    .value;
    let kernel_sum: f64 = AxisBox::cube(d, out_r + e.radius)
        .points()
        .map(|m| bracket_pow(euclid(&m), -nf))
        .sum();
    let kcube: Vec<_> = AxisBox::cube(d, j1_raw)
        .points()
        .filter(|k| shell(k) <= j1_raw)
        .collect();
    let mut shift: f64 = 0.0;
    for j in AxisBox::cube(d, out_r).points() {
        if shell(&j) <= 2 * j1 {
            continue;
        }
        for k in &kcube {
            shift = shift.max(bracket_pow(euclid(&j), nf) / bracket_pow(euclid_diff(&j, k), nf));
        }
    }
    let pdr = 1.0 - restricted_exponent(e).reciprocal();
    let count = (kcube.len() as f64).powf(pdr) / (j1 as f64).powf(d as f64 * pdr);
    let r = e.triple.r.value();
    let rr = e.triple.r.reciprocal();
    let mut by_shell = vec![0.0; (d as f64).sqrt().ceil() as usize * out_r as usize + 2];
    for j in AxisBox::cube(d, out_r).points() {
        by_shell[shell(&j) as usize] += bracket_pow(euclid(&j), -nf * r);
    }
    let mut tail_sum: f64 = 0.0;
    let mut acc = 0.0;
    for j0 in (0..by_shell.len()).rev() {
        let above = acc;
        acc += by_shell[j0];
        if above > 0.0 {
            let ratio = above.powf(rr) / bracket_pow(j0 as f64, -nf + d as f64 * rr);
            tail_sum = tail_sum.max(ratio);
        }
    }
    RateConstant {
        j1,
        b_sup,
        decay,
        kernel_sum,
        shift,
        count,
        tail_sum,
        c: b_sup * decay * kernel_sum * shift * count * tail_sum,
    }
}

/// Tail curve of `[T_Θ, b]` over sampled unit-ball pairs with the proof-rate
/// and slope checks. `r = ∞` is rejected.
pub fn compactness_experiment(t: &Tensor, e: &CompactnessExperiment) -> Result<(TailCurve, Report)> {
    if e.triple.r.is_infinite() {
        return Err(DboError::InvalidParameter(
            "compactness experiments require r < infinity".into(),
        ));
    }
    if e.radius < 1 || e.samples < 1 {
        return Err(DboError::InvalidParameter("radius and samples must be >= 1".into()));
    }
    if e.epsilons.iter().any(|x| x.is_nan() || *x <= 0.0) {
        return Err(DboError::InvalidParameter("epsilons must be positive".into()));
    }
    if e.n as usize <= t.dim() {
        return Err(DboError::InvalidParameter(format!(
            "N = {} must exceed d = {}",
            e.n,
            t.dim()
        )));
    }
    let d = t.dim();
    let out_r = 2 * e.radius;
    let r = e.triple.r.value();
    let shells = (d as f64).sqrt().ceil() as usize * out_r as usize + 2;
    let pairs = unit_pairs(d, &e.triple, e.radius, e.samples, e.seed);
    let curves: Vec<Vec<f64>> = pairs
        .par_iter()
        .map(|(f, g)| -> Result<Vec<f64>> {
            let c = commutator(t, &e.b, e.slot, f, g, out_r)?;
            let mut by_shell = vec![0.0; shells];
            for (j, v) in c.iter() {
                by_shell[shell(j.coords()) as usize] += v.norm().powf(r);
            }
            let mut tails = vec![0.0; shells];
            let mut acc = 0.0;
            for j0 in (0..shells).rev() {
                tails[j0] = acc;
                acc += by_shell[j0];
            }
            Ok(tails.into_iter().map(|x: f64| x.powf(1.0 / r)).collect())
        })
        .collect::<Result<_>>()?;
    let points: Vec<TailPoint> = (0..shells)
        .map(|j0| TailPoint {
            j0: j0 as i64,
            tail: curves.iter().map(|c| c[j0]).fold(0.0, f64::max),
        })
        .collect();

    let rc = rate_constant(t, e, out_r);
    let pdr = 1.0 - restricted_exponent(e).reciprocal();
    let rr = e.triple.r.reciprocal();
    let mut rate_violations = Vec::new();
    for p in &points {
        if p.j0 >= 2 * rc.j1 {
            let bound = rc.bound(d, pdr, e.n, rr, p.j0);
            if p.tail > bound + DEFAULT_SLACK {
                rate_violations.push(json!({ "j0": p.j0, "tail": p.tail, "bound": bound }));
            }
        }
    }
    let fit: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.j0 >= 2 * rc.j1 && p.tail > 0.0)
        .map(|p| ((p.j0 as f64).ln(), p.tail.ln()))
        .collect();
    let fitted_slope = least_squares_slope(&fit);
    let curve = TailCurve { points, fitted_slope };
    let monotone = curve.is_monotone();
    let target = -(e.n as f64 - d as f64 * rr) + e.slope_slack;
    let slope_ok = fitted_slope.is_none_or(|s| s <= target);
    let verdict = if monotone && rate_violations.is_empty() && slope_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let j0_for_eps: Vec<_> = e
        .epsilons
        .iter()
        .map(|&eps| json!({ "epsilon": eps, "j0": curve.first_below(eps) }))
        .collect();
    let params = json!({
        "triple": e.triple,
        "N": e.n,
        "radius": e.radius,
        "output_radius": out_r,
        "samples": e.samples,
        "seed": e.seed,
        "slot": e.slot,
        "epsilons": e.epsilons,
        "slope_slack": e.slope_slack,
        "b": e.b,
        "family": t.family(),
    });
    let mut rep = Report::new("compactness-experiment", params, verdict);
    rep.value = curve.points.first().map(|p| p.tail);
    rep.radius = Some(out_r);
    rep.boundary_ratio = curve.points.iter().rev().find(|p| p.j0 <= out_r).map(|p| p.tail);
    if !rate_violations.is_empty() {
        rep.witness = Some(json!({ "rate_violations": rate_violations }));
    }
    rep.details = json!({
        "tail_curve": curve,
        "monotone": monotone,
        "slope_target": target,
        "slope_ok": slope_ok,
        "j0_for_epsilon": j0_for_eps,
        "rate_constant": rc,
    });
    Ok((curve, rep))
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Evaluates the undifferenced quotient along `j = 2k = 2ℓ = 2t e₁` for
/// `|j| <= R_max` and reports a violation when it grows by `divergence`
/// between `|j| = R_max/2` and `|j| = R_max`.
pub fn negative_witness_scan(t: &Tensor, omega: f64, n: u32, r_max: i64, divergence: f64) -> Result<Report> {
    if r_max < 4 {
        return Err(DboError::InvalidParameter("r_max must be >= 4".into()));
    }
    crate::norms::check_decay_order(n)?;
    let d = t.dim();
    let q = bt_quotient(omega, n);
    let at = |s: i64| -> (Triple, f64) {
        let mut j = vec![0i64; d];
        let mut k = vec![0i64; d];
        j[0] = 2 * s;
        k[0] = s;
        (Triple::new(&j, &k, &k), q(&j, &k, &k, t.eval(&j, &k, &k)))
    };
    let t_max = r_max / 2;
    let t_half = t_max / 2;
    let curve: Vec<f64> = (1..=t_max).map(|s| at(s).1).collect();
    let (_, q_half) = at(t_half);
    let (tri_max, q_max) = at(t_max);
    let growth = if q_half > 0.0 {
        q_max / q_half
    } else if q_max > 0.0 {
        f64::INFINITY
    } else {
        1.0
    };
    let divergent = growth >= divergence;
    let verdict = if divergent {
        Verdict::Violation
    } else {
        Verdict::ConsistentWithMembership
    };
    let params = json!({
        "omega": omega,
        "N": n,
        "r_max": r_max,
        "divergence": divergence,
        "family": t.family(),
        "ray": "j = 2k = 2l along the first axis",
    });
    let mut rep = Report::new("negative-witness", params, verdict);
    rep.value = Some(q_max);
    rep.radius = Some(r_max);
    rep.argmax = Some(tri_max.clone());
    rep.boundary_ratio = Some(q_max);
    if divergent {
        rep.witness = Some(json!({
            "triple": tri_max,
            "quotient_half": q_half,
            "quotient_max": q_max,
            "growth": growth,
        }));
    }
    rep.details = json!({ "quotient_along_ray": curve, "growth": growth });
    Ok(rep)
}

/// Row of the reduced plane inequality: `max |Δ₂^α Δ₃^β Θ| / ⟨|k| + |j-k|⟩^{ω-|α|-|β|}` on `j = k + ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneConstant {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub value_r: f64,
    pub value_2r: f64,
    pub argmax_2r: Option<Triple>,
    pub stable: bool,
}

fn plane_constants(t: &Tensor, omega: f64, cfg: &MembershipConfig, r: i64) -> Result<Vec<PlaneConstant>> {
    let d = t.dim();
    let mut rows = Vec::new();
    for alpha in MultiIndex::all_up_to(d, cfg.alpha_max) {
        for beta in MultiIndex::all_up_to(d, cfg.beta_max) {
            let dt = t.finite_difference(&alpha, &beta)?;
            let expo = omega - (alpha.abs_sum() + beta.abs_sum()) as f64;
            let q = |j: &[i64], k: &[i64], l: &[i64], v: Complex64| {
                if j.iter().zip(k).zip(l).all(|((a, b), c)| *a == b + c) {
                    v.norm() / bracket_pow(euclid(k) + euclid_diff(j, k), expo)
                } else {
                    0.0
                }
            };
            let a = scan_tensor(&dt, r, q);
            let b = scan_tensor(&dt, 2 * r, q);
            let stable = if a.value == 0.0 {
                b.value == 0.0
            } else {
                (b.value - a.value).abs() / a.value <= cfg.stability
            };
            rows.push(PlaneConstant {
                alpha: alpha.clone(),
                beta,
                value_r: a.value,
                value_2r: b.value,
                argmax_2r: b.argmax,
                stable,
            });
        }
    }
    Ok(rows)
}

fn membership_with_plane(
    kind: &str,
    t: &Tensor,
    symbol_order: f64,
    n: u32,
    cfg: &MembershipConfig,
    r: i64,
) -> Result<Report> {
    let order = symbol_order + 2.0 * n as f64;
    let scan = bt_membership_scan(t, order, n, cfg, r)?;
    let plane = plane_constants(t, symbol_order, cfg, r)?;
    let plane_ok = plane.iter().all(|p| p.stable);
    let verdict = match scan.verdict {
        Verdict::ConsistentWithMembership if plane_ok => Verdict::Pass,
        Verdict::Violation => Verdict::Fail,
        _ => Verdict::Inconclusive,
    };
    let mut params = scan.params.clone();
    params["symbol_order"] = json!(symbol_order);
    let mut rep = Report::new(kind, params, verdict);
    rep.value = scan.value;
    rep.argmax = scan.argmax.clone();
    rep.radius = scan.radius;
    rep.boundary_ratio = scan.boundary_ratio;
    rep.witness = scan.witness.clone();
    rep.details = json!({
        "membership_verdict": scan.verdict,
        "seminorms": scan.details["seminorms"],
        "plane_constants": plane,
        "plane_constants_stable": plane_ok,
    });
    Ok(rep)
}

/// Membership of `Θ_Φ` at order `ω + 2N` plus the reduced plane inequality,
/// where `ω` is the declared order of `Φ`.
pub fn lemma_x_scan(d: usize, phi: SymbolFunction, n: u32, cfg: &MembershipConfig, r: i64) -> Result<Report> {
    let order = phi.order();
    let t = Tensor::theta_phi(d, phi);
    membership_with_plane("lemma-x", &t, order, n, cfg, r)
}

/// Membership of `Θ_{V,Φ}` at order `ω + 2N` plus the reduced plane inequality.
pub fn v_phi_scan(v: TorusCoefficient, phi: SymbolFunction, n: u32, cfg: &MembershipConfig, r: i64) -> Result<Report> {
    let order = phi.order();
    let t = Tensor::v_phi(v, phi);
    membership_with_plane("v-phi", &t, order, n, cfg, r)
}

/// Same criteria for a finite sum of `Θ_{V,Φ}` terms at the largest declared order.
pub fn variable_coefficient_scan(
    terms: Vec<(TorusCoefficient, SymbolFunction)>,
    n: u32,
    cfg: &MembershipConfig,
    r: i64,
) -> Result<Report> {
    let order = terms.iter().map(|(_, p)| p.order()).fold(f64::NEG_INFINITY, f64::max);
    let t = Tensor::variable_coefficient(terms)?;
    membership_with_plane("variable-coefficient", &t, order, n, cfg, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{holder_triple, LatticePoint};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn diagonal_indicator_bound_passes() {
        let t = Tensor::diagonal_indicator(1, 3);
        let p = BoundednessParams::new(holder_triple(2.0, 2.0).unwrap(), 0.0, 2, 3).with_sampling(16, 3);
        let rep = boundedness_experiment(&t, &p).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let p = BoundednessParams::new(holder_triple(2.0, 2.0).unwrap(), 0.0, 1, 3);
        assert_eq!(
            boundedness_experiment(&t, &p).unwrap().verdict,
            Verdict::HypothesisUnmet
        );
    }

    #[test]
    fn zero_symbol_has_zero_tail() {
        let t = Tensor::theta2(1, SymbolFunction::inverse_bracket_power(6.0));
        let e = CompactnessExperiment::new(WeightedSequence::zero(1), holder_triple(2.0, 2.0).unwrap(), 3, 4);
        let (curve, rep) = compactness_experiment(&t, &e).unwrap();
        assert!(curve.points.iter().all(|p| p.tail == 0.0));
        assert_eq!(curve.first_below(1e-3), Some(0));
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn infinite_target_is_rejected() {
        let t = Tensor::diagonal_indicator(1, 3);
        let b = WeightedSequence::delta(LatticePoint::origin(1), c(1.0));
        let e = CompactnessExperiment::new(b, holder_triple(f64::INFINITY, f64::INFINITY).unwrap(), 2, 3);
        assert!(compactness_experiment(&t, &e).is_err());
    }

    #[test]
    fn witness_on_constant_potential() {
        let v = TorusCoefficient::constant(1, c(1.0));
        let t = Tensor::multiplication(v);
        let rep = negative_witness_scan(&t, 0.0, 2, 40, 2.0).unwrap();
        assert_eq!(rep.verdict, Verdict::Violation);
        let rep = negative_witness_scan(&t, 4.0, 2, 40, 2.0).unwrap();
        assert_eq!(rep.verdict, Verdict::ConsistentWithMembership);
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..10)
            .map(|x| ((x as f64).ln(), -2.0 * (x as f64).ln() + 0.3))
            .collect();
        assert!((least_squares_slope(&pts).unwrap() + 2.0).abs() < 1e-12);
    }
}
