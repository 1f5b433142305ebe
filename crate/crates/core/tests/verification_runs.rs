mod common;

use common::*;
use dbo_core::lattice::{holder_triple, AxisBox, LatticePoint, MultiIndex, WeightedSequence};
use dbo_core::norms::{bt_membership_scan, MembershipConfig};
use dbo_core::report::Verdict;
use dbo_core::tensor::{SymbolFunction, Tensor, TorusCoefficient};
use dbo_core::verification::{
    boundedness_experiment, compactness_experiment, lemma_x_scan, negative_witness_scan, v_phi_scan,
    variable_coefficient_scan, BoundednessParams, CompactnessExperiment,
};

fn smooth_v(d: usize) -> TorusCoefficient {
    // V̂ supported in radius 2 with geometric decay.
    let entries: Vec<_> = cube_points(d, 2)
        .into_iter()
        .map(|p| {
            let s: i64 = p.iter().map(|x| x.abs()).sum();
            (LatticePoint::from(p), c(0.5f64.powi(s as i32 + 1)))
        })
        .collect();
    TorusCoefficient::new(WeightedSequence::new(d, AxisBox::cube(d, 2), entries).unwrap(), 6.0)
}

fn delta0(d: usize) -> WeightedSequence {
    WeightedSequence::delta(LatticePoint::origin(d), c(1.0))
}

#[test]
fn theta2_commutator_tails_decay_at_the_proof_rate() {
    let t = Tensor::theta2(1, SymbolFunction::inverse_bracket_power(6.0));
    let e = CompactnessExperiment::new(delta0(1), holder_triple(2.0, 2.0).unwrap(), 3, 12);
    let (curve, rep) = compactness_experiment(&t, &e).unwrap();
    assert!(curve.is_monotone());
    let slope = curve.fitted_slope.unwrap();
    println!("slope {slope}, details {}", rep.details["rate_constant"]);
    assert!(slope <= -(3.0 - 1.0) + 0.5);
    assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.to_json_pretty());
}

#[test]
fn trivial_commutators_vanish_exactly() {
    let tr = holder_triple(2.0, 2.0).unwrap();
    // Constant b on the whole input and output range.
    let b = WeightedSequence::constant_on(AxisBox::cube(1, 20), c(3.0));
    let t = Tensor::theta2(1, SymbolFunction::inverse_bracket_power(6.0));
    let mut e = CompactnessExperiment::new(b, tr, 3, 6);
    e.samples = 10;
    let (curve, _) = compactness_experiment(&t, &e).unwrap();
    assert!(curve.points.iter().all(|p| p.tail == 0.0));
    // Diagonal tensor, arbitrary b.
    let mut g = rng(41);
    let b = random_sequence(&mut g, 1, 3);
    let diag = Tensor::diagonal_indicator(1, 30);
    let mut e = CompactnessExperiment::new(b, tr, 3, 6);
    e.samples = 10;
    let (curve, rep) = compactness_experiment(&diag, &e).unwrap();
    assert!(curve.points.iter().all(|p| p.tail == 0.0));
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn boundedness_for_decaying_convolution() {
    let t = Tensor::theta2(1, SymbolFunction::inverse_bracket_power(4.0));
    let p = BoundednessParams::new(holder_triple(2.0, 2.0).unwrap(), 0.0, 2, 5).with_sampling(32, 5);
    let rep = boundedness_experiment(&t, &p).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    // Weighted version with s₁ = 1, s₂ = -1, so N₀ = d + 1 and N = 3 clears it.
    let p = BoundednessParams::new(holder_triple(1.0, f64::INFINITY).unwrap(), 0.0, 3, 4)
        .with_smoothness(1.0, -1.0)
        .with_sampling(32, 6);
    let t = Tensor::theta2(1, SymbolFunction::inverse_bracket_power(6.0));
    assert_eq!(boundedness_experiment(&t, &p).unwrap().verdict, Verdict::Pass);
}

#[test]
fn witness_scan_examples() {
    let one = Tensor::multiplication(TorusCoefficient::constant(1, c(1.0)));
    let rep = negative_witness_scan(&one, 0.0, 2, 40, 2.0).unwrap();
    assert_eq!(rep.verdict, Verdict::Violation);
    // Closed form along the ray: ⟨2t⟩^{4} / ⟨4t⟩^0.
    let q = rep.details["quotient_along_ray"].as_array().unwrap();
    for (i, v) in q.iter().enumerate() {
        let s = (i + 1) as f64;
        let want = bracket(2.0 * s).powi(4);
        assert!((v.as_f64().unwrap() - want).abs() <= 1e-12 * want);
    }
    let rep = negative_witness_scan(&one, 4.0, 2, 40, 2.0).unwrap();
    assert_ne!(rep.verdict, Verdict::Violation);
    let smooth = Tensor::multiplication(smooth_v(1));
    let rep = negative_witness_scan(&smooth, 0.0, 2, 40, 2.0).unwrap();
    assert_eq!(rep.verdict, Verdict::Violation);
    assert!(rep.witness.is_some());
    // The membership scan agrees at the same (ω, N).
    let scan = bt_membership_scan(&smooth, 0.0, 2, &MembershipConfig::default(), 10).unwrap();
    assert_ne!(scan.verdict, Verdict::ConsistentWithMembership);
}

#[test]
fn lemma_x_examples() {
    let cfg = MembershipConfig::default();
    let rep = lemma_x_scan(1, SymbolFunction::constant(c(1.0)), 2, &cfg, 20).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.summary());
    let mono = SymbolFunction::monomial(MultiIndex::new(&[1]), MultiIndex::new(&[2]));
    let rep = lemma_x_scan(1, mono, 2, &cfg, 20).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.summary());
    let rep = lemma_x_scan(1, SymbolFunction::inverse_bracket_power(1.0), 2, &cfg, 20).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.summary());
}

#[test]
fn v_phi_examples() {
    let cfg = MembershipConfig::default();
    let phi = SymbolFunction::inverse_bracket_power(1.0);
    let a = v_phi_scan(TorusCoefficient::constant(1, c(1.0)), phi.clone(), 2, &cfg, 10).unwrap();
    let b = lemma_x_scan(1, phi, 2, &cfg, 10).unwrap();
    assert_eq!(a.details["seminorms"], b.details["seminorms"]);
    assert_eq!(a.value, b.value);

    let rep = v_phi_scan(smooth_v(1), SymbolFunction::constant(c(1.0)), 2, &cfg, 20).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.summary());

    let terms = vec![
        (
            smooth_v(1),
            SymbolFunction::monomial(MultiIndex::new(&[1]), MultiIndex::new(&[0])),
        ),
        (
            TorusCoefficient::constant(1, c(0.5)),
            SymbolFunction::monomial(MultiIndex::new(&[0]), MultiIndex::new(&[1])),
        ),
    ];
    let rep = variable_coefficient_scan(terms, 2, &cfg, 20).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.summary());
}

#[test]
fn kinked_bracket_is_not_a_symbol() {
    // ⟨|x| + |y|⟩^{-1} is only Lipschitz across x = 0; second differences in k
    // near k = 0 do not gain the extra decay.
    let kinked = SymbolFunction::custom("kinked", -1.0, |x, y| c(bracket(x[0].abs() + y[0].abs()).powi(-1)));
    let rep = lemma_x_scan(1, kinked, 2, &MembershipConfig::default(), 20).unwrap();
    assert_ne!(rep.verdict, Verdict::Pass);
    let row = rep.details["seminorms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["status"] != "stable")
        .unwrap();
    assert_eq!(
        row["argmax_2r"]["k"][0]
            .as_i64()
            .unwrap()
            .abs()
            .min(row["argmax_2r"]["l"][0].as_i64().unwrap().abs()),
        1
    );
}
