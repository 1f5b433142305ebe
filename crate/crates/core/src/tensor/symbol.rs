//! Symbol functions `Φ: R^d × R^d → C` used by the convolution-plane and
//! variable-coefficient tensor families.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::{bracket_pow, MultiIndex};

type SymbolFn = dyn Fn(&[f64], &[f64]) -> Complex64 + Send + Sync;
type DerivFn = dyn Fn(&MultiIndex, &MultiIndex, &[f64], &[f64]) -> Complex64 + Send + Sync;

#[derive(Clone)]
pub enum SymbolKind {
    Constant(Complex64),
    /// `⟨(x, y)⟩^{-power}`, the bracket of the joint Euclidean length.
    InverseBracketPower {
        power: f64,
    },
    /// `(2πix)^a (2πiy)^b`.
    Monomial {
        a: MultiIndex,
        b: MultiIndex,
    },
    /// Smooth bump `exp(1 - 1/(1 - t²))` with `t = |(x, y)| / radius`, zero for `t >= 1`.
    SmoothCutoff {
        radius: f64,
    },
    Custom {
        name: String,
        f: Arc<SymbolFn>,
        deriv: Option<Arc<DerivFn>>,
    },
}

/// A symbol together with its declared order `ω`.
#[derive(Clone)]
pub struct SymbolFunction {
    kind: SymbolKind,
    order: f64,
}

impl fmt::Debug for SymbolFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolFunction({}, order {})", self.name(), self.order)
    }
}

impl SymbolFunction {
    pub fn constant(c: Complex64) -> Self {
        SymbolFunction {
            kind: SymbolKind::Constant(c),
            order: 0.0,
        }
    }

    pub fn inverse_bracket_power(power: f64) -> Self {
        SymbolFunction {
            kind: SymbolKind::InverseBracketPower { power },
            order: -power,
        }
    }

    pub fn monomial(a: MultiIndex, b: MultiIndex) -> Self {
        assert!(
            a.is_nonnegative() && b.is_nonnegative(),
            "monomial exponents must be nonnegative"
        );
        let order = (a.abs_sum() + b.abs_sum()) as f64;
        SymbolFunction {
            kind: SymbolKind::Monomial { a, b },
            order,
        }
    }

    pub fn smooth_cutoff(radius: f64) -> Self {
        assert!(radius > 0.0, "cutoff radius must be positive");
        SymbolFunction {
            kind: SymbolKind::SmoothCutoff { radius },
            order: 0.0,
        }
    }

    pub fn custom(
        name: impl Into<String>,
        order: f64,
        f: impl Fn(&[f64], &[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        SymbolFunction {
            kind: SymbolKind::Custom {
                name: name.into(),
                f: Arc::new(f),
                deriv: None,
            },
            order,
        }
    }

    /// Attaches an exact derivative evaluator to a custom symbol.
    pub fn with_derivative(
        mut self,
        d: impl Fn(&MultiIndex, &MultiIndex, &[f64], &[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        if let SymbolKind::Custom { deriv, .. } = &mut self.kind {
            *deriv = Some(Arc::new(d));
        }
        self
    }

    /// Overrides the declared order.
    pub fn with_order(mut self, order: f64) -> Self {
        self.order = order;
        self
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match &self.kind {
            SymbolKind::Constant(c) => format!("constant({c})"),
            SymbolKind::InverseBracketPower { power } => format!("inverse_bracket_power({power})"),
            SymbolKind::Monomial { a, b } => {
                format!("monomial(a={:?}, b={:?})", a.entries(), b.entries())
            }
            SymbolKind::SmoothCutoff { radius } => format!("smooth_cutoff({radius})"),
            SymbolKind::Custom { name, .. } => name.clone(),
        }
    }

    /// Exponents `(a, b)` when the symbol is a monomial.
    pub fn as_monomial(&self) -> Option<(&MultiIndex, &MultiIndex)> {
        match &self.kind {
            SymbolKind::Monomial { a, b } => Some((a, b)),
            _ => None,
        }
    }

    pub fn evaluate(&self, x: &[f64], y: &[f64]) -> Complex64 {
        match &self.kind {
            SymbolKind::Constant(c) => *c,
            SymbolKind::InverseBracketPower { power } => {
                let s = norm(x).hypot(norm(y));
                Complex64::new(bracket_pow(s, -power), 0.0)
            }
            SymbolKind::Monomial { a, b } => monomial_at(a, x) * monomial_at(b, y),
            SymbolKind::SmoothCutoff { radius } => {
                let t2 = (x.iter().chain(y).map(|v| v * v).sum::<f64>()) / (radius * radius);
                if t2 >= 1.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new((1.0 - 1.0 / (1.0 - t2)).exp(), 0.0)
                }
            }
            SymbolKind::Custom { f, .. } => f(x, y),
        }
    }

    /// Evaluation at lattice points.
    pub fn evaluate_lattice(&self, k: &[i64], l: &[i64]) -> Complex64 {
        let x: smallvec::SmallVec<[f64; 4]> = k.iter().map(|&v| v as f64).collect();
        let y: smallvec::SmallVec<[f64; 4]> = l.iter().map(|&v| v as f64).collect();
        self.evaluate(&x, &y)
    }

    /// Exact `∂_x^α ∂_y^β Φ(x, y)` when available.
    pub fn derivative(&self, alpha: &MultiIndex, beta: &MultiIndex, x: &[f64], y: &[f64]) -> Option<Complex64> {
        match &self.kind {
            SymbolKind::Constant(c) => Some(if alpha.is_zero() && beta.is_zero() {
                *c
            } else {
                Complex64::new(0.0, 0.0)
            }),
            SymbolKind::Monomial { a, b } => Some(monomial_derivative(a, alpha, x) * monomial_derivative(b, beta, y)),
            SymbolKind::Custom { deriv: Some(d), .. } => Some(d(alpha, beta, x, y)),
            _ => None,
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `(2πix)^a = Π_m (2πi x_m)^{a_m}`.
fn monomial_at(a: &MultiIndex, x: &[f64]) -> Complex64 {
    let mut out = Complex64::new(1.0, 0.0);
    for (&am, &xm) in a.entries().iter().zip(x) {
        let base = Complex64::new(0.0, 2.0 * PI * xm);
        for _ in 0..am {
            out *= base;
        }
    }
    out
}

/// `∂^α (2πix)^a`.
fn monomial_derivative(a: &MultiIndex, alpha: &MultiIndex, x: &[f64]) -> Complex64 {
    let mut out = Complex64::new(1.0, 0.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    for (m, (&am, &xm)) in a.entries().iter().zip(x).enumerate() {
        let dm = alpha.entries().get(m).copied().unwrap_or(0);
        if dm < 0 {
            return Complex64::new(0.0, 0.0);
        }
        if dm > am {
            return Complex64::new(0.0, 0.0);
        }
        // (2πi)^{a_m} · a_m!/(a_m - d_m)! · x^{a_m - d_m}
        let mut falling = 1.0;
        for t in 0..dm {
            falling *= (am - t) as f64;
        }
        out *= two_pi_i.powi(am as i32) * falling * xm.powi((am - dm) as i32);
    }
    out
}

/// Registry entry for symbols read from files. Arbitrary code is never accepted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum SymbolSpec {
    Constant {
        re: f64,
        #[serde(default)]
        im: f64,
    },
    InverseBracketPower {
        power: f64,
    },
    Monomial {
        a: Vec<i64>,
        b: Vec<i64>,
    },
    SmoothCutoff {
        radius: f64,
        #[serde(default)]
        order: Option<f64>,
    },
}

impl SymbolSpec {
    pub fn build(&self) -> crate::Result<SymbolFunction> {
        use crate::DboError;
        Ok(match self {
            SymbolSpec::Constant { re, im } => SymbolFunction::constant(Complex64::new(*re, *im)),
            SymbolSpec::InverseBracketPower { power } => SymbolFunction::inverse_bracket_power(*power),
            SymbolSpec::Monomial { a, b } => {
                if a.len() != b.len() || a.iter().chain(b).any(|&v| v < 0) {
                    return Err(DboError::InvalidParameter(
                        "monomial exponents must be nonnegative and of equal length".into(),
                    ));
                }
                SymbolFunction::monomial(MultiIndex::new(a), MultiIndex::new(b))
            }
            SymbolSpec::SmoothCutoff { radius, order } => {
                if *radius <= 0.0 {
                    return Err(DboError::InvalidParameter("cutoff radius must be positive".into()));
                }
                let s = SymbolFunction::smooth_cutoff(*radius);
                match order {
                    Some(o) => s.with_order(*o),
                    None => s,
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_values() {
        let phi = SymbolFunction::monomial(MultiIndex::new(&[1]), MultiIndex::new(&[0]));
        assert_eq!(phi.evaluate_lattice(&[2], &[1]), Complex64::new(0.0, 4.0 * PI));
        assert_eq!(phi.order(), 1.0);
        let phi = SymbolFunction::monomial(MultiIndex::new(&[2]), MultiIndex::new(&[1]));
        // (2πi)^3 · 3² · 2 = -i·8π³·18
        let v = phi.evaluate_lattice(&[3], &[2]);
        assert!((v - Complex64::new(0.0, -8.0 * PI.powi(3) * 18.0)).norm() < 1e-9);
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-4;
        let a = MultiIndex::new(&[2, 1]);
        let b = MultiIndex::new(&[1, 0]);
        let phi = SymbolFunction::monomial(a, b);
        let x = [0.3, -0.7];
        let y = [1.1, 0.4];
        for (axis, wrt_x) in [(0usize, true), (1, true), (0, false)] {
            let mut alpha = MultiIndex::zero(2);
            let mut beta = MultiIndex::zero(2);
            let (mut xp, mut xm, mut yp, mut ym) = (x, x, y, y);
            if wrt_x {
                alpha = MultiIndex::new(&if axis == 0 { [1, 0] } else { [0, 1] });
                xp[axis] += h;
                xm[axis] -= h;
            } else {
                beta = MultiIndex::new(&[1, 0]);
                yp[axis] += h;
                ym[axis] -= h;
            }
            let fd = (phi.evaluate(&xp, &yp) - phi.evaluate(&xm, &ym)) / (2.0 * h);
            let exact = phi.derivative(&alpha, &beta, &x, &y).unwrap();
            assert!(
                (fd - exact).norm() <= 1e-4 * (1.0 + exact.norm()),
                "fd {fd} vs exact {exact}"
            );
        }
    }

    #[test]
    fn inverse_bracket_and_cutoff() {
        let phi = SymbolFunction::inverse_bracket_power(2.0);
        assert!((phi.evaluate_lattice(&[3], &[-4]).re - 1.0 / 26.0).abs() < 1e-15);
        assert_eq!(phi.order(), -2.0);
        let chi = SymbolFunction::smooth_cutoff(2.0);
        assert_eq!(chi.evaluate(&[0.0], &[0.0]).re, 1.0);
        assert_eq!(chi.evaluate(&[2.0], &[0.0]).re, 0.0);
    }

    #[test]
    fn registry_parses() {
        let s: SymbolSpec = serde_json::from_str(r#"{"name":"monomial","params":{"a":[1],"b":[0]}}"#).unwrap();
        let phi = s.build().unwrap();
        assert!(phi.as_monomial().is_some());
        let bad: SymbolSpec = serde_json::from_str(r#"{"name":"monomial","params":{"a":[-1],"b":[0]}}"#).unwrap();
        assert!(bad.build().is_err());
    }
}
