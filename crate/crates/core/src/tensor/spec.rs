//! JSON description of tensors: `{ "d": int, "family": string, "params": {...} }`.
//!
//! | family | params |
//! |---|---|
//! | `dense` | `radius`, `entries: [[j.., k.., l.., re, im], ...]` |
//! | `diagonal-cutoff` | `theta` (sequence JSON), `M` |
//! | `diagonal-indicator` | `radius` |
//! | `convolution` | `mode` (`phi-of-kl` or `phi-of-differences`), `phi` (symbol registry entry) |
//! | `monomial` | `a`, `b` |
//! | `multiplication` | `v`: `{coeffs, K}` |
//! | `variable-coefficient` | `terms: [{v, phi}, ...]` |
//! | `separable` | `sigma1`, `sigma2` (matrix JSON) |
//! | `shifted` | `inner`, `slot` (2 or 3), `axis` (0-based), `steps` |
//! | `differenced` | `inner`, `alpha`, `beta` |
//! | `transposed` | `inner`, `which` (1 or 2) |

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{ConvolutionMode, Matrix, Slot, SymbolSpec, Tensor, TorusCoefficient, Transpose};
use crate::error::{check_dim, Result};
use crate::lattice::{AxisBox, Coords, MultiIndex, WeightedSequence};
use crate::DboError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorSpec {
    pub d: usize,
    pub family: String,
    #[serde(default)]
    pub params: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusCoefficientSpec {
    pub coeffs: WeightedSequence,
    #[serde(rename = "K", default)]
    pub decay_order: f64,
}

impl TorusCoefficientSpec {
    pub fn build(&self) -> TorusCoefficient {
        TorusCoefficient::new(self.coeffs.clone(), self.decay_order)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatrixSpec {
    Identity {
        #[serde(default = "one")]
        scale: f64,
    },
    Shift {
        offset: Vec<i64>,
    },
    DecayKernel {
        omega: f64,
        decay: f64,
        band: i64,
    },
    /// Entries `[j.., k.., re, im]` inside the cube of radius `radius`.
    Dense {
        radius: i64,
        entries: Vec<Vec<f64>>,
    },
}

fn one() -> f64 {
    1.0
}

impl MatrixSpec {
    pub fn build(&self, d: usize) -> Result<Matrix> {
        Ok(match self {
            MatrixSpec::Identity { scale } => Matrix::scaled_identity(d, Complex64::new(*scale, 0.0)),
            MatrixSpec::Shift { offset } => {
                check_dim(d, offset.len())?;
                Matrix::shift(offset)
            }
            MatrixSpec::DecayKernel { omega, decay, band } => Matrix::decay_kernel(d, *omega, *decay, *band),
            MatrixSpec::Dense { radius, entries } => {
                let rows = parse_rows(entries, 2 * d)?;
                for (c, _) in &rows {
                    if c.iter().any(|v| v.abs() > *radius) {
                        return Err(DboError::InvalidParameter("dense matrix entry outside its cube".into()));
                    }
                }
                Matrix::dense_from_fn(d, *radius, |j, k| {
                    let key: Coords = j.iter().chain(k).copied().collect();
                    lookup(&rows, &key)
                })
            }
        })
    }
}

fn parse_rows(entries: &[Vec<f64>], ncoords: usize) -> Result<Vec<(Coords, Complex64)>> {
    entries
        .iter()
        .map(|row| {
            if row.len() != ncoords + 2 {
                return Err(DboError::InvalidParameter(format!(
                    "entry row needs {} numbers, got {}",
                    ncoords + 2,
                    row.len()
                )));
            }
            let mut c = Coords::new();
            for &v in &row[..ncoords] {
                if v.fract() != 0.0 || !v.is_finite() {
                    return Err(DboError::InvalidParameter(format!("non-integer index {v}")));
                }
                c.push(v as i64);
            }
            Ok((c, Complex64::new(row[ncoords], row[ncoords + 1])))
        })
        .collect()
}

/// Later rows win, so duplicated indices behave like assignment.
fn lookup(rows: &[(Coords, Complex64)], key: &[i64]) -> Complex64 {
    rows.iter()
        .rev()
        .find(|(c, _)| c.as_slice() == key)
        .map(|(_, v)| *v)
        .unwrap_or(Complex64::new(0.0, 0.0))
}

#[derive(Deserialize)]
struct DenseParams {
    radius: i64,
    entries: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct DiagonalParams {
    theta: WeightedSequence,
    #[serde(rename = "M")]
    cutoff: u64,
}

#[derive(Deserialize)]
struct RadiusParams {
    radius: i64,
}

#[derive(Deserialize)]
struct ConvolutionParams {
    mode: ConvolutionMode,
    phi: SymbolSpec,
}

#[derive(Deserialize)]
struct MonomialParams {
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
struct MultiplicationParams {
    v: TorusCoefficientSpec,
}

#[derive(Deserialize)]
struct TermParams {
    v: TorusCoefficientSpec,
    phi: SymbolSpec,
}

#[derive(Deserialize)]
struct VariableParams {
    terms: Vec<TermParams>,
}

#[derive(Deserialize)]
struct SeparableParams {
    sigma1: MatrixSpec,
    sigma2: MatrixSpec,
}

#[derive(Deserialize)]
struct ShiftedParams {
    inner: Box<TensorSpec>,
    slot: u8,
    axis: usize,
    steps: i64,
}

#[derive(Deserialize)]
struct DifferencedParams {
    inner: Box<TensorSpec>,
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

#[derive(Deserialize)]
struct TransposedParams {
    inner: Box<TensorSpec>,
    which: u8,
}

fn params<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    Ok(serde_json::from_value(v.clone())?)
}

impl TensorSpec {
    pub fn build(&self) -> Result<Tensor> {
        let d = self.d;
        if d == 0 {
            return Err(DboError::InvalidParameter("d must be >= 1".into()));
        }
        let t = match self.family.as_str() {
            "dense" => {
                let p: DenseParams = params(&self.params)?;
                if p.radius < 0 {
                    return Err(DboError::InvalidParameter("radius must be >= 0".into()));
                }
                let rows = parse_rows(&p.entries, 3 * d)?;
                for (c, _) in &rows {
                    if c.iter().any(|v| v.abs() > p.radius) {
                        return Err(DboError::InvalidParameter("dense tensor entry outside its cube".into()));
                    }
                }
                Tensor::dense_from_fn(d, p.radius, |j, k, l| {
                    let key: Coords = j.iter().chain(k).chain(l).copied().collect();
                    lookup(&rows, &key)
                })
            }
            "diagonal-cutoff" => {
                let p: DiagonalParams = params(&self.params)?;
                check_dim(d, p.theta.dim())?;
                Tensor::diagonal_cutoff(p.theta, p.cutoff)
            }
            "diagonal-indicator" => {
                let p: RadiusParams = params(&self.params)?;
                Tensor::diagonal_indicator(d, p.radius)
            }
            "convolution" => {
                let p: ConvolutionParams = params(&self.params)?;
                Tensor::convolution(d, p.phi.build()?, p.mode)?
            }
            "monomial" => {
                let p: MonomialParams = params(&self.params)?;
                check_dim(d, p.a.len())?;
                check_dim(d, p.b.len())?;
                Tensor::monomial(MultiIndex::new(&p.a), MultiIndex::new(&p.b))?
            }
            "multiplication" => {
                let p: MultiplicationParams = params(&self.params)?;
                check_dim(d, p.v.coeffs.dim())?;
                Tensor::multiplication(p.v.build())
            }
            "variable-coefficient" => {
                let p: VariableParams = params(&self.params)?;
                let mut terms = Vec::new();
                for t in p.terms {
                    check_dim(d, t.v.coeffs.dim())?;
                    terms.push((t.v.build(), t.phi.build()?));
                }
                Tensor::variable_coefficient(terms)?
            }
            "separable" => {
                let p: SeparableParams = params(&self.params)?;
                Tensor::separable(p.sigma1.build(d)?, p.sigma2.build(d)?)?
            }
            "shifted" => {
                let p: ShiftedParams = params(&self.params)?;
                let inner = p.inner.build()?;
                check_dim(d, inner.dim())?;
                inner.shift_by(parse_slot(p.slot)?, p.axis, p.steps)?
            }
            "differenced" => {
                let p: DifferencedParams = params(&self.params)?;
                let inner = p.inner.build()?;
                check_dim(d, inner.dim())?;
                inner.finite_difference(&MultiIndex::new(&p.alpha), &MultiIndex::new(&p.beta))?
            }
            "transposed" => {
                let p: TransposedParams = params(&self.params)?;
                let inner = p.inner.build()?;
                check_dim(d, inner.dim())?;
                let which = match p.which {
                    1 => Transpose::First,
                    2 => Transpose::Second,
                    w => {
                        return Err(DboError::InvalidParameter(format!(
                            "transpose index must be 1 or 2, got {w}"
                        )))
                    }
                };
                inner.transpose(which)
            }
            other => return Err(DboError::InvalidParameter(format!("unknown tensor family '{other}'"))),
        };
        Ok(t)
    }
}

fn parse_slot(s: u8) -> Result<Slot> {
    match s {
        2 => Ok(Slot::Two),
        3 => Ok(Slot::Three),
        _ => Err(DboError::InvalidParameter(format!("slot must be 2 or 3, got {s}"))),
    }
}

/// Convenience for tests and tools: a dense spec from a tensor scanned on a cube.
pub fn dense_spec(t: &Tensor, radius: i64) -> TensorSpec {
    let d = t.dim();
    let pts: Vec<Coords> = AxisBox::cube(d, radius).points().collect();
    let mut entries = Vec::new();
    for j in &pts {
        for k in &pts {
            for l in &pts {
                let v = t.eval(j, k, l);
                if v != Complex64::new(0.0, 0.0) {
                    let mut row: Vec<f64> = j.iter().chain(k).chain(l).map(|&c| c as f64).collect();
                    row.push(v.re);
                    row.push(v.im);
                    entries.push(row);
                }
            }
        }
    }
    TensorSpec {
        d,
        family: "dense".into(),
        params: serde_json::json!({ "radius": radius, "entries": entries }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_from_json() {
        let s: TensorSpec = serde_json::from_str(r#"{"d":1,"family":"monomial","params":{"a":[1],"b":[0]}}"#).unwrap();
        let t = s.build().unwrap();
        assert!((t.eval(&[3], &[2], &[1]).im - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn dense_round_trip() {
        let t = Tensor::dense_from_fn(1, 1, |j, k, l| Complex64::new((j[0] + 2 * k[0] - l[0]) as f64, 1.0));
        let s = dense_spec(&t, 1);
        let back = s.build().unwrap();
        for j in -1..=1 {
            for k in -1..=1 {
                for l in -1..=1 {
                    assert_eq!(t.eval(&[j], &[k], &[l]), back.eval(&[j], &[k], &[l]));
                }
            }
        }
    }

    #[test]
    fn unknown_family_and_bad_rows_are_rejected() {
        let s = TensorSpec {
            d: 1,
            family: "nope".into(),
            params: Value::Null,
        };
        assert!(s.build().is_err());
        let s: TensorSpec =
            serde_json::from_str(r#"{"d":1,"family":"dense","params":{"radius":1,"entries":[[0,0,5,1,0]]}}"#).unwrap();
        assert!(s.build().is_err());
    }

    #[test]
    fn nested_spec() {
        let s: TensorSpec = serde_json::from_str(
            r#"{"d":1,"family":"transposed","params":{"which":1,"inner":
                {"d":1,"family":"dense","params":{"radius":3,"entries":[[1,2,3,1.5,0]]}}}}"#,
        )
        .unwrap();
        let t = s.build().unwrap();
        assert_eq!(t.eval(&[2], &[1], &[3]).re, 1.5);
    }
}
