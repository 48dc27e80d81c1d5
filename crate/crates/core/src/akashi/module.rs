use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{RingElem, Scalar};
use crate::error::{Error, Result};
use crate::iwasawa_series::{det_series, IwasawaSeries, SeriesJson};
use crate::linalg::Matrix;
use crate::padic::{same_ring, ExtensionRing, RingSpec};

/// One homology degree: a characteristic series or a square presentation.
#[derive(Debug, Clone, PartialEq)]
pub enum DegreeData<S: Scalar> {
    Series(IwasawaSeries<S>),
    Matrix(Matrix<IwasawaSeries<S>>),
}

impl<S: Scalar> DegreeData<S> {
    pub fn char_series(&self) -> Result<IwasawaSeries<S>> {
        match self {
            DegreeData::Series(f) if f.is_zero() => Err(Error::NotTorsion),
            DegreeData::Series(f) => Ok(f.clone()),
            DegreeData::Matrix(m) => char_series(m),
        }
    }

    fn map(&self, f: impl Fn(&IwasawaSeries<S>) -> Result<IwasawaSeries<S>>) -> Result<Self> {
        Ok(match self {
            DegreeData::Series(s) => DegreeData::Series(f(s)?),
            DegreeData::Matrix(m) => DegreeData::Matrix(m.try_map(f)?),
        })
    }
}

/// Determinant of a square presentation; it generates the characteristic
/// ideal of the cokernel.
pub fn char_series<S: Scalar>(p: &Matrix<IwasawaSeries<S>>) -> Result<IwasawaSeries<S>> {
    let det = det_series(p)?;
    if det.is_zero() {
        return Err(Error::NotTorsion);
    }
    Ok(det)
}

/// `H_i(H, M)` for `i = 0, 1, ...` as torsion `Lambda_O(Gamma)`-modules;
/// degrees past the end are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionModuleData<S: Scalar> {
    ring: Arc<ExtensionRing>,
    degrees: Vec<DegreeData<S>>,
}

impl<S: Scalar> TorsionModuleData<S> {
    pub fn new(ring: &Arc<ExtensionRing>, degrees: Vec<DegreeData<S>>) -> Result<Self> {
        for d in &degrees {
            let f = d.char_series()?;
            if !same_ring(f.ring(), ring) {
                return Err(Error::RingMismatch(format!("degree data over {}", f.ring())));
            }
        }
        Ok(TorsionModuleData {
            ring: ring.clone(),
            degrees,
        })
    }

    pub fn from_series(ring: &Arc<ExtensionRing>, series: Vec<IwasawaSeries<S>>) -> Result<Self> {
        Self::new(ring, series.into_iter().map(DegreeData::Series).collect())
    }

    pub fn ring(&self) -> &Arc<ExtensionRing> {
        &self.ring
    }

    pub fn degrees(&self) -> &[DegreeData<S>] {
        &self.degrees
    }

    pub fn char_series(&self) -> Result<Vec<IwasawaSeries<S>>> {
        self.degrees.iter().map(DegreeData::char_series).collect()
    }

    /// Degreewise direct sum; presentations become block diagonal.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let n = self.degrees.len().max(other.degrees.len());
        let as_matrix = |d: Option<&DegreeData<S>>| -> Matrix<IwasawaSeries<S>> {
            match d {
                Some(DegreeData::Matrix(m)) => m.clone(),
                Some(DegreeData::Series(f)) => Matrix::from_rows(vec![vec![f.clone()]]).expect("1x1"),
                None => Matrix::from_rows(vec![]).expect("0x0"),
            }
        };
        let zero = IwasawaSeries::zero(&self.ring, 0);
        let degrees = (0..n)
            .map(|i| {
                let a = as_matrix(self.degrees.get(i));
                let b = as_matrix(other.degrees.get(i));
                let k = a.rows();
                DegreeData::Matrix(Matrix::from_fn(k + b.rows(), k + b.rows(), |r, c| match (r < k, c < k) {
                    (true, true) => a[(r, c)].clone(),
                    (false, false) => b[(r - k, c - k)].clone(),
                    _ => zero.clone(),
                }))
            })
            .collect();
        Self::new(&self.ring, degrees)
    }

    /// `f_i -> f_i(c (1 + T) - 1)` in every degree.
    pub fn twist(&self, c: &S) -> Result<Self> {
        let degrees = self
            .degrees
            .iter()
            .map(|d| d.map(|f| f.twist_substitute(c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorsionModuleData {
            ring: self.ring.clone(),
            degrees,
        })
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            ring: Some(self.ring.spec()),
            degrees: self
                .degrees
                .iter()
                .map(|d| match d {
                    DegreeData::Series(f) => DegreeJson::Series(SeriesJson::from_series(f)),
                    DegreeData::Matrix(m) => DegreeJson::Matrix(
                        m.to_rows()
                            .iter()
                            .map(|r| r.iter().map(SeriesJson::from_series).collect())
                            .collect(),
                    ),
                })
                .collect(),
        }
    }
}

/// `twist_module`: applies the character `gamma_0 -> c` degreewise.
pub fn twist_module<S: Scalar>(m: &TorsionModuleData<S>, c: &S) -> Result<TorsionModuleData<S>> {
    m.twist(c)
}

/// `{"degrees": [{"series": ...} | {"matrix": [[...]]}, ...], "ring": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    pub degrees: Vec<DegreeJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeJson {
    Series(SeriesJson),
    Matrix(Vec<Vec<SeriesJson>>),
}

impl ModuleJson {
    pub fn parse<S: Scalar>(&self, default_ring: &Arc<ExtensionRing>, default_d: usize) -> Result<TorsionModuleData<S>> {
        let ring = match &self.ring {
            Some(spec) => spec.build()?,
            None => default_ring.clone(),
        };
        let degrees = self
            .degrees
            .iter()
            .map(|d| {
                Ok(match d {
                    DegreeJson::Series(s) => DegreeData::Series(s.parse::<S>(&ring, default_d)?),
                    DegreeJson::Matrix(rows) => DegreeData::Matrix(Matrix::from_rows(
                        rows.iter()
                            .map(|r| r.iter().map(|s| s.parse::<S>(&ring, default_d)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?,
                    )?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TorsionModuleData::new(&ring, degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwasawa_series::ExactSeries;
    use crate::padic::{ExactScalar, PadicContext};

    fn zp() -> Arc<ExtensionRing> {
        ExtensionRing::prime(PadicContext::new(5, 20).unwrap())
    }

    #[test]
    fn char_series_examples() {
        let r = zp();
        let s = |c: &[i64]| ExactSeries::from_i64s(&r, 8, c);
        let diag = Matrix::from_rows(vec![vec![s(&[0, 1]), s(&[])], vec![s(&[]), s(&[5])]]).unwrap();
        assert_eq!(char_series(&diag).unwrap(), s(&[0, 5]));
        let jordan = Matrix::from_rows(vec![vec![s(&[0, 1]), s(&[1])], vec![s(&[]), s(&[0, 1])]]).unwrap();
        assert_eq!(char_series(&jordan).unwrap(), s(&[0, 0, 1]));
        let sing = Matrix::from_rows(vec![vec![s(&[1]), s(&[1])], vec![s(&[2]), s(&[2])]]).unwrap();
        assert_eq!(char_series(&sing), Err(Error::NotTorsion));
    }

    #[test]
    fn direct_sum_multiplies() {
        let r = zp();
        let s = |c: &[i64]| ExactSeries::from_i64s(&r, 8, c);
        let a = TorsionModuleData::<ExactScalar>::from_series(&r, vec![s(&[5, 1])]).unwrap();
        let b = TorsionModuleData::from_series(&r, vec![s(&[0, 1]), s(&[5])]).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let cs = sum.char_series().unwrap();
        assert_eq!(cs[0], s(&[0, 5, 1]));
        assert_eq!(cs[1], s(&[5]));
    }

    #[test]
    fn twisting() {
        let r = zp();
        let s = |c: &[i64]| ExactSeries::from_i64s(&r, 8, c);
        let m = TorsionModuleData::<ExactScalar>::from_series(&r, vec![s(&[0, 1])]).unwrap();
        let u = ExactScalar::from_i64(&r, 6);
        let tw = twist_module(&m, &u).unwrap();
        assert_eq!(tw.char_series().unwrap()[0], s(&[5, 6]));
        let back = twist_module(&tw, &u.inverse().unwrap()).unwrap();
        assert_eq!(back.char_series().unwrap()[0], s(&[0, 1]));
        assert_eq!(twist_module(&m, &ExactScalar::one(&r)).unwrap(), m);
    }

    #[test]
    fn json_roundtrip() {
        let j: ModuleJson =
            serde_json::from_str(r#"{"degrees": [{"series": {"coeffs": [5, 1]}}, {"matrix": [[{"coeffs": [5]}]]}]}"#)
                .unwrap();
        let r = zp();
        let m = j.parse::<ExactScalar>(&r, 8).unwrap();
        let back = serde_json::to_string(&m.to_json()).unwrap();
        let again: ModuleJson = serde_json::from_str(&back).unwrap();
        assert_eq!(again.parse::<ExactScalar>(&r, 8).unwrap(), m);
    }
}
