use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::FiniteLevelGroup;
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::iwasawa_series::CoeffJson;
use crate::linalg::Matrix;
use crate::padic::{same_ring, ExtensionRing};

/// `rho: Q -> GL_n(O)`, trivial on `Pi`, optionally twisted by the character
/// of `Gamma` with `gamma_0 -> c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArtinRep<S: Scalar> {
    group: Arc<FiniteLevelGroup>,
    ring: Arc<ExtensionRing>,
    dim: usize,
    matrices: Vec<Matrix<S>>,
    gamma_character: Option<S>,
}

impl<S: Scalar> ArtinRep<S> {
    /// Validates `rho(1) = I`, multiplicativity on all pairs, and that the
    /// twisting character takes values in `1 + pi O`.
    pub fn new(
        group: &Arc<FiniteLevelGroup>,
        ring: &Arc<ExtensionRing>,
        matrices: Vec<Matrix<S>>,
        gamma_character: Option<S>,
    ) -> Result<Self> {
        let n = group.order();
        if matrices.len() != n {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {n}",
                matrices.len()
            )));
        }
        let dim = matrices[0].rows();
        if dim == 0 {
            return Err(Error::InvalidRepresentation("dimension must be positive".into()));
        }
        for m in &matrices {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRepresentation(format!("matrices must all be {dim} x {dim}")));
            }
            if m.entries().iter().any(|x| !same_ring(x.ring(), ring)) {
                return Err(Error::RingMismatch("matrix entry over a different ring".into()));
            }
        }
        let id = Matrix::identity(dim, &S::zero(ring));
        if matrices[group.identity()] != id {
            return Err(Error::InvalidRepresentation("rho(identity) is not the identity matrix".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if matrices[a].mul(&matrices[b])? != matrices[group.mul(a, b)] {
                    return Err(Error::InvalidRepresentation(format!(
                        "homomorphism fails: rho({}) rho({}) != rho({})",
                        group.label(a),
                        group.label(b),
                        group.label(group.mul(a, b))
                    )));
                }
            }
        }
        if let Some(c) = &gamma_character {
            if !same_ring(c.ring(), ring) {
                return Err(Error::RingMismatch("gamma character over a different ring".into()));
            }
            let shift = c.sub_ref(&S::one(ring));
            if !shift.is_zero() && !shift.valuation().finite().is_some_and(|v| v > 0.into()) {
                return Err(Error::InvalidRepresentation(
                    "gamma character must be congruent to 1 modulo the uniformizer".into(),
                ));
            }
        }
        Ok(ArtinRep {
            group: group.clone(),
            ring: ring.clone(),
            dim,
            matrices,
            gamma_character: gamma_character.filter(|c| !c.is_one()),
        })
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>) -> Self {
        Self::characters(group, ring, vec![S::one(ring); group.order()]).expect("trivial character")
    }

    /// A one-dimensional representation from its values.
    pub fn characters(group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>, values: Vec<S>) -> Result<Self> {
        let ms = values
            .into_iter()
            .map(|v| Matrix::from_rows(vec![vec![v]]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, ring, ms, None)
    }

    /// The same representation tensored with the character `gamma_0 -> c`
    /// (composed with any existing twist).
    pub fn with_gamma_character(&self, c: S) -> Result<Self> {
        let c = match &self.gamma_character {
            Some(old) => old.mul_ref(&c),
            None => c,
        };
        Self::new(&self.group, &self.ring, self.matrices.clone(), Some(c))
    }

    pub fn group(&self) -> &Arc<FiniteLevelGroup> {
        &self.group
    }

    pub fn ring(&self) -> &Arc<ExtensionRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, q: usize) -> &Matrix<S> {
        &self.matrices[q]
    }

    pub fn gamma_character(&self) -> Option<&S> {
        self.gamma_character.as_ref()
    }

    /// `rho^(q) = rho(q^{-1})^T`, with the inverse twisting character.
    pub fn contragredient(&self) -> Result<Self> {
        let matrices = (0..self.group.order())
            .map(|q| self.matrices[self.group.inverse(q)].transpose())
            .collect();
        let c = match &self.gamma_character {
            Some(c) => Some(
                c.inverse()
                    .ok_or_else(|| Error::NotUnit("gamma character".into()))?,
            ),
            None => None,
        };
        Self::new(&self.group, &self.ring, matrices, c)
    }

    /// Trace of `rho(q)`.
    pub fn character(&self, q: usize) -> S {
        (0..self.dim).fold(S::zero(&self.ring), |acc, i| acc.add_ref(&self.matrices[q][(i, i)]))
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            dim: self.dim,
            matrices: (0..self.group.order())
                .map(|q| {
                    let rows = self.matrices[q]
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(CoeffJson::from_scalar).collect())
                        .collect();
                    (self.group.label(q).to_string(), rows)
                })
                .collect(),
            gamma_character: self.gamma_character.as_ref().map(CoeffJson::from_scalar),
        }
    }
}

/// `{"dim": n, "matrices": {label: [[...]]}, "gamma_character": scalar|null}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub dim: usize,
    pub matrices: BTreeMap<String, Vec<Vec<CoeffJson>>>,
    #[serde(default)]
    pub gamma_character: Option<CoeffJson>,
}

impl RepJson {
    pub fn parse<S: Scalar>(&self, group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>) -> Result<ArtinRep<S>> {
        let mut slots: Vec<Option<Matrix<S>>> = vec![None; group.order()];
        for (label, rows) in &self.matrices {
            let q = group.index_of(label)?;
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::InvalidRepresentation(format!("matrix of {label} is not {0} x {0}", self.dim)));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|c| c.parse::<S>(ring)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            slots[q] = Some(Matrix::from_rows(rows)?);
        }
        let matrices = slots
            .into_iter()
            .enumerate()
            .map(|(q, m)| {
                m.ok_or_else(|| Error::InvalidRepresentation(format!("no matrix for {}", group.label(q))))
            })
            .collect::<Result<Vec<_>>>()?;
        let c = self.gamma_character.as_ref().map(|c| c.parse::<S>(ring)).transpose()?;
        ArtinRep::new(group, ring, matrices, c)
    }
}
