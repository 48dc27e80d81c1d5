//! The finite-level crossed product `Lambda(G/J) = (+)_q Lambda(Pi) s(q)`,
//! its Ore sets, Artin representations and the maps `Phi_rho`.

mod artin;
mod element;
mod group;
mod ore;
mod phi;

use std::sync::Arc;

pub use artin::{ArtinRep, RepJson};
pub use element::{CrossedElement, ElementJson};
pub use group::{FiniteLevelGroup, GroupJson};
pub use ore::{
    is_torsion_presentation, multiplication_matrix, ore_left_test, ore_s_test, ore_sstar_test, p_content, OreReport,
};
pub use phi::{
    evaluate_xi, gamma_pushforward, integrality_check, phi_rho, phi_rho_det, Integrality, LocalizedElement, PhiDet,
    ReducedPhi, XiValue,
};

use crate::algebra::Scalar;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::padic::ExtensionRing;

/// The sign character of a group built by [`FiniteLevelGroup::symmetric3`]
/// or of `Z/2`; elements are classified by their order.
pub fn sign_character<S: Scalar>(group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>) -> Result<ArtinRep<S>> {
    let values = (0..group.order())
        .map(|q| {
            let odd = q != group.identity() && group.mul(q, q) == group.identity();
            S::from_i64(ring, if odd { -1 } else { 1 })
        })
        .collect();
    ArtinRep::characters(group, ring, values)
}

/// The two-dimensional irreducible representation of `S_3` on the plane
/// `x_0 + x_1 + x_2 = 0`, basis `e_0 - e_1`, `e_1 - e_2`.
pub fn standard_s3<S: Scalar>(group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>) -> Result<ArtinRep<S>> {
    let table: [(&str, [[i64; 2]; 2]); 6] = [
        ("e", [[1, 0], [0, 1]]),
        ("(01)", [[-1, 1], [0, 1]]),
        ("(12)", [[1, 0], [1, -1]]),
        ("(02)", [[0, -1], [-1, 0]]),
        ("(012)", [[0, -1], [1, -1]]),
        ("(021)", [[-1, 1], [-1, 0]]),
    ];
    let mut ms = vec![None; group.order()];
    for (label, m) in table {
        let rows = m
            .iter()
            .map(|r| r.iter().map(|&v| S::from_i64(ring, v)).collect())
            .collect();
        ms[group.index_of(label)?] = Some(Matrix::from_rows(rows)?);
    }
    let ms = ms.into_iter().map(|m| m.expect("all six labels")).collect();
    ArtinRep::new(group, ring, ms, None)
}
