//! Torsion `Lambda_O(Gamma)`-modules, Akashi series, Euler characteristics,
//! twisting, the bad-twist scan and the characteristic-element verifier.

mod module;
mod scan;
mod series;
mod verify;

pub use module::{char_series, twist_module, DegreeData, DegreeJson, ModuleJson, TorsionModuleData};
pub use scan::{bad_twist_scan, cyclotomic_at_one_plus_t};
pub use series::{akashi_series, euler_characteristic, AkashiSeries, CanonicalForm, EulerChar};
pub use verify::{phi_rho_presentation, twisted_coinvariant_relations, verify_char_element, VerifyReport};
