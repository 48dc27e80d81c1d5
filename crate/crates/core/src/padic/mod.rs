//! Fixed-precision p-adic arithmetic in `Z_p` and in unramified or
//! Eisenstein extensions, with an exact rational backend, Hensel lifting of
//! the unit root, and Smith normal form.

mod exact;
mod hensel;
mod ring;
mod scalar;
mod snf;

pub use exact::{rational_valuation, ExactScalar};
pub use hensel::{hensel_unit_root, UnitRoot};
pub(crate) use ring::{is_prime, v_p};
pub use ring::{ExtensionRing, PadicContext, RingKind, RingSpec};
pub use scalar::{PadicScalar, ScalarJson};
pub(crate) use scalar::same_ring;
pub use snf::{padic_snf, SnfResult};
