use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function_field::FpPoly;

/// Largest admissible `p^N`; keeps every product of two residues inside `i128`.
const MAX_MODULUS: i128 = 1 << 62;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Valuation of a nonzero integer at `p`.
pub(crate) fn v_p(mut x: i128, p: u64) -> u32 {
    debug_assert!(x != 0);
    let p = p as i128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod_i128(a: i128, m: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

/// Representative in `(-m/2, m/2]`.
pub(crate) fn symmetric(x: i128, m: i128) -> i128 {
    let r = x.rem_euclid(m);
    if r > m / 2 {
        r - m
    } else {
        r
    }
}

/// The prime `p` and the working precision `N`: computations are exact
/// modulo `p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicContext {
    p: u64,
    precision: u32,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("p = {p} must be an odd prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidContext("precision must be at least 1".into()));
        }
        let mut m: i128 = 1;
        for _ in 0..precision {
            m = m.saturating_mul(p as i128);
            if m > MAX_MODULUS {
                return Err(Error::InvalidContext(format!(
                    "p^N = {p}^{precision} exceeds the supported range (2^62)"
                )));
            }
        }
        Ok(PadicContext { p, precision })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^k` as an integer.
    pub fn p_pow(&self, k: u32) -> i128 {
        (self.p as i128).pow(k)
    }

    /// `p^N`.
    pub fn modulus(&self) -> i128 {
        self.p_pow(self.precision)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    /// `Z_p` itself.
    Prime,
    /// Modulus irreducible mod `p`: `e = 1`, `f = m`.
    Unramified,
    /// Eisenstein modulus: `e = m`, `f = 1`, uniformizer `x`.
    Eisenstein,
}

/// Ring of integers `O` of a finite extension `L / Q_p`, presented as
/// `Z_p[x] / (g)` for a monic integer polynomial `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionRing {
    ctx: PadicContext,
    kind: RingKind,
    modulus: Vec<i64>,
}

impl ExtensionRing {
    pub fn prime(ctx: PadicContext) -> Arc<Self> {
        Arc::new(ExtensionRing {
            ctx,
            kind: RingKind::Prime,
            modulus: vec![0, 1],
        })
    }

    pub fn unramified(ctx: PadicContext, modulus: Vec<i64>) -> Result<Arc<Self>> {
        check_monic(&modulus)?;
        if !FpPoly::from_i64s(ctx.p(), &modulus).is_irreducible() {
            return Err(Error::InvalidRing(format!(
                "modulus {modulus:?} is not irreducible mod {}",
                ctx.p()
            )));
        }
        Ok(Arc::new(ExtensionRing {
            ctx,
            kind: RingKind::Unramified,
            modulus,
        }))
    }

    pub fn eisenstein(ctx: PadicContext, modulus: Vec<i64>) -> Result<Arc<Self>> {
        check_monic(&modulus)?;
        let p = ctx.p() as i64;
        let m = modulus.len() - 1;
        if modulus[..m].iter().any(|c| c % p != 0) || modulus[0] % (p * p) == 0 {
            return Err(Error::InvalidRing(format!("modulus {modulus:?} is not Eisenstein at {p}")));
        }
        Ok(Arc::new(ExtensionRing {
            ctx,
            kind: RingKind::Eisenstein,
            modulus,
        }))
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn precision(&self) -> u32 {
        self.ctx.precision()
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// `m = [L : Q_p]`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn ramification_index(&self) -> usize {
        match self.kind {
            RingKind::Eisenstein => self.degree(),
            _ => 1,
        }
    }

    pub fn residue_degree(&self) -> usize {
        self.degree() / self.ramification_index()
    }

    pub fn is_prime_ring(&self) -> bool {
        self.kind == RingKind::Prime
    }

    /// The prime ring over the same prime and precision.
    pub fn prime_ring(&self) -> Arc<Self> {
        ExtensionRing::prime(self.ctx)
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec {
            p: self.p(),
            precision: self.precision(),
            kind: self.kind,
            modulus: (!self.is_prime_ring()).then(|| self.modulus.clone()),
        }
    }
}

impl fmt::Display for ExtensionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Prime => write!(f, "Z_{}", self.p()),
            _ => write!(f, "Z_{}[x]/({:?}, {:?})", self.p(), self.modulus, self.kind),
        }
    }
}

fn check_monic(modulus: &[i64]) -> Result<()> {
    if modulus.len() < 2 || modulus.last() != Some(&1) {
        return Err(Error::InvalidRing(format!(
            "modulus {modulus:?} must be monic of degree at least 1"
        )));
    }
    Ok(())
}

/// JSON form of an [`ExtensionRing`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    pub precision: u32,
    #[serde(default = "default_kind")]
    pub kind: RingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
}

fn default_kind() -> RingKind {
    RingKind::Prime
}

impl RingSpec {
    pub fn build(&self) -> Result<Arc<ExtensionRing>> {
        let ctx = PadicContext::new(self.p, self.precision)?;
        match (self.kind, &self.modulus) {
            (RingKind::Prime, _) => Ok(ExtensionRing::prime(ctx)),
            (RingKind::Unramified, Some(m)) => ExtensionRing::unramified(ctx, m.clone()),
            (RingKind::Eisenstein, Some(m)) => ExtensionRing::eisenstein(ctx, m.clone()),
            (kind, None) => Err(Error::InvalidRing(format!("{kind:?} ring needs a modulus"))),
        }
    }
}
