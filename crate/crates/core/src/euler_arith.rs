//! The arithmetic formula for the Euler characteristic of a Selmer dual and
//! the Artin formalism relating a subgroup's Euler characteristic to twisted
//! ones. Every power of `p` is carried as its integer exponent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{is_prime, v_p};

/// Local and global orders entering the arithmetic formula over a number
/// field `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldArithmeticData {
    pub p: u64,
    /// `#E(K)(p)`.
    pub torsion_order: u128,
    /// `#Sha(E/K)(p)`.
    pub sha_order: u128,
    /// Local degrees `d_v = [K_v : Q_l]` at places over bad primes `l != p`.
    #[serde(default)]
    pub bad_places: Vec<u64>,
    /// `#E~_v(k_v)(p)` at places over `p`.
    #[serde(default)]
    pub good_places: Vec<u128>,
}

/// Exponent of `n` if it is a power of `p`.
pub fn p_power_exponent(n: u128, p: u64, what: &str) -> Result<i64> {
    if n == 0 {
        return Err(Error::NotPPower(format!("{what} = 0")));
    }
    let mut m = n;
    let mut e = 0i64;
    while m % p as u128 == 0 {
        m /= p as u128;
        e += 1;
    }
    if m != 1 {
        return Err(Error::NotPPower(format!("{what} = {n} is not a power of {p}")));
    }
    Ok(e)
}

impl FieldArithmeticData {
    pub fn validate(&self) -> Result<()> {
        if self.p < 5 || !is_prime(self.p) {
            return Err(Error::InvalidInput(format!("p = {} must be a prime >= 5", self.p)));
        }
        if self.torsion_order == 0 {
            return Err(Error::InvalidInput("torsion_order must be positive".into()));
        }
        if let Some(i) = self.bad_places.iter().position(|&d| d == 0) {
            return Err(Error::InvalidInput(format!("bad_places[{i}]: local degree must be positive")));
        }
        Ok(())
    }

    /// Data of the disjoint union of place lists, with torsion and `Sha`
    /// orders multiplied.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::InvalidInput(format!("primes {} and {} differ", self.p, other.p)));
        }
        let mul = |a: u128, b: u128, what: &str| {
            a.checked_mul(b)
                .ok_or_else(|| Error::InvalidInput(format!("{what} overflows")))
        };
        Ok(FieldArithmeticData {
            p: self.p,
            torsion_order: mul(self.torsion_order, other.torsion_order, "torsion_order")?,
            sha_order: mul(self.sha_order, other.sha_order, "sha_order")?,
            bad_places: [self.bad_places.clone(), other.bad_places.clone()].concat(),
            good_places: [self.good_places.clone(), other.good_places.clone()].concat(),
        })
    }
}

/// Exponent of `#Sha / #E(K)^2 * prod_bad p |d_v|_p^{-1} * prod_{v | p} (#E~_v)^2`.
pub fn chi_formula(data: &FieldArithmeticData) -> Result<i64> {
    data.validate()?;
    let p = data.p;
    let mut e = p_power_exponent(data.sha_order, p, "sha_order")?;
    e -= 2 * p_power_exponent(data.torsion_order, p, "torsion_order")?;
    for &d in &data.bad_places {
        e += 1 + v_p(d as i128, p) as i64;
    }
    for (i, &c) in data.good_places.iter().enumerate() {
        e += 2 * p_power_exponent(c, p, &format!("good_places[{i}]"))?;
    }
    Ok(e)
}

/// One entry of the decomposition of `Z_p[Delta]`: `count` irreducible
/// representations of dimension `dim`. `chi_exponent` is the exponent of
/// the product of `chi(G, tw_rho(M))` over those `count` representations;
/// `None` marks the unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducible {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: u32,
    #[serde(default = "one")]
    pub count: u32,
    #[serde(default)]
    pub chi_exponent: Option<i64>,
}

fn one() -> u32 {
    1
}

/// `chi(G', M)^{[L:Q_p]} = prod_rho chi(G, tw_rho(M))^{n_rho}`, in exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinDecomposition {
    pub subgroup_chi_exponent: i64,
    pub base_field_degree: u32,
    pub irreducibles: Vec<Irreducible>,
    /// `|Delta|`; when present the entries must exhaust the irreducibles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u64>,
}

impl ArtinDecomposition {
    pub fn validate(&self) -> Result<()> {
        if self.base_field_degree == 0 {
            return Err(Error::InvalidInput("base_field_degree must be positive".into()));
        }
        for (i, r) in self.irreducibles.iter().enumerate() {
            if r.dim == 0 || r.count == 0 {
                return Err(Error::InvalidInput(format!("irreducibles[{i}]: dim and count must be positive")));
            }
        }
        if let Some(order) = self.group_order {
            let sum: u64 = self
                .irreducibles
                .iter()
                .map(|r| r.count as u64 * (r.dim as u64).pow(2))
                .sum();
            if sum != order {
                return Err(Error::InvalidInput(format!(
                    "sum of count * dim^2 is {sum}, but |Delta| = {order}"
                )));
            }
        }
        Ok(())
    }

    fn lhs(&self) -> i64 {
        self.subgroup_chi_exponent * self.base_field_degree as i64
    }

    /// The same decomposition with the unknown filled in.
    pub fn with_solution(&self, exponent: i64) -> Self {
        let mut out = self.clone();
        for r in &mut out.irreducibles {
            if r.chi_exponent.is_none() {
                r.chi_exponent = Some(exponent);
            }
        }
        out
    }
}

/// Checks the multiplicative identity exactly.
pub fn artin_check(decomp: &ArtinDecomposition) -> Result<bool> {
    decomp.validate()?;
    let mut rhs = 0i64;
    for (i, r) in decomp.irreducibles.iter().enumerate() {
        let e = r
            .chi_exponent
            .ok_or_else(|| Error::InvalidInput(format!("irreducibles[{i}]: chi_exponent unknown")))?;
        rhs += r.dim as i64 * e;
    }
    Ok(decomp.lhs() == rhs)
}

/// Solves the identity for the single unknown entry.
pub fn artin_solve(decomp: &ArtinDecomposition) -> Result<i64> {
    decomp.validate()?;
    let unknown: Vec<usize> = (0..decomp.irreducibles.len())
        .filter(|&i| decomp.irreducibles[i].chi_exponent.is_none())
        .collect();
    let [u] = unknown[..] else {
        return Err(Error::InvalidInput(format!(
            "exactly one unknown chi_exponent required, found {}",
            unknown.len()
        )));
    };
    let known: i64 = decomp
        .irreducibles
        .iter()
        .filter_map(|r| r.chi_exponent.map(|e| r.dim as i64 * e))
        .sum();
    let residual = decomp.lhs() - known;
    let n = decomp.irreducibles[u].dim as i64;
    if residual % n != 0 {
        return Err(Error::NoConsistentSolution(format!(
            "residual exponent {residual} is not divisible by n = {n}"
        )));
    }
    Ok(residual / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(torsion: u128, sha: u128, bad: Vec<u64>, good: Vec<u128>) -> FieldArithmeticData {
        FieldArithmeticData {
            p: 5,
            torsion_order: torsion,
            sha_order: sha,
            bad_places: bad,
            good_places: good,
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(chi_formula(&data(5, 1, vec![1; 4], vec![5])).unwrap(), 4);
        assert_eq!(chi_formula(&data(25, 25, vec![5; 4], vec![5; 5])).unwrap(), 16);
        assert_eq!(chi_formula(&data(5, 1, vec![5; 4], vec![5])).unwrap(), 8);
        assert_eq!(chi_formula(&data(1, 1, vec![], vec![])).unwrap(), 0);
    }

    #[test]
    fn formula_rejects_bad_input() {
        assert!(matches!(chi_formula(&data(6, 1, vec![], vec![])), Err(Error::NotPPower(_))));
        assert!(matches!(chi_formula(&data(0, 1, vec![], vec![])), Err(Error::InvalidInput(_))));
        let mut d = data(1, 1, vec![], vec![]);
        d.p = 3;
        assert!(chi_formula(&d).is_err());
    }

    fn decomp(sub: i64, unknown: Option<i64>) -> ArtinDecomposition {
        ArtinDecomposition {
            subgroup_chi_exponent: sub,
            base_field_degree: 1,
            irreducibles: vec![
                Irreducible {
                    label: Some("characters".into()),
                    dim: 1,
                    count: 4,
                    chi_exponent: Some(4),
                },
                Irreducible {
                    label: Some("rho".into()),
                    dim: 4,
                    count: 1,
                    chi_exponent: unknown,
                },
            ],
            group_order: Some(20),
        }
    }

    #[test]
    fn solve_and_check() {
        assert_eq!(artin_solve(&decomp(16, None)).unwrap(), 3);
        assert_eq!(artin_solve(&decomp(8, None)).unwrap(), 1);
        assert!(artin_check(&decomp(16, Some(3))).unwrap());
        assert!(!artin_check(&decomp(16, Some(4))).unwrap());
        assert!(!artin_check(&decomp(17, Some(3))).unwrap());
    }

    #[test]
    fn indivisible_residual() {
        let d = ArtinDecomposition {
            subgroup_chi_exponent: 4,
            base_field_degree: 1,
            irreducibles: vec![Irreducible {
                label: None,
                dim: 3,
                count: 1,
                chi_exponent: None,
            }],
            group_order: None,
        };
        assert!(matches!(artin_solve(&d), Err(Error::NoConsistentSolution(_))));
    }

    #[test]
    fn dimension_sum_checked() {
        let mut d = decomp(16, Some(3));
        d.group_order = Some(21);
        assert!(artin_check(&d).is_err());
    }
}
