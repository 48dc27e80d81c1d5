use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::is_prime;

/// The finite quotient `Q = (G/J) / Pi` with normalized sections.
///
/// `s(q)` maps to `gamma^{w(q)}` in `Gamma` with `w(q)` in `[0, p^k)`, and
/// `s(q) s(q') = (1 + T_0)^{tau(q, q')} s(q q')` where `tau` is the carry
/// `(w(q) + w(q') - w(q q')) / p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLevelGroup {
    p: u64,
    pk: u64,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    weight: Vec<u64>,
    cocycle: Vec<Vec<u32>>,
}

impl FiniteLevelGroup {
    /// Validates the group axioms, the weight homomorphism and the cocycle.
    pub fn new(p: u64, pk: u64, labels: Vec<String>, table: Vec<Vec<usize>>, weight: Vec<i64>) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidGroup(format!("p = {p} must be an odd prime")));
        }
        let mut t = pk;
        while t > 1 && t % p == 0 {
            t /= p;
        }
        if pk == 0 || t != 1 {
            return Err(Error::InvalidGroup(format!("pk = {pk} is not a power of {p}")));
        }
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty element list".into()));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidGroup(format!("duplicate label {l:?}")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table must be |Q| x |Q| with valid entries (closure)".into()));
        }
        if weight.len() != n {
            return Err(Error::InvalidGroup("one weight per element required".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("identity axiom: no two-sided identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("inverse axiom: {} has no inverse", labels[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        let weight: Vec<u64> = weight.iter().map(|&w| w.rem_euclid(pk as i64) as u64).collect();
        let mut cocycle = vec![vec![0u32; n]; n];
        for a in 0..n {
            for b in 0..n {
                let s = weight[a] + weight[b];
                let w = weight[table[a][b]];
                if s < w || (s - w) % pk != 0 {
                    return Err(Error::InvalidGroup(format!(
                        "weight is not a homomorphism to Z/{pk} at ({}, {})",
                        labels[a], labels[b]
                    )));
                }
                cocycle[a][b] = ((s - w) / pk) as u32;
            }
        }
        Ok(FiniteLevelGroup {
            p,
            pk,
            labels,
            index,
            table,
            identity,
            inverse,
            weight,
            cocycle,
        })
    }

    /// The cyclic group `Z/n` with elements `"0", ..., "n-1"` and zero weight.
    pub fn cyclic(p: u64, n: usize) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteLevelGroup::new(p, 1, labels, table, vec![0; n])
    }

    /// `Z/p^k` as the image of `Gamma`: element `i` has weight `i`.
    pub fn gamma_quotient(p: u64, k: u32) -> Result<Self> {
        let n = p.pow(k) as usize;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteLevelGroup::new(p, n as u64, labels, table, (0..n as i64).collect())
    }

    /// `S_3` as permutations of `{0, 1, 2}`, zero weight.
    pub fn symmetric3(p: u64) -> Result<Self> {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let labels = vec!["e", "(01)", "(12)", "(02)", "(012)", "(021)"]
            .into_iter()
            .map(String::from)
            .collect();
        let pos = |q: [usize; 3]| perms.iter().position(|&r| r == q).expect("closed");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| pos([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        FiniteLevelGroup::new(p, 1, labels, table, vec![0; 6])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn pk(&self) -> u64 {
        self.pk
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::InvalidGroup(format!("unknown element label {label:?}")))
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Normalized weight `w(q)` in `[0, p^k)`.
    pub fn weight(&self, a: usize) -> u64 {
        self.weight[a]
    }

    /// `tau(a, b)` in `{0, 1}`.
    pub fn cocycle(&self, a: usize, b: usize) -> u32 {
        self.cocycle[a][b]
    }

    pub fn to_json(&self) -> GroupJson {
        let n = self.order();
        GroupJson {
            p: self.p,
            pk: self.pk,
            elements: self.labels.clone(),
            table: (0..n)
                .map(|a| (0..n).map(|b| self.labels[self.table[a][b]].clone()).collect())
                .collect(),
            weight: Some(
                (0..n)
                    .filter(|&a| self.weight[a] != 0)
                    .map(|a| (self.labels[a].clone(), self.weight[a] as i64))
                    .collect(),
            ),
            cocycle: None,
        }
    }
}

/// `{"p", "pk", "elements", "table", "weight", "cocycle"}`; the table and
/// maps are keyed by element label. Omitted weights are zero; an omitted
/// cocycle is derived from the weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub p: u64,
    #[serde(default = "one")]
    pub pk: u64,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<BTreeMap<String, BTreeMap<String, i64>>>,
}

fn one() -> u64 {
    1
}

impl GroupJson {
    pub fn build(&self) -> Result<FiniteLevelGroup> {
        let index: HashMap<&str, usize> = self.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::InvalidGroup(format!("closure: table entry {l:?} is not an element")))
        };
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|l| lookup(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut weight = vec![0i64; self.elements.len()];
        if let Some(w) = &self.weight {
            for (l, &v) in w {
                weight[lookup(l)?] = v;
            }
        }
        let g = FiniteLevelGroup::new(self.p, self.pk, self.elements.clone(), table, weight)?;
        if let Some(c) = &self.cocycle {
            for (a, row) in c {
                for (b, &v) in row {
                    let (ia, ib) = (lookup(a)?, lookup(b)?);
                    if v != g.cocycle(ia, ib) as i64 {
                        return Err(Error::InvalidGroup(format!(
                            "cocycle at ({a}, {b}) is {v}, but the weights force the carry {}",
                            g.cocycle(ia, ib)
                        )));
                    }
                }
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_validate() {
        assert_eq!(FiniteLevelGroup::cyclic(5, 4).unwrap().order(), 4);
        let s3 = FiniteLevelGroup::symmetric3(5).unwrap();
        assert_eq!(s3.order(), 6);
        let r = s3.index_of("(012)").unwrap();
        assert_eq!(s3.mul(r, s3.mul(r, r)), s3.identity());
        let z5 = FiniteLevelGroup::gamma_quotient(5, 1).unwrap();
        assert_eq!(z5.cocycle(3, 4), 1);
        assert_eq!(z5.cocycle(1, 2), 0);
    }

    #[test]
    fn cocycle_condition_holds() {
        let g = FiniteLevelGroup::gamma_quotient(5, 1).unwrap();
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(
                        g.cocycle(a, b) + g.cocycle(g.mul(a, b), c),
                        g.cocycle(b, c) + g.cocycle(a, g.mul(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn violations_are_named() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let err = FiniteLevelGroup::new(5, 1, labels.clone(), vec![vec![0, 0], vec![0, 0]], vec![0, 0]).unwrap_err();
        assert!(err.to_string().contains("identity") || err.to_string().contains("inverse"));
        let err = FiniteLevelGroup::new(5, 5, labels, vec![vec![0, 1], vec![1, 0]], vec![0, 1]).unwrap_err();
        assert!(err.to_string().contains("homomorphism"));
        let j: GroupJson = serde_json::from_str(
            r#"{"p": 5, "pk": 5, "elements": ["0","1","2","3","4"],
                "table": [["0","1","2","3","4"],["1","2","3","4","0"],["2","3","4","0","1"],["3","4","0","1","2"],["4","0","1","2","3"]],
                "weight": {"1": 1, "2": 2, "3": 3, "4": 4}, "cocycle": {"1": {"4": 0}}}"#,
        )
        .unwrap();
        assert!(j.build().unwrap_err().to_string().contains("cocycle"));
    }
}
