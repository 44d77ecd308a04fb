use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gcd, mod_inverse, residue};

/// Diagonal action of `Z/r` with the given weights, stored as residues in `[0, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicAction {
    pub r: i64,
    pub weights: Vec<i64>,
}

impl CyclicAction {
    pub fn new(r: i64, weights: &[i64]) -> Result<Self> {
        if r < 1 {
            return Err(Error::Domain(format!(
                "group order must be positive, got {r}"
            )));
        }
        Ok(CyclicAction {
            r,
            weights: weights.iter().map(|&a| residue(a, r)).collect(),
        })
    }

    pub fn trivial(dim: usize) -> Self {
        CyclicAction {
            r: 1,
            weights: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// True when every group element acts as the identity.
    pub fn is_trivial(&self) -> bool {
        self.weights.iter().all(|&a| a == 0)
    }

    /// The same group with generator `g^u`.
    pub fn scaled(&self, u: i64) -> Self {
        CyclicAction {
            r: self.r,
            weights: self
                .weights
                .iter()
                .map(|&a| residue(a * u, self.r))
                .collect(),
        }
    }

    /// Drops coordinate `k`.
    pub fn without(&self, k: usize) -> Self {
        let mut weights = self.weights.clone();
        weights.remove(k);
        CyclicAction { r: self.r, weights }
    }

    /// Restriction to the subgroup of order `d` (which must divide `r`).
    pub fn subgroup(&self, d: i64) -> Self {
        debug_assert!(d >= 1 && self.r % d == 0);
        CyclicAction {
            r: d,
            weights: self.weights.iter().map(|&a| residue(a, d)).collect(),
        }
    }

    /// Equality up to a change of generator and a permutation of coordinates.
    pub fn equivalent(&self, other: &CyclicAction) -> bool {
        if self.r != other.r || self.dim() != other.dim() {
            return false;
        }
        let mut target = other.weights.clone();
        target.sort_unstable();
        (1..=self.r.max(1))
            .filter(|&u| gcd(u, self.r) == 1)
            .any(|u| {
                let mut w = self.scaled(u).weights;
                w.sort_unstable();
                w == target
            })
    }
}

impl fmt::Display for CyclicAction {
    /// `r - 1` is shown as `-1`, the way these types are usually written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .weights
            .iter()
            .map(|&a| {
                if self.r > 2 && a == self.r - 1 {
                    "-1".to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        write!(f, "1/{}({})", self.r, shown.join(","))
    }
}

/// Outcome of the Reid–Tai test on a three-dimensional cyclic quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ReidTai {
    Terminal,
    /// The first `k` whose residue sum fails to exceed `r`.
    NotTerminal {
        k: i64,
        sum: i64,
    },
}

impl ReidTai {
    pub fn is_terminal(&self) -> bool {
        matches!(self, ReidTai::Terminal)
    }
}

/// Terminal iff `Σ (k·a_i mod r) > r` for every `k` in `1..r`.
pub fn reid_tai(q: &CyclicAction) -> ReidTai {
    for k in 1..q.r {
        let sum: i64 = q.weights.iter().map(|&a| residue(k * a, q.r)).sum();
        if sum <= q.r {
            return ReidTai::NotTerminal { k, sum };
        }
    }
    ReidTai::Terminal
}

/// Writes `q` as `1/r(1, -1, b)` with `gcd(b, r) = 1` if possible.
///
/// The coordinate that becomes `1` is the earliest one that can, then the
/// earliest partner for `-1`; this reproduces `1/s(-1,t,1) -> (s, -t)`.
/// `r = 1` gives `(1, 0)`.
pub fn normalize_quotient(q: &CyclicAction) -> Option<(i64, i64)> {
    if q.dim() != 3 {
        return None;
    }
    let r = q.r;
    if r == 1 {
        return Some((1, 0));
    }
    let w = &q.weights;
    for i in 0..3 {
        let Some(u) = mod_inverse(w[i], r) else {
            continue;
        };
        for j in 0..3 {
            if j == i || residue(w[i] + w[j], r) != 0 {
                continue;
            }
            let k = 3 - i - j;
            let b = residue(w[k] * u, r);
            if gcd(b, r) != 1 {
                continue;
            }
            return Some((r, b));
        }
    }
    None
}
