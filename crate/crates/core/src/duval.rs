//! Partial resolutions of an `A_s` Du Val point: chains of `(-2)`-curves.
//!
//! Nodes are numbered `1..=s`. A contracted node is collapsed by the partial
//! resolution; the general hyperplane section meets `F_1` and `F_s` once each.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    s: usize,
    contracted: Vec<bool>,
}

impl ChainConfig {
    pub fn new(contracted: Vec<bool>) -> Result<Self> {
        if contracted.is_empty() {
            return Err(Error::Domain("a chain needs at least one curve".into()));
        }
        if contracted.iter().all(|&c| c) {
            return Err(Error::Domain("at least one curve must survive".into()));
        }
        Ok(ChainConfig {
            s: contracted.len(),
            contracted,
        })
    }

    /// Bit `j - 1` of `mask` set means node `j` is contracted.
    pub fn from_bitmask(s: usize, mask: u64) -> Result<Self> {
        if s == 0 || s > 63 {
            return Err(Error::Domain(format!(
                "chain length must be in 1..=63, got {s}"
            )));
        }
        if mask >> s != 0 {
            return Err(Error::Domain(format!(
                "mask {mask:#b} has bits beyond node {s}"
            )));
        }
        ChainConfig::new((0..s).map(|j| mask >> j & 1 == 1).collect())
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_contracted(&self, node: usize) -> bool {
        self.contracted[node - 1]
    }

    pub fn contracted_nodes(&self) -> Vec<usize> {
        (1..=self.s).filter(|&j| self.is_contracted(j)).collect()
    }
}

fn intersection(i: usize, j: usize) -> i64 {
    match i.abs_diff(j) {
        0 => -2,
        1 => 1,
        _ => 0,
    }
}

/// Coefficients `c_j` with `(F_k + Σ c_j F_j) · F_i = 0` for every contracted `i`.
pub fn pullback_coeffs(cfg: &ChainConfig, k: usize) -> Result<Vec<(usize, Rat)>> {
    if k == 0 || k > cfg.s {
        return Err(Error::Domain(format!("node {k} outside 1..={}", cfg.s)));
    }
    if cfg.is_contracted(k) {
        return Err(Error::Domain(format!("node {k} is contracted")));
    }
    let nodes = cfg.contracted_nodes();
    let n = nodes.len();
    let mut m: Vec<Vec<Rat>> = nodes
        .iter()
        .map(|&i| {
            let mut row: Vec<Rat> = nodes
                .iter()
                .map(|&j| Rat::from_int(intersection(i, j)))
                .collect();
            row.push(Rat::from_int(-intersection(i, k)));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Consistency("chain intersection matrix is singular".into()))?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &pivot;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= &delta;
                }
            }
        }
    }
    Ok(nodes
        .into_iter()
        .zip(m.into_iter().map(|row| row[n].clone()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionProfile {
    pub s1: usize,
    pub s2: usize,
    pub intersections: (Rat, Rat),
    pub mult: i64,
}

/// Contracted end segments and the local intersection of the section with the
/// surviving curves at the two resulting Du Val points.
pub fn partial_resolution_profile(cfg: &ChainConfig) -> Result<ResolutionProfile> {
    let s = cfg.s;
    let s1 = (1..=s).take_while(|&j| cfg.is_contracted(j)).count();
    let s2 = (1..=s).rev().take_while(|&j| cfg.is_contracted(j)).count();
    let end_value = |first_free: usize, end: usize, len: usize| -> Result<Rat> {
        if len == 0 {
            return Ok(Rat::one());
        }
        let coeffs = pullback_coeffs(cfg, first_free)?;
        coeffs
            .into_iter()
            .find(|(j, _)| *j == end)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::Consistency(format!("no coefficient on F_{end}")))
    };
    let left = end_value(s1 + 1, 1, s1)?;
    let right = end_value(s - s2, s, s2)?;
    Ok(ResolutionProfile {
        s1,
        s2,
        intersections: (left, right),
        mult: 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMatch {
    pub s_min: i64,
    /// `A_k` indices of the two local points.
    pub local_types: (i64, i64),
}

/// Reads `1/(s_i + 1) = 1/r_i` as `s_i = r_i - 1`; the chain then needs `s ≥ r_1 + r_2 - 1`.
pub fn match_indices(r1: i64, r2: i64) -> Result<IndexMatch> {
    if r1 < 1 || r1 > r2 {
        return Err(Error::Domain(format!(
            "need 1 <= r1 <= r2, got ({r1}, {r2})"
        )));
    }
    Ok(IndexMatch {
        s_min: r1 + r2 - 1,
        local_types: (r1 - 1, r2 - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: usize, nodes: &[usize]) -> ChainConfig {
        ChainConfig::new((1..=s).map(|j| nodes.contains(&j)).collect()).unwrap()
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(
            pullback_coeffs(&cfg(3, &[1, 2]), 3).unwrap(),
            vec![(1, Rat::new(1, 3)), (2, Rat::new(2, 3))]
        );
        assert!(pullback_coeffs(&cfg(1, &[]), 1).unwrap().is_empty());
        assert_eq!(
            pullback_coeffs(&cfg(2, &[2]), 1).unwrap(),
            vec![(2, Rat::new(1, 2))]
        );
        assert!(pullback_coeffs(&cfg(3, &[1, 2]), 2).is_err());
    }

    #[test]
    fn profile_examples() {
        let p = partial_resolution_profile(&cfg(5, &[1, 2, 5])).unwrap();
        assert_eq!((p.s1, p.s2), (2, 1));
        assert_eq!(p.intersections, (Rat::new(1, 3), Rat::new(1, 2)));
        let p = partial_resolution_profile(&cfg(1, &[])).unwrap();
        assert_eq!((p.s1, p.s2), (0, 0));
        assert_eq!(p.intersections, (Rat::one(), Rat::one()));
        let p = partial_resolution_profile(&cfg(4, &[2, 3])).unwrap();
        assert_eq!((p.s1, p.s2), (0, 0));
        assert_eq!(p.mult, 1);
    }

    #[test]
    fn match_examples() {
        assert_eq!(
            match_indices(2, 4).unwrap(),
            IndexMatch {
                s_min: 5,
                local_types: (1, 3)
            }
        );
        assert_eq!(
            match_indices(1, 7).unwrap(),
            IndexMatch {
                s_min: 7,
                local_types: (0, 6)
            }
        );
        assert_eq!(match_indices(3, 5).unwrap().s_min, 7);
        assert!(match_indices(5, 3).is_err());
    }

    #[test]
    fn bitmask_validation() {
        assert_eq!(
            ChainConfig::from_bitmask(5, 0b10011).unwrap(),
            cfg(5, &[1, 2, 5])
        );
        assert!(ChainConfig::from_bitmask(3, 0b111).is_err());
        assert!(ChainConfig::from_bitmask(3, 0b1000).is_err());
    }
}
