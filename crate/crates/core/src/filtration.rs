//! Brute-force weight filtration on the coordinate ring of `xy + z² + w^N`.
//!
//! Every element has a unique expansion `v₁(x, z, w) + v₂(y, z, w)` with `v₂`
//! divisible by `y`, obtained by rewriting `xy = -(z² + w^N)`. When
//! `wt(x) + wt(y) ≤ min(2 wt(z), N wt(w))` the weight of an element is the
//! least weight in that expansion, so the filtration is counted on monomials.

use serde::{Deserialize, Serialize};

use crate::blowup::WeightVec4;
use crate::error::{Error, Result};

/// Coordinate ring of `xy + z² + w^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CA1Ring {
    n: u32,
}

impl CA1Ring {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("N must be at least 2, got {n}")));
        }
        Ok(CA1Ring { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Whether the monomial count computes the weight filtration for `w`.
    pub fn counts_filtration(&self, w: &WeightVec4) -> bool {
        let [x, y, z, t] = w.get();
        x + y <= (2 * z).min(self.n as i64 * t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    XSide,
    YSide,
}

/// `x^p z^c w^d` on the x-side, `y^p z^c w^d` with `p ≥ 1` on the y-side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedMonomial {
    pub branch: Branch,
    pub power: u32,
    pub z: u32,
    pub w: u32,
}

impl ReducedMonomial {
    pub fn weight(&self, wt: &WeightVec4) -> i64 {
        let [x, y, z, w] = wt.get();
        let lead = match self.branch {
            Branch::XSide => x,
            Branch::YSide => y,
        };
        lead * self.power as i64 + z * self.z as i64 + w * self.w as i64
    }
}

/// All basis monomials of weight `< bound`.
pub fn monomials_below(wt: &WeightVec4, bound: i64) -> Vec<ReducedMonomial> {
    let [x, y, z, w] = wt.get();
    let mut out = Vec::new();
    for (branch, lead, start) in [(Branch::XSide, x, 0), (Branch::YSide, y, 1)] {
        let mut p = start;
        while lead * p < bound {
            let mut c = 0;
            while lead * p + z * c < bound {
                let rest = bound - lead * p - z * c;
                // w^d with d·w < rest
                for d in 0..((rest - 1) / w + 1) {
                    out.push(ReducedMonomial {
                        branch,
                        power: p as u32,
                        z: c as u32,
                        w: d as u32,
                    });
                }
                c += 1;
            }
            p += 1;
        }
    }
    out
}

/// `dim O / I_i` for `i = 1..=i_max`, where `I_i` is spanned by weight `≥ i`.
pub fn filtration_dims(ring: &CA1Ring, w: &WeightVec4, i_max: i64) -> Result<Vec<u64>> {
    if !ring.counts_filtration(w) {
        return Err(Error::Domain(format!(
            "weights {w} do not make the monomial count exact on xy+z^2+w^{}",
            ring.n
        )));
    }
    let all = monomials_below(w, i_max);
    Ok((1..=i_max)
        .map(|i| all.iter().filter(|m| m.weight(w) < i).count() as u64)
        .collect())
}

/// Number of basis monomials of weight exactly `i`, for `i = 0..i_max`.
///
/// For weights `(s, 2t-s, t, 1)` the count must be `⌊i/s⌋ + 1` below `t`;
/// anything else means the weights and the ring do not belong together.
pub fn graded_counts(ring: &CA1Ring, w: &WeightVec4, i_max: i64) -> Result<Vec<u64>> {
    let dims = filtration_dims(ring, w, i_max)?;
    let mut prev = 0;
    let mut counts = Vec::with_capacity(dims.len());
    for d in dims {
        counts.push(d - prev);
        prev = d;
    }
    let [s, y, t, one] = w.get();
    if one == 1 && s + y == 2 * t {
        for (i, &n) in counts.iter().enumerate().take(t as usize) {
            let expected = (i as i64 / s + 1) as u64;
            if n != expected {
                return Err(Error::Consistency(format!(
                    "N_{i} = {n} for weights {w}, expected {expected}"
                )));
            }
        }
    }
    Ok(counts)
}

/// Polynomial in `w` alone, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WPoly {
    coeffs: Vec<i64>,
}

impl WPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        WPoly { coeffs }
    }

    pub fn zero() -> Self {
        WPoly::default()
    }

    pub fn monomial(k: usize, c: i64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        WPoly::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &WPoly) -> WPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        WPoly::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&0) + other.coeffs.get(k).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn mul(&self, other: &WPoly) -> WPoly {
        if self.is_zero() || other.is_zero() {
            return WPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        WPoly::new(out)
    }
}

impl std::str::FromStr for WPoly {
    type Err = Error;
    /// Comma-separated coefficients, constant term first: `"0,1"` is `w`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(WPoly::zero());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(WPoly::new)
    }
}

/// Order of vanishing at `w = 0`; `None` stands for `+∞`.
pub fn ord_w(p: &WPoly) -> Option<usize> {
    p.coeffs.iter().position(|&c| c != 0)
}

/// `min{2a, a + ord p, ord(p² + w^N)} - 1`, the `A_s` type of the special surface.
pub fn special_surface_type(a: i64, p: &WPoly, n: u32) -> Result<i64> {
    if a < 2 {
        return Err(Error::Domain(format!("a must be at least 2, got {a}")));
    }
    if p.coeffs.first().is_some_and(|&c| c != 0) {
        return Err(Error::Domain("p must vanish at w = 0".into()));
    }
    if p.degree().is_some_and(|d| d as i64 >= a) {
        return Err(Error::Domain(format!("p must have degree below a = {a}")));
    }
    let mut m = 2 * a;
    if let Some(o) = ord_w(p) {
        m = m.min(a + o as i64);
    }
    let q = p.mul(p).add(&WPoly::monomial(n as usize, 1));
    if let Some(o) = ord_w(&q) {
        m = m.min(o as i64);
    }
    Ok(m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: [i64; 4]) -> WeightVec4 {
        WeightVec4::new(w).unwrap()
    }

    #[test]
    fn filtration_examples() {
        let ring = CA1Ring::new(6).unwrap();
        assert_eq!(
            filtration_dims(&ring, &wv([2, 4, 3, 1]), 3).unwrap(),
            vec![1, 2, 4]
        );
        for n in 2..6 {
            let ring = CA1Ring::new(n).unwrap();
            assert_eq!(
                filtration_dims(&ring, &wv([1, 1, 1, 1]), 2).unwrap(),
                vec![1, 5]
            );
        }
        let ring = CA1Ring::new(3).unwrap();
        assert_eq!(
            filtration_dims(&ring, &wv([1, 5, 3, 2]), 4).unwrap(),
            vec![1, 2, 4, 7]
        );
        assert!(filtration_dims(&ring, &wv([2, 2, 1, 1]), 2).is_err());
    }

    #[test]
    fn second_step_counts_weight_one_coordinates() {
        for (s, t) in [(1, 2), (2, 3), (3, 4), (1, 5), (3, 5)] {
            let w = WeightVec4::family(s, t).unwrap();
            let ring = CA1Ring::new(2 * t as u32).unwrap();
            let ones = w.get().iter().filter(|&&x| x == 1).count() as u64;
            assert_eq!(filtration_dims(&ring, &w, 2).unwrap()[1], 1 + ones);
        }
    }

    #[test]
    fn graded_examples() {
        let g = |s, t, n| {
            graded_counts(
                &CA1Ring::new(n).unwrap(),
                &WeightVec4::family(s, t).unwrap(),
                t,
            )
            .unwrap()
        };
        assert_eq!(g(2, 3, 6), vec![1, 1, 2]);
        assert_eq!(g(3, 4, 8), vec![1, 1, 1, 2]);
        assert_eq!(g(1, 5, 10), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord_w(&WPoly::zero()), None);
        assert_eq!(ord_w(&WPoly::new(vec![0, 0, 0, 1, 0, 1])), Some(3));
        assert_eq!(ord_w(&WPoly::new(vec![1])), Some(0));
    }

    #[test]
    fn special_surface_examples() {
        for a in 2..6 {
            assert_eq!(
                special_surface_type(a, &WPoly::zero(), 2 * a as u32 + 1).unwrap(),
                2 * a - 1
            );
            assert_eq!(
                special_surface_type(a, &WPoly::zero(), 2 * a as u32 - 1).unwrap(),
                2 * a - 2
            );
        }
        assert_eq!(
            special_surface_type(3, &WPoly::new(vec![0, 1]), 10).unwrap(),
            1
        );
        assert!(special_surface_type(3, &WPoly::new(vec![1, 1]), 10).is_err());
        assert!(special_surface_type(3, &WPoly::new(vec![0, 0, 0, 1]), 10).is_err());
        assert_eq!("0, 1".parse::<WPoly>().unwrap(), WPoly::new(vec![0, 1]));
    }
}
