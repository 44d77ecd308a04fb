use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::weight_dot;

pub type Exponent = [u32; 4];

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// Positive integer weights on `(x, y, z, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct WeightVec4([i64; 4]);

impl WeightVec4 {
    pub fn new(w: [i64; 4]) -> Result<Self> {
        if w.iter().any(|&x| x < 1) {
            return Err(Error::Domain(format!(
                "weights must be positive, got {w:?}"
            )));
        }
        Ok(WeightVec4(w))
    }

    /// `(s, 2t - s, t, 1)`.
    pub fn family(s: i64, t: i64) -> Result<Self> {
        WeightVec4::new([s, 2 * t - s, t, 1])
    }

    pub fn get(&self) -> [i64; 4] {
        self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn product(&self) -> i64 {
        self.0.iter().product()
    }

    /// Weights with those of `x` and `y` exchanged.
    pub fn swap_xy(&self) -> Self {
        let [a, b, c, d] = self.0;
        WeightVec4([b, a, c, d])
    }
}

impl TryFrom<[i64; 4]> for WeightVec4 {
    type Error = Error;
    fn try_from(w: [i64; 4]) -> Result<Self> {
        WeightVec4::new(w)
    }
}

impl From<WeightVec4> for [i64; 4] {
    fn from(w: WeightVec4) -> Self {
        w.0
    }
}

impl fmt::Display for WeightVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl FromStr for WeightVec4 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad weight vector {s:?}")))?;
        let arr: [i64; 4] = parts
            .try_into()
            .map_err(|_| Error::Parse(format!("need four weights, got {s:?}")))?;
        WeightVec4::new(arr)
    }
}

/// Sparse polynomial in four variables with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Term>", from = "Vec<Term>")]
pub struct MonoPoly {
    terms: BTreeMap<Exponent, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponent: Exponent,
    pub coefficient: i64,
}

impl From<MonoPoly> for Vec<Term> {
    fn from(p: MonoPoly) -> Self {
        p.terms
            .into_iter()
            .map(|(exponent, coefficient)| Term {
                exponent,
                coefficient,
            })
            .collect()
    }
}

impl From<Vec<Term>> for MonoPoly {
    fn from(ts: Vec<Term>) -> Self {
        MonoPoly::from_terms(ts.into_iter().map(|t| (t.exponent, t.coefficient)))
    }
}

impl MonoPoly {
    pub fn new() -> Self {
        MonoPoly::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, i64)>>(terms: I) -> Self {
        let mut p = MonoPoly::new();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `xy + z² + w^n`.
    pub fn ca1(n: u32) -> Self {
        MonoPoly::from_terms([([1, 1, 0, 0], 1), ([0, 0, 2, 0], 1), ([0, 0, 0, n], 1)])
    }

    pub fn monomial(e: Exponent) -> Self {
        MonoPoly::from_terms([(e, 1)])
    }

    pub fn add_term(&mut self, e: Exponent, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &i64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn constant(&self) -> i64 {
        self.coefficient(&[0; 4])
    }

    /// Variables `k` carrying a pure linear term `c·u_k`.
    pub fn linear_vars(&self) -> Vec<usize> {
        (0..4)
            .filter(|&k| {
                let mut e = [0; 4];
                e[k] = 1;
                self.terms.contains_key(&e)
            })
            .collect()
    }

    /// Minimum of `exponent · w` over the terms; `None` for the zero polynomial.
    pub fn min_weight(&self, w: &[i64; 4]) -> Option<i64> {
        self.terms.keys().map(|e| weight_dot(e, w)).min()
    }

    /// Sum of the terms of minimal weight.
    pub fn initial_form(&self, w: &[i64; 4]) -> MonoPoly {
        let Some(m) = self.min_weight(w) else {
            return MonoPoly::new();
        };
        MonoPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weight_dot(e, w) == m)
                .map(|(e, c)| (*e, *c))
                .collect(),
        }
    }

    /// Sets every variable outside `keep` to zero.
    pub fn restrict(&self, keep: &[bool; 4]) -> MonoPoly {
        MonoPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| (0..4).all(|k| keep[k] || e[k] == 0))
                .map(|(e, c)| (*e, *c))
                .collect(),
        }
    }

    /// Terms `c·u_k^n` only, as coefficients indexed by `n`.
    pub fn along_axis(&self, k: usize) -> Vec<i64> {
        self.axis_coefficients(k, None)
    }

    /// Coefficients of `u_j·u_k^n` (the value of `∂g/∂u_j` on the `u_k` axis).
    pub fn partial_along_axis(&self, j: usize, k: usize) -> Vec<i64> {
        debug_assert_ne!(j, k);
        self.axis_coefficients(k, Some(j))
    }

    fn axis_coefficients(&self, k: usize, linear_in: Option<usize>) -> Vec<i64> {
        let mut out = Vec::new();
        for (e, &c) in &self.terms {
            let ok = (0..4).all(|m| {
                if m == k {
                    true
                } else if Some(m) == linear_in {
                    e[m] == 1
                } else {
                    e[m] == 0
                }
            });
            if ok {
                let n = e[k] as usize;
                if out.len() <= n {
                    out.resize(n + 1, 0);
                }
                out[n] += c;
            }
        }
        out
    }

    /// The variables that occur in some term.
    pub fn support(&self) -> [bool; 4] {
        let mut s = [false; 4];
        for e in self.terms.keys() {
            for k in 0..4 {
                s[k] |= e[k] > 0;
            }
        }
        s
    }

    /// Evaluates modulo a prime.
    pub fn eval_mod(&self, u: &[u64; 4], p: u64) -> u64 {
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut t = c.rem_euclid(p as i64) as u64;
            for k in 0..4 {
                t = t * pow_mod(u[k], e[k] as u64, p) % p;
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, k: usize) -> MonoPoly {
        let mut out = MonoPoly::new();
        for (e, &c) in &self.terms {
            if e[k] > 0 {
                let mut f = *e;
                f[k] -= 1;
                out.add_term(f, c * e[k] as i64);
            }
        }
        out
    }

    /// Exchanges the first two variables.
    pub fn swap_xy(&self) -> MonoPoly {
        MonoPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, &c)| ([e[1], e[0], e[2], e[3]], c)),
        )
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl fmt::Display for MonoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Lowest total degree first, so germs read as xy+z^2+w^K.
        let mut terms: Vec<(&Exponent, &i64)> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| {
            let deg: u32 = e.iter().sum();
            (deg, e.iter().position(|&x| x > 0).unwrap_or(4), **e)
        });
        for (idx, (e, &c)) in terms.into_iter().enumerate() {
            let mono: String = (0..4)
                .filter(|&k| e[k] > 0)
                .map(|k| {
                    if e[k] == 1 {
                        NAMES[k].to_string()
                    } else {
                        format!("{}^{}", NAMES[k], e[k])
                    }
                })
                .collect();
            let sign = if c < 0 {
                "-"
            } else if idx > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if mono.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}{mono}")?;
            } else {
                write!(f, "{sign}{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MonoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
