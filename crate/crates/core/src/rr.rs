//! Singular Riemann–Roch arithmetic on baskets of fictitious singularities.
//!
//! A divisorial contraction `f: (Y ⊃ E) → (X ∋ P)` to a Gorenstein point has
//! discrepancy `a` (`K_Y = f^*K_X + aE`), global index `r` and an integer `e`
//! with `a·e ≡ 1 (mod r)`. Every non-Gorenstein point of `Y` deforms to
//! quotient points `1/r_Q(1, -1, b_Q)`; the basket records `(r_Q, v_Q)` with
//! `v_Q` the residue of `e·b_Q` normalised to `v_Q ≤ r_Q / 2`. Everything here
//! is a closed formula in that data, evaluated exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gcd, lcm_all, residue, Rat};

/// One quotient point `1/r(1, -1, b)` of the basket, recorded as `(r, v)` and
/// optionally `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FictitiousPoint {
    pub r: i64,
    pub v: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
}

impl FictitiousPoint {
    pub fn new(r: i64, v: i64) -> Result<Self> {
        Self::build(r, v, None)
    }

    pub fn with_b(r: i64, v: i64, b: i64) -> Result<Self> {
        Self::build(r, v, Some(b))
    }

    fn build(r: i64, v: i64, b: Option<i64>) -> Result<Self> {
        if r < 2 {
            return Err(Error::Domain(format!("basket index must be >= 2, got {r}")));
        }
        if v < 1 || 2 * v > r {
            return Err(Error::Domain(format!(
                "need 1 <= v <= r/2, got (r, v) = ({r}, {v})"
            )));
        }
        if gcd(v, r) != 1 {
            return Err(Error::Domain(format!("v = {v} is not coprime to r = {r}")));
        }
        if let Some(b) = b {
            if !(1..r).contains(&b) || gcd(b, r) != 1 {
                return Err(Error::Domain(format!("b = {b} is not a unit modulo {r}")));
            }
        }
        Ok(FictitiousPoint { r, v, b })
    }

    /// `v(r - v) / r`.
    pub fn defect(&self) -> Rat {
        Rat::new(self.v * (self.r - self.v), self.r)
    }
}

impl fmt::Display for FictitiousPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            Some(b) => write!(f, "({}, {}, {})", self.r, self.v, b),
            None => write!(f, "({}, {})", self.r, self.v),
        }
    }
}

/// Multiset of fictitious points, kept sorted by `(r, v, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Basket {
    points: Vec<FictitiousPoint>,
}

impl Basket {
    pub fn new(mut points: Vec<FictitiousPoint>) -> Self {
        points.sort();
        Basket { points }
    }

    pub fn empty() -> Self {
        Basket::default()
    }

    /// Convenience constructor from `(r, v)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let points = pairs
            .iter()
            .map(|&(r, v)| FictitiousPoint::new(r, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Basket::new(points))
    }

    /// Convenience constructor from `(r, v, b)` triples.
    pub fn from_triples(triples: &[(i64, i64, i64)]) -> Result<Self> {
        let points = triples
            .iter()
            .map(|&(r, v, b)| FictitiousPoint::with_b(r, v, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Basket::new(points))
    }

    pub fn points(&self) -> &[FictitiousPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Global index: lcm of the `r_Q`, or 1 for the empty basket.
    pub fn index(&self) -> i64 {
        lcm_all(self.points.iter().map(|p| p.r))
    }

    /// The `(r, v)` shape with every `b` dropped.
    pub fn shape(&self) -> Basket {
        Basket::new(
            self.points
                .iter()
                .map(|p| FictitiousPoint { b: None, ..*p })
                .collect(),
        )
    }

    pub fn has_all_b(&self) -> bool {
        self.points.iter().all(|p| p.b.is_some())
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Parses `"r:v,r:v"` or `"r:v:b,..."`; the empty string is the empty basket.
impl FromStr for Basket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if s.is_empty() {
            return Ok(Basket::empty());
        }
        let mut points = Vec::new();
        for item in s.split(',') {
            let fields = item
                .split(':')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad basket entry {item:?}")))?;
            let point = match fields.as_slice() {
                [r, v] => FictitiousPoint::new(*r, *v)?,
                [r, v, b] => FictitiousPoint::with_b(*r, *v, *b)?,
                _ => return Err(Error::Parse(format!("bad basket entry {item:?}"))),
            };
            points.push(point);
        }
        Ok(Basket::new(points))
    }
}

/// Global numerical data of a contraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RRContext {
    pub a: i64,
    pub r: i64,
    pub e: i64,
    pub e3: Rat,
    pub ec2: Option<Rat>,
}

impl RRContext {
    /// Checks `gcd(a, r_Q) = 1`, `a·e ≡ 1 (mod r)` and `r·E³ ∈ Z_{>0}`.
    pub fn validate(&self, basket: &Basket) -> Result<()> {
        if self.a < 1 {
            return Err(Error::Domain(format!(
                "discrepancy must be positive, got {}",
                self.a
            )));
        }
        if let Some(p) = basket.points().iter().find(|p| gcd(self.a, p.r) != 1) {
            return Err(Error::Domain(format!(
                "a = {} is not coprime to r_Q = {}",
                self.a, p.r
            )));
        }
        if residue(self.a * self.e, self.r) != residue(1, self.r) {
            return Err(Error::Domain(format!(
                "a·e = {}·{} is not 1 modulo {}",
                self.a, self.e, self.r
            )));
        }
        let re3 = &self.e3 * self.r;
        if !re3.is_integer() || !re3.is_positive() {
            return Err(Error::Domain(format!(
                "r·E^3 = {re3} is not a positive integer"
            )));
        }
        Ok(())
    }
}

/// `a·E³ = 2 - Σ v_Q (r_Q - v_Q) / r_Q`. May be non-positive; callers filter.
pub fn a_e3(basket: &Basket) -> Rat {
    Rat::from_int(2)
        - basket
            .points()
            .iter()
            .map(FictitiousPoint::defect)
            .sum::<Rat>()
}

/// `min_{0 <= j < i} {(1 + j) j r + i (i - 1 - 2j) v}` for one point.
fn local_min_term(i: i64, p: &FictitiousPoint) -> i64 {
    (0..i)
        .map(|j| (1 + j) * j * p.r + i * (i - 1 - 2 * j) * p.v)
        .min()
        .expect("i >= 1")
}

/// `dim O_X / f_*O_Y(-iE)` for `1 <= i <= a`.
///
/// Evaluates `i² - ½ Σ_Q min_{0≤j<i} {(1+j) j r_Q + i(i-1-2j) v_Q}` and
/// rejects a non-integral or negative value as an inconsistent basket.
pub fn dim_quotient(i: i64, a: i64, basket: &Basket) -> Result<u64> {
    if i < 1 || i > a {
        return Err(Error::Domain(format!(
            "need 1 <= i <= a, got i = {i}, a = {a}"
        )));
    }
    let total: i64 = basket.points().iter().map(|p| local_min_term(i, p)).sum();
    if total % 2 != 0 {
        return Err(Error::InconsistentBasket(format!(
            "dim O/f_*O(-{i}E) = {i}^2 - {total}/2 is not an integer for {basket}"
        )));
    }
    let dim = i * i - total / 2;
    u64::try_from(dim).map_err(|_| {
        Error::InconsistentBasket(format!(
            "dim O/f_*O(-{i}E) = {dim} is negative for {basket}"
        ))
    })
}

/// `dim m_P / f_*O_Y(-iE)`, i.e. [`dim_quotient`] minus the constants.
pub fn dim_max_ideal_quotient(i: i64, a: i64, basket: &Basket) -> Result<u64> {
    dim_quotient(i, a, basket)?.checked_sub(1).ok_or_else(|| {
        Error::InconsistentBasket(format!(
            "dim O/f_*O(-{i}E) = 0 for {basket}, but the constants survive"
        ))
    })
}

/// Closed forms quoted for `J = {(r, 2)}`, `a = 4` at `i = 3, 4`:
/// `3 + max{0, 6 - r}` and `4 + max{0, 8 - r}`. They are stated for
/// `dim m_P / f_*O_Y(-iE)` but agree with [`dim_quotient`] (the colength in
/// `O_X`), one more than [`dim_max_ideal_quotient`]; see the tests.
pub fn closed_form_r2_a4(i: i64, r: i64) -> Option<i64> {
    match i {
        3 => Some(3 + 0.max(6 - r)),
        4 => Some(4 + 0.max(8 - r)),
        _ => None,
    }
}

pub fn sum_v(basket: &Basket) -> i64 {
    basket.points().iter().map(|p| p.v).sum()
}

/// `d = dim m_P / f_*O_Y(-2E) = 3 - Σ v_Q`, when that lies in `0..=3`.
pub fn admissible_d(basket: &Basket) -> Result<i64> {
    let d = 3 - sum_v(basket);
    if (0..=3).contains(&d) {
        Ok(d)
    } else {
        Err(Error::InconsistentBasket(format!(
            "Σ v_Q = {} > 3 leaves no admissible dim m_P/f_*O(-2E) for {basket}",
            sum_v(basket)
        )))
    }
}

/// Whether `Σ v_Q = 3 - d`.
pub fn check_sum_v(basket: &Basket, d: i64) -> bool {
    (0..=3).contains(&d) && sum_v(basket) == 3 - d
}

/// Correction term
/// `A_i = Σ_Q ( -\overline{ie}(r_Q²-1)/(12 r_Q) + Σ_{j=1}^{\overline{ie}-1} \overline{j b_Q}(r_Q - \overline{j b_Q})/(2 r_Q) )`,
/// residues taken modulo each `r_Q`. Every point must carry `b_Q`.
pub fn a_i_correction(i: i64, e: i64, basket: &Basket) -> Result<Rat> {
    let mut total = Rat::zero();
    for p in basket.points() {
        let b = p.b.ok_or_else(|| {
            Error::Contract(format!(
                "A_i needs b_Q on every basket point, missing on {p}"
            ))
        })?;
        let ie = residue(i * e, p.r);
        let mut inner = 0i64;
        for j in 1..ie {
            let jb = residue(j * b, p.r);
            inner += jb * (p.r - jb);
        }
        total += Rat::new(-ie * (p.r * p.r - 1), 12 * p.r) + Rat::new(inner, 2 * p.r);
    }
    Ok(total)
}

/// `(1/12){2(3i² - 3i + 1) - 3(2i - 1)a + a²} E³`.
pub fn polynomial_part(i: i64, a: i64, e3: &Rat) -> Rat {
    let bracket = 2 * (3 * i * i - 3 * i + 1) - 3 * (2 * i - 1) * a + a * a;
    e3 * &Rat::new(bracket, 12)
}

/// Right-hand side of the graded-dimension identity for
/// `dim f_*O_Y(iE) / f_*O_Y((i-1)E)`:
/// polynomial part `+ E·c₂/12 + A_i - A_{i-1}`.
pub fn graded_dim(i: i64, ctx: &RRContext, basket: &Basket) -> Result<Rat> {
    let ec2 = ctx
        .ec2
        .as_ref()
        .ok_or_else(|| Error::Contract("graded_dim needs E·c_2 in the context".into()))?;
    Ok(polynomial_part(i, ctx.a, &ctx.e3)
        + ec2 / &Rat::from_int(12)
        + a_i_correction(i, ctx.e, basket)?
        - a_i_correction(i - 1, ctx.e, basket)?)
}

/// The value of `E·c₂` making [`graded_dim`] vanish at `i`.
pub fn solve_ec2(i: i64, a: i64, e: i64, e3: &Rat, basket: &Basket) -> Result<Rat> {
    let rest = polynomial_part(i, a, e3) + a_i_correction(i, e, basket)?
        - a_i_correction(i - 1, e, basket)?;
    Ok(-rest * 12)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum C2Verdict {
    /// Every equation `i = 1..=a` is solved by the same `E·c₂`.
    Consistent { ec2: Rat },
    /// The first two equations with different solutions.
    Contradiction {
        first: (i64, Rat),
        second: (i64, Rat),
    },
}

impl C2Verdict {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, C2Verdict::Contradiction { .. })
    }
}

/// Full record of the `E·c₂` test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Report {
    pub basket: Basket,
    pub a: i64,
    pub e: i64,
    pub e3: Rat,
    /// `A_0, A_1, ..., A_a`.
    pub corrections: Vec<Rat>,
    /// `(i, E·c₂)` solving the `i`-th equation.
    pub solutions: Vec<(i64, Rat)>,
    pub verdict: C2Verdict,
}

/// Tests a basket (with `b_Q`) against the graded-dimension identity.
///
/// Assumes `dim f_*O_Y(iE)/f_*O_Y((i-1)E) = 0` for `1 <= i <= a`, which holds
/// because `E` is an effective exceptional divisor. Each `i` gives a linear
/// equation in the unknown `E·c₂`; the basket is contradicted when two of
/// them have different solutions.
pub fn exclude_by_c2(basket: &Basket, a: i64, e: i64, e3: &Rat) -> Result<C2Report> {
    if a < 1 {
        return Err(Error::Domain(format!(
            "discrepancy must be positive, got {a}"
        )));
    }
    let corrections = (0..=a)
        .map(|i| a_i_correction(i, e, basket))
        .collect::<Result<Vec<_>>>()?;
    let solutions: Vec<(i64, Rat)> = (1..=a)
        .map(|i| {
            let ec2 = -(polynomial_part(i, a, e3) + &corrections[i as usize]
                - &corrections[i as usize - 1])
                * 12;
            (i, ec2)
        })
        .collect();
    let (_, first) = &solutions[0];
    let verdict = match solutions.iter().find(|(_, v)| v != first) {
        None => C2Verdict::Consistent { ec2: first.clone() },
        Some(other) => C2Verdict::Contradiction {
            first: solutions[0].clone(),
            second: other.clone(),
        },
    };
    Ok(C2Report {
        basket: basket.clone(),
        a,
        e,
        e3: e3.clone(),
        corrections,
        solutions,
        verdict,
    })
}
