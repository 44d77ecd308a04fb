//! The numerical game: baskets and discrepancies compatible with all the
//! singular Riemann–Roch constraints.
//!
//! Baskets with a fixed value of `Σ v_Q` are generated in canonical order.
//! Positivity of `a·E³ = 2 - Σ v_Q(r_Q - v_Q)/r_Q` bounds every branch of the
//! search except the genuinely infinite families, which are detected
//! exactly (the limit of the defect as `r → ∞` is `v`) and reported
//! parametrically alongside their members up to a caller-chosen bound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gcd, lcm, mod_inverse, residue, Rat};
use crate::rr::{a_e3, exclude_by_c2, Basket, C2Report, FictitiousPoint};

/// Default cap on materialised members of unbounded families.
pub const DEFAULT_R_BOUND: i64 = 64;

/// Case of the numerical classification, keyed by `d = dim m_P/f_*O_Y(-2E)`
/// and the basket shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "2.0")]
    Case2_0,
    #[serde(rename = "2.1.1")]
    Case2_1_1,
    #[serde(rename = "2.1.2")]
    Case2_1_2,
    #[serde(rename = "2.2")]
    Case2_2,
    #[serde(rename = "2.3")]
    Case2_3,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Case2_0 => "2.0",
            CaseLabel::Case2_1_1 => "2.1.1",
            CaseLabel::Case2_1_2 => "2.1.2",
            CaseLabel::Case2_2 => "2.2",
            CaseLabel::Case2_3 => "2.3",
        }
    }

    /// Label for a basket with `Σ v_Q = 3 - d`.
    pub fn classify(basket: &Basket) -> Result<CaseLabel> {
        let d = crate::rr::admissible_d(basket)?;
        Ok(match d {
            0 => CaseLabel::Case2_0,
            1 if basket.len() == 1 => CaseLabel::Case2_1_1,
            1 => CaseLabel::Case2_1_2,
            2 => CaseLabel::Case2_2,
            _ => CaseLabel::Case2_3,
        })
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub basket: Basket,
    pub a: i64,
    pub e3: Rat,
    pub r: i64,
    pub e: i64,
    pub case: CaseLabel,
}

impl Candidate {
    fn build(basket: Basket, a: i64, case: CaseLabel) -> Candidate {
        let r = basket.index();
        let e3 = a_e3(&basket) / &Rat::from_int(a);
        let e = mod_inverse(a, r).expect("a is coprime to every r_Q");
        Candidate {
            basket,
            a,
            e3,
            r,
            e,
            case,
        }
    }
}

/// `fixed ∪ {(r, free_v)}` for every `r >= r_min` with `gcd(free_v, r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametricFamily {
    pub fixed: Basket,
    pub free_v: i64,
    pub r_min: i64,
}

impl ParametricFamily {
    /// `c` in `a·E³ = c + v²/r`.
    pub fn constant_term(&self) -> Rat {
        Rat::from_int(2 - self.free_v) - a_e3_defects(&self.fixed)
    }

    pub fn member(&self, r: i64) -> Option<Basket> {
        if r < self.r_min || 2 * self.free_v > r || gcd(self.free_v, r) != 1 {
            return None;
        }
        let mut pts = self.fixed.points().to_vec();
        pts.push(FictitiousPoint::new(r, self.free_v).ok()?);
        Some(Basket::new(pts))
    }

    /// `a·E³` as a formula in the free index, e.g. `1/r3`.
    pub fn ae3_formula(&self, var: &str) -> String {
        let c = self.constant_term();
        let sq = self.free_v * self.free_v;
        if c.is_zero() {
            format!("{sq}/{var}")
        } else {
            format!("{c} + {sq}/{var}")
        }
    }

    /// Discrepancies `a >= 2` realised by some member, decided exactly.
    ///
    /// Only families with vanishing constant term are handled: there
    /// `r·a·E³ = L v² / gcd(L, r)` with `L` the lcm of the fixed indices,
    /// so admissibility is periodic in `r` with period `lcm(L, a, v)`.
    pub fn admissible_discrepancies(&self) -> Option<Vec<(i64, i64)>> {
        if !self.constant_term().is_zero() {
            return None;
        }
        let l = self.fixed.index();
        let v = self.free_v;
        let bound = l * v * v;
        let mut out = Vec::new();
        for a in 2..=bound {
            if self.fixed.points().iter().any(|p| gcd(a, p.r) != 1) {
                continue;
            }
            let period = lcm(lcm(l, a), v);
            let witness = (self.r_min..self.r_min + period).find_map(|r| {
                let member = self.member(r)?;
                admissible_a(&member).contains(&a).then_some(r)
            });
            if let Some(r) = witness {
                out.push((a, r));
            }
        }
        Some(out)
    }
}

fn a_e3_defects(basket: &Basket) -> Rat {
    basket.points().iter().map(FictitiousPoint::defect).sum()
}

/// Result of generating all baskets with a fixed `Σ v_Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeSearch {
    /// Baskets not belonging to a detected family, complete unless
    /// `truncated`.
    pub finite: Vec<Basket>,
    pub families: Vec<ParametricFamily>,
    /// Family members with index up to the cap.
    pub family_members: Vec<Basket>,
    /// Set when an unbounded branch not of the one-free-index form was cut
    /// at the cap.
    pub truncated: bool,
}

impl ShapeSearch {
    /// Every materialised basket, sorted.
    pub fn all(&self) -> Vec<Basket> {
        let mut v: Vec<Basket> = self
            .finite
            .iter()
            .chain(&self.family_members)
            .cloned()
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// All baskets with `Σ v_Q = total` and `a·E³ > 0`; unbounded directions are
/// materialised up to index `cap`.
pub fn search_baskets(total: i64, cap: i64) -> ShapeSearch {
    let mut out = ShapeSearch::default();
    let mut prefix = Vec::new();
    if total == 0 {
        out.finite.push(Basket::empty());
        return out;
    }
    extend(&mut prefix, Rat::zero(), total, (2, 1), cap, &mut out);
    out.finite.sort();
    out.family_members.sort();
    out
}

/// Lower bound on the final defect when the next point is `(r, v)` and the
/// remaining `rest` of `Σ v` goes to points of index at least `r`.
fn defect_lower_bound(current: &Rat, r: i64, v: i64, rest: i64) -> Rat {
    current + &Rat::new(v * (r - v), r) + Rat::new(rest * r - rest * rest, r)
}

fn extend(
    prefix: &mut Vec<FictitiousPoint>,
    current: Rat,
    remaining: i64,
    min_point: (i64, i64),
    cap: i64,
    out: &mut ShapeSearch,
) {
    let two = Rat::from_int(2);
    // As r → ∞ every remaining point contributes its full v.
    let unbounded = current.clone() + Rat::from_int(remaining) <= two;
    let mut r = min_point.0;
    loop {
        let any_room =
            (1..=remaining).any(|v| defect_lower_bound(&current, r, v, remaining - v) < two);
        if !any_room {
            break;
        }
        if unbounded && r > cap {
            // Placing everything in one last point is a one-index family;
            // anything else beyond the cap is cut.
            if remaining >= 2 {
                out.truncated = true;
            }
            if let Some(r0) = (min_point.0..).find(|&r0| {
                (r0, remaining) >= min_point && 2 * remaining <= r0 && gcd(remaining, r0) == 1
            }) {
                record_family(prefix, remaining, r0, out);
            }
            break;
        }
        for v in 1..=remaining.min(r / 2) {
            if (r, v) < min_point || gcd(v, r) != 1 {
                continue;
            }
            let rest = remaining - v;
            if defect_lower_bound(&current, r, v, rest) >= two {
                continue;
            }
            let point = FictitiousPoint::new(r, v).expect("validated above");
            let next = current.clone() + point.defect();
            if rest == 0 {
                let family = next.clone() - point.defect() + Rat::from_int(v) <= two;
                let basket = Basket::new(prefix.iter().copied().chain([point]).collect());
                if family {
                    record_family(prefix, v, r, out);
                    out.family_members.push(basket);
                } else {
                    out.finite.push(basket);
                }
            } else {
                prefix.push(point);
                extend(prefix, next, rest, (r, v), cap, out);
                prefix.pop();
            }
        }
        r += 1;
    }
}

fn record_family(prefix: &[FictitiousPoint], v: i64, r: i64, out: &mut ShapeSearch) {
    let fixed = Basket::new(prefix.to_vec());
    if let Some(f) = out
        .families
        .iter_mut()
        .find(|f| f.fixed == fixed && f.free_v == v)
    {
        f.r_min = f.r_min.min(r);
        return;
    }
    out.families.push(ParametricFamily {
        fixed,
        free_v: v,
        r_min: r,
    });
}

/// Discrepancies `a >= 2` with `gcd(a, r_Q) = 1` and `r·E³ = r·a_e3/a` a
/// positive integer.
pub fn admissible_a(basket: &Basket) -> Vec<i64> {
    let ae3 = a_e3(basket);
    if !ae3.is_positive() {
        return Vec::new();
    }
    let n = &ae3 * basket.index();
    let Some(n) = n.to_i64() else {
        return Vec::new();
    };
    (2..=n)
        .filter(|&a| n % a == 0 && basket.points().iter().all(|p| gcd(a, p.r) == 1))
        .collect()
}

/// One row of the `Σ v_Q = 3` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTableRow {
    /// `"J={(r, 3)}"`, `"J={(r_1, 1), (r_2, 2)}"` or
    /// `"J={(r_1, 1), (r_2, 1), (r_3, 1)}"`.
    pub shape: String,
    /// The indices in the order the shape lists them, `r3` for a free one.
    pub indices: Vec<String>,
    pub ae3: String,
    /// Exact value for fixed rows.
    pub value: Option<Rat>,
    /// Set for the parametric row.
    pub family: Option<ParametricFamily>,
}

const SHAPE_SINGLE: &str = "J={(r, 3)}";
const SHAPE_PAIR: &str = "J={(r_1, 1), (r_2, 2)}";
const SHAPE_TRIPLE: &str = "J={(r_1, 1), (r_2, 1), (r_3, 1)}";

fn shape_of(basket: &Basket) -> (usize, &'static str) {
    let vs: Vec<i64> = basket.points().iter().map(|p| p.v).collect();
    match vs.len() {
        1 => (0, SHAPE_SINGLE),
        2 => (1, SHAPE_PAIR),
        _ => (2, SHAPE_TRIPLE),
    }
}

/// Indices listed with `v = 1` points first, then by index.
fn table_indices(points: &[FictitiousPoint]) -> Vec<i64> {
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| (p.v, p.r));
    pts.iter().map(|p| p.r).collect()
}

/// Every basket with `Σ v_Q = 3` and `a·E³ > 0`, grouped by shape; the one
/// infinite family is emitted as a single parametric row.
pub fn proof_table() -> Vec<ProofTableRow> {
    let search = search_baskets(3, 8);
    let mut keyed: Vec<((usize, Vec<i64>), ProofTableRow)> = Vec::new();
    for family in &search.families {
        let mut idx = table_indices(family.fixed.points());
        let mut indices: Vec<String> = idx.iter().map(i64::to_string).collect();
        indices.push("r3".into());
        idx.push(i64::MAX);
        let rank = family.fixed.len();
        let shape = [SHAPE_SINGLE, SHAPE_PAIR, SHAPE_TRIPLE][rank.min(2)];
        keyed.push((
            (rank, sort_key(rank, &idx)),
            ProofTableRow {
                shape: shape.into(),
                indices,
                ae3: family.ae3_formula("r3"),
                value: None,
                family: Some(family.clone()),
            },
        ));
    }
    for basket in &search.finite {
        let (rank, shape) = shape_of(basket);
        let idx = table_indices(basket.points());
        let value = a_e3(basket);
        keyed.push((
            (rank, sort_key(rank, &idx)),
            ProofTableRow {
                shape: shape.into(),
                indices: idx.iter().map(i64::to_string).collect(),
                ae3: value.to_string(),
                value: Some(value),
                family: None,
            },
        ));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, row)| row).collect()
}

/// Pairs are listed by the `v = 2` index first.
fn sort_key(rank: usize, idx: &[i64]) -> Vec<i64> {
    if rank == 1 {
        vec![idx[1], idx[0]]
    } else {
        idx.to_vec()
    }
}

/// Outcome of the `E·c₂` test on one candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub candidate: Candidate,
    /// One report per admissible assignment of the `b_Q`.
    pub reports: Vec<C2Report>,
    pub excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub d: i64,
    pub r_bound: i64,
    /// Candidates passing positivity, coprimality and integrality.
    pub pre_exclusion: Vec<Candidate>,
    /// Present for `d = 0` only.
    pub exclusions: Vec<Exclusion>,
    pub candidates: Vec<Candidate>,
    pub families: Vec<ParametricFamily>,
    /// Families with no admissible discrepancy, proven over a full period.
    pub excluded_families: Vec<ParametricFamily>,
    /// True when the list is complete (no unbounded direction was cut).
    pub complete: bool,
}

/// All `b_Q` with `gcd(b_Q, r_Q) = 1` and `e·b_Q ≡ ±v_Q (mod r_Q)`.
pub fn b_assignments(basket: &Basket, e: i64) -> Vec<Basket> {
    let mut acc: Vec<Vec<FictitiousPoint>> = vec![Vec::new()];
    for p in basket.points() {
        let options: Vec<i64> = (1..p.r)
            .filter(|&b| gcd(b, p.r) == 1)
            .filter(|&b| {
                let eb = residue(e * b, p.r);
                eb == p.v || eb == p.r - p.v
            })
            .collect();
        acc = acc
            .into_iter()
            .flat_map(|pre| {
                options.iter().map(move |&b| {
                    let mut next = pre.clone();
                    next.push(FictitiousPoint { b: Some(b), ..*p });
                    next
                })
            })
            .collect();
    }
    let mut out: Vec<Basket> = acc.into_iter().map(Basket::new).collect();
    out.sort();
    out.dedup();
    out
}

/// Runs the `E·c₂` test over every `b_Q` assignment; the candidate is
/// excluded when every assignment is contradicted.
pub fn exclude_candidate(candidate: &Candidate) -> Result<Exclusion> {
    let assignments = b_assignments(&candidate.basket, candidate.e);
    if assignments.is_empty() {
        return Err(Error::Consistency(format!(
            "no b_Q assignment realises {} with e = {}",
            candidate.basket, candidate.e
        )));
    }
    let reports = assignments
        .iter()
        .map(|b| exclude_by_c2(b, candidate.a, candidate.e, &candidate.e3))
        .collect::<Result<Vec<_>>>()?;
    let excluded = reports.iter().all(|r| r.verdict.is_contradiction());
    Ok(Exclusion {
        candidate: candidate.clone(),
        reports,
        excluded,
    })
}

/// Candidates with `Σ v_Q = 3 - d`.
///
/// `r_bound` caps the unbounded families (`d = 1, 2`); `d = 0` and `d = 3`
/// are enumerated completely whatever its value. For `d = 0` the `E·c₂`
/// test removes contradicted candidates.
pub fn enumerate_with_report(d: i64, r_bound: i64) -> Result<Enumeration> {
    if !(0..=3).contains(&d) {
        return Err(Error::Domain(format!("d must lie in 0..=3, got {d}")));
    }
    if r_bound < 2 {
        return Err(Error::Domain(format!(
            "r_bound must be at least 2, got {r_bound}"
        )));
    }
    let search = search_baskets(3 - d, r_bound);
    let mut pre = Vec::new();
    for basket in search.all() {
        let case = CaseLabel::classify(&basket)?;
        for a in admissible_a(&basket) {
            pre.push(Candidate::build(basket.clone(), a, case));
        }
    }
    pre.sort_by(|x, y| (&x.basket, x.a).cmp(&(&y.basket, y.a)));

    let mut families = Vec::new();
    let mut excluded_families = Vec::new();
    let mut complete = !search.truncated;
    for family in search.families {
        match family.admissible_discrepancies() {
            Some(list) if list.is_empty() => excluded_families.push(family),
            _ => {
                complete = false;
                families.push(family);
            }
        }
    }
    // Members of a family proven empty contribute nothing.
    pre.retain(|c| {
        !excluded_families
            .iter()
            .any(|f| c.basket.len() == f.fixed.len() + 1 && family_contains(f, &c.basket))
    });

    let (candidates, exclusions) = if d == 0 {
        let exclusions = pre
            .iter()
            .map(exclude_candidate)
            .collect::<Result<Vec<_>>>()?;
        let kept = exclusions
            .iter()
            .filter(|x| !x.excluded)
            .map(|x| x.candidate.clone())
            .collect();
        (kept, exclusions)
    } else {
        (pre.clone(), Vec::new())
    };
    Ok(Enumeration {
        d,
        r_bound,
        pre_exclusion: pre,
        exclusions,
        candidates,
        families,
        excluded_families,
        complete,
    })
}

fn family_contains(family: &ParametricFamily, basket: &Basket) -> bool {
    basket
        .points()
        .iter()
        .any(|p| p.v == family.free_v && family.member(p.r).as_ref() == Some(basket))
}

/// See [`enumerate_with_report`].
pub fn enumerate_candidates(d: i64, r_bound: i64) -> Result<Vec<Candidate>> {
    Ok(enumerate_with_report(d, r_bound)?.candidates)
}

/// Bounds attached to a two-point basket `{(r1, 1), (r2, 1)}` (or `(1, r)`
/// for the one-point case).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPointBounds {
    pub r1: i64,
    pub r2: i64,
    /// Any special surface has type at least `r1 + r2 - 1`.
    pub min_special_type: i64,
    /// Largest `a` with `2a <= r1 + r2`.
    pub max_discrepancy: i64,
}

impl TwoPointBounds {
    /// `2a <= r1 + r2`.
    pub fn admits(&self, a: i64) -> bool {
        a >= 1 && 2 * a <= self.r1 + self.r2
    }
}

pub fn case_212_bounds(r1: i64, r2: i64) -> Result<TwoPointBounds> {
    if r1 < 1 || r2 < 1 {
        return Err(Error::Domain(format!(
            "indices must be positive, got ({r1}, {r2})"
        )));
    }
    Ok(TwoPointBounds {
        r1,
        r2,
        min_special_type: r1 + r2 - 1,
        max_discrepancy: (r1 + r2) / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(pairs: &[(i64, i64)]) -> Basket {
        Basket::from_pairs(pairs).unwrap()
    }

    #[test]
    fn table_rows() {
        let rows = proof_table();
        let find = |idx: &[&str]| {
            rows.iter()
                .find(|row| row.indices == idx.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .unwrap_or_else(|| panic!("missing row {idx:?}"))
                .ae3
                .clone()
        };
        assert_eq!(find(&["8"]), "1/8");
        assert_eq!(find(&["4", "5"]), "1/20");
        assert_eq!(find(&["2", "3", "5"]), "1/30");
        assert_eq!(find(&["2", "2", "r3"]), "1/r3");
        assert_eq!(rows.len(), 10);
    }

    #[test]
    fn d0_survivors_and_exclusion() {
        let en = enumerate_with_report(0, DEFAULT_R_BOUND).unwrap();
        let pre: Vec<(Basket, i64)> = en
            .pre_exclusion
            .iter()
            .map(|c| (c.basket.clone(), c.a))
            .collect();
        assert_eq!(
            pre,
            vec![
                (j(&[(2, 1), (5, 2)]), 3),
                (j(&[(3, 1), (5, 2)]), 2),
                (j(&[(7, 3)]), 2),
            ]
        );
        let kept: Vec<(Basket, i64)> = en
            .candidates
            .iter()
            .map(|c| (c.basket.clone(), c.a))
            .collect();
        assert_eq!(kept, vec![(j(&[(3, 1), (5, 2)]), 2), (j(&[(7, 3)]), 2)]);
        assert!(en.complete);
        assert_eq!(en.excluded_families.len(), 1);
        // r_bound does not matter for d = 0.
        let small = enumerate_with_report(0, 2).unwrap();
        assert_eq!(small.candidates, en.candidates);
    }

    #[test]
    fn d1_single_point_discrepancies() {
        let cands = enumerate_candidates(1, 41).unwrap();
        let singles: Vec<&Candidate> = cands.iter().filter(|c| c.basket.len() == 1).collect();
        assert!(!singles.is_empty());
        for c in &singles {
            assert_eq!(c.case, CaseLabel::Case2_1_1);
            assert!(c.a == 2 || c.a == 4, "{c:?}");
        }
        assert!(singles.iter().any(|c| c.basket == j(&[(5, 2)]) && c.a == 4));
        assert!(singles.iter().any(|c| c.basket == j(&[(5, 2)]) && c.a == 2));
    }

    #[test]
    fn d3_is_the_smooth_blow_up() {
        let cands = enumerate_candidates(3, 10).unwrap();
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].a, 2);
        assert_eq!(cands[0].e3, Rat::one());
        assert_eq!(cands[0].case, CaseLabel::Case2_3);
    }

    #[test]
    fn two_point_bounds() {
        let b = case_212_bounds(2, 4).unwrap();
        assert_eq!((b.min_special_type, b.max_discrepancy), (5, 3));
        assert!(b.admits(3) && !b.admits(4));
        let b = case_212_bounds(1, 7).unwrap();
        assert_eq!((b.min_special_type, b.max_discrepancy), (7, 4));
        let b = case_212_bounds(5, 5).unwrap();
        assert_eq!((b.min_special_type, b.max_discrepancy), (9, 5));
        assert!(case_212_bounds(0, 3).is_err());
    }

    #[test]
    fn b_assignments_cover_both_signs() {
        let bs = b_assignments(&j(&[(5, 2)]), 4);
        let values: Vec<i64> = bs.iter().map(|b| b.points()[0].b.unwrap()).collect();
        assert_eq!(values, vec![2, 3]);
    }
}
