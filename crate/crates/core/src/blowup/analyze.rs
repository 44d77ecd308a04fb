use std::fmt;

use serde::{Deserialize, Serialize};

use super::action::{normalize_quotient, reid_tai, CyclicAction, ReidTai};
use super::certificate::{discrepancy_certificate, DiscrepancyCertificate};
use super::chart::{
    charts, discrepancy, e_cubed, exceptional_part, quadratic_rank, weighted_multiplicity, Chart,
    ExceptionalPart, Irreducibility,
};
use super::poly::{MonoPoly, WeightVec4};
use crate::error::{Error, Result};
use crate::numeric::{gcd, lcm_all, mod_inverse, residue, weight_dot, Rat};
use crate::rr::{Basket, FictitiousPoint};

pub const DEFAULT_CERT_BOUND: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "kebab-case")]
pub enum Location {
    ChartOrigin {
        chart: usize,
    },
    /// Points of the exceptional divisor on a coordinate axis, away from the origin.
    AxisCurve {
        chart: usize,
        axis: usize,
    },
    /// The locus `{u_j = 0 for j not in coordinates}` of the chart, on `E`.
    OffOriginLocus {
        chart: usize,
        coordinates: Vec<usize>,
        dimension: usize,
    },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::ChartOrigin { chart } => write!(f, "chart {chart} origin"),
            Location::AxisCurve { chart, axis } => write!(f, "chart {chart}, u{axis}-axis"),
            Location::OffOriginLocus {
                chart,
                coordinates,
                dimension,
            } => {
                let names: Vec<String> = coordinates.iter().map(|c| format!("u{c}")).collect();
                write!(
                    f,
                    "chart {chart}, {dimension}-dim locus in ({})",
                    names.join(",")
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Kind {
    Smooth,
    Quotient {
        action: CyclicAction,
    },
    /// `xy + z² + w^K` up to renaming coordinates.
    CompoundA {
        exponent: u32,
        germ: MonoPoly,
    },
    HypersurfaceQuotient {
        germ: MonoPoly,
        action: CyclicAction,
    },
    /// Points with stabilizer of the given order along a positive-dimensional locus.
    FixedLocus {
        stabilizer: i64,
        dimension: usize,
    },
    /// Singular point of the cover that is not classified.
    Unclassified {
        germ: MonoPoly,
    },
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Smooth => f.write_str("smooth"),
            Kind::Quotient { action } => write!(f, "quotient {action}"),
            Kind::CompoundA { exponent, germ } => write!(f, "cA (K={exponent}) {germ}"),
            Kind::HypersurfaceQuotient { germ, action } => write!(f, "({germ}=0)/{action}"),
            Kind::FixedLocus {
                stabilizer,
                dimension,
            } => {
                write!(f, "{dimension}-dim locus with stabilizer Z/{stabilizer}")
            }
            Kind::Unclassified { germ } => write!(f, "unclassified ({germ})"),
        }
    }
}

/// Evidence that a point is not terminal; every variant can be rechecked alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "kebab-case")]
pub enum Certificate {
    ReidTai {
        action: CyclicAction,
        k: i64,
        sum: i64,
    },
    Discrepancy {
        germ: MonoPoly,
        action: CyclicAction,
        valuation: DiscrepancyCertificate,
    },
    /// `germ` has no term in `u_axis` alone and all partials vanish along that axis.
    NonIsolated { germ: MonoPoly, axis: usize },
    /// The subgroup of order `stabilizer` fixes a curve of `Y` and acts on the
    /// complementary coordinates without fixed directions.
    FixedCurve {
        germ: MonoPoly,
        action: CyclicAction,
        stabilizer: i64,
        coordinates: Vec<usize>,
    },
}

impl Certificate {
    pub fn recheck(&self) -> bool {
        match self {
            Certificate::ReidTai { action, k, sum } => {
                *k >= 1
                    && *k < action.r
                    && action
                        .weights
                        .iter()
                        .map(|&a| residue(k * a, action.r))
                        .sum::<i64>()
                        == *sum
                    && *sum <= action.r
            }
            Certificate::Discrepancy {
                germ,
                action,
                valuation,
            } => valuation.verify(germ, action),
            Certificate::NonIsolated { germ, axis } => {
                let k = *axis - 1;
                germ.along_axis(k).iter().all(|&c| c == 0)
                    && (0..4)
                        .filter(|&j| j != k)
                        .all(|j| germ.partial_along_axis(j, k).iter().all(|&c| c == 0))
            }
            Certificate::FixedCurve {
                germ,
                action,
                stabilizer,
                coordinates,
            } => {
                let d = *stabilizer;
                if d < 2 || action.r % d != 0 {
                    return false;
                }
                let inside: Vec<usize> = coordinates.iter().map(|c| c - 1).collect();
                let fixed_ok = (0..4).all(|j| (action.weights[j] % d == 0) == inside.contains(&j));
                let free_ok = (0..4)
                    .filter(|j| !inside.contains(j))
                    .all(|j| gcd(action.weights[j], d) == 1);
                fixed_ok && free_ok && fixed_locus_dimension(germ, &inside) == Some(1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Terminal,
    NonTerminal { certificate: Box<Certificate> },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_terminal(&self) -> bool {
        matches!(self, Verdict::Terminal)
    }

    pub fn is_non_terminal(&self) -> bool {
        matches!(self, Verdict::NonTerminal { .. })
    }

    fn non_terminal(c: Certificate) -> Self {
        Verdict::NonTerminal {
            certificate: Box::new(c),
        }
    }

    fn unknown(reason: impl Into<String>) -> Self {
        Verdict::Unknown {
            reason: reason.into(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Terminal => "terminal",
            Verdict::NonTerminal { .. } => "non-terminal",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub location: Location,
    pub kind: Kind,
    pub verdict: Verdict,
    /// Number of points of `Y` this report stands for.
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupAnalysis {
    pub weights: WeightVec4,
    pub polynomial: MonoPoly,
    pub multiplicity: i64,
    pub discrepancy: i64,
    pub e_cubed: Rat,
    pub exceptional: ExceptionalPart,
    pub charts: Vec<Chart>,
    pub reports: Vec<SingularityReport>,
    pub verdict: Verdict,
}

impl BlowupAnalysis {
    /// Terminal and with irreducible exceptional divisor.
    pub fn verified(&self) -> bool {
        self.verdict.is_terminal() && self.exceptional.irreducibility == Irreducibility::Irreducible
    }

    pub fn quotient_actions(&self) -> Vec<&CyclicAction> {
        self.reports
            .iter()
            .filter_map(|r| match &r.kind {
                Kind::Quotient { action } => Some(action),
                _ => None,
            })
            .collect()
    }
}

/// Analysis of the weighted blow-up of `xy + z² + w^N`.
pub fn analyze(w: &WeightVec4, n: u32) -> Result<BlowupAnalysis> {
    if n < 2 {
        return Err(Error::Domain(format!("N must be at least 2, got {n}")));
    }
    analyze_poly(w, &MonoPoly::ca1(n), DEFAULT_CERT_BOUND)
}

pub fn analyze_with_bound(w: &WeightVec4, n: u32, cert_bound: i64) -> Result<BlowupAnalysis> {
    if n < 2 {
        return Err(Error::Domain(format!("N must be at least 2, got {n}")));
    }
    analyze_poly(w, &MonoPoly::ca1(n), cert_bound)
}

pub fn analyze_poly(w: &WeightVec4, f: &MonoPoly, cert_bound: i64) -> Result<BlowupAnalysis> {
    let multiplicity = weighted_multiplicity(w, f)?;
    let charts = charts(w, f)?;
    let mut reports = Vec::new();
    for c in &charts {
        analyze_chart(c, cert_bound, &mut reports)?;
    }
    let exceptional = exceptional_part(w, f);
    let verdict = if let Some(r) = reports.iter().find(|r| r.verdict.is_non_terminal()) {
        r.verdict.clone()
    } else if let Some(r) = reports
        .iter()
        .find(|r| matches!(r.verdict, Verdict::Unknown { .. }))
    {
        r.verdict.clone()
    } else if exceptional.irreducibility != Irreducibility::Irreducible {
        Verdict::unknown("exceptional divisor not shown irreducible")
    } else {
        Verdict::Terminal
    };
    Ok(BlowupAnalysis {
        weights: *w,
        polynomial: f.clone(),
        multiplicity,
        discrepancy: discrepancy(w, f)?,
        e_cubed: e_cubed(w, f)?,
        exceptional,
        charts,
        reports,
        verdict,
    })
}

/// Character of a semi-invariant polynomial, or an error if it has none.
fn character(g: &MonoPoly, q: &CyclicAction) -> Result<i64> {
    let wts: [i64; 4] = q.weights.clone().try_into().expect("four coordinates");
    let mut chars = g.terms().map(|(e, _)| residue(weight_dot(e, &wts), q.r));
    let first = chars.next().unwrap_or(0);
    if chars.any(|c| c != first) {
        return Err(Error::Consistency(format!(
            "{g} is not semi-invariant under {q}"
        )));
    }
    Ok(first)
}

fn analyze_chart(c: &Chart, cert_bound: i64, out: &mut Vec<SingularityReport>) -> Result<()> {
    let g = &c.strict_transform;
    let q = &c.action;
    let r = q.r;
    let chi = character(g, q)?;
    let i = c.exceptional_coordinate;

    if let Some(rep) = classify_origin(c, chi, cert_bound) {
        out.push(rep);
    }

    // Positive-dimensional loci with nontrivial stabilizer, one per distinct coordinate set.
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut divisors: Vec<i64> = (2..=r).filter(|d| r % d == 0).collect();
    divisors.reverse();
    for d in divisors {
        let inside: Vec<usize> = (0..4)
            .filter(|&j| j != i && q.weights[j] % d == 0)
            .collect();
        if inside.is_empty() || seen.contains(&inside) {
            continue;
        }
        seen.push(inside.clone());
        let Some(dim) = fixed_locus_dimension(g, &inside) else {
            continue;
        };
        if dim == 0 {
            continue;
        }
        let location = Location::OffOriginLocus {
            chart: c.index,
            coordinates: inside.iter().map(|j| j + 1).collect(),
            dimension: dim,
        };
        let kind = Kind::FixedLocus {
            stabilizer: d,
            dimension: dim,
        };
        let free = (0..4)
            .filter(|j| !inside.contains(j))
            .all(|j| gcd(q.weights[j], d) == 1);
        let verdict = if dim == 1 && free {
            Verdict::non_terminal(Certificate::FixedCurve {
                germ: g.clone(),
                action: q.clone(),
                stabilizer: d,
                coordinates: inside.iter().map(|j| j + 1).collect(),
            })
        } else {
            Verdict::unknown(format!("stabilizer Z/{d} fixes a {dim}-dimensional locus"))
        };
        out.push(SingularityReport {
            location,
            kind,
            verdict,
            count: 1,
        });
    }

    for k in (0..4).filter(|&k| k != i) {
        if let Some(rep) = axis_points(c, chi, k)? {
            out.push(rep);
        }
    }
    Ok(())
}

/// Dimension of `{g = 0} ∩ {u_j = 0, j ∉ inside}`, `None` if empty.
fn fixed_locus_dimension(g: &MonoPoly, inside: &[usize]) -> Option<usize> {
    let mut keep = [false; 4];
    for &j in inside {
        keep[j] = true;
    }
    let h = g.restrict(&keep);
    if h.is_zero() {
        Some(inside.len())
    } else if h.len() == 1 && h.constant() != 0 {
        None
    } else if inside.len() == 1 {
        // Zeros of a univariate polynomial: finitely many points.
        Some(0)
    } else {
        Some(inside.len() - 1)
    }
}

fn classify_origin(c: &Chart, chi: i64, cert_bound: i64) -> Option<SingularityReport> {
    let g = &c.strict_transform;
    let q = &c.action;
    if g.constant() != 0 {
        return None;
    }
    let location = Location::ChartOrigin { chart: c.index };
    let linear = g.linear_vars();
    if let Some(&k) = linear.first() {
        debug_assert_eq!(q.weights[k], chi);
        if q.is_trivial() {
            return None;
        }
        let residual = q.without(k);
        let verdict = quotient_verdict(&residual);
        return Some(SingularityReport {
            location,
            kind: Kind::Quotient { action: residual },
            verdict,
            count: 1,
        });
    }
    if q.is_trivial() {
        let (kind, verdict) = classify_gorenstein(g);
        return Some(SingularityReport {
            location,
            kind,
            verdict,
            count: 1,
        });
    }
    let kind = Kind::HypersurfaceQuotient {
        germ: g.clone(),
        action: q.clone(),
    };
    let verdict = match discrepancy_certificate(g, q, cert_bound) {
        Some(valuation) => Verdict::non_terminal(Certificate::Discrepancy {
            germ: g.clone(),
            action: q.clone(),
            valuation,
        }),
        None => Verdict::unknown(format!(
            "no valuation with discrepancy <= 0 up to bound {cert_bound}"
        )),
    };
    Some(SingularityReport {
        location,
        kind,
        verdict,
        count: 1,
    })
}

fn quotient_verdict(q: &CyclicAction) -> Verdict {
    // A group element fixing a hyperplane would make the quotient map ramified
    // in codimension one, where the Reid–Tai test does not apply.
    let reflection = (1..q.r).any(|k| {
        q.weights
            .iter()
            .filter(|&&a| residue(k * a, q.r) != 0)
            .count()
            == 1
    });
    if reflection {
        return Verdict::unknown(format!("{q} contains a reflection"));
    }
    match reid_tai(q) {
        ReidTai::Terminal => Verdict::Terminal,
        ReidTai::NotTerminal { k, sum } => Verdict::non_terminal(Certificate::ReidTai {
            action: q.clone(),
            k,
            sum,
        }),
    }
}

/// Recognizes `Q(three variables, rank 3) + c·u^K` in the fourth variable.
fn classify_gorenstein(g: &MonoPoly) -> (Kind, Verdict) {
    let unclassified = || {
        (
            Kind::Unclassified { germ: g.clone() },
            Verdict::unknown("singular germ of unsupported shape"),
        )
    };
    let quad = MonoPoly::from_terms(
        g.terms()
            .filter(|(e, _)| e.iter().sum::<u32>() == 2)
            .map(|(e, &c)| (*e, c)),
    );
    let rest = MonoPoly::from_terms(
        g.terms()
            .filter(|(e, _)| e.iter().sum::<u32>() != 2)
            .map(|(e, &c)| (*e, c)),
    );
    let rank = quadratic_rank(&quad);
    if rank == 4 {
        return (
            Kind::CompoundA {
                exponent: 2,
                germ: g.clone(),
            },
            Verdict::Terminal,
        );
    }
    let support = quad.support();
    if rank != 3 || support.iter().filter(|&&s| s).count() != 3 {
        return unclassified();
    }
    let d = support.iter().position(|&s| !s).expect("one free variable");
    if rest.is_zero() {
        return (
            Kind::Unclassified { germ: g.clone() },
            Verdict::non_terminal(Certificate::NonIsolated {
                germ: g.clone(),
                axis: d + 1,
            }),
        );
    }
    if rest.len() == 1 {
        let (e, _) = rest.terms().next().expect("one term");
        if (0..4).all(|j| j == d || e[j] == 0) && e[d] >= 3 {
            return (
                Kind::CompoundA {
                    exponent: e[d],
                    germ: g.clone(),
                },
                Verdict::Terminal,
            );
        }
    }
    unclassified()
}

fn axis_points(c: &Chart, chi: i64, k: usize) -> Result<Option<SingularityReport>> {
    let g = &c.strict_transform;
    let q = &c.action;
    let location = Location::AxisCurve {
        chart: c.index,
        axis: k + 1,
    };
    let d_k = gcd(q.weights[k], q.r);
    let h = upoly::from_ints(&g.along_axis(k));
    let partials: Vec<Vec<Rat>> = (0..4)
        .filter(|&j| j != k)
        .map(|j| upoly::from_ints(&g.partial_along_axis(j, k)))
        .collect();

    if h.is_empty() {
        if d_k > 1 {
            // Covered by the fixed-locus pass.
            return Ok(None);
        }
        let common = partials
            .iter()
            .fold(Vec::new(), |acc, p| upoly::gcd(&acc, p));
        if common.is_empty() {
            return Ok(Some(SingularityReport {
                location,
                kind: Kind::Unclassified { germ: g.clone() },
                verdict: Verdict::non_terminal(Certificate::NonIsolated {
                    germ: g.clone(),
                    axis: k + 1,
                }),
                count: 1,
            }));
        }
        if upoly::degree(&upoly::strip_zero_roots(&common)) > 0 {
            return Ok(Some(unknown_axis(
                location,
                g,
                "singular points of the cover on the axis",
            )));
        }
        return Ok(None);
    }

    let hz = upoly::strip_zero_roots(&h);
    let roots = upoly::distinct_roots(&hz);
    if roots == 0 {
        return Ok(None);
    }
    let mut sing = upoly::gcd(&hz, &upoly::derivative(&h));
    for p in &partials {
        sing = upoly::gcd(&sing, p);
    }
    if upoly::degree(&upoly::strip_zero_roots(&sing)) > 0 {
        return Ok(Some(unknown_axis(
            location,
            g,
            "singular points of the cover on the axis",
        )));
    }
    if d_k == 1 {
        return Ok(None);
    }
    // Smooth points with stabilizer Z/d_k; the tangent space of Y drops one
    // coordinate of character chi.
    let sub = q.subgroup(d_k);
    let chi_d = residue(chi, d_k);
    let drop = (0..4).find(|&j| sub.weights[j] == chi_d).ok_or_else(|| {
        Error::Consistency("no coordinate carries the equation's character".into())
    })?;
    let residual = sub.without(drop);
    let orbit = (q.r / d_k) as usize;
    if !roots.is_multiple_of(orbit) {
        return Err(Error::Consistency(format!(
            "{roots} axis points do not split into orbits of size {orbit}"
        )));
    }
    let verdict = quotient_verdict(&residual);
    Ok(Some(SingularityReport {
        location,
        kind: Kind::Quotient { action: residual },
        verdict,
        count: roots / orbit,
    }))
}

fn unknown_axis(location: Location, g: &MonoPoly, why: &str) -> SingularityReport {
    SingularityReport {
        location,
        kind: Kind::Unclassified { germ: g.clone() },
        verdict: Verdict::unknown(why),
        count: 1,
    }
}

/// Basket data read off a terminal analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasketData {
    pub basket: Basket,
    pub a: i64,
    pub e: i64,
    pub r: i64,
}

pub fn basket_of(w: &WeightVec4, n: u32) -> Result<BasketData> {
    basket_from_analysis(&analyze(w, n)?)
}

pub fn basket_from_analysis(an: &BlowupAnalysis) -> Result<BasketData> {
    if !an.verdict.is_terminal() {
        return Err(Error::Domain(format!(
            "basket requested for a {} blow-up with weights {}",
            an.verdict.label(),
            an.weights
        )));
    }
    let a = an.discrepancy;
    let mut typed = Vec::new();
    for rep in &an.reports {
        if let Kind::Quotient { action } = &rep.kind {
            let (rq, b) = normalize_quotient(action).ok_or_else(|| {
                Error::Consistency(format!("terminal quotient {action} has no normal form"))
            })?;
            if rq > 1 {
                for _ in 0..rep.count {
                    typed.push((rq, b));
                }
            }
        }
    }
    let r = lcm_all(typed.iter().map(|&(rq, _)| rq));
    let e = mod_inverse(a, r)
        .ok_or_else(|| Error::Consistency(format!("discrepancy {a} is not a unit modulo {r}")))?;
    let mut points = Vec::new();
    for (rq, b) in typed {
        let mut v = residue(e * b, rq);
        let mut b = b;
        if 2 * v > rq {
            v = rq - v;
            b = rq - b;
        }
        points.push(FictitiousPoint::with_b(rq, v, b)?);
    }
    Ok(BasketData {
        basket: Basket::new(points),
        a,
        e,
        r,
    })
}

/// Singular points of the chart cover on `E` over `F_p`, by brute force.
pub fn singular_points_mod_p(c: &Chart, p: u64) -> Vec<[u64; 4]> {
    let g = &c.strict_transform;
    let grads: Vec<MonoPoly> = (0..4).map(|k| g.derivative(k)).collect();
    let free: Vec<usize> = (0..4).filter(|&k| k != c.exceptional_coordinate).collect();
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for cc in 0..p {
                let mut u = [0u64; 4];
                u[free[0]] = a;
                u[free[1]] = b;
                u[free[2]] = cc;
                if g.eval_mod(&u, p) == 0 && grads.iter().all(|d| d.eval_mod(&u, p) == 0) {
                    out.push(u);
                }
            }
        }
    }
    out
}

/// Singular points over `F_p` of some chart cover on `E` with two or more
/// nonzero coordinates, i.e. outside the origin and the coordinate axes.
pub fn jacobian_guard(an: &BlowupAnalysis, p: u64) -> Vec<(usize, [u64; 4])> {
    an.charts
        .iter()
        .flat_map(|c| {
            singular_points_mod_p(c, p)
                .into_iter()
                .filter(|u| u.iter().filter(|&&x| x != 0).count() >= 2)
                .map(move |u| (c.index, u))
        })
        .collect()
}

/// Exact polynomial arithmetic in one variable over the rationals.
/// Coefficients are stored lowest degree first; the empty vector is zero.
mod upoly {
    use crate::numeric::Rat;

    pub fn from_ints(c: &[i64]) -> Vec<Rat> {
        let mut v: Vec<Rat> = c.iter().map(|&x| Rat::from_int(x)).collect();
        trim(&mut v);
        v
    }

    fn trim(v: &mut Vec<Rat>) {
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
    }

    /// Degree, with `-1` for zero.
    pub fn degree(v: &[Rat]) -> i64 {
        v.len() as i64 - 1
    }

    pub fn derivative(v: &[Rat]) -> Vec<Rat> {
        let mut d: Vec<Rat> = v
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as i64)
            .collect();
        trim(&mut d);
        d
    }

    pub fn strip_zero_roots(v: &[Rat]) -> Vec<Rat> {
        let start = v.iter().position(|c| !c.is_zero()).unwrap_or(v.len());
        v[start..].to_vec()
    }

    fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut a = a.to_vec();
        let lead = b.last().expect("nonzero divisor").clone();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = a.last().unwrap() / &lead;
            for (j, c) in b.iter().enumerate() {
                let delta = &factor * c;
                a[shift + j] -= &delta;
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.last().cloned() {
            for c in &mut a {
                *c = &*c / &lead;
            }
        }
        a
    }

    /// Number of distinct complex roots.
    pub fn distinct_roots(v: &[Rat]) -> usize {
        if v.is_empty() {
            return 0;
        }
        let g = gcd(v, &derivative(v));
        (degree(v) - degree(&g)).max(0) as usize
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn gcd_and_roots() {
            // (u - 1)^2 (u + 2)
            let p = from_ints(&[2, -3, 0, 1]);
            assert_eq!(distinct_roots(&p), 2);
            assert_eq!(gcd(&p, &derivative(&p)), from_ints(&[-1, 1]));
            assert_eq!(distinct_roots(&from_ints(&[1, 0, 0, 0, 0, 0, 1])), 6);
            assert_eq!(
                strip_zero_roots(&from_ints(&[0, 0, 3, 1])),
                from_ints(&[3, 1])
            );
        }
    }
}
