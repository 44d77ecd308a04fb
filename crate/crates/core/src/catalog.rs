//! The list of divisorial contractions to `xy + z² + w^N`, each verified by
//! running the blow-up analysis and the Riemann–Roch cross-checks.

use serde::{Deserialize, Serialize};

use crate::baskets::{admissible_a, CaseLabel};
use crate::blowup::{
    analyze_with_bound, basket_from_analysis, BasketData, BlowupAnalysis, Irreducibility, Verdict,
    WeightVec4, DEFAULT_CERT_BOUND,
};
use crate::error::{Error, Result};
use crate::filtration::{filtration_dims, graded_counts, CA1Ring};
use crate::numeric::{gcd, Rat};
use crate::rr::{a_e3, dim_quotient, Basket};

/// One named equality between two independently computed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn eq<T: PartialEq + std::fmt::Display>(name: impl Into<String>, lhs: T, rhs: T) -> Check {
        Check {
            name: name.into(),
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn holds(
        name: impl Into<String>,
        pass: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Check {
        Check {
            name: name.into(),
            pass,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ContractionKind {
    Family { s: i64, t: i64 },
    Exceptional1532,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    pub n: u32,
    pub weights: WeightVec4,
    pub kind: ContractionKind,
    pub a: i64,
    #[serde(rename = "E3")]
    pub e3: Rat,
    pub basket: Basket,
    pub case: CaseLabel,
    pub verified: bool,
}

/// Coprime `(s, t)` with `1 ≤ s ≤ t ≤ N/2`, ordered by `t` then `s`.
pub fn family_parameters(n: u32) -> Vec<(i64, i64)> {
    let half = n as i64 / 2;
    (1..=half)
        .flat_map(|t| {
            (1..=t)
                .filter(move |&s| gcd(s, t) == 1)
                .map(move |s| (s, t))
        })
        .collect()
}

fn expected_case(kind: ContractionKind, a: i64) -> CaseLabel {
    match kind {
        ContractionKind::Exceptional1532 => CaseLabel::Case2_1_1,
        ContractionKind::Family { .. } if a == 1 => CaseLabel::Case2_3,
        ContractionKind::Family { s: 1, .. } => CaseLabel::Case2_2,
        ContractionKind::Family { .. } => CaseLabel::Case2_1_2,
    }
}

/// Every contraction in the classification for this `N`; a listed member
/// that fails to verify is a consistency error.
pub fn enumerate_contractions(n: u32) -> Result<Vec<Contraction>> {
    if n < 2 {
        return Err(Error::Domain(format!("N must be at least 2, got {n}")));
    }
    let mut entries: Vec<(WeightVec4, ContractionKind)> = family_parameters(n)
        .into_iter()
        .map(|(s, t)| Ok((WeightVec4::family(s, t)?, ContractionKind::Family { s, t })))
        .collect::<Result<_>>()?;
    if n == 3 {
        entries.push((
            WeightVec4::new([1, 5, 3, 2])?,
            ContractionKind::Exceptional1532,
        ));
    }
    entries
        .into_iter()
        .map(|(w, kind)| {
            let report = verify_weights(n, &w, DEFAULT_CERT_BOUND)?;
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            let Some(data) = report.basket.filter(|_| report.analysis.verified() && failed.is_empty()) else {
                return Err(Error::Consistency(format!(
                    "N={n}, weights {w}: listed contraction does not verify ({}; failed checks: {failed:?})",
                    report.analysis.verdict.label()
                )));
            };
            let shape = data.basket.shape();
            let case = CaseLabel::classify(&shape)?;
            if case != expected_case(kind, data.a) {
                return Err(Error::Consistency(format!("N={n}, weights {w}: basket {shape} lands in case {case}")));
            }
            Ok(Contraction {
                n,
                weights: w,
                kind,
                a: data.a,
                e3: report.analysis.e_cubed.clone(),
                basket: shape,
                case,
                verified: true,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub n: u32,
    pub weights: WeightVec4,
    pub analysis: BlowupAnalysis,
    pub basket: Option<BasketData>,
    pub checks: Vec<Check>,
}

impl WeightReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Blow-up analysis plus every cross-check that applies to the outcome.
pub fn verify_weights(n: u32, w: &WeightVec4, cert_bound: i64) -> Result<WeightReport> {
    let analysis = analyze_with_bound(w, n, cert_bound)?;
    let mut checks = Vec::new();

    for rep in &analysis.reports {
        if let Verdict::NonTerminal { certificate } = &rep.verdict {
            checks.push(Check::holds(
                format!("certificate rechecks at {}", rep.location),
                certificate.recheck(),
                "recheck",
                "ok",
            ));
        }
    }

    let mut basket = None;
    if analysis.verdict.is_terminal() {
        let data = basket_from_analysis(&analysis)?;
        let a = data.a;
        checks.push(Check::eq(
            "a*E^3 = a_e3(J)",
            &analysis.e_cubed * a,
            a_e3(&data.basket),
        ));
        if a >= 2 {
            checks.push(Check::holds(
                "a admissible for J",
                admissible_a(&data.basket.shape()).contains(&a),
                a.to_string(),
                format!("{:?}", admissible_a(&data.basket.shape())),
            ));
        }
        let ring = CA1Ring::new(n)?;
        if ring.counts_filtration(w) {
            let dims = filtration_dims(&ring, w, a)?;
            for i in 1..=a {
                checks.push(Check::eq(
                    format!("filtration dim i={i}"),
                    dims[(i - 1) as usize],
                    dim_quotient(i, a, &data.basket)?,
                ));
            }
            let [s, y, t, one] = w.get();
            if one == 1 && s + y == 2 * t {
                let counts = graded_counts(&ring, w, t);
                checks.push(Check::holds(
                    "graded counts floor(i/s)+1",
                    counts.is_ok(),
                    counts
                        .map(|c| format!("{c:?}"))
                        .unwrap_or_else(|e| e.to_string()),
                    format!("{:?}", (0..t).map(|i| i / s + 1).collect::<Vec<_>>()),
                ));
            }
        }
        basket = Some(data);
    }
    if analysis.verdict.is_terminal() {
        checks.push(Check::holds(
            "exceptional divisor irreducible",
            analysis.exceptional.irreducibility == Irreducibility::Irreducible,
            format!("{:?}", analysis.exceptional.irreducibility),
            "Irreducible",
        ));
    }
    Ok(WeightReport {
        n,
        weights: *w,
        analysis,
        basket,
        checks,
    })
}
