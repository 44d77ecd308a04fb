//! Weighted blow-ups of `xy + z² + w^N` and analysis of their singularities.
//!
//! Singular points are looked for at chart origins, along coordinate axes of
//! the exceptional divisor, and on loci with nontrivial stabilizer. For the
//! binomial-plus-power family every singular point on `E` lies there;
//! [`singular_points_mod_p`] is a brute-force guard for that claim.

mod action;
mod analyze;
mod certificate;
mod chart;
mod poly;

pub use action::{normalize_quotient, reid_tai, CyclicAction, ReidTai};
pub use analyze::{
    analyze, analyze_poly, analyze_with_bound, basket_from_analysis, basket_of, jacobian_guard,
    singular_points_mod_p, BasketData, BlowupAnalysis, Certificate, Kind, Location,
    SingularityReport, Verdict, DEFAULT_CERT_BOUND,
};
pub use certificate::{discrepancy_certificate, valuation_discrepancy, DiscrepancyCertificate};
pub use chart::{
    chart, charts, discrepancy, e_cubed, exceptional_part, weighted_multiplicity, Chart,
    ExceptionalPart, Irreducibility,
};
pub use poly::{Exponent, MonoPoly, Term, WeightVec4};
