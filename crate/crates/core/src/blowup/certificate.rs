use serde::{Deserialize, Serialize};

use super::action::CyclicAction;
use super::poly::MonoPoly;
use crate::numeric::{gcd, residue, weight_dot, Rat};

/// A monomial valuation `v = n / r` on the index-`r` cover with discrepancy `≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyCertificate {
    /// Numerators over the group order.
    pub numerators: [i64; 4],
    pub r: i64,
    pub v: Vec<Rat>,
    pub discrepancy: Rat,
}

impl DiscrepancyCertificate {
    /// Recomputes everything from `numerators` alone.
    pub fn verify(&self, g: &MonoPoly, q: &CyclicAction) -> bool {
        self.r == q.r
            && in_lattice(&self.numerators, q)
            && is_primitive(&self.numerators, q)
            && self.numerators.iter().all(|&n| n >= 1)
            && valuation_discrepancy(&self.numerators, q.r, g)
                .is_some_and(|d| d == self.discrepancy && !d.is_positive())
    }
}

/// `Σv - v(g) - 1` for `v = n / r`; `None` when `g = 0`.
pub fn valuation_discrepancy(n: &[i64; 4], r: i64, g: &MonoPoly) -> Option<Rat> {
    let vg = g.terms().map(|(e, _)| weight_dot(e, n)).min()?;
    let total: i64 = n.iter().sum();
    Some(Rat::new(total - vg, r) - 1)
}

/// `n ≡ k·q (mod r)` for some `k`.
fn in_lattice(n: &[i64; 4], q: &CyclicAction) -> bool {
    let r = q.r;
    (0..r).any(|k| (0..4).all(|i| residue(n[i] - k * q.weights[i], r) == 0))
}

/// No proper integral fraction `n / m` of `n` lies in the lattice.
fn is_primitive(n: &[i64; 4], q: &CyclicAction) -> bool {
    let g = n.iter().fold(0, |acc, &x| gcd(acc, x));
    (2..=g).filter(|m| g % m == 0).all(|m| {
        let sub = n.map(|x| x / m);
        !in_lattice(&sub, q)
    })
}

/// Searches primitive lattice vectors with entries `v_i ≤ bound`, in lexicographic
/// order of numerators, for one with discrepancy `≤ 0`.
///
/// `q` acts on all four coordinates of the cover. A certificate exhibits a
/// non-terminal valuation; `None` proves nothing.
pub fn discrepancy_certificate(
    g: &MonoPoly,
    q: &CyclicAction,
    search_bound: i64,
) -> Option<DiscrepancyCertificate> {
    if g.is_zero() || q.dim() != 4 || search_bound < 1 {
        return None;
    }
    let r = q.r;
    let top = search_bound * r;
    let mut n = [1i64; 4];
    loop {
        if in_lattice(&n, q) && is_primitive(&n, q) {
            let d = valuation_discrepancy(&n, r, g).expect("nonzero g");
            if !d.is_positive() {
                return Some(DiscrepancyCertificate {
                    numerators: n,
                    r,
                    v: n.iter().map(|&x| Rat::new(x, r)).collect(),
                    discrepancy: d,
                });
            }
        }
        // Odometer increment, last coordinate fastest.
        let mut pos = 3;
        loop {
            n[pos] += 1;
            if n[pos] <= top {
                break;
            }
            n[pos] = 1;
            if pos == 0 {
                return None;
            }
            pos -= 1;
        }
    }
}
