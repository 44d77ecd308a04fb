use serde::{Deserialize, Serialize};

use super::action::CyclicAction;
use super::poly::{MonoPoly, WeightVec4};
use crate::error::{Error, Result};
use crate::numeric::{weight_dot, Rat};

/// One of the four affine charts of a weighted blow-up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    /// 1-based, as in `x, y, z, w = 1, 2, 3, 4`.
    pub index: usize,
    pub strict_transform: MonoPoly,
    pub action: CyclicAction,
    /// 0-based coordinate whose vanishing cuts out the exceptional divisor.
    pub exceptional_coordinate: usize,
}

pub fn weighted_multiplicity(w: &WeightVec4, f: &MonoPoly) -> Result<i64> {
    f.min_weight(&w.get())
        .ok_or_else(|| Error::Domain("weighted multiplicity of the zero polynomial".into()))
}

/// `Σw - wt(f) - 1`.
pub fn discrepancy(w: &WeightVec4, f: &MonoPoly) -> Result<i64> {
    Ok(w.sum() - weighted_multiplicity(w, f)? - 1)
}

/// `wt(f) / Πw`.
pub fn e_cubed(w: &WeightVec4, f: &MonoPoly) -> Result<Rat> {
    Ok(Rat::new(weighted_multiplicity(w, f)?, w.product()))
}

/// The `i`-th chart (0-based): `x_j = u_j u_i^{w_j}`, `x_i = u_i^{w_i}`.
pub fn chart(w: &WeightVec4, f: &MonoPoly, i: usize) -> Result<Chart> {
    let wv = w.get();
    let m = weighted_multiplicity(w, f)?;
    let mut g = MonoPoly::new();
    for (e, &c) in f.terms() {
        let total = weight_dot(e, &wv);
        if total < m {
            return Err(Error::Consistency(format!(
                "chart {}: term of weight {total} below multiplicity {m}",
                i + 1
            )));
        }
        let mut ne = *e;
        ne[i] = u32::try_from(total - m)
            .map_err(|_| Error::Consistency("exponent overflow in chart".into()))?;
        g.add_term(ne, c);
    }
    if g.len() != f.len() {
        return Err(Error::Consistency(format!(
            "chart {}: terms collided",
            i + 1
        )));
    }
    let r = wv[i];
    let weights: Vec<i64> = (0..4).map(|j| if j == i { 1 } else { -wv[j] }).collect();
    Ok(Chart {
        index: i + 1,
        strict_transform: g,
        action: CyclicAction::new(r, &weights)?,
        exceptional_coordinate: i,
    })
}

pub fn charts(w: &WeightVec4, f: &MonoPoly) -> Result<Vec<Chart>> {
    (0..4).map(|i| chart(w, f, i)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalPart {
    pub form: MonoPoly,
    pub quadratic_rank: Option<usize>,
    pub irreducibility: Irreducibility,
}

/// Initial form of `f` and whether it is irreducible, judged by the rank of
/// its quadratic part in `(x, y, z)` and the presence of a pure `w` power.
pub fn exceptional_part(w: &WeightVec4, f: &MonoPoly) -> ExceptionalPart {
    let form = f.initial_form(&w.get());
    let mut quad = MonoPoly::new();
    let mut w_power = false;
    let mut other = false;
    for (e, &c) in form.terms() {
        let deg_xyz: u32 = e[..3].iter().sum();
        if deg_xyz == 0 && e[3] >= 1 {
            w_power = true;
        } else if deg_xyz == 2 && e[3] == 0 {
            quad.add_term(*e, c);
        } else {
            other = true;
        }
    }
    if other {
        return ExceptionalPart {
            form,
            quadratic_rank: None,
            irreducibility: Irreducibility::Unknown,
        };
    }
    let rank = quadratic_rank(&quad);
    let irreducibility = match (rank, w_power) {
        (3, _) | (2, true) => Irreducibility::Irreducible,
        // A quadratic form of rank ≤ 2 alone splits into linear factors.
        (1..=2, false) => Irreducibility::Reducible,
        _ => Irreducibility::Unknown,
    };
    ExceptionalPart {
        form,
        quadratic_rank: Some(rank),
        irreducibility,
    }
}

/// Rank of the symmetric matrix of a quadratic form in four variables.
pub(super) fn quadratic_rank(q: &MonoPoly) -> usize {
    let mut m = vec![vec![Rat::zero(); 4]; 4];
    for (e, &c) in q.terms() {
        let idx: Vec<usize> = (0..4)
            .flat_map(|k| std::iter::repeat_n(k, e[k] as usize))
            .collect();
        debug_assert_eq!(idx.len(), 2);
        let (a, b) = (idx[0], idx[1]);
        if a == b {
            m[a][a] = Rat::from_int(c);
        } else {
            m[a][b] = Rat::new(c, 2);
            m[b][a] = Rat::new(c, 2);
        }
    }
    rank(m)
}

fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: [i64; 4]) -> WeightVec4 {
        WeightVec4::new(w).unwrap()
    }

    #[test]
    fn toric_invariants() {
        let f = MonoPoly::ca1(3);
        assert_eq!(weighted_multiplicity(&wv([1, 5, 3, 2]), &f).unwrap(), 6);
        assert_eq!(discrepancy(&wv([1, 5, 3, 2]), &f).unwrap(), 4);
        assert_eq!(e_cubed(&wv([1, 5, 3, 2]), &f).unwrap(), Rat::new(1, 5));
        assert_eq!(
            e_cubed(&wv([2, 4, 3, 1]), &MonoPoly::ca1(6)).unwrap(),
            Rat::new(1, 4)
        );
        assert_eq!(
            e_cubed(&wv([1, 1, 1, 1]), &MonoPoly::ca1(2)).unwrap(),
            Rat::from_int(2)
        );
        assert_eq!(
            discrepancy(&wv([1, 1, 1, 1]), &MonoPoly::ca1(2)).unwrap(),
            1
        );
        assert_eq!(
            weighted_multiplicity(&wv([1, 1, 1, 1]), &MonoPoly::monomial([0, 0, 0, 1])).unwrap(),
            1
        );
        assert!(weighted_multiplicity(&wv([1, 1, 1, 1]), &MonoPoly::new()).is_err());
        for (s, t, n) in [(1, 1, 2), (2, 3, 7), (3, 5, 10), (4, 7, 15)] {
            let w = WeightVec4::family(s, t).unwrap();
            assert_eq!(weighted_multiplicity(&w, &MonoPoly::ca1(n)).unwrap(), 2 * t);
            assert_eq!(discrepancy(&w, &MonoPoly::ca1(n)).unwrap(), t);
        }
    }

    #[test]
    fn chart_transforms() {
        let (m, n, big_n) = (2i64, 3i64, 9u32);
        let cs = charts(&WeightVec4::family(m, n).unwrap(), &MonoPoly::ca1(big_n)).unwrap();
        assert_eq!(
            cs[3].strict_transform.to_string(),
            format!("xy+z^2+w^{}", big_n as i64 - 2 * n)
        );
        assert!(cs[3].action.is_trivial());

        let cs = charts(&wv([1, 5, 3, 2]), &MonoPoly::ca1(5)).unwrap();
        assert_eq!(cs[1].strict_transform.to_string(), "x+z^2+y^4w^5");
        assert_eq!(cs[1].action.to_string(), "1/5(-1,1,2,3)");
        assert_eq!(cs[3].strict_transform.to_string(), "xy+z^2+w^4");
        assert_eq!(cs[3].action, CyclicAction::new(2, &[1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn exceptional_examples() {
        let e = exceptional_part(&WeightVec4::family(2, 3).unwrap(), &MonoPoly::ca1(8));
        assert_eq!(e.form.to_string(), "xy+z^2");
        assert_eq!(e.irreducibility, Irreducibility::Irreducible);
        let e = exceptional_part(&wv([1, 5, 3, 2]), &MonoPoly::ca1(4));
        assert_eq!(e.form.to_string(), "xy+z^2");
        assert_eq!(e.irreducibility, Irreducibility::Irreducible);
        let e = exceptional_part(&WeightVec4::family(2, 3).unwrap(), &MonoPoly::ca1(6));
        assert_eq!(e.form.to_string(), "xy+z^2+w^6");
        assert_eq!(e.irreducibility, Irreducibility::Irreducible);
        // wt(xy) < wt(z²): the form is xy alone.
        let e = exceptional_part(&wv([1, 1, 2, 1]), &MonoPoly::ca1(4));
        assert_eq!(e.irreducibility, Irreducibility::Reducible);
    }
}
