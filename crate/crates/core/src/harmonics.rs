//! Diagonal-harmonics and Hall–Littlewood functions built from LLT
//! polynomials, and a survey of the elementary coefficients.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::llt;
use crate::partitions::{weak_compositions, Partition};
use crate::schroeder::{enumerate, enumerate_dyck, nu_alpha, p_mu};
use crate::symfunc::Basis;
use crate::{Coeff, Sym};

pub const NABLA_E_BOUND: usize = 5;
pub const NABLA_P_BOUND: usize = 4;
pub const HALL_LITTLEWOOD_BOUND: usize = 6;
pub const SURVEY_BOUND: usize = 6;

fn check(what: &'static str, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        return Err(Error::BoundExceeded { what, value, bound });
    }
    Ok(())
}

fn sum(parts: Vec<Sym>, basis: Basis) -> Sym {
    parts.into_iter().fold(Sym::zero(basis), |acc, f| &acc + &f)
}

/// `∇e_n` as `Σ_P t^{bounce(P)} G_{P*}` over Dyck paths, in the Schur basis.
pub fn nabla_e(n: usize) -> Result<Sym> {
    check("nabla_e size", n, NABLA_E_BOUND)?;
    let terms = enumerate_dyck(n)?
        .par_iter()
        .map(|p| {
            let g = llt::llt::<BigRational>(&p.dyck_star()?)?;
            Ok(g.scale(&Coeff::t_pow(p.haglund_bounce()? as i32)).convert(Basis::S))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sum(terms, Basis::S))
}

/// `(-1)^{n-1} ∇p_n` as `Σ_α t^{area α} q^{below α} G_{ν(α)}` over weak
/// compositions of `n` with `n` parts, in the Schur basis.
pub fn nabla_p(n: usize) -> Result<Sym> {
    check("nabla_p size", n, NABLA_P_BOUND)?;
    let terms = weak_compositions(n, n)
        .par_iter()
        .map(|alpha| {
            let d = nu_alpha(alpha)?;
            let w = Coeff::monomial(BigRational::from_integer(1.into()), d.below as i32, d.area as i32);
            Ok(llt::llt::<BigRational>(&d.path)?.scale(&w).convert(Basis::S))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sum(terms, Basis::S))
}

/// The modified Hall–Littlewood function indexed by the conjugate of `μ`,
/// from the vertical-strip LLT polynomial of `P_μ`. Schur basis.
pub fn hall_littlewood(mu: &Partition) -> Result<Sym> {
    check("partition size", mu.size(), HALL_LITTLEWOOD_BOUND)?;
    let shift: usize = mu.parts().iter().skip(1).map(|&m| m * m.saturating_sub(1) / 2).sum();
    let g = llt::llt::<BigRational>(&p_mu(mu)?)?;
    g.omega().convert(Basis::S).exact_div(&Coeff::q_pow(shift as i32))
}

/// True when `∇e_n` is unchanged by exchanging `q` and `t`; a check on the
/// bounce statistic.
pub fn nabla_e_is_qt_symmetric(n: usize) -> Result<bool> {
    let f = nabla_e(n)?;
    Ok(f == f.swap_qt())
}

/// Coefficient sequence of one `e_μ` in `G_P(x; q+1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyEntry {
    pub path: String,
    pub partition: Partition,
    pub coefficients: Vec<u64>,
    pub unimodal: bool,
    pub log_concave: bool,
    /// Index of the first maximal coefficient.
    pub mode: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub max_n: usize,
    pub paths: usize,
    pub nonnegative: bool,
    pub not_unimodal: usize,
    pub not_log_concave: usize,
    pub entries: Vec<SurveyEntry>,
}

pub fn is_unimodal(a: &[u64]) -> bool {
    let peak = a.iter().enumerate().rev().max_by_key(|&(_, v)| v).map_or(0, |(i, _)| i);
    a[..=peak.min(a.len().saturating_sub(1))]
        .windows(2)
        .all(|w| w[0] <= w[1])
        && a[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// `a_i² ≥ a_{i-1} a_{i+1}` throughout, with no zeros strictly between
/// nonzero entries.
pub fn is_log_concave(a: &[u64]) -> bool {
    let first = a.iter().position(|&x| x != 0);
    let last = a.iter().rposition(|&x| x != 0);
    if let (Some(f), Some(l)) = (first, last) {
        if a[f..=l].contains(&0) {
            return false;
        }
    }
    a.windows(3)
        .all(|w| (w[1] as u128).pow(2) >= w[0] as u128 * w[2] as u128)
}

/// Examines every elementary coefficient of `G_P(x; q+1)` for paths of
/// size at most `max_n`. Nothing is asserted: conjectural properties are
/// only counted.
pub fn survey_e_coefficients(max_n: usize) -> Result<SurveyReport> {
    check("survey size", max_n, SURVEY_BOUND)?;
    let mut paths = Vec::new();
    for n in 1..=max_n {
        paths.extend(enumerate(n)?);
    }
    let per_path = paths
        .par_iter()
        .map(|p| {
            let f = llt::orientation_e_expansion::<BigRational>(p)?;
            let mut out = Vec::new();
            let mut nonneg = true;
            for (mu, c) in f.terms() {
                nonneg &= c.is_nonneg();
                let coefficients: Vec<u64> = c
                    .q_coefficients()
                    .unwrap_or_default()
                    .iter()
                    .map(|x| x.to_integer().to_u64().unwrap_or(0))
                    .collect();
                let mode = coefficients
                    .iter()
                    .enumerate()
                    .fold(0, |best, (i, &v)| if v > coefficients[best] { i } else { best });
                out.push(SurveyEntry {
                    path: p.word(),
                    partition: mu.clone(),
                    unimodal: is_unimodal(&coefficients),
                    log_concave: is_log_concave(&coefficients),
                    mode,
                    coefficients,
                });
            }
            Ok((out, nonneg))
        })
        .collect::<Result<Vec<_>>>()?;
    let nonnegative = per_path.iter().all(|(_, ok)| *ok);
    let entries: Vec<SurveyEntry> = per_path.into_iter().flat_map(|(e, _)| e).collect();
    Ok(SurveyReport {
        max_n,
        paths: paths.len(),
        nonnegative,
        not_unimodal: entries.iter().filter(|e| !e.unimodal).count(),
        not_log_concave: entries.iter().filter(|e| !e.log_concave).count(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{kostka, partitions_of};

    fn s(v: &[usize]) -> Sym {
        Sym::basis_element(Basis::S, Partition::new(v.to_vec()).unwrap())
    }

    fn qt(q: i32, t: i32) -> Coeff {
        Coeff::monomial(BigRational::from_integer(1.into()), q, t)
    }

    fn poly(monomials: &[(i32, i32)]) -> Coeff {
        monomials.iter().fold(Coeff::zero(), |acc, &(a, b)| &acc + &qt(a, b))
    }

    #[test]
    fn nabla_e_small() {
        assert_eq!(nabla_e(1).unwrap(), s(&[1]));
        let want = &s(&[2]) + &s(&[1, 1]).scale(&poly(&[(1, 0), (0, 1)]));
        assert_eq!(nabla_e(2).unwrap(), want);
    }

    #[test]
    fn nabla_e_symmetric_and_positive() {
        for n in 1..=4 {
            assert!(nabla_e_is_qt_symmetric(n).unwrap(), "n = {n}");
            assert!(nabla_e(n).unwrap().convert(Basis::E).shift_q(1).unwrap().is_positive());
        }
    }

    #[test]
    fn nabla_p_table() {
        assert_eq!(nabla_p(1).unwrap(), s(&[1]));
        let want = &s(&[2]) + &s(&[1, 1]).scale(&poly(&[(1, 0), (0, 1), (1, 1)]));
        assert_eq!(nabla_p(2).unwrap(), want);
        let f = nabla_p(3).unwrap();
        assert_eq!(f.get(&Partition::row(3)), Coeff::one());
        let s21 = poly(&[(1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)]);
        assert_eq!(f.get(&Partition::new(vec![2, 1]).unwrap()), s21);
        let s111 = poly(&[
            (3, 0),
            (1, 1),
            (2, 1),
            (3, 1),
            (1, 2),
            (2, 2),
            (3, 2),
            (0, 3),
            (1, 3),
            (2, 3),
        ]);
        assert_eq!(f.get(&Partition::column(3)), s111);
        for n in 1..=4 {
            let f = nabla_p(n).unwrap();
            assert_eq!(f, f.swap_qt(), "n = {n}");
        }
    }

    #[test]
    fn hall_littlewood_specializations() {
        for n in 1..=5 {
            for mu in partitions_of(n).unwrap() {
                let h = hall_littlewood(&mu).unwrap();
                let conj = mu.conjugate();
                assert_eq!(h.specialize_q(0).unwrap(), s(conj.parts()), "{mu}");
                let mut h_conj = Sym::zero(Basis::S);
                for nu in partitions_of(n).unwrap() {
                    let k = kostka(&nu, &conj).unwrap();
                    h_conj.add_term(nu, Coeff::from_int(k as i64));
                }
                assert_eq!(h.specialize_q(1).unwrap(), h_conj, "{mu}");
            }
        }
    }

    #[test]
    fn sequence_shapes() {
        assert!(is_unimodal(&[1, 3, 3, 1]));
        assert!(!is_unimodal(&[2, 1, 2]));
        assert!(is_log_concave(&[1, 2, 1]));
        assert!(!is_log_concave(&[1, 0, 1]));
        assert!(!is_log_concave(&[1, 1, 3]));
        assert!(is_unimodal(&[5]));
    }

    #[test]
    fn survey_shape() {
        let r = survey_e_coefficients(3).unwrap();
        assert_eq!(r.paths, 1 + 3 + 11);
        assert!(r.nonnegative);
        assert!(r
            .entries
            .iter()
            .all(|e| e.coefficients[e.mode] == *e.coefficients.iter().max().unwrap()));
        assert!(survey_e_coefficients(7).is_err());
    }
}
