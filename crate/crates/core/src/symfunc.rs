//! Symmetric functions over [`LaurentQT`] in the five classical bases.
//!
//! Basis changes go through the monomial basis. For each degree the matrix
//! expressing a basis in monomials is built from first principles (counting
//! 0/1 and integer matrices, part assignments, or tableaux) and inverted
//! exactly; both are cached process-wide.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffring::{Coefficient, LaurentQT};
use crate::error::{Error, Result};
use crate::partitions::{kostka, partitions_of, Partition, PARTITION_BOUND};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S];

    pub fn letter(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for Basis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "p" => Ok(Basis::P),
            "s" => Ok(Basis::S),
            other => Err(format!("unknown basis {other:?}; expected one of m, e, h, p, s")),
        }
    }
}

type Matrix = Vec<Vec<BigRational>>;

struct DegreeIndex {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

fn degree_index(d: usize) -> Arc<DegreeIndex> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<DegreeIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&d) {
        return v.clone();
    }
    let parts = partitions_of(d).expect("degree within bound");
    let index = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let v = Arc::new(DegreeIndex { parts, index });
    cache.write().unwrap().entry(d).or_insert(v).clone()
}

/// Ways to fill a matrix with row sums `rows` and column sums `cols`,
/// entries restricted to {0,1} when `binary`.
fn count_matrices(rows: &[usize], cols: &mut [usize], binary: bool) -> u64 {
    fn fill_row(rest_rows: &[usize], cols: &mut [usize], j: usize, remaining: usize, binary: bool) -> u64 {
        if j == cols.len() {
            return if remaining == 0 {
                count_matrices(rest_rows, cols, binary)
            } else {
                0
            };
        }
        let tail: usize = cols[j..].iter().sum();
        if tail < remaining {
            return 0;
        }
        let max = if binary { 1.min(cols[j]) } else { cols[j] }.min(remaining);
        let mut total = 0;
        for v in 0..=max {
            cols[j] -= v;
            total += fill_row(rest_rows, cols, j + 1, remaining - v, binary);
            cols[j] += v;
        }
        total
    }
    match rows.split_first() {
        None => u64::from(cols.iter().all(|&c| c == 0)),
        Some((&r, rest)) => fill_row(rest, cols, 0, r, binary),
    }
}

/// Ways to assign each part of `parts` to a column so that column `i`
/// receives total `cols[i]`.
fn count_assignments(parts: &[usize], cols: &mut [usize]) -> u64 {
    match parts.split_first() {
        None => u64::from(cols.iter().all(|&c| c == 0)),
        Some((&p, rest)) => {
            let mut total = 0;
            for j in 0..cols.len() {
                if cols[j] >= p {
                    cols[j] -= p;
                    total += count_assignments(rest, cols);
                    cols[j] += p;
                }
            }
            total
        }
    }
}

/// Coefficient of `m_mu` in the basis element `b_lambda`.
fn to_monomial_entry(basis: Basis, lambda: &Partition, mu: &Partition) -> u64 {
    let mut cols = mu.parts().to_vec();
    match basis {
        Basis::M => u64::from(lambda == mu),
        Basis::E => count_matrices(lambda.parts(), &mut cols, true),
        Basis::H => count_matrices(lambda.parts(), &mut cols, false),
        Basis::P => count_assignments(lambda.parts(), &mut cols),
        Basis::S => kostka(lambda, mu).expect("same degree"),
    }
}

fn invert(mut a: Matrix) -> Matrix {
    let n = a.len();
    let mut inv: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s += &a[i][k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Row `λ` of the result gives `from_λ` in the `to` basis.
fn transition(from: Basis, to: Basis, d: usize) -> Arc<Matrix> {
    type Cache = RwLock<HashMap<(Basis, Basis, usize), Arc<Matrix>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.read().unwrap().get(&(from, to, d)) {
        return m.clone();
    }
    let idx = degree_index(d);
    let m = if to == Basis::M {
        idx.parts
            .iter()
            .map(|l| {
                idx.parts
                    .iter()
                    .map(|m| BigRational::from_integer(BigInt::from(to_monomial_entry(from, l, m))))
                    .collect()
            })
            .collect()
    } else if from == Basis::M {
        invert((*transition(to, Basis::M, d)).clone())
    } else {
        mat_mul(&transition(from, Basis::M, d), &transition(Basis::M, to, d))
    };
    let m = Arc::new(m);
    cache.write().unwrap().entry((from, to, d)).or_insert(m).clone()
}

/// Finite linear combination of basis elements of one basis.
///
/// Homogeneous components of different degrees may coexist. No stored
/// coefficient is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc<C> {
    basis: Basis,
    terms: BTreeMap<Partition, LaurentQT<C>>,
}

impl<C: Coefficient> SymFunc<C> {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        Self::term(basis, lambda, LaurentQT::one())
    }

    pub fn term(basis: Basis, lambda: Partition, coeff: LaurentQT<C>) -> Self {
        let mut f = Self::zero(basis);
        f.add_term(lambda, coeff);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, LaurentQT<C>)>>(basis: Basis, iter: I) -> Self {
        let mut f = Self::zero(basis);
        for (l, c) in iter {
            f.add_term(l, c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
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

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &LaurentQT<C>)> + '_ {
        self.terms.iter()
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: LaurentQT<C>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&lambda) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&lambda);
                }
            }
            None => {
                self.terms.insert(lambda, coeff);
            }
        }
    }

    /// Coefficient of `b_λ` where `b` is this value's own basis.
    pub fn get(&self, lambda: &Partition) -> LaurentQT<C> {
        self.terms.get(lambda).cloned().unwrap_or_else(LaurentQT::zero)
    }

    /// Coefficient of `b_λ` in an arbitrary basis `b`.
    pub fn coefficient(&self, basis: Basis, lambda: &Partition) -> LaurentQT<C> {
        if basis == self.basis {
            self.get(lambda)
        } else {
            self.convert(basis).get(lambda)
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentQT<C>) -> LaurentQT<C>) -> Self {
        Self::from_terms(self.basis, self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    pub fn try_map_coefficients<E>(
        &self,
        f: impl Fn(&LaurentQT<C>) -> std::result::Result<LaurentQT<C>, E>,
    ) -> std::result::Result<Self, E> {
        let mut out = Self::zero(self.basis);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentQT<C>) -> Self {
        self.map_coefficients(|x| x * c)
    }

    /// Substitutes `q ↦ q + c` in every coefficient.
    pub fn shift_q(&self, c: i64) -> Result<Self> {
        Ok(self.try_map_coefficients(|x| x.shift_q(c))?)
    }

    pub fn subst_q_reciprocal(&self) -> Self {
        self.map_coefficients(|x| x.subst_q_reciprocal())
    }

    pub fn swap_qt(&self) -> Self {
        self.map_coefficients(|x| x.swap_qt())
    }

    pub fn specialize_q(&self, value: i64) -> Result<Self> {
        Ok(self.try_map_coefficients(|x| x.specialize_q(value))?)
    }

    pub fn exact_div(&self, divisor: &LaurentQT<C>) -> Result<Self> {
        Ok(self.try_map_coefficients(|x| x.exact_div(divisor))?)
    }

    /// True iff every coefficient has only non-negative rational
    /// coefficients and no negative exponents.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_nonneg() && c.is_polynomial())
    }

    /// Largest degree of a basis element with non-zero coefficient.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    /// Same element expressed in `target`.
    pub fn convert(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(target);
        let mut by_degree: BTreeMap<usize, Vec<(&Partition, &LaurentQT<C>)>> = BTreeMap::new();
        for (l, c) in &self.terms {
            by_degree.entry(l.size()).or_default().push((l, c));
        }
        for (d, terms) in by_degree {
            assert!(
                d <= PARTITION_BOUND,
                "degree {d} exceeds the supported bound {PARTITION_BOUND}"
            );
            let idx = degree_index(d);
            let mat = transition(self.basis, target, d);
            let mut acc: Vec<LaurentQT<C>> = vec![LaurentQT::zero(); idx.parts.len()];
            for (l, c) in terms {
                let row = &mat[idx.index[l]];
                for (j, w) in row.iter().enumerate() {
                    if !w.is_zero() {
                        acc[j] += &c.scale(&C::from_big_rational(w));
                    }
                }
            }
            for (j, c) in acc.into_iter().enumerate() {
                out.add_term(idx.parts[j].clone(), c);
            }
        }
        out
    }

    /// Product, returned in `self`'s basis.
    pub fn multiply(&self, other: &Self) -> Self {
        let basis = self.basis;
        match basis {
            Basis::E | Basis::H | Basis::P => {
                let other = other.convert(basis);
                let mut out = Self::zero(basis);
                for (l1, c1) in &self.terms {
                    for (l2, c2) in &other.terms {
                        out.add_term(l1.merge(l2), c1 * c2);
                    }
                }
                out
            }
            Basis::M | Basis::S => {
                let a = self.convert(Basis::M);
                let b = other.convert(Basis::M);
                let mut out = Self::zero(Basis::M);
                for (l1, c1) in &a.terms {
                    for (l2, c2) in &b.terms {
                        let prod = c1 * c2;
                        for (nu, k) in monomial_product(l1, l2).iter() {
                            out.add_term(nu.clone(), prod.scale(&C::from_int(*k as i64)));
                        }
                    }
                }
                out.convert(basis)
            }
        }
    }

    /// The involution sending `e_λ` to `h_λ`.
    pub fn omega(&self) -> Self {
        let p = self.convert(Basis::P);
        let signed = Self::from_terms(
            Basis::P,
            p.terms.iter().map(|(l, c)| {
                let c = if (l.size() - l.len()) % 2 == 1 { -c } else { c.clone() };
                (l.clone(), c)
            }),
        );
        signed.convert(self.basis)
    }

    /// The plethystic substitution `f ↦ f[X(q − 1)]`, sending `p_k` to
    /// `(q^k − 1) p_k`.
    pub fn pleth_q_minus_1(&self) -> Self {
        let p = self.convert(Basis::P);
        let one = LaurentQT::<C>::one();
        let out = Self::from_terms(
            Basis::P,
            p.terms.iter().map(|(l, c)| {
                let mut w = c.clone();
                for &k in l.parts() {
                    w = &w * &(&LaurentQT::q_pow(k as i32) - &one);
                }
                (l.clone(), w)
            }),
        );
        out.convert(self.basis)
    }

    /// Equality as abstract symmetric functions, whatever the bases.
    pub fn equals(&self, other: &Self) -> bool {
        *self == other.convert(self.basis)
    }
}

/// `m_λ · m_μ` as a list of `(ν, multiplicity)`.
///
/// The coefficient of `m_ν` counts the distinct rearrangements `α` of `λ`
/// (padded with zeros to the length of `ν`) such that `ν − α` rearranges `μ`.
pub fn monomial_product(lambda: &Partition, mu: &Partition) -> Arc<Vec<(Partition, u64)>> {
    type Key = (Partition, Partition);
    type Cache = RwLock<HashMap<Key, Arc<Vec<(Partition, u64)>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = cache.read().unwrap().get(&key) {
        return v.clone();
    }
    let n = lambda.size() + mu.size();
    let max_len = lambda.len() + mu.len();
    let min_len = lambda.len().max(mu.len());
    let mut out = Vec::new();
    let candidates = if n <= PARTITION_BOUND {
        partitions_of(n).unwrap()
    } else {
        panic!("degree {n} exceeds the supported bound {PARTITION_BOUND}")
    };
    for nu in candidates {
        if nu.len() < min_len || nu.len() > max_len {
            continue;
        }
        let mut counts = lambda.multiplicities();
        counts[0] = nu.len() - lambda.len();
        let mut target = mu.parts().to_vec();
        target.resize(nu.len(), 0);
        target.sort_unstable();
        let mut alpha = Vec::with_capacity(nu.len());
        let k = count_rearrangements(nu.parts(), &mut counts, &mut alpha, &target);
        if k > 0 {
            out.push((nu, k));
        }
    }
    let v = Arc::new(out);
    cache.write().unwrap().entry(key).or_insert(v).clone()
}

fn count_rearrangements(nu: &[usize], counts: &mut [usize], alpha: &mut Vec<usize>, target: &[usize]) -> u64 {
    let i = alpha.len();
    if i == nu.len() {
        let mut diff: Vec<usize> = nu.iter().zip(alpha.iter()).map(|(a, b)| a - b).collect();
        diff.sort_unstable();
        return u64::from(diff == target);
    }
    let mut total = 0;
    for v in 0..counts.len().min(nu[i] + 1) {
        if counts[v] > 0 {
            counts[v] -= 1;
            alpha.push(v);
            total += count_rearrangements(nu, counts, alpha, target);
            alpha.pop();
            counts[v] += 1;
        }
    }
    total
}

/// Straightens the Jacobi–Trudi determinant indexed by a composition.
///
/// Returns `None` when it vanishes, otherwise the sign and partition with
/// `s_α = sign · s_λ`.
pub fn straighten_schur(alpha: &[usize]) -> Option<(i32, Partition)> {
    let l = alpha.len();
    let mut shifted: Vec<usize> = alpha.iter().enumerate().map(|(i, &a)| a + (l - 1 - i)).collect();
    // insertion sort into decreasing order, counting swaps
    let mut sign = 1;
    for i in 1..l {
        let mut j = i;
        while j > 0 && shifted[j - 1] < shifted[j] {
            shifted.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if shifted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let parts = shifted.iter().enumerate().map(|(i, &b)| b - (l - 1 - i)).collect();
    Some((sign, Partition::from_unsorted(parts)))
}

/// `s_α` for a composition, as a signed Schur function (possibly zero).
pub fn schur_of_composition<C: Coefficient>(alpha: &[usize]) -> SymFunc<C> {
    match straighten_schur(alpha) {
        None => SymFunc::zero(Basis::S),
        Some((sign, l)) => SymFunc::term(Basis::S, l, LaurentQT::from_int(sign as i64)),
    }
}

impl<'b, C: Coefficient> Add<&'b SymFunc<C>> for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn add(self, rhs: &'b SymFunc<C>) -> SymFunc<C> {
        let mut out = self.clone();
        for (l, c) in rhs.convert(self.basis).terms {
            out.add_term(l, c);
        }
        out
    }
}

impl<'b, C: Coefficient> Sub<&'b SymFunc<C>> for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn sub(self, rhs: &'b SymFunc<C>) -> SymFunc<C> {
        let mut out = self.clone();
        for (l, c) in rhs.convert(self.basis).terms {
            out.add_term(l, -c);
        }
        out
    }
}

impl<C: Coefficient> Neg for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn neg(self) -> SymFunc<C> {
        self.map_coefficients(|c| -c)
    }
}

impl<'b, C: Coefficient> Mul<&'b SymFunc<C>> for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn mul(self, rhs: &'b SymFunc<C>) -> SymFunc<C> {
        self.multiply(rhs)
    }
}

impl<C: Coefficient> fmt::Display for SymFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            let (neg, c) = if c.len() == 1 && !c.terms().next().unwrap().1.is_nonneg() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !c.is_one() {
                if c.len() == 1 {
                    write!(f, "{c}*")?;
                } else {
                    write!(f, "({c})*")?;
                }
            }
            write!(f, "{}{}", self.basis, l)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coefficient", deserialize = "C: Coefficient"))]
struct TermJson<C> {
    partition: Partition,
    coeff: LaurentQT<C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coefficient", deserialize = "C: Coefficient"))]
struct SymFuncJson<C> {
    basis: Basis,
    terms: Vec<TermJson<C>>,
}

impl<C: Coefficient> Serialize for SymFunc<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = SymFuncJson {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermJson {
                    partition: l.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for SymFunc<C> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = SymFuncJson::<C>::deserialize(deserializer)?;
        Ok(SymFunc::from_terms(
            json.basis,
            json.terms.into_iter().map(|t| (t.partition, t.coeff)),
        ))
    }
}

/// Checks that a degree is small enough for the cached transition tables.
pub fn check_degree(d: usize) -> Result<()> {
    if d > PARTITION_BOUND {
        Err(Error::BoundExceeded {
            what: "degree",
            value: d,
            bound: PARTITION_BOUND,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Coeff, Sym};
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn el(b: Basis, v: &[usize]) -> Sym {
        Sym::basis_element(b, p(v))
    }

    fn c(n: i64) -> Coeff {
        Coeff::from_int(n)
    }

    #[test]
    fn conversion_examples() {
        assert_eq!(el(Basis::E, &[2]).convert(Basis::M), el(Basis::M, &[1, 1]));
        assert_eq!(el(Basis::P, &[2]).convert(Basis::M), el(Basis::M, &[2]));
        let s21 = el(Basis::S, &[2, 1]).convert(Basis::E);
        assert_eq!(s21, &el(Basis::E, &[2, 1]) - &el(Basis::E, &[3]));
        // h_2 = m_2 + m_11, p_11 = m_2 + 2 m_11
        assert_eq!(
            el(Basis::H, &[2]).convert(Basis::M),
            &el(Basis::M, &[2]) + &el(Basis::M, &[1, 1])
        );
        let p11 = el(Basis::P, &[1, 1]).convert(Basis::M);
        assert_eq!(p11.get(&p(&[1, 1])), c(2));
    }

    #[test]
    fn multiplication_examples() {
        let e1 = el(Basis::E, &[1]);
        assert_eq!(e1.multiply(&e1), el(Basis::E, &[1, 1]));
        assert_eq!(el(Basis::E, &[2]).multiply(&Sym::one(Basis::E)), el(Basis::E, &[2]));
        let m1 = el(Basis::M, &[1]);
        let want = Sym::from_terms(Basis::M, [(p(&[2]), c(1)), (p(&[1, 1]), c(2))]);
        assert_eq!(m1.multiply(&m1), want);
        // m_21 m_1 = m_31 + m_22 + 2 m_211, by expanding monomials
        let prod = el(Basis::M, &[2, 1]).multiply(&m1);
        let want = Sym::from_terms(
            Basis::M,
            [(p(&[3, 1]), c(1)), (p(&[2, 2]), c(2)), (p(&[2, 1, 1]), c(2))],
        );
        assert_eq!(prod, want);
        // Pieri: s_1 s_1 = s_2 + s_11
        let s1 = el(Basis::S, &[1]);
        assert_eq!(s1.multiply(&s1), &el(Basis::S, &[2]) + &el(Basis::S, &[1, 1]));
    }

    #[test]
    fn omega_examples() {
        assert!(el(Basis::E, &[2, 1]).omega().equals(&el(Basis::H, &[2, 1])));
        assert_eq!(el(Basis::P, &[2]).omega(), -&el(Basis::P, &[2]));
        assert_eq!(el(Basis::S, &[2, 1, 1]).omega(), el(Basis::S, &[3, 1]));
    }

    #[test]
    fn pleth_examples() {
        let q = Coeff::q();
        let qm1 = &q - &c(1);
        assert_eq!(
            el(Basis::P, &[1]).pleth_q_minus_1(),
            Sym::term(Basis::P, p(&[1]), qm1.clone())
        );
        assert_eq!(
            el(Basis::P, &[1, 1]).pleth_q_minus_1(),
            Sym::term(Basis::P, p(&[1, 1]), qm1.pow(2))
        );
        let half = Coeff::constant(BigRational::new(1.into(), 2.into()));
        let want = Sym::from_terms(
            Basis::P,
            [
                (p(&[1, 1]), &qm1.pow(2) * &half),
                (p(&[2]), -&(&(&q.pow(2) - &c(1)) * &half)),
            ],
        );
        assert!(el(Basis::E, &[2]).pleth_q_minus_1().equals(&want));
    }

    #[test]
    fn straightening() {
        assert_eq!(straighten_schur(&[1, 2]), None);
        assert_eq!(straighten_schur(&[2, 1]), Some((1, p(&[2, 1]))));
        assert_eq!(straighten_schur(&[1, 3, 1]), Some((-1, p(&[2, 2, 1]))));
        assert_eq!(straighten_schur(&[0, 2]), Some((-1, p(&[1, 1]))));
        assert_eq!(straighten_schur(&[]), Some((1, Partition::empty())));
    }

    #[test]
    fn coefficient_lookup() {
        let e3 = el(Basis::E, &[3]);
        assert_eq!(e3.coefficient(Basis::E, &p(&[3])), c(1));
        assert!(e3.coefficient(Basis::E, &p(&[2, 1])).is_zero());
        assert_eq!(e3.coefficient(Basis::S, &p(&[1, 1, 1])), c(1));
    }

    #[test]
    fn schur_is_kostka_sum_of_monomials() {
        for n in 0..=6 {
            for mu in partitions_of(n).unwrap() {
                let want = Sym::from_terms(
                    Basis::M,
                    partitions_of(n).unwrap().into_iter().map(|l| {
                        let k = kostka(&mu, &l).unwrap() as i64;
                        (l, c(k))
                    }),
                );
                assert_eq!(Sym::basis_element(Basis::S, mu.clone()).convert(Basis::M), want);
            }
        }
    }

    #[test]
    fn kostka_sum_of_schur_is_complete() {
        for n in 0..=5 {
            for lam in partitions_of(n).unwrap() {
                let sum = Sym::from_terms(
                    Basis::S,
                    partitions_of(n).unwrap().into_iter().map(|mu| {
                        let k = kostka(&mu, &lam).unwrap() as i64;
                        (mu, c(k))
                    }),
                );
                assert!(sum.equals(&Sym::basis_element(Basis::H, lam.clone())));
            }
        }
    }

    #[test]
    fn omega_swaps_e_and_h() {
        for n in 0..=6 {
            for lam in partitions_of(n).unwrap() {
                let e = Sym::basis_element(Basis::E, lam.clone());
                assert!(e.omega().equals(&Sym::basis_element(Basis::H, lam)));
            }
        }
    }

    #[test]
    fn display_and_json() {
        let f = Sym::from_terms(Basis::S, [(p(&[2, 1]), Coeff::q()), (p(&[1, 1, 1]), Coeff::q_pow(2))]);
        assert_eq!(f.to_string(), "q*s[2,1] + q^2*s[1,1,1]");
        let g = Sym::from_terms(Basis::E, [(p(&[2]), &Coeff::q() - &c(1)), (p(&[1, 1]), c(-1))]);
        assert_eq!(g.to_string(), "(q - 1)*e[2] - e[1,1]");
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(json["basis"], "s");
        assert_eq!(json["terms"][0]["partition"], serde_json::json!([2, 1]));
        let back: Sym = serde_json::from_value(json).unwrap();
        assert_eq!(back, f);
    }

    fn basis() -> impl Strategy<Value = Basis> {
        prop::sample::select(Basis::ALL.to_vec())
    }

    fn symfunc(max_deg: usize) -> impl Strategy<Value = Sym> {
        let all: Vec<Partition> = (0..=max_deg).flat_map(|n| partitions_of(n).unwrap()).collect();
        (
            basis(),
            prop::collection::vec((prop::sample::select(all), -3i64..=3, 0i32..=2, 0i32..=1), 0..5),
        )
            .prop_map(|(b, ts)| {
                Sym::from_terms(
                    b,
                    ts.into_iter()
                        .map(|(l, k, qe, te)| (l, Coeff::monomial(BigRational::from_integer(k.into()), qe, te))),
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip(f in symfunc(6), b in basis()) {
            prop_assert_eq!(f.convert(b).convert(f.basis()), f);
        }

        #[test]
        fn omega_is_involution(f in symfunc(6)) {
            prop_assert_eq!(f.omega().omega(), f);
        }

        #[test]
        fn pleth_is_multiplicative(f in symfunc(3), g in symfunc(3)) {
            let lhs = f.multiply(&g).pleth_q_minus_1();
            let rhs = f.pleth_q_minus_1().multiply(&g.pleth_q_minus_1());
            prop_assert!(lhs.equals(&rhs));
        }

        #[test]
        fn multiplication_agrees_across_bases(f in symfunc(3), g in symfunc(3), b in basis()) {
            let lhs = f.convert(b).multiply(&g);
            let rhs = f.convert(Basis::M).multiply(&g);
            prop_assert!(lhs.equals(&rhs));
        }
    }
}
