//! Two Schur expansions of an LLT polynomial: a signed sum over permutation
//! colorings with straightened composition Schur functions, and a sum over
//! orientations weighted by Kostka numbers.

use std::collections::BTreeMap;

use crate::coeffring::{Coefficient, LaurentQT};
use crate::error::{Error, Result};
use crate::llt::{self, for_each_coloring, ColoringKind, OrientationSpace, COLORING_BOUND};
use crate::partitions::{kostka, partitions_of, Composition, Partition};
use crate::schroeder::SchroederPath;
use crate::symfunc::{schur_of_composition, Basis, SymFunc};

/// How the descent-like set of a permutation coloring is read.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AscentConvention {
    /// `i` such that `σ⁻¹(i) < σ⁻¹(i+1)`. This is the reading that
    /// reproduces the LLT polynomial.
    InverseAscent,
    /// `i` such that `σ⁻¹(i) > σ⁻¹(i+1)`. Kept for comparison only.
    InverseDescent,
}

/// Colorings of the path's graph that use each color in `1..=n` once.
pub fn permutation_colorings(p: &SchroederPath) -> Result<Vec<(Vec<usize>, usize)>> {
    check_size(p)?;
    let g = p.graph();
    let mut out = Vec::new();
    for_each_coloring(&g, &vec![1; p.size()], ColoringKind::Llt, &mut |k, asc| {
        out.push((k.iter().map(|c| c + 1).collect(), asc));
    });
    Ok(out)
}

fn check_size(p: &SchroederPath) -> Result<()> {
    if p.size() > COLORING_BOUND {
        return Err(Error::BoundExceeded {
            what: "path size",
            value: p.size(),
            bound: COLORING_BOUND,
        });
    }
    Ok(())
}

/// Positions `i ∈ [n-1]` selected by the convention; `sigma[v-1]` is the
/// color of vertex `v`.
pub fn ascent_set(sigma: &[usize], convention: AscentConvention) -> Vec<usize> {
    let n = sigma.len();
    let mut inverse = vec![0; n + 1];
    for (v, &c) in sigma.iter().enumerate() {
        inverse[c] = v + 1;
    }
    (1..n)
        .filter(|&i| match convention {
            AscentConvention::InverseAscent => inverse[i] < inverse[i + 1],
            AscentConvention::InverseDescent => inverse[i] > inverse[i + 1],
        })
        .collect()
}

/// Gaps `(d1, d2 - d1, …, n - dℓ)` of a subset of `[n-1]`.
pub fn gap_composition(set: &[usize], n: usize) -> Composition {
    let mut out = Vec::with_capacity(set.len() + 1);
    let mut prev = 0;
    for &d in set {
        out.push(d - prev);
        prev = d;
    }
    out.push(n - prev);
    out
}

/// Schur expansion from permutation colorings and straightening.
pub fn elw_schur<C: Coefficient>(p: &SchroederPath) -> Result<SymFunc<C>> {
    elw_schur_with(p, AscentConvention::InverseAscent)
}

pub fn elw_schur_with<C: Coefficient>(p: &SchroederPath, convention: AscentConvention) -> Result<SymFunc<C>> {
    let mut out = SymFunc::zero(Basis::S);
    if p.size() == 0 {
        return Ok(SymFunc::one(Basis::S));
    }
    for (sigma, asc) in permutation_colorings(p)? {
        let alpha = gap_composition(&ascent_set(&sigma, convention), p.size());
        let s = schur_of_composition::<C>(&alpha);
        for (l, c) in s.terms() {
            out.add_term(l.clone(), c.mul_monomial(asc as i32, 0));
        }
    }
    Ok(out)
}

/// Schur expansion `Σ_μ Σ_θ (q-1)^{asc θ} K_{μ', λ(θ)} s_μ`.
pub fn kostka_schur<C: Coefficient>(p: &SchroederPath) -> Result<SymFunc<C>> {
    check_size(p)?;
    let space = OrientationSpace::new(&p.graph())?;
    let mut tally: BTreeMap<(Partition, usize), u64> = BTreeMap::new();
    for theta in space.iter() {
        *tally.entry((space.lambda(theta), theta.asc())).or_default() += 1;
    }
    let qm1 = &LaurentQT::<C>::q() - &LaurentQT::one();
    let mut out = SymFunc::zero(Basis::S);
    for mu in partitions_of(p.size())? {
        let conj = mu.conjugate();
        let mut coeff = LaurentQT::zero();
        for ((lambda, asc), &count) in &tally {
            let k = kostka(&conj, lambda)?;
            if k > 0 {
                coeff += &qm1.pow(*asc as u32).scale(&C::from_int((k * count) as i64));
            }
        }
        out.add_term(mu, coeff);
    }
    Ok(out)
}

/// The two Schur routes and the basis change of the coloring enumeration,
/// in that order.
pub fn schur_routes<C: Coefficient>(p: &SchroederPath) -> Result<[SymFunc<C>; 3]> {
    Ok([elw_schur(p)?, kostka_schur(p)?, llt::llt::<C>(p)?.convert(Basis::S)])
}

/// True when all three Schur expansions coincide.
pub fn triple_agreement(p: &SchroederPath) -> Result<bool> {
    let [a, b, c] = schur_routes::<num_rational::BigRational>(p)?;
    Ok(a == b && b == c)
}
