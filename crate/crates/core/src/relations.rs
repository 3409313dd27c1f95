//! Exhaustive checks of the linear relations satisfied by LLT polynomials,
//! and an evaluator that computes them from those relations alone.
//!
//! A relation instance is a signed sum of products of path functions plus
//! an optional constant that must vanish. Suites generate every instance up
//! to a size bound and evaluate them against an [`Oracle`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::llt;
use crate::partitions::{compositions_of, Partition};
use crate::schroeder::{enumerate, enumerate_dyck, word_of, BounceData, Decomposition, SchroederPath, Step};
use crate::symfunc::Basis;
use crate::{Coeff, Sym};

use Step::{D, E, N};

/// Largest size accepted by the suites.
pub const SUITE_BOUND: usize = 6;

type PathFn = Box<dyn Fn(&SchroederPath) -> Result<Sym> + Send + Sync>;

/// A memoized function from paths to symmetric functions, always returned
/// in the elementary basis.
pub struct Oracle {
    name: String,
    f: PathFn,
    memo: RwLock<HashMap<SchroederPath, Sym>>,
}

impl Oracle {
    pub fn new(name: impl Into<String>, f: impl Fn(&SchroederPath) -> Result<Sym> + Send + Sync + 'static) -> Self {
        Oracle {
            name: name.into(),
            f: Box::new(f),
            memo: RwLock::new(HashMap::new()),
        }
    }

    /// Coloring enumeration.
    pub fn llt() -> Self {
        Self::new("llt", |p| {
            Ok(llt::llt::<num_rational::BigRational>(p)?.convert(Basis::E))
        })
    }

    /// Orientation enumeration shifted back by `q ↦ q - 1`.
    pub fn orientations() -> Self {
        Self::new("orientations", llt::llt_via_orientations)
    }

    /// Chromatic quasisymmetric functions of Dyck paths.
    pub fn chromatic() -> Self {
        Self::new("chromatic", |p| {
            Ok(llt::chromatic::<num_rational::BigRational>(p)?.convert(Basis::E))
        })
    }

    /// The LLT polynomial of the next path of the same size, in enumeration
    /// order. A deliberately wrong function for negative controls.
    pub fn sibling() -> Self {
        Self::new("sibling", |p| {
            let all = enumerate(p.size())?;
            let i = all.iter().position(|q| q == p).expect("path is enumerated");
            let other = &all[(i + 1) % all.len()];
            Ok(llt::llt::<num_rational::BigRational>(other)?.convert(Basis::E))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, p: &SchroederPath) -> Result<Sym> {
        if let Some(v) = self.memo.read().unwrap().get(p) {
            return Ok(v.clone());
        }
        let v = (self.f)(p)?.convert(Basis::E);
        self.memo.write().unwrap().entry(p.clone()).or_insert_with(|| v.clone());
        Ok(v)
    }
}

/// `Σ coeff · Π F(path) + constant = 0`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub kind: &'static str,
    /// The path the instance was generated from.
    pub source: SchroederPath,
    pub point: Option<(usize, usize)>,
    pub terms: Vec<(Coeff, Vec<Vec<Step>>)>,
    pub constant: Option<Sym>,
}

impl Instance {
    fn linear(
        kind: &'static str,
        source: &SchroederPath,
        point: Option<(usize, usize)>,
        terms: Vec<(Coeff, Vec<Step>)>,
    ) -> Self {
        Instance {
            kind,
            source: source.clone(),
            point,
            terms: terms.into_iter().map(|(c, w)| (c, vec![w])).collect(),
            constant: None,
        }
    }

    /// Words of every path that occurs.
    pub fn words(&self) -> Vec<String> {
        let mut out = vec![self.source.word()];
        for (_, ws) in &self.terms {
            for w in ws {
                let w = word_of(w);
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// The same relation with every path reversed.
    pub fn reversed(&self) -> Self {
        let rev = |w: &Vec<Step>| -> Vec<Step> {
            w.iter()
                .rev()
                .map(|s| match s {
                    N => E,
                    E => N,
                    D => D,
                })
                .collect()
        };
        Instance {
            kind: self.kind,
            source: self.source.reverse(),
            point: self.point.map(|(x, z)| {
                let n = self.source.size();
                (n - z, n - x)
            }),
            terms: self
                .terms
                .iter()
                .map(|(c, ws)| (c.clone(), ws.iter().map(rev).collect()))
                .collect(),
            constant: self.constant.clone(),
        }
    }

    /// Left-hand side minus right-hand side, in the elementary basis.
    pub fn discrepancy(&self, oracle: &Oracle) -> Result<Sym> {
        let mut total = self
            .constant
            .clone()
            .unwrap_or_else(|| Sym::zero(Basis::E))
            .convert(Basis::E);
        for (c, words) in &self.terms {
            let mut prod = Sym::one(Basis::E);
            for w in words {
                let p = SchroederPath::from_steps(w.clone())?;
                prod = prod.multiply(&oracle.eval(&p)?);
            }
            total = &total + &prod.scale(c);
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub kind: String,
    pub paths: Vec<String>,
    pub point: Option<(usize, usize)>,
    pub discrepancy: Option<Sym>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub suite: String,
    pub oracle: String,
    pub max_n: usize,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{:<12} {status}  {} instances, {} failures (n <= {}, {})",
            self.suite,
            self.instances,
            self.failures.len(),
            self.max_n,
            self.oracle
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Suite {
    Unicellular,
    BounceA,
    BounceB,
    BounceNd,
    Generalized,
    Dyck,
    Dual,
    Chromatic,
    /// Bounce relations with `V` unrestricted and any number of bounce
    /// points. Reported, never required.
    Extended,
}

impl Suite {
    /// The suites required to pass for LLT polynomials.
    pub const REQUIRED: [Suite; 7] = [
        Suite::Unicellular,
        Suite::BounceA,
        Suite::BounceB,
        Suite::BounceNd,
        Suite::Generalized,
        Suite::Dyck,
        Suite::Dual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Unicellular => "unicellular",
            Suite::BounceA => "bounceA",
            Suite::BounceB => "bounceB",
            Suite::BounceNd => "bounceND",
            Suite::Generalized => "generalized",
            Suite::Dyck => "dyck",
            Suite::Dual => "dual",
            Suite::Chromatic => "chromatic",
            Suite::Extended => "extended",
        }
    }

    pub fn instances(self, max_n: usize) -> Result<Vec<Instance>> {
        match self {
            Suite::Unicellular => unicellular_instances(max_n),
            Suite::BounceA => bounce_instances(max_n, BounceFilter::single(&[[N, N], [D, N]])),
            Suite::BounceB => bounce_instances(max_n, BounceFilter::single(&[[N, N], [N, D]])),
            Suite::BounceNd => bounce_instances(max_n, BounceFilter::single(&[[N, D]])),
            Suite::Generalized => bounce_instances(
                max_n,
                BounceFilter {
                    min_bounce_points: 2,
                    max_bounce_points: usize::MAX,
                    v_without_east: true,
                    patterns: ALL_PATTERNS.to_vec(),
                },
            ),
            Suite::Dyck => dyck_instances(max_n, false),
            Suite::Dual => {
                let mut out = Vec::new();
                for s in [Suite::BounceA, Suite::BounceB, Suite::BounceNd, Suite::Generalized] {
                    out.extend(s.instances(max_n)?.iter().map(Instance::reversed));
                }
                Ok(out)
            }
            Suite::Chromatic => chromatic_instances(max_n),
            Suite::Extended => bounce_instances(
                max_n,
                BounceFilter {
                    min_bounce_points: 1,
                    max_bounce_points: usize::MAX,
                    v_without_east: false,
                    patterns: ALL_PATTERNS.to_vec(),
                },
            ),
        }
    }

    /// The oracle a suite is meant for.
    pub fn default_oracle(self) -> Oracle {
        match self {
            Suite::Chromatic => Oracle::chromatic(),
            _ => Oracle::llt(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            Suite::Unicellular,
            Suite::BounceA,
            Suite::BounceB,
            Suite::BounceNd,
            Suite::Generalized,
            Suite::Dyck,
            Suite::Dual,
            Suite::Chromatic,
            Suite::Extended,
        ]
        .into_iter()
        .find(|x| x.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

fn check_bound(max_n: usize, bound: usize) -> Result<()> {
    if max_n > bound {
        return Err(Error::BoundExceeded {
            what: "suite size",
            value: max_n,
            bound,
        });
    }
    Ok(())
}

fn paths_up_to(max_n: usize) -> Result<Vec<SchroederPath>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate(n)?);
    }
    Ok(out)
}

fn dyck_up_to(max_n: usize) -> Result<Vec<SchroederPath>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_dyck(n)?);
    }
    Ok(out)
}

fn c(n: i64) -> Coeff {
    Coeff::from_int(n)
}

fn q_minus_1() -> Coeff {
    &Coeff::q() - &Coeff::one()
}

/// `F(U ne V) - F(U en V) - (q-1) F(U d V)` for every diagonal step.
fn unicellular_instances(max_n: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for p in paths_up_to(max_n)? {
        for (i, &s) in p.steps().iter().enumerate() {
            if s != D {
                continue;
            }
            let (u, v) = (&p.steps()[..i], &p.steps()[i + 1..]);
            let splice = |mid: &[Step]| [u, mid, v].concat();
            out.push(Instance::linear(
                "unicellular",
                &p,
                None,
                vec![
                    (c(1), splice(&[N, E])),
                    (c(-1), splice(&[E, N])),
                    (-q_minus_1(), p.steps().to_vec()),
                ],
            ));
        }
    }
    Ok(out)
}

const ALL_PATTERNS: [[Step; 2]; 3] = [[N, N], [D, N], [N, D]];

struct BounceFilter {
    min_bounce_points: usize,
    max_bounce_points: usize,
    v_without_east: bool,
    patterns: Vec<[Step; 2]>,
}

impl BounceFilter {
    fn single(patterns: &[[Step; 2]]) -> Self {
        BounceFilter {
            min_bounce_points: 1,
            max_bounce_points: 1,
            v_without_east: true,
            patterns: patterns.to_vec(),
        }
    }
}

/// Points `(x, z)` with `z > x + 1` on `p` and their bounce data, when a
/// decomposition exists.
fn bounce_sites(p: &SchroederPath) -> Vec<(BounceData, Decomposition)> {
    let mut out = Vec::new();
    for pt in p.points() {
        if pt.1 <= pt.0 + 1 {
            continue;
        }
        let b = p.bounce_at(pt).expect("point lies on the path off the diagonal");
        if let Some(d) = b.decomposition {
            out.push((b, d));
        }
    }
    out
}

/// The right-hand side of the bounce relation for `st`, applied to a path
/// decomposed as `U st V de W`.
fn bounce_rhs(p: &SchroederPath, d: &Decomposition, st: [Step; 2]) -> Vec<(Coeff, Vec<Step>)> {
    match st {
        [N, N] => vec![(Coeff::q(), d.replace(p, [N, N], [E, D]))],
        [D, N] => vec![(c(1), d.replace(p, [N, D], [E, D]))],
        [N, D] => vec![
            (q_minus_1(), d.replace(p, [N, D], [E, D])),
            (Coeff::q(), d.replace(p, [D, N], [E, D])),
        ],
        _ => unreachable!("no bounce relation for {st:?}"),
    }
}

fn bounce_instances(max_n: usize, filter: BounceFilter) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for p in paths_up_to(max_n)? {
        for (b, d) in bounce_sites(&p) {
            let k = b.bounce_points.len();
            if k < filter.min_bounce_points || k > filter.max_bounce_points {
                continue;
            }
            if d.s3s4(&p) != [D, E] {
                continue;
            }
            if filter.v_without_east && d.v(&p).contains(&E) {
                continue;
            }
            let st = d.s1s2(&p);
            if !filter.patterns.contains(&st) {
                continue;
            }
            let mut terms = vec![(c(1), p.steps().to_vec())];
            terms.extend(bounce_rhs(&p, &d, st).into_iter().map(|(c, w)| (-c, w)));
            let kind = match st {
                [N, N] => "bounce-nn",
                [D, N] => "bounce-dn",
                _ => "bounce-nd",
            };
            out.push(Instance::linear(kind, &p, Some(b.start), terms));
        }
    }
    Ok(out)
}

/// Terms of the vanishing 3×3 determinant
///
/// ```text
/// | U      U      U     |
/// | ennV   nenV   nneV  |
/// | eenW   eneW   neeW  |
/// ```
///
/// expanded with concatenation as the product: each entry is a sign
/// together with the triples chosen from the second and third rows.
pub fn sarrus_terms() -> Vec<(i64, [[Step; 3]; 2])> {
    let row2 = [[E, N, N], [N, E, N], [N, N, E]];
    let row3 = [[E, E, N], [E, N, E], [N, E, E]];
    // Sarrus: three down-right diagonals positive, three down-left negative.
    let mut out = Vec::new();
    for shift in 0..3 {
        let cols = [shift, (shift + 1) % 3, (shift + 2) % 3];
        out.push((1, [row2[cols[1]], row3[cols[2]]]));
    }
    for shift in 0..3 {
        let cols = [shift, (shift + 2) % 3, (shift + 1) % 3];
        out.push((-1, [row2[cols[1]], row3[cols[2]]]));
    }
    out
}

fn replace_triples(p: &SchroederPath, d: &Decomposition, first: [Step; 3], second: [Step; 3]) -> Vec<Step> {
    let mut w = p.steps().to_vec();
    w[d.s1 - 1..=d.s2()].copy_from_slice(&first);
    w[d.s3 - 1..=d.s4()].copy_from_slice(&second);
    w
}

/// Modular and six-term relations at single-bounce-point sites.
fn dyck_instances(max_n: usize, dyck_only: bool) -> Result<Vec<Instance>> {
    let pool = if dyck_only {
        dyck_up_to(max_n)?
    } else {
        paths_up_to(max_n)?
    };
    let mut out = Vec::new();
    for p in pool {
        for (b, d) in bounce_sites(&p) {
            if b.bounce_points.len() != 1 || d.s3s4(&p) != [E, E] || d.s3 < d.s2() + 2 {
                continue;
            }
            let s = p.steps();
            // The letter just before s3 belongs to V and must be n.
            if s[d.s3 - 1] != N {
                continue;
            }
            if d.s1s2(&p) == [N, N] {
                let mut ene = s.to_vec();
                ene[d.s3 - 1..=d.s4()].copy_from_slice(&[E, N, E]);
                let mut een = s.to_vec();
                een[d.s3 - 1..=d.s4()].copy_from_slice(&[E, E, N]);
                out.push(Instance::linear(
                    "modular",
                    &p,
                    Some(b.start),
                    vec![(c(1), s.to_vec()), (-(&Coeff::q() + &c(1)), ene), (Coeff::q(), een)],
                ));
            }
            if d.s1s2(&p) == [E, N] && d.s1 >= 1 && s[d.s1 - 1] == N {
                let terms = sarrus_terms()
                    .into_iter()
                    .map(|(sign, [t1, t2])| (c(sign), replace_triples(&p, &d, t1, t2)))
                    .collect();
                out.push(Instance::linear("six-term", &p, Some(b.start), terms));
            }
        }
    }
    Ok(out)
}

/// `Σ_{α ⊨ k+1} (q-1)^{k+1-ℓ(α)} e_α`, the LLT polynomial of `n (ne)^k e`.
pub fn dyck_path_graph_formula(k: usize) -> Result<Sym> {
    check_bound(k, 7)?;
    let qm1 = q_minus_1();
    let mut out = Sym::zero(Basis::E);
    for alpha in compositions_of(k + 1) {
        let weight = qm1.pow((k + 1 - alpha.len()) as u32);
        out.add_term(Partition::from_unsorted(alpha), weight);
    }
    Ok(out)
}

/// `n (ne)^k e`
pub fn path_graph_path(k: usize) -> SchroederPath {
    let mut w = String::from("n");
    for _ in 0..k {
        w.push_str("ne");
    }
    w.push('e');
    SchroederPath::parse(&w).expect("valid Dyck path")
}

/// `(q-1)^{-n} f[X(q-1)]` for an LLT polynomial of size `n`.
pub fn pleth_bridge(g: &Sym, n: usize) -> Result<Sym> {
    g.pleth_q_minus_1()
        .convert(Basis::E)
        .exact_div(&q_minus_1().pow(n as u32))
}

fn chromatic_instances(max_n: usize) -> Result<Vec<Instance>> {
    let mut out = dyck_instances(max_n, true)?;
    let dyck = dyck_up_to(max_n)?;
    for p in &dyck {
        for q in &dyck {
            if p.size() + q.size() <= max_n {
                let pq = p.concat(q);
                out.push(Instance {
                    kind: "multiplicative",
                    source: pq.clone(),
                    point: None,
                    terms: vec![
                        (c(1), vec![pq.steps().to_vec()]),
                        (c(-1), vec![p.steps().to_vec(), q.steps().to_vec()]),
                    ],
                    constant: None,
                });
            }
        }
    }
    for k in 0..max_n {
        let p = path_graph_path(k);
        let expected = pleth_bridge(&dyck_path_graph_formula(k)?, k + 1)?;
        out.push(Instance {
            kind: "path-graph",
            source: p.clone(),
            point: None,
            terms: vec![(c(1), vec![p.steps().to_vec()])],
            constant: Some(-&expected),
        });
    }
    for p in &dyck {
        let via_orientations = pleth_bridge(&llt::llt_via_orientations(p)?, p.size())?;
        out.push(Instance {
            kind: "orientation-formula",
            source: p.clone(),
            point: None,
            terms: vec![(c(1), vec![p.steps().to_vec()])],
            constant: Some(-&via_orientations),
        });
    }
    Ok(out)
}

/// Runs every instance of a suite against an oracle.
pub fn verify(suite: Suite, oracle: &Oracle, max_n: usize) -> Result<RelationReport> {
    let bound = if suite == Suite::Chromatic { 5 } else { SUITE_BOUND };
    check_bound(max_n, bound)?;
    let instances = suite.instances(max_n)?;
    let results: Vec<Option<Failure>> = instances
        .par_iter()
        .map(|inst| {
            let failure = |discrepancy, note| Failure {
                kind: inst.kind.to_string(),
                paths: inst.words(),
                point: inst.point,
                discrepancy,
                note,
            };
            match inst.discrepancy(oracle) {
                Ok(d) if d.is_zero() => None,
                Ok(d) => Some(failure(Some(d), None)),
                Err(e) => Some(failure(None, Some(e.to_string()))),
            }
        })
        .collect();
    Ok(RelationReport {
        suite: suite.name().to_string(),
        oracle: oracle.name().to_string(),
        max_n,
        instances: instances.len(),
        failures: results.into_iter().flatten().collect(),
    })
}

pub fn verify_unicellular(n: usize) -> Result<RelationReport> {
    verify(Suite::Unicellular, &Oracle::llt(), n)
}

pub fn verify_bounce_a(n: usize) -> Result<RelationReport> {
    verify(Suite::BounceA, &Oracle::llt(), n)
}

pub fn verify_bounce_b(n: usize) -> Result<RelationReport> {
    verify(Suite::BounceB, &Oracle::llt(), n)
}

pub fn verify_bounce_nd(n: usize) -> Result<RelationReport> {
    verify(Suite::BounceNd, &Oracle::llt(), n)
}

pub fn verify_generalized_bounce(n: usize) -> Result<RelationReport> {
    verify(Suite::Generalized, &Oracle::llt(), n)
}

pub fn verify_dyck_relations(n: usize) -> Result<RelationReport> {
    verify(Suite::Dyck, &Oracle::llt(), n)
}

pub fn verify_dual_bounce(n: usize) -> Result<RelationReport> {
    verify(Suite::Dual, &Oracle::llt(), n)
}

pub fn verify_chromatic_relations(n: usize) -> Result<RelationReport> {
    verify(Suite::Chromatic, &Oracle::chromatic(), n)
}

/// Computes LLT polynomials from the defining relations only: the chain
/// initial condition, multiplicativity at returns to the diagonal, the
/// unicellular relation and the generalized bounce relations.
///
/// Let `X` be the prefix before the first east step, ending at `(x, z)`.
/// If `z = x + 1` the path factors at its first return. Otherwise a
/// trailing `n` in `X` is removed with the unicellular relation, and a
/// trailing `d` is handled by a bounce relation at `(x, z)`.
pub struct RecursionEvaluator {
    memo: RwLock<HashMap<Vec<Step>, Sym>>,
    max_depth: usize,
}

impl Default for RecursionEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl RecursionEvaluator {
    pub fn new() -> Self {
        RecursionEvaluator {
            memo: RwLock::new(HashMap::new()),
            max_depth: 10_000,
        }
    }

    pub fn with_max_depth(max_depth: usize) -> Self {
        RecursionEvaluator {
            memo: RwLock::new(HashMap::new()),
            max_depth,
        }
    }

    pub fn eval(&self, p: &SchroederPath) -> Result<Sym> {
        if p.size() > llt::COLORING_BOUND {
            return Err(Error::BoundExceeded {
                what: "path size",
                value: p.size(),
                bound: llt::COLORING_BOUND,
            });
        }
        self.go(p.steps(), 0)
    }

    fn go(&self, steps: &[Step], depth: usize) -> Result<Sym> {
        if depth > self.max_depth {
            return Err(Error::NonTermination(word_of(steps)));
        }
        if steps.is_empty() {
            return Ok(Sym::one(Basis::E));
        }
        if let Some(v) = self.memo.read().unwrap().get(steps) {
            return Ok(v.clone());
        }
        let v = self.compute(steps, depth)?;
        self.memo
            .write()
            .unwrap()
            .entry(steps.to_vec())
            .or_insert_with(|| v.clone());
        Ok(v)
    }

    fn compute(&self, steps: &[Step], depth: usize) -> Result<Sym> {
        let first_east = steps.iter().position(|&s| s == E).ok_or(Error::NotClosed)?;
        let x = steps[..first_east].iter().filter(|&&s| s == D).count();
        let z = first_east;
        if z == x + 1 {
            // steps[..=first_east] is n d^x e
            let chain = Sym::basis_element(Basis::E, Partition::row(x + 1));
            let rest = self.go(&steps[first_east + 1..], depth + 1)?;
            return Ok(chain.multiply(&rest));
        }
        let last = steps[first_east - 1];
        if last == N {
            let (u, v) = (&steps[..first_east - 1], &steps[first_east + 1..]);
            let en = [u, &[E, N], v].concat();
            let d = [u, &[D], v].concat();
            let a = self.go(&en, depth + 1)?;
            let b = self.go(&d, depth + 1)?;
            return Ok(&a + &b.scale(&q_minus_1()));
        }
        let p = SchroederPath::from_steps(steps.to_vec())?;
        let b = p.bounce_at((x, z))?;
        let d = b.decomposition.ok_or_else(|| Error::NonTermination(p.word()))?;
        let st = d.s1s2(&p);
        if !ALL_PATTERNS.contains(&st) || d.s3s4(&p) != [D, E] {
            return Err(Error::NonTermination(p.word()));
        }
        let mut out = Sym::zero(Basis::E);
        for (c, w) in bounce_rhs(&p, &d, st) {
            out = &out + &self.go(&w, depth + 1)?.scale(&c);
        }
        Ok(out)
    }
}

/// The evaluator on a single path, with a fresh memo table.
pub fn recursion_evaluate(p: &SchroederPath) -> Result<Sym> {
    RecursionEvaluator::new().eval(p)
}
