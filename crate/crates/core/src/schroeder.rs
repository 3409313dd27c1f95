//! Schröder paths, their decorated unit-interval graphs and bounce paths.
//!
//! A path is a word in `n` (north), `d` (diagonal) and `e` (east) from
//! `(0,0)` to `(n,n)`. Lattice points are `(x, y)` with `x` the column.
//! Graph vertices are numbered `1..=n`, one per column.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest size accepted by [`enumerate`].
pub const ENUMERATION_BOUND: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Step {
    N,
    D,
    E,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::N => 'n',
            Step::D => 'd',
            Step::E => 'e',
        }
    }

    pub fn from_letter(c: char) -> Option<Step> {
        match c {
            'n' => Some(Step::N),
            'd' => Some(Step::D),
            'e' => Some(Step::E),
            _ => None,
        }
    }
}

/// Renders a slice of steps as a lowercase word.
pub fn word_of(steps: &[Step]) -> String {
    steps.iter().map(|s| s.letter()).collect()
}

/// Parses a word over `n, d, e` without checking path validity.
pub fn steps_of(word: &str) -> Result<Vec<Step>> {
    word.chars()
        .enumerate()
        .map(|(i, c)| Step::from_letter(c).ok_or(Error::InvalidStep { found: c, position: i }))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SchroederPath {
    steps: Vec<Step>,
}

impl SchroederPath {
    /// Validates a step sequence.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let (mut x, mut y) = (0usize, 0usize);
        for (i, &s) in steps.iter().enumerate() {
            match s {
                Step::N => y += 1,
                Step::E => {
                    if y <= x {
                        return Err(Error::BelowDiagonal(i));
                    }
                    x += 1;
                }
                Step::D => {
                    if y == x {
                        return Err(Error::DiagonalOnMainDiagonal(i));
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        if x != y {
            return Err(Error::NotClosed);
        }
        Ok(SchroederPath { steps })
    }

    pub fn parse(word: &str) -> Result<Self> {
        Self::from_steps(steps_of(word)?)
    }

    pub fn empty() -> Self {
        SchroederPath { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn word(&self) -> String {
        word_of(&self.steps)
    }

    pub fn size(&self) -> usize {
        self.steps.iter().filter(|&&s| s != Step::E).count()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_dyck(&self) -> bool {
        !self.steps.contains(&Step::D)
    }

    pub fn diagonal_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::D).count()
    }

    /// Lattice points visited; entry `i` is the point after `i` steps.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut pts = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = (0, 0);
        pts.push((x, y));
        for &s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => x += 1,
                Step::D => {
                    x += 1;
                    y += 1;
                }
            }
            pts.push((x, y));
        }
        pts
    }

    /// The path read backwards with `n` and `e` exchanged.
    pub fn reverse(&self) -> Self {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match s {
                Step::N => Step::E,
                Step::E => Step::N,
                Step::D => Step::D,
            })
            .collect();
        SchroederPath { steps }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        SchroederPath { steps }
    }

    /// `top[x-1]` is the height at the end of the east or diagonal step in
    /// column `x`; `diagonal[x-1]` records which of the two it is.
    fn columns(&self) -> (Vec<usize>, Vec<bool>) {
        let mut tops = Vec::new();
        let mut diag = Vec::new();
        let mut y = 0;
        for &s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => {
                    tops.push(y);
                    diag.push(false);
                }
                Step::D => {
                    y += 1;
                    tops.push(y);
                    diag.push(true);
                }
            }
        }
        (tops, diag)
    }

    pub fn graph(&self) -> DecoratedGraph {
        let (tops, diag) = self.columns();
        let n = tops.len();
        let mut edges = Vec::new();
        let mut strict = BTreeSet::new();
        for x in 1..=n {
            for y in x + 1..=tops[x - 1] {
                edges.push((x, y));
            }
            if diag[x - 1] {
                strict.insert((x, tops[x - 1]));
            }
        }
        DecoratedGraph { n, edges, strict }
    }

    /// Number of non-strict edges of the graph.
    pub fn area(&self) -> usize {
        self.graph().area()
    }

    /// Walks the bounce path backwards from a point on the path.
    ///
    /// From `(x, z)` go south to `(x, x)`, then west to the rightmost point
    /// of the path at that height. Continue from there only when it sits
    /// between two diagonal steps. When the start lies on the diagonal the
    /// walk is undefined.
    pub fn bounce_at(&self, point: (usize, usize)) -> Result<BounceData> {
        let pts = self.points();
        let start_idx = pts
            .iter()
            .position(|&p| p == point)
            .ok_or(Error::PointNotOnPath(point.0, point.1))?;
        let (x0, z0) = point;
        if x0 == z0 {
            return Err(Error::StartOnDiagonal(x0));
        }
        let mut partition = vec![z0];
        let mut bounce_points = Vec::new();
        let mut cur = x0;
        let end_idx = loop {
            partition.push(cur);
            bounce_points.push((cur, cur));
            let idx = pts
                .iter()
                .rposition(|&(_, y)| y == cur)
                .expect("every height up to n is visited");
            let (px, _) = pts[idx];
            let between_diagonals =
                idx > 0 && idx < self.steps.len() && self.steps[idx - 1] == Step::D && self.steps[idx] == Step::D;
            if between_diagonals {
                cur = px;
            } else {
                partition.push(px);
                break idx;
            }
        };
        let decomposition = if end_idx >= 1 && start_idx < self.steps.len() && start_idx >= end_idx + 2 {
            Some(Decomposition {
                s1: end_idx - 1,
                s3: start_idx - 1,
            })
        } else {
            None
        };
        Ok(BounceData {
            start: point,
            end: pts[end_idx],
            bounce_points,
            partition,
            decomposition,
        })
    }

    /// Every corner `en` becomes a diagonal step.
    pub fn dyck_star(&self) -> Result<Self> {
        if !self.is_dyck() {
            return Err(Error::HasDiagonal);
        }
        let mut steps = Vec::with_capacity(self.steps.len());
        let mut i = 0;
        while i < self.steps.len() {
            if self.steps[i] == Step::E && self.steps.get(i + 1) == Some(&Step::N) {
                steps.push(Step::D);
                i += 2;
            } else {
                steps.push(self.steps[i]);
                i += 1;
            }
        }
        Self::from_steps(steps)
    }

    /// Sum of `n - j` over the intermediate diagonal touches `(j, j)` of the
    /// classical bounce path, which climbs until it meets the start of an
    /// east step of the path and then runs east to the diagonal.
    pub fn haglund_bounce(&self) -> Result<usize> {
        if !self.is_dyck() {
            return Err(Error::HasDiagonal);
        }
        let (tops, _) = self.columns();
        let n = tops.len();
        let mut j = 0;
        let mut total = 0;
        while j < n {
            let h = tops[j];
            if h < n {
                total += n - h;
            }
            j = h;
        }
        Ok(total)
    }
}

impl fmt::Display for SchroederPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl FromStr for SchroederPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl TryFrom<String> for SchroederPath {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Self::parse(&s)
    }
}

impl From<SchroederPath> for String {
    fn from(p: SchroederPath) -> String {
        p.word()
    }
}

/// All Schröder paths of size `n`, ordered by their words with
/// `n < d < e`.
pub fn enumerate(n: usize) -> Result<Vec<SchroederPath>> {
    if n > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            what: "path size",
            value: n,
            bound: ENUMERATION_BOUND,
        });
    }
    fn go(n: usize, x: usize, y: usize, cur: &mut Vec<Step>, out: &mut Vec<SchroederPath>, dyck: bool) {
        if x == n && y == n {
            out.push(SchroederPath { steps: cur.clone() });
            return;
        }
        if y < n {
            cur.push(Step::N);
            go(n, x, y + 1, cur, out, dyck);
            cur.pop();
        }
        if !dyck && y > x && y < n {
            cur.push(Step::D);
            go(n, x + 1, y + 1, cur, out, dyck);
            cur.pop();
        }
        if y > x {
            cur.push(Step::E);
            go(n, x + 1, y, cur, out, dyck);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, &mut Vec::new(), &mut out, false);
    Ok(out)
}

/// The Dyck paths of size `n`.
pub fn enumerate_dyck(n: usize) -> Result<Vec<SchroederPath>> {
    Ok(enumerate(n)?.into_iter().filter(SchroederPath::is_dyck).collect())
}

/// Every Schröder path of size `1..=max_n`.
pub fn enumerate_up_to(max_n: usize) -> Result<Vec<SchroederPath>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate(n)?);
    }
    Ok(out)
}

/// Graph on `1..=n` with a set of strict edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecoratedGraph {
    n: usize,
    /// Sorted by `(low, high)`.
    edges: Vec<(usize, usize)>,
    strict: BTreeSet<(usize, usize)>,
}

impl DecoratedGraph {
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        strict: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        let strict: BTreeSet<(usize, usize)> = strict.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a == 0 || a >= b || b > n) {
            return Err(Error::SizeMismatch(format!(
                "edge ({a}, {b}) is not a pair 1 <= a < b <= {n}"
            )));
        }
        if let Some(e) = strict.iter().find(|e| !edges.contains(e)) {
            return Err(Error::SizeMismatch(format!("strict edge {e:?} is not an edge")));
        }
        let g = DecoratedGraph {
            n,
            edges: edges.into_iter().collect(),
            strict,
        };
        if !g.is_unit_interval() {
            return Err(Error::SizeMismatch("edge set is not unit-interval".into()));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn strict_edges(&self) -> impl Iterator<Item = &(usize, usize)> + '_ {
        self.strict.iter()
    }

    /// Non-strict edges in column-major order.
    pub fn non_strict_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|e| !self.strict.contains(e))
            .collect()
    }

    pub fn is_strict(&self, a: usize, b: usize) -> bool {
        self.strict.contains(&(a.min(b), a.max(b)))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn area(&self) -> usize {
        self.edges.len() - self.strict.len()
    }

    /// `(x, z)` an edge forces `(x, y)` and `(y, z)` for `x < y < z`.
    pub fn is_unit_interval(&self) -> bool {
        self.edges
            .iter()
            .all(|&(x, z)| (x + 1..z).all(|y| self.has_edge(x, y) && self.has_edge(y, z)))
    }

    /// Largest neighbour of each vertex above it (or the vertex itself).
    pub fn tops(&self) -> Vec<usize> {
        let mut tops: Vec<usize> = (1..=self.n).collect();
        for &(a, b) in &self.edges {
            tops[a - 1] = tops[a - 1].max(b);
        }
        tops
    }

    /// The Schröder path whose graph this is, when one exists.
    pub fn to_path(&self) -> Result<SchroederPath> {
        let tops = self.tops();
        let mut steps = Vec::new();
        let mut y = 0;
        for x in 1..=self.n {
            let top = tops[x - 1];
            let diag = self.strict.contains(&(x, top));
            let target = if diag { top - 1 } else { top };
            if target < y {
                return Err(Error::SizeMismatch(format!(
                    "column {x} is lower than column {}",
                    x - 1
                )));
            }
            steps.extend(std::iter::repeat_n(Step::N, target - y));
            steps.push(if diag { Step::D } else { Step::E });
            y = top;
        }
        if self.strict.iter().any(|&(a, b)| tops[a - 1] != b) {
            return Err(Error::SizeMismatch(
                "a strict edge is not the top edge of its column".into(),
            ));
        }
        let path = SchroederPath::from_steps(steps)?;
        debug_assert_eq!(&path.graph(), self);
        Ok(path)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    strict: Vec<(usize, usize)>,
}

impl Serialize for DecoratedGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges.clone(),
            strict: self.strict.iter().copied().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DecoratedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(deserializer)?;
        DecoratedGraph::from_edges(g.n, g.edges, g.strict).map_err(serde::de::Error::custom)
    }
}

/// Positions of the factorization `U s1 s2 V s3 s4 W` of a path.
///
/// `s1` is the step arriving at the end of the bounce walk and `s2` the step
/// leaving it; `s3` and `s4` play the same role at the start point.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Decomposition {
    pub s1: usize,
    pub s3: usize,
}

impl Decomposition {
    pub fn s2(&self) -> usize {
        self.s1 + 1
    }

    pub fn s4(&self) -> usize {
        self.s3 + 1
    }

    pub fn u<'a>(&self, p: &'a SchroederPath) -> &'a [Step] {
        &p.steps[..self.s1]
    }

    pub fn s1s2(&self, p: &SchroederPath) -> [Step; 2] {
        [p.steps[self.s1], p.steps[self.s1 + 1]]
    }

    pub fn v<'a>(&self, p: &'a SchroederPath) -> &'a [Step] {
        &p.steps[self.s1 + 2..self.s3]
    }

    pub fn s3s4(&self, p: &SchroederPath) -> [Step; 2] {
        [p.steps[self.s3], p.steps[self.s3 + 1]]
    }

    pub fn w<'a>(&self, p: &'a SchroederPath) -> &'a [Step] {
        &p.steps[self.s3 + 2..]
    }

    /// The word `U a1 a2 V b1 b2 W`. The result need not be a valid path.
    pub fn replace(&self, p: &SchroederPath, s1s2: [Step; 2], s3s4: [Step; 2]) -> Vec<Step> {
        let mut steps = p.steps.clone();
        steps[self.s1] = s1s2[0];
        steps[self.s1 + 1] = s1s2[1];
        steps[self.s3] = s3s4[0];
        steps[self.s3 + 1] = s3s4[1];
        steps
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BounceData {
    pub start: (usize, usize),
    pub end: (usize, usize),
    /// Diagonal points `(u, u)` reached by the south moves, in order.
    pub bounce_points: Vec<(usize, usize)>,
    /// `(u0, u1, …, u_{k+1})`: start height, then the x-coordinates of
    /// the bounce points, then the x-coordinate of the end point.
    pub partition: Vec<usize>,
    /// Absent when the end point is the origin, the start is `(n, n)`, or
    /// fewer than two steps separate them.
    pub decomposition: Option<Decomposition>,
}

/// `n^{μ1} e^{μ1-μ2} d^{μ2} e^{μ2-μ3} … d^{μℓ} e^{μℓ}`; a single part `m`
/// gives `n^m e^m`.
pub fn p_mu(mu: &Partition) -> Result<SchroederPath> {
    let parts = mu.parts();
    if parts.is_empty() {
        return Err(Error::SizeMismatch("partition must be non-empty".into()));
    }
    let mut steps = vec![Step::N; parts[0]];
    for i in 1..parts.len() {
        steps.extend(std::iter::repeat_n(Step::E, parts[i - 1] - parts[i]));
        steps.extend(std::iter::repeat_n(Step::D, parts[i]));
    }
    steps.extend(std::iter::repeat_n(Step::E, *parts.last().unwrap()));
    SchroederPath::from_steps(steps)
}

/// The path, statistics and car layout attached to a weak composition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CarDiagram {
    pub path: SchroederPath,
    pub area: usize,
    pub below: usize,
    /// North/east support path of the cars; it may dip below the diagonal.
    pub support: String,
    /// `(column, row)` of the car with label `i + 1`.
    pub cars: Vec<(usize, usize)>,
}

/// Builds the car diagram of `α` and reads off its Schröder path.
///
/// Column `c` holds `α_c` cars in consecutive rows, columns filling rows
/// bottom to top from left to right. Cars are labelled along diagonals,
/// highest diagonal first, top to bottom within a diagonal. Labels on the
/// same diagonal are adjacent; a label one diagonal lower is adjacent when
/// it sits further right, and joined by a strict edge when it sits directly
/// below.
pub fn nu_alpha(alpha: &[usize]) -> Result<CarDiagram> {
    let n = alpha.len();
    if alpha.iter().sum::<usize>() != n {
        return Err(Error::SizeMismatch(format!(
            "composition {alpha:?} must have {n} parts summing to {n}"
        )));
    }
    let mut cars = Vec::with_capacity(n);
    let mut row = 1;
    for (i, &k) in alpha.iter().enumerate() {
        for _ in 0..k {
            cars.push((i + 1, row));
            row += 1;
        }
    }
    let diag = |&(c, r): &(usize, usize)| r as i64 - c as i64;
    cars.sort_by(|a, b| diag(b).cmp(&diag(a)).then(b.1.cmp(&a.1)));

    let mut edges = Vec::new();
    let mut strict = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (da, db) = (diag(&cars[a]), diag(&cars[b]));
            if da == db {
                edges.push((a + 1, b + 1));
            } else if db == da - 1 {
                if cars[b].0 > cars[a].0 {
                    edges.push((a + 1, b + 1));
                } else if cars[b].0 == cars[a].0 {
                    edges.push((a + 1, b + 1));
                    strict.push((a + 1, b + 1));
                }
            }
        }
    }
    let path = DecoratedGraph::from_edges(n, edges, strict)?.to_path()?;

    // Row by row: the cells right of each car's north step and above the
    // lowest car diagonal, which may run past the right edge of the box.
    let lowest = cars.iter().map(diag).min().unwrap_or(0);
    let area = cars.iter().map(|c| (diag(c) - lowest) as usize).sum();
    let below = cars.iter().filter(|&&(c, r)| r < c).count();

    let mut support = String::new();
    let mut rows: Vec<(usize, usize)> = cars.clone();
    rows.sort_by_key(|&(_, r)| r);
    let mut x = 0;
    for &(c, _) in &rows {
        while x + 1 < c {
            support.push('e');
            x += 1;
        }
        support.push('n');
    }
    while x < n {
        support.push('e');
        x += 1;
    }
    Ok(CarDiagram {
        path,
        area,
        below,
        support,
        cars,
    })
}
