//! The trigraded algebra `R_n` of the cyclic quiver on `n` vertices.
//!
//! `R_n` is the path ring of the cyclic quiver modulo the relations that the two
//! length-two loops at a vertex agree and that all straight-through length-two paths
//! vanish. As an abelian group it is free of rank `4n`, with basis the idempotents,
//! the single arrows in both directions, and one loop per vertex. Every product of
//! basis paths is either zero or another basis path, so the multiplication table is
//! total and exact.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements live over different algebras: n = {0} vs n = {1}")]
    RankMismatch(usize, usize),
}

/// Vertex index, always in `1..=n`; arithmetic wraps cyclically.
pub type Vertex = usize;

pub fn next_vertex(n: usize, i: Vertex) -> Vertex {
    i % n + 1
}

pub fn prev_vertex(n: usize, i: Vertex) -> Vertex {
    if i == 1 {
        n
    } else {
        i - 1
    }
}

/// True iff `j` is one step from `i` around the cycle.
pub fn adjacent(n: usize, i: Vertex, j: Vertex) -> bool {
    j == next_vertex(n, i) || j == prev_vertex(n, i)
}

/// One of the `4n` basis paths of `R_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathKind {
    /// The idempotent `(i)`.
    Idempotent,
    /// The arrow `(i|i+1)` out of the stored vertex in the increasing direction.
    ArrowUp,
    /// The arrow `(i|i-1)` out of the stored vertex in the decreasing direction.
    ArrowDown,
    /// The loop `(i|i+1|i) = (i|i-1|i)`.
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathElem {
    pub kind: PathKind,
    pub vertex: Vertex,
}

impl PathElem {
    pub fn idempotent(i: Vertex) -> Self {
        PathElem { kind: PathKind::Idempotent, vertex: i }
    }

    pub fn arrow_up(i: Vertex) -> Self {
        PathElem { kind: PathKind::ArrowUp, vertex: i }
    }

    pub fn arrow_down(i: Vertex) -> Self {
        PathElem { kind: PathKind::ArrowDown, vertex: i }
    }

    pub fn loop_at(i: Vertex) -> Self {
        PathElem { kind: PathKind::Loop, vertex: i }
    }

    /// The arrow from `i` to an adjacent vertex `j`.
    pub fn arrow(n: usize, i: Vertex, j: Vertex) -> Self {
        if j == next_vertex(n, i) {
            Self::arrow_up(i)
        } else if j == prev_vertex(n, i) {
            Self::arrow_down(i)
        } else {
            panic!("no arrow from {i} to {j} for n = {n}")
        }
    }

    pub fn source(&self) -> Vertex {
        self.vertex
    }

    pub fn target(&self, n: usize) -> Vertex {
        match self.kind {
            PathKind::Idempotent | PathKind::Loop => self.vertex,
            PathKind::ArrowUp => next_vertex(n, self.vertex),
            PathKind::ArrowDown => prev_vertex(n, self.vertex),
        }
    }

    /// Path length (0, 1 or 2), whose parity is the second grading.
    pub fn length(&self) -> u8 {
        match self.kind {
            PathKind::Idempotent => 0,
            PathKind::ArrowUp | PathKind::ArrowDown => 1,
            PathKind::Loop => 2,
        }
    }

    /// Printed in path notation, e.g. `(2)`, `(2|3)`, `(2|3|2)`.
    pub fn notation(&self, n: usize) -> String {
        let i = self.vertex;
        match self.kind {
            PathKind::Idempotent => format!("({i})"),
            PathKind::ArrowUp => format!("({i}|{})", next_vertex(n, i)),
            PathKind::ArrowDown => format!("({i}|{})", prev_vertex(n, i)),
            PathKind::Loop => format!("({i}|{}|{i})", next_vertex(n, i)),
        }
    }
}

/// Trigrading: arrow degree, path-length parity, winding degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TriDegree {
    pub d1: i64,
    pub d2: u8,
    pub d3: i64,
}

impl TriDegree {
    pub fn new(d1: i64, d2: u8, d3: i64) -> Self {
        TriDegree { d1, d2: d2 % 2, d3 }
    }

    pub fn add(self, other: TriDegree) -> Self {
        TriDegree::new(self.d1 + other.d1, (self.d2 + other.d2) % 2, self.d3 + other.d3)
    }
}

/// Trigrading of a basis path: `(i|i+1)` has first degree one, `(n|1)` has third
/// degree `1`, `(1|n)` has third degree `-1`, and loops sum the degrees of their
/// two arrows.
pub fn tridegree(n: usize, x: PathElem) -> TriDegree {
    match x.kind {
        PathKind::Idempotent => TriDegree::new(0, 0, 0),
        PathKind::ArrowUp => TriDegree::new(1, 1, if x.vertex == n { 1 } else { 0 }),
        PathKind::ArrowDown => TriDegree::new(0, 1, if x.vertex == 1 { -1 } else { 0 }),
        PathKind::Loop => TriDegree::new(1, 0, 0),
    }
}

/// Product of two basis paths; `None` means zero.
///
/// Concatenation is read left to right: `(i|j) * (j|k) = (i|j|k)`. Straight-through
/// length-two paths vanish and any path of length three or more vanishes, so a loop
/// absorbs everything except idempotents.
pub fn multiply_basis(n: usize, x: PathElem, y: PathElem) -> Option<PathElem> {
    if x.target(n) != y.source() {
        return None;
    }
    match (x.kind, y.kind) {
        (PathKind::Idempotent, _) => Some(y),
        (_, PathKind::Idempotent) => Some(x),
        (PathKind::ArrowUp, PathKind::ArrowDown) | (PathKind::ArrowDown, PathKind::ArrowUp) => {
            Some(PathElem::loop_at(x.vertex))
        }
        _ => None,
    }
}

/// Basis of `(i) R_n (j)`: both trivial paths if `i = j`, the single arrow if the
/// vertices are adjacent on the cycle, nothing otherwise.
pub fn paths_between(n: usize, i: Vertex, j: Vertex) -> Vec<PathElem> {
    assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    if i == j {
        vec![PathElem::idempotent(i), PathElem::loop_at(i)]
    } else if j == next_vertex(n, i) {
        vec![PathElem::arrow_up(i)]
    } else if j == prev_vertex(n, i) {
        vec![PathElem::arrow_down(i)]
    } else {
        vec![]
    }
}

/// Integer combination of basis paths of `R_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<PathElem, i64>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn from_basis(n: usize, x: PathElem) -> Self {
        Self::term(n, x, 1)
    }

    pub fn term(n: usize, x: PathElem, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(x, c);
        }
        AlgebraElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (PathElem, i64)> + '_ {
        self.terms.iter().map(|(x, c)| (*x, *c))
    }

    pub fn coeff(&self, x: PathElem) -> i64 {
        self.terms.get(&x).copied().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::RankMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (x, c) in &other.terms {
            let entry = terms.entry(*x).or_insert(0);
            *entry = entry.checked_add(*c).expect("coefficient overflow");
            if *entry == 0 {
                terms.remove(x);
            }
        }
        Ok(AlgebraElement { n: self.n, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.n);
        }
        AlgebraElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(x, k)| (*x, k.checked_mul(c).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n);
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                if let Some(z) = multiply_basis(self.n, *x, *y) {
                    let c = cx.checked_mul(*cy).expect("coefficient overflow");
                    out = out.add(&Self::term(self.n, z, c))?;
                }
            }
        }
        Ok(out)
    }

    /// The common tridegree of all terms, if the element is homogeneous.
    /// Zero is homogeneous of every degree, reported as `None`.
    pub fn homogeneous_degree(&self) -> Option<TriDegree> {
        let mut iter = self.terms.keys();
        let first = tridegree(self.n, *iter.next()?);
        for x in iter {
            if tridegree(self.n, *x) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Printed as a signed sum in path notation, e.g. `(1|2) - 2*(3)`.
    pub fn notation(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (x, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else if *c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&x.notation(self.n));
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

/// All `4n` basis paths in a fixed order.
pub fn basis(n: usize) -> Vec<PathElem> {
    let mut out = Vec::with_capacity(4 * n);
    for i in 1..=n {
        out.push(PathElem::idempotent(i));
        out.push(PathElem::arrow_up(i));
        out.push(PathElem::arrow_down(i));
        out.push(PathElem::loop_at(i));
    }
    out
}
