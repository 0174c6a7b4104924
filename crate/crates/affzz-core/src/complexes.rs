//! Bounded complexes of shifted projective modules over the cyclic-quiver algebra
//! and the braid group action on them.
//!
//! A complex is a list of summands, each a copy of some `P_i` with a cohomological
//! degree and internal grading shifts, together with a differential whose entries
//! are algebra elements acting by right multiplication. Braid generators act by
//! tensoring with two-term bimodule complexes (half twists) or by relabeling along
//! the rotation bimodule; minimization removes contractible pairs by Gaussian
//! elimination, producing the unique minimal representative of the homotopy class.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    multiply_basis, next_vertex, paths_between, prev_vertex, tridegree, AlgebraElement,
    PathElem, PathKind, Vertex,
};
use crate::braid::{BraidGen, BraidWord};
use crate::laurent::{qvars, tsvars, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("summand index {0} out of range")]
    BadIndex(usize),
    #[error("differential entry {from} -> {to} is invalid: {reason}")]
    BadEntry { from: usize, to: usize, reason: String },
    #[error("differential does not square to zero at {from} -> {to}")]
    NotSquareZero { from: usize, to: usize },
    #[error("homology has torsion in degree (s1,s2,s3) = ({0},{1},{2})")]
    Torsion(i64, i64, i64),
    #[error("strand count must be at least 3, got {0}")]
    TooFewStrands(usize),
}

/// One shifted projective summand `P_vertex[−coh]{g1}⟨g3⟩`.
///
/// The hidden parity field tracks the path-length grading mod 2 of the shift; it
/// never enters comparisons or serialization and exists only to give the class in
/// the Grothendieck group its correct sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summand {
    pub vertex: Vertex,
    pub coh: i64,
    pub g1: i64,
    pub g3: i64,
    pub(crate) par: u8,
}

impl Summand {
    pub fn new(vertex: Vertex, coh: i64, g1: i64, g3: i64) -> Self {
        Summand { vertex, coh, g1, g3, par: 0 }
    }

    pub(crate) fn with_parity(vertex: Vertex, coh: i64, g1: i64, g3: i64, par: u8) -> Self {
        Summand { vertex, coh, g1, g3, par: par % 2 }
    }

    fn sort_key(&self) -> (i64, Vertex, i64, i64, u8) {
        (self.coh, self.vertex, self.g1, self.g3, self.par)
    }

    /// The key used for multiset comparison and serialization; parity is excluded.
    pub fn shift_key(&self) -> (i64, Vertex, i64, i64) {
        (self.coh, self.vertex, self.g1, self.g3)
    }
}

/// Serializable view of one summand, fields in documented order.
#[derive(Serialize)]
pub struct SummandJson {
    pub vertex: usize,
    pub coh: i64,
    pub g1: i64,
    pub g3: i64,
}

/// Serializable view of one differential entry.
#[derive(Serialize)]
pub struct EntryJson {
    pub from: usize,
    pub to: usize,
    pub element: String,
}

/// Serializable view of a whole complex. Serializing this struct directly (not
/// through a generic JSON value, which would reorder keys) keeps the field order
/// deterministic.
#[derive(Serialize)]
pub struct ComplexJson {
    pub n: usize,
    pub summands: Vec<SummandJson>,
    pub differential: Vec<EntryJson>,
}

/// Bounded complex of shifted projectives with a strictly upper-triangular
/// differential in cohomological degree `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjComplex {
    n: usize,
    summands: Vec<Summand>,
    diff: BTreeMap<(usize, usize), AlgebraElement>,
}

impl ProjComplex {
    /// The one-summand complex `P_i` in degree zero.
    pub fn projective(n: usize, i: Vertex) -> Self {
        assert!((1..=n).contains(&i), "vertex {i} out of range 1..={n}");
        ProjComplex {
            n,
            summands: vec![Summand::new(i, 0, 0, 0)],
            diff: BTreeMap::new(),
        }
    }

    /// Assemble and validate a complex from explicit parts.
    pub fn from_parts(
        n: usize,
        summands: Vec<Summand>,
        entries: Vec<(usize, usize, AlgebraElement)>,
    ) -> Result<Self, ComplexError> {
        if n < 3 {
            return Err(ComplexError::TooFewStrands(n));
        }
        let mut diff = BTreeMap::new();
        for (from, to, element) in entries {
            if from >= summands.len() || to >= summands.len() {
                return Err(ComplexError::BadIndex(from.max(to)));
            }
            if !element.is_zero() {
                diff.insert((from, to), element);
            }
        }
        let mut c = ProjComplex { n, summands, diff };
        c.validate()?;
        c.canonical_sort();
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn entry(&self, from: usize, to: usize) -> Option<&AlgebraElement> {
        self.diff.get(&(from, to))
    }

    pub fn differential(&self) -> impl Iterator<Item = (usize, usize, &AlgebraElement)> {
        self.diff.iter().map(|(&(u, v), e)| (u, v, e))
    }

    /// Check degrees and `d² = 0`. The path-length parity is deliberately not
    /// checked: complexes read off from curves are inhomogeneous in it.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (&(from, to), element) in &self.diff {
            let u = self.summands.get(from).ok_or(ComplexError::BadIndex(from))?;
            let v = self.summands.get(to).ok_or(ComplexError::BadIndex(to))?;
            if v.coh != u.coh + 1 {
                return Err(ComplexError::BadEntry {
                    from,
                    to,
                    reason: format!("cohomological step {} -> {}", u.coh, v.coh),
                });
            }
            for (path, _) in element.terms() {
                if path.source() != u.vertex || path.target(self.n) != v.vertex {
                    return Err(ComplexError::BadEntry {
                        from,
                        to,
                        reason: format!(
                            "path {} does not run {} -> {}",
                            path.notation(self.n),
                            u.vertex,
                            v.vertex
                        ),
                    });
                }
                let d = tridegree(self.n, path);
                if d.d1 != u.g1 - v.g1 || d.d3 != u.g3 - v.g3 {
                    return Err(ComplexError::BadEntry {
                        from,
                        to,
                        reason: format!(
                            "path {} has degree ({},{}) but shifts differ by ({},{})",
                            path.notation(self.n),
                            d.d1,
                            d.d3,
                            u.g1 - v.g1,
                            u.g3 - v.g3
                        ),
                    });
                }
            }
        }
        for from in 0..self.summands.len() {
            for to in 0..self.summands.len() {
                let mut acc = AlgebraElement::zero(self.n);
                for mid in 0..self.summands.len() {
                    if let (Some(a), Some(b)) =
                        (self.diff.get(&(from, mid)), self.diff.get(&(mid, to)))
                    {
                        acc = acc.add(&a.mul(b).expect("same n")).expect("same n");
                    }
                }
                if !acc.is_zero() {
                    return Err(ComplexError::NotSquareZero { from, to });
                }
            }
        }
        Ok(())
    }

    /// Sort summands by (coh, vertex, g1, g3) and renumber the differential.
    pub fn canonical_sort(&mut self) {
        let mut order: Vec<usize> = (0..self.summands.len()).collect();
        order.sort_by_key(|&i| self.summands[i].sort_key());
        let mut position = vec![0usize; order.len()];
        for (new_idx, &old_idx) in order.iter().enumerate() {
            position[old_idx] = new_idx;
        }
        self.summands = order.iter().map(|&i| self.summands[i]).collect();
        self.diff = self
            .diff
            .iter()
            .map(|(&(u, v), e)| ((position[u], position[v]), e.clone()))
            .collect();
    }

    /// Apply one braid generator to the complex; the result is not minimized.
    pub fn apply_generator(&self, g: BraidGen) -> Self {
        match g {
            BraidGen::Sigma(k) => self.tensor_half_twist(k, true),
            BraidGen::SigmaInv(k) => self.tensor_half_twist(k, false),
            BraidGen::Rho => self.rotate(true),
            BraidGen::RhoInv => self.rotate(false),
        }
    }

    /// Apply a braid word, rightmost letter first, minimizing after every step.
    pub fn apply_word(&self, word: &BraidWord) -> Self {
        assert_eq!(word.n, self.n, "strand count mismatch");
        let mut c = self.clone();
        for g in word.letters.iter().rev() {
            c = c.apply_generator(*g).minimize();
        }
        c
    }

    fn tensor_half_twist(&self, k: Vertex, positive: bool) -> Self {
        let n = self.n;
        let old_len = self.summands.len();
        let mut summands = self.summands.clone();
        let mut new_index: HashMap<(usize, PathElem), usize> = HashMap::new();
        for (iu, u) in self.summands.iter().enumerate() {
            for p in paths_between(n, k, u.vertex) {
                let d = tridegree(n, p);
                let s = if positive {
                    Summand::with_parity(
                        k,
                        u.coh - 1,
                        u.g1 + d.d1,
                        u.g3 + d.d3,
                        (u.par + p.length()) % 2,
                    )
                } else {
                    Summand::with_parity(
                        k,
                        u.coh + 1,
                        u.g1 + d.d1 - 1,
                        u.g3 + d.d3,
                        (u.par + p.length()) % 2,
                    )
                };
                new_index.insert((iu, p), summands.len());
                summands.push(s);
            }
        }
        let mut diff: BTreeMap<(usize, usize), AlgebraElement> = self.diff.clone();
        let add_entry = |diff: &mut BTreeMap<(usize, usize), AlgebraElement>,
                             from: usize,
                             to: usize,
                             e: AlgebraElement| {
            if e.is_zero() {
                return;
            }
            let slot = diff
                .entry((from, to))
                .or_insert_with(|| AlgebraElement::zero(n));
            *slot = slot.add(&e).expect("same n");
            if slot.is_zero() {
                diff.remove(&(from, to));
            }
        };
        for (iu, u) in self.summands.iter().enumerate() {
            for p in paths_between(n, k, u.vertex) {
                let ni = new_index[&(iu, p)];
                if positive {
                    add_entry(&mut diff, ni, iu, AlgebraElement::from_basis(n, p));
                } else {
                    add_entry(&mut diff, iu, ni, coentry(n, p));
                }
            }
        }
        for (&(iu, iv), r) in &self.diff {
            let ju = self.summands[iu].vertex;
            for p in paths_between(n, k, ju) {
                let from = new_index[&(iu, p)];
                for (path_r, c_r) in r.terms() {
                    if let Some(prod) = multiply_basis(n, p, path_r) {
                        let to = new_index[&(iv, prod)];
                        add_entry(
                            &mut diff,
                            from,
                            to,
                            AlgebraElement::term(n, PathElem::idempotent(k), -c_r),
                        );
                    }
                }
            }
        }
        let _ = old_len;
        ProjComplex { n, summands, diff }
    }

    fn rotate(&self, positive: bool) -> Self {
        let n = self.n;
        let summands = self
            .summands
            .iter()
            .map(|u| {
                if positive {
                    if u.vertex == n {
                        Summand::with_parity(1, u.coh, u.g1, u.g3 - 1, u.par)
                    } else {
                        Summand::with_parity(u.vertex + 1, u.coh, u.g1, u.g3, u.par)
                    }
                } else if u.vertex == 1 {
                    Summand::with_parity(n, u.coh, u.g1, u.g3 + 1, u.par)
                } else {
                    Summand::with_parity(u.vertex - 1, u.coh, u.g1, u.g3, u.par)
                }
            })
            .collect();
        let diff = self
            .diff
            .iter()
            .map(|(&(u, v), e)| {
                let mut out = AlgebraElement::zero(n);
                for (path, c) in e.terms() {
                    let moved = PathElem {
                        kind: path.kind,
                        vertex: if positive {
                            next_vertex(n, path.vertex)
                        } else {
                            prev_vertex(n, path.vertex)
                        },
                    };
                    out = out
                        .add(&AlgebraElement::term(n, moved, c))
                        .expect("same n");
                }
                ((u, v), out)
            })
            .collect();
        ProjComplex { n, summands, diff }
    }

    /// Gaussian elimination of contractible pairs, run to a fixpoint.
    pub fn minimize(&self) -> Self {
        let mut c = self.clone();
        c.canonical_sort();
        loop {
            let Some((a, b, inv)) = c.find_pivot() else { break };
            c.eliminate(a, b, inv);
            c.canonical_sort();
        }
        c
    }

    fn find_pivot(&self) -> Option<(usize, usize, AlgebraElement)> {
        for (&(u, v), e) in &self.diff {
            let su = &self.summands[u];
            let sv = &self.summands[v];
            if su.vertex != sv.vertex || su.g1 != sv.g1 || su.g3 != sv.g3 {
                continue;
            }
            let unit = e.coeff(PathElem::idempotent(su.vertex));
            if unit.abs() != 1 {
                continue;
            }
            let lam = e.coeff(PathElem::loop_at(su.vertex));
            let mut inv = AlgebraElement::term(self.n, PathElem::idempotent(su.vertex), unit);
            if lam != 0 {
                inv = inv
                    .sub(&AlgebraElement::term(
                        self.n,
                        PathElem::loop_at(su.vertex),
                        lam,
                    ))
                    .expect("same n");
            }
            return Some((u, v, inv));
        }
        None
    }

    fn eliminate(&mut self, a: usize, b: usize, inv: AlgebraElement) {
        let incoming: Vec<(usize, AlgebraElement)> = self
            .diff
            .iter()
            .filter(|(&(_, v), _)| v == b)
            .map(|(&(u, _), e)| (u, e.clone()))
            .filter(|(u, _)| *u != a)
            .collect();
        let outgoing: Vec<(usize, AlgebraElement)> = self
            .diff
            .iter()
            .filter(|(&(u, _), _)| u == a)
            .map(|(&(_, v), e)| (v, e.clone()))
            .filter(|(v, _)| *v != b)
            .collect();
        for (x, ex) in &incoming {
            let half = ex.mul(&inv).expect("same n");
            for (y, ey) in &outgoing {
                let correction = half.mul(ey).expect("same n");
                if correction.is_zero() {
                    continue;
                }
                let slot = self
                    .diff
                    .entry((*x, *y))
                    .or_insert_with(|| AlgebraElement::zero(self.n));
                *slot = slot.sub(&correction).expect("same n");
                if slot.is_zero() {
                    self.diff.remove(&(*x, *y));
                }
            }
        }
        let keep: Vec<usize> = (0..self.summands.len())
            .filter(|&i| i != a && i != b)
            .collect();
        let mut position = HashMap::new();
        for (new_idx, &old_idx) in keep.iter().enumerate() {
            position.insert(old_idx, new_idx);
        }
        self.summands = keep.iter().map(|&i| self.summands[i]).collect();
        self.diff = self
            .diff
            .iter()
            .filter(|(&(u, v), _)| {
                u != a && u != b && v != a && v != b
            })
            .map(|(&(u, v), e)| ((position[&u], position[&v]), e.clone()))
            .collect();
    }

    /// Class in the Grothendieck group: one Laurent polynomial in `t, s` per
    /// vertex, with sign `(−1)^{coh + parity}`.
    pub fn k_class(&self) -> Vec<LaurentPoly> {
        let varset = tsvars();
        let mut out = vec![LaurentPoly::zero(&varset); self.n];
        for u in &self.summands {
            let sign: i64 = if (u.coh + u.par as i64).rem_euclid(2) == 0 { 1 } else { -1 };
            let term = LaurentPoly::monomial(&varset, sign, vec![u.g1, u.g3]);
            out[u.vertex - 1] = out[u.vertex - 1].add(&term).expect("same varset");
        }
        out
    }

    /// Multiset of summand shifts, the comparison key for homotopy classes of
    /// minimized complexes.
    pub fn summand_multiset(&self) -> BTreeMap<(i64, Vertex, i64, i64), usize> {
        let mut out = BTreeMap::new();
        for u in &self.summands {
            *out.entry(u.shift_key()).or_insert(0) += 1;
        }
        out
    }

    /// Poincaré polynomial of the space of homotopy classes of maps from `P_k`
    /// into shifts of this complex: the coefficient of `q1^a q2^b q3^c` is the
    /// rank of the degree `(a, b, c)` part.
    pub fn hom_poincare(&self, k: Vertex) -> Result<LaurentPoly, ComplexError> {
        assert!((1..=self.n).contains(&k), "vertex {k} out of range");
        let n = self.n;
        let mut basis: Vec<(usize, PathElem, i64, i64, i64)> = Vec::new();
        for (iu, u) in self.summands.iter().enumerate() {
            for p in paths_between(n, k, u.vertex) {
                let d = tridegree(n, p);
                basis.push((iu, p, u.coh, u.g1 + d.d1, u.g3 + d.d3));
            }
        }
        let mut blocks: BTreeMap<(i64, i64), BTreeMap<i64, Vec<usize>>> = BTreeMap::new();
        for (bi, &(_, _, s1, s2, s3)) in basis.iter().enumerate() {
            blocks
                .entry((s2, s3))
                .or_default()
                .entry(s1)
                .or_default()
                .push(bi);
        }
        let coefficient = |from: usize, to: usize| -> i64 {
            let (u, p, ..) = basis[from];
            let (v, p_target, ..) = basis[to];
            let Some(r) = self.diff.get(&(u, v)) else { return 0 };
            let mut acc = 0i64;
            for (path_r, c) in r.terms() {
                if multiply_basis(n, p, path_r) == Some(p_target) {
                    acc += c;
                }
            }
            acc
        };
        let qs = qvars();
        let mut result = LaurentPoly::zero(&qs);
        for (&(s2, s3), by_degree) in &blocks {
            let degrees: Vec<i64> = by_degree.keys().copied().collect();
            let mut rank_out: BTreeMap<i64, usize> = BTreeMap::new();
            for &s1 in &degrees {
                let Some(target) = by_degree.get(&(s1 + 1)) else { continue };
                let source = &by_degree[&s1];
                let mut m = vec![vec![BigInt::zero(); target.len()]; source.len()];
                for (ri, &bi) in source.iter().enumerate() {
                    for (ci, &bj) in target.iter().enumerate() {
                        m[ri][ci] = BigInt::from(coefficient(bi, bj));
                    }
                }
                let factors = diagonal_factors(m);
                if factors.iter().any(|f| f.abs() > BigInt::from(1)) {
                    return Err(ComplexError::Torsion(s1 + 1, s2, s3));
                }
                rank_out.insert(s1, factors.len());
            }
            for &s1 in &degrees {
                let dim = by_degree[&s1].len();
                let out_rank = rank_out.get(&s1).copied().unwrap_or(0);
                let in_rank = rank_out.get(&(s1 - 1)).copied().unwrap_or(0);
                let h = dim - out_rank - in_rank;
                if h > 0 {
                    let term = LaurentPoly::monomial(&qs, h as i64, vec![s1, s2, s3]);
                    result = result.add(&term).expect("same varset");
                }
            }
        }
        Ok(result)
    }

    /// Hom Poincaré polynomials against every projective, in vertex order.
    pub fn hom_table(&self) -> Result<Vec<LaurentPoly>, ComplexError> {
        (1..=self.n).map(|k| self.hom_poincare(k)).collect()
    }

    /// Serializable form with deterministic summand ordering.
    pub fn json_form(&self) -> ComplexJson {
        let mut sorted = self.clone();
        sorted.canonical_sort();
        let summands = sorted
            .summands
            .iter()
            .map(|u| SummandJson { vertex: u.vertex, coh: u.coh, g1: u.g1, g3: u.g3 })
            .collect();
        let differential = sorted
            .diff
            .iter()
            .map(|(&(u, v), e)| EntryJson { from: u, to: v, element: e.notation() })
            .collect();
        ComplexJson { n: sorted.n, summands, differential }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.json_form()).expect("serializable")
    }
}

/// The component of the comultiplication-style map dual to right multiplication
/// by `p`, used by the inverse half twist.
fn coentry(n: usize, p: PathElem) -> AlgebraElement {
    let reversed = match p.kind {
        PathKind::Idempotent => PathElem::loop_at(p.vertex),
        PathKind::Loop => PathElem::idempotent(p.vertex),
        PathKind::ArrowUp | PathKind::ArrowDown => PathElem::arrow(n, p.target(n), p.vertex),
    };
    AlgebraElement::from_basis(n, reversed)
}

/// Diagonal entries of an integer matrix after row and column reduction; the
/// number of entries is the rank and any entry of magnitude above one witnesses
/// torsion in the cokernel.
fn diagonal_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero()
                    && best
                        .map_or(true, |(br, bc): (usize, usize)| {
                            a[r][c].abs() < a[br][bc].abs()
                        })
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap(t, br);
        for row in a.iter_mut() {
            row.swap(t, bc);
        }
        loop {
            let mut swapped = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = &a[r][t] / &a[t][t];
                if !q.is_zero() {
                    for c in t..cols {
                        let sub = &q * &a[t][c];
                        a[r][c] -= sub;
                    }
                }
                if !a[r][t].is_zero() {
                    a.swap(t, r);
                    swapped = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = &a[t][c] / &a[t][t];
                if !q.is_zero() {
                    for r in t..rows {
                        let sub = &q * &a[r][t];
                        a[r][c] -= sub;
                    }
                }
                if !a[t][c].is_zero() {
                    for r in t..rows {
                        let tmp = a[r][t].clone();
                        a[r][t] = a[r][c].clone();
                        a[r][c] = tmp;
                    }
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        out.push(a[t][t].clone());
        t += 1;
    }
    out
}

/// Outcome of running a braid word through the categorical action on every
/// projective module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identification {
    /// Every projective returns to itself with no shift.
    Identity,
    /// Every projective returns to itself shifted by the same central power.
    CentralPower { power: i64 },
    /// Some projective is genuinely moved; the certificate records which one and
    /// what it became.
    NonTrivial {
        witness: Vertex,
        summands: Vec<Summand>,
        hom_table: Vec<LaurentPoly>,
    },
}

/// Decide whether a braid word acts as the identity, as a power of the central
/// rotation, or nontrivially, with a certificate in the last case.
pub fn identify(word: &BraidWord) -> Result<Identification, ComplexError> {
    let n = word.n;
    let mut shifts = Vec::with_capacity(n);
    for i in 1..=n {
        let c = ProjComplex::projective(n, i).apply_word(word);
        let plain_shift = if c.summands.len() == 1 && c.diff.is_empty() {
            let s = c.summands[0];
            (s.vertex == i && s.coh == 0 && s.g1 == 0).then_some(s.g3)
        } else {
            None
        };
        match plain_shift {
            Some(g3) => shifts.push(g3),
            None => {
                return Ok(Identification::NonTrivial {
                    witness: i,
                    summands: c.summands.clone(),
                    hom_table: c.hom_table()?,
                });
            }
        }
    }
    if shifts.iter().any(|&g| g != shifts[0]) {
        let witness = (1..).zip(&shifts).find(|(_, &g)| g != shifts[0]).unwrap().0;
        let c = ProjComplex::projective(n, witness).apply_word(word);
        return Ok(Identification::NonTrivial {
            witness,
            summands: c.summands.clone(),
            hom_table: c.hom_table()?,
        });
    }
    if shifts[0] == 0 {
        Ok(Identification::Identity)
    } else {
        Ok(Identification::CentralPower { power: -shifts[0] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::random_word;
    use crate::linrep::{LinRep, RepTag};

    fn word(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    fn run(n: usize, w: &str, i: Vertex) -> ProjComplex {
        ProjComplex::projective(n, i).apply_word(&word(n, w))
    }

    fn keys(c: &ProjComplex) -> Vec<(i64, Vertex, i64, i64)> {
        c.summands().iter().map(|s| s.shift_key()).collect()
    }

    fn qpoly(text: &str) -> LaurentPoly {
        LaurentPoly::parse(&qvars(), text).unwrap()
    }

    #[test]
    fn twist_of_own_projective_is_a_shift() {
        for n in 3..=5 {
            for k in 1..=n {
                let c = run(n, &format!("s{k}"), k);
                assert_eq!(keys(&c), vec![(-1, k, 1, 0)], "n={n} k={k}");
                assert_eq!(c.summands()[0].par, 0);
                assert!(c.diff.is_empty());
                let c = run(n, &format!("s{k}^-1"), k);
                assert_eq!(keys(&c), vec![(1, k, -1, 0)], "n={n} k={k}");
                assert!(c.diff.is_empty());
            }
        }
    }

    #[test]
    fn twist_of_adjacent_projective_is_a_two_term_complex() {
        let n = 4;
        let c = run(n, "s2", 3);
        assert_eq!(keys(&c), vec![(-1, 2, 1, 0), (0, 3, 0, 0)]);
        assert_eq!(
            c.entry(0, 1),
            Some(&AlgebraElement::from_basis(n, PathElem::arrow_up(2)))
        );
        let c = run(n, "s2", 1);
        assert_eq!(keys(&c), vec![(-1, 2, 0, 0), (0, 1, 0, 0)]);
        assert_eq!(
            c.entry(0, 1),
            Some(&AlgebraElement::from_basis(n, PathElem::arrow_down(2)))
        );
        let c = run(n, "s2^-1", 3);
        assert_eq!(keys(&c), vec![(0, 3, 0, 0), (1, 2, 0, 0)]);
        assert_eq!(
            c.entry(0, 1),
            Some(&AlgebraElement::from_basis(n, PathElem::arrow_down(3)))
        );
    }

    #[test]
    fn wrap_around_twist_carries_the_winding_grade() {
        let n = 4;
        let c = run(n, "s4", 1);
        assert_eq!(keys(&c), vec![(-1, 4, 1, 1), (0, 1, 0, 0)]);
        assert_eq!(
            c.entry(0, 1),
            Some(&AlgebraElement::from_basis(n, PathElem::arrow_up(4)))
        );
        let c = run(n, "s1^-1", 4);
        assert_eq!(keys(&c), vec![(0, 4, 0, 0), (1, 1, -1, -1)]);
        assert_eq!(
            c.entry(0, 1),
            Some(&AlgebraElement::from_basis(n, PathElem::arrow_up(4)))
        );
    }

    #[test]
    fn rotation_relabels_and_winds() {
        let n = 4;
        for i in 1..n {
            let c = run(n, "r", i);
            assert_eq!(keys(&c), vec![(0, i + 1, 0, 0)]);
        }
        let c = run(n, "r", n);
        assert_eq!(keys(&c), vec![(0, 1, 0, -1)]);
        let c = run(n, "r^-1", 1);
        assert_eq!(keys(&c), vec![(0, n, 0, 1)]);
        let full = "r r r r";
        for i in 1..=n {
            let c = run(n, full, i);
            assert_eq!(keys(&c), vec![(0, i, 0, -1)], "i={i}");
        }
    }

    #[test]
    fn inverse_generators_cancel_on_every_projective() {
        for n in 3..=5 {
            let mut gens = vec!["r".to_string(), "r^-1".to_string()];
            for i in 1..=n {
                gens.push(format!("s{i}"));
                gens.push(format!("s{i}^-1"));
            }
            for g in &gens {
                let w = word(n, g);
                let round = w.concat(&w.inverse());
                for i in 1..=n {
                    let c = ProjComplex::projective(n, i).apply_word(&round);
                    assert_eq!(keys(&c), vec![(0, i, 0, 0)], "n={n} g={g} i={i}");
                    assert!(c.diff.is_empty());
                }
            }
        }
    }

    #[test]
    fn double_inverse_twist_leaves_a_loop_differential() {
        let n = 5;
        let k = 3;
        let c = run(n, &format!("s{k}^-1 s{k}^-1"), k + 1);
        assert_eq!(keys(&c), vec![(0, k + 1, 0, 0), (1, k, 0, 0), (2, k, -1, 0)]);
        assert_eq!(
            c.entry(0, 1),
            Some(&AlgebraElement::from_basis(n, PathElem::arrow_down(k + 1)))
        );
        assert_eq!(
            c.entry(1, 2),
            Some(&AlgebraElement::from_basis(n, PathElem::loop_at(k)))
        );
        assert_eq!(c.summands()[1].par, 1);
        assert_eq!(c.summands()[2].par, 1);
    }

    #[test]
    fn validation_runs_after_every_generator() {
        let n = 4;
        let mut c = ProjComplex::projective(n, 2);
        for g in word(n, "s4 r^-1 s2^-1 s1 r s3").letters.iter().rev() {
            c = c.apply_generator(*g);
            c.validate().unwrap();
            c = c.minimize();
            c.validate().unwrap();
        }
    }

    #[test]
    fn k_classes_match_the_decategorified_representation() {
        for n in 3..=5 {
            let rep = LinRep::new(RepTag::AKS, n).unwrap();
            let mut words = vec![
                "r".to_string(),
                "r^-1".to_string(),
                format!("s{n}"),
                format!("s{n}^-1"),
            ];
            for i in 1..n {
                words.push(format!("s{i}"));
                words.push(format!("s{i}^-1"));
            }
            for seed in 0..10 {
                words.push(random_word(n, seed, 5).to_string());
            }
            for w in &words {
                let bw = word(n, w);
                let m = rep.word_matrix(&bw).unwrap();
                for i in 1..=n {
                    let classes = ProjComplex::projective(n, i).apply_word(&bw).k_class();
                    for v in 1..=n {
                        assert_eq!(
                            &classes[v - 1],
                            m.get(v - 1, i - 1),
                            "n={n} w={w} column={i} row={v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hom_anchors() {
        let n = 5;
        for k in 1..=n {
            let c = ProjComplex::projective(n, k);
            assert_eq!(c.hom_poincare(k).unwrap(), qpoly("1 + q2"));
            let next = k % n + 1;
            assert_eq!(
                ProjComplex::projective(n, k).hom_poincare(next).unwrap(),
                if k == n { qpoly("q3^-1") } else { qpoly("1") },
                "k={k}"
            );
            let prev = if k == 1 { n } else { k - 1 };
            assert_eq!(
                ProjComplex::projective(n, k).hom_poincare(prev).unwrap(),
                if k == 1 { qpoly("q2*q3") } else { qpoly("q2") },
                "k={k}"
            );
        }
    }

    #[test]
    fn hom_values_on_twisted_projectives() {
        let n = 5;
        let k = 3;
        let hom = |w: String, i: usize| run(n, &w, i).hom_poincare(k).unwrap();
        assert_eq!(hom(format!("s{}", k - 1), k), qpoly("1"));
        assert_eq!(hom(format!("s{}^-1", k - 1), k), qpoly("q2"));
        assert_eq!(hom(format!("s{}", k + 1), k + 2), qpoly("q1^-1*q2^2"));
        assert_eq!(hom(format!("s{} s{}", k + 1, k), k), qpoly("q1^-1*q2"));
        assert_eq!(
            hom(format!("s{} s{}", k + 1, k + 1), k),
            qpoly("1 + q1^-2*q2^2")
        );
        assert_eq!(hom(format!("s{} s{}", k + 1, k), k - 1), LaurentPoly::zero(&qvars()));
        assert_eq!(
            hom(format!("s{} s{}^-1", k + 1, k), k - 1),
            qpoly("1 + q1*q2^-1")
        );
        assert_eq!(
            hom(format!("s{} s{} s{}^-1", k, k + 1, k), k - 1),
            qpoly("1 + q1^-1*q2")
        );
        assert_eq!(
            hom(format!("s{} s{}", k - 1, k - 1), k - 2),
            qpoly("q1^-2*q2 + q1^-1")
        );
        assert_eq!(
            hom(format!("s{} s{} s{}", k, k - 1, k - 1), k - 2),
            qpoly("q1^-3*q2^2 + q1^-2*q2")
        );
        assert_eq!(
            hom(format!("s{} s{}", k + 1, k + 1), k + 2),
            qpoly("q1^-2*q2^3 + q1^-1*q2^2")
        );
        assert_eq!(
            hom(format!("s{} s{} s{}", k, k + 1, k + 1), k + 2),
            qpoly("q1^-2*q2^3 + q1^-3*q2^4")
        );
    }

    #[test]
    fn categorified_braid_relations_up_to_isomorphism() {
        for n in 3..=4 {
            for i in 1..=n {
                let j = i % n + 1;
                let a = format!("s{i} s{j} s{i}");
                let b = format!("s{j} s{i} s{j}");
                for start in 1..=n {
                    let ca = run(n, &a, start);
                    let cb = run(n, &b, start);
                    assert_eq!(
                        ca.summand_multiset(),
                        cb.summand_multiset(),
                        "n={n} ({i},{j}) start={start}"
                    );
                    assert_eq!(
                        ca.hom_table().unwrap(),
                        cb.hom_table().unwrap(),
                        "n={n} ({i},{j}) start={start}"
                    );
                }
            }
        }
    }

    #[test]
    fn rotation_conjugates_twists() {
        let n = 4;
        for i in 1..=n {
            let j = i % n + 1;
            let a = format!("r s{i} r^-1");
            for start in 1..=n {
                let ca = run(n, &a, start);
                let cb = run(n, &format!("s{j}"), start);
                assert_eq!(ca.summand_multiset(), cb.summand_multiset(), "i={i} start={start}");
                assert_eq!(ca.hom_table().unwrap(), cb.hom_table().unwrap());
                assert_eq!(ca, cb, "conjugated twist complexes agree on the nose");
            }
        }
    }

    #[test]
    fn identify_distinguishes_identity_center_and_the_rest() {
        let n = 4;
        assert_eq!(identify(&word(n, "")).unwrap(), Identification::Identity);
        assert_eq!(
            identify(&word(n, "s2 s2^-1 r r^-1")).unwrap(),
            Identification::Identity
        );
        assert_eq!(
            identify(&word(n, "s1 s2 s1 s2^-1 s1^-1 s2^-1")).unwrap(),
            Identification::Identity
        );
        assert_eq!(
            identify(&word(n, "r r r r")).unwrap(),
            Identification::CentralPower { power: 1 }
        );
        assert_eq!(
            identify(&word(n, "r^-1 r^-1 r^-1 r^-1 r^-1 r^-1 r^-1 r^-1")).unwrap(),
            Identification::CentralPower { power: -2 }
        );
        match identify(&word(n, "s1 s2^-1")).unwrap() {
            Identification::NonTrivial { witness, .. } => assert_eq!(witness, 1),
            other => panic!("expected nontrivial, got {other:?}"),
        }
        match identify(&word(n, "s1 s1")).unwrap() {
            Identification::NonTrivial { witness, summands, .. } => {
                assert_eq!(witness, 1);
                assert_eq!(
                    summands.iter().map(|s| s.shift_key()).collect::<Vec<_>>(),
                    vec![(-2, 1, 2, 0)]
                );
            }
            other => panic!("expected nontrivial, got {other:?}"),
        }
    }

    #[test]
    fn random_words_cancel_with_their_inverses() {
        for n in 3..=4 {
            for seed in 0..12 {
                let w = random_word(n, seed, 5);
                let round = w.concat(&w.inverse());
                for i in 1..=n {
                    let c = ProjComplex::projective(n, i).apply_word(&round);
                    assert_eq!(keys(&c), vec![(0, i, 0, 0)], "n={n} seed={seed} i={i}");
                    assert!(c.diff.is_empty());
                }
            }
        }
    }

    #[test]
    fn json_form_is_deterministic_and_complete() {
        let n = 4;
        let c = run(n, "s2", 3);
        let text = c.to_json_string();
        assert_eq!(
            text,
            "{\"n\":4,\"summands\":[{\"vertex\":2,\"coh\":-1,\"g1\":1,\"g3\":0},\
             {\"vertex\":3,\"coh\":0,\"g1\":0,\"g3\":0}],\
             \"differential\":[{\"from\":0,\"to\":1,\"element\":\"(2|3)\"}]}"
        );
    }

    #[test]
    fn smith_reduction_reports_rank_and_torsion() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(4), BigInt::from(16)],
        ];
        let f = diagonal_factors(m);
        assert_eq!(f.len(), 3);
        let product: BigInt = f.iter().product();
        assert_eq!(product.abs(), BigInt::from(624));
        let id = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(7), BigInt::from(1)],
        ];
        let f = diagonal_factors(id);
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| x.abs() == BigInt::from(1)));
    }
}
