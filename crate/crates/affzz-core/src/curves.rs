//! Normal forms of admissible trigraded curves on the punctured disk, the
//! half-twist and rotation actions on them, and their intersection numbers
//! with the basic curves.
//!
//! A curve is stored as the alternating sequence of sector segments and
//! barrier crossings met while walking from one endpoint puncture to the
//! other.  Each crossing carries the local index of a fixed lift to the
//! Z^3-covering, so the encoding determines the curve together with its
//! trigrading, and every valid encoding is automatically in normal form.
//! A half twist along the k-th barrier cuts the curve into strings inside
//! the double sector around that barrier, moves each string one step along
//! its family ladder, and regrows the affected stretch from the wall
//! crossings, which the twist leaves untouched.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{next_vertex, prev_vertex, AlgebraElement, PathElem};
use crate::braid::{BraidGen, BraidWord};
use crate::complexes::{ComplexError, ProjComplex, Summand};
use crate::laurent::{qvars, LaurentPoly};

/// Local index of a crossing lifted to the Z^3-covering.
pub type LocalIndex = [i64; 3];

const RISE: LocalIndex = [-1, 1, 0];
const FALL: LocalIndex = [1, -1, 0];

fn mu_add(a: LocalIndex, b: LocalIndex) -> LocalIndex {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mu_sub(a: LocalIndex, b: LocalIndex) -> LocalIndex {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Index jump across a segment of the given kind when it is traversed from
/// the west wall of its sector to the east wall.
fn forward_delta(n: usize, sector: usize, kind: SegmentKind) -> LocalIndex {
    let mut d = match kind {
        SegmentKind::CrossOuter => FALL,
        SegmentKind::CrossInner => [-1, 0, 0],
        _ => [0, 0, 0],
    };
    if sector == 1 {
        d = mu_add(d, [-(n as i64), n as i64, 1]);
    }
    d
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("need at least 3 strands, got {0}")]
    TooFewStrands(usize),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("segments and crossings must alternate, with terminal segments exactly at the two ends")]
    BadShape,
    #[error("crossing {index} on barrier {barrier} cannot separate sectors {left} and {right}")]
    CrossingMismatch {
        index: usize,
        barrier: usize,
        left: usize,
        right: usize,
    },
    #[error("segment {index} jumps by {found:?}, which its shape does not allow")]
    BadIndexJump { index: usize, found: LocalIndex },
    #[error("component through sectors {a} and {b} starting at segment {start} fits no string family")]
    Unclassifiable { a: usize, b: usize, start: usize },
    #[error("regrown string meets its far wall anchor at {found:?}, expected {expected:?}")]
    AnchorMismatch {
        expected: LocalIndex,
        found: LocalIndex,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Shape of one visit of the curve to a sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SegmentKind {
    /// Ends at the puncture of the sector.
    Terminal,
    /// Crosses the sector on the side of the puncture facing the center.
    CrossInner,
    /// Crosses the sector on the side of the puncture facing the boundary.
    CrossOuter,
    /// Enters and leaves through the same barrier.
    Uturn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub sector: usize,
    pub kind: SegmentKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub barrier: usize,
    pub mu: LocalIndex,
}

/// Families of strings cut out of a curve by a double sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    I,
    II,
    IIPrime,
    III,
    IIIPrime,
    IV,
    IVPrime,
    V,
    VPrime,
    VI,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::IIPrime => "II'",
            Family::III => "III",
            Family::IIIPrime => "III'",
            Family::IV => "IV",
            Family::IVPrime => "IV'",
            Family::V => "V",
            Family::VPrime => "V'",
            Family::VI => "VI",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One string of the decomposition of a curve along the k-th double sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KString {
    pub k: usize,
    pub family: Family,
    pub u: i64,
    pub base: LocalIndex,
}

/// A geometric intersection number, which can be a half-integer when one of
/// the endpoints lies on a shared puncture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfInteger {
    pub twice: i64,
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SegmentJson {
    pub sector: usize,
    #[serde(rename = "type")]
    pub shape: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub puncture: Option<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CrossingJson {
    pub barrier: usize,
    pub mu: LocalIndex,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CurveJson {
    pub n: usize,
    pub segments: Vec<SegmentJson>,
    pub crossings: Vec<CrossingJson>,
}

struct Run {
    first: usize,
    last: usize,
    family: Family,
    u: i64,
    base: LocalIndex,
    build_mu: LocalIndex,
    far_mu: Option<LocalIndex>,
    reversed: bool,
}

/// An admissible curve between two punctures, in normal form, together with
/// a lift of its crossings to the Z^3-covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigradedCurve {
    n: usize,
    segments: Vec<Segment>,
    crossings: Vec<Crossing>,
}

impl TrigradedCurve {
    /// The basic curve joining punctures k and k+1 across the k-th barrier,
    /// with the reference lift.
    pub fn basic_curve(n: usize, k: usize) -> Result<Self, CurveError> {
        if n < 3 {
            return Err(CurveError::TooFewStrands(n));
        }
        if k < 1 || k > n {
            return Err(CurveError::IndexOutOfRange(k, n));
        }
        Ok(TrigradedCurve {
            n,
            segments: vec![
                Segment { sector: k, kind: SegmentKind::Terminal },
                Segment { sector: next_vertex(n, k), kind: SegmentKind::Terminal },
            ],
            crossings: vec![Crossing { barrier: k, mu: [0, 0, 0] }],
        })
    }

    pub fn from_parts(
        n: usize,
        segments: Vec<Segment>,
        crossings: Vec<Crossing>,
    ) -> Result<Self, CurveError> {
        let curve = TrigradedCurve { n, segments, crossings };
        curve.validate()?;
        Ok(curve)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// The punctures at the two ends.
    pub fn endpoints(&self) -> (usize, usize) {
        (
            self.segments.first().map_or(0, |s| s.sector),
            self.segments.last().map_or(0, |s| s.sector),
        )
    }

    pub fn validate(&self) -> Result<(), CurveError> {
        let n = self.n;
        if n < 3 {
            return Err(CurveError::TooFewStrands(n));
        }
        if self.segments.len() < 2 || self.segments.len() != self.crossings.len() + 1 {
            return Err(CurveError::BadShape);
        }
        for seg in &self.segments {
            if seg.sector < 1 || seg.sector > n {
                return Err(CurveError::IndexOutOfRange(seg.sector, n));
            }
        }
        for x in &self.crossings {
            if x.barrier < 1 || x.barrier > n {
                return Err(CurveError::IndexOutOfRange(x.barrier, n));
            }
        }
        let top = self.segments.len() - 1;
        for (idx, seg) in self.segments.iter().enumerate() {
            let terminal = seg.kind == SegmentKind::Terminal;
            if terminal != (idx == 0 || idx == top) {
                return Err(CurveError::BadShape);
            }
        }
        for (idx, x) in self.crossings.iter().enumerate() {
            let left = self.segments[idx].sector;
            let right = self.segments[idx + 1].sector;
            let lo = x.barrier;
            let hi = next_vertex(n, x.barrier);
            if !((left == lo && right == hi) || (left == hi && right == lo)) {
                return Err(CurveError::CrossingMismatch {
                    index: idx,
                    barrier: x.barrier,
                    left,
                    right,
                });
            }
        }
        for idx in 1..top {
            let seg = self.segments[idx];
            let before = &self.crossings[idx - 1];
            let after = &self.crossings[idx];
            let jump = mu_sub(after.mu, before.mu);
            let bad = CurveError::BadIndexJump { index: idx, found: jump };
            match seg.kind {
                SegmentKind::Uturn => {
                    if before.barrier != after.barrier || (jump != RISE && jump != FALL) {
                        return Err(bad);
                    }
                }
                SegmentKind::CrossInner | SegmentKind::CrossOuter => {
                    if before.barrier == after.barrier {
                        return Err(bad);
                    }
                    let fwd = before.barrier == prev_vertex(n, seg.sector);
                    let step = forward_delta(n, seg.sector, seg.kind);
                    let expected = if fwd { step } else { mu_sub([0, 0, 0], step) };
                    if jump != expected {
                        return Err(bad);
                    }
                }
                SegmentKind::Terminal => return Err(CurveError::BadShape),
            }
        }
        Ok(())
    }

    /// The same curve read from the other endpoint, whichever of the two
    /// readings compares smaller.
    pub fn canonical_form(&self) -> Self {
        let mut rev = self.clone();
        rev.segments.reverse();
        rev.crossings.reverse();
        if (&rev.segments, &rev.crossings) < (&self.segments, &self.crossings) {
            rev
        } else {
            self.clone()
        }
    }

    /// Act by the deck transformation indexed by `r`.
    pub fn chi_shift(&self, r: LocalIndex) -> Self {
        let mut out = self.clone();
        for x in &mut out.crossings {
            x.mu = mu_add(x.mu, r);
        }
        out
    }

    pub fn twist(&self, g: BraidGen) -> Result<Self, CurveError> {
        match g {
            BraidGen::Sigma(k) => self.half_twist(k, true),
            BraidGen::SigmaInv(k) => self.half_twist(k, false),
            BraidGen::Rho => self.rotate(true),
            BraidGen::RhoInv => self.rotate(false),
        }
    }

    /// Apply a braid word, rightmost letter first.
    pub fn twist_word(&self, word: &BraidWord) -> Result<Self, CurveError> {
        assert_eq!(word.n, self.n, "strand count mismatch");
        let mut c = self.clone();
        for g in word.letters.iter().rev() {
            c = c.twist(*g)?;
        }
        Ok(c)
    }

    fn rotate(&self, positive: bool) -> Result<Self, CurveError> {
        self.validate()?;
        let n = self.n;
        let nn = n as i64;
        let mut out = self.clone();
        for s in &mut out.segments {
            s.sector = if positive { next_vertex(n, s.sector) } else { prev_vertex(n, s.sector) };
        }
        for x in &mut out.crossings {
            if positive {
                if x.barrier == n {
                    x.mu = mu_add(x.mu, [-nn, nn, 1]);
                }
                x.barrier = next_vertex(n, x.barrier);
            } else {
                if x.barrier == 1 {
                    x.mu = mu_add(x.mu, [nn, -nn, -1]);
                }
                x.barrier = prev_vertex(n, x.barrier);
            }
        }
        out.validate()?;
        Ok(out)
    }

    fn half_twist(&self, k: usize, positive: bool) -> Result<Self, CurveError> {
        let runs = self.runs(k)?;
        if runs.is_empty() {
            return Ok(self.clone());
        }
        let du = if positive { 1 } else { -1 };
        let mut segs: Vec<Segment> = Vec::new();
        let mut xs: Vec<Crossing> = Vec::new();
        let mut pos = 0usize;
        for run in &runs {
            while pos < run.first {
                segs.push(self.segments[pos]);
                xs.push(self.crossings[pos]);
                pos += 1;
            }
            match run.family {
                Family::IV | Family::IVPrime | Family::V | Family::VPrime => {
                    for t in run.first..=run.last {
                        segs.push(self.segments[t]);
                        if t < run.last {
                            xs.push(self.crossings[t]);
                        }
                    }
                }
                Family::VI => {
                    segs.push(self.segments[run.first]);
                    let mut x = self.crossings[run.first];
                    x.mu = mu_add(x.mu, if positive { RISE } else { FALL });
                    xs.push(x);
                    segs.push(self.segments[run.last]);
                }
                _ => {
                    let (mut rsegs, mut rxs, end) =
                        expand_string(self.n, k, run.family, run.u + du, run.build_mu);
                    if let Some(found) = end {
                        let expected = run
                            .far_mu
                            .expect("ladder families with an end check have two wall anchors");
                        if found != expected {
                            return Err(CurveError::AnchorMismatch { expected, found });
                        }
                    }
                    if run.reversed {
                        rsegs.reverse();
                        rxs.reverse();
                    }
                    segs.extend(rsegs);
                    xs.extend(rxs);
                }
            }
            if run.last < self.crossings.len() {
                xs.push(self.crossings[run.last]);
            }
            pos = run.last + 1;
        }
        while pos < self.segments.len() {
            segs.push(self.segments[pos]);
            if pos < self.crossings.len() {
                xs.push(self.crossings[pos]);
            }
            pos += 1;
        }
        let out = TrigradedCurve { n: self.n, segments: segs, crossings: xs };
        out.validate()?;
        Ok(out)
    }

    fn runs(&self, k: usize) -> Result<Vec<Run>, CurveError> {
        if k < 1 || k > self.n {
            return Err(CurveError::IndexOutOfRange(k, self.n));
        }
        self.validate()?;
        let a = k;
        let b = next_vertex(self.n, k);
        let inside = |s: usize| s == a || s == b;
        let mut out = Vec::new();
        let mut idx = 0;
        while idx < self.segments.len() {
            if !inside(self.segments[idx].sector) {
                idx += 1;
                continue;
            }
            let first = idx;
            while idx + 1 < self.segments.len() && inside(self.segments[idx + 1].sector) {
                idx += 1;
            }
            out.push(self.classify_run(k, first, idx)?);
            idx += 1;
        }
        Ok(out)
    }

    fn classify_run(&self, k: usize, first: usize, last: usize) -> Result<Run, CurveError> {
        use SegmentKind as SK;

        #[derive(Clone, Copy)]
        enum End {
            Punct,
            West(LocalIndex),
            East(LocalIndex),
        }

        let n = self.n;
        let a = k;
        let b = next_vertex(n, k);
        let west = prev_vertex(n, k);
        let unclass = CurveError::Unclassifiable { a, b, start: first };
        let m = last - first;
        let end_of = |cross_idx: Option<usize>| -> Result<End, CurveError> {
            match cross_idx {
                None => Ok(End::Punct),
                Some(t) => {
                    let x = &self.crossings[t];
                    if x.barrier == west {
                        Ok(End::West(x.mu))
                    } else if x.barrier == b {
                        Ok(End::East(x.mu))
                    } else {
                        Err(unclass.clone())
                    }
                }
            }
        };
        let start = end_of(if first == 0 { None } else { Some(first - 1) })?;
        let end = end_of(if last + 1 == self.segments.len() { None } else { Some(last) })?;
        let kind = |i: usize| self.segments[i].kind;
        let ladder = |mu_s: LocalIndex, mu_e: LocalIndex| -> Result<(LocalIndex, LocalIndex, bool), CurveError> {
            let d = mu_sub(mu_e, mu_s);
            if d == RISE {
                Ok((mu_s, mu_e, false))
            } else if d == FALL {
                Ok((mu_e, mu_s, true))
            } else {
                Err(unclass.clone())
            }
        };
        let mi = m as i64;
        let run = match (start, end) {
            (End::West(w), End::East(e)) | (End::East(e), End::West(w)) => {
                let rev = matches!(start, End::East(_));
                let (wi, ei) = if rev { (last, first) } else { (first, last) };
                if m % 2 == 0 {
                    return Err(unclass);
                }
                let (family, u) = match (kind(wi), kind(ei)) {
                    (SK::CrossInner, SK::CrossOuter) => (Family::I, (mi + 1) / 2),
                    (SK::CrossOuter, SK::CrossInner) => (Family::I, (1 - mi) / 2),
                    (SK::CrossOuter, SK::CrossOuter) if m == 1 => (Family::IV, 0),
                    (SK::CrossInner, SK::CrossInner) if m == 1 => (Family::IVPrime, 0),
                    _ => return Err(unclass),
                };
                Run {
                    first,
                    last,
                    family,
                    u,
                    base: w,
                    build_mu: w,
                    far_mu: Some(e),
                    reversed: rev,
                }
            }
            (End::West(mu_s), End::West(mu_e)) => {
                if m == 0 {
                    if kind(first) != SK::Uturn {
                        return Err(unclass);
                    }
                    let (h, l, rev) = ladder(mu_s, mu_e)?;
                    Run {
                        first,
                        last,
                        family: Family::II,
                        u: 0,
                        base: l,
                        build_mu: h,
                        far_mu: Some(l),
                        reversed: rev,
                    }
                } else {
                    let (family, u) = match (kind(first), kind(last)) {
                        (SK::CrossInner, SK::CrossInner) if m % 2 == 0 => (Family::II, mi / 2),
                        (SK::CrossOuter, SK::CrossOuter) if m % 2 == 0 => (Family::II, -mi / 2),
                        (SK::CrossInner, SK::CrossOuter) | (SK::CrossOuter, SK::CrossInner)
                            if m == 2 =>
                        {
                            (Family::V, 0)
                        }
                        _ => return Err(unclass),
                    };
                    if family == Family::V {
                        Run {
                            first,
                            last,
                            family,
                            u,
                            base: mu_s,
                            build_mu: mu_s,
                            far_mu: None,
                            reversed: false,
                        }
                    } else {
                        let (h, l, rev) = ladder(mu_s, mu_e)?;
                        Run {
                            first,
                            last,
                            family,
                            u,
                            base: l,
                            build_mu: h,
                            far_mu: Some(l),
                            reversed: rev,
                        }
                    }
                }
            }
            (End::East(mu_s), End::East(mu_e)) => {
                if m == 0 {
                    if kind(first) != SK::Uturn {
                        return Err(unclass);
                    }
                    let (h, l, rev) = ladder(mu_s, mu_e)?;
                    Run {
                        first,
                        last,
                        family: Family::IIPrime,
                        u: 0,
                        base: l,
                        build_mu: h,
                        far_mu: Some(l),
                        reversed: rev,
                    }
                } else {
                    let (family, u) = match (kind(first), kind(last)) {
                        (SK::CrossOuter, SK::CrossOuter) if m % 2 == 0 => (Family::IIPrime, mi / 2),
                        (SK::CrossInner, SK::CrossInner) if m % 2 == 0 => (Family::IIPrime, -mi / 2),
                        (SK::CrossInner, SK::CrossOuter) | (SK::CrossOuter, SK::CrossInner)
                            if m == 2 =>
                        {
                            (Family::VPrime, 0)
                        }
                        _ => return Err(unclass),
                    };
                    if family == Family::VPrime {
                        Run {
                            first,
                            last,
                            family,
                            u,
                            base: mu_s,
                            build_mu: mu_s,
                            far_mu: None,
                            reversed: false,
                        }
                    } else {
                        let (h, l, rev) = ladder(mu_s, mu_e)?;
                        Run {
                            first,
                            last,
                            family,
                            u,
                            base: l,
                            build_mu: h,
                            far_mu: Some(l),
                            reversed: rev,
                        }
                    }
                }
            }
            (End::West(w), End::Punct) | (End::Punct, End::West(w)) => {
                let rev = matches!(start, End::Punct);
                let wi = if rev { last } else { first };
                let (family, u) = if m == 0 {
                    if kind(first) != SK::Terminal {
                        return Err(unclass);
                    }
                    (Family::III, 0)
                } else {
                    match kind(wi) {
                        SK::CrossInner => (Family::III, mi),
                        SK::CrossOuter => (Family::III, -mi),
                        _ => return Err(unclass),
                    }
                };
                Run {
                    first,
                    last,
                    family,
                    u,
                    base: w,
                    build_mu: w,
                    far_mu: None,
                    reversed: rev,
                }
            }
            (End::East(e), End::Punct) | (End::Punct, End::East(e)) => {
                let rev = matches!(start, End::Punct);
                let ei = if rev { last } else { first };
                let (family, u) = if m == 0 {
                    if kind(first) != SK::Terminal {
                        return Err(unclass);
                    }
                    (Family::IIIPrime, 0)
                } else {
                    match kind(ei) {
                        SK::CrossOuter => (Family::IIIPrime, mi),
                        SK::CrossInner => (Family::IIIPrime, -mi),
                        _ => return Err(unclass),
                    }
                };
                Run {
                    first,
                    last,
                    family,
                    u,
                    base: e,
                    build_mu: e,
                    far_mu: None,
                    reversed: rev,
                }
            }
            (End::Punct, End::Punct) => {
                if m != 1 {
                    return Err(unclass);
                }
                let mu = self.crossings[first].mu;
                Run {
                    first,
                    last,
                    family: Family::VI,
                    u: 0,
                    base: mu,
                    build_mu: mu,
                    far_mu: None,
                    reversed: false,
                }
            }
        };
        Ok(run)
    }

    /// Decompose the curve along the k-th double sector.
    pub fn k_strings(&self, k: usize) -> Result<Vec<KString>, CurveError> {
        Ok(self
            .runs(k)?
            .into_iter()
            .map(|r| KString { k, family: r.family, u: r.u, base: r.base })
            .collect())
    }

    pub fn geometric_intersection_with_basic(&self, k: usize) -> Result<HalfInteger, CurveError> {
        let mut twice = 0;
        for s in self.k_strings(k)? {
            twice += match s.family {
                Family::I | Family::II | Family::IIPrime | Family::VI => 2,
                Family::III | Family::IIIPrime => 1,
                Family::IV | Family::IVPrime | Family::V | Family::VPrime => 0,
            };
        }
        Ok(HalfInteger { twice })
    }

    pub fn trigraded_intersection_with_basic(&self, k: usize) -> Result<LaurentPoly, CurveError> {
        let q = qvars();
        let nn = self.n as i64;
        let mut total = LaurentPoly::zero(&q);
        for s in self.k_strings(k)? {
            let row = family_row(self.n, k, s.family);
            if row.is_zero() {
                continue;
            }
            let factor = LaurentPoly::monomial(
                &q,
                1,
                vec![
                    s.base[0] + nn * s.base[2] - s.u,
                    s.base[1] - nn * s.base[2] + s.u,
                    -s.base[2],
                ],
            );
            let term = row.mul(&factor).expect("same variable set");
            total = total.add(&term).expect("same variable set");
        }
        Ok(total)
    }

    /// The complex of projective modules attached to the curve, with one
    /// summand per crossing and one differential entry per inner segment.
    pub fn complex(&self) -> Result<ProjComplex, CurveError> {
        self.validate()?;
        let n = self.n;
        let nn = n as i64;
        let coh = |x: &Crossing| x.mu[0] + nn * x.mu[2];
        let summands: Vec<Summand> = self
            .crossings
            .iter()
            .map(|x| {
                Summand::with_parity(
                    x.barrier,
                    coh(x),
                    x.mu[1] - nn * x.mu[2],
                    -x.mu[2],
                    x.mu[1].rem_euclid(2) as u8,
                )
            })
            .collect();
        let mut entries = Vec::new();
        for idx in 1..self.segments.len() - 1 {
            let (lo, hi) = (idx - 1, idx);
            let (from, to) = if coh(&self.crossings[lo]) + 1 == coh(&self.crossings[hi]) {
                (lo, hi)
            } else {
                (hi, lo)
            };
            let src = self.crossings[from].barrier;
            let dst = self.crossings[to].barrier;
            let elem = if src == dst {
                PathElem::loop_at(src)
            } else {
                PathElem::arrow(n, src, dst)
            };
            entries.push((from, to, AlgebraElement::from_basis(n, elem)));
        }
        Ok(ProjComplex::from_parts(n, summands, entries)?)
    }

    pub fn json_form(&self) -> CurveJson {
        let segments = self
            .segments
            .iter()
            .enumerate()
            .map(|(idx, seg)| {
                let shape = self.six_type_tag(idx).to_string();
                let puncture = if seg.kind == SegmentKind::Terminal {
                    Some(seg.sector)
                } else {
                    None
                };
                SegmentJson { sector: seg.sector, shape, puncture }
            })
            .collect();
        let crossings = self
            .crossings
            .iter()
            .map(|x| CrossingJson { barrier: x.barrier, mu: x.mu })
            .collect();
        CurveJson { n: self.n, segments, crossings }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.json_form()).expect("curve serialization cannot fail")
    }

    fn six_type_tag(&self, idx: usize) -> &'static str {
        let seg = self.segments[idx];
        match seg.kind {
            SegmentKind::CrossOuter => "1",
            SegmentKind::CrossInner => "1'",
            SegmentKind::Uturn => {
                if self.crossings[idx - 1].barrier == prev_vertex(self.n, seg.sector) {
                    "2"
                } else {
                    "2'"
                }
            }
            SegmentKind::Terminal => {
                let flank = if idx == 0 { self.crossings[0].barrier } else { self.crossings[idx - 1].barrier };
                if flank == seg.sector {
                    "3"
                } else {
                    "3'"
                }
            }
        }
    }
}

/// Rebuild the inner part of a string with winding number `u`, starting from
/// the wall anchor on the canonical side of its family.
fn expand_string(
    n: usize,
    k: usize,
    family: Family,
    u: i64,
    start_mu: LocalIndex,
) -> (Vec<Segment>, Vec<Crossing>, Option<LocalIndex>) {
    use SegmentKind as SK;

    let a = k;
    let b = next_vertex(n, k);
    let seg = |sector: usize, kind: SK| Segment { sector, kind };
    let au = u.unsigned_abs() as usize;
    let u_sector = |i: usize, even: usize, odd: usize| if i % 2 == 0 { even } else { odd };
    let mut segs: Vec<Segment> = Vec::new();
    let mut xs: Vec<Crossing> = Vec::new();
    let mut deltas: Vec<LocalIndex> = Vec::new();
    match family {
        Family::I => {
            let (kw, ke) = if u >= 1 {
                deltas.extend(std::iter::repeat(RISE).take(au - 1));
                deltas.extend(std::iter::repeat(FALL).take(au - 1));
                (SK::CrossInner, SK::CrossOuter)
            } else {
                deltas.extend(std::iter::repeat(FALL).take(au));
                deltas.extend(std::iter::repeat(RISE).take(au));
                (SK::CrossOuter, SK::CrossInner)
            };
            segs.push(seg(a, kw));
            let mut mu = mu_add(start_mu, forward_delta(n, a, kw));
            xs.push(Crossing { barrier: k, mu });
            for (i, d) in deltas.iter().enumerate() {
                segs.push(seg(u_sector(i, b, a), SK::Uturn));
                mu = mu_add(mu, *d);
                xs.push(Crossing { barrier: k, mu });
            }
            segs.push(seg(b, ke));
            (segs, xs, Some(mu_add(mu, forward_delta(n, b, ke))))
        }
        Family::II => {
            if u == 0 {
                segs.push(seg(a, SK::Uturn));
                return (segs, xs, Some(mu_add(start_mu, RISE)));
            }
            let kind = if u >= 1 {
                deltas.extend(std::iter::repeat(RISE).take(au));
                deltas.extend(std::iter::repeat(FALL).take(au - 1));
                SK::CrossInner
            } else {
                deltas.extend(std::iter::repeat(FALL).take(au - 1));
                deltas.extend(std::iter::repeat(RISE).take(au));
                SK::CrossOuter
            };
            segs.push(seg(a, kind));
            let mut mu = mu_add(start_mu, forward_delta(n, a, kind));
            xs.push(Crossing { barrier: k, mu });
            for (i, d) in deltas.iter().enumerate() {
                segs.push(seg(u_sector(i, b, a), SK::Uturn));
                mu = mu_add(mu, *d);
                xs.push(Crossing { barrier: k, mu });
            }
            segs.push(seg(a, kind));
            (segs, xs, Some(mu_sub(mu, forward_delta(n, a, kind))))
        }
        Family::IIPrime => {
            if u == 0 {
                segs.push(seg(b, SK::Uturn));
                return (segs, xs, Some(mu_add(start_mu, RISE)));
            }
            let kind = if u >= 1 {
                deltas.extend(std::iter::repeat(RISE).take(au));
                deltas.extend(std::iter::repeat(FALL).take(au - 1));
                SK::CrossOuter
            } else {
                deltas.extend(std::iter::repeat(FALL).take(au - 1));
                deltas.extend(std::iter::repeat(RISE).take(au));
                SK::CrossInner
            };
            segs.push(seg(b, kind));
            let mut mu = mu_sub(start_mu, forward_delta(n, b, kind));
            xs.push(Crossing { barrier: k, mu });
            for (i, d) in deltas.iter().enumerate() {
                segs.push(seg(u_sector(i, a, b), SK::Uturn));
                mu = mu_add(mu, *d);
                xs.push(Crossing { barrier: k, mu });
            }
            segs.push(seg(b, kind));
            (segs, xs, Some(mu_add(mu, forward_delta(n, b, kind))))
        }
        Family::III => {
            if u == 0 {
                segs.push(seg(a, SK::Terminal));
                return (segs, xs, None);
            }
            let (kind, d) = if u >= 1 { (SK::CrossInner, RISE) } else { (SK::CrossOuter, FALL) };
            segs.push(seg(a, kind));
            let mut mu = mu_add(start_mu, forward_delta(n, a, kind));
            xs.push(Crossing { barrier: k, mu });
            for i in 0..au - 1 {
                segs.push(seg(u_sector(i, b, a), SK::Uturn));
                mu = mu_add(mu, d);
                xs.push(Crossing { barrier: k, mu });
            }
            segs.push(seg(if au % 2 == 1 { b } else { a }, SK::Terminal));
            (segs, xs, None)
        }
        Family::IIIPrime => {
            if u == 0 {
                segs.push(seg(b, SK::Terminal));
                return (segs, xs, None);
            }
            let (kind, d) = if u >= 1 { (SK::CrossOuter, RISE) } else { (SK::CrossInner, FALL) };
            segs.push(seg(b, kind));
            let mut mu = mu_sub(start_mu, forward_delta(n, b, kind));
            xs.push(Crossing { barrier: k, mu });
            for i in 0..au - 1 {
                segs.push(seg(u_sector(i, a, b), SK::Uturn));
                mu = mu_add(mu, d);
                xs.push(Crossing { barrier: k, mu });
            }
            segs.push(seg(if au % 2 == 1 { a } else { b }, SK::Terminal));
            (segs, xs, None)
        }
        _ => unreachable!("only ladder families are regrown"),
    }
}

/// Trigraded contribution of a string family to the intersection number with
/// the k-th basic curve, before scaling by the base index and the winding.
fn family_row(n: usize, k: usize, family: Family) -> LaurentPoly {
    let q = qvars();
    let mono = |c: i64, e: [i64; 3]| LaurentPoly::monomial(&q, c, e.to_vec());
    let pair = |x: [i64; 3], y: [i64; 3]| mono(1, x).add(&mono(1, y)).expect("same variable set");
    match family {
        Family::I | Family::II => {
            let row = pair([0, 0, 0], [1, -1, 0]);
            if k == 1 {
                row.mul(&mono(1, [0, 0, -1])).expect("same variable set")
            } else {
                row
            }
        }
        Family::IIPrime => {
            let row = pair([1, 0, 0], [0, 1, 0]);
            if k == n {
                row.mul(&mono(1, [0, 0, 1])).expect("same variable set")
            } else {
                row
            }
        }
        Family::III => {
            if k == 1 {
                mono(1, [0, 0, -1])
            } else {
                mono(1, [0, 0, 0])
            }
        }
        Family::IIIPrime => {
            if k == n {
                mono(1, [0, 1, 1])
            } else {
                mono(1, [0, 1, 0])
            }
        }
        Family::VI => pair([0, 0, 0], [0, 1, 0]),
        Family::IV | Family::IVPrime | Family::V | Family::VPrime => LaurentPoly::zero(&q),
    }
}
