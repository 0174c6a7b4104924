//! Three linear representations of the extended affine type-A braid group.
//!
//! `H` is the rank `n + 1` homological representation over `Z[t,q]` built from the
//! twisted homology of the punctured disk relative to the fiber; `RH` is its reduced
//! rank `n` quotient; `AKS` is the rank `n` representation over `Z[t,s]` obtained by
//! decategorifying the action on complexes of projective modules. Specializing
//! `s = q^-1 t^-n` in `AKS` recovers `RH` exactly.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::braid::{BraidGen, BraidWord};
use crate::laurent::{tqvars, tsvars, LaurentError, LaurentPoly, SubstMonomial, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinRepError {
    #[error("strand count must be at least 3, got {0}")]
    TooFewStrands(usize),
    #[error("matrix sizes do not match: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix determinant is not a unit monomial: {0}")]
    NonUnitDeterminant(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Which of the three representations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepTag {
    /// Rank `n + 1` over `Z[t,q]`, basis indexed by punctures `0..=n`.
    H,
    /// Rank `n` over `Z[t,q]`, basis indexed by `1..=n`.
    RH,
    /// Rank `n` over `Z[t,s]`, basis of projective module classes `1..=n`.
    AKS,
}

impl RepTag {
    pub fn name(self) -> &'static str {
        match self {
            RepTag::H => "h",
            RepTag::RH => "rh",
            RepTag::AKS => "aks",
        }
    }

    pub fn dimension(self, n: usize) -> usize {
        match self {
            RepTag::H => n + 1,
            RepTag::RH | RepTag::AKS => n,
        }
    }

    pub fn varset(self) -> VarSet {
        match self {
            RepTag::H | RepTag::RH => tqvars(),
            RepTag::AKS => tsvars(),
        }
    }
}

/// Square matrix over a Laurent polynomial ring, stored row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMatrix {
    varset: VarSet,
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl RepMatrix {
    pub fn zero(varset: &VarSet, size: usize) -> Self {
        RepMatrix {
            varset: varset.clone(),
            size,
            entries: vec![LaurentPoly::zero(varset); size * size],
        }
    }

    pub fn identity(varset: &VarSet, size: usize) -> Self {
        let mut m = Self::zero(varset, size);
        for i in 0..size {
            m.entries[i * size + i] = LaurentPoly::one(varset);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn varset(&self) -> &VarSet {
        &self.varset
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        self.entries[row * self.size + col] = value;
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinRepError> {
        if self.size != other.size {
            return Err(LinRepError::SizeMismatch(self.size, other.size));
        }
        let mut out = Self::zero(&self.varset, self.size);
        for r in 0..self.size {
            for k in 0..self.size {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..self.size {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?;
                    let cur = out.get(r, c).add(&prod)?;
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    fn det_rec(&self, mask: u32, memo: &mut HashMap<u32, LaurentPoly>) -> LaurentPoly {
        if mask == 0 {
            return LaurentPoly::one(&self.varset);
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let row = self.size - mask.count_ones() as usize;
        let mut acc = LaurentPoly::zero(&self.varset);
        let mut positive = true;
        for col in 0..self.size {
            if mask & (1 << col) == 0 {
                continue;
            }
            let e = self.get(row, col);
            if !e.is_zero() {
                let sub = self.det_rec(mask & !(1 << col), memo);
                let term = e.mul(&sub).expect("matrix entries share a varset");
                acc = if positive {
                    acc.add(&term).expect("matrix entries share a varset")
                } else {
                    acc.sub(&term).expect("matrix entries share a varset")
                };
            }
            positive = !positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    pub fn determinant(&self) -> LaurentPoly {
        let mut memo = HashMap::new();
        self.det_rec((1u32 << self.size) - 1, &mut memo)
    }

    fn delete(&self, row: usize, col: usize) -> RepMatrix {
        let mut out = Self::zero(&self.varset, self.size - 1);
        let mut rr = 0;
        for r in 0..self.size {
            if r == row {
                continue;
            }
            let mut cc = 0;
            for c in 0..self.size {
                if c == col {
                    continue;
                }
                out.set(rr, cc, self.get(r, c).clone());
                cc += 1;
            }
            rr += 1;
        }
        out
    }

    /// Matrix inverse; defined because every braid generator has unit monomial
    /// determinant.
    pub fn inverse(&self) -> Result<Self, LinRepError> {
        let det = self.determinant();
        let det_inv = det
            .unit_monomial_inverse()
            .ok_or_else(|| LinRepError::NonUnitDeterminant(det.to_string()))?;
        let mut out = Self::zero(&self.varset, self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                let minor = self.delete(c, r).determinant();
                let signed = if (r + c) % 2 == 0 { minor } else { minor.neg() };
                out.set(r, c, signed.mul(&det_inv)?);
            }
        }
        Ok(out)
    }

    /// Apply a variable substitution to every entry.
    pub fn specialize(
        &self,
        target: &VarSet,
        subst: &BTreeMap<String, SubstMonomial>,
    ) -> Result<Self, LinRepError> {
        let mut out = Self::zero(target, self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                out.set(r, c, self.get(r, c).specialize(target, subst)?);
            }
        }
        Ok(out)
    }

    /// Rows rendered with entries in the canonical text form.
    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.size)
            .map(|r| (0..self.size).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }
}

/// One of the three representations at a fixed strand count, with all generator
/// matrices precomputed.
pub struct LinRep {
    pub tag: RepTag,
    pub n: usize,
    varset: VarSet,
    gens: BTreeMap<BraidGen, RepMatrix>,
}

impl LinRep {
    pub fn new(tag: RepTag, n: usize) -> Result<Self, LinRepError> {
        if n < 3 {
            return Err(LinRepError::TooFewStrands(n));
        }
        let varset = tag.varset();
        let mut gens = BTreeMap::new();
        let rho = build_rho(tag, n);
        gens.insert(BraidGen::Rho, rho.clone());
        gens.insert(BraidGen::RhoInv, rho.inverse()?);
        for i in 1..n {
            gens.insert(BraidGen::Sigma(i), build_sigma(tag, n, i));
        }
        let sigma_n = match tag {
            RepTag::AKS => build_sigma(tag, n, n),
            RepTag::H | RepTag::RH => {
                let mid = gens[&BraidGen::Sigma(n - 1)].clone();
                rho.mul(&mid)?.mul(&gens[&BraidGen::RhoInv])?
            }
        };
        gens.insert(BraidGen::Sigma(n), sigma_n);
        for i in 1..=n {
            let inv = gens[&BraidGen::Sigma(i)].inverse()?;
            gens.insert(BraidGen::SigmaInv(i), inv);
        }
        Ok(LinRep { tag, n, varset, gens })
    }

    pub fn varset(&self) -> &VarSet {
        &self.varset
    }

    pub fn dimension(&self) -> usize {
        self.tag.dimension(self.n)
    }

    pub fn generator_matrix(&self, g: BraidGen) -> &RepMatrix {
        &self.gens[&g]
    }

    /// Matrix of a braid word; letters multiply left to right so that the
    /// rightmost letter acts first on column vectors.
    pub fn word_matrix(&self, word: &BraidWord) -> Result<RepMatrix, LinRepError> {
        let mut out = RepMatrix::identity(&self.varset, self.dimension());
        for g in &word.letters {
            out = out.mul(&self.gens[g])?;
        }
        Ok(out)
    }
}

fn poly(varset: &VarSet, text: &str) -> LaurentPoly {
    LaurentPoly::parse(varset, text).expect("literal polynomial")
}

/// Row and column labels: punctures `0..=n` for `H`, arcs `1..=n` otherwise.
fn idx(tag: RepTag, label: usize) -> usize {
    match tag {
        RepTag::H => label,
        RepTag::RH | RepTag::AKS => label - 1,
    }
}

fn build_sigma(tag: RepTag, n: usize, i: usize) -> RepMatrix {
    let varset = tag.varset();
    let mut m = RepMatrix::identity(&varset, tag.dimension(n));
    let at = |l: usize| idx(tag, l);
    match tag {
        RepTag::H => {
            debug_assert!(i < n);
            m.set(at(i), at(i), LaurentPoly::zero(&varset));
            m.set(at(i), at(i + 1), poly(&varset, "t"));
            m.set(at(i + 1), at(i), poly(&varset, "1"));
            m.set(at(i + 1), at(i + 1), poly(&varset, "1 - t"));
        }
        RepTag::RH | RepTag::AKS => {
            if i == 1 {
                m.set(at(1), at(1), poly(&varset, "-t"));
                m.set(at(1), at(2), poly(&varset, "t"));
                let corner = match tag {
                    RepTag::RH => {
                        let tn = LaurentPoly::var_pow(&varset, "t", n as i64);
                        tn.mul(&poly(&varset, "q")).unwrap()
                    }
                    _ => poly(&varset, "s^-1"),
                };
                m.set(at(1), at(n), corner);
            } else if i < n {
                m.set(at(i), at(i - 1), poly(&varset, "1"));
                m.set(at(i), at(i), poly(&varset, "-t"));
                m.set(at(i), at(i + 1), poly(&varset, "t"));
            } else {
                debug_assert!(matches!(tag, RepTag::AKS));
                m.set(at(n), at(1), poly(&varset, "t*s"));
                m.set(at(n), at(n - 1), poly(&varset, "1"));
                m.set(at(n), at(n), poly(&varset, "-t"));
            }
        }
    }
    m
}

fn build_rho(tag: RepTag, n: usize) -> RepMatrix {
    let varset = tag.varset();
    let at = |l: usize| idx(tag, l);
    match tag {
        RepTag::H => {
            let mut m = RepMatrix::zero(&varset, n + 1);
            m.set(0, 0, poly(&varset, "t"));
            m.set(1, 0, poly(&varset, "1 - q"));
            for j in 1..n {
                m.set(j + 1, j, poly(&varset, "1"));
            }
            let tpow = |k: i64| LaurentPoly::var_pow(&varset, "t", k);
            let one_minus_t = poly(&varset, "1 - t");
            m.set(0, n, tpow(n as i64).mul(&one_minus_t).unwrap());
            m.set(
                1,
                n,
                tpow(n as i64 - 1).mul(&poly(&varset, "1 - t + q*t")).unwrap(),
            );
            for j in 2..n {
                m.set(j, n, tpow(n as i64 - j as i64).mul(&one_minus_t).unwrap());
            }
            m.set(n, n, one_minus_t);
            m
        }
        RepTag::RH | RepTag::AKS => {
            let mut m = RepMatrix::zero(&varset, n);
            for k in 1..n {
                m.set(at(k + 1), at(k), poly(&varset, "1"));
            }
            let corner = match tag {
                RepTag::RH => {
                    let tn = LaurentPoly::var_pow(&varset, "t", n as i64);
                    tn.mul(&poly(&varset, "q")).unwrap()
                }
                _ => poly(&varset, "s^-1"),
            };
            m.set(at(1), at(n), corner);
            m
        }
    }
}

/// The explicit inverse rotation matrix of the decategorified representation,
/// kept as a cross-check against the computed inverse.
pub fn aks_rho_inverse_reference(n: usize) -> RepMatrix {
    let varset = tsvars();
    let mut m = RepMatrix::zero(&varset, n);
    for j in 1..n {
        m.set(j - 1, j, poly(&varset, "1"));
    }
    m.set(n - 1, 0, poly(&varset, "s"));
    m
}

/// Image of the squared half twist around the base puncture in the rank `n + 1`
/// representation, kept as a cross-check: it must equal the matrix of the word
/// `r s(n-1)^-1 ... s1^-1`.
pub fn h_sigma0_squared_reference(n: usize) -> RepMatrix {
    let varset = tqvars();
    let mut m = RepMatrix::identity(&varset, n + 1);
    m.set(0, 0, poly(&varset, "t"));
    m.set(0, 1, poly(&varset, "t - t^2"));
    m.set(1, 0, poly(&varset, "1 - q"));
    m.set(1, 1, poly(&varset, "1 + t*q - t"));
    m
}

/// The substitution `s = q^-1 t^-n` carrying `AKS` matrices onto `RH` matrices.
pub fn aks_to_rh_substitution(n: usize) -> (VarSet, BTreeMap<String, SubstMonomial>) {
    let target = tqvars();
    let mut subst = BTreeMap::new();
    subst.insert("t".to_string(), SubstMonomial::new(1, vec![1, 0]));
    subst.insert("s".to_string(), SubstMonomial::new(1, vec![-(n as i64), -1]));
    (target, subst)
}
