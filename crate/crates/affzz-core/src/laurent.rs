//! Exact multivariate Laurent-polynomial arithmetic over the integers.
//!
//! Polynomials are sparse maps from integer exponent vectors to arbitrary-precision
//! coefficients, keyed to a fixed ordered variable set. Term order is lexicographic
//! on exponent vectors, which makes printing canonical and output deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable sets differ: [{0}] vs [{1}]")]
    VarMismatch(String, String),
    #[error("no substitution image for variable `{0}`")]
    MissingSubstitution(String),
    #[error("substitution image for `{0}` must have coefficient 1 or -1")]
    NonUnitSubstitution(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Ordered set of variable names shared by all polynomials of one coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<[String]>,
}

impl VarSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(
                !names[i + 1..].contains(a),
                "duplicate variable name `{a}` in variable set"
            );
        }
        VarSet { names: names.into() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }

    fn joined(&self) -> String {
        self.names.join(",")
    }
}

/// A monomial image used by [`LaurentPoly::specialize`]: `sign * prod target_i^exps[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstMonomial {
    pub sign: i8,
    pub exps: Vec<i64>,
}

impl SubstMonomial {
    pub fn new(sign: i8, exps: Vec<i64>) -> Self {
        assert!(sign == 1 || sign == -1, "substitution sign must be +/-1");
        SubstMonomial { sign, exps }
    }
}

/// Sparse integer-coefficient Laurent polynomial over a fixed [`VarSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    varset: VarSet,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(varset: &VarSet) -> Self {
        LaurentPoly { varset: varset.clone(), terms: BTreeMap::new() }
    }

    pub fn one(varset: &VarSet) -> Self {
        Self::constant(varset, 1)
    }

    pub fn constant<C: Into<BigInt>>(varset: &VarSet, c: C) -> Self {
        Self::monomial(varset, c, vec![0; varset.len()])
    }

    /// `c * prod vars[i]^exps[i]`.
    pub fn monomial<C: Into<BigInt>>(varset: &VarSet, c: C, exps: Vec<i64>) -> Self {
        assert_eq!(exps.len(), varset.len(), "exponent vector length mismatch");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { varset: varset.clone(), terms }
    }

    /// The variable `name` to the power `e`.
    pub fn var_pow(varset: &VarSet, name: &str, e: i64) -> Self {
        let idx = varset
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"));
        let mut exps = vec![0; varset.len()];
        exps[idx] = e;
        Self::monomial(varset, 1, exps)
    }

    pub fn varset(&self) -> &VarSet {
        &self.varset
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), LaurentError> {
        if self.varset != other.varset {
            return Err(LaurentError::VarMismatch(
                self.varset.joined(),
                other.varset.joined(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(LaurentPoly { varset: self.varset.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            varset: self.varset.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_same(other)?;
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        Ok(LaurentPoly { varset: self.varset.clone(), terms })
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(&self.varset);
        }
        LaurentPoly {
            varset: self.varset.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * &c)).collect(),
        }
    }

    /// True iff the polynomial is a single term with coefficient 1 or -1.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    /// Inverse of a +/-1-coefficient monomial.
    pub fn unit_monomial_inverse(&self) -> Option<Self> {
        if !self.is_unit_monomial() {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(
            &self.varset,
            c.clone(),
            e.iter().map(|x| -x).collect(),
        ))
    }

    /// Push every variable through `subst` into polynomials over `target`.
    ///
    /// Images must be single monomials with coefficient +/-1, so exponent vectors map
    /// linearly and the result stays exact.
    pub fn specialize(
        &self,
        target: &VarSet,
        subst: &BTreeMap<String, SubstMonomial>,
    ) -> Result<Self, LaurentError> {
        let mut images = Vec::with_capacity(self.varset.len());
        for name in self.varset.names() {
            let m = subst
                .get(name)
                .ok_or_else(|| LaurentError::MissingSubstitution(name.clone()))?;
            if m.sign != 1 && m.sign != -1 {
                return Err(LaurentError::NonUnitSubstitution(name.clone()));
            }
            assert_eq!(m.exps.len(), target.len(), "substitution image length mismatch");
            images.push(m);
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; target.len()];
            let mut sign = 1i64;
            for (k, ek) in e.iter().enumerate() {
                for (j, ij) in images[k].exps.iter().enumerate() {
                    exps[j] += ij * ek;
                }
                if images[k].sign == -1 && ek % 2 != 0 {
                    sign = -sign;
                }
            }
            let term = Self::monomial(target, c * BigInt::from(sign), exps);
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Evaluate with every variable set to 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Parse the canonical text format, e.g. `1 + q1*q2^-1 - 2*q3`.
    pub fn parse(varset: &VarSet, text: &str) -> Result<Self, LaurentError> {
        Parser { varset, bytes: text.as_bytes(), pos: 0 }.parse_poly()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exps, coeff)) in self.terms.iter().enumerate() {
            let neg = coeff.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, e) in self.varset.names().iter().zip(exps) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    varset: &'a VarSet,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = LaurentPoly::zero(self.varset);
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return self.err("empty polynomial");
        }
        let mut sign = 1i64;
        if self.peek() == Some(b'-') {
            sign = -1;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let term = self.parse_term(sign)?;
            acc = acc.add(&term)?;
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                Some(c) => return self.err(format!("expected `+` or `-`, found `{}`", c as char)),
            }
        }
    }

    fn parse_term(&mut self, sign: i64) -> Result<LaurentPoly, LaurentError> {
        let mut coeff = BigInt::from(sign);
        let mut exps = vec![0i64; self.varset.len()];
        let mut first = true;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.parse_int()?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = self.parse_ident();
                    let idx = match self.varset.index_of(&name) {
                        Some(i) => i,
                        None => return self.err(format!("unknown variable `{name}`")),
                    };
                    let mut e = 1i64;
                    self.skip_ws();
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.parse_signed_int()?;
                    }
                    exps[idx] += e;
                }
                _ if first => return self.err("expected a term"),
                _ => return self.err("expected a factor after `*`"),
            }
            first = false;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(LaurentPoly::monomial(self.varset, coeff, exps));
            }
        }
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .map(|c| c.is_ascii_alphanumeric() || c == b'_')
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn parse_int(&mut self) -> Result<BigInt, LaurentError> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn parse_signed_int(&mut self) -> Result<i64, LaurentError> {
        let mut sign = 1i64;
        if self.peek() == Some(b'-') {
            sign = -1;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an exponent");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match s.parse::<i64>() {
            Ok(v) => Ok(sign * v),
            Err(_) => self.err("exponent out of range"),
        }
    }
}

/// Variables of hom-space Poincare polynomials and trigraded intersection numbers.
pub fn qvars() -> VarSet {
    VarSet::new(["q1", "q2", "q3"])
}

/// Variables of the Grothendieck group coefficients.
pub fn tsvars() -> VarSet {
    VarSet::new(["t", "s"])
}

/// Variables of the homological representations over `Z[t,t^-1,q,q^-1]`.
pub fn tqvars() -> VarSet {
    VarSet::new(["t", "q"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(vs: &VarSet, s: &str) -> LaurentPoly {
        LaurentPoly::parse(vs, s).unwrap()
    }

    #[test]
    fn add_cancels_terms() {
        let vs = qvars();
        let a = p(&vs, "1 + q2");
        let b = p(&vs, "-q2");
        assert_eq!(a.add(&b).unwrap(), LaurentPoly::one(&vs));
    }

    #[test]
    fn add_identity() {
        let vs = qvars();
        let a = p(&vs, "q1^2 - 3*q3");
        assert_eq!(LaurentPoly::zero(&vs).add(&a).unwrap(), a);
    }

    #[test]
    fn add_merges_term_maps() {
        let vs = qvars();
        let a = p(&vs, "1 + q1*q2^-1");
        let b = p(&vs, "q1 + q2");
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, p(&vs, "1 + q1*q2^-1 + q1 + q2"));
        assert_eq!(sum.terms().count(), 4);
    }

    #[test]
    fn mul_inverse_monomials() {
        let vs = qvars();
        let a = p(&vs, "q1");
        let b = p(&vs, "q1^-1");
        assert_eq!(a.mul(&b).unwrap(), LaurentPoly::one(&vs));
    }

    #[test]
    fn mul_absorbing_zero() {
        let vs = qvars();
        let a = p(&vs, "1 + q2");
        assert!(a.mul(&LaurentPoly::zero(&vs)).unwrap().is_zero());
    }

    #[test]
    fn mul_scaling_by_square_of_monomial() {
        let vs = qvars();
        let entry = p(&vs, "1 + q1*q2^-1");
        let u2 = p(&vs, "q1^2*q2^-2");
        assert_eq!(
            entry.mul(&u2).unwrap(),
            p(&vs, "q1^2*q2^-2 + q1^3*q2^-3")
        );
    }

    #[test]
    fn varset_mismatch_is_an_error() {
        let a = LaurentPoly::one(&qvars());
        let b = LaurentPoly::one(&tsvars());
        assert!(matches!(a.add(&b), Err(LaurentError::VarMismatch(_, _))));
        assert!(matches!(a.mul(&b), Err(LaurentError::VarMismatch(_, _))));
    }

    #[test]
    fn specialize_s_to_inverse_qtn() {
        // s -> q^-1 t^-n with n = 4 sends s^-1 to q t^4.
        let ts = tsvars();
        let tq = tqvars();
        let sinv = LaurentPoly::var_pow(&ts, "s", -1);
        let mut subst = BTreeMap::new();
        subst.insert("t".to_string(), SubstMonomial::new(1, vec![1, 0]));
        subst.insert("s".to_string(), SubstMonomial::new(1, vec![-4, -1]));
        let img = sinv.specialize(&tq, &subst).unwrap();
        assert_eq!(img, p(&tq, "t^4*q"));
    }

    #[test]
    fn specialize_identity_substitution() {
        let vs = qvars();
        let a = p(&vs, "2 - q1^3*q2 + q3^-2");
        let mut subst = BTreeMap::new();
        for (i, name) in vs.names().iter().enumerate() {
            let mut e = vec![0; 3];
            e[i] = 1;
            subst.insert(name.clone(), SubstMonomial::new(1, e));
        }
        assert_eq!(a.specialize(&vs, &subst).unwrap(), a);
    }

    #[test]
    fn specialize_all_vars_to_one() {
        let vs = qvars();
        let a = p(&vs, "1 + q1*q2^-1");
        let target = VarSet::new(Vec::<String>::new());
        let mut subst = BTreeMap::new();
        for name in vs.names() {
            subst.insert(name.clone(), SubstMonomial::new(1, vec![]));
        }
        let img = a.specialize(&target, &subst).unwrap();
        assert_eq!(img, LaurentPoly::constant(&target, 2));
        assert_eq!(a.eval_at_one(), BigInt::from(2));
    }

    #[test]
    fn specialize_missing_entry_is_an_error() {
        let vs = qvars();
        let a = p(&vs, "q1 + q3");
        let subst = BTreeMap::new();
        assert!(matches!(
            a.specialize(&vs, &subst),
            Err(LaurentError::MissingSubstitution(_))
        ));
    }

    #[test]
    fn display_examples() {
        let vs = qvars();
        assert_eq!(p(&vs, "1 + q1*q2^-1").to_string(), "1 + q1*q2^-1");
        assert_eq!(p(&vs, "-q2 + 1").to_string(), "1 - q2");
        assert_eq!(LaurentPoly::zero(&vs).to_string(), "0");
        assert_eq!(p(&vs, "-2*q1^-1*q3").to_string(), "-2*q1^-1*q3");
    }

    #[test]
    fn parser_accepts_arbitrary_order_and_whitespace() {
        let vs = qvars();
        assert_eq!(p(&vs, "  q2^-1 * q1+1 "), p(&vs, "1 + q1*q2^-1"));
        assert_eq!(p(&vs, "3*q1*q1"), p(&vs, "3*q1^2"));
        assert_eq!(p(&vs, "q1 - q1"), LaurentPoly::zero(&vs));
    }

    #[test]
    fn parse_errors_report_position() {
        let vs = qvars();
        match LaurentPoly::parse(&vs, "1 + zz") {
            Err(LaurentError::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    fn arb_poly(vs: VarSet) -> impl Strategy<Value = LaurentPoly> {
        let n = vs.len();
        proptest::collection::vec(
            (proptest::collection::vec(-4i64..=4, n), -5i64..=5),
            0..6,
        )
        .prop_map(move |terms| {
            let mut acc = LaurentPoly::zero(&vs);
            for (e, c) in terms {
                acc = acc.add(&LaurentPoly::monomial(&vs, c, e)).unwrap();
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in (arb_poly(qvars()), arb_poly(qvars()), arb_poly(qvars()))) {
            let ab = a.add(&b).unwrap();
            prop_assert_eq!(ab.clone(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                ab.mul(&c).unwrap(),
                a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.mul(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().mul(&c).unwrap()
            );
        }

        #[test]
        fn specialize_is_multiplicative((a, b) in (arb_poly(tsvars()), arb_poly(tsvars()))) {
            let tq = tqvars();
            let mut subst = BTreeMap::new();
            subst.insert("t".to_string(), SubstMonomial::new(1, vec![1, 0]));
            subst.insert("s".to_string(), SubstMonomial::new(-1, vec![-3, -1]));
            let lhs = a.mul(&b).unwrap().specialize(&tq, &subst).unwrap();
            let rhs = a
                .specialize(&tq, &subst)
                .unwrap()
                .mul(&b.specialize(&tq, &subst).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly(qvars())) {
            let text = a.to_string();
            prop_assert_eq!(LaurentPoly::parse(&qvars(), &text).unwrap(), a);
        }
    }
}
