//! Words in the extended affine braid group of type A on `n` strands.
//!
//! Generators are the half twists `s1, ..., sn` and the rotation `r`. Words act on
//! everything in this crate with the rightmost letter applied first. The group is
//! recognised through its faithful action on the free group of rank `n + 1`
//! generated by loops `x0, ..., xn` around the punctures of a disk.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand count must be at least 3, got {0}")]
    TooFewStrands(usize),
    #[error("invalid braid word at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A single generator or inverse generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraidGen {
    /// `s<i>` with `i` in `1..=n`.
    Sigma(usize),
    /// `s<i>^-1`.
    SigmaInv(usize),
    /// The rotation `r`.
    Rho,
    /// `r^-1`.
    RhoInv,
}

impl BraidGen {
    pub fn inverse(self) -> Self {
        match self {
            BraidGen::Sigma(i) => BraidGen::SigmaInv(i),
            BraidGen::SigmaInv(i) => BraidGen::Sigma(i),
            BraidGen::Rho => BraidGen::RhoInv,
            BraidGen::RhoInv => BraidGen::Rho,
        }
    }
}

impl fmt::Display for BraidGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidGen::Sigma(i) => write!(f, "s{i}"),
            BraidGen::SigmaInv(i) => write!(f, "s{i}^-1"),
            BraidGen::Rho => write!(f, "r"),
            BraidGen::RhoInv => write!(f, "r^-1"),
        }
    }
}

/// A word in the generators, stored left to right as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub n: usize,
    pub letters: Vec<BraidGen>,
}

impl BraidWord {
    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    pub fn new(n: usize, letters: Vec<BraidGen>) -> Result<Self, BraidError> {
        if n < 3 {
            return Err(BraidError::TooFewStrands(n));
        }
        for g in &letters {
            if let BraidGen::Sigma(i) | BraidGen::SigmaInv(i) = g {
                if *i < 1 || *i > n {
                    return Err(BraidError::Parse {
                        pos: 0,
                        msg: format!("generator index {i} out of range 1..={n}"),
                    });
                }
            }
        }
        Ok(BraidWord { n, letters })
    }

    /// Parse a word like `s1 s2^-1 r`; letters may also be separated by `*` or `.`.
    pub fn parse(n: usize, input: &str) -> Result<Self, BraidError> {
        if n < 3 {
            return Err(BraidError::TooFewStrands(n));
        }
        let bytes = input.as_bytes();
        let mut pos = 0;
        let mut letters = Vec::new();
        while pos < bytes.len() {
            let c = bytes[pos] as char;
            if c.is_whitespace() || c == '*' || c == '.' {
                pos += 1;
                continue;
            }
            let start = pos;
            let base = match c {
                'r' => {
                    pos += 1;
                    BraidGen::Rho
                }
                's' => {
                    pos += 1;
                    let digits_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == digits_start {
                        return Err(BraidError::Parse {
                            pos: start,
                            msg: "expected generator index after 's'".to_string(),
                        });
                    }
                    let i: usize = input[digits_start..pos].parse().map_err(|_| {
                        BraidError::Parse {
                            pos: digits_start,
                            msg: "generator index out of range".to_string(),
                        }
                    })?;
                    if i < 1 || i > n {
                        return Err(BraidError::Parse {
                            pos: start,
                            msg: format!("generator index {i} out of range 1..={n}"),
                        });
                    }
                    BraidGen::Sigma(i)
                }
                other => {
                    return Err(BraidError::Parse {
                        pos: start,
                        msg: format!("unexpected character '{other}'"),
                    });
                }
            };
            if bytes.get(pos) == Some(&b'^') {
                let caret = pos;
                pos += 1;
                if input[pos..].starts_with("-1") {
                    pos += 2;
                    letters.push(base.inverse());
                } else if input[pos..].starts_with('1') {
                    pos += 1;
                    letters.push(base);
                } else {
                    return Err(BraidError::Parse {
                        pos: caret,
                        msg: "expected exponent 1 or -1 after '^'".to_string(),
                    });
                }
            } else {
                letters.push(base);
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Concatenation `self * other`; the right factor acts first.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A freely reduced word in the free group on `x0, ..., xn`, stored as
/// `(index, sign)` pairs with signs `1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    pub letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(i: usize) -> Self {
        FreeWord { letters: vec![(i, 1)] }
    }

    fn push_reduced(letters: &mut Vec<(usize, i8)>, l: (usize, i8)) {
        if let Some(&top) = letters.last() {
            if top.0 == l.0 && top.1 == -l.1 {
                letters.pop();
                return;
            }
        }
        letters.push(l);
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            Self::push_reduced(&mut letters, l);
        }
        FreeWord { letters }
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total exponent sums `(sum over x1..xn, sum over x0)`.
    pub fn exponent_pair(&self) -> (i64, i64) {
        let mut others = 0i64;
        let mut zero = 0i64;
        for &(i, s) in &self.letters {
            if i == 0 {
                zero += s as i64;
            } else {
                others += s as i64;
            }
        }
        (others, zero)
    }

    pub fn notation(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, s)| if s == 1 { format!("x{i}") } else { format!("x{i}^-1") })
            .collect();
        parts.join(" ")
    }
}

/// Substitute the images of `x0, ..., xn` into a free word.
fn substitute(w: &FreeWord, images: &[FreeWord]) -> FreeWord {
    let mut out = FreeWord::identity();
    for &(i, s) in &w.letters {
        let img = if s == 1 { images[i].clone() } else { images[i].inverse() };
        out = out.mul(&img);
    }
    out
}

/// The product `x_a x_{a+1} ... x_b` as a free word (requires `a <= b`).
fn ascending(a: usize, b: usize) -> FreeWord {
    FreeWord { letters: (a..=b).map(|i| (i, 1)).collect() }
}

/// Images of `x0, ..., xn` under one generator acting on the free group.
fn generator_images(n: usize, g: BraidGen) -> Vec<FreeWord> {
    let x = FreeWord::generator;
    let mut images: Vec<FreeWord> = (0..=n).map(x).collect();
    match g {
        BraidGen::Sigma(i) if i < n => {
            images[i] = x(i + 1);
            images[i + 1] = x(i + 1).inverse().mul(&x(i)).mul(&x(i + 1));
        }
        BraidGen::SigmaInv(i) if i < n => {
            images[i] = x(i).mul(&x(i + 1)).mul(&x(i).inverse());
            images[i + 1] = x(i);
        }
        BraidGen::Rho => {
            // delta = x0 x1 ... xn is the boundary loop; r conjugates the loop
            // around the puncture behind the rotation and shifts the rest.
            let delta = ascending(0, n);
            images[0] = x(1).inverse().mul(&x(0)).mul(&x(1));
            for j in 1..n {
                images[j] = x(j + 1);
            }
            images[n] = delta.inverse().mul(&x(1)).mul(&delta);
        }
        BraidGen::RhoInv => {
            let delta = ascending(0, n);
            let head = ascending(0, n - 1);
            images[0] = delta
                .mul(&ascending(1, n - 1).inverse())
                .mul(&head)
                .mul(&delta.inverse());
            images[1] = delta.mul(&head.inverse());
            for j in 2..=n {
                images[j] = x(j - 1);
            }
        }
        BraidGen::Sigma(i) => {
            debug_assert_eq!(i, n);
            // s_n = r s_{n-1} r^-1 acting on the free group.
            let rho = generator_images(n, BraidGen::Rho);
            let mid = generator_images(n, BraidGen::Sigma(n - 1));
            let rho_inv = generator_images(n, BraidGen::RhoInv);
            for j in 0..=n {
                images[j] = substitute(&substitute(&substitute(&x(j), &rho_inv), &mid), &rho);
            }
        }
        BraidGen::SigmaInv(i) => {
            debug_assert_eq!(i, n);
            let rho = generator_images(n, BraidGen::Rho);
            let mid = generator_images(n, BraidGen::SigmaInv(n - 1));
            let rho_inv = generator_images(n, BraidGen::RhoInv);
            for j in 0..=n {
                images[j] = substitute(&substitute(&substitute(&x(j), &rho_inv), &mid), &rho);
            }
        }
    }
    images
}

/// Apply a braid word to a free word, rightmost letter first.
pub fn artin_apply(word: &BraidWord, w: &FreeWord) -> FreeWord {
    let mut out = w.clone();
    for g in word.letters.iter().rev() {
        let images = generator_images(word.n, *g);
        out = substitute(&out, &images);
    }
    out
}

/// Exponent-sum pair of the image of every generator is preserved in total; the
/// pair itself `(sum over x1..xn, sum over x0)` is invariant letter by letter.
pub fn phi_g(w: &FreeWord) -> (i64, i64) {
    w.exponent_pair()
}

/// True iff the word acts as the identity automorphism of the free group.
pub fn is_identity_automorphism(word: &BraidWord) -> bool {
    (0..=word.n).all(|i| artin_apply(word, &FreeWord::generator(i)) == FreeWord::generator(i))
}

/// Deterministic pseudorandom word of length `1..=maxlen` over all `2n + 2`
/// generator tokens.
pub fn random_word(n: usize, seed: u64, maxlen: usize) -> BraidWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(1..=maxlen.max(1));
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let k = rng.gen_range(0..2 * n + 2);
        let g = if k < n {
            BraidGen::Sigma(k + 1)
        } else if k < 2 * n {
            BraidGen::SigmaInv(k - n + 1)
        } else if k == 2 * n {
            BraidGen::Rho
        } else {
            BraidGen::RhoInv
        };
        letters.push(g);
    }
    BraidWord { n, letters }
}
