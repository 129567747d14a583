//! Graded alphabets: finite sets of letters, each with a positive arity.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// A decorating letter. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    name: Arc<str>,
    arity: usize,
}

impl Letter {
    pub fn new(name: &str, arity: usize) -> Result<Self> {
        if !valid_name(name) {
            return Err(Error::InvalidAlphabet(format!(
                "letter name `{name}` must match [a-z][a-z0-9_]*"
            )));
        }
        if arity == 0 {
            return Err(Error::InvalidAlphabet(format!(
                "letter `{name}` has arity 0"
            )));
        }
        Ok(Self {
            name: name.into(),
            arity,
        })
    }

    /// The reserved letter `#k` of arity `k`, used to graft a forest into a
    /// single tree. It can never collide with a user letter.
    pub fn diamond(k: usize) -> Self {
        assert!(k >= 1, "diamond letters need a positive arity");
        Self {
            name: format!("#{k}").into(),
            arity: k,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.arity)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

/// An ordered finite set of letters. Declaration order is the canonical
/// iteration order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        for (k, a) in letters.iter().enumerate() {
            if letters[..k].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate letter `{}`",
                    a.name
                )));
            }
        }
        Ok(Self { letters })
    }

    /// Builds an alphabet from `(name, arity)` pairs.
    pub fn from_pairs(pairs: &[(&str, usize)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(n, a)| Letter::new(n, a))
                .collect::<Result<_>>()?,
        )
    }

    /// Parses the file form: one `name arity` pair per line. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_lines(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(name), Some(arity), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::InvalidAlphabet(format!("malformed line `{line}`")));
            };
            letters.push(Letter::new(name, parse_arity(arity)?)?);
        }
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Letter> {
        self.letters.iter().find(|a| &*a.name == name)
    }

    /// Largest arity, 0 for the empty alphabet.
    pub fn max_arity(&self) -> usize {
        self.letters.iter().map(|a| a.arity).max().unwrap_or(0)
    }

    /// `Σ_a t^{|a|}`: the coefficient of `t^k` counts letters of arity `k`.
    pub fn gen_poly(&self) -> Poly {
        let mut coeffs = vec![BigInt::from(0); self.max_arity() + 1];
        for a in &self.letters {
            coeffs[a.arity] += 1;
        }
        Poly::new(coeffs)
    }

    /// A copy of this alphabet with `letter` appended (used for diamonds).
    pub fn with_letter(&self, letter: Letter) -> Self {
        let mut letters: Vec<Letter> = self
            .letters
            .iter()
            .filter(|a| a.name != letter.name)
            .cloned()
            .collect();
        letters.push(letter);
        Self { letters }
    }
}

fn parse_arity(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidAlphabet(format!("arity `{s}` is not a nonnegative integer")))
}

impl FromStr for Alphabet {
    type Err = Error;

    /// Parses `name:arity` pairs separated by commas, e.g. `a:2,c:3,e:1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let letters = s
            .split(',')
            .map(|item| {
                let (name, arity) = item.trim().split_once(':').ok_or_else(|| {
                    Error::InvalidAlphabet(format!("expected name:arity, got `{item}`"))
                })?;
                Letter::new(name.trim(), parse_arity(arity.trim())?)
            })
            .collect::<Result<_>>()?;
        Self::new(letters)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.letters.iter().map(|a| format!("{a:?}")).collect();
        f.write_str(&items.join(","))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
