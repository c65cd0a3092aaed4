//! Labeled and reduced permutations.
//!
//! A labeled permutation is stored as its two table rows: `top[j]` is the
//! symbol in position `j + 1` of the top row (that is, `pi_t^{-1}(j + 1)`),
//! and likewise for `bottom`. Symbols are small integer ids into a shared
//! alphabet of opaque tokens, numbered by first appearance in the top row
//! of the parsed text.
//!
//! A reduced permutation is the renumbering class of a labeled one. It is
//! stored as the bottom word of the unique representative whose top row is
//! the identity on `1..=d`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Symbol id inside an alphabet.
pub type Symbol = u8;

/// Largest supported number of intervals.
pub const MAX_INTERVALS: usize = Symbol::MAX as usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("expected two rows separated by '/'")]
    MissingSeparator,
    #[error("rows have different lengths ({top} vs {bottom})")]
    LengthMismatch { top: usize, bottom: usize },
    #[error("at least two intervals are required, got {0}")]
    TooShort(usize),
    #[error("at most {MAX_INTERVALS} intervals are supported, got {0}")]
    TooLong(usize),
    #[error("symbol `{0}` appears twice in the {1} row")]
    DuplicateSymbol(String, &'static str),
    #[error("symbol `{0}` of the bottom row does not appear in the top row")]
    AlphabetMismatch(String),
    #[error(
        "`{0}` is not a positive integer (expected a word over 1..d or two rows separated by '/')"
    )]
    BadLetter(String),
    #[error("word is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("permutation {0} is reducible")]
    Reducible(String),
}

/// Alphabet of opaque symbol tokens, indexed by [`Symbol`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    /// The alphabet `1, 2, ..., d`.
    pub fn numeric(d: usize) -> Self {
        Alphabet((1..=d).map(|i| i.to_string()).collect())
    }

    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Alphabet(tokens.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.0[s as usize]
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn lookup(&self, token: &str) -> Option<Symbol> {
        self.0.iter().position(|t| t == token).map(|i| i as Symbol)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A pair of bijections `(pi_t, pi_b)` from an alphabet to `1..=d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledPermutation {
    alphabet: Alphabet,
    top: Box<[Symbol]>,
    bottom: Box<[Symbol]>,
}

impl LabeledPermutation {
    /// Builds a labeled permutation from its two rows of symbol ids.
    pub fn from_rows(
        alphabet: Alphabet,
        top: impl Into<Box<[Symbol]>>,
        bottom: impl Into<Box<[Symbol]>>,
    ) -> Result<Self, PermError> {
        let top = top.into();
        let bottom = bottom.into();
        let d = alphabet.len();
        if top.len() != bottom.len() {
            return Err(PermError::LengthMismatch {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        check_size(top.len())?;
        if top.len() != d {
            return Err(PermError::NotAPermutation(d));
        }
        for (row, name) in [(&top, "top"), (&bottom, "bottom")] {
            let mut seen = vec![false; d];
            for &s in row.iter() {
                let slot = seen
                    .get_mut(s as usize)
                    .ok_or(PermError::NotAPermutation(d))?;
                if *slot {
                    return Err(PermError::DuplicateSymbol(
                        alphabet.token(s).to_owned(),
                        name,
                    ));
                }
                *slot = true;
            }
        }
        Ok(LabeledPermutation {
            alphabet,
            top,
            bottom,
        })
    }

    /// Rows are trusted to be permutations of the alphabet ids.
    pub(crate) fn from_rows_unchecked(
        alphabet: Alphabet,
        top: Box<[Symbol]>,
        bottom: Box<[Symbol]>,
    ) -> Self {
        debug_assert_eq!(top.len(), alphabet.len());
        debug_assert_eq!(bottom.len(), alphabet.len());
        LabeledPermutation {
            alphabet,
            top,
            bottom,
        }
    }

    /// Parses the two-row text format `"s1 s2 ... sd / t1 t2 ... td"`.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let (top_text, bottom_text) = text.split_once('/').ok_or(PermError::MissingSeparator)?;
        if bottom_text.contains('/') {
            return Err(PermError::MissingSeparator);
        }
        let top_tokens: Vec<&str> = top_text.split_whitespace().collect();
        let bottom_tokens: Vec<&str> = bottom_text.split_whitespace().collect();
        if top_tokens.len() != bottom_tokens.len() {
            return Err(PermError::LengthMismatch {
                top: top_tokens.len(),
                bottom: bottom_tokens.len(),
            });
        }
        check_size(top_tokens.len())?;

        let mut ids: HashMap<&str, Symbol> = HashMap::with_capacity(top_tokens.len());
        for (i, tok) in top_tokens.iter().enumerate() {
            if ids.insert(tok, i as Symbol).is_some() {
                return Err(PermError::DuplicateSymbol(tok.to_string(), "top"));
            }
        }
        let mut seen = vec![false; top_tokens.len()];
        let mut bottom = Vec::with_capacity(bottom_tokens.len());
        for tok in &bottom_tokens {
            let id = *ids
                .get(tok)
                .ok_or_else(|| PermError::AlphabetMismatch(tok.to_string()))?;
            if std::mem::replace(&mut seen[id as usize], true) {
                return Err(PermError::DuplicateSymbol(tok.to_string(), "bottom"));
            }
            bottom.push(id);
        }
        let top: Box<[Symbol]> = (0..top_tokens.len() as Symbol).collect();
        Ok(LabeledPermutation {
            alphabet: Alphabet::from_tokens(top_tokens),
            top,
            bottom: bottom.into(),
        })
    }

    pub fn d(&self) -> usize {
        self.top.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Top row: `top()[j] = pi_t^{-1}(j + 1)`.
    pub fn top(&self) -> &[Symbol] {
        &self.top
    }

    /// Bottom row: `bottom()[j] = pi_b^{-1}(j + 1)`.
    pub fn bottom(&self) -> &[Symbol] {
        &self.bottom
    }

    /// `pi_t`, 1-based positions indexed by symbol id.
    pub fn top_positions(&self) -> Vec<usize> {
        inverse_positions(&self.top)
    }

    /// `pi_b`, 1-based positions indexed by symbol id.
    pub fn bottom_positions(&self) -> Vec<usize> {
        inverse_positions(&self.bottom)
    }

    /// Composes with a renumbering of the alphabet. `relabel[s]` is the new
    /// id of symbol `s`; the new alphabet must be indexed accordingly.
    pub fn renumber(&self, relabel: &[Symbol], alphabet: Alphabet) -> Result<Self, PermError> {
        let top: Box<[Symbol]> = self.top.iter().map(|&s| relabel[s as usize]).collect();
        let bottom: Box<[Symbol]> = self.bottom.iter().map(|&s| relabel[s as usize]).collect();
        LabeledPermutation::from_rows(alphabet, top, bottom)
    }

    /// Renumbering class of this permutation.
    pub fn reduce(&self) -> ReducedPermutation {
        let d = self.d();
        let mut rank = vec![0 as Symbol; d];
        for (pos, &s) in self.top.iter().enumerate() {
            rank[s as usize] = pos as Symbol;
        }
        ReducedPermutation {
            word: self.bottom.iter().map(|&s| rank[s as usize]).collect(),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        self.reduce().is_irreducible()
    }

    /// Stable textual key, e.g. `l:1,2,3,4|4,3,2,1`.
    pub fn canonical_key(&self) -> String {
        let row = |r: &[Symbol]| {
            r.iter()
                .map(|&s| self.alphabet.token(s))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("l:{}|{}", row(&self.top), row(&self.bottom))
    }

    pub fn top_text(&self) -> String {
        row_text(&self.alphabet, &self.top)
    }

    pub fn bottom_text(&self) -> String {
        row_text(&self.alphabet, &self.bottom)
    }
}

impl fmt::Display for LabeledPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.top_text(), self.bottom_text())
    }
}

impl FromStr for LabeledPermutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LabeledPermutation::parse(s)
    }
}

/// A permutation up to renumbering, normalized so that the top row is
/// `1 2 ... d`. The word is stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ReducedPermutation {
    word: Box<[Symbol]>,
}

impl ReducedPermutation {
    /// Builds from a 1-based word such as `[4, 3, 2, 1]`.
    pub fn from_word(word: &[usize]) -> Result<Self, PermError> {
        let d = word.len();
        check_size(d)?;
        let mut seen = vec![false; d];
        for &w in word {
            if w == 0 || w > d || std::mem::replace(&mut seen[w - 1], true) {
                return Err(PermError::NotAPermutation(d));
            }
        }
        Ok(ReducedPermutation {
            word: word.iter().map(|&w| (w - 1) as Symbol).collect(),
        })
    }

    /// Builds from a 0-based word that is already known to be valid.
    pub(crate) fn from_zero_based_unchecked(word: Box<[Symbol]>) -> Self {
        ReducedPermutation { word }
    }

    /// Parses either the two-row format or a bare word `"4 3 2 1"`.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        if text.contains('/') {
            return Ok(LabeledPermutation::parse(text)?.reduce());
        }
        let word = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| PermError::BadLetter(t.to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ReducedPermutation::from_word(&word)
    }

    /// `tau_d = (d d-1 ... 1)`.
    pub fn symmetric(d: usize) -> Result<Self, PermError> {
        let word: Vec<usize> = (1..=d).rev().collect();
        ReducedPermutation::from_word(&word)
    }

    pub fn d(&self) -> usize {
        self.word.len()
    }

    /// 0-based bottom word.
    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    /// 1-based bottom word.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|&w| w as usize + 1).collect()
    }

    /// Labeled representative over `1..=d` with identity top row.
    pub fn embed(&self) -> LabeledPermutation {
        let d = self.d();
        LabeledPermutation {
            alphabet: Alphabet::numeric(d),
            top: (0..d as Symbol).collect(),
            bottom: self.word.clone(),
        }
    }

    /// No proper prefix of the word is a permutation of its own positions.
    pub fn is_irreducible(&self) -> bool {
        let mut max = 0usize;
        for (k, &w) in self.word[..self.d() - 1].iter().enumerate() {
            max = max.max(w as usize);
            if max == k {
                return false;
            }
        }
        true
    }

    pub fn ensure_irreducible(&self) -> Result<(), PermError> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(PermError::Reducible(self.to_string()))
        }
    }

    /// Stable textual key, e.g. `r:4,3,2,1`.
    pub fn canonical_key(&self) -> String {
        let body = self
            .word
            .iter()
            .map(|&w| (w as usize + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("r:{body}")
    }
}

impl fmt::Display for ReducedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = (1..=self.d()).map(|i| i.to_string()).collect::<Vec<_>>();
        let bottom = self
            .word
            .iter()
            .map(|&w| (w as usize + 1).to_string())
            .collect::<Vec<_>>();
        write!(f, "{} / {}", top.join(" "), bottom.join(" "))
    }
}

impl FromStr for ReducedPermutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReducedPermutation::parse(s)
    }
}

/// Every irreducible reduced permutation on `d` intervals, in lexicographic
/// order of the word.
pub fn irreducible_permutations(d: usize) -> Vec<ReducedPermutation> {
    let mut out = Vec::new();
    let mut word: Vec<Symbol> = (0..d as Symbol).collect();
    loop {
        let p = ReducedPermutation::from_zero_based_unchecked(word.clone().into());
        if p.is_irreducible() {
            out.push(p);
        }
        if !next_permutation(&mut word) {
            break;
        }
    }
    out
}

/// Lexicographic successor in place; false once the last one is reached.
pub(crate) fn next_permutation(v: &mut [Symbol]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_size(d: usize) -> Result<(), PermError> {
    if d < 2 {
        Err(PermError::TooShort(d))
    } else if d > MAX_INTERVALS {
        Err(PermError::TooLong(d))
    } else {
        Ok(())
    }
}

fn inverse_positions(row: &[Symbol]) -> Vec<usize> {
    let mut pos = vec![0; row.len()];
    for (j, &s) in row.iter().enumerate() {
        pos[s as usize] = j + 1;
    }
    pos
}

fn row_text(alphabet: &Alphabet, row: &[Symbol]) -> String {
    row.iter()
        .map(|&s| alphabet.token(s))
        .collect::<Vec<_>>()
        .join(" ")
}
