//! Alphabets, words and validated forbidden sets.
//!
//! Symbols are opaque indices into an ordered [`Alphabet`]; every derived
//! ordering (of words, states, edges) follows alphabet order.

mod text;

use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub use text::parse_forbidden_set;

/// Rendering used for the empty word.
pub const EPSILON: &str = "ε";

/// A symbol of an [`Alphabet`], identified by its position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u16);

impl Symbol {
    pub fn new(index: usize) -> Self {
        Symbol(u16::try_from(index).expect("alphabet index exceeds u16"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered finite set of named symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::Parse {
                line: 0,
                message: "alphabet too large".into(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("invalid symbol name {name:?}"),
                });
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// Alphabet whose symbols are the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = Symbol> + Clone + 'static {
        (0..self.names.len()).map(Symbol::new)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.names[symbol.index()]
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(Symbol::new)
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol.index() < self.names.len()
    }

    /// True when every symbol name is a single character, so words can be
    /// written as plain concatenations.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return EPSILON.to_string();
        }
        let sep = if self.is_compact() { "" } else { " " };
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word written as concatenated single-character names, or as
    /// whitespace-separated names when any name is longer than one character.
    /// `ε` denotes the empty word unless it is itself a symbol.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == EPSILON && self.symbol(EPSILON).is_none() {
            return Ok(Word::empty());
        }
        let lookup = |name: &str| {
            self.symbol(name)
                .ok_or_else(|| Error::SymbolOutsideAlphabet(name.to_string()))
        };
        if self.is_compact() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect()
        } else {
            text.split_whitespace().map(lookup).collect()
        }
    }

    /// All words of exactly `len` symbols, in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| self.symbols().map(move |a| w.pushed(a)))
                .collect();
        }
        out
    }
}

/// A finite sequence of symbols. Ordered lexicographically, so `ε` is least.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `a^n`
    pub fn repeat(symbol: Symbol, n: usize) -> Self {
        Word(vec![symbol; n])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, symbol: Symbol) {
        self.0.push(symbol);
    }

    /// Copy of `self` with `symbol` appended.
    pub fn pushed(&self, symbol: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(symbol);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.0.len() - len..].to_vec())
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    /// True when every symbol equals `symbol` (including the empty word).
    pub fn is_power_of(&self, symbol: Symbol) -> bool {
        self.0.iter().all(|&s| s == symbol)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

/// Whether `u` occurs as a contiguous block of `x`. `ε` occurs everywhere.
pub fn is_subword(u: &[Symbol], x: &[Symbol]) -> bool {
    u.is_empty() || (u.len() <= x.len() && x.windows(u.len()).any(|w| w == u))
}

/// Lengths of the longest common prefix and longest common suffix of two
/// distinct words.
pub fn prefix_suffix_stats(w1: &[Symbol], w2: &[Symbol]) -> Result<(usize, usize)> {
    if w1 == w2 {
        return Err(Error::IdenticalWords);
    }
    let prefix = w1.iter().zip(w2).take_while(|(a, b)| a == b).count();
    let suffix = w1
        .iter()
        .rev()
        .zip(w2.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    Ok((prefix, suffix))
}

/// A nonempty, non-redundant set of nonempty forbidden words.
///
/// Words are stored sorted and deduplicated, so construction does not depend
/// on input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenSet {
    alphabet: Alphabet,
    words: Vec<Word>,
    max_len: usize,
}

impl ForbiddenSet {
    pub fn new(alphabet: Alphabet, raw_words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = raw_words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::EmptySet);
        }
        for w in &words {
            if w.is_empty() {
                return Err(Error::EmptyWordForbidden);
            }
            if let Some(&s) = w.iter().find(|&&s| !alphabet.contains(s)) {
                return Err(Error::SymbolOutsideAlphabet(format!("#{}", s.index())));
            }
        }
        words.sort();
        words.dedup();
        for (i, u) in words.iter().enumerate() {
            for (j, w) in words.iter().enumerate() {
                if i != j && is_subword(u, w) {
                    return Err(Error::RedundantWord {
                        shorter: alphabet.render(u),
                        longer: alphabet.render(w),
                    });
                }
            }
        }
        let max_len = words.iter().map(|w| w.len()).max().unwrap_or(0);
        Ok(ForbiddenSet {
            alphabet,
            words,
            max_len,
        })
    }

    /// Convenience constructor from symbol names and written words.
    pub fn from_strs(alphabet: &[&str], words: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet.iter().copied())?;
        let words = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        ForbiddenSet::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Length of the longest forbidden word.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// True when all forbidden words have the same length.
    pub fn equal_lengths(&self) -> bool {
        self.words.iter().all(|w| w.len() == self.max_len)
    }

    /// True when every single symbol is forbidden, so the only admissible
    /// word is `ε`.
    pub fn is_degenerate(&self) -> bool {
        self.alphabet
            .symbols()
            .all(|a| self.words.iter().any(|w| w.symbols() == [a]))
    }

    /// Whether `word` avoids every forbidden word.
    pub fn admits(&self, word: &[Symbol]) -> bool {
        !self.words.iter().any(|f| is_subword(f, word))
    }

    /// Whether some forbidden word is a suffix of `word`.
    pub fn ends_with_forbidden(&self, word: &[Symbol]) -> bool {
        self.words.iter().any(|f| word.ends_with(f))
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        self.alphabet.render(word)
    }

    /// Text form accepted by [`parse_forbidden_set`].
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet.names().join(" "));
        for w in &self.words {
            out.push_str(&self.alphabet.render(w));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ForbiddenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words.iter().map(|w| self.render(w)).collect();
        write!(
            f,
            "{{{}}} over {{{}}}",
            words.join(", "),
            self.alphabet.names().join(",")
        )
    }
}
