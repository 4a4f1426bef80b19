//! Complete deterministic automata, state sets and words.
//!
//! States are numbered `1..=n` in every public signature. Internally each
//! letter is stored as a full transformation over `0..n`, so applying a
//! letter to a set is a gather over the set's members.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of states a [`Dfa`] may have.
pub const MAX_STATES: usize = 64;

/// A subset of `{1, ..., 64}` stored as a bit pattern (bit `i` is state `i + 1`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The whole state set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_STATES, "at most {MAX_STATES} states");
        if n == 64 {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(q: usize) -> Self {
        assert!((1..=MAX_STATES).contains(&q), "state {q} out of range");
        StateSet(1u64 << (q - 1))
    }

    /// Builds a set from 1-indexed states, checking each against `n`.
    pub fn from_states<I: IntoIterator<Item = usize>>(n: usize, states: I) -> Result<Self> {
        let mut bits = 0u64;
        for q in states {
            if q == 0 || q > n {
                return Err(Error::InvalidStateSet(format!("state {q} out of range 1..={n}")));
            }
            bits |= 1u64 << (q - 1);
        }
        Ok(StateSet(bits))
    }

    pub fn contains(self, q: usize) -> bool {
        (1..=MAX_STATES).contains(&q) && self.0 & (1u64 << (q - 1)) != 0
    }

    pub fn insert(&mut self, q: usize) {
        *self = *self | StateSet::singleton(q);
    }

    pub fn remove(&mut self, q: usize) {
        self.0 &= !StateSet::singleton(q).0;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Complement relative to `{1, ..., n}`.
    pub fn complement(self, n: usize) -> Self {
        StateSet(!self.0 & StateSet::full(n).0)
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member states in increasing order, 1-indexed.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.indices().map(|i| i + 1)
    }

    /// Member states as 0-based bit positions.
    pub(crate) fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::ops::BitOr for StateSet {
    type Output = StateSet;
    fn bitor(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for StateSet {
    type Output = StateSet;
    fn bitand(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 & rhs.0)
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "q{q}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word over a [`Dfa`]'s alphabet, as letter indices in alphabet order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// A complete deterministic finite automaton on states `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    n: usize,
    letters: Vec<String>,
    // delta[l][i] is the 0-based image of 0-based state i under letter l
    delta: Vec<Vec<u8>>,
}

fn valid_letter_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Dfa {
    /// Builds an automaton from 1-indexed image tables, one per letter.
    pub fn new<S: Into<String>>(n: usize, letters: Vec<S>, images: Vec<Vec<usize>>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if n == 0 {
            return Err(Error::InvalidAutomaton("an automaton needs at least one state".into()));
        }
        if n > MAX_STATES {
            return Err(Error::TooManyStates(n));
        }
        if letters.is_empty() {
            return Err(Error::InvalidAutomaton("an automaton needs at least one letter".into()));
        }
        if images.len() != letters.len() {
            return Err(Error::InvalidAutomaton(format!(
                "{} letters but {} transition rows",
                letters.len(),
                images.len()
            )));
        }
        let mut seen = HashMap::new();
        for name in &letters {
            if !valid_letter_name(name) {
                return Err(Error::InvalidLetterName(name.clone()));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }
        let mut delta = Vec::with_capacity(images.len());
        for (name, row) in letters.iter().zip(images) {
            if row.len() != n {
                return Err(Error::InvalidAutomaton(format!(
                    "letter `{name}` has {} images, expected {n}",
                    row.len()
                )));
            }
            let mut map = Vec::with_capacity(n);
            for q in row {
                if q == 0 || q > n {
                    return Err(Error::InvalidAutomaton(format!(
                        "letter `{name}` maps to state {q}, outside 1..={n}"
                    )));
                }
                map.push((q - 1) as u8);
            }
            delta.push(map);
        }
        Ok(Dfa { n, letters, delta })
    }

    /// Builds an automaton from a closure `(letter index, state) -> state`, 1-indexed states.
    pub fn from_fn<S, F>(n: usize, letters: Vec<S>, mut f: F) -> Result<Self>
    where
        S: Into<String>,
        F: FnMut(usize, usize) -> usize,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        let images = (0..letters.len()).map(|l| (1..=n).map(|q| f(l, q)).collect()).collect();
        Dfa::new(n, letters, images)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter_name(&self, letter: usize) -> &str {
        &self.letters[letter]
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    /// All states as a set.
    pub fn states(&self) -> StateSet {
        StateSet::full(self.n)
    }

    /// Image of 1-indexed state `q` under a letter.
    pub fn image(&self, q: usize, letter: usize) -> usize {
        self.delta[letter][q - 1] as usize + 1
    }

    /// The letter's transformation on 0-based states.
    pub fn letter_map(&self, letter: usize) -> &[u8] {
        &self.delta[letter]
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&l| l >= self.letters.len()) {
            Some(&index) => Err(Error::InvalidWord {
                index,
                alphabet: self.letters.len(),
            }),
            None => Ok(()),
        }
    }

    /// Image of a set under a single letter. The letter index must be valid.
    #[inline]
    pub fn apply_letter(&self, s: StateSet, letter: usize) -> StateSet {
        let map = &self.delta[letter];
        let mut out = 0u64;
        for i in s.indices() {
            out |= 1u64 << map[i];
        }
        StateSet(out)
    }

    /// Image `Sw` of a set under a word.
    pub fn apply(&self, s: StateSet, w: &Word) -> Result<StateSet> {
        self.check_word(w)?;
        Ok(w.letters().iter().fold(s, |acc, &l| self.apply_letter(acc, l)))
    }

    /// Rank of a word: the size of `Qw`.
    pub fn rank(&self, w: &Word) -> Result<usize> {
        Ok(self.apply(self.states(), w)?.len())
    }

    /// The full map `q -> qw` on 0-based states.
    pub fn word_map(&self, w: &Word) -> Result<Vec<u8>> {
        self.check_word(w)?;
        let mut map: Vec<u8> = (0..self.n as u8).collect();
        for &l in w.letters() {
            let m = &self.delta[l];
            for x in map.iter_mut() {
                *x = m[*x as usize];
            }
        }
        Ok(map)
    }

    /// Renders a word with the alphabet's letter names. Single-character
    /// alphabets concatenate letters; otherwise letters are space separated.
    pub fn format_word(&self, w: &Word) -> String {
        if self.letters.iter().all(|l| l.len() == 1) {
            w.letters().iter().map(|&l| self.letters[l].as_str()).collect()
        } else {
            w.letters()
                .iter()
                .map(|&l| self.letters[l].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Parses a word: space separated letter names, or a run of single-character letters.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let lookup = |name: &str| {
            self.letter_index(name)
                .ok_or_else(|| Error::UnknownLetter(name.to_string()))
        };
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(lookup)
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        if let Some(l) = self.letter_index(text) {
            return Ok(Word(vec![l]));
        }
        if self.letters.iter().all(|l| l.len() == 1) {
            return text
                .chars()
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        Err(Error::UnknownLetter(text.to_string()))
    }

    /// Serializes to the line-oriented text format read by [`Dfa::parse`].
    pub fn serialize(&self) -> String {
        let mut out = format!("states: {}\nletters: {}\n", self.n, self.letters.join(" "));
        for (name, map) in self.letters.iter().zip(&self.delta) {
            out.push_str(name);
            out.push(':');
            for &q in map {
                out.push(' ');
                out.push_str(&(q as usize + 1).to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format:
    ///
    /// ```text
    /// states: 3
    /// letters: a b
    /// a: 2 2 3
    /// b: 2 3 1
    /// ```
    ///
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let syntax = |line: usize, msg: &str| Error::Syntax {
            line,
            msg: msg.to_string(),
        };

        let (line, header) = lines.next().ok_or_else(|| syntax(1, "missing `states:` line"))?;
        let n_text = header
            .strip_prefix("states:")
            .ok_or_else(|| syntax(line, "expected `states: <n>`"))?
            .trim();
        let n: usize = n_text
            .parse()
            .map_err(|_| syntax(line, &format!("invalid state count `{n_text}`")))?;
        if n == 0 {
            return Err(syntax(line, "state count must be positive"));
        }
        if n > MAX_STATES {
            return Err(Error::TooManyStates(n));
        }

        let (line, header) = lines
            .next()
            .ok_or_else(|| syntax(line + 1, "missing `letters:` line"))?;
        let letters: Vec<String> = header
            .strip_prefix("letters:")
            .ok_or_else(|| syntax(line, "expected `letters: <name> ...`"))?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if letters.is_empty() {
            return Err(syntax(line, "the alphabet is empty"));
        }
        for (i, name) in letters.iter().enumerate() {
            if !valid_letter_name(name) {
                return Err(Error::InvalidLetterName(name.clone()));
            }
            if letters[..i].contains(name) {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }

        let mut images = Vec::with_capacity(letters.len());
        let mut last_line = line;
        for expected in &letters {
            let (line, row) = lines
                .next()
                .ok_or_else(|| syntax(last_line + 1, &format!("missing transitions for `{expected}`")))?;
            last_line = line;
            let (name, rest) = row
                .split_once(':')
                .ok_or_else(|| syntax(line, "expected `<letter>: <images>`"))?;
            if name.trim() != expected {
                return Err(syntax(
                    line,
                    &format!("expected transitions for `{expected}`, found `{}`", name.trim()),
                ));
            }
            let mut row_images = Vec::with_capacity(n);
            for tok in rest.split_whitespace() {
                let q: usize = tok
                    .parse()
                    .map_err(|_| syntax(line, &format!("invalid state `{tok}`")))?;
                if q == 0 || q > n {
                    return Err(Error::StateRange { line, value: q, n });
                }
                row_images.push(q);
            }
            if row_images.len() != n {
                return Err(syntax(
                    line,
                    &format!("letter `{expected}` has {} images, expected {n}", row_images.len()),
                ));
            }
            images.push(row_images);
        }
        if let Some((line, _)) = lines.next() {
            return Err(syntax(line, "unexpected trailing content"));
        }
        Dfa::new(n, letters, images)
    }

    /// DOT rendering; parallel transitions between the same states share one edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for q in 1..=self.n {
            out.push_str(&format!("  q{q};\n"));
        }
        for src in 0..self.n {
            let mut targets: Vec<(u8, Vec<&str>)> = Vec::new();
            for (name, map) in self.letters.iter().zip(&self.delta) {
                let dst = map[src];
                match targets.iter_mut().find(|(d, _)| *d == dst) {
                    Some((_, names)) => names.push(name),
                    None => targets.push((dst, vec![name])),
                }
            }
            for (dst, names) in targets {
                out.push_str(&format!(
                    "  q{} -> q{} [label=\"{}\"];\n",
                    src + 1,
                    dst as usize + 1,
                    names.join(",")
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for Dfa {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Dfa::parse(s)
    }
}
