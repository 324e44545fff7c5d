use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    C,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::C => "C",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Kind::A),
            "C" | "c" => Ok(Kind::C),
            _ => Err(Error::InvalidAlphabet(format!("unknown type {s:?}"))),
        }
    }
}

/// Letters are stored as their position in the ordered alphabet, starting at 1.
/// In type C the order is `1 < 1b < 2 < 2b < ...`, so the position of `p` is
/// `2p-1` and that of `pb` is `2p`; this position is the embedding into type A.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    kind: Kind,
    n: usize,
}

const MAX_RANK: usize = 60;

impl Alphabet {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        let min = match kind {
            Kind::A => 2,
            Kind::C => 1,
        };
        if n < min || n > MAX_RANK {
            return Err(Error::InvalidAlphabet(format!("type {kind} needs {min} <= n <= {MAX_RANK}, got {n}")));
        }
        Ok(Alphabet { kind, n })
    }

    pub fn type_a(n: usize) -> Result<Self> {
        Self::new(Kind::A, n)
    }

    pub fn type_c(n: usize) -> Result<Self> {
        Self::new(Kind::C, n)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of letters.
    pub fn size(&self) -> usize {
        match self.kind {
            Kind::A => self.n,
            Kind::C => 2 * self.n,
        }
    }

    /// Largest size of a proper row set, which is also the number of matrix columns used by minors.
    pub fn max_set_len(&self) -> usize {
        match self.kind {
            Kind::A => self.n - 1,
            Kind::C => self.n,
        }
    }

    /// Number of torus coordinates.
    pub fn rank_coords(&self) -> usize {
        self.n
    }

    /// Torus weight of a letter: (0-based epsilon index, sign).
    pub fn weight_of(&self, x: u8) -> (usize, i32) {
        letter_weight(self.kind, x)
    }

    pub fn set(&self, letters: &[u8]) -> Result<RowSet> {
        let mut v = letters.to_vec();
        v.sort_unstable();
        if v.is_empty() {
            return Err(Error::InvalidRowSet("empty row set".into()));
        }
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidRowSet(format!("repeated letter {}", letter_token(self.kind, w[0]))));
            }
        }
        if v[0] == 0 || v[v.len() - 1] as usize > self.size() {
            return Err(Error::InvalidRowSet(format!("letter out of range for {self}")));
        }
        if v.len() > self.max_set_len() {
            return Err(Error::InvalidRowSet(format!(
                "{} letters exceed the proper bound {} for {self}",
                v.len(),
                self.max_set_len()
            )));
        }
        Ok(RowSet { kind: self.kind, elems: v })
    }

    /// The empty set, used only as the base of a symplectic sum relation.
    pub fn empty_set(&self) -> RowSet {
        RowSet { kind: self.kind, elems: Vec::new() }
    }

    /// Parses `"1,2b,3"`. Without commas and with at most nine unbarred values,
    /// every digit is its own letter, so `"123"` is `{1,2,3}`.
    pub fn parse_set(&self, text: &str) -> Result<RowSet> {
        self.parse_set_at(text, 0)
    }

    fn parse_set_at(&self, text: &str, base: usize) -> Result<RowSet> {
        if let Some(p) = text.char_indices().find(|(_, c)| !c.is_ascii()).map(|(p, _)| p) {
            return Err(parse_err(base + p, "non-ASCII character"));
        }
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        if text.contains(',') {
            let mut start = 0;
            for piece in text.split(',') {
                let lead = piece.len() - piece.trim_start().len();
                tokens.push((start + lead, piece.trim()));
                start += piece.len() + 1;
            }
        } else if self.n <= 9 {
            let bytes = text.as_bytes();
            let mut p = 0;
            while p < bytes.len() {
                if bytes[p] == b' ' {
                    p += 1;
                    continue;
                }
                let len = if p + 1 < bytes.len() && bytes[p + 1] == b'b' { 2 } else { 1 };
                tokens.push((p, &text[p..p + len]));
                p += len;
            }
        } else {
            let lead = text.len() - text.trim_start().len();
            tokens.push((lead, text.trim()));
        }
        if tokens.is_empty() || (tokens.len() == 1 && tokens[0].1.is_empty()) {
            return Err(parse_err(base, "empty subset"));
        }
        let mut letters = Vec::with_capacity(tokens.len());
        for (pos, tok) in tokens {
            let x = self.parse_letter(tok).map_err(|m| parse_err(base + pos, &format!("{m} in token {tok:?}")))?;
            if letters.contains(&x) {
                return Err(parse_err(base + pos, &format!("repeated letter {tok:?}")));
            }
            letters.push(x);
        }
        self.set(&letters).map_err(|e| parse_err(base, &e.to_string()))
    }

    fn parse_letter(&self, tok: &str) -> std::result::Result<u8, String> {
        if tok.is_empty() {
            return Err("empty token".into());
        }
        let (digits, barred) = match tok.strip_suffix('b') {
            Some(d) => (d, true),
            None => (tok, false),
        };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err("expected a number with optional suffix b".into());
        }
        let v: usize = digits.parse().map_err(|_| "number too large".to_string())?;
        if v == 0 || v > self.n {
            return Err(format!("value {v} outside 1..{}", self.n));
        }
        match (self.kind, barred) {
            (Kind::A, true) => Err("barred letters need type C".into()),
            (Kind::A, false) => Ok(v as u8),
            (Kind::C, false) => Ok((2 * v - 1) as u8),
            (Kind::C, true) => Ok((2 * v) as u8),
        }
    }

    /// Parses factors separated by `|`.
    pub fn parse_product(&self, text: &str) -> Result<Vec<RowSet>> {
        let mut out = Vec::new();
        let mut start = 0;
        for piece in text.split('|') {
            out.push(self.parse_set_at(piece, start)?);
            start += piece.len() + 1;
        }
        Ok(out)
    }

    pub fn sets_of_size(&self, size: usize) -> Vec<RowSet> {
        let mut out = Vec::new();
        if size == 0 || size > self.size() {
            return out;
        }
        let mut cur: Vec<u8> = (1..=size as u8).collect();
        let top = self.size() as u8;
        loop {
            out.push(RowSet { kind: self.kind, elems: cur.clone() });
            let mut p = size;
            while p > 0 && cur[p - 1] == top - (size - p) as u8 {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            cur[p - 1] += 1;
            for q in p..size {
                cur[q] = cur[q - 1] + 1;
            }
        }
        out
    }

    /// All proper row sets, ordered by size then lexicographically.
    pub fn proper_sets(&self) -> Vec<RowSet> {
        (1..=self.max_set_len()).flat_map(|l| self.sets_of_size(l)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.n)
    }
}

fn parse_err(position: usize, message: &str) -> Error {
    Error::Parse { position, message: message.to_string() }
}

pub(crate) fn letter_weight(kind: Kind, x: u8) -> (usize, i32) {
    match kind {
        Kind::A => (x as usize - 1, 1),
        Kind::C => ((x as usize - 1) / 2, if x % 2 == 1 { 1 } else { -1 }),
    }
}

pub fn letter_token(kind: Kind, x: u8) -> String {
    match kind {
        Kind::A => x.to_string(),
        Kind::C if x % 2 == 1 => x.div_ceil(2).to_string(),
        Kind::C => format!("{}b", x / 2),
    }
}

/// A strictly increasing set of letters indexing a minor.
///
/// The derived `Ord` is a storage order only; the order used by the theory is
/// [`crate::combinatorics::compare_sets`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowSet {
    kind: Kind,
    elems: Vec<u8>,
}

impl RowSet {
    /// Builds a set from sorted, distinct letters without range checks. May be empty.
    pub(crate) fn from_sorted(kind: Kind, elems: Vec<u8>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        RowSet { kind, elems }
    }


    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn letters(&self) -> &[u8] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: u8) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Type-A set with the same letter positions (the embedding p -> 2p-1, pb -> 2p).
    pub fn embed(&self) -> RowSet {
        RowSet { kind: Kind::A, elems: self.elems.clone() }
    }

    pub fn weight(&self, coords: usize) -> Vec<i32> {
        let mut w = vec![0; coords];
        for &x in &self.elems {
            let (i, s) = letter_weight(self.kind, x);
            w[i] += s;
        }
        w
    }
}

impl fmt::Display for RowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.elems.iter().map(|&x| letter_token(self.kind, x)).collect();
        f.write_str(&toks.join(","))
    }
}
