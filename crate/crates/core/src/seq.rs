//! Sign sequences, alternating and constrained sequences, and binary vertices.
//!
//! An alternating sequence is a word over `{-1, 0, 1}` whose nonzero entries
//! read `1, -1, 1, ..., -1, 1`. Equivalently every prefix sum lies in `{0, 1}`
//! and the total is 1; that second form is what [`is_alternating`] checks in a
//! single pass. Prefix sums of an alternating sequence, with a leading zero,
//! form a constrained sequence (binary, starting at 0 and ending at 1), and
//! [`differences`] / [`partial_sums`] convert between the two.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest `n` accepted by [`enumerate_alternating`].
pub const MAX_ENUMERATION_LEN: usize = 24;

/// Vertices are packed into a `u64`, which bounds their length.
pub const MAX_VERTEX_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("sequence is empty")]
    Empty,
    #[error("entry {index} is {value}, expected one of -1, 0, 1")]
    BadSignEntry { index: usize, value: i64 },
    #[error("entry {index} is {value}, expected 0 or 1")]
    BadBinaryEntry { index: usize, value: i64 },
    #[error("entry {index} is -1 but no +1 precedes it since the last -1")]
    MinusWithoutPlus { index: usize },
    #[error("entry {index} is +1 but the previous nonzero entry is also +1")]
    RepeatedPlus { index: usize },
    #[error("no nonzero entry; an alternating sequence starts and ends with +1")]
    AllZero,
    #[error("last nonzero entry is -1; an alternating sequence ends with +1")]
    EndsWithMinus,
    #[error("constrained sequence needs at least 2 entries, got {0}")]
    TooShort(usize),
    #[error("first entry must be 0")]
    FirstNotZero,
    #[error("last entry must be 1")]
    LastNotOne,
    #[error("length {len} outside supported range 1..={max}")]
    LengthOutOfRange { len: usize, max: usize },
    #[error("parse error at position {position}: unexpected {found:?}")]
    Parse { position: usize, found: String },
}

/// A nonempty word over `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequence(Vec<i8>);

impl SignSequence {
    pub fn new(entries: Vec<i8>) -> Result<Self, SeqError> {
        if entries.is_empty() {
            return Err(SeqError::Empty);
        }
        if let Some(i) = entries.iter().position(|e| !(-1..=1).contains(e)) {
            return Err(SeqError::BadSignEntry {
                index: i + 1,
                value: entries[i] as i64,
            });
        }
        Ok(SignSequence(entries))
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self, SeqError> {
        if let Some(i) = entries.iter().position(|e| !(-1..=1).contains(e)) {
            return Err(SeqError::BadSignEntry {
                index: i + 1,
                value: entries[i],
            });
        }
        SignSequence::new(entries.iter().map(|&e| e as i8).collect())
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_compact(&self) -> String {
        to_compact(&self.0)
    }

    pub fn to_numeric(&self) -> String {
        to_numeric(&self.0)
    }
}

impl FromStr for SignSequence {
    type Err = SeqError;

    /// Accepts either space-separated integers (`"1 0 -1 1"`) or the compact
    /// form with one character per entry (`"+0-+"`). A Unicode minus sign is
    /// read as `-`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(SeqError::Empty);
        }
        let compact = tokens.len() == 1
            && tokens[0]
                .chars()
                .all(|c| matches!(c, '+' | '-' | '\u{2212}' | '0'));
        let entries = if compact {
            tokens[0]
                .chars()
                .enumerate()
                .map(|(i, c)| match c {
                    '+' => Ok(1),
                    '0' => Ok(0),
                    '-' | '\u{2212}' => Ok(-1),
                    other => Err(SeqError::Parse {
                        position: i + 1,
                        found: other.to_string(),
                    }),
                })
                .collect::<Result<Vec<i8>, _>>()?
        } else {
            tokens
                .iter()
                .enumerate()
                .map(|(i, tok)| {
                    parse_sign_token(tok).ok_or_else(|| SeqError::Parse {
                        position: i + 1,
                        found: tok.to_string(),
                    })
                })
                .collect::<Result<Vec<i8>, _>>()?
        };
        SignSequence::new(entries)
    }
}

/// Parses one of `-1`, `0`, `1`, `+1` (Unicode minus allowed).
pub(crate) fn parse_sign_token(tok: &str) -> Option<i8> {
    match tok {
        "1" | "+1" => Some(1),
        "0" => Some(0),
        "-1" | "\u{2212}1" => Some(-1),
        _ => None,
    }
}

pub(crate) fn to_compact(entries: &[i8]) -> String {
    entries
        .iter()
        .map(|e| match e {
            1 => '+',
            0 => '0',
            _ => '-',
        })
        .collect()
}

pub(crate) fn to_numeric(entries: &[i8]) -> String {
    entries
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Locates the first violation of the alternating pattern, if any.
fn alternating_violation(entries: &[i8]) -> Option<SeqError> {
    if entries.is_empty() {
        return Some(SeqError::Empty);
    }
    let mut sum: i8 = 0;
    let mut any_nonzero = false;
    for (i, &e) in entries.iter().enumerate() {
        if !(-1..=1).contains(&e) {
            return Some(SeqError::BadSignEntry {
                index: i + 1,
                value: e as i64,
            });
        }
        sum += e;
        any_nonzero |= e != 0;
        if sum < 0 {
            return Some(SeqError::MinusWithoutPlus { index: i + 1 });
        }
        if sum > 1 {
            return Some(SeqError::RepeatedPlus { index: i + 1 });
        }
    }
    match (any_nonzero, sum) {
        (false, _) => Some(SeqError::AllZero),
        (true, 0) => Some(SeqError::EndsWithMinus),
        _ => None,
    }
}

/// Single left-to-right pass over the prefix sums.
pub fn is_alternating_slice(entries: &[i8]) -> bool {
    alternating_violation(entries).is_none()
}

pub fn is_alternating(s: &SignSequence) -> bool {
    is_alternating_slice(s.entries())
}

/// A [`SignSequence`] known to satisfy the alternating pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternatingSequence(Vec<i8>);

impl AlternatingSequence {
    pub fn new(entries: Vec<i8>) -> Result<Self, SeqError> {
        match alternating_violation(&entries) {
            Some(err) => Err(err),
            None => Ok(AlternatingSequence(entries)),
        }
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    pub fn to_compact(&self) -> String {
        to_compact(&self.0)
    }

    pub fn to_numeric(&self) -> String {
        to_numeric(&self.0)
    }
}

impl TryFrom<SignSequence> for AlternatingSequence {
    type Error = SeqError;

    fn try_from(s: SignSequence) -> Result<Self, Self::Error> {
        AlternatingSequence::new(s.0)
    }
}

impl FromStr for AlternatingSequence {
    type Err = SeqError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.parse::<SignSequence>()?.try_into()
    }
}

impl fmt::Display for AlternatingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

/// Binary sequence `σ_0, ..., σ_n` with `σ_0 = 0` and `σ_n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstrainedSequence(Vec<u8>);

impl ConstrainedSequence {
    pub fn new(entries: &[i64]) -> Result<Self, SeqError> {
        if entries.len() < 2 {
            return Err(SeqError::TooShort(entries.len()));
        }
        if let Some(i) = entries.iter().position(|e| !(0..=1).contains(e)) {
            return Err(SeqError::BadBinaryEntry {
                index: i,
                value: entries[i],
            });
        }
        if entries[0] != 0 {
            return Err(SeqError::FirstNotZero);
        }
        if entries[entries.len() - 1] != 1 {
            return Err(SeqError::LastNotOne);
        }
        Ok(ConstrainedSequence(
            entries.iter().map(|&e| e as u8).collect(),
        ))
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// The `n` of `σ_0, ..., σ_n`, one less than the number of entries.
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }
}

pub fn is_constrained(s: &[i64]) -> bool {
    ConstrainedSequence::new(s).is_ok()
}

/// `α_i = σ_i - σ_{i-1}`.
pub fn differences(sigma: &ConstrainedSequence) -> AlternatingSequence {
    let alpha = sigma
        .0
        .windows(2)
        .map(|w| w[1] as i8 - w[0] as i8)
        .collect::<Vec<_>>();
    debug_assert!(is_alternating_slice(&alpha));
    AlternatingSequence(alpha)
}

/// `σ_i = α_1 + ... + α_i`, with `σ_0 = 0`.
pub fn partial_sums(alpha: &AlternatingSequence) -> ConstrainedSequence {
    let mut sigma = Vec::with_capacity(alpha.len() + 1);
    let mut acc: i8 = 0;
    sigma.push(0u8);
    for &a in &alpha.0 {
        acc += a;
        sigma.push(acc as u8);
    }
    ConstrainedSequence(sigma)
}

/// All alternating sequences of length `n`, lexicographic with `-1 < 0 < 1`.
///
/// There are `2^(n-1)` of them: every odd-size support carries exactly one.
pub fn enumerate_alternating(n: usize) -> Result<Vec<AlternatingSequence>, SeqError> {
    if n == 0 || n > MAX_ENUMERATION_LEN {
        return Err(SeqError::LengthOutOfRange {
            len: n,
            max: MAX_ENUMERATION_LEN,
        });
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    let mut buf = Vec::with_capacity(n);
    extend_alternating(n, 0, &mut buf, &mut out);
    Ok(out)
}

fn extend_alternating(n: usize, sum: i8, buf: &mut Vec<i8>, out: &mut Vec<AlternatingSequence>) {
    if buf.len() == n {
        if sum == 1 {
            out.push(AlternatingSequence(buf.clone()));
        }
        return;
    }
    for e in [-1i8, 0, 1] {
        let next = sum + e;
        if next == 0 || next == 1 {
            buf.push(e);
            extend_alternating(n, next, buf, out);
            buf.pop();
        }
    }
}

/// A binary word `(a_1, ..., a_n)`, the element type of the poset.
///
/// Coordinates are packed with `a_1` in the most significant of the `n` used
/// bits, so comparing `bits` for equal lengths is lexicographic comparison of
/// the coordinate tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    len: u8,
    bits: u64,
}

impl Vertex {
    pub fn new(len: usize, bits: u64) -> Result<Self, SeqError> {
        if len == 0 || len > MAX_VERTEX_LEN {
            return Err(SeqError::LengthOutOfRange {
                len,
                max: MAX_VERTEX_LEN,
            });
        }
        if bits & !mask(len) != 0 {
            return Err(SeqError::BadBinaryEntry {
                index: 0,
                value: bits as i64,
            });
        }
        Ok(Vertex {
            len: len as u8,
            bits,
        })
    }

    /// Caller guarantees `1 <= len <= 64` and `bits` fits in `len` bits.
    #[inline]
    pub(crate) fn from_raw(len: usize, bits: u64) -> Self {
        debug_assert!((1..=MAX_VERTEX_LEN).contains(&len) && bits & !mask(len) == 0);
        Vertex {
            len: len as u8,
            bits,
        }
    }

    pub fn from_coords(coords: &[i64]) -> Result<Self, SeqError> {
        if coords.is_empty() || coords.len() > MAX_VERTEX_LEN {
            return Err(SeqError::LengthOutOfRange {
                len: coords.len(),
                max: MAX_VERTEX_LEN,
            });
        }
        let mut bits = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if !(0..=1).contains(&c) {
                return Err(SeqError::BadBinaryEntry {
                    index: i + 1,
                    value: c,
                });
            }
            bits = (bits << 1) | c as u64;
        }
        Ok(Vertex::from_raw(coords.len(), bits))
    }

    pub fn zero(n: usize) -> Self {
        Vertex::from_raw(n, 0)
    }

    pub fn ones(n: usize) -> Self {
        Vertex::from_raw(n, mask(n))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Coordinate `a_i`, 1-based.
    pub fn coord(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len(), "coordinate {i} out of range");
        ((self.bits >> (self.len() - i)) & 1) as u8
    }

    pub fn coords(&self) -> Vec<u8> {
        (1..=self.len()).map(|i| self.coord(i)).collect()
    }

    /// Number of coordinates equal to 1.
    #[inline]
    pub fn rank(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Flips every coordinate.
    #[inline]
    pub fn complement(&self) -> Self {
        Vertex::from_raw(self.len(), self.bits ^ mask(self.len()))
    }

    /// Coordinatewise `self - other` as a sign sequence.
    pub fn difference(&self, other: &Vertex) -> Vec<i8> {
        assert_eq!(self.len, other.len, "vertex length mismatch");
        (1..=self.len())
            .map(|i| self.coord(i) as i8 - other.coord(i) as i8)
            .collect()
    }

    /// `(0,1,0)` style rendering.
    pub fn to_tuple_string(&self) -> String {
        let inner = self
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("({inner})")
    }
}

#[inline]
pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            f.write_str(if self.coord(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = SeqError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Err(SeqError::Empty);
        }
        let len = text.chars().count();
        if len > MAX_VERTEX_LEN {
            return Err(SeqError::LengthOutOfRange {
                len,
                max: MAX_VERTEX_LEN,
            });
        }
        let mut bits = 0u64;
        for (i, c) in text.chars().enumerate() {
            let b = match c {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(SeqError::Parse {
                        position: i + 1,
                        found: other.to_string(),
                    })
                }
            };
            bits = (bits << 1) | b;
        }
        Ok(Vertex::from_raw(len, bits))
    }
}

impl serde::Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
