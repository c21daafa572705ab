use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A `+1`/`-1` vector of length `k`, packed one bit per entry (set bit means
/// `-1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignTuple {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl SignTuple {
    pub fn all_ones(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// Builds a tuple from integer entries, each of which must be `+1` or `-1`.
    pub fn from_signs<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let mut words = Vec::new();
        let mut len = 0;
        for e in entries {
            let e: i64 = e.into();
            if len % 64 == 0 {
                words.push(0);
            }
            match e {
                1 => {}
                -1 => words[len / 64] |= 1 << (len % 64),
                other => return Err(Error::InvalidSign(other)),
            }
            len += 1;
        }
        Ok(Self { len, words })
    }

    /// Builds a tuple from the low `len` bits of `mask` (bit `i` set means
    /// entry `i` is `-1`). `len` must not exceed 64.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        Self {
            len,
            words: if len == 0 { vec![] } else { vec![mask] },
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn entry(&self, i: usize) -> i8 {
        assert!(i < self.len);
        if self.words[i / 64] >> (i % 64) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len).map(|i| self.entry(i)).collect()
    }

    pub fn minus_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Dot product; always has the parity of `k`.
    pub fn dot(&self, other: &Self) -> Result<i64> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self.dot_unchecked(other))
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &Self) -> i64 {
        let diff: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        self.len as i64 - 2 * i64::from(diff)
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    /// Entrywise product.
    pub fn hadamard_product(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub fn with_flipped(&self, i: usize) -> Self {
        assert!(i < self.len);
        let mut out = self.clone();
        out.words[i / 64] ^= 1 << (i % 64);
        out
    }

    /// First entry is `+1`.
    pub fn is_canonical(&self) -> bool {
        self.len == 0 || self.entry(0) == 1
    }

    /// The representative of `{t, -t}` whose first entry is `+1`.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.negated()
        }
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl Ord for SignTuple {
    /// Lexicographic on entries, `+1` before `-1`; shorter tuples first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.len {
                match self.entry(i).cmp(&other.entry(i)) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SignTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for SignTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.signs().serialize(serializer)
    }
}

impl fmt::Display for SignTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if self.entry(i) == 1 { "+1" } else { "-1" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Maximality {
    Certified,
    LowerBoundOnly,
}

/// Why a family size is known to be maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalityProof {
    /// Branch and bound over canonical tuples ran to completion.
    ExhaustiveSearch,
    /// `k` mutually orthogonal vectors in `R^k` cannot be extended.
    FullFamily,
    /// Odd `k`: every dot product of two tuples is odd.
    OddLength,
    /// `k = 2 mod 4`: three mutually orthogonal tuples force `4 | k`.
    ThreeVectorObstruction,
}

/// Mutually orthogonal sign tuples of a common length, kept in canonical form:
/// first member all-ones, every member starting with `+1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalFamily {
    k: usize,
    members: Vec<SignTuple>,
    maximality: Maximality,
    proof: Option<MaximalityProof>,
}

impl OrthogonalFamily {
    /// Validates orthogonality and distinctness, then normalises to canonical
    /// form by flipping columns on the first member's `-1` entries and
    /// negating members whose first entry is `-1`.
    pub fn new(k: usize, members: Vec<SignTuple>) -> Result<Self> {
        for m in &members {
            if m.len() != k {
                return Err(Error::LengthMismatch {
                    left: k,
                    right: m.len(),
                });
            }
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let d = members[i].dot_unchecked(&members[j]);
                if members[i] == members[j] {
                    return Err(Error::DuplicateMember(i, j));
                }
                if d != 0 {
                    return Err(Error::NotOrthogonal {
                        first: i,
                        second: j,
                        value: d,
                    });
                }
            }
        }
        let members = match members.first() {
            None => members,
            Some(first) => {
                let pivot = first.clone();
                members
                    .iter()
                    .map(|m| m.hadamard_product(&pivot).map(|t| t.canonical()))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(Self {
            k,
            members,
            maximality: Maximality::LowerBoundOnly,
            proof: None,
        })
    }

    pub(crate) fn certify(mut self, proof: MaximalityProof) -> Self {
        self.maximality = Maximality::Certified;
        self.proof = Some(proof);
        self
    }

    pub(crate) fn lower_bound(mut self) -> Self {
        self.maximality = Maximality::LowerBoundOnly;
        self.proof = None;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[SignTuple] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn maximality(&self) -> Maximality {
        self.maximality
    }

    pub fn proof(&self) -> Option<MaximalityProof> {
        self.proof
    }

    /// Re-checks pairwise orthogonality in integer arithmetic.
    pub fn is_orthogonal(&self) -> bool {
        self.members.iter().enumerate().all(|(i, u)| {
            self.members[i + 1..]
                .iter()
                .all(|v| u.dot_unchecked(v) == 0)
        })
    }
}
