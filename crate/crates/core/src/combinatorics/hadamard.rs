//! Hadamard matrices: the exact `A A^t = k I_k` check, Sylvester, Paley and
//! Kronecker constructions, and the correspondence with full orthogonal
//! families.

use std::fmt;

use serde::Serialize;

use super::signs::{MaximalityProof, OrthogonalFamily, SignTuple};
use crate::error::{Error, Result};

/// Largest order the constructors will build unless told otherwise.
pub const DEFAULT_ORDER_CAP: usize = 256;

/// A `k x k` matrix with `+1`/`-1` entries. Being Hadamard is checked, never
/// assumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareSignMatrix {
    order: usize,
    rows: Vec<SignTuple>,
}

impl SquareSignMatrix {
    pub fn from_rows(rows: Vec<SignTuple>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidParams("matrix order must be at least 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::LengthMismatch {
                left: order,
                right: bad.len(),
            });
        }
        Ok(Self { order, rows })
    }

    pub fn from_signs(rows: &[Vec<i8>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| SignTuple::from_signs(r.iter().copied()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[SignTuple] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.rows[r].entry(c)
    }

    /// Copy with entry `(r, c)` negated.
    pub fn with_flipped(&self, r: usize, c: usize) -> Self {
        let mut out = self.clone();
        out.rows[r] = out.rows[r].with_flipped(c);
        out
    }

    /// `A A^t` in exact integer arithmetic.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|u| self.rows.iter().map(|v| u.dot_unchecked(v)).collect())
            .collect()
    }

    /// First pair of rows `(i, j)`, `i < j`, with nonzero inner product.
    pub fn first_violation(&self) -> Option<(usize, usize, i64)> {
        for i in 0..self.order {
            for j in i + 1..self.order {
                let d = self.rows[i].dot_unchecked(&self.rows[j]);
                if d != 0 {
                    return Some((i, j, d));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.order)
            .map(|c| {
                SignTuple::from_signs((0..self.order).map(|r| self.entry(r, c)))
                    .expect("entries are signs")
            })
            .collect();
        Self {
            order: self.order,
            rows,
        }
    }
}

/// `A A^t = k I_k`, exactly. Diagonal entries of `A A^t` equal `k` for any
/// sign matrix, so only off-diagonal products need checking.
pub fn is_hadamard(m: &SquareSignMatrix) -> bool {
    m.first_violation().is_none()
}

/// Sylvester doubling, order `2^m`, under the default cap.
pub fn sylvester(m: u32) -> Result<SquareSignMatrix> {
    sylvester_capped(m, DEFAULT_ORDER_CAP)
}

pub fn sylvester_capped(m: u32, cap: usize) -> Result<SquareSignMatrix> {
    let order = 1usize.checked_shl(m).filter(|&o| o <= cap).ok_or(Error::OrderCap {
        order: 1usize.checked_shl(m).unwrap_or(usize::MAX),
        cap,
    })?;
    // Entry (r, c) is (-1)^{popcount(r & c)}.
    let rows = (0..order)
        .map(|r| {
            SignTuple::from_signs(
                (0..order).map(|c| if (r & c).count_ones() % 2 == 0 { 1i64 } else { -1 }),
            )
            .expect("entries are signs")
        })
        .collect();
    Ok(SquareSignMatrix { order, rows })
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q.is_multiple_of(2) {
        return q == 2;
    }
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Quadratic character modulo the odd prime `q`.
fn legendre(x: u64, q: u64) -> i64 {
    let x = x % q;
    if x == 0 {
        return 0;
    }
    // Euler's criterion.
    let mut result = 1u64;
    let mut base = x;
    let mut e = (q - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Paley I construction of order `q + 1` for a prime `q = 3 mod 4`, under the
/// default cap.
pub fn paley(q: u64) -> Result<SquareSignMatrix> {
    paley_capped(q, DEFAULT_ORDER_CAP)
}

pub fn paley_capped(q: u64, cap: usize) -> Result<SquareSignMatrix> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q % 4 != 3 {
        return Err(Error::NotThreeModFour(q));
    }
    let order = q as usize + 1;
    if order > cap {
        return Err(Error::OrderCap { order, cap });
    }
    // H = I + S with S = [[0, 1^t], [-1, Q]] and Q_{ij} = chi(j - i).
    let entry = |r: usize, c: usize| -> i64 {
        if r == c {
            return 1;
        }
        match (r, c) {
            (0, _) => 1,
            (_, 0) => -1,
            _ => {
                let (i, j) = (r as u64 - 1, c as u64 - 1);
                legendre(j + q - i, q)
            }
        }
    };
    let rows = (0..order)
        .map(|r| SignTuple::from_signs((0..order).map(|c| entry(r, c))).expect("entries are signs"))
        .collect();
    Ok(SquareSignMatrix { order, rows })
}

/// Kronecker product `A (x) B`; Hadamard when both factors are.
pub fn kronecker(a: &SquareSignMatrix, b: &SquareSignMatrix, cap: usize) -> Result<SquareSignMatrix> {
    let order = a.order() * b.order();
    if order > cap {
        return Err(Error::OrderCap { order, cap });
    }
    let rows = (0..order)
        .map(|r| {
            let (ra, rb) = (r / b.order(), r % b.order());
            SignTuple::from_signs((0..order).map(|c| {
                let (ca, cb) = (c / b.order(), c % b.order());
                i64::from(a.entry(ra, ca) * b.entry(rb, cb))
            }))
            .expect("entries are signs")
        })
        .collect();
    Ok(SquareSignMatrix { order, rows })
}

/// Recipe for building a Hadamard matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Construction {
    Sylvester { m: u32 },
    Paley { q: u64 },
    Kronecker {
        left: Box<Construction>,
        right: Box<Construction>,
    },
}

impl Construction {
    pub fn order(&self) -> usize {
        match self {
            Construction::Sylvester { m } => 1 << m,
            Construction::Paley { q } => *q as usize + 1,
            Construction::Kronecker { left, right } => left.order() * right.order(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<SquareSignMatrix> {
        match self {
            Construction::Sylvester { m } => sylvester_capped(*m, cap),
            Construction::Paley { q } => paley_capped(*q, cap),
            Construction::Kronecker { left, right } => {
                kronecker(&left.build(cap)?, &right.build(cap)?, cap)
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Sylvester { m } => write!(f, "sylvester(m={m}, order {})", 1u64 << m),
            Construction::Paley { q } => write!(f, "paley(q={q}, order {})", q + 1),
            Construction::Kronecker { left, right } => write!(f, "kronecker({left}, {right})"),
        }
    }
}

fn paley_prime_for(order: usize) -> Option<u64> {
    let q = order.checked_sub(1)? as u64;
    (is_prime(q) && q % 4 == 3).then_some(q)
}

/// A construction reaching `order`, trying Sylvester, then Paley, then a
/// Kronecker split with the smallest constructible left factor.
pub fn construction_for_order(order: usize, cap: usize) -> Option<Construction> {
    if order == 0 || order > cap {
        return None;
    }
    if order.is_power_of_two() {
        return Some(Construction::Sylvester {
            m: order.trailing_zeros(),
        });
    }
    if let Some(q) = paley_prime_for(order) {
        return Some(Construction::Paley { q });
    }
    kronecker_construction(order, cap)
}

/// A Kronecker product of two smaller constructions reaching `order`, with
/// the smallest possible left factor.
pub fn kronecker_construction(order: usize, cap: usize) -> Option<Construction> {
    if order > cap {
        return None;
    }
    (2..order).filter(|d| order.is_multiple_of(*d)).find_map(|d| {
        Some(Construction::Kronecker {
            left: Box::new(construction_for_order(d, cap)?),
            right: Box::new(construction_for_order(order / d, cap)?),
        })
    })
}

/// Orders up to `cap` reachable by the named method (`sylvester`, `paley`,
/// `kronecker`, or anything else for all constructions).
pub fn reachable_orders(method: &str, cap: usize) -> Vec<usize> {
    (1..=cap)
        .filter(|&k| match method {
            "sylvester" => k.is_power_of_two(),
            "paley" => paley_prime_for(k).is_some(),
            "kronecker" => kronecker_construction(k, cap).is_some(),
            _ => construction_for_order(k, cap).is_some(),
        })
        .collect()
}

/// Rows of a Hadamard matrix as a full orthogonal family (canonical form).
pub fn hadamard_to_family(m: &SquareSignMatrix) -> Result<OrthogonalFamily> {
    if let Some((row_a, row_b, value)) = m.first_violation() {
        return Err(Error::NotHadamard { row_a, row_b, value });
    }
    Ok(OrthogonalFamily::new(m.order(), m.rows().to_vec())?.certify(MaximalityProof::FullFamily))
}

/// A family of `k` mutually orthogonal `k`-tuples stacked as rows.
pub fn family_to_hadamard(f: &OrthogonalFamily) -> Result<SquareSignMatrix> {
    if f.len() != f.k() {
        return Err(Error::IncompleteFamily {
            k: f.k(),
            found: f.len(),
        });
    }
    SquareSignMatrix::from_rows(f.members().to_vec())
}

/// Parses the matrix text format: one row per line, entries `+`, `-`, `+1`
/// or `-1` separated by spaces. Blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<SquareSignMatrix> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let entries = line
            .split_whitespace()
            .map(|tok| match tok {
                "+" | "+1" => Ok(1i64),
                "-" | "-1" => Ok(-1),
                other => Err(Error::Parse {
                    line: idx + 1,
                    message: format!("unexpected token {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(SignTuple::from_signs(entries)?);
    }
    let order = rows.len();
    if let Some((line, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
        return Err(Error::Parse {
            line: line + 1,
            message: format!("row has {} entries, expected {order}", r.len()),
        });
    }
    SquareSignMatrix::from_rows(rows)
}

/// Writes the matrix text format with `+1`/`-1` entries.
pub fn format_matrix(m: &SquareSignMatrix) -> String {
    let mut out = String::with_capacity(m.order() * (3 * m.order() + 1));
    for row in m.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain `A A^t` over `i64` entries.
    fn gram_oracle(m: &SquareSignMatrix) -> Vec<Vec<i64>> {
        let k = m.order();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (0..k).map(|c| i64::from(m.entry(i, c)) * i64::from(m.entry(j, c))).sum())
                    .collect()
            })
            .collect()
    }

    fn is_k_identity(g: &[Vec<i64>], k: usize) -> bool {
        g.iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == if i == j { k as i64 } else { 0 }))
    }

    #[test]
    fn sylvester_small_orders() {
        let h0 = sylvester(0).unwrap();
        assert_eq!(h0.order(), 1);
        assert_eq!(h0.entry(0, 0), 1);
        let h1 = sylvester(1).unwrap();
        assert_eq!(
            (0..2).map(|r| h1.rows()[r].signs()).collect::<Vec<_>>(),
            vec![vec![1, 1], vec![1, -1]]
        );
        assert_eq!(gram_oracle(&h1), vec![vec![2, 0], vec![0, 2]]);
        let h3 = sylvester(3).unwrap();
        assert!(is_k_identity(&gram_oracle(&h3), 8));
        assert!(is_hadamard(&h3));
        assert!(sylvester(9).is_err());
    }

    #[test]
    fn gram_matches_oracle() {
        let h = paley(7).unwrap().with_flipped(2, 5);
        assert_eq!(h.gram(), gram_oracle(&h));
    }

    #[test]
    fn paley_orders() {
        for q in [3u64, 7, 11, 19, 23] {
            let h = paley(q).unwrap();
            assert_eq!(h.order(), q as usize + 1);
            assert!(is_k_identity(&gram_oracle(&h), h.order()), "paley({q})");
            assert!(is_hadamard(&h));
        }
        assert_eq!(paley(5), Err(Error::NotThreeModFour(5)));
        assert_eq!(paley(15), Err(Error::NotPrime(15)));
        assert!(matches!(paley_capped(11, 8), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn corrupted_matrix_fails() {
        let h = sylvester(2).unwrap();
        assert!(is_hadamard(&h));
        let bad = h.with_flipped(1, 2);
        assert!(!is_hadamard(&bad));
        let (_, _, v) = bad.first_violation().unwrap();
        assert_eq!(v.abs(), 2);
        assert!(is_hadamard(&SquareSignMatrix::from_signs(&[vec![1]]).unwrap()));
    }

    #[test]
    fn kronecker_and_recipes() {
        let h = kronecker(&paley(3).unwrap(), &sylvester(1).unwrap(), 256).unwrap();
        assert_eq!(h.order(), 8);
        assert!(is_hadamard(&h));
        let c = construction_for_order(24, 256).unwrap();
        assert_eq!(c, Construction::Paley { q: 23 });
        let c = construction_for_order(40, 256).unwrap();
        assert!(matches!(c, Construction::Kronecker { .. }));
        assert!(is_hadamard(&c.build(256).unwrap()));
        assert!(construction_for_order(6, 256).is_none());
        assert_eq!(reachable_orders("sylvester", 20), vec![1, 2, 4, 8, 16]);
        assert_eq!(reachable_orders("paley", 24), vec![4, 8, 12, 20, 24]);
        assert_eq!(reachable_orders("kronecker", 16), vec![4, 8, 16]);
        let k8 = kronecker_construction(8, 256).unwrap();
        assert_eq!(k8.order(), 8);
        assert!(is_hadamard(&k8.build(256).unwrap()));
    }

    #[test]
    fn family_round_trip() {
        let h = sylvester(2).unwrap();
        let fam = hadamard_to_family(&h).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(fam.is_orthogonal());
        let back = family_to_hadamard(&fam).unwrap();
        assert!(is_hadamard(&back));
        let partial = OrthogonalFamily::new(4, fam.members()[..2].to_vec()).unwrap();
        assert_eq!(
            family_to_hadamard(&partial),
            Err(Error::IncompleteFamily { k: 4, found: 2 })
        );
        assert!(hadamard_to_family(&h.with_flipped(0, 0)).is_err());
    }

    #[test]
    fn text_format() {
        let h = sylvester(1).unwrap();
        let text = format_matrix(&h);
        assert_eq!(text, "+1 +1\n+1 -1\n");
        assert_eq!(parse_matrix(&text).unwrap(), h);
        assert_eq!(parse_matrix("+ +\n+ -\n").unwrap(), h);
        assert!(parse_matrix("+ +\n+\n").is_err());
        assert!(parse_matrix("+ x\n+ -\n").is_err());
    }
}
