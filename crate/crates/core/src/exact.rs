//! Fraction-free Gaussian elimination over the integers.

/// Rank of an integer matrix (rows of equal length), computed with Bareiss
/// elimination so every intermediate stays an exact integer.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| i128::from(x)).collect()
        })
        .collect();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            for c in col + 1..cols {
                let num = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                m[r][c] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_ranks() {
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(&[vec![1, 1, 1], vec![1, -1, 1], vec![1, 1, -1]]), 3);
        assert_eq!(integer_rank(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    }

    proptest! {
        // rank(A) == rank of A with a row appended that is an integer
        // combination of existing rows.
        #[test]
        fn combination_rows_do_not_raise_rank(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..5),
            coeffs in prop::collection::vec(-2i64..=2, 5),
        ) {
            let r = integer_rank(&rows);
            let mut extended = rows.clone();
            let combo: Vec<i64> = (0..4)
                .map(|c| rows.iter().zip(&coeffs).map(|(row, k)| row[c] * k).sum())
                .collect();
            extended.push(combo);
            prop_assert_eq!(integer_rank(&extended), r);
            prop_assert!(r <= rows.len().min(4));
        }
    }
}
