//! Splitting an exponent vector into rows with at most two nonzero entries.

use crate::error::{Error, Result};

/// Rows `α_1, ..., α_c` with at most two nonzero entries each, every row
/// summing to `q - 1` and the columns summing to `beta`.
///
/// Requires `c = r` or `c = r - 1` where `r = beta.len()`, and
/// `Σ beta = c(q - 1)`.
pub fn split_exponents(beta: &[u64], c: usize, q: u64) -> Result<Vec<Vec<u64>>> {
    let r = beta.len();
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    if c == 0 || !(c == r || c + 1 == r) {
        return Err(Error::invalid(format!("need c = r or c = r - 1 (c = {c}, r = {r})")));
    }
    let total: u64 = beta.iter().sum();
    if total != c as u64 * (q - 1) {
        return Err(Error::invalid(format!("entries sum to {total}, expected c(q-1) = {}", c as u64 * (q - 1))));
    }
    Ok(split_rec(beta.to_vec(), c, q - 1))
}

fn split_rec(beta: Vec<u64>, c: usize, top: u64) -> Vec<Vec<u64>> {
    let r = beta.len();
    if c == 1 {
        return vec![beta];
    }
    if beta.iter().all(|&b| b == top) {
        return (0..r)
            .map(|i| {
                let mut row = vec![0; r];
                row[i] = top;
                row
            })
            .collect();
    }
    let i = (0..r).rev().find(|&i| beta[i] < top).expect("some entry below q-1");
    let need = top - beta[i];
    let j = (0..r).find(|&j| j != i && beta[j] >= need).expect("a partner column exists");
    let mut last = vec![0; r];
    last[i] = beta[i];
    last[j] += need;
    let mut rest = beta;
    rest[j] -= need;
    rest.remove(i);
    let mut rows: Vec<Vec<u64>> = split_rec(rest, c - 1, top)
        .into_iter()
        .map(|mut row| {
            row.insert(i, 0);
            row
        })
        .collect();
    rows.push(last);
    rows
}

/// Checks the three defining properties of a split.
pub fn validate_split(rows: &[Vec<u64>], beta: &[u64], c: usize, q: u64) -> bool {
    if rows.len() != c || rows.iter().any(|row| row.len() != beta.len()) {
        return false;
    }
    let sparse = rows.iter().all(|row| row.iter().filter(|&&a| a != 0).count() <= 2);
    let row_sums = rows.iter().all(|row| row.iter().sum::<u64>() == q - 1);
    let col_sums = (0..beta.len()).all(|k| rows.iter().map(|row| row[k]).sum::<u64>() == beta[k]);
    sparse && row_sums && col_sums
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// Exhaustive search: can `rest` be covered by `rows` rows of the allowed shape?
    fn oracle(rest: &mut Vec<u64>, rows: usize, top: u64, memo: &mut HashMap<(Vec<u64>, usize), bool>) -> bool {
        if rows == 0 {
            return rest.iter().all(|&b| b == 0);
        }
        if let Some(&v) = memo.get(&(rest.clone(), rows)) {
            return v;
        }
        let r = rest.len();
        let mut found = false;
        'outer: for a in 0..r {
            for b in a..r {
                for x in 0..=top {
                    let y = top - x;
                    if a == b && x != top {
                        continue;
                    }
                    if (a != b && (rest[a] < x || rest[b] < y)) || (a == b && rest[a] < top) {
                        continue;
                    }
                    rest[a] -= x;
                    if a != b {
                        rest[b] -= y;
                    }
                    let ok = oracle(rest, rows - 1, top, memo);
                    rest[a] += x;
                    if a != b {
                        rest[b] += y;
                    }
                    if ok {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        memo.insert((rest.clone(), rows), found);
        found
    }

    fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        (0..=total)
            .flat_map(|h| {
                compositions(total - h, parts - 1).into_iter().map(move |mut t| {
                    t.insert(0, h);
                    t
                })
            })
            .collect()
    }

    #[test]
    fn two_entries_single_row() {
        assert_eq!(split_exponents(&[3, 4], 1, 8).unwrap(), vec![vec![3, 4]]);
    }

    #[test]
    fn full_diagonal() {
        let rows = split_exponents(&[7, 7, 7], 3, 8).unwrap();
        assert_eq!(rows, vec![vec![7, 0, 0], vec![0, 7, 0], vec![0, 0, 7]]);
    }

    #[test]
    fn small_mixed_case() {
        let rows = split_exponents(&[3, 2, 1], 2, 4).unwrap();
        assert!(validate_split(&rows, &[3, 2, 1], 2, 4));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(split_exponents(&[3, 3], 1, 4).is_err());
        assert!(split_exponents(&[1, 1, 1, 0], 2, 2).is_err());
        assert!(split_exponents(&[1], 1, 1).is_err());
    }

    #[test]
    fn exhaustive_against_oracle_small() {
        for q in [2u64, 3, 4, 5] {
            for (c, r) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4)] {
                let mut memo = HashMap::new();
                for beta in compositions(c as u64 * (q - 1), r) {
                    let rows = split_exponents(&beta, c, q).unwrap();
                    assert!(validate_split(&rows, &beta, c, q), "{beta:?} c={c} q={q}");
                    assert!(oracle(&mut beta.clone(), c, q - 1, &mut memo));
                }
            }
        }
    }
}
