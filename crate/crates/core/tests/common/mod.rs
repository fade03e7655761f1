//! Independent oracles: dense integer matrices built straight from the 2x2
//! letter tables, and fraction-free (Bareiss) rank.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;

pub type Dense = Vec<Vec<i64>>;

pub fn letter(c: char) -> Dense {
    match c {
        'X' => vec![vec![1, 0], vec![0, -1]],
        'Y' => vec![vec![0, 1], vec![1, 0]],
        'A' => vec![vec![0, 1], vec![-1, 0]],
        'I' => vec![vec![1, 0], vec![0, 1]],
        other => panic!("no dense matrix for {other}"),
    }
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn dense_word(w: &str) -> Dense {
    let mut chars = w.chars();
    let first = letter(chars.next().expect("nonempty"));
    chars.fold(first, |acc, c| kron(&acc, &letter(c)))
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense, sign: i64) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + sign * y).collect())
        .collect()
}

pub fn is_zero(a: &Dense) -> bool {
    a.iter().all(|r| r.iter().all(|v| *v == 0))
}

/// Rank by Bareiss fraction-free elimination.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|v| BigInt::from(*v)).collect()).collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|r| !m[*r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Dimension of `{S : S g = g S}` from the dense `n^2 x n^2` system
/// `(g^T (x) 1 - 1 (x) g) vec(S) = 0` (row-major `vec`).
pub fn brute_commutant_dim(mats: &[Dense]) -> usize {
    let n = mats[0].len();
    let mut rows = Vec::new();
    for g in mats {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0i64; n * n];
                for k in 0..n {
                    row[i * n + k] += g[k][j];
                    row[k * n + j] -= g[i][k];
                }
                rows.push(row);
            }
        }
    }
    n * n - bareiss_rank(&rows)
}

/// Words of a system with `Q` replaced by its two constant expansions.
pub fn expand_q(words: &[String]) -> Vec<String> {
    words
        .iter()
        .flat_map(|w| {
            if let Some(rest) = w.strip_prefix('Q') {
                vec![format!("Y{rest}"), format!("A{rest}")]
            } else {
                vec![w.clone()]
            }
        })
        .collect()
}

/// All words of the given length over `letters`.
pub fn words_over(letters: &[char], len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| letters.iter().map(move |c| format!("{p}{c}")))
            .collect();
    }
    out
}
