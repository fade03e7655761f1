//! Exact sparse row reduction over a field (rationals or Gaussian rationals).

use std::collections::BTreeMap;

use num_traits::Num;

pub type SparseVec<T> = BTreeMap<usize, T>;

/// Incremental reduced row echelon form.  Every stored row has a leading one
/// in its pivot column and zeros in every other pivot column.
#[derive(Clone, Debug)]
pub struct RowReducer<T> {
    pivots: BTreeMap<usize, SparseVec<T>>,
}

impl<T> Default for RowReducer<T> {
    fn default() -> Self {
        RowReducer {
            pivots: BTreeMap::new(),
        }
    }
}

fn axpy<T: Clone + Num>(row: &mut SparseVec<T>, coef: &T, other: &SparseVec<T>) {
    for (c, v) in other {
        let delta = coef.clone() * v.clone();
        let e = row.entry(*c).or_insert_with(T::zero);
        *e = e.clone() - delta;
        if e.is_zero() {
            row.remove(c);
        }
    }
}

impl<T: Clone + Num> RowReducer<T> {
    pub fn new() -> Self {
        RowReducer::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the stored rows, in place.
    fn reduce(&self, row: &mut SparseVec<T>) {
        let hits: Vec<usize> = row
            .keys()
            .filter(|c| self.pivots.contains_key(c))
            .copied()
            .collect();
        for c in hits {
            if let Some(coef) = row.get(&c).cloned() {
                axpy(row, &coef, &self.pivots[&c]);
            }
        }
    }

    /// Adds a row; returns `false` when it was already in the row space.
    pub fn push(&mut self, mut row: SparseVec<T>) -> bool {
        row.retain(|_, v| !v.is_zero());
        self.reduce(&mut row);
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        if !lead_val.is_one() {
            let inv = T::one() / lead_val.clone();
            for v in row.values_mut() {
                *v = v.clone() * inv.clone();
            }
        }
        for other in self.pivots.values_mut() {
            if let Some(coef) = other.get(&lead).cloned() {
                axpy(other, &coef, &row);
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Basis of `{v : row . v = 0 for every row}` in `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec<T>> {
        (0..ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, T::one());
                for (pc, row) in &self.pivots {
                    if let Some(x) = row.get(&free) {
                        v.insert(*pc, T::zero() - x.clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Solves `sum_j c_j * columns[j] = target` exactly.  Returns `None` when the
/// target is outside the span; free unknowns are set to zero.
pub fn solve_in_span<T: Clone + Num>(columns: &[SparseVec<T>], target: &SparseVec<T>) -> Option<Vec<T>> {
    let m = columns.len();
    let mut rows: BTreeMap<usize, SparseVec<T>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows.entry(*i).or_default().insert(j, v.clone());
        }
    }
    for (i, v) in target {
        rows.entry(*i).or_default().insert(m, v.clone());
    }
    let mut red = RowReducer::new();
    for row in rows.into_values() {
        red.push(row);
    }
    if red.pivots.contains_key(&m) {
        return None;
    }
    let mut out = vec![T::zero(); m];
    for (pc, row) in &red.pivots {
        out[*pc] = row.get(&m).cloned().unwrap_or_else(T::zero);
    }
    Some(out)
}

/// Determinant by exact Gaussian elimination with row swaps.
pub fn determinant<T: Clone + Num>(mut rows: Vec<Vec<T>>) -> T {
    let n = rows.len();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|r| !rows[*r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = T::zero() - det;
        }
        let pivot = rows[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / pivot.clone();
            for c in col..n {
                let delta = f.clone() * rows[col][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sv(entries: &[(usize, i64)]) -> SparseVec<BigRational> {
        entries.iter().map(|(c, v)| (*c, r(*v))).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let mut red = RowReducer::new();
        assert!(red.push(sv(&[(0, 1), (1, 2), (2, 3)])));
        assert!(red.push(sv(&[(0, 2), (1, 4), (2, 7)])));
        assert!(!red.push(sv(&[(0, 3), (1, 6), (2, 10)])));
        assert_eq!(red.rank(), 2);
        let ns = red.nullspace(3);
        assert_eq!(ns, vec![sv(&[(0, -2), (1, 1)])]);
    }

    #[test]
    fn determinant_with_swap() {
        let m = vec![vec![r(0), r(2)], vec![r(3), r(4)]];
        assert_eq!(determinant(m), r(-6));
        let m = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert_eq!(determinant(m), r(0));
    }

    #[test]
    fn span_solve() {
        let cols = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)])];
        assert_eq!(solve_in_span(&cols, &sv(&[(0, 2), (1, 5), (2, 3)])), Some(vec![r(2), r(3)]));
        assert_eq!(solve_in_span(&cols, &sv(&[(0, 1)])), None);
        assert_eq!(solve_in_span(&cols, &SparseVec::new()), Some(vec![r(0), r(0)]));
    }
}
