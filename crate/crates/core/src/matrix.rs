//! Square matrices over the operator ring, plus dense rational matrices for
//! the constant (Schur-lemma) side of the workbench.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::MatrixError;
use crate::exec::Exec;
use crate::operator::OperatorPoly;
use crate::scalar::Scalar;

/// Products of at least this size go through the parallel path.
const PAR_MIN_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpMatrix {
    n: usize,
    entries: Vec<OperatorPoly>,
}

impl OpMatrix {
    /// Panics if `n` is not a power of two.
    pub fn zeros(n: usize) -> Self {
        assert!(n.is_power_of_two(), "matrix size {n} is not a power of two");
        OpMatrix {
            n,
            entries: vec![OperatorPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        OpMatrix::scalar_identity(n, &OperatorPoly::one())
    }

    /// `p` times the identity.
    pub fn scalar_identity(n: usize, p: &OperatorPoly) -> Self {
        let mut m = OpMatrix::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = p.clone();
        }
        m
    }

    pub fn from_entries(n: usize, entries: Vec<OperatorPoly>) -> Result<Self, MatrixError> {
        if !n.is_power_of_two() {
            return Err(MatrixError::NotPowerOfTwo(n));
        }
        if entries.len() != n * n {
            return Err(MatrixError::EntryCount {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(OpMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<OperatorPoly>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::EntryCount {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        OpMatrix::from_entries(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &OperatorPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: OperatorPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn entries(&self) -> &[OperatorPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(OperatorPoly::is_zero)
    }

    /// Nonzero entries with zero-based indices, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &OperatorPoly)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(k, p)| (k / self.n, k % self.n, p))
    }

    /// The common diagonal entry when the matrix is a multiple of the identity.
    pub fn as_scalar_multiple(&self) -> Option<OperatorPoly> {
        let d = self.get(0, 0).clone();
        let ok = (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    *e == d
                } else {
                    e.is_zero()
                }
            })
        });
        ok.then_some(d)
    }

    fn check_dim(&self, other: &OpMatrix) -> Result<(), MatrixError> {
        if self.n != other.n {
            Err(MatrixError::DimensionMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    fn zip(&self, other: &OpMatrix, f: impl Fn(&OperatorPoly, &OperatorPoly) -> OperatorPoly) -> Result<OpMatrix, MatrixError> {
        self.check_dim(other)?;
        Ok(OpMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &OpMatrix) -> Result<OpMatrix, MatrixError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &OpMatrix) -> Result<OpMatrix, MatrixError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &OpMatrix) -> Result<OpMatrix, MatrixError> {
        self.mul_with(other, Exec::default())
    }

    pub fn mul_with(&self, other: &OpMatrix, exec: Exec) -> Result<OpMatrix, MatrixError> {
        self.check_dim(other)?;
        let n = self.n;
        let exec = if n >= PAR_MIN_DIM { exec } else { Exec::Sequential };
        let rows = exec.map_range(n, |i| {
            let mut row = vec![OperatorPoly::zero(); n];
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out += &(a * b);
                    }
                }
            }
            row
        });
        Ok(OpMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Entrywise `a_ij * p` (the operator `p` acts first).
    pub fn scale(&self, p: &OperatorPoly) -> OpMatrix {
        self.map(|a| a * p)
    }

    /// Entrywise `p * a_ij`.
    pub fn left_scale(&self, p: &OperatorPoly) -> OpMatrix {
        self.map(|a| p * a)
    }

    pub fn scale_scalar(&self, c: &Scalar) -> OpMatrix {
        self.map(|a| a.scale(c))
    }

    pub fn map(&self, f: impl Fn(&OperatorPoly) -> OperatorPoly) -> OpMatrix {
        OpMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn commutator(&self, other: &OpMatrix) -> Result<OpMatrix, MatrixError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn anticommutator(&self, other: &OpMatrix) -> Result<OpMatrix, MatrixError> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// Kronecker product; entries multiply as `a_ij * b_kl`.
    pub fn tensor(&self, other: &OpMatrix) -> OpMatrix {
        let (n, m) = (self.n, other.n);
        let size = n * m;
        let mut entries = vec![OperatorPoly::zero(); size * size];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            entries[(i * m + k) * size + j * m + l] = a * b;
                        }
                    }
                }
            }
        }
        OpMatrix { n: size, entries }
    }
}

impl<'a> Mul<&'a OpMatrix> for &'a OpMatrix {
    type Output = OpMatrix;
    /// Panics on dimension mismatch; use [`OpMatrix::mul`] for a checked product.
    fn mul(self, rhs: &OpMatrix) -> OpMatrix {
        OpMatrix::mul(self, rhs).expect("operator matrix product")
    }
}

impl<'a> Add<&'a OpMatrix> for &'a OpMatrix {
    type Output = OpMatrix;
    fn add(self, rhs: &OpMatrix) -> OpMatrix {
        OpMatrix::add(self, rhs).expect("operator matrix sum")
    }
}

impl<'a> Sub<&'a OpMatrix> for &'a OpMatrix {
    type Output = OpMatrix;
    fn sub(self, rhs: &OpMatrix) -> OpMatrix {
        OpMatrix::sub(self, rhs).expect("operator matrix difference")
    }
}

impl Neg for &OpMatrix {
    type Output = OpMatrix;
    fn neg(self) -> OpMatrix {
        self.map(|a| -a)
    }
}

impl fmt::Display for OpMatrix {
    /// Nonzero entries as `(row,col): expr`, one-based, row-major.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero_entries()
            .map(|(i, j, p)| format!("({},{}): {}", i + 1, j + 1, p))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Dense square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RationalMatrix { n, data }
    }

    pub fn from_vec(n: usize, data: Vec<BigRational>) -> Result<Self, MatrixError> {
        if data.len() != n * n {
            return Err(MatrixError::EntryCount {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(RationalMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[BigRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, c: &BigRational) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        RationalMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        RationalMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &RationalMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// `Some(c)` when the matrix equals `c` times the identity.
    pub fn as_scalar_multiple(&self) -> Option<BigRational> {
        let c = self.get(0, 0).clone();
        (*self == RationalMatrix::identity(self.n).scale(&c)).then_some(c)
    }

    pub fn to_op_matrix(&self) -> OpMatrix {
        OpMatrix::from_entries(
            self.n,
            self.data
                .iter()
                .map(|v| OperatorPoly::scalar(Scalar::from_rational(v.clone())))
                .collect(),
        )
        .expect("power-of-two rational matrix")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(vals: [[i64; 2]; 2]) -> OpMatrix {
        OpMatrix::from_rows(
            vals.iter()
                .map(|r| r.iter().map(|v| OperatorPoly::int(*v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn dimension_errors() {
        assert_eq!(
            OpMatrix::identity(2).mul(&OpMatrix::identity(4)),
            Err(MatrixError::DimensionMismatch(2, 4))
        );
        assert!(OpMatrix::from_entries(3, vec![OperatorPoly::zero(); 9]).is_err());
        assert!(OpMatrix::from_entries(2, vec![OperatorPoly::zero(); 3]).is_err());
    }

    #[test]
    fn tensor_mixed_product() {
        let a = small([[1, 2], [0, -1]]);
        let b = small([[0, 1], [1, 0]]);
        let c = small([[3, 0], [1, 1]]);
        let d = small([[1, -1], [2, 0]]);
        let lhs = &a.tensor(&b) * &c.tensor(&d);
        let rhs = (&a * &c).tensor(&(&b * &d));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_and_left_scale_differ_for_operators() {
        let m = OpMatrix::scalar_identity(2, &OperatorPoly::dx());
        let right = m.scale(&OperatorPoly::x());
        let left = m.left_scale(&OperatorPoly::x());
        assert_eq!(&right - &left, OpMatrix::identity(2));
    }

    #[test]
    fn parallel_and_sequential_products_agree() {
        let mut a = OpMatrix::zeros(8);
        let mut b = OpMatrix::zeros(8);
        for i in 0..8 {
            for j in 0..8 {
                if (i + 2 * j) % 3 == 0 {
                    a.set(i, j, &OperatorPoly::dx() + &OperatorPoly::int(i as i64));
                }
                if (i * j) % 4 == 1 {
                    b.set(i, j, OperatorPoly::x_pow(j as i32 - 3));
                }
            }
        }
        assert_eq!(
            a.mul_with(&b, Exec::Sequential).unwrap(),
            a.mul_with(&b, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn rational_trace_and_scalar_detection() {
        let m = RationalMatrix::identity(4).scale(&BigRational::from_integer(3.into()));
        assert_eq!(m.trace(), BigRational::from_integer(12.into()));
        assert_eq!(m.as_scalar_multiple(), Some(BigRational::from_integer(3.into())));
    }
}
