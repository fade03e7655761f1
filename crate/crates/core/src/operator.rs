//! Noncommutative ring of differential operators in `t` and the spatial
//! coordinates, kept in normal order (functions left of derivatives).
//!
//! Spatial direction 0 is `x`, the only direction the formal prepotential
//! `f` and its derivative tower `f', f'', ...` depend on.  Powers of the
//! spatial coordinates may be negative; powers of `t` may not.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::OperatorError;
use crate::scalar::{gauss, gauss_i, Gauss, Scalar};

fn trim<T: Zero + PartialEq>(v: &mut Vec<T>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn slot<T: Zero + Clone>(v: &mut Vec<T>, idx: usize) -> &mut T {
    if v.len() <= idx {
        v.resize(idx + 1, T::zero());
    }
    &mut v[idx]
}

/// A variable a derivative can act along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    Space(usize),
}

/// Commuting product `t^a * prod_k x_k^(b_k) * prod_j (f^(j))^(m_j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FnMono {
    t: u32,
    x: Vec<i32>,
    f: Vec<u32>,
}

impl FnMono {
    pub fn one() -> Self {
        FnMono::default()
    }

    pub fn t_pow(&self) -> u32 {
        self.t
    }

    pub fn x_pow(&self, dir: usize) -> i32 {
        self.x.get(dir).copied().unwrap_or(0)
    }

    pub fn x_pows(&self) -> &[i32] {
        &self.x
    }

    pub fn f_pow(&self, j: usize) -> u32 {
        self.f.get(j).copied().unwrap_or(0)
    }

    pub fn f_pows(&self) -> &[u32] {
        &self.f
    }

    pub fn is_one(&self) -> bool {
        self.t == 0 && self.x.is_empty() && self.f.is_empty()
    }

    pub fn has_f(&self) -> bool {
        !self.f.is_empty()
    }

    pub fn with_t(mut self, a: u32) -> Self {
        self.t = a;
        self
    }

    pub fn with_x(mut self, dir: usize, b: i32) -> Self {
        *slot(&mut self.x, dir) = b;
        trim(&mut self.x);
        self
    }

    pub fn with_f(mut self, j: usize, m: u32) -> Self {
        *slot(&mut self.f, j) = m;
        trim(&mut self.f);
        self
    }

    fn mul(&self, other: &FnMono) -> FnMono {
        let mut out = self.clone();
        out.t += other.t;
        for (k, b) in other.x.iter().enumerate() {
            *slot(&mut out.x, k) += *b;
        }
        for (j, m) in other.f.iter().enumerate() {
            *slot(&mut out.f, j) += *m;
        }
        trim(&mut out.x);
        trim(&mut out.f);
        out
    }

    /// Derivative along `var`, as an integer combination of monomials.
    fn derive(&self, var: Var) -> Vec<(BigInt, FnMono)> {
        match var {
            Var::T => {
                if self.t == 0 {
                    return Vec::new();
                }
                let mut m = self.clone();
                m.t -= 1;
                vec![(BigInt::from(self.t), m)]
            }
            Var::Space(dir) => {
                let mut out = Vec::new();
                let b = self.x_pow(dir);
                if b != 0 {
                    let m = self.clone().with_x(dir, b - 1);
                    out.push((BigInt::from(b), m));
                }
                if dir == 0 {
                    for (j, &mj) in self.f.iter().enumerate() {
                        if mj == 0 {
                            continue;
                        }
                        let mut m = self.clone();
                        m.f[j] -= 1;
                        *slot(&mut m.f, j + 1) += 1;
                        trim(&mut m.f);
                        out.push((BigInt::from(mj), m));
                    }
                }
                out
            }
        }
    }
}

/// Commuting product `dt^p * prod_k dx_k^(q_k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivMono {
    t: u32,
    x: Vec<u32>,
}

impl DerivMono {
    pub fn one() -> Self {
        DerivMono::default()
    }

    pub fn t_pow(&self) -> u32 {
        self.t
    }

    pub fn x_pow(&self, dir: usize) -> u32 {
        self.x.get(dir).copied().unwrap_or(0)
    }

    pub fn x_pows(&self) -> &[u32] {
        &self.x
    }

    pub fn is_one(&self) -> bool {
        self.t == 0 && self.x.is_empty()
    }

    pub fn with_t(mut self, p: u32) -> Self {
        self.t = p;
        self
    }

    pub fn with_x(mut self, dir: usize, q: u32) -> Self {
        *slot(&mut self.x, dir) = q;
        trim(&mut self.x);
        self
    }

    fn mul(&self, other: &DerivMono) -> DerivMono {
        let mut out = self.clone();
        out.t += other.t;
        for (k, q) in other.x.iter().enumerate() {
            *slot(&mut out.x, k) += *q;
        }
        trim(&mut out.x);
        out
    }

    fn powers(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        std::iter::once((Var::T, self.t))
            .chain(self.x.iter().enumerate().map(|(k, q)| (Var::Space(k), *q)))
            .filter(|(_, p)| *p > 0)
    }
}

/// Key of one normal-ordered term.  Ordered by derivative part first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub deriv: DerivMono,
    pub func: FnMono,
}

/// Element of the operator ring: a finite sum `c * F * D` with the function
/// part `F` to the left of the derivative part `D`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OperatorPoly {
    terms: BTreeMap<TermKey, Scalar>,
}

type FnPoly = BTreeMap<FnMono, BigInt>;

fn derive_poly(p: &FnPoly, var: Var) -> FnPoly {
    let mut out = FnPoly::new();
    for (m, c) in p {
        for (k, dm) in m.derive(var) {
            let e = out.entry(dm).or_insert_with(BigInt::zero);
            *e += &k * c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl OperatorPoly {
    pub fn zero() -> Self {
        OperatorPoly::default()
    }

    pub fn one() -> Self {
        OperatorPoly::scalar(Scalar::one())
    }

    pub fn int(n: i64) -> Self {
        OperatorPoly::scalar(Scalar::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        OperatorPoly::scalar(Scalar::ratio(n, d))
    }

    pub fn i() -> Self {
        OperatorPoly::scalar(Scalar::i())
    }

    pub fn g() -> Self {
        OperatorPoly::scalar(Scalar::g())
    }

    pub fn lam() -> Self {
        OperatorPoly::scalar(Scalar::lam())
    }

    pub fn scalar(s: Scalar) -> Self {
        OperatorPoly::term(s, FnMono::one(), DerivMono::one())
    }

    pub fn term(c: Scalar, func: FnMono, deriv: DerivMono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(TermKey { deriv, func }, c);
        }
        OperatorPoly { terms }
    }

    pub fn t() -> Self {
        OperatorPoly::t_pow(1)
    }

    pub fn t_pow(a: u32) -> Self {
        OperatorPoly::term(Scalar::one(), FnMono::one().with_t(a), DerivMono::one())
    }

    /// `x` for direction 0, `y` for direction 1, and so on.
    pub fn coord(dir: usize) -> Self {
        OperatorPoly::coord_pow(dir, 1)
    }

    pub fn coord_pow(dir: usize, b: i32) -> Self {
        OperatorPoly::term(Scalar::one(), FnMono::one().with_x(dir, b), DerivMono::one())
    }

    pub fn x() -> Self {
        OperatorPoly::coord(0)
    }

    pub fn x_pow(b: i32) -> Self {
        OperatorPoly::coord_pow(0, b)
    }

    /// The formal prepotential derivative `f^(j)(x)`.
    pub fn f_deriv(j: usize) -> Self {
        OperatorPoly::term(Scalar::one(), FnMono::one().with_f(j, 1), DerivMono::one())
    }

    pub fn f() -> Self {
        OperatorPoly::f_deriv(0)
    }

    pub fn dt() -> Self {
        OperatorPoly::dt_pow(1)
    }

    pub fn dt_pow(p: u32) -> Self {
        OperatorPoly::term(Scalar::one(), FnMono::one(), DerivMono::one().with_t(p))
    }

    pub fn d(dir: usize) -> Self {
        OperatorPoly::d_pow(dir, 1)
    }

    pub fn d_pow(dir: usize, q: u32) -> Self {
        OperatorPoly::term(Scalar::one(), FnMono::one(), DerivMono::one().with_x(dir, q))
    }

    pub fn dx() -> Self {
        OperatorPoly::d(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TermKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &TermKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Returns the scalar when the operator is a pure constant.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(k, _)| k.deriv.is_one() && k.func.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// No derivative factors.
    pub fn is_function(&self) -> bool {
        self.terms.keys().all(|k| k.deriv.is_one())
    }

    pub fn mentions_t(&self) -> bool {
        self.terms
            .keys()
            .any(|k| k.func.t_pow() > 0 || k.deriv.t_pow() > 0)
    }

    /// No `t`, spatial coordinate or `f` factors.
    pub fn is_constant_coefficient(&self) -> bool {
        self.terms.keys().all(|k| k.func.is_one())
    }

    /// Number of spatial directions referenced by any factor.
    pub fn spatial_extent(&self) -> usize {
        self.terms
            .keys()
            .map(|k| k.func.x_pows().len().max(k.deriv.x_pows().len()))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    fn add_term(&mut self, key: TermKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> OperatorPoly {
        let mut acc = OperatorPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &OperatorPoly) -> OperatorPoly {
        &(self * other) - &(other * self)
    }

    /// Derivative of a function along `var`, i.e. the commutator with the
    /// corresponding derivative operator.
    pub fn derivative(&self, var: Var) -> Result<OperatorPoly, OperatorError> {
        if !self.is_function() {
            return Err(OperatorError::NotAFunction(self.to_string()));
        }
        let d = match var {
            Var::T => OperatorPoly::dt(),
            Var::Space(k) => OperatorPoly::d(k),
        };
        Ok(d.commutator(self))
    }

    /// Plane-wave symbol: `dt -> -iE`, `dx_k -> i k_k`.  Only defined for
    /// constant-coefficient operators.
    pub fn symbol_eval(&self, energy: &Gauss, momenta: &[Gauss]) -> Result<Scalar, OperatorError> {
        if !self.is_constant_coefficient() {
            return Err(OperatorError::NonConstantCoefficient(self.to_string()));
        }
        let i = gauss_i();
        let zero = Gauss::zero();
        let mut acc = Scalar::zero();
        for (key, c) in &self.terms {
            let mut v = gauss(num_rational::BigRational::one(), num_rational::BigRational::zero());
            let dt_sym = -(&i * energy);
            for _ in 0..key.deriv.t_pow() {
                v = &v * &dt_sym;
            }
            for (k, q) in key.deriv.x_pows().iter().enumerate() {
                let kk = momenta.get(k).unwrap_or(&zero);
                let sym = &i * kk;
                for _ in 0..*q {
                    v = &v * &sym;
                }
            }
            acc += &c.scale(&v);
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }
}

impl From<Scalar> for OperatorPoly {
    fn from(s: Scalar) -> Self {
        OperatorPoly::scalar(s)
    }
}

impl<'a> Mul<&'a OperatorPoly> for &'a OperatorPoly {
    type Output = OperatorPoly;

    fn mul(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let coeff = ca * cb;
                // Leibniz: d^n F = sum_k C(n,k) (d^k F) d^(n-k), one variable at a time.
                let mut pending: Vec<(FnPoly, DerivMono)> = {
                    let mut p = FnPoly::new();
                    p.insert(kb.func.clone(), BigInt::one());
                    vec![(p, DerivMono::one())]
                };
                for (var, n) in ka.deriv.powers() {
                    let mut next = Vec::new();
                    for (poly, rest) in pending {
                        let mut current = poly;
                        for k in 0..=n {
                            if current.is_empty() {
                                break;
                            }
                            let left = n - k;
                            let rest_k = match var {
                                Var::T => rest.clone().with_t(rest.t_pow() + left),
                                Var::Space(dir) => {
                                    rest.clone().with_x(dir, rest.x_pow(dir) + left)
                                }
                            };
                            let b = binomial(n, k);
                            let scaled: FnPoly =
                                current.iter().map(|(m, c)| (m.clone(), c * &b)).collect();
                            next.push((scaled, rest_k));
                            if k < n {
                                current = derive_poly(&current, var);
                            }
                        }
                    }
                    pending = next;
                }
                for (poly, rest) in pending {
                    let deriv = rest.mul(&kb.deriv);
                    for (m, c) in poly {
                        let func = ka.func.mul(&m);
                        let c = Scalar::from_rational(num_rational::BigRational::from_integer(c));
                        out.add_term(
                            TermKey {
                                deriv: deriv.clone(),
                                func,
                            },
                            &coeff * &c,
                        );
                    }
                }
            }
        }
        out
    }
}

impl Mul for OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: OperatorPoly) -> OperatorPoly {
        &self * &rhs
    }
}

impl AddAssign<&OperatorPoly> for OperatorPoly {
    fn add_assign(&mut self, rhs: &OperatorPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl SubAssign<&OperatorPoly> for OperatorPoly {
    fn sub_assign(&mut self, rhs: &OperatorPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<'a> Add<&'a OperatorPoly> for &'a OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for OperatorPoly {
    type Output = OperatorPoly;
    fn add(mut self, rhs: OperatorPoly) -> OperatorPoly {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a OperatorPoly> for &'a OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for OperatorPoly {
    type Output = OperatorPoly;
    fn sub(mut self, rhs: OperatorPoly) -> OperatorPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        -&self
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dx_times_x() {
        let p = &OperatorPoly::dx() * &OperatorPoly::x();
        let expected = &(&OperatorPoly::x() * &OperatorPoly::dx()) + &OperatorPoly::one();
        assert_eq!(p, expected);
    }

    #[test]
    fn dx_times_inverse_x() {
        let p = &OperatorPoly::dx() * &OperatorPoly::x_pow(-1);
        let expected = &(&OperatorPoly::x_pow(-1) * &OperatorPoly::dx()) - &OperatorPoly::x_pow(-2);
        assert_eq!(p, expected);
    }

    #[test]
    fn dx_times_f() {
        let p = &OperatorPoly::dx() * &OperatorPoly::f();
        let expected = &(&OperatorPoly::f() * &OperatorPoly::dx()) + &OperatorPoly::f_deriv(1);
        assert_eq!(p, expected);
    }

    #[test]
    fn dt_commutes_with_space_factors() {
        let dt = OperatorPoly::dt();
        for p in [OperatorPoly::x_pow(-2), OperatorPoly::f(), OperatorPoly::coord(2)] {
            assert!(dt.commutator(&p).is_zero());
        }
        assert_eq!(dt.commutator(&OperatorPoly::t()), OperatorPoly::one());
    }

    #[test]
    fn directions_are_independent() {
        let dy = OperatorPoly::d(1);
        assert!(dy.commutator(&OperatorPoly::x()).is_zero());
        assert!(dy.commutator(&OperatorPoly::f()).is_zero());
        assert!(dy.commutator(&OperatorPoly::t()).is_zero());
        assert_eq!(dy.commutator(&OperatorPoly::coord(1)), OperatorPoly::one());
    }

    #[test]
    fn second_derivative_leibniz() {
        // dx^2 f = f dx^2 + 2 f' dx + f''
        let p = &OperatorPoly::d_pow(0, 2) * &OperatorPoly::f();
        let expected = &(&(&OperatorPoly::f() * &OperatorPoly::d_pow(0, 2))
            + &(&OperatorPoly::f_deriv(1) * &OperatorPoly::dx()).scale(&Scalar::int(2)))
            + &OperatorPoly::f_deriv(2);
        assert_eq!(p, expected);
    }

    #[test]
    fn derivative_of_power_of_f() {
        let f2 = OperatorPoly::f().pow(2);
        let d = f2.derivative(Var::Space(0)).unwrap();
        let expected = (&OperatorPoly::f() * &OperatorPoly::f_deriv(1)).scale(&Scalar::int(2));
        assert_eq!(d, expected);
        assert!(OperatorPoly::dx().derivative(Var::T).is_err());
    }

    #[test]
    fn power_rule_commutators() {
        for b in -3..=3 {
            let c = OperatorPoly::dx().commutator(&OperatorPoly::x_pow(b));
            let expected = OperatorPoly::x_pow(b - 1).scale(&Scalar::int(b as i64));
            assert_eq!(c, expected, "b = {b}");
        }
        for a in 0..=3u32 {
            let c = OperatorPoly::dt().commutator(&OperatorPoly::t_pow(a));
            let expected = if a == 0 {
                OperatorPoly::zero()
            } else {
                OperatorPoly::t_pow(a - 1).scale(&Scalar::int(a as i64))
            };
            assert_eq!(c, expected, "a = {a}");
        }
    }

    #[test]
    fn symbol_of_schrodinger_operator() {
        let e = crate::scalar::gauss_int(9);
        let k = [crate::scalar::gauss_int(3)];
        let idt = &OperatorPoly::i() * &OperatorPoly::dt();
        assert_eq!(idt.symbol_eval(&e, &k).unwrap(), Scalar::int(9));
        let dx2 = OperatorPoly::d_pow(0, 2);
        assert_eq!(dx2.symbol_eval(&e, &k).unwrap(), Scalar::int(-9));
        assert!((&idt + &dx2).symbol_eval(&e, &k).unwrap().is_zero());
        assert!(OperatorPoly::x().symbol_eval(&e, &k).is_err());
    }
}
