//! Exact coefficients: polynomials in the coupling `g` and the scaling
//! parameter `lam` whose coefficients are Gaussian rationals `a + b i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Gaussian rational `a + b i` with `a, b` exact rationals.
pub type Gauss = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: BigRational, im: BigRational) -> Gauss {
    Complex::new(re, im)
}

pub fn gauss_int(n: i64) -> Gauss {
    Complex::new(rat(n, 1), BigRational::zero())
}

pub fn gauss_i() -> Gauss {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Monomial `g^g * lam^lam` in the two formal parameters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamMono {
    pub g: u32,
    pub lam: u32,
}

impl ParamMono {
    pub const ONE: ParamMono = ParamMono { g: 0, lam: 0 };

    fn mul(self, other: ParamMono) -> ParamMono {
        ParamMono {
            g: self.g + other.g,
            lam: self.lam + other.lam,
        }
    }
}

/// Canonical expanded polynomial in `g`, `lam` over the Gaussian rationals.
/// Zero coefficients are never stored, so structural equality is equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<ParamMono, Gauss>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_gauss(gauss_int(1))
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_gauss(gauss_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_gauss(Complex::new(rat(n, d), BigRational::zero()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_gauss(Complex::new(r, BigRational::zero()))
    }

    pub fn i() -> Self {
        Scalar::from_gauss(gauss_i())
    }

    pub fn g() -> Self {
        Scalar::monomial(ParamMono { g: 1, lam: 0 }, gauss_int(1))
    }

    pub fn lam() -> Self {
        Scalar::monomial(ParamMono { g: 0, lam: 1 }, gauss_int(1))
    }

    pub fn from_gauss(c: Gauss) -> Self {
        Scalar::monomial(ParamMono::ONE, c)
    }

    pub fn monomial(m: ParamMono, c: Gauss) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMono, &Gauss)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value when no `g` or `lam` appears.
    pub fn constant(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(Gauss::zero()),
            1 => self.terms.get(&ParamMono::ONE).cloned(),
            _ => None,
        }
    }

    /// The value when it is a parameter-free real rational.
    pub fn real_rational(&self) -> Option<BigRational> {
        self.constant().filter(|c| c.im.is_zero()).map(|c| c.re)
    }

    pub fn depends_on_params(&self) -> bool {
        self.terms.keys().any(|m| *m != ParamMono::ONE)
    }

    pub fn scale(&self, c: &Gauss) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v * c))
                .collect(),
        }
    }

    fn add_term(&mut self, m: ParamMono, c: Gauss) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Gauss::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Substitutes numeric values for `g` and `lam`.
    pub fn evaluate(&self, g: &Gauss, lam: &Gauss) -> Gauss {
        let mut acc = Gauss::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..m.g {
                v = &v * g;
            }
            for _ in 0..m.lam {
                v = &v * lam;
            }
            acc = &acc + &v;
        }
        acc
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Gauss> for Scalar {
    fn from(c: Gauss) -> Self {
        Scalar::from_gauss(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits a Gaussian rational into a sign and a magnitude string.  The
/// magnitude is `None` when it equals one, so callers can drop it in front
/// of other factors.
pub(crate) fn gauss_parts(c: &Gauss) -> (bool, Option<String>) {
    let zero = BigRational::zero();
    if c.im == zero {
        let neg = c.re.is_negative();
        let mag = c.re.abs();
        if mag.is_one() {
            (neg, None)
        } else {
            (neg, Some(fmt_rational(&mag)))
        }
    } else if c.re == zero {
        let neg = c.im.is_negative();
        let mag = c.im.abs();
        if mag.is_one() {
            (neg, Some("i".to_string()))
        } else {
            (neg, Some(format!("{}*i", fmt_rational(&mag))))
        }
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        let im = c.im.abs();
        let im = if im.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rational(&im))
        };
        (false, Some(format!("({} {} {})", fmt_rational(&c.re), sign, im)))
    }
}

pub(crate) fn fmt_param_mono(m: &ParamMono) -> Vec<String> {
    let mut out = Vec::new();
    match m.g {
        0 => {}
        1 => out.push("g".to_string()),
        p => out.push(format!("g^{p}")),
    }
    match m.lam {
        0 => {}
        1 => out.push("lam".to_string()),
        p => out.push(format!("lam^{p}")),
    }
    out
}

/// Signed pieces of the scalar, highest parameter degree first.
pub(crate) fn signed_pieces(s: &Scalar) -> Vec<(bool, String)> {
    s.terms
        .iter()
        .rev()
        .map(|(m, c)| {
            let (neg, mag) = gauss_parts(c);
            let mut factors: Vec<String> = mag.into_iter().collect();
            factors.extend(fmt_param_mono(m));
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            (neg, factors.join("*"))
        })
        .collect()
}

pub(crate) fn join_signed(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in pieces.iter().enumerate() {
        match (idx, *neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(&signed_pieces(self)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let a = &Scalar::g() + &Scalar::i();
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(b, Scalar::zero());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::int(-1));
    }

    #[test]
    fn rendering() {
        let s = &(&Scalar::g() * &Scalar::g()) - &Scalar::g();
        assert_eq!(s.to_string(), "g^2 - g");
        assert_eq!(Scalar::ratio(-3, 2).to_string(), "-3/2");
        assert_eq!((&Scalar::i() * &Scalar::int(-2)).to_string(), "-2*i");
        assert_eq!((&Scalar::i() + &Scalar::int(1)).to_string(), "(1 + i)");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn constants_and_params() {
        assert!(Scalar::lam().depends_on_params());
        assert_eq!(Scalar::ratio(1, 2).real_rational(), Some(rat(1, 2)));
        assert_eq!(Scalar::i().real_rational(), None);
        assert_eq!(Scalar::g().constant(), None);
        let v = (&Scalar::g() * &Scalar::lam()).evaluate(&gauss_int(3), &gauss_int(5));
        assert_eq!(v, gauss_int(15));
    }
}
