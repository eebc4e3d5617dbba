//! Exact coefficients: Laurent polynomials in a formal symbol `pi` with
//! Gaussian-rational coefficients.
//!
//! Most coefficients in practice are plain rationals. The `pi` symbol only
//! appears through integration functionals, and the imaginary unit only
//! through Clifford representations and chirality operators.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
type Gaussian = Complex<BigRational>;

/// A finite sum `sum_k c_k * pi^k` with `c_k` Gaussian rationals.
///
/// Invariant: terms sorted by strictly increasing `pi` power, no zero
/// coefficients. Zero is the empty sum.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(i32, Gaussian)>,
}

fn gauss_is_zero(c: &Gaussian) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::from_parts(r, Rational::zero(), 0)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::from_parts(Rational::zero(), Rational::one(), 0)
    }

    /// `pi^k`.
    pub fn pi_pow(k: i32) -> Self {
        Scalar::from_parts(Rational::one(), Rational::zero(), k)
    }

    pub fn from_parts(re: Rational, im: Rational, pi_power: i32) -> Self {
        let c = Complex::new(re, im);
        if gauss_is_zero(&c) {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(pi_power, c)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0 == 0
            && self.terms[0].1.re.is_one()
            && self.terms[0].1.im.is_zero()
    }

    /// `(pi_power, real, imaginary)` triples in increasing power order.
    pub fn parts(&self) -> impl Iterator<Item = (i32, &Rational, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, &c.re, &c.im))
    }

    /// The value as a plain rational, if it has no `pi` and no imaginary part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] if c.im.is_zero() => Some(c.re.clone()),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.im.is_zero())
    }

    /// Coefficient of `pi^k`, as a Gaussian rational `(re, im)`.
    pub fn pi_coefficient(&self, k: i32) -> (Rational, Rational) {
        self.terms
            .iter()
            .find(|(p, _)| *p == k)
            .map(|(_, c)| (c.re.clone(), c.im.clone()))
            .unwrap_or_else(|| (Rational::zero(), Rational::zero()))
    }

    /// Floating-point value of a real scalar with `pi` substituted.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c.re.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(*k))
            .sum()
    }

    /// Complex floating-point value with `pi` substituted.
    pub fn to_c64(&self) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let s = std::f64::consts::PI.powi(*k);
            (
                re + c.re.to_f64().unwrap_or(f64::NAN) * s,
                im + c.im.to_f64().unwrap_or(f64::NAN) * s,
            )
        })
    }

    /// Multiplicative inverse. Only single-term scalars are invertible here.
    pub fn inverse(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [(k, c)] => {
                let norm = &c.re * &c.re + &c.im * &c.im;
                let inv = Complex::new(&c.re / &norm, -(&c.im / &norm));
                Some(Scalar { terms: vec![(-k, inv)] })
            }
            _ => None,
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, Complex::new(&c.re * r, &c.im * r)))
                .collect(),
        }
    }

    fn merge(a: &[(i32, Gaussian)], b: &[(i32, Gaussian)], negate_b: bool) -> Scalar {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate_b { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !gauss_is_zero(&c) {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Scalar { terms: out }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (ka, ca) in &self.terms {
            let partial: Vec<(i32, Gaussian)> = rhs
                .terms
                .iter()
                .map(|(kb, cb)| (ka + kb, ca * cb))
                .filter(|(_, c)| !gauss_is_zero(c))
                .collect();
            acc = Scalar::merge(&acc.terms, &partial, false);
        }
        acc
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

pub(crate) fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// One printable atom `±q [*i] [*pi^k]` of a scalar.
pub(crate) struct Atom {
    pub negative: bool,
    pub magnitude: Rational,
    pub imaginary: bool,
    pub pi_power: i32,
}

impl Scalar {
    /// Splits into sign-separated atoms, ordered by `pi` power, real part first.
    pub(crate) fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            for (part, imaginary) in [(&c.re, false), (&c.im, true)] {
                if !part.is_zero() {
                    out.push(Atom {
                        negative: part.is_negative(),
                        magnitude: part.abs(),
                        imaginary,
                        pi_power: *k,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Atom {
    /// Prints the unsigned part; returns with a trailing `*` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.magnitude.is_one() || (!self.imaginary && self.pi_power == 0) {
            fmt_rational(&self.magnitude, f)?;
            first = false;
        }
        if self.imaginary {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "i")?;
            first = false;
        }
        if self.pi_power != 0 {
            if !first {
                write!(f, "*")?;
            }
            if self.pi_power == 1 {
                write!(f, "pi")?;
            } else {
                write!(f, "pi^{}", self.pi_power)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms = self.atoms();
        if atoms.is_empty() {
            return write!(f, "0");
        }
        for (n, a) in atoms.iter().enumerate() {
            match (n, a.negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_reduce_and_cancel() {
        let a = Scalar::ratio(2, 4);
        assert_eq!(a, Scalar::ratio(1, 2));
        assert!((&a - &Scalar::ratio(1, 2)).is_zero());
        assert_eq!(Scalar::ratio(0, 5), Scalar::zero());
    }

    #[test]
    fn pi_powers_add_on_multiplication() {
        let x = &Scalar::pi_pow(1) * &Scalar::pi_pow(-1);
        assert!(x.is_one());
        let y = &Scalar::pi_pow(1) + &Scalar::one();
        assert_eq!(y.to_string(), "1 + pi");
        assert!(y.inverse().is_none());
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert_eq!(i.inverse().unwrap(), -Scalar::i());
    }

    #[test]
    fn display_atoms() {
        let s = &Scalar::ratio(-3, 2) + &(&Scalar::i() * &Scalar::pi_pow(2));
        assert_eq!(s.to_string(), "-3/2 + i*pi^2");
    }
}
