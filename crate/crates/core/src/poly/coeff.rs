//! Exact coefficients: polynomials in the deformation parameter `eps` over ℚ.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of ℚ[eps].
///
/// `terms[k]` is the coefficient of `eps^k`. Trailing zeros are trimmed, so the
/// zero element is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    terms: Vec<BigRational>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Coeff::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coeff::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Coeff::zero()
        } else {
            Coeff { terms: vec![q] }
        }
    }

    /// The parameter `eps` itself.
    pub fn eps() -> Self {
        Coeff { terms: vec![BigRational::zero(), BigRational::one()] }
    }

    pub fn from_eps_terms(terms: Vec<BigRational>) -> Self {
        let mut c = Coeff { terms };
        c.trim();
        c
    }

    fn trim(&mut self) {
        while self.terms.last().is_some_and(|t| t.is_zero()) {
            self.terms.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    /// Units of ℚ[eps] are the nonzero rational constants.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn eps_degree(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.len() <= 1
    }

    pub fn eps_terms(&self) -> &[BigRational] {
        &self.terms
    }

    /// Constant term in eps.
    pub fn constant(&self) -> BigRational {
        self.terms.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.constant())
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Coeff> {
        if self.is_unit() {
            Some(Coeff::from_rational(self.terms[0].recip()))
        } else {
            None
        }
    }

    /// Replaces `eps` by a rational value.
    pub fn specialize(&self, value: &BigRational) -> Coeff {
        let mut acc = BigRational::zero();
        for t in self.terms.iter().rev() {
            acc = acc * value + t;
        }
        Coeff::from_rational(acc)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Coeff {
        if q.is_zero() {
            return Coeff::zero();
        }
        Coeff { terms: self.terms.iter().map(|t| t * q).collect() }
    }

    /// True when printing needs parentheses inside a product.
    pub(crate) fn is_compound(&self) -> bool {
        self.terms.iter().filter(|t| !t.is_zero()).count() > 1
    }

    pub(crate) fn is_negative_leading(&self) -> bool {
        !self.is_compound()
            && self.terms.iter().rev().find(|t| !t.is_zero()).is_some_and(|t| t.is_negative())
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, t) in self.terms.iter().enumerate().rev() {
            if t.is_zero() {
                continue;
            }
            let neg = t.is_negative();
            let mag = t.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let eps = match k {
                0 => String::new(),
                1 => "eps".to_string(),
                _ => format!("eps^{}", k),
            };
            if k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", eps)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), eps)?;
            }
        }
        Ok(())
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

impl From<BigRational> for Coeff {
    fn from(q: BigRational) -> Self {
        Coeff::from_rational(q)
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(mut self, rhs: Coeff) -> Coeff {
        self += &rhs;
        self
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        if self.terms.len() < rhs.terms.len() {
            self.terms.resize(rhs.terms.len(), BigRational::zero());
        }
        for (a, b) in self.terms.iter_mut().zip(&rhs.terms) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        if self.terms.len() < rhs.terms.len() {
            self.terms.resize(rhs.terms.len(), BigRational::zero());
        }
        for (a, b) in self.terms.iter_mut().zip(&rhs.terms) {
            *a -= b;
        }
        self.trim();
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(mut self, rhs: Coeff) -> Coeff {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        if self.is_zero() || rhs.is_zero() {
            return Coeff::zero();
        }
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            return Coeff { terms: vec![&self.terms[0] * &rhs.terms[0]] };
        }
        let mut terms = vec![BigRational::zero(); self.terms.len() + rhs.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.terms.iter().enumerate() {
                terms[i + j] += a * b;
            }
        }
        Coeff::from_eps_terms(terms)
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { terms: self.terms.iter().map(|t| -t).collect() }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_zero() {
        let a = Coeff::from_ratio(1, 2) + Coeff::eps();
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(b, Coeff::zero());
        assert_eq!(b.eps_terms().len(), 0);
    }

    #[test]
    fn lowest_terms() {
        let a = Coeff::from_ratio(2, -4);
        assert_eq!(a, Coeff::from_ratio(-1, 2));
        assert_eq!(a.to_string(), "-1/2");
    }

    #[test]
    fn specialize_eps() {
        let a = Coeff::one() + Coeff::eps().scale_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(a.specialize(&BigRational::zero()), Coeff::one());
        assert_eq!(a.specialize(&BigRational::from_integer(2.into())), Coeff::from_int(2));
        assert_eq!(a.to_string(), "1/2*eps + 1");
    }

    #[test]
    fn units() {
        assert!(Coeff::from_int(3).is_unit());
        assert!(!Coeff::eps().is_unit());
        assert!(!(Coeff::one() + Coeff::eps()).is_unit());
        assert_eq!(Coeff::from_int(3).inverse(), Some(Coeff::from_ratio(1, 3)));
        assert_eq!(Coeff::eps().inverse(), None);
    }

    #[test]
    fn eps_product() {
        let a = Coeff::one() + Coeff::eps();
        let b = Coeff::one() - Coeff::eps();
        let p = &a * &b;
        assert_eq!(p, Coeff::one() - &Coeff::eps() * &Coeff::eps());
        assert_eq!(p.eps_degree(), Some(2));
    }
}
