//! Power series in ℏ truncated at a fixed order, with [`MPoly`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::coeff::Coeff;
use super::mpoly::{format_term, MPoly};
use super::names::VarNames;
use crate::error::{Error, Result};

/// `Σ_{m=0}^{N} c_m ℏ^m  mod ℏ^{N+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HSeries {
    arity: usize,
    coeffs: Vec<MPoly>,
}

impl HSeries {
    pub fn zero(arity: usize, order: usize) -> Self {
        HSeries { arity, coeffs: vec![MPoly::zero(arity); order + 1] }
    }

    pub fn one(arity: usize, order: usize) -> Self {
        HSeries::from_poly(MPoly::one(arity), order)
    }

    /// The polynomial `p` placed at ℏ⁰.
    pub fn from_poly(p: MPoly, order: usize) -> Self {
        let mut s = HSeries::zero(p.arity(), order);
        s.coeffs[0] = p;
        s
    }

    pub fn constant(arity: usize, order: usize, c: Coeff) -> Self {
        HSeries::from_poly(MPoly::constant(arity, c), order)
    }

    /// `ℏ` itself.
    pub fn h(arity: usize, order: usize) -> Self {
        let mut s = HSeries::zero(arity, order);
        if order >= 1 {
            s.coeffs[1] = MPoly::one(arity);
        }
        s
    }

    /// Builds a series from coefficients `c_0, c_1, ...`; missing orders are zero and
    /// orders above `order` are dropped.
    pub fn from_coeffs(arity: usize, order: usize, coeffs: Vec<MPoly>) -> Result<Self> {
        let mut s = HSeries::zero(arity, order);
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.arity() != arity {
                return Err(Error::ArityMismatch { left: arity, right: c.arity() });
            }
            if k <= order {
                s.coeffs[k] = c;
            }
        }
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, p: MPoly) {
        assert_eq!(p.arity(), self.arity);
        if k < self.coeffs.len() {
            self.coeffs[k] = p;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }

    /// Lowest ℏ power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn with_order(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: order });
        }
        Ok(HSeries { arity: self.arity, coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check(&self, other: &HSeries) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &HSeries) -> Result<HSeries> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &HSeries) -> Result<HSeries> {
        self.check(other)?;
        let mut out = self.clone();
        out.sub_assign_ref(other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &HSeries) -> Result<HSeries> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_assign_ref(&mut self, other: &HSeries) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
    }

    pub(crate) fn sub_assign_ref(&mut self, other: &HSeries) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.sub_assign_ref(b);
        }
    }

    /// `self += c * other`.
    pub(crate) fn add_scaled(&mut self, other: &HSeries, c: &Coeff) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(b, c);
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &HSeries) -> HSeries {
        let n = self.order();
        let mut out = HSeries::zero(self.arity, n);
        let (Some(va), Some(vb)) = (self.valuation(), other.valuation()) else {
            return out;
        };
        for i in va..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in vb..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let p = &self.coeffs[i] * &other.coeffs[j];
                out.coeffs[i + j].add_assign_ref(&p);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> HSeries {
        HSeries { arity: self.arity, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &MPoly) -> HSeries {
        HSeries { arity: self.arity, coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// Multiplication by `ℏ^k`.
    pub fn shift(&self, k: usize) -> HSeries {
        let n = self.order();
        let mut out = HSeries::zero(self.arity, n);
        for i in 0..=n {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> HSeries {
        let mut out = HSeries::one(self.arity, self.order());
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    pub fn diff(&self, var: usize) -> Result<HSeries> {
        if var >= self.arity {
            return Err(Error::VarOutOfRange { index: var, arity: self.arity });
        }
        Ok(self.diff_unchecked(var))
    }

    pub(crate) fn diff_unchecked(&self, var: usize) -> HSeries {
        HSeries { arity: self.arity, coeffs: self.coeffs.iter().map(|c| c.diff_unchecked(var)).collect() }
    }

    pub fn embed(&self, new_arity: usize, map: &[usize]) -> HSeries {
        HSeries { arity: new_arity, coeffs: self.coeffs.iter().map(|c| c.embed(new_arity, map)).collect() }
    }

    pub fn specialize_eps(&self, value: &BigRational) -> HSeries {
        HSeries { arity: self.arity, coeffs: self.coeffs.iter().map(|c| c.specialize_eps(value)).collect() }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.coeffs.iter().any(|c| c.depends_on(var))
    }

    /// Quotient `self / divisor`.
    ///
    /// If the divisor has ℏ-valuation `k`, the numerator must have valuation at
    /// least `k`, every order-by-order polynomial division by the divisor's
    /// lowest coefficient must be exact, and the quotient is only known to
    /// order `N - k`.
    pub fn checked_div(&self, divisor: &HSeries) -> Result<HSeries> {
        self.check(divisor)?;
        let k = divisor
            .valuation()
            .ok_or_else(|| Error::NotInvertible("division by a series that vanishes to this order".into()))?;
        if self.valuation().is_some_and(|v| v < k) {
            return Err(Error::NotInvertible(format!(
                "numerator has h-valuation below the divisor's ({})",
                k
            )));
        }
        let n = self.order() - k;
        let lead = &divisor.coeffs[k];
        let unit = if lead.is_constant() { lead.constant_term().inverse() } else { None };
        let mut q: Vec<MPoly> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut rhs = self.coeffs[k + m].clone();
            for (i, qi) in q.iter().enumerate() {
                let b = &divisor.coeffs[k + m - i];
                if !qi.is_zero() && !b.is_zero() {
                    rhs.sub_assign_ref(&(qi * b));
                }
            }
            let qm = match &unit {
                Some(inv) => rhs.scale(inv),
                None => rhs.exact_div(lead).ok_or_else(|| {
                    Error::NotInvertible(format!("divisor's leading coefficient {} does not divide exactly", lead))
                })?,
            };
            q.push(qm);
        }
        HSeries::from_coeffs(self.arity, n, q)
    }

    /// Multiplicative inverse; the ℏ⁰ coefficient must be a unit constant.
    pub fn inverse(&self) -> Result<HSeries> {
        let c0 = &self.coeffs[0];
        if !(c0.is_constant() && c0.constant_term().is_unit()) {
            return Err(Error::NotInvertible(format!("constant term {} is not a unit", c0)));
        }
        HSeries::one(self.arity, self.order()).checked_div(self)
    }

    /// `ln(self)` for a series that is 1 modulo ℏ.
    pub fn ln(&self) -> Result<HSeries> {
        if self.coeffs[0] != MPoly::one(self.arity) {
            return Err(Error::LnArgument);
        }
        let mut t = self.clone();
        t.coeffs[0] = MPoly::zero(self.arity);
        let mut out = HSeries::zero(self.arity, self.order());
        let mut tp = t.clone();
        for k in 1..=self.order() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&tp, &Coeff::from_ratio(sign, k as i64));
            tp = tp.mul_unchecked(&t);
        }
        Ok(out)
    }

    /// `exp(self)` for a series that vanishes modulo ℏ.
    pub fn exp(&self) -> Result<HSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpArgument);
        }
        let mut out = HSeries::one(self.arity, self.order());
        let mut term = HSeries::one(self.arity, self.order());
        for k in 1..=self.order() {
            term = term.mul_unchecked(self).scale(&Coeff::from_ratio(1, k as i64));
            out.add_assign_ref(&term);
        }
        Ok(out)
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let h = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{}", k),
            };
            let poly = c.to_string_with(names);
            if k == 0 {
                parts.push(poly);
            } else if c.num_terms() == 1 {
                let (m, coeff) = c.terms().next().unwrap();
                let mono_str = MPoly::monomial(m.clone(), Coeff::one()).to_string_with(names);
                let mono = if mono_str == "1" { h } else { format!("{}*{}", h, mono_str) };
                let (neg, body) = format_term(coeff, &mono);
                parts.push(if neg { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{}*({})", h, poly));
            }
        }
        if parts.is_empty() {
            return format!("O(h^{})", self.order() + 1);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&VarNames::flat(self.arity)))
    }
}

impl fmt::Debug for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HSeries[{}; N={}]({})", self.arity, self.order(), self)
    }
}

impl<'a> Add<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        self.checked_add(rhs).expect("HSeries shape mismatch")
    }
}

impl<'a> Sub<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn sub(self, rhs: &HSeries) -> HSeries {
        self.checked_sub(rhs).expect("HSeries shape mismatch")
    }
}

impl<'a> Mul<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        self.checked_mul(rhs).expect("HSeries shape mismatch")
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        self.scale(&Coeff::from_int(-1))
    }
}
