//! Sparse multivariate polynomials with [`Coeff`] coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::coeff::Coeff;
use super::names::VarNames;
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically (total degree first, then
/// lexicographic with `x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u32,
    exps: Vec<u16>,
}

impl Mono {
    pub fn one(arity: usize) -> Self {
        Mono { deg: 0, exps: vec![0; arity] }
    }

    pub fn new(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Mono { deg, exps }
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = 1;
        Mono { deg: 1, exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let exps: Vec<u16> = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Mono { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let exps: Vec<u16> = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Mono { deg: other.deg - self.deg, exps }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// A polynomial in `arity` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    arity: usize,
    terms: BTreeMap<Mono, Coeff>,
}

impl MPoly {
    pub fn zero(arity: usize) -> Self {
        MPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Coeff) -> Self {
        let mut p = MPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Mono::one(arity), c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        MPoly::constant(arity, Coeff::one())
    }

    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable {} out of range for arity {}", i, arity);
        let mut p = MPoly::zero(arity);
        p.terms.insert(Mono::var(arity, i), Coeff::one());
        p
    }

    pub fn monomial(mono: Mono, c: Coeff) -> Self {
        let mut p = MPoly::zero(mono.arity());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<u16>, Coeff)>) -> Self {
        let mut p = MPoly::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector length must equal arity");
            p.add_term(Mono::new(e), &c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Mono) -> Coeff {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Mono::one(self.arity))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.deg == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.deg)
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn is_eps_free(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exps[var] > 0)
    }

    pub(crate) fn add_term(&mut self, mono: Mono, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MPoly) -> Result<()> {
        if self.arity != other.arity {
            Err(Error::ArityMismatch { left: self.arity, right: other.arity })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_assign_ref(&mut self, other: &MPoly) {
        debug_assert_eq!(self.arity, other.arity);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub(crate) fn sub_assign_ref(&mut self, other: &MPoly) {
        debug_assert_eq!(self.arity, other.arity);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    /// `self += c * other`.
    pub(crate) fn add_scaled(&mut self, other: &MPoly, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), &(d * c));
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.arity);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.arity);
        }
        MPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, d)| {
                    let p = d * c;
                    (!p.is_zero()).then(|| (m.clone(), p))
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly::one(self.arity);
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Result<MPoly> {
        if var >= self.arity {
            return Err(Error::VarOutOfRange { index: var, arity: self.arity });
        }
        Ok(self.diff_unchecked(var))
    }

    pub(crate) fn diff_unchecked(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            let mono = Mono { deg: m.deg - 1, exps };
            let c = c * &Coeff::from_int(e as i64);
            out.terms.insert(mono, c);
        }
        out
    }

    /// Re-expresses the polynomial in a ring of `new_arity` variables, sending
    /// variable `i` to variable `map[i]`. `map` must be injective.
    pub fn embed(&self, new_arity: usize, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.arity);
        let mut out = MPoly::zero(new_arity);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; new_arity];
            for (i, &e) in m.exps.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Mono { deg: m.deg, exps }, c);
        }
        out
    }

    /// Polynomial substitution `self(images)`.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.arity {
            return Err(Error::ImageCount { expected: self.arity, got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.arity,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|p| p.arity != target) {
            return Err(Error::ArityMismatch { left: target, right: bad.arity });
        }
        // Pure variable renaming is common enough to deserve a fast path.
        if let Some(map) = rename_map(images) {
            return Ok(self.embed(target, &map));
        }
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(p.arity), p.clone()]).collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_unchecked(&images[i]);
                    cache.push(next);
                }
                t = t.mul_unchecked(&cache[e as usize]);
            }
            out.add_assign_ref(&t);
        }
        Ok(out)
    }

    pub fn specialize_eps(&self, value: &BigRational) -> MPoly {
        let mut out = MPoly::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.specialize(value));
        }
        out
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// or its leading coefficient is not a unit.
    pub fn exact_div(&self, divisor: &MPoly) -> Option<MPoly> {
        if divisor.is_zero() || self.arity != divisor.arity {
            return None;
        }
        let (lm, lc) = divisor.leading()?;
        let lc_inv = lc.inverse()?;
        let (lm, lc_inv) = (lm.clone(), lc_inv);
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.arity);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            let step = MPoly::monomial(qm, qc);
            rem.sub_assign_ref(&step.mul_unchecked(divisor));
            quot.add_assign_ref(&step);
        }
        Some(quot)
    }

    /// Dense coefficient lookup for linear algebra: maps each term to `(mono, coeff)`.
    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Coeff)> {
        self.terms.into_iter()
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = format_mono(m, names);
            let (neg, body) = format_term(c, &mono);
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            s.push_str(&body);
        }
        s
    }
}

pub(crate) fn rename_map(images: &[MPoly]) -> Option<Vec<usize>> {
    let mut map = Vec::with_capacity(images.len());
    for p in images {
        if p.terms.len() != 1 {
            return None;
        }
        let (m, c) = p.terms.iter().next().unwrap();
        if m.deg != 1 || !c.is_one() {
            return None;
        }
        map.push(m.exps.iter().position(|&e| e == 1)?);
    }
    let mut seen = map.clone();
    seen.sort_unstable();
    seen.dedup();
    (seen.len() == map.len()).then_some(map)
}

fn format_mono(m: &Mono, names: &VarNames) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names.name(i)),
            _ => parts.push(format!("{}^{}", names.name(i), e)),
        }
    }
    parts.join("*")
}

/// Returns `(negative, body)` for a single term.
pub(crate) fn format_term(c: &Coeff, mono: &str) -> (bool, String) {
    if c.is_compound() {
        let body = if mono.is_empty() { format!("({})", c) } else { format!("({})*{}", c, mono) };
        return (false, body);
    }
    let neg = c.is_negative_leading();
    let mag = if neg { -c } else { c.clone() };
    let body = if mono.is_empty() {
        mag.to_string()
    } else if mag.is_one() {
        mono.to_string()
    } else {
        format!("{}*{}", mag, mono)
    };
    (neg, body)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&VarNames::flat(self.arity)))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.arity, self)
    }
}

// Operator impls panic on arity mismatch; use the `checked_*` methods for
// untrusted input.
impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("MPoly arity mismatch")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("MPoly arity mismatch")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("MPoly arity mismatch")
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        assert_eq!(self.arity, rhs.arity, "MPoly arity mismatch");
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        assert_eq!(self.arity, rhs.arity, "MPoly arity mismatch");
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Coeff::from_int(-1))
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(3, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p, &x(0).pow(2) - &x(1).pow(2));
    }

    #[test]
    fn absorbing_zero() {
        let p = &(&x(0) * &x(1)) + &x(2).scale(&Coeff::from_ratio(3, 2));
        assert!((&p * &MPoly::zero(3)).is_zero());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = &(&x(0).pow(2) * &x(1)) + &x(2).scale(&Coeff::from_ratio(3, 2));
        let b = -(&x(0).pow(2) * &x(1));
        let s = &a + &b;
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s, x(2).scale(&Coeff::from_ratio(3, 2)));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(matches!(
            MPoly::var(2, 0).checked_add(&MPoly::var(3, 0)),
            Err(Error::ArityMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn derivatives() {
        let p = &x(0).pow(2) * &x(1);
        assert_eq!(p.diff(0).unwrap(), (&x(0) * &x(1)).scale(&Coeff::from_int(2)));
        assert!(p.diff(2).unwrap().is_zero());
        let q = &(&x(0) * &x(1)) + &x(0);
        assert_eq!(q.diff(0).unwrap(), &x(1) + &MPoly::one(3));
        assert!(matches!(p.diff(3), Err(Error::VarOutOfRange { .. })));
    }

    #[test]
    fn graded_lex_order() {
        let p = &(&x(0) + &x(1).pow(2)) + &x(2);
        let order: Vec<_> = p.terms().rev().map(|(m, _)| m.exps().to_vec()).collect();
        assert_eq!(order, vec![vec![0, 2, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(p.to_string(), "x2^2 + x1 + x3");
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2).scale(&Coeff::from_int(2));
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!((&p + &MPoly::one(3)).exact_div(&a), None);
    }

    #[test]
    fn substitution() {
        let p = &x(0) * &x(1);
        let images = vec![&x(0) + &MPoly::one(3), x(1).pow(2), x(2)];
        assert_eq!(p.substitute(&images).unwrap(), &(&x(0) * &x(1).pow(2)) + &x(1).pow(2));
        let swap = vec![x(1), x(0), x(2)];
        assert_eq!((&x(0).pow(2) * &x(2)).substitute(&swap).unwrap(), &x(1).pow(2) * &x(2));
    }
}
