//! Polynomial vector fields on affine space.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Coeff, HSeries, MPoly, VarNames};

/// `Σ v_i ∂/∂u_i` with polynomial components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    arity: usize,
    comps: Vec<MPoly>,
}

impl VectorField {
    pub fn zero(arity: usize) -> Self {
        VectorField { arity, comps: vec![MPoly::zero(arity); arity] }
    }

    pub fn new(comps: Vec<MPoly>) -> Result<Self> {
        let arity = comps.len();
        if let Some(bad) = comps.iter().find(|c| c.arity() != arity) {
            return Err(Error::ArityMismatch { left: arity, right: bad.arity() });
        }
        Ok(VectorField { arity, comps })
    }

    /// `∂/∂u_i`.
    pub fn coordinate(arity: usize, i: usize) -> Self {
        let mut v = VectorField::zero(arity);
        v.comps[i] = MPoly::one(arity);
        v
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn components(&self) -> &[MPoly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &MPoly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MPoly::is_zero)
    }

    fn check(&self, arity: usize) -> Result<()> {
        if self.arity != arity {
            return Err(Error::ArityMismatch { left: self.arity, right: arity });
        }
        Ok(())
    }

    /// `v · f = Σ v_i ∂f/∂u_i`.
    pub fn apply(&self, f: &MPoly) -> Result<MPoly> {
        self.check(f.arity())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.arity);
        for (i, v) in self.comps.iter().enumerate() {
            if v.is_zero() || !f.depends_on(i) {
                continue;
            }
            out.add_assign_ref(&(v * &f.diff_unchecked(i)));
        }
        out
    }

    /// `v · s` on a series with polynomial coefficients.
    pub fn apply_series(&self, s: &HSeries) -> Result<HSeries> {
        self.check(s.arity())?;
        let coeffs = s.coeffs().iter().map(|c| self.apply_unchecked(c)).collect();
        HSeries::from_coeffs(self.arity, s.order(), coeffs)
    }

    /// Commutator `[v, w]` with components `v·w_i − w·v_i`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.check(other.arity)?;
        let comps = (0..self.arity)
            .map(|i| self.apply_unchecked(&other.comps[i]) - other.apply_unchecked(&self.comps[i]))
            .collect();
        Ok(VectorField { arity: self.arity, comps })
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        self.check(other.arity)?;
        Ok(VectorField { arity: self.arity, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, other: &VectorField) -> Result<VectorField> {
        self.check(other.arity)?;
        Ok(VectorField { arity: self.arity, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Coeff) -> VectorField {
        VectorField { arity: self.arity, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    /// `f v`.
    pub fn mul_poly(&self, f: &MPoly) -> VectorField {
        VectorField { arity: self.arity, comps: self.comps.iter().map(|p| p * f).collect() }
    }

    pub fn neg(&self) -> VectorField {
        self.scale(&Coeff::from_int(-1))
    }

    /// The field on `X^k` (blocks of size `arity`) acting on block `target`,
    /// with its coefficients read in block `source`.
    ///
    /// With `source == target` this is the usual placement on one factor.
    pub fn place(&self, blocks: usize, target: usize, source: usize) -> VectorField {
        let n = self.arity;
        let total = n * blocks;
        let map: Vec<usize> = (0..n).map(|i| source * n + i).collect();
        let mut comps = vec![MPoly::zero(total); total];
        for (i, c) in self.comps.iter().enumerate() {
            comps[target * n + i] = c.embed(total, &map);
        }
        VectorField { arity: total, comps }
    }

    pub fn specialize_eps(&self, value: &BigRational) -> VectorField {
        VectorField { arity: self.arity, comps: self.comps.iter().map(|p| p.specialize_eps(value)).collect() }
    }

    pub fn to_strings(&self, names: &VarNames) -> Vec<String> {
        self.comps.iter().map(|p| p.to_string_with(names)).collect()
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::flat(self.arity);
        write!(f, "VectorField{:?}", self.to_strings(&names))
    }
}

/// A vector field with series components of ℏ-valuation ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVectorField {
    comps: Vec<HSeries>,
}

impl HVectorField {
    pub fn new(comps: Vec<HSeries>) -> Result<Self> {
        let arity = comps.len();
        let order = comps.first().map_or(0, HSeries::order);
        for c in &comps {
            if c.arity() != arity {
                return Err(Error::ArityMismatch { left: arity, right: c.arity() });
            }
            if c.order() != order {
                return Err(Error::OrderMismatch { left: order, right: c.order() });
            }
            if !c.coeff(0).is_zero() {
                return Err(Error::Valuation("vector field component has an h^0 term".into()));
            }
        }
        Ok(HVectorField { comps })
    }

    /// `ℏ^k v`.
    pub fn from_field(v: &VectorField, k: usize, order: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Valuation("a flow needs a field divisible by h".into()));
        }
        HVectorField::new(v.components().iter().map(|p| HSeries::from_poly(p.clone(), order).shift(k)).collect())
    }

    pub fn arity(&self) -> usize {
        self.comps.len()
    }

    pub fn order(&self) -> usize {
        self.comps.first().map_or(0, HSeries::order)
    }

    pub fn components(&self) -> &[HSeries] {
        &self.comps
    }

    pub fn neg(&self) -> HVectorField {
        HVectorField { comps: self.comps.iter().map(|c| -c).collect() }
    }

    pub fn checked_add(&self, other: &HVectorField) -> Result<HVectorField> {
        HVectorField::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?)
    }

    /// `v · s`.
    pub fn apply(&self, s: &HSeries) -> Result<HSeries> {
        if s.arity() != self.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: s.arity() });
        }
        if s.order() != self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: s.order() });
        }
        Ok(self.apply_unchecked(s))
    }

    pub(crate) fn apply_unchecked(&self, s: &HSeries) -> HSeries {
        let mut out = HSeries::zero(s.arity(), s.order());
        for (i, v) in self.comps.iter().enumerate() {
            if v.is_zero() || !s.depends_on(i) {
                continue;
            }
            out.add_assign_ref(&v.mul_unchecked(&s.diff_unchecked(i)));
        }
        out
    }

    /// Bracket of series fields.
    pub fn bracket(&self, other: &HVectorField) -> Result<HVectorField> {
        let comps = (0..self.arity())
            .map(|i| &self.apply_unchecked(&other.comps[i]) - &other.apply_unchecked(&self.comps[i]))
            .collect();
        HVectorField::new(comps)
    }
}
