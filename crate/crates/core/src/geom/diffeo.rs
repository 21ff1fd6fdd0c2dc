//! Formal diffeomorphisms of `X^k`: coordinate images that reduce to the
//! identity modulo ℏ.
//!
//! Convention: a diffeomorphism is a point map `u ↦ F(u)` given by its images
//! `F_i(u)`. [`FormalDiffeo::compose`]`(F, G)` is "F then G", with images
//! `G_i(F(u))`. Functions pull back as `f ↦ f ∘ F`.

use num_rational::BigRational;

use super::field::HVectorField;
use crate::error::{Error, Result};
use crate::poly::{mpoly_subst, series_subst, Coeff, HSeries, MPoly, VarNames};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDiffeo {
    images: Vec<HSeries>,
}

fn coordinate(arity: usize, i: usize, order: usize) -> HSeries {
    HSeries::from_poly(MPoly::var(arity, i), order)
}

impl FormalDiffeo {
    pub fn identity(arity: usize, order: usize) -> Self {
        FormalDiffeo { images: (0..arity).map(|i| coordinate(arity, i, order)).collect() }
    }

    pub fn new(images: Vec<HSeries>) -> Result<Self> {
        let arity = images.len();
        let order = images.first().map_or(0, HSeries::order);
        for (i, s) in images.iter().enumerate() {
            if s.arity() != arity {
                return Err(Error::ArityMismatch { left: arity, right: s.arity() });
            }
            if s.order() != order {
                return Err(Error::OrderMismatch { left: order, right: s.order() });
            }
            if s.coeff(0) != &MPoly::var(arity, i) {
                return Err(Error::Valuation(format!("image {} is not the identity modulo h", i + 1)));
            }
        }
        Ok(FormalDiffeo { images })
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn order(&self) -> usize {
        self.images.first().map_or(0, HSeries::order)
    }

    pub fn images(&self) -> &[HSeries] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &HSeries {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        *self == FormalDiffeo::identity(self.arity(), self.order())
    }

    fn check(&self, other: &FormalDiffeo) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    /// "self then other": images `other_i(self(u))`.
    pub fn compose(&self, other: &FormalDiffeo) -> Result<FormalDiffeo> {
        self.check(other)?;
        let images = other.images.iter().map(|g| series_subst(g, &self.images)).collect::<Result<_>>()?;
        Ok(FormalDiffeo { images })
    }

    /// Two-sided inverse, refined one order of ℏ per step.
    pub fn invert(&self) -> Result<FormalDiffeo> {
        let (m, n) = (self.arity(), self.order());
        let id = FormalDiffeo::identity(m, n);
        // First guess: u − (F(u) − u).
        let mut h = FormalDiffeo {
            images: (0..m).map(|i| &(&id.images[i] + &id.images[i]) - &self.images[i]).collect(),
        };
        for _ in 1..n {
            let err: Vec<HSeries> =
                self.compose(&h)?.images.iter().zip(&id.images).map(|(a, b)| a - b).collect();
            if err.iter().all(HSeries::is_zero) {
                break;
            }
            h = FormalDiffeo { images: h.images.iter().zip(&err).map(|(a, e)| a - e).collect() };
        }
        Ok(h)
    }

    /// Pullback `f ↦ f ∘ F` of a polynomial.
    pub fn pullback(&self, f: &MPoly) -> Result<HSeries> {
        mpoly_subst(f, &self.images)
    }

    pub fn pullback_series(&self, f: &HSeries) -> Result<HSeries> {
        series_subst(f, &self.images)
    }

    /// For `self` on `X²` with blocks of size `n`, the diffeomorphism of `X^k`
    /// acting on blocks `i` and `j` (0-based, `i < j`) and fixing the others.
    pub fn place(&self, n: usize, i: usize, j: usize, k: usize) -> Result<FormalDiffeo> {
        if self.arity() != 2 * n {
            return Err(Error::Dimension(format!("expected a map of X^2 with arity {}", 2 * n)));
        }
        if !(i < j && j < k) {
            return Err(Error::Invalid(format!("factor placement ({}, {}) in X^{}", i + 1, j + 1, k)));
        }
        let total = n * k;
        let map: Vec<usize> = (0..n).map(|t| i * n + t).chain((0..n).map(|t| j * n + t)).collect();
        let mut images: Vec<HSeries> = (0..total).map(|t| coordinate(total, t, self.order())).collect();
        for (s, img) in self.images.iter().enumerate() {
            images[map[s]] = img.embed(total, &map);
        }
        Ok(FormalDiffeo { images })
    }

    /// `σ ∘ F ∘ σ` where `σ` swaps the two blocks of `X²`.
    pub fn swap_conjugate(&self, n: usize) -> Result<FormalDiffeo> {
        if self.arity() != 2 * n {
            return Err(Error::Dimension(format!("expected a map of X^2 with arity {}", 2 * n)));
        }
        let swap: Vec<usize> = (0..2 * n).map(|t| (t + n) % (2 * n)).collect();
        let mut images = vec![HSeries::zero(2 * n, self.order()); 2 * n];
        for (s, img) in self.images.iter().enumerate() {
            images[swap[s]] = img.embed(2 * n, &swap);
        }
        Ok(FormalDiffeo { images })
    }

    pub fn specialize_eps(&self, value: &BigRational) -> FormalDiffeo {
        FormalDiffeo { images: self.images.iter().map(|s| s.specialize_eps(value)).collect() }
    }

    /// Coefficient of `ℏ^k` in each image, as a polynomial vector.
    pub fn order_coeffs(&self, k: usize) -> Vec<MPoly> {
        self.images.iter().map(|s| s.coeff(k).clone()).collect()
    }

    /// First `(order, coordinate)` where `self` and `other` differ.
    pub fn first_difference(&self, other: &FormalDiffeo) -> Option<(usize, usize)> {
        for k in 0..=self.order().min(other.order()) {
            for i in 0..self.arity().min(other.arity()) {
                if self.images[i].coeff(k) != other.images[i].coeff(k) {
                    return Some((k, i));
                }
            }
        }
        None
    }

    pub fn to_strings(&self, names: &VarNames) -> Vec<String> {
        self.images.iter().map(|s| s.to_string_with(names)).collect()
    }
}

/// Images `e^v(u_i) = Σ_k v^k(u_i)/k!` of the variables in `vars`.
pub fn flow_images(v: &HVectorField, vars: &[usize]) -> Result<Vec<HSeries>> {
    let (m, n) = (v.arity(), v.order());
    let mut out = Vec::with_capacity(vars.len());
    for &i in vars {
        if i >= m {
            return Err(Error::VarOutOfRange { index: i, arity: m });
        }
        let mut term = coordinate(m, i, n);
        let mut acc = term.clone();
        for k in 1..=n {
            term = v.apply_unchecked(&term).scale(&Coeff::from_ratio(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc.add_assign_ref(&term);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Time-one flow of a field divisible by ℏ.
pub fn flow(v: &HVectorField) -> Result<FormalDiffeo> {
    let vars: Vec<usize> = (0..v.arity()).collect();
    Ok(FormalDiffeo { images: flow_images(v, &vars)? })
}
