//! Polynomials and vector fields as sparse coordinate vectors, for exact span
//! and rank computations.
//!
//! Keys put larger monomials first, so the leading monomial of each echelon
//! basis element is its pivot.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::VectorField;
use crate::poly::{Coeff, Echelon, MPoly, Mono};

pub(crate) trait Spannable: Clone {
    type Key: Ord + Clone;

    fn sparse(&self) -> BTreeMap<Self::Key, Coeff>;
    fn from_sparse(arity: usize, v: &BTreeMap<Self::Key, Coeff>) -> Self;
    fn add_scaled_in_place(&mut self, other: &Self, c: &Coeff);
}

impl Spannable for MPoly {
    type Key = Reverse<Mono>;

    fn sparse(&self) -> BTreeMap<Reverse<Mono>, Coeff> {
        self.terms().map(|(m, c)| (Reverse(m.clone()), c.clone())).collect()
    }

    fn from_sparse(arity: usize, v: &BTreeMap<Reverse<Mono>, Coeff>) -> Self {
        let mut p = MPoly::zero(arity);
        for (Reverse(m), c) in v {
            p.add_term(m.clone(), c);
        }
        p
    }

    fn add_scaled_in_place(&mut self, other: &Self, c: &Coeff) {
        self.add_scaled(other, c);
    }
}

impl Spannable for VectorField {
    type Key = (usize, Reverse<Mono>);

    fn sparse(&self) -> BTreeMap<(usize, Reverse<Mono>), Coeff> {
        let mut out = BTreeMap::new();
        for (i, p) in self.components().iter().enumerate() {
            for (m, c) in p.terms() {
                out.insert((i, Reverse(m.clone())), c.clone());
            }
        }
        out
    }

    fn from_sparse(arity: usize, v: &BTreeMap<(usize, Reverse<Mono>), Coeff>) -> Self {
        let mut comps = vec![MPoly::zero(arity); arity];
        for ((i, Reverse(m)), c) in v {
            comps[*i].add_term(m.clone(), c);
        }
        VectorField::new(comps).expect("consistent arity")
    }

    fn add_scaled_in_place(&mut self, other: &Self, c: &Coeff) {
        *self = self.checked_add(&other.scale(c)).expect("same arity");
    }
}

/// Canonical echelon basis of a span, with coordinates of each generator.
pub(crate) struct Span<T: Spannable> {
    pub(crate) basis: Vec<T>,
    pub(crate) coords: Vec<Vec<Coeff>>,
    ech: Echelon<T::Key>,
    arity: usize,
}

impl<T: Spannable> Span<T> {
    pub(crate) fn new(arity: usize, items: &[T]) -> Result<Self> {
        let vecs: Vec<_> = items.iter().map(Spannable::sparse).collect();
        let ech = Echelon::new(&vecs)?;
        let basis = ech.basis().iter().map(|v| T::from_sparse(arity, v)).collect();
        let coords = vecs
            .iter()
            .map(|v| ech.coordinates(v).ok_or_else(|| Error::Construction("generator outside its own span".into())))
            .collect::<Result<_>>()?;
        Ok(Span { basis, coords, ech, arity })
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn coordinates(&self, item: &T) -> Option<Vec<Coeff>> {
        self.ech.coordinates(&item.sparse())
    }

    pub(crate) fn combine(&self, coeffs: &[Coeff]) -> T {
        combine(self.arity, &self.basis, coeffs)
    }
}

/// `Σ c_i items_i`.
pub(crate) fn combine<T: Spannable>(arity: usize, items: &[T], coeffs: &[Coeff]) -> T {
    let mut out = T::from_sparse(arity, &BTreeMap::new());
    for (t, c) in items.iter().zip(coeffs) {
        if !c.is_zero() {
            out.add_scaled_in_place(t, c);
        }
    }
    out
}

/// Rank of a family of polynomials or fields.
pub(crate) fn rank<T: Spannable>(items: &[T]) -> Result<usize> {
    let vecs: Vec<_> = items.iter().map(Spannable::sparse).collect();
    Ok(Echelon::new(&vecs)?.rank())
}

/// Canonical form of `Σ l_i ⊗ r_i`: the `r` side becomes the echelon basis of
/// the tensor's `r`-span and the `l` side is determined by it.
pub(crate) fn canonical_pairs<L: Spannable, R: Spannable>(
    l_arity: usize,
    r_arity: usize,
    pairs: &[(L, R)],
) -> Result<Vec<(L, R)>> {
    let ls: Vec<L> = pairs.iter().map(|(l, _)| l.clone()).collect();
    let rs: Vec<R> = pairs.iter().map(|(_, r)| r.clone()).collect();
    let lspan = Span::new(l_arity, &ls)?;
    // Σ_i l_i ⊗ r_i = Σ_k lbasis_k ⊗ w_k with w_k = Σ_i α_ik r_i.
    let w: Vec<R> = (0..lspan.dim())
        .map(|k| {
            let c: Vec<Coeff> = lspan.coords.iter().map(|a| a[k].clone()).collect();
            combine(r_arity, &rs, &c)
        })
        .collect();
    let rspan = Span::new(r_arity, &w)?;
    // w_k = Σ_m c_km v_m, so the tensor is Σ_m (Σ_k c_km lbasis_k) ⊗ v_m.
    Ok((0..rspan.dim())
        .map(|m| {
            let c: Vec<Coeff> = rspan.coords.iter().map(|ck| ck[m].clone()).collect();
            (lspan.combine(&c), rspan.basis[m].clone())
        })
        .collect())
}
