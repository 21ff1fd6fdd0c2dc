//! Finite-dimensional Lie algebras, actions and semidirect products.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Matrix};
use crate::report::{CheckItem, Witness};

/// Structure constants `[e_i, e_j] = Σ_k c_{ij}^k e_k` over ℚ[eps].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    consts: Vec<Coeff>,
}

pub(crate) fn fmt_vec(v: &[Coeff]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn default_labels(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{}{}", prefix, i)).collect()
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, labels: default_labels("e", dim), consts: vec![Coeff::zero(); dim * dim * dim] }
    }

    /// Builds from brackets of basis pairs; `[e_j, e_i]` is filled in by antisymmetry.
    pub fn new(labels: Vec<String>, brackets: Vec<(usize, usize, Vec<Coeff>)>) -> Result<Self> {
        let dim = labels.len();
        let mut alg = LieAlgebra { dim, labels, consts: vec![Coeff::zero(); dim * dim * dim] };
        for (i, j, v) in brackets {
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::Dimension(format!("bracket ({}, {}) in dimension {}", i, j, dim)));
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Invalid(format!("[e{0}, e{0}] must vanish", i + 1)));
                }
                continue;
            }
            let existing = alg.bracket_basis(i, j);
            if existing.iter().any(|c| !c.is_zero()) && existing != v {
                return Err(Error::Invalid(format!("bracket ({}, {}) given twice inconsistently", i, j)));
            }
            for (k, c) in v.into_iter().enumerate() {
                alg.set(j, i, k, -&c);
                alg.set(i, j, k, c);
            }
        }
        Ok(alg)
    }

    /// From a full table `c[i][j][k]`; antisymmetry is verified.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<Vec<Coeff>>>) -> Result<Self> {
        let dim = labels.len();
        let mut alg = LieAlgebra { dim, labels, consts: vec![Coeff::zero(); dim * dim * dim] };
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Dimension("structure constant table shape".into()));
        }
        for (i, row) in table.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                for (k, c) in v.into_iter().enumerate() {
                    alg.set(i, j, k, c);
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if alg.c(i, j, k) != &-alg.c(j, i, k) {
                        return Err(Error::Invalid(format!("structure constants not antisymmetric at ({}, {})", i, j)));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn set(&mut self, i: usize, j: usize, k: usize, c: Coeff) {
        let d = self.dim;
        self.consts[(i * d + j) * d + k] = c;
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Coeff {
        let d = self.dim;
        &self.consts[(i * d + j) * d + k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Coeff> {
        (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
        let d = self.dim;
        let mut out = vec![Coeff::zero(); d];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Coeff]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut e = vec![Coeff::zero(); self.dim];
            e[j] = Coeff::one();
            for (k, v) in self.bracket(x, &e).into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(Coeff::is_zero)
    }

    pub fn specialize_eps(&self, value: &BigRational) -> LieAlgebra {
        LieAlgebra {
            dim: self.dim,
            labels: self.labels.clone(),
            consts: self.consts.iter().map(|c| c.specialize(value)).collect(),
        }
    }

    /// Jacobi residual `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<Coeff> {
        let e = |t: usize| -> Vec<Coeff> {
            let mut v = vec![Coeff::zero(); self.dim];
            v[t] = Coeff::one();
            v
        };
        let t1 = self.bracket(&e(i), &self.bracket_basis(j, k));
        let t2 = self.bracket(&e(j), &self.bracket_basis(k, i));
        let t3 = self.bracket(&e(k), &self.bracket_basis(i, j));
        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| &(a + b) + c).collect()
    }

    /// Every basis triple `i < j < k` (1-based in the witness) violating Jacobi.
    pub fn check_jacobi(&self) -> CheckItem {
        let mut w = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let r = self.jacobi_residual(i, j, k);
                    if r.iter().any(|c| !c.is_zero()) {
                        w.push(Witness { location: format!("({}, {}, {})", i + 1, j + 1, k + 1), residual: fmt_vec(&r) });
                    }
                }
            }
        }
        CheckItem::from_witnesses("jacobi", w)
    }

    /// Structure constants in a new basis whose vectors are the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix) -> Result<LieAlgebra> {
        let inv = basis.inverse()?;
        let d = self.dim;
        let cols: Vec<Vec<Coeff>> = (0..d).map(|j| basis.column(j)).collect();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let b = self.bracket(&cols[i], &cols[j]);
                brackets.push((i, j, inv.mul_vec(&b)?));
            }
        }
        LieAlgebra::new(self.labels.clone(), brackets)
    }
}

/// A linear action of a Lie algebra on a vector space, one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAction {
    target_dim: usize,
    mats: Vec<Matrix>,
}

impl LieAction {
    pub fn new(target_dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        if mats.iter().any(|m| m.rows() != target_dim || m.cols() != target_dim) {
            return Err(Error::Dimension(format!("action matrices must be {0}x{0}", target_dim)));
        }
        Ok(LieAction { target_dim, mats })
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LieAction { target_dim, mats: vec![Matrix::zeros(target_dim, target_dim); source_dim] }
    }

    pub fn source_dim(&self) -> usize {
        self.mats.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.mats[i]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// Matrix of `Σ x_i ρ(e_i)`.
    pub fn matrix_of(&self, x: &[Coeff]) -> Matrix {
        let mut m = Matrix::zeros(self.target_dim, self.target_dim);
        for (c, a) in x.iter().zip(&self.mats) {
            if !c.is_zero() {
                m = m.checked_add(&a.scale(c)).expect("shape");
            }
        }
        m
    }

    pub fn act(&self, x: &[Coeff], v: &[Coeff]) -> Vec<Coeff> {
        self.matrix_of(x).mul_vec(v).expect("shape")
    }

    pub fn specialize_eps(&self, value: &BigRational) -> LieAction {
        LieAction { target_dim: self.target_dim, mats: self.mats.iter().map(|m| m.specialize_eps(value)).collect() }
    }

    /// `ρ([e_i,e_j]) = [ρ(e_i), ρ(e_j)]` on all basis pairs.
    pub fn check_homomorphism(&self, source: &LieAlgebra) -> CheckItem {
        let mut w = Vec::new();
        for i in 0..self.source_dim() {
            for j in i + 1..self.source_dim() {
                let lhs = self.matrix_of(&source.bracket_basis(i, j));
                let (a, b) = (&self.mats[i], &self.mats[j]);
                let rhs = a.checked_mul(b).unwrap().checked_sub(&b.checked_mul(a).unwrap()).unwrap();
                let diff = lhs.checked_sub(&rhs).unwrap();
                if !diff.is_zero() {
                    w.push(Witness { location: format!("({}, {})", i + 1, j + 1), residual: format!("{:?}", diff) });
                }
            }
        }
        CheckItem::from_witnesses("action is a homomorphism", w)
    }

    /// `ρ(e_i)[a_j, a_k] = [ρ(e_i)a_j, a_k] + [a_j, ρ(e_i)a_k]` on all basis triples.
    pub fn check_derivation(&self, target: &LieAlgebra) -> CheckItem {
        let d = self.target_dim;
        let mut w = Vec::new();
        for (i, m) in self.mats.iter().enumerate() {
            for j in 0..d {
                for k in j + 1..d {
                    let lhs = m.mul_vec(&target.bracket_basis(j, k)).unwrap();
                    let mj = m.column(j);
                    let mk = m.column(k);
                    let mut ej = vec![Coeff::zero(); d];
                    ej[j] = Coeff::one();
                    let mut ek = vec![Coeff::zero(); d];
                    ek[k] = Coeff::one();
                    let r1 = target.bracket(&mj, &ek);
                    let r2 = target.bracket(&ej, &mk);
                    let res: Vec<Coeff> = lhs.iter().zip(&r1).zip(&r2).map(|((l, a), b)| &(l - a) - b).collect();
                    if res.iter().any(|c| !c.is_zero()) {
                        w.push(Witness { location: format!("({}; {}, {})", i + 1, j + 1, k + 1), residual: fmt_vec(&res) });
                    }
                }
            }
        }
        CheckItem::from_witnesses("action by derivations", w)
    }
}

/// `𝔞 ⋊ 𝔤` with basis `(a_1..a_da, g_1..g_dg)` and bracket
/// `[(a,g),(b,h)] = (g·b − h·a + [a,b], [g,h])`.
pub fn semidirect(a: &LieAlgebra, g: &LieAlgebra, rho: &LieAction) -> Result<LieAlgebra> {
    if rho.source_dim() != g.dim() || rho.target_dim() != a.dim() {
        return Err(Error::Dimension("action does not match the algebras".into()));
    }
    let der = rho.check_derivation(a);
    if !der.passed {
        return Err(Error::Invalid(format!("action is not by derivations at {}", der.witness[0].location)));
    }
    let (da, dg) = (a.dim(), g.dim());
    let d = da + dg;
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![Coeff::zero(); d];
            match (i < da, j < da) {
                (true, true) => v[..da].clone_from_slice(&a.bracket_basis(i, j)),
                (true, false) => {
                    // [(a_i,0),(0,g)] = -(g·a_i, 0)
                    let col = rho.matrix(j - da).column(i);
                    for (k, c) in col.into_iter().enumerate() {
                        v[k] = -c;
                    }
                }
                (false, false) => v[da..].clone_from_slice(&g.bracket_basis(i - da, j - da)),
                (false, true) => unreachable!(),
            }
            brackets.push((i, j, v));
        }
    }
    let labels = a.labels().iter().chain(g.labels()).cloned().collect();
    LieAlgebra::new(labels, brackets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis() -> LieAlgebra {
        LieAlgebra::new(
            vec!["X".into(), "Y".into(), "C".into()],
            vec![(0, 1, vec![Coeff::zero(), Coeff::zero(), Coeff::one()])],
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_and_abelian_pass_jacobi() {
        assert!(heis().check_jacobi().passed);
        assert!(LieAlgebra::abelian(4).check_jacobi().passed);
    }

    #[test]
    fn broken_jacobi_is_located() {
        let e = |k: usize| {
            let mut v = vec![Coeff::zero(); 3];
            v[k] = Coeff::one();
            v
        };
        let alg = LieAlgebra::new(
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec![(0, 1, e(0)), (0, 2, e(1))],
        )
        .unwrap();
        let item = alg.check_jacobi();
        assert!(!item.passed);
        assert_eq!(item.witness[0].location, "(1, 2, 3)");
    }

    #[test]
    fn one_dimensional_derivation() {
        // g = span{t} acting on abelian a = span{b1, b2} by D = [[0,1],[0,0]]
        let a = LieAlgebra::abelian(2);
        let g = LieAlgebra::abelian(1);
        let rho = LieAction::new(2, vec![Matrix::from_ints(&[&[0, 1], &[0, 0]])]).unwrap();
        let s = semidirect(&a, &g, &rho).unwrap();
        // [(0,t),(b2,0)] = (D b2, 0) = (b1, 0)
        assert_eq!(s.bracket_basis(2, 1), vec![Coeff::one(), Coeff::zero(), Coeff::zero()]);
        assert!(s.check_jacobi().passed);
    }

    #[test]
    fn abelian_direct_sum() {
        let s = semidirect(&LieAlgebra::abelian(2), &LieAlgebra::abelian(2), &LieAction::zero(2, 2)).unwrap();
        assert!(s.is_abelian());
    }
}
