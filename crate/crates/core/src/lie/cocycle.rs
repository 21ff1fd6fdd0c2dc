//! Bijective 1-cocycles `π: 𝔤 → 𝔞` and their exponentiation to formal groups.

use num_rational::BigRational;

use super::algebra::{fmt_vec, semidirect, LieAction, LieAlgebra};
use super::group::{bch, GroupLog};
use crate::error::{Error, Result};
use crate::poly::{Coeff, Matrix};
use crate::report::{CheckItem, Witness};

/// `π` together with the data it is a cocycle for.
///
/// The cocycle law is `π[g,h] = [πg, πh] + g·πh − h·πg`.
#[derive(Clone, Debug)]
pub struct LieCocycle {
    a: LieAlgebra,
    g: LieAlgebra,
    rho: LieAction,
    pi: Matrix,
    pi_inv: Matrix,
    semi: LieAlgebra,
}

impl LieCocycle {
    /// Requires `π` square and invertible over ℚ[eps] and the action by derivations.
    pub fn new(a: LieAlgebra, g: LieAlgebra, rho: LieAction, pi: Matrix) -> Result<Self> {
        if pi.rows() != a.dim() || pi.cols() != g.dim() {
            return Err(Error::Dimension(format!(
                "cocycle matrix is {}x{}, algebras have dimensions {} and {}",
                pi.rows(),
                pi.cols(),
                a.dim(),
                g.dim()
            )));
        }
        let pi_inv = pi.inverse().map_err(|e| Error::NotInvertible(format!("cocycle: {}", e)))?;
        let semi = semidirect(&a, &g, &rho)?;
        Ok(LieCocycle { a, g, rho, pi, pi_inv, semi })
    }

    pub fn a(&self) -> &LieAlgebra {
        &self.a
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn rho(&self) -> &LieAction {
        &self.rho
    }

    pub fn pi(&self) -> &Matrix {
        &self.pi
    }

    pub fn pi_inv(&self) -> &Matrix {
        &self.pi_inv
    }

    /// `𝔞 ⋊ 𝔤`, basis `a` first.
    pub fn semidirect(&self) -> &LieAlgebra {
        &self.semi
    }

    pub fn specialize_eps(&self, value: &BigRational) -> Result<LieCocycle> {
        LieCocycle::new(
            self.a.specialize_eps(value),
            self.g.specialize_eps(value),
            self.rho.specialize_eps(value),
            self.pi.specialize_eps(value),
        )
    }

    /// The cocycle law on every basis pair.
    pub fn check(&self) -> CheckItem {
        check_cocycle_law(&self.a, &self.g, &self.rho, &self.pi)
    }

    /// `π̃(e^g)`: the 𝔞-part of `e^{(π(g), g)} e^{(0, −g)}` in `A ⋊ G`.
    pub fn exponentiate(&self, g_log: &GroupLog) -> Result<GroupLog> {
        if g_log.dim() != self.g.dim() {
            return Err(Error::Dimension("log is not in the acting algebra".into()));
        }
        let lifted = g_log.map_linear(&self.pi).concat(g_log);
        let zero_a = GroupLog::zero(self.a.dim(), g_log.arity(), g_log.order());
        let back = zero_a.concat(&g_log.neg());
        let prod = bch(&self.semi, &lifted, &back)?;
        let da = self.a.dim();
        let rest = prod.slice(da..prod.dim());
        if !rest.is_zero() {
            return Err(Error::Construction("factorization left a nonzero group part".into()));
        }
        Ok(prod.slice(0..da))
    }

    /// `π̃⁻¹`, by the fixed-point iteration `g ← g + π⁻¹(a − π̃(g))`, which gains
    /// one order of ℏ per step.
    pub fn invert(&self, a_log: &GroupLog) -> Result<GroupLog> {
        if a_log.dim() != self.a.dim() {
            return Err(Error::Dimension("log is not in the target algebra".into()));
        }
        let mut g = a_log.map_linear(&self.pi_inv);
        for _ in 1..a_log.order() {
            let err = a_log.sub(&self.exponentiate(&g)?);
            if err.is_zero() {
                break;
            }
            g = g.add(&err.map_linear(&self.pi_inv));
        }
        Ok(g)
    }

    /// `g ⊳ a = e^{ρ(g)} a`, computed as conjugation inside `A ⋊ G`.
    pub fn act(&self, g_log: &GroupLog, a_log: &GroupLog) -> Result<GroupLog> {
        let da = self.a.dim();
        let zg = GroupLog::zero(da, g_log.arity(), g_log.order()).concat(g_log);
        let za = a_log.concat(&GroupLog::zero(self.g.dim(), a_log.arity(), a_log.order()));
        let c = bch(&self.semi, &bch(&self.semi, &zg, &za)?, &zg.neg())?;
        Ok(c.slice(0..da))
    }
}

/// `π[g_i,g_j] − [πg_i, πg_j] − g_i·πg_j + g_j·πg_i` on all basis pairs.
pub fn check_cocycle_law(a: &LieAlgebra, g: &LieAlgebra, rho: &LieAction, pi: &Matrix) -> CheckItem {
    let mut w = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let lhs = pi.mul_vec(&g.bracket_basis(i, j)).unwrap();
            let (pgi, pgj) = (pi.column(i), pi.column(j));
            let br = a.bracket(&pgi, &pgj);
            let gi_pj = rho.matrix(i).mul_vec(&pgj).unwrap();
            let gj_pi = rho.matrix(j).mul_vec(&pgi).unwrap();
            let res: Vec<Coeff> = (0..a.dim()).map(|k| &(&(&lhs[k] - &br[k]) - &gi_pj[k]) + &gj_pi[k]).collect();
            if res.iter().any(|c| !c.is_zero()) {
                w.push(Witness { location: format!("({}, {})", g.labels()[i], g.labels()[j]), residual: fmt_vec(&res) });
            }
        }
    }
    CheckItem::from_witnesses("cocycle law", w)
}
