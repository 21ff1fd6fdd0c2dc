//! Formal group elements stored as ℏ-graded logarithms, with truncated
//! Baker–Campbell–Hausdorff multiplication.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::poly::{Coeff, HSeries, Matrix};

/// `Σ_k v_k e_k` where each `v_k` is a series of valuation ≥ 1.
///
/// The series' polynomial variables are parameters (for instance the
/// coordinates of a point), so a log may depend on a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLog {
    comps: Vec<HSeries>,
}

impl GroupLog {
    pub fn zero(dim: usize, arity: usize, order: usize) -> Self {
        GroupLog { comps: vec![HSeries::zero(arity, order); dim] }
    }

    pub fn new(comps: Vec<HSeries>) -> Result<Self> {
        let first = comps.first().ok_or_else(|| Error::Dimension("empty group log".into()))?;
        let (arity, order) = (first.arity(), first.order());
        for (k, c) in comps.iter().enumerate() {
            if c.arity() != arity {
                return Err(Error::ArityMismatch { left: arity, right: c.arity() });
            }
            if c.order() != order {
                return Err(Error::OrderMismatch { left: order, right: c.order() });
            }
            if !c.coeff(0).is_zero() {
                return Err(Error::Valuation(format!("component {} has an h^0 term", k + 1)));
            }
        }
        Ok(GroupLog { comps })
    }

    /// `ℏ Σ_k v_k e_k` for constant coordinates `v`.
    pub fn h_times(v: &[Coeff], arity: usize, order: usize) -> Self {
        let h = HSeries::h(arity, order);
        GroupLog { comps: v.iter().map(|c| h.scale(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn arity(&self) -> usize {
        self.comps[0].arity()
    }

    pub fn order(&self) -> usize {
        self.comps[0].order()
    }

    pub fn components(&self) -> &[HSeries] {
        &self.comps
    }

    pub fn component(&self, k: usize) -> &HSeries {
        &self.comps[k]
    }

    pub fn into_components(self) -> Vec<HSeries> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(HSeries::is_zero)
    }

    pub fn neg(&self) -> GroupLog {
        GroupLog { comps: self.comps.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &GroupLog) -> GroupLog {
        GroupLog { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &GroupLog) -> GroupLog {
        GroupLog { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> GroupLog {
        GroupLog { comps: self.comps.iter().map(|s| s.scale(c)).collect() }
    }

    /// Applies a constant matrix to the coordinate vector.
    pub fn map_linear(&self, m: &Matrix) -> GroupLog {
        assert_eq!(m.cols(), self.dim());
        let (arity, order) = (self.arity(), self.order());
        let comps = (0..m.rows())
            .map(|i| {
                let mut acc = HSeries::zero(arity, order);
                for (j, s) in self.comps.iter().enumerate() {
                    let c = m.get(i, j);
                    if !c.is_zero() {
                        acc.add_scaled(s, c);
                    }
                }
                acc
            })
            .collect();
        GroupLog { comps }
    }

    /// Concatenation `(self, other)` as an element of a direct sum of spaces.
    pub fn concat(&self, other: &GroupLog) -> GroupLog {
        GroupLog { comps: self.comps.iter().chain(&other.comps).cloned().collect() }
    }

    /// Components `range` as a log of a smaller space.
    pub fn slice(&self, range: std::ops::Range<usize>) -> GroupLog {
        GroupLog { comps: self.comps[range].to_vec() }
    }

    pub fn specialize_eps(&self, value: &BigRational) -> GroupLog {
        GroupLog { comps: self.comps.iter().map(|c| c.specialize_eps(value)).collect() }
    }

    pub fn with_order(&self, order: usize) -> Result<GroupLog> {
        Ok(GroupLog { comps: self.comps.iter().map(|c| c.with_order(order)).collect::<Result<_>>()? })
    }

    fn check(&self, other: &GroupLog, alg: &LieAlgebra) -> Result<()> {
        if self.dim() != alg.dim() || other.dim() != alg.dim() {
            return Err(Error::Dimension(format!(
                "logs of dimension {} and {} in an algebra of dimension {}",
                self.dim(),
                other.dim(),
                alg.dim()
            )));
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        Ok(())
    }

    /// Bracket with series coefficients, truncated.
    pub fn bracket(&self, other: &GroupLog, alg: &LieAlgebra) -> GroupLog {
        let d = alg.dim();
        let (arity, order) = (self.arity(), self.order());
        let mut out = vec![HSeries::zero(arity, order); d];
        for i in 0..d {
            if self.comps[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if i == j || other.comps[j].is_zero() {
                    continue;
                }
                if (0..d).all(|k| alg.c(i, j, k).is_zero()) {
                    continue;
                }
                let prod = self.comps[i].mul_unchecked(&other.comps[j]);
                if prod.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    let c = alg.c(i, j, k);
                    if !c.is_zero() {
                        o.add_scaled(&prod, c);
                    }
                }
            }
        }
        GroupLog { comps: out }
    }
}

/// Dynkin coefficients for right-nested words in two letters, up to length `n`.
/// Letters are `false` for the first argument and `true` for the second.
fn dynkin_table(n: usize) -> Vec<(Vec<bool>, BigRational)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<(Vec<bool>, BigRational)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let table = build_dynkin_table(n);
    cache.lock().unwrap().insert(n, table.clone());
    table
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

fn build_dynkin_table(n: usize) -> Vec<(Vec<bool>, BigRational)> {
    let mut out = Vec::new();
    for len in 1..=n {
        for bits in 0u64..(1u64 << len) {
            let w: Vec<bool> = (0..len).map(|i| (bits >> (len - 1 - i)) & 1 == 1).collect();
            if len >= 2 && w[len - 1] == w[len - 2] {
                continue;
            }
            // dp[pos][blocks]: Σ Π 1/(r! s!) over splittings of w[..pos] into X^r Y^s blocks.
            let mut dp = vec![vec![BigRational::zero(); len + 1]; len + 1];
            dp[0][0] = BigRational::one();
            for pos in 0..len {
                for end in pos + 1..=len {
                    // a block must read X^r Y^s
                    if end - pos >= 2 && w[end - 2] && !w[end - 1] {
                        break;
                    }
                    let s = w[pos..end].iter().filter(|&&b| b).count();
                    let r = end - pos - s;
                    let wgt = BigRational::new(BigInt::one(), factorial(r) * factorial(s));
                    for b in 0..len {
                        if !dp[pos][b].is_zero() {
                            let add = &dp[pos][b] * &wgt;
                            dp[end][b + 1] += add;
                        }
                    }
                }
            }
            let mut c = BigRational::zero();
            for (b, v) in dp[len].iter().enumerate().skip(1) {
                let sign = if b % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                c += v * BigRational::new(sign, BigInt::from(b));
            }
            c /= BigRational::from_integer(BigInt::from(len));
            if !c.is_zero() {
                out.push((w, c));
            }
        }
    }
    out
}

/// `log(e^u e^v)` modulo ℏ^{N+1}.
pub fn bch(alg: &LieAlgebra, u: &GroupLog, v: &GroupLog) -> Result<GroupLog> {
    u.check(v, alg)?;
    let n = u.order();
    if u.is_zero() {
        return Ok(v.clone());
    }
    if v.is_zero() {
        return Ok(u.clone());
    }
    let table = dynkin_table(n);
    // Right-nested values of every suffix, memoized by word.
    let mut memo: HashMap<Vec<bool>, GroupLog> = HashMap::new();
    let mut out = GroupLog::zero(alg.dim(), u.arity(), n);
    for (w, c) in &table {
        let val = nested(alg, u, v, w, &mut memo);
        if !val.is_zero() {
            out = out.add(&val.scale(&Coeff::from_rational(c.clone())));
        }
    }
    Ok(out)
}

fn nested(alg: &LieAlgebra, u: &GroupLog, v: &GroupLog, w: &[bool], memo: &mut HashMap<Vec<bool>, GroupLog>) -> GroupLog {
    if w.len() == 1 {
        return if w[0] { v.clone() } else { u.clone() };
    }
    if let Some(x) = memo.get(w) {
        return x.clone();
    }
    let inner = nested(alg, u, v, &w[1..], memo);
    let val = if inner.is_zero() {
        inner
    } else {
        let head = if w[0] { v } else { u };
        head.bracket(&inner, alg)
    };
    memo.insert(w.to_vec(), val.clone());
    val
}

/// Product of several elements, left to right.
pub fn bch_many(alg: &LieAlgebra, logs: &[&GroupLog]) -> Result<GroupLog> {
    let mut acc = logs[0].clone();
    for l in &logs[1..] {
        acc = bch(alg, &acc, l)?;
    }
    Ok(acc)
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

    fn unit(k: usize, d: usize) -> Vec<Coeff> {
        (0..d).map(|i| if i == k { Coeff::one() } else { Coeff::zero() }).collect()
    }

    #[test]
    fn low_order_coefficients() {
        let t = build_dynkin_table(3);
        let find = |w: &[bool]| t.iter().find(|(x, _)| x == w).map(|(_, c)| c.clone());
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(find(&[false]), Some(q(1, 1)));
        assert_eq!(find(&[false, true]), Some(q(1, 4)));
        assert_eq!(find(&[true, false]), Some(q(-1, 4)));
        // Third order: (1/12)([X,[X,Y]] + [Y,[Y,X]]) once [X,Y] terms are collected.
        let xxy = find(&[false, false, true]).unwrap_or_default();
        let xyx = find(&[false, true, false]).unwrap_or_default();
        let yxy = find(&[true, false, true]).unwrap_or_default();
        let yyx = find(&[true, true, false]).unwrap_or_default();
        // [X,[Y,X]] = -[X,[X,Y]], [Y,[X,Y]] = -[Y,[Y,X]]
        assert_eq!(xxy - xyx, q(1, 12));
        assert_eq!(yyx - yxy, q(1, 12));
    }

    #[test]
    fn identity_and_first_orders() {
        let alg = heis();
        let x = GroupLog::h_times(&unit(0, 3), 0, 2);
        let y = GroupLog::h_times(&unit(1, 3), 0, 2);
        let zero = GroupLog::zero(3, 0, 2);
        assert_eq!(bch(&alg, &x, &zero).unwrap(), x);
        let z = bch(&alg, &x, &y).unwrap();
        let h = HSeries::h(0, 2);
        let expect = GroupLog::new(vec![h.clone(), h.clone(), h.pow(2).scale(&Coeff::from_ratio(1, 2))]).unwrap();
        assert_eq!(z, expect);
    }

    #[test]
    fn inverse_law() {
        let alg = heis();
        let u = GroupLog::h_times(&[Coeff::from_int(2), Coeff::from_int(-1), Coeff::one()], 0, 5);
        assert!(bch(&alg, &u, &u.neg()).unwrap().is_zero());
    }

    #[test]
    fn rejects_constant_term() {
        let one = HSeries::one(0, 3);
        assert!(matches!(GroupLog::new(vec![one]), Err(Error::Valuation(_))));
    }
}
