//! Closed-form expressions in the ambient variables, `h` and `eps`, and their
//! expansion into truncated ℏ-series.

use super::coeff::Coeff;
use super::mpoly::MPoly;
use super::series::HSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum RationalExpr {
    Lit(Coeff),
    Var(usize),
    H,
    Eps,
    Neg(Box<RationalExpr>),
    Add(Box<RationalExpr>, Box<RationalExpr>),
    Sub(Box<RationalExpr>, Box<RationalExpr>),
    Mul(Box<RationalExpr>, Box<RationalExpr>),
    Div(Box<RationalExpr>, Box<RationalExpr>),
    Pow(Box<RationalExpr>, i32),
    Ln(Box<RationalExpr>),
    Exp(Box<RationalExpr>),
}

impl RationalExpr {
    pub fn int(n: i64) -> Self {
        RationalExpr::Lit(Coeff::from_int(n))
    }

    /// Largest variable index plus one.
    pub fn min_arity(&self) -> usize {
        use RationalExpr::*;
        match self {
            Var(i) => i + 1,
            Lit(_) | H | Eps => 0,
            Neg(a) | Pow(a, _) | Ln(a) | Exp(a) => a.min_arity(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.min_arity().max(b.min_arity()),
        }
    }

    /// True if `h`, `ln` or `exp` occur.
    pub fn is_formal(&self) -> bool {
        use RationalExpr::*;
        match self {
            H | Ln(_) | Exp(_) => true,
            Lit(_) | Var(_) | Eps => false,
            Neg(a) | Pow(a, _) => a.is_formal(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.is_formal() || b.is_formal(),
        }
    }

    /// Evaluates a polynomial expression: no `h`, `ln`, `exp`, and division
    /// only by unit constants.
    pub fn to_poly(&self, arity: usize) -> Result<MPoly> {
        use RationalExpr::*;
        Ok(match self {
            Lit(c) => MPoly::constant(arity, c.clone()),
            Var(i) => {
                if *i >= arity {
                    return Err(Error::VarOutOfRange { index: *i, arity });
                }
                MPoly::var(arity, *i)
            }
            Eps => MPoly::constant(arity, Coeff::eps()),
            H | Ln(_) | Exp(_) => {
                return Err(Error::Invalid("h, ln and exp are not allowed in a polynomial".into()))
            }
            Neg(a) => -a.to_poly(arity)?,
            Add(a, b) => a.to_poly(arity)? + b.to_poly(arity)?,
            Sub(a, b) => a.to_poly(arity)? - b.to_poly(arity)?,
            Mul(a, b) => a.to_poly(arity)? * b.to_poly(arity)?,
            Div(a, b) => {
                let d = b.to_poly(arity)?;
                let inv = if d.is_constant() { d.constant_term().inverse() } else { None };
                match inv {
                    Some(inv) => a.to_poly(arity)?.scale(&inv),
                    None => {
                        return Err(Error::Invalid(format!(
                            "polynomial division only by nonzero rationals, got {}",
                            d
                        )))
                    }
                }
            }
            Pow(a, k) => {
                if *k < 0 {
                    return Err(Error::Invalid("negative exponent in a polynomial".into()));
                }
                a.to_poly(arity)?.pow(*k as u32)
            }
        })
    }

    /// Expansion modulo `h^(order+1)` in `arity` variables.
    pub fn expand(&self, order: usize, arity: usize) -> Result<HSeries> {
        if self.min_arity() > arity {
            return Err(Error::VarOutOfRange { index: self.min_arity() - 1, arity });
        }
        self.expand_at(order, arity)
    }

    fn expand_at(&self, order: usize, arity: usize) -> Result<HSeries> {
        use RationalExpr::*;
        Ok(match self {
            Lit(c) => HSeries::constant(arity, order, c.clone()),
            Var(i) => HSeries::from_poly(MPoly::var(arity, *i), order),
            H => HSeries::h(arity, order),
            Eps => HSeries::constant(arity, order, Coeff::eps()),
            Neg(a) => -&a.expand_at(order, arity)?,
            Add(a, b) => &a.expand_at(order, arity)? + &b.expand_at(order, arity)?,
            Sub(a, b) => &a.expand_at(order, arity)? - &b.expand_at(order, arity)?,
            Mul(a, b) => &a.expand_at(order, arity)? * &b.expand_at(order, arity)?,
            Div(a, b) => divide(a, b, order, arity)?,
            Pow(a, k) => {
                if *k >= 0 {
                    a.expand_at(order, arity)?.pow(*k as u32)
                } else {
                    let base = Pow(a.clone(), -k);
                    divide(&Lit(Coeff::one()), &base, order, arity)?
                }
            }
            Ln(a) => a.expand_at(order, arity)?.ln()?,
            Exp(a) => a.expand_at(order, arity)?.exp()?,
        })
    }
}

/// A quotient whose divisor vanishes to order `k` in ℏ needs both operands to
/// `order + k`.
fn divide(a: &RationalExpr, b: &RationalExpr, order: usize, arity: usize) -> Result<HSeries> {
    let probe = b.expand_at(order, arity)?;
    let k = match probe.valuation() {
        Some(k) => k,
        None => {
            // The divisor may still be nonzero beyond `order`; look further.
            let wide = b.expand_at(2 * order + 2, arity)?;
            wide.valuation().ok_or_else(|| Error::NotInvertible("divisor vanishes identically".into()))?
        }
    };
    let num = a.expand_at(order + k, arity)?;
    let den = b.expand_at(order + k, arity)?;
    let q = num.checked_div(&den)?;
    debug_assert_eq!(q.order(), order);
    Ok(q)
}

impl std::ops::Add for RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: Self) -> Self {
        RationalExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: Self) -> Self {
        RationalExpr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: Self) -> Self {
        RationalExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Div for RationalExpr {
    type Output = RationalExpr;
    fn div(self, rhs: Self) -> Self {
        RationalExpr::Div(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> Self {
        RationalExpr::Neg(Box::new(self))
    }
}

/// `expand_expr` under its conventional name.
pub fn expand_expr(e: &RationalExpr, order: usize, arity: usize) -> Result<HSeries> {
    e.expand(order, arity)
}
