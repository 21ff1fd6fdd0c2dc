//! Substitution of truncated series into polynomials and series.
//!
//! Each image is split as `q_i + δ_i` with `q_i` its ℏ⁰ part. Then
//! `p(q + δ) = Σ_α (∂^α p)(q) δ^α / α!`, and only `|α| ≤ N` contributes since
//! every `δ_i` vanishes modulo ℏ.

use super::coeff::Coeff;
use super::mpoly::{rename_map, MPoly};
use super::series::HSeries;
use crate::error::{Error, Result};

/// Evaluates polynomials at fixed polynomial images, caching powers.
pub(crate) struct PolyEval {
    target: usize,
    rename: Option<Vec<usize>>,
    images: Vec<MPoly>,
    powers: Vec<Vec<MPoly>>,
}

impl PolyEval {
    pub(crate) fn new(target: usize, images: Vec<MPoly>) -> Self {
        let rename = rename_map(&images);
        let powers = images.iter().map(|p| vec![MPoly::one(target), p.clone()]).collect();
        PolyEval { target, rename, images, powers }
    }

    pub(crate) fn apply(&mut self, p: &MPoly) -> MPoly {
        if let Some(map) = &self.rename {
            return p.embed(self.target, map);
        }
        let mut out = MPoly::zero(self.target);
        for (m, c) in p.terms() {
            let mut t = MPoly::constant(self.target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut self.powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_unchecked(&self.images[i]);
                    cache.push(next);
                }
                t = t.mul_unchecked(&cache[e as usize]);
            }
            out.add_assign_ref(&t);
        }
        out
    }
}

fn check_images(arity: usize, images: &[HSeries]) -> Result<(usize, usize)> {
    if images.len() != arity {
        return Err(Error::ImageCount { expected: arity, got: images.len() });
    }
    let first = images.first().ok_or(Error::ImageCount { expected: 1, got: 0 })?;
    let (target, order) = (first.arity(), first.order());
    for s in images {
        if s.arity() != target {
            return Err(Error::ArityMismatch { left: target, right: s.arity() });
        }
        if s.order() != order {
            return Err(Error::OrderMismatch { left: order, right: s.order() });
        }
    }
    Ok((target, order))
}

struct Taylor {
    order: usize,
    base: PolyEval,
    deltas: Vec<HSeries>,
    dval: Vec<Option<usize>>,
    out: HSeries,
}

impl Taylor {
    /// `derivs[m]` is `∂^α p_m`; `dpow` is `δ^α` with valuation `val`; `fact` is `1/α!`.
    fn visit(&mut self, derivs: &[MPoly], dpow: &HSeries, val: usize, fact: &Coeff, last: Option<(usize, u32)>) {
        for (m, d) in derivs.iter().enumerate() {
            if d.is_zero() || m + val > self.order {
                continue;
            }
            let value = self.base.apply(d);
            if value.is_zero() {
                continue;
            }
            let term = dpow.mul_poly(&value).shift(m);
            self.out.add_scaled(&term, fact);
        }
        let start = last.map_or(0, |(i, _)| i);
        for i in start..self.deltas.len() {
            let Some(dv) = self.dval[i] else { continue };
            let nval = val + dv;
            let lowest = derivs.iter().position(|d| !d.is_zero()).unwrap_or(self.order + 1);
            if nval + lowest > self.order {
                continue;
            }
            let next: Vec<MPoly> = derivs.iter().map(|d| d.diff_unchecked(i)).collect();
            if next.iter().all(MPoly::is_zero) {
                continue;
            }
            let mult = match last {
                Some((j, k)) if j == i => k + 1,
                _ => 1,
            };
            let npow = dpow.mul_unchecked(&self.deltas[i]);
            let nfact = fact * &Coeff::from_ratio(1, mult as i64);
            self.visit(&next, &npow, nval, &nfact, Some((i, mult)));
        }
    }
}

fn taylor(parts: Vec<MPoly>, images: &[HSeries], target: usize, order: usize) -> HSeries {
    let base_images: Vec<MPoly> = images.iter().map(|s| s.coeff(0).clone()).collect();
    let deltas: Vec<HSeries> = images
        .iter()
        .map(|s| {
            let mut d = s.clone();
            d.set_coeff(0, MPoly::zero(target));
            d
        })
        .collect();
    let dval = deltas.iter().map(HSeries::valuation).collect();
    let mut t = Taylor {
        order,
        base: PolyEval::new(target, base_images),
        deltas,
        dval,
        out: HSeries::zero(target, order),
    };
    let one = HSeries::one(target, order);
    t.visit(&parts, &one, 0, &Coeff::one(), None);
    t.out
}

/// `p(images)` modulo ℏ^{N+1}, where N is the images' common order.
pub fn mpoly_subst(p: &MPoly, images: &[HSeries]) -> Result<HSeries> {
    let (target, order) = check_images(p.arity(), images)?;
    let mut parts = vec![MPoly::zero(p.arity()); order + 1];
    parts[0] = p.clone();
    Ok(taylor(parts, images, target, order))
}

/// `s(images)` where the coefficients of `s` are evaluated at the images and
/// the ℏ powers of `s` are kept.
pub fn series_subst(s: &HSeries, images: &[HSeries]) -> Result<HSeries> {
    let (target, order) = check_images(s.arity(), images)?;
    if s.order() != order {
        return Err(Error::OrderMismatch { left: s.order(), right: order });
    }
    Ok(taylor(s.coeffs().to_vec(), images, target, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_poly, parse_series};
    use crate::poly::VarNames;

    #[test]
    fn linear_shift() {
        let names = VarNames::flat(2);
        let p = parse_poly("x1*x2", &names).unwrap();
        let images = vec![parse_series("x1 + h", &names, 3).unwrap(), parse_series("x2", &names, 3).unwrap()];
        assert_eq!(mpoly_subst(&p, &images).unwrap(), parse_series("x1*x2 + h*x2", &names, 3).unwrap());
    }

    #[test]
    fn identity_images_embed() {
        let names = VarNames::flat(3);
        let p = parse_poly("x1^3*x2 - 2*x3 + 5", &names).unwrap();
        let images: Vec<HSeries> = (0..3).map(|i| HSeries::from_poly(MPoly::var(3, i), 4)).collect();
        assert_eq!(mpoly_subst(&p, &images).unwrap(), HSeries::from_poly(p, 4));
    }

    #[test]
    fn exponential_rescaling() {
        let names = VarNames::flat(1);
        let p = parse_poly("x1^2", &names).unwrap();
        let images = vec![parse_series("x1*(1 + h + h^2/2)", &names, 2).unwrap()];
        let expect = parse_series("x1^2*(1 + 2*h + 2*h^2)", &names, 2).unwrap();
        assert_eq!(mpoly_subst(&p, &images).unwrap(), expect);
    }

    #[test]
    fn nonlinear_base_images() {
        let names = VarNames::flat(2);
        let p = parse_poly("x1^2*x2 + x2^3", &names).unwrap();
        let images = vec![
            parse_series("x1 + x2^2 + h*x1 - h^2*x2", &names, 3).unwrap(),
            parse_series("2*x1*x2 + h^3", &names, 3).unwrap(),
        ];
        let direct = parse_series(
            "(x1 + x2^2 + h*x1 - h^2*x2)^2*(2*x1*x2 + h^3) + (2*x1*x2 + h^3)^3",
            &names,
            3,
        )
        .unwrap();
        assert_eq!(mpoly_subst(&p, &images).unwrap(), direct);
    }

    #[test]
    fn mismatched_images() {
        let names = VarNames::flat(2);
        let p = parse_poly("x1", &names).unwrap();
        let a = parse_series("x1", &names, 2).unwrap();
        let b = parse_series("x2", &names, 3).unwrap();
        assert!(matches!(mpoly_subst(&p, &[a.clone()]), Err(Error::ImageCount { .. })));
        assert!(matches!(mpoly_subst(&p, &[a, b]), Err(Error::OrderMismatch { .. })));
    }
}
