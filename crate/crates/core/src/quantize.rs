//! Exponentiation of a 7-tuple and the quantum R-matrix
//! `R(x, y) = (x *̌ y, x ∘̌ y)` on `X²`.
//!
//! A group element `e^{(a, g)}` of `A ⋊ G` moves points of `X` by the time-one
//! flow of `−ρ_𝔤𝔞X(a, g)`. Group elements whose logarithms depend on other
//! points act with those coefficients frozen: the flow runs in a fresh copy of
//! the coordinates, which are then set to the point being moved.

use num_rational::BigRational;

use crate::cbcst::{Cbcst, CbcstBuilder};
use crate::cybe::GeomRMatrix;
use crate::error::{Error, Result};
use crate::geom::{flow_images, FormalDiffeo, HVectorField, VectorField};
use crate::lie::{bch, GroupLog, LieCocycle};
use crate::poly::{mpoly_subst, series_subst, Coeff, HSeries, MPoly, VarNames};
use crate::report::{CheckItem, Witness};

/// The exponentiated 7-tuple at truncation order `N`.
#[derive(Clone, Debug)]
pub struct QuantumTuple {
    c: Cbcst,
    cocycle: LieCocycle,
    order: usize,
}

impl QuantumTuple {
    pub fn new(c: &Cbcst, order: usize) -> Result<Self> {
        let rep = c.validate();
        if !rep.passed() {
            let names: Vec<String> = rep.failures().map(|f| f.name.clone()).collect();
            return Err(Error::Invalid(format!("7-tuple fails: {}", names.join(", "))));
        }
        Ok(QuantumTuple { c: c.clone(), cocycle: c.cocycle()?, order })
    }

    pub fn cbcst(&self) -> &Cbcst {
        &self.c
    }

    pub fn cocycle(&self) -> &LieCocycle {
        &self.cocycle
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `log Ψ̃(p) = ℏΨ(p)` for a point `p` given by coordinate series.
    pub fn psi_tilde(&self, point: &[HSeries]) -> Result<GroupLog> {
        let comps = self.c.psi().iter().map(|f| Ok(mpoly_subst(f, point)?.shift(1))).collect::<Result<_>>()?;
        GroupLog::new(comps)
    }

    /// The point `e^{(a, g)}·p`, where the logs and the point share one
    /// coordinate ring.
    pub fn act(&self, a: &GroupLog, g: &GroupLog, point: &[HSeries]) -> Result<Vec<HSeries>> {
        let n = self.c.n();
        if point.len() != n {
            return Err(Error::ImageCount { expected: n, got: point.len() });
        }
        let m = a.arity();
        let order = self.order;
        let ext = m + n;
        // Fresh coordinates w live at m..m+n; everything else is frozen.
        let wmap: Vec<usize> = (m..ext).collect();
        let cmap: Vec<usize> = (0..m).collect();
        let mut comps = vec![HSeries::zero(ext, order); ext];
        let fields = self.c.rho_a().iter().zip(a.components()).chain(self.c.rho_g().iter().zip(g.components()));
        for (v, coeff) in fields {
            if coeff.is_zero() {
                continue;
            }
            let coeff = coeff.embed(ext, &cmap);
            for (i, p) in v.components().iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let term = coeff.mul_poly(&p.embed(ext, &wmap));
                comps[m + i] = &comps[m + i] - &term;
            }
        }
        let field = HVectorField::new(comps)?;
        let images = flow_images(&field, &wmap)?;
        let mut subst: Vec<HSeries> = (0..m).map(|i| HSeries::from_poly(MPoly::var(m, i), order)).collect();
        subst.extend(point.iter().cloned());
        images.iter().map(|s| series_subst(s, &subst)).collect()
    }

    fn zero_a(&self, arity: usize) -> GroupLog {
        GroupLog::zero(self.c.a().dim(), arity, self.order)
    }

    fn zero_g(&self, arity: usize) -> GroupLog {
        GroupLog::zero(self.c.g().dim(), arity, self.order)
    }

    /// `R(x, y) = (x *̌ y, x ∘̌ y)`.
    pub fn rmatrix(&self) -> Result<RMatrixQ> {
        Ok(self.build()?.0)
    }

    /// `R` together with the group logs `(Ψ̃(x *̌ y), π̃⁻¹(Ψ̃(x *̌ y)⁻¹))` on `X²`.
    fn build(&self) -> Result<(RMatrixQ, GroupLog, GroupLog)> {
        let n = self.c.n();
        let m = 2 * n;
        let order = self.order;
        let coord = |i: usize| HSeries::from_poly(MPoly::var(m, i), order);
        let x: Vec<HSeries> = (0..n).map(coord).collect();
        let y: Vec<HSeries> = (n..m).map(coord).collect();

        // x *̌ y = π̃⁻¹(Ψ̃(y)⁻¹)·x
        let g1 = self.cocycle.invert(&self.psi_tilde(&y)?.neg())?;
        let star = self.act(&self.zero_a(m), &g1, &x)?;

        // x ∘̌ y = π̃⁻¹(Ψ̃(x *̌ y)⁻¹)⁻¹·(Ψ̃(x *̌ y)·y)
        let pz = self.psi_tilde(&star)?;
        let moved = self.act(&pz, &self.zero_g(m), &y)?;
        let g2 = self.cocycle.invert(&pz.neg())?;
        let circ = self.act(&self.zero_a(m), &g2.neg(), &moved)?;

        let mut images = star;
        images.extend(circ);
        Ok((RMatrixQ { n, map: FormalDiffeo::new(images)? }, pz, g2))
    }

    /// The map `(c, w) ↦ (c, e^{(a(c), g(c))}·w)` of `X^{m} × X`, where the
    /// logs have coefficients in the `m` variables `c`.
    fn fibred_action(&self, a: &GroupLog, g: &GroupLog) -> Result<FormalDiffeo> {
        let n = self.c.n();
        let m = a.arity();
        let ext = m + n;
        let order = self.order;
        let cmap: Vec<usize> = (0..m).collect();
        let embed = |l: &GroupLog| GroupLog::new(l.components().iter().map(|s| s.embed(ext, &cmap)).collect());
        let coord = |i: usize| HSeries::from_poly(MPoly::var(ext, i), order);
        let w: Vec<HSeries> = (m..ext).map(coord).collect();
        let mut images: Vec<HSeries> = (0..m).map(coord).collect();
        images.extend(self.act(&embed(a)?, &embed(g)?, &w)?);
        FormalDiffeo::new(images)
    }

    /// The inverse actions used in `∘̌` are flows of negated logs; this
    /// compares them with order-by-order inversion of the forward maps.
    pub fn check_inverse_action(&self) -> Result<CheckItem> {
        let (_, pz, g2) = self.build()?;
        let m = 2 * self.c.n();
        let za = self.zero_a(m);
        let zg = self.zero_g(m);
        let names = VarNames::blocks(self.c.n(), 3);
        let mut w = Vec::new();
        for (label, a, g) in [("A-element", &pz, &zg), ("G-element", &za, &g2)] {
            let inv = self.fibred_action(a, g)?.invert()?;
            let neg = self.fibred_action(&a.neg(), &g.neg())?;
            if let Some((k, i)) = inv.first_difference(&neg) {
                let diff = inv.image(i).coeff(k) - neg.image(i).coeff(k);
                w.push(Witness {
                    location: format!("{}, order h^{}, coordinate {}", label, k, names.name(i)),
                    residual: diff.to_string_with(&names),
                });
            }
        }
        Ok(CheckItem::from_witnesses("inverse action is the flow of the negated log", w))
    }

    /// `Ψ̃(h·p) = h Ψ̃(p) h⁻¹` for `h = e^{ℏu}`, `u` each basis element of `𝔞 ⋊ 𝔤`.
    pub fn check_psi_equivariance(&self) -> Result<CheckItem> {
        let n = self.c.n();
        let (da, dg) = (self.c.a().dim(), self.c.g().dim());
        let order = self.order;
        let semi = self.cocycle.semidirect();
        let point: Vec<HSeries> = (0..n).map(|i| HSeries::from_poly(MPoly::var(n, i), order)).collect();
        let psi = self.psi_tilde(&point)?;
        let names = VarNames::flat(n);
        let mut w = Vec::new();
        for u in 0..da + dg {
            let mut e = vec![Coeff::zero(); da + dg];
            e[u] = Coeff::one();
            let h = GroupLog::h_times(&e, n, order);
            let moved = self.act(&h.slice(0..da), &h.slice(da..da + dg), &point)?;
            let lhs = self.psi_tilde(&moved)?;
            let inner = psi.concat(&GroupLog::zero(dg, n, order));
            let conj = bch(semi, &bch(semi, &h, &inner)?, &h.neg())?;
            let rhs = conj.slice(0..da);
            for k in 0..da {
                let diff = lhs.component(k) - rhs.component(k);
                if !diff.is_zero() {
                    w.push(Witness {
                        location: format!("basis element {}, component {}", semi.labels()[u], k + 1),
                        residual: diff.to_string_with(&names),
                    });
                }
            }
        }
        Ok(CheckItem::from_witnesses("exponentiated Psi is equivariant", w))
    }
}

/// A formal diffeomorphism of `X²` with its two blocks of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixQ {
    n: usize,
    map: FormalDiffeo,
}

impl RMatrixQ {
    pub fn new(n: usize, map: FormalDiffeo) -> Result<Self> {
        if map.arity() != 2 * n {
            return Err(Error::Dimension(format!("an R-matrix on X^2 needs {} images", 2 * n)));
        }
        Ok(RMatrixQ { n, map })
    }

    pub fn identity(n: usize, order: usize) -> Self {
        RMatrixQ { n, map: FormalDiffeo::identity(2 * n, order) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.map.order()
    }

    pub fn map(&self) -> &FormalDiffeo {
        &self.map
    }

    /// Images of the first block: `x *̌ y`.
    pub fn star_part(&self) -> &[HSeries] {
        &self.map.images()[..self.n]
    }

    /// Images of the second block: `x ∘̌ y`.
    pub fn circ_part(&self) -> &[HSeries] {
        &self.map.images()[self.n..]
    }

    pub fn specialize_eps(&self, value: &BigRational) -> RMatrixQ {
        RMatrixQ { n: self.n, map: self.map.specialize_eps(value) }
    }

    /// The field `r` with `R = 1 + ℏr + O(ℏ²)` for the action on functions
    /// `f ↦ f ∘ R⁻¹`: minus the ℏ¹ coefficient of the images.
    pub fn classical_limit(&self) -> VectorField {
        let comps = self.map.order_coeffs(1).iter().map(|p| -p).collect();
        VectorField::new(comps).expect("arity")
    }

    pub fn check_classical_limit(&self, r: &GeomRMatrix) -> CheckItem {
        let diff = self.classical_limit().checked_sub(&r.as_field_on_square()).expect("arity");
        CheckItem::from_witnesses("first-order term is r", crate::cybe::field_witnesses(&diff, self.n))
    }

    /// `R¹²R¹³R²³ = R²³R¹³R¹²` on `X³`.
    pub fn check_braid(&self) -> Result<CheckItem> {
        let n = self.n;
        let r12 = self.map.place(n, 0, 1, 3)?;
        let r13 = self.map.place(n, 0, 2, 3)?;
        let r23 = self.map.place(n, 1, 2, 3)?;
        let lhs = r12.compose(&r13)?.compose(&r23)?;
        let rhs = r23.compose(&r13)?.compose(&r12)?;
        Ok(diffeo_item("braid equation", &lhs, &rhs, &VarNames::blocks(n, 3)))
    }

    /// `R²¹R = 1`.
    pub fn check_unitarity(&self) -> Result<CheckItem> {
        let flipped = self.map.swap_conjugate(self.n)?;
        let prod = self.map.compose(&flipped)?;
        let id = FormalDiffeo::identity(2 * self.n, self.order());
        Ok(diffeo_item("quantum unitarity", &prod, &id, &VarNames::blocks(self.n, 2)))
    }

    pub fn is_unitary(&self) -> Result<bool> {
        Ok(self.check_unitarity()?.passed)
    }

    /// `ℏ¹` coefficients of `Ψ(x *̌ y)` and `Ψ(x ∘̌ y)` are `−Ψ(y)⊛Ψ(x)` and
    /// `−Ψ(y)∘Ψ(x)`.
    pub fn check_first_order(&self, b: &CbcstBuilder) -> Result<CheckItem> {
        let n = self.n;
        let m = 2 * n;
        let psi = b.cbcst().psi();
        let d = psi.len();
        let px: Vec<MPoly> = psi.iter().map(|f| f.embed(m, &(0..n).collect::<Vec<_>>())).collect();
        let py: Vec<MPoly> = psi.iter().map(|f| f.embed(m, &(n..m).collect::<Vec<_>>())).collect();
        let mut expect_star = vec![MPoly::zero(m); d];
        let mut expect_circ = vec![MPoly::zero(m); d];
        for a in 0..d {
            for bb in 0..d {
                let mut ea = vec![Coeff::zero(); d];
                ea[a] = Coeff::one();
                let mut eb = vec![Coeff::zero(); d];
                eb[bb] = Coeff::one();
                let s = b.star(&ea, &eb);
                let c = b.circ(&ea, &eb);
                let mono = &py[a] * &px[bb];
                for l in 0..d {
                    expect_star[l].add_scaled(&mono, &-&s[l]);
                    expect_circ[l].add_scaled(&mono, &-&c[l]);
                }
            }
        }
        let names = VarNames::blocks(n, 2);
        let mut w = Vec::new();
        for (label, part, expect) in [("star", self.star_part(), &expect_star), ("circ", self.circ_part(), &expect_circ)] {
            for l in 0..d {
                let got = mpoly_subst(&psi[l], part)?;
                let diff = got.coeff(1) - &expect[l];
                if !diff.is_zero() {
                    w.push(Witness { location: format!("{} part, component {}", label, l + 1), residual: diff.to_string_with(&names) });
                }
            }
        }
        Ok(CheckItem::from_witnesses("first-order terms are the star and circ maps", w))
    }

    /// Each image as a list of `(ℏ power, polynomial)` pairs.
    pub fn to_pairs(&self) -> Vec<Vec<(usize, String)>> {
        let names = VarNames::blocks(self.n, 2);
        self.map
            .images()
            .iter()
            .map(|s| {
                (0..=s.order()).filter(|&k| !s.coeff(k).is_zero()).map(|k| (k, s.coeff(k).to_string_with(&names))).collect()
            })
            .collect()
    }
}

fn diffeo_item(name: &str, lhs: &FormalDiffeo, rhs: &FormalDiffeo, names: &VarNames) -> CheckItem {
    match lhs.first_difference(rhs) {
        None => CheckItem::pass(name),
        Some((k, i)) => {
            let diff = lhs.image(i).coeff(k) - rhs.image(i).coeff(k);
            CheckItem::from_witnesses(
                name,
                vec![Witness { location: format!("order h^{}, coordinate {}", k, names.name(i)), residual: diff.to_string_with(names) }],
            )
            .with_detail(format!("lowest failing order {}", k))
        }
    }
}

/// The quantization of a valid 7-tuple.
pub fn quantize(c: &Cbcst, order: usize) -> Result<RMatrixQ> {
    if order < 2 {
        return Err(Error::Invalid("quantization needs truncation order at least 2".into()));
    }
    QuantumTuple::new(c, order)?.rmatrix()
}

/// Quantizes an r-matrix without a-terms and checks that the first factor is fixed.
pub fn check_rack_case(r: &GeomRMatrix, order: usize) -> Result<(RMatrixQ, CheckItem)> {
    if !r.a_terms().is_empty() {
        return Err(Error::Invalid("a rack r-matrix has only function ⊗ vector field terms".into()));
    }
    let b = CbcstBuilder::from_rmatrix(r)?;
    let rq = quantize(b.cbcst(), order)?;
    let n = r.n();
    let id = FormalDiffeo::identity(2 * n, order);
    let names = VarNames::blocks(n, 2);
    let w: Vec<Witness> = (0..n)
        .filter(|&i| rq.star_part()[i] != *id.image(i))
        .map(|i| Witness { location: format!("coordinate {}", names.name(i)), residual: rq.star_part()[i].to_string_with(&names) })
        .collect();
    Ok((rq, CheckItem::from_witnesses("first factor is fixed", w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, closed_form, closed_form_eps0};
    use crate::poly::parse_series;

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    fn expect(strs: &[String], order: usize) -> Vec<HSeries> {
        let names = VarNames::blocks(3, 2);
        strs.iter().map(|s| parse_series(s, &names, order).unwrap()).collect()
    }

    #[test]
    fn matches_closed_form_at_eps_one() {
        let n = 4;
        let c = fixtures::cbcst().specialize_eps(&one());
        let rq = quantize(&c, n).unwrap();
        let star: Vec<String> = closed_form::STAR.iter().map(|s| s.to_string()).collect();
        assert_eq!(rq.star_part(), &expect(&star, n)[..]);
        assert_eq!(rq.circ_part(), &expect(&closed_form::circ(), n)[..]);
    }

    #[test]
    fn matches_closed_form_at_eps_zero() {
        let n = 4;
        let c = fixtures::cbcst().specialize_eps(&BigRational::from_integer(0.into()));
        let rq = quantize(&c, n).unwrap();
        let star: Vec<String> = closed_form_eps0::STAR.iter().map(|s| s.to_string()).collect();
        let circ: Vec<String> = closed_form_eps0::CIRC.iter().map(|s| s.to_string()).collect();
        assert_eq!(rq.star_part(), &expect(&star, n)[..]);
        assert_eq!(rq.circ_part(), &expect(&circ, n)[..]);
    }

    #[test]
    fn symbolic_checks() {
        let c = fixtures::cbcst();
        let q = QuantumTuple::new(&c, 3).unwrap();
        let rq = q.rmatrix().unwrap();
        let r = fixtures::rmatrix();
        assert!(rq.check_classical_limit(&r).passed);
        assert!(rq.check_braid().unwrap().passed);
        assert!(!rq.is_unitary().unwrap());
        assert!(q.check_psi_equivariance().unwrap().passed);
        assert!(q.check_inverse_action().unwrap().passed);
        let b = CbcstBuilder::from_rmatrix(&r).unwrap();
        let rb = quantize(b.cbcst(), 3).unwrap();
        assert!(rb.check_first_order(&b).unwrap().passed);
        assert!(rb.check_classical_limit(&r).passed);
    }

    #[test]
    fn order_below_two_is_rejected() {
        assert!(quantize(&fixtures::cbcst(), 1).is_err());
    }

    #[test]
    fn rack_case_fixes_first_factor() {
        let fnames = VarNames::flat(3);
        let f = crate::poly::parse_poly("x1", &fnames).unwrap();
        let v = VectorField::new(
            ["0", "x2", "0"].iter().map(|s| crate::poly::parse_poly(s, &fnames).unwrap()).collect(),
        )
        .unwrap();
        let r = GeomRMatrix::new(3, vec![], vec![(f, v)]).unwrap();
        let (rq, item) = check_rack_case(&r, 3).unwrap();
        assert!(item.passed, "{:?}", item);
        assert!(rq.check_braid().unwrap().passed);
    }
}
