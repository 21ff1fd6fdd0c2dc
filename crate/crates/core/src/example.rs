//! End-to-end verification of the three-dimensional example.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cbcst::{Cbcst, CbcstBuilder, CbcstIso};
use crate::cybe::GeomRMatrix;
use crate::error::{Error, Result};
use crate::fixtures::{self, closed_form, closed_form_eps0, inverse_cocycle};
use crate::geom::VectorField;
use crate::lie::{GroupLog, LieAlgebra};
use crate::poly::{parse_series, Coeff, HSeries, MPoly, Matrix, VarNames};
use crate::quantize::{QuantumTuple, RMatrixQ};
use crate::report::{CheckItem, Report};

/// `eps` kept as a symbol or specialized to a rational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpsMode {
    Symbolic,
    Value(BigRational),
}

impl EpsMode {
    pub fn value(p: i64, q: i64) -> Self {
        EpsMode::Value(BigRational::new(p.into(), q.into()))
    }

    pub fn apply_r(&self, r: &GeomRMatrix) -> GeomRMatrix {
        match self {
            EpsMode::Symbolic => r.clone(),
            EpsMode::Value(v) => r.specialize_eps(v),
        }
    }

    pub fn apply_c(&self, c: &Cbcst) -> Cbcst {
        match self {
            EpsMode::Symbolic => c.clone(),
            EpsMode::Value(v) => c.specialize_eps(v),
        }
    }

    fn is(&self, n: i64) -> bool {
        matches!(self, EpsMode::Value(v) if *v == BigRational::from_integer(n.into()))
    }
}

impl fmt::Display for EpsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsMode::Symbolic => write!(f, "eps"),
            EpsMode::Value(v) => write!(f, "eps={}", v),
        }
    }
}

impl FromStr for EpsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "symbolic" {
            return Ok(EpsMode::Symbolic);
        }
        let parse = |t: &str| t.trim().parse::<num_bigint::BigInt>().map_err(|_| Error::Invalid(format!("bad eps value '{}'", s)));
        match s.split_once('/') {
            Some((p, q)) => {
                let q = parse(q)?;
                if q.is_zero() {
                    return Err(Error::Invalid("eps denominator is zero".into()));
                }
                Ok(EpsMode::Value(BigRational::new(parse(p)?, q)))
            }
            None => Ok(EpsMode::Value(BigRational::from_integer(parse(s)?))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExampleConfig {
    pub order: usize,
    pub eps: Vec<EpsMode>,
    /// Perturbs one coefficient of the r-matrix, as a negative control.
    pub corrupt: bool,
}

impl Default for ExampleConfig {
    fn default() -> Self {
        ExampleConfig { order: 4, eps: vec![EpsMode::Symbolic, EpsMode::value(1, 1), EpsMode::value(0, 1)], corrupt: false }
    }
}

/// The example r-matrix with the first a-term's field shifted by `x1 d/dx1`.
pub fn corrupted_rmatrix() -> GeomRMatrix {
    let r = fixtures::rmatrix();
    let mut a = r.a_terms().to_vec();
    let shift = VectorField::coordinate(3, 0).mul_poly(&MPoly::var(3, 0));
    a[0].0 = a[0].0.checked_add(&shift).expect("arity");
    GeomRMatrix::new(3, a, r.b_terms().to_vec()).expect("arity")
}

fn step<T>(rep: &mut Report, name: &str, r: Result<T>) -> Option<T> {
    match r {
        Ok(t) => Some(t),
        Err(e) => {
            rep.push(CheckItem::fail(name, e.to_string()));
            None
        }
    }
}

fn tagged(mut item: CheckItem, tag: &str) -> CheckItem {
    item.name = format!("{} [{}]", item.name, tag);
    item
}

fn equal_item(name: &str, ok: bool, detail: impl FnOnce() -> String) -> CheckItem {
    if ok {
        CheckItem::pass(name)
    } else {
        CheckItem::fail(name, detail())
    }
}

/// Dimension of `[𝔩, 𝔩]` and whether it is central. Needs rational structure constants.
pub fn derived_algebra(l: &LieAlgebra) -> Result<(usize, bool)> {
    let d = l.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            rows.push(l.bracket_basis(i, j));
        }
    }
    if rows.is_empty() {
        return Ok((0, true));
    }
    let rank = Matrix::from_rows(rows.clone())?.rank()?;
    let central = rows.iter().all(|v| {
        (0..d).all(|k| {
            let mut e = vec![Coeff::zero(); d];
            e[k] = Coeff::one();
            l.bracket(v, &e).iter().all(Coeff::is_zero)
        })
    });
    Ok((rank, central))
}

fn closed_form_r(star: &[String], circ: &[String], order: usize) -> Result<RMatrixQ> {
    let names = VarNames::blocks(3, 2);
    let images = star.iter().chain(circ).map(|s| parse_series(s, &names, order)).collect::<Result<_>>()?;
    RMatrixQ::new(3, crate::geom::FormalDiffeo::new(images)?)
}

/// `R` in closed form at `eps = 1` or `eps = 0`.
pub fn closed_form_rmatrix(eps_one: bool, order: usize) -> Result<RMatrixQ> {
    let own = |a: &[&str; 3]| a.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    if eps_one {
        closed_form_r(&own(&closed_form::STAR), &closed_form::circ(), order)
    } else {
        closed_form_r(&own(&closed_form_eps0::STAR), &own(&closed_form_eps0::CIRC), order)
    }
}

fn diffeo_mismatch(name: &str, got: &RMatrixQ, want: &RMatrixQ) -> CheckItem {
    match got.map().first_difference(want.map()) {
        None => CheckItem::pass(name),
        Some((k, i)) => CheckItem::fail(name, format!("first difference at order h^{} in image {}", k, i + 1)),
    }
}

/// `π̃⁻¹(e^{ℏ(aX + bY + cC)})` against its closed form at `eps = 1`.
pub fn check_inverse_cocycle(order: usize) -> Result<CheckItem> {
    let c = fixtures::cocycle()?.specialize_eps(&BigRational::one())?;
    let names = VarNames::custom(vec!["a".into(), "b".into(), "c".into()]);
    let h = HSeries::h(3, order);
    let input = GroupLog::new((0..3).map(|i| h.mul_poly(&MPoly::var(3, i))).collect())?;
    let g = c.invert(&input)?;
    let mut bad = Vec::new();
    for (k, s) in [inverse_cocycle::P, inverse_cocycle::Q, inverse_cocycle::R].iter().enumerate() {
        if g.component(k) != &parse_series(s, &names, order)? {
            bad.push(["p", "q", "r"][k]);
        }
    }
    Ok(equal_item("inverse group cocycle matches closed form", bad.is_empty(), || format!("components {:?} differ", bad)))
}

fn section(rep: &mut Report, base_r: &GeomRMatrix, mode: &EpsMode, order: usize) {
    let tag = mode.to_string();
    let r = mode.apply_r(base_r);
    let fixture = mode.apply_c(&fixtures::cbcst());
    let cy = r.check_cybe();
    let cybe_ok = cy.passed;
    rep.push(tagged(cy, &tag));
    if !cybe_ok {
        return;
    }
    let Some(b) = step(rep, &format!("construction from r [{}]", tag), CbcstBuilder::from_rmatrix(&r)) else {
        return;
    };
    if let Some(v) = step(rep, &format!("lemma suite [{}]", tag), b.validate()) {
        for item in v.items {
            rep.push(tagged(item, &tag));
        }
    }
    let built = b.cbcst();
    rep.push(equal_item(&format!("dimensions of a and g are 3 [{}]", tag), built.a().dim() == 3 && built.g().dim() == 3, || {
        format!("dim a = {}, dim g = {}", built.a().dim(), built.g().dim())
    }));
    if let EpsMode::Value(_) = mode {
        if let Some((dim, central)) = step(rep, &format!("derived algebra [{}]", tag), derived_algebra(built.a())) {
            let want = if mode.is(0) { 0 } else { 1 };
            rep.push(equal_item(&format!("derived algebra of a is central of dimension {} [{}]", want, tag), dim == want && central, || {
                format!("dimension {}, central {}", dim, central)
            }));
        }
    }
    if let Some(iso) = step(rep, &format!("identification with the example 7-tuple [{}]", tag), CbcstIso::identify(built, &fixture)) {
        for item in iso.check(built, &fixture).items {
            rep.push(tagged(item, &tag));
        }
    }
    let abelian = built.a().is_abelian();
    let classical_unitary = r.check_unitarity();
    rep.push(equal_item(&format!("classical unitarity iff a abelian [{}]", tag), classical_unitary == abelian, || {
        format!("unitary {}, abelian {}", classical_unitary, abelian)
    }));

    if let Some(back) = step(rep, &format!("round trip r [{}]", tag), built.to_rmatrix().and_then(|x| Ok((x.minimize()?, r.minimize()?)))) {
        rep.push(equal_item(&format!("round trip r [{}]", tag), back.0.same_element(&back.1), || "tensors differ".into()));
    }
    let reverse = fixture.to_rmatrix().and_then(|r2| CbcstBuilder::from_rmatrix(&r2)).and_then(|b2| {
        let iso = CbcstIso::identify(&fixture, b2.cbcst())?;
        Ok(iso.check(&fixture, b2.cbcst()))
    });
    if let Some(rr) = step(rep, &format!("round trip 7-tuple [{}]", tag), reverse) {
        rep.push(equal_item(&format!("round trip 7-tuple [{}]", tag), rr.passed(), || rr.to_human()));
    }

    let Some(q) = step(rep, &format!("exponentiation [{}]", tag), QuantumTuple::new(&fixture, order)) else {
        return;
    };
    let Some(rq) = step(rep, &format!("quantization [{}]", tag), q.rmatrix()) else {
        return;
    };
    rep.push(tagged(rq.check_classical_limit(&r), &tag));
    if let Some(item) = step(rep, &format!("first-order terms [{}]", tag), quantize_first_order(&b, order)) {
        rep.push(tagged(item, &tag));
    }
    if let Some(item) = step(rep, &format!("braid equation [{}]", tag), rq.check_braid()) {
        rep.push(tagged(item, &tag));
    }
    if let Some(item) = step(rep, &format!("quantum unitarity [{}]", tag), rq.check_unitarity()) {
        let unitary = item.passed;
        rep.push(equal_item(&format!("quantum unitarity iff a abelian [{}]", tag), unitary == abelian, || {
            format!("unitary {}, abelian {}: {}", unitary, abelian, item.witness.first().map_or("", |w| w.location.as_str()))
        }));
    }
    if let Some(item) = step(rep, &format!("Psi equivariance [{}]", tag), q.check_psi_equivariance()) {
        rep.push(tagged(item, &tag));
    }
    if let Some(item) = step(rep, &format!("inverse action [{}]", tag), q.check_inverse_action()) {
        rep.push(tagged(item, &tag));
    }
    for (is_one, n) in [(true, 1), (false, 0)] {
        if mode.is(n) {
            if let Some(want) = step(rep, &format!("closed form R [{}]", tag), closed_form_rmatrix(is_one, order)) {
                rep.push(diffeo_mismatch(&format!("R matches closed form [{}]", tag), &rq, &want));
            }
        }
    }
    if mode.is(1) {
        if let Some(item) = step(rep, "inverse group cocycle", check_inverse_cocycle(order)) {
            rep.push(item);
        }
    }
}

fn quantize_first_order(b: &CbcstBuilder, order: usize) -> Result<CheckItem> {
    crate::quantize::quantize(b.cbcst(), order)?.check_first_order(b)
}

/// Runs every check on the example.
pub fn verify_example(cfg: &ExampleConfig) -> Result<Report> {
    if cfg.order < 2 {
        return Err(Error::Invalid("truncation order must be at least 2".into()));
    }
    let r = if cfg.corrupt { corrupted_rmatrix() } else { fixtures::rmatrix() };
    let mut rep = Report::new(format!("example verification, order {}", cfg.order));
    let file_ok = crate::io::read_rmatrix(&fixtures::rmatrix_json()).map(|f| f == fixtures::rmatrix());
    rep.push(equal_item("fixture file parses to the fixture", matches!(file_ok, Ok(true)), || format!("{:?}", file_ok)));
    for mode in &cfg.eps {
        section(&mut rep, &r, mode, cfg.order);
    }
    Ok(rep)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_modes_parse() {
        assert_eq!("symbolic".parse::<EpsMode>().unwrap(), EpsMode::Symbolic);
        assert_eq!("1".parse::<EpsMode>().unwrap(), EpsMode::value(1, 1));
        assert_eq!("-3/4".parse::<EpsMode>().unwrap(), EpsMode::value(-3, 4));
        assert!("1/0".parse::<EpsMode>().is_err());
        assert!("e".parse::<EpsMode>().is_err());
    }

    #[test]
    fn example_passes_at_order_two() {
        let cfg = ExampleConfig { order: 2, ..Default::default() };
        let rep = verify_example(&cfg).unwrap();
        assert!(rep.passed(), "{}", rep.to_human());
    }

    #[test]
    fn corrupted_example_fails() {
        let cfg = ExampleConfig { order: 2, eps: vec![EpsMode::value(1, 1)], corrupt: true };
        assert!(!verify_example(&cfg).unwrap().passed());
    }
}
