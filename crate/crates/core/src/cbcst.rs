//! Classical bijective cocycle 7-tuples `(𝔤, 𝔞, X, ρ_𝔤𝔞, ρ_𝔤𝔞X, π, Ψ)` and
//! their correspondence with geometric r-matrices.
//!
//! Conventions: `ρ_𝔤𝔞X` is stored on the basis of `𝔞 ⋊ 𝔤` (𝔞 first) as vector
//! fields, and must be a Lie algebra homomorphism for the commutator of
//! fields. `Ψ` is equivariant in the sense
//! `ρ_𝔤𝔞X(a, g)·Ψ = −[a, Ψ] − ρ_𝔤𝔞(g)Ψ`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::cybe::GeomRMatrix;
use crate::error::{Error, Result};
use crate::geom::VectorField;
use crate::lie::{check_cocycle_law, semidirect, LieAction, LieAlgebra, LieCocycle};
use crate::poly::{Coeff, Echelon, Matrix, MPoly, Mono, VarNames};
use crate::report::{CheckItem, Report, Witness};
use crate::span::{combine, Span};

pub(crate) fn fmt_coeffs(v: &[Coeff]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn unit_vec(d: usize, k: usize) -> Vec<Coeff> {
    (0..d).map(|i| if i == k { Coeff::one() } else { Coeff::zero() }).collect()
}

fn vadd(x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn vsub(x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn is_zero_vec(x: &[Coeff]) -> bool {
    x.iter().all(Coeff::is_zero)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cbcst {
    n: usize,
    a: LieAlgebra,
    g: LieAlgebra,
    rho_ga: LieAction,
    rho_a: Vec<VectorField>,
    rho_g: Vec<VectorField>,
    pi: Matrix,
    psi: Vec<MPoly>,
}

impl Cbcst {
    /// Checks shapes only; the axioms are checked by [`Cbcst::validate`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        a: LieAlgebra,
        g: LieAlgebra,
        rho_ga: LieAction,
        rho_a: Vec<VectorField>,
        rho_g: Vec<VectorField>,
        pi: Matrix,
        psi: Vec<MPoly>,
    ) -> Result<Self> {
        let (da, dg) = (a.dim(), g.dim());
        if rho_ga.source_dim() != dg || rho_ga.target_dim() != da {
            return Err(Error::Dimension("the action of g on a has the wrong shape".into()));
        }
        if rho_a.len() != da || rho_g.len() != dg {
            return Err(Error::Dimension("one vector field per basis element of a ⋊ g is required".into()));
        }
        if let Some(v) = rho_a.iter().chain(&rho_g).find(|v| v.arity() != n) {
            return Err(Error::ArityMismatch { left: n, right: v.arity() });
        }
        if pi.rows() != da || pi.cols() != dg {
            return Err(Error::Dimension(format!("cocycle matrix must be {}x{}", da, dg)));
        }
        if psi.len() != da {
            return Err(Error::Dimension(format!("Psi needs {} components", da)));
        }
        if let Some(p) = psi.iter().find(|p| p.arity() != n) {
            return Err(Error::ArityMismatch { left: n, right: p.arity() });
        }
        Ok(Cbcst { n, a, g, rho_ga, rho_a, rho_g, pi, psi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &LieAlgebra {
        &self.a
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn rho_ga(&self) -> &LieAction {
        &self.rho_ga
    }

    /// `ρ_𝔤𝔞X` on the basis of 𝔞.
    pub fn rho_a(&self) -> &[VectorField] {
        &self.rho_a
    }

    /// `ρ_𝔤𝔞X` on the basis of 𝔤.
    pub fn rho_g(&self) -> &[VectorField] {
        &self.rho_g
    }

    pub fn pi(&self) -> &Matrix {
        &self.pi
    }

    pub fn psi(&self) -> &[MPoly] {
        &self.psi
    }

    pub fn cocycle(&self) -> Result<LieCocycle> {
        LieCocycle::new(self.a.clone(), self.g.clone(), self.rho_ga.clone(), self.pi.clone())
    }

    pub fn specialize_eps(&self, value: &BigRational) -> Cbcst {
        Cbcst {
            n: self.n,
            a: self.a.specialize_eps(value),
            g: self.g.specialize_eps(value),
            rho_ga: self.rho_ga.specialize_eps(value),
            rho_a: self.rho_a.iter().map(|v| v.specialize_eps(value)).collect(),
            rho_g: self.rho_g.iter().map(|v| v.specialize_eps(value)).collect(),
            pi: self.pi.specialize_eps(value),
            psi: self.psi.iter().map(|p| p.specialize_eps(value)).collect(),
        }
    }

    /// `ρ_𝔤𝔞X(a, g)` for coordinates `a` in 𝔞 and `g` in 𝔤.
    pub fn field_of(&self, a: &[Coeff], g: &[Coeff]) -> VectorField {
        combine(self.n, &self.rho_a, a).checked_add(&combine(self.n, &self.rho_g, g)).expect("arity")
    }

    fn semidirect_field(&self, w: &[Coeff]) -> VectorField {
        let da = self.a.dim();
        self.field_of(&w[..da], &w[da..])
    }

    /// The coefficient vector in 𝔞 of each monomial of `Ψ`.
    pub fn psi_coefficients(&self) -> BTreeMap<Mono, Vec<Coeff>> {
        let da = self.a.dim();
        let mut out: BTreeMap<Mono, Vec<Coeff>> = BTreeMap::new();
        for (k, p) in self.psi.iter().enumerate() {
            for (m, c) in p.terms() {
                out.entry(m.clone()).or_insert_with(|| vec![Coeff::zero(); da])[k] = c.clone();
            }
        }
        out
    }

    /// Every axiom, one item each. Faithfulness is not an axiom; see
    /// [`Cbcst::check_faithful`].
    pub fn validate(&self) -> Report {
        let mut rep = Report::new("cocycle 7-tuple axioms");
        let mut a_item = self.a.check_jacobi();
        a_item.name = "Jacobi identity in a".into();
        rep.push(a_item);
        let mut g_item = self.g.check_jacobi();
        g_item.name = "Jacobi identity in g".into();
        rep.push(g_item);
        let mut d = self.rho_ga.check_derivation(&self.a);
        d.name = "g acts on a by derivations".into();
        rep.push(d);
        let mut h = self.rho_ga.check_homomorphism(&self.g);
        h.name = "g acts on a by a homomorphism".into();
        rep.push(h);
        rep.push(match self.pi.inverse() {
            Ok(_) => CheckItem::pass("cocycle is bijective"),
            Err(e) => CheckItem::fail("cocycle is bijective", e.to_string()),
        });
        rep.push(check_cocycle_law(&self.a, &self.g, &self.rho_ga, &self.pi));
        rep.push(self.check_field_homomorphism());
        rep.push(self.check_equivariance());
        rep.push(self.check_generation());
        rep
    }

    /// `ρ_𝔤𝔞X` is a Lie algebra homomorphism `𝔞 ⋊ 𝔤 → Vect(X)`.
    pub fn check_field_homomorphism(&self) -> CheckItem {
        let name = "a ⋊ g acts on X by a homomorphism";
        let semi = match semidirect(&self.a, &self.g, &self.rho_ga) {
            Ok(s) => s,
            Err(e) => return CheckItem::fail(name, e.to_string()),
        };
        let dim = semi.dim();
        let basis: Vec<VectorField> = (0..dim).map(|i| self.semidirect_field(&unit_vec(dim, i))).collect();
        let names = VarNames::flat(self.n);
        let mut w = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let lhs = basis[i].bracket(&basis[j]).expect("arity");
                let rhs = self.semidirect_field(&semi.bracket_basis(i, j));
                let res = lhs.checked_sub(&rhs).expect("arity");
                if !res.is_zero() {
                    w.push(Witness {
                        location: format!("({}, {})", semi.labels()[i], semi.labels()[j]),
                        residual: format!("{:?}", res.to_strings(&names)),
                    });
                }
            }
        }
        CheckItem::from_witnesses(name, w)
    }

    /// `ρ_𝔤𝔞X(a, g)·Ψ + [a, Ψ] + ρ_𝔤𝔞(g)Ψ = 0` on every basis element of `𝔞 ⋊ 𝔤`.
    pub fn check_equivariance(&self) -> CheckItem {
        let (da, dg) = (self.a.dim(), self.g.dim());
        let names = VarNames::flat(self.n);
        let mut w = Vec::new();
        for u in 0..da + dg {
            let field = if u < da { &self.rho_a[u] } else { &self.rho_g[u - da] };
            for l in 0..da {
                let mut res = field.apply(&self.psi[l]).expect("arity");
                for m in 0..da {
                    let c = if u < da { self.a.c(u, m, l).clone() } else { self.rho_ga.matrix(u - da).get(l, m).clone() };
                    if !c.is_zero() {
                        res.add_scaled(&self.psi[m], &c);
                    }
                }
                if !res.is_zero() {
                    let label = if u < da { &self.a.labels()[u] } else { &self.g.labels()[u - da] };
                    w.push(Witness {
                        location: format!("basis element {}, component {}", label, self.a.labels()[l]),
                        residual: res.to_string_with(&names),
                    });
                }
            }
        }
        CheckItem::from_witnesses("Psi is equivariant", w)
    }

    /// The Lie subalgebra generated by the values of `Ψ` is all of 𝔞.
    pub fn check_generation(&self) -> CheckItem {
        let name = "Psi generates a";
        let da = self.a.dim();
        let gens: Vec<Vec<Coeff>> = self.psi_coefficients().into_values().collect();
        match lie_closure(&self.a, &gens) {
            Ok(r) if r == da => CheckItem::pass(name),
            Ok(r) => CheckItem::fail(name, format!("generated subalgebra has dimension {} < {}", r, da)),
            Err(e) => CheckItem::fail(name, e.to_string()),
        }
    }

    /// `g ↦ (ρ(0, g), ρ(πg, g))` is injective.
    pub fn check_faithful(&self) -> CheckItem {
        let name = "faithful";
        let dg = self.g.dim();
        let pairs: Vec<VectorField> = (0..dg)
            .map(|k| {
                let e = unit_vec(dg, k);
                let first = self.field_of(&vec![Coeff::zero(); self.a.dim()], &e);
                let second = self.field_of(&self.pi.column(k), &e);
                pair_field(&first, &second)
            })
            .collect();
        match kernel_of(2 * self.n, &pairs) {
            Ok(ker) if ker.is_empty() => CheckItem::pass(name),
            Ok(ker) => CheckItem::from_witnesses(
                name,
                ker.iter().map(|v| Witness { location: "kernel vector in g".into(), residual: fmt_coeffs(v) }).collect(),
            ),
            Err(e) => CheckItem::fail(name, e.to_string()),
        }
    }

    /// The r-matrix `Σ −ρ(π⁻¹e_k) ⊗ Ψ_k + Σ Ψ_k ⊗ ρ(e_k, π⁻¹e_k)`, minimized.
    pub fn to_rmatrix(&self) -> Result<GeomRMatrix> {
        let report = self.validate();
        if !report.passed() {
            let names: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
            return Err(Error::Invalid(format!("7-tuple fails: {}", names.join(", "))));
        }
        let pi_inv = self.pi.inverse()?;
        let (da, dg) = (self.a.dim(), self.g.dim());
        let zero_a = vec![Coeff::zero(); da];
        let mut a_terms = Vec::new();
        let mut b_terms = Vec::new();
        for k in 0..da {
            let gk = pi_inv.column(k);
            let along_g = self.field_of(&zero_a, &gk);
            a_terms.push((along_g.neg(), self.psi[k].clone()));
            b_terms.push((self.psi[k].clone(), self.field_of(&unit_vec(da, k), &gk)));
        }
        debug_assert_eq!(pi_inv.rows(), dg);
        GeomRMatrix::new(self.n, a_terms, b_terms)?.minimize()
    }
}

/// `(v, w)` as a field on `X²`.
fn pair_field(v: &VectorField, w: &VectorField) -> VectorField {
    v.place(2, 0, 0).checked_add(&w.place(2, 1, 1)).expect("arity")
}

/// Basis of `{c : Σ c_i items_i = 0}`.
fn kernel_of(arity: usize, items: &[VectorField]) -> Result<Vec<Vec<Coeff>>> {
    use crate::span::Spannable;
    let vecs: Vec<_> = items.iter().map(|v| v.sparse()).collect();
    let mut keys: Vec<_> = vecs.iter().flat_map(|v| v.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut m = Matrix::zeros(keys.len(), items.len());
    for (j, v) in vecs.iter().enumerate() {
        for (k, c) in v {
            let i = keys.binary_search(k).expect("collected");
            m.set(i, j, c.clone());
        }
    }
    debug_assert!(items.iter().all(|v| v.arity() == arity));
    m.kernel()
}

/// Dimension of the Lie subalgebra generated by `gens`.
fn lie_closure(alg: &LieAlgebra, gens: &[Vec<Coeff>]) -> Result<usize> {
    let to_map = |v: &Vec<Coeff>| -> BTreeMap<usize, Coeff> {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    };
    let mut vecs: Vec<BTreeMap<usize, Coeff>> = gens.iter().map(to_map).collect();
    loop {
        let ech = Echelon::new(&vecs)?;
        let basis: Vec<Vec<Coeff>> = ech
            .basis()
            .iter()
            .map(|m| (0..alg.dim()).map(|i| m.get(&i).cloned().unwrap_or_default()).collect())
            .collect();
        let mut grown = false;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let br = to_map(&alg.bracket(&basis[i], &basis[j]));
                if !ech.contains(&br) {
                    vecs.push(br);
                    grown = true;
                }
            }
        }
        if !grown {
            return Ok(ech.rank());
        }
    }
}

/// The data of the forward construction `r ↦ (𝔤, 𝔞, X, ρ_𝔤𝔞, ρ_𝔤𝔞X, π, Ψ)`.
///
/// `V = span{a⁰_i, b⁰_j}` carries the echelon basis `f_1..f_d`; 𝔞 is its dual,
/// with basis `e_1..e_d`, and `Ψ_k = f_k`.
#[derive(Clone, Debug)]
pub struct CbcstBuilder {
    r: GeomRMatrix,
    fbasis: Vec<MPoly>,
    /// `a⁰_i = Σ_k alpha[i][k] f_k`.
    alpha: Vec<Vec<Coeff>>,
    /// `b⁰_j = Σ_k beta[j][k] f_k`.
    beta: Vec<Vec<Coeff>>,
    /// `star[a][b] = e_a ⊛ e_b`.
    star: Vec<Vec<Vec<Coeff>>>,
    /// `circ[a][b] = e_a ∘ e_b`.
    circ: Vec<Vec<Vec<Coeff>>>,
    /// `p(e_k)` as a field on `X²`.
    p_fields: Vec<VectorField>,
    /// `gbr[a][b] = π[p(e_a), p(e_b)]`.
    gbr: Vec<Vec<Vec<Coeff>>>,
    cbcst: Cbcst,
}

impl CbcstBuilder {
    pub fn from_rmatrix(r: &GeomRMatrix) -> Result<Self> {
        let cy = r.check_cybe();
        if !cy.passed {
            let w = cy.witness.first().map(|w| format!("{}: {}", w.location, w.residual)).unwrap_or_default();
            return Err(Error::Construction(format!("r does not satisfy the CYBE ({})", w)));
        }
        let r = r.minimize()?;
        let n = r.n();
        let a0: Vec<MPoly> = r.a_terms().iter().map(|(_, f)| f.clone()).collect();
        let b0: Vec<MPoly> = r.b_terms().iter().map(|(f, _)| f.clone()).collect();
        let a1: Vec<VectorField> = r.a_terms().iter().map(|(v, _)| v.clone()).collect();
        let b1: Vec<VectorField> = r.b_terms().iter().map(|(_, v)| v.clone()).collect();
        let all: Vec<MPoly> = a0.iter().chain(&b0).cloned().collect();
        let span = Span::new(n, &all)?;
        let d = span.dim();
        if d == 0 {
            return Err(Error::Construction("r = 0 gives a zero-dimensional algebra".into()));
        }
        let fbasis = span.basis.clone();
        let alpha = span.coords[..a0.len()].to_vec();
        let beta = span.coords[a0.len()..].to_vec();

        let coords = |p: &MPoly, what: &str| -> Result<Vec<Coeff>> {
            span.coordinates(p).ok_or_else(|| Error::Construction(format!("{} leaves span(a0, b0)", what)))
        };
        // gamma[i][l] = coordinates of a¹_i·f_l, delta[j][l] of b¹_j·f_l.
        let mut gamma = Vec::new();
        for (i, v) in a1.iter().enumerate() {
            let row = fbasis.iter().map(|f| coords(&v.apply(f)?, &format!("a1_{}·f", i + 1))).collect::<Result<Vec<_>>>()?;
            gamma.push(row);
        }
        let mut delta = Vec::new();
        for (j, v) in b1.iter().enumerate() {
            let row = fbasis.iter().map(|f| coords(&v.apply(f)?, &format!("b1_{}·f", j + 1))).collect::<Result<Vec<_>>>()?;
            delta.push(row);
        }
        // (e_a ⊛ e_b)(f_l) = Σ_i α_ia γ^i_{l,b};  (e_a ∘ e_b)(f_l) = Σ_j β_jb δ^j_{l,a}.
        let mut star = vec![vec![vec![Coeff::zero(); d]; d]; d];
        let mut circ = vec![vec![vec![Coeff::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                for l in 0..d {
                    let mut s = Coeff::zero();
                    for (i, al) in alpha.iter().enumerate() {
                        if !al[a].is_zero() {
                            s += &(&al[a] * &gamma[i][l][b]);
                        }
                    }
                    star[a][b][l] = s;
                    let mut c = Coeff::zero();
                    for (j, be) in beta.iter().enumerate() {
                        if !be[b].is_zero() {
                            c += &(&be[b] * &delta[j][l][a]);
                        }
                    }
                    circ[a][b][l] = c;
                }
            }
        }

        // p(e_k) = (−Σ α_ik a¹_i, Σ β_jk b¹_j).
        let mut first = Vec::with_capacity(d);
        let mut second = Vec::with_capacity(d);
        for k in 0..d {
            let ak: Vec<Coeff> = alpha.iter().map(|row| row[k].clone()).collect();
            let bk: Vec<Coeff> = beta.iter().map(|row| row[k].clone()).collect();
            first.push(combine(n, &a1, &ak).neg());
            second.push(combine(n, &b1, &bk));
        }
        let p_fields: Vec<VectorField> = first.iter().zip(&second).map(|(u, v)| pair_field(u, v)).collect();
        let ker = kernel_of(2 * n, &p_fields)?;
        if let Some(v) = ker.first() {
            return Err(Error::Construction(format!("p is not injective on a; kernel vector {}", fmt_coeffs(v))));
        }
        let pspan = Span::new(2 * n, &p_fields)?;
        // Coordinates in the basis p(e_k), obtained from the echelon coordinates.
        let to_p = Matrix::from_rows(pspan.coords.clone())?.transpose().inverse()?;

        let mut gbr = vec![vec![vec![Coeff::zero(); d]; d]; d];
        for a in 0..d {
            for b in a + 1..d {
                let br = pair_field(&first[a].bracket(&first[b])?, &second[a].bracket(&second[b])?);
                let c = pspan.coordinates(&br).ok_or_else(|| {
                    Error::Construction(format!("[p(e{}), p(e{})] is not in the image of p", a + 1, b + 1))
                })?;
                let c = to_p.mul_vec(&c)?;
                gbr[b][a] = c.iter().map(|x| -x).collect();
                gbr[a][b] = c;
            }
        }

        // [x, y] = −x⊛y + y⊛x + π[p(x), p(y)].
        let mut brackets = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let v = vadd(&vsub(&star[b][a], &star[a][b]), &gbr[a][b]);
                if !is_zero_vec(&v) {
                    brackets.push((a, b, v));
                }
            }
        }
        let a_labels: Vec<String> = (1..=d).map(|k| format!("e{}", k)).collect();
        let alg_a = LieAlgebra::new(a_labels, brackets)?;
        let g_brackets = (0..d)
            .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
            .filter(|&(a, b)| !is_zero_vec(&gbr[a][b]))
            .map(|(a, b)| (a, b, gbr[a][b].clone()))
            .collect();
        let alg_g = LieAlgebra::new((1..=d).map(|k| format!("p(e{})", k)).collect(), g_brackets)?;
        // p(e_k) acts on 𝔞 by e_k ⊛ ·.
        let mats = (0..d)
            .map(|k| {
                let mut m = Matrix::zeros(d, d);
                for b in 0..d {
                    for l in 0..d {
                        m.set(l, b, star[k][b][l].clone());
                    }
                }
                m
            })
            .collect();
        let rho_ga = LieAction::new(d, mats)?;
        let rho_a = (0..d)
            .map(|k| first[k].neg().checked_add(&second[k]))
            .collect::<Result<Vec<_>>>()?;
        let cbcst = Cbcst::new(n, alg_a, alg_g, rho_ga, rho_a, first, Matrix::identity(d), fbasis.clone())?;
        Ok(CbcstBuilder { r, fbasis, alpha, beta, star, circ, p_fields, gbr, cbcst })
    }

    pub fn rmatrix(&self) -> &GeomRMatrix {
        &self.r
    }

    pub fn cbcst(&self) -> &Cbcst {
        &self.cbcst
    }

    pub fn into_cbcst(self) -> Cbcst {
        self.cbcst
    }

    /// `f_1..f_d`, the basis of `V` dual to the basis of 𝔞.
    pub fn function_basis(&self) -> &[MPoly] {
        &self.fbasis
    }

    pub fn alpha(&self) -> &[Vec<Coeff>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Vec<Coeff>] {
        &self.beta
    }

    fn dim(&self) -> usize {
        self.fbasis.len()
    }

    fn bilinear(table: &[Vec<Vec<Coeff>>], x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
        let d = x.len();
        let mut out = vec![Coeff::zero(); d];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = xa * yb;
                for l in 0..d {
                    if !table[a][b][l].is_zero() {
                        out[l] += &(&s * &table[a][b][l]);
                    }
                }
            }
        }
        out
    }

    /// `x ⊛ y`.
    pub fn star(&self, x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
        Self::bilinear(&self.star, x, y)
    }

    /// `x ∘ y`.
    pub fn circ(&self, x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
        Self::bilinear(&self.circ, x, y)
    }

    /// `π[p(x), p(y)]`.
    pub fn pi_bracket(&self, x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
        Self::bilinear(&self.gbr, x, y)
    }

    /// `p(x)` as a field on `X²`.
    pub fn p(&self, x: &[Coeff]) -> VectorField {
        combine(2 * self.r.n(), &self.p_fields, x)
    }

    /// `span{a¹_i}` and `span{b¹_j}` are closed under the bracket.
    pub fn check_subalgebras(&self) -> Result<[CheckItem; 2]> {
        let a1: Vec<VectorField> = self.r.a_terms().iter().map(|(v, _)| v.clone()).collect();
        let b1: Vec<VectorField> = self.r.b_terms().iter().map(|(_, v)| v.clone()).collect();
        let check = |name: &str, fields: &[VectorField]| -> Result<CheckItem> {
            let span = Span::new(self.r.n(), fields)?;
            let names = VarNames::flat(self.r.n());
            let mut w = Vec::new();
            for i in 0..fields.len() {
                for j in i + 1..fields.len() {
                    let br = fields[i].bracket(&fields[j])?;
                    if span.coordinates(&br).is_none() {
                        w.push(Witness {
                            location: format!("({}, {})", i + 1, j + 1),
                            residual: format!("{:?}", br.to_strings(&names)),
                        });
                    }
                }
            }
            Ok(CheckItem::from_witnesses(name, w))
        };
        Ok([check("span of a1 is a subalgebra", &a1)?, check("span of b1 is a subalgebra", &b1)?])
    }

    /// `[p(x), p(y)] = p(x⊛y) + p(x∘y)` on basis pairs.
    pub fn check_fryb(&self) -> CheckItem {
        let d = self.dim();
        let n2 = 2 * self.r.n();
        let names = VarNames::blocks(self.r.n(), 2);
        let mut w = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let (x, y) = (unit_vec(d, a), unit_vec(d, b));
                let (px, py) = (self.p(&x), self.p(&y));
                // The bracket of pairs is taken blockwise, which is the bracket on X² of the pair fields.
                let lhs = px.bracket(&py).expect("arity");
                let rhs = self.p(&vadd(&self.star(&x, &y), &self.circ(&x, &y)));
                let res = lhs.checked_sub(&rhs).expect("arity");
                debug_assert_eq!(res.arity(), n2);
                if !res.is_zero() {
                    w.push(Witness {
                        location: format!("(e{}, e{})", a + 1, b + 1),
                        residual: format!("{:?}", res.to_strings(&names)),
                    });
                }
            }
        }
        CheckItem::from_witnesses("[p(x), p(y)] = p(x*y) + p(x o y)", w)
    }

    /// `[x, y] = x∘y + y⊛x` on basis pairs.
    pub fn check_sryb(&self) -> CheckItem {
        let d = self.dim();
        let a = self.cbcst.a();
        let mut w = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (unit_vec(d, i), unit_vec(d, j));
                let res = vsub(&a.bracket(&x, &y), &vadd(&self.circ(&x, &y), &self.star(&y, &x)));
                if !is_zero_vec(&res) {
                    w.push(Witness { location: format!("(e{}, e{})", i + 1, j + 1), residual: fmt_coeffs(&res) });
                }
            }
        }
        CheckItem::from_witnesses("[x, y] = x o y + y * x", w)
    }

    /// The eight-term identity on basis triples.
    pub fn check_eight_term(&self) -> CheckItem {
        let d = self.dim();
        let mut w = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (unit_vec(d, i), unit_vec(d, j), unit_vec(d, k));
                    let s = |u: &[Coeff], v: &[Coeff]| self.star(u, v);
                    let pb = |u: &[Coeff], v: &[Coeff]| self.pi_bracket(u, v);
                    let zy = s(&z, &y);
                    let zx = s(&z, &x);
                    let terms = [
                        pb(&zy, &x),
                        s(&zy, &x).iter().map(|c| -c).collect(),
                        s(&z, &pb(&y, &x)).iter().map(|c| -c).collect(),
                        s(&z, &s(&y, &x)),
                        s(&pb(&z, &x), &y).iter().map(|c| -c).collect(),
                        s(&zx, &y),
                        pb(&y, &zx),
                        s(&y, &zx).iter().map(|c| -c).collect::<Vec<_>>(),
                    ];
                    let res = terms.iter().fold(vec![Coeff::zero(); d], |acc, t| vadd(&acc, t));
                    if !is_zero_vec(&res) {
                        w.push(Witness {
                            location: format!("(x, y, z) = (e{}, e{}, e{})", i + 1, j + 1, k + 1),
                            residual: fmt_coeffs(&res),
                        });
                    }
                }
            }
        }
        CheckItem::from_witnesses("eight-term identity", w)
    }

    /// The construction's own identities followed by the 7-tuple axioms.
    pub fn validate(&self) -> Result<Report> {
        let mut rep = Report::new("construction from an r-matrix");
        for item in self.check_subalgebras()? {
            rep.push(item);
        }
        rep.push(self.check_fryb());
        rep.push(self.check_sryb());
        rep.push(self.check_eight_term());
        rep.extend(self.cbcst.validate());
        rep.push(self.cbcst.check_faithful());
        Ok(rep)
    }
}

/// An explicit isomorphism between two 7-tuples on the same `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct CbcstIso {
    /// Columns: images of the basis of the first 𝔞 in the second.
    pub phi_a: Matrix,
    /// Columns: images of the basis of the first 𝔤 in the second.
    pub phi_g: Matrix,
}

impl CbcstIso {
    /// The map on 𝔞 is forced by `Ψ₂ = φ_a ∘ Ψ₁`; the map on 𝔤 by the cocycles,
    /// `φ_g = π₂⁻¹ φ_a π₁`.
    pub fn identify(c1: &Cbcst, c2: &Cbcst) -> Result<CbcstIso> {
        if c1.n != c2.n {
            return Err(Error::ArityMismatch { left: c1.n, right: c2.n });
        }
        let (d1, d2) = (c1.a.dim(), c2.a.dim());
        if d1 != d2 || c1.g.dim() != c2.g.dim() {
            return Err(Error::Dimension(format!("dimensions differ: a {} vs {}, g {} vs {}", d1, d2, c1.g.dim(), c2.g.dim())));
        }
        let p1 = c1.psi_coefficients();
        let p2 = c2.psi_coefficients();
        let monos: Vec<&Mono> = {
            let mut m: Vec<&Mono> = p1.keys().chain(p2.keys()).collect();
            m.sort();
            m.dedup();
            m
        };
        let zero = vec![Coeff::zero(); d1];
        // Rows indexed by monomials: Ψ₁ᵀ φ_aᵀ = Ψ₂ᵀ.
        let lhs = Matrix::from_rows(monos.iter().map(|m| p1.get(*m).unwrap_or(&zero).clone()).collect())?;
        let mut phi_a = Matrix::zeros(d2, d1);
        for row in 0..d2 {
            let rhs: Vec<Coeff> = monos.iter().map(|m| p2.get(*m).map_or_else(Coeff::zero, |v| v[row].clone())).collect();
            let sol = lhs
                .solve(&rhs)?
                .ok_or_else(|| Error::Construction("the two Psi maps are not related by a linear map".into()))?;
            for (col, c) in sol.into_iter().enumerate() {
                phi_a.set(row, col, c);
            }
        }
        if lhs.rank()? != d1 {
            return Err(Error::Construction("Psi does not span a linearly; the identification is not unique".into()));
        }
        let phi_g = c2.pi.inverse()?.checked_mul(&phi_a)?.checked_mul(&c1.pi)?;
        Ok(CbcstIso { phi_a, phi_g })
    }

    /// Checks every compatibility of the pair of maps.
    pub fn check(&self, c1: &Cbcst, c2: &Cbcst) -> Report {
        let mut rep = Report::new("isomorphism witness");
        let (da, dg) = (c1.a.dim(), c1.g.dim());
        rep.push(match (self.phi_a.inverse(), self.phi_g.inverse()) {
            (Ok(_), Ok(_)) => CheckItem::pass("maps are invertible"),
            _ => CheckItem::fail("maps are invertible", "singular basis change"),
        });
        rep.push(bracket_preserved("a brackets preserved", &c1.a, &c2.a, &self.phi_a));
        rep.push(bracket_preserved("g brackets preserved", &c1.g, &c2.g, &self.phi_g));
        let lhs = c2.pi.checked_mul(&self.phi_g).expect("shapes");
        let rhs = self.phi_a.checked_mul(&c1.pi).expect("shapes");
        rep.push(if lhs == rhs {
            CheckItem::pass("cocycles correspond")
        } else {
            CheckItem::fail("cocycles correspond", format!("{:?} vs {:?}", lhs, rhs))
        });
        let mut w = Vec::new();
        for k in 0..dg {
            let g2 = c2.rho_ga.matrix_of(&self.phi_g.column(k));
            let l = g2.checked_mul(&self.phi_a).expect("shapes");
            let r = self.phi_a.checked_mul(c1.rho_ga.matrix(k)).expect("shapes");
            if l != r {
                w.push(Witness { location: c1.g.labels()[k].clone(), residual: format!("{:?}", l.checked_sub(&r)) });
            }
        }
        rep.push(CheckItem::from_witnesses("actions on a correspond", w));
        let names = VarNames::flat(c1.n);
        let mut w = Vec::new();
        let za2 = vec![Coeff::zero(); da];
        let zg2 = vec![Coeff::zero(); dg];
        for k in 0..da {
            let v2 = c2.field_of(&self.phi_a.column(k), &zg2);
            if v2 != c1.rho_a[k] {
                w.push(Witness { location: c1.a.labels()[k].clone(), residual: format!("{:?}", v2.to_strings(&names)) });
            }
        }
        for k in 0..dg {
            let v2 = c2.field_of(&za2, &self.phi_g.column(k));
            if v2 != c1.rho_g[k] {
                w.push(Witness { location: c1.g.labels()[k].clone(), residual: format!("{:?}", v2.to_strings(&names)) });
            }
        }
        rep.push(CheckItem::from_witnesses("actions on X correspond", w));
        let mut w = Vec::new();
        for l in 0..da {
            let mut img = MPoly::zero(c1.n);
            for k in 0..da {
                img.add_scaled(&c1.psi[k], self.phi_a.get(l, k));
            }
            if img != c2.psi[l] {
                w.push(Witness { location: c2.a.labels()[l].clone(), residual: (&img - &c2.psi[l]).to_string_with(&names) });
            }
        }
        rep.push(CheckItem::from_witnesses("Psi maps correspond", w));
        rep
    }
}

fn bracket_preserved(name: &str, l1: &LieAlgebra, l2: &LieAlgebra, phi: &Matrix) -> CheckItem {
    let mut w = Vec::new();
    for i in 0..l1.dim() {
        for j in i + 1..l1.dim() {
            let lhs = phi.mul_vec(&l1.bracket_basis(i, j)).expect("shape");
            let rhs = l2.bracket(&phi.column(i), &phi.column(j));
            let res = vsub(&lhs, &rhs);
            if !is_zero_vec(&res) {
                w.push(Witness { location: format!("({}, {})", l1.labels()[i], l1.labels()[j]), residual: fmt_coeffs(&res) });
            }
        }
    }
    CheckItem::from_witnesses(name, w)
}
