//! Geometric classical r-matrices `r = Σ a¹_i ⊗ a⁰_i + Σ b⁰_j ⊗ b¹_j` and the
//! classical Yang–Baxter equation.
//!
//! An r-matrix is identified with the vector field on `X²` whose first-block
//! components are `Σ a¹_i(x) a⁰_i(y)` and second-block components are
//! `Σ b⁰_j(x) b¹_j(y)`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::geom::VectorField;
use crate::poly::{MPoly, VarNames};
use crate::report::{CheckItem, Witness};
use crate::span::{canonical_pairs, rank};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomRMatrix {
    n: usize,
    a_terms: Vec<(VectorField, MPoly)>,
    b_terms: Vec<(MPoly, VectorField)>,
}

/// `f` read in block `t` of `X^k`.
fn fn_on(f: &MPoly, t: usize, k: usize) -> MPoly {
    let n = f.arity();
    let map: Vec<usize> = (0..n).map(|i| t * n + i).collect();
    f.embed(n * k, &map)
}

/// `v` acting on block `t` of `X^k`.
fn vf_on(v: &VectorField, t: usize, k: usize) -> VectorField {
    v.place(k, t, t)
}

impl GeomRMatrix {
    pub fn new(n: usize, a_terms: Vec<(VectorField, MPoly)>, b_terms: Vec<(MPoly, VectorField)>) -> Result<Self> {
        for (v, f) in &a_terms {
            check_arity(n, v.arity())?;
            check_arity(n, f.arity())?;
        }
        for (f, v) in &b_terms {
            check_arity(n, v.arity())?;
            check_arity(n, f.arity())?;
        }
        Ok(GeomRMatrix { n, a_terms, b_terms })
    }

    pub fn zero(n: usize) -> Self {
        GeomRMatrix { n, a_terms: Vec::new(), b_terms: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a_terms(&self) -> &[(VectorField, MPoly)] {
        &self.a_terms
    }

    pub fn b_terms(&self) -> &[(MPoly, VectorField)] {
        &self.b_terms
    }

    pub fn is_zero(&self) -> bool {
        self.as_field_on_square().is_zero()
    }

    /// True iff each of the four families of tensor legs is linearly independent.
    pub fn is_minimal(&self) -> Result<bool> {
        let (a1, a0): (Vec<_>, Vec<_>) = self.a_terms.iter().cloned().unzip();
        let (b0, b1): (Vec<_>, Vec<_>) = self.b_terms.iter().cloned().unzip();
        Ok(rank(&a1)? == a1.len() && rank(&a0)? == a0.len() && rank(&b0)? == b0.len() && rank(&b1)? == b1.len())
    }

    /// Equivalent presentation with the fewest terms. The vector-field legs
    /// form the reduced echelon basis of their span, so the result is canonical.
    pub fn minimize(&self) -> Result<GeomRMatrix> {
        let n = self.n;
        let swapped: Vec<(MPoly, VectorField)> = self.a_terms.iter().map(|(v, f)| (f.clone(), v.clone())).collect();
        let a_terms = canonical_pairs(n, n, &swapped)?.into_iter().map(|(f, v)| (v, f)).collect();
        let b_terms = canonical_pairs(n, n, &self.b_terms)?;
        Ok(GeomRMatrix { n, a_terms, b_terms })
    }

    pub fn neg(&self) -> GeomRMatrix {
        GeomRMatrix {
            n: self.n,
            a_terms: self.a_terms.iter().map(|(v, f)| (v.neg(), f.clone())).collect(),
            b_terms: self.b_terms.iter().map(|(f, v)| (f.clone(), v.neg())).collect(),
        }
    }

    /// Formal sum (term lists concatenated).
    pub fn add(&self, other: &GeomRMatrix) -> Result<GeomRMatrix> {
        check_arity(self.n, other.n)?;
        let mut out = self.clone();
        out.a_terms.extend(other.a_terms.iter().cloned());
        out.b_terms.extend(other.b_terms.iter().cloned());
        Ok(out)
    }

    /// `r²¹`: legs swapped, so a-terms and b-terms exchange roles.
    pub fn flip(&self) -> GeomRMatrix {
        GeomRMatrix {
            n: self.n,
            a_terms: self.b_terms.iter().map(|(f, v)| (v.clone(), f.clone())).collect(),
            b_terms: self.a_terms.iter().map(|(v, f)| (f.clone(), v.clone())).collect(),
        }
    }

    /// Equality as elements of `Vect ⊗ O ⊕ O ⊗ Vect`.
    pub fn same_element(&self, other: &GeomRMatrix) -> bool {
        self.n == other.n && self.as_field_on_square() == other.as_field_on_square()
    }

    pub fn specialize_eps(&self, value: &BigRational) -> GeomRMatrix {
        GeomRMatrix {
            n: self.n,
            a_terms: self.a_terms.iter().map(|(v, f)| (v.specialize_eps(value), f.specialize_eps(value))).collect(),
            b_terms: self.b_terms.iter().map(|(f, v)| (f.specialize_eps(value), v.specialize_eps(value))).collect(),
        }
    }

    /// `r^{ij}` as a vector field on `X^k` (0-based blocks, `i ≠ j`).
    pub fn placed(&self, i: usize, j: usize, k: usize) -> VectorField {
        let mut out = VectorField::zero(self.n * k);
        for (v, f) in &self.a_terms {
            out = out.checked_add(&vf_on(v, i, k).mul_poly(&fn_on(f, j, k))).expect("arity");
        }
        for (f, v) in &self.b_terms {
            out = out.checked_add(&vf_on(v, j, k).mul_poly(&fn_on(f, i, k))).expect("arity");
        }
        out
    }

    pub fn as_field_on_square(&self) -> VectorField {
        self.placed(0, 1, 2)
    }

    /// `[r¹², r¹³] + [r¹², r²³] + [r¹³, r²³]` on `X³`.
    pub fn cybe_residual(&self) -> VectorField {
        let r12 = self.placed(0, 1, 3);
        let r13 = self.placed(0, 2, 3);
        let r23 = self.placed(1, 2, 3);
        let t1 = r12.bracket(&r13).expect("arity");
        let t2 = r12.bracket(&r23).expect("arity");
        let t3 = r13.bracket(&r23).expect("arity");
        t1.checked_add(&t2).and_then(|s| s.checked_add(&t3)).expect("arity")
    }

    pub fn check_cybe(&self) -> CheckItem {
        let res = self.cybe_residual();
        CheckItem::from_witnesses("classical Yang-Baxter equation", field_witnesses(&res, self.n))
    }

    /// The three homogeneous parts of the CYBE, each assembled term by term
    /// from the tensor legs. Part `t` is the component of the equation whose
    /// vector-field leg sits in factor `t`.
    pub fn cybe_parts(&self) -> [VectorField; 3] {
        let (n, k) = (self.n, 3);
        let zero = || VectorField::zero(n * k);
        let acc = |out: &mut VectorField, v: VectorField| *out = out.checked_add(&v).expect("arity");
        let mul = |v: VectorField, f: MPoly, g: MPoly| v.mul_poly(&(&f * &g));
        let (a, b) = (&self.a_terms, &self.b_terms);

        let mut p1 = zero();
        for (a1i, a0i) in a {
            for (a1k, a0k) in a {
                let br = a1i.bracket(a1k).expect("arity");
                acc(&mut p1, mul(vf_on(&br, 0, k), fn_on(a0i, 1, k), fn_on(a0k, 2, k)));
                let d = a1k.apply(a0i).expect("arity");
                acc(&mut p1, mul(vf_on(a1i, 0, k), fn_on(&d, 1, k), fn_on(a0k, 2, k)).neg());
            }
            for (b0l, b1l) in b {
                let d = b1l.apply(a0i).expect("arity");
                acc(&mut p1, mul(vf_on(a1i, 0, k), fn_on(b0l, 1, k), fn_on(&d, 2, k)).neg());
            }
        }

        let mut p2 = zero();
        for (a1k, a0k) in a {
            for (b0j, b1j) in b {
                let d = a1k.apply(b0j).expect("arity");
                acc(&mut p2, mul(vf_on(b1j, 1, k), fn_on(&d, 0, k), fn_on(a0k, 2, k)).neg());
                let br = b1j.bracket(a1k).expect("arity");
                acc(&mut p2, mul(vf_on(&br, 1, k), fn_on(b0j, 0, k), fn_on(a0k, 2, k)));
                let d = b1j.apply(a0k).expect("arity");
                acc(&mut p2, mul(vf_on(a1k, 1, k), fn_on(b0j, 0, k), fn_on(&d, 2, k)));
            }
        }

        let mut p3 = zero();
        for (b0l, b1l) in b {
            for (a1i, a0i) in a {
                let d = a1i.apply(b0l).expect("arity");
                acc(&mut p3, mul(vf_on(b1l, 2, k), fn_on(&d, 0, k), fn_on(a0i, 1, k)));
            }
            for (b0j, b1j) in b {
                let d = b1j.apply(b0l).expect("arity");
                acc(&mut p3, mul(vf_on(b1l, 2, k), fn_on(b0j, 0, k), fn_on(&d, 1, k)));
                let br = b1j.bracket(b1l).expect("arity");
                acc(&mut p3, mul(vf_on(&br, 2, k), fn_on(b0j, 0, k), fn_on(b0l, 1, k)));
            }
        }
        [p1, p2, p3]
    }

    /// Checks the three parts separately. Requires a minimal presentation.
    pub fn check_cybe_split(&self) -> Result<[CheckItem; 3]> {
        if !self.is_minimal()? {
            return Err(Error::Invalid("the CYBE split needs a minimal presentation".into()));
        }
        let [p1, p2, p3] = self.cybe_parts();
        let item = |t: usize, p: &VectorField| {
            CheckItem::from_witnesses(format!("CYBE part {}", t), field_witnesses(p, self.n))
        };
        Ok([item(1, &p1), item(2, &p2), item(3, &p3)])
    }

    /// `r²¹ = −r`.
    pub fn check_unitarity(&self) -> bool {
        self.flip().same_element(&self.neg())
    }

    pub fn to_strings(&self) -> (Vec<(Vec<String>, String)>, Vec<(String, Vec<String>)>) {
        let names = VarNames::flat(self.n);
        (
            self.a_terms.iter().map(|(v, f)| (v.to_strings(&names), f.to_string_with(&names))).collect(),
            self.b_terms.iter().map(|(f, v)| (f.to_string_with(&names), v.to_strings(&names))).collect(),
        )
    }
}

fn check_arity(n: usize, got: usize) -> Result<()> {
    if n != got {
        return Err(Error::ArityMismatch { left: n, right: got });
    }
    Ok(())
}

/// One witness per nonzero component of a field on `X^k`, named by block.
pub(crate) fn field_witnesses(v: &VectorField, n: usize) -> Vec<Witness> {
    let k = if n == 0 { 1 } else { v.arity() / n };
    let names = VarNames::blocks(n, k);
    v.components()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| Witness {
            location: format!("d/d{}", names.name(i)),
            residual: p.to_string_with(&names),
        })
        .collect()
}
