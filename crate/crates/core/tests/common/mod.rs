//! Random small 7-tuples and r-matrices for property tests.
//!
//! Every tuple lives on `X = 𝔞` (up to a unimodular change of coordinates),
//! with `Ψ` the linear identification and `(a, g)` moving a point `x` with
//! velocity `−[a, x] − ρ(g)x`.
#![allow(dead_code)]

pub mod oracle;

use geomquant::cbcst::Cbcst;
use geomquant::cybe::GeomRMatrix;
use geomquant::fixtures;
use geomquant::geom::VectorField;
use geomquant::lie::{LieAction, LieAlgebra};
use geomquant::poly::{parse_poly, Coeff, MPoly, Matrix, VarNames};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Table = Vec<Vec<Vec<Coeff>>>;

fn zeros(d: usize) -> Table {
    vec![vec![vec![Coeff::zero(); d]; d]; d]
}

fn c(n: i64) -> Coeff {
    Coeff::from_int(n)
}

/// Product table `m[i][j] = e_i e_j` of a small associative algebra.
pub fn assoc_algebra(kind: usize) -> Table {
    match kind % 5 {
        // k[t]/t^3
        0 => {
            let mut m = zeros(3);
            for i in 0..3 {
                for j in 0..3 {
                    if i + j < 3 {
                        m[i][j][i + j] = c(1);
                    }
                }
            }
            m
        }
        // k × k × k
        1 => {
            let mut m = zeros(3);
            for i in 0..3 {
                m[i][i][i] = c(1);
            }
            m
        }
        // upper-triangular 2×2: E11, E12, E22
        2 => {
            let mut m = zeros(3);
            m[0][0][0] = c(1);
            m[0][1][1] = c(1);
            m[1][2][1] = c(1);
            m[2][2][2] = c(1);
            m
        }
        // 2×2 matrices E11, E12, E21, E22
        3 => {
            let mut m = zeros(4);
            let idx = |a: usize, b: usize| 2 * a + b;
            for a in 0..2 {
                for b in 0..2 {
                    for d in 0..2 {
                        m[idx(a, b)][idx(b, d)][idx(a, d)] = c(1);
                    }
                }
            }
            m
        }
        // k × k[t]/t^2: 1, 1', t
        _ => {
            let mut m = zeros(3);
            m[0][0][0] = c(1);
            m[1][1][1] = c(1);
            m[1][2][2] = c(1);
            m[2][1][2] = c(1);
            m
        }
    }
}

/// A small Lie algebra, as a structure constant table.
pub fn lie_table(kind: usize) -> Table {
    match kind % 4 {
        // sl2: H, E, F
        0 => {
            let mut t = zeros(3);
            let mut set = |i: usize, j: usize, k: usize, v: i64| {
                t[i][j][k] = c(v);
                t[j][i][k] = c(-v);
            };
            set(0, 1, 1, 2);
            set(0, 2, 2, -2);
            set(1, 2, 0, 1);
            t
        }
        // so3
        1 => {
            let mut t = zeros(3);
            let mut set = |i: usize, j: usize, k: usize| {
                t[i][j][k] = c(1);
                t[j][i][k] = c(-1);
            };
            set(0, 1, 2);
            set(1, 2, 0);
            set(2, 0, 1);
            t
        }
        // the non-abelian 2-dimensional algebra
        2 => {
            let mut t = zeros(2);
            t[0][1][1] = c(1);
            t[1][0][1] = c(-1);
            t
        }
        // commutator algebra of upper-triangular 2×2 matrices
        _ => commutator(&assoc_algebra(2)),
    }
}

pub fn commutator(m: &Table) -> Table {
    let d = m.len();
    let mut t = zeros(d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                t[i][j][k] = &m[i][j][k] - &m[j][i][k];
            }
        }
    }
    t
}

/// A unimodular integer matrix with small entries.
pub fn unimodular(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut m = Matrix::identity(d);
    for _ in 0..rng.gen_range(0..=2 * d) {
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if i == j {
            continue;
        }
        let k = c(rng.gen_range(-2..=2));
        let mut next = m.clone();
        for col in 0..d {
            let v = m.get(i, col) + &(&k * m.get(j, col));
            next.set(i, col, v);
        }
        m = next;
    }
    m
}

/// The table in the basis given by the columns of `p`.
pub fn change_basis(m: &Table, p: &Matrix) -> Table {
    let d = m.len();
    let pinv = p.inverse().expect("unimodular");
    let mut out = zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut old = vec![Coeff::zero(); d];
            for a in 0..d {
                for b in 0..d {
                    let s = p.get(a, i) * p.get(b, j);
                    if s.is_zero() {
                        continue;
                    }
                    for (k, o) in old.iter_mut().enumerate() {
                        *o += &(&s * &m[a][b][k]);
                    }
                }
            }
            out[i][j] = pinv.mul_vec(&old).expect("shape");
        }
    }
    out
}

fn labels(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("{}{}", prefix, i)).collect()
}

/// Linear field `x ↦ −M⁻¹ A M x` for `A` acting in `Ψ`-coordinates.
fn linear_field(a: &Matrix, m: &Matrix, minv: &Matrix) -> VectorField {
    let n = m.rows();
    let t = minv.checked_mul(a).and_then(|x| x.checked_mul(m)).expect("square");
    let comps = (0..n)
        .map(|l| {
            let mut p = MPoly::zero(n);
            for k in 0..n {
                p = &p - &MPoly::var(n, k).scale(t.get(l, k));
            }
            p
        })
        .collect();
    VectorField::new(comps).expect("arity")
}

/// The 7-tuple on `X = 𝔞` with `Ψ(x) = M x`.
pub fn tuple_on_a(a: LieAlgebra, g: LieAlgebra, rho: LieAction, pi: Matrix, m: &Matrix) -> Cbcst {
    let n = a.dim();
    let minv = m.inverse().expect("invertible");
    let rho_a = (0..n)
        .map(|k| {
            let mut ad = Matrix::zeros(n, n);
            for l in 0..n {
                for j in 0..n {
                    ad.set(l, j, a.c(k, j, l).clone());
                }
            }
            linear_field(&ad, m, &minv)
        })
        .collect();
    let rho_g = (0..g.dim()).map(|k| linear_field(rho.matrix(k), m, &minv)).collect();
    let psi = (0..n)
        .map(|k| {
            let mut p = MPoly::zero(n);
            for j in 0..n {
                p = &p + &MPoly::var(n, j).scale(m.get(k, j));
            }
            p
        })
        .collect();
    Cbcst::new(n, a, g, rho, rho_a, rho_g, pi, psi).expect("shapes")
}

/// Abelian `𝔞 = A`, `𝔤 = (A, [x, y] = xy − yx)`, `ρ = λ L`, `π = id`: the
/// pre-Lie product `λ xy` of an associative algebra.
pub fn prelie_tuple(seed: u64) -> Cbcst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kind = rng.gen_range(0..5);
    let base = assoc_algebra(kind);
    let d = base.len();
    let m = change_basis(&base, &unimodular(&mut rng, d));
    let lambda = c([1, -1, 2][rng.gen_range(0..3)]);
    let scaled: Table = m.iter().map(|r| r.iter().map(|v| v.iter().map(|x| &lambda * x).collect()).collect()).collect();
    let g = LieAlgebra::from_table(labels("g", d), commutator(&scaled)).expect("antisymmetric");
    let mats = (0..d)
        .map(|k| {
            let mut l = Matrix::zeros(d, d);
            for j in 0..d {
                for i in 0..d {
                    l.set(i, j, scaled[k][j][i].clone());
                }
            }
            l
        })
        .collect();
    let rho = LieAction::new(d, mats).expect("square");
    let coords = unimodular(&mut rng, d);
    tuple_on_a(LieAlgebra::abelian(d), g, rho, Matrix::identity(d), &coords)
}

/// Non-abelian `𝔞`, `π = id`, and `ρ = 0` (`𝔤 = 𝔞`) or `ρ = −ad` (`𝔤 = 𝔞ᵒᵖ`).
pub fn postlie_tuple(seed: u64) -> Cbcst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = lie_table(rng.gen_range(0..4));
    let d = base.len();
    let t = change_basis(&base, &unimodular(&mut rng, d));
    let a = LieAlgebra::from_table(labels("a", d), t.clone()).expect("antisymmetric");
    let (g, rho) = if rng.gen_bool(0.5) {
        (a.clone().with_labels(labels("g", d)), LieAction::zero(d, d))
    } else {
        let neg: Table = t.iter().map(|r| r.iter().map(|v| v.iter().map(|x| -x).collect()).collect()).collect();
        let mats = (0..d)
            .map(|k| {
                let mut l = Matrix::zeros(d, d);
                for j in 0..d {
                    for i in 0..d {
                        l.set(i, j, -&t[k][j][i]);
                    }
                }
                l
            })
            .collect();
        (LieAlgebra::from_table(labels("g", d), neg).expect("antisymmetric"), LieAction::new(d, mats).expect("square"))
    };
    let coords = unimodular(&mut rng, d);
    tuple_on_a(a, g, rho, Matrix::identity(d), &coords)
}

/// The example 7-tuple at a small rational `eps`, in random linear coordinates.
pub fn example_tuple(seed: u64) -> Cbcst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = num_rational::BigRational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into());
    let a = fixtures::heisenberg().specialize_eps(&eps);
    let pi = fixtures::cocycle_matrix().specialize_eps(&eps);
    let coords = unimodular(&mut rng, 3);
    tuple_on_a(a, fixtures::upper_triangular(), fixtures::action(), pi, &coords)
}

/// One of the three families, chosen by the seed.
pub fn random_tuple(seed: u64) -> Cbcst {
    match seed % 3 {
        0 => prelie_tuple(seed / 3),
        1 => postlie_tuple(seed / 3),
        _ => example_tuple(seed / 3),
    }
}

/// A rack r-matrix `Σ f_j ⊗ v_j` on `𝔸^n` with every `v_j` killing every `f_i`
/// and the `v_j` commuting: `f_j` depend on the first coordinate only and `v_j`
/// are constant-coefficient fields along the others.
pub fn random_rack(seed: u64) -> GeomRMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3);
    let names = VarNames::flat(n);
    let terms = rng.gen_range(1..=2);
    let b = (0..terms)
        .map(|t| {
            let f = parse_poly(&format!("x1^{}", t + 1), &names).expect("parses");
            let comps = (0..n)
                .map(|i| if i == 0 { MPoly::zero(n) } else { MPoly::constant(n, c(rng.gen_range(-2..=2))) })
                .collect();
            (f, VectorField::new(comps).expect("arity"))
        })
        .collect();
    GeomRMatrix::new(n, vec![], b).expect("arity")
}
