//! The three-dimensional Heisenberg example and its deformation in `eps`.
//!
//! `X = 𝔸³` with coordinates `x1, x2, x3`; the r-matrix is
//! `Σ A_i ⊗ x_i − Σ x_i ⊗ B_i` with the vector fields below.

use crate::cbcst::Cbcst;
use crate::cybe::GeomRMatrix;
use crate::error::Result;
use crate::geom::VectorField;
use crate::lie::{LieAction, LieAlgebra, LieCocycle};
use crate::poly::{parse_poly, Coeff, Matrix, MPoly, VarNames};

/// `A_i` components as polynomial strings in `x1, x2, x3`.
pub const A_FIELDS: [[&str; 3]; 3] = [
    ["-1/2*eps*x1 + x2", "0", "-1/2*eps*x3"],
    ["-x1", "x2", "0"],
    ["x1", "0", "x3"],
];

/// `B_i` components.
pub const B_FIELDS: [[&str; 3]; 3] = [
    ["-1/2*eps*x1 + x2", "0", "eps*x2 - 1/2*eps*x3"],
    ["-x1", "x2", "-eps*x1"],
    ["x1", "0", "x3"],
];

fn field(comps: &[&str; 3]) -> VectorField {
    let names = VarNames::flat(3);
    VectorField::new(comps.iter().map(|s| parse_poly(s, &names).expect("fixture parses")).collect()).expect("arity")
}

/// `Σ A_i ⊗ x_i − Σ x_i ⊗ B_i`.
pub fn rmatrix() -> GeomRMatrix {
    let a = (0..3).map(|i| (field(&A_FIELDS[i]), MPoly::var(3, i))).collect();
    let b = (0..3).map(|i| (MPoly::var(3, i), field(&B_FIELDS[i]).neg())).collect();
    GeomRMatrix::new(3, a, b).expect("arity")
}

/// The r-matrix as the JSON file format.
pub fn rmatrix_json() -> String {
    let a: Vec<String> = (0..3)
        .map(|i| {
            format!(
                "    {{\"vf\": [\"{}\", \"{}\", \"{}\"], \"fn\": \"x{}\"}}",
                A_FIELDS[i][0],
                A_FIELDS[i][1],
                A_FIELDS[i][2],
                i + 1
            )
        })
        .collect();
    let b: Vec<String> = (0..3)
        .map(|i| {
            let neg = |s: &str| if s == "0" { "0".to_string() } else { format!("-({})", s) };
            format!(
                "    {{\"fn\": \"x{}\", \"vf\": [\"{}\", \"{}\", \"{}\"]}}",
                i + 1,
                neg(B_FIELDS[i][0]),
                neg(B_FIELDS[i][1]),
                neg(B_FIELDS[i][2])
            )
        })
        .collect();
    format!(
        "{{\n  \"dimension\": 3,\n  \"parameters\": [\"eps\"],\n  \"a_terms\": [\n{}\n  ],\n  \"b_terms\": [\n{}\n  ]\n}}\n",
        a.join(",\n"),
        b.join(",\n")
    )
}

fn unit(k: usize) -> Vec<Coeff> {
    (0..3).map(|i| if i == k { Coeff::one() } else { Coeff::zero() }).collect()
}

/// `span{X, Y, C}` with `[X, Y] = eps C`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        vec!["X".into(), "Y".into(), "C".into()],
        vec![(0, 1, vec![Coeff::zero(), Coeff::zero(), Coeff::eps()])],
    )
    .expect("valid")
}

/// Upper-triangular 2×2 matrices, basis `E11, E12, E22`.
pub fn upper_triangular() -> LieAlgebra {
    LieAlgebra::new(
        vec!["E11".into(), "E12".into(), "E22".into()],
        vec![(0, 1, unit(1)), (1, 2, unit(1))],
    )
    .expect("valid")
}

/// `ρ(p, q, r) = [[p, q, 0], [0, r, 0], [0, 0, p + r]]` in the basis `X, Y, C`.
pub fn action() -> LieAction {
    LieAction::new(
        3,
        vec![
            Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]),
            Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
            Matrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ],
    )
    .expect("valid")
}

/// `π(p, q, r) = q X + r Y + (p + eps q/2 + r) C`.
pub fn cocycle_matrix() -> Matrix {
    let half_eps = Coeff::eps().scale_rational(&num_rational::BigRational::new(1.into(), 2.into()));
    Matrix::from_rows(vec![
        vec![Coeff::zero(), Coeff::one(), Coeff::zero()],
        vec![Coeff::zero(), Coeff::zero(), Coeff::one()],
        vec![Coeff::one(), half_eps, Coeff::one()],
    ])
    .expect("square")
}

pub fn cocycle() -> Result<LieCocycle> {
    LieCocycle::new(heisenberg(), upper_triangular(), action(), cocycle_matrix())
}

/// The 7-tuple with `X = 𝔞` and `Ψ` the identity; `(a, g)` moves a point
/// `x` with velocity `−[a, x] − ρ(g)x`.
pub fn cbcst() -> Cbcst {
    let a = heisenberg();
    let rho = action();
    let linear = |entry: &dyn Fn(usize, usize) -> Coeff| {
        let comps = (0..3)
            .map(|l| {
                let mut p = MPoly::zero(3);
                for m in 0..3 {
                    p.add_scaled(&MPoly::var(3, m), &-entry(l, m));
                }
                p
            })
            .collect();
        VectorField::new(comps).expect("arity")
    };
    let rho_a = (0..3).map(|k| linear(&|l, m| a.c(k, m, l).clone())).collect();
    let rho_g = (0..3).map(|k| linear(&|l, m| rho.matrix(k).get(l, m).clone())).collect();
    let psi = (0..3).map(|k| MPoly::var(3, k)).collect();
    Cbcst::new(3, a, upper_triangular(), rho, rho_a, rho_g, cocycle_matrix(), psi).expect("shapes")
}

/// Closed forms for `π̃⁻¹(e^{ℏ(aX + bY + cC)}) = e^{[[p, q], [0, r]]}` at `eps = 1`,
/// in the variables `a, b, c`.
pub mod inverse_cocycle {
    pub const P: &str = "ln((1 + h*c - h*a/2)/(1 + h*b))";
    pub const Q: &str =
        "h*a*(1 + h*b)*ln((1 + h*c - h*a/2)/(1 + h*b)^2)/(1 + h*c - h*a/2 - (1 + h*b)^2)";
    pub const R: &str = "ln(1 + h*b)";
}

/// Closed forms of `R(x, y) = (x *̌ y, x ∘̌ y)` at `eps = 1`, variables
/// `x1..x3, y1..y3`.
pub mod closed_form {
    pub const DEN: &str = "((1 - h*y2)*(1 - h^2*y1*x2/2) + h*(1 - h*y3 + h*y1/2)*(-x3 + x1/2 + h*x3*y2))";
    pub const STAR: [&str; 3] = [
        "(1 - h*y3 + h*y1/2)/(1 - h*y2)*x1 - h*y1*x2",
        "(1 - h*y2)*x2",
        "(1 - h*y3 + h*y1/2)*x3",
    ];
    /// Numerators over [`DEN`] for components 1 and 3; component 2 is complete.
    pub const CIRC_NUM: [&str; 3] = [
        "(y1*(1 - h*x2) + h*y2*(x1 - y1 + h*y1*x2 - h*x1*y3 + h*x1*y1/2))",
        "y2/(1 - h*x2 + h^2*x2*y2)",
        "((1 - h*y2)*(y3 - h*y1*x2) + h*y2*x1*(1 - h*y3 + h*y1/2))",
    ];

    pub fn circ() -> [String; 3] {
        [
            format!("{}/{}", CIRC_NUM[0], DEN),
            CIRC_NUM[1].to_string(),
            format!("{}/{}", CIRC_NUM[2], DEN),
        ]
    }
}

/// Closed forms of the limit `eps → 0`.
pub mod closed_form_eps0 {
    pub const STAR: [&str; 3] = ["(1 - h*y3)/(1 - h*y2)*x1 - h*y1*x2", "(1 - h*y2)*x2", "(1 - h*y3)*x3"];
    pub const CIRC: [&str; 3] = [
        "y1*(1 - h*x2)/(1 - h*x3 + h^2*x3*y3) + h*y2*x1*(1 - h*y3)/((1 - h*x3 + h^2*x3*y3)*(1 - h*y2))",
        "y2/(1 - h*x2 + h^2*x2*y2)",
        "y3/(1 - h*x3 + h^2*x3*y3)",
    ];
}
