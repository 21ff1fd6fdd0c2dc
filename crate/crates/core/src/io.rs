//! JSON file formats. Every polynomial, coefficient and series travels as a
//! string in the shared expression syntax.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cbcst::Cbcst;
use crate::cybe::GeomRMatrix;
use crate::error::{Error, Result};
use crate::geom::{FormalDiffeo, VectorField};
use crate::lie::{LieAction, LieAlgebra};
use crate::poly::{parse_poly, parse_series, Coeff, HSeries, MPoly, Matrix, VarNames};
use crate::quantize::RMatrixQ;

const PARAMETERS: [&str; 1] = ["eps"];

fn at(path: &str, e: Error) -> Error {
    Error::Invalid(format!("{}: {}", path, e))
}

fn poly(s: &str, names: &VarNames, path: &str) -> Result<MPoly> {
    parse_poly(s, names).map_err(|e| at(path, e))
}

fn field(comps: &[String], names: &VarNames, path: &str) -> Result<VectorField> {
    if comps.len() != names.len() {
        return Err(Error::Invalid(format!("{}: expected {} components, got {}", path, names.len(), comps.len())));
    }
    let comps = comps.iter().enumerate().map(|(i, s)| poly(s, names, &format!("{}[{}]", path, i))).collect::<Result<_>>()?;
    VectorField::new(comps)
}

fn coeff(s: &str, path: &str) -> Result<Coeff> {
    let p = parse_poly(s, &VarNames::flat(0)).map_err(|e| at(path, e))?;
    Ok(p.constant_term())
}

fn coeffs(v: &[String], dim: usize, path: &str) -> Result<Vec<Coeff>> {
    if v.len() != dim {
        return Err(Error::Invalid(format!("{}: expected {} entries, got {}", path, dim, v.len())));
    }
    v.iter().enumerate().map(|(i, s)| coeff(s, &format!("{}[{}]", path, i))).collect()
}

fn matrix(rows: &[Vec<String>], r: usize, c: usize, path: &str) -> Result<Matrix> {
    if rows.len() != r {
        return Err(Error::Invalid(format!("{}: expected {} rows, got {}", path, r, rows.len())));
    }
    let rows = rows.iter().enumerate().map(|(i, row)| coeffs(row, c, &format!("{}[{}]", path, i))).collect::<Result<_>>()?;
    Matrix::from_rows(rows)
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(Coeff::to_string).collect()).collect()
}

fn check_parameters(params: &[String]) -> Result<()> {
    match params.iter().find(|p| !PARAMETERS.contains(&p.as_str())) {
        Some(p) => Err(Error::Invalid(format!("unknown parameter '{}'", p))),
        None => Ok(()),
    }
}

fn parameters_of(uses_eps: bool) -> Vec<String> {
    if uses_eps {
        vec!["eps".to_string()]
    } else {
        Vec::new()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ATermFile {
    pub vf: Vec<String>,
    #[serde(rename = "fn")]
    pub func: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BTermFile {
    #[serde(rename = "fn")]
    pub func: String,
    pub vf: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixFile {
    pub dimension: usize,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub a_terms: Vec<ATermFile>,
    #[serde(default)]
    pub b_terms: Vec<BTermFile>,
}

impl RMatrixFile {
    pub fn from_rmatrix(r: &GeomRMatrix) -> Self {
        let (a, b) = r.to_strings();
        let uses_eps = *r != r.specialize_eps(&BigRational::from_integer(0.into()));
        RMatrixFile {
            dimension: r.n(),
            parameters: parameters_of(uses_eps),
            a_terms: a.into_iter().map(|(vf, func)| ATermFile { vf, func }).collect(),
            b_terms: b.into_iter().map(|(func, vf)| BTermFile { func, vf }).collect(),
        }
    }

    pub fn to_rmatrix(&self) -> Result<GeomRMatrix> {
        check_parameters(&self.parameters)?;
        if self.dimension == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        let names = VarNames::flat(self.dimension);
        let a = self
            .a_terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let p = format!("a_terms[{}]", i);
                Ok((field(&t.vf, &names, &format!("{}.vf", p))?, poly(&t.func, &names, &format!("{}.fn", p))?))
            })
            .collect::<Result<_>>()?;
        let b = self
            .b_terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let p = format!("b_terms[{}]", i);
                Ok((poly(&t.func, &names, &format!("{}.fn", p))?, field(&t.vf, &names, &format!("{}.vf", p))?))
            })
            .collect::<Result<_>>()?;
        GeomRMatrix::new(self.dimension, a, b)
    }
}

pub fn read_rmatrix(text: &str) -> Result<GeomRMatrix> {
    serde_json::from_str::<RMatrixFile>(text)?.to_rmatrix()
}

pub fn write_rmatrix(r: &GeomRMatrix) -> String {
    serde_json::to_string_pretty(&RMatrixFile::from_rmatrix(r)).expect("serializes") + "\n"
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketFile {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

/// Nonzero brackets `[e_i, e_j]` with `i < j`, 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketFile>,
}

impl LieAlgebraFile {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let d = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let v = alg.bracket_basis(i, j);
                if v.iter().any(|c| !c.is_zero()) {
                    brackets.push(BracketFile { i: i + 1, j: j + 1, coeffs: v.iter().map(Coeff::to_string).collect() });
                }
            }
        }
        LieAlgebraFile { dim: d, labels: alg.labels().to_vec(), brackets }
    }

    pub fn to_algebra(&self, path: &str) -> Result<LieAlgebra> {
        let d = self.dim;
        let labels = if self.labels.is_empty() { (1..=d).map(|i| format!("e{}", i)).collect() } else { self.labels.clone() };
        if labels.len() != d {
            return Err(Error::Invalid(format!("{}: {} labels for dimension {}", path, labels.len(), d)));
        }
        let brackets = self
            .brackets
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let p = format!("{}.brackets[{}]", path, k);
                if b.i == 0 || b.j == 0 || b.i > d || b.j > d {
                    return Err(Error::Invalid(format!("{}: basis index out of range 1..{}", p, d)));
                }
                Ok((b.i - 1, b.j - 1, coeffs(&b.coeffs, d, &format!("{}.coeffs", p))?))
            })
            .collect::<Result<_>>()?;
        LieAlgebra::new(labels, brackets).map_err(|e| at(path, e))
    }
}

/// A 7-tuple. `rho_ga[k]` is the matrix of the k-th basis element of `g`
/// acting on `a`; `pi` is `dim a × dim g`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CbcstFile {
    pub dimension: usize,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub a: LieAlgebraFile,
    pub g: LieAlgebraFile,
    pub rho_ga: Vec<Vec<Vec<String>>>,
    pub rho_a: Vec<Vec<String>>,
    pub rho_g: Vec<Vec<String>>,
    pub pi: Vec<Vec<String>>,
    pub psi: Vec<String>,
}

impl CbcstFile {
    pub fn from_cbcst(c: &Cbcst) -> Self {
        let names = VarNames::flat(c.n());
        let uses_eps = *c != c.specialize_eps(&BigRational::from_integer(0.into()));
        CbcstFile {
            dimension: c.n(),
            parameters: parameters_of(uses_eps),
            a: LieAlgebraFile::from_algebra(c.a()),
            g: LieAlgebraFile::from_algebra(c.g()),
            rho_ga: c.rho_ga().matrices().iter().map(matrix_strings).collect(),
            rho_a: c.rho_a().iter().map(|v| v.to_strings(&names)).collect(),
            rho_g: c.rho_g().iter().map(|v| v.to_strings(&names)).collect(),
            pi: matrix_strings(c.pi()),
            psi: c.psi().iter().map(|p| p.to_string_with(&names)).collect(),
        }
    }

    pub fn to_cbcst(&self) -> Result<Cbcst> {
        check_parameters(&self.parameters)?;
        let n = self.dimension;
        if n == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        let names = VarNames::flat(n);
        let a = self.a.to_algebra("a")?;
        let g = self.g.to_algebra("g")?;
        let (da, dg) = (a.dim(), g.dim());
        if self.rho_ga.len() != dg {
            return Err(Error::Invalid(format!("rho_ga: expected {} matrices, got {}", dg, self.rho_ga.len())));
        }
        let mats = self
            .rho_ga
            .iter()
            .enumerate()
            .map(|(k, m)| matrix(m, da, da, &format!("rho_ga[{}]", k)))
            .collect::<Result<_>>()?;
        let rho_ga = LieAction::new(da, mats)?;
        let fields = |list: &[Vec<String>], name: &str| -> Result<Vec<VectorField>> {
            list.iter().enumerate().map(|(k, v)| field(v, &names, &format!("{}[{}]", name, k))).collect()
        };
        let rho_a = fields(&self.rho_a, "rho_a")?;
        let rho_g = fields(&self.rho_g, "rho_g")?;
        let pi = matrix(&self.pi, da, dg, "pi")?;
        let psi = self.psi.iter().enumerate().map(|(k, s)| poly(s, &names, &format!("psi[{}]", k))).collect::<Result<_>>()?;
        Cbcst::new(n, a, g, rho_ga, rho_a, rho_g, pi, psi)
    }
}

pub fn read_cbcst(text: &str) -> Result<Cbcst> {
    serde_json::from_str::<CbcstFile>(text)?.to_cbcst()
}

pub fn write_cbcst(c: &Cbcst) -> String {
    serde_json::to_string_pretty(&CbcstFile::from_cbcst(c)).expect("serializes") + "\n"
}

/// Coordinate images of `R` on `X²` as `(ℏ power, polynomial)` pairs, in
/// `x1..xn, y1..yn`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub dimension: usize,
    pub order: usize,
    pub images: Vec<Vec<(usize, String)>>,
}

impl SeriesFile {
    pub fn from_rmatrix(r: &RMatrixQ) -> Self {
        SeriesFile { dimension: r.n(), order: r.order(), images: r.to_pairs() }
    }

    pub fn to_rmatrix(&self) -> Result<RMatrixQ> {
        let n = self.dimension;
        if self.images.len() != 2 * n {
            return Err(Error::Invalid(format!("expected {} images, got {}", 2 * n, self.images.len())));
        }
        let names = VarNames::blocks(n, 2);
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, terms)| {
                let mut coeffs = vec![MPoly::zero(2 * n); self.order + 1];
                for (t, (k, s)) in terms.iter().enumerate() {
                    if *k > self.order {
                        return Err(Error::Invalid(format!("images[{}][{}]: power {} exceeds order", i, t, k)));
                    }
                    coeffs[*k] = &coeffs[*k] + &poly(s, &names, &format!("images[{}][{}]", i, t))?;
                }
                HSeries::from_coeffs(2 * n, self.order, coeffs)
            })
            .collect::<Result<_>>()?;
        RMatrixQ::new(n, FormalDiffeo::new(images)?)
    }
}

pub fn read_series(text: &str) -> Result<RMatrixQ> {
    serde_json::from_str::<SeriesFile>(text)?.to_rmatrix()
}

pub fn write_series(r: &RMatrixQ) -> String {
    serde_json::to_string_pretty(&SeriesFile::from_rmatrix(r)).expect("serializes") + "\n"
}

/// Closed forms of the two parts of `R` in `x1..xn, y1..yn`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormFile {
    pub star: Vec<String>,
    pub circ: Vec<String>,
}

impl ClosedFormFile {
    /// Expands the closed forms modulo `h^(order+1)`.
    pub fn expand(&self, n: usize, order: usize) -> Result<RMatrixQ> {
        if self.star.len() != n || self.circ.len() != n {
            return Err(Error::Invalid(format!("closed form needs {} star and {} circ entries", n, n)));
        }
        let names = VarNames::blocks(n, 2);
        let images = self
            .star
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("star[{}]", i), s))
            .chain(self.circ.iter().enumerate().map(|(i, s)| (format!("circ[{}]", i), s)))
            .map(|(p, s)| parse_series(s, &names, order).map_err(|e| at(&p, e)))
            .collect::<Result<_>>()?;
        RMatrixQ::new(n, FormalDiffeo::new(images)?)
    }
}

pub fn read_closed_form(text: &str) -> Result<ClosedFormFile> {
    Ok(serde_json::from_str(text)?)
}
