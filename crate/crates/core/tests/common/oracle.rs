//! Matrix exponentials in the faithful adjoint representation of the example
//! semidirect product, and the truncated BCH formula for vector fields.

use geomquant::geom::{HVectorField, VectorField};
use geomquant::lie::GroupLog;
use geomquant::poly::{Coeff, HSeries, MPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const N: usize = 6;

pub type SMat = Vec<Vec<HSeries>>;

pub fn zero() -> HSeries {
    HSeries::zero(1, N)
}

pub fn identity() -> SMat {
    (0..6).map(|i| (0..6).map(|j| if i == j { HSeries::one(1, N) } else { zero() }).collect()).collect()
}

pub fn add(a: &SMat, b: &SMat) -> SMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &SMat, c: &Coeff) -> SMat {
    a.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect()
}

pub fn mul(a: &SMat, b: &SMat) -> SMat {
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let mut s = zero();
                    for k in 0..6 {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s = &s + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn exp(m: &SMat) -> SMat {
    let mut out = identity();
    let mut term = identity();
    for k in 1..=N {
        term = scale(&mul(&term, m), &Coeff::from_ratio(1, k as i64));
        out = add(&out, &term);
    }
    out
}

pub fn log(m: &SMat) -> SMat {
    let x = add(m, &scale(&identity(), &Coeff::from_int(-1)));
    let mut out = scale(&identity(), &Coeff::zero());
    let mut pow = identity();
    for k in 1..=N {
        pow = mul(&pow, &x);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = add(&out, &scale(&pow, &Coeff::from_ratio(sign, k as i64)));
    }
    out
}

/// The displayed adjoint matrix of `(aX + bY + cC, (p q; 0 r))`, entrywise in
/// the components of a log.
pub fn adj(v: &GroupLog) -> SMat {
    let c = |k: usize| v.component(k).clone();
    let (a, b, cc, p, q, r) = (c(0), c(1), c(2), c(3), c(4), c(5));
    let z = zero();
    vec![
        vec![p.clone(), q.clone(), z.clone(), -&a, -&b, z.clone()],
        vec![z.clone(), r.clone(), z.clone(), z.clone(), z.clone(), -&b],
        vec![-&b, a, &p + &r, -&cc, z.clone(), -&cc],
        vec![z.clone(); 6],
        vec![z.clone(), z.clone(), z.clone(), -&q, &p - &r, q],
        vec![z; 6],
    ]
}

pub fn random_log(rng: &mut ChaCha8Rng, dim: usize) -> GroupLog {
    let comps = (0..dim)
        .map(|_| {
            let mut s = zero();
            for k in 1..=N {
                if rng.gen_bool(0.6) {
                    let c = Coeff::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
                    s.set_coeff(k, MPoly::constant(1, c));
                }
            }
            s
        })
        .collect();
    GroupLog::new(comps).unwrap()
}

pub fn hscale(v: &HVectorField, c: &Coeff) -> HVectorField {
    HVectorField::new(v.components().iter().map(|s| s.scale(c)).collect()).unwrap()
}

/// `v + w + [v,w]/2 + [v,[v,w]]/12 − [w,[v,w]]/12 − [w,[v,[v,w]]]/24`, exact
/// for fields divisible by ℏ up to ℏ⁴.
pub fn bch_fields(v: &HVectorField, w: &HVectorField) -> HVectorField {
    let vw = v.bracket(w).unwrap();
    let vvw = v.bracket(&vw).unwrap();
    let wvw = w.bracket(&vw).unwrap();
    let wvvw = w.bracket(&vvw).unwrap();
    [
        w.clone(),
        hscale(&vw, &Coeff::from_ratio(1, 2)),
        hscale(&vvw, &Coeff::from_ratio(1, 12)),
        hscale(&wvw, &Coeff::from_ratio(-1, 12)),
        hscale(&wvvw, &Coeff::from_ratio(-1, 24)),
    ]
    .iter()
    .fold(v.clone(), |acc, t| acc.checked_add(t).unwrap())
}

/// A random polynomial field on the plane.
pub fn random_field(rng: &mut ChaCha8Rng) -> VectorField {
    let comp = |rng: &mut ChaCha8Rng| {
        let terms: Vec<(Vec<u16>, Coeff)> =
            (0..3).map(|_| (vec![rng.gen_range(0..3), rng.gen_range(0..2)], Coeff::from_int(rng.gen_range(-2..=2)))).collect();
        MPoly::from_terms(2, terms)
    };
    VectorField::new(vec![comp(rng), comp(rng)]).unwrap()
}
