//! Dense linear algebra over ℚ[eps].
//!
//! Elimination pivots only on units (nonzero rationals). When that succeeds the
//! result is the reduced row echelon form over the fraction field, so ranks and
//! echelon bases are canonical; otherwise [`Error::NonUnitPivot`] is returned.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Coeff::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Coeff::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coeff>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Coeff::from_int(v)).collect()).collect())
            .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coeff) {
        self.data[i * self.cols + j] = c;
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Coeff::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Result<Vec<Coeff>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("{} columns, vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Coeff::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Coeff) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn specialize_eps(&self, value: &num_rational::BigRational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.specialize(value)).collect() }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let unit = (r..m.rows).find(|&i| m.get(i, c).is_unit());
            let Some(p) = unit else {
                if (r..m.rows).any(|i| !m.get(i, c).is_zero()) {
                    return Err(Error::NonUnitPivot(format!("column {}", c)));
                }
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().expect("unit");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let b = m.get(r, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) - &(&f * b);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Coeff::one());
        }
        let (red, pivots) = aug.rref().map_err(|e| Error::NotInvertible(e.to_string()))?;
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::NotInvertible("singular matrix".into()));
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        // Unit pivots alone do not rule out an inverse with entries outside ℚ[eps].
        if inv.checked_mul(self)? != Matrix::identity(n) {
            return Err(Error::NotInvertible("inverse is not polynomial in eps".into()));
        }
        Ok(inv)
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Result<Vec<Vec<Coeff>>> {
        let (red, pivots) = self.rref()?;
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Coeff::zero(); self.cols];
            v[free] = Coeff::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -red.get(row, free);
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Some `x` with `M x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Coeff]) -> Result<Option<Vec<Coeff>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("{} rows, rhs of length {}", self.rows, b.len())));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (red, pivots) = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Coeff::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Canonical echelon basis of the span of sparse vectors with ordered keys.
///
/// Columns are processed in ascending key order, so the key type's ordering
/// decides which entries become pivots.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    keys: Vec<K>,
    rows: Vec<BTreeMap<K, Coeff>>,
    pivots: Vec<K>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(vectors: &[BTreeMap<K, Coeff>]) -> Result<Self> {
        let mut keys: Vec<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = Matrix::zeros(vectors.len(), keys.len());
        for (i, v) in vectors.iter().enumerate() {
            for (k, c) in v {
                m.set(i, index[k], c.clone());
            }
        }
        let (red, pivots) = m.rref()?;
        let rows = (0..pivots.len())
            .map(|i| {
                red.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (keys[j].clone(), c.clone()))
                    .collect()
            })
            .collect();
        let pivots = pivots.iter().map(|&j| keys[j].clone()).collect();
        Ok(Echelon { keys, rows, pivots })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BTreeMap<K, Coeff>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[K] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &BTreeMap<K, Coeff>) -> Option<Vec<Coeff>> {
        let coords: Vec<Coeff> = self.pivots.iter().map(|p| v.get(p).cloned().unwrap_or_default()).collect();
        let mut rest = v.clone();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (k, a) in row {
                let e = rest.entry(k.clone()).or_default();
                *e -= &(c * a);
                if e.is_zero() {
                    rest.remove(k);
                }
            }
        }
        if rest.values().all(Coeff::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &BTreeMap<K, Coeff>) -> bool {
        self.coordinates(v).is_some()
    }

    #[allow(dead_code)]
    pub(crate) fn keys(&self) -> &[K] {
        &self.keys
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.checked_mul(&inv).unwrap(), Matrix::identity(2));
        let x = m.solve(&[Coeff::from_int(3), Coeff::from_int(2)]).unwrap().unwrap();
        assert_eq!(x, vec![Coeff::one(), Coeff::one()]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank().unwrap(), 1);
        let ker = m.kernel().unwrap();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).unwrap().iter().all(Coeff::is_zero));
        }
    }

    #[test]
    fn eps_entries() {
        // [[1, eps], [0, 1]] is invertible over ℚ[eps]; [[eps]] is not.
        let mut m = Matrix::identity(2);
        m.set(0, 1, Coeff::eps());
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 1), &-Coeff::eps());
        let e = Matrix::from_rows(vec![vec![Coeff::eps()]]).unwrap();
        assert!(e.inverse().is_err());
        assert!(matches!(e.rank(), Err(Error::NonUnitPivot(_))));
    }

    #[test]
    fn singular_is_rejected() {
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn echelon_coordinates() {
        let v = |a: i64, b: i64, c: i64| -> BTreeMap<u8, Coeff> {
            [(0u8, a), (1, b), (2, c)]
                .into_iter()
                .filter(|(_, x)| *x != 0)
                .map(|(k, x)| (k, Coeff::from_int(x)))
                .collect()
        };
        let e = Echelon::new(&[v(1, 1, 0), v(0, 1, 1), v(1, 2, 1)]).unwrap();
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(2, 3, 1)));
        assert!(!e.contains(&v(0, 0, 1)));
    }
}
