//! Dense matrices over Z_(p) and the local Smith normal form.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{PLocal, Prime, Val};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PMatrix {
    rows: usize,
    cols: usize,
    data: Vec<PLocal>,
    p: Prime,
}

impl PMatrix {
    pub fn zeros(rows: usize, cols: usize, p: Prime) -> Self {
        PMatrix { rows, cols, data: vec![PLocal::zero(); rows * cols], p }
    }

    pub fn identity(n: usize, p: Prime) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = PLocal::one();
        }
        m
    }

    pub fn from_rows(p: Prime, rows: &[Vec<PLocal>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(PMatrix { rows: rows.len(), cols, data, p })
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_i64(p: Prime, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<PLocal>> = rows.iter().map(|r| crate::scalar::vector(r)).collect();
        Self::from_rows(p, &rows).expect("rectangular integer matrix")
    }

    /// Builds a matrix whose columns are the given vectors, each of length `n`.
    pub fn from_columns(p: Prime, n: usize, cols: &[Vec<PLocal>]) -> Result<Self> {
        let mut m = Self::zeros(n, cols.len(), p);
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PLocal {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PLocal) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[PLocal] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<PLocal> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<PLocal>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<PLocal>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> PMatrix {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PMatrix) -> Result<PMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        if self.p != other.p {
            return Err(Error::PrimeMismatch);
        }
        let mut out = Self::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[PLocal]) -> Result<Vec<PLocal>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = PLocal::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<PMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows, self.p);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Horizontal concatenation [self | other].
    pub fn hconcat(&self, other: &PMatrix) -> Result<PMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, s: &PLocal) -> PMatrix {
        PMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect(), p: self.p }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> PMatrix {
        let mut out = Self::zeros(self.rows, idx.len(), self.p);
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, s: &PLocal) {
        for j in 0..self.cols {
            let v = self.get(r, j) * s;
            self.set(r, j, v);
        }
    }

    /// row[dst] -= f * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: &PLocal) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j) - &(f * s);
                self.set(dst, j, v);
            }
        }
    }

    /// col[dst] -= f * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, f: &PLocal) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst) - &(f * s);
                self.set(i, dst, v);
            }
        }
    }
}

impl fmt::Display for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Output of [`smith_p_local`]: `left * m * right` is diagonal with entry i
/// equal to p^exponents[i] (zero for `Val::Inf`).
#[derive(Debug, Clone)]
pub struct SmithData {
    pub left: PMatrix,
    pub right: PMatrix,
    pub exponents: Vec<Val>,
}

impl SmithData {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.exponents.iter().filter(|e| !e.is_inf()).count()
    }
}

/// Smith normal form over Z_(p).
///
/// Pivots on an entry of minimal valuation in the remaining block, ties
/// broken row-major, and normalizes the pivot to an exact power of p.
pub fn smith_p_local(m: &PMatrix) -> SmithData {
    let p = m.p;
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = PMatrix::identity(r, p);
    let mut v = PMatrix::identity(c, p);
    let steps = r.min(c);
    let mut exponents = Vec::with_capacity(steps);

    for t in 0..steps {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if let Val::Fin(e) = a.get(i, j).valuation(p) {
                    if best.is_none_or(|(b, _, _)| e < b) {
                        best = Some((e, i, j));
                    }
                }
            }
        }
        let Some((e, bi, bj)) = best else {
            exponents.extend(std::iter::repeat_n(Val::Inf, steps - t));
            break;
        };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);

        let (_, unit) = a.get(t, t).split_unit(p).expect("pivot is nonzero");
        let inv = unit.inverse(p).expect("unit part is invertible");
        a.scale_row(t, &inv);
        u.scale_row(t, &inv);

        let pivot = a.get(t, t).clone();
        for i in t + 1..r {
            if !a.get(i, t).is_zero() {
                let f = a.get(i, t).checked_div(&pivot, p).expect("pivot has minimal valuation");
                a.row_axpy(i, t, &f);
                u.row_axpy(i, t, &f);
            }
        }
        for j in t + 1..c {
            if !a.get(t, j).is_zero() {
                let f = a.get(t, j).checked_div(&pivot, p).expect("pivot has minimal valuation");
                a.col_axpy(j, t, &f);
                v.col_axpy(j, t, &f);
            }
        }
        exponents.push(Val::Fin(e));
    }

    SmithData { left: u, right: v, exponents }
}

/// Rank of the reduction modulo p.
pub fn rank_mod_p(m: &PMatrix) -> usize {
    smith_p_local(m).exponents.iter().filter(|e| **e == Val::Fin(0)).count()
}

/// Exact determinant by elimination with minimal-valuation column pivots.
pub fn determinant(m: &PMatrix) -> Result<PLocal> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    let p = m.p;
    let n = m.rows;
    let mut a = m.clone();
    let mut det = PLocal::one();
    for k in 0..n {
        let mut best: Option<(u32, usize)> = None;
        for i in k..n {
            if let Val::Fin(e) = a.get(i, k).valuation(p) {
                if best.is_none_or(|(b, _)| e < b) {
                    best = Some((e, i));
                }
            }
        }
        let Some((_, bi)) = best else {
            return Ok(PLocal::zero());
        };
        if bi != k {
            a.swap_rows(k, bi);
            det = -det;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            if !a.get(i, k).is_zero() {
                let f = a.get(i, k).checked_div(&pivot, p)?;
                a.row_axpy(i, k, &f);
            }
        }
        det = det * &pivot;
    }
    Ok(det)
}

/// Basis of the saturated kernel {x : m x = 0}.
pub fn kernel_basis(m: &PMatrix) -> Vec<Vec<PLocal>> {
    let s = smith_p_local(m);
    let rank = s.rank();
    (rank..m.cols).map(|j| s.right.col(j)).collect()
}

/// Some x over Z_(p) with m x = b, if one exists.
pub fn solve(m: &PMatrix, b: &[PLocal]) -> Result<Option<Vec<PLocal>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, got: b.len() });
    }
    let p = m.p;
    let s = smith_p_local(m);
    let ub = s.left.mul_vec(b)?;
    let mut y = vec![PLocal::zero(); m.cols];
    for (i, t) in ub.iter().enumerate() {
        match s.exponents.get(i) {
            Some(Val::Fin(e)) => match t.checked_div(&PLocal::from_bigint(p.pow(*e)), p) {
                Ok(q) => y[i] = q,
                Err(_) => return Ok(None),
            },
            _ => {
                if !t.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(s.right.mul_vec(&y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::vector;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn check_smith(m: &PMatrix) {
        let s = smith_p_local(m);
        let d = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert!(d.is_diagonal(), "not diagonal:\n{d}");
        for (i, e) in s.exponents.iter().enumerate() {
            assert_eq!(d.get(i, i).valuation(m.prime()), *e);
            if let Val::Fin(e) = e {
                assert_eq!(*d.get(i, i), PLocal::from_bigint(m.prime().pow(*e)));
            }
        }
        assert!(determinant(&s.left).unwrap().is_unit(m.prime()));
        assert!(determinant(&s.right).unwrap().is_unit(m.prime()));
    }

    #[test]
    fn smith_examples() {
        let p = pr(5);
        let m = PMatrix::from_i64(p, &[&[1, 0, 0], &[0, 2, 1], &[0, -1, 2]]);
        assert_eq!(smith_p_local(&m).exponents, vec![Val::Fin(0), Val::Fin(0), Val::Fin(1)]);
        check_smith(&m);
        let id = PMatrix::identity(3, p);
        assert_eq!(smith_p_local(&id).exponents, vec![Val::Fin(0); 3]);
        let z = PMatrix::zeros(2, 2, p);
        assert_eq!(smith_p_local(&z).exponents, vec![Val::Inf, Val::Inf]);
    }

    #[test]
    fn smith_rectangular() {
        let p = pr(3);
        let m = PMatrix::from_i64(p, &[&[3, 9, 0], &[6, 0, 27]]);
        let s = smith_p_local(&m);
        assert_eq!(s.exponents, vec![Val::Fin(1), Val::Fin(2)]);
        check_smith(&m);
        check_smith(&m.transpose());
    }

    #[test]
    fn rank_mod_p_examples() {
        let p = pr(3);
        let k12 = PMatrix::from_i64(p, &[&[1, 0, 0], &[0, 1, 1], &[-1, 0, 3], &[0, -1, 2]]);
        assert_eq!(rank_mod_p(&k12), 2);
        let k11 = PMatrix::from_i64(p, &[&[1, 0, 0], &[0, 1, 1], &[-1, 0, 2], &[0, -1, 1]]);
        assert_eq!(rank_mod_p(&k11), 3);
        assert_eq!(rank_mod_p(&PMatrix::identity(3, p)), 3);
    }

    #[test]
    fn determinant_examples() {
        let p = pr(5);
        let m = PMatrix::from_i64(p, &[&[1, 1], &[-2, 2]]);
        assert_eq!(determinant(&m).unwrap(), PLocal::from_int(4));
        assert_eq!(determinant(&PMatrix::identity(4, p)).unwrap(), PLocal::one());
        let d = determinant(&PMatrix::from_i64(p, &[&[5]])).unwrap();
        assert_eq!(d, PLocal::from_int(5));
        assert_eq!(d.valuation(p), Val::Fin(1));
        assert!(matches!(determinant(&PMatrix::zeros(2, 3, p)), Err(Error::NonSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn determinant_needs_row_swaps_and_rational_entries() {
        let p = pr(7);
        let m = PMatrix::from_i64(p, &[&[0, 7, 1], &[2, 0, 3], &[7, 1, 0]]);
        // 0*(0-3) - 7*(0-21) + 1*(2-0) = 149
        assert_eq!(determinant(&m).unwrap(), PLocal::from_int(149));
    }

    #[test]
    fn kernel_examples() {
        let p = pr(5);
        assert!(kernel_basis(&PMatrix::identity(3, p)).is_empty());
        let k = kernel_basis(&PMatrix::from_i64(p, &[&[1, -1]]));
        assert_eq!(k.len(), 1);
        // The basis vector is a unit multiple of (1,1).
        assert_eq!(k[0][0], k[0][1]);
        assert!(k[0][0].is_unit(p));
    }

    #[test]
    fn kernel_is_saturated() {
        let p = pr(3);
        // x + 3y = 0 has kernel spanned by (-3, 1), not a multiple of it.
        let k = kernel_basis(&PMatrix::from_i64(p, &[&[1, 3]]));
        assert_eq!(k.len(), 1);
        assert!(k[0].iter().any(|x| x.is_unit(p)));
    }

    #[test]
    fn solve_respects_integrality() {
        let p = pr(5);
        let m = PMatrix::from_i64(p, &[&[5, 0], &[0, 1]]);
        assert!(solve(&m, &vector(&[1, 0])).unwrap().is_none());
        let x = solve(&m, &vector(&[10, 3])).unwrap().unwrap();
        assert_eq!(x, vector(&[2, 3]));
        let z = PMatrix::from_i64(p, &[&[1, 1], &[1, 1]]);
        assert!(solve(&z, &vector(&[1, 2])).unwrap().is_none());
    }
}
