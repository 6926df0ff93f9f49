//! Z_(p)-submodules of Z_(p)^n.
//!
//! Every lattice is stored in a canonical column-echelon form: pivot rows
//! strictly increase, each pivot is an exact power of p, entries above a
//! pivot are zero, and every entry to the left of a pivot (same row, earlier
//! column) is an integer in [0, p^e). Equal spans give identical bases, so
//! `==` is span equality.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis, smith_p_local, PMatrix};
use crate::scalar::{PLocal, Prime, Val};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    n: usize,
    p: Prime,
    basis: Vec<Vec<PLocal>>,
    pivots: Vec<(usize, u32)>,
}

/// Invariant factors of a quotient: ⊕ Z/p^e ⊕ Z_(p)^free_rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuotientInvariants {
    pub torsion_exponents: Vec<u32>,
    pub free_rank: usize,
}

impl QuotientInvariants {
    pub fn is_trivial(&self) -> bool {
        self.torsion_exponents.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Minimal number of generators, i.e. the F_p-dimension of Q/pQ.
    pub fn dim_mod_p(&self) -> usize {
        self.torsion_exponents.len() + self.free_rank
    }

    /// Exponent of p in the order of the torsion part.
    pub fn torsion_order_exponent(&self) -> u32 {
        self.torsion_exponents.iter().sum()
    }

    pub fn is_cyclic_of_order(&self, e: u32) -> bool {
        self.free_rank == 0 && self.torsion_exponents == [e]
    }

    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.torsion_exponents.is_empty() && self.free_rank == r
    }
}

impl fmt::Display for QuotientInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion_exponents.iter().map(|e| format!("Z/p^{e}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z_p^{}", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn axpy(dst: &mut [PLocal], f: &PLocal, src: &[PLocal]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= &(f * s);
        }
    }
}

impl Lattice {
    pub fn from_generators(n: usize, p: Prime, vectors: &[Vec<PLocal>]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        Ok(Self::canonical(n, p, vectors.to_vec()))
    }

    /// Span of integer vectors; panics on length mismatch.
    pub fn from_i64(n: usize, p: Prime, vectors: &[&[i64]]) -> Self {
        let vs: Vec<Vec<PLocal>> = vectors.iter().map(|v| crate::scalar::vector(v)).collect();
        Self::from_generators(n, p, &vs).expect("vectors have the ambient length")
    }

    pub fn from_columns(m: &PMatrix) -> Self {
        Self::canonical(m.rows(), m.prime(), m.columns())
    }

    pub fn zero(n: usize, p: Prime) -> Self {
        Lattice { n, p, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient(n: usize, p: Prime) -> Self {
        let basis =
            (0..n).map(|i| (0..n).map(|j| if i == j { PLocal::one() } else { PLocal::zero() }).collect()).collect();
        Lattice { n, p, basis, pivots: (0..n).map(|i| (i, 0)).collect() }
    }

    fn canonical(n: usize, p: Prime, mut pending: Vec<Vec<PLocal>>) -> Self {
        pending.retain(|v| v.iter().any(|x| !x.is_zero()));
        let mut basis: Vec<Vec<PLocal>> = Vec::new();
        let mut pivots = Vec::new();
        for row in 0..n {
            if pending.is_empty() {
                break;
            }
            let mut best: Option<(u32, usize)> = None;
            for (idx, v) in pending.iter().enumerate() {
                if let Val::Fin(e) = v[row].valuation(p) {
                    if best.is_none_or(|(b, _)| e < b) {
                        best = Some((e, idx));
                    }
                }
            }
            let Some((e, idx)) = best else { continue };
            let mut c = pending.swap_remove(idx);
            let (_, unit) = c[row].split_unit(p).expect("pivot is nonzero");
            let inv = unit.inverse(p).expect("unit part is invertible");
            for x in c.iter_mut() {
                *x = &*x * &inv;
            }
            for v in pending.iter_mut() {
                if !v[row].is_zero() {
                    let f = v[row].checked_div(&c[row], p).expect("pivot has minimal valuation");
                    axpy(v, &f, &c);
                }
            }
            pending.retain(|v| v.iter().any(|x| !x.is_zero()));
            basis.push(c);
            pivots.push((row, e));
        }
        debug_assert!(pending.is_empty());

        // Reduce entries left of each pivot into [0, p^e).
        for (i, &(row, e)) in pivots.iter().enumerate() {
            let modulus = PLocal::from_bigint(p.pow(e));
            let (left, right) = basis.split_at_mut(i);
            let col_i = &right[0];
            for col_j in left.iter_mut() {
                let x = &col_j[row];
                if x.is_zero() {
                    continue;
                }
                let rep = x.reduce_mod_pk(p, e);
                if &rep == x {
                    continue;
                }
                let q = (x - &rep).checked_div(&modulus, p).expect("difference is divisible by p^e");
                axpy(col_j, &q, col_i);
            }
        }
        Lattice { n, p, basis, pivots }
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Number of canonical generators (the Z_(p)-rank).
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<PLocal>] {
        &self.basis
    }

    /// (row, exponent) of each pivot, in column order.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    /// Canonical generator matrix, one column per generator.
    pub fn matrix(&self) -> PMatrix {
        PMatrix::from_columns(self.p, self.n, &self.basis).expect("basis vectors have length n")
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.n && self.pivots.iter().all(|&(_, e)| e == 0)
    }

    /// Coefficients of v in the canonical basis, if v lies in the lattice.
    pub fn coordinates(&self, v: &[PLocal]) -> Option<Vec<PLocal>> {
        assert_eq!(v.len(), self.n, "vector length must match the ambient rank");
        let mut w = v.to_vec();
        let mut coeffs = vec![PLocal::zero(); self.basis.len()];
        let mut next = 0;
        for row in 0..self.n {
            if next < self.pivots.len() && self.pivots[next].0 == row {
                if !w[row].is_zero() {
                    let q = w[row].checked_div(&self.basis[next][row], self.p).ok()?;
                    axpy(&mut w, &q, &self.basis[next]);
                    coeffs[next] = q;
                }
                next += 1;
            } else if !w[row].is_zero() {
                return None;
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[PLocal]) -> bool {
        self.coordinates(v).is_some()
    }

    fn check_compatible(&self, other: &Lattice) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        if self.p != other.p {
            return Err(Error::PrimeMismatch);
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Lattice) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// Span equality by double inclusion.
    pub fn same_span(&self, other: &Lattice) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_compatible(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Ok(Self::canonical(self.n, self.p, gens))
    }

    /// Sum over a slice of lattices of ambient rank n.
    pub fn sum_all(n: usize, p: Prime, lattices: &[&Lattice]) -> Result<Lattice> {
        let mut gens = Vec::new();
        for l in lattices {
            if l.n != n {
                return Err(Error::DimensionMismatch { expected: n, got: l.n });
            }
            gens.extend(l.basis.iter().cloned());
        }
        Ok(Self::canonical(n, p, gens))
    }

    /// Intersection via the kernel of [G1 | -G2], projected through G1.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Lattice::zero(self.n, self.p));
        }
        let g1 = self.matrix();
        let g2 = other.matrix().scaled(&PLocal::from_int(-1));
        let block = g1.hconcat(&g2)?;
        let r1 = self.rank();
        let gens: Vec<Vec<PLocal>> = kernel_basis(&block)
            .into_iter()
            .map(|k| g1.mul_vec(&k[..r1]).expect("kernel vector has block width"))
            .collect();
        Ok(Self::canonical(self.n, self.p, gens))
    }

    /// Invariants of sup/sub; requires sub ⊆ sup.
    pub fn quotient_invariants(sup: &Lattice, sub: &Lattice) -> Result<QuotientInvariants> {
        sup.check_compatible(sub)?;
        let mut coords = Vec::with_capacity(sub.rank());
        for v in &sub.basis {
            coords.push(sup.coordinates(v).ok_or(Error::NotIncluded)?);
        }
        let r = sup.rank();
        if coords.is_empty() {
            return Ok(QuotientInvariants { torsion_exponents: Vec::new(), free_rank: r });
        }
        let c = PMatrix::from_columns(sup.p, r, &coords)?;
        let s = smith_p_local(&c);
        let mut torsion = Vec::new();
        let mut finite = 0;
        for e in s.exponents {
            if let Val::Fin(e) = e {
                finite += 1;
                if e > 0 {
                    torsion.push(e);
                }
            }
        }
        Ok(QuotientInvariants { torsion_exponents: torsion, free_rank: r - finite })
    }

    /// Invariants of Z_(p)^n / self.
    pub fn cokernel(&self) -> QuotientInvariants {
        Self::quotient_invariants(&Lattice::ambient(self.n, self.p), self).expect("every lattice lies in the ambient")
    }

    /// Smallest lattice containing self with torsion-free ambient quotient.
    pub fn saturate(&self) -> Lattice {
        if self.is_zero() {
            return self.clone();
        }
        let perp = kernel_basis(&self.matrix().transpose());
        if perp.is_empty() {
            return Lattice::ambient(self.n, self.p);
        }
        let w = PMatrix::from_rows(self.p, &perp).expect("kernel vectors share a length");
        Self::canonical(self.n, self.p, kernel_basis(&w))
    }

    /// Image under a square matrix acting on column vectors.
    pub fn image(&self, m: &PMatrix) -> Result<Lattice> {
        if m.cols() != self.n || m.rows() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: m.cols() });
        }
        let gens = self.basis.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self::canonical(self.n, self.p, gens))
    }

    /// self + span(vectors)
    pub fn extend(&self, vectors: &[Vec<PLocal>]) -> Result<Lattice> {
        let other = Lattice::from_generators(self.n, self.p, vectors)?;
        self.sum(&other)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let c: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}
