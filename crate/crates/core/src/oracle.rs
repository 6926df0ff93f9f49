//! Brute-force images of lattices in (Z/p^k)^n.
//!
//! Used to cross-check the lattice module. Enumeration is bounded by a budget
//! on p^{kn}, the size of the finite ambient group; the default can be
//! overridden through the `CMTRIV_ORACLE_BUDGET` environment variable.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::scalar::{PLocal, Prime};

pub const DEFAULT_BUDGET: u128 = 10_000_000;
pub const BUDGET_ENV: &str = "CMTRIV_ORACLE_BUDGET";

/// The configured budget: the environment override if it parses, else the default.
pub fn budget() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// A subgroup of (Z/p^k)^n, stored as a bitset over encoded vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpan {
    p: Prime,
    k: u32,
    n: usize,
    modulus: u64,
    bits: Vec<u64>,
    len: usize,
}

impl FiniteSpan {
    fn empty(p: Prime, k: u32, n: usize, budget: u128) -> Result<Self> {
        let modulus = (p.get() as u128).pow(k);
        let total = modulus.checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > budget {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        let words = (total as usize).div_ceil(64).max(1);
        Ok(FiniteSpan { p, k, n, modulus: modulus as u64, bits: vec![0; words], len: 0 })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.k
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn encode(&self, v: &[u64]) -> usize {
        v.iter().rev().fold(0u64, |acc, &d| acc * self.modulus + d) as usize
    }

    fn decode(&self, mut code: usize) -> Vec<u64> {
        let m = self.modulus as usize;
        (0..self.n)
            .map(|_| {
                let d = code % m;
                code /= m;
                d as u64
            })
            .collect()
    }

    fn test(&self, code: usize) -> bool {
        self.bits[code / 64] >> (code % 64) & 1 == 1
    }

    fn insert(&mut self, code: usize) -> bool {
        if self.test(code) {
            return false;
        }
        self.bits[code / 64] |= 1 << (code % 64);
        self.len += 1;
        true
    }

    /// Reduces a Z_(p) vector modulo p^k.
    pub fn reduce(&self, v: &[PLocal]) -> Vec<u64> {
        v.iter().map(|x| x.mod_pk(self.p, self.k).to_u64().expect("residue fits in u64")).collect()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.n && self.test(self.encode(v))
    }

    pub fn contains_vector(&self, v: &[PLocal]) -> bool {
        self.contains(&self.reduce(v))
    }

    /// Encoded members in increasing order.
    pub fn members(&self) -> Vec<Vec<u64>> {
        self.codes().map(|c| self.decode(c)).collect()
    }

    pub fn is_subset(&self, other: &FiniteSpan) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &FiniteSpan) -> FiniteSpan {
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        let len = bits.iter().map(|w| w.count_ones() as usize).sum();
        FiniteSpan { bits, len, ..self.clone() }
    }

    /// Image under reduction to a smaller depth j ≤ k.
    pub fn project(&self, j: u32) -> Result<FiniteSpan> {
        assert!(j <= self.k, "cannot project to a larger depth");
        let mut out = FiniteSpan::empty(self.p, j, self.n, u128::MAX)?;
        let (m, mj) = (self.modulus as usize, out.modulus as usize);
        for code in self.codes() {
            let (mut c, mut place, mut target) = (code, 1, 0);
            for _ in 0..self.n {
                target += (c % m % mj) * place;
                c /= m;
                place *= mj;
            }
            out.insert(target);
        }
        Ok(out)
    }

    fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// code(v + g) from code(v).
    fn add(&self, code: usize, g: &[u64]) -> usize {
        let m = self.modulus as usize;
        let (mut c, mut place, mut out) = (code, 1, 0);
        for &gi in g {
            out += ((c % m + gi as usize) % m) * place;
            c /= m;
            place *= m;
        }
        out
    }
}

/// Subgroup of (Z/p^k)^n generated by residue vectors.
///
/// Generators are adjoined one at a time: with S the span so far and t the
/// order of g modulo S, the new span is the disjoint union of S + i·g, i < t.
pub fn span_of_residues(p: Prime, k: u32, n: usize, gens: &[Vec<u64>], budget: u128) -> Result<FiniteSpan> {
    let mut s = FiniteSpan::empty(p, k, n, budget)?;
    let m = s.modulus;
    s.insert(0);
    let mut members = vec![0usize];
    for g in gens {
        assert_eq!(g.len(), n, "generator length");
        let g: Vec<u64> = g.iter().map(|d| d % m).collect();
        let mut layer = members.clone();
        loop {
            for c in layer.iter_mut() {
                *c = s.add(*c, &g);
            }
            if s.test(layer[0]) {
                break;
            }
            for &c in &layer {
                s.insert(c);
            }
            members.extend_from_slice(&layer);
        }
    }
    Ok(s)
}

/// Subgroup generated by the images of arbitrary Z_(p) vectors.
pub fn span_of_vectors(p: Prime, k: u32, n: usize, gens: &[Vec<PLocal>], budget: u128) -> Result<FiniteSpan> {
    let probe = FiniteSpan::empty(p, k, n, budget)?;
    let residues: Vec<Vec<u64>> = gens.iter().map(|g| probe.reduce(g)).collect();
    span_of_residues(p, k, n, &residues, budget)
}

/// Image of L in (Z/p^k)^n.
pub fn enumerate_span(l: &Lattice, k: u32) -> Result<FiniteSpan> {
    span_of_vectors(l.prime(), k, l.ambient_rank(), l.basis(), budget())
}

/// |img_k(L)| predicted from the Smith exponents of L: ∏ p^{max(k − e_i, 0)}.
pub fn predicted_image_size(l: &Lattice, k: u32) -> u128 {
    let q = l.cokernel();
    let mut exps: Vec<u32> = q.torsion_exponents.clone();
    exps.resize(l.rank(), 0);
    let p = l.prime().get() as u128;
    exps.iter().map(|&e| p.pow(k.saturating_sub(e))).product()
}

/// |img_k(sup)| / |img_k(sub)|, with depth checks.
///
/// For a finite quotient the depth must exceed the quotient exponent plus the
/// largest exponent of ambient/sup, and the ratio must agree at k−1 and k.
/// For an infinite quotient the depth-k ratio is returned as is.
pub fn oracle_quotient_order(sup: &Lattice, sub: &Lattice, k: u32) -> Result<u128> {
    let q = Lattice::quotient_invariants(sup, sub)?;
    let ratio = |j: u32| -> Result<u128> {
        let a = enumerate_span(sup, j)?.len() as u128;
        let b = enumerate_span(sub, j)?.len() as u128;
        Ok(a / b)
    };
    if !q.is_finite() {
        return ratio(k);
    }
    let t = q.torsion_exponents.iter().copied().max().unwrap_or(0);
    let f = sup.cokernel().torsion_exponents.iter().copied().max().unwrap_or(0);
    if k <= t + f {
        return Err(Error::DepthInsufficient(format!(
            "depth {k} does not exceed quotient exponent {t} plus superlattice exponent {f}"
        )));
    }
    let now = ratio(k)?;
    let before = ratio(k - 1)?;
    if now != before {
        return Err(Error::DepthInsufficient(format!("order changed from {before} to {now}")));
    }
    Ok(now)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOp {
    Intersect,
    Sum,
    ContainsSample,
}

/// Compares a lattice-module result with the finite computation at depth k.
///
/// Intersections of images can be larger than the image of the intersection;
/// they agree after projecting to depth k − e, where p^e kills the torsion of
/// ambient/(L1 + L2). Depth k must leave at least one level.
pub fn oracle_agree(l1: &Lattice, l2: &Lattice, k: u32, op: OracleOp) -> Result<bool> {
    match op {
        OracleOp::Sum => {
            let mut gens = l1.basis().to_vec();
            gens.extend(l2.basis().iter().cloned());
            let finite = span_of_vectors(l1.prime(), k, l1.ambient_rank(), &gens, budget())?;
            Ok(finite == enumerate_span(&l1.sum(l2)?, k)?)
        }
        OracleOp::Intersect => {
            let cap = l1.intersect(l2)?;
            let s1 = enumerate_span(l1, k)?;
            let s2 = enumerate_span(l2, k)?;
            let both = s1.intersection(&s2);
            let image = enumerate_span(&cap, k)?;
            if !image.is_subset(&both) {
                return Ok(false);
            }
            let e = l1.sum(l2)?.cokernel().torsion_exponents.iter().copied().max().unwrap_or(0);
            if e >= k {
                return Err(Error::DepthInsufficient(format!(
                    "torsion exponent {e} of ambient/(L1+L2) leaves no level at depth {k}"
                )));
            }
            let j = k - e;
            Ok(both.project(j)? == enumerate_span(&cap, j)?)
        }
        OracleOp::ContainsSample => {
            let s1 = enumerate_span(l1, k)?;
            let q = l1.cokernel();
            let exact = q.is_finite() && q.torsion_exponents.iter().all(|&e| e < k);
            for v in membership_sample(l1, l2) {
                let inside = l1.contains(&v);
                let member = s1.contains_vector(&v);
                if inside && !member {
                    return Ok(false);
                }
                if exact && member && !inside {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn membership_sample(l1: &Lattice, l2: &Lattice) -> Vec<Vec<PLocal>> {
    let n = l1.ambient_rank();
    let mut out: Vec<Vec<PLocal>> = Vec::new();
    // every vector with entries in {-1, 0, 1}
    let count = 3usize.pow(n as u32);
    for mut code in 0..count {
        let v = (0..n)
            .map(|_| {
                let d = (code % 3) as i64 - 1;
                code /= 3;
                PLocal::from_int(d)
            })
            .collect();
        out.push(v);
    }
    let gens: Vec<&Vec<PLocal>> = l1.basis().iter().chain(l2.basis()).collect();
    for (i, g) in gens.iter().enumerate() {
        out.push((*g).clone());
        for h in &gens[i + 1..] {
            out.push(g.iter().zip(h.iter()).map(|(x, y)| x + y).collect());
            out.push(g.iter().zip(h.iter()).map(|(x, y)| x - y).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, ModelParams};

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let p = pr(3);
        let l = Lattice::from_i64(2, p, &[&[1, 2]]);
        assert_eq!(enumerate_span(&l, 2).unwrap().len(), 9);
        assert_eq!(enumerate_span(&Lattice::zero(2, p), 2).unwrap().len(), 1);
        assert_eq!(enumerate_span(&Lattice::ambient(2, p), 1).unwrap().len(), 9);
    }

    #[test]
    fn quotient_order_examples() {
        let p = pr(3);
        let l = Lattice::from_i64(2, p, &[&[1, 2]]);
        assert_eq!(oracle_quotient_order(&Lattice::ambient(2, p), &l, 2).unwrap(), 9);
        assert_eq!(oracle_quotient_order(&l, &l, 2).unwrap(), 1);
        let m = build_model(ModelParams::deg4ng(3, 1, 2).unwrap(), true).unwrap();
        let pn = crate::constructions::named_construction_str(&m, "P_n", &Default::default()).unwrap();
        assert_eq!(oracle_quotient_order(&m.ambient(), &pn, 2).unwrap(), 3);
    }

    #[test]
    fn shallow_depth_is_reported() {
        let p = pr(3);
        let sup = Lattice::from_i64(1, p, &[&[27]]);
        let sub = Lattice::from_i64(1, p, &[&[81]]);
        assert!(matches!(oracle_quotient_order(&sup, &sub, 2), Err(Error::DepthInsufficient(_))));
        assert_eq!(oracle_quotient_order(&sup, &sub, 5).unwrap(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let p = pr(5);
        let l = Lattice::ambient(4, p);
        assert!(matches!(enumerate_span(&l, 3), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn agree_examples() {
        let p = pr(3);
        let l = Lattice::from_i64(3, p, &[&[1, 3, 0], &[0, 9, 2]]);
        for op in [OracleOp::Sum, OracleOp::Intersect, OracleOp::ContainsSample] {
            assert!(oracle_agree(&l, &l, 3, op).unwrap(), "{op:?}");
        }
        let e1 = Lattice::from_i64(2, p, &[&[1, 0]]);
        let e2 = Lattice::from_i64(2, p, &[&[0, 1]]);
        assert!(oracle_agree(&e1, &e2, 2, OracleOp::Intersect).unwrap());
    }

    #[test]
    fn image_size_formula() {
        let p = pr(3);
        for gens in [&[&[1i64, 2, 0][..], &[0, 3, 0]][..], &[&[9, 0, 0], &[0, 27, 3]], &[&[0, 0, 0]]] {
            let l = Lattice::from_i64(3, p, gens);
            for k in 1..=3 {
                assert_eq!(enumerate_span(&l, k).unwrap().len() as u128, predicted_image_size(&l, k));
            }
        }
    }

    #[test]
    fn projection() {
        let p = pr(3);
        let s = enumerate_span(&Lattice::from_i64(2, p, &[&[1, 4]]), 2).unwrap();
        let t = s.project(1).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.contains(&[1, 1]));
    }
}
