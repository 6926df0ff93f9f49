//! Commutators as wedges of exponent vectors, and the knot matrix.
//!
//! The image of [u, v] in the abelianized commutator quotient is u ∧ v,
//! with coordinate (i, j), i < j, equal to u_i v_j - u_j v_i. Coordinates
//! are stored in lexicographic pair order.

use crate::lattice::{Lattice, QuotientInvariants};
use crate::matrix::{rank_mod_p, PMatrix};
use crate::models::{GaloisModel, Variant};
use crate::scalar::PLocal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeVector {
    pub n: usize,
    pub coords: Vec<PLocal>,
}

pub fn wedge_dim(n: usize) -> usize {
    n * (n.saturating_sub(1)) / 2
}

/// Position of the pair (i, j), i < j, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < n, "pair ({i},{j}) out of range for n = {n}");
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn wedge(u: &[PLocal], v: &[PLocal]) -> WedgeVector {
    assert_eq!(u.len(), v.len(), "wedge factors must have equal length");
    let n = u.len();
    let mut coords = Vec::with_capacity(wedge_dim(n));
    for i in 0..n {
        for j in i + 1..n {
            coords.push(&u[i] * &v[j] - &u[j] * &v[i]);
        }
    }
    WedgeVector { n, coords }
}

/// Column map from the lexicographic basis to the displayed one: (source, sign).
///
/// Degree 6 displays [γ,x],[γ,y],[γ,z],[x,y],[y,z],[z,x]; the last is -(x∧z).
fn display_columns(variant: Variant) -> Vec<(usize, bool)> {
    match variant {
        Variant::Deg6 => vec![(0, false), (1, false), (2, false), (3, false), (5, false), (4, true)],
        _ => vec![(0, false), (1, false), (2, false)],
    }
}

/// One row per prime: inertia generator ∧ second decomposition generator.
pub fn knot_matrix(model: &GaloisModel) -> PMatrix {
    let cols = display_columns(model.variant());
    let p = model.prime();
    let mut m = PMatrix::zeros(model.primes().len(), cols.len(), p);
    for (r, d) in model.primes().iter().enumerate() {
        let w = wedge(&d.inertia_gen, &d.second_gen);
        for (c, &(src, neg)) in cols.iter().enumerate() {
            let x = &w.coords[src];
            m.set(r, c, if neg { -x } else { x.clone() });
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotInvariants {
    pub trivial: bool,
    pub cokernel: QuotientInvariants,
}

/// Triviality by rank mod p, and the cokernel of the row span.
pub fn knot_invariants(model: &GaloisModel) -> KnotInvariants {
    let k = knot_matrix(model);
    let dim = k.cols();
    let rows = Lattice::from_generators(dim, model.prime(), &k.row_vecs()).expect("rows have the wedge dimension");
    KnotInvariants { trivial: rank_mod_p(&k) == dim, cokernel: rows.cokernel() }
}
