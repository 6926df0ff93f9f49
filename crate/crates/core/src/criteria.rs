//! Decision procedures: class-group structure, knot triviality, condition
//! (iii), the degree-6 case split, and splitting/ramification predicates.
//!
//! Splitting predicates follow the Galois correspondence for abelian groups.
//! For lattices H_top ⊆ H_bottom (fields F_top ⊇ F_bottom), the decomposition
//! group of a prime in Gal(F_top/F_bottom) is ((D + H_top) ∩ H_bottom)/H_top,
//! and likewise for inertia. "Non-split" means the decomposition group is all
//! of Gal(F_top/F_bottom).

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;

use crate::constructions::d_cap;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, QuotientInvariants};
use crate::matrix::{determinant, smith_p_local, solve, PMatrix};
use crate::models::{GaloisModel, ModelParams, PrimeLabel, Variant};
use crate::scalar::{int_valuation, PLocal, Prime, Val};
use crate::wedge::knot_invariants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Trivial,
    Cyclic,
    TwoGenerated,
    /// dim ≥ 3; only reachable for residue tuples no actual field realizes.
    ThreeOrMore,
}

impl ClassTag {
    pub fn from_dim(dim: usize) -> Self {
        match dim {
            0 => ClassTag::Trivial,
            1 => ClassTag::Cyclic,
            2 => ClassTag::TwoGenerated,
            _ => ClassTag::ThreeOrMore,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Trivial => "Trivial",
            ClassTag::Cyclic => "Cyclic",
            ClassTag::TwoGenerated => "TwoGenerated",
            ClassTag::ThreeOrMore => "ThreeOrMore",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupStructure {
    pub tag: ClassTag,
    pub invariants: QuotientInvariants,
    pub dim_mod_p: usize,
}

/// Presentation matrix of A(k): its row span is the sum of the inertia
/// lattices, written with I_𝔭 = γ as the first row.
pub fn a_matrix(model: &GaloisModel) -> PMatrix {
    let q = model.params();
    let (a, b, c) = (q.a, q.b, q.c);
    let p = model.prime();
    match q.variant {
        Variant::Deg4NonGalois => PMatrix::from_i64(p, &[&[1, 0, 0], &[0, a, b], &[0, -b, a]]),
        Variant::Deg4Biquadratic => PMatrix::from_i64(p, &[&[1, 0, 0], &[0, a, -a], &[0, b, b]]),
        Variant::Deg6 => PMatrix::from_i64(p, &[&[1, 0, 0, 0], &[0, a, b, c], &[0, -c, a, b], &[0, -b, -c, a]]),
    }
}

fn invariants_from_smith(m: &PMatrix) -> QuotientInvariants {
    let s = smith_p_local(m);
    let mut torsion = Vec::new();
    let mut finite = 0;
    for e in &s.exponents {
        if let Val::Fin(e) = e {
            finite += 1;
            if *e > 0 {
                torsion.push(*e);
            }
        }
    }
    QuotientInvariants { torsion_exponents: torsion, free_rank: m.cols() - finite }
}

pub fn class_group_structure(model: &GaloisModel) -> ClassGroupStructure {
    let invariants = invariants_from_smith(&a_matrix(model));
    let dim = invariants.dim_mod_p();
    ClassGroupStructure { tag: ClassTag::from_dim(dim), invariants, dim_mod_p: dim }
}

/// Exact closed-form values: |A| and |K| (degree 6), or a²+b² / 2ab and the
/// knot criterion a+b / a−b (degree 4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForms {
    pub det_a: BigInt,
    pub knot_value: BigInt,
}

pub fn closed_forms_for(params: &ModelParams) -> ClosedForms {
    let (a, b, c) = params.big();
    match params.variant {
        Variant::Deg4NonGalois => ClosedForms { det_a: &a * &a + &b * &b, knot_value: &a + &b },
        Variant::Deg4Biquadratic => ClosedForms { det_a: BigInt::from(2) * &a * &b, knot_value: &a - &b },
        Variant::Deg6 => ClosedForms { det_a: det_a_deg6(&a, &b, &c), knot_value: det_k_deg6(&a, &b, &c) },
    }
}

pub fn closed_form_values(model: &GaloisModel) -> ClosedForms {
    closed_forms_for(model.params())
}

/// The class-group tag predicted by congruences on the parameters alone.
pub fn closed_form_class_tag(params: &ModelParams) -> ClassTag {
    let p = params.p;
    let (a, b, c) = params.big();
    let nz = |v: &BigInt| nonzero_mod(v, p);
    let cf = closed_forms_for(params);
    if nz(&cf.det_a) {
        return ClassTag::Trivial;
    }
    match params.variant {
        Variant::Deg4NonGalois | Variant::Deg4Biquadratic => {
            let cyclic = if params.variant == Variant::Deg4NonGalois { nz(&a) && nz(&b) } else { nz(&(&a - &b)) };
            if cyclic {
                ClassTag::Cyclic
            } else {
                ClassTag::TwoGenerated
            }
        }
        Variant::Deg6 => {
            let minors = [&a * &a + &b * &c, &b * &b - &a * &c, &c * &c + &a * &b];
            if minors.iter().any(nz) {
                ClassTag::Cyclic
            } else if nz(&a) || nz(&b) || nz(&c) {
                ClassTag::TwoGenerated
            } else {
                ClassTag::ThreeOrMore
            }
        }
    }
}

/// |A| = (a−b+c)((a²+bc)+(b²−ac)+(c²+ab)).
pub fn det_a_deg6(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    (a - b + c) * ((a * a + b * c) + (b * b - a * c) + (c * c + a * b))
}

/// |K| = 2(a+b)((a+b)²+3c²).
pub fn det_k_deg6(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    let s = a + b;
    BigInt::from(2) * &s * (&s * &s + BigInt::from(3) * c * c)
}

/// |K| in its defining form ⊕³ + ⊖³.
pub fn det_k_deg6_cubes(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    let plus = a + b + c;
    let minus = a + b - c;
    &plus * &plus * &plus + &minus * &minus * &minus
}

fn nonzero_mod(n: &BigInt, p: Prime) -> bool {
    !(n % p.big()).is_zero()
}

/// Condition (iii) by lattice operations alone.
pub fn condition_iii(model: &GaloisModel) -> bool {
    use PrimeLabel::*;
    let lhs = match model.variant() {
        Variant::Deg6 => d_cap(model).sum(&model.d(P3)),
        _ => model.d(P).sum(&model.d(PBar)),
    };
    lhs.expect("same ambient").is_full()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Sufficient,
    CaseA,
    CaseB,
    NotApplicable,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Sufficient => "Sufficient",
            CaseTag::CaseA => "A",
            CaseTag::CaseB => "B",
            CaseTag::NotApplicable => "NotApplicable",
        }
    }
}

/// The degree-6 trichotomy. Degree-4 models carry `NotApplicable`.
pub fn case_tag(model: &GaloisModel, class_group: &ClassGroupStructure) -> CaseTag {
    if model.variant() != Variant::Deg6 {
        return CaseTag::NotApplicable;
    }
    let p = model.prime();
    let (a, b, _) = model.params().big();
    let cf = closed_form_values(model);
    if nonzero_mod(&cf.knot_value, p) {
        return CaseTag::Sufficient;
    }
    match class_group.dim_mod_p {
        2 => CaseTag::CaseA,
        0 | 1 => {
            if nonzero_mod(&(a + b), p) {
                CaseTag::CaseA
            } else {
                CaseTag::CaseB
            }
        }
        _ => CaseTag::NotApplicable,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeBehavior {
    pub splits_completely: bool,
    pub non_split: bool,
    pub unramified: bool,
    pub totally_ramified: bool,
    /// Invariants of the Galois group modulo the decomposition group; its
    /// order counts primes above the given one.
    pub image_invariants: QuotientInvariants,
}

/// Behavior of a prime in the extension F_top/F_bottom, given lattices
/// top ⊆ bottom.
pub fn relative_behavior(
    model: &GaloisModel,
    top: &Lattice,
    bottom: &Lattice,
    label: PrimeLabel,
) -> Result<PrimeBehavior> {
    if !top.is_subset(bottom)? {
        return Err(Error::NotIncluded);
    }
    let d = model.decomposition_lattice(label)?;
    let i = model.inertia_lattice(label)?;
    let dec = d.sum(top)?.intersect(bottom)?;
    let ine = i.sum(top)?.intersect(bottom)?;
    Ok(PrimeBehavior {
        splits_completely: dec == *top,
        non_split: dec == *bottom,
        unramified: ine == *top,
        totally_ramified: ine == *bottom,
        image_invariants: Lattice::quotient_invariants(bottom, &dec)?,
    })
}

/// Behavior of a prime in F_H/k.
pub fn prime_behavior(h: &Lattice, model: &GaloisModel, label: PrimeLabel) -> Result<PrimeBehavior> {
    relative_behavior(model, h, &model.ambient(), label)
}

/// Whether J acts as inversion on bottom/top (both J-stable, top ⊆ bottom).
pub fn j_inverse_between(model: &GaloisModel, top: &Lattice, bottom: &Lattice) -> Result<bool> {
    let j = model.j();
    if j.apply_lattice(top) != *top || j.apply_lattice(bottom) != *bottom {
        return Err(Error::ActionUndefined);
    }
    if !top.is_subset(bottom)? {
        return Err(Error::NotIncluded);
    }
    Ok(bottom.basis().iter().all(|g| {
        let jg = j.apply(g);
        let s: Vec<PLocal> = jg.iter().zip(g).map(|(x, y)| x + y).collect();
        top.contains(&s)
    }))
}

/// Whether J acts as inversion on ambient/H.
pub fn j_inverse_on_quotient(model: &GaloisModel, h: &Lattice) -> Result<bool> {
    j_inverse_between(model, h, &model.ambient())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBetaD {
    pub alpha: PLocal,
    pub beta: PLocal,
    pub d: u64,
    pub sign: i8,
}

/// Whether d satisfies the case-(A) constraint sign + p·d ≠ β/α.
pub fn d_is_admissible(alpha: &PLocal, beta: &PLocal, sign: i8, p: Prime, d: u64) -> bool {
    if alpha.valuation(p) != beta.valuation(p) || alpha.is_zero() {
        return true;
    }
    let lhs = PLocal::from_int(sign as i64) + PLocal::from_bigint(p.big() * BigInt::from(d));
    // α and β have equal finite valuation, so β/α is a unit.
    let ratio = beta.checked_div(alpha, p).expect("equal valuations");
    lhs != ratio
}

/// Solves I₃ ≡ x^α y^β modulo 𝔻 and picks d by the deterministic rule.
pub fn compute_alpha_beta_d(model: &GaloisModel) -> Result<AlphaBetaD> {
    if model.variant() != Variant::Deg6 {
        return Err(Error::HypothesisFailed("alpha/beta/d needs the degree-6 model".into()));
    }
    let p = model.prime();
    let (a, b, c) = model.params().big();
    let plus = &a + &b + &c;
    let minus = &a + &b - &c;
    for (name, v) in [("c", &c), ("a+b+c", &plus), ("a+b-c", &minus)] {
        if !nonzero_mod(v, p) {
            return Err(Error::HypothesisFailed(format!("{name} ≡ 0 mod p")));
        }
    }
    let dd = d_cap(model);
    if dd.rank() != 2 {
        return Err(Error::HypothesisFailed("D does not have rank 2".into()));
    }
    let x = crate::scalar::vector(&[0, 1, 0, 0]);
    let y = crate::scalar::vector(&[0, 0, 1, 0]);
    let cols = vec![x, y, dd.basis()[0].clone(), dd.basis()[1].clone()];
    let m = PMatrix::from_columns(p, 4, &cols)?;
    let i3 = model.prime_data(PrimeLabel::P3)?.inertia_gen.clone();
    let sol = solve(&m, &i3)?.ok_or_else(|| Error::HypothesisFailed("I3 is not congruent to x^α y^β mod D".into()))?;
    let (alpha, beta) = (sol[0].clone(), sol[1].clone());
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::HypothesisFailed("I3 lies in D".into()));
    }
    let sign: i8 = if nonzero_mod(&(&a + &b), p) { -1 } else { 1 };
    let mut d = 0;
    while !d_is_admissible(&alpha, &beta, sign, p, d) {
        d += 1;
    }
    Ok(AlphaBetaD { alpha, beta, d, sign })
}

/// floor((1 + √(1 + 8(r1 + r2 + ν − 1))) / 2), with the radicand clamped at 0.
pub fn genus_bound(r1: u64, r2: u64, nu: u64) -> u64 {
    let t = (r1 + r2 + nu) as i128 - 1;
    let rad = (1 + 8 * t).max(0) as u128;
    // floor((1 + √r)/2) = floor((1 + ⌊√r⌋)/2) for integer r.
    rad.sqrt().div_ceil(2) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSummary {
    pub value: BigInt,
    pub residue: u64,
    pub valuation: Val,
}

impl ScalarSummary {
    pub fn of(value: BigInt, p: Prime) -> Self {
        let s = PLocal::from_bigint(value.clone());
        ScalarSummary { residue: s.residue(p), valuation: int_valuation(&value, p), value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub params: ModelParams,
    pub constraints_ok: bool,
    pub class_group: ClassGroupStructure,
    pub det_a: ScalarSummary,
    pub det_k: ScalarSummary,
    pub knot_trivial: bool,
    pub knot_cokernel: QuotientInvariants,
    pub condition_iii: bool,
    pub case: CaseTag,
    /// Present only when the existence constraints hold.
    pub x_tilde_trivial: Option<bool>,
    /// Behavior of each prime in the field cut out by the condition-(iii)
    /// lattice (𝔻 in degree 6, D_𝔭 in degree 4).
    pub per_prime: Vec<(PrimeLabel, PrimeBehavior)>,
}

pub fn classify(model: &GaloisModel) -> ClassificationReport {
    let p = model.prime();
    let class_group = class_group_structure(model);
    let cf = closed_form_values(model);
    let det_a = determinant(&a_matrix(model)).expect("A is square");
    debug_assert_eq!(det_a, PLocal::from_bigint(cf.det_a.clone()));
    let knot = knot_invariants(model);
    let iii = condition_iii(model);
    let case = case_tag(model, &class_group);
    let constraints_ok = model.constraints_ok();
    let x_tilde_trivial = constraints_ok.then(|| nonzero_mod(&cf.knot_value, p));
    let h = match model.variant() {
        Variant::Deg6 => d_cap(model),
        _ => model.d(PrimeLabel::P),
    };
    let per_prime = model
        .labels()
        .into_iter()
        .map(|l| (l, prime_behavior(&h, model, l).expect("label belongs to the model")))
        .collect();
    ClassificationReport {
        params: model.params().clone(),
        constraints_ok,
        class_group,
        det_a: ScalarSummary::of(cf.det_a, p),
        det_k: ScalarSummary::of(cf.knot_value, p),
        knot_trivial: knot.trivial,
        knot_cokernel: knot.cokernel,
        condition_iii: iii,
        case,
        x_tilde_trivial,
        per_prime,
    }
}
