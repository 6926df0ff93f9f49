//! Lemma verification: each lemma's assertable claims as lattice predicates.
//!
//! A model outside a lemma's hypotheses yields `Skipped`, not `Fail`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::constructions::{case_b_m, d_cap, named_construction, Construction, ConstructionExtras};
use crate::criteria::{
    case_tag, class_group_structure, closed_form_values, condition_iii, j_inverse_between, j_inverse_on_quotient,
    prime_behavior, relative_behavior, CaseTag,
};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::models::{Automorphism, GaloisModel, PrimeLabel, Variant};
use crate::scalar::{PLocal, Prime, Val};
use crate::wedge::knot_invariants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    KiDeg4,
    KiDeg6CaseA,
    RmPatterns,
    NIntersection,
    MProperties,
    TChainInert,
    SigmaPermutation,
    IiiIffDetK,
    JInverseD,
}

impl LemmaId {
    pub const ALL: [LemmaId; 9] = [
        LemmaId::KiDeg4,
        LemmaId::KiDeg6CaseA,
        LemmaId::RmPatterns,
        LemmaId::NIntersection,
        LemmaId::MProperties,
        LemmaId::TChainInert,
        LemmaId::SigmaPermutation,
        LemmaId::IiiIffDetK,
        LemmaId::JInverseD,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::KiDeg4 => "ki_deg4",
            LemmaId::KiDeg6CaseA => "ki_deg6_caseA",
            LemmaId::RmPatterns => "R_m_patterns",
            LemmaId::NIntersection => "N_intersection",
            LemmaId::MProperties => "M_properties",
            LemmaId::TChainInert => "T_chain_inert",
            LemmaId::SigmaPermutation => "sigma_permutation",
            LemmaId::IiiIffDetK => "iii_iff_detK",
            LemmaId::JInverseD => "j_inverse_D",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped(String),
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped(_) => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub outcome: Outcome,
    /// Claim descriptions with their truth values.
    pub claims: Vec<(String, bool)>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.claims.iter().filter(|(_, ok)| !ok).map(|(c, _)| c.as_str())
    }
}

struct Claims(Vec<(String, bool)>);

impl Claims {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push((name.into(), ok));
    }

    /// An error while evaluating a claim counts as a failure of that claim.
    fn check_r(&mut self, name: impl Into<String>, ok: Result<bool>) {
        self.0.push((name.into(), ok.unwrap_or(false)));
    }
}

type Hyp = std::result::Result<(), String>;

fn require(cond: bool, why: &str) -> Hyp {
    if cond {
        Ok(())
    } else {
        Err(why.to_string())
    }
}

fn unit(v: &BigInt, p: Prime) -> bool {
    !(v % p.big()).is_zero()
}

/// Runs the claims of one lemma on a model.
pub fn verify_lemma(model: &GaloisModel, lemma: LemmaId) -> Result<LemmaReport> {
    let mut claims = Claims(Vec::new());
    let hyp = match lemma {
        LemmaId::KiDeg4 => ki_deg4(model, &mut claims),
        LemmaId::KiDeg6CaseA => ki_deg6_case_a(model, &mut claims),
        LemmaId::RmPatterns => rm_patterns(model, &mut claims),
        LemmaId::NIntersection => n_intersection(model, &mut claims),
        LemmaId::MProperties => m_properties(model, &mut claims),
        LemmaId::TChainInert => t_chain(model, &mut claims),
        LemmaId::SigmaPermutation => sigma_permutation(model, &mut claims),
        LemmaId::IiiIffDetK => iii_iff_det_k(model, &mut claims),
        LemmaId::JInverseD => j_inverse_d(model, &mut claims),
    }?;
    let outcome = match hyp {
        Err(reason) => Outcome::Skipped(reason),
        Ok(()) if claims.0.iter().all(|(_, ok)| *ok) => Outcome::Pass,
        Ok(()) => Outcome::Fail,
    };
    Ok(LemmaReport { lemma, outcome, claims: claims.0 })
}

pub fn verify_lemma_str(model: &GaloisModel, lemma: &str) -> Result<LemmaReport> {
    verify_lemma(model, lemma.parse()?)
}

fn build(model: &GaloisModel, c: Construction) -> Result<Lattice> {
    named_construction(model, &c, &ConstructionExtras::default())
}

fn ki_deg4(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if let Err(e) = require(model.variant() != Variant::Deg6, "needs a degree-4 model")
        .and(require(model.constraints_ok(), "parameter constraints fail"))
    {
        return Ok(Err(e));
    }
    let p = model.prime();
    let amb = model.ambient();
    let kinf = build(model, Construction::KInf)?;
    let j = model.j();
    cl.check("J(k_inf) = k_inf", j.apply_lattice(&kinf) == kinf);
    cl.check("ambient/k_inf free of rank 1", Lattice::quotient_invariants(&amb, &kinf)?.is_free_of_rank(1));
    cl.check_r("J inverts Gal(k_inf/k)", j_inverse_on_quotient(model, &kinf));
    for lb in model.labels() {
        let b = prime_behavior(&kinf, model, lb)?;
        cl.check(format!("{lb} non-split in k_inf/k"), b.non_split);
        cl.check(format!("{lb} ramified in k_inf/k"), !b.unramified);
    }
    let pinf = build(model, Construction::PInf)?;
    let qinf = build(model, Construction::QInf)?;
    let pq = build(model, Construction::PInfQInf)?;
    use PrimeLabel::*;
    cl.check("P_inf = D_p", pinf == model.d(P));
    cl.check("Q_inf = D_q", qinf == model.d(Q));
    cl.check("P_inf Q_inf = P_inf ∩ Q_inf", pq == pinf.intersect(&qinf)?);
    cl.check("P_inf Q_inf ⊆ k_inf", pq.is_subset(&kinf)?);
    cl.check("P_inf ∩ Q_inf = k", pinf.sum(&qinf)?.is_full());

    let ng = model.variant() == Variant::Deg4NonGalois;
    let (a, b, _) = model.params().big();
    let e = if ng { &a + &b } else { &a - &b };
    let n = crate::scalar::int_valuation(&e, p);
    if let Val::Fin(n) = n {
        if n > 0 {
            let pn = build(model, Construction::PN)?;
            let qn = build(model, Construction::QN)?;
            let lp = build(model, Construction::LPrime)?;
            cl.check("P_n = <D_p, D_pbar>", pn == model.d(P).sum(&model.d(PBar))?);
            cl.check("Q_n = <D_q, D_qbar>", qn == model.d(Q).sum(&model.d(QBar))?);
            for lb in [P, PBar] {
                cl.check(format!("{lb} splits completely in P_n/k"), prime_behavior(&pn, model, lb)?.splits_completely);
            }
            for lb in [Q, QBar] {
                cl.check(format!("{lb} splits completely in Q_n/k"), prime_behavior(&qn, model, lb)?.splits_completely);
            }
            cl.check("P_inf Q_inf ⊆ L' ⊆ k_inf", pq.is_subset(&lp)? && lp.is_subset(&kinf)?);
            cl.check(
                format!("k_inf/L' cyclic of order p^{n}"),
                Lattice::quotient_invariants(&kinf, &lp)?.is_cyclic_of_order(n),
            );
            cl.check_r("J inverts Gal(L'/k_inf)", j_inverse_between(model, &lp, &kinf));
            for lb in model.labels() {
                let r = relative_behavior(model, &lp, &kinf, lb)?;
                cl.check(format!("{lb} splits completely in L'/k_inf"), r.splits_completely);
                cl.check(format!("{lb} unramified in L'/k_inf"), r.unramified);
            }
        }
    }
    Ok(Ok(()))
}

fn ki_deg6_case_a(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if let Err(e) = require(model.variant() == Variant::Deg6, "needs the degree-6 model")
        .and(require(model.constraints_ok(), "parameter constraints fail"))
    {
        return Ok(Err(e));
    }
    let cg = class_group_structure(model);
    if case_tag(model, &cg) != CaseTag::CaseA {
        return Ok(Err("not in case (A)".into()));
    }
    use PrimeLabel::*;
    let amb = model.ambient();
    let dd = d_cap(model);
    let kinf = build(model, Construction::KInfCaseA)?;
    let z1 = build(model, Construction::Z(1))?;
    let z2 = build(model, Construction::Z(2))?;
    let x = crate::scalar::vector(&[0, 1, 0, 0]);
    let y = crate::scalar::vector(&[0, 0, 1, 0]);
    cl.check("ambient/D free of rank 2", Lattice::quotient_invariants(&amb, &dd)?.is_free_of_rank(2));
    cl.check("<D, I3> = <D, I3bar>", dd.sum(&model.i(P3))? == dd.sum(&model.i(P3Bar))?);
    cl.check("<D, x> = <D1, D1bar>", dd.extend(&[x])? == z1);
    cl.check("<D, y> = <D2, D2bar>", dd.extend(&[y])? == z2);
    cl.check("k_inf differs from P_inf and Q_inf", kinf != z1 && kinf != z2);
    cl.check("ambient/k_inf free of rank 1", Lattice::quotient_invariants(&amb, &kinf)?.is_free_of_rank(1));
    cl.check("k_inf/D free of rank 1", Lattice::quotient_invariants(&kinf, &dd)?.is_free_of_rank(1));
    for lb in [P3, P3Bar] {
        let r = relative_behavior(model, &dd, &kinf, lb)?;
        cl.check(format!("{lb} unramified in P_inf Q_inf/k_inf"), r.unramified);
    }
    cl.check_r("J inverts Gal(k_inf/k)", j_inverse_on_quotient(model, &kinf));
    cl.check_r("J inverts Gal(P_inf Q_inf/k)", j_inverse_on_quotient(model, &dd));
    let mut ramified = false;
    for lb in model.labels() {
        let b = prime_behavior(&kinf, model, lb)?;
        cl.check(format!("{lb} non-split in k_inf/k"), b.non_split);
        ramified |= !b.unramified;
    }
    cl.check("p ramified in k_inf/k", ramified);
    cl.check("P3 ramified in k_inf/k", !prime_behavior(&kinf, model, P3)?.unramified);
    Ok(Ok(()))
}

fn rm_patterns(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if let Err(e) = require(model.variant() == Variant::Deg6, "needs the degree-6 model")
        .and(require(model.constraints_ok(), "parameter constraints fail"))
    {
        return Ok(Err(e));
    }
    let m = match case_b_m(model) {
        Ok(Val::Fin(m)) => m,
        Ok(Val::Inf) => return Ok(Err("a+b = 0, so m is infinite".into())),
        Err(_) => return Ok(Err("a+b is a unit".into())),
    };
    if class_group_structure(model).dim_mod_p > 1 {
        return Ok(Err("class group needs at least two generators".into()));
    }
    use PrimeLabel::*;
    let amb = model.ambient();
    let pairs = [(P1, P1Bar), (P2, P2Bar), (P3, P3Bar)];
    let rs: Vec<Lattice> = (1..=3).map(|i| build(model, Construction::RM(i))).collect::<Result<_>>()?;
    for (i, r) in rs.iter().enumerate() {
        let name = format!("R_m_{}", i + 1);
        cl.check(
            format!("ambient/{name} cyclic of order p^{m}"),
            Lattice::quotient_invariants(&amb, r)?.is_cyclic_of_order(m),
        );
        cl.check_r(format!("J inverts Gal({name}/k)"), j_inverse_on_quotient(model, r));
        for (j, &(l, lb)) in pairs.iter().enumerate() {
            for label in [l, lb] {
                let b = prime_behavior(r, model, label)?;
                if i == j {
                    cl.check(format!("{label} splits completely in {name}/k"), b.splits_completely);
                } else {
                    cl.check(format!("{label} totally ramified in {name}/k"), b.totally_ramified);
                }
            }
        }
    }
    let pm = build(model, Construction::PM1)?;
    let qm = build(model, Construction::QM1)?;
    cl.check("P_m_1 = <D1, D2>", pm == model.d(P1).sum(&model.d(P2))?);
    cl.check("Q_m_1 = <D1, D3>", qm == model.d(P1).sum(&model.d(P3))?);
    cl.check("P_m_1 ∩ Q_m_1 = k", pm.sum(&qm)?.is_full());
    let pq = pm.intersect(&qm)?;
    let q = Lattice::quotient_invariants(&amb, &pq)?;
    cl.check("P_m_1 Q_m_1 / k of type (p^m, p^m)", q.free_rank == 0 && q.torsion_exponents == vec![m, m]);
    cl.check("R_m_1 ⊆ P_m_1 Q_m_1", pq.is_subset(&rs[0])?);

    let lpm = build(model, Construction::LPrimeM)?;
    let km = build(model, Construction::KM)?;
    cl.check("L'_m = R_m_2 R_m_3", lpm == rs[1].intersect(&rs[2])?);
    cl.check("R_m_1 ⊆ L'_m", lpm.is_subset(&rs[0])?);
    cl.check_r("J inverts Gal(L'_m/k)", j_inverse_on_quotient(model, &lpm));
    for (i, r) in rs.iter().enumerate() {
        let (l, lb) = pairs[i];
        for label in [l, lb] {
            let ine = model.i(label).sum(&lpm)?;
            cl.check(format!("inertia of {label} in L'_m/k is Gal(L'_m/R_m_{})", i + 1), ine == *r);
        }
    }
    cl.check(
        format!("ambient/k_m cyclic of order p^{m}"),
        Lattice::quotient_invariants(&amb, &km)?.is_cyclic_of_order(m),
    );
    cl.check(format!("k_m/L'_m cyclic of order p^{m}"), Lattice::quotient_invariants(&km, &lpm)?.is_cyclic_of_order(m));
    for label in model.labels() {
        cl.check(format!("{label} totally ramified in k_m/k"), prime_behavior(&km, model, label)?.totally_ramified);
        let r = relative_behavior(model, &lpm, &km, label)?;
        cl.check(format!("{label} splits completely in L'_m/k_m"), r.splits_completely);
        cl.check(format!("{label} unramified in L'_m/k_m"), r.unramified);
    }
    let kinf = build(model, Construction::KInfCaseB)?;
    cl.check("ambient/k_inf free of rank 1", Lattice::quotient_invariants(&amb, &kinf)?.is_free_of_rank(1));
    cl.check_r("J inverts Gal(k_inf/k)", j_inverse_on_quotient(model, &kinf));
    cl.check("k_inf ⊆ k_m", kinf.is_subset(&km)?);
    for label in model.labels() {
        cl.check(format!("{label} totally ramified in k_inf/k"), prime_behavior(&kinf, model, label)?.totally_ramified);
    }
    Ok(Ok(()))
}

fn deg6_sufficient(model: &GaloisModel) -> Hyp {
    require(model.variant() == Variant::Deg6, "needs the degree-6 model")?;
    require(model.constraints_ok(), "parameter constraints fail")?;
    require(unit(&closed_form_values(model).knot_value, model.prime()), "|K| ≡ 0 mod p")
}

/// (a²+bc)+(c²+ab) and (b²−ac)+(c²+ab).
fn n_selectors(model: &GaloisModel) -> (BigInt, BigInt) {
    let (a, b, c) = model.params().big();
    let cab = &c * &c + &a * &b;
    (&a * &a + &b * &c + &cab, &b * &b - &a * &c + &cab)
}

fn n_pair(model: &GaloisModel) -> Result<(Lattice, Lattice, Lattice, Lattice, u8)> {
    use PrimeLabel::*;
    let p = model.prime();
    let (s1, _) = n_selectors(model);
    if unit(&s1, p) {
        Ok((
            build(model, Construction::NVariant1)?,
            build(model, Construction::NBarVariant1)?,
            model.i(P1).sum(&model.d(P2Bar))?,
            model.i(P1Bar).sum(&model.d(P2))?,
            1,
        ))
    } else {
        Ok((
            build(model, Construction::NVariant2)?,
            build(model, Construction::NBarVariant2)?,
            model.d(P1).sum(&model.i(P2Bar))?,
            model.d(P1Bar).sum(&model.i(P2))?,
            2,
        ))
    }
}

fn n_intersection(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if let Err(e) = deg6_sufficient(model) {
        return Ok(Err(e));
    }
    let p = model.prime();
    let amb = model.ambient();
    let (s1, s2) = n_selectors(model);
    cl.check("(a²+bc)+(c²+ab) or (b²−ac)+(c²+ab) is a unit", unit(&s1, p) || unit(&s2, p));
    let (n, nb, n_def, nb_def, v) = n_pair(model)?;
    cl.check(format!("N_variant{v} matches its generators"), n == n_def);
    cl.check(format!("N_bar_variant{v} matches its generators"), nb == nb_def);
    cl.check("ambient/N free of rank 1", Lattice::quotient_invariants(&amb, &n)?.is_free_of_rank(1));
    cl.check("ambient/N_bar free of rank 1", Lattice::quotient_invariants(&amb, &nb)?.is_free_of_rank(1));
    cl.check("J(N) = N_bar", model.j().apply_lattice(&n) == nb);
    cl.check("N ∩ N_bar = k", n.sum(&nb)?.is_full());
    Ok(Ok(()))
}

fn m_properties(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if let Err(e) = deg6_sufficient(model) {
        return Ok(Err(e));
    }
    use PrimeLabel::*;
    let p = model.prime();
    let amb = model.ambient();
    let mc = build(model, Construction::MCal)?;
    let (a, b, c) = model.params().big();
    let z12 = model.d(P1).sum(&model.d(P1Bar))?.sum(&model.d(P2))?.sum(&model.d(P2Bar))?;
    let lit = model.lattice(&[
        crate::scalar::vector(&[1, 0, 0, 0]),
        crate::scalar::vector(&[0, 1, 0, 0]),
        crate::scalar::vector(&[0, 0, 1, 0]),
    ]);
    let lit = lit.extend(&[
        vec![PLocal::zero(), PLocal::zero(), PLocal::zero(), PLocal::from_bigint(&a + &b)],
        vec![PLocal::zero(), PLocal::zero(), PLocal::zero(), PLocal::from_bigint(c.clone())],
    ])?;
    cl.check("<D1, D1bar, D2, D2bar> = <γ, x, y, z^(a+b), z^c>", z12 == lit);
    cl.check("Z_11b ∩ Z_22b = k", z12.is_full());
    cl.check("ambient/M free of rank 1", Lattice::quotient_invariants(&amb, &mc)?.is_free_of_rank(1));
    for lb in [P3, P3Bar] {
        let b = prime_behavior(&mc, model, lb)?;
        cl.check(format!("{lb} totally inert in M/k"), b.non_split && b.unramified);
    }
    for lb in [P1, P1Bar, P2, P2Bar] {
        cl.check(format!("{lb} ramified in M/k"), !prime_behavior(&mc, model, lb)?.unramified);
    }
    let t33 = model.i(P3).sum(&model.i(P3Bar))?;
    let (s1, _) = n_selectors(model);
    let pair = if unit(&s1, p) { [P1, P1Bar] } else { [P2, P2Bar] };
    for lb in pair {
        cl.check(format!("{lb} non-split in T_33b/k"), prime_behavior(&t33, model, lb)?.non_split);
    }
    Ok(Ok(()))
}

fn t_chain(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if let Err(e) = deg6_sufficient(model) {
        return Ok(Err(e));
    }
    let p = model.prime();
    let (a, b, c) = model.params().big();
    if !unit(&(&a * &a + &b * &c), p) {
        return Ok(Err("a²+bc ≡ 0 mod p".into()));
    }
    use PrimeLabel::*;
    let amb = model.ambient();
    let t = |labels: &[PrimeLabel]| build(model, Construction::T(labels.to_vec()));
    let big = t(&[P1, P2Bar, P3])?;
    let small = t(&[P1, P2Bar])?;
    let v = |xs: [BigInt; 4]| xs.into_iter().map(PLocal::from_bigint).collect::<Vec<_>>();
    let z = BigInt::zero;
    let lit_small = model.lattice(&[v([1.into(), z(), z(), z()]), v([z(), a.clone(), b.clone(), c.clone()])]);
    let lit_big = lit_small.extend(&[v([z(), -c.clone(), a.clone(), b.clone()])])?;
    cl.check("T_1_2b = <γ, x^a y^b z^c>", small == lit_small);
    cl.check("T_1_2b_3 = <γ, x^a y^b z^c, x^-c y^a z^b>", big == lit_big);
    cl.check("ambient/T_1_2b_3 free of rank 1", Lattice::quotient_invariants(&amb, &big)?.is_free_of_rank(1));
    cl.check("<I1, I2bar, D3> = ambient", big.sum(&model.d(P3))?.is_full());
    let b3 = prime_behavior(&big, model, P3)?;
    cl.check("P3 totally inert in T_1_2b_3/k", b3.non_split && b3.unramified);
    let r = relative_behavior(model, &small, &big, P3)?;
    cl.check("P3 totally ramified in T_1_2b/T_1_2b_3", r.totally_ramified);
    let (s1, _) = n_selectors(model);
    if unit(&s1, p) {
        let (n, _, _, _, _) = n_pair(model)?;
        let r = relative_behavior(model, &small, &n, P2Bar)?;
        cl.check("P2bar totally inert in T_1_2b/N", r.non_split && r.unramified);
    }
    Ok(Ok(()))
}

fn sigma_permutation(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    let s = model.automorphism_matrix(Automorphism::Sigma)?;
    for lb in model.labels() {
        let next = model.sigma_successor(lb);
        cl.check(format!("σ(D_{lb}) = D_{next}"), s.apply_lattice(&model.d(lb)) == model.d(next));
        cl.check(format!("σ(I_{lb}) = I_{next}"), s.apply_lattice(&model.i(lb)) == model.i(next));
    }
    let j = model.j();
    for lb in model.labels() {
        let cj = lb.conjugate();
        cl.check(format!("J(D_{lb}) = D_{cj}"), j.apply_lattice(&model.d(lb)) == model.d(cj));
    }
    Ok(Ok(()))
}

fn iii_iff_det_k(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if model.variant() != Variant::Deg6 {
        return Ok(Err("needs the degree-6 model".into()));
    }
    let p = model.prime();
    let nonzero = unit(&closed_form_values(model).knot_value, p);
    let iii = condition_iii(model);
    cl.check("condition (iii) ⟺ |K| ≢ 0", iii == nonzero);
    cl.check("knot matrix full rank ⟺ |K| ≢ 0", knot_invariants(model).trivial == nonzero);
    let (a, b, c) = model.params().big();
    let plus = &a + &b + &c;
    let minus = &a + &b - &c;
    if unit(&c, p) && unit(&plus, p) && unit(&minus, p) {
        let f = PLocal::from_bigint;
        let lit = model.lattice(&[
            vec![f(plus.clone()), f(&a * &plus), f(&c * &minus), f(&c * &plus)],
            vec![f(0.into()), f(&plus * &plus), f(-(&minus * &minus)), f(-(&plus * &minus))],
        ]);
        cl.check("D = <γ^⊕ x^(a⊕) y^(c⊖) z^(c⊕), x^(⊕²) y^(-⊖²) z^(-⊕⊖)>", d_cap(model) == lit);
    }
    Ok(Ok(()))
}

fn j_inverse_d(model: &GaloisModel, cl: &mut Claims) -> Result<Hyp> {
    if let Err(e) = require(model.variant() == Variant::Deg6, "needs the degree-6 model")
        .and(require(model.constraints_ok(), "parameter constraints fail"))
    {
        return Ok(Err(e));
    }
    let dd = d_cap(model);
    cl.check("J(D) = D", model.j().apply_lattice(&dd) == dd);
    cl.check_r("J inverts ambient/D", j_inverse_on_quotient(model, &dd));
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, ModelParams};

    fn run(params: ModelParams, checked: bool, lemma: &str) -> LemmaReport {
        let m = build_model(params, checked).unwrap();
        verify_lemma_str(&m, lemma).unwrap()
    }

    fn assert_pass(r: &LemmaReport) {
        assert!(r.passed(), "{} {:?}: {:?}", r.lemma, r.outcome, r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn names_round_trip() {
        for l in LemmaId::ALL {
            assert_eq!(l.as_str().parse::<LemmaId>().unwrap(), l);
        }
        assert!(matches!("unknown_name".parse::<LemmaId>(), Err(Error::UnknownLemma(_))));
    }

    #[test]
    fn rm_patterns_example() {
        assert_pass(&run(ModelParams::deg6(5, 1, 4, 0).unwrap(), true, "R_m_patterns"));
    }

    #[test]
    fn m_properties_example() {
        let r = run(ModelParams::deg6(5, 1, 1, 1).unwrap(), true, "M_properties");
        assert_pass(&r);
    }

    #[test]
    fn ki_deg4_examples() {
        assert_pass(&run(ModelParams::deg4ng(5, 1, 4).unwrap(), true, "ki_deg4"));
        assert_pass(&run(ModelParams::deg4ng(5, 1, 2).unwrap(), true, "ki_deg4"));
        assert_pass(&run(ModelParams::deg4bq(5, 2, 1).unwrap(), true, "ki_deg4"));
    }

    #[test]
    fn hypotheses_skip() {
        let r = run(ModelParams::deg4ng(5, 1, 4).unwrap(), true, "R_m_patterns");
        assert!(matches!(r.outcome, Outcome::Skipped(_)));
        let r = run(ModelParams::deg6(5, 1, 1, 1).unwrap(), true, "R_m_patterns");
        assert!(matches!(r.outcome, Outcome::Skipped(_)));
    }

    #[test]
    fn sufficient_case_lemmas() {
        for lemma in ["N_intersection", "T_chain_inert", "j_inverse_D", "iii_iff_detK", "sigma_permutation"] {
            assert_pass(&run(ModelParams::deg6(5, 1, 1, 1).unwrap(), true, lemma));
        }
    }
}
