//! The catalogue of named subgroups, as lattices.
//!
//! Names are a closed set; [`Construction::from_str`] rejects anything else.
//! Field inclusion reverses lattice inclusion: a larger field has a smaller
//! lattice.

use std::fmt;
use std::str::FromStr;

use crate::criteria::compute_alpha_beta_d;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::models::{GaloisModel, PrimeLabel, Variant};
use crate::scalar::{PLocal, Val};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Construction {
    // degree 4, both variants
    KInf,
    PInf,
    QInf,
    PN,
    QN,
    LPrime,
    PInfQInf,
    K1,
    K2,
    NP,
    K1Bar,
    K2Bar,
    NPBar,
    // degree 6
    DCap,
    Z(u8),
    KInfCaseA,
    RM(u8),
    PM1,
    QM1,
    LPrimeM,
    KM,
    KInfCaseB,
    KInfCaseBPrinted,
    NVariant1,
    NBarVariant1,
    NVariant2,
    NBarVariant2,
    MCal,
    T(Vec<PrimeLabel>),
}

const SIMPLE: &[(&str, Construction)] = &[
    ("k_inf", Construction::KInf),
    ("P_inf", Construction::PInf),
    ("Q_inf", Construction::QInf),
    ("P_n", Construction::PN),
    ("Q_n", Construction::QN),
    ("L_prime", Construction::LPrime),
    ("P_inf_Q_inf", Construction::PInfQInf),
    ("k1", Construction::K1),
    ("k2", Construction::K2),
    ("N_p", Construction::NP),
    ("k1_bar", Construction::K1Bar),
    ("k2_bar", Construction::K2Bar),
    ("N_p_bar", Construction::NPBar),
    ("D_cap", Construction::DCap),
    ("Z_11b", Construction::Z(1)),
    ("Z_22b", Construction::Z(2)),
    ("Z_33b", Construction::Z(3)),
    ("k_inf_caseA", Construction::KInfCaseA),
    ("R_m_1", Construction::RM(1)),
    ("R_m_2", Construction::RM(2)),
    ("R_m_3", Construction::RM(3)),
    ("P_m_1", Construction::PM1),
    ("Q_m_1", Construction::QM1),
    ("L_prime_m", Construction::LPrimeM),
    ("k_m", Construction::KM),
    ("k_inf_caseB", Construction::KInfCaseB),
    ("k_inf_caseB_printed", Construction::KInfCaseBPrinted),
    ("N_variant1", Construction::NVariant1),
    ("N_bar_variant1", Construction::NBarVariant1),
    ("N_variant2", Construction::NVariant2),
    ("N_bar_variant2", Construction::NBarVariant2),
    ("M_cal", Construction::MCal),
];

impl Construction {
    /// Catalogue names valid for a variant; `T_...` names are listed by pattern.
    pub fn catalogue(variant: Variant) -> Vec<&'static str> {
        let deg4 = 0..13;
        let deg6 = 13..SIMPLE.len();
        let range = if variant == Variant::Deg6 { deg6 } else { deg4 };
        let mut names: Vec<&'static str> = SIMPLE[range].iter().map(|(n, _)| *n).collect();
        if variant == Variant::Deg6 {
            names.push("T_<labels>, e.g. T_1_2b_3");
        }
        names
    }

    pub fn applies_to(&self, variant: Variant) -> bool {
        use Construction::*;
        let deg6_only = matches!(
            self,
            DCap | Z(_)
                | KInfCaseA
                | RM(_)
                | PM1
                | QM1
                | LPrimeM
                | KM
                | KInfCaseB
                | KInfCaseBPrinted
                | NVariant1
                | NBarVariant1
                | NVariant2
                | NBarVariant2
                | MCal
                | T(_)
        );
        let shared = matches!(self, PInf | QInf);
        shared || deg6_only == (variant == Variant::Deg6)
    }
}

fn t_token(l: PrimeLabel) -> &'static str {
    use PrimeLabel::*;
    match l {
        P1 => "1",
        P1Bar => "1b",
        P2 => "2",
        P2Bar => "2b",
        P3 => "3",
        P3Bar => "3b",
        _ => "?",
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Construction::T(ls) = self {
            let toks: Vec<&str> = ls.iter().map(|&l| t_token(l)).collect();
            return write!(f, "T_{}", toks.join("_"));
        }
        let name = SIMPLE.iter().find(|(_, c)| c == self).map(|(n, _)| *n).unwrap_or("?");
        f.write_str(name)
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some((_, c)) = SIMPLE.iter().find(|(n, _)| *n == s) {
            return Ok(c.clone());
        }
        if let Some(rest) = s.strip_prefix("T_") {
            use PrimeLabel::*;
            let mut labels = Vec::new();
            for tok in rest.split('_') {
                let l = match tok {
                    "1" => P1,
                    "1b" => P1Bar,
                    "2" => P2,
                    "2b" => P2Bar,
                    "3" => P3,
                    "3b" => P3Bar,
                    _ => return Err(Error::UnknownConstruction(s.to_string())),
                };
                if !labels.contains(&l) {
                    labels.push(l);
                }
            }
            if !labels.is_empty() {
                return Ok(Construction::T(labels));
            }
        }
        Err(Error::UnknownConstruction(s.to_string()))
    }
}

/// Optional overrides for constructions that involve a choice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructionExtras {
    /// The integer d in k_inf_caseA; computed by the default rule when absent.
    pub d: Option<u64>,
}

/// ⟨D_i, D̄_i⟩ in degree 6.
pub fn z_pair(model: &GaloisModel, i: u8) -> Lattice {
    use PrimeLabel::*;
    let (l, lb) = match i {
        1 => (P1, P1Bar),
        2 => (P2, P2Bar),
        _ => (P3, P3Bar),
    };
    model.d(l).sum(&model.d(lb)).expect("same ambient")
}

/// 𝔻 = ⟨D₁, D̄₁⟩ ∩ ⟨D₂, D̄₂⟩.
pub fn d_cap(model: &GaloisModel) -> Lattice {
    z_pair(model, 1).intersect(&z_pair(model, 2)).expect("same ambient")
}

/// ord_p(a+b) for the case-(B) family; errors when it is zero.
pub fn case_b_m(model: &GaloisModel) -> Result<Val> {
    let s = PLocal::from_int(model.params().a) + PLocal::from_int(model.params().b);
    match s.valuation(model.prime()) {
        Val::Fin(0) => Err(Error::ConstructionUndefined("m = 0".into())),
        v => Ok(v),
    }
}

pub fn named_construction(model: &GaloisModel, name: &Construction, extras: &ConstructionExtras) -> Result<Lattice> {
    let variant = model.variant();
    if !name.applies_to(variant) {
        return Err(Error::UnknownConstruction(format!("{name} (not defined for {variant})")));
    }
    let q = model.params();
    let (a, b, c) = (q.a as i128, q.b as i128, q.c as i128);
    let l = |vs: &[&[i128]]| model.lattice_i(vs);
    use Construction::*;
    use PrimeLabel::*;

    if variant != Variant::Deg6 {
        let ng = variant == Variant::Deg4NonGalois;
        // n-exponent: a+b (non-Galois) or a-b (biquadratic).
        let e = if ng { a + b } else { a - b };
        let lat = match name {
            KInf => {
                if ng {
                    l(&[&[1, a, 0], &[0, 1, -1]])
                } else {
                    l(&[&[1, a, 0], &[0, 1, 1]])
                }
            }
            PInf | NP => l(&[&[1, 0, 0], &[0, 1, 0]]),
            QInf => l(&[&[1, a, 0], &[0, 0, 1]]),
            PN => l(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, e]]),
            QN => l(&[&[1, a, 0], &[0, e, 0], &[0, 0, 1]]),
            LPrime => {
                if ng {
                    l(&[&[1, a, 0], &[0, e, -e]])
                } else {
                    l(&[&[1, a, 0], &[0, e, e]])
                }
            }
            PInfQInf => l(&[&[1, a, 0]]),
            K1 => {
                if ng {
                    l(&[&[1, 0, 0], &[0, a, b]])
                } else {
                    l(&[&[1, 0, 0], &[0, a, -a]])
                }
            }
            K2 => l(&[&[1, 0, 0]]),
            K1Bar => model.i(PBar).sum(&model.i(QBar))?,
            K2Bar => model.i(PBar),
            NPBar => model.d(PBar),
            _ => unreachable!("filtered by applies_to"),
        };
        return Ok(lat);
    }

    let plus = a + b + c;
    let minus = a + b - c;
    let lat = match name {
        DCap => d_cap(model),
        Z(i) => z_pair(model, *i),
        PInf => l(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, minus, plus]]),
        QInf => l(&[&[1, a, 0, c], &[0, 0, 1, 0], &[0, -plus, 0, minus]]),
        KInfCaseA => {
            let sign: i128 = if ((a + b) % q.p.get() as i128) == 0 { 1 } else { -1 };
            let d = match extras.d {
                Some(d) => d,
                None => compute_alpha_beta_d(model)?.d,
            };
            let exp = sign + (q.p.get() as i128) * (d as i128);
            d_cap(model).extend(&[crate::models::ivec(&[0, 1, exp, 0])])?
        }
        RM(i) => {
            case_b_m(model)?;
            let s = a + b;
            match i {
                1 => l(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, 0, s]]),
                2 => l(&[&[1, a - c, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1], &[0, s, 0, 0]]),
                _ => l(&[&[1, a - c, 0, 0], &[0, 1, -1, 0], &[0, 0, 0, 1], &[0, 0, s, 0]]),
            }
        }
        PM1 => {
            case_b_m(model)?;
            l(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, a + b]])
        }
        QM1 => {
            case_b_m(model)?;
            l(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, a + b, 0], &[0, 0, 0, 1]])
        }
        LPrimeM | KM => {
            case_b_m(model)?;
            let s = a + b;
            let (g0, g2, g3, g4) = ([1, a - c, 0, 0], [0, s, 0, 0], [0, 0, s, 0], [0, 0, 0, s]);
            let mut gens: Vec<&[i128]> = vec![&g0, &[0, 1, -1, 1], &g2, &g3, &g4];
            if *name == KM {
                gens.push(&[0, 1, 1, 0]);
            }
            l(&gens)
        }
        KInfCaseB => {
            case_b_m(model)?;
            l(&[&[2, a - b - c, minus, plus], &[0, 1, -1, 1], &[0, 1, 1, 0]])
        }
        KInfCaseBPrinted => {
            case_b_m(model)?;
            l(&[&[1, a - c, 0, 0], &[0, 1, -1, 1], &[0, 1, 1, 0]])
        }
        NVariant1 => l(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, a, 0, c]]),
        NBarVariant1 => l(&[&[1, -b - c, 0, a + b], &[0, 0, 1, 0], &[0, a, 0, c]]),
        NVariant2 => l(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, b, c]]),
        NBarVariant2 => l(&[&[1, 0, a - c, a + b], &[0, 1, 0, 0], &[0, 0, b, c]]),
        MCal => d_cap(model).sum(&model.i(P3))?,
        T(labels) => {
            let parts: Vec<Lattice> = labels.iter().map(|&lb| model.i(lb)).collect();
            let refs: Vec<&Lattice> = parts.iter().collect();
            Lattice::sum_all(4, model.prime(), &refs)?
        }
        _ => unreachable!("filtered by applies_to"),
    };
    Ok(lat)
}

/// Parses `name` and builds the construction.
pub fn named_construction_str(model: &GaloisModel, name: &str, extras: &ConstructionExtras) -> Result<Lattice> {
    named_construction(model, &name.parse()?, extras)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, ModelParams};

    fn deg6(p: u64, a: i64, b: i64, c: i64) -> GaloisModel {
        build_model(ModelParams::deg6(p, a, b, c).unwrap(), true).unwrap()
    }

    fn get(m: &GaloisModel, name: &str) -> Lattice {
        named_construction_str(m, name, &ConstructionExtras::default()).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for v in Variant::ALL {
            for n in Construction::catalogue(v) {
                if n.starts_with("T_<") {
                    continue;
                }
                let c: Construction = n.parse().unwrap();
                assert_eq!(c.to_string(), n);
                assert!(c.applies_to(v), "{n} for {v}");
            }
        }
        let t: Construction = "T_1_2b_3".parse().unwrap();
        assert_eq!(t.to_string(), "T_1_2b_3");
        assert!("T_4".parse::<Construction>().is_err());
        assert!("nonsense".parse::<Construction>().is_err());
    }

    #[test]
    fn catalogue_examples() {
        let m = build_model(ModelParams::deg4ng(5, 1, 4).unwrap(), true).unwrap();
        assert_eq!(get(&m, "k_inf"), Lattice::from_i64(3, m.prime(), &[&[1, 1, 0], &[0, 1, -1]]));
        let m = deg6(5, 1, 4, 0);
        assert_eq!(
            get(&m, "R_m_1"),
            Lattice::from_i64(4, m.prime(), &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, 0, 5]])
        );
        let m = deg6(5, 1, 1, 1);
        assert_eq!(
            get(&m, "N_variant1"),
            Lattice::from_i64(4, m.prime(), &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]])
        );
    }

    #[test]
    fn case_b_needs_positive_m() {
        let m = deg6(5, 1, 1, 1);
        let e = named_construction_str(&m, "R_m_1", &ConstructionExtras::default()).unwrap_err();
        assert_eq!(e.to_string(), "construction undefined: m = 0");
    }

    #[test]
    fn wrong_variant_is_rejected() {
        let m = deg6(5, 1, 1, 1);
        assert!(named_construction_str(&m, "k_inf", &ConstructionExtras::default()).is_err());
        let n = build_model(ModelParams::deg4ng(5, 1, 4).unwrap(), true).unwrap();
        assert!(named_construction_str(&n, "D_cap", &ConstructionExtras::default()).is_err());
    }

    #[test]
    fn literal_forms_match_derived_spans() {
        use PrimeLabel::*;
        for (a, b) in [(1i64, 4i64), (2, 3), (1, 2), (3, 3), (-2, 7)] {
            for v in [Variant::Deg4NonGalois, Variant::Deg4Biquadratic] {
                let Ok(m) = build_model(ModelParams::new(v, 5, a, b, 0).unwrap(), true) else {
                    continue;
                };
                let s = |x: Lattice, y: Lattice| x.sum(&y).unwrap();
                assert_eq!(get(&m, "P_inf"), m.d(P));
                assert_eq!(get(&m, "Q_inf"), m.d(Q));
                assert_eq!(get(&m, "P_n"), s(m.d(P), m.d(PBar)), "{v} {a} {b}");
                assert_eq!(get(&m, "Q_n"), s(m.d(Q), m.d(QBar)), "{v} {a} {b}");
                assert_eq!(get(&m, "k1"), s(m.i(P), m.i(Q)));
                assert_eq!(get(&m, "P_inf_Q_inf"), m.d(P).intersect(&m.d(Q)).unwrap());
            }
        }
        for (a, b, c) in [(1i64, 1i64, 1i64), (1, 4, 0), (2, -1, 3), (5, 2, -4)] {
            let m = deg6(7, a, b, c);
            assert_eq!(get(&m, "P_inf"), z_pair(&m, 1));
            assert_eq!(get(&m, "Q_inf"), z_pair(&m, 2));
            assert_eq!(get(&m, "N_variant1"), m.i(P1).sum(&m.d(P2Bar)).unwrap());
            assert_eq!(get(&m, "N_bar_variant1"), m.i(P1Bar).sum(&m.d(P2)).unwrap());
            assert_eq!(get(&m, "N_variant2"), m.d(P1).sum(&m.i(P2Bar)).unwrap());
            assert_eq!(get(&m, "N_bar_variant2"), m.d(P1Bar).sum(&m.i(P2)).unwrap());
        }
    }
}
