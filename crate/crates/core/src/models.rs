//! The three parametrized models of Gal(k̃/k).
//!
//! Exponent vectors use the ordered basis (γ, x, y) for degree 4 and
//! (γ, x, y, z) for degree 6. Primes are listed in the order of the σ-orbit
//! of the first prime, which is also the row order of the knot matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::PMatrix;
use crate::scalar::{PLocal, Prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Deg4NonGalois,
    Deg4Biquadratic,
    Deg6,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Deg4NonGalois, Variant::Deg4Biquadratic, Variant::Deg6];

    /// Short name used on the command line and in reports.
    pub fn short_name(self) -> &'static str {
        match self {
            Variant::Deg4NonGalois => "deg4ng",
            Variant::Deg4Biquadratic => "deg4bq",
            Variant::Deg6 => "deg6",
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Variant::Deg6 => 6,
            _ => 4,
        }
    }

    pub fn ambient_rank(self) -> usize {
        match self {
            Variant::Deg6 => 4,
            _ => 3,
        }
    }

    pub fn has_c(self) -> bool {
        self == Variant::Deg6
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "deg4ng" | "Deg4NonGalois" => Ok(Variant::Deg4NonGalois),
            "deg4bq" | "Deg4Biquadratic" => Ok(Variant::Deg4Biquadratic),
            "deg6" | "Deg6" => Ok(Variant::Deg6),
            _ => Err(format!("unknown variant {s:?} (expected deg6, deg4ng or deg4bq)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeLabel {
    P,
    Q,
    PBar,
    QBar,
    P1,
    P1Bar,
    P2,
    P2Bar,
    P3,
    P3Bar,
}

impl PrimeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            PrimeLabel::P => "p",
            PrimeLabel::Q => "q",
            PrimeLabel::PBar => "pbar",
            PrimeLabel::QBar => "qbar",
            PrimeLabel::P1 => "p1",
            PrimeLabel::P1Bar => "p1bar",
            PrimeLabel::P2 => "p2",
            PrimeLabel::P2Bar => "p2bar",
            PrimeLabel::P3 => "p3",
            PrimeLabel::P3Bar => "p3bar",
        }
    }

    /// The complex-conjugate prime.
    pub fn conjugate(self) -> PrimeLabel {
        use PrimeLabel::*;
        match self {
            P => PBar,
            PBar => P,
            Q => QBar,
            QBar => Q,
            P1 => P1Bar,
            P1Bar => P1,
            P2 => P2Bar,
            P2Bar => P2,
            P3 => P3Bar,
            P3Bar => P3,
        }
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PrimeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use PrimeLabel::*;
        [P, Q, PBar, QBar, P1, P1Bar, P2, P2Bar, P3, P3Bar]
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelParams {
    pub variant: Variant,
    pub p: Prime,
    pub a: i64,
    pub b: i64,
    /// Ignored (and zero) for the degree-4 variants.
    pub c: i64,
}

impl ModelParams {
    pub fn new(variant: Variant, p: u64, a: i64, b: i64, c: i64) -> Result<Self> {
        let p = Prime::new(p)?;
        let c = if variant.has_c() { c } else { 0 };
        Ok(ModelParams { variant, p, a, b, c })
    }

    pub fn deg4ng(p: u64, a: i64, b: i64) -> Result<Self> {
        Self::new(Variant::Deg4NonGalois, p, a, b, 0)
    }

    pub fn deg4bq(p: u64, a: i64, b: i64) -> Result<Self> {
        Self::new(Variant::Deg4Biquadratic, p, a, b, 0)
    }

    pub fn deg6(p: u64, a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(Variant::Deg6, p, a, b, c)
    }

    /// The exact (not modular) existence constraint that fails, if any.
    pub fn constraint_violation(&self) -> Option<String> {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        match self.variant {
            Variant::Deg4NonGalois => {
                if a == 0 {
                    Some("a = 0".into())
                } else if b == 0 {
                    Some("b = 0".into())
                } else if a + b == 0 {
                    Some("a + b = 0".into())
                } else {
                    None
                }
            }
            Variant::Deg4Biquadratic => {
                if a == 0 {
                    Some("a = 0".into())
                } else if b == 0 {
                    Some("b = 0".into())
                } else if a - b == 0 {
                    Some("a - b = 0".into())
                } else {
                    None
                }
            }
            Variant::Deg6 => {
                let s = c * c + a * b;
                if (a * a + b * c) + s == 0 {
                    Some("(a^2+bc)+(c^2+ab) = 0".into())
                } else if (b * b - a * c) + s == 0 {
                    Some("(b^2-ac)+(c^2+ab) = 0".into())
                } else {
                    None
                }
            }
        }
    }

    pub fn constraints_ok(&self) -> bool {
        self.constraint_violation().is_none()
    }

    pub fn big(&self) -> (BigInt, BigInt, BigInt) {
        (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c))
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.variant.has_c() {
            write!(f, "{} p={} (a,b,c)=({},{},{})", self.variant, self.p, self.a, self.b, self.c)
        } else {
            write!(f, "{} p={} (a,b)=({},{})", self.variant, self.p, self.a, self.b)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeLocalData {
    pub label: PrimeLabel,
    pub inertia_gen: Vec<PLocal>,
    pub second_gen: Vec<PLocal>,
}

#[derive(Debug, Clone)]
pub struct GaloisModel {
    params: ModelParams,
    primes: Vec<PrimeLocalData>,
}

pub(crate) fn ivec(v: &[i128]) -> Vec<PLocal> {
    v.iter().map(|&x| PLocal::from_bigint(BigInt::from(x))).collect()
}

/// Builds the model; with `checked`, rejects parameters violating the
/// existence constraints.
pub fn build_model(params: ModelParams, checked: bool) -> Result<GaloisModel> {
    if checked {
        if let Some(why) = params.constraint_violation() {
            return Err(Error::InconsistentParameters(why));
        }
    }
    let (a, b, c) = (params.a as i128, params.b as i128, params.c as i128);
    use PrimeLabel::*;
    let table: Vec<(PrimeLabel, Vec<i128>, Vec<i128>)> = match params.variant {
        Variant::Deg4NonGalois => vec![
            (P, vec![1, 0, 0], vec![0, 1, 0]),
            (Q, vec![1, a, b], vec![0, 0, 1]),
            (PBar, vec![1, a - b, a + b], vec![0, -1, 0]),
            (QBar, vec![1, -b, a], vec![0, 0, -1]),
        ],
        Variant::Deg4Biquadratic => vec![
            (P, vec![1, 0, 0], vec![0, 1, 0]),
            (Q, vec![1, a, -a], vec![0, 0, 1]),
            (PBar, vec![1, a + b, b - a], vec![0, -1, 0]),
            (QBar, vec![1, b, b], vec![0, 0, -1]),
        ],
        Variant::Deg6 => vec![
            (P1, vec![1, 0, 0, 0], vec![0, 1, 0, 0]),
            (P2Bar, vec![1, a, b, c], vec![0, 0, 1, 0]),
            (P3, vec![1, a - c, a + b, b + c], vec![0, 0, 0, 1]),
            (P1Bar, vec![1, a - b - c, a + b - c, a + b + c], vec![0, -1, 0, 0]),
            (P2, vec![1, -b - c, a - c, a + b], vec![0, 0, -1, 0]),
            (P3Bar, vec![1, -b, -c, a], vec![0, 0, 0, -1]),
        ],
    };
    let primes = table
        .into_iter()
        .map(|(label, i, s)| PrimeLocalData { label, inertia_gen: ivec(&i), second_gen: ivec(&s) })
        .collect();
    Ok(GaloisModel { params, primes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Sigma,
    Tau,
    J,
}

impl Automorphism {
    pub fn as_str(self) -> &'static str {
        match self {
            Automorphism::Sigma => "sigma",
            Automorphism::Tau => "tau",
            Automorphism::J => "J",
        }
    }
}

/// A matrix acting on exponent vectors; column j is the image of basis vector j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismMatrix {
    pub label: Automorphism,
    pub matrix: PMatrix,
}

impl AutomorphismMatrix {
    pub fn apply(&self, v: &[PLocal]) -> Vec<PLocal> {
        self.matrix.mul_vec(v).expect("vector has the ambient length")
    }

    pub fn apply_lattice(&self, l: &Lattice) -> Lattice {
        l.image(&self.matrix).expect("lattice has the ambient rank")
    }
}

impl GaloisModel {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.params.variant
    }

    pub fn prime(&self) -> Prime {
        self.params.p
    }

    pub fn ambient_rank(&self) -> usize {
        self.params.variant.ambient_rank()
    }

    pub fn generator_labels(&self) -> &'static [&'static str] {
        match self.params.variant {
            Variant::Deg6 => &["gamma", "x", "y", "z"],
            _ => &["gamma", "x", "y"],
        }
    }

    pub fn constraints_ok(&self) -> bool {
        self.params.constraints_ok()
    }

    pub fn primes(&self) -> &[PrimeLocalData] {
        &self.primes
    }

    pub fn labels(&self) -> Vec<PrimeLabel> {
        self.primes.iter().map(|d| d.label).collect()
    }

    pub fn prime_data(&self, label: PrimeLabel) -> Result<&PrimeLocalData> {
        self.primes.iter().find(|d| d.label == label).ok_or_else(|| Error::UnknownLabel(label.as_str().to_string()))
    }

    pub fn ambient(&self) -> Lattice {
        Lattice::ambient(self.ambient_rank(), self.prime())
    }

    pub fn lattice(&self, vectors: &[Vec<PLocal>]) -> Lattice {
        Lattice::from_generators(self.ambient_rank(), self.prime(), vectors)
            .expect("model vectors have the ambient length")
    }

    /// Lattice spanned by integer vectors in model coordinates.
    pub fn lattice_i(&self, vectors: &[&[i128]]) -> Lattice {
        let vs: Vec<Vec<PLocal>> = vectors.iter().map(|v| ivec(v)).collect();
        self.lattice(&vs)
    }

    pub fn decomposition_lattice(&self, label: PrimeLabel) -> Result<Lattice> {
        let d = self.prime_data(label)?;
        Ok(self.lattice(&[d.inertia_gen.clone(), d.second_gen.clone()]))
    }

    pub fn inertia_lattice(&self, label: PrimeLabel) -> Result<Lattice> {
        let d = self.prime_data(label)?;
        Ok(self.lattice(std::slice::from_ref(&d.inertia_gen)))
    }

    /// Decomposition lattice for a label known to belong to the model.
    pub fn d(&self, label: PrimeLabel) -> Lattice {
        self.decomposition_lattice(label).expect("label belongs to the model")
    }

    /// Inertia lattice for a label known to belong to the model.
    pub fn i(&self, label: PrimeLabel) -> Lattice {
        self.inertia_lattice(label).expect("label belongs to the model")
    }

    /// Sum of all decomposition lattices.
    pub fn decomposition_sum(&self) -> Lattice {
        let ds: Vec<Lattice> = self.labels().into_iter().map(|l| self.d(l)).collect();
        let refs: Vec<&Lattice> = ds.iter().collect();
        Lattice::sum_all(self.ambient_rank(), self.prime(), &refs).expect("same ambient")
    }

    /// Sum of all inertia lattices; its ambient quotient models A(k).
    pub fn inertia_sum(&self) -> Lattice {
        let is: Vec<Lattice> = self.labels().into_iter().map(|l| self.i(l)).collect();
        let refs: Vec<&Lattice> = is.iter().collect();
        Lattice::sum_all(self.ambient_rank(), self.prime(), &refs).expect("same ambient")
    }

    fn sigma_columns(&self) -> Vec<Vec<i128>> {
        let (a, b, c) = (self.params.a as i128, self.params.b as i128, self.params.c as i128);
        match self.params.variant {
            Variant::Deg4NonGalois => vec![vec![1, a, b], vec![0, 0, 1], vec![0, -1, 0]],
            Variant::Deg4Biquadratic => vec![vec![1, a, -a], vec![0, 0, 1], vec![0, 1, 0]],
            Variant::Deg6 => vec![vec![1, a, b, c], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, -1, 0, 0]],
        }
    }

    fn tau_columns(&self) -> Vec<Vec<i128>> {
        let b = self.params.b as i128;
        vec![vec![1, b, b], vec![0, 0, -1], vec![0, -1, 0]]
    }

    fn columns_matrix(&self, cols: &[Vec<i128>]) -> PMatrix {
        let cols: Vec<Vec<PLocal>> = cols.iter().map(|c| ivec(c)).collect();
        PMatrix::from_columns(self.prime(), self.ambient_rank(), &cols).expect("square action")
    }

    pub fn automorphism_matrix(&self, which: Automorphism) -> Result<AutomorphismMatrix> {
        let sigma = self.columns_matrix(&self.sigma_columns());
        let matrix = match (which, self.params.variant) {
            (Automorphism::Sigma, _) => sigma,
            (Automorphism::Tau, Variant::Deg4Biquadratic) => self.columns_matrix(&self.tau_columns()),
            (Automorphism::Tau, v) => {
                return Err(Error::InvalidAutomorphism { which: "tau".into(), variant: v.to_string() })
            }
            (Automorphism::J, Variant::Deg6) => sigma.pow(3)?,
            (Automorphism::J, Variant::Deg4NonGalois) => sigma.pow(2)?,
            (Automorphism::J, Variant::Deg4Biquadratic) => sigma.mul(&self.columns_matrix(&self.tau_columns()))?,
        };
        Ok(AutomorphismMatrix { label: which, matrix })
    }

    pub fn j(&self) -> AutomorphismMatrix {
        self.automorphism_matrix(Automorphism::J).expect("J exists for every variant")
    }

    pub fn sigma(&self) -> AutomorphismMatrix {
        self.automorphism_matrix(Automorphism::Sigma).expect("sigma exists for every variant")
    }

    /// The σ-image of each prime, as realized by the action on decomposition groups.
    pub fn sigma_successor(&self, label: PrimeLabel) -> PrimeLabel {
        use PrimeLabel::*;
        match (self.params.variant, label) {
            (Variant::Deg4Biquadratic, P) => Q,
            (Variant::Deg4Biquadratic, Q) => P,
            (Variant::Deg4Biquadratic, PBar) => QBar,
            (Variant::Deg4Biquadratic, QBar) => PBar,
            _ => {
                let labels = self.labels();
                let i = labels.iter().position(|&l| l == label).expect("label belongs to the model");
                labels[(i + 1) % labels.len()]
            }
        }
    }
}
