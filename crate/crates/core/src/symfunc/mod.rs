//! Graded symmetric functions with exact rational coefficients.
//!
//! A [`SymFunc`] is stored in the complete homogeneous basis `h_λ`, which is
//! multiplicative and has the simplest coproduct. Other bases are reached
//! through the per-degree matrices in [`transition`]; an [`Expansion`] is the
//! coordinate vector of a function in one named basis.

pub mod transition;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::RatMatrix;
use crate::partition::Partition;
use crate::{BigInt, Rat};

pub(crate) type HTerms = BTreeMap<Partition, Rat>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "h")]
    H,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "s")]
    S,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S];

    pub fn tag(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = SymFuncError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "p" => Ok(Basis::P),
            "s" => Ok(Basis::S),
            _ => Err(SymFuncError::UnknownBasis(s.to_string())),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymFuncError {
    #[error("unknown basis {0:?}")]
    UnknownBasis(String),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("coefficient {0} does not fit the serialization range")]
    CoefficientOverflow(Rat),
    #[error("term for {0} has a non-positive denominator")]
    BadDenominator(Partition),
    #[error("{vars} variables cannot represent degree {degree} faithfully")]
    TooFewVariables { vars: usize, degree: usize },
}

/// A symmetric function, stored as its h-basis coefficients. Zero
/// coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymFunc {
    terms: HTerms,
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc::default()
    }

    pub fn one() -> Self {
        SymFunc::from_h_terms([(Partition::empty(), Rat::one())])
    }

    pub fn constant(c: Rat) -> Self {
        SymFunc::from_h_terms([(Partition::empty(), c)])
    }

    pub fn from_h_terms(terms: impl IntoIterator<Item = (Partition, Rat)>) -> Self {
        let mut out = HTerms::new();
        for (p, c) in terms {
            *out.entry(p).or_insert_with(Rat::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        SymFunc { terms: out }
    }

    /// `Σ c_λ B_λ` for the given basis.
    pub fn from_basis(basis: Basis, terms: impl IntoIterator<Item = (Partition, Rat)>) -> Self {
        if basis == Basis::H {
            return SymFunc::from_h_terms(terms);
        }
        let mut by_degree: BTreeMap<usize, Vec<(Partition, Rat)>> = BTreeMap::new();
        for (p, c) in terms {
            by_degree.entry(p.size()).or_default().push((p, c));
        }
        let mut out = HTerms::new();
        for (d, items) in by_degree {
            let ix = transition::degree_index(d);
            let mut coords = vec![Rat::zero(); ix.len()];
            for (p, c) in items {
                coords[ix.position(&p).unwrap()] += c;
            }
            let m = transition::transition(d, basis, Basis::H);
            collect_row(&mut out, &ix.partitions, m.left_apply(&coords));
        }
        SymFunc { terms: out }
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        SymFunc::from_basis(basis, [(lambda, Rat::one())])
    }

    pub fn h(lambda: Partition) -> Self {
        SymFunc::basis_element(Basis::H, lambda)
    }

    pub fn e(lambda: Partition) -> Self {
        SymFunc::basis_element(Basis::E, lambda)
    }

    pub fn p(lambda: Partition) -> Self {
        SymFunc::basis_element(Basis::P, lambda)
    }

    pub fn m(lambda: Partition) -> Self {
        SymFunc::basis_element(Basis::M, lambda)
    }

    pub fn s(lambda: Partition) -> Self {
        SymFunc::basis_element(Basis::S, lambda)
    }

    /// The one-part generator `B_(n)`; `B_0 = 1`.
    pub fn generator(basis: Basis, n: u32) -> Self {
        if n == 0 {
            return SymFunc::one();
        }
        SymFunc::basis_element(basis, Partition::from_parts_unsorted(vec![n]))
    }

    pub fn h_terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Partition::size).collect();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn component(&self, degree: usize) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.size() == degree)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> SymFunc {
        SymFunc::from_h_terms(self.terms.iter().map(|(p, x)| (p.clone(), x * c)))
    }

    /// Coordinates in `basis`.
    pub fn to_basis(&self, basis: Basis) -> Expansion {
        if basis == Basis::H {
            return Expansion {
                basis,
                terms: self.terms.clone(),
            };
        }
        let mut out = HTerms::new();
        for d in self.degrees() {
            let ix = transition::degree_index(d);
            let mut coords = vec![Rat::zero(); ix.len()];
            for (p, c) in self.terms.range(first_of_degree(d)..) {
                if p.size() != d {
                    break;
                }
                coords[ix.position(p).unwrap()] = c.clone();
            }
            let m = transition::transition(d, Basis::H, basis);
            collect_row(&mut out, &ix.partitions, m.left_apply(&coords));
        }
        Expansion { basis, terms: out }
    }

    pub fn coefficient(&self, basis: Basis, lambda: &Partition) -> Rat {
        self.to_basis(basis).coefficient(lambda)
    }

    /// `Δ(h_λ) = Π_i Σ_j h_j ⊗ h_{λ_i - j}`, extended linearly.
    pub fn coproduct(&self) -> Tensor {
        let mut out = Tensor::zero();
        for (lambda, c) in &self.terms {
            let mut acc = Tensor::one();
            for &part in lambda.parts() {
                acc = &acc * &coproduct_of_h(part);
            }
            out = out + acc.scale(c);
        }
        out
    }

    /// The involution sending `h_λ` to `e_λ`.
    pub fn omega(&self) -> SymFunc {
        SymFunc::from_basis(Basis::E, self.terms.clone())
    }

    /// Hall inner product, computed from the duality `⟨h_λ, m_μ⟩ = δ_{λμ}`.
    pub fn hall_inner(&self, other: &SymFunc) -> Rat {
        let m = other.to_basis(Basis::M);
        self.terms
            .iter()
            .map(|(p, c)| c * m.coefficient(p))
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// The character with `χ(h_i) = 1`, i.e. evaluation at `(1, 0, 0, …)`.
    pub fn character(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, b| a + b)
    }

    /// Ring morphism given on one-part generators `h_n ↦ image(n)`.
    pub fn substitute_h(&self, mut image: impl FnMut(u32) -> SymFunc) -> SymFunc {
        let mut memo: BTreeMap<u32, SymFunc> = BTreeMap::new();
        let mut out = SymFunc::zero();
        for (lambda, c) in &self.terms {
            let mut acc = SymFunc::one();
            for &part in lambda.parts() {
                let g = memo.entry(part).or_insert_with(|| image(part));
                acc = &acc * &*g;
            }
            out = out + acc.scale(c);
        }
        out
    }
}

fn first_of_degree(d: usize) -> Partition {
    if d == 0 {
        Partition::empty()
    } else {
        Partition::from_parts_unsorted(vec![d as u32])
    }
}

fn collect_row(out: &mut HTerms, partitions: &[Partition], row: Vec<Rat>) {
    for (p, c) in partitions.iter().zip(row) {
        if !c.is_zero() {
            out.insert(p.clone(), c);
        }
    }
}

fn coproduct_of_h(n: u32) -> Tensor {
    let h = |i: u32| {
        if i == 0 {
            Partition::empty()
        } else {
            Partition::from_parts_unsorted(vec![i])
        }
    };
    Tensor::from_terms((0..=n).map(|j| ((h(j), h(n - j)), Rat::one())))
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_basis(Basis::H), f)
    }
}

impl Add for SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: SymFunc) -> SymFunc {
        &self + &rhs
    }
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        SymFunc::from_h_terms(self.terms.iter().chain(&rhs.terms).map(|(p, c)| (p.clone(), c.clone())))
    }
}

impl Sub for SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: SymFunc) -> SymFunc {
        &self - &rhs
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        self + &(-rhs)
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        SymFunc {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}

impl Neg for SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        -&self
    }
}

impl Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        let mut out = HTerms::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                *out.entry(a.merge(b)).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        SymFunc { terms: out }
    }
}

impl Mul for SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: SymFunc) -> SymFunc {
        &self * &rhs
    }
}

/// An element of `Sym ⊗ Sym`, both legs in the h basis.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Tensor {
    terms: BTreeMap<(Partition, Partition), Rat>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn one() -> Self {
        Tensor::from_terms([((Partition::empty(), Partition::empty()), Rat::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((Partition, Partition), Rat)>) -> Self {
        let mut out = BTreeMap::new();
        for (k, c) in terms {
            *out.entry(k).or_insert_with(Rat::zero) += c;
        }
        out.retain(|_, c: &mut Rat| !c.is_zero());
        Tensor { terms: out }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &SymFunc, b: &SymFunc) -> Self {
        Tensor::from_terms(
            a.terms
                .iter()
                .flat_map(|(pa, ca)| b.terms.iter().map(move |(pb, cb)| ((pa.clone(), pb.clone()), ca * cb))),
        )
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Tensor {
        Tensor::from_terms(self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    /// `(f ⊗ g)` applied leg-wise; `f` and `g` need only be linear.
    pub fn map_legs(&self, f: impl Fn(&SymFunc) -> SymFunc, g: impl Fn(&SymFunc) -> SymFunc) -> Tensor {
        let mut out = Tensor::zero();
        for ((a, b), c) in &self.terms {
            let fa = f(&SymFunc::h(a.clone()));
            let gb = g(&SymFunc::h(b.clone()));
            out = out + Tensor::pure(&fa, &gb).scale(c);
        }
        out
    }

    /// Applies the counit (degree-0 projection) to the right leg.
    pub fn counit_right(&self) -> SymFunc {
        SymFunc::from_h_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| b.is_empty())
                .map(|((a, _), c)| (a.clone(), c.clone())),
        )
    }

    /// Applies the counit to the left leg.
    pub fn counit_left(&self) -> SymFunc {
        SymFunc::from_h_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| a.is_empty())
                .map(|((_, b), c)| (b.clone(), c.clone())),
        )
    }

    /// Swaps the two legs.
    pub fn flip(&self) -> Tensor {
        Tensor::from_terms(self.terms.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())))
    }
}

impl Add for Tensor {
    type Output = Tensor;
    fn add(self, rhs: Tensor) -> Tensor {
        Tensor::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Sub for Tensor {
    type Output = Tensor;
    fn sub(self, rhs: Tensor) -> Tensor {
        self + rhs.scale(&-Rat::one())
    }
}

impl Mul for &Tensor {
    type Output = Tensor;
    fn mul(self, rhs: &Tensor) -> Tensor {
        let mut out = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                *out.entry((a1.merge(a2), b1.merge(b2))).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        Tensor::from_terms(out)
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("{c}·h{a}⊗h{b}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Coordinates of a symmetric function in one named basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expansion {
    pub basis: Basis,
    pub terms: BTreeMap<Partition, Rat>,
}

impl Expansion {
    pub fn new(basis: Basis, terms: impl IntoIterator<Item = (Partition, Rat)>) -> Self {
        let mut t = BTreeMap::new();
        for (p, c) in terms {
            *t.entry(p).or_insert_with(Rat::zero) += c;
        }
        t.retain(|_, c: &mut Rat| !c.is_zero());
        Expansion { basis, terms: t }
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rat {
        self.terms.get(lambda).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn to_symfunc(&self) -> SymFunc {
        SymFunc::from_basis(self.basis, self.terms.clone())
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c}·{}{p}", self.basis))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SerTerm {
    pub partition: Partition,
    pub num: i128,
    pub den: i128,
}

#[derive(Serialize, Deserialize)]
struct SerExpansion {
    basis: Basis,
    terms: Vec<SerTerm>,
}

pub(crate) fn to_ser_term(p: &Partition, c: &Rat) -> Result<SerTerm, SymFuncError> {
    let (Some(num), Some(den)) = (c.numer().to_i128(), c.denom().to_i128()) else {
        return Err(SymFuncError::CoefficientOverflow(c.clone()));
    };
    Ok(SerTerm {
        partition: p.clone(),
        num,
        den,
    })
}

pub(crate) fn from_ser_term(t: SerTerm) -> Result<(Partition, Rat), SymFuncError> {
    if t.den <= 0 {
        return Err(SymFuncError::BadDenominator(t.partition));
    }
    Ok((t.partition, Rat::new(BigInt::from(t.num), BigInt::from(t.den))))
}

impl Expansion {
    /// `{"basis": ..., "terms": [{"partition": [..], "num": .., "den": ..}]}`,
    /// terms sorted by degree then reverse lexicographic order.
    pub fn to_json_value(&self) -> Result<serde_json::Value, SymFuncError> {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| to_ser_term(p, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(serde_json::to_value(SerExpansion {
            basis: self.basis,
            terms,
        })
        .expect("plain data serializes"))
    }

    pub fn to_json(&self) -> Result<String, SymFuncError> {
        Ok(self.to_json_value()?.to_string())
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self, ExpansionParseError> {
        let raw: SerExpansion = serde_json::from_value(v)?;
        let terms = raw
            .terms
            .into_iter()
            .map(from_ser_term)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Expansion::new(raw.basis, terms))
    }

    pub fn from_json(s: &str) -> Result<Self, ExpansionParseError> {
        Expansion::from_json_value(serde_json::from_str(s)?)
    }
}

#[derive(Debug, Error)]
pub enum ExpansionParseError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] SymFuncError),
}

/// Basis of the primitive elements of degree `d`: the kernel of
/// `f ↦ Δ(f) - f⊗1 - 1⊗f`, computed as an exact null space over the h basis.
pub fn primitive_basis(d: usize) -> Result<Vec<SymFunc>, SymFuncError> {
    if d == 0 {
        return Err(SymFuncError::ZeroDegree);
    }
    let ix = transition::degree_index(d);
    let images: Vec<Tensor> = ix
        .partitions
        .iter()
        .map(|lambda| {
            let f = SymFunc::h(lambda.clone());
            f.coproduct() - Tensor::pure(&f, &SymFunc::one()) - Tensor::pure(&SymFunc::one(), &f)
        })
        .collect();
    let mut keys: Vec<(Partition, Partition)> = images.iter().flat_map(|t| t.terms.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut m = RatMatrix::zeros(keys.len(), ix.len());
    for (col, img) in images.iter().enumerate() {
        for (k, c) in &img.terms {
            let row = keys.binary_search(k).unwrap();
            m[(row, col)] = c.clone();
        }
    }
    Ok(m.null_space()
        .into_iter()
        .map(|v| SymFunc::from_h_terms(ix.partitions.iter().cloned().zip(v)))
        .collect())
}

/// Number of monomials in free commuting generators of the given degrees
/// that have total degree `d`. Each listed degree is a separate generator.
///
/// # Panics
/// If a generator degree is zero.
pub fn subalgebra_rank(generator_degrees: &[usize], d: usize) -> u64 {
    assert!(
        generator_degrees.iter().all(|&g| g > 0),
        "generator degrees must be positive"
    );
    let mut ways = vec![0u64; d + 1];
    ways[0] = 1;
    for &g in generator_degrees {
        for n in g..=d {
            ways[n] += ways[n - g];
        }
    }
    ways[d]
}
