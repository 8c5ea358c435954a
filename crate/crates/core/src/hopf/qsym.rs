//! Quasisymmetric functions in the monomial basis `M_α`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::HopfError;
use crate::partition::Composition;
use crate::symfunc::{Basis, SymFuncError};
use crate::{Rat, SymFunc};

/// A finite combination `Σ c_α M_α`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QSymFunc {
    terms: BTreeMap<Composition, Rat>,
}

impl QSymFunc {
    pub fn zero() -> Self {
        QSymFunc::default()
    }

    pub fn one() -> Self {
        QSymFunc::monomial(Composition::empty())
    }

    pub fn monomial(alpha: Composition) -> Self {
        QSymFunc::from_terms([(alpha, Rat::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Composition, Rat)>) -> Self {
        let mut out = QSymFunc::zero();
        for (a, c) in terms {
            out.add_term(a, c);
        }
        out
    }

    fn add_term(&mut self, alpha: Composition, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Composition, Rat> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &Composition) -> Rat {
        self.terms.get(alpha).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rat) -> QSymFunc {
        QSymFunc::from_terms(self.terms.iter().map(|(a, x)| (a.clone(), x * c)))
    }

    /// Appends a part to every composition in the support.
    pub(crate) fn append_part(&self, part: u32) -> QSymFunc {
        QSymFunc::from_terms(self.terms.iter().map(|(a, c)| {
            let mut parts = a.parts().to_vec();
            parts.push(part);
            (Composition::new(parts).expect("positive parts"), c.clone())
        }))
    }

    /// The character `M_(n) ↦ 1`, `M_∅ ↦ 1`, `M_α ↦ 0` for `ℓ(α) ≥ 2`.
    pub fn character(&self) -> Rat {
        self.terms
            .iter()
            .filter(|(a, _)| a.len() <= 1)
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// `{"basis": "qsym-m", "terms": [{"composition": [..], "num": .., "den": ..}]}`.
    pub fn to_json_value(&self) -> Result<serde_json::Value, SymFuncError> {
        #[derive(Serialize)]
        struct Term<'a> {
            composition: &'a Composition,
            num: i128,
            den: i128,
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| match (c.numer().to_i128(), c.denom().to_i128()) {
                (Some(num), Some(den)) => Ok(Term {
                    composition: a,
                    num,
                    den,
                }),
                _ => Err(SymFuncError::CoefficientOverflow(c.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(serde_json::json!({ "basis": "qsym-m", "terms": terms }))
    }
}

/// Quasi-shuffles of two part sequences, with multiplicity.
fn quasi_shuffle(a: &[u32], b: &[u32], memo: &mut BTreeMap<(usize, usize), Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
    let key = (a.len(), b.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let out = if a.is_empty() {
        vec![b.to_vec()]
    } else if b.is_empty() {
        vec![a.to_vec()]
    } else {
        let mut out = Vec::new();
        let prefix = |first: u32, rest: Vec<Vec<u32>>, out: &mut Vec<Vec<u32>>| {
            for mut w in rest {
                w.insert(0, first);
                out.push(w);
            }
        };
        prefix(a[0], quasi_shuffle(&a[1..], b, memo), &mut out);
        prefix(b[0], quasi_shuffle(a, &b[1..], memo), &mut out);
        prefix(a[0] + b[0], quasi_shuffle(&a[1..], &b[1..], memo), &mut out);
        out
    };
    memo.insert(key, out.clone());
    out
}

impl Mul for &QSymFunc {
    type Output = QSymFunc;
    fn mul(self, rhs: &QSymFunc) -> QSymFunc {
        let mut out = QSymFunc::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let c = ca * cb;
                // suffix lengths determine the sub-problem for fixed a, b
                for w in quasi_shuffle(a.parts(), b.parts(), &mut BTreeMap::new()) {
                    out.add_term(Composition::new(w).expect("positive parts"), c.clone());
                }
            }
        }
        out
    }
}

impl Add for &QSymFunc {
    type Output = QSymFunc;
    fn add(self, rhs: &QSymFunc) -> QSymFunc {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Add for QSymFunc {
    type Output = QSymFunc;
    fn add(self, rhs: QSymFunc) -> QSymFunc {
        &self + &rhs
    }
}

impl fmt::Display for QSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, c)| format!("{c}·M{a}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reads a quasisymmetric function as a symmetric one: succeeds iff the
/// coefficients are constant on rearrangement classes, returning
/// `Σ c_λ m_λ`.
pub fn qsym_to_sym(f: &QSymFunc) -> Result<SymFunc, HopfError> {
    let mut classes: BTreeMap<_, (Composition, Rat)> = BTreeMap::new();
    for (alpha, c) in &f.terms {
        classes
            .entry(alpha.sorted())
            .or_insert_with(|| (alpha.clone(), c.clone()));
    }
    for (lambda, (reference, c)) in &classes {
        for other in Composition::rearrangements(lambda) {
            if f.coefficient(&other) != *c {
                return Err(HopfError::NotSymmetric {
                    left: reference.clone(),
                    right: other,
                });
            }
        }
    }
    Ok(SymFunc::from_basis(
        Basis::M,
        classes.into_iter().map(|(lambda, (_, c))| (lambda, c)),
    ))
}

/// `Σ_{λ} c_λ m_λ ↦ Σ_λ c_λ Σ_{α ~ λ} M_α`.
pub fn sym_to_qsym(f: &SymFunc) -> QSymFunc {
    QSymFunc::from_terms(f.to_basis(Basis::M).terms.into_iter().flat_map(|(lambda, c)| {
        Composition::rearrangements(&lambda)
            .into_iter()
            .map(move |a| (a, c.clone()))
    }))
}
