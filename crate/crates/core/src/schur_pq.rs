//! Schur P- and Q-functions, the map θ, and membership in
//! `Γ = Z[P_1, P_3, P_5, …]`.
//!
//! One-row functions come from `Q_r = Σ_{j=0}^r e_j h_{r-j}` and
//! `P_r = Q_r / 2`. Multi-row `Q_λ` is the Pfaffian of the two-row functions
//!
//! ```text
//! Q_(r,s) = Q_r Q_s + 2 Σ_{i=1}^{s} (-1)^i Q_{r+i} Q_{s-i},    Q_(r,0) = Q_r,
//! ```
//!
//! and `P_λ = 2^{-ℓ(λ)} Q_λ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::RatMatrix;
use crate::partition::{partitions_of, Partition, PartitionFilter, StrictPartition};
use crate::symfunc::{Basis, Expansion, SymFuncError};
use crate::{rat, BigInt, Rat, SymFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("P_0 is not a generator; use 1")]
    ZeroRow,
    #[error("power-sum support contains p{0}, which has an even part")]
    EvenPowerSum(Partition),
    #[error("needs generator P_{needed}, beyond the bound {bound}")]
    GeneratorBoundExceeded { needed: u32, bound: u32 },
    #[error("coefficient {coeff} of P{monomial} is not an integer")]
    NonIntegral { monomial: Partition, coeff: Rat },
    #[error(transparent)]
    Serialization(#[from] SymFuncError),
}

fn memo() -> &'static Mutex<HashMap<Vec<u32>, SymFunc>> {
    static MEMO: OnceLock<Mutex<HashMap<Vec<u32>, SymFunc>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `Q_r = Σ_{j=0}^r e_j h_{r-j}`; `Q_0 = 1`.
pub fn q_row(r: u32) -> SymFunc {
    let key = vec![r];
    if let Some(f) = memo().lock().unwrap().get(&key) {
        return f.clone();
    }
    let f = (0..=r)
        .map(|j| &SymFunc::generator(Basis::E, j) * &SymFunc::generator(Basis::H, r - j))
        .fold(SymFunc::zero(), |a, b| a + b);
    memo().lock().unwrap().insert(key, f.clone());
    f
}

/// `P_r = Q_r / 2` for `r ≥ 1`.
pub fn p_row(r: u32) -> Result<SymFunc, GammaError> {
    if r == 0 {
        return Err(GammaError::ZeroRow);
    }
    Ok(q_row(r).scale(&rat(1, 2)))
}

/// Coefficient of `p_(i)` in the power-sum expansion of `P_i`.
pub fn p_coefficient_check(i: u32) -> Result<Rat, GammaError> {
    let lambda = Partition::from_parts_unsorted(vec![i]);
    Ok(p_row(i)?.coefficient(Basis::P, &lambda))
}

/// The two-row function `Q_(r,s)`, defined for any `r, s ≥ 0` by the
/// recurrence; `Q_(r,0) = Q_r`.
pub fn q_two_row(r: u32, s: u32) -> SymFunc {
    let mut acc = &q_row(r) * &q_row(s);
    for i in 1..=s {
        let term = &q_row(r + i) * &q_row(s - i);
        let c = if i % 2 == 1 { rat(-2, 1) } else { rat(2, 1) };
        acc = acc + term.scale(&c);
    }
    acc
}

/// `Q_λ` as a Pfaffian of two-row functions.
pub fn q_lambda(lambda: &StrictPartition) -> SymFunc {
    let key = lambda.parts().to_vec();
    if key.len() == 1 {
        return q_row(key[0]);
    }
    if let Some(f) = memo().lock().unwrap().get(&key) {
        return f.clone();
    }
    let mut parts = key.clone();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let f = pfaffian(&parts);
    memo().lock().unwrap().insert(key, f.clone());
    f
}

/// Pfaffian of the antisymmetric matrix `(Q_(a_i, a_j))_{i<j}`, expanded
/// along the first row.
fn pfaffian(parts: &[u32]) -> SymFunc {
    if parts.is_empty() {
        return SymFunc::one();
    }
    let mut acc = SymFunc::zero();
    for j in 1..parts.len() {
        let rest: Vec<u32> = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != 0 && i != j)
            .map(|(_, &x)| x)
            .collect();
        let term = &q_two_row(parts[0], parts[j]) * &pfaffian(&rest);
        // sign (-1)^{j+1} for 0-based j
        acc = if j % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

/// `P_λ = 2^{-ℓ(λ)} Q_λ`.
pub fn p_lambda(lambda: &StrictPartition) -> SymFunc {
    let scale = Rat::new(BigInt::one(), BigInt::from(2).pow(lambda.len() as u32));
    q_lambda(lambda).scale(&scale)
}

/// The ring morphism with `θ(p_{2i}) = 0` and `θ(p_{2i+1}) = 2 p_{2i+1}`.
pub fn theta(f: &SymFunc) -> SymFunc {
    let p = f.to_basis(Basis::P);
    let image = p.terms.into_iter().filter(|(l, _)| l.all_parts_odd()).map(|(l, c)| {
        let scale = Rat::from_integer(BigInt::from(2).pow(l.len() as u32));
        (l, c * scale)
    });
    SymFunc::from_basis(Basis::P, image)
}

/// An element of Γ with its integral expansion in monomials of the odd
/// one-row generators `P_ν = P_{ν_1} P_{ν_2} ⋯` (all parts of `ν` odd).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaElement {
    pub sym: SymFunc,
    pub gamma_terms: BTreeMap<Partition, BigInt>,
}

impl GammaElement {
    /// Recomputes the symmetric function from the generator monomials.
    pub fn reconstruct(&self) -> SymFunc {
        self.gamma_terms
            .iter()
            .map(|(nu, c)| generator_monomial(nu).scale(&Rat::from_integer(c.clone())))
            .fold(SymFunc::zero(), |a, b| a + b)
    }

    /// `{"sym": <SymFunc in basis>, "gamma_terms": [{"odd_partition": [..], "coeff": int}]}`.
    pub fn to_json_value(&self, basis: Basis) -> Result<serde_json::Value, GammaError> {
        #[derive(Serialize)]
        struct Term<'a> {
            odd_partition: &'a Partition,
            coeff: i128,
        }
        let terms = self
            .gamma_terms
            .iter()
            .map(|(p, c)| {
                c.to_i128()
                    .map(|coeff| Term {
                        odd_partition: p,
                        coeff,
                    })
                    .ok_or_else(|| SymFuncError::CoefficientOverflow(Rat::from_integer(c.clone())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(serde_json::json!({
            "sym": self.sym.to_basis(basis).to_json_value()?,
            "gamma_terms": terms,
        }))
    }
}

/// `Π_i P_{ν_i}`.
pub fn generator_monomial(nu: &Partition) -> SymFunc {
    nu.parts()
        .iter()
        .map(|&r| p_row(r).expect("positive part"))
        .fold(SymFunc::one(), |a, b| &a * &b)
}

/// Decides membership in Γ (or in `Z[P_1, …, P_bound]`) and returns the
/// generator expansion. Checks, in order: odd power-sum support, integrality
/// of the generator expansion, then the generator bound.
pub fn gamma_expand(f: &SymFunc, generator_bound: Option<u32>) -> Result<GammaElement, GammaError> {
    let p = f.to_basis(Basis::P);
    if let Some(even) = p.terms.keys().find(|l| !l.all_parts_odd()) {
        return Err(GammaError::EvenPowerSum(even.clone()));
    }
    let mut gamma_terms = BTreeMap::new();
    for d in f.degrees() {
        let odd = partitions_of(d, PartitionFilter::odd());
        // rows: P_ν in p-coordinates restricted to odd partitions of d
        let rows: Vec<Vec<Rat>> = odd
            .iter()
            .map(|nu| {
                let e = generator_monomial(nu).to_basis(Basis::P);
                odd.iter().map(|l| e.coefficient(l)).collect()
            })
            .collect();
        let inv = RatMatrix::from_rows(rows)
            .inverse()
            .expect("odd generator monomials are a basis");
        let target: Vec<Rat> = odd.iter().map(|l| p.coefficient(l)).collect();
        for (nu, c) in odd.iter().zip(inv.left_apply(&target)) {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(GammaError::NonIntegral {
                    monomial: nu.clone(),
                    coeff: c,
                });
            }
            gamma_terms.insert(nu.clone(), c.to_integer());
        }
    }
    if let Some(bound) = generator_bound {
        if let Some(needed) = gamma_terms.keys().map(Partition::max_part).filter(|&m| m > bound).max() {
            return Err(GammaError::GeneratorBoundExceeded { needed, bound });
        }
    }
    Ok(GammaElement {
        sym: f.clone(),
        gamma_terms,
    })
}

/// One line of the P-positivity report.
#[derive(Debug, Clone)]
pub struct PositivityItem {
    pub lambda: StrictPartition,
    pub schur: Expansion,
    pub integral: bool,
    pub nonnegative: bool,
}

impl PositivityItem {
    pub fn passed(&self) -> bool {
        self.integral && self.nonnegative
    }

    pub fn to_json_value(&self) -> Result<serde_json::Value, SymFuncError> {
        Ok(serde_json::json!({
            "lambda": self.lambda,
            "schur": self.schur.to_json_value()?,
            "integral": self.integral,
            "nonnegative": self.nonnegative,
        }))
    }
}

/// Schur expansion of `P_λ` for every strict `λ` with `1 ≤ |λ| ≤ max_degree`.
pub fn verify_p_positivity(max_degree: usize) -> Vec<PositivityItem> {
    (1..=max_degree)
        .flat_map(|d| partitions_of(d, PartitionFilter::strict()))
        .map(|l| {
            let lambda = StrictPartition::try_from(l).expect("strict by construction");
            let schur = p_lambda(&lambda).to_basis(Basis::S);
            PositivityItem {
                integral: schur.is_integral(),
                nonnegative: schur.is_nonnegative(),
                lambda,
                schur,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn schur(terms: &[(&[u32], i64)]) -> BTreeMap<Partition, Rat> {
        terms.iter().map(|(l, c)| (p(l), rat(*c, 1))).collect()
    }

    #[test]
    fn q_row_examples() {
        assert_eq!(q_row(1), SymFunc::h(p(&[1])).scale(&rat(2, 1)));
        assert_eq!(q_row(0), SymFunc::one());
        let q2 = q_row(2);
        assert_eq!(q2.to_basis(Basis::M).terms, schur(&[(&[2], 2), (&[1, 1], 4)]));
        assert_eq!(q2, SymFunc::p(p(&[1, 1])).scale(&rat(2, 1)));
    }

    #[test]
    fn p_row_examples() {
        assert_eq!(p_row(1).unwrap(), SymFunc::h(p(&[1])));
        assert_eq!(
            p_row(2).unwrap().to_basis(Basis::M).terms,
            schur(&[(&[2], 1), (&[1, 1], 2)])
        );
        assert_eq!(
            p_row(3).unwrap().to_basis(Basis::S).terms,
            schur(&[(&[3], 1), (&[2, 1], 1), (&[1, 1, 1], 1)])
        );
        assert_eq!(p_row(0), Err(GammaError::ZeroRow));
    }

    #[test]
    fn p_coefficient_examples() {
        assert_eq!(p_coefficient_check(1).unwrap(), rat(1, 1));
        assert_eq!(p_coefficient_check(3).unwrap(), rat(1, 3));
        assert_eq!(p_coefficient_check(5).unwrap(), rat(1, 5));
        // even rows are computable too
        assert!(p_coefficient_check(2).is_ok());
    }

    #[test]
    fn q_lambda_examples() {
        assert_eq!(q_lambda(&sp(&[2, 1])).to_basis(Basis::S).terms, schur(&[(&[2, 1], 4)]));
        for r in 1..=5 {
            assert_eq!(q_lambda(&sp(&[r])), q_row(r));
        }
        assert_eq!(q_lambda(&sp(&[])), SymFunc::one());
    }

    #[test]
    fn p_lambda_examples() {
        assert_eq!(p_lambda(&sp(&[2, 1])), SymFunc::s(p(&[2, 1])));
        assert_eq!(p_lambda(&sp(&[3])), p_row(3).unwrap());
        assert_eq!(p_lambda(&sp(&[1])), SymFunc::h(p(&[1])));
        // P_(3,2,1) = s_(3,2,1)
        assert_eq!(p_lambda(&sp(&[3, 2, 1])), SymFunc::s(p(&[3, 2, 1])));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&SymFunc::p(p(&[2]))), SymFunc::zero());
        assert_eq!(theta(&SymFunc::p(p(&[3]))), SymFunc::p(p(&[3])).scale(&rat(2, 1)));
        assert_eq!(theta(&SymFunc::h(p(&[2]))), q_row(2));
        assert_eq!(theta(&SymFunc::one()), SymFunc::one());
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_expand(&p_row(3).unwrap(), None).unwrap();
        assert_eq!(g.gamma_terms, BTreeMap::from([(p(&[3]), BigInt::from(1))]));
        // s_21 = P_1^3 - P_3
        let g = gamma_expand(&p_lambda(&sp(&[2, 1])), None).unwrap();
        assert_eq!(
            g.gamma_terms,
            BTreeMap::from([(p(&[3]), BigInt::from(-1)), (p(&[1, 1, 1]), BigInt::from(1))])
        );
        assert_eq!(g.reconstruct(), g.sym);
        assert_eq!(
            gamma_expand(&SymFunc::s(p(&[2])), None),
            Err(GammaError::EvenPowerSum(p(&[2])))
        );
        assert_eq!(
            gamma_expand(&p_row(3).unwrap(), Some(1)),
            Err(GammaError::GeneratorBoundExceeded { needed: 3, bound: 1 })
        );
        // p_3 = 3 P_3 - 2 P_1^3, but p_3 / 2 is not integral
        let g = gamma_expand(&SymFunc::p(p(&[3])), None).unwrap();
        assert_eq!(
            g.gamma_terms,
            BTreeMap::from([(p(&[3]), BigInt::from(3)), (p(&[1, 1, 1]), BigInt::from(-2))])
        );
        assert!(matches!(
            gamma_expand(&SymFunc::p(p(&[3])).scale(&rat(1, 2)), None),
            Err(GammaError::NonIntegral { .. })
        ));
    }

    #[test]
    fn positivity_report_sizes() {
        assert!(verify_p_positivity(0).is_empty());
        let r = verify_p_positivity(3);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(PositivityItem::passed));
    }
}
