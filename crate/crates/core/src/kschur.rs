//! k-Schur functions at `t = 1`.
//!
//! The basis `{s^{(k)}_λ : λ k-bounded}` of `Λ_(k) = Q[h_1, …, h_k]` is
//! defined through the weak Pieri rule
//!
//! ```text
//! h_r · s^{(k)}_λ = Σ s^{(k)}_μ   over weak horizontal r-strips μ/λ,
//! ```
//!
//! iterated over the parts of `λ` from `{∅: 1}`. This expresses each `h_λ`
//! as `s^{(k)}_λ` plus dominance-larger terms, and the resulting unitriangular
//! matrix is inverted exactly.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cores::{check_bounded, is_weak_horizontal_strip};
use crate::linalg::RatMatrix;
use crate::partition::{partitions_of, Dominance, Partition, PartitionError, PartitionFilter};
use crate::symfunc::{to_ser_term, Basis, Expansion, SymFuncError};
use crate::{Rat, SymFunc};

pub type Coords = BTreeMap<Partition, Rat>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KSchurError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("h_{r} is not a generator of Λ_({k})")]
    StripTooLong { r: usize, k: usize },
    #[error("k = {k}, degree {degree}: h{lambda} has entry {entry} at {mu}, breaking unitriangularity")]
    NotUnitriangular {
        k: usize,
        degree: usize,
        lambda: Partition,
        mu: Partition,
        entry: Box<Rat>,
    },
    #[error("k = {k}, degree {degree}: inverse transition matrix is not integral")]
    NotIntegral { k: usize, degree: usize },
    #[error("degree {degree} exceeds the built maximum {max_degree}")]
    DegreeExceeded { degree: usize, max_degree: usize },
    #[error("not in Λ_({k}): h-support contains h{witness}")]
    NotInSubalgebra { k: usize, witness: Partition },
    #[error("expected a single k-Schur term with coefficient 1, got {0:?}")]
    NotSingleTerm(Coords),
    #[error("branching needs bases for k and k+1, got {lower} and {upper}")]
    LevelMismatch { lower: usize, upper: usize },
    #[error(transparent)]
    Serialization(#[from] SymFuncError),
}

/// Image of multiplication by `h_r` in k-Schur coordinates.
pub fn pieri_step(coeffs: &Coords, r: usize, k: usize) -> Result<Coords, KSchurError> {
    if k == 0 {
        return Err(PartitionError::ZeroK.into());
    }
    if r > k {
        return Err(KSchurError::StripTooLong { r, k });
    }
    let mut out = Coords::new();
    for (lambda, c) in coeffs {
        check_bounded(lambda, k)?;
        for mu in horizontal_strips(lambda, r, k) {
            if is_weak_horizontal_strip(lambda, &mu, k, r)? {
                *out.entry(mu).or_insert_with(Rat::zero) += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Every `μ ⊇ λ` with `μ_1 ≤ k` such that `μ/λ` is a horizontal `r`-strip.
fn horizontal_strips(lambda: &Partition, r: usize, k: usize) -> Vec<Partition> {
    fn go(lambda: &Partition, row: usize, remaining: u32, k: u32, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if row > lambda.len() + 1 {
            if remaining == 0 {
                out.push(Partition::from_parts_unsorted(parts.clone()));
            }
            return;
        }
        let base = lambda.row(row);
        let cap = if row == 1 { k } else { lambda.row(row - 1) };
        for add in 0..=remaining.min(cap.saturating_sub(base)) {
            parts.push(base + add);
            go(lambda, row + 1, remaining - add, k, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 1, r as u32, k as u32, &mut Vec::new(), &mut out);
    out
}

/// Transition data for one degree of one `k`.
#[derive(Debug)]
pub struct KSchurBlock {
    pub degree: usize,
    pub partitions: Vec<Partition>,
    position: HashMap<Partition, usize>,
    /// Row `λ`: `h_λ` in k-Schur coordinates.
    pub h_to_kschur: RatMatrix,
    /// Row `λ`: `s^{(k)}_λ` in h coordinates.
    pub kschur_to_h: RatMatrix,
}

impl KSchurBlock {
    pub fn position(&self, lambda: &Partition) -> Option<usize> {
        self.position.get(lambda).copied()
    }

    fn row_coords(&self, m: &RatMatrix, i: usize) -> Coords {
        self.partitions
            .iter()
            .zip(m.row(i))
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect()
    }
}

#[derive(Debug)]
pub struct KSchurBasis {
    k: usize,
    max_degree: usize,
    blocks: Vec<KSchurBlock>,
}

impl KSchurBasis {
    pub fn build(k: usize, max_degree: usize) -> Result<Self, KSchurError> {
        if k == 0 {
            return Err(PartitionError::ZeroK.into());
        }
        let blocks = (0..=max_degree)
            .map(|d| build_block(k, d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(KSchurBasis { k, max_degree, blocks })
    }

    /// Shared basis for `k` covering at least `max_degree`.
    pub fn cached(k: usize, max_degree: usize) -> Result<Arc<KSchurBasis>, KSchurError> {
        static BASES: OnceLock<RwLock<HashMap<usize, Arc<KSchurBasis>>>> = OnceLock::new();
        let bases = BASES.get_or_init(Default::default);
        if let Some(b) = bases.read().unwrap().get(&k) {
            if b.max_degree >= max_degree {
                return Ok(Arc::clone(b));
            }
        }
        let built = Arc::new(KSchurBasis::build(k, max_degree)?);
        let mut w = bases.write().unwrap();
        let entry = w.entry(k).or_insert_with(|| Arc::clone(&built));
        if entry.max_degree < built.max_degree {
            *entry = Arc::clone(&built);
        }
        Ok(Arc::clone(entry))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn block(&self, degree: usize) -> Result<&KSchurBlock, KSchurError> {
        self.blocks.get(degree).ok_or(KSchurError::DegreeExceeded {
            degree,
            max_degree: self.max_degree,
        })
    }

    fn locate(&self, lambda: &Partition) -> Result<(&KSchurBlock, usize), KSchurError> {
        check_bounded(lambda, self.k)?;
        let block = self.block(lambda.size())?;
        Ok((block, block.position(lambda).expect("bounded partition is indexed")))
    }

    /// `h_λ` in k-Schur coordinates.
    pub fn h_in_kschur(&self, lambda: &Partition) -> Result<Coords, KSchurError> {
        let (block, i) = self.locate(lambda)?;
        Ok(block.row_coords(&block.h_to_kschur, i))
    }

    /// `s^{(k)}_λ` in the h basis.
    pub fn kschur_in_h(&self, lambda: &Partition) -> Result<SymFunc, KSchurError> {
        let (block, i) = self.locate(lambda)?;
        Ok(SymFunc::from_h_terms(block.row_coords(&block.kschur_to_h, i)))
    }

    pub fn kschur_in_schur(&self, lambda: &Partition) -> Result<Expansion, KSchurError> {
        Ok(self.kschur_in_h(lambda)?.to_basis(Basis::S))
    }

    /// Coordinates of `f` in this basis; fails unless the h-support of `f` is
    /// `k`-bounded.
    pub fn expand(&self, f: &SymFunc) -> Result<Coords, KSchurError> {
        if let Some(witness) = f.h_terms().keys().find(|p| !p.is_bounded(self.k)) {
            return Err(KSchurError::NotInSubalgebra {
                k: self.k,
                witness: witness.clone(),
            });
        }
        let mut out = Coords::new();
        for (mu, c) in f.h_terms() {
            for (nu, x) in self.h_in_kschur(mu)? {
                *out.entry(nu).or_insert_with(Rat::zero) += c * x;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `ω(s^{(k)}_λ)`, which must be a single k-Schur function.
    pub fn omega_on(&self, lambda: &Partition) -> Result<(Partition, Rat), KSchurError> {
        let image = self.expand(&self.kschur_in_h(lambda)?.omega())?;
        match image.iter().next() {
            Some((mu, c)) if image.len() == 1 && c.is_one() => Ok((mu.clone(), c.clone())),
            _ => Err(KSchurError::NotSingleTerm(image)),
        }
    }

    /// `Δ(s^{(k)}_λ)` in k-Schur ⊗ k-Schur coordinates.
    pub fn coproduct_coords(&self, lambda: &Partition) -> Result<BTreeMap<(Partition, Partition), Rat>, KSchurError> {
        let delta = self.kschur_in_h(lambda)?.coproduct();
        let mut out = BTreeMap::new();
        for ((a, b), c) in delta.terms() {
            let left = self.h_in_kschur(a)?;
            let right = self.h_in_kschur(b)?;
            for (la, xa) in &left {
                for (lb, xb) in &right {
                    *out.entry((la.clone(), lb.clone())).or_insert_with(Rat::zero) += c * xa * xb;
                }
            }
        }
        out.retain(|_, c: &mut Rat| !c.is_zero());
        Ok(out)
    }

    /// Golden-file record for one degree: the partition header and both
    /// integer matrices.
    pub fn golden_json(&self, degree: usize) -> Result<serde_json::Value, KSchurError> {
        #[derive(Serialize)]
        struct Golden<'a> {
            k: usize,
            degree: usize,
            partitions: &'a [Partition],
            h_to_kschur: Vec<Vec<i128>>,
            kschur_to_h: Vec<Vec<i128>>,
        }
        let block = self.block(degree)?;
        let ints = |m: &RatMatrix| -> Vec<Vec<i128>> {
            m.to_rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| num::ToPrimitive::to_i128(&x.to_integer()).unwrap())
                        .collect()
                })
                .collect()
        };
        Ok(serde_json::to_value(Golden {
            k: self.k,
            degree,
            partitions: &block.partitions,
            h_to_kschur: ints(&block.h_to_kschur),
            kschur_to_h: ints(&block.kschur_to_h),
        })
        .expect("plain data serializes"))
    }
}

fn build_block(k: usize, degree: usize) -> Result<KSchurBlock, KSchurError> {
    let partitions = partitions_of(degree, PartitionFilter::bounded(k));
    let position: HashMap<Partition, usize> = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = partitions.len();
    let mut h_to_kschur = RatMatrix::zeros(n, n);
    for (i, lambda) in partitions.iter().enumerate() {
        let mut coords = Coords::from([(Partition::empty(), Rat::one())]);
        for &part in lambda.parts() {
            coords = pieri_step(&coords, part as usize, k)?;
        }
        for (mu, c) in coords {
            let ok = if &mu == lambda {
                c.is_one()
            } else {
                lambda.dominance(&mu)? == Dominance::LessOrEqual
            };
            if !ok {
                return Err(KSchurError::NotUnitriangular {
                    k,
                    degree,
                    lambda: lambda.clone(),
                    mu,
                    entry: Box::new(c),
                });
            }
            h_to_kschur[(i, position[&mu])] = c;
        }
    }
    let kschur_to_h = h_to_kschur
        .unitriangular_inverse()
        .expect("dominance-respecting unit diagonal implies lower unitriangular");
    if !h_to_kschur.is_integral() || !kschur_to_h.is_integral() {
        return Err(KSchurError::NotIntegral { k, degree });
    }
    Ok(KSchurBlock {
        degree,
        partitions,
        position,
        h_to_kschur,
        kschur_to_h,
    })
}

/// k-Schur coordinates tagged with their level, for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSchurExpansion {
    pub k: usize,
    pub terms: Coords,
}

impl KSchurExpansion {
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// `{"basis": "kschur", "k": K, "terms": [...]}` with the same term shape
    /// as symmetric-function serialization.
    pub fn to_json_value(&self) -> Result<serde_json::Value, KSchurError> {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| to_ser_term(p, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(serde_json::json!({
            "basis": "kschur",
            "k": self.k,
            "terms": terms,
        }))
    }
}

pub fn build_basis(k: usize, max_degree: usize) -> Result<Arc<KSchurBasis>, KSchurError> {
    KSchurBasis::cached(k, max_degree)
}

pub fn kschur_in_h(k: usize, lambda: &Partition) -> Result<SymFunc, KSchurError> {
    check_bounded(lambda, k)?;
    KSchurBasis::cached(k, lambda.size())?.kschur_in_h(lambda)
}

pub fn kschur_in_schur(k: usize, lambda: &Partition) -> Result<Expansion, KSchurError> {
    Ok(kschur_in_h(k, lambda)?.to_basis(Basis::S))
}

/// Coordinates of `s^{(k)}_λ` in the `(k+1)`-Schur basis.
pub fn branch_between(
    lower: &KSchurBasis,
    upper: &KSchurBasis,
    lambda: &Partition,
) -> Result<KSchurExpansion, KSchurError> {
    if upper.k != lower.k + 1 {
        return Err(KSchurError::LevelMismatch {
            lower: lower.k,
            upper: upper.k,
        });
    }
    let f = lower.kschur_in_h(lambda)?;
    Ok(KSchurExpansion {
        k: upper.k,
        terms: upper.expand(&f)?,
    })
}

pub fn branch(k: usize, lambda: &Partition) -> Result<KSchurExpansion, KSchurError> {
    check_bounded(lambda, k)?;
    let d = lambda.size();
    branch_between(&*KSchurBasis::cached(k, d)?, &*KSchurBasis::cached(k + 1, d)?, lambda)
}

pub fn expand_in_kschur(f: &SymFunc, k: usize) -> Result<KSchurExpansion, KSchurError> {
    let basis = KSchurBasis::cached(k, f.max_degree())?;
    Ok(KSchurExpansion {
        k,
        terms: basis.expand(f)?,
    })
}

pub fn omega_on_kschur(k: usize, lambda: &Partition) -> Result<(Partition, Rat), KSchurError> {
    check_bounded(lambda, k)?;
    KSchurBasis::cached(k, lambda.size())?.omega_on(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn coords(terms: &[(&[u32], i64)]) -> Coords {
        terms.iter().map(|(l, c)| (p(l), rat(*c, 1))).collect()
    }

    #[test]
    fn pieri_examples() {
        let unit = coords(&[(&[], 1)]);
        assert_eq!(pieri_step(&unit, 2, 2).unwrap(), coords(&[(&[2], 1)]));
        assert_eq!(
            pieri_step(&coords(&[(&[1], 1)]), 1, 2).unwrap(),
            coords(&[(&[2], 1), (&[1, 1], 1)])
        );
        assert_eq!(
            pieri_step(&coords(&[(&[1, 1], 1)]), 1, 2).unwrap(),
            coords(&[(&[1, 1, 1], 1)])
        );
        assert_eq!(pieri_step(&unit, 3, 2), Err(KSchurError::StripTooLong { r: 3, k: 2 }));
        assert!(pieri_step(&coords(&[(&[3], 1)]), 1, 2).is_err());
        assert_eq!(
            pieri_step(&coords(&[(&[2, 1], 1)]), 0, 2).unwrap(),
            coords(&[(&[2, 1], 1)])
        );
    }

    #[test]
    fn degree_three_block_for_k2() {
        let b = KSchurBasis::build(2, 3).unwrap();
        assert_eq!(b.h_in_kschur(&p(&[2, 1])).unwrap(), coords(&[(&[2, 1], 1)]));
        assert_eq!(
            b.h_in_kschur(&p(&[1, 1, 1])).unwrap(),
            coords(&[(&[2, 1], 1), (&[1, 1, 1], 1)])
        );
        let h = |l: &[u32]| SymFunc::h(p(l));
        assert_eq!(b.kschur_in_h(&p(&[1, 1])).unwrap(), h(&[1, 1]) - h(&[2]));
        assert_eq!(b.kschur_in_h(&p(&[2, 1])).unwrap(), h(&[2, 1]));
        assert_eq!(b.kschur_in_h(&p(&[1, 1, 1])).unwrap(), h(&[1, 1, 1]) - h(&[2, 1]));
        assert!(b.kschur_in_h(&p(&[3])).is_err());
        assert!(matches!(
            b.kschur_in_h(&p(&[1, 1, 1, 1])),
            Err(KSchurError::DegreeExceeded { .. })
        ));
    }

    #[test]
    fn k_one_is_powers_of_h1() {
        let b = KSchurBasis::build(1, 6).unwrap();
        for d in 0..=6 {
            let ones = Partition::from_parts_unsorted(vec![1; d]);
            assert_eq!(b.block(d).unwrap().partitions, vec![ones.clone()]);
            assert_eq!(b.kschur_in_h(&ones).unwrap(), SymFunc::h(ones));
        }
    }

    #[test]
    fn kschur_in_schur_examples() {
        let s = |l: &[u32]| (p(l), rat(1, 1));
        assert_eq!(
            kschur_in_schur(2, &p(&[2, 1])).unwrap().terms,
            BTreeMap::from([s(&[3]), s(&[2, 1])])
        );
        assert_eq!(
            kschur_in_schur(2, &p(&[1, 1, 1])).unwrap().terms,
            BTreeMap::from([s(&[2, 1]), s(&[1, 1, 1])])
        );
        assert_eq!(
            kschur_in_schur(4, &p(&[2, 1, 1])).unwrap().terms,
            BTreeMap::from([s(&[2, 1, 1])])
        );
    }

    #[test]
    fn branch_examples() {
        assert_eq!(
            branch(1, &p(&[1, 1])).unwrap().terms,
            coords(&[(&[2], 1), (&[1, 1], 1)])
        );
        assert_eq!(
            branch(2, &p(&[2, 1])).unwrap().terms,
            coords(&[(&[3], 1), (&[2, 1], 1)])
        );
        assert_eq!(branch(2, &p(&[2])).unwrap().terms, coords(&[(&[2], 1)]));
        let low = KSchurBasis::build(2, 3).unwrap();
        let up = KSchurBasis::build(4, 3).unwrap();
        assert!(matches!(
            branch_between(&low, &up, &p(&[2])),
            Err(KSchurError::LevelMismatch { .. })
        ));
        let up3 = KSchurBasis::build(3, 2).unwrap();
        assert!(matches!(
            branch_between(&low, &up3, &p(&[2, 1])),
            Err(KSchurError::DegreeExceeded { .. })
        ));
    }

    #[test]
    fn expand_examples() {
        let f = SymFunc::h(p(&[2])) + SymFunc::e(p(&[2]));
        assert_eq!(
            expand_in_kschur(&f, 2).unwrap().terms,
            coords(&[(&[2], 1), (&[1, 1], 1)])
        );
        assert_eq!(
            expand_in_kschur(&SymFunc::s(p(&[2, 1])), 2),
            Err(KSchurError::NotInSubalgebra { k: 2, witness: p(&[3]) })
        );
        assert_eq!(expand_in_kschur(&SymFunc::one(), 3).unwrap().terms, coords(&[(&[], 1)]));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_on_kschur(2, &p(&[2])).unwrap(), (p(&[1, 1]), rat(1, 1)));
        assert_eq!(omega_on_kschur(2, &p(&[2, 1])).unwrap(), (p(&[1, 1, 1]), rat(1, 1)));
        for l in partitions_of(4, PartitionFilter::default()) {
            assert_eq!(omega_on_kschur(4, &l).unwrap(), (l.conjugate(), rat(1, 1)));
        }
    }

    #[test]
    fn golden_record_shape() {
        let b = KSchurBasis::build(2, 3).unwrap();
        let g = b.golden_json(3).unwrap();
        assert_eq!(g["partitions"], serde_json::json!([[2, 1], [1, 1, 1]]));
        assert_eq!(g["h_to_kschur"], serde_json::json!([[1, 0], [1, 1]]));
        assert_eq!(g["kschur_to_h"], serde_json::json!([[1, 0], [-1, 1]]));
    }
}
