//! The bijection between `(k+1)`-cores and `k`-bounded partitions,
//! `k`-conjugation, and the weak horizontal strips used by the k-Schur
//! Pieri rule.
//!
//! Cores are generated breadth-first from the empty core under the affine
//! residue action: adding every addable cell of a fixed residue
//! `i mod (k+1)` maps a core to a core whose bounded weight is one larger.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::partition::{Partition, PartitionError};

/// A `(k+1)`-core together with its parameter `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorePartition {
    shape: Partition,
    k: usize,
    bounded_weight: usize,
}

impl CorePartition {
    pub fn new(shape: Partition, k: usize) -> Result<Self, PartitionError> {
        if k == 0 {
            return Err(PartitionError::ZeroK);
        }
        if !shape.is_core(k + 1)? {
            return Err(PartitionError::NotACore {
                partition: shape,
                t: k + 1,
            });
        }
        let bounded_weight = shape.hook_lengths().iter().flatten().filter(|&&h| h <= k).count();
        Ok(CorePartition {
            shape,
            k,
            bounded_weight,
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bounded_weight(&self) -> usize {
        self.bounded_weight
    }
}

/// Row `i` of the result counts the cells in row `i` of the core whose hook
/// length is at most `k`.
pub fn core_to_bounded(core: &CorePartition) -> Partition {
    let k = core.k;
    let parts = core
        .shape
        .hook_lengths()
        .iter()
        .map(|row| row.iter().filter(|&&h| h <= k).count() as u32)
        .collect();
    Partition::from_parts_unsorted(parts)
}

/// Every `(k+1)`-core of bounded weight at most `max_weight`, keyed both ways.
#[derive(Debug)]
pub struct CoreTable {
    k: usize,
    max_weight: usize,
    to_core: HashMap<Partition, Partition>,
    to_bounded: HashMap<Partition, Partition>,
    /// Cores grouped by bounded weight, in discovery order.
    layers: Vec<Vec<Partition>>,
}

impl CoreTable {
    pub fn build(k: usize, max_weight: usize) -> Result<Self, PartitionError> {
        if k == 0 {
            return Err(PartitionError::ZeroK);
        }
        let t = k + 1;
        let mut to_core = HashMap::new();
        let mut to_bounded = HashMap::new();
        let mut layers = vec![vec![Partition::empty()]];
        to_core.insert(Partition::empty(), Partition::empty());
        to_bounded.insert(Partition::empty(), Partition::empty());

        for weight in 0..max_weight {
            let mut next = Vec::new();
            for core in &layers[weight] {
                for residue in 0..t {
                    let Some(grown) = add_residue(core, residue, t) else {
                        continue;
                    };
                    if to_bounded.contains_key(&grown) {
                        continue;
                    }
                    let cp = CorePartition::new(grown.clone(), k)?;
                    let bounded = core_to_bounded(&cp);
                    debug_assert_eq!(bounded.size(), weight + 1);
                    to_core.insert(bounded.clone(), grown.clone());
                    to_bounded.insert(grown.clone(), bounded);
                    next.push(grown);
                }
            }
            layers.push(next);
        }
        Ok(CoreTable {
            k,
            max_weight,
            to_core,
            to_bounded,
            layers,
        })
    }

    /// Shared table for `k` covering at least `max_weight`.
    pub fn cached(k: usize, max_weight: usize) -> Result<Arc<CoreTable>, PartitionError> {
        static TABLES: OnceLock<RwLock<HashMap<usize, Arc<CoreTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(Default::default);
        if let Some(t) = tables.read().unwrap().get(&k) {
            if t.max_weight >= max_weight {
                return Ok(Arc::clone(t));
            }
        }
        // Build outside the lock; a concurrent builder may win, which is fine
        // because the table for a given (k, weight) is unique.
        let built = Arc::new(CoreTable::build(k, max_weight.max(8))?);
        let mut w = tables.write().unwrap();
        let entry = w.entry(k).or_insert_with(|| Arc::clone(&built));
        if entry.max_weight < built.max_weight {
            *entry = Arc::clone(&built);
        }
        Ok(Arc::clone(entry))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn cores_of_weight(&self, weight: usize) -> &[Partition] {
        self.layers.get(weight).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn core_of(&self, bounded: &Partition) -> Option<&Partition> {
        self.to_core.get(bounded)
    }

    pub fn bounded_of(&self, core: &Partition) -> Option<&Partition> {
        self.to_bounded.get(core)
    }
}

/// Adds all addable cells of content `≡ residue (mod t)`; `None` if there are none.
fn add_residue(shape: &Partition, residue: usize, t: usize) -> Option<Partition> {
    let mut parts = shape.parts().to_vec();
    let mut added = false;
    for r in 1..=shape.len() + 1 {
        let len = shape.row(r) as i64;
        let addable = r == 1 || shape.row(r - 1) as i64 > len;
        if !addable {
            continue;
        }
        let content = len + 1 - r as i64;
        if content.rem_euclid(t as i64) as usize == residue {
            if r <= parts.len() {
                parts[r - 1] += 1;
            } else {
                parts.push(1);
            }
            added = true;
        }
    }
    added.then(|| Partition::new(parts).expect("adding corners keeps a partition"))
}

pub fn bounded_to_core(lambda: &Partition, k: usize) -> Result<CorePartition, PartitionError> {
    check_bounded(lambda, k)?;
    let table = CoreTable::cached(k, lambda.size())?;
    let shape = table
        .core_of(lambda)
        .expect("every k-bounded partition has a core")
        .clone();
    Ok(CorePartition {
        shape,
        k,
        bounded_weight: lambda.size(),
    })
}

/// The `k`-conjugate: conjugate the core and read off its bounded partition.
pub fn k_conjugate(lambda: &Partition, k: usize) -> Result<Partition, PartitionError> {
    check_bounded(lambda, k)?;
    let table = CoreTable::cached(k, lambda.size())?;
    let core = table.core_of(lambda).expect("every k-bounded partition has a core");
    Ok(table
        .bounded_of(&core.conjugate())
        .expect("conjugate of a core is a core of the same weight")
        .clone())
}

/// `μ/λ` is a horizontal `r`-strip and `μ^{ωk}/λ^{ωk}` is a vertical strip.
pub fn is_weak_horizontal_strip(
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    r: usize,
) -> Result<bool, PartitionError> {
    check_bounded(lambda, k)?;
    check_bounded(mu, k)?;
    if mu.size() != lambda.size() + r || !mu.is_horizontal_strip_over(lambda) {
        return Ok(false);
    }
    if r == 0 {
        return Ok(true);
    }
    let lc = k_conjugate(lambda, k)?;
    let mc = k_conjugate(mu, k)?;
    Ok(mc.is_vertical_strip_over(&lc))
}

pub(crate) fn check_bounded(lambda: &Partition, k: usize) -> Result<(), PartitionError> {
    if k == 0 {
        return Err(PartitionError::ZeroK);
    }
    if !lambda.is_bounded(k) {
        return Err(PartitionError::NotBounded {
            partition: lambda.clone(),
            k,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partitions_of, PartitionFilter};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn core(parts: &[u32], k: usize) -> CorePartition {
        CorePartition::new(p(parts), k).unwrap()
    }

    #[test]
    fn core_to_bounded_examples() {
        assert_eq!(core_to_bounded(&core(&[3, 1], 2)), p(&[2, 1]));
        assert_eq!(core_to_bounded(&core(&[2, 1, 1], 2)), p(&[1, 1, 1]));
        assert_eq!(core_to_bounded(&core(&[1], 2)), p(&[1]));
        assert_eq!(core(&[3, 1], 2).bounded_weight(), 3);
    }

    #[test]
    fn invalid_core_rejected() {
        assert!(matches!(
            CorePartition::new(p(&[1, 1, 1]), 2),
            Err(PartitionError::NotACore { .. })
        ));
        assert!(CorePartition::new(p(&[1]), 0).is_err());
    }

    // Independent inverse: scan every partition up to a size bound and keep
    // those that are cores, indexed by their bounded image.
    fn brute_force_inverse(k: usize, max_core_size: usize) -> HashMap<Partition, Partition> {
        let mut out = HashMap::new();
        for n in 0..=max_core_size {
            for shape in partitions_of(n, PartitionFilter::default()) {
                if shape.is_core(k + 1).unwrap() {
                    let b = core_to_bounded(&CorePartition::new(shape.clone(), k).unwrap());
                    assert!(out.insert(b, shape).is_none(), "core_to_bounded not injective");
                }
            }
        }
        out
    }

    #[test]
    fn bounded_to_core_examples() {
        assert_eq!(bounded_to_core(&p(&[2, 1]), 2).unwrap().shape(), &p(&[3, 1]));
        assert_eq!(bounded_to_core(&p(&[1, 1, 1]), 2).unwrap().shape(), &p(&[2, 1, 1]));
        for k in 1..=5 {
            for n in 0..=k {
                for l in partitions_of(n, PartitionFilter::bounded(k)) {
                    assert_eq!(bounded_to_core(&l, k).unwrap().shape(), &l);
                }
            }
        }
        assert!(bounded_to_core(&p(&[3]), 2).is_err());
    }

    #[test]
    fn bfs_agrees_with_brute_force_scan() {
        // For k = 2 and weights <= 4 every core has at most 10 cells.
        let oracle = brute_force_inverse(2, 12);
        for n in 0..=4 {
            for l in partitions_of(n, PartitionFilter::bounded(2)) {
                assert_eq!(Some(bounded_to_core(&l, 2).unwrap().shape()), oracle.get(&l));
            }
        }
    }

    #[test]
    fn k_conjugate_examples() {
        assert_eq!(k_conjugate(&p(&[2, 1]), 2).unwrap(), p(&[1, 1, 1]));
        assert_eq!(k_conjugate(&p(&[2]), 2).unwrap(), p(&[1, 1]));
        for l in partitions_of(5, PartitionFilter::default()) {
            assert_eq!(k_conjugate(&l, 5).unwrap(), l.conjugate());
            assert_eq!(k_conjugate(&l, 7).unwrap(), l.conjugate());
        }
        assert!(k_conjugate(&p(&[3]), 2).is_err());
    }

    #[test]
    fn weak_strip_examples() {
        assert!(is_weak_horizontal_strip(&p(&[2]), &p(&[2, 1]), 2, 1).unwrap());
        assert!(!is_weak_horizontal_strip(&p(&[1, 1]), &p(&[2, 1]), 2, 1).unwrap());
        assert!(is_weak_horizontal_strip(&p(&[2, 1]), &p(&[2, 1]), 2, 0).unwrap());
        assert!(!is_weak_horizontal_strip(&p(&[2]), &p(&[2, 1]), 2, 0).unwrap());
        assert!(is_weak_horizontal_strip(&p(&[3]), &p(&[2]), 2, 1).is_err());
    }

    #[test]
    fn bfs_steps_add_one_bounded_cell() {
        for k in 1..=4 {
            let t = k + 1;
            let table = CoreTable::build(k, 8).unwrap();
            for w in 0..8 {
                for c in table.cores_of_weight(w) {
                    for i in 0..t {
                        if let Some(g) = add_residue(c, i, t) {
                            let cp = CorePartition::new(g, k).unwrap();
                            assert_eq!(cp.bounded_weight(), w + 1);
                        }
                    }
                }
            }
        }
    }
}
