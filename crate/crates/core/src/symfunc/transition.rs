//! Per-degree transition matrices between the h basis and the m, e, p, s
//! bases, computed lazily and shared through a process-wide cache.
//!
//! Matrix convention: for a pair `(source, target)` and degree `d`, row `i`
//! holds the `target` coordinates of the `source` basis element indexed by
//! the `i`-th partition of `d` in reverse lexicographic order.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Basis, HTerms};
use crate::linalg::RatMatrix;
use crate::partition::{partitions_of, Partition, PartitionFilter};
use crate::{BigInt, Rat};

/// Partitions of one degree with their positions in the fixed order.
#[derive(Debug)]
pub struct DegreeIndex {
    pub partitions: Vec<Partition>,
    position: HashMap<Partition, usize>,
}

impl DegreeIndex {
    pub fn position(&self, lambda: &Partition) -> Option<usize> {
        self.position.get(lambda).copied()
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }
}

pub fn degree_index(d: usize) -> Arc<DegreeIndex> {
    static INDEX: OnceLock<RwLock<HashMap<usize, Arc<DegreeIndex>>>> = OnceLock::new();
    let cache = INDEX.get_or_init(Default::default);
    if let Some(ix) = cache.read().unwrap().get(&d) {
        return Arc::clone(ix);
    }
    let partitions = partitions_of(d, PartitionFilter::default());
    let position = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let ix = Arc::new(DegreeIndex { partitions, position });
    Arc::clone(cache.write().unwrap().entry(d).or_insert(ix))
}

type CacheKey = (usize, Basis, Basis);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<RatMatrix>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<RatMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The transition matrix from `source` to `target` in degree `d`.
///
/// A missing entry is computed without holding the lock and then inserted
/// unless another caller got there first; either way the same matrix is
/// returned.
pub fn transition(d: usize, source: Basis, target: Basis) -> Arc<RatMatrix> {
    let key = (d, source, target);
    if let Some(m) = cache().read().unwrap().get(&key) {
        return Arc::clone(m);
    }
    let computed = Arc::new(compute(d, source, target));
    Arc::clone(cache().write().unwrap().entry(key).or_insert(computed))
}

fn compute(d: usize, source: Basis, target: Basis) -> RatMatrix {
    use Basis::*;
    let n = degree_index(d).len();
    match (source, target) {
        _ if source == target => RatMatrix::identity(n),
        (M, H) => transition(d, H, M).inverse().expect("h-to-m matrix is invertible"),
        (_, H) => to_h_direct(d, source),
        (H, S) => transition(d, S, H)
            .unitriangular_inverse()
            .expect("Jacobi-Trudi matrix is lower unitriangular"),
        (H, M) => h_to_m(d),
        (H, _) => transition(d, target, H)
            .inverse()
            .expect("transition to h is invertible"),
        _ => &*transition(d, source, H) * &*transition(d, H, target),
    }
}

/// Rows of `B_λ` in h coordinates for B ∈ {e, p, s}.
fn to_h_direct(d: usize, basis: Basis) -> RatMatrix {
    let ix = degree_index(d);
    let gens = match basis {
        Basis::E => elementary_generators(d),
        Basis::P => power_sum_generators(d),
        Basis::S => Vec::new(),
        _ => unreachable!("no direct h expansion for {basis:?}"),
    };
    let rows = ix
        .partitions
        .iter()
        .map(|lambda| {
            let terms = match basis {
                Basis::S => jacobi_trudi(lambda),
                _ => product_of_generators(lambda, &gens),
            };
            dense_row(&ix, &terms)
        })
        .collect();
    RatMatrix::from_rows(rows)
}

fn dense_row(ix: &DegreeIndex, terms: &HTerms) -> Vec<Rat> {
    let mut row = vec![Rat::zero(); ix.len()];
    for (mu, c) in terms {
        row[ix.position(mu).expect("homogeneous term")] = c.clone();
    }
    row
}

fn h_times(terms: &HTerms, part: u32) -> HTerms {
    let single = Partition::from_parts_unsorted(vec![part]);
    terms.iter().map(|(mu, c)| (mu.merge(&single), c.clone())).collect()
}

fn add_scaled(acc: &mut HTerms, terms: &HTerms, scale: &Rat) {
    for (mu, c) in terms {
        let e = acc.entry(mu.clone()).or_insert_with(Rat::zero);
        *e += c * scale;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// `e_0, …, e_max` in the h basis via `e_n = Σ_{i=1}^n (-1)^{i-1} h_i e_{n-i}`.
pub(crate) fn elementary_generators(max: usize) -> Vec<HTerms> {
    let mut gens: Vec<HTerms> = vec![BTreeMap::from([(Partition::empty(), Rat::one())])];
    for n in 1..=max {
        let mut en = HTerms::new();
        for i in 1..=n {
            let sign = if i % 2 == 1 { Rat::one() } else { -Rat::one() };
            add_scaled(&mut en, &h_times(&gens[n - i], i as u32), &sign);
        }
        gens.push(en);
    }
    gens
}

/// `p_1, …, p_max` (index 0 unused) via Newton's identity
/// `n h_n = Σ_{i=1}^n p_i h_{n-i}`.
pub(crate) fn power_sum_generators(max: usize) -> Vec<HTerms> {
    let mut gens: Vec<HTerms> = vec![HTerms::new()];
    for n in 1..=max {
        let mut pn = BTreeMap::from([(
            Partition::from_parts_unsorted(vec![n as u32]),
            Rat::from_integer(BigInt::from(n)),
        )]);
        for (i, g) in gens.iter().enumerate().take(n).skip(1) {
            add_scaled(&mut pn, &h_times(g, (n - i) as u32), &-Rat::one());
        }
        gens.push(pn);
    }
    gens
}

fn product_of_generators(lambda: &Partition, gens: &[HTerms]) -> HTerms {
    let mut acc = BTreeMap::from([(Partition::empty(), Rat::one())]);
    for &part in lambda.parts() {
        let mut next = HTerms::new();
        for (a, ca) in &acc {
            for (b, cb) in &gens[part as usize] {
                let e = next.entry(a.merge(b)).or_insert_with(Rat::zero);
                *e += ca * cb;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

/// `s_λ = det(h_{λ_i - i + j})`, expanded row by row over subsets of used
/// columns.
pub(crate) fn jacobi_trudi(lambda: &Partition) -> HTerms {
    let l = lambda.len();
    let mut layer: HashMap<u32, HTerms> = HashMap::from([(0u32, BTreeMap::from([(Partition::empty(), Rat::one())]))]);
    for i in 0..l {
        let mut next: HashMap<u32, HTerms> = HashMap::new();
        for (mask, terms) in &layer {
            for j in 0..l {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let index = lambda.parts()[i] as i64 - i as i64 + j as i64;
                if index < 0 {
                    continue;
                }
                let inversions = (j + 1..l).filter(|&c| mask & (1 << c) != 0).count();
                let sign = if inversions % 2 == 0 { Rat::one() } else { -Rat::one() };
                let factor = if index == 0 {
                    terms.clone()
                } else {
                    h_times(terms, index as u32)
                };
                add_scaled(next.entry(mask | (1 << j)).or_default(), &factor, &sign);
            }
        }
        layer = next;
    }
    layer.remove(&((1u32 << l) - 1)).unwrap_or_default()
}

/// Rows of `h_λ` in m coordinates: the number of nonnegative integer matrices
/// with row sums `λ` and column sums `μ`.
fn h_to_m(d: usize) -> RatMatrix {
    let ix = degree_index(d);
    let mut memo = HashMap::new();
    let rows = ix
        .partitions
        .iter()
        .map(|lambda| {
            ix.partitions
                .iter()
                .map(|mu| {
                    let cols: Vec<u32> = mu.parts().to_vec();
                    Rat::from_integer(BigInt::from(count_matrices(lambda.parts(), cols, &mut memo)))
                })
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows)
}

fn count_matrices(rows: &[u32], mut cols: Vec<u32>, memo: &mut HashMap<(Vec<u32>, Vec<u32>), u64>) -> u64 {
    cols.retain(|&c| c > 0);
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let Some((&first, rest)) = rows.split_first() else {
        return u64::from(cols.is_empty());
    };
    let key = (rows.to_vec(), cols.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // distribute `first` among the columns, each taking at most its capacity
    fn distribute(
        remaining: u32,
        at: usize,
        cols: &mut Vec<u32>,
        rest: &[u32],
        memo: &mut HashMap<(Vec<u32>, Vec<u32>), u64>,
    ) -> u64 {
        if at == cols.len() {
            return if remaining == 0 {
                count_matrices(rest, cols.clone(), memo)
            } else {
                0
            };
        }
        let cap = cols[at];
        let mut total = 0;
        for take in 0..=cap.min(remaining) {
            cols[at] = cap - take;
            total += distribute(remaining - take, at + 1, cols, rest, memo);
        }
        cols[at] = cap;
        total
    }
    let result = distribute(first, 0, &mut cols.clone(), rest, memo);
    memo.insert(key, result);
    result
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    degree: usize,
    source: Basis,
    target: Basis,
    partitions: Vec<Partition>,
    rows: Vec<Vec<(i128, i128)>>,
}

fn file_name(d: usize, source: Basis, target: Basis) -> String {
    format!("transition_{d}_{}_{}.json", source.tag(), target.tag())
}

/// Writes every cached matrix into `dir`, one JSON file per key.
pub fn export_cache(dir: &Path) -> std::io::Result<usize> {
    fs::create_dir_all(dir)?;
    let entries: Vec<(CacheKey, Arc<RatMatrix>)> = cache()
        .read()
        .unwrap()
        .iter()
        .map(|(k, v)| (*k, Arc::clone(v)))
        .collect();
    let mut written = 0;
    for ((d, source, target), m) in entries {
        let rows: Option<Vec<Vec<(i128, i128)>>> = m
            .to_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| Some((x.numer().to_i128()?, x.denom().to_i128()?)))
                    .collect()
            })
            .collect();
        let Some(rows) = rows else { continue };
        let file = CacheFile {
            degree: d,
            source,
            target,
            partitions: degree_index(d).partitions.clone(),
            rows,
        };
        let json = serde_json::to_string(&file).map_err(std::io::Error::other)?;
        fs::write(dir.join(file_name(d, source, target)), json)?;
        written += 1;
    }
    Ok(written)
}

/// Loads matrices previously written by [`export_cache`]. Files whose
/// partition header or shape do not match the current order are skipped.
pub fn import_cache(dir: &Path) -> std::io::Result<usize> {
    let Ok(read) = fs::read_dir(dir) else {
        return Ok(0);
    };
    let mut loaded = 0;
    for entry in read {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let Ok(text) = fs::read_to_string(&path) else { continue };
        let Ok(file) = serde_json::from_str::<CacheFile>(&text) else {
            continue;
        };
        let ix = degree_index(file.degree);
        if file.partitions != ix.partitions
            || file.rows.len() != ix.len()
            || file.rows.iter().any(|r| r.len() != ix.len())
            || file.rows.iter().flatten().any(|&(_, den)| den <= 0)
        {
            continue;
        }
        let m = RatMatrix::from_rows(
            file.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
                        .collect()
                })
                .collect(),
        );
        cache()
            .write()
            .unwrap()
            .entry((file.degree, file.source, file.target))
            .or_insert_with(|| Arc::new(m));
        loaded += 1;
    }
    Ok(loaded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn jacobi_trudi_small() {
        let s21 = jacobi_trudi(&p(&[2, 1]));
        assert_eq!(s21, BTreeMap::from([(p(&[2, 1]), rat(1, 1)), (p(&[3]), rat(-1, 1))]));
        let s11 = jacobi_trudi(&p(&[1, 1]));
        assert_eq!(s11, BTreeMap::from([(p(&[1, 1]), rat(1, 1)), (p(&[2]), rat(-1, 1))]));
        assert_eq!(
            jacobi_trudi(&Partition::empty()),
            BTreeMap::from([(Partition::empty(), rat(1, 1))])
        );
    }

    #[test]
    fn newton_generators() {
        let p2 = &power_sum_generators(2)[2];
        assert_eq!(p2, &BTreeMap::from([(p(&[2]), rat(2, 1)), (p(&[1, 1]), rat(-1, 1))]));
        let e2 = &elementary_generators(2)[2];
        assert_eq!(e2, &BTreeMap::from([(p(&[1, 1]), rat(1, 1)), (p(&[2]), rat(-1, 1))]));
    }

    #[test]
    fn h_to_m_counts() {
        // h_(1,1) = m_2 + 2 m_(1,1); h_2 = m_2 + m_(1,1)
        let m = transition(2, Basis::H, Basis::M);
        assert_eq!(
            m.to_rows(),
            vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)]]
        );
    }

    #[test]
    fn hs_matrix_is_lower_unitriangular() {
        for d in 0..=8 {
            assert!(transition(d, Basis::S, Basis::H).is_lower_unitriangular());
            assert!(transition(d, Basis::H, Basis::S).is_lower_unitriangular());
        }
    }

    #[test]
    fn cycles_are_identities() {
        for d in 0..=7 {
            for b in [Basis::M, Basis::E, Basis::P, Basis::S] {
                let there = transition(d, Basis::H, b);
                let back = transition(d, b, Basis::H);
                assert!((&*there * &*back).is_identity(), "degree {d} basis {b:?}");
            }
        }
    }

    #[test]
    fn cache_files_roundtrip() {
        let dir = std::env::temp_dir().join(format!("schurpos-cache-test-{}", std::process::id()));
        transition(3, Basis::S, Basis::H);
        assert!(export_cache(&dir).unwrap() >= 1);
        assert!(import_cache(&dir).unwrap() >= 1);
        fs::write(dir.join("transition_garbage.json"), "{").unwrap();
        import_cache(&dir).unwrap();
        fs::remove_dir_all(&dir).unwrap();
        assert_eq!(import_cache(&dir).unwrap(), 0);
    }
}
