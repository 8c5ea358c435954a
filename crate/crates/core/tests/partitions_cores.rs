use proptest::prelude::*;

use schurpos::cores::{
    bounded_to_core, core_to_bounded, is_weak_horizontal_strip, k_conjugate, CorePartition, CoreTable,
};
use schurpos::partition::{partitions_of, Dominance, Partition, PartitionFilter};
use schurpos::{Basis, SymFunc};

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..7, 0..7).prop_map(Partition::from_parts_unsorted)
}

fn same_size_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (1usize..11).prop_flat_map(|n| {
        let ps = partitions_of(n, PartitionFilter::default());
        let len = ps.len();
        (0..len, 0..len).prop_map(move |(i, j)| (ps[i].clone(), ps[j].clone()))
    })
}

fn all_up_to(n: usize, filter: PartitionFilter) -> Vec<Partition> {
    (0..=n).flat_map(|d| partitions_of(d, filter)).collect()
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(l in arb_partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn dominance_is_antisymmetric((a, b) in same_size_pair()) {
        let ab = a.dominance(&b).unwrap();
        let ba = b.dominance(&a).unwrap();
        if a == b {
            prop_assert_eq!(ab, Dominance::LessOrEqual);
        } else {
            prop_assert!(!(ab == Dominance::LessOrEqual && ba == Dominance::LessOrEqual));
        }
        // conjugation reverses dominance
        let conj = b.conjugate().dominance(&a.conjugate()).unwrap();
        prop_assert_eq!(ab == Dominance::LessOrEqual, conj == Dominance::LessOrEqual);
    }

    #[test]
    fn cli_format_round_trips(l in arb_partition()) {
        prop_assert_eq!(l.to_cli_string().parse::<Partition>().unwrap(), l);
    }
}

/// Number of standard tableaux by the hook-length formula agrees with the
/// coefficient of `s_λ` in `p_1^n`.
#[test]
fn hook_length_formula_matches_p1_power() {
    for n in 1..=7usize {
        let pn = SymFunc::p(Partition::new(vec![1; n]).unwrap()).to_basis(Basis::S);
        for lambda in partitions_of(n, PartitionFilter::default()) {
            let hooks: u64 = lambda.hook_lengths().iter().flatten().map(|&h| h as u64).product();
            let factorial: u64 = (1..=n as u64).product();
            let f = factorial / hooks;
            assert_eq!(pn.coefficient(&lambda), schurpos::rat(f as i64, 1), "{lambda}");
        }
    }
}

#[test]
fn k_conjugation_is_an_involution() {
    for k in 1..=4 {
        for lambda in all_up_to(10, PartitionFilter::bounded(k)) {
            let once = k_conjugate(&lambda, k).unwrap();
            assert!(once.is_bounded(k));
            assert_eq!(once.size(), lambda.size());
            assert_eq!(k_conjugate(&once, k).unwrap(), lambda, "k={k}");
        }
    }
}

#[test]
fn core_bijection_round_trips() {
    for k in 1..=4 {
        for lambda in all_up_to(10, PartitionFilter::bounded(k)) {
            let core = bounded_to_core(&lambda, k).unwrap();
            assert!(core.shape().is_core(k + 1).unwrap());
            assert_eq!(core_to_bounded(&core), lambda);
        }
    }
}

/// Brute force over all partitions: `(k+1)`-cores whose bounded partition
/// has size `d`, counted against `k`-bounded partitions of `d`.
#[test]
fn core_counts_match_bounded_counts() {
    for k in 1..=4 {
        let table = CoreTable::build(k, 10).unwrap();
        for d in 0..=10 {
            let bounded = partitions_of(d, PartitionFilter::bounded(k)).len();
            assert_eq!(table.cores_of_weight(d).len(), bounded, "k={k} d={d}");
        }
    }
    // independent scan for k = 2: 3-cores of size ≤ 12
    let scanned: Vec<Partition> = all_up_to(12, PartitionFilter::default())
        .into_iter()
        .filter(|p| p.is_core(3).unwrap())
        .collect();
    for d in 0..=4 {
        let found = scanned
            .iter()
            .filter(|c| core_to_bounded(&CorePartition::new((*c).clone(), 2).unwrap()).size() == d)
            .count();
        assert_eq!(found, partitions_of(d, PartitionFilter::bounded(2)).len(), "d={d}");
    }
}

fn add_residue(core: &Partition, residue: usize, t: usize) -> Partition {
    let mut parts = core.parts().to_vec();
    let rows = parts.len();
    let mut grow = Vec::new();
    for r in 0..=rows {
        let len = parts.get(r).copied().unwrap_or(0) as i64;
        let addable = r == 0 || (parts[r - 1] as i64) > len;
        let content = len - r as i64;
        if addable && content.rem_euclid(t as i64) as usize == residue {
            grow.push(r);
        }
    }
    for r in grow {
        if r < parts.len() {
            parts[r] += 1;
        } else {
            parts.push(1);
        }
    }
    Partition::new(parts).unwrap()
}

#[test]
fn residue_steps_add_one_to_bounded_weight() {
    for k in 1..=4 {
        let table = CoreTable::build(k, 7).unwrap();
        for w in 0..7 {
            for core in table.cores_of_weight(w) {
                for residue in 0..=k {
                    let next = add_residue(core, residue, k + 1);
                    if &next == core {
                        continue;
                    }
                    assert!(next.is_core(k + 1).unwrap());
                    let weight = CorePartition::new(next, k).unwrap().bounded_weight();
                    assert_eq!(weight, w + 1, "k={k} core={core} residue={residue}");
                }
            }
        }
    }
}

#[test]
fn weak_strips_degenerate_to_horizontal_strips() {
    let all = all_up_to(8, PartitionFilter::default());
    for mu in &all {
        for lambda in all.iter().filter(|l| l.size() <= mu.size()) {
            let k = mu.size().max(1);
            let r = mu.size() - lambda.size();
            let weak = is_weak_horizontal_strip(lambda, mu, k, r).unwrap();
            let classical = mu.contains(lambda) && mu.is_horizontal_strip_over(lambda);
            assert_eq!(weak, classical, "{lambda} -> {mu}");
        }
    }
}

#[test]
fn zero_strips_only_fix_lambda() {
    for lambda in all_up_to(6, PartitionFilter::bounded(2)) {
        for mu in all_up_to(6, PartitionFilter::bounded(2)) {
            assert_eq!(is_weak_horizontal_strip(&lambda, &mu, 2, 0).unwrap(), lambda == mu);
        }
    }
}
