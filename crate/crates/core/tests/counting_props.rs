use polyexpand::counting::{
    all_partitions, class_bound, cyclic_shift_witness, hypothesis_holds, max_class_bound_check, Partition,
};
use proptest::prelude::*;

/// Relabels arbitrary block labels by order of first appearance.
fn partition(labels: &[usize]) -> Partition {
    let mut seen: Vec<usize> = Vec::new();
    let compact: Vec<usize> = labels
        .iter()
        .map(|l| {
            seen.iter().position(|s| s == l).unwrap_or_else(|| {
                seen.push(*l);
                seen.len() - 1
            })
        })
        .collect();
    Partition::from_labels(&compact).unwrap()
}

fn any_partition(dmax: usize) -> impl Strategy<Value = Partition> {
    (1..=dmax).prop_flat_map(|d| prop::collection::vec(0..d, d)).prop_map(|l| partition(&l))
}

/// Smallest number of indices kept in their block, over all permutations
/// visited by Heap's algorithm.
fn min_fixed_heap(part: &Partition) -> usize {
    let d = part.d();
    let mut a: Vec<usize> = (0..d).collect();
    let mut c = vec![0; d];
    let mut best = part.fixed_equivalent(&a);
    let mut i = 1;
    while i < d {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            best = best.min(part.fixed_equivalent(&a));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn is_permutation(s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    s.iter().all(|&i| i < s.len() && !std::mem::replace(&mut seen[i], true))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hypothesis_matches_heap_oracle(part in any_partition(6), t_seed in any::<prop::sample::Index>()) {
        let t = 1 + t_seed.index(part.d());
        prop_assert_eq!(hypothesis_holds(&part, t).unwrap(), min_fixed_heap(&part) >= t);
    }

    #[test]
    fn witness_exactly_when_bound_fails(part in any_partition(7), t_seed in any::<prop::sample::Index>()) {
        let d = part.d();
        let t = 1 + t_seed.index(d);
        let bound = max_class_bound_check(&part, t).unwrap();
        let witness = cyclic_shift_witness(&part, t).unwrap();
        prop_assert_eq!(witness.is_none(), bound);
        if let Some(sigma) = witness {
            prop_assert!(is_permutation(&sigma));
            let m = part.max_block();
            let kept = part.fixed_equivalent(&sigma);
            prop_assert_eq!(kept, (2 * m).saturating_sub(d));
            prop_assert!(kept < t);
            prop_assert!(!hypothesis_holds(&part, t).unwrap());
        }
    }

    // The minimum over all permutations is max(0, 2m - d).
    #[test]
    fn heap_minimum_has_closed_form(part in any_partition(6)) {
        prop_assert_eq!(min_fixed_heap(&part), (2 * part.max_block()).saturating_sub(part.d()));
    }

    #[test]
    fn parse_agrees_with_blocks(part in any_partition(8)) {
        let text: Vec<String> = part
            .blocks()
            .iter()
            .map(|b| b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
            .collect();
        prop_assert_eq!(Partition::parse(&text.join(";")).unwrap(), part);
    }
}

#[test]
fn implication_holds_for_every_partition_up_to_six() {
    for d in 1..=6 {
        for part in all_partitions(d) {
            for t in 1..=d {
                if hypothesis_holds(&part, t).unwrap() {
                    assert!(part.max_block() >= class_bound(d, t), "{part:?} t={t}");
                }
            }
        }
    }
}

#[test]
fn out_of_range_t_is_rejected() {
    let part = Partition::parse("1,2;3").unwrap();
    assert!(hypothesis_holds(&part, 0).is_err());
    assert!(hypothesis_holds(&part, 4).is_err());
    let big = Partition::parse("1;2;3;4;5;6;7;8;9").unwrap();
    assert!(matches!(hypothesis_holds(&big, 1), Err(polyexpand::Error::Budget(_))));
}
