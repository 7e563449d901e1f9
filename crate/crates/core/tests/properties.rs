use num_bigint::BigInt;
use proptest::prelude::*;

use wordstat::formulas::{
    count_des_gt, count_des_le, count_des_mod, count_levels_blocks, count_levels_threshold,
};
use wordstat::oracle::{brute_distribution, transfer_distribution};
use wordstat::query::{self, Engine, Family};
use wordstat::word::{complement, stat_vector, BlockPartition, Stat, Word};

fn words(k: u64, n: u64) -> BigInt {
    num_traits::pow(BigInt::from(k), n as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn statistic_counts_sum_to_all_words(k in 1u64..6, t_raw in 0u64..6, n in 0u64..7) {
        let t = 1 + t_raw % k;
        let sum = |f: &dyn Fn(u64) -> BigInt| -> BigInt { (0..=n).map(f).sum() };
        prop_assert_eq!(sum(&|s| count_levels_threshold(k, t, n, s).unwrap()), words(k, n));
        prop_assert_eq!(sum(&|s| count_des_le(k, t, n, s).unwrap()), words(k, n));
        prop_assert_eq!(sum(&|s| count_des_gt(k, t - 1, n, s).unwrap()), words(k, n));
    }

    #[test]
    fn residue_counts_sum_to_all_words(s in 2u64..6, alphabet in 1u64..7, r_raw in 0u64..6, n in 0u64..7) {
        let r = 1 + r_raw % s;
        let total: BigInt = (0..=n).map(|p| count_des_mod(s, alphabet, r, n, p).unwrap().value).sum();
        prop_assert_eq!(total, words(alphabet, n));
    }

    #[test]
    fn block_levels_marginalize_to_threshold(a in 1u64..4, b in 1u64..4, n in 0u64..6, s in 0u64..5) {
        // summing over the second block's levels leaves levels starting in [a]
        let marginal: BigInt = (0..=n).map(|u| count_levels_blocks(&[a, b], n, &[s, u]).unwrap()).sum();
        prop_assert_eq!(marginal, count_levels_threshold(a + b, a, n, s).unwrap());
    }

    #[test]
    fn complement_swaps_descents_and_rises(letters in proptest::collection::vec(1u32..5, 0..9), t in 0u32..5) {
        let w = Word::new(letters, 4).unwrap();
        let p = BlockPartition::threshold(4, t).unwrap();
        let pc = BlockPartition::threshold(4, 4 - t).unwrap();
        let sv = stat_vector(&w, &p).unwrap();
        let svc = stat_vector(&complement(&w), &pc).unwrap();
        prop_assert_eq!(sv.get(1, Stat::Des), svc.get(2, Stat::Ris));
        prop_assert_eq!(sv.get(2, Stat::Des), svc.get(1, Stat::Ris));
        prop_assert_eq!(sv.get(1, Stat::Lev), svc.get(2, Stat::Lev));
        prop_assert_eq!(complement(&complement(&w)), w);
    }

    #[test]
    fn oracles_agree_on_random_partitions(labels in proptest::collection::vec(1u32..4, 1..5), n in 0u32..6) {
        let p = BlockPartition::from_blocks(&labels).unwrap();
        let k = labels.len() as u32;
        let brute = brute_distribution(k, n, &p).unwrap();
        let transfer = transfer_distribution(k, n, &p).unwrap();
        prop_assert_eq!(brute.entries(), transfer.entries());
    }
}

#[test]
fn every_engine_reports_the_same_table() {
    let families = [
        Family::LevelsThreshold { k: 4, t: 3 },
        Family::LevelsBlocks {
            sizes: vec![2, 1, 1],
        },
        Family::DesLe { k: 4, t: 2 },
        Family::DesGt { k: 4, t: 1 },
        Family::DesMod {
            s: 3,
            alphabet: 5,
            r: 2,
        },
    ];
    for f in &families {
        for n in [0, 1, 5] {
            let reference = query::table(f, n, Engine::ClosedForm).unwrap();
            assert_eq!(reference.total(), f.population(n));
            for e in [Engine::Oracle, Engine::Transfer, Engine::Series] {
                assert_eq!(
                    query::table(f, n, e).unwrap(),
                    reference,
                    "{} n={n} engine={e}",
                    f.name()
                );
            }
        }
    }
}
