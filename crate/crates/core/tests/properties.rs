use nilcover::degeneration::{codim2_children_with_bound, degeneration_at, minimal_degeneration};
use nilcover::induction::{induce, namikawa_orbit, rigid_levi_orbit};
use nilcover::oracle::brute_collapse_with_bound;
use nilcover::orbit::Orbit;
use nilcover::partition::{add_two_then_collapse, collapse_down, Algebra, Partition, Series};
use proptest::prelude::*;

fn series() -> impl Strategy<Value = Series> {
    prop_oneof![Just(Series::So), Just(Series::Sp)]
}

/// A raw sequence and the algebra of matching size.
fn raw(max_part: usize, max_len: usize) -> impl Strategy<Value = (Vec<usize>, Algebra)> {
    (series(), prop::collection::vec(1..=max_part, 1..=max_len)).prop_map(|(s, mut v)| {
        if s == Series::Sp && v.iter().sum::<usize>() % 2 == 1 {
            v.push(1);
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        let n = v.iter().sum();
        (v, Algebra::new(s, n).unwrap())
    })
}

fn orbit(max_part: usize, max_len: usize) -> impl Strategy<Value = Orbit> {
    raw(max_part, max_len).prop_map(|(v, g)| Orbit::new(g, collapse_down(&v, g).unwrap()).unwrap())
}

proptest! {
    #[test]
    fn transpose_is_involution((v, _) in raw(12, 10)) {
        let p = Partition::new(v).unwrap();
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().size(), p.size());
    }

    #[test]
    fn collapse_is_valid_and_below((v, g) in raw(8, 8)) {
        let c = collapse_down(&v, g).unwrap();
        prop_assert!(c.is_valid(g).unwrap());
        prop_assert!(Partition::new(v.clone()).unwrap().dominates(&c).unwrap());
        prop_assert_eq!(collapse_down(c.parts(), g).unwrap(), c);
    }

    #[test]
    fn collapse_matches_brute_force((v, g) in raw(6, 5)) {
        prop_assume!(g.size() <= 20);
        prop_assert_eq!(collapse_down(&v, g).unwrap(), brute_collapse_with_bound(&v, g, 20).unwrap());
    }

    #[test]
    fn add_two_cross_law(o in orbit(9, 8), m in 1usize..6) {
        let target = Algebra::new(o.algebra.series(), o.algebra.size() + 2 * m).unwrap();
        let lifted = o.partition.add_two(m);
        prop_assert_eq!(
            add_two_then_collapse(&o.partition, m, target).unwrap(),
            collapse_down(lifted.parts(), target).unwrap()
        );
    }

    #[test]
    fn induction_order_independent(o in orbit(7, 6), blocks in prop::collection::vec(1usize..5, 1..4)) {
        let total: usize = blocks.iter().sum();
        let target = Algebra::new(o.algebra.series(), o.algebra.size() + 2 * total).unwrap();
        let forward = induce(&o.partition, &blocks, target).unwrap();
        let mut reversed = blocks.clone();
        reversed.reverse();
        prop_assert_eq!(induce(&o.partition, &reversed, target).unwrap(), forward.clone());
        prop_assert_eq!(
            Orbit::new(target, forward).unwrap().dim(),
            o.dim() + target.dim() - (blocks.iter().map(|b| b * b).sum::<usize>() + o.algebra.dim())
        );
    }

    #[test]
    fn children_match_singular_rows(o in orbit(10, 7)) {
        prop_assume!(o.algebra.size() <= 30);
        let brute = codim2_children_with_bound(&o, usize::MAX).unwrap();
        let constructive = codim2_children_with_bound(&o, 0).unwrap();
        prop_assert_eq!(brute.len(), o.partition.singular_set().len());
        prop_assert_eq!(&brute, &constructive);
        for d in &brute {
            prop_assert_eq!(o.dim(), d.child.dim() + 2);
            prop_assert_eq!(&minimal_degeneration(&o.partition, &d.child.partition).unwrap(), &d.minimal);
        }
    }

    #[test]
    fn rigid_levi_round_trip(o in orbit(12, 8)) {
        let rl = rigid_levi_orbit(&o);
        prop_assert_eq!(induce(&rl.source, &rl.levi.gl_blocks, o.algebra).unwrap(), o.partition.clone());
        prop_assert!(rl.source.singular_set().is_empty());
        prop_assert!(rl.source.special_index(rl.levi.residual).is_none());
        prop_assert_eq!(namikawa_orbit(&o).dim_total, rl.levi.block_count());
    }

    #[test]
    fn degeneration_at_rejects_regular_rows(o in orbit(8, 6), m in 1usize..10) {
        let singular = o.partition.gap_half(m) > 0;
        prop_assert_eq!(degeneration_at(&o, m).is_ok(), singular);
    }

    #[test]
    fn dimension_is_even(o in orbit(15, 10)) {
        prop_assert_eq!(o.dim() % 2, 0);
        prop_assert!(o.dim() <= o.algebra.dim() - o.algebra.rank());
    }
}
