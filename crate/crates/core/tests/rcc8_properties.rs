use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spatconf::qsr::{algebraic_closure, CompositionTable, QtConstraintNetwork, Rcc8, RelationSet};

fn set_strategy() -> impl Strategy<Value = RelationSet> {
    any::<u8>().prop_map(RelationSet::from_bits)
}

proptest! {
    #[test]
    fn converse_is_an_involution(r in set_strategy()) {
        prop_assert_eq!(r.converse().converse(), r);
        prop_assert_eq!(r.converse().len(), r.len());
    }

    #[test]
    fn composition_distributes_over_union(a in set_strategy(), b in set_strategy(), c in set_strategy()) {
        let t = CompositionTable::standard();
        prop_assert_eq!(t.compose(a.union(b), c), t.compose(a, c).union(t.compose(b, c)));
    }
}

#[test]
fn identity_and_converse_laws_on_base_relations() {
    let t = CompositionTable::standard();
    let eq: RelationSet = Rcc8::EQ.into();
    for a in Rcc8::ALL {
        let sa: RelationSet = a.into();
        assert_eq!(t.compose(eq, sa), sa, "EQ ∘ {a}");
        assert_eq!(t.compose(sa, eq), sa, "{a} ∘ EQ");
        assert_eq!(sa.converse().converse(), sa);
        assert!(t.compose(sa, sa.converse()).contains(Rcc8::EQ), "{a} ∘ {a}˘ must contain EQ");
        for b in Rcc8::ALL {
            let sb: RelationSet = b.into();
            assert_eq!(
                t.compose(sa, sb).converse(),
                t.compose(sb.converse(), sa.converse()),
                "({a} ∘ {b})˘"
            );
        }
    }
}

fn random_network(rng: &mut ChaCha8Rng) -> QtConstraintNetwork {
    let vars = ["a", "b", "c", "d", "e"];
    let mut n = QtConstraintNetwork::with_variables(vars);
    for i in 0..5 {
        for j in i + 1..5 {
            let r = match rng.gen_range(0..4) {
                0 => RelationSet::UNIVERSAL,
                1 => Rcc8::ALL[rng.gen_range(0..8)].into(),
                _ => RelationSet::from_bits(rng.gen()),
            };
            n.constrain(vars[i], vars[j], r);
        }
    }
    n
}

#[test]
fn closure_is_idempotent_and_order_independent() {
    let t = CompositionTable::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut consistent, mut inconsistent) = (0, 0);
    for _ in 0..200 {
        let n = random_network(&mut rng);
        let once = algebraic_closure(&n, &t);
        let mut order = vec![0, 1, 2, 3, 4];
        order.sort_by_key(|_| rng.gen::<u32>());
        let other = algebraic_closure(&n.permuted(&order), &t);
        assert_eq!(once.consistent, other.consistent);
        if once.consistent {
            consistent += 1;
            let twice = algebraic_closure(&once.network, &t);
            assert!(twice.consistent);
            assert_eq!(twice.network, once.network);
            assert!(twice.trace.is_empty());
            for (i, &k) in order.iter().enumerate() {
                for (j, &l) in order.iter().enumerate() {
                    assert_eq!(other.network.at(i, j), once.network.at(k, l));
                }
            }
            // closure only removes relations
            for i in 0..5 {
                for j in 0..5 {
                    assert!(once.network.at(i, j).is_subset(n.at(i, j)));
                }
            }
        } else {
            inconsistent += 1;
        }
    }
    assert!(consistent > 20 && inconsistent > 20, "{consistent} / {inconsistent}");
}

#[test]
fn textbook_inconsistency() {
    let mut n = QtConstraintNetwork::new();
    n.constrain("x", "z", Rcc8::EQ.into());
    n.constrain("y", "z", Rcc8::NTPP.into());
    n.constrain("x", "y", Rcc8::DC.into());
    let c = algebraic_closure(&n, &CompositionTable::standard());
    assert!(!c.consistent);
    assert!(c.witness.is_some());
}
