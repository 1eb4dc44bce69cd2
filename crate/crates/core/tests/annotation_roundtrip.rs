mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spatconf::model::{deserialize_annotation, deserialize_annotations, serialize_annotation, serialize_annotations};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let a = support::annotations::arbitrary(&mut ChaCha8Rng::seed_from_u64(seed));
        let text = serialize_annotation(&a);
        prop_assert_eq!(&deserialize_annotation(&text).unwrap(), &a);
        prop_assert_eq!(serialize_annotation(&deserialize_annotation(&text).unwrap()), text);
    }

    #[test]
    fn lists_round_trip(seed in any::<u64>(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let list: Vec<_> = (0..n).map(|_| support::annotations::arbitrary(&mut rng)).collect();
        prop_assert_eq!(deserialize_annotations(&serialize_annotations(&list)).unwrap(), list);
    }
}

#[test]
fn fixtures_round_trip() {
    for name in support::FIXTURES {
        let a = support::gold(name);
        assert_eq!(deserialize_annotation(&serialize_annotation(&a)).unwrap(), a, "{name}");
    }
}
