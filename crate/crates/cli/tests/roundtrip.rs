use gfix_cli::document::{load_document, GConstruction, SpaceDocument};
use gfix_core::random::{random_map, random_metric_retrying};
use gfix_core::Tolerance;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #[test]
    fn documents_round_trip_exactly(seed in any::<u64>(), n in 1usize..=6, sum in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let metric = random_metric_retrying(&mut rng, n, Tolerance::default());
        let map = random_map(&mut rng, n);
        let construction = if sum { GConstruction::Sum } else { GConstruction::Max };

        let doc = SpaceDocument::from_metric(&metric, construction, Some(&map));
        let text = serde_json::to_string(&doc).unwrap();
        let back: SpaceDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);

        let loaded = load_document(back, Tolerance::default()).unwrap();
        let ing = loaded.into_ingested(Tolerance::default()).unwrap();
        prop_assert_eq!(ing.map.as_ref(), Some(&map));
        let direct = construction.apply(&metric);
        prop_assert_eq!(ing.space.table().values(), direct.table().values());

        let tensor = SpaceDocument::from_space(&ing.space, ing.map.as_ref());
        let text = serde_json::to_string(&tensor).unwrap();
        let again = load_document(serde_json::from_str(&text).unwrap(), Tolerance::default()).unwrap();
        let again = again.into_ingested(Tolerance::default()).unwrap();
        prop_assert_eq!(again.space.table().values(), ing.space.table().values());
    }
}
