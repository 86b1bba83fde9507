//! The census depends only on the surface, not on the coordinates it is
//! written in.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sextic_core::census::{run_census, CensusOptions};
use sextic_core::gallery::prescribed_nodes;
use sextic_core::linalg::{self, Matrix};
use sextic_core::{FieldSpec, HomoPoly, ProjPoint, Scalar};

fn random_invertible(f: &FieldSpec, rng: &mut ChaCha8Rng) -> Matrix<Scalar> {
    loop {
        let entries: Vec<Scalar> = (0..16).map(|_| f.sample_uniform(rng).unwrap()).collect();
        let m = Matrix::new(4, 4, entries);
        if linalg::rank(f, &m) == 4 {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn census_survives_a_change_of_coordinates(seed in 0u64..1000, extra in 0usize..4) {
        let f = FieldSpec::prime(23).unwrap();
        let mut pts: Vec<ProjPoint> =
            (0..4).map(|t| ProjPoint::from_ints(&f, [0, 0, 1, t]).unwrap()).collect();
        for i in 0..extra {
            let i = i as i64;
            pts.push(ProjPoint::from_ints(&f, [1, 2 + i, 5 * i, 7 + i * i]).unwrap());
        }
        let (s, _, _) = prescribed_nodes(&pts, &f, seed).unwrap();
        let before = run_census(&s, &CensusOptions::default()).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_invertible(&f, &mut rng);
        let images: [HomoPoly; 4] =
            std::array::from_fn(|i| HomoPoly::linear(&f, &std::array::from_fn(|j| m.get(i, j).clone())));
        let after = run_census(&s.substitute(&images), &CensusOptions::default()).unwrap();

        prop_assert_eq!(after.node_count(), before.node_count());
        prop_assert_eq!(after.defect.defect, before.defect.defect);
        prop_assert_eq!(after.fibration_count, before.fibration_count);
        prop_assert_eq!(after.fano_model_exists, before.fano_model_exists);
        prop_assert_eq!(&after.rules, &before.rules);
        // the line through the four planted nodes carries the line fibration
        prop_assert_eq!(before.fibration_count, before.node_count() + 1);
    }
}
