use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ultravote::fintop::{
    enumerate_topologies, nasse_of, normality_check, random_preorder, topo_of, FiniteTopology, Preorder,
};

#[test]
fn sierpinski_space() {
    let t = FiniteTopology::new(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
    let p = nasse_of(&t);
    assert_eq!(p.matrix(), vec![vec![1, 0], vec![1, 1]]);
    let r = normality_check(&t).unwrap();
    assert!(r.agree && r.extremal_agree);
}

#[test]
fn random_round_trips_up_to_six_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..1000 {
        let k = 1 + i % 6;
        let p = random_preorder(&mut rng, k, 0.25).unwrap();
        let t = topo_of(&p);
        assert_eq!(nasse_of(&t), p);
        assert_eq!(topo_of(&nasse_of(&t)), t);
    }
}

#[test]
fn normality_on_five_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let t = topo_of(&random_preorder(&mut rng, 5, 0.2).unwrap());
        let r = normality_check(&t).unwrap();
        assert!(r.agree && r.extremal_agree, "{:?}: {r:?}", t.to_member_lists());
    }
}

#[test]
fn enumerated_topologies_are_distinct() {
    let ts = enumerate_topologies(3).unwrap();
    let mut nasses: Vec<Vec<u32>> = ts.iter().map(|t| nasse_of(t).rows().to_vec()).collect();
    nasses.sort();
    nasses.dedup();
    assert_eq!(nasses.len(), ts.len());
}

proptest! {
    #[test]
    fn closure_of_is_a_preorder(rows in proptest::collection::vec(0u32..64, 1..=6)) {
        let p = Preorder::closure_of(&rows).unwrap();
        prop_assert!(Preorder::from_rows(p.rows().to_vec()).is_ok());
        let t = topo_of(&p);
        prop_assert!(FiniteTopology::from_masks(t.points(), t.opens().to_vec()).is_ok());
    }
}
