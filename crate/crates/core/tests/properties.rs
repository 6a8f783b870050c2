use proptest::prelude::*;

use cia_core::grid::{self, Grid, Hypergraph};
use cia_core::groebner::{self, Limits};
use cia_core::ideals::{self, Ideal, IdealJson, Instance};
use cia_core::poly::Rationals;

/// Random hypergraphs on a small grid with edges of size 2 or 3.
fn hypergraph() -> impl Strategy<Value = (usize, Hypergraph)> {
    (2usize..=3, prop::collection::vec(prop::collection::btree_set(1usize..=6, 2..=3), 1..4)).prop_map(|(d, edges)| {
        let h = Hypergraph::new(6, edges.into_iter().map(|e| e.into_iter().collect())).unwrap();
        (d, h)
    })
}

fn main_instance() -> impl Strategy<Value = Instance> {
    prop_oneof![Just((2, 2, 2)), Just((2, 2, 3)), Just((2, 3, 3)), Just((3, 3, 3))]
        .prop_map(|(k, l, d)| Instance::main(k, l, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_basis_is_a_basis_and_schedule_independent((d, h) in hypergraph(), seed in any::<u64>()) {
        let ideal = ideals::hyperedge_ideal(d, &h, Rationals).unwrap();
        let plain = Limits::default();
        let chained = Limits { chain_criterion: true, ..plain };
        let gb = groebner::buchberger(ideal.generators(), ideal.ring(), Rationals, &plain).unwrap();
        prop_assert!(groebner::is_groebner(gb.elements(), true).unwrap().passed());
        let gb2 = groebner::buchberger(ideal.generators(), ideal.ring(), Rationals, &chained).unwrap();
        prop_assert_eq!(&gb2, &gb);
        let mut shuffled = ideal.generators().to_vec();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n.max(1));
        if seed % 2 == 1 {
            shuffled.reverse();
        }
        let gb3 = groebner::buchberger(&shuffled, ideal.ring(), Rationals, &plain).unwrap();
        prop_assert_eq!(&gb3, &gb);
        // Every generator lies in the ideal of its basis.
        prop_assert!(groebner::first_non_member(&gb, ideal.generators()).unwrap().is_none());
    }

    #[test]
    fn transversal_components_are_squarefree_bases(inst in main_instance(), pick in any::<prop::sample::Index>()) {
        let g = inst.grid();
        let sets = grid::script_l(&g).unwrap();
        let set = pick.get(&sets);
        let is = ideals::ideal_is(&g, inst.d, 2, set, Rationals, false).unwrap();
        prop_assert!(groebner::is_groebner(is.generators(), false).unwrap().passed());
        let gb = is.groebner_basis(&Limits::default()).unwrap();
        prop_assert!(groebner::radical_certificate(&gb).is_squarefree());
        // The component contains J.
        let j = ideals::ci_ideal(&inst, Rationals).unwrap();
        prop_assert!(groebner::first_non_member(&gb, j.generators()).unwrap().is_none());
    }

    #[test]
    fn symmetry_classes_partition_the_transversals(k in 2usize..=3, l in 2usize..=4) {
        let g = Grid::new(k, l).unwrap();
        let sets = grid::script_l(&g).unwrap();
        let classes = grid::symmetry_classes(&g, &sets);
        let mut all: Vec<Vec<usize>> = classes.iter().flatten().cloned().collect();
        all.sort();
        prop_assert_eq!(&all, &sets);
        for class in &classes {
            prop_assert!(class.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn ideal_json_round_trips((d, h) in hypergraph()) {
        let ideal = ideals::hyperedge_ideal(d, &h, Rationals).unwrap().with_label("J");
        let text = serde_json::to_string(&ideal.to_json().unwrap()).unwrap();
        let back: IdealJson = serde_json::from_str(&text).unwrap();
        let again = Ideal::from_json(Rationals, &back).unwrap();
        prop_assert_eq!(again.generators(), ideal.generators());
        prop_assert_eq!(serde_json::to_string(&again.to_json().unwrap()).unwrap(), text);
    }
}
