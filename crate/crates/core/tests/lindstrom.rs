use lahnet::lgv::{
    enumerate_disjoint_families, family_weight_sum, verify_all, verify_lindstrom,
    verify_with_weights, SearchLimits,
};
use lahnet::network::{lah_network, unit_network, weight_matrix};
use lahnet::{BigUint, IndexSet};

#[test]
fn lah_network_exhaustive_up_to_5() {
    for n in 1..=5 {
        let s = verify_all(&lah_network(n), 3, SearchLimits::default()).unwrap();
        assert!(s.all_equal(), "n = {n}: {:?}", s.failures);
    }
}

#[test]
fn unit_network_exhaustive_up_to_5() {
    for n in 1..=5 {
        let s = verify_all(&unit_network(n), 3, SearchLimits::default()).unwrap();
        assert!(s.all_equal(), "n = {n}: {:?}", s.failures);
    }
}

#[test]
fn pair_count_for_n5() {
    // C(5,1)^2 + C(5,2)^2 + C(5,3)^2
    let s = verify_all(&lah_network(5), 3, SearchLimits::default()).unwrap();
    assert_eq!(s.pairs_checked, 225);
}

#[test]
fn full_minors_on_n6() {
    let network = lah_network(6);
    for size in 4..=6 {
        for rows in IndexSet::subsets(6, size) {
            for cols in IndexSet::subsets(6, size) {
                let r = verify_lindstrom(&network, &rows, &cols).unwrap();
                assert!(r.equal(), "{rows} {cols}: {} vs {}", r.minor, r.family_sum);
            }
        }
    }
}

#[test]
fn singleton_families_weigh_lah_numbers() {
    let network = lah_network(5);
    let w = weight_matrix(&network);
    for i in 1..=5 {
        for j in 1..=5 {
            let r =
                verify_lindstrom(&network, &IndexSet::range(i, i), &IndexSet::range(j, j)).unwrap();
            assert!(r.equal());
            assert_eq!(&r.minor, w.entry(i, j));
        }
    }
}

#[test]
fn family_count_on_n3() {
    let network = lah_network(3);
    let rows: IndexSet = "2,3".parse().unwrap();
    let cols: IndexSet = "1,2".parse().unwrap();
    let fams = enumerate_disjoint_families(&network, &rows, &cols).unwrap();
    assert_eq!(fams.len(), 1);
    let total: BigUint = fams.iter().map(|f| f.weight(&network).unwrap()).sum();
    assert_eq!(total, BigUint::from(6u32));
    assert_eq!(family_weight_sum(&network, &rows, &cols).unwrap(), total);
}

#[test]
fn every_diagonal_mutation_is_caught() {
    let network = lah_network(4);
    let reference = weight_matrix(&network);
    let mut mutations = 0;
    for r in 2..=4 {
        for c in 1..r {
            let tail = network.grid_vertex(r, c).unwrap();
            let head = network.grid_vertex(r - 1, c).unwrap();
            let w = &network.edge_between(tail, head).unwrap().weight;
            let mutated = network.with_edge_weight(tail, head, w + 1u32).unwrap();
            mutations += 1;
            assert_ne!(weight_matrix(&mutated), reference, "u[{r},{c}]");
            let s = (1..=3)
                .flat_map(|p| IndexSet::subsets(4, p).collect::<Vec<_>>())
                .any(|rows| {
                    IndexSet::subsets(4, rows.len()).any(|cols| {
                        !verify_with_weights(
                            &mutated,
                            &reference,
                            &rows,
                            &cols,
                            SearchLimits::default(),
                        )
                        .unwrap()
                        .equal()
                    })
                });
            assert!(s, "u[{r},{c}] not caught by any minor");
        }
    }
    assert_eq!(mutations, 6);
}
