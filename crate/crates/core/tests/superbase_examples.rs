use changemaker_core::cmlattice::{changemaker_lattice, StableCoefficients};
use changemaker_core::graphlat::{
    find_obtuse_superbase, laplacian_lattice, lattice_isomorphic, superbase_graph,
    SearchCertificate, SearchOptions,
};
use changemaker_core::{GramMatrix, Rational};

fn search(g: &GramMatrix, bound: i64) -> SearchCertificate {
    find_obtuse_superbase(
        g,
        &SearchOptions {
            norm_bound: Some(bound),
            ..Default::default()
        },
    )
    .unwrap()
}

fn integral(slope: i64, stable: &[i64]) -> GramMatrix {
    let stable = StableCoefficients::new(stable.to_vec()).unwrap();
    changemaker_lattice(Rational::integer(slope).unwrap(), &stable, None)
        .unwrap()
        .gram
}

#[test]
fn pretzel_range() {
    for slope in [18, 19] {
        let g = integral(slope, &[3, 2, 2]);
        let SearchCertificate::Found(b) = search(&g, 8) else {
            panic!("slope {slope} should admit a superbase");
        };
        let h = superbase_graph(&g, &b).unwrap();
        assert!(
            lattice_isomorphic(&laplacian_lattice(&h, 0).unwrap().gram, &g)
                .unwrap()
                .is_some()
        );
    }
    assert!(matches!(
        search(&integral(20, &[3, 2, 2]), 8),
        SearchCertificate::NotFound { norm_bound: 8, .. }
    ));
}

#[test]
fn cable_lattices() {
    for slope in [29, 30, 31] {
        let cert = search(&integral(slope, &[4, 2, 2, 2]), 10);
        assert!(
            matches!(cert, SearchCertificate::NotFound { norm_bound: 10, .. }),
            "slope {slope}: {cert:?}"
        );
    }
}
