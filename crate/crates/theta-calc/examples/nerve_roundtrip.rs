//! Enriched categories, nerves, strictification, and Dwyer-Kan checks.
//!
//!     cargo run --example nerve_roundtrip

use theta_calc::enriched::{self, EnrichedCategory};
use theta_calc::gen;
use theta_calc::presheaf;
use theta_calc::site::{Site, Window};

fn main() {
    let inner = Site::theta(1);

    // a free path category on a small acyclic graph
    let paths = EnrichedCategory::path_category(&inner, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let top = inner.terminal();
    println!("path category homs at the point:");
    for x in 0..3usize {
        for y in 0..3usize {
            print!(" {}", paths.hom(x, y).size_at(&top));
        }
        println!();
    }

    // nerve, then strictify, and compare: the comparison functor is an
    // isomorphism on every hom
    let (functor, probe) = enriched::roundtrip_comparison(&paths).unwrap();
    functor.verify(&probe).unwrap();
    let iso = (0..3usize)
        .all(|x| (0..3usize).all(|y| functor.hom_maps[&(x, y)].is_iso_on(&probe)));
    println!("\nstrictify(nerve(C)) compares isomorphically to C: {iso}");

    // the other direction: nerve(strictify(X)) against X
    let nerve = paths.nerve();
    let strict = enriched::strictify(&nerve, &probe).unwrap();
    let cmp = enriched::nerve_comparison(&nerve, &strict);
    let dw = Window::up_to_degree(nerve.total().site(), 2);
    println!(
        "nerve(strictify(X)) compares isomorphically to X: {}",
        cmp.is_iso_on(&dw) && cmp.naturality_failure_on(&dw).is_none()
    );

    // component categories computed two ways agree
    let direct = paths.pi0_category().unwrap();
    let via_nerve = theta_calc::segal::homotopy_category(&nerve, &probe).unwrap();
    println!(
        "\ncomponent homs agree with the nerve computation: {}",
        (0..3usize).all(|x| (0..3usize)
            .all(|y| direct.hom_size(x, y) == via_nerve.hom_size(x, y)))
    );

    // a random category from the stock generators round trips too
    let mut rng = gen::rng_from_seed(1);
    let random = gen::rand_enriched_category(&mut rng, &inner, 2).unwrap();
    let (f2, w2) = enriched::roundtrip_comparison(&random).unwrap();
    f2.verify(&w2).unwrap();
    println!("random category round trips: true");

    // suspension of an empty presheaf: two isolated objects
    let isolated = EnrichedCategory::suspension(&presheaf::empty(&inner));
    println!(
        "\nsuspension of the empty presheaf: hom(x,y) empty = {}",
        isolated.hom(0, 1).size_at(&top) == 0
    );
}
