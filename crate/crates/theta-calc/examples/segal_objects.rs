//! Segal precategory objects: Segal maps, strictness, component categories,
//! and the free composable pair as a non-example.
//!
//!     cargo run --example segal_objects

use theta_calc::enriched::EnrichedCategory;
use theta_calc::families;
use theta_calc::presheaf;
use theta_calc::segal::{self, SegalPreObject};
use theta_calc::site::{Site, SiteObject, Window};
use theta_calc::theta::ThetaObject;

fn main() {
    let inner = Site::theta(1);
    let probe = Window::up_to_degree(&inner, 2);

    // the nerve of a category is a strict Segal object
    let a = presheaf::representable(&inner, &SiteObject(vec![ThetaObject::simplex(1)]));
    let nerve = EnrichedCategory::suspension(&a).nerve();
    println!(
        "suspension nerve strict: {}",
        nerve.is_segal_strict(&probe, 4).unwrap().is_none()
    );
    let top = inner.terminal();
    for k in 2..=4usize {
        let phi = nerve.segal_map(k);
        println!(
            "  Segal map {k} at the point: {} -> {}",
            phi.source().size_at(&top),
            phi.target().size_at(&top)
        );
    }

    // the free composable pair has no composite: the check returns a witness
    let dsite = inner.with_outer_simplicial();
    let spine = families::spine_inclusion(&dsite, 0, 2).unwrap();
    let free = SegalPreObject::from_total_unchecked(spine.source().clone());
    match free.is_segal_strict(&probe, 2).unwrap() {
        Some(witness) => println!("\nfree composable pair fails: {witness}"),
        None => println!("\nunexpected: the free pair passed"),
    }

    // component category of a nerve with a disconnected hom
    let two = presheaf::discrete(&inner, 2);
    let n2 = EnrichedCategory::suspension(&two).nerve();
    let ho = segal::homotopy_category(&n2, &probe).unwrap();
    println!("\ncomponent category of the two-arrow suspension:");
    for x in 0..ho.object_count() {
        for y in 0..ho.object_count() {
            println!("  hom({x},{y}) has {} classes", ho.hom_size(x, y));
        }
    }

    // edge fibers decompose level one over vertex pairs
    let v = n2.vertex_count();
    let mut total = 0usize;
    for x in 0..v {
        for y in 0..v {
            total += n2.fiber(1, &[x, y]).unwrap().size_at(&top);
        }
    }
    println!(
        "\nfiber decomposition at level one: {} summed vs {} direct",
        total,
        n2.level(1).size_at(&top)
    );
}
