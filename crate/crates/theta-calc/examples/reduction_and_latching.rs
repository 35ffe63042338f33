//! Reduction to discrete level zero, the non-mono collapse, latching
//! objects, and the relative latching criterion for levelwise monos.
//!
//!     cargo run --example reduction_and_latching

use theta_calc::families;
use theta_calc::gen;
use theta_calc::presheaf;
use theta_calc::reedy;
use theta_calc::segal::{self, SegalPreObject};
use theta_calc::site::{Site, Window};
use theta_calc::theta::ThetaObject;

fn main() {
    let inner = Site::theta(1);
    let dsite = inner.with_outer_simplicial();

    // reducing the constant diagram on an edge collapses it to a point;
    // the boundary keeps two. The induced map is the fold, not a mono.
    let shape = dsite.terminal().with_factor(1, ThetaObject::simplex(1));
    let edge_boundary = presheaf::boundary(&dsite, &shape);
    let folded = families::reduced_map(&edge_boundary).unwrap();
    let top = dsite.terminal();
    println!(
        "reduced boundary inclusion: {} points -> {} point, mono: {}",
        folded.source().size_at(&top),
        folded.target().size_at(&top),
        folded.is_mono_on(&Window::up_to_degree(&dsite, 2))
    );

    // the adjunction: maps out of the reduction match maps out of the
    // diagram into anything discrete at level zero
    let mut rng = gen::rng_from_seed(6);
    let x = gen::rand_presheaf(&mut rng, &dsite, 3, 2, 2);
    let y = gen::rand_spo(&mut rng, &inner, 2, 2, 1, 1).unwrap();
    let r = segal::reduction(&x).unwrap();
    println!(
        "adjunction counts: {} from the reduction, {} from the diagram",
        presheaf::hom_set(&r.object, y.total()).unwrap().len(),
        presheaf::hom_set(&x, y.total()).unwrap().len(),
    );

    // latching objects of a random diagram, with the degeneracy partition
    let spo = gen::rand_spo(&mut rng, &inner, 3, 2, 2, 2).unwrap();
    let probe = Window::up_to_degree(&inner, 2);
    for m in 1..=2usize {
        let lat = reedy::latching(&spo, m);
        let level_total: usize =
            probe.objects().iter().map(|t| spo.level(m).size_at(t)).sum();
        let lat_total: usize =
            probe.objects().iter().map(|t| lat.object.size_at(t)).sum();
        println!("level {m}: {lat_total} of {level_total} elements degenerate over the window");
    }

    // relative latching maps of a levelwise mono are monos at every level
    let base = gen::rand_presheaf(&mut rng, &dsite, 3, 2, 1);
    let (extended, incl) = gen::rand_mono_extension(&mut rng, &base, 2, 2, 1);
    let xs = SegalPreObject::from_total_unchecked(base);
    let ys = SegalPreObject::from_total_unchecked(extended);
    let report = reedy::cofibration_check(&incl, &xs, &ys, 3, &probe).unwrap();
    println!("\nrelative latching maps of a levelwise mono:");
    for level in &report.levels {
        println!("  m={}: mono={}", level.m, level.latching_mono);
    }

    // skeleta exhaust and the zero coskeleton has vertex-power levels
    let sk = reedy::skeleton(&spo, 0);
    println!(
        "\nsk_0 at the point: {} (= vertex count {})",
        sk.size_at(&dsite.terminal()),
        spo.vertex_count()
    );
    let (cosk, _unit) = reedy::coskeleton0(&spo);
    let one = inner.terminal().insert_factor(0, ThetaObject::simplex(1));
    println!(
        "(cosk_0 X)_1 = {} (= {}^2)",
        cosk.size_at(&one),
        spo.vertex_count()
    );
}
