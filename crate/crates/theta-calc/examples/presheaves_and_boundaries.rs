//! Representables, boundaries, Segal cores, limits and colimits, exact
//! hom-sets, and matching objects.
//!
//!     cargo run --example presheaves_and_boundaries

use theta_calc::presheaf;
use theta_calc::reedy;
use theta_calc::site::{Site, SiteObject, Window};
use theta_calc::theta::ThetaObject;

fn main() {
    let site = Site::theta(1);
    let obj = |m: usize| SiteObject(vec![ThetaObject::simplex(m)]);

    // the representable triangle and its boundary
    let tri = presheaf::representable(&site, &obj(2));
    let boundary = presheaf::boundary(&site, &obj(2));
    println!("triangle and its boundary, by probe level:");
    for probe in 0..=3usize {
        println!(
            "  at [{probe}]: {} elements, boundary {}",
            tri.size_at(&obj(probe)),
            boundary.source().size_at(&obj(probe)),
        );
    }

    // the Segal core: both edges glued along the middle vertex
    let core = presheaf::segal_core(&site, 2, &[ThetaObject::point(), ThetaObject::point()])
        .unwrap();
    println!(
        "\nSegal core of the triangle at [1]: {} of {}",
        core.source().size_at(&obj(1)),
        core.target().size_at(&obj(1))
    );
    let w = Window::up_to_degree(&site, 3);
    println!("  core inclusion mono on the window: {}", core.is_mono_on(&w));

    // products are pointwise; hom-sets are exact
    let edge = presheaf::representable(&site, &obj(1));
    let square = presheaf::product(&edge, &edge).unwrap();
    println!("\n(edge x edge) at [1]: {}", square.size_at(&obj(1)));
    println!(
        "maps core -> triangle: {}",
        presheaf::hom_set(core.source(), &tri).unwrap().len()
    );

    // the matching set at an object is the hom out of its boundary
    let matching = reedy::matching(&edge, &obj(1)).unwrap();
    println!("matching of the edge at [1]: {} (pairs of endpoints)", matching.len());

    // tabulation gives explicit value and action tables over a window
    let small = Window::up_to_degree(&site, 2);
    let table = presheaf::tabulate(&tri, &small).unwrap();
    println!("\ntabulated triangle sizes over the degree-2 window:");
    for (d, n) in &table.sizes {
        println!("  {d}: {n}");
    }
    println!("functorial: {}", table.verify_functorial());

    // a Θ_2 boundary via the same machinery
    let site2 = Site::theta(2);
    let cell = SiteObject(vec![ThetaObject::new(2, vec![ThetaObject::simplex(1)]).unwrap()]);
    let b2 = presheaf::boundary(&site2, &cell);
    println!(
        "\nboundary of {} at the 1-arrow: {} elements",
        cell,
        b2.source().size_at(&SiteObject(vec![ThetaObject::new(
            2,
            vec![ThetaObject::simplex(0)]
        )
        .unwrap()]))
    );
}
