//! Generating map families, right-lifting search, marked objects, and the
//! bounded cell-attachment factorization.
//!
//!     cargo run --example lifting_and_families

use theta_calc::families::{self, FamilyBounds};
use theta_calc::gen;
use theta_calc::presheaf;
use theta_calc::site::{Site, Window};

fn main() {
    let bounds = FamilyBounds { p_max: 1, m_max: 2, inner_degree: 1, iso_nerve_truncation: 3 };

    // boundary inclusions generate the cofibrations of presheaves on (Δ, Θ_1)
    let gens = families::generating_cofibrations(1, &bounds);
    println!("generating cofibrations within bounds: {}", gens.len());

    // the free family: the point detector plus collapsed cylinders
    let free = families::free_generator_family(1, &bounds).unwrap();
    println!("free family members: {}", free.len());

    // the reduced family, each member checked mono
    let dsite = families::diagram_site(1);
    let probe = Window::up_to_degree(&dsite, 2);
    let reduced = families::reduced_generator_family(1, &bounds, &probe).unwrap();
    println!(
        "reduced family members: {} (all mono: {})",
        reduced.len(),
        reduced.iter().all(|m| m.mono_checked)
    );

    // the complete-Segal acyclic family at n = 1, with truncated
    // walking-isomorphism members
    let css = families::complete_segal_acyclic_family(&bounds).unwrap();
    println!("acyclic family members: {}", css.len());

    // maps of discrete objects lift against all of them
    let site = Site::new(vec![1, 1]).unwrap();
    let mut rng = gen::rng_from_seed(9);
    let f = gen::rand_discrete_map(&mut rng, &site, 3);
    let all = css
        .iter()
        .all(|i| families::has_rlp(&f, i).unwrap().rlp);
    println!("a random discrete map lifts against the whole family: {all}");

    // and pairs lift jointly
    let g = gen::rand_discrete_map(&mut rng, &site, 3);
    println!(
        "the coproduct lifts too: {}",
        families::coproduct_fibration_check(&f, &g, &css).unwrap()
    );

    // vertex-marked simplices and spines for fixed-object families
    let marked = families::marked_simplex(&dsite, 2, &[0, 1, 0], 3).unwrap();
    println!(
        "\nmarked 2-simplex over three labels: {} points at level zero",
        marked.object.size_at(&dsite.terminal())
    );
    let spine = families::marked_spine(&dsite, 2, &[0, 1, 0], 3).unwrap();
    println!("marked spine is mono: {}", spine.is_mono_on(&probe));
    let a = families::extend_presented(
        &presheaf::representable(
            &families::theta_space_site(1),
            &theta_calc::site::SiteObject(vec![
                theta_calc::theta::ThetaObject::simplex(0),
                theta_calc::theta::ThetaObject::simplex(1),
            ]),
        ),
        &dsite,
        &[1, 2],
    )
    .unwrap();
    let cyl = families::marked_cylinder(&a, 1, &[0, 1], 2).unwrap();
    println!(
        "marked cylinder has discrete level zero of size {}",
        cyl.object.size_at(&dsite.terminal())
    );

    // the bounded attachment run: localize the spine inclusion
    let spine2 = families::spine_inclusion(&site, 0, 2).unwrap();
    let run = families::soa_factorize(&spine2, std::slice::from_ref(&spine2), 4).unwrap();
    println!(
        "\nspine localization: {} attachments over {} stages, lifting reached: {}",
        run.attachments, run.stages_used, run.rlp_achieved
    );
}
