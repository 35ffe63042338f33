//! Objects and morphisms of the cell categories Θ_n: enumeration,
//! composition, classification, and epi-mono factorization.
//!
//!     cargo run --example cell_categories

use theta_calc::theta::{ThetaMorphism, ThetaObject};

fn main() {
    // Θ_1 is the simplex category: hom counts follow the binomial formula
    println!("hom counts in the simplex category:");
    for m in 0..=4usize {
        let row: Vec<usize> = (0..=4usize)
            .map(|q| ThetaMorphism::hom(&ThetaObject::simplex(m), &ThetaObject::simplex(q)).len())
            .collect();
        println!("  [{m}] -> [0..4]: {row:?}");
    }

    // a 2-cell shape: [1]([1]) has five endomorphisms
    let cell = ThetaObject::new(2, vec![ThetaObject::simplex(1)]).unwrap();
    let endos = ThetaMorphism::hom(&cell, &cell);
    println!("\nendomorphisms of {cell}: {}", endos.len());
    for f in endos.iter() {
        let class = f.classify();
        println!(
            "  {f}  mono={} split_epi={} iso={}",
            class.mono, class.split_epi, class.iso
        );
    }

    // objects of Θ_2 by degree: 2^(d-1) of each positive degree d
    let all = ThetaObject::enumerate(2, 4);
    println!("\nΘ_2 objects by degree (degree: count):");
    for d in 0..=4usize {
        let count = all.iter().filter(|o| o.degree() == d).count();
        println!("  {d}: {count}");
    }

    // elementary codegeneracies drop degree by exactly one
    let mixed = ThetaObject::new(2, vec![ThetaObject::simplex(1), ThetaObject::simplex(0)])
        .unwrap();
    println!("\nelementary codegeneracies of {mixed}:");
    for s in ThetaMorphism::elementary_codegeneracies(&mixed) {
        println!("  {s} : degree {} -> {}", s.source().degree(), s.target().degree());
    }

    // every morphism factors as a split epi followed by a mono
    let f = ThetaMorphism::simplicial(2, 1, vec![0, 0, 1]).unwrap();
    let (epi, mono) = f.factor_epi_mono();
    println!("\n{f} factors as {mono} . {epi} through {}", epi.target());
    assert_eq!(mono.compose(&epi).unwrap(), f);
}
