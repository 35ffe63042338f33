//! Seeded random instances: objects, morphisms, presheaves, diagram maps,
//! Segal precategory objects, and enriched categories. Everything is driven
//! by a caller-supplied RNG so suites replay byte-for-byte from a seed.

use rand::prelude::*;
use rand::rngs::StdRng;

use crate::enriched::EnrichedCategory;
use crate::error::Result;
use crate::presheaf::{self, Cell, ElemKey, Presentation, Presheaf, PresheafMap, Relation};
use crate::segal::{self, SegalPreObject};
use crate::site::{Site, SiteMorphism, SiteObject};
use crate::theta::ThetaObject;

pub fn rng_from_seed(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_theta_object(rng: &mut StdRng, level: u32, max_degree: usize) -> ThetaObject {
    let pool = ThetaObject::enumerate(level, max_degree);
    pool[rng.gen_range(0..pool.len())].clone()
}

pub fn rand_site_object(rng: &mut StdRng, site: &Site, max_degree: usize) -> SiteObject {
    let pool = site.enumerate(max_degree);
    pool[rng.gen_range(0..pool.len())].clone()
}

pub fn rand_morphism(rng: &mut StdRng, a: &SiteObject, b: &SiteObject) -> Option<SiteMorphism> {
    let hom = SiteMorphism::hom(a, b);
    if hom.is_empty() {
        return None;
    }
    Some(hom[rng.gen_range(0..hom.len())].clone())
}

/// A random presentation: cells with random shapes and a few random gluing
/// relations between parallel elements.
pub fn rand_presentation(
    rng: &mut StdRng,
    site: &Site,
    cells: usize,
    shape_degree: usize,
    relations: usize,
) -> Presentation {
    let shapes: Vec<SiteObject> =
        (0..cells).map(|_| rand_site_object(rng, site, shape_degree)).collect();
    let cell_list: Vec<Cell> = shapes.iter().map(|s| Cell { shape: s.clone() }).collect();
    let mut rel_list = Vec::new();
    if cells > 0 {
        for _ in 0..relations {
            let i = rng.gen_range(0..cells);
            let j = rng.gen_range(0..cells);
            let e = rand_site_object(rng, site, shape_degree);
            let (Some(mi), Some(mj)) =
                (rand_morphism(rng, &e, &shapes[i]), rand_morphism(rng, &e, &shapes[j]))
            else {
                continue;
            };
            rel_list.push(Relation { left: (i, mi), right: (j, mj) });
        }
    }
    Presentation::new(site.clone(), cell_list, rel_list).expect("random presentation")
}

pub fn rand_presheaf(
    rng: &mut StdRng,
    site: &Site,
    cells: usize,
    shape_degree: usize,
    relations: usize,
) -> Presheaf {
    Presheaf::from_presentation(rand_presentation(rng, site, cells, shape_degree, relations))
}

/// A random natural map `P -> X` by randomized backtracking over the cells;
/// `None` when no map exists.
pub fn rand_map_into(rng: &mut StdRng, p: &Presheaf, x: &Presheaf) -> Option<PresheafMap> {
    let pres = p.presentation()?;
    let sizes: Vec<usize> = pres.cells.iter().map(|c| x.size_at(&c.shape)).collect();
    let mut by_last: Vec<Vec<&Relation>> = vec![Vec::new(); pres.cells.len()];
    for r in &pres.relations {
        by_last[r.left.0.max(r.right.0)].push(r);
    }
    fn go(
        rng: &mut StdRng,
        assign: &mut Vec<usize>,
        sizes: &[usize],
        by_last: &[Vec<&Relation>],
        x: &Presheaf,
    ) -> bool {
        let pos = assign.len();
        if pos == sizes.len() {
            return true;
        }
        let mut order: Vec<usize> = (0..sizes[pos]).collect();
        order.shuffle(rng);
        'candidate: for &v in &order {
            assign.push(v);
            for r in &by_last[pos] {
                if x.act(&r.left.1, assign[r.left.0]) != x.act(&r.right.1, assign[r.right.0]) {
                    assign.pop();
                    continue 'candidate;
                }
            }
            if go(rng, assign, sizes, by_last, x) {
                return true;
            }
            assign.pop();
        }
        false
    }
    let mut assign = Vec::new();
    if go(rng, &mut assign, &sizes, &by_last, x) {
        Some(PresheafMap::on_cells(p, x, assign).expect("backtracked map is compatible"))
    } else {
        None
    }
}

/// A presentation extension `X -> Y`: `Y` adds cells and only relations whose
/// sides both touch a new cell, so the inclusion is levelwise mono.
pub fn rand_mono_extension(
    rng: &mut StdRng,
    x: &Presheaf,
    extra_cells: usize,
    shape_degree: usize,
    extra_relations: usize,
) -> (Presheaf, PresheafMap) {
    let base = x.presentation().expect("presented base").clone();
    let site = base.site.clone();
    let mut cells = base.cells.clone();
    let old = cells.len();
    for _ in 0..extra_cells {
        cells.push(Cell { shape: rand_site_object(rng, &site, shape_degree) });
    }
    let mut relations = base.relations.clone();
    if extra_cells > 0 {
        for _ in 0..extra_relations {
            // both sides on new cells keeps the old part untouched
            let i = old + rng.gen_range(0..extra_cells);
            let j = old + rng.gen_range(0..extra_cells);
            let e = rand_site_object(rng, &site, shape_degree);
            let (Some(mi), Some(mj)) = (
                rand_morphism(rng, &e, &cells[i].shape),
                rand_morphism(rng, &e, &cells[j].shape),
            ) else {
                continue;
            };
            relations.push(Relation { left: (i, mi), right: (j, mj) });
        }
    }
    let y = Presheaf::from_presentation(
        Presentation::new(site, cells, relations).expect("extension presentation"),
    );
    let assignment: Vec<usize> = base
        .cells
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            y.eval(&c.shape)
                .position(&ElemKey::Cls(ci, SiteMorphism::identity(&c.shape)))
                .expect("old cell persists")
        })
        .collect();
    let incl = PresheafMap::on_cells(x, &y, assignment).expect("inclusion of presentations");
    (y, incl)
}

/// A random Segal precategory object over an inner site: a random presented
/// diagram with outer levels capped at `outer_max`, reduced so level zero is
/// discrete.
pub fn rand_spo(
    rng: &mut StdRng,
    inner: &Site,
    cells: usize,
    shape_degree: usize,
    relations: usize,
    outer_max: usize,
) -> Result<SegalPreObject> {
    let dsite = inner.with_outer_simplicial();
    let cells = cells.max(1);
    let cap = |mut s: SiteObject, rng: &mut StdRng| {
        if s.factor(0).width() > outer_max {
            s = s.with_factor(0, ThetaObject::simplex(rng.gen_range(0..=outer_max)));
        }
        s
    };
    let shapes: Vec<SiteObject> = (0..cells)
        .map(|_| {
            let s = rand_site_object(rng, &dsite, shape_degree);
            cap(s, rng)
        })
        .collect();
    let cell_list: Vec<Cell> = shapes.iter().map(|s| Cell { shape: s.clone() }).collect();
    let mut rel_list = Vec::new();
    for _ in 0..relations {
        let i = rng.gen_range(0..cells);
        let j = rng.gen_range(0..cells);
        let e = cap(rand_site_object(rng, &dsite, shape_degree), rng);
        let (Some(mi), Some(mj)) =
            (rand_morphism(rng, &e, &shapes[i]), rand_morphism(rng, &e, &shapes[j]))
        else {
            continue;
        };
        rel_list.push(Relation { left: (i, mi), right: (j, mj) });
    }
    let raw = Presheaf::from_presentation(Presentation::new(dsite, cell_list, rel_list)?);
    let reduced = segal::reduction(&raw)?;
    Ok(SegalPreObject::from_total_unchecked(reduced.object))
}

/// A random enriched category drawn from three stock families: free path
/// categories on acyclic graphs, linear chain categories with presheaf homs,
/// and suspensions.
pub fn rand_enriched_category(
    rng: &mut StdRng,
    inner: &Site,
    shape_degree: usize,
) -> Result<EnrichedCategory> {
    match rng.gen_range(0..3u8) {
        0 => {
            let vertices = rng.gen_range(1..=3usize);
            let mut edges = Vec::new();
            for a in 0..vertices {
                for b in a + 1..vertices {
                    if rng.gen_bool(0.6) {
                        edges.push((a, b));
                    }
                }
            }
            EnrichedCategory::path_category(inner, vertices, &edges)
        }
        1 => {
            let k = rng.gen_range(1..=2usize);
            let consecutive: Vec<Presheaf> = (0..k)
                .map(|_| {
                    let ncells = rng.gen_range(1..=2);
                    rand_presheaf(rng, inner, ncells, shape_degree, 1)
                })
                .collect();
            EnrichedCategory::chain_category(inner, consecutive)
        }
        _ => {
            let ncells = rng.gen_range(1..=2);
            let a = rand_presheaf(rng, inner, ncells, shape_degree, 1);
            Ok(EnrichedCategory::suspension(&a))
        }
    }
}

/// A random map between random discrete presheaves on a site.
pub fn rand_discrete_map(rng: &mut StdRng, site: &Site, max_points: usize) -> PresheafMap {
    let nx = rng.gen_range(1..=max_points);
    let ny = rng.gen_range(1..=max_points);
    let x = presheaf::discrete(site, nx);
    let y = presheaf::discrete(site, ny);
    let top = site.terminal();
    let assignment: Vec<usize> = (0..nx)
        .map(|_| {
            let v = rng.gen_range(0..ny);
            y.eval(&top)
                .position(&ElemKey::Cls(v, SiteMorphism::identity(&top)))
                .expect("point")
        })
        .collect();
    PresheafMap::on_cells(&x, &y, assignment).expect("discrete map")
}

/// A random map of Segal precategory objects, found by randomized
/// backtracking on the presented total diagrams.
pub fn rand_spo_map(
    rng: &mut StdRng,
    source: &SegalPreObject,
    target: &SegalPreObject,
) -> Option<segal::SpoMap> {
    let map = rand_map_into(rng, source.total(), target.total())?;
    Some(segal::SpoMap { source: source.clone(), target: target.clone(), map })
}
