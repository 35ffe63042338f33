//! Latching objects, degeneracy detection, skeleta and the zero coskeleton,
//! matching objects, and the relative latching map of a levelwise map.

use std::sync::Arc;

use crate::error::Result;
use crate::presheaf::{
    self, Data, ElemKey, Presheaf, PresheafMap,
};
use crate::segal::SegalPreObject;
use crate::site::{SiteObject, Window};

/// The latching subobject of level `m`: the union of the images of the
/// elementary degeneracies out of level `m - 1`, with its inclusion and a
/// witnessing degeneracy operator per element.
pub struct LatchingData {
    pub level: usize,
    pub object: Presheaf,
    pub inclusion: PresheafMap,
    /// for each inner window object, a witness `(i, preimage)` per element
    pub witnesses: fn(&LatchingData, &SegalPreObject, &SiteObject) -> Vec<(usize, usize)>,
}

/// Latching data of an outer-simplicial diagram at level `m >= 1`.
pub fn latching(x: &SegalPreObject, m: usize) -> LatchingData {
    let ambient = x.level(m);
    let parts: Vec<PresheafMap> = (0..m).map(|i| x.degeneracy_map(m - 1, i)).collect();
    let inclusion = presheaf::union_image(&ambient, parts);
    LatchingData {
        level: m,
        object: inclusion.source().clone(),
        inclusion,
        witnesses: |data, x, theta| {
            let mut out = Vec::new();
            let n = data.object.size_at(theta);
            for k in 0..n {
                let amb = data.inclusion.apply(theta, k);
                let mut found = None;
                'search: for i in 0..data.level {
                    let s = x.degeneracy_map(data.level - 1, i);
                    for j in 0..x.level(data.level - 1).size_at(theta) {
                        if s.apply(theta, j) == amb {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                out.push(found.expect("latching element has a witness"));
            }
            out
        },
    }
}

/// Partition of the level-`m` elements at an inner object into degenerate
/// and nondegenerate, computed both by latching-image membership and by the
/// pairwise-distinct-degeneracies criterion.
pub struct DegeneracyPartition {
    pub degenerate: Vec<bool>,
    pub image_criterion: Vec<bool>,
    pub distinct_criterion: Vec<bool>,
}

pub fn nondegenerate(x: &SegalPreObject, m: usize, theta: &SiteObject) -> DegeneracyPartition {
    let n = x.level(m).size_at(theta);
    let image_criterion = if m == 0 {
        vec![false; n]
    } else {
        let lat = latching(x, m);
        let mut in_image = vec![false; n];
        for k in 0..lat.object.size_at(theta) {
            in_image[lat.inclusion.apply(theta, k)] = true;
        }
        in_image
    };
    // an element is degenerate iff two of its degeneracies coincide
    let mut distinct_criterion = vec![false; n];
    let up: Vec<Vec<usize>> =
        (0..=m).map(|i| x.degeneracy_map(m, i).component(theta)).collect();
    for e in 0..n {
        'pairs: for i in 0..=m {
            for j in i + 1..=m {
                if up[i][e] == up[j][e] {
                    distinct_criterion[e] = true;
                    break 'pairs;
                }
            }
        }
    }
    DegeneracyPartition {
        degenerate: image_criterion.clone(),
        image_criterion,
        distinct_criterion,
    }
}

/// The matching set of a presheaf at a site object: maps out of the boundary.
pub fn matching(x: &Presheaf, a: &SiteObject) -> Result<Vec<PresheafMap>> {
    let b = presheaf::boundary(x.site(), a);
    presheaf::hom_set(b.source(), x)
}

/// The relative latching map `X_m \cup_{L_m X} L_m Y -> Y_m` of a levelwise
/// map of diagrams.
pub fn relative_latching_map(
    f: &PresheafMap,
    source: &SegalPreObject,
    target: &SegalPreObject,
    m: usize,
) -> Result<PresheafMap> {
    let lat_x = latching(source, m);
    let lat_y = latching(target, m);
    let x_m = source.level(m);
    let y_m = target.level(m);
    // induced map between latching objects
    let f_total = f.clone();
    let lx = lat_x.object.clone();
    let lx_incl = lat_x.inclusion.clone();
    let ly = lat_y.object.clone();
    let ly_incl_w = lat_y.inclusion.clone();
    let m_obj = crate::theta::ThetaObject::simplex(m);
    let lat_map = PresheafMap::pointwise(
        &lat_x.object,
        &lat_y.object,
        Arc::new(move |theta, k| {
            let amb = lx_incl.apply(theta, k);
            let big = theta.insert_factor(0, m_obj.clone());
            let img = f_total.apply(&big, amb);
            let _ = (&lx, &ly_incl_w);
            ly.eval(theta)
                .position(&ElemKey::Sub(img))
                .expect("latching maps to latching")
        }),
    );
    // X_m as an inner presheaf, with f at level m
    let f_total = f.clone();
    let m_obj = crate::theta::ThetaObject::simplex(m);
    let f_m = PresheafMap::pointwise(
        &x_m,
        &y_m,
        Arc::new(move |theta, i| {
            let big = theta.insert_factor(0, m_obj.clone());
            f_total.apply(&big, i)
        }),
    );
    let span = presheaf::pushout(&lat_x.inclusion, &lat_map)?;
    // induced map pushout -> Y_m
    let push = span.object.clone();
    let push_c = push.clone();
    let f_m_c = f_m.clone();
    let ly_incl_c = lat_y.inclusion.clone();
    let out = PresheafMap::pointwise(
        &push,
        &y_m,
        Arc::new(move |theta, cls| {
            match push_c.eval(theta).key(cls) {
                ElemKey::In(0, i) => f_m_c.apply(theta, *i),
                ElemKey::In(1, j) => ly_incl_c.apply(theta, *j),
                other => panic!("unexpected pushout key {other:?}"),
            }
        }),
    );
    Ok(out)
}

/// The subdiagram generated by cells of outer level at most `p`.
pub fn skeleton(x: &SegalPreObject, p: usize) -> Presheaf {
    Presheaf::from_data(
        x.total().site().clone(),
        Data::Skeleton { of: x.total().clone(), factor: 0, level: p },
    )
}

/// The zero coskeleton `(cosk_0 X)_p = X_0^{p+1}` with the unit map into it.
pub fn coskeleton0(x: &SegalPreObject) -> (Presheaf, PresheafMap) {
    let site = x.total().site().clone();
    let v = x.vertex_count();
    let cosk = Presheaf::from_data(
        site.clone(),
        Data::Cosk0 { factor: 0, vertices: v },
    );
    let spo = x.clone();
    let cosk_c = cosk.clone();
    let unit = PresheafMap::pointwise(
        x.total(),
        &cosk,
        Arc::new(move |d, i| {
            let p = d.factor(0).width();
            let theta = d.without_factor(0);
            let vs = spo.vertex_tuple_of(p, &theta, i);
            cosk_c.eval(d).position(&ElemKey::Vs(vs)).expect("vertex tuple")
        }),
    );
    (cosk, unit)
}

/// Checks mono-ness of every relative latching map up to `m_max` over a
/// window of inner objects; reports per level.
pub struct CofibrationReport {
    pub levels: Vec<CofibrationLevel>,
}

pub struct CofibrationLevel {
    pub m: usize,
    pub latching_mono: bool,
    pub witness: Option<(SiteObject, usize, usize)>,
}

pub fn cofibration_check(
    f: &PresheafMap,
    source: &SegalPreObject,
    target: &SegalPreObject,
    m_max: usize,
    probe: &Window,
) -> Result<CofibrationReport> {
    let mut levels = Vec::new();
    for m in 0..=m_max {
        let map: PresheafMap = if m == 0 {
            // latching at level zero is empty: the relative map is f_0
            let x0 = source.level(0);
            let y0 = target.level(0);
            let f_total = f.clone();
            let zero = crate::theta::ThetaObject::simplex(0);
            PresheafMap::pointwise(
                &x0,
                &y0,
                Arc::new(move |theta, i| {
                    f_total.apply(&theta.insert_factor(0, zero.clone()), i)
                }),
            )
        } else {
            relative_latching_map(f, source, target, m)?
        };
        let mut witness = None;
        'probe: for theta in probe.objects() {
            let comp = map.component(theta);
            for i in 0..comp.len() {
                for j in i + 1..comp.len() {
                    if comp[i] == comp[j] {
                        witness = Some((theta.clone(), i, j));
                        break 'probe;
                    }
                }
            }
        }
        levels.push(CofibrationLevel { m, latching_mono: witness.is_none(), witness });
    }
    Ok(CofibrationReport { levels })
}

/// Every levelwise component of `f` over outer levels up to `m_max` and
/// inner objects in the window is injective.
pub fn is_levelwise_mono(
    f: &PresheafMap,
    m_max: usize,
    probe: &Window,
) -> bool {
    for m in 0..=m_max {
        for theta in probe.objects() {
            let big = theta.insert_factor(0, crate::theta::ThetaObject::simplex(m));
            let comp: Vec<usize> =
                (0..f.source().size_at(&big)).map(|i| f.apply(&big, i)).collect();
            let mut sorted = comp.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != comp.len() {
                return false;
            }
        }
    }
    true
}

/// Fiber of a diagram level over a vertex tuple; re-exported convenience.
pub fn fiber(x: &SegalPreObject, p: usize, vs: &[usize]) -> Result<Presheaf> {
    x.fiber(p, vs)
}

/// Sum of fiber sizes equals the level size, per inner object.
pub fn fiber_decomposition_holds(
    x: &SegalPreObject,
    p: usize,
    probe: &Window,
) -> Result<bool> {
    let v = x.vertex_count();
    let tuples = presheaf::tuples(&vec![v; p + 1]);
    for theta in probe.objects() {
        let total = x.level(p).size_at(theta);
        let mut sum = 0usize;
        for t in &tuples {
            sum += x.fiber(p, t)?.size_at(theta);
        }
        if sum != total {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::EnrichedCategory;
    use crate::presheaf::{self, PresheafMap};
    use crate::site::Site;
    use crate::theta::ThetaObject;

    fn inner() -> Site {
        Site::theta(1)
    }

    #[test]
    fn latching_of_constant_diagram_is_everything() {
        // a discrete constant diagram: every level-1 element is degenerate
        let dsite = inner().with_outer_simplicial();
        let x = SegalPreObject::from_total_unchecked(presheaf::discrete(&dsite, 3));
        let lat = latching(&x, 1);
        let top = inner().terminal();
        assert_eq!(lat.object.size_at(&top), 3);
        assert_eq!(x.level(1).size_at(&top), 3);
    }

    #[test]
    fn latching_of_suspension_nerve_is_units() {
        let a = presheaf::representable(
            &inner(),
            &crate::site::SiteObject(vec![ThetaObject::simplex(1)]),
        );
        let n = EnrichedCategory::suspension(&a).nerve();
        let lat = latching(&n, 1);
        let top = inner().terminal();
        // only the two degenerate edges (the identities) are in the image
        assert_eq!(lat.object.size_at(&top), 2);
        let witnesses = (lat.witnesses)(&lat, &n, &top);
        assert_eq!(witnesses.len(), 2);
    }

    #[test]
    fn degeneracy_criteria_agree_on_randoms() {
        let mut rng = crate::gen::rng_from_seed(41);
        let w = Window::up_to_degree(&inner(), 2);
        for _ in 0..15 {
            let x = crate::gen::rand_spo(&mut rng, &inner(), 3, 2, 2, 2).unwrap();
            for m in 0..=2usize {
                for theta in w.objects() {
                    let part = nondegenerate(&x, m, theta);
                    assert_eq!(
                        part.image_criterion, part.distinct_criterion,
                        "criteria at level {m}, {theta}"
                    );
                }
            }
        }
    }

    #[test]
    fn level_zero_elements_are_nondegenerate() {
        let mut rng = crate::gen::rng_from_seed(43);
        let x = crate::gen::rand_spo(&mut rng, &inner(), 3, 2, 1, 2).unwrap();
        let top = inner().terminal();
        let part = nondegenerate(&x, 0, &top);
        assert!(part.degenerate.iter().all(|d| !d));
    }

    #[test]
    fn matching_counts() {
        let site = inner();
        // matching of the edge representable at [1]: maps from the two
        // endpoints, i.e. pairs of vertices
        let d1 = presheaf::representable(
            &site,
            &crate::site::SiteObject(vec![ThetaObject::simplex(1)]),
        );
        let m = matching(&d1, &crate::site::SiteObject(vec![ThetaObject::simplex(1)]))
            .unwrap();
        assert_eq!(m.len(), 4);
        // matching at the point: the boundary is empty, one map
        let m0 =
            matching(&d1, &crate::site::SiteObject(vec![ThetaObject::simplex(0)])).unwrap();
        assert_eq!(m0.len(), 1);
    }

    /// The identity is the unique element of the representable at its own
    /// object not induced from the boundary.
    #[test]
    fn matching_of_representable_misses_only_identity() {
        let site = inner();
        let a = crate::site::SiteObject(vec![ThetaObject::simplex(2)]);
        let d2 = presheaf::representable(&site, &a);
        let b = presheaf::boundary(&site, &a);
        let own = d2.size_at(&a);
        let boundary_elems = b.source().size_at(&a);
        assert_eq!(own - boundary_elems, 1);
    }

    #[test]
    fn relative_latching_identity_is_iso() {
        let mut rng = crate::gen::rng_from_seed(47);
        let x = crate::gen::rand_spo(&mut rng, &inner(), 3, 2, 1, 2).unwrap();
        let ident = PresheafMap::identity(x.total());
        let w = Window::up_to_degree(&inner(), 2);
        for m in 1..=2usize {
            let map = relative_latching_map(&ident, &x, &x, m).unwrap();
            assert!(map.is_iso_on(&w), "level {m}");
        }
    }

    #[test]
    fn relative_latching_of_monos_is_mono() {
        let mut rng = crate::gen::rng_from_seed(53);
        let dsite = inner().with_outer_simplicial();
        let w = Window::up_to_degree(&inner(), 2);
        let mut tested = 0usize;
        for _ in 0..20 {
            let x_raw = crate::gen::rand_presheaf(&mut rng, &dsite, 3, 2, 1);
            let (y_raw, incl) = crate::gen::rand_mono_extension(&mut rng, &x_raw, 2, 2, 1);
            if !reedy_levelwise_mono(&incl, 3, &w) {
                continue;
            }
            tested += 1;
            let xs = SegalPreObject::from_total_unchecked(x_raw);
            let ys = SegalPreObject::from_total_unchecked(y_raw);
            let report = cofibration_check(&incl, &xs, &ys, 3, &w).unwrap();
            for level in &report.levels {
                assert!(level.latching_mono, "level {} fails", level.m);
            }
        }
        assert!(tested >= 15);
    }

    fn reedy_levelwise_mono(
        f: &PresheafMap,
        m_max: usize,
        probe: &Window,
    ) -> bool {
        is_levelwise_mono(f, m_max, probe)
    }

    #[test]
    fn relative_latching_detects_non_mono() {
        // the fold map of two points onto one is not mono at level zero
        let dsite = inner().with_outer_simplicial();
        let two = presheaf::discrete(&dsite, 2);
        let one = presheaf::terminal(&dsite);
        let top = dsite.terminal();
        let fold = PresheafMap::on_cells(&two, &one, vec![0, 0]).unwrap();
        let _ = top;
        let xs = SegalPreObject::from_total_unchecked(two.clone());
        let ys = SegalPreObject::from_total_unchecked(one.clone());
        let w = Window::up_to_degree(&inner(), 1);
        let report = cofibration_check(&fold, &xs, &ys, 1, &w).unwrap();
        assert!(!report.levels[0].latching_mono, "fold fails at level zero");
    }

    #[test]
    fn skeleton_exhausts() {
        let mut rng = crate::gen::rng_from_seed(59);
        let x = crate::gen::rand_spo(&mut rng, &inner(), 3, 2, 1, 2).unwrap();
        let w = Window::up_to_degree(x.total().site(), 3);
        let sk3 = skeleton(&x, 3);
        for d in w.objects() {
            assert_eq!(sk3.size_at(d), x.total().size_at(d), "sk_3 = X at {d}");
        }
        // sk_0 of a Segal precategory object is the discrete diagram on X_0
        let sk0 = skeleton(&x, 0);
        let v = x.vertex_count();
        for d in w.objects() {
            assert_eq!(sk0.size_at(d), v, "sk_0 is constant at {d}");
        }
        // skeleta grow monotonically
        for d in w.objects() {
            let mut prev = 0usize;
            for p in 0..=3usize {
                let now = skeleton(&x, p).size_at(d);
                assert!(now >= prev);
                prev = now;
            }
        }
    }

    #[test]
    fn coskeleton_zero_counts() {
        let mut rng = crate::gen::rng_from_seed(61);
        let x = crate::gen::rand_spo(&mut rng, &inner(), 3, 2, 1, 2).unwrap();
        let (cosk, unit) = coskeleton0(&x);
        let v = x.vertex_count();
        let top = inner().terminal();
        let one = top.insert_factor(0, ThetaObject::simplex(1));
        assert_eq!(cosk.size_at(&one), v * v, "(cosk_0 X)_1 = X_0 x X_0");
        let w = Window::up_to_degree(x.total().site(), 2);
        assert!(unit.naturality_failure_on(&w).is_none());
    }

    #[test]
    fn fibers_decompose_levels() {
        let mut rng = crate::gen::rng_from_seed(67);
        let w = Window::up_to_degree(&inner(), 2);
        for _ in 0..10 {
            let x = crate::gen::rand_spo(&mut rng, &inner(), 3, 2, 2, 2).unwrap();
            for p in 0..=2usize {
                assert!(fiber_decomposition_holds(&x, p, &w).unwrap());
            }
        }
    }

    #[test]
    fn fiber_of_one_object_is_whole_level() {
        let a = presheaf::terminal(&inner());
        let n = EnrichedCategory::suspension(&a).nerve();
        // restrict to the full subobject on vertex 0: trivial category
        let one = EnrichedCategory::trivial(&inner()).nerve();
        let top = inner().terminal();
        for p in 0..=2usize {
            let whole = one.level(p).size_at(&top);
            let fib = one.fiber(p, &vec![0; p + 1]).unwrap().size_at(&top);
            assert_eq!(whole, fib);
        }
        let _ = n;
    }

    /// The suspension nerve's edge fiber over (x, y) is the hom presheaf.
    #[test]
    fn suspension_fiber_is_hom() {
        let site = inner();
        let a = presheaf::representable(
            &site,
            &crate::site::SiteObject(vec![ThetaObject::simplex(1)]),
        );
        let n = EnrichedCategory::suspension(&a).nerve();
        let fib = n.fiber(1, &[0, 1]).unwrap();
        for theta in Window::up_to_degree(&site, 2).objects() {
            assert_eq!(fib.size_at(theta), a.size_at(theta), "at {theta}");
        }
    }
}
