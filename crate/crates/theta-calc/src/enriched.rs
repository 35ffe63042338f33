//! Categories enriched in set-valued presheaves on an inner Θ-site, the
//! two-object suspension construction, the nerve, and strictification of
//! strict Segal objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::{self, Data, ElemKey, Presheaf, PresheafMap};
use crate::segal::{HoCategory, SegalPreObject};
use crate::site::{Site, SiteMorphism, SiteObject, Window};

type CompFn = Arc<dyn Fn(usize, usize, usize, &SiteObject, usize, usize) -> usize + Send + Sync>;

/// Composition rule: `comp(x, y, z, theta, g, f)` composes
/// `g in hom(y,z)(theta)` after `f in hom(x,y)(theta)`.
#[derive(Clone)]
pub enum CompRule {
    /// Every composite is forced: one side is a unit hom (a point) or the
    /// target hom is terminal.
    Forced,
    /// Arbitrary rule supplied as a function.
    Rule(CompFn),
}

/// A finite-object category with presheaf-valued homs.
#[derive(Clone)]
pub struct EnrichedCategory {
    inner: Site,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Presheaf>,
    /// unit element of `hom(x,x)` at the terminal inner object
    units: Vec<usize>,
    comp: CompRule,
}

impl EnrichedCategory {
    pub fn new(
        inner: Site,
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), Presheaf>,
        units: Vec<usize>,
        comp: CompRule,
    ) -> Result<Self> {
        let n = objects.len();
        if units.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: units.len() });
        }
        for x in 0..n {
            for y in 0..n {
                let h = homs
                    .get(&(x, y))
                    .ok_or_else(|| Error::Malformed(format!("missing hom ({x},{y})")))?;
                if *h.site() != inner {
                    return Err(Error::SiteMismatch);
                }
            }
        }
        for (x, &u) in units.iter().enumerate() {
            if u >= homs[&(x, x)].size_at(&inner.terminal()) {
                return Err(Error::Malformed(format!("unit of object {x} out of range")));
            }
        }
        Ok(EnrichedCategory { inner, objects, homs, units, comp })
    }

    pub fn inner_site(&self) -> &Site {
        &self.inner
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn hom(&self, x: usize, y: usize) -> &Presheaf {
        &self.homs[&(x, y)]
    }

    /// The unit of `x` transported to inner object `theta`.
    pub fn unit_at(&self, x: usize, theta: &SiteObject) -> usize {
        let top = self.inner.terminal();
        let bang = SiteMorphism::hom(theta, &top)[0].clone();
        self.homs[&(x, x)].act(&bang, self.units[x])
    }

    pub fn compose(
        &self,
        x: usize,
        y: usize,
        z: usize,
        theta: &SiteObject,
        g: usize,
        f: usize,
    ) -> usize {
        match &self.comp {
            CompRule::Rule(rule) => rule(x, y, z, theta, g, f),
            CompRule::Forced => {
                // a unit hom is a point; composition transports the other leg
                if x == y && self.homs[&(x, x)].size_at(theta) == 1 {
                    return g;
                }
                if y == z && self.homs[&(y, y)].size_at(theta) == 1 {
                    return f;
                }
                if self.homs[&(x, z)].size_at(theta) == 1 {
                    return 0;
                }
                panic!("forced composition rule applied to an unforced triple")
            }
        }
    }

    /// Largest degree over which homs are generated; used as an edge bound.
    pub fn hom_support_degree(&self) -> usize {
        self.homs.values().map(|h| h.support_degree_hint()).max().unwrap_or(0)
    }

    /// The two-object category with a single nontrivial hom.
    pub fn suspension(a: &Presheaf) -> EnrichedCategory {
        let inner = a.site().clone();
        let pt = presheaf::terminal(&inner);
        let none = presheaf::empty(&inner);
        let mut homs = BTreeMap::new();
        homs.insert((0, 0), pt.clone());
        homs.insert((1, 1), pt.clone());
        homs.insert((0, 1), a.clone());
        homs.insert((1, 0), none);
        EnrichedCategory {
            inner,
            objects: vec!["x".into(), "y".into()],
            homs,
            units: vec![0, 0],
            comp: CompRule::Forced,
        }
    }

    /// The one-object category with only its unit.
    pub fn trivial(inner: &Site) -> EnrichedCategory {
        let mut homs = BTreeMap::new();
        homs.insert((0, 0), presheaf::terminal(inner));
        EnrichedCategory {
            inner: inner.clone(),
            objects: vec!["x".into()],
            homs,
            units: vec![0],
            comp: CompRule::Forced,
        }
    }

    /// The free category on a finite acyclic graph, with discrete homs given
    /// by path sets and composition by concatenation.
    pub fn path_category(inner: &Site, vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(a, b) in edges {
            if a >= b || b >= vertices {
                return Err(Error::Malformed("path category needs forward edges".into()));
            }
        }
        // enumerate paths x -> y as edge index sequences
        let mut paths: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
        for x in 0..vertices {
            for y in 0..vertices {
                paths.insert((x, y), Vec::new());
            }
        }
        for x in 0..vertices {
            // depth-first from x
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(x, Vec::new())];
            while let Some((at, path)) = stack.pop() {
                paths.get_mut(&(x, at)).unwrap().push(path.clone());
                for (ei, &(a, b)) in edges.iter().enumerate() {
                    if a == at {
                        let mut p2 = path.clone();
                        p2.push(ei);
                        stack.push((b, p2));
                    }
                }
            }
        }
        for v in paths.values_mut() {
            v.sort();
        }
        let mut homs = BTreeMap::new();
        for (&k, v) in &paths {
            homs.insert(k, presheaf::discrete(inner, v.len()));
        }
        let units: Vec<usize> = (0..vertices)
            .map(|x| paths[&(x, x)].iter().position(|p| p.is_empty()).unwrap())
            .collect();
        let paths = Arc::new(paths);
        let rule_paths = paths.clone();
        let comp: CompFn = Arc::new(move |x, y, z, _theta, g, f| {
            let fp = &rule_paths[&(x, y)][f];
            let gp = &rule_paths[&(y, z)][g];
            let mut whole = fp.clone();
            whole.extend_from_slice(gp);
            rule_paths[&(x, z)].iter().position(|p| *p == whole).expect("paths concatenate")
        });
        EnrichedCategory::new(
            inner.clone(),
            (0..vertices).map(|v| format!("v{v}")).collect(),
            homs,
            units,
            CompRule::Rule(comp),
        )
    }

    /// A linear category `0 -> 1 -> ... -> k` whose consecutive homs are the
    /// given presheaves and whose longer homs are terminal, so every
    /// composite is forced.
    pub fn chain_category(inner: &Site, consecutive: Vec<Presheaf>) -> Result<Self> {
        let k = consecutive.len();
        let n = k + 1;
        let pt = presheaf::terminal(inner);
        let none = presheaf::empty(inner);
        let mut homs = BTreeMap::new();
        for (x, step) in (0..n).map(|x| (x, consecutive.get(x))) {
            for y in 0..n {
                let h = if x == y {
                    pt.clone()
                } else if y == x + 1 {
                    step.expect("consecutive hom").clone()
                } else if y > x {
                    pt.clone()
                } else {
                    none.clone()
                };
                homs.insert((x, y), h);
            }
        }
        EnrichedCategory::new(
            inner.clone(),
            (0..n).map(|v| format!("v{v}")).collect(),
            homs,
            vec![0; n],
            CompRule::Forced,
        )
    }

    /// Unit and associativity laws, checked elementwise over a window.
    pub fn verify_laws(&self, w: &Window) -> Result<()> {
        let n = self.objects.len();
        for theta in w.objects() {
            for x in 0..n {
                for y in 0..n {
                    let u_src = self.unit_at(x, theta);
                    let u_tgt = self.unit_at(y, theta);
                    for f in 0..self.homs[&(x, y)].size_at(theta) {
                        if self.compose(x, x, y, theta, f, u_src) != f
                            || self.compose(x, y, y, theta, u_tgt, f) != f
                        {
                            return Err(Error::Malformed(format!(
                                "unit law fails at ({x},{y}) over {theta}"
                            )));
                        }
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for ww in 0..n {
                            for f in 0..self.homs[&(x, y)].size_at(theta) {
                                for g in 0..self.homs[&(y, z)].size_at(theta) {
                                    for h in 0..self.homs[&(z, ww)].size_at(theta) {
                                        let gf = self.compose(x, y, z, theta, g, f);
                                        let hg = self.compose(y, z, ww, theta, h, g);
                                        let left = self.compose(x, z, ww, theta, h, gf);
                                        let right = self.compose(x, y, ww, theta, hg, f);
                                        if left != right {
                                            return Err(Error::Malformed(format!(
                                                "associativity fails over {theta}"
                                            )));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The nerve: level p is the coproduct over object chains of the product
    /// of consecutive homs, with faces by composition and degeneracies by
    /// units. Always a strict Segal object.
    pub fn nerve(&self) -> SegalPreObject {
        let site = self.inner.with_outer_simplicial();
        let total = Presheaf::from_data(site, Data::Nerve { cat: Arc::new(self.clone()) });
        SegalPreObject::from_total_unchecked(total)
    }

    /// Collapse each hom to its component set.
    pub fn pi0_category(&self) -> Result<HoCategory> {
        let n = self.objects.len();
        let bound = self.hom_support_degree();
        let mut class_data = BTreeMap::new();
        let top = self.inner.terminal();
        for x in 0..n {
            for y in 0..n {
                class_data.insert((x, y), crate::presheaf::pi0_data(self.hom(x, y), bound));
            }
        }
        let hom_sizes: BTreeMap<(usize, usize), usize> =
            class_data.iter().map(|(&k, v)| (k, v.classes)).collect();
        // composition at the terminal object must descend to classes
        let mut comp = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let nf = self.hom(x, y).size_at(&top);
                    let ng = self.hom(y, z).size_at(&top);
                    let cf = &class_data[&(x, y)];
                    let cg = &class_data[&(y, z)];
                    let cz = &class_data[&(x, z)];
                    let mut table =
                        vec![vec![usize::MAX; cf.classes]; cg.classes];
                    for f in 0..nf {
                        for g in 0..ng {
                            let composed = self.compose(x, y, z, &top, g, f);
                            let slot = &mut table[cg.class_of[g]][cf.class_of[f]];
                            let class = cz.class_of[composed];
                            if *slot == usize::MAX {
                                *slot = class;
                            } else if *slot != class {
                                return Err(Error::CompositionDoesNotDescend(format!(
                                    "objects ({x},{y},{z})"
                                )));
                            }
                        }
                    }
                    // representatives at the terminal object may miss some
                    // components only when hom values elsewhere are larger;
                    // classes are indexed by terminal-object elements here
                    comp.insert((x, y, z), table);
                }
            }
        }
        let units: Vec<usize> =
            (0..n).map(|x| class_data[&(x, x)].class_of[self.units[x]]).collect();
        HoCategory::new(self.objects.clone(), hom_sizes, comp, units)
    }
}

/// A functor between enriched categories: an object map and a presheaf map
/// for every hom pair.
pub struct EnrichedFunctor {
    pub source: EnrichedCategory,
    pub target: EnrichedCategory,
    pub ob_map: Vec<usize>,
    pub hom_maps: BTreeMap<(usize, usize), PresheafMap>,
}

impl EnrichedFunctor {
    /// Unit and composition preservation over a window.
    pub fn verify(&self, w: &Window) -> Result<()> {
        let n = self.source.objects().len();
        let top = self.source.inner_site().terminal();
        for x in 0..n {
            let fx = self.ob_map[x];
            let u = self.hom_maps[&(x, x)].apply(&top, self.source.units[x]);
            if u != self.target.units[fx] {
                return Err(Error::Malformed(format!("unit of {x} not preserved")));
            }
        }
        for theta in w.objects() {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (fx, fy, fz) = (self.ob_map[x], self.ob_map[y], self.ob_map[z]);
                        for f in 0..self.source.hom(x, y).size_at(theta) {
                            for g in 0..self.source.hom(y, z).size_at(theta) {
                                let src = self.source.compose(x, y, z, theta, g, f);
                                let via_src = self.hom_maps[&(x, z)].apply(theta, src);
                                let tf = self.hom_maps[&(x, y)].apply(theta, f);
                                let tg = self.hom_maps[&(y, z)].apply(theta, g);
                                let via_tgt =
                                    self.target.compose(fx, fy, fz, theta, tg, tf);
                                if via_src != via_tgt {
                                    return Err(Error::Malformed(format!(
                                        "composition not preserved at ({x},{y},{z})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The induced map of nerves.
    pub fn nerve_map(&self) -> PresheafMap {
        let src = self.source.nerve();
        let tgt = self.target.nerve();
        let total_src = src.total().clone();
        let total_tgt = tgt.total().clone();
        let ob_map = self.ob_map.clone();
        let hom_maps: BTreeMap<(usize, usize), PresheafMap> = self
            .hom_maps
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let src_for_closure = total_src.clone();
        let tgt_for_closure = total_tgt.clone();
        PresheafMap::pointwise(
            &total_src,
            &total_tgt,
            Arc::new(move |d, i| {
                let theta = d.without_factor(0);
                let key = src_for_closure.eval(d).key(i).clone();
                let (zs, hs) = match key {
                    ElemKey::Chain(zs, hs) => (zs, hs),
                    _ => unreachable!("nerve keys"),
                };
                let new_zs: Vec<usize> = zs.iter().map(|&z| ob_map[z]).collect();
                let new_hs: Vec<usize> = hs
                    .iter()
                    .enumerate()
                    .map(|(t, &h)| hom_maps[&(zs[t], zs[t + 1])].apply(&theta, h))
                    .collect();
                tgt_for_closure
                    .eval(d)
                    .position(&ElemKey::Chain(new_zs, new_hs))
                    .expect("chain maps to a chain")
            }),
        )
    }

    /// Dwyer-Kan check: hom maps are levelwise bijections over the window
    /// and the component category functor is an equivalence.
    pub fn dk_check(&self, w: &Window) -> Result<bool> {
        let n = self.source.objects().len();
        for x in 0..n {
            for y in 0..n {
                if !self.hom_maps[&(x, y)].is_iso_on(w) {
                    return Ok(false);
                }
            }
        }
        let src_pi0 = self.source.pi0_category()?;
        let tgt_pi0 = self.target.pi0_category()?;
        let hom_class_maps: BTreeMap<(usize, usize), Vec<usize>> = {
            let mut out = BTreeMap::new();
            let top = self.source.inner_site().terminal();
            let sb = self.source.hom_support_degree();
            let tb = self.target.hom_support_degree();
            for x in 0..n {
                for y in 0..n {
                    let sc = crate::presheaf::pi0_data(self.source.hom(x, y), sb);
                    let tc = crate::presheaf::pi0_data(
                        self.target.hom(self.ob_map[x], self.ob_map[y]),
                        tb,
                    );
                    let mut table = vec![usize::MAX; sc.classes];
                    for f in 0..self.source.hom(x, y).size_at(&top) {
                        let img = self.hom_maps[&(x, y)].apply(&top, f);
                        table[sc.class_of[f]] = tc.class_of[img];
                    }
                    out.insert((x, y), table);
                }
            }
            out
        };
        Ok(src_pi0.functor_is_equivalence(&tgt_pi0, &self.ob_map, &hom_class_maps))
    }
}

/// Extracts an enriched category from a strict Segal object: objects are the
/// level-zero points, homs are the fibers of level one, and composition goes
/// through the inverse of the second Segal map.
pub fn strictify(x: &SegalPreObject, probe: &Window) -> Result<EnrichedCategory> {
    if let Some(witness) = x.is_segal_strict(probe, 3)? {
        return Err(Error::NotStrict(witness));
    }
    let n = x.vertex_count();
    let inner = x.inner_site().clone();
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            homs.insert((a, b), x.fiber(1, &[a, b])?);
        }
    }
    let top = inner.terminal();
    let units: Vec<usize> = (0..n)
        .map(|a| {
            let at_one = x.degenerate_edge(a);
            homs[&(a, a)]
                .eval(&top)
                .position(&ElemKey::Sub(at_one))
                .expect("degenerate edge sits over its vertex")
        })
        .collect();
    let homs_for_rule = homs.clone();
    let spo = x.clone();
    let comp: CompFn = Arc::new(move |a, b, c, theta, g, f| {
        let to_edge = |pair: (usize, usize), idx: usize| -> usize {
            match homs_for_rule[&pair].eval(theta).key(idx) {
                ElemKey::Sub(amb) => *amb,
                _ => unreachable!(),
            }
        };
        let composite_edge = spo.compose_edges(theta, to_edge((a, b), f), to_edge((b, c), g));
        homs_for_rule[&(a, c)]
            .eval(theta)
            .position(&ElemKey::Sub(composite_edge))
            .expect("composite lies over its endpoints")
    });
    EnrichedCategory::new(
        inner,
        (0..n).map(|v| format!("v{v}")).collect(),
        homs,
        units,
        CompRule::Rule(comp),
    )
}

/// The canonical comparison from a strict Segal object to the nerve of its
/// strictification: an element maps to its vertex chain and spine fibers.
pub fn nerve_comparison(x: &SegalPreObject, strict: &EnrichedCategory) -> PresheafMap {
    let nerve = strict.nerve();
    let total_src = x.total().clone();
    let total_tgt = nerve.total().clone();
    let spo = x.clone();
    let strict = strict.clone();
    let tgt = total_tgt.clone();
    PresheafMap::pointwise(
        &total_src,
        &total_tgt,
        Arc::new(move |d, i| {
            let p = d.factor(0).width();
            let theta = d.without_factor(0);
            let zs = spo.vertex_tuple_of(p, &theta, i);
            let hs: Vec<usize> = (0..p)
                .map(|t| {
                    let edge = spo.spine_edge(p, t, &theta, i);
                    match strict
                        .hom(zs[t], zs[t + 1])
                        .eval(&theta)
                        .position(&ElemKey::Sub(edge))
                    {
                        Some(k) => k,
                        None => panic!("spine edge misses its fiber"),
                    }
                })
                .collect();
            tgt.eval(d)
                .position(&ElemKey::Chain(zs, hs))
                .expect("comparison lands in the nerve")
        }),
    )
}

/// The canonical comparison functor from a category to the strictification
/// of its nerve.
pub fn roundtrip_comparison(c: &EnrichedCategory) -> Result<(EnrichedFunctor, Window)> {
    let nerve = c.nerve();
    let probe = Window::up_to_degree(c.inner_site(), c.hom_support_degree().max(1));
    let strict = strictify(&nerve, &probe)?;
    let n = c.objects().len();
    let nerve_total = nerve.total().clone();
    let mut hom_maps = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let src = c.hom(x, y).clone();
            let tgt = strict.hom(x, y).clone();
            let tgt_c = tgt.clone();
            let nerve_total = nerve_total.clone();
            hom_maps.insert(
                (x, y),
                PresheafMap::pointwise(
                    &src,
                    &tgt,
                    Arc::new(move |theta, h| {
                        let one = theta.insert_factor(0, crate::theta::ThetaObject::simplex(1));
                        let chain = ElemKey::Chain(vec![x, y], vec![h]);
                        let amb = nerve_total
                            .eval(&one)
                            .position(&chain)
                            .expect("hom element is a one-chain");
                        tgt_c
                            .eval(theta)
                            .position(&ElemKey::Sub(amb))
                            .expect("one-chain sits over its endpoints")
                    }),
                ),
            );
        }
    }
    Ok((
        EnrichedFunctor { source: c.clone(), target: strict, ob_map: (0..n).collect(), hom_maps },
        probe,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf;
    use crate::site::SiteObject;
    use crate::theta::ThetaObject;

    fn inner() -> Site {
        Site::theta(1)
    }

    fn probe() -> Window {
        Window::up_to_degree(&inner(), 2)
    }

    #[test]
    fn suspension_shapes() {
        let site = inner();
        let empty = presheaf::empty(&site);
        let c = EnrichedCategory::suspension(&empty);
        let top = site.terminal();
        assert_eq!(c.hom(0, 1).size_at(&top), 0);
        assert_eq!(c.hom(0, 0).size_at(&top), 1);
        c.verify_laws(&probe()).unwrap();
        // walking arrow: suspension of the point
        let pt = presheaf::terminal(&site);
        let arrow = EnrichedCategory::suspension(&pt);
        assert_eq!(arrow.hom(0, 1).size_at(&top), 1);
        arrow.verify_laws(&probe()).unwrap();
        // suspension of a representable evaluates by the Yoneda count
        let edge = presheaf::representable(&site, &SiteObject(vec![ThetaObject::simplex(1)]));
        let ue = EnrichedCategory::suspension(&edge);
        assert_eq!(ue.hom(0, 1).size_at(&SiteObject(vec![ThetaObject::simplex(1)])), 3);
    }

    #[test]
    fn path_category_laws() {
        let site = inner();
        let c = EnrichedCategory::path_category(&site, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        c.verify_laws(&probe()).unwrap();
        let top = site.terminal();
        // paths 0 -> 2: direct edge plus the two-step path
        assert_eq!(c.hom(0, 2).size_at(&top), 2);
    }

    #[test]
    fn strictify_roundtrip_on_stock_categories() {
        let mut rng = crate::gen::rng_from_seed(17);
        for _ in 0..8 {
            let c = crate::gen::rand_enriched_category(&mut rng, &inner(), 2).unwrap();
            let (functor, w) = roundtrip_comparison(&c).unwrap();
            functor.verify(&w).unwrap();
            for x in 0..c.objects().len() {
                for y in 0..c.objects().len() {
                    assert!(
                        functor.hom_maps[&(x, y)].is_iso_on(&w),
                        "hom ({x},{y}) compares isomorphically"
                    );
                }
            }
        }
    }

    #[test]
    fn nerve_strictify_roundtrip_on_objects() {
        let mut rng = crate::gen::rng_from_seed(29);
        for _ in 0..5 {
            let c = crate::gen::rand_enriched_category(&mut rng, &inner(), 2).unwrap();
            let n = c.nerve();
            let w = Window::up_to_degree(&inner(), 2);
            let strict = strictify(&n, &w).unwrap();
            let cmp = nerve_comparison(&n, &strict);
            // compare levelwise over the diagram window
            let dw = Window::up_to_degree(n.total().site(), 3);
            assert!(cmp.is_iso_on(&dw));
            assert!(cmp.naturality_failure_on(&Window::up_to_degree(n.total().site(), 2)).is_none());
        }
    }

    #[test]
    fn pi0_category_matches_homotopy_category_of_nerve() {
        let mut rng = crate::gen::rng_from_seed(31);
        for _ in 0..6 {
            let c = crate::gen::rand_enriched_category(&mut rng, &inner(), 2).unwrap();
            let direct = c.pi0_category().unwrap();
            let via_nerve =
                crate::segal::homotopy_category(&c.nerve(), &probe()).unwrap();
            assert_eq!(direct.object_count(), via_nerve.object_count());
            for x in 0..direct.object_count() {
                for y in 0..direct.object_count() {
                    assert_eq!(
                        direct.hom_size(x, y),
                        via_nerve.hom_size(x, y),
                        "hom ({x},{y})"
                    );
                }
            }
        }
    }

    #[test]
    fn dk_functor_checks() {
        let site = inner();
        let w = probe();
        // identity on a suspension
        let a = presheaf::discrete(&site, 2);
        let c = EnrichedCategory::suspension(&a);
        let ident = EnrichedFunctor {
            source: c.clone(),
            target: c.clone(),
            ob_map: vec![0, 1],
            hom_maps: {
                let mut m = BTreeMap::new();
                for x in 0..2 {
                    for y in 0..2 {
                        m.insert((x, y), PresheafMap::identity(c.hom(x, y)));
                    }
                }
                m
            },
        };
        ident.verify(&w).unwrap();
        assert!(ident.dk_check(&w).unwrap());
        // collapsing a two-point hom to a point fails W1
        let pt = presheaf::terminal(&site);
        let d = EnrichedCategory::suspension(&pt);
        let mut hom_maps = BTreeMap::new();
        for x in 0..2usize {
            for y in 0..2usize {
                let src = c.hom(x, y).clone();
                let tgt = d.hom(x, y).clone();
                let map = PresheafMap::pointwise(
                    &src,
                    &tgt,
                    std::sync::Arc::new(move |_d, _i| 0),
                );
                hom_maps.insert((x, y), map);
            }
        }
        let collapse =
            EnrichedFunctor { source: c.clone(), target: d, ob_map: vec![0, 1], hom_maps };
        assert!(!collapse.dk_check(&w).unwrap());
    }

    /// The inclusion of one of two isomorphic objects is a Dwyer-Kan
    /// equivalence: essential surjectivity via the isomorphism.
    #[test]
    fn dk_equivalence_onto_skeleton() {
        let site = inner();
        let w = probe();
        // the walking isomorphism: two objects, all homs a point
        let pt = presheaf::terminal(&site);
        let mut homs = BTreeMap::new();
        for x in 0..2usize {
            for y in 0..2usize {
                homs.insert((x, y), pt.clone());
            }
        }
        let iso_cat = EnrichedCategory::new(
            site.clone(),
            vec!["u".into(), "v".into()],
            homs,
            vec![0, 0],
            CompRule::Forced,
        )
        .unwrap();
        iso_cat.verify_laws(&w).unwrap();
        let one = EnrichedCategory::trivial(&site);
        let incl = EnrichedFunctor {
            source: one.clone(),
            target: iso_cat.clone(),
            ob_map: vec![0],
            hom_maps: {
                let mut m = BTreeMap::new();
                m.insert((0, 0), PresheafMap::identity(&pt));
                m.insert(
                    (0, 0),
                    PresheafMap::pointwise(
                        one.hom(0, 0),
                        iso_cat.hom(0, 0),
                        std::sync::Arc::new(|_, _| 0),
                    ),
                );
                m
            },
        };
        incl.verify(&w).unwrap();
        assert!(incl.dk_check(&w).unwrap(), "inclusion of a skeleton is an equivalence");
    }

    /// The nerve takes suspension inclusions of monos to levelwise monos.
    #[test]
    fn nerve_preserves_suspension_monos() {
        let site = inner();
        let edge = presheaf::representable(&site, &SiteObject(vec![ThetaObject::simplex(1)]));
        let b = presheaf::boundary(&site, &SiteObject(vec![ThetaObject::simplex(1)]));
        let ua = EnrichedCategory::suspension(b.source());
        let ub = EnrichedCategory::suspension(&edge);
        let f = EnrichedFunctor {
            source: ua.clone(),
            target: ub.clone(),
            ob_map: vec![0, 1],
            hom_maps: {
                let mut m = BTreeMap::new();
                m.insert((0, 0), PresheafMap::identity(ua.hom(0, 0)));
                m.insert((1, 1), PresheafMap::identity(ua.hom(1, 1)));
                m.insert((1, 0), PresheafMap::identity(ua.hom(1, 0)));
                m.insert((0, 1), b.clone());
                m
            },
        };
        f.verify(&probe()).unwrap();
        let nerve_map = f.nerve_map();
        let dw = Window::up_to_degree(ua.nerve().total().site(), 3);
        assert!(nerve_map.is_mono_on(&dw));
    }
}
