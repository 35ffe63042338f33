//! Segal precategory objects: simplicial diagrams of presheaves with
//! discrete level zero, Segal maps, strictness checks, component categories,
//! Dwyer-Kan equivalence between strict objects, reduction, and the
//! coskeleton factorization.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::{self, Data, ElemKey, Presheaf, PresheafMap};
use crate::site::{Site, SiteMorphism, SiteObject, Window};
use crate::theta::{ThetaMorphism, ThetaObject};

/// A presheaf on `(Δ, inner...)` regarded as a simplicial diagram with
/// outer direction the first factor.
#[derive(Clone)]
pub struct SegalPreObject {
    total: Presheaf,
}

impl SegalPreObject {
    /// Wraps a diagram presheaf; callers promise the level-zero part is
    /// discrete (the constructors in this crate arrange that).
    pub fn from_total_unchecked(total: Presheaf) -> Self {
        SegalPreObject { total }
    }

    /// Wraps a diagram presheaf after checking discreteness of level zero
    /// over a probe window of inner objects.
    pub fn from_total(total: Presheaf, probe: &Window) -> Result<Self> {
        let spo = SegalPreObject { total };
        for theta in probe.objects() {
            if !spo.is_discrete_at_zero(theta) {
                return Err(Error::NotDiscrete(theta.to_string()));
            }
        }
        Ok(spo)
    }

    pub fn total(&self) -> &Presheaf {
        &self.total
    }

    pub fn inner_site(&self) -> Site {
        self.total.site().without_factor(0).expect("diagram site")
    }

    fn outer_object(&self, p: usize, theta: &SiteObject) -> SiteObject {
        theta.insert_factor(0, ThetaObject::simplex(p))
    }

    /// Level `p` as a presheaf on the inner site.
    pub fn level(&self, p: usize) -> Presheaf {
        Presheaf::from_data(
            self.inner_site(),
            Data::Slice { of: self.total.clone(), factor: 0, at: ThetaObject::simplex(p) },
        )
    }

    pub fn is_discrete_at_zero(&self, theta: &SiteObject) -> bool {
        let top = self.inner_site().terminal();
        let zero_top = self.outer_object(0, &top);
        let zero_here = self.outer_object(0, theta);
        let bang = SiteMorphism::hom(&zero_here, &zero_top)[0].clone();
        let n = self.total.size_at(&zero_top);
        if self.total.size_at(&zero_here) != n {
            return false;
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            let t = self.total.act(&bang, s);
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    pub fn vertex_count(&self) -> usize {
        presheaf::vertex_count(&self.total, 0)
    }

    /// Outer operator along `alpha: [q] -> [p]` between levels, as a map of
    /// inner presheaves `X_p -> X_q`.
    pub fn outer_operator(&self, p: usize, q: usize, alpha: Vec<usize>) -> PresheafMap {
        let src = self.level(p);
        let tgt = self.level(q);
        let total = self.total.clone();
        let am = ThetaMorphism::simplicial(q, p, alpha).expect("outer operator");
        PresheafMap::pointwise(
            &src,
            &tgt,
            Arc::new(move |theta, idx| {
                let mut comps: Vec<ThetaMorphism> =
                    theta.0.iter().map(ThetaMorphism::identity).collect();
                comps.insert(0, am.clone());
                total.act(&SiteMorphism(comps), idx)
            }),
        )
    }

    /// Face `d_i : X_p -> X_{p-1}`.
    pub fn face_map(&self, p: usize, i: usize) -> PresheafMap {
        let alpha: Vec<usize> = (0..p).map(|t| if t < i { t } else { t + 1 }).collect();
        self.outer_operator(p, p - 1, alpha)
    }

    /// Degeneracy `s_i : X_p -> X_{p+1}`.
    pub fn degeneracy_map(&self, p: usize, i: usize) -> PresheafMap {
        let alpha: Vec<usize> = (0..=p + 1).map(|t| if t <= i { t } else { t - 1 }).collect();
        self.outer_operator(p, p + 1, alpha)
    }

    pub fn vertex_tuple_of(&self, p: usize, theta: &SiteObject, idx: usize) -> Vec<usize> {
        presheaf::vertex_tuple(&self.total, 0, p, theta, idx)
    }

    /// The degenerate edge on a vertex, as an index of `X([1], terminal)`.
    pub fn degenerate_edge(&self, v: usize) -> usize {
        let top = self.inner_site().terminal();
        let s0 = ThetaMorphism::simplicial(1, 0, vec![0, 0]).expect("s0");
        let mut comps: Vec<ThetaMorphism> = top.0.iter().map(ThetaMorphism::identity).collect();
        comps.insert(0, s0);
        self.total.act(&SiteMorphism(comps), v)
    }

    /// Spine edge `t` (the restriction along `alpha^t`) of a level-`p`
    /// element, as an index of `X([1], theta)`.
    pub fn spine_edge(&self, p: usize, t: usize, theta: &SiteObject, idx: usize) -> usize {
        let alpha = ThetaMorphism::simplicial(1, p, vec![t, t + 1]).expect("spine edge");
        let mut comps: Vec<ThetaMorphism> = theta.0.iter().map(ThetaMorphism::identity).collect();
        comps.insert(0, alpha);
        self.total.act(&SiteMorphism(comps), idx)
    }

    /// Composite edge of two consecutive edges in a strict object: the long
    /// edge of the unique two-simplex with the given spine.
    pub fn compose_edges(&self, theta: &SiteObject, e_first: usize, e_second: usize) -> usize {
        let two = self.outer_object(2, theta);
        let n2 = self.total.size_at(&two);
        for s in 0..n2 {
            if self.spine_edge(2, 0, theta, s) == e_first
                && self.spine_edge(2, 1, theta, s) == e_second
            {
                let long = ThetaMorphism::simplicial(1, 2, vec![0, 2]).expect("long edge");
                let mut comps: Vec<ThetaMorphism> =
                    theta.0.iter().map(ThetaMorphism::identity).collect();
                comps.insert(0, long);
                return self.total.act(&SiteMorphism(comps), s);
            }
        }
        panic!("no two-simplex with the requested spine; object is not strict")
    }

    /// The Segal map `X_k -> X_1 x_{X_0} ... x_{X_0} X_1`.
    pub fn segal_map(&self, k: usize) -> PresheafMap {
        let src = self.level(k);
        let tgt = Presheaf::from_data(
            self.inner_site(),
            Data::FiberPower { of: self.total.clone(), factor: 0, k },
        );
        let spo = self.clone();
        let tgt_c = tgt.clone();
        PresheafMap::pointwise(
            &src,
            &tgt,
            Arc::new(move |theta, idx| {
                let edges: Vec<usize> =
                    (0..k).map(|t| spo.spine_edge(k, t, theta, idx)).collect();
                tgt_c
                    .eval(theta)
                    .position(&ElemKey::Tup(edges))
                    .expect("spine lands in the fiber power")
            }),
        )
    }

    /// Strictness: every Segal map up to `k_max` is a levelwise bijection on
    /// the probe window. Returns a witness description on failure.
    pub fn is_segal_strict(&self, probe: &Window, k_max: usize) -> Result<Option<String>> {
        for theta in probe.objects() {
            if !self.is_discrete_at_zero(theta) {
                return Err(Error::NotDiscrete(theta.to_string()));
            }
        }
        for k in 2..=k_max {
            let phi = self.segal_map(k);
            for theta in probe.objects() {
                let comp = phi.component(theta);
                let mut seen = comp.clone();
                seen.sort_unstable();
                seen.dedup();
                if seen.len() != comp.len() {
                    return Ok(Some(format!("Segal map {k} not injective at {theta}")));
                }
                if comp.len() != phi.target().size_at(theta) {
                    return Ok(Some(format!("Segal map {k} not surjective at {theta}")));
                }
            }
        }
        Ok(None)
    }

    /// Subdiagram of level `p` over a vertex tuple.
    pub fn fiber(&self, p: usize, vs: &[usize]) -> Result<Presheaf> {
        if vs.len() != p + 1 {
            return Err(Error::ArityMismatch { expected: p + 1, got: vs.len() });
        }
        let n = self.vertex_count();
        for &v in vs {
            if v >= n {
                return Err(Error::VertexNotFound(v));
            }
        }
        Ok(Presheaf::from_data(
            self.inner_site(),
            Data::Fiber { of: self.total.clone(), factor: 0, level: p, vertices: vs.to_vec() },
        ))
    }
}

/// Connected components of a presheaf, as a quotient of its value at the
/// terminal object by edge identifications.
pub struct Pi0 {
    pub classes: usize,
    pub class_of: Vec<usize>,
}

pub fn pi0_proxy(p: &Presheaf) -> Pi0 {
    pi0_proxy_bounded(p, p.support_degree_hint())
}

pub fn pi0_proxy_bounded(p: &Presheaf, edge_degree: usize) -> Pi0 {
    let data = presheaf::pi0_data(p, edge_degree);
    Pi0 { classes: data.classes, class_of: data.class_of }
}

/// A finite category with explicit hom sets and composition tables.
#[derive(Clone, Debug)]
pub struct HoCategory {
    objects: Vec<String>,
    hom_sizes: BTreeMap<(usize, usize), usize>,
    /// `comp[(x,y,z)][g][f]` composes `g: y -> z` after `f: x -> y`.
    comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
    units: Vec<usize>,
}

impl HoCategory {
    pub fn new(
        objects: Vec<String>,
        hom_sizes: BTreeMap<(usize, usize), usize>,
        comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
        units: Vec<usize>,
    ) -> Result<Self> {
        let cat = HoCategory { objects, hom_sizes, comp, units };
        cat.verify_laws()?;
        Ok(cat)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn hom_size(&self, x: usize, y: usize) -> usize {
        self.hom_sizes[&(x, y)]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.units[x]
    }

    pub fn compose(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> usize {
        self.comp[&(x, y, z)][g][f]
    }

    pub fn verify_laws(&self) -> Result<()> {
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.hom_size(x, y) {
                    if self.compose(x, x, y, f, self.units[x]) != f
                        || self.compose(x, y, y, self.units[y], f) != f
                    {
                        return Err(Error::Malformed(format!("unit law fails at ({x},{y})")));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for f in 0..self.hom_size(x, y) {
                            for g in 0..self.hom_size(y, z) {
                                for h in 0..self.hom_size(z, w) {
                                    let left =
                                        self.compose(x, z, w, h, self.compose(x, y, z, g, f));
                                    let right =
                                        self.compose(x, y, w, self.compose(y, z, w, h, g), f);
                                    if left != right {
                                        return Err(Error::Malformed(
                                            "associativity fails".into(),
                                        ));
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

    pub fn are_isomorphic(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        for g in 0..self.hom_size(a, b) {
            for h in 0..self.hom_size(b, a) {
                if self.compose(a, b, a, h, g) == self.units[a]
                    && self.compose(b, a, b, g, h) == self.units[b]
                {
                    return true;
                }
            }
        }
        false
    }

    /// Equivalence test for a functor described by its object map and
    /// hom-class tables: fully faithful plus essentially surjective.
    pub fn functor_is_equivalence(
        &self,
        target: &HoCategory,
        ob_map: &[usize],
        hom_maps: &BTreeMap<(usize, usize), Vec<usize>>,
    ) -> bool {
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                let table = &hom_maps[&(x, y)];
                let mut seen = vec![false; target.hom_size(ob_map[x], ob_map[y])];
                if table.len() != self.hom_size(x, y) {
                    return false;
                }
                for &t in table {
                    if t >= seen.len() || seen[t] {
                        return false;
                    }
                    seen[t] = true;
                }
                if seen.iter().any(|s| !s) {
                    return false;
                }
            }
        }
        (0..target.objects.len())
            .all(|b| (0..n).any(|x| target.are_isomorphic(ob_map[x], b)))
    }
}

/// The component category of a strict Segal object: hom sets are components
/// of the edge fibers, composition goes through the second Segal map.
pub fn homotopy_category(x: &SegalPreObject, probe: &Window) -> Result<HoCategory> {
    if let Some(witness) = x.is_segal_strict(probe, 2)? {
        return Err(Error::NotStrict(witness));
    }
    let n = x.vertex_count();
    let top = x.inner_site().terminal();
    let mut pi0s: BTreeMap<(usize, usize), (Presheaf, Pi0)> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let fib = x.fiber(1, &[a, b])?;
            let pi0 = pi0_proxy_bounded(&fib, x.total.support_degree_hint());
            pi0s.insert((a, b), (fib, pi0));
        }
    }
    let hom_sizes: BTreeMap<(usize, usize), usize> =
        pi0s.iter().map(|(&k, (_, p))| (k, p.classes)).collect();
    let edge_of = |pair: (usize, usize), idx: usize, fib: &Presheaf| -> usize {
        let _ = pair;
        match fib.eval(&top).key(idx) {
            ElemKey::Sub(amb) => *amb,
            _ => unreachable!(),
        }
    };
    let mut comp = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (fib_ab, p_ab) = &pi0s[&(a, b)];
                let (fib_bc, p_bc) = &pi0s[&(b, c)];
                let (fib_ac, p_ac) = &pi0s[&(a, c)];
                let nf = fib_ab.size_at(&top);
                let ng = fib_bc.size_at(&top);
                let mut table = vec![vec![usize::MAX; p_ab.classes]; p_bc.classes];
                for f in 0..nf {
                    for g in 0..ng {
                        let e = x.compose_edges(
                            &top,
                            edge_of((a, b), f, fib_ab),
                            edge_of((b, c), g, fib_bc),
                        );
                        let class = p_ac.class_of
                            [fib_ac.eval(&top).position(&ElemKey::Sub(e)).expect("fiber")];
                        let slot = &mut table[p_bc.class_of[g]][p_ab.class_of[f]];
                        if *slot == usize::MAX {
                            *slot = class;
                        } else if *slot != class {
                            return Err(Error::CompositionDoesNotDescend(format!(
                                "vertices ({a},{b},{c})"
                            )));
                        }
                    }
                }
                comp.insert((a, b, c), table);
            }
        }
    }
    let units: Vec<usize> = (0..n)
        .map(|a| {
            let (fib, pi0) = &pi0s[&(a, a)];
            let e = x.degenerate_edge(a);
            pi0.class_of[fib.eval(&top).position(&ElemKey::Sub(e)).expect("unit edge")]
        })
        .collect();
    HoCategory::new(
        (0..n).map(|v| format!("v{v}")).collect(),
        hom_sizes,
        comp,
        units,
    )
}

/// A map of Segal precategory objects.
#[derive(Clone)]
pub struct SpoMap {
    pub source: SegalPreObject,
    pub target: SegalPreObject,
    pub map: PresheafMap,
}

impl SpoMap {
    pub fn vertex_map(&self) -> Vec<usize> {
        let top = self.source.inner_site().terminal();
        let zero = top.insert_factor(0, ThetaObject::simplex(0));
        (0..self.source.vertex_count()).map(|v| self.map.apply(&zero, v)).collect()
    }

    /// Induced map of edge fibers over a vertex pair.
    pub fn fiber_map(&self, a: usize, b: usize) -> Result<PresheafMap> {
        let f0 = self.vertex_map();
        let src = self.source.fiber(1, &[a, b])?;
        let tgt = self.target.fiber(1, &[f0[a], f0[b]])?;
        let total_map = self.map.clone();
        let src_c = src.clone();
        let tgt_c = tgt.clone();
        Ok(PresheafMap::pointwise(
            &src,
            &tgt,
            Arc::new(move |theta, idx| {
                let amb = match src_c.eval(theta).key(idx) {
                    ElemKey::Sub(a) => *a,
                    _ => unreachable!(),
                };
                let one = theta.insert_factor(0, ThetaObject::simplex(1));
                let img = total_map.apply(&one, amb);
                tgt_c
                    .eval(theta)
                    .position(&ElemKey::Sub(img))
                    .expect("fiber maps to the image fiber")
            }),
        ))
    }
}

/// Dwyer-Kan equivalence between strict objects: fiber maps are levelwise
/// bijections on the probe window and the component functor is an
/// equivalence of categories.
pub fn dk_equivalence_check(f: &SpoMap, probe: &Window) -> Result<bool> {
    if f.source.is_segal_strict(probe, 2)?.is_some()
        || f.target.is_segal_strict(probe, 2)?.is_some()
    {
        return Err(Error::NotStrict("dk check needs strict objects".into()));
    }
    let n = f.source.vertex_count();
    for a in 0..n {
        for b in 0..n {
            if !f.fiber_map(a, b)?.is_iso_on(probe) {
                return Ok(false);
            }
        }
    }
    let src_ho = homotopy_category(&f.source, probe)?;
    let tgt_ho = homotopy_category(&f.target, probe)?;
    let f0 = f.vertex_map();
    let top = f.source.inner_site().terminal();
    let mut hom_maps = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let src_fib = f.source.fiber(1, &[a, b])?;
            let tgt_fib = f.target.fiber(1, &[f0[a], f0[b]])?;
            let src_pi0 = pi0_proxy_bounded(&src_fib, f.source.total.support_degree_hint());
            let tgt_pi0 = pi0_proxy_bounded(&tgt_fib, f.target.total.support_degree_hint());
            let fm = f.fiber_map(a, b)?;
            let mut table = vec![usize::MAX; src_pi0.classes];
            for e in 0..src_fib.size_at(&top) {
                table[src_pi0.class_of[e]] = tgt_pi0.class_of[fm.apply(&top, e)];
            }
            hom_maps.insert((a, b), table);
        }
    }
    Ok(src_ho.functor_is_equivalence(&tgt_ho, &f0, &hom_maps))
}

/// Result of collapsing level zero to components. For presented input the
/// object is presented with the input's cells first and one point cell per
/// component after them.
pub struct ReductionResult {
    pub object: Presheaf,
    pub unit: PresheafMap,
    pub pi0_classes: usize,
    pub pi0_class_of: Vec<usize>,
}

/// Collapses the level-zero part of a diagram to its set of components,
/// adjusting degenerate elements in higher levels; returns the reduced
/// diagram and the unit map into it.
pub fn reduction(x: &Presheaf) -> Result<ReductionResult> {
    let site = x.site().clone();
    if site.factors().first() != Some(&1) {
        return Err(Error::SiteMismatch);
    }
    let zero_slice = Presheaf::from_data(
        site.without_factor(0)?,
        Data::Slice { of: x.clone(), factor: 0, at: ThetaObject::terminal(1) },
    );
    let bound = x.support_degree_hint();
    let pi0 = Arc::new(presheaf::pi0_data(&zero_slice, bound));
    let classes_count = pi0.classes;
    let class_vec = pi0.class_of.clone();
    if let Some(pres) = x.presentation() {
        let zero_pres = pres.slice(0, &ThetaObject::terminal(1));
        let positions: Vec<usize> = (1..site.len()).collect();
        let const_zero =
            Presheaf::from_presentation(zero_pres.extend(site.clone(), &positions));
        // counit Const(X_0) -> X on cells
        let czp = const_zero.presentation().expect("just presented").clone();
        let mut counit_cells = Vec::with_capacity(czp.cells.len());
        // slice cells are (original cell, vertex of its outer part) in order
        let mut slice_origin: Vec<(usize, ThetaMorphism)> = Vec::new();
        for (ci, c) in pres.cells.iter().enumerate() {
            for u in ThetaMorphism::hom(&ThetaObject::terminal(1), c.shape.factor(0)).iter() {
                slice_origin.push((ci, u.clone()));
            }
        }
        assert_eq!(slice_origin.len(), czp.cells.len());
        for (k, cell) in czp.cells.iter().enumerate() {
            let (orig, u) = &slice_origin[k];
            let mut comps: Vec<ThetaMorphism> = cell
                .shape
                .0
                .iter()
                .zip(&pres.cells[*orig].shape.0)
                .map(|(_, tgt_part)| ThetaMorphism::identity(tgt_part))
                .collect();
            comps[0] = u.clone();
            let elem = SiteMorphism(comps);
            let idx = x
                .eval(&cell.shape)
                .position(&ElemKey::Cls(*orig, elem))
                .expect("counit lands in the diagram");
            counit_cells.push(idx);
        }
        let counit = PresheafMap::on_cells(&const_zero, x, counit_cells)?;
        // component map Const(X_0) -> discrete
        let disc = presheaf::discrete(&site, pi0.classes);
        let mut q_cells = Vec::with_capacity(czp.cells.len());
        for (k, cell) in czp.cells.iter().enumerate() {
            let own = const_zero
                .eval(&cell.shape)
                .position(&ElemKey::Cls(k, SiteMorphism::identity(&cell.shape)))
                .expect("cell element");
            let at_zero = counit.apply(&cell.shape, own);
            let class = presheaf::level_zero_class(x, 0, &pi0, &cell.shape, at_zero);
            q_cells.push(
                disc.eval(&cell.shape)
                    .position(&ElemKey::Cls(class, SiteMorphism::hom(
                        &cell.shape,
                        &site.terminal(),
                    )[0]
                        .clone()))
                    .expect("class point"),
            );
        }
        let q = PresheafMap::on_cells(&const_zero, &disc, q_cells)?;
        let span = presheaf::pushout(&counit, &q)?;
        return Ok(ReductionResult {
            object: span.object,
            unit: span.left,
            pi0_classes: pi0.classes,
            pi0_class_of: pi0.class_of.clone(),
        });
    }
    let reduced = Presheaf::from_data(
        site,
        Data::Reduction { of: x.clone(), factor: 0, pi0 },
    );
    let red = reduced.clone();
    let unit = PresheafMap::pointwise(
        x,
        &reduced,
        Arc::new(move |d, i| red.eval(d).position(&ElemKey::In(0, i)).expect("unit")),
    );
    Ok(ReductionResult {
        object: reduced,
        unit,
        pi0_classes: classes_count,
        pi0_class_of: class_vec,
    })
}

pub struct PhiResult {
    pub phi: SegalPreObject,
    pub into_phi: PresheafMap,
    pub out_of_phi: PresheafMap,
}

/// Factors a map of Segal precategory objects through the pullback of the
/// target along the coskeleton of the vertex inclusion.
pub fn phi_construction(f: &SpoMap) -> Result<PhiResult> {
    let site = f.target.total().site().clone();
    let nx = f.source.vertex_count();
    let ny = f.target.vertex_count();
    let f0 = f.vertex_map();
    let cosk_y = Presheaf::from_data(
        site.clone(),
        Data::Cosk0 { factor: 0, vertices: ny },
    );
    let cosk_x = Presheaf::from_data(
        site.clone(),
        Data::Cosk0 { factor: 0, vertices: nx },
    );
    let y_total = f.target.total().clone();
    let y_spo = f.target.clone();
    let cosk_y_c = cosk_y.clone();
    let y_to_cosk = PresheafMap::pointwise(
        &y_total,
        &cosk_y,
        Arc::new(move |d, i| {
            let p = d.factor(0).width();
            let theta = d.without_factor(0);
            let vs = y_spo.vertex_tuple_of(p, &theta, i);
            cosk_y_c.eval(d).position(&ElemKey::Vs(vs)).expect("vertex tuple")
        }),
    );
    let cosk_x_c = cosk_x.clone();
    let cosk_y_c = cosk_y.clone();
    let f0_c = f0.clone();
    let cosk_map = PresheafMap::pointwise(
        &cosk_x,
        &cosk_y,
        Arc::new(move |d, i| {
            let t = match cosk_x_c.eval(d).key(i) {
                ElemKey::Vs(t) => t.clone(),
                _ => unreachable!(),
            };
            let moved: Vec<usize> = t.iter().map(|&v| f0_c[v]).collect();
            cosk_y_c.eval(d).position(&ElemKey::Vs(moved)).expect("vertex tuple")
        }),
    );
    let span = presheaf::pullback(&y_to_cosk, &cosk_map)?;
    let phi_total = span.object.clone();
    let x_total = f.source.total().clone();
    let x_spo = f.source.clone();
    let total_map = f.map.clone();
    let phi_c = phi_total.clone();
    let cosk_x_c = cosk_x.clone();
    let into_phi = PresheafMap::pointwise(
        &x_total,
        &phi_total,
        Arc::new(move |d, i| {
            let p = d.factor(0).width();
            let theta = d.without_factor(0);
            let vs = x_spo.vertex_tuple_of(p, &theta, i);
            let in_cosk = cosk_x_c.eval(d).position(&ElemKey::Vs(vs)).expect("vertex tuple");
            let in_y = total_map.apply(d, i);
            let iy = phi_c.eval(d);
            // pair keys are (index in Y, index in cosk0 X0)
            iy.position(&ElemKey::Pair(in_y, in_cosk)).expect("factorization lands in phi")
        }),
    );
    Ok(PhiResult {
        phi: SegalPreObject::from_total_unchecked(phi_total),
        into_phi,
        out_of_phi: span.left,
    })
}


#[cfg(test)]
mod dk_composition_tests {
    use super::*;
    use crate::enriched::{CompRule, EnrichedCategory};
    use crate::presheaf;
    use std::collections::BTreeMap;

    /// Categories where all homs are points: every inclusion of a nonempty
    /// object subset is a Dwyer-Kan equivalence, and these compose.
    fn clique(inner: &Site, n: usize) -> EnrichedCategory {
        let pt = presheaf::terminal(inner);
        let mut homs = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                homs.insert((x, y), pt.clone());
            }
        }
        EnrichedCategory::new(
            inner.clone(),
            (0..n).map(|v| format!("v{v}")).collect(),
            homs,
            vec![0; n],
            CompRule::Forced,
        )
        .unwrap()
    }

    fn clique_inclusion(
        inner: &Site,
        small: usize,
        big: usize,
    ) -> SpoMap {
        let a = clique(inner, small).nerve();
        let b = clique(inner, big).nerve();
        let a_total = a.total().clone();
        let b_total = b.total().clone();
        let (ac, bc) = (a_total.clone(), b_total.clone());
        let map = PresheafMap::pointwise(
            &a_total,
            &b_total,
            std::sync::Arc::new(move |d, i| {
                let key = ac.eval(d).key(i).clone();
                // chains map by the identity on the shared objects
                bc.eval(d).position(&key).expect("chain persists")
            }),
        );
        SpoMap { source: a, target: b, map }
    }

    #[test]
    fn dk_equivalences_compose() {
        let inner = Site::theta(1);
        let probe = Window::up_to_degree(&inner, 2);
        let f = clique_inclusion(&inner, 1, 2);
        let g = clique_inclusion(&inner, 2, 3);
        assert!(dk_equivalence_check(&f, &probe).unwrap());
        assert!(dk_equivalence_check(&g, &probe).unwrap());
        let composite = SpoMap {
            source: f.source.clone(),
            target: g.target.clone(),
            map: f.map.then(&g.map).unwrap(),
        };
        assert!(dk_equivalence_check(&composite, &probe).unwrap());
    }
}
