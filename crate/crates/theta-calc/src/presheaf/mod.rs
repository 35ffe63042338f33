//! Finitely generated presheaves on product Θ-sites.
//!
//! A presheaf is held as a construction tree whose leaves are finite
//! presentations (colimits of representables). Evaluation at any site object
//! is exact and lazy; derived nodes (products, pullbacks, unions, slices,
//! fibers, nerves, reductions) evaluate pointwise. All values are immutable
//! and evaluation is memoized behind a mutex, so sharing across threads is
//! safe and transparent.

mod maps;
mod ops;
#[cfg(test)]
mod tests;

pub use maps::PresheafMap;
pub use ops::*;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::enriched::EnrichedCategory;
use crate::error::{Error, Result};
use crate::site::{Site, SiteMorphism, SiteObject};
use crate::theta::{ThetaMorphism, ThetaObject};

/// A single generating cell of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub shape: SiteObject,
}

/// A gluing relation between two parallel elements: both sides are
/// `(cell, morphism from the relation object into that cell's shape)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub left: (usize, SiteMorphism),
    pub right: (usize, SiteMorphism),
}

impl Relation {
    pub fn at(&self) -> SiteObject {
        self.left.1.source()
    }
}

/// A finite colimit of representables: cells glued along relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub site: Site,
    pub cells: Vec<Cell>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(site: Site, cells: Vec<Cell>, relations: Vec<Relation>) -> Result<Self> {
        for c in &cells {
            if !site.contains(&c.shape) {
                return Err(Error::ObjectNotOnSite);
            }
        }
        for r in &relations {
            let (lc, rc) = (r.left.0, r.right.0);
            if lc >= cells.len() || rc >= cells.len() {
                return Err(Error::Malformed("relation references a missing cell".into()));
            }
            if r.left.1.target() != cells[lc].shape || r.right.1.target() != cells[rc].shape {
                return Err(Error::Malformed("relation morphism does not land in its cell".into()));
            }
            if r.left.1.source() != r.right.1.source() {
                return Err(Error::Malformed("relation sides are not parallel".into()));
            }
        }
        Ok(Presentation { site, cells, relations })
    }

    /// Largest degree appearing among cell shapes and relation objects.
    pub fn support_degree(&self) -> usize {
        let cells = self.cells.iter().map(|c| c.shape.degree());
        let rels = self.relations.iter().map(|r| r.at().degree());
        cells.chain(rels).max().unwrap_or(0)
    }

    /// Re-embeds the presentation into a larger site, placing the original
    /// factors at the given positions and the terminal object elsewhere.
    pub fn extend(&self, site: Site, positions: &[usize]) -> Presentation {
        assert_eq!(positions.len(), self.site.len());
        let pad_obj = |o: &SiteObject| -> SiteObject {
            let mut v: Vec<ThetaObject> =
                site.factors().iter().map(|&n| ThetaObject::terminal(n)).collect();
            for (k, &pos) in positions.iter().enumerate() {
                v[pos] = o.0[k].clone();
            }
            SiteObject(v)
        };
        let pad_mor = |m: &SiteMorphism| -> SiteMorphism {
            let mut v: Vec<ThetaMorphism> = site
                .factors()
                .iter()
                .map(|&n| ThetaMorphism::identity(&ThetaObject::terminal(n)))
                .collect();
            for (k, &pos) in positions.iter().enumerate() {
                v[pos] = m.0[k].clone();
            }
            SiteMorphism(v)
        };
        let cells = self.cells.iter().map(|c| Cell { shape: pad_obj(&c.shape) }).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                left: (r.left.0, pad_mor(&r.left.1)),
                right: (r.right.0, pad_mor(&r.right.1)),
            })
            .collect();
        Presentation { site, cells, relations }
    }

    /// The presentation of the slice at `factor = at`, on the smaller site.
    pub fn slice(&self, factor: usize, at: &ThetaObject) -> Presentation {
        let sub_site = self.site.without_factor(factor).expect("site keeps a factor");
        let mut cells = Vec::new();
        let mut index: HashMap<(usize, ThetaMorphism), usize> = HashMap::new();
        for (ci, c) in self.cells.iter().enumerate() {
            for u in ThetaMorphism::hom(at, c.shape.factor(factor)).iter() {
                index.insert((ci, u.clone()), cells.len());
                cells.push(Cell { shape: c.shape.without_factor(factor) });
            }
        }
        let mut relations = Vec::new();
        for r in &self.relations {
            let e = r.at();
            for w in ThetaMorphism::hom(at, e.factor(factor)).iter() {
                let translate = |(cell, m): (usize, &SiteMorphism)| -> (usize, SiteMorphism) {
                    let through = m.0[factor].compose(w).expect("factor composite");
                    let sliced = index[&(cell, through)];
                    let mut comps = m.0.clone();
                    comps.remove(factor);
                    (sliced, SiteMorphism(comps))
                };
                relations.push(Relation {
                    left: translate((r.left.0, &r.left.1)),
                    right: translate((r.right.0, &r.right.1)),
                });
            }
        }
        Presentation { site: sub_site, cells, relations }
    }
}

/// Canonical element descriptors; the variant matches the construction node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElemKey {
    /// Presented: (cell, morphism into the cell shape), class representative.
    Cls(usize, SiteMorphism),
    /// Product or fiber power: tuple of component indices.
    Tup(Vec<usize>),
    /// Pullback: pair of component indices.
    Pair(usize, usize),
    /// Subobject nodes (union, slice, skeleton, fiber): ambient index.
    Sub(usize),
    /// Coproduct, pointwise pushout, reduction: tagged injection.
    In(usize, usize),
    /// Nerve: object tuple and hom element indices.
    Chain(Vec<usize>, Vec<usize>),
    /// Walking-isomorphism nerve: vertex word.
    Word(Vec<usize>),
    /// 0-coskeleton: vertex tuple.
    Vs(Vec<usize>),
}

/// The computed value of a presheaf at one object.
pub struct Eval {
    keys: Vec<ElemKey>,
    index: HashMap<ElemKey, usize>,
}

impl Eval {
    fn from_keys(keys: Vec<ElemKey>) -> Eval {
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Eval { keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &ElemKey {
        &self.keys[i]
    }

    pub fn position(&self, k: &ElemKey) -> Option<usize> {
        self.index.get(k).copied()
    }
}

pub(crate) struct Pi0Data {
    pub classes: usize,
    pub class_of: Vec<usize>,
}

pub(crate) enum Data {
    Presented(Presentation),
    Product(Vec<Presheaf>),
    Pullback { left: PresheafMap, right: PresheafMap },
    Union { ambient: Presheaf, parts: Vec<PresheafMap> },
    Slice { of: Presheaf, factor: usize, at: ThetaObject },
    Skeleton { of: Presheaf, factor: usize, level: usize },
    Cosk0 { factor: usize, vertices: usize },
    Fiber { of: Presheaf, factor: usize, level: usize, vertices: Vec<usize> },
    FiberPower { of: Presheaf, factor: usize, k: usize },
    Nerve { cat: Arc<EnrichedCategory> },
    IsoNerve { factor: usize, degree_hint: usize },
    Reduction { of: Presheaf, factor: usize, pi0: Arc<Pi0Data> },
    PushoutPw { left: PresheafMap, right: PresheafMap },
    CoproductPw(Vec<Presheaf>),
}

struct Inner {
    site: Site,
    data: Data,
    cache: Mutex<HashMap<SiteObject, Arc<Eval>>>,
}

/// A presheaf of finite sets on a product Θ-site.
#[derive(Clone)]
pub struct Presheaf {
    inner: Arc<Inner>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as representative for canonical ordering
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

impl Presheaf {
    pub(crate) fn from_data(site: Site, data: Data) -> Presheaf {
        Presheaf { inner: Arc::new(Inner { site, data, cache: Mutex::new(HashMap::new()) }) }
    }

    pub fn from_presentation(p: Presentation) -> Presheaf {
        let site = p.site.clone();
        Self::from_data(site, Data::Presented(p))
    }

    pub fn site(&self) -> &Site {
        &self.inner.site
    }

    pub fn is_same(&self, other: &Presheaf) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.inner.data {
            Data::Presented(p) => Some(p),
            _ => None,
        }
    }

    pub(crate) fn data(&self) -> &Data {
        &self.inner.data
    }

    /// Exact evaluation at a site object, memoized.
    pub fn eval(&self, d: &SiteObject) -> Arc<Eval> {
        if let Some(hit) = self.inner.cache.lock().unwrap().get(d) {
            return hit.clone();
        }
        let computed = Arc::new(self.eval_uncached(d));
        self.inner.cache.lock().unwrap().insert(d.clone(), computed.clone());
        computed
    }

    pub fn size_at(&self, d: &SiteObject) -> usize {
        self.eval(d).len()
    }

    /// Contravariant action: for `g : d' -> d`, maps indices at `d = g.target()`
    /// to indices at `d' = g.source()`.
    pub fn act(&self, g: &SiteMorphism, idx: usize) -> usize {
        let d = g.target();
        let dsrc = g.source();
        if g.is_identity() {
            return idx;
        }
        let at_d = self.eval(&d);
        let at_src = self.eval(&dsrc);
        match (&self.inner.data, at_d.key(idx)) {
            (Data::Presented(_), ElemKey::Cls(c, u)) => {
                let composed = u.compose(g).expect("presentation morphisms compose");
                at_src
                    .position(&ElemKey::Cls(*c, composed))
                    .expect("presented action stays inside the class table")
            }
            (Data::Product(ps), ElemKey::Tup(t)) => {
                let moved: Vec<usize> =
                    ps.iter().zip(t).map(|(p, &i)| p.act(g, i)).collect();
                at_src.position(&ElemKey::Tup(moved)).expect("product action")
            }
            (Data::Pullback { left, right }, ElemKey::Pair(i, j)) => {
                let ni = left.source().act(g, *i);
                let nj = right.source().act(g, *j);
                at_src.position(&ElemKey::Pair(ni, nj)).expect("pullback action")
            }
            (Data::Union { ambient, .. }, ElemKey::Sub(i)) => {
                let ni = ambient.act(g, *i);
                at_src.position(&ElemKey::Sub(ni)).expect("union is a subfunctor")
            }
            (Data::Slice { of, factor, at }, ElemKey::Sub(i)) => {
                let big = insert_identity(g, *factor, at);
                let ni = of.act(&big, *i);
                at_src.position(&ElemKey::Sub(ni)).expect("slice action")
            }
            (Data::Skeleton { of, .. }, ElemKey::Sub(i)) => {
                let ni = of.act(g, *i);
                at_src.position(&ElemKey::Sub(ni)).expect("skeleton is a subfunctor")
            }
            (Data::Cosk0 { factor, .. }, ElemKey::Vs(t)) => {
                let delta = g.0[*factor].delta();
                let moved: Vec<usize> = delta.iter().map(|&v| t[v]).collect();
                at_src.position(&ElemKey::Vs(moved)).expect("coskeleton action")
            }
            (Data::Fiber { of, factor, level, .. }, ElemKey::Sub(i)) => {
                let level_obj = ThetaObject::simplex(*level);
                let big = insert_identity(g, *factor, &level_obj);
                let ni = of.act(&big, *i);
                at_src.position(&ElemKey::Sub(ni)).expect("fiber is closed under the action")
            }
            (Data::FiberPower { of, factor, .. }, ElemKey::Tup(t)) => {
                let edge = ThetaObject::simplex(1);
                let big = insert_identity(g, *factor, &edge);
                let moved: Vec<usize> = t.iter().map(|&i| of.act(&big, i)).collect();
                at_src.position(&ElemKey::Tup(moved)).expect("fiber power action")
            }
            (Data::Nerve { cat }, ElemKey::Chain(zs, hs)) => {
                let key = nerve_act(cat, g, zs, hs);
                at_src.position(&key).expect("nerve action")
            }
            (Data::IsoNerve { factor, .. }, ElemKey::Word(w)) => {
                let delta = g.0[*factor].delta();
                let moved: Vec<usize> = delta.iter().map(|&v| w[v]).collect();
                at_src.position(&ElemKey::Word(moved)).expect("iso-nerve action")
            }
            (Data::Reduction { of, factor, pi0 }, key) => {
                let moved = match key {
                    ElemKey::In(0, x) => {
                        ElemKey::In(0, of.act(g, *x))
                    }
                    ElemKey::In(1, c) => ElemKey::In(1, *c),
                    other => panic!("unexpected reduction key {other:?}"),
                };
                let _ = (factor, pi0);
                at_src.position(&moved).expect("reduction action")
            }
            (Data::PushoutPw { left, right }, key) => {
                let moved = match key {
                    ElemKey::In(0, i) => ElemKey::In(0, left.target().act(g, *i)),
                    ElemKey::In(1, j) => ElemKey::In(1, right.target().act(g, *j)),
                    other => panic!("unexpected pushout key {other:?}"),
                };
                at_src.position(&moved).expect("pushout action")
            }
            (Data::CoproductPw(ps), ElemKey::In(part, i)) => {
                let ni = ps[*part].act(g, *i);
                at_src.position(&ElemKey::In(*part, ni)).expect("coproduct action")
            }
            (_, key) => panic!("key {key:?} does not match presheaf node"),
        }
    }

    /// A coarse bound on where the presheaf is generated; used to pick
    /// edge shapes for component computations.
    pub fn support_degree_hint(&self) -> usize {
        match &self.inner.data {
            Data::Presented(p) => p.support_degree(),
            Data::Product(ps) => ps.iter().map(|p| p.support_degree_hint()).sum(),
            Data::Pullback { left, right } => left
                .source()
                .support_degree_hint()
                .max(right.source().support_degree_hint()),
            Data::Union { ambient, .. } => ambient.support_degree_hint(),
            Data::Slice { of, .. } => of.support_degree_hint(),
            Data::Skeleton { of, .. } => of.support_degree_hint(),
            Data::Cosk0 { .. } => 1,
            Data::Fiber { of, .. } => of.support_degree_hint(),
            Data::FiberPower { of, .. } => of.support_degree_hint(),
            Data::Nerve { cat } => cat.hom_support_degree() + 1,
            Data::IsoNerve { degree_hint, .. } => *degree_hint,
            Data::Reduction { of, .. } => of.support_degree_hint(),
            Data::PushoutPw { left, right } => left
                .target()
                .support_degree_hint()
                .max(right.target().support_degree_hint()),
            Data::CoproductPw(ps) => {
                ps.iter().map(|p| p.support_degree_hint()).max().unwrap_or(0)
            }
        }
    }

    fn eval_uncached(&self, d: &SiteObject) -> Eval {
        assert!(self.inner.site.contains(d), "object {d} is not on site {}", self.inner.site);
        match &self.inner.data {
            Data::Presented(p) => eval_presented(p, d),
            Data::Product(ps) => {
                let sizes: Vec<usize> = ps.iter().map(|p| p.size_at(d)).collect();
                let keys = tuples(&sizes).into_iter().map(ElemKey::Tup).collect();
                Eval::from_keys(keys)
            }
            Data::Pullback { left, right } => {
                let nl = left.source().size_at(d);
                let nr = right.source().size_at(d);
                let lcomp: Vec<usize> = (0..nl).map(|i| left.apply(d, i)).collect();
                let rcomp: Vec<usize> = (0..nr).map(|j| right.apply(d, j)).collect();
                let mut keys = Vec::new();
                for (i, li) in lcomp.iter().enumerate() {
                    for (j, rj) in rcomp.iter().enumerate() {
                        if li == rj {
                            keys.push(ElemKey::Pair(i, j));
                        }
                    }
                }
                Eval::from_keys(keys)
            }
            Data::Union { ambient, parts } => {
                let mut hits: Vec<usize> = Vec::new();
                for part in parts {
                    let n = part.source().size_at(d);
                    for i in 0..n {
                        hits.push(part.apply(d, i));
                    }
                }
                hits.sort_unstable();
                hits.dedup();
                let _ = ambient.size_at(d);
                Eval::from_keys(hits.into_iter().map(ElemKey::Sub).collect())
            }
            Data::Slice { of, factor, at } => {
                let n = of.size_at(&d.insert_factor(*factor, at.clone()));
                Eval::from_keys((0..n).map(ElemKey::Sub).collect())
            }
            Data::Skeleton { of, factor, level } => {
                let n = of.size_at(d);
                let keys = (0..n)
                    .filter(|&i| outer_root_level(of, *factor, d, i) <= *level)
                    .map(ElemKey::Sub)
                    .collect();
                Eval::from_keys(keys)
            }
            Data::Cosk0 { factor, vertices, .. } => {
                let p = d.factor(*factor).width();
                let sizes = vec![*vertices; p + 1];
                Eval::from_keys(tuples(&sizes).into_iter().map(ElemKey::Vs).collect())
            }
            Data::Fiber { of, factor, level, vertices } => {
                let level_obj = ThetaObject::simplex(*level);
                let big = d.insert_factor(*factor, level_obj);
                let n = of.size_at(&big);
                let keys = (0..n)
                    .filter(|&i| {
                        vertex_tuple(of, *factor, *level, d, i) == *vertices
                    })
                    .map(ElemKey::Sub)
                    .collect();
                Eval::from_keys(keys)
            }
            Data::FiberPower { of, factor, k } => {
                let edge = ThetaObject::simplex(1);
                let big = d.insert_factor(*factor, edge);
                let n = of.size_at(&big);
                let ends: Vec<Vec<usize>> =
                    (0..n).map(|i| vertex_tuple(of, *factor, 1, d, i)).collect();
                let mut keys = Vec::new();
                let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
                while let Some(t) = stack.pop() {
                    if t.len() == *k {
                        keys.push(ElemKey::Tup(t));
                        continue;
                    }
                    for i in (0..n).rev() {
                        if t.is_empty() || ends[*t.last().unwrap()][1] == ends[i][0] {
                            let mut t2 = t.clone();
                            t2.push(i);
                            stack.push(t2);
                        }
                    }
                }
                keys.sort();
                Eval::from_keys(keys)
            }
            Data::Nerve { cat } => eval_nerve(cat, d),
            Data::IsoNerve { factor, .. } => {
                let len = d.factor(*factor).width() + 1;
                let sizes = vec![2usize; len];
                Eval::from_keys(tuples(&sizes).into_iter().map(ElemKey::Word).collect())
            }
            Data::Reduction { of, factor, pi0 } => eval_reduction(of, *factor, pi0, d),
            Data::PushoutPw { left, right } => {
                let nb = left.target().size_at(d);
                let nc = right.target().size_at(d);
                let na = left.source().size_at(d);
                let mut uf = UnionFind::new(nb + nc);
                for a in 0..na {
                    uf.union(left.apply(d, a), nb + right.apply(d, a));
                }
                classes_eval(&mut uf, nb + nc, |raw| {
                    if raw < nb {
                        ElemKey::In(0, raw)
                    } else {
                        ElemKey::In(1, raw - nb)
                    }
                })
            }
            Data::CoproductPw(ps) => {
                let mut keys = Vec::new();
                for (part, p) in ps.iter().enumerate() {
                    for i in 0..p.size_at(d) {
                        keys.push(ElemKey::In(part, i));
                    }
                }
                Eval::from_keys(keys)
            }
        }
    }
}

/// Builds the quotient Eval from a union-find over raw indices: class
/// representatives keep raw order, and every raw key aliases its class.
fn classes_eval(
    uf: &mut UnionFind,
    n: usize,
    key_of_raw: impl Fn(usize) -> ElemKey,
) -> Eval {
    let mut rep_to_class: HashMap<usize, usize> = HashMap::new();
    let mut keys = Vec::new();
    let mut index = HashMap::new();
    for raw in 0..n {
        let rep = uf.find(raw);
        let class = *rep_to_class.entry(rep).or_insert_with(|| {
            keys.push(key_of_raw(rep));
            keys.len() - 1
        });
        index.insert(key_of_raw(raw), class);
    }
    Eval { keys, index }
}

fn eval_presented(p: &Presentation, d: &SiteObject) -> Eval {
    let mut raw_keys: Vec<ElemKey> = Vec::new();
    let mut raw_index: HashMap<ElemKey, usize> = HashMap::new();
    for (ci, c) in p.cells.iter().enumerate() {
        for u in SiteMorphism::hom(d, &c.shape).iter() {
            let k = ElemKey::Cls(ci, u.clone());
            raw_index.insert(k.clone(), raw_keys.len());
            raw_keys.push(k);
        }
    }
    let mut uf = UnionFind::new(raw_keys.len());
    for r in &p.relations {
        let e = r.at();
        for g in SiteMorphism::hom(d, &e).iter() {
            let l = ElemKey::Cls(r.left.0, r.left.1.compose(g).expect("relation composes"));
            let rr = ElemKey::Cls(r.right.0, r.right.1.compose(g).expect("relation composes"));
            uf.union(raw_index[&l], raw_index[&rr]);
        }
    }
    let mut rep_to_class: HashMap<usize, usize> = HashMap::new();
    let mut keys = Vec::new();
    let mut index = HashMap::new();
    for (rawpos, key) in raw_keys.iter().enumerate() {
        let rep = uf.find(rawpos);
        let class = *rep_to_class.entry(rep).or_insert_with(|| {
            keys.push(raw_keys[rep].clone());
            keys.len() - 1
        });
        index.insert(key.clone(), class);
    }
    Eval { keys, index }
}

fn eval_nerve(cat: &EnrichedCategory, d: &SiteObject) -> Eval {
    let p = d.factor(0).width();
    let theta = d.without_factor(0);
    let nobj = cat.objects().len();
    let mut keys = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..nobj).rev().map(|z| vec![z]).collect();
    // depth-first over object tuples keeps lexicographic order after reversal
    let mut chains: Vec<Vec<usize>> = Vec::new();
    while let Some(t) = stack.pop() {
        if t.len() == p + 1 {
            chains.push(t);
            continue;
        }
        for z in (0..nobj).rev() {
            let mut t2 = t.clone();
            t2.push(z);
            stack.push(t2);
        }
    }
    for zs in chains {
        let sizes: Vec<usize> = (1..=p)
            .map(|t| cat.hom(zs[t - 1], zs[t]).size_at(&theta))
            .collect();
        if sizes.contains(&0) {
            continue;
        }
        for hs in tuples(&sizes) {
            keys.push(ElemKey::Chain(zs.clone(), hs));
        }
    }
    keys.sort();
    Eval::from_keys(keys)
}

fn nerve_act(cat: &EnrichedCategory, g: &SiteMorphism, zs: &[usize], hs: &[usize]) -> ElemKey {
    let alpha = g.0[0].delta();
    let theta_src = g.source().without_factor(0);
    let inner = SiteMorphism(g.0[1..].to_vec());
    let new_p = alpha.len() - 1;
    let new_zs: Vec<usize> = alpha.iter().map(|&v| zs[v]).collect();
    let mut new_hs = Vec::new();
    for t in 1..=new_p {
        let (a, b) = (alpha[t - 1], alpha[t]);
        if a == b {
            new_hs.push(cat.unit_at(zs[a], &theta_src));
        } else {
            // composite of the original hom elements over (a, b], inner-acted
            let mut acc = cat.hom(zs[a], zs[a + 1]).act(&inner, hs[a]);
            for j in a + 2..=b {
                let fj = cat.hom(zs[j - 1], zs[j]).act(&inner, hs[j - 1]);
                acc = cat.compose(zs[a], zs[j - 1], zs[j], &theta_src, fj, acc);
            }
            new_hs.push(acc);
        }
    }
    ElemKey::Chain(new_zs, new_hs)
}

fn eval_reduction(of: &Presheaf, factor: usize, pi0: &Pi0Data, d: &SiteObject) -> Eval {
    let n = of.size_at(d);
    let zero = d.with_factor(factor, ThetaObject::terminal(1));
    let n0 = of.size_at(&zero);
    let total = n + pi0.classes;
    let mut uf = UnionFind::new(total);
    // glue the total degeneration of every level-zero element to its component
    let collapse = total_outer_degeneracy(&zero, d, factor);
    for v in 0..n0 {
        let degenerate = of.act(&collapse, v);
        let class = level_zero_class(of, factor, pi0, &zero, v);
        uf.union(degenerate, n + class);
    }
    classes_eval(&mut uf, total, |raw| {
        if raw < n {
            ElemKey::In(0, raw)
        } else {
            ElemKey::In(1, raw - n)
        }
    })
}

/// The site morphism `([p], rest) -> ([0], rest)` collapsing the outer simplex.
fn total_outer_degeneracy(zero: &SiteObject, d: &SiteObject, factor: usize) -> SiteMorphism {
    let p = d.factor(factor).width();
    let collapse =
        ThetaMorphism::simplicial(p, 0, vec![0; p + 1]).expect("total degeneracy");
    let mut comps: Vec<ThetaMorphism> =
        zero.0.iter().map(ThetaMorphism::identity).collect();
    comps[factor] = collapse;
    SiteMorphism(comps)
}

/// Component class of a level-zero element, via its first vertex.
pub(crate) fn level_zero_class(
    of: &Presheaf,
    factor: usize,
    pi0: &Pi0Data,
    zero: &SiteObject,
    v: usize,
) -> usize {
    let _ = zero.without_factor(factor);
    let top = inner_terminal(of.site(), factor);
    let verts = SiteMorphism::hom(&inner_insert(&top, factor), zero);
    let vertex = verts.first().expect("every object has a vertex");
    pi0.class_of[of.act(vertex, v)]
}

fn inner_terminal(site: &Site, factor: usize) -> SiteObject {
    let sub = site.without_factor(factor).expect("inner site");
    sub.terminal()
}

fn inner_insert(top: &SiteObject, factor: usize) -> SiteObject {
    top.insert_factor(factor, ThetaObject::terminal(1))
}

/// Inserts an identity component into a morphism of the smaller site.
pub(crate) fn insert_identity(g: &SiteMorphism, factor: usize, at: &ThetaObject) -> SiteMorphism {
    let mut comps = g.0.clone();
    comps.insert(factor, ThetaMorphism::identity(at));
    SiteMorphism(comps)
}

/// All index tuples below the given sizes, lexicographic.
pub(crate) fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        let mut next = Vec::with_capacity(out.len() * s);
        for t in &out {
            for v in 0..s {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Level at which an element's outer degeneracy chain bottoms out.
fn outer_root_level(of: &Presheaf, factor: usize, d: &SiteObject, idx: usize) -> usize {
    let outer = d.factor(factor);
    let q = outer.width();
    for i in 0..q {
        // codegeneracy of [q] merging vertices i and i+1
        let delta: Vec<usize> = (0..=q).map(|t| if t <= i { t } else { t - 1 }).collect();
        let s = ThetaMorphism::simplicial(q, q - 1, delta).expect("outer codegeneracy");
        let mut comps: Vec<ThetaMorphism> = d.0.iter().map(ThetaMorphism::identity).collect();
        comps[factor] = s;
        let smor = SiteMorphism(comps);
        let below = d.with_factor(factor, ThetaObject::simplex(q - 1));
        let nb = of.size_at(&below);
        for j in 0..nb {
            if of.act(&smor, j) == idx {
                return outer_root_level(of, factor, &below, j);
            }
        }
    }
    q
}

/// Number of level-zero points of a diagram that is discrete at level zero.
pub(crate) fn vertex_count(of: &Presheaf, factor: usize) -> usize {
    let top = inner_terminal(of.site(), factor);
    of.size_at(&inner_insert(&top, factor))
}

/// Identifies `X([0], theta)` with the canonical vertex set, inverting the
/// restriction along `theta -> terminal`. Panics when level zero is not
/// discrete, which the Segal-object constructors rule out.
pub(crate) fn vertex_index(
    of: &Presheaf,
    factor: usize,
    inner: &SiteObject,
    idx: usize,
) -> usize {
    let top = inner_terminal(of.site(), factor);
    let top_obj = inner_insert(&top, factor);
    let zero = inner.insert_factor(factor, ThetaObject::terminal(1));
    let bang = SiteMorphism::hom(&zero, &top_obj)[0].clone();
    let v = of.size_at(&top_obj);
    let mut image = vec![usize::MAX; of.size_at(&zero)];
    for s in 0..v {
        let t = of.act(&bang, s);
        assert!(image[t] == usize::MAX, "level zero is not discrete at {inner}");
        image[t] = s;
    }
    let found = image[idx];
    assert!(found != usize::MAX, "level zero is not discrete at {inner}");
    found
}

/// Vertex tuple of an element of `X([level], inner)`.
pub(crate) fn vertex_tuple(
    of: &Presheaf,
    factor: usize,
    level: usize,
    inner: &SiteObject,
    idx: usize,
) -> Vec<usize> {
    let level_obj = ThetaObject::simplex(level);
    (0..=level)
        .map(|t| {
            let vtx = ThetaMorphism::simplicial(0, level, vec![t]).expect("vertex inclusion");
            let mut comps: Vec<ThetaMorphism> = inner
                .insert_factor(factor, level_obj.clone())
                .0
                .iter()
                .map(ThetaMorphism::identity)
                .collect();
            comps[factor] = vtx;
            let restricted = of.act(&SiteMorphism(comps), idx);
            vertex_index(of, factor, inner, restricted)
        })
        .collect()
}

/// Connected components of a presheaf on its site: the quotient of the value
/// at the terminal object by the edge identifications up to `edge_degree`.
pub(crate) fn pi0_data(p: &Presheaf, edge_degree: usize) -> Pi0Data {
    let site = p.site().clone();
    let top = site.terminal();
    let n = p.size_at(&top);
    let mut uf = UnionFind::new(n);
    for (k, &lvl) in site.factors().iter().enumerate() {
        let inner_shapes: Vec<ThetaObject> = if lvl == 0 {
            Vec::new()
        } else {
            ThetaObject::enumerate(lvl - 1, edge_degree)
        };
        for c in inner_shapes {
            let edge = top.with_factor(k, ThetaObject::new(lvl, vec![c]).expect("edge"));
            for (v0, v1) in edge_vertex_pair(&top, &edge, k) {
                for z in 0..p.size_at(&edge) {
                    uf.union(p.act(&v0, z), p.act(&v1, z));
                }
            }
        }
    }
    let mut rep_to_class: HashMap<usize, usize> = HashMap::new();
    let mut class_of = vec![0usize; n];
    let mut classes = 0usize;
    for (v, slot) in class_of.iter_mut().enumerate() {
        let rep = uf.find(v);
        *slot = *rep_to_class.entry(rep).or_insert_with(|| {
            classes += 1;
            classes - 1
        });
    }
    Pi0Data { classes, class_of }
}

fn edge_vertex_pair(
    top: &SiteObject,
    edge: &SiteObject,
    k: usize,
) -> Vec<(SiteMorphism, SiteMorphism)> {
    let mk = |val: usize| {
        let vtx = ThetaMorphism::new(
            top.factor(k).clone(),
            edge.factor(k).clone(),
            vec![val],
            Vec::new(),
        )
        .expect("edge vertex");
        let mut comps: Vec<ThetaMorphism> = top.0.iter().map(ThetaMorphism::identity).collect();
        comps[k] = vtx;
        SiteMorphism(comps)
    };
    vec![(mk(0), mk(1))]
}
