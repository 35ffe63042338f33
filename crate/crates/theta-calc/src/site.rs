//! Product Θ-sites: finite tuples of cell categories, acting componentwise.
//!
//! A site is a list of Θ-levels, e.g. `(Δ)` for simplicial sets, `(Δ, Θ_n)`
//! for simplicial presheaves on Θ_n, and `(Δ, Δ, Θ_n)` for simplicial
//! diagrams of those.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::theta::{MorphismClass, ThetaMorphism, ThetaObject};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize, serde::Deserialize)]
pub struct Site {
    factors: Vec<u32>,
}

impl Site {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Malformed("a site needs at least one factor".into()));
        }
        Ok(Site { factors })
    }

    /// The one-factor site of presheaves on Θ_n.
    pub fn theta(n: u32) -> Self {
        Site { factors: vec![n] }
    }

    /// Simplicial diagrams over this site: a new Δ factor in front.
    pub fn with_outer_simplicial(&self) -> Self {
        let mut factors = vec![1];
        factors.extend_from_slice(&self.factors);
        Site { factors }
    }

    /// Drops the factor at `pos`.
    pub fn without_factor(&self, pos: usize) -> Result<Self> {
        let mut factors = self.factors.clone();
        if pos >= factors.len() || factors.len() == 1 {
            return Err(Error::Malformed("cannot drop that factor".into()));
        }
        factors.remove(pos);
        Ok(Site { factors })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, a: &SiteObject) -> bool {
        a.0.len() == self.factors.len()
            && a.0.iter().zip(&self.factors).all(|(o, &n)| o.level() == n)
    }

    /// The terminal object: `[0]` in every factor.
    pub fn terminal(&self) -> SiteObject {
        SiteObject(self.factors.iter().map(|&n| ThetaObject::terminal(n)).collect())
    }

    /// All site objects with total degree at most `max_degree`.
    pub fn enumerate(&self, max_degree: usize) -> Vec<SiteObject> {
        let mut tuples: Vec<Vec<ThetaObject>> = vec![Vec::new()];
        for &n in &self.factors {
            let per = ThetaObject::enumerate(n, max_degree);
            let mut next = Vec::new();
            for t in &tuples {
                let used: usize = t.iter().map(|o| o.degree()).sum();
                for o in &per {
                    if used + o.degree() <= max_degree {
                        let mut t2 = t.clone();
                        t2.push(o.clone());
                        next.push(t2);
                    }
                }
            }
            tuples = next;
        }
        let mut out: Vec<SiteObject> = tuples.into_iter().map(SiteObject).collect();
        out.sort();
        out
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, n) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "Θ{n}")?;
        }
        write!(f, ")")
    }
}

/// An object of a product site: one Θ-object per factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SiteObject(pub Vec<ThetaObject>);

impl SiteObject {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|o| o.degree()).sum()
    }

    pub fn factor(&self, k: usize) -> &ThetaObject {
        &self.0[k]
    }

    /// Replaces the factor at `pos`.
    pub fn with_factor(&self, pos: usize, o: ThetaObject) -> SiteObject {
        let mut v = self.0.clone();
        v[pos] = o;
        SiteObject(v)
    }

    /// Inserts a new factor at `pos`.
    pub fn insert_factor(&self, pos: usize, o: ThetaObject) -> SiteObject {
        let mut v = self.0.clone();
        v.insert(pos, o);
        SiteObject(v)
    }

    /// Removes the factor at `pos`.
    pub fn without_factor(&self, pos: usize) -> SiteObject {
        let mut v = self.0.clone();
        v.remove(pos);
        SiteObject(v)
    }
}

impl fmt::Display for SiteObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (k, o) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, ")")
    }
}

/// A morphism of a product site, componentwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SiteMorphism(pub Vec<ThetaMorphism>);

impl SiteMorphism {
    pub fn source(&self) -> SiteObject {
        SiteObject(self.0.iter().map(|f| f.source().clone()).collect())
    }

    pub fn target(&self) -> SiteObject {
        SiteObject(self.0.iter().map(|f| f.target().clone()).collect())
    }

    pub fn identity(a: &SiteObject) -> Self {
        SiteMorphism(a.0.iter().map(ThetaMorphism::identity).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|f| f.is_identity())
    }

    /// Composite `self . f`.
    pub fn compose(&self, f: &SiteMorphism) -> Result<SiteMorphism> {
        if self.0.len() != f.0.len() {
            return Err(Error::SiteMismatch);
        }
        let comps: Result<Vec<ThetaMorphism>> =
            self.0.iter().zip(&f.0).map(|(g, h)| g.compose(h)).collect();
        Ok(SiteMorphism(comps?))
    }

    pub fn hom(a: &SiteObject, b: &SiteObject) -> Arc<Vec<SiteMorphism>> {
        type HomCache = HashMap<(SiteObject, SiteObject), Arc<Vec<SiteMorphism>>>;
        static CACHE: OnceLock<Mutex<HomCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&(a.clone(), b.clone())) {
            return hit.clone();
        }
        let per: Vec<Arc<Vec<ThetaMorphism>>> =
            a.0.iter().zip(&b.0).map(|(x, y)| ThetaMorphism::hom(x, y)).collect();
        let mut out: Vec<SiteMorphism> = vec![SiteMorphism(Vec::new())];
        for choices in &per {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for partial in &out {
                for c in choices.iter() {
                    let mut v = partial.0.clone();
                    v.push(c.clone());
                    next.push(SiteMorphism(v));
                }
            }
            out = next;
        }
        out.sort();
        let arc = Arc::new(out);
        cache.lock().unwrap().insert((a.clone(), b.clone()), arc.clone());
        arc
    }

    pub fn is_mono(&self) -> bool {
        self.0.iter().all(|f| f.is_mono())
    }

    pub fn is_split_epi(&self) -> bool {
        self.0.iter().all(|f| f.is_split_epi())
    }

    pub fn classify(&self) -> MorphismClass {
        let mono = self.is_mono();
        let split_epi = self.is_split_epi();
        MorphismClass { mono, split_epi, iso: mono && split_epi }
    }

    /// Componentwise epi-mono factorization; intermediate object has minimal degree.
    pub fn factor_epi_mono(&self) -> (SiteMorphism, SiteMorphism) {
        let parts: Vec<(ThetaMorphism, ThetaMorphism)> =
            self.0.iter().map(|f| f.factor_epi_mono()).collect();
        let epi = SiteMorphism(parts.iter().map(|(e, _)| e.clone()).collect());
        let mono = SiteMorphism(parts.into_iter().map(|(_, m)| m).collect());
        (epi, mono)
    }

    /// Elementary codegeneracies of a tuple: elementary in one factor,
    /// identity elsewhere.
    pub fn elementary_codegeneracies(a: &SiteObject) -> Vec<SiteMorphism> {
        let mut out = Vec::new();
        for (pos, o) in a.0.iter().enumerate() {
            for s in ThetaMorphism::elementary_codegeneracies(o) {
                let comps = a
                    .0
                    .iter()
                    .enumerate()
                    .map(|(k, x)| if k == pos { s.clone() } else { ThetaMorphism::identity(x) })
                    .collect();
                out.push(SiteMorphism(comps));
            }
        }
        out
    }

    /// All monomorphisms into `a` (including the identity), canonical order.
    pub fn monos_into(site: &Site, a: &SiteObject) -> Vec<SiteMorphism> {
        let mut out = Vec::new();
        for e in site.enumerate(a.degree()) {
            for f in SiteMorphism::hom(&e, a).iter() {
                if f.is_mono() {
                    out.push(f.clone());
                }
            }
        }
        out.sort();
        out
    }
}

/// A finite probe set of site objects.
///
/// Closed windows contain, for each member, the targets of its elementary
/// codegeneracies and the sources of monomorphisms into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    site: Site,
    objects: Vec<SiteObject>,
}

impl Window {
    /// Every object of total degree at most `d`; always closed.
    pub fn up_to_degree(site: &Site, d: usize) -> Window {
        Window { site: site.clone(), objects: site.enumerate(d) }
    }

    /// Downward closure of a seed set.
    pub fn closure(site: &Site, seeds: &[SiteObject]) -> Window {
        let mut set: BTreeSet<SiteObject> = BTreeSet::new();
        let mut stack: Vec<SiteObject> = seeds.to_vec();
        while let Some(d) = stack.pop() {
            if !set.insert(d.clone()) {
                continue;
            }
            for s in SiteMorphism::elementary_codegeneracies(&d) {
                stack.push(s.target());
            }
            for m in SiteMorphism::monos_into(site, &d) {
                stack.push(m.source());
            }
        }
        Window { site: site.clone(), objects: set.into_iter().collect() }
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn objects(&self) -> &[SiteObject] {
        &self.objects
    }

    pub fn contains(&self, d: &SiteObject) -> bool {
        self.objects.binary_search(d).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.objects.iter().map(|o| o.degree()).max().unwrap_or(0)
    }

    pub fn check_closed(&self) -> Result<()> {
        for d in &self.objects {
            for s in SiteMorphism::elementary_codegeneracies(d) {
                if !self.contains(&s.target()) {
                    return Err(Error::WindowNotClosed(s.target().to_string()));
                }
            }
            for m in SiteMorphism::monos_into(&self.site, d) {
                if !self.contains(&m.source()) {
                    return Err(Error::WindowNotClosed(m.source().to_string()));
                }
            }
        }
        Ok(())
    }
}
