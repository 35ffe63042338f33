//! Maps of presheaves.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::site::{SiteMorphism, SiteObject, Window};

use super::{ElemKey, Presheaf};

/// Index formula of a pointwise map: object and element index to element
/// index in the target.
pub type IndexFormula = Arc<dyn Fn(&SiteObject, usize) -> usize + Send + Sync>;

#[derive(Clone)]
pub(crate) enum MapData {
    Identity,
    /// Source must be presented: one target element per source cell,
    /// indexed at that cell's shape.
    Cells(Arc<Vec<usize>>),
    Pointwise(IndexFormula),
    Composite(Arc<PresheafMap>, Arc<PresheafMap>),
}

/// A natural map between presheaves on a shared site.
#[derive(Clone)]
pub struct PresheafMap {
    source: Presheaf,
    target: Presheaf,
    data: MapData,
}

impl PresheafMap {
    pub fn identity(p: &Presheaf) -> PresheafMap {
        PresheafMap { source: p.clone(), target: p.clone(), data: MapData::Identity }
    }

    /// Builds a map out of a presented presheaf by assigning each cell an
    /// element of the target at the cell's shape, checking the relations.
    pub fn on_cells(source: &Presheaf, target: &Presheaf, cells: Vec<usize>) -> Result<Self> {
        if source.site() != target.site() {
            return Err(Error::SiteMismatch);
        }
        let pres = source.presentation().ok_or(Error::NotPresented)?;
        if cells.len() != pres.cells.len() {
            return Err(Error::ArityMismatch { expected: pres.cells.len(), got: cells.len() });
        }
        for (ci, c) in pres.cells.iter().enumerate() {
            if cells[ci] >= target.size_at(&c.shape) {
                return Err(Error::Malformed(format!(
                    "cell {ci} assignment out of range at {}",
                    c.shape
                )));
            }
        }
        for r in &pres.relations {
            let l = target.act(&r.left.1, cells[r.left.0]);
            let rr = target.act(&r.right.1, cells[r.right.0]);
            if l != rr {
                return Err(Error::Malformed("cell assignment breaks a relation".into()));
            }
        }
        Ok(PresheafMap {
            source: source.clone(),
            target: target.clone(),
            data: MapData::Cells(Arc::new(cells)),
        })
    }

    /// As `on_cells` but without re-checking the relations; used by
    /// enumeration code that has already verified them.
    pub(crate) fn on_cells_unchecked(
        source: &Presheaf,
        target: &Presheaf,
        cells: Vec<usize>,
    ) -> Self {
        PresheafMap {
            source: source.clone(),
            target: target.clone(),
            data: MapData::Cells(Arc::new(cells)),
        }
    }

    /// A map given by an index formula per object. The caller is responsible
    /// for naturality; `verify_natural_on` spot-checks it.
    pub fn pointwise(source: &Presheaf, target: &Presheaf, f: IndexFormula) -> Self {
        PresheafMap { source: source.clone(), target: target.clone(), data: MapData::Pointwise(f) }
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    /// The cell assignment when the source is presented.
    pub fn cell_assignment(&self) -> Option<Vec<usize>> {
        let pres = self.source.presentation()?;
        let mut out = Vec::with_capacity(pres.cells.len());
        for (ci, c) in pres.cells.iter().enumerate() {
            let own = self
                .source
                .eval(&c.shape)
                .position(&ElemKey::Cls(ci, SiteMorphism::identity(&c.shape)))
                .expect("cell has a canonical element");
            out.push(self.apply(&c.shape, own));
        }
        Some(out)
    }

    /// Image of the element `idx` of the source at `d`.
    pub fn apply(&self, d: &SiteObject, idx: usize) -> usize {
        match &self.data {
            MapData::Identity => idx,
            MapData::Cells(cells) => match self.source.eval(d).key(idx) {
                ElemKey::Cls(c, u) => self.target.act(u, cells[*c]),
                other => panic!("cell map applied to non-presented key {other:?}"),
            },
            MapData::Pointwise(f) => f(d, idx),
            MapData::Composite(f, g) => g.apply(d, f.apply(d, idx)),
        }
    }

    pub fn component(&self, d: &SiteObject) -> Vec<usize> {
        (0..self.source.size_at(d)).map(|i| self.apply(d, i)).collect()
    }

    /// Composite `g . self` (this map first).
    pub fn then(&self, g: &PresheafMap) -> Result<PresheafMap> {
        if self.target.site() != g.source.site() {
            return Err(Error::SiteMismatch);
        }
        Ok(PresheafMap {
            source: self.source.clone(),
            target: g.target.clone(),
            data: MapData::Composite(Arc::new(self.clone()), Arc::new(g.clone())),
        })
    }

    pub fn is_mono_on(&self, w: &Window) -> bool {
        w.objects().iter().all(|d| {
            let comp = self.component(d);
            let mut seen = comp.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == comp.len()
        })
    }

    pub fn is_surjective_on(&self, w: &Window) -> bool {
        w.objects().iter().all(|d| {
            let mut comp = self.component(d);
            comp.sort_unstable();
            comp.dedup();
            comp.len() == self.target.size_at(d)
        })
    }

    pub fn is_iso_on(&self, w: &Window) -> bool {
        self.is_mono_on(w) && self.is_surjective_on(w)
    }

    /// First naturality failure over the window, if any: a pair of objects
    /// and a morphism whose square does not commute.
    pub fn naturality_failure_on(&self, w: &Window) -> Option<(SiteObject, SiteObject)> {
        for d in w.objects() {
            for e in w.objects() {
                for g in SiteMorphism::hom(d, e).iter() {
                    for i in 0..self.source.size_at(e) {
                        let via_target = self.target.act(g, self.apply(e, i));
                        let via_source = self.apply(d, self.source.act(g, i));
                        if via_target != via_source {
                            return Some((d.clone(), e.clone()));
                        }
                    }
                }
            }
        }
        None
    }

    /// Two maps agree when their components match over the window.
    pub fn agrees_with_on(&self, other: &PresheafMap, w: &Window) -> bool {
        w.objects().iter().all(|d| self.component(d) == other.component(d))
    }
}
