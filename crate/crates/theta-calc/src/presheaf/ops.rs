//! Constructions on presheaves: representables, boundaries, Segal cores,
//! finite limits and colimits, exact hom-sets, and window tabulation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::site::{Site, SiteMorphism, SiteObject, Window};
use crate::theta::{ThetaMorphism, ThetaObject};

use super::{Cell, Data, ElemKey, Presentation, Presheaf, PresheafMap, Relation};

/// The representable presheaf of maps into `a`.
pub fn representable(site: &Site, a: &SiteObject) -> Presheaf {
    let p = Presentation::new(site.clone(), vec![Cell { shape: a.clone() }], Vec::new())
        .expect("representable presentation");
    Presheaf::from_presentation(p)
}

/// The empty presheaf.
pub fn empty(site: &Site) -> Presheaf {
    Presheaf::from_presentation(
        Presentation::new(site.clone(), Vec::new(), Vec::new()).expect("empty presentation"),
    )
}

/// The terminal presheaf, representable at the terminal object.
pub fn terminal(site: &Site) -> Presheaf {
    representable(site, &site.terminal())
}

/// The constant presheaf on a finite set of `k` points.
pub fn discrete(site: &Site, k: usize) -> Presheaf {
    let cell = Cell { shape: site.terminal() };
    let p = Presentation::new(site.clone(), vec![cell; k], Vec::new())
        .expect("discrete presentation");
    Presheaf::from_presentation(p)
}

/// The subpresheaf of `representable(a)` spanned by a set of monomorphisms
/// into `a`, presented with one cell per mono and the evident overlap
/// relations; returns the inclusion.
pub fn sieve_from_monos(
    site: &Site,
    a: &SiteObject,
    monos: Vec<SiteMorphism>,
) -> Result<PresheafMap> {
    let cells: Vec<Cell> = monos.iter().map(|m| Cell { shape: m.source() }).collect();
    let mut relations = Vec::new();
    for (i, mi) in monos.iter().enumerate() {
        for (k, mk) in monos.iter().enumerate() {
            if i == k {
                continue;
            }
            for m in SiteMorphism::hom(&mk.source(), &mi.source()).iter() {
                if mi.compose(m)? == *mk {
                    relations.push(Relation {
                        left: (i, m.clone()),
                        right: (k, SiteMorphism::identity(&mk.source())),
                    });
                }
            }
        }
    }
    let sub = Presheaf::from_presentation(Presentation::new(site.clone(), cells, relations)?);
    let ambient = representable(site, a);
    let assignment: Vec<usize> = monos
        .iter()
        .map(|m| {
            ambient
                .eval(&m.source())
                .position(&ElemKey::Cls(0, m.clone()))
                .expect("mono is an element of the representable")
        })
        .collect();
    PresheafMap::on_cells(&sub, &ambient, assignment)
}

/// The elements of `representable(a)` whose mono part is not invertible,
/// with its inclusion. This is the domain of the matching object.
pub fn boundary(site: &Site, a: &SiteObject) -> PresheafMap {
    let monos: Vec<SiteMorphism> = SiteMorphism::monos_into(site, a)
        .into_iter()
        .filter(|m| m.source() != *a)
        .collect();
    sieve_from_monos(site, a, monos).expect("boundary sieve")
}

/// The spine `G[m](c_1, ..., c_m)`: edge representables glued along vertices,
/// with its inclusion into `representable([m](c))`.
pub fn segal_core(site: &Site, m: usize, cs: &[ThetaObject]) -> Result<PresheafMap> {
    if m < 2 {
        return Err(Error::SpineTooShort(m));
    }
    if cs.len() != m {
        return Err(Error::ArityMismatch { expected: m, got: cs.len() });
    }
    if site.len() != 1 {
        return Err(Error::SiteMismatch);
    }
    let level = site.factors()[0];
    let whole = ThetaObject::new(level, cs.to_vec())?;
    let edge = |i: usize| ThetaObject::new(level, vec![cs[i].clone()]);
    let cells: Result<Vec<Cell>> =
        (0..m).map(|i| Ok(Cell { shape: SiteObject(vec![edge(i)?]) })).collect();
    let cells = cells?;
    let vertex_of = |i: usize, v: usize| -> Result<SiteMorphism> {
        // [0] -> [1](c_i) hitting vertex v
        let vm = ThetaMorphism::new(
            ThetaObject::terminal(level),
            edge(i)?,
            vec![v],
            Vec::new(),
        )?;
        Ok(SiteMorphism(vec![vm]))
    };
    let mut relations = Vec::new();
    for i in 0..m - 1 {
        relations.push(Relation {
            left: (i, vertex_of(i, 1)?),
            right: (i + 1, vertex_of(i + 1, 0)?),
        });
    }
    let sub = Presheaf::from_presentation(Presentation::new(site.clone(), cells, relations)?);
    let ambient = representable(site, &SiteObject(vec![whole.clone()]));
    // the spine edge alpha^i: [1](c_i) -> [m](c), 0 |-> i, 1 |-> i+1
    let assignment: Result<Vec<usize>> = (0..m)
        .map(|i| {
            let alpha = ThetaMorphism::new(
                edge(i)?,
                whole.clone(),
                vec![i, i + 1],
                vec![ThetaMorphism::identity(&cs[i])],
            )?;
            Ok(ambient
                .eval(&SiteObject(vec![edge(i)?]))
                .position(&ElemKey::Cls(0, SiteMorphism(vec![alpha])))
                .expect("spine edge is an element"))
        })
        .collect();
    PresheafMap::on_cells(&sub, &ambient, assignment?)
}

/// Factors where some cell shape is non-terminal. Relation objects do not
/// matter: when every cell is terminal at a factor, evaluation is constant
/// along it, because hom-sets in Θ-categories are never empty and morphisms
/// into the terminal object are unique.
pub fn active_factors(p: &Presentation) -> Vec<bool> {
    let mut active = vec![false; p.site.len()];
    for c in &p.cells {
        for (k, o) in c.shape.0.iter().enumerate() {
            if o.degree() > 0 {
                active[k] = true;
            }
        }
    }
    active
}

fn merge_objects(a: &SiteObject, b: &SiteObject, a_active: &[bool]) -> SiteObject {
    SiteObject(
        a.0.iter()
            .zip(&b.0)
            .enumerate()
            .map(|(k, (x, y))| if a_active[k] { x.clone() } else { y.clone() })
            .collect(),
    )
}

fn merge_morphisms(a: &SiteMorphism, b: &SiteMorphism, a_active: &[bool]) -> SiteMorphism {
    SiteMorphism(
        a.0.iter()
            .zip(&b.0)
            .enumerate()
            .map(|(k, (x, y))| if a_active[k] { x.clone() } else { y.clone() })
            .collect(),
    )
}

/// Exact presentation of a binary product whose operands are presented and
/// supported on disjoint factors.
fn product_presented_disjoint(p: &Presheaf, q: &Presheaf) -> Option<Presheaf> {
    let (pp, qq) = (p.presentation()?, q.presentation()?);
    let pa = active_factors(pp);
    let qa = active_factors(qq);
    if pa.iter().zip(&qa).any(|(&x, &y)| x && y) {
        return None;
    }
    let mut cells = Vec::new();
    for cp in &pp.cells {
        for cq in &qq.cells {
            cells.push(Cell { shape: merge_objects(&cp.shape, &cq.shape, &pa) });
        }
    }
    let cell_index = |i: usize, j: usize| i * qq.cells.len() + j;
    let mut relations = Vec::new();
    for r in &pp.relations {
        for (j, cq) in qq.cells.iter().enumerate() {
            let idq = SiteMorphism::identity(&cq.shape);
            relations.push(Relation {
                left: (cell_index(r.left.0, j), merge_morphisms(&r.left.1, &idq, &pa)),
                right: (cell_index(r.right.0, j), merge_morphisms(&r.right.1, &idq, &pa)),
            });
        }
    }
    for r in &qq.relations {
        for (i, cp) in pp.cells.iter().enumerate() {
            let idp = SiteMorphism::identity(&cp.shape);
            relations.push(Relation {
                left: (cell_index(i, r.left.0), merge_morphisms(&idp, &r.left.1, &pa)),
                right: (cell_index(i, r.right.0), merge_morphisms(&idp, &r.right.1, &pa)),
            });
        }
    }
    let pres = Presentation::new(pp.site.clone(), cells, relations).ok()?;
    Some(Presheaf::from_presentation(pres))
}

/// Pointwise product. When both operands are presented on disjoint factors
/// the result is presented exactly; otherwise it is a derived node.
pub fn product(p: &Presheaf, q: &Presheaf) -> Result<Presheaf> {
    if p.site() != q.site() {
        return Err(Error::SiteMismatch);
    }
    if let Some(exact) = product_presented_disjoint(p, q) {
        return Ok(exact);
    }
    Ok(Presheaf::from_data(p.site().clone(), Data::Product(vec![p.clone(), q.clone()])))
}

/// Projections out of a derived product node.
pub fn product_projections(prod: &Presheaf) -> Option<(PresheafMap, PresheafMap)> {
    match prod.data() {
        Data::Product(ps) if ps.len() == 2 => {
            let prod0 = prod.clone();
            let left = PresheafMap::pointwise(
                prod,
                &ps[0],
                Arc::new(move |d, i| match prod0.eval(d).key(i) {
                    ElemKey::Tup(t) => t[0],
                    _ => unreachable!(),
                }),
            );
            let prod1 = prod.clone();
            let right = PresheafMap::pointwise(
                prod,
                &ps[1],
                Arc::new(move |d, i| match prod1.eval(d).key(i) {
                    ElemKey::Tup(t) => t[1],
                    _ => unreachable!(),
                }),
            );
            Some((left, right))
        }
        _ => None,
    }
}

pub struct SpanResult {
    pub object: Presheaf,
    pub left: PresheafMap,
    pub right: PresheafMap,
}

/// Pullback of the cospan `left: P -> B <- Q : right`, with projections.
pub fn pullback(left: &PresheafMap, right: &PresheafMap) -> Result<SpanResult> {
    if left.target().site() != right.target().site() {
        return Err(Error::SiteMismatch);
    }
    let site = left.source().site().clone();
    let object = Presheaf::from_data(
        site,
        Data::Pullback { left: left.clone(), right: right.clone() },
    );
    let ob = object.clone();
    let src = left.source().clone();
    let proj_left = PresheafMap::pointwise(
        &object,
        &src,
        Arc::new(move |d, i| match ob.eval(d).key(i) {
            ElemKey::Pair(a, _) => *a,
            _ => unreachable!(),
        }),
    );
    let ob = object.clone();
    let src = right.source().clone();
    let proj_right = PresheafMap::pointwise(
        &object,
        &src,
        Arc::new(move |d, i| match ob.eval(d).key(i) {
            ElemKey::Pair(_, b) => *b,
            _ => unreachable!(),
        }),
    );
    Ok(SpanResult { object, left: proj_left, right: proj_right })
}

/// Pushout of the span `left: A -> B, right: A -> C`, with injections.
/// Presented inputs give a presented pushout; otherwise pointwise.
pub fn pushout(left: &PresheafMap, right: &PresheafMap) -> Result<SpanResult> {
    if left.source().site() != right.source().site() {
        return Err(Error::SiteMismatch);
    }
    let site = left.source().site().clone();
    let a = left.source();
    let b = left.target();
    let c = right.target();
    if let (Some(pa), Some(pb), Some(pc)) = (a.presentation(), b.presentation(), c.presentation())
    {
        let mut cells = pb.cells.clone();
        cells.extend(pc.cells.clone());
        let shift = pb.cells.len();
        let mut relations = pb.relations.clone();
        relations.extend(pc.relations.iter().map(|r| Relation {
            left: (r.left.0 + shift, r.left.1.clone()),
            right: (r.right.0 + shift, r.right.1.clone()),
        }));
        for (ci, cell) in pa.cells.iter().enumerate() {
            let own = a
                .eval(&cell.shape)
                .position(&ElemKey::Cls(ci, SiteMorphism::identity(&cell.shape)))
                .expect("cell element");
            let bkey = b.eval(&cell.shape).key(left.apply(&cell.shape, own)).clone();
            let ckey = c.eval(&cell.shape).key(right.apply(&cell.shape, own)).clone();
            let (bc, bu) = match bkey {
                ElemKey::Cls(cc, u) => (cc, u),
                _ => unreachable!("presented target"),
            };
            let (cc, cu) = match ckey {
                ElemKey::Cls(cc, u) => (cc, u),
                _ => unreachable!("presented target"),
            };
            relations.push(Relation { left: (bc, bu), right: (cc + shift, cu) });
        }
        let object =
            Presheaf::from_presentation(Presentation::new(site.clone(), cells, relations)?);
        let assign_b: Vec<usize> = pb
            .cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                object
                    .eval(&cell.shape)
                    .position(&ElemKey::Cls(i, SiteMorphism::identity(&cell.shape)))
                    .expect("injected cell")
            })
            .collect();
        let assign_c: Vec<usize> = pc
            .cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                object
                    .eval(&cell.shape)
                    .position(&ElemKey::Cls(i + shift, SiteMorphism::identity(&cell.shape)))
                    .expect("injected cell")
            })
            .collect();
        let in_b = PresheafMap::on_cells_unchecked(b, &object, assign_b);
        let in_c = PresheafMap::on_cells_unchecked(c, &object, assign_c);
        return Ok(SpanResult { object, left: in_b, right: in_c });
    }
    let object = Presheaf::from_data(
        site,
        Data::PushoutPw { left: left.clone(), right: right.clone() },
    );
    let ob = object.clone();
    let in_b = PresheafMap::pointwise(
        b,
        &object,
        Arc::new(move |d, i| ob.eval(d).position(&ElemKey::In(0, i)).expect("b injection")),
    );
    let ob = object.clone();
    let in_c = PresheafMap::pointwise(
        c,
        &object,
        Arc::new(move |d, j| ob.eval(d).position(&ElemKey::In(1, j)).expect("c injection")),
    );
    Ok(SpanResult { object, left: in_b, right: in_c })
}

/// Binary coproduct with injections.
pub fn coproduct(p: &Presheaf, q: &Presheaf) -> Result<SpanResult> {
    if p.site() != q.site() {
        return Err(Error::SiteMismatch);
    }
    let site = p.site().clone();
    if let (Some(pp), Some(pq)) = (p.presentation(), q.presentation()) {
        let mut cells = pp.cells.clone();
        cells.extend(pq.cells.clone());
        let shift = pp.cells.len();
        let mut relations = pp.relations.clone();
        relations.extend(pq.relations.iter().map(|r| Relation {
            left: (r.left.0 + shift, r.left.1.clone()),
            right: (r.right.0 + shift, r.right.1.clone()),
        }));
        let object =
            Presheaf::from_presentation(Presentation::new(site.clone(), cells, relations)?);
        let assign_p: Vec<usize> = pp
            .cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                object
                    .eval(&cell.shape)
                    .position(&ElemKey::Cls(i, SiteMorphism::identity(&cell.shape)))
                    .expect("cell")
            })
            .collect();
        let assign_q: Vec<usize> = pq
            .cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                object
                    .eval(&cell.shape)
                    .position(&ElemKey::Cls(i + shift, SiteMorphism::identity(&cell.shape)))
                    .expect("cell")
            })
            .collect();
        let in_p = PresheafMap::on_cells_unchecked(p, &object, assign_p);
        let in_q = PresheafMap::on_cells_unchecked(q, &object, assign_q);
        return Ok(SpanResult { object, left: in_p, right: in_q });
    }
    let object =
        Presheaf::from_data(site, Data::CoproductPw(vec![p.clone(), q.clone()]));
    let ob = object.clone();
    let in_p = PresheafMap::pointwise(
        p,
        &object,
        Arc::new(move |d, i| ob.eval(d).position(&ElemKey::In(0, i)).expect("injection")),
    );
    let ob = object.clone();
    let in_q = PresheafMap::pointwise(
        q,
        &object,
        Arc::new(move |d, i| ob.eval(d).position(&ElemKey::In(1, i)).expect("injection")),
    );
    Ok(SpanResult { object, left: in_p, right: in_q })
}

/// Union of the images of a family of maps into a common ambient presheaf,
/// with its inclusion.
pub fn union_image(ambient: &Presheaf, parts: Vec<PresheafMap>) -> PresheafMap {
    let object = Presheaf::from_data(
        ambient.site().clone(),
        Data::Union { ambient: ambient.clone(), parts },
    );
    let ob = object.clone();
    PresheafMap::pointwise(
        &object,
        ambient,
        Arc::new(move |d, i| match ob.eval(d).key(i) {
            ElemKey::Sub(a) => *a,
            _ => unreachable!(),
        }),
    )
}

/// Exhaustive enumeration of natural maps `P -> X` for presented `P`:
/// a choice of target element per cell, compatible with every relation,
/// found by backtracking in canonical order.
pub fn hom_set(p: &Presheaf, x: &Presheaf) -> Result<Vec<PresheafMap>> {
    if p.site() != x.site() {
        return Err(Error::SiteMismatch);
    }
    let pres = p.presentation().ok_or(Error::NotPresented)?;
    let ncells = pres.cells.len();
    let sizes: Vec<usize> = pres.cells.iter().map(|c| x.size_at(&c.shape)).collect();
    // relations indexed by the later of the two cells they constrain
    let mut by_last: Vec<Vec<&Relation>> = vec![Vec::new(); ncells];
    for r in &pres.relations {
        let last = r.left.0.max(r.right.0);
        by_last[last].push(r);
    }
    let mut out = Vec::new();
    let mut assign: Vec<usize> = Vec::with_capacity(ncells);
    backtrack(&mut assign, &sizes, &by_last, x, &mut out);
    Ok(out
        .into_iter()
        .map(|cells| PresheafMap::on_cells_unchecked(p, x, cells))
        .collect())
}

fn backtrack(
    assign: &mut Vec<usize>,
    sizes: &[usize],
    by_last: &[Vec<&Relation>],
    x: &Presheaf,
    out: &mut Vec<Vec<usize>>,
) {
    let pos = assign.len();
    if pos == sizes.len() {
        out.push(assign.clone());
        return;
    }
    'candidate: for v in 0..sizes[pos] {
        assign.push(v);
        for r in &by_last[pos] {
            let l = x.act(&r.left.1, assign[r.left.0]);
            let rr = x.act(&r.right.1, assign[r.right.0]);
            if l != rr {
                assign.pop();
                continue 'candidate;
            }
        }
        backtrack(assign, sizes, by_last, x, out);
        assign.pop();
    }
}

/// Count of `hom_set` without materializing the maps.
pub fn hom_count(p: &Presheaf, x: &Presheaf) -> Result<usize> {
    Ok(hom_set(p, x)?.len())
}

/// Action tables of one hom-set: each morphism with its index table.
pub type ActionTables = Vec<(SiteMorphism, Vec<usize>)>;

/// Explicit value and action tables over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tabulated {
    pub sizes: BTreeMap<SiteObject, usize>,
    pub action: BTreeMap<(SiteObject, SiteObject), ActionTables>,
}

/// Tabulates values and all actions between window objects.
pub fn tabulate(p: &Presheaf, w: &Window) -> Result<Tabulated> {
    w.check_closed()?;
    let mut sizes = BTreeMap::new();
    for d in w.objects() {
        sizes.insert(d.clone(), p.size_at(d));
    }
    let mut action = BTreeMap::new();
    for d in w.objects() {
        for e in w.objects() {
            let homs = SiteMorphism::hom(d, e);
            if homs.is_empty() {
                continue;
            }
            let tables: Vec<(SiteMorphism, Vec<usize>)> = homs
                .iter()
                .map(|g| (g.clone(), (0..p.size_at(e)).map(|i| p.act(g, i)).collect()))
                .collect();
            action.insert((d.clone(), e.clone()), tables);
        }
    }
    Ok(Tabulated { sizes, action })
}

impl Tabulated {
    /// Functoriality of the tables: `act(g . f) = act(f) . act(g)` for all
    /// composable pairs inside the window.
    pub fn verify_functorial(&self) -> bool {
        for ((d, e), tables) in &self.action {
            for (f, tf) in tables {
                for ((dd, ee), tables2) in &self.action {
                    if dd != e {
                        continue;
                    }
                    for (g, tg) in tables2 {
                        let composed = g.compose(f).expect("window morphisms compose");
                        let Some(chain) = self.action.get(&(d.clone(), ee.clone())) else {
                            return false;
                        };
                        let Some((_, tc)) = chain.iter().find(|(m, _)| *m == composed) else {
                            return false;
                        };
                        for (i, &gi) in tg.iter().enumerate() {
                            if tf[gi] != tc[i] {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// The root of an element: its unique nondegenerate ancestor, with the
/// accumulated degeneracy operator from `d` onto the root object.
pub fn element_root(
    p: &Presheaf,
    d: &SiteObject,
    idx: usize,
) -> (SiteObject, usize, SiteMorphism) {
    for s in SiteMorphism::elementary_codegeneracies(d) {
        let below = s.target();
        for j in 0..p.size_at(&below) {
            if p.act(&s, j) == idx {
                let (obj, root, epi) = element_root(p, &below, j);
                let total = epi.compose(&s).expect("degeneracies compose");
                return (obj, root, total);
            }
        }
    }
    (d.clone(), idx, SiteMorphism::identity(d))
}

/// Canonical window presentation: one cell per nondegenerate element over
/// the window, and one face-normalization relation per cell and proper mono
/// into its shape, identifying the restricted element with its root. These
/// relations generate every coincidence because root decompositions along
/// split epis are unique. Exact on the window whenever the presheaf is
/// generated there.
pub fn present_on_window(p: &Presheaf, w: &Window) -> Result<Presheaf> {
    w.check_closed()?;
    let mut cells: Vec<(SiteObject, usize)> = Vec::new();
    let mut cell_index: BTreeMap<(SiteObject, usize), usize> = BTreeMap::new();
    for d in w.objects() {
        let n = p.size_at(d);
        let mut degenerate = vec![false; n];
        for s in SiteMorphism::elementary_codegeneracies(d) {
            let below = s.target();
            for j in 0..p.size_at(&below) {
                degenerate[p.act(&s, j)] = true;
            }
        }
        for (i, deg) in degenerate.iter().enumerate() {
            if !deg {
                cell_index.insert((d.clone(), i), cells.len());
                cells.push((d.clone(), i));
            }
        }
    }
    let cell_list: Vec<Cell> = cells.iter().map(|(d, _)| Cell { shape: d.clone() }).collect();
    let mut relations = Vec::new();
    for (ci, (e, xi)) in cells.iter().enumerate() {
        for mu in SiteMorphism::monos_into(w.site(), e) {
            if mu.source() == *e {
                continue;
            }
            let restricted = p.act(&mu, *xi);
            let (robj, ridx, epi) = element_root(p, &mu.source(), restricted);
            let root_cell = *cell_index
                .get(&(robj.clone(), ridx))
                .expect("root of a window element is a window cell");
            relations.push(Relation { left: (ci, mu), right: (root_cell, epi) });
        }
    }
    Ok(Presheaf::from_presentation(Presentation::new(
        w.site().clone(),
        cell_list,
        relations,
    )?))
}

/// The comparison map from a window presentation back to the original.
pub fn window_presentation_map(p: &Presheaf, w: &Window) -> Result<PresheafMap> {
    let presented = present_on_window(p, w)?;
    let pres = presented.presentation().expect("just presented");
    // reconstruct which element each cell came from
    let mut assignment = Vec::with_capacity(pres.cells.len());
    let mut cursor: BTreeMap<SiteObject, usize> = BTreeMap::new();
    for d in w.objects() {
        let n = p.size_at(d);
        let mut degenerate = vec![false; n];
        for s in SiteMorphism::elementary_codegeneracies(d) {
            let below = s.target();
            for j in 0..p.size_at(&below) {
                degenerate[p.act(&s, j)] = true;
            }
        }
        for (i, deg) in degenerate.iter().enumerate() {
            if !deg {
                assignment.push(i);
            }
        }
        cursor.insert(d.clone(), n);
    }
    Ok(PresheafMap::on_cells_unchecked(&presented, p, assignment))
}

/// True when every component of `f` over the window is injective.
pub fn is_mono_map(f: &PresheafMap, w: &Window) -> bool {
    f.is_mono_on(w)
}

/// Enumerates all objects of a site that are a `[1](c)` edge in one factor
/// and terminal elsewhere, up to the degree bound on `c`.
pub fn edge_objects(site: &Site, max_inner_degree: usize) -> Vec<SiteObject> {
    let top = site.terminal();
    let mut out = Vec::new();
    for (k, &lvl) in site.factors().iter().enumerate() {
        if lvl == 0 {
            continue;
        }
        for c in ThetaObject::enumerate(lvl - 1, max_inner_degree) {
            out.push(top.with_factor(k, ThetaObject::new(lvl, vec![c]).expect("edge")));
        }
    }
    out
}
