//! The cell categories Θ_n, built by iterating the wreath construction
//! over the simplex category.
//!
//! Objects are written `[m](c_1, ..., c_m)` where each `c_i` is an object one
//! level down; Θ_0 is the terminal category and Θ_1 is the simplex category Δ.
//! A morphism `[m](c) -> [q](d)` is a monotone map `delta: [m] -> [q]`
//! together with a block morphism `c_i -> d_j` for every pair with
//! `delta(i-1) < j <= delta(i)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// An object of Θ_n, stored as its tree of children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ThetaObject {
    level: u32,
    children: Vec<ThetaObject>,
}

impl ThetaObject {
    /// The unique object of Θ_0.
    pub fn point() -> Self {
        ThetaObject { level: 0, children: Vec::new() }
    }

    /// `[m](c_1, ..., c_m)` at the level one above the children.
    pub fn new(level: u32, children: Vec<ThetaObject>) -> Result<Self> {
        if level == 0 {
            if !children.is_empty() {
                return Err(Error::BadChildLevel { level });
            }
            return Ok(Self::point());
        }
        for c in &children {
            if c.level != level - 1 {
                return Err(Error::BadChildLevel { level });
            }
        }
        Ok(ThetaObject { level, children })
    }

    /// The object `[m]` of Θ_1 = Δ.
    pub fn simplex(m: usize) -> Self {
        ThetaObject { level: 1, children: vec![Self::point(); m] }
    }

    /// The terminal object `[0]` at a given level.
    pub fn terminal(level: u32) -> Self {
        ThetaObject { level, children: Vec::new() }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn children(&self) -> &[ThetaObject] {
        &self.children
    }

    /// Number of children, the `m` of `[m](c_1, ..., c_m)`.
    pub fn width(&self) -> usize {
        self.children.len()
    }

    /// Reedy degree: `m + sum(degree(c_i))`.
    pub fn degree(&self) -> usize {
        self.children.len() + self.children.iter().map(|c| c.degree()).sum::<usize>()
    }

    /// All objects of the given level with degree at most `max_degree`,
    /// in a fixed deterministic order.
    pub fn enumerate(level: u32, max_degree: usize) -> Vec<ThetaObject> {
        if level == 0 {
            return vec![Self::point()];
        }
        let lower: Vec<ThetaObject> = Self::enumerate(level - 1, max_degree);
        let mut out = Vec::new();
        // width m costs m plus the degrees of the children
        for m in 0..=max_degree {
            let mut stack: Vec<(Vec<ThetaObject>, usize)> = vec![(Vec::new(), max_degree - m)];
            while let Some((partial, budget)) = stack.pop() {
                if partial.len() == m {
                    out.push(ThetaObject { level, children: partial });
                    continue;
                }
                // children appended in reverse so the pop order is lexicographic
                for c in lower.iter().rev() {
                    if c.degree() <= budget {
                        let mut next = partial.clone();
                        let b = budget - c.degree();
                        next.push(c.clone());
                        stack.push((next, b));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for ThetaObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            return write!(f, "*");
        }
        write!(f, "[{}]", self.children.len())?;
        if self.children.iter().any(|c| c.degree() > 0) || self.level > 1 {
            write!(f, "(")?;
            for (k, c) in self.children.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A morphism of Θ_n.
///
/// `delta` has length `m + 1` (empty at level 0) and `blocks` holds the
/// `f_ij` in lexicographic `(i, j)` order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ThetaMorphism {
    delta: Vec<usize>,
    blocks: Vec<ThetaMorphism>,
    source: ThetaObject,
    target: ThetaObject,
}

/// Classification flags for a morphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MorphismClass {
    pub mono: bool,
    pub split_epi: bool,
    pub iso: bool,
}

impl MorphismClass {
    pub fn other(&self) -> bool {
        !self.mono && !self.split_epi
    }
}

/// Block index pairs `(i, j)` with `delta(i-1) < j <= delta(i)`, 1-based.
fn block_slots(delta: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for i in 1..delta.len() {
        for j in delta[i - 1] + 1..=delta[i] {
            slots.push((i, j));
        }
    }
    slots
}

/// All weakly monotone maps `[m] -> [q]` as value vectors of length `m + 1`.
fn monotone_maps(m: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(cur.clone());
        // increment like a monotone odometer
        let mut pos = m + 1;
        for k in (0..=m).rev() {
            if cur[k] < q {
                pos = k;
                break;
            }
        }
        if pos == m + 1 {
            break;
        }
        let v = cur[pos] + 1;
        for slot in cur.iter_mut().skip(pos) {
            *slot = v;
        }
    }
    out
}

impl ThetaMorphism {
    pub fn source(&self) -> &ThetaObject {
        &self.source
    }

    pub fn target(&self) -> &ThetaObject {
        &self.target
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn blocks(&self) -> &[ThetaMorphism] {
        &self.blocks
    }

    /// Builds a morphism from raw parts, checking the indexing condition.
    pub fn new(
        source: ThetaObject,
        target: ThetaObject,
        delta: Vec<usize>,
        blocks: Vec<ThetaMorphism>,
    ) -> Result<Self> {
        if source.level != target.level {
            return Err(Error::LevelMismatch { expected: source.level, got: target.level });
        }
        if source.level == 0 {
            if !delta.is_empty() || !blocks.is_empty() {
                return Err(Error::Malformed("level-0 morphism carries no data".into()));
            }
            return Ok(ThetaMorphism { delta, blocks, source, target });
        }
        let (m, q) = (source.width(), target.width());
        if delta.len() != m + 1 {
            return Err(Error::ArityMismatch { expected: m + 1, got: delta.len() });
        }
        if delta.windows(2).any(|w| w[0] > w[1]) || delta.last().is_some_and(|&v| v > q) {
            return Err(Error::Malformed("delta must be monotone into [q]".into()));
        }
        let slots = block_slots(&delta);
        if blocks.len() != slots.len() {
            return Err(Error::ArityMismatch { expected: slots.len(), got: blocks.len() });
        }
        for ((i, j), b) in slots.iter().zip(&blocks) {
            if b.source != source.children[i - 1] || b.target != target.children[j - 1] {
                return Err(Error::Malformed(format!("block ({i},{j}) has wrong endpoints")));
            }
        }
        Ok(ThetaMorphism { delta, blocks, source, target })
    }

    /// The block `f_ij`; `(i, j)` must satisfy the indexing condition.
    pub fn block(&self, i: usize, j: usize) -> &ThetaMorphism {
        let mut pos = 0;
        for ii in 1..i {
            pos += self.delta[ii] - self.delta[ii - 1];
        }
        pos += j - self.delta[i - 1] - 1;
        &self.blocks[pos]
    }

    /// A morphism of Θ_1 from its underlying monotone map; block slots are
    /// filled with the unique level-0 morphism.
    pub fn simplicial(m: usize, q: usize, delta: Vec<usize>) -> Result<Self> {
        let blocks = block_slots(&delta)
            .iter()
            .map(|_| Self::identity(&ThetaObject::point()))
            .collect();
        Self::new(ThetaObject::simplex(m), ThetaObject::simplex(q), delta, blocks)
    }

    pub fn identity(a: &ThetaObject) -> Self {
        if a.level == 0 {
            return ThetaMorphism {
                delta: Vec::new(),
                blocks: Vec::new(),
                source: a.clone(),
                target: a.clone(),
            };
        }
        let m = a.width();
        let delta: Vec<usize> = (0..=m).collect();
        let blocks = a.children.iter().map(Self::identity).collect();
        ThetaMorphism { delta, blocks, source: a.clone(), target: a.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == Self::identity(&self.source)
    }

    /// Composite `self . f` (apply `f` first).
    pub fn compose(&self, f: &ThetaMorphism) -> Result<ThetaMorphism> {
        if f.target != self.source {
            return Err(Error::ComposeMismatch);
        }
        if f.source.level == 0 {
            return Ok(ThetaMorphism {
                delta: Vec::new(),
                blocks: Vec::new(),
                source: f.source.clone(),
                target: self.target.clone(),
            });
        }
        let delta: Vec<usize> = f.delta.iter().map(|&t| self.delta[t]).collect();
        let mut blocks = Vec::new();
        for (i, k) in block_slots(&delta) {
            // the unique middle index j with delta_f(i-1) < j <= delta_f(i)
            // and delta_g(j-1) < k <= delta_g(j)
            let mut mid = None;
            for j in f.delta[i - 1] + 1..=f.delta[i] {
                if self.delta[j - 1] < k && k <= self.delta[j] {
                    mid = Some(j);
                    break;
                }
            }
            let j = mid.expect("interval partition yields a unique middle index");
            blocks.push(self.block(j, k).compose(f.block(i, j))?);
        }
        Ok(ThetaMorphism { delta, blocks, source: f.source.clone(), target: self.target.clone() })
    }

    /// Exhaustive hom-set, memoized, in canonical order.
    pub fn hom(a: &ThetaObject, b: &ThetaObject) -> Arc<Vec<ThetaMorphism>> {
        type HomCache = HashMap<(ThetaObject, ThetaObject), Arc<Vec<ThetaMorphism>>>;
        static CACHE: OnceLock<Mutex<HomCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&(a.clone(), b.clone())) {
            return hit.clone();
        }
        let computed = Arc::new(Self::hom_uncached(a, b));
        cache.lock().unwrap().insert((a.clone(), b.clone()), computed.clone());
        computed
    }

    fn hom_uncached(a: &ThetaObject, b: &ThetaObject) -> Vec<ThetaMorphism> {
        assert_eq!(a.level, b.level, "hom between different levels");
        if a.level == 0 {
            return vec![ThetaMorphism {
                delta: Vec::new(),
                blocks: Vec::new(),
                source: a.clone(),
                target: b.clone(),
            }];
        }
        let mut out = Vec::new();
        for delta in monotone_maps(a.width(), b.width()) {
            let slots = block_slots(&delta);
            let choices: Vec<Arc<Vec<ThetaMorphism>>> = slots
                .iter()
                .map(|&(i, j)| Self::hom(&a.children[i - 1], &b.children[j - 1]))
                .collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; slots.len()];
            loop {
                let blocks: Vec<ThetaMorphism> =
                    idx.iter().zip(&choices).map(|(&k, ch)| ch[k].clone()).collect();
                out.push(ThetaMorphism {
                    delta: delta.clone(),
                    blocks,
                    source: a.clone(),
                    target: b.clone(),
                });
                // advance the odometer over block choices
                let mut carry = true;
                for pos in (0..idx.len()).rev() {
                    if !carry {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < choices[pos].len() {
                        carry = false;
                    } else {
                        idx[pos] = 0;
                    }
                }
                if carry {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    /// Monomorphism test.
    ///
    /// A single morphism is mono when the singleton family is jointly monic:
    /// the `delta`s separate the vertices and, over each source position,
    /// the column of blocks is jointly monic one level down. Requiring each
    /// block to be mono on its own would be too strong: a block may collapse
    /// as long as another block over the same position separates.
    pub fn is_mono(&self) -> bool {
        jointly_monic(&self.source, &[self])
    }

    /// Split epimorphism test by exhaustive section search.
    pub fn is_split_epi(&self) -> bool {
        self.section().is_some()
    }

    /// The canonically first section, if one exists.
    pub fn section(&self) -> Option<ThetaMorphism> {
        let id = Self::identity(&self.target);
        Self::hom(&self.target, &self.source)
            .iter()
            .find(|s| self.compose(s).map(|c| c == id).unwrap_or(false))
            .cloned()
    }

    pub fn classify(&self) -> MorphismClass {
        let mono = self.is_mono();
        let split_epi = self.is_split_epi();
        MorphismClass { mono, split_epi, iso: mono && split_epi }
    }

    /// The elementary degree-lowering split epimorphisms out of `a`:
    /// one for each elementary codegeneracy of a child (acting in place) and
    /// one horizontal collapse for each position whose child has degree 0.
    pub fn elementary_codegeneracies(a: &ThetaObject) -> Vec<ThetaMorphism> {
        let mut out = Vec::new();
        if a.level == 0 {
            return out;
        }
        let m = a.width();
        for i in 1..=m {
            for inner in Self::elementary_codegeneracies(&a.children[i - 1]) {
                let mut children = a.children.clone();
                children[i - 1] = inner.target.clone();
                let target = ThetaObject { level: a.level, children };
                let blocks = (1..=m)
                    .map(|k| {
                        if k == i {
                            inner.clone()
                        } else {
                            Self::identity(&a.children[k - 1])
                        }
                    })
                    .collect();
                out.push(ThetaMorphism {
                    delta: (0..=m).collect(),
                    blocks,
                    source: a.clone(),
                    target,
                });
            }
        }
        for i in 1..=m {
            if a.children[i - 1].degree() != 0 {
                continue;
            }
            // collapse position i via the codegeneracy of [m] merging i-1 and i
            let mut children = a.children.clone();
            children.remove(i - 1);
            let target = ThetaObject { level: a.level, children };
            let delta: Vec<usize> =
                (0..=m).map(|t| if t < i { t } else { t - 1 }).collect();
            let blocks = block_slots(&delta)
                .into_iter()
                .map(|(k, _)| Self::identity(&a.children[k - 1]))
                .collect();
            out.push(ThetaMorphism { delta, blocks, source: a.clone(), target });
        }
        out
    }

    /// Factors `self` as `mono . split_epi` with the split epi a composite of
    /// elementary codegeneracies. Returns `(epi, mono)`.
    pub fn factor_epi_mono(&self) -> (ThetaMorphism, ThetaMorphism) {
        let mut epi = Self::identity(&self.source);
        let mut rest = self.clone();
        'outer: loop {
            for s in Self::elementary_codegeneracies(&rest.source) {
                let sec = s.section().expect("elementary codegeneracies split");
                let probe = rest
                    .compose(&sec)
                    .and_then(|r| r.compose(&s))
                    .expect("endpoints line up");
                if probe == rest {
                    rest = rest.compose(&sec).expect("endpoints line up");
                    epi = s.compose(&epi).expect("endpoints line up");
                    continue 'outer;
                }
            }
            break;
        }
        debug_assert!(rest.is_mono(), "residue of codegeneracy stripping is mono");
        (epi, rest)
    }
}

/// A family of parallel morphisms out of `source` is jointly monic when
/// distinct maps into `source` are separated by postcomposition with some
/// member.
fn jointly_monic(source: &ThetaObject, family: &[&ThetaMorphism]) -> bool {
    if source.level() == 0 {
        return true;
    }
    let m = source.width();
    for v in 0..=m {
        for w in v + 1..=m {
            if !family.iter().any(|f| f.delta[v] != f.delta[w]) {
                return false;
            }
        }
    }
    for i in 1..=m {
        let mut column: Vec<&ThetaMorphism> = Vec::new();
        for f in family {
            for j in f.delta[i - 1] + 1..=f.delta[i] {
                column.push(f.block(i, j));
            }
        }
        if !jointly_monic(&source.children[i - 1], &column) {
            return false;
        }
    }
    true
}

impl fmt::Display for ThetaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.source.level() == 0 {
            return write!(f, "*");
        }
        write!(f, "d{:?}", self.delta)?;
        if !self.blocks.is_empty() {
            write!(f, "{{")?;
            for (k, b) in self.blocks.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{b}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn th(level: u32, text: &str) -> ThetaObject {
        crate::json::theta_object_from_str(level, text).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(ThetaObject::point().degree(), 0);
        assert_eq!(ThetaObject::simplex(2).degree(), 2);
        assert_eq!(th(2, "[[\"*\"],[]]").degree(), 3); // [2]([1],[0])
    }

    #[test]
    fn identity_of_simplex_two() {
        let id = ThetaMorphism::identity(&ThetaObject::simplex(2));
        assert_eq!(id.delta(), &[0, 1, 2]);
    }

    #[test]
    fn hom_counts_in_delta() {
        // |hom([m],[q])| = binomial(q+m+1, m+1)
        fn binom(n: usize, k: usize) -> usize {
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
        for m in 0..=4usize {
            for q in 0..=4usize {
                let got =
                    ThetaMorphism::hom(&ThetaObject::simplex(m), &ThetaObject::simplex(q)).len();
                assert_eq!(got, binom(q + m + 1, m + 1), "m={m} q={q}");
            }
        }
    }

    #[test]
    fn hom_count_theta2_one_one() {
        // [1]([1]) -> [1]([1]) has 3 + 1 + 1 = 5 morphisms
        let a = th(2, "[[\"*\"]]");
        assert_eq!(ThetaMorphism::hom(&a, &a).len(), 5);
    }

    #[test]
    fn constant_absorbs_in_delta() {
        let one = ThetaObject::simplex(1);
        let _ = &one;
        let f = ThetaMorphism::simplicial(1, 1, vec![0, 1]).unwrap();
        let g = ThetaMorphism::simplicial(1, 1, vec![0, 0]).unwrap();
        assert_eq!(g.compose(&f).unwrap().delta(), &[0, 0]);
    }

    #[test]
    fn classify_edge_skip_is_mono_not_split_epi() {
        let f = ThetaMorphism::simplicial(1, 2, vec![0, 2]).unwrap();
        let c = f.classify();
        assert!(c.mono && !c.split_epi && !c.iso);
    }

    #[test]
    fn horizontal_collapse_is_split_epi() {
        // [2]([1],[0]) -> [1]([1]) collapsing position 2, where c_2 = [0]
        let src = th(2, "[[\"*\"],[]]");
        let dst = th(2, "[[\"*\"]]");
        let collapse = ThetaMorphism::hom(&src, &dst)
            .iter()
            .find(|f| f.delta() == [0, 1, 1] && f.block(1, 1).is_identity())
            .cloned()
            .unwrap();
        assert!(collapse.classify().split_epi);
    }

    #[test]
    fn elementary_codegeneracies_of_simplex_two() {
        let list = ThetaMorphism::elementary_codegeneracies(&ThetaObject::simplex(2));
        assert_eq!(list.len(), 2);
        for s in &list {
            assert_eq!(s.target().degree(), 1);
            assert!(s.section().is_some());
        }
    }

    #[test]
    fn elementary_codegeneracies_theta2_mixed() {
        // [2]([1],[0]): one vertical collapse inside c_1, one horizontal at position 2
        let a = th(2, "[[\"*\"],[]]");
        let list = ThetaMorphism::elementary_codegeneracies(&a);
        assert_eq!(list.len(), 2);
        for s in &list {
            assert_eq!(s.target().degree(), a.degree() - 1);
            assert!(s.is_split_epi());
        }
        assert!(ThetaMorphism::elementary_codegeneracies(&ThetaObject::point()).is_empty());
    }

    #[test]
    fn factor_constant_edge() {
        // delta = (0,0): [1] -> [1] factors as s_0 then vertex 0
        let one = ThetaObject::simplex(1);
        let _ = &one;
        let f = ThetaMorphism::simplicial(1, 1, vec![0, 0]).unwrap();
        let (epi, mono) = f.factor_epi_mono();
        assert_eq!(epi.target(), &ThetaObject::simplex(0));
        assert_eq!(mono.delta(), &[0]);
        assert_eq!(mono.compose(&epi).unwrap(), f);
    }

    #[test]
    fn factor_mono_is_trivial() {
        let f = ThetaMorphism::simplicial(1, 3, vec![1, 3]).unwrap();
        let (epi, mono) = f.factor_epi_mono();
        assert!(epi.is_identity());
        assert_eq!(mono, f);
    }

    #[test]
    fn enumerate_counts() {
        // level-2 objects of degree exactly k number 2^(k-1) for k >= 1
        let all = ThetaObject::enumerate(2, 4);
        for k in 1..=4usize {
            let count = all.iter().filter(|o| o.degree() == k).count();
            assert_eq!(count, 1 << (k - 1), "degree {k}");
        }
        assert_eq!(all.iter().filter(|o| o.degree() == 0).count(), 1);
    }

    /// Mono classification agrees with injectivity of postcomposition
    /// against every probe object of bounded degree.
    #[test]
    fn mono_matches_yoneda_oracle() {
        let objects = ThetaObject::enumerate(2, 3);
        let mut checked = 0usize;
        for a in &objects {
            for b in &objects {
                for f in ThetaMorphism::hom(a, b).iter() {
                    let mut oracle = true;
                    'probe: for d in &objects {
                        let probes = ThetaMorphism::hom(d, a);
                        for x in probes.iter() {
                            for y in probes.iter() {
                                if x != y
                                    && f.compose(x).unwrap() == f.compose(y).unwrap()
                                {
                                    oracle = false;
                                    break 'probe;
                                }
                            }
                        }
                    }
                    assert_eq!(f.is_mono(), oracle, "{f} : {a} -> {b}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 500);
    }

    fn arb_theta2_pair() -> impl Strategy<Value = (ThetaObject, ThetaObject)> {
        let objs = ThetaObject::enumerate(2, 4);
        let n = objs.len();
        (0..n, 0..n).prop_map(move |(i, j)| (objs[i].clone(), objs[j].clone()))
    }

    proptest! {
        #[test]
        fn unit_laws((a, b) in arb_theta2_pair(), pick in 0usize..64) {
            let hom = ThetaMorphism::hom(&a, &b);
            prop_assume!(!hom.is_empty());
            let f = &hom[pick % hom.len()];
            prop_assert_eq!(f.compose(&ThetaMorphism::identity(&a)).unwrap(), f.clone());
            prop_assert_eq!(ThetaMorphism::identity(&b).compose(f).unwrap(), f.clone());
        }

        #[test]
        fn associativity((a, b) in arb_theta2_pair(), (c, d) in arb_theta2_pair(),
                         p1 in 0usize..64, p2 in 0usize..64, p3 in 0usize..64) {
            let fs = ThetaMorphism::hom(&a, &b);
            let gs = ThetaMorphism::hom(&b, &c);
            let hs = ThetaMorphism::hom(&c, &d);
            prop_assume!(!fs.is_empty() && !gs.is_empty() && !hs.is_empty());
            let f = &fs[p1 % fs.len()];
            let g = &gs[p2 % gs.len()];
            let h = &hs[p3 % hs.len()];
            let left = h.compose(&g.compose(f).unwrap()).unwrap();
            let right = h.compose(g).unwrap().compose(f).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn factorization_round_trips((a, b) in arb_theta2_pair(), pick in 0usize..64) {
            let hom = ThetaMorphism::hom(&a, &b);
            prop_assume!(!hom.is_empty());
            let f = &hom[pick % hom.len()];
            let (epi, mono) = f.factor_epi_mono();
            prop_assert_eq!(mono.compose(&epi).unwrap(), f.clone());
            prop_assert!(mono.is_mono());
            prop_assert!(epi.is_split_epi());
        }

        #[test]
        fn elementary_codegeneracies_drop_degree_by_one((a, _) in arb_theta2_pair()) {
            for s in ThetaMorphism::elementary_codegeneracies(&a) {
                prop_assert_eq!(s.target().degree() + 1, a.degree());
                prop_assert!(s.section().is_some());
            }
        }
    }
}
