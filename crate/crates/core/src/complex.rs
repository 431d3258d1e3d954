//! Corner and total loci as unions of arrangement cells, with facets, faces,
//! components and intersections. Full support for arity 1 and 2.
//!
//! Geometry lives on tangible points: a carrier records the magnitudes `ĥ𝐚`
//! of its points.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Coords, Hyperplane, Shape, Sign};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::semiring::SupertropicalValue;

/// A union of cells of one arrangement.
#[derive(Debug, Clone)]
pub struct CellSet {
    arrangement: Arc<Arrangement>,
    cells: BTreeSet<usize>,
}

impl CellSet {
    pub fn new(arrangement: Arc<Arrangement>, cells: BTreeSet<usize>) -> Self {
        Self { arrangement, cells }
    }

    /// Cells whose sample point satisfies `pred`.
    pub fn from_predicate(arrangement: Arc<Arrangement>, mut pred: impl FnMut(&[Rational]) -> bool) -> Self {
        let cells = arrangement.cells().iter().enumerate().filter(|(_, c)| pred(&c.sample)).map(|(i, _)| i).collect();
        Self { arrangement, cells }
    }

    pub fn whole(arrangement: Arc<Arrangement>) -> Self {
        let cells = (0..arrangement.len()).collect();
        Self { arrangement, cells }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arrangement
    }

    pub fn arity(&self) -> usize {
        self.arrangement.arity()
    }

    pub fn cells(&self) -> &BTreeSet<usize> {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest cell dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|&c| self.arrangement.cell(c).dim).max()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.arrangement.try_locate(x).is_some_and(|c| self.cells.contains(&c))
    }

    /// Re-expresses the set over a finer arrangement (whose hyperplanes include ours).
    pub fn refine(&self, target: &Arc<Arrangement>) -> CellSet {
        let same_full = !target.is_partial()
            && !self.arrangement.is_partial()
            && target.hyperplanes() == self.arrangement.hyperplanes();
        if Arc::ptr_eq(target, &self.arrangement) || same_full {
            return CellSet { arrangement: target.clone(), cells: self.cells.clone() };
        }
        CellSet::from_predicate(target.clone(), |x| self.contains(x))
    }

    /// The arrangement of all hyperplanes of both sets plus `extra`.
    pub fn common_arrangement(sets: &[&CellSet], extra: Vec<Hyperplane>) -> Result<Arc<Arrangement>> {
        let arity = sets.first().map(|s| s.arity()).ok_or_else(|| Error::Precondition("no sets".into()))?;
        for s in sets {
            if s.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: s.arity() });
            }
        }
        let reusable = |s: &&CellSet| !s.arrangement.is_partial() && s.arrangement.hyperplanes() == sets[0].arrangement.hyperplanes();
        if extra.is_empty() && sets.iter().all(reusable) {
            return Ok(sets[0].arrangement.clone());
        }
        let hs = sets.iter().flat_map(|s| s.arrangement.hyperplanes().iter().cloned()).chain(extra);
        Ok(Arc::new(Arrangement::new(arity, hs)?))
    }

    /// Refines by extra hyperplanes.
    pub fn refine_with(&self, extra: Vec<Hyperplane>) -> Result<CellSet> {
        if extra.iter().all(|h| self.arrangement.hyperplanes().contains(h)) {
            return Ok(self.clone());
        }
        let arr = Arc::new(self.arrangement.subdivide(&self.cells, extra)?);
        Ok(self.refine(&arr))
    }

    fn combine(&self, other: &CellSet, op: impl Fn(bool, bool) -> bool) -> Result<CellSet> {
        let arr = Self::common_arrangement(&[self, other], Vec::new())?;
        let a = self.refine(&arr);
        let b = other.refine(&arr);
        let cells = (0..arr.len()).filter(|c| op(a.cells.contains(c), b.cells.contains(c))).collect();
        Ok(CellSet { arrangement: arr, cells })
    }

    pub fn intersection(&self, other: &CellSet) -> Result<CellSet> {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &CellSet) -> Result<CellSet> {
        self.combine(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &CellSet) -> Result<CellSet> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> CellSet {
        if self.arrangement.is_partial() {
            let full = Arc::new(Arrangement::new(self.arity(), self.arrangement.hyperplanes().iter().cloned()).expect("same arity"));
            return self.refine(&full).complement();
        }
        let cells = (0..self.arrangement.len()).filter(|c| !self.cells.contains(c)).collect();
        CellSet { arrangement: self.arrangement.clone(), cells }
    }

    /// Topological closure.
    pub fn closure(&self) -> CellSet {
        let arr = &self.arrangement;
        let cells = (0..arr.len()).filter(|&c| self.cells.iter().any(|&d| arr.is_face_of(c, d))).collect();
        CellSet { arrangement: arr.clone(), cells }
    }

    /// Point-set inclusion.
    pub fn is_subset(&self, other: &CellSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Point-set equality, independent of the underlying arrangements.
    pub fn same_points(&self, other: &CellSet) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// Cells not in the closure of any other member cell.
    pub fn maximal_cells(&self) -> Vec<usize> {
        let arr = &self.arrangement;
        self.cells
            .iter()
            .copied()
            .filter(|&c| !self.cells.iter().any(|&d| d != c && arr.is_face_of(c, d)))
            .collect()
    }

    /// Sample points of the 0-cells in the set.
    pub fn vertices(&self) -> Vec<Coords> {
        self.cells
            .iter()
            .filter(|&&c| self.arrangement.cell(c).dim == 0)
            .map(|&c| self.arrangement.cell(c).sample.clone())
            .collect()
    }

    /// Merges maximal cells into connected facets. Maximal cells join the same
    /// facet when their keys agree and they share a face inside the set.
    fn group_facets<K: Ord + Clone>(&self, key: impl Fn(usize) -> K) -> Vec<Facet> {
        let arr = &self.arrangement;
        let maximal = self.maximal_cells();
        let mut parent: Vec<usize> = (0..maximal.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        let keys: Vec<K> = maximal.iter().map(|&c| key(c)).collect();
        for i in 0..maximal.len() {
            for j in i + 1..maximal.len() {
                if keys[i] != keys[j] || arr.cell(maximal[i]).dim != arr.cell(maximal[j]).dim {
                    continue;
                }
                let shared = self.cells.iter().any(|&e| arr.is_face_of(e, maximal[i]) && arr.is_face_of(e, maximal[j]));
                if shared {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (i, &m) in maximal.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert(m);
        }
        let mut facets: Vec<Facet> = groups
            .into_values()
            .map(|members| {
                let dim = arr.cell(*members.iter().next().expect("nonempty")).dim;
                let closed = CellSet { arrangement: arr.clone(), cells: members }.closure();
                let cells = closed.cells.intersection(&self.cells).copied().collect();
                Facet { dim, cells: CellSet { arrangement: arr.clone(), cells } }
            })
            .collect();
        facets.sort_by_key(|f| (f.dim, f.cells.first_sample()));
        facets
    }

    fn first_sample(&self) -> Option<Coords> {
        self.cells.iter().map(|&c| self.arrangement.cell(c).sample.clone()).min()
    }

    /// Geometric description with stable lexicographic ordering.
    pub fn geometry(&self) -> Geometry {
        let arr = &self.arrangement;
        let mut vertices: BTreeSet<Coords> = BTreeSet::new();
        for &c in &self.cells {
            for v in arr.closure_vertices(c) {
                vertices.insert(arr.cell(v).sample.clone());
            }
        }
        let vertices: Vec<Coords> = vertices.into_iter().collect();
        let vid = |p: &Coords| vertices.binary_search(p).expect("closure vertex");
        let mut points = Vec::new();
        let mut edges = Vec::new();
        let mut regions = Vec::new();
        for &c in &self.cells {
            let cell = arr.cell(c);
            match (&cell.shape, cell.dim) {
                (Shape::Vertex(p), _) => points.push(vid(p)),
                (Shape::Segment(a, b), _) => edges.push((EdgeGeometry::Segment(vid(a), vid(b)), c)),
                (Shape::Ray { origin, direction }, _) => {
                    edges.push((EdgeGeometry::Ray { from: vid(origin), direction: direction.clone() }, c))
                }
                (Shape::Line { point, direction }, _) => {
                    edges.push((EdgeGeometry::Line { point: point.clone(), direction: direction.clone() }, c))
                }
                (Shape::Region, _) => {
                    let mut vs: Vec<usize> = arr.closure_vertices(c).iter().map(|&v| vid(&arr.cell(v).sample)).collect();
                    vs.sort();
                    let halfspaces = arr
                        .closure_halfspaces(c)
                        .into_iter()
                        .filter(|(_, s)| *s != Sign::Zero)
                        .collect();
                    regions.push(RegionGeometry { cell: c, vertices: vs, sample: cell.sample.clone(), halfspaces });
                }
            }
        }
        points.sort();
        edges.sort_by(|a, b| a.0.cmp(&b.0));
        regions.sort_by(|a, b| a.sample.cmp(&b.sample));
        Geometry { arity: self.arity(), vertices, points, edges, regions }
    }
}

/// Exported geometry of a cell set. Edges refer to `vertices` by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    pub arity: usize,
    pub vertices: Vec<Coords>,
    /// Indices of vertices that are themselves cells of the set.
    pub points: Vec<usize>,
    /// Edge geometry with the arrangement cell id.
    pub edges: Vec<(EdgeGeometry, usize)>,
    pub regions: Vec<RegionGeometry>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeGeometry {
    Segment(usize, usize),
    Ray { from: usize, direction: Coords },
    Line { point: Coords, direction: Coords },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionGeometry {
    pub cell: usize,
    pub vertices: Vec<usize>,
    pub sample: Coords,
    /// `(h, s)`: the closure satisfies `sign(h.residual(x)) ∈ {0, s}`.
    pub halfspaces: Vec<(Hyperplane, Sign)>,
}

/// A maximal connected piece of an algebraic set on which the dominant
/// monomials of every defining polynomial are constant.
#[derive(Debug, Clone)]
pub struct Facet {
    pub dim: usize,
    pub cells: CellSet,
}

/// How an algebraic set was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocusKind {
    /// `Z_corn` of the defining polynomials.
    Corner,
    /// `Z` (ghost values of the polynomials themselves).
    Total,
    /// Coincidence locus of the pairs in `pairs`.
    Pair,
    /// The whole space `F^(n)`.
    Whole,
    /// Obtained by other set operations (erasing facets, unions).
    Derived,
}

/// An algebraic set: defining data plus its exact carrier.
#[derive(Debug, Clone)]
pub struct AlgebraicSet {
    pub carrier: CellSet,
    pub defining: Vec<Polynomial>,
    pub pairs: Vec<(Polynomial, Polynomial)>,
    pub kind: LocusKind,
}

/// Closed dominance region `D_{f,i}` of one term.
#[derive(Debug, Clone)]
pub struct Component {
    pub term: usize,
    pub region: CellSet,
    /// The term has a tangible coefficient.
    pub tangible: bool,
}

fn require_exact(arity: usize) -> Result<()> {
    if (1..=2).contains(&arity) {
        Ok(())
    } else {
        Err(Error::UnsupportedArity(arity))
    }
}

/// Points whose lift is a corner root: the lifted maximum is attained at least twice.
pub fn corner_locus(f: &Polynomial) -> Result<AlgebraicSet> {
    require_exact(f.arity())?;
    let arr = Arc::new(f.dominance_arrangement()?);
    let carrier = CellSet::from_predicate(arr, |x| f.dominant_terms(x).len() >= 2);
    Ok(AlgebraicSet { carrier, defining: vec![f.clone()], pairs: Vec::new(), kind: LocusKind::Corner })
}

/// Tangible points at which `f` itself is ghost.
pub fn total_locus(f: &Polynomial) -> Result<AlgebraicSet> {
    require_exact(f.arity())?;
    let arr = Arc::new(f.dominance_arrangement()?);
    let carrier = CellSet::from_predicate(arr, |x| f.eval_tangible(x).expect("arity checked").is_ghost());
    Ok(AlgebraicSet { carrier, defining: vec![f.clone()], pairs: Vec::new(), kind: LocusKind::Total })
}

pub fn components(f: &Polynomial) -> Result<Vec<Component>> {
    require_exact(f.arity())?;
    let arr = Arc::new(f.dominance_arrangement()?);
    Ok((0..f.len())
        .map(|i| Component {
            term: i,
            region: CellSet::from_predicate(arr.clone(), |x| f.dominant_terms(x).contains(&i)),
            tangible: f.term(i).coefficient.is_tangible(),
        })
        .collect())
}

/// `D_corn(f)`: the complement of the corner locus.
pub fn principal_open(f: &Polynomial) -> Result<CellSet> {
    Ok(corner_locus(f)?.carrier.complement())
}

/// Points where the lifted values of `f` and `g` coincide and are ghost.
pub fn corner_locus_pair(f: &Polynomial, g: &Polynomial) -> Result<AlgebraicSet> {
    require_exact(f.arity())?;
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: g.arity() });
    }
    let hs = f.tie_hyperplanes().into_iter().chain(g.tie_hyperplanes()).chain(f.cross_hyperplanes(g));
    let arr = Arc::new(Arrangement::new(f.arity(), hs)?);
    let carrier = CellSet::from_predicate(arr, |x| {
        f.max_magnitude(x) == g.max_magnitude(x) && f.dominant_terms(x).len() >= 2 && g.dominant_terms(x).len() >= 2
    });
    Ok(AlgebraicSet { carrier, defining: Vec::new(), pairs: vec![(f.clone(), g.clone())], kind: LocusKind::Pair })
}

/// Points where `f` and `g` agree and are ghost (no lifting).
pub fn total_locus_pair(f: &Polynomial, g: &Polynomial) -> Result<AlgebraicSet> {
    require_exact(f.arity())?;
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: g.arity() });
    }
    let hs = f.tie_hyperplanes().into_iter().chain(g.tie_hyperplanes()).chain(f.cross_hyperplanes(g));
    let arr = Arc::new(Arrangement::new(f.arity(), hs)?);
    let carrier = CellSet::from_predicate(arr, |x| {
        let (a, b) = (f.eval_tangible(x).expect("arity"), g.eval_tangible(x).expect("arity"));
        a == b && a.is_ghost()
    });
    Ok(AlgebraicSet { carrier, defining: Vec::new(), pairs: vec![(f.clone(), g.clone())], kind: LocusKind::Pair })
}

impl AlgebraicSet {
    /// `F^(n)` itself.
    pub fn whole(arity: usize) -> Result<Self> {
        require_exact(arity)?;
        let arr = Arc::new(Arrangement::new(arity, [])?);
        Ok(Self { carrier: CellSet::whole(arr), defining: Vec::new(), pairs: Vec::new(), kind: LocusKind::Whole })
    }

    /// Corner algebraic set of `{λ_k + a_k}`: the ν-fiber of a point.
    pub fn fiber(point: &[Rational]) -> Result<Self> {
        let n = point.len();
        require_exact(n)?;
        let mut set: Option<AlgebraicSet> = None;
        for (k, a) in point.iter().enumerate() {
            let f = Polynomial::variable(k, n).plus(&Polynomial::constant(SupertropicalValue::tangible(*a), n))?;
            let z = corner_locus(&f)?;
            set = Some(match set {
                None => z,
                Some(s) => intersect(&s, &z)?,
            });
        }
        Ok(set.expect("arity ≥ 1"))
    }

    /// Corner algebraic set of several polynomials.
    pub fn corner_of(polys: &[Polynomial]) -> Result<Self> {
        let mut it = polys.iter();
        let first = it.next().ok_or_else(|| Error::Precondition("need at least one polynomial".into()))?;
        let mut set = corner_locus(first)?;
        for f in it {
            set = intersect(&set, &corner_locus(f)?)?;
        }
        Ok(set)
    }

    pub fn arity(&self) -> usize {
        self.carrier.arity()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.carrier.contains(x)
    }

    /// A hypersurface `Z_corn(f)` of a tangible polynomial, if that is how the set was built.
    pub fn tangible_hypersurface(&self) -> Option<&Polynomial> {
        match (&self.kind, self.defining.as_slice()) {
            (LocusKind::Corner, [f]) if f.is_tangible_polynomial().unwrap_or(false) => Some(f),
            _ => None,
        }
    }

    /// Dominant terms of each defining polynomial on every cell of the carrier,
    /// keyed by polynomial index then cell id.
    pub fn annotations(&self) -> Vec<BTreeMap<usize, Vec<usize>>> {
        let arr = self.carrier.arrangement();
        self.defining
            .iter()
            .map(|f| self.carrier.cells().iter().map(|&c| (c, f.dominant_terms(&arr.cell(c).sample))).collect())
            .collect()
    }

    fn dominance_key(&self, c: usize) -> (Option<Hyperplane>, Vec<Vec<usize>>) {
        let arr = self.carrier.arrangement();
        let cell = arr.cell(c);
        let hull = (cell.dim == 1 && arr.arity() == 2)
            .then(|| arr.hyperplanes().iter().zip(&cell.signs).find(|(_, s)| **s == Sign::Zero).map(|(h, _)| h.clone()))
            .flatten();
        let dom = self.defining.iter().map(|f| f.dominant_terms(&cell.sample)).collect();
        (hull, dom)
    }

    /// Facets: maximal connected pieces along which every defining polynomial
    /// keeps the same dominant monomials.
    pub fn facets(&self) -> Vec<Facet> {
        self.carrier.group_facets(|c| self.dominance_key(c))
    }

    /// Facets that additionally keep `extra` constant.
    pub fn facets_by<K: Ord + Clone>(&self, extra: impl Fn(usize) -> K) -> Vec<Facet> {
        self.carrier.group_facets(|c| (self.dominance_key(c), extra(c)))
    }

    /// Geometric vertices: 0-dimensional facets, points shared by two or more
    /// facets, and free endpoints of 1-dimensional facets.
    pub fn vertices(&self) -> Vec<Coords> {
        let arr = self.carrier.arrangement();
        let facets = self.facets();
        let mut out = Vec::new();
        for &v in self.carrier.cells() {
            if arr.cell(v).dim != 0 {
                continue;
            }
            let owners: Vec<&Facet> = facets.iter().filter(|f| f.cells.cells().contains(&v)).collect();
            let endpoint = |f: &Facet| {
                f.dim == 1 && f.cells.cells().iter().filter(|&&c| c != v && arr.is_face_of(v, c)).count() == 1
            };
            if owners.len() != 1 || owners[0].dim == 0 || endpoint(owners[0]) {
                out.push(arr.cell(v).sample.clone());
            }
        }
        out
    }

    /// Nonempty intersections of two or more distinct facets.
    pub fn faces(&self) -> Vec<CellSet> {
        let facets = self.facets();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..facets.len() {
            for j in i + 1..facets.len() {
                let common: BTreeSet<usize> = facets[i].cells.cells().intersection(facets[j].cells.cells()).copied().collect();
                if !common.is_empty() && seen.insert(common.clone()) {
                    out.push(CellSet::new(self.carrier.arrangement().clone(), common));
                }
            }
        }
        out
    }

    /// Removes the cells matching `erase` and takes the closure of what remains
    /// (intersected with the original set).
    pub fn erase_where(&self, erase: impl Fn(&[Rational]) -> bool) -> AlgebraicSet {
        let arr = self.carrier.arrangement();
        let kept: BTreeSet<usize> = self.carrier.cells().iter().copied().filter(|&c| !erase(&arr.cell(c).sample)).collect();
        let closed = CellSet::new(arr.clone(), kept).closure();
        let cells = closed.cells().intersection(self.carrier.cells()).copied().collect();
        AlgebraicSet {
            carrier: CellSet::new(arr.clone(), cells),
            defining: self.defining.clone(),
            pairs: self.pairs.clone(),
            kind: LocusKind::Derived,
        }
    }

    /// Erases the facet where terms `i` and `j` of defining polynomial `poly`
    /// are the only dominant ones, then closes up.
    pub fn erase_binomial_facet(&self, poly: usize, i: usize, j: usize) -> Result<AlgebraicSet> {
        let f = self.defining.get(poly).ok_or_else(|| Error::Precondition("no such defining polynomial".into()))?.clone();
        let (a, b) = (i.min(j), i.max(j));
        Ok(self.erase_where(|x| f.dominant_terms(x) == [a, b]))
    }

    pub fn union(&self, other: &AlgebraicSet) -> Result<AlgebraicSet> {
        Ok(AlgebraicSet {
            carrier: self.carrier.union(&other.carrier)?,
            defining: Vec::new(),
            pairs: Vec::new(),
            kind: LocusKind::Derived,
        })
    }

    /// The set restricted to `F^(n)`-tangible points. Carriers already consist of
    /// tangible points, so this is the identity on the carrier.
    pub fn tangible_part(&self) -> AlgebraicSet {
        self.clone()
    }

    /// Whether `a` (possibly with ghost coordinates) lies in the ν-saturation of the carrier.
    pub fn contains_point(&self, a: &[SupertropicalValue]) -> bool {
        let x: Vec<Rational> = a.iter().map(|v| v.magnitude).collect();
        self.contains(&x)
    }
}

/// Exact intersection on the common refinement.
pub fn intersect(x: &AlgebraicSet, y: &AlgebraicSet) -> Result<AlgebraicSet> {
    let carrier = x.carrier.intersection(&y.carrier)?;
    let kind = match (&x.kind, &y.kind) {
        (LocusKind::Corner, LocusKind::Corner) => LocusKind::Corner,
        (LocusKind::Total, LocusKind::Total) => LocusKind::Total,
        (LocusKind::Whole, k) | (k, LocusKind::Whole) => k.clone(),
        _ => LocusKind::Derived,
    };
    let mut defining = x.defining.clone();
    defining.extend(y.defining.iter().cloned());
    let mut pairs = x.pairs.clone();
    pairs.extend(y.pairs.iter().cloned());
    Ok(AlgebraicSet { carrier, defining, pairs, kind })
}
