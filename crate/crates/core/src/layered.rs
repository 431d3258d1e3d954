//! Layering maps, layered algebraic sets, and the ∨/∧/⪯ calculus.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::complex::{AlgebraicSet, CellSet, LocusKind};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::semiring::{Layer, LayeredValue, SupertropicalValue};

pub type LayeredPolynomial = Polynomial<LayeredValue>;

/// Tangible coefficients get layer 1, ghost coefficients layer 2.
pub fn to_layered(f: &Polynomial) -> LayeredPolynomial {
    f.map_coefficients(|c| {
        let layer = if c.is_ghost() { Layer::Finite(2) } else { Layer::ONE };
        LayeredValue::new(c.magnitude, layer)
    })
}

/// `φ_f(a)`: the sort of `f(a)`.
pub fn layering_of(f: &LayeredPolynomial, a: &[Rational]) -> Result<Layer> {
    Ok(f.eval_tangible(a)?.layer)
}

/// `φ_A(a) = min_{f ∈ A} φ_f(a)`.
pub fn layering_of_set(a_set: &[LayeredPolynomial], a: &[Rational]) -> Result<Layer> {
    let mut best: Option<Layer> = None;
    for f in a_set {
        let l = layering_of(f, a)?;
        best = Some(best.map_or(l, |b| b.min(l)));
    }
    best.ok_or_else(|| Error::Precondition("empty polynomial set".into()))
}

/// Cells with their layer, all layers exceeding 1.
#[derive(Debug, Clone)]
pub struct LayeredAlgebraicSet {
    arrangement: Arc<Arrangement>,
    layers: BTreeMap<usize, Layer>,
}

impl LayeredAlgebraicSet {
    /// Keeps only entries with layer > 1.
    pub fn new(arrangement: Arc<Arrangement>, layers: BTreeMap<usize, Layer>) -> Self {
        let layers = layers.into_iter().filter(|(_, l)| *l > Layer::ONE).collect();
        Self { arrangement, layers }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arrangement
    }

    pub fn arity(&self) -> usize {
        self.arrangement.arity()
    }

    pub fn layers(&self) -> &BTreeMap<usize, Layer> {
        &self.layers
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Layer at a point; `Layer::ONE` off the set.
    pub fn layer_at(&self, x: &[Rational]) -> Layer {
        self.layers.get(&self.arrangement.locate(x)).copied().unwrap_or(Layer::ONE)
    }

    /// The projection `X̲`.
    pub fn underlying(&self) -> CellSet {
        CellSet::new(self.arrangement.clone(), self.layers.keys().copied().collect())
    }

    /// Re-expresses the set on a finer arrangement.
    pub fn refine(&self, target: &Arc<Arrangement>) -> LayeredAlgebraicSet {
        let layers = (0..target.len()).map(|c| (c, self.layer_at(&target.cell(c).sample))).collect();
        LayeredAlgebraicSet::new(target.clone(), layers)
    }

    fn on_common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        if self.arrangement.hyperplanes() == other.arrangement.hyperplanes() {
            return Ok((self.clone(), other.refine(&self.arrangement)));
        }
        let hs: Vec<Hyperplane> =
            self.arrangement.hyperplanes().iter().chain(other.arrangement.hyperplanes()).cloned().collect();
        let arr = Arc::new(Arrangement::new(self.arity(), hs)?);
        Ok((self.refine(&arr), other.refine(&arr)))
    }

    fn cellwise(&self, other: &Self, op: impl Fn(Layer, Layer) -> Layer) -> Result<Self> {
        let (a, b) = self.on_common(other)?;
        let arr = a.arrangement.clone();
        let layers = (0..arr.len())
            .map(|c| {
                let la = a.layers.get(&c).copied().unwrap_or(Layer::ONE);
                let lb = b.layers.get(&c).copied().unwrap_or(Layer::ONE);
                (c, op(la, lb))
            })
            .collect();
        Ok(LayeredAlgebraicSet::new(arr, layers))
    }

    /// `X ∨ Y`: cellwise maximum.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.cellwise(other, Layer::max)
    }

    /// `X ∧ Y`: cellwise minimum.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.cellwise(other, Layer::min)
    }

    /// Same points with the same layers, regardless of arrangement.
    pub fn same_as(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.on_common(other)?;
        Ok(a.layers == b.layers)
    }

    /// `X ⪯ Y` iff `X ∧ Y = X`.
    pub fn preceq(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.on_common(other)?;
        Ok(a.layers.iter().all(|(c, l)| b.layers.get(c).is_some_and(|m| l <= m)))
    }

    /// Facets of the projection, each with the layer on its relative interior.
    pub fn facet_layers(&self) -> Vec<Layer> {
        let set = AlgebraicSet {
            carrier: self.underlying(),
            defining: Vec::new(),
            pairs: Vec::new(),
            kind: LocusKind::Derived,
        };
        let arr = &self.arrangement;
        let mut out = Vec::new();
        for facet in set.facets_by(|c| self.layers[&c]) {
            let top = facet.cells.cells().iter().copied().find(|&c| arr.cell(c).dim == facet.dim);
            out.push(self.layers[&top.expect("facet has a top cell")]);
        }
        out
    }
}

/// `X_A`: points where `φ_A > 1`.
pub fn layered_set(a_set: &[LayeredPolynomial]) -> Result<LayeredAlgebraicSet> {
    let first = a_set.first().ok_or_else(|| Error::Precondition("empty polynomial set".into()))?;
    let n = first.arity();
    if !(1..=2).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    let mut hs = Vec::new();
    for f in a_set {
        if f.arity() != n {
            return Err(Error::ArityMismatch { expected: n, found: f.arity() });
        }
        hs.extend(f.tie_hyperplanes());
    }
    let arr = Arc::new(Arrangement::new(n, hs)?);
    let mut layers = BTreeMap::new();
    for c in 0..arr.len() {
        layers.insert(c, layering_of_set(a_set, &arr.cell(c).sample)?);
    }
    Ok(LayeredAlgebraicSet::new(arr, layers))
}

/// Layered set of supertropical polynomials (coefficients via `to_layered`).
pub fn layered_set_of(a_set: &[Polynomial]) -> Result<LayeredAlgebraicSet> {
    let a: Vec<LayeredPolynomial> = a_set.iter().map(to_layered).collect();
    layered_set(&a)
}

/// The supertropical value obtained by collapsing layers.
pub fn supertropical_of_layered(v: &LayeredValue) -> SupertropicalValue {
    v.to_supertropical()
}

/// Result of checking a descending chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherianReport {
    /// Number of strict steps in the chain.
    pub steps: usize,
    /// Steps between nonempty members.
    pub nonempty_steps: usize,
    /// `Σ_facets (layer − 2) + #facets` of the first member; `None` if a layer is infinite.
    pub facet_bound: Option<u64>,
    /// `Σ_cells (layer − 1)` over the common refinement of the chain; `None` if a layer is infinite.
    pub cell_bound: Option<u64>,
}

impl NoetherianReport {
    pub fn within_bounds(&self) -> bool {
        let ok = |steps: usize, b: Option<u64>| b.is_none_or(|b| steps as u64 <= b);
        ok(self.nonempty_steps, self.facet_bound) && ok(self.steps, self.cell_bound)
    }
}

/// Checks that each member is strictly below its predecessor and reports the
/// step count against the chain-length bounds.
pub fn verify_noetherian(chain: &[LayeredAlgebraicSet]) -> Result<NoetherianReport> {
    let first = chain.first().ok_or_else(|| Error::InvalidChain("empty chain".into()))?;
    for (i, w) in chain.windows(2).enumerate() {
        if !w[1].preceq(&w[0])? {
            return Err(Error::InvalidChain(format!("member {} is not below member {}", i + 1, i)));
        }
        if w[1].same_as(&w[0])? {
            return Err(Error::InvalidChain(format!("members {} and {} coincide", i, i + 1)));
        }
    }
    let facet_bound = first.facet_layers().iter().try_fold(0u64, |acc, l| match l {
        Layer::Finite(k) => Some(acc + (k - 2) + 1),
        Layer::Infinite => None,
    });
    let mut hs: BTreeSet<Hyperplane> = BTreeSet::new();
    for x in chain {
        hs.extend(x.arrangement.hyperplanes().iter().cloned());
    }
    let arr = Arc::new(Arrangement::new(first.arity(), hs)?);
    let refined = first.refine(&arr);
    let cell_bound = refined.layers.values().try_fold(0u64, |acc, l| match l {
        Layer::Finite(k) => Some(acc + (k - 1)),
        Layer::Infinite => None,
    });
    let nonempty = chain.iter().filter(|x| !x.is_empty()).count();
    Ok(NoetherianReport { steps: chain.len() - 1, nonempty_steps: nonempty.saturating_sub(1), facet_bound, cell_bound })
}
