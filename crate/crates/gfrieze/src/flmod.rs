//! Finite-length functor modules restricted to a rigid base, as thin modules.
//!
//! For an object `c` and a rigid base (the indecomposables of `R` or `T`), the
//! module `Gc = C(-, Σc)|_base` has every graded piece of dimension 0 or 1, so
//! it is determined by its support together with the set of ordered pairs on
//! which the action is nonzero. A submodule of a thin module is exactly an
//! arrow-closed subset of the support, which makes every submodule
//! Grassmannian a finite discrete set: its Euler characteristic is a plain
//! count of closed subsets in a fixed class.
//!
//! Classes in the Grothendieck group of the finite-length category are integer
//! vectors over the base, in the basis of the simple modules.

use crate::mesh::{MeshEngine, MeshError};
use crate::polygon::{ARMesh, Diagonal, PolygonError};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleError {
    /// The base of a functor module must be rigid.
    BaseNotRigid(Diagonal, Diagonal),
    Mesh(MeshError),
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleError::BaseNotRigid(x, y) => {
                write!(f, "base is not rigid: {x} and {y} cross")
            }
            ModuleError::Mesh(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ModuleError {}

impl From<MeshError> for ModuleError {
    fn from(e: MeshError) -> Self {
        ModuleError::Mesh(e)
    }
}

impl From<PolygonError> for ModuleError {
    fn from(e: PolygonError) -> Self {
        match e {
            PolygonError::CrossingPair(x, y) => ModuleError::BaseNotRigid(x, y),
            other => panic!("unexpected polygon error while building a module: {other}"),
        }
    }
}

/// A class in `K_0` of the finite-length module category over a fixed base,
/// written in the basis of simple modules.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlClass {
    coords: Vec<i64>,
}

impl FlClass {
    pub fn zero(n: usize) -> FlClass {
        FlClass { coords: vec![0; n] }
    }

    pub fn simple(n: usize, idx: usize) -> FlClass {
        let mut coords = vec![0; n];
        coords[idx] = 1;
        FlClass { coords }
    }

    pub fn from_coords(coords: Vec<i64>) -> FlClass {
        FlClass { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FlClass) -> FlClass {
        FlClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A thin module over an ordered base of diagonals: a support set and the
/// ordered pairs `(r, r')` on which the action carries the `r`-component
/// nontrivially into the `r'`-component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinModule {
    base: Arc<Vec<Diagonal>>,
    support: BTreeSet<usize>,
    arrows: BTreeSet<(usize, usize)>,
}

impl ThinModule {
    pub fn new(
        base: Arc<Vec<Diagonal>>,
        support: BTreeSet<usize>,
        arrows: BTreeSet<(usize, usize)>,
    ) -> ThinModule {
        debug_assert!(arrows.iter().all(|(a, b)| support.contains(a) && support.contains(b)));
        ThinModule { base, support, arrows }
    }

    pub fn zero(base: Arc<Vec<Diagonal>>) -> ThinModule {
        ThinModule { base, support: BTreeSet::new(), arrows: BTreeSet::new() }
    }

    pub fn base(&self) -> &Arc<Vec<Diagonal>> {
        &self.base
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn arrows(&self) -> &BTreeSet<(usize, usize)> {
        &self.arrows
    }

    pub fn support_diagonals(&self) -> Vec<Diagonal> {
        self.support.iter().map(|&k| self.base[k]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn dim_at(&self, idx: usize) -> u8 {
        u8::from(self.support.contains(&idx))
    }

    /// The class in `K_0(fl base)`: the sum of the simples over the support.
    pub fn class(&self) -> FlClass {
        let mut coords = vec![0; self.base.len()];
        for &k in &self.support {
            coords[k] = 1;
        }
        FlClass { coords }
    }

    /// Split into connected components of the underlying action graph.
    /// Two direct sums of thin modules are isomorphic exactly when their
    /// component multisets agree, which is how split exactness is decided.
    pub fn components(&self) -> Vec<ThinModule> {
        let mut remaining: BTreeSet<usize> = self.support.clone();
        let mut out = Vec::new();
        while let Some(&seed) = remaining.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![seed];
            while let Some(k) = stack.pop() {
                if !comp.insert(k) {
                    continue;
                }
                remaining.remove(&k);
                for &(a, b) in &self.arrows {
                    if a == k && !comp.contains(&b) {
                        stack.push(b);
                    }
                    if b == k && !comp.contains(&a) {
                        stack.push(a);
                    }
                }
            }
            let arrows = self
                .arrows
                .iter()
                .copied()
                .filter(|(a, _)| comp.contains(a))
                .collect();
            out.push(ThinModule { base: self.base.clone(), support: comp, arrows });
        }
        out
    }

    /// Debug JSON dump: `{"support": [...], "arrows": [[r, r'], ...]}`.
    pub fn debug_json(&self) -> String {
        let support: Vec<String> = self.support_diagonals().iter().map(|d| d.to_string()).collect();
        let arrows: Vec<[String; 2]> = self
            .arrows
            .iter()
            .map(|&(a, b)| [self.base[a].to_string(), self.base[b].to_string()])
            .collect();
        serde_json::json!({ "support": support, "arrows": arrows }).to_string()
    }
}

/// The shape of the image of an AR mesh under the functor `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshImageClass {
    /// `c` is neither in the base nor in its desuspension: a split short exact sequence.
    SplitSes,
    /// Same position, but the sequence does not split.
    NonSplitSes,
    /// `c = Σ^{-1} r`: the image is `0 -> rad P_r -> P_r`.
    ProjCase,
    /// `c = r` in the base: the image is `I_r -> corad I_r -> 0`.
    InjCase,
}

impl fmt::Display for MeshImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MeshImageClass::SplitSes => "SplitSES",
            MeshImageClass::NonSplitSes => "NonSplitSES",
            MeshImageClass::ProjCase => "ProjCase",
            MeshImageClass::InjCase => "InjCase",
        };
        write!(f, "{s}")
    }
}

/// The thin module `Gc = C(-, Σc)|_base`.
///
/// Support: the base objects crossing `c`. Action pairs `(r, r')`: those with
/// a nonzero morphism `r' -> r` whose composite with the basis morphism
/// `r -> Σc` is nonzero in the mesh category.
pub fn compute_g(
    engine: &MeshEngine,
    c: Diagonal,
    base: &Arc<Vec<Diagonal>>,
) -> Result<ThinModule, ModuleError> {
    let model = engine.model();
    model.validate_rigid(base)?;
    let sc = model.suspend(c);
    let support: BTreeSet<usize> = (0..base.len())
        .filter(|&k| model.crossing(base[k], c))
        .collect();
    let mut arrows = BTreeSet::new();
    for &r in &support {
        for &rp in &support {
            if r == rp || engine.hom_dim(base[rp], base[r]) == 0 {
                continue;
            }
            if engine.composite_nonzero(base[rp], base[r], sc)? {
                arrows.insert((r, rp));
            }
        }
    }
    Ok(ThinModule { base: base.clone(), support, arrows })
}

/// All submodules of a thin module: the arrow-closed subsets of its support.
/// Each subset is one point of one submodule Grassmannian.
pub fn closed_subsets(module: &ThinModule) -> Vec<BTreeSet<usize>> {
    let support: Vec<usize> = module.support.iter().copied().collect();
    let n = support.len();
    assert!(n < 64, "support too large to enumerate");
    let pos = |k: usize| support.iter().position(|&s| s == k).unwrap();
    // forced[p] = bitmask of positions required once p is in the subset
    let mut forced = vec![0u64; n];
    for &(a, b) in &module.arrows {
        forced[pos(a)] |= 1 << pos(b);
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let closed = (0..n).all(|p| mask & (1 << p) == 0 || forced[p] & !mask == 0);
        if closed {
            out.push(
                (0..n)
                    .filter(|&p| mask & (1 << p) != 0)
                    .map(|p| support[p])
                    .collect(),
            );
        }
    }
    out.sort_by_key(|s: &BTreeSet<usize>| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    out
}

/// The class of an arrow-closed subset: the sum of the simples it contains.
pub fn subset_class(module: &ThinModule, subset: &BTreeSet<usize>) -> FlClass {
    let mut coords = vec![0; module.base.len()];
    for &k in subset {
        coords[k] = 1;
    }
    FlClass { coords }
}

/// Euler characteristic of the Grassmannian of submodules in class `e`: the
/// number of closed subsets whose class equals `e`.
pub fn grassmannian_euler(module: &ThinModule, e: &FlClass) -> u64 {
    closed_subsets(module)
        .iter()
        .filter(|s| &subset_class(module, s) == e)
        .count() as u64
}

/// The `K_0(fl)` class of the whole module.
pub fn module_class(module: &ThinModule) -> FlClass {
    module.class()
}

/// A connected component up to isomorphism: its support and action pairs.
type ComponentKey = (BTreeSet<usize>, BTreeSet<(usize, usize)>);

fn component_keys(m: &ThinModule) -> Vec<ComponentKey> {
    m.components()
        .into_iter()
        .map(|c| (c.support, c.arrows))
        .collect()
}

/// Decide the shape of `G(mesh)` over the base: the projective and injective
/// boundary cases by membership, otherwise split versus non-split short exact
/// sequence by comparing `G(middles)` with `G(start) ⊕ G(end)` up to
/// isomorphism (equal multisets of connected components).
pub fn classify_mesh_image(
    engine: &MeshEngine,
    mesh: &ARMesh,
    base: &Arc<Vec<Diagonal>>,
) -> Result<MeshImageClass, ModuleError> {
    let model = engine.model();
    let c = mesh.end;
    if base.contains(&c) {
        return Ok(MeshImageClass::InjCase);
    }
    if base.contains(&model.suspend(c)) {
        return Ok(MeshImageClass::ProjCase);
    }
    let g_start = compute_g(engine, mesh.start, base)?;
    let g_end = compute_g(engine, c, base)?;
    let mut middle_parts = Vec::new();
    for &b in &mesh.middles {
        middle_parts.extend(component_keys(&compute_g(engine, b, base)?));
    }
    let mut outer_parts = component_keys(&g_start);
    outer_parts.extend(component_keys(&g_end));
    middle_parts.sort();
    outer_parts.sort();
    Ok(if middle_parts == outer_parts {
        MeshImageClass::SplitSes
    } else {
        MeshImageClass::NonSplitSes
    })
}
