//! Shared helpers for the integration suites: the reference configuration,
//! seeded random (R, T) generation, and an independent brute-force submodule
//! oracle that works with honest scalar actions rather than arrow sets.

// not every suite uses every helper
#![allow(dead_code)]

use gfrieze::ccmap::{CCContext, EpsilonChoice};
use gfrieze::flmod::FlClass;
use gfrieze::laurent::{LaurentPoly, VarTable};
use gfrieze::mesh::MeshEngine;
use gfrieze::polygon::{Diagonal, PolygonCategory};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn reference_model() -> PolygonCategory {
    PolygonCategory::new(8).unwrap()
}

pub fn d(model: &PolygonCategory, i: i64, j: i64) -> Diagonal {
    model.diagonal(i, j).unwrap()
}

pub fn reference_rigid(model: &PolygonCategory) -> Vec<Diagonal> {
    vec![d(model, 2, 5), d(model, 2, 7)]
}

pub fn reference_tilting(model: &PolygonCategory) -> Vec<Diagonal> {
    vec![
        d(model, 1, 7),
        d(model, 2, 4),
        d(model, 2, 5),
        d(model, 2, 7),
        d(model, 5, 7),
    ]
}

/// The reference context: `u, v, z` on `{1,7}, {2,4}, {5,7}` and 1 on `R`.
pub fn reference_context() -> CCContext {
    let model = reference_model();
    let r = reference_rigid(&model);
    let t = reference_tilting(&model);
    let vars = VarTable::new(["u", "v", "z"]).unwrap();
    let unit = |s: &str| {
        LaurentPoly::parse(&vars, s)
            .unwrap()
            .as_signed_monomial()
            .unwrap()
    };
    let images = vec![unit("u"), unit("v"), unit("1"), unit("1"), unit("z")];
    CCContext::modified(model, &r, &t, EpsilonChoice::Assignment { vars, images }).unwrap()
}

/// A seeded random triangulation: the fan followed by `3m` random flips.
pub fn random_triangulation(model: &PolygonCategory, rng: &mut StdRng) -> Vec<Diagonal> {
    let mut tri = model.fan_triangulation();
    for _ in 0..(3 * model.size()) {
        let t = tri[rng.random_range(0..tri.len())];
        tri = model.flip(t, &tri).unwrap();
    }
    tri
}

/// A random subset of a triangulation (each member kept with probability 1/2).
pub fn random_rigid_subset(tri: &[Diagonal], rng: &mut StdRng) -> Vec<Diagonal> {
    tri.iter().copied().filter(|_| rng.random_bool(0.5)).collect()
}

/// Deterministic sweep corpus for one polygon size: `count` random pairs plus
/// the two boundary cases `R = ∅` and `R = T`.
pub fn sweep_pairs(model: &PolygonCategory, count: usize) -> Vec<(Vec<Diagonal>, Vec<Diagonal>)> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0000 + model.size() as u64);
    let mut out = Vec::with_capacity(count + 2);
    let first = random_triangulation(model, &mut rng);
    out.push((Vec::new(), first.clone()));
    out.push((first.clone(), first));
    for _ in 0..count {
        let tri = random_triangulation(model, &mut rng);
        let r = random_rigid_subset(&tri, &mut rng);
        out.push((r, tri));
    }
    out
}

/// Brute-force submodule census over the rational surrogate field.
///
/// Realises the module `Gc` with one vector space per base object (dimension
/// 0 or 1 by the crossing rule) and one scalar per nonzero morphism between
/// base objects (the composite scalar from the mesh category). Enumerates all
/// assignments of subspaces and keeps those closed under every action map.
/// Returns the total number of submodules and the census per class.
pub fn brute_force_submodules(
    engine: &MeshEngine,
    c: Diagonal,
    base: &[Diagonal],
) -> (usize, BTreeMap<FlClass, usize>) {
    let model = engine.model();
    let sc = model.suspend(c);
    let dims: Vec<bool> = base.iter().map(|&r| model.crossing(r, c)).collect();
    let support: Vec<usize> = (0..base.len()).filter(|&k| dims[k]).collect();
    // scalar of the action carrying the r-component into the r'-component
    let mut action: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &r in &support {
        for &rp in &support {
            if r != rp && engine.hom_dim(base[rp], base[r]) == 1 {
                let s = engine.composite_scalar(base[rp], base[r], sc).unwrap();
                action.insert((r, rp), s);
            }
        }
    }
    let n = support.len();
    let mut total = 0usize;
    let mut census: BTreeMap<FlClass, usize> = BTreeMap::new();
    for mask in 0u64..(1 << n) {
        let picked = |k: usize| {
            support
                .iter()
                .position(|&s| s == k)
                .is_some_and(|p| mask & (1 << p) != 0)
        };
        let closed = action
            .iter()
            .all(|(&(r, rp), &s)| s == 0 || !picked(r) || picked(rp));
        if !closed {
            continue;
        }
        total += 1;
        let mut coords = vec![0i64; base.len()];
        for (p, &k) in support.iter().enumerate() {
            if mask & (1 << p) != 0 {
                coords[k] = 1;
            }
        }
        *census.entry(FlClass::from_coords(coords)).or_default() += 1;
    }
    (total, census)
}

/// Shared mesh engine per polygon size.
pub fn engine_for(model: PolygonCategory) -> Arc<MeshEngine> {
    Arc::new(MeshEngine::new(model).unwrap())
}

/// A connected thin summand together with its honest action scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarComponent {
    pub support: Vec<usize>,
    /// `(r, r') -> scalar` of the action carrying `r` into `r'`.
    pub scalars: BTreeMap<(usize, usize), i64>,
}

impl ScalarComponent {
    pub fn key(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        (self.support.clone(), self.scalars.keys().copied().collect())
    }
}

/// Realise `Gc` over the rationals and split it into connected components
/// carrying their actual action scalars from the mesh category.
pub fn scalar_components(
    engine: &MeshEngine,
    c: Diagonal,
    base: &[Diagonal],
) -> Vec<ScalarComponent> {
    let model = engine.model();
    let sc = model.suspend(c);
    let support: Vec<usize> = (0..base.len())
        .filter(|&k| model.crossing(base[k], c))
        .collect();
    let mut scalars: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &r in &support {
        for &rp in &support {
            if r != rp && engine.hom_dim(base[rp], base[r]) == 1 {
                let s = engine.composite_scalar(base[rp], base[r], sc).unwrap();
                if s != 0 {
                    scalars.insert((r, rp), s);
                }
            }
        }
    }
    // connected components of the undirected action graph
    let mut remaining: Vec<usize> = support.clone();
    let mut out = Vec::new();
    while let Some(&seed) = remaining.first() {
        let mut comp = vec![seed];
        let mut stack = vec![seed];
        while let Some(k) = stack.pop() {
            for (&(a, b), _) in &scalars {
                for (x, y) in [(a, b), (b, a)] {
                    if x == k && !comp.contains(&y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        comp.sort_unstable();
        remaining.retain(|k| !comp.contains(k));
        let comp_scalars = scalars
            .iter()
            .filter(|(&(a, _), _)| comp.contains(&a))
            .map(|(&k, &v)| (k, v))
            .collect();
        out.push(ScalarComponent { support: comp, scalars: comp_scalars });
    }
    out
}

/// Honest isomorphism of two connected scalar-realised thin summands: equal
/// supports and nonzero patterns, and a solvable scalar compensation system
/// (a diagonal change of basis commuting with every action map).
pub fn components_isomorphic(a: &ScalarComponent, b: &ScalarComponent) -> bool {
    if a.support != b.support || a.key().1 != b.key().1 {
        return false;
    }
    // solve n * λ_r = λ_{r'} * m over the undirected graph; all scalars are
    // rational units, so λ values stay rational and are checked exactly
    let mut lambda: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    let seed = a.support[0];
    lambda.insert(seed, (1, 1));
    let mut queue = vec![seed];
    while let Some(k) = queue.pop() {
        for (&(r, rp), &m) in &a.scalars {
            let n = b.scalars[&(r, rp)];
            for (from, to, num, den) in [(r, rp, n, m), (rp, r, m, n)] {
                if from != k {
                    continue;
                }
                let (ln, ld) = lambda[&from];
                let cand = (ln * num, ld * den);
                match lambda.get(&to) {
                    None => {
                        lambda.insert(to, cand);
                        queue.push(to);
                    }
                    Some(&(en, ed)) => {
                        if en * cand.1 != cand.0 * ed {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Honest isomorphism of direct sums: per component key, equal counts and
/// every cross pair isomorphic.
pub fn direct_sums_isomorphic(a: &[ScalarComponent], b: &[ScalarComponent]) -> bool {
    let mut by_key: BTreeMap<(Vec<usize>, Vec<(usize, usize)>), (Vec<usize>, Vec<usize>)> =
        BTreeMap::new();
    for (idx, comp) in a.iter().enumerate() {
        by_key.entry(comp.key()).or_default().0.push(idx);
    }
    for (idx, comp) in b.iter().enumerate() {
        by_key.entry(comp.key()).or_default().1.push(idx);
    }
    for (_, (ia, ib)) in by_key {
        if ia.len() != ib.len() {
            return false;
        }
        for &x in &ia {
            for &y in &ib {
                if !components_isomorphic(&a[x], &b[y]) {
                    return false;
                }
            }
        }
    }
    true
}
