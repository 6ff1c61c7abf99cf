//! Integer K-theory of a cluster tilting subcategory in the polygon model.
//!
//! The split Grothendieck group of the triangulation `T` is free on the
//! classes `[t]`; elements are integer vectors over `ind T`. The map `θ̄`
//! sends the simple at `t` to `[a] - [a']`, read off the exchange pair of `t`.
//! The subgroup `N` is generated by the `θ̄`-images of the simples at
//! `T \ R`; its quotient is presented by an integer normal form (invariant
//! factors with unimodular transforms), which also produces the default
//! exponential map `ε` onto fresh Laurent variables.
//!
//! Indices are solved by constraint propagation over the AR quiver from the
//! seeds `ind t = [t]`, `ind Σt = -[t]`, using the orbit identity
//! `ind Σc = -θ̄[Ḡc] - ind c` and the mesh identity
//! `Σ ind b_i = -θ̄[Ḡc]` (`θ̄[S̄_c]` when `c` lies in `T`). The solver fails
//! loudly if propagation leaves an object uncovered, and re-verifies both
//! identities globally afterwards.

use crate::flmod::FlClass;
use crate::laurent::{SignedMonomial, VarTable};
use crate::polygon::{Diagonal, PolygonCategory, PolygonError};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KtheoryError {
    Polygon(PolygonError),
    /// Index propagation left some objects unsolved.
    IndexUnsolved(Vec<Diagonal>),
    /// A solved index table violates one of the defining identities.
    IndexInconsistent(String),
    /// An `ε` assignment does not kill the subgroup `N`.
    IllDefinedEpsilon { generator: String },
    /// An `ε` image is not a unit of the Laurent ring.
    NotAUnit { object: Diagonal, image: String },
    /// `default_epsilon` needs exactly one variable per free generator.
    NameCountMismatch { expected: usize, got: usize },
    /// An assignment must cover `ind T` exactly.
    AssignmentDomain(String),
}

impl fmt::Display for KtheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KtheoryError::Polygon(e) => write!(f, "{e}"),
            KtheoryError::IndexUnsolved(items) => {
                let names: Vec<String> = items.iter().map(|d| d.to_string()).collect();
                write!(f, "index propagation left objects unsolved: {}", names.join(", "))
            }
            KtheoryError::IndexInconsistent(msg) => write!(f, "index identities violated: {msg}"),
            KtheoryError::IllDefinedEpsilon { generator } => {
                write!(f, "epsilon is not well-defined: generator {generator} of N does not map to 1")
            }
            KtheoryError::NotAUnit { object, image } => {
                write!(f, "epsilon image of {object} must be a signed monomial, got `{image}`")
            }
            KtheoryError::NameCountMismatch { expected, got } => {
                write!(f, "expected {expected} variable names (the free rank), got {got}")
            }
            KtheoryError::AssignmentDomain(msg) => write!(f, "epsilon assignment: {msg}"),
        }
    }
}

impl std::error::Error for KtheoryError {}

impl From<PolygonError> for KtheoryError {
    fn from(e: PolygonError) -> Self {
        KtheoryError::Polygon(e)
    }
}

/// An element of the split Grothendieck group of `T`: an integer vector over
/// the (sorted) indecomposables of `T`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitK0Class {
    coords: Vec<i64>,
}

impl SplitK0Class {
    pub fn zero(n: usize) -> SplitK0Class {
        SplitK0Class { coords: vec![0; n] }
    }

    pub fn basis(n: usize, idx: usize) -> SplitK0Class {
        let mut coords = vec![0; n];
        coords[idx] = 1;
        SplitK0Class { coords }
    }

    pub fn from_coords(coords: Vec<i64>) -> SplitK0Class {
        SplitK0Class { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &SplitK0Class) -> SplitK0Class {
        SplitK0Class {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &SplitK0Class) -> SplitK0Class {
        SplitK0Class {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> SplitK0Class {
        SplitK0Class { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scaled(&self, k: i64) -> SplitK0Class {
        SplitK0Class { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Render against the basis labels, e.g. `[2,4]+[5,7]-[2,7]`.
    pub fn display_with(&self, basis: &[Diagonal]) -> String {
        let mut out = String::new();
        for (k, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (i, j) = basis[k].endpoints();
            let mag = c.abs();
            if c > 0 && !out.is_empty() {
                out.push('+');
            } else if c < 0 {
                out.push('-');
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&format!("[{i},{j}]"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

// ---- Smith normal form ----

type Mat = Vec<Vec<i64>>;

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

#[cfg(test)]
fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let p = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i64; p]; n];
    for i in 0..n {
        for (k, &aik) in a[i].iter().enumerate() {
            if aik == 0 {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V` and diagonal
/// `D` whose positive entries divide each other in order. Only `U` is needed
/// to present the quotient; `V` is kept so the factorisation can be checked.
pub(crate) struct Smith {
    pub u: Mat,
    #[allow(dead_code)]
    pub v: Mat,
    pub d: Mat,
    pub rank: usize,
}

// matrix row/column operations read most clearly with explicit indices
#[allow(clippy::needless_range_loop)]
pub(crate) fn smith_normal_form(a: &Mat) -> Smith {
    let n = a.len();
    let k = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(n);
    let mut v = identity(k);
    let mut t = 0;
    while t < n.min(k) {
        // pivot: nonzero entry of least magnitude in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..k {
                if d[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in (t + 1)..n {
            let q = d[i][t] / d[t][t];
            if q != 0 {
                for j in 0..k {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..n {
                    u[i][j] -= q * u[t][j];
                }
            }
            if d[i][t] != 0 {
                dirty = true;
            }
        }
        for j in (t + 1)..k {
            let q = d[t][j] / d[t][t];
            if q != 0 {
                for row in d.iter_mut() {
                    row[j] -= q * row[t];
                }
                for row in v.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            if d[t][j] != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // enforce the divisibility chain
        let mut fixed = true;
        'divis: for i in (t + 1)..n {
            for j in (t + 1)..k {
                if d[i][j] % d[t][t] != 0 {
                    for col in 0..k {
                        d[t][col] += d[i][col];
                    }
                    for col in 0..n {
                        u[t][col] += u[i][col];
                    }
                    fixed = false;
                    break 'divis;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[t][t] < 0 {
            for j in 0..k {
                d[t][j] = -d[t][j];
            }
            for j in 0..n {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let rank = (0..n.min(k)).take_while(|&i| d[i][i] != 0).count();
    Smith { u, v, d, rank }
}

/// The quotient `K_0^split(T) / N` in invariant-factor normal form, with the
/// projection used to compare classes modulo `N`.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    dim: usize,
    generators: Vec<SplitK0Class>,
    u: Mat,
    invariant_factors: Vec<i64>,
    free_rank: usize,
}

/// The image of a class in the quotient: torsion residues (one per invariant
/// factor greater than one) and free coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedClass {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

impl ProjectedClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|&t| t == 0) && self.free.iter().all(|&f| f == 0)
    }
}

impl QuotientPresentation {
    /// Present `Z^dim` modulo the span of `generators`.
    pub fn new(dim: usize, generators: Vec<SplitK0Class>) -> QuotientPresentation {
        let cols = generators.len();
        let matrix: Mat = (0..dim)
            .map(|i| (0..cols).map(|j| generators[j].coords()[i]).collect())
            .collect();
        let smith = smith_normal_form(&matrix);
        let invariant_factors: Vec<i64> = (0..smith.rank).map(|i| smith.d[i][i]).collect();
        QuotientPresentation {
            dim,
            generators,
            free_rank: dim - smith.rank,
            u: smith.u,
            invariant_factors,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[SplitK0Class] {
        &self.generators
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors greater than one (the torsion of the quotient).
    pub fn torsion_invariants(&self) -> Vec<i64> {
        self.invariant_factors.iter().copied().filter(|&d| d > 1).collect()
    }

    fn transformed(&self, x: &SplitK0Class) -> Vec<i64> {
        self.u
            .iter()
            .map(|row| row.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Coordinates of `x + N` in the normal form of the quotient.
    pub fn project(&self, x: &SplitK0Class) -> ProjectedClass {
        let y = self.transformed(x);
        let rank = self.invariant_factors.len();
        let torsion = self
            .invariant_factors
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 1)
            .map(|(i, &d)| y[i].rem_euclid(d))
            .collect();
        ProjectedClass { torsion, free: y[rank..].to_vec() }
    }

    /// Does `x` lie in the subgroup `N`?
    pub fn in_subgroup(&self, x: &SplitK0Class) -> bool {
        self.project(x).is_zero()
    }

    /// Are `x` and `y` equal modulo `N`?
    pub fn same_class(&self, x: &SplitK0Class, y: &SplitK0Class) -> bool {
        self.in_subgroup(&x.sub(y))
    }

    /// Exponents of the free part of `[t_idx] + N`; the column used when the
    /// default `ε` sends the free basis to fresh variables.
    fn free_column(&self, idx: usize) -> Vec<i64> {
        let rank = self.invariant_factors.len();
        (rank..self.dim).map(|row| self.u[row][idx]).collect()
    }
}

// ---- θ̄, N, κ, θ ----

/// `θ̄` of the simple at `t`: `[a] - [a']` from the exchange pair of `t`,
/// as a vector over the sorted `ind T`.
pub fn theta_bar(
    model: &PolygonCategory,
    t_objs: &[Diagonal],
    t: Diagonal,
) -> Result<SplitK0Class, KtheoryError> {
    let ex = model.exchange_pair(t, t_objs)?;
    let mut coords = vec![0i64; t_objs.len()];
    let pos = |d: Diagonal| t_objs.iter().position(|&x| x == d).expect("middle term lies in T");
    for x in ex.a {
        coords[pos(x)] += 1;
    }
    for x in ex.a_prime {
        coords[pos(x)] -= 1;
    }
    Ok(SplitK0Class { coords })
}

/// `θ̄` extended additively to a class in `K_0(fl T)`.
pub fn theta_bar_class(
    model: &PolygonCategory,
    t_objs: &[Diagonal],
    e: &FlClass,
) -> Result<SplitK0Class, KtheoryError> {
    let mut acc = SplitK0Class::zero(t_objs.len());
    for (idx, &c) in e.coords().iter().enumerate() {
        if c != 0 {
            acc = acc.add(&theta_bar(model, t_objs, t_objs[idx])?.scaled(c));
        }
    }
    Ok(acc)
}

/// Generators of the subgroup `N`: `θ̄` of the simples at `T \ R`.
pub fn subgroup_n(
    model: &PolygonCategory,
    r_objs: &[Diagonal],
    t_objs: &[Diagonal],
) -> Result<Vec<SplitK0Class>, KtheoryError> {
    model.validate_rigid(r_objs)?;
    model.validate_cluster_tilting(t_objs, r_objs)?;
    t_objs
        .iter()
        .filter(|t| !r_objs.contains(t))
        .map(|&t| theta_bar(model, t_objs, t))
        .collect()
}

/// `κ`: restrict a class over `T` to the coordinates at `R`.
pub fn kappa(t_objs: &[Diagonal], r_objs: &[Diagonal], e: &FlClass) -> FlClass {
    let coords = r_objs
        .iter()
        .map(|r| {
            let pos = t_objs.iter().position(|t| t == r).expect("R is contained in T");
            e.coords()[pos]
        })
        .collect();
    FlClass::from_coords(coords)
}

/// A canonical `κ`-preimage of a class over `R`: extend by zero on `T \ R`.
pub fn kappa_preimage(t_objs: &[Diagonal], r_objs: &[Diagonal], e: &FlClass) -> FlClass {
    let mut coords = vec![0i64; t_objs.len()];
    for (k, r) in r_objs.iter().enumerate() {
        let pos = t_objs.iter().position(|t| t == r).expect("R is contained in T");
        coords[pos] = e.coords()[k];
    }
    FlClass::from_coords(coords)
}

/// A representative of `θ(e) = Q θ̄(ē)` for the canonical preimage `ē`;
/// any other preimage differs by an element of `N`.
pub fn theta_representative(
    model: &PolygonCategory,
    t_objs: &[Diagonal],
    r_objs: &[Diagonal],
    e: &FlClass,
) -> Result<SplitK0Class, KtheoryError> {
    theta_bar_class(model, t_objs, &kappa_preimage(t_objs, r_objs, e))
}

// ---- the index ----

/// Solve `ind c` for every object by constraint propagation, then re-verify
/// the orbit and mesh identities globally.
pub fn solve_indices(
    model: &PolygonCategory,
    t_objs: &[Diagonal],
) -> Result<BTreeMap<Diagonal, SplitK0Class>, KtheoryError> {
    let n = t_objs.len();
    let objects = model.objects();
    // θ̄ of the class of Ḡc: the sum of θ̄ over the T-objects crossing c
    let theta_t: Vec<SplitK0Class> = t_objs
        .iter()
        .map(|&t| theta_bar(model, t_objs, t))
        .collect::<Result<_, _>>()?;
    let theta_gbar = |c: Diagonal| -> SplitK0Class {
        let mut acc = SplitK0Class::zero(n);
        for (k, &t) in t_objs.iter().enumerate() {
            if model.crossing(t, c) {
                acc = acc.add(&theta_t[k]);
            }
        }
        acc
    };

    let mut index: BTreeMap<Diagonal, SplitK0Class> = BTreeMap::new();
    for (k, &t) in t_objs.iter().enumerate() {
        index.insert(t, SplitK0Class::basis(n, k));
        index.insert(model.suspend(t), SplitK0Class::basis(n, k).neg());
    }

    loop {
        let mut progress = false;
        for &c in &objects {
            // orbit rule: ind Σc = -θ̄[Ḡc] - ind c, in both directions
            let sc = model.suspend(c);
            match (index.contains_key(&c), index.contains_key(&sc)) {
                (true, false) => {
                    let v = theta_gbar(c).neg().sub(&index[&c]);
                    index.insert(sc, v);
                    progress = true;
                }
                (false, true) => {
                    let v = theta_gbar(c).neg().sub(&index[&sc]);
                    index.insert(c, v);
                    progress = true;
                }
                _ => {}
            }
        }
        for &c in &objects {
            // mesh rule: solve for a single unknown middle term
            let mesh = model.ar_mesh(c);
            let unknown: Vec<Diagonal> = mesh
                .middles
                .iter()
                .copied()
                .filter(|b| !index.contains_key(b))
                .collect();
            if unknown.len() != 1 {
                continue;
            }
            let rhs = if let Some(k) = t_objs.iter().position(|&t| t == c) {
                theta_t[k].clone()
            } else {
                theta_gbar(c).neg()
            };
            let known: SplitK0Class = mesh
                .middles
                .iter()
                .filter(|b| index.contains_key(b))
                .fold(SplitK0Class::zero(n), |acc, b| acc.add(&index[b]));
            index.insert(unknown[0], rhs.sub(&known));
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let unsolved: Vec<Diagonal> = objects.iter().copied().filter(|c| !index.contains_key(c)).collect();
    if !unsolved.is_empty() {
        return Err(KtheoryError::IndexUnsolved(unsolved));
    }

    // global re-verification of both identities, not just the ones used
    for &c in &objects {
        let sc = model.suspend(c);
        let lhs = theta_gbar(c);
        let rhs = index[&c].add(&index[&sc]).neg();
        if lhs != rhs {
            return Err(KtheoryError::IndexInconsistent(format!(
                "orbit identity fails at {c}"
            )));
        }
        let mesh = model.ar_mesh(c);
        let sum = mesh
            .middles
            .iter()
            .fold(SplitK0Class::zero(n), |acc, b| acc.add(&index[b]));
        let rhs = if let Some(k) = t_objs.iter().position(|&t| t == c) {
            theta_t[k].clone()
        } else {
            theta_gbar(c).neg()
        };
        if sum != rhs {
            return Err(KtheoryError::IndexInconsistent(format!(
                "mesh identity fails at {c}"
            )));
        }
    }
    Ok(index)
}

// ---- ε ----

/// An exponential map on the split Grothendieck group, well-defined modulo
/// `N`: every generator of `N` maps to 1. Images are units (signed monomials).
#[derive(Debug, Clone)]
pub struct Epsilon {
    vars: Arc<VarTable>,
    images: Vec<SignedMonomial>,
    torsion_collapsed: bool,
}

impl Epsilon {
    /// Build from explicit images of the classes `[t]`, verifying that every
    /// generator of `N` maps to 1.
    pub fn from_assignment(
        vars: Arc<VarTable>,
        images: Vec<SignedMonomial>,
        t_objs: &[Diagonal],
        n_generators: &[SplitK0Class],
    ) -> Result<Epsilon, KtheoryError> {
        let eps = Epsilon { vars, images, torsion_collapsed: false };
        for g in n_generators {
            if !eps.apply_unit(g).is_one() {
                return Err(KtheoryError::IllDefinedEpsilon {
                    generator: g.display_with(t_objs),
                });
            }
        }
        Ok(eps)
    }

    /// The default `ε`: fresh variables on a free basis of the quotient.
    /// Torsion, if any, is collapsed to 1 (the Laurent ring has no units of
    /// finite multiplicative order besides ±1); `torsion_collapsed` records it.
    pub fn default_from_quotient(
        quotient: &QuotientPresentation,
        vars: Arc<VarTable>,
    ) -> Result<Epsilon, KtheoryError> {
        if vars.len() != quotient.free_rank() {
            return Err(KtheoryError::NameCountMismatch {
                expected: quotient.free_rank(),
                got: vars.len(),
            });
        }
        let images = (0..quotient.dim())
            .map(|idx| SignedMonomial { negative: false, exps: quotient.free_column(idx) })
            .collect();
        Ok(Epsilon {
            vars,
            images,
            torsion_collapsed: !quotient.torsion_invariants().is_empty(),
        })
    }

    /// The constant map 1 (the integer-valued special case).
    pub fn constant_one(dim: usize) -> Epsilon {
        let vars = VarTable::empty();
        Epsilon {
            vars,
            images: (0..dim).map(|_| SignedMonomial::one(0)).collect(),
            torsion_collapsed: false,
        }
    }

    pub fn var_table(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn image_of(&self, idx: usize) -> &SignedMonomial {
        &self.images[idx]
    }

    pub fn torsion_collapsed(&self) -> bool {
        self.torsion_collapsed
    }

    /// Evaluate multiplicatively on a split class.
    pub fn apply_unit(&self, x: &SplitK0Class) -> SignedMonomial {
        let mut acc = SignedMonomial::one(self.vars.len());
        for (idx, &c) in x.coords().iter().enumerate() {
            if c != 0 {
                acc = acc.mul(&self.images[idx].pow(c));
            }
        }
        acc
    }

    pub fn apply(&self, x: &SplitK0Class) -> crate::laurent::LaurentPoly {
        self.apply_unit(x).to_poly(&self.vars)
    }
}
