//! The modified Caldero-Chapoton map and the generalised-frieze verifier.
//!
//! A context assembles a polygon model, a rigid set `R`, a cluster tilting
//! set `T` containing it, and an exponential map `ε` on the quotient
//! `K_0^split(T)/N`. From these it derives `α(c) = ε(ind c)` and
//! `β(e) = ε θ(e)` and evaluates, on each indecomposable,
//!
//! ```text
//! ρ(c) = α(c) · Σ_e χ(Gr_e(Gc)) β(e)
//! ```
//!
//! where the sum runs over the (finitely many) classes of submodules of the
//! thin module `Gc`. On direct sums ρ is extended multiplicatively, never
//! through Grassmannians of non-thin modules.
//!
//! Two special cases are built in: the original map (`R = T`, one variable
//! per object of `T`) and the integer-valued map (`ε` constantly one).
//!
//! `frieze_check` computes, for every AR mesh `Σc -> b -> c`, the defect
//! `ρ(Σc)ρ(c) - ρ(b)`, verifies it is the constant 0 or 1, and verifies the
//! dichotomy: 0 exactly when `G` of the mesh is a split short exact sequence.
//! All caches (indices, modules, ρ values) are built eagerly, so queries are
//! lookups plus Laurent arithmetic.

use crate::flmod::{closed_subsets, compute_g, subset_class, FlClass, MeshImageClass, ModuleError, ThinModule};
use crate::ktheory::{
    solve_indices, subgroup_n, theta_representative, Epsilon, KtheoryError, QuotientPresentation,
    SplitK0Class,
};
use crate::laurent::{LaurentError, LaurentPoly, SignedMonomial, VarTable};
use crate::mesh::{MeshEngine, MeshError};
use crate::polygon::{Diagonal, PolygonCategory, PolygonError};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
pub enum CcError {
    Polygon(PolygonError),
    Mesh(MeshError),
    Module(ModuleError),
    Ktheory(KtheoryError),
    Laurent(LaurentError),
}

impl fmt::Display for CcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CcError::Polygon(e) => write!(f, "{e}"),
            CcError::Mesh(e) => write!(f, "{e}"),
            CcError::Module(e) => write!(f, "{e}"),
            CcError::Ktheory(e) => write!(f, "{e}"),
            CcError::Laurent(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CcError {}

impl From<PolygonError> for CcError {
    fn from(e: PolygonError) -> Self {
        CcError::Polygon(e)
    }
}
impl From<MeshError> for CcError {
    fn from(e: MeshError) -> Self {
        CcError::Mesh(e)
    }
}
impl From<ModuleError> for CcError {
    fn from(e: ModuleError) -> Self {
        CcError::Module(e)
    }
}
impl From<KtheoryError> for CcError {
    fn from(e: KtheoryError) -> Self {
        CcError::Ktheory(e)
    }
}
impl From<LaurentError> for CcError {
    fn from(e: LaurentError) -> Self {
        CcError::Laurent(e)
    }
}

/// Which specialisation of the map a context realises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapMode {
    /// Depends on a rigid `R` inside a cluster tilting `T`.
    Modified,
    /// `R = T` with a fresh variable per object: the original map.
    Original,
    /// `ε` constantly one: integer values.
    Integer,
}

impl MapMode {
    pub fn parse(s: &str) -> Option<MapMode> {
        match s {
            "modified" => Some(MapMode::Modified),
            "original" => Some(MapMode::Original),
            "integer" => Some(MapMode::Integer),
            _ => None,
        }
    }
}

impl fmt::Display for MapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapMode::Modified => "modified",
            MapMode::Original => "original",
            MapMode::Integer => "integer",
        };
        write!(f, "{s}")
    }
}

/// How to obtain `ε` when building a context.
pub enum EpsilonChoice {
    /// Explicit unit images, one per object of `T` in sorted order.
    Assignment { vars: Arc<VarTable>, images: Vec<SignedMonomial> },
    /// Fresh variables on a free basis of the quotient (`x1, x2, ...`).
    Auto,
    /// The constant map one.
    ConstantOne,
}

/// Verification record for a single AR mesh.
#[derive(Debug, Clone)]
pub struct MeshVerdict {
    pub start: Diagonal,
    pub middles: Vec<Diagonal>,
    pub end: Diagonal,
    /// `ρ(Σc)ρ(c) - Π ρ(b_i)`, expected to be the constant 0 or 1.
    pub defect: LaurentPoly,
    pub class: MeshImageClass,
    /// defect ∈ {0, 1} and it is 0 exactly on split short exact sequences.
    pub agrees: bool,
}

impl MeshVerdict {
    pub fn defect_is_zero(&self) -> bool {
        self.defect.is_zero()
    }
}

/// The full per-mesh verification report, meshes ordered by their end object.
#[derive(Debug, Clone)]
pub struct FriezeReport {
    pub meshes: Vec<MeshVerdict>,
    pub pass: bool,
}

impl FriezeReport {
    /// End objects of the meshes with defect one.
    pub fn defect_one_ends(&self) -> Vec<Diagonal> {
        self.meshes
            .iter()
            .filter(|v| !v.defect_is_zero())
            .map(|v| v.end)
            .collect()
    }
}

/// An assembled configuration with all caches built.
///
/// `Debug` prints a summary, not the caches.
pub struct CCContext {
    model: PolygonCategory,
    mode: MapMode,
    engine: Arc<MeshEngine>,
    r_objs: Arc<Vec<Diagonal>>,
    t_objs: Vec<Diagonal>,
    epsilon: Epsilon,
    quotient: QuotientPresentation,
    index: BTreeMap<Diagonal, SplitK0Class>,
    g_cache: BTreeMap<Diagonal, ThinModule>,
    /// `β` of the simple classes over `R`, as units.
    beta_simples: Vec<SignedMonomial>,
    rho_cache: BTreeMap<Diagonal, LaurentPoly>,
}

impl fmt::Debug for CCContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CCContext")
            .field("polygon_size", &self.model.size())
            .field("mode", &self.mode)
            .field("r", &self.r_objs)
            .field("t", &self.t_objs)
            .field("variables", &self.epsilon.var_table().names())
            .finish_non_exhaustive()
    }
}

impl CCContext {
    /// The general constructor. `Original` mode replaces `r` by `t`;
    /// `Integer` mode ignores the epsilon choice.
    pub fn new(
        model: PolygonCategory,
        mode: MapMode,
        r: &[Diagonal],
        t: &[Diagonal],
        epsilon: EpsilonChoice,
        engine: Option<Arc<MeshEngine>>,
    ) -> Result<CCContext, CcError> {
        let t_objs: Vec<Diagonal> = {
            let set: BTreeSet<Diagonal> = t.iter().copied().collect();
            set.into_iter().collect()
        };
        let r_objs: Vec<Diagonal> = match mode {
            MapMode::Original => t_objs.clone(),
            _ => {
                let set: BTreeSet<Diagonal> = r.iter().copied().collect();
                set.into_iter().collect()
            }
        };
        model.validate_rigid(&r_objs)?;
        model.validate_cluster_tilting(&t_objs, &r_objs)?;
        let engine = match engine {
            Some(e) => {
                assert_eq!(e.model().size(), model.size(), "engine built for another polygon");
                e
            }
            None => Arc::new(MeshEngine::new(model)?),
        };

        let n_gens = subgroup_n(&model, &r_objs, &t_objs)?;
        let quotient = QuotientPresentation::new(t_objs.len(), n_gens.clone());
        let epsilon = match (mode, epsilon) {
            (MapMode::Integer, _) => Epsilon::constant_one(t_objs.len()),
            (_, EpsilonChoice::ConstantOne) => Epsilon::constant_one(t_objs.len()),
            (_, EpsilonChoice::Assignment { vars, images }) => {
                if images.len() != t_objs.len() {
                    return Err(KtheoryError::AssignmentDomain(format!(
                        "expected {} images, got {}",
                        t_objs.len(),
                        images.len()
                    ))
                    .into());
                }
                Epsilon::from_assignment(vars, images, &t_objs, &n_gens)?
            }
            (_, EpsilonChoice::Auto) => {
                let names: Vec<String> =
                    (1..=quotient.free_rank()).map(|k| format!("x{k}")).collect();
                let vars = VarTable::new(names)?;
                Epsilon::default_from_quotient(&quotient, vars)?
            }
        };

        let index = solve_indices(&model, &t_objs)?;
        let r_objs = Arc::new(r_objs);
        let mut g_cache = BTreeMap::new();
        for &c in engine.objects() {
            g_cache.insert(c, compute_g(&engine, c, &r_objs)?);
        }
        let beta_simples = (0..r_objs.len())
            .map(|k| {
                let e = FlClass::simple(r_objs.len(), k);
                let rep = theta_representative(&model, &t_objs, &r_objs, &e)?;
                Ok(epsilon.apply_unit(&rep))
            })
            .collect::<Result<Vec<_>, KtheoryError>>()?;

        let mut ctx = CCContext {
            model,
            mode,
            engine,
            r_objs,
            t_objs,
            epsilon,
            quotient,
            index,
            g_cache,
            beta_simples,
            rho_cache: BTreeMap::new(),
        };
        ctx.rho_cache = ctx
            .model
            .objects()
            .into_iter()
            .map(|c| (c, ctx.compute_rho(c)))
            .collect();
        Ok(ctx)
    }

    /// The map depending on a rigid `R` inside `T`.
    ///
    /// ```
    /// use gfrieze::{CCContext, EpsilonChoice, PolygonCategory};
    ///
    /// let model = PolygonCategory::new(8)?;
    /// let d = |i, j| model.diagonal(i, j).unwrap();
    /// let ctx = CCContext::modified(
    ///     model,
    ///     &[d(2, 5), d(2, 7)],
    ///     &[d(1, 7), d(2, 4), d(2, 5), d(2, 7), d(5, 7)],
    ///     EpsilonChoice::Auto,
    /// )?;
    /// assert!(ctx.frieze_check().pass);
    /// # Ok::<(), Box<dyn std::error::Error>>(())
    /// ```
    pub fn modified(
        model: PolygonCategory,
        r: &[Diagonal],
        t: &[Diagonal],
        epsilon: EpsilonChoice,
    ) -> Result<CCContext, CcError> {
        CCContext::new(model, MapMode::Modified, r, t, epsilon, None)
    }

    /// The original map: `R = T`, by default one fresh variable per object.
    pub fn original(
        model: PolygonCategory,
        t: &[Diagonal],
        epsilon: EpsilonChoice,
    ) -> Result<CCContext, CcError> {
        CCContext::new(model, MapMode::Original, &[], t, epsilon, None)
    }

    /// The integer-valued map: `ε` constantly one.
    pub fn integer(
        model: PolygonCategory,
        r: &[Diagonal],
        t: &[Diagonal],
    ) -> Result<CCContext, CcError> {
        CCContext::new(model, MapMode::Integer, r, t, EpsilonChoice::ConstantOne, None)
    }

    pub fn model(&self) -> &PolygonCategory {
        &self.model
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    pub fn engine(&self) -> &Arc<MeshEngine> {
        &self.engine
    }

    pub fn r_objects(&self) -> &[Diagonal] {
        &self.r_objs
    }

    pub fn t_objects(&self) -> &[Diagonal] {
        &self.t_objs
    }

    pub fn var_table(&self) -> &Arc<VarTable> {
        self.epsilon.var_table()
    }

    pub fn epsilon(&self) -> &Epsilon {
        &self.epsilon
    }

    pub fn quotient(&self) -> &QuotientPresentation {
        &self.quotient
    }

    pub fn index_of(&self, c: Diagonal) -> &SplitK0Class {
        &self.index[&c]
    }

    pub fn g_module(&self, c: Diagonal) -> &ThinModule {
        &self.g_cache[&c]
    }

    /// `α(c) = ε Q(ind c)` on an indecomposable.
    pub fn alpha(&self, c: Diagonal) -> LaurentPoly {
        self.alpha_unit(c).to_poly(self.var_table())
    }

    fn alpha_unit(&self, c: Diagonal) -> SignedMonomial {
        self.epsilon.apply_unit(&self.index[&c])
    }

    /// `α` on a formal direct sum; `α` of the empty sum is 1.
    pub fn alpha_object(&self, summands: &[Diagonal]) -> LaurentPoly {
        summands
            .iter()
            .fold(SignedMonomial::one(self.var_table().len()), |acc, &c| {
                acc.mul(&self.alpha_unit(c))
            })
            .to_poly(self.var_table())
    }

    fn beta_unit(&self, e: &FlClass) -> SignedMonomial {
        e.coords()
            .iter()
            .enumerate()
            .fold(SignedMonomial::one(self.var_table().len()), |acc, (k, &c)| {
                if c == 0 {
                    acc
                } else {
                    acc.mul(&self.beta_simples[k].pow(c))
                }
            })
    }

    /// `β(e) = ε θ(e)` on a class over `R`; `β(0) = 1`.
    pub fn beta(&self, e: &FlClass) -> LaurentPoly {
        self.beta_unit(e).to_poly(self.var_table())
    }

    fn compute_rho(&self, c: Diagonal) -> LaurentPoly {
        let module = &self.g_cache[&c];
        let vars = self.var_table();
        let mut sum = LaurentPoly::zero(vars.clone());
        for subset in closed_subsets(module) {
            let term = self.beta_unit(&subset_class(module, &subset)).to_poly(vars);
            sum = sum.add(&term).expect("same table");
        }
        sum.mul(&self.alpha(c)).expect("same table")
    }

    /// `ρ` on an indecomposable (cached).
    pub fn rho(&self, c: Diagonal) -> &LaurentPoly {
        &self.rho_cache[&c]
    }

    /// `ρ` on a formal direct sum of indecomposables (a multiset): the product
    /// of the values on the summands. `ρ(0) = 1`.
    pub fn rho_object(&self, summands: &[Diagonal]) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.var_table().clone());
        for &c in summands {
            acc = acc.mul(self.rho(c)).expect("same table");
        }
        acc
    }

    /// All `(object, ρ(object))` pairs, sorted by object.
    pub fn values(&self) -> impl Iterator<Item = (Diagonal, &LaurentPoly)> {
        self.rho_cache.iter().map(|(&c, p)| (c, p))
    }

    /// Classify `G` of the mesh ending at `c`, from the module cache.
    pub fn classify_mesh(&self, c: Diagonal) -> MeshImageClass {
        if self.r_objs.contains(&c) {
            return MeshImageClass::InjCase;
        }
        if self.r_objs.contains(&self.model.suspend(c)) {
            return MeshImageClass::ProjCase;
        }
        let mesh = self.model.ar_mesh(c);
        let mut middle_parts: Vec<_> = Vec::new();
        for b in &mesh.middles {
            middle_parts.extend(
                self.g_cache[b]
                    .components()
                    .into_iter()
                    .map(|p| (p.support().clone(), p.arrows().clone())),
            );
        }
        let mut outer_parts: Vec<_> = [mesh.start, c]
            .iter()
            .flat_map(|d| self.g_cache[d].components())
            .map(|p| (p.support().clone(), p.arrows().clone()))
            .collect();
        middle_parts.sort();
        outer_parts.sort();
        if middle_parts == outer_parts {
            MeshImageClass::SplitSes
        } else {
            MeshImageClass::NonSplitSes
        }
    }

    /// The defect `ρ(Σc)ρ(c) - Π ρ(b_i)` of the mesh ending at `c`.
    pub fn mesh_defect(&self, c: Diagonal) -> LaurentPoly {
        let mesh = self.model.ar_mesh(c);
        let prod = self
            .rho(mesh.start)
            .mul(self.rho(c))
            .expect("same table");
        prod.sub(&self.rho_object(&mesh.middles)).expect("same table")
    }

    /// Verify the generalised-frieze property and the dichotomy on every mesh.
    pub fn frieze_check(&self) -> FriezeReport {
        let mut meshes = Vec::with_capacity(self.model.object_count());
        let mut pass = true;
        for c in self.model.objects() {
            let mesh = self.model.ar_mesh(c);
            let defect = self.mesh_defect(c);
            let class = self.classify_mesh(c);
            let in01 = defect.is_zero() || defect.is_one();
            let agrees = in01 && (defect.is_zero() == (class == MeshImageClass::SplitSes));
            pass &= agrees;
            meshes.push(MeshVerdict {
                start: mesh.start,
                middles: mesh.middles,
                end: c,
                defect,
                class,
                agrees,
            });
        }
        FriezeReport { meshes, pass }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octagon() -> PolygonCategory {
        PolygonCategory::new(8).unwrap()
    }

    fn d(model: &PolygonCategory, i: i64, j: i64) -> Diagonal {
        model.diagonal(i, j).unwrap()
    }

    fn reference_context() -> CCContext {
        let model = octagon();
        let r = vec![d(&model, 2, 5), d(&model, 2, 7)];
        let t = vec![
            d(&model, 1, 7),
            d(&model, 2, 4),
            d(&model, 2, 5),
            d(&model, 2, 7),
            d(&model, 5, 7),
        ];
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

    fn p(ctx: &CCContext, s: &str) -> LaurentPoly {
        LaurentPoly::parse(ctx.var_table(), s).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let ctx = reference_context();
        let model = *ctx.model();
        assert_eq!(ctx.alpha(d(&model, 4, 6)), p(&ctx, "(1)/z"));
        assert_eq!(ctx.alpha(d(&model, 2, 5)), p(&ctx, "1"));
        assert!(ctx.alpha_object(&[]).is_one());
    }

    #[test]
    fn beta_examples() {
        let ctx = reference_context();
        let n = ctx.r_objects().len();
        assert_eq!(ctx.beta(&FlClass::simple(n, 0)), p(&ctx, "v*z"));
        assert_eq!(ctx.beta(&FlClass::simple(n, 1)), p(&ctx, "(u)/z"));
        assert!(ctx.beta(&FlClass::zero(n)).is_one());
    }

    #[test]
    fn rho_examples() {
        let ctx = reference_context();
        let model = *ctx.model();
        assert_eq!(ctx.rho(d(&model, 4, 6)), &p(&ctx, "(1+v*z)/z"));
        assert_eq!(ctx.rho(d(&model, 2, 5)), &p(&ctx, "1"));
        assert_eq!(ctx.rho(d(&model, 3, 8)), &p(&ctx, "(1+u*v+v*z)/u*v"));
        assert_eq!(ctx.rho(d(&model, 1, 5)), &p(&ctx, "u+z"));
    }

    #[test]
    fn rho_is_multiplicative_on_sums() {
        let ctx = reference_context();
        let model = *ctx.model();
        let a = d(&model, 1, 7);
        let c = d(&model, 2, 6);
        assert_eq!(ctx.rho_object(&[a, c]), p(&ctx, "(u)/z"));
        assert!(ctx.rho_object(&[]).is_one());
        let sq = ctx.rho(c).mul(ctx.rho(c)).unwrap();
        assert_eq!(ctx.rho_object(&[c, c]), sq);
    }

    #[test]
    fn mesh_defect_examples() {
        let ctx = reference_context();
        let model = *ctx.model();
        // ρ({1,6})ρ({2,7}) - ρ({1,7})ρ({2,6}) = 1
        assert!(ctx.mesh_defect(d(&model, 2, 7)).is_one());
        // ρ({6,8})ρ({1,7}) - ρ({1,6}) = 0
        assert!(ctx.mesh_defect(d(&model, 1, 7)).is_zero());
        // the one non-split short exact sequence position
        assert!(ctx.mesh_defect(d(&model, 5, 8)).is_one());
        assert_eq!(ctx.classify_mesh(d(&model, 5, 8)), MeshImageClass::NonSplitSes);
    }

    #[test]
    fn frieze_report_reference() {
        let ctx = reference_context();
        let model = *ctx.model();
        let report = ctx.frieze_check();
        assert!(report.pass);
        assert_eq!(
            report.defect_one_ends(),
            vec![
                d(&model, 2, 5),
                d(&model, 2, 7),
                d(&model, 3, 6),
                d(&model, 3, 8),
                d(&model, 5, 8),
            ]
        );
    }

    #[test]
    fn original_context_values() {
        let model = octagon();
        let t = vec![
            d(&model, 1, 7),
            d(&model, 2, 4),
            d(&model, 2, 5),
            d(&model, 2, 7),
            d(&model, 5, 7),
        ];
        let vars = VarTable::new(["u", "v", "x", "y", "z"]).unwrap();
        let unit = |s: &str| {
            LaurentPoly::parse(&vars, s)
                .unwrap()
                .as_signed_monomial()
                .unwrap()
        };
        let images = vec![unit("u"), unit("v"), unit("x"), unit("y"), unit("z")];
        let ctx = CCContext::original(
            model,
            &t,
            EpsilonChoice::Assignment { vars: vars.clone(), images },
        )
        .unwrap();
        // the map restricts to the variables on T
        for (k, &t_obj) in ctx.t_objects().iter().enumerate() {
            assert_eq!(
                ctx.rho(t_obj),
                &LaurentPoly::variable(vars.clone(), k),
                "value at {t_obj}"
            );
        }
        assert_eq!(
            ctx.rho(d(&model, 4, 6)),
            &LaurentPoly::parse(&vars, "(v*z+x+y)/x*z").unwrap()
        );
        let report = ctx.frieze_check();
        assert!(report.pass);
        // the original map is a genuine frieze: defect 1 everywhere
        assert!(report.meshes.iter().all(|v| !v.defect_is_zero()));
    }

    #[test]
    fn integer_context_values() {
        let model = octagon();
        let r = vec![d(&model, 2, 5), d(&model, 2, 7)];
        let t = vec![
            d(&model, 1, 7),
            d(&model, 2, 4),
            d(&model, 2, 5),
            d(&model, 2, 7),
            d(&model, 5, 7),
        ];
        let ctx = CCContext::integer(model, &r, &t).unwrap();
        let as_int = |c: Diagonal| ctx.rho(c).as_constant().unwrap().clone();
        assert_eq!(as_int(d(&model, 4, 6)), 2.into());
        assert_eq!(as_int(d(&model, 2, 5)), 1.into());
        assert_eq!(as_int(d(&model, 3, 8)), 3.into());
        assert!(ctx.frieze_check().pass);
    }

    #[test]
    fn auto_epsilon_matches_reference_up_to_basis() {
        // the auto map lands in three variables and passes the frieze check
        let model = octagon();
        let r = vec![d(&model, 2, 5), d(&model, 2, 7)];
        let t = vec![
            d(&model, 1, 7),
            d(&model, 2, 4),
            d(&model, 2, 5),
            d(&model, 2, 7),
            d(&model, 5, 7),
        ];
        let ctx = CCContext::modified(model, &r, &t, EpsilonChoice::Auto).unwrap();
        assert_eq!(ctx.var_table().len(), 3);
        assert!(ctx.frieze_check().pass);
    }

    #[test]
    fn square_model_with_empty_mesh_middles() {
        // the 4-gon: two objects, meshes with no middle term at all
        let model = PolygonCategory::new(4).unwrap();
        let t = vec![d(&model, 1, 3)];

        let ctx = CCContext::original(model, &t, EpsilonChoice::Auto).unwrap();
        let x13 = d(&model, 1, 3);
        let x24 = d(&model, 2, 4);
        assert_eq!(ctx.rho(x13), &LaurentPoly::variable(ctx.var_table().clone(), 0));
        // ρ(Σt) = (1 + β)/x with the exchange pair of t fully degenerate
        assert_eq!(ctx.rho(x24).to_string(), "(2)/x1");
        let report = ctx.frieze_check();
        assert!(report.pass);
        assert_eq!(report.defect_one_ends(), vec![x13, x24]);
        assert_eq!(ctx.classify_mesh(x13), MeshImageClass::InjCase);
        assert_eq!(ctx.classify_mesh(x24), MeshImageClass::ProjCase);

        // empty rigid part: all modules vanish and every defect is zero
        let ctx = CCContext::modified(model, &[], &t, EpsilonChoice::Auto).unwrap();
        let report = ctx.frieze_check();
        assert!(report.pass);
        assert!(report.defect_one_ends().is_empty());
    }

    #[test]
    fn cached_classification_matches_standalone() {
        let ctx = reference_context();
        let model = *ctx.model();
        let base = std::sync::Arc::new(ctx.r_objects().to_vec());
        for c in model.objects() {
            let mesh = model.ar_mesh(c);
            let standalone =
                crate::flmod::classify_mesh_image(ctx.engine(), &mesh, &base).unwrap();
            assert_eq!(ctx.classify_mesh(c), standalone, "classification at {c}");
        }
    }

    #[test]
    fn contexts_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<CCContext>();
        assert_send_sync::<MeshEngine>();
        assert_send_sync::<LaurentPoly>();
    }

    #[test]
    fn unit_relation_on_reference() {
        // α(c ⊕ Σc) · β([Gc]) = 1 for every indecomposable
        let ctx = reference_context();
        let model = *ctx.model();
        for c in model.objects() {
            let a = ctx.alpha_object(&[c, model.suspend(c)]);
            let b = ctx.beta(&ctx.g_module(c).class());
            assert!(a.mul(&b).unwrap().is_one(), "unit relation at {c}");
        }
    }
}
