//! Python bindings for the gfrieze library.
//!
//! Exposes the polygon model helpers and a `Frieze` class wrapping an
//! assembled map context. Values cross the boundary as canonical strings of
//! the Laurent grammar; diagonals as `(i, j)` tuples or `"{i,j}"` strings.

use gfrieze::ccmap::{CCContext, EpsilonChoice, MapMode};
use gfrieze::laurent::{LaurentPoly, VarTable};
use gfrieze::polygon::{Diagonal, PolygonCategory};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::collections::BTreeSet;

fn model(m: u32) -> PyResult<PolygonCategory> {
    PolygonCategory::new(m).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_diagonal(model: &PolygonCategory, pair: (i64, i64)) -> PyResult<Diagonal> {
    model
        .diagonal(pair.0, pair.1)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_diagonals(model: &PolygonCategory, pairs: Vec<(i64, i64)>) -> PyResult<Vec<Diagonal>> {
    pairs.into_iter().map(|p| to_diagonal(model, p)).collect()
}

fn as_pair(d: Diagonal) -> (u32, u32) {
    d.endpoints()
}

type PyMesh = ((u32, u32), Vec<(u32, u32)>, (u32, u32));

/// Do two diagonals of the m-gon cross?
#[pyfunction]
fn crossing(m: u32, x: (i64, i64), y: (i64, i64)) -> PyResult<bool> {
    let model = model(m)?;
    Ok(model.crossing(to_diagonal(&model, x)?, to_diagonal(&model, y)?))
}

/// The suspension (= AR translation) of a diagonal: both endpoints rotated.
#[pyfunction]
fn suspend(m: u32, x: (i64, i64)) -> PyResult<(u32, u32)> {
    let model = model(m)?;
    Ok(as_pair(model.suspend(to_diagonal(&model, x)?)))
}

/// The AR mesh ending at `c`: `(start, middles, end)`.
#[pyfunction]
fn ar_mesh(m: u32, c: (i64, i64)) -> PyResult<PyMesh> {
    let model = model(m)?;
    let mesh = model.ar_mesh(to_diagonal(&model, c)?);
    Ok((
        as_pair(mesh.start),
        mesh.middles.into_iter().map(as_pair).collect(),
        as_pair(mesh.end),
    ))
}

/// All diagonals of the m-gon, sorted.
#[pyfunction]
fn objects(m: u32) -> PyResult<Vec<(u32, u32)>> {
    Ok(model(m)?.objects().into_iter().map(as_pair).collect())
}

/// An assembled modified Caldero-Chapoton map on one polygon model.
#[pyclass]
struct Frieze {
    ctx: CCContext,
}

impl Frieze {
    fn parse_object(&self, object: &Bound<'_, PyAny>) -> PyResult<Diagonal> {
        if let Ok(s) = object.extract::<String>() {
            return self
                .ctx
                .model()
                .parse_diagonal(&s)
                .map_err(|e| PyValueError::new_err(e.to_string()));
        }
        let pair: (i64, i64) = object.extract()?;
        to_diagonal(self.ctx.model(), pair)
    }
}

#[pymethods]
impl Frieze {
    /// Build a context.
    ///
    /// mode: "modified", "original" or "integer". epsilon: either None (fresh
    /// variables on a free basis of the quotient) or a dict mapping "{i,j}"
    /// to a unit such as "u", "1" or "v^-1".
    #[new]
    #[pyo3(signature = (m, r, t, mode="modified", epsilon=None))]
    fn new(
        m: u32,
        r: Vec<(i64, i64)>,
        t: Vec<(i64, i64)>,
        mode: &str,
        epsilon: Option<&Bound<'_, PyDict>>,
    ) -> PyResult<Frieze> {
        let model = model(m)?;
        let mode = MapMode::parse(mode)
            .ok_or_else(|| PyValueError::new_err(format!("unknown mode `{mode}`")))?;
        let r = to_diagonals(&model, r)?;
        let t = to_diagonals(&model, t)?;
        let choice = match (mode, epsilon) {
            (MapMode::Integer, _) => EpsilonChoice::ConstantOne,
            (_, None) => EpsilonChoice::Auto,
            (_, Some(dict)) => {
                let t_sorted: Vec<Diagonal> = {
                    let set: BTreeSet<Diagonal> = t.iter().copied().collect();
                    set.into_iter().collect()
                };
                let mut raw = std::collections::BTreeMap::new();
                for (key, value) in dict.iter() {
                    raw.insert(key.extract::<String>()?, value.extract::<String>()?);
                }
                let mut names: BTreeSet<String> = BTreeSet::new();
                for v in raw.values() {
                    for tok in v.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')) {
                        if tok.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                            names.insert(tok.to_string());
                        }
                    }
                }
                let vars = VarTable::new(names)
                    .map_err(|e| PyValueError::new_err(e.to_string()))?;
                let mut images = Vec::with_capacity(t_sorted.len());
                for obj in &t_sorted {
                    let text = raw.get(&obj.to_string()).ok_or_else(|| {
                        PyValueError::new_err(format!("epsilon: missing image for {obj}"))
                    })?;
                    let unit = LaurentPoly::parse(&vars, text)
                        .map_err(|e| PyValueError::new_err(e.to_string()))?
                        .as_signed_monomial()
                        .ok_or_else(|| {
                            PyValueError::new_err(format!(
                                "epsilon: image of {obj} must be a signed monomial"
                            ))
                        })?;
                    images.push(unit);
                }
                EpsilonChoice::Assignment { vars, images }
            }
        };
        let ctx = CCContext::new(model, mode, &r, &t, choice, None)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Frieze { ctx })
    }

    /// The value ring variables, in table order.
    fn variables(&self) -> Vec<String> {
        self.ctx.var_table().names().to_vec()
    }

    /// ρ of one object, as a canonical Laurent string.
    fn rho(&self, object: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.ctx.rho(self.parse_object(object)?).to_string())
    }

    /// ρ of a formal direct sum of objects.
    fn rho_sum(&self, objects: Vec<(i64, i64)>) -> PyResult<String> {
        let objs = to_diagonals(self.ctx.model(), objects)?;
        Ok(self.ctx.rho_object(&objs).to_string())
    }

    /// α of one object.
    fn alpha(&self, object: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.ctx.alpha(self.parse_object(object)?).to_string())
    }

    /// All `(object, value)` pairs, sorted by object.
    fn values(&self) -> Vec<(String, String)> {
        self.ctx
            .values()
            .map(|(d, v)| (d.to_string(), v.to_string()))
            .collect()
    }

    /// Run the frieze verification; true when every mesh defect is 0 or 1
    /// and the split/non-split dichotomy holds.
    fn check(&self) -> bool {
        self.ctx.frieze_check().pass
    }

    /// End objects of the meshes with defect 1.
    fn defect_meshes(&self) -> Vec<String> {
        self.ctx
            .frieze_check()
            .defect_one_ends()
            .iter()
            .map(|d| d.to_string())
            .collect()
    }

    /// The free rank of the quotient the exponential map factors through.
    fn free_rank(&self) -> usize {
        self.ctx.quotient().free_rank()
    }

    /// Hom-space dimension `dim C(x, y)` (0 or 1).
    fn hom_dim(&self, x: (i64, i64), y: (i64, i64)) -> PyResult<u8> {
        let model = self.ctx.model();
        Ok(self
            .ctx
            .engine()
            .hom_dim(to_diagonal(model, x)?, to_diagonal(model, y)?))
    }

    /// Is the composite of the basis morphisms `x -> y -> z` nonzero?
    fn composite_nonzero(
        &self,
        x: (i64, i64),
        y: (i64, i64),
        z: (i64, i64),
    ) -> PyResult<bool> {
        let model = self.ctx.model();
        self.ctx
            .engine()
            .composite_nonzero(
                to_diagonal(model, x)?,
                to_diagonal(model, y)?,
                to_diagonal(model, z)?,
            )
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Frieze(m={}, mode={}, |R|={}, |T|={})",
            self.ctx.model().size(),
            self.ctx.mode(),
            self.ctx.r_objects().len(),
            self.ctx.t_objects().len()
        )
    }
}

#[pymodule]
fn gfrieze_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(crossing, m)?)?;
    m.add_function(wrap_pyfunction!(suspend, m)?)?;
    m.add_function(wrap_pyfunction!(ar_mesh, m)?)?;
    m.add_function(wrap_pyfunction!(objects, m)?)?;
    m.add_class::<Frieze>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
