//! Python bindings: `Polynomial`, `Zeta` and a few module-level functions.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use curvezeta::algebra::{BiPoly, PrimeField};
use curvezeta::cli::{self, parse_input, render, JobSpec, DEFAULT_NAIVE_BUDGET};
use curvezeta::corrections::SingularityAnalysis;
use curvezeta::polytope::NewtonPolygon;
use curvezeta::trace::{count_plane_model, TraceParams};
use curvezeta::zeta::{compute_zeta_with, validate, CheckStatus, ZetaComputation};
use curvezeta::Error;

create_exception!(curvezeta_py, CurveZetaError, PyException);
create_exception!(curvezeta_py, PreconditionError, CurveZetaError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotPrime(_) | Error::InvalidArgument(_) | Error::Syntax { .. } | Error::Io(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Precondition(_) => PreconditionError::new_err(e.to_string()),
        _ => CurveZetaError::new_err(e.to_string()),
    }
}

/// A polynomial F(x, y) over F_p.
#[pyclass(module = "curvezeta_py", frozen, from_py_object)]
#[derive(Clone)]
struct Polynomial {
    poly: BiPoly<PrimeField>,
}

#[pymethods]
impl Polynomial {
    /// Parses an expression such as "y^2 - x^3 - x - 1" or `i j c` lines.
    #[new]
    fn new(p: u64, text: &str) -> PyResult<Self> {
        let field = PrimeField::new(p).map_err(to_py)?;
        let parsed = parse_input(text, field).map_err(to_py)?;
        Ok(Polynomial { poly: parsed.poly })
    }

    /// Builds a polynomial from (i, j, c) triples meaning c x^i y^j.
    #[staticmethod]
    fn from_terms(p: u64, terms: Vec<(u32, u32, i64)>) -> PyResult<Self> {
        let field = PrimeField::new(p).map_err(to_py)?;
        Ok(Polynomial {
            poly: BiPoly::from_int_terms(field, &terms),
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.poly.ring().p()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.poly.total_degree()
    }

    fn terms(&self) -> Vec<(u32, u32, u64)> {
        self.poly.terms().map(|(&(i, j), &c)| (i, j, c)).collect()
    }

    /// Vertices of the Newton polygon, counterclockwise.
    fn newton_polygon(&self) -> PyResult<Vec<(i64, i64)>> {
        Ok(NewtonPolygon::of(&self.poly).map_err(to_py)?.vertices().to_vec())
    }

    /// Number of interior lattice points of the Newton polygon, an upper
    /// bound for the genus.
    fn baker_bound(&self) -> PyResult<u64> {
        Ok(NewtonPolygon::of(&self.poly).map_err(to_py)?.interior_lattice_count())
    }

    fn genus(&self) -> PyResult<u64> {
        SingularityAnalysis::new(&self.poly)
            .and_then(|a| a.genus())
            .map_err(to_py)
    }

    /// |X̃(F_{p^r})| - |X(F_{p^r})| for r = 1..=d.
    fn corrections(&self, d: usize) -> PyResult<Vec<i64>> {
        curvezeta::corrections::corrections(&self.poly, d).map_err(to_py)
    }

    /// Plane-model counts modulo p^λ for r = 1..=max_r.
    #[pyo3(signature = (max_r, lam))]
    fn count_plane_model(&self, max_r: usize, lam: u32) -> PyResult<Vec<u64>> {
        let params = TraceParams::with_lambda(self.p(), lam).map_err(to_py)?;
        Ok(count_plane_model(&self.poly, &params, max_r).map_err(to_py)?.counts)
    }

    /// Plane-model count over F_{p^r} by enumeration.
    #[pyo3(signature = (r, budget = DEFAULT_NAIVE_BUDGET))]
    fn naive_count(&self, r: usize, budget: u128) -> PyResult<u64> {
        cli::naive_count(&self.poly, r, budget).map_err(to_py)
    }

    #[pyo3(signature = (lam = None))]
    fn zeta(&self, lam: Option<u32>) -> PyResult<Zeta> {
        let comp = compute_zeta_with(&self.poly, lam).map_err(to_py)?;
        Ok(Zeta {
            poly: self.poly.clone(),
            comp,
        })
    }

    fn __str__(&self) -> String {
        render(&self.poly)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({}, {:?})", self.p(), render(&self.poly))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

/// The zeta function of the nonsingular model of a curve.
#[pyclass(module = "curvezeta_py", frozen)]
struct Zeta {
    poly: BiPoly<PrimeField>,
    comp: ZetaComputation,
}

#[pymethods]
impl Zeta {
    #[getter]
    fn q(&self) -> u64 {
        self.comp.zeta.q
    }

    #[getter]
    fn genus(&self) -> u64 {
        self.comp.zeta.genus
    }

    /// Coefficients a_0..a_{2g} of P(T).
    #[getter]
    fn numerator(&self) -> Vec<i128> {
        self.comp.zeta.numerator.clone()
    }

    /// N_1..N_g.
    #[getter]
    fn counts(&self) -> Vec<i128> {
        self.comp.counts.counts.clone()
    }

    /// Seconds spent on powers, traces and corrections.
    #[getter]
    fn timings<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        let t = self.comp.timings;
        d.set_item("powers", t.powers.as_secs_f64())?;
        d.set_item("traces", t.traces.as_secs_f64())?;
        d.set_item("corrections", t.corrections.as_secs_f64())?;
        Ok(d)
    }

    fn predicted_count(&self, r: usize) -> PyResult<i128> {
        if r == 0 {
            return Err(PyValueError::new_err("r must be at least 1"));
        }
        Ok(self.comp.zeta.predicted_count(r))
    }

    /// Runs the self-checks; returns (passed, [(name, r, predicted,
    /// observed, status)]).
    #[pyo3(signature = (naive_budget = DEFAULT_NAIVE_BUDGET))]
    fn validate(&self, naive_budget: u128) -> (bool, Vec<(String, usize, i128, Option<i128>, &'static str)>) {
        let report = validate(&self.poly, &self.comp, naive_budget);
        let checks = report
            .checks
            .iter()
            .map(|c| {
                let status = match c.status {
                    CheckStatus::Passed => "passed",
                    CheckStatus::Failed => "failed",
                    CheckStatus::Skipped => "skipped",
                };
                (c.name.clone(), c.r, c.predicted, c.observed, status)
            })
            .collect();
        (report.passed(), checks)
    }

    fn __repr__(&self) -> String {
        format!("Zeta(q={}, genus={}, P={})", self.q(), self.genus(), self.comp.zeta.render())
    }
}

/// Runs a CLI job; returns (exit_code, stdout, stderr).
#[pyfunction]
#[pyo3(signature = (command, p, poly, json = true, verify = true, max_r = None, lam = None))]
fn run(
    command: &str,
    p: u64,
    poly: &str,
    json: bool,
    verify: bool,
    max_r: Option<usize>,
    lam: Option<u32>,
) -> PyResult<(i32, String, String)> {
    let command = match command {
        "zeta" => cli::Command::Zeta,
        "count" => cli::Command::Count,
        "verify" => cli::Command::Verify,
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    };
    let mut job = JobSpec::new(command, p, poly);
    job.json = json;
    job.verify = verify;
    job.max_r = max_r;
    job.lambda = lam;
    let out = cli::run(&job);
    Ok((out.code, out.stdout, out.stderr))
}

#[pymodule]
fn curvezeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polynomial>()?;
    m.add_class::<Zeta>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("CurveZetaError", m.py().get_type::<CurveZetaError>())?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    Ok(())
}
