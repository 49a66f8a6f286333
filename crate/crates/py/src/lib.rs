//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs may be int, Fraction, decimal strings or sexagesimal strings.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;

use xi_core::circle::{CircleEngine, Stage};
use xi_core::oracle::{ExactRational, Measure};
use xi_core::ptolemy;
use xi_core::registry::{parse_corpus, Registry};
use xi_core::sexagesimal::{self as sex, FloatingSexNumber, PinnedSexNumber};
use xi_core::tables::{self, Layout, TableName};
use xi_core::verify::verify_all;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.numer().clone(), q.denom().clone()))
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    let text = if obj.is_instance_of::<PyString>() { obj.extract::<String>()? } else { obj.str()?.to_string() };
    if text.contains(';') || text.contains(',') {
        Ok(text.parse::<PinnedSexNumber>().map_err(value_error)?.to_rational())
    } else {
        text.parse::<ExactRational>().map_err(value_error)
    }
}

fn stage(name: &str) -> PyResult<Stage> {
    name.parse().map_err(PyValueError::new_err)
}

/// Digit string with no magnitude, e.g. `Floating("1;2;30")`.
#[pyclass(name = "Floating", module = "pyxi", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFloating(FloatingSexNumber);

#[pymethods]
impl PyFloating {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyFloating).map_err(value_error)
    }

    #[staticmethod]
    fn from_rational(q: &Bound<'_, PyAny>) -> PyResult<Self> {
        FloatingSexNumber::from_rational(&rational(q)?).map(PyFloating).map_err(value_error)
    }

    #[getter]
    fn digits(&self) -> Vec<u8> {
        self.0.digits().to_vec()
    }

    fn pin(&self, exponent: i32) -> PyPinned {
        PyPinned(self.0.pin(exponent))
    }

    fn reading<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.reading())
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyFloating(self.0.mul(&other.0))
    }

    fn reciprocal(&self) -> PyResult<Self> {
        self.0.reciprocal().map(PyFloating).map_err(|e| PyArithmeticError::new_err(e.to_string()))
    }

    fn padded(&self) -> String {
        self.0.format_padded()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Floating('{}')", self.0)
    }
}

/// Sexagesimal number with a fixed radix point, e.g. `Pinned("1,2;30")`.
#[pyclass(name = "Pinned", module = "pyxi", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPinned(PinnedSexNumber);

#[pymethods]
impl PyPinned {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPinned).map_err(value_error)
    }

    /// Exact expansion; fails when the expansion does not terminate.
    #[staticmethod]
    fn from_rational(q: &Bound<'_, PyAny>) -> PyResult<Self> {
        PinnedSexNumber::from_terminating(&rational(q)?).map(PyPinned).map_err(value_error)
    }

    /// Truncated expansion with at most `places` fractional places; returns
    /// `(number, truncated)`.
    #[staticmethod]
    fn expand(q: &Bound<'_, PyAny>, places: i64) -> PyResult<(Self, bool)> {
        let e = sex::from_rational(&rational(q)?, places).map_err(value_error)?;
        Ok((PyPinned(e.number), e.truncated))
    }

    #[getter]
    fn digits(&self) -> Vec<u8> {
        self.0.digits().to_vec()
    }

    #[getter]
    fn integer_places(&self) -> i32 {
        self.0.integer_places()
    }

    fn to_floating(&self) -> PyFloating {
        PyFloating(self.0.to_floating())
    }

    fn value<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.to_rational())
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPinned(self.0.add(&other.0))
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPinned(self.0.mul(&other.0))
    }

    fn half(&self) -> Self {
        PyPinned(self.0.half())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pinned('{}')", self.0)
    }
}

#[pyclass(name = "Measure", module = "pyxi", frozen, get_all)]
struct PyMeasure {
    value: Py<PyAny>,
    exact: bool,
}

#[pymethods]
impl PyMeasure {
    fn __float__(&self, py: Python<'_>) -> PyResult<f64> {
        self.value.bind(py).call_method0("__float__")?.extract()
    }

    fn __repr__(&self, py: Python<'_>) -> PyResult<String> {
        let v = self.value.bind(py).str()?;
        Ok(if self.exact { format!("Measure({v})") } else { format!("Measure(~{v})") })
    }
}

fn measure(py: Python<'_>, m: Measure) -> PyResult<PyMeasure> {
    Ok(PyMeasure { value: fraction(py, &m.value)?.unbind(), exact: m.exact })
}

#[pyfunction]
fn mul(a: &str, b: &str) -> PyResult<String> {
    let a: FloatingSexNumber = a.parse().map_err(value_error)?;
    let b: FloatingSexNumber = b.parse().map_err(value_error)?;
    Ok(a.mul(&b).to_string())
}

#[pyfunction]
fn reciprocal(a: &str) -> PyResult<String> {
    let a: FloatingSexNumber = a.parse().map_err(value_error)?;
    a.reciprocal().map(|r| r.to_string()).map_err(|e| PyArithmeticError::new_err(e.to_string()))
}

#[pyfunction]
fn is_regular(q: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(sex::is_regular(&rational(q)?))
}

macro_rules! circle_fn {
    ($name:ident, $method:ident, $($arg:ident),+) => {
        #[pyfunction]
        #[pyo3(signature = ($($arg),+, stage = "2"))]
        fn $name(py: Python<'_>, $($arg: &Bound<'_, PyAny>),+, stage: &str) -> PyResult<PyMeasure> {
            let m = CircleEngine::builtin().$method($(&rational($arg)?),+, self::stage(stage)?).map_err(value_error)?;
            measure(py, m)
        }
    };
}

circle_fn!(circumference, circumference, diameter);
circle_fn!(diameter_from_circumference, diameter_from_circumference, circumference);
circle_fn!(arc_length, arc_length, sectors, radius);
circle_fn!(sector_count, sector_count, arc, radius);
circle_fn!(area_from_circumference, area_from_circumference, circumference);

#[pyfunction]
fn perimeter_from_area(py: Python<'_>, area: &Bound<'_, PyAny>) -> PyResult<PyMeasure> {
    measure(py, CircleEngine::builtin().perimeter_from_area(&rational(area)?).map_err(value_error)?)
}

#[pyfunction]
fn sagitta(py: Python<'_>, radius: &Bound<'_, PyAny>, chord: &Bound<'_, PyAny>) -> PyResult<PyMeasure> {
    measure(py, CircleEngine::builtin().sagitta(&rational(radius)?, &rational(chord)?).map_err(value_error)?)
}

#[pyfunction]
fn chord_from_sagitta(py: Python<'_>, radius: &Bound<'_, PyAny>, sagitta: &Bound<'_, PyAny>) -> PyResult<PyMeasure> {
    measure(py, CircleEngine::builtin().chord_from_sagitta(&rational(radius)?, &rational(sagitta)?).map_err(value_error)?)
}

/// `(parts, nearest whole count)` of the circle cut off by a chord.
#[pyfunction]
#[pyo3(signature = (chord, radius, stage = "2"))]
fn circle_fraction_from_chord(
    py: Python<'_>,
    chord: &Bound<'_, PyAny>,
    radius: &Bound<'_, PyAny>,
    stage: &str,
) -> PyResult<(PyMeasure, Py<PyAny>)> {
    let f = CircleEngine::builtin()
        .circle_fraction_from_chord(&rational(chord)?, &rational(radius)?, self::stage(stage)?)
        .map_err(value_error)?;
    Ok((measure(py, f.parts)?, f.nearest.into_pyobject(py)?.into_any().unbind()))
}

/// Chord reading in arcminutes to a `D°MM'SS"` string.
#[pyfunction]
fn chord_minutes_to_dms(arcminutes: &Bound<'_, PyAny>) -> PyResult<String> {
    ptolemy::chord_minutes_to_dms(&rational(arcminutes)?).map(|a| a.to_string()).map_err(value_error)
}

fn registry(corpus: Option<&str>) -> PyResult<Registry> {
    match corpus {
        None => Ok(Registry::builtin()),
        Some(text) => parse_corpus(text, &Registry::builtin()).map(|(r, _)| r).map_err(value_error),
    }
}

type ReportRow = (String, String, String, String);

/// Runs every check; returns `(ok, [(check_id, status, expected, actual)])`.
/// `corpus` is corpus text merged over the built-in coefficients.
#[pyfunction]
#[pyo3(signature = (corpus = None))]
fn verify(corpus: Option<&str>) -> PyResult<(bool, Vec<ReportRow>)> {
    let report = verify_all(&registry(corpus)?, &[]);
    let rows = report
        .entries()
        .iter()
        .map(|e| (e.check_id.clone(), e.status.label().to_string(), e.expected.clone(), e.actual.clone()))
        .collect();
    Ok((report.ok(), rows))
}

#[pyfunction]
#[pyo3(signature = (name, records = false))]
fn table(name: &str, records: bool) -> PyResult<String> {
    let name: TableName = name.parse().map_err(value_error)?;
    let layout = if records { Layout::Records } else { Layout::Text };
    tables::build(name, &Registry::builtin(), layout).map_err(value_error)
}

#[pymodule]
fn pyxi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFloating>()?;
    m.add_class::<PyPinned>()?;
    m.add_class::<PyMeasure>()?;
    m.add_function(wrap_pyfunction!(mul, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocal, m)?)?;
    m.add_function(wrap_pyfunction!(is_regular, m)?)?;
    m.add_function(wrap_pyfunction!(circumference, m)?)?;
    m.add_function(wrap_pyfunction!(diameter_from_circumference, m)?)?;
    m.add_function(wrap_pyfunction!(arc_length, m)?)?;
    m.add_function(wrap_pyfunction!(sector_count, m)?)?;
    m.add_function(wrap_pyfunction!(area_from_circumference, m)?)?;
    m.add_function(wrap_pyfunction!(perimeter_from_area, m)?)?;
    m.add_function(wrap_pyfunction!(sagitta, m)?)?;
    m.add_function(wrap_pyfunction!(chord_from_sagitta, m)?)?;
    m.add_function(wrap_pyfunction!(circle_fraction_from_chord, m)?)?;
    m.add_function(wrap_pyfunction!(chord_minutes_to_dms, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    Ok(())
}
