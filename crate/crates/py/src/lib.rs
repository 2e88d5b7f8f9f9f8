//! Python bindings: the two vector types plus the pipeline entry points.
//! Complex scalars cross the boundary as `(re, im)` tuples; reports come
//! back as plain dictionaries.

use num_complex::Complex64;
use pickfactor::beurling::{check_cyclic as core_check_cyclic, factor_sequence, FactorConfig};
use pickfactor::cnp::{factor_sequence_cnp, kernel_matrix as core_kernel_matrix, CnpSpace, SampledFunction};
use pickfactor::mult::{column_row_ratio, pick_test as core_pick_test, MultTuple};
use pickfactor::symfock::{evaluate_fock as core_evaluate, lift_min_norm as core_lift, mult_sym, SymVector};
use pickfactor::weakprod::{factor_weak_product, rep_cost as core_rep_cost, WeakProductRep};
use pickfactor::words::MultiIndex;
use pickfactor::Error as CoreError;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_complex(pair: (f64, f64)) -> Complex64 {
    Complex64::new(pair.0, pair.1)
}

fn from_complex(c: Complex64) -> (f64, f64) {
    (c.re, c.im)
}

fn point_from(coords: Vec<(f64, f64)>) -> Vec<Complex64> {
    coords.into_iter().map(to_complex).collect()
}

/// A polynomial in the truncated Drury-Arveson space.
#[pyclass(name = "SymVector", from_py_object)]
#[derive(Clone)]
struct PySymVector {
    inner: SymVector,
}

#[pymethods]
impl PySymVector {
    /// Build from (exponents, re, im) triples.
    #[staticmethod]
    fn from_terms(d: u32, degree: u32, terms: Vec<(Vec<u32>, f64, f64)>) -> PyResult<Self> {
        let converted = terms
            .into_iter()
            .map(|(n, re, im)| (MultiIndex::new(n), Complex64::new(re, im)));
        Ok(PySymVector { inner: SymVector::from_terms(d, degree, converted).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySymVector {
            inner: serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn d(&self) -> u32 {
        self.inner.d()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn da_norm(&self) -> f64 {
        self.inner.da_norm()
    }

    fn coeff(&self, n: Vec<u32>) -> (f64, f64) {
        from_complex(self.inner.coeff(&MultiIndex::new(n)))
    }

    fn terms(&self) -> Vec<(Vec<u32>, f64, f64)> {
        self.inner
            .terms()
            .map(|(n, c)| (n.exponents().to_vec(), c.re, c.im))
            .collect()
    }

    fn point_eval(&self, z: Vec<(f64, f64)>) -> PyResult<(f64, f64)> {
        Ok(from_complex(self.inner.point_eval(&point_from(z)).map_err(err)?))
    }

    fn mul(&self, other: &PySymVector, dout: u32) -> PyResult<PySymVector> {
        Ok(PySymVector { inner: mult_sym(&self.inner, &other.inner, dout).map_err(err)? })
    }

    fn add(&self, other: &PySymVector) -> PyResult<PySymVector> {
        Ok(PySymVector { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn scale(&self, re: f64, im: f64) -> PySymVector {
        PySymVector { inner: self.inner.scale(Complex64::new(re, im)) }
    }

    fn __repr__(&self) -> String {
        format!("SymVector(d={}, degree={}, terms={})", self.inner.d(), self.inner.degree(), self.inner.terms().count())
    }
}

/// A vector in the truncated full Fock space.
#[pyclass(name = "FreeVector", from_py_object)]
#[derive(Clone)]
struct PyFreeVector {
    inner: pickfactor::FreeVector,
}

#[pymethods]
impl PyFreeVector {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyFreeVector {
            inner: serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn d(&self) -> u32 {
        self.inner.d()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn coeff(&self, letters: Vec<u32>) -> PyResult<(f64, f64)> {
        let word = pickfactor::Word::new(letters, self.inner.d()).map_err(err)?;
        Ok(from_complex(self.inner.coeff(&word)))
    }

    fn terms(&self) -> Vec<(Vec<u32>, f64, f64)> {
        self.inner
            .terms()
            .map(|(w, c)| (w.letters().to_vec(), c.re, c.im))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("FreeVector(d={}, degree={}, terms={})", self.inner.d(), self.inner.degree(), self.inner.support_len())
    }
}

/// Isometric minimal-norm lift into Fock space.
#[pyfunction]
#[pyo3(signature = (h, cap = 200_000))]
fn lift_min_norm(h: &PySymVector, cap: usize) -> PyResult<PyFreeVector> {
    Ok(PyFreeVector { inner: core_lift(&h.inner, cap).map_err(err)? })
}

/// Symmetrization (evaluation on commuting arguments).
#[pyfunction]
fn evaluate_fock(v: &PyFreeVector) -> PySymVector {
    PySymVector { inner: core_evaluate(&v.inner) }
}

fn diagnostics_dict<'py>(
    py: Python<'py>,
    d: &pickfactor::beurling::T1Diagnostics,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("column_norm", d.column_norm)?;
    dict.set_item("F_norm_sq", d.f_norm_sq)?;
    dict.set_item("input_norm_sq", d.input_norm_sq)?;
    dict.set_item("max_residual", d.max_residual)?;
    dict.set_item("wandering_gap", d.wandering_gap)?;
    dict.set_item("cyclic_residual", d.cyclic_residual)?;
    Ok(dict)
}

/// Factor a sequence as f_n = phi_n F; returns (phi, F, diagnostics).
#[pyfunction]
#[pyo3(name = "factor_sequence", signature = (functions, dm, cap = 200_000))]
fn factor_sequence_py(
    py: Python<'_>,
    functions: Vec<PySymVector>,
    dm: u32,
    cap: usize,
) -> PyResult<(Vec<PySymVector>, PySymVector, Py<PyDict>)> {
    let fs: Vec<SymVector> = functions.into_iter().map(|f| f.inner).collect();
    let config = FactorConfig { basis_cap: cap, ..FactorConfig::default() };
    let out = factor_sequence(&fs, dm, &config).map_err(err)?;
    let phi = out.phi.into_iter().map(|p| PySymVector { inner: p }).collect();
    let diagnostics = diagnostics_dict(py, &out.diagnostics)?.into();
    Ok((phi, PySymVector { inner: out.big_f }, diagnostics))
}

/// Factor h = sum f_i g_i as a single product; returns (f, g, m, certificates).
#[pyfunction]
#[pyo3(name = "factor_weak_product", signature = (pairs, dm, cap = 200_000))]
fn factor_weak_product_py(
    py: Python<'_>,
    pairs: Vec<(PySymVector, PySymVector)>,
    dm: u32,
    cap: usize,
) -> PyResult<(PySymVector, PySymVector, PySymVector, Py<PyDict>)> {
    let rep = WeakProductRep::new(pairs.into_iter().map(|(f, g)| (f.inner, g.inner)).collect())
        .map_err(err)?;
    let config = FactorConfig { basis_cap: cap, ..FactorConfig::default() };
    let out = factor_weak_product(&rep, dm, &config).map_err(err)?;
    let certificates = PyDict::new(py);
    certificates.set_item("residual", out.certificates.residual)?;
    certificates.set_item("product_norm", out.certificates.product_norm)?;
    certificates.set_item("rep_cost", out.certificates.rep_cost)?;
    certificates.set_item("ratio", out.certificates.ratio)?;
    certificates.set_item("m_norm_bound", out.certificates.m_norm_bound)?;
    Ok((
        PySymVector { inner: out.f },
        PySymVector { inner: out.g },
        PySymVector { inner: out.m },
        certificates.into(),
    ))
}

/// Representation cost sum ||f_i|| ||g_i||.
#[pyfunction]
fn rep_cost(pairs: Vec<(PySymVector, PySymVector)>) -> PyResult<f64> {
    let rep = WeakProductRep::new(pairs.into_iter().map(|(f, g)| (f.inner, g.inner)).collect())
        .map_err(err)?;
    Ok(core_rep_cost(&rep))
}

/// Column and row multiplier norms at a truncation degree.
#[pyfunction]
fn column_row(functions: Vec<PySymVector>, degree: u32) -> PyResult<(f64, f64, f64)> {
    let tuple = MultTuple::new(functions.into_iter().map(|f| f.inner).collect()).map_err(err)?;
    let report = column_row_ratio(&tuple, degree).map_err(err)?;
    Ok((report.column_norm, report.row_norm, report.ratio))
}

/// Pick positivity certificate for ||phi||_Mult <= bound on a point set.
#[pyfunction]
fn pick_test(phi: &PySymVector, points: Vec<Vec<(f64, f64)>>, bound: f64) -> PyResult<(bool, f64)> {
    let converted: Vec<Vec<Complex64>> = points.into_iter().map(point_from).collect();
    let report = core_pick_test(&phi.inner, &converted, bound).map_err(err)?;
    Ok((report.psd, report.min_eigenvalue))
}

/// Cyclicity residual of f at the given shift depth.
#[pyfunction]
fn check_cyclic(f: &PySymVector, depth: u32) -> PyResult<f64> {
    core_check_cyclic(&f.inner, depth).map_err(err)
}

/// Kernel Gram matrix of a CNP space given as JSON.
#[pyfunction]
fn kernel_matrix(space_json: &str) -> PyResult<Vec<Vec<(f64, f64)>>> {
    let space: CnpSpace =
        serde_json::from_str(space_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let gram = core_kernel_matrix(&space);
    Ok((0..space.len())
        .map(|i| (0..space.len()).map(|j| from_complex(gram[(i, j)])).collect())
        .collect())
}

/// Factor sampled functions over a CNP space; returns a report dictionary.
#[pyfunction]
#[pyo3(signature = (space_json, coeffs, dm = 3, ext_degree = 16))]
fn cnp_factor(
    py: Python<'_>,
    space_json: &str,
    coeffs: Vec<Vec<(f64, f64)>>,
    dm: u32,
    ext_degree: u32,
) -> PyResult<Py<PyDict>> {
    let space: CnpSpace =
        serde_json::from_str(space_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let functions: Vec<SampledFunction> = coeffs
        .into_iter()
        .map(|c| {
            SampledFunction::from_coeffs(space.clone(), c.into_iter().map(to_complex).collect())
        })
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let config = FactorConfig::default();
    let out = factor_sequence_cnp(&space, &functions, dm, ext_degree, &config).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item(
        "phi_values",
        out.phi
            .iter()
            .map(|s| s.values().into_iter().map(from_complex).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )?;
    dict.set_item(
        "F_values",
        out.big_f.values().into_iter().map(from_complex).collect::<Vec<_>>(),
    )?;
    dict.set_item("max_pointwise_error", out.max_pointwise_error)?;
    dict.set_item("extension_bounds", out.extension_bounds.clone())?;
    dict.set_item("diagnostics", diagnostics_dict(py, &out.diagnostics)?)?;
    Ok(dict.into())
}

#[pymodule]
fn pickfactor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySymVector>()?;
    m.add_class::<PyFreeVector>()?;
    m.add_function(wrap_pyfunction!(lift_min_norm, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_fock, m)?)?;
    m.add_function(wrap_pyfunction!(factor_sequence_py, m)?)?;
    m.add_function(wrap_pyfunction!(factor_weak_product_py, m)?)?;
    m.add_function(wrap_pyfunction!(rep_cost, m)?)?;
    m.add_function(wrap_pyfunction!(column_row, m)?)?;
    m.add_function(wrap_pyfunction!(pick_test, m)?)?;
    m.add_function(wrap_pyfunction!(check_cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(cnp_factor, m)?)?;
    Ok(())
}
