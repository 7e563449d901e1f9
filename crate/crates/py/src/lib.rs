//! Python bindings. Counts come back as Python ints of arbitrary size.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use wordstat::query::{self, Engine, Family};
use wordstat::series::{build_ak_series, build_bk_series};
use wordstat::verify::{run_suite, Suite, VerifyOptions};
use wordstat::{formulas, identities, oracle, word};

create_exception!(wordstat, BudgetExceededError, PyRuntimeError);

fn to_py(e: wordstat::Error) -> PyErr {
    match e {
        wordstat::Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for wordstat::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

#[pyclass(frozen, name = "Partition", module = "wordstat")]
struct Partition {
    inner: word::BlockPartition,
}

#[pymethods]
impl Partition {
    /// Block 1 is [t], block 2 the remaining letters.
    #[staticmethod]
    fn threshold(k: u32, t: u32) -> PyResult<Self> {
        Ok(Partition {
            inner: word::BlockPartition::threshold(k, t).py_err()?,
        })
    }

    /// Block r holds letters congruent to r mod s (block s the multiples of s).
    #[staticmethod]
    fn mod_residue(k: u32, s: u32) -> PyResult<Self> {
        Ok(Partition {
            inner: word::BlockPartition::mod_residue(k, s).py_err()?,
        })
    }

    /// `labels[i]` is the 1-based block of letter `i + 1`.
    #[staticmethod]
    fn from_blocks(labels: Vec<u32>) -> PyResult<Self> {
        Ok(Partition {
            inner: word::BlockPartition::from_blocks(&labels).py_err()?,
        })
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    #[getter]
    fn t(&self) -> u32 {
        self.inner.t()
    }

    fn labels(&self) -> Vec<u32> {
        self.inner.labels()
    }

    fn block(&self, letter: u32) -> PyResult<u32> {
        self.inner.block(letter).py_err()
    }

    fn __repr__(&self) -> String {
        format!(
            "Partition(k={}, labels={:?})",
            self.inner.k(),
            self.inner.labels()
        )
    }
}

#[pyclass(frozen, name = "StatVector", module = "wordstat")]
struct StatVector {
    inner: word::StatVector,
}

#[pymethods]
impl StatVector {
    /// Statistic `stat` ("des", "ris", "lev" or "cnt") of 1-based `block`.
    fn get(&self, block: u32, stat: &str) -> PyResult<u32> {
        let st: word::Stat = stat.parse().py_err()?;
        if block == 0 || block > self.inner.t() {
            return Err(PyValueError::new_err(format!(
                "block {block} out of range 1..={}",
                self.inner.t()
            )));
        }
        Ok(self.inner.get(block, st))
    }

    /// One `(des, ris, lev, cnt)` tuple per block.
    fn blocks(&self) -> Vec<(u32, u32, u32, u32)> {
        block_tuples(&self.inner)
    }

    fn __eq__(&self, other: &StatVector) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("StatVector({})", self.inner)
    }
}

fn block_tuples(sv: &word::StatVector) -> Vec<(u32, u32, u32, u32)> {
    sv.blocks()
        .iter()
        .map(|b| (b.des, b.ris, b.lev, b.cnt))
        .collect()
}

#[pyclass(frozen, name = "Word", module = "wordstat")]
struct Word {
    inner: word::Word,
}

#[pymethods]
impl Word {
    #[new]
    fn new(letters: Vec<u32>, k: u32) -> PyResult<Self> {
        Ok(Word {
            inner: word::Word::new(letters, k).py_err()?,
        })
    }

    #[getter]
    fn letters(&self) -> Vec<u32> {
        self.inner.letters().to_vec()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn complement(&self) -> Word {
        Word {
            inner: word::complement(&self.inner),
        }
    }

    fn stat_vector(&self, partition: &Partition) -> PyResult<StatVector> {
        Ok(StatVector {
            inner: word::stat_vector(&self.inner, &partition.inner).py_err()?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?}, k={})", self.inner.letters(), self.inner.k())
    }
}

fn required<'py, T: FromPyObjectOwned<'py>>(
    params: Option<&Bound<'py, PyDict>>,
    key: &str,
) -> PyResult<T> {
    let dict = params.ok_or_else(|| PyValueError::new_err(format!("missing parameter '{key}'")))?;
    match dict.get_item(key)? {
        Some(v) => v.extract().map_err(Into::into),
        None => Err(PyValueError::new_err(format!("missing parameter '{key}'"))),
    }
}

fn optional_set(params: Option<&Bound<'_, PyDict>>, key: &str) -> PyResult<BTreeSet<u32>> {
    match params.map(|d| d.get_item(key)).transpose()?.flatten() {
        Some(v) => Ok(v.extract::<Vec<u32>>()?.into_iter().collect()),
        None => Ok(BTreeSet::new()),
    }
}

fn family_from(name: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Family> {
    Ok(match name {
        "levels-threshold" => Family::LevelsThreshold {
            k: required(params, "k")?,
            t: required(params, "t")?,
        },
        "levels-blocks" => Family::LevelsBlocks {
            sizes: required(params, "sizes")?,
        },
        "des-le" => Family::DesLe {
            k: required(params, "k")?,
            t: required(params, "t")?,
        },
        "des-gt" => Family::DesGt {
            k: required(params, "k")?,
            t: required(params, "t")?,
        },
        "des-mod" => Family::DesMod {
            s: required(params, "s")?,
            alphabet: required(params, "alphabet")?,
            r: required(params, "r")?,
        },
        "hall-remmel" => Family::HallRemmel {
            rho: required(params, "rho")?,
            x: optional_set(params, "x")?,
            y: optional_set(params, "y")?,
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown family '{other}'; expected one of {:?}",
                Family::NAMES
            )))
        }
    })
}

/// Words (or rearrangements) of length `n` whose statistic equals `value`.
/// Family parameters are keyword arguments, e.g.
/// `count("des-mod", 2, 1, s=2, alphabet=4, r=1)`.
#[pyfunction]
#[pyo3(signature = (family, n, value, engine = "closed-form", **params))]
fn count(
    family: &str,
    n: u32,
    value: &Bound<'_, PyAny>,
    engine: &str,
    params: Option<&Bound<'_, PyDict>>,
) -> PyResult<BigInt> {
    let f = family_from(family, params)?;
    let value: Vec<u32> = match value.extract::<u32>() {
        Ok(v) => vec![v],
        Err(_) => value.extract()?,
    };
    let engine: Engine = engine.parse().py_err()?;
    query::count(&f, n, &value, engine).py_err()
}

/// Full distribution as a dict from statistic value (an int, or a tuple for
/// levels-blocks) to count.
#[pyfunction]
#[pyo3(signature = (family, n, engine = "closed-form", **params))]
fn table<'py>(
    py: Python<'py>,
    family: &str,
    n: u32,
    engine: &str,
    params: Option<&Bound<'py, PyDict>>,
) -> PyResult<Bound<'py, PyDict>> {
    let f = family_from(family, params)?;
    let engine: Engine = engine.parse().py_err()?;
    let t = query::table(&f, n, engine).py_err()?;
    let out = PyDict::new(py);
    for (key, c) in t.rows {
        if f.arity() == 1 {
            out.set_item(key[0], c)?;
        } else {
            out.set_item(PyTuple::new(py, key)?, c)?;
        }
    }
    Ok(out)
}

/// Joint distribution over `[k]^n`: dict from per-block `(des, ris, lev, cnt)`
/// tuples to counts. `method` is "transfer" or "brute".
#[pyfunction]
#[pyo3(signature = (k, n, partition, method = "transfer"))]
fn distribution<'py>(
    py: Python<'py>,
    k: u32,
    n: u32,
    partition: &Partition,
    method: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let dist = match method {
        "transfer" => oracle::transfer_distribution(k, n, &partition.inner),
        "brute" => oracle::brute_distribution(k, n, &partition.inner),
        other => return Err(PyValueError::new_err(format!("unknown method '{other}'"))),
    }
    .py_err()?;
    let out = PyDict::new(py);
    for (sv, c) in dist.entries() {
        out.set_item(PyTuple::new(py, block_tuples(sv))?, BigInt::from(c.clone()))?;
    }
    Ok(out)
}

/// Series coefficients through `order`: returns `(variable names, coefficients)`
/// where each coefficient maps an exponent tuple to an int.
#[pyfunction]
#[pyo3(signature = (k, partition, order, gf = "A", track = Vec::new(), q = "common"))]
fn series<'py>(
    py: Python<'py>,
    k: u32,
    partition: &Partition,
    order: usize,
    gf: &str,
    track: Vec<String>,
    q: &str,
) -> PyResult<(Vec<String>, Vec<Bound<'py, PyDict>>)> {
    let q = match q {
        "none" => wordstat::QTracking::Untracked,
        "common" => wordstat::QTracking::Common,
        "per-block" => wordstat::QTracking::PerBlock,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown q tracking '{other}'"
            )))
        }
    };
    let mut spec = wordstat::TrackingSpec::untracked(partition.inner.t()).with_q(q);
    for name in &track {
        spec = spec.track_named(name).py_err()?;
    }
    let s = match gf {
        "A" | "a" => build_ak_series(k, &partition.inner, &spec, order),
        "B" | "b" => build_bk_series(k, &partition.inner, &spec, order),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown generating function '{other}'"
            )))
        }
    }
    .py_err()?;
    let coeffs: Vec<Bound<'py, PyDict>> = s
        .coefficients()
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            for (e, v) in c.terms() {
                d.set_item(PyTuple::new(py, e)?, v.clone())?;
            }
            Ok(d)
        })
        .collect::<PyResult<_>>()?;
    Ok((s.vars().names().to_vec(), coeffs))
}

#[pyfunction]
fn count_levels_threshold(k: u64, t: u64, n: u64, s: u64) -> PyResult<BigInt> {
    formulas::count_levels_threshold(k, t, n, s).py_err()
}

#[pyfunction]
fn count_levels_blocks(sizes: Vec<u64>, n: u64, targets: Vec<u64>) -> PyResult<BigInt> {
    formulas::count_levels_blocks(&sizes, n, &targets).py_err()
}

#[pyfunction]
fn count_des_le(k: u64, t: u64, n: u64, s: u64) -> PyResult<BigInt> {
    formulas::count_des_le(k, t, n, s).py_err()
}

#[pyfunction]
fn count_des_gt(k: u64, t: u64, n: u64, s: u64) -> PyResult<BigInt> {
    formulas::count_des_gt(k, t, n, s).py_err()
}

#[pyfunction]
fn count_des_mod(s: u64, alphabet: u64, r: u64, n: u64, p: u64) -> PyResult<BigInt> {
    Ok(formulas::count_des_mod(s, alphabet, r, n, p)
        .py_err()?
        .value)
}

#[pyfunction]
#[pyo3(signature = (rho, x, y, s))]
fn hall_remmel_count(
    rho: Vec<u64>,
    x: BTreeSet<u32>,
    y: BTreeSet<u32>,
    s: u64,
) -> PyResult<BigInt> {
    let m = rho.len() as u32;
    if let Some(bad) = x.iter().chain(&y).find(|&&l| l == 0 || l > m) {
        return Err(PyValueError::new_err(format!(
            "letter {bad} outside [1, {m}]"
        )));
    }
    Ok(formulas::hall_remmel_count(&rho, &x, &y, s))
}

#[pyfunction]
fn hall_remmel_even_words(rho: Vec<u64>, n: u64, p: u64) -> PyResult<BigInt> {
    formulas::hall_remmel_even_words(&rho, n, p).py_err()
}

#[pyfunction]
fn rearrangement_distribution(
    rho: Vec<u64>,
    x: BTreeSet<u32>,
    y: BTreeSet<u32>,
) -> PyResult<BTreeMap<u64, BigInt>> {
    Ok(oracle::rearrangement_distribution(&rho, &x, &y)
        .py_err()?
        .into_iter()
        .map(|(s, c)| (s, BigInt::from(c)))
        .collect())
}

#[pyfunction]
fn direct_count_top_letter(k: u64, n: u64, s: u64) -> PyResult<BigInt> {
    identities::direct_count_top_letter(k, n, s).py_err()
}

#[pyfunction]
fn direct_count_two_bottom(k: u64, n: u64, s: u64) -> PyResult<BigInt> {
    identities::direct_count_two_bottom(k, n, s).py_err()
}

fn report_dict<'py>(
    py: Python<'py>,
    rep: identities::IdentityReport,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("identity", rep.id.name())?;
    d.set_item("n", rep.n)?;
    d.set_item("r", rep.r)?;
    d.set_item("s", rep.s)?;
    d.set_item("equal", rep.is_equal())?;
    d.set_item("literal_holds", rep.literal_holds())?;
    d.set_item("lhs", rep.lhs)?;
    d.set_item("rhs", rep.rhs)?;
    Ok(d)
}

#[pyfunction]
fn check_identity_26_28(py: Python<'_>, n: u64, r: u64, s: u64) -> PyResult<Bound<'_, PyDict>> {
    report_dict(py, identities::check_identity_26_28(n, r, s))
}

#[pyfunction]
fn check_identity_32(py: Python<'_>, n: u64, r: u64, s: u64) -> PyResult<Bound<'_, PyDict>> {
    report_dict(py, identities::check_identity_32(n, r, s))
}

/// Runs one verification suite and returns its summary.
#[pyfunction]
#[pyo3(signature = (suite, k_max = 4, n_max = 6, inject_fault = false))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    k_max: u32,
    n_max: u32,
    inject_fault: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let suite: Suite = suite.parse().py_err()?;
    let mut opts = VerifyOptions::new(k_max, n_max);
    opts.inject_fault = inject_fault;
    let rep = py.detach(|| run_suite(suite, &opts)).py_err()?;
    let d = PyDict::new(py);
    d.set_item("suite", suite.name())?;
    d.set_item("checked", rep.checked)?;
    d.set_item("failures", rep.failures)?;
    d.set_item("first_failure", rep.first_failure)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "wordstat")]
fn wordstat_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Word>()?;
    m.add_class::<Partition>()?;
    m.add_class::<StatVector>()?;
    m.add(
        "BudgetExceededError",
        m.py().get_type::<BudgetExceededError>(),
    )?;
    m.add("BUDGET_ENV", oracle::BUDGET_ENV)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(count_levels_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(count_levels_blocks, m)?)?;
    m.add_function(wrap_pyfunction!(count_des_le, m)?)?;
    m.add_function(wrap_pyfunction!(count_des_gt, m)?)?;
    m.add_function(wrap_pyfunction!(count_des_mod, m)?)?;
    m.add_function(wrap_pyfunction!(hall_remmel_count, m)?)?;
    m.add_function(wrap_pyfunction!(hall_remmel_even_words, m)?)?;
    m.add_function(wrap_pyfunction!(rearrangement_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(direct_count_top_letter, m)?)?;
    m.add_function(wrap_pyfunction!(direct_count_two_bottom, m)?)?;
    m.add_function(wrap_pyfunction!(check_identity_26_28, m)?)?;
    m.add_function(wrap_pyfunction!(check_identity_32, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
