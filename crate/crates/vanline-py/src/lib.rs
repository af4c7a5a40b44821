//! Python bindings. Structured results cross the boundary as JSON strings
//! in the same shapes the command-line tool prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use vanline::arith::{QuadElem, TowerElem};
use vanline::report::{self, Config};
use vanline::{bps, dilog, locsys, tropical};

fn config(text: Option<&str>) -> Result<Config, String> {
    text.map(Config::from_json_str).unwrap_or_else(|| Ok(Config::default()))
}

fn parse(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))
}

fn run_all_json(cfg: Option<&str>) -> Result<String, String> {
    Ok(report::run_all(&config(cfg)?).to_json(false).to_string())
}

fn suite_json(name: &str, cfg: Option<&str>) -> Result<String, String> {
    let cfg = config(cfg)?;
    let checks = match name {
        "dwork" => report::dwork_suite(&cfg),
        "tropical" => report::tropical_suite(&cfg),
        "chainlink" => report::chainlink_suite(&cfg),
        "locsys" => report::locsys_suite(&cfg),
        "floer" => report::floer_suite(&cfg),
        "bps" => report::bps_suite(&cfg),
        "vshs" => report::vshs_suite(&cfg),
        "dilog" => report::dilog_suite(&cfg),
        other => return Err(format!("unknown suite {other:?}")),
    };
    Ok(report::Report { config: cfg, checks }.to_json(false).to_string())
}

fn invert_json(table: &str, order: Option<u64>) -> Result<String, String> {
    let t = bps::table_from_json(&parse(table)?).map_err(|e| e.to_string())?;
    let n = order.or_else(|| t.keys().max().copied()).unwrap_or(0);
    Ok(bps::table_to_json(&bps::invert(&t, n)).to_string())
}

fn expand_json(table: &str, order: Option<u64>) -> Result<String, String> {
    let t = bps::table_from_json(&parse(table)?).map_err(|e| e.to_string())?;
    let n = order.or_else(|| t.keys().max().copied()).unwrap_or(0);
    Ok(bps::table_to_json(&bps::expand(&t, n)).to_string())
}

fn extend_json(mu0: &str, lambda0: &str) -> Result<String, String> {
    let el = |s: &str| QuadElem::parse(s).map(TowerElem::scalar).map_err(|e| e.to_string());
    let ext = locsys::extend_point(&el(mu0)?, &el(lambda0)?, None).map_err(|e| e.to_string())?;
    Ok(json!({
        "solutions": ext.tuples.iter().map(|h| h.to_json()).collect::<Vec<_>>(),
        "diagnostics": ext.diagnostics,
    })
    .to_string())
}

fn residues_json(tuple: &str) -> Result<String, String> {
    let h = locsys::HolonomyTuple::from_json(&parse(tuple)?).map_err(|e| e.to_string())?;
    Ok(locsys::residues(&h).map_err(|e| e.to_string())?.to_json().to_string())
}

fn balanced(curve: &str) -> Result<bool, String> {
    let c = tropical::TropCurve::from_json(&parse(curve)?).map_err(|e| e.to_string())?;
    Ok(tropical::check_balancing(&c))
}

fn py_err(e: String) -> PyErr {
    PyValueError::new_err(e)
}

/// Full report as a JSON string.
#[pyfunction]
#[pyo3(signature = (config=None))]
fn run_all(config: Option<&str>) -> PyResult<String> {
    run_all_json(config).map_err(py_err)
}

/// Report for one suite: dwork, tropical, chainlink, locsys, floer, bps, vshs or dilog.
#[pyfunction]
#[pyo3(signature = (name, config=None))]
fn run_suite(name: &str, config: Option<&str>) -> PyResult<String> {
    suite_json(name, config).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (table, order=None))]
fn bps_invert(table: &str, order: Option<u64>) -> PyResult<String> {
    invert_json(table, order).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (table, order=None))]
fn bps_expand(table: &str, order: Option<u64>) -> PyResult<String> {
    expand_json(table, order).map_err(py_err)
}

#[pyfunction]
fn chi(k: i64) -> i64 {
    bps::chi(k)
}

#[pyfunction]
fn clausen(theta: f64) -> f64 {
    dilog::clausen(theta)
}

/// Li2 on the closed unit disk, as (re, im).
#[pyfunction]
fn li2(re: f64, im: f64) -> PyResult<(f64, f64)> {
    let z = dilog::li2(dilog::ComplexF::new(re, im)).map_err(|e| py_err(e.to_string()))?;
    Ok((z.re, z.im))
}

#[pyfunction]
fn locsys_extend(mu0: &str, lambda0: &str) -> PyResult<String> {
    extend_json(mu0, lambda0).map_err(py_err)
}

#[pyfunction]
fn locsys_residues(tuple: &str) -> PyResult<String> {
    residues_json(tuple).map_err(py_err)
}

#[pyfunction]
fn riemann_hurwitz_genus(degree: u64, punctures: u64, cycles: Vec<Vec<u64>>) -> PyResult<u64> {
    locsys::riemann_hurwitz_genus(degree, punctures, &cycles).map_err(|e| py_err(e.to_string()))
}

#[pyfunction]
fn tropical_balanced(curve: &str) -> PyResult<bool> {
    balanced(curve).map_err(py_err)
}

#[pymodule]
fn vanline_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA_VERSION", report::SCHEMA_VERSION)?;
    m.add_function(wrap_pyfunction!(run_all, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(bps_invert, m)?)?;
    m.add_function(wrap_pyfunction!(bps_expand, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(clausen, m)?)?;
    m.add_function(wrap_pyfunction!(li2, m)?)?;
    m.add_function(wrap_pyfunction!(locsys_extend, m)?)?;
    m.add_function(wrap_pyfunction!(locsys_residues, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_hurwitz_genus, m)?)?;
    m.add_function(wrap_pyfunction!(tropical_balanced, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_and_config() {
        let v: Value = serde_json::from_str(&suite_json("dilog", None).unwrap()).unwrap();
        assert_eq!(v["schemaVersion"], 1);
        assert_eq!(v["checks"].as_array().unwrap().len(), 4);
        assert!(suite_json("nope", None).is_err());
        assert!(suite_json("bps", Some("{bad")).is_err());
    }

    #[test]
    fn bps_round_trip() {
        let n = invert_json(r#"{"1": [280000, 1], "2": [22296200000, 3]}"#, None).unwrap();
        assert_eq!(n, r#"{"1":[280000,1],"2":[22296410000,3]}"#);
        assert_eq!(expand_json(&n, None).unwrap(), r#"{"1":[280000,1],"2":[22296200000,3]}"#);
    }

    #[test]
    fn extend_then_residues() {
        let v: Value = serde_json::from_str(&extend_json("omega", "omega").unwrap()).unwrap();
        let tuple = v["solutions"][0].to_string();
        assert_eq!(residues_json(&tuple).unwrap(), r#"["0","0","0","0","0"]"#);
        assert!(extend_json("1", "1").is_err());
    }

    #[test]
    fn curve_balancing() {
        let v = r#"{"vertices": [[0,0,0]], "edges": [{"from":0,"rayDir":[1,0,0]},{"from":0,"rayDir":[0,1,0]},{"from":0,"rayDir":[0,0,1]},{"from":0,"rayDir":[-1,-1,-1]}]}"#;
        assert!(balanced(v).unwrap());
        assert!(balanced("[]").is_err());
    }
}
