use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use tetra_core::exec::Exec;
use tetra_core::formulas::{closed_z_coh, closed_z_k, factorized_z};
use tetra_core::localization::{
    check_elliptic_degeneration, check_elliptic_framing, check_euler_characteristics, check_framing_independence,
    check_kappa, check_rank1_relation_report, check_signs, check_vertex_invariants, verify_coh, verify_main_with,
    z_loc_coh_table, z_loc_ell_table, z_loc_k_table, CheckReport, Mode, PointRecord, Sampler, VertexTable,
};
use tetra_core::partitions::{enumerate_plane_partitions, read_cache, write_cache, PartitionTable};
use tetra_core::rational;
use tetra_core::series::QSeries;
use tetra_core::{Error, Result};

use crate::args::{cache_dir, Common, ComputeArgs, EnumerateArgs, Suite, VerifyArgs, DEFAULT_P_ORDER};

const COMPUTE_SCHEMA: &str = "tetra.compute/1";
const VERIFY_SCHEMA: &str = "tetra.verify/1";

fn series_json(s: &QSeries) -> Value {
    Value::from(s.coeffs().iter().map(rational::to_string).collect::<Vec<_>>())
}

fn emit<T: Serialize>(doc: &T, out: Option<&PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn p_order(c: &Common) -> Result<usize> {
    match (Mode::from(c.mode), c.p_order) {
        (Mode::Elliptic, p) => Ok(p.unwrap_or(DEFAULT_P_ORDER)),
        (_, None) => Ok(0),
        (_, Some(_)) => Err(Error::InvalidInput("--p-order applies to elliptic mode only".into())),
    }
}

/// Plane partitions through `order`, taken from the cache where present.
fn partition_table(cache: Option<&Path>, order: usize) -> Result<PartitionTable> {
    let mut table = PartitionTable::default();
    for n in 0..=order {
        let cached = match cache {
            Some(dir) => read_cache(dir, n)?,
            None => None,
        };
        table.insert(n, cached.unwrap_or_else(|| enumerate_plane_partitions(n)))?;
    }
    Ok(table)
}

fn vertex_table(c: &Common) -> Result<VertexTable> {
    let cache = cache_dir(c.cache.as_ref());
    let partitions = partition_table(cache.as_deref(), c.order)?;
    VertexTable::build_with(&partitions, c.rvec, c.order, Exec::default())
}

pub fn compute(a: &ComputeArgs) -> Result<bool> {
    let c = &a.common;
    let p_order = p_order(c)?;
    let table = vertex_table(c)?;
    let (rvec, order, exec) = (c.rvec, c.order, Exec::default());
    let mut sampler = Sampler::new(c.seed);
    let mode = Mode::from(c.mode);
    let (point, series): (PointRecord, Value) = match mode {
        Mode::K => {
            let (p, (loc, closed, fact)) = sampler.accept(
                |s| s.eval_point(rvec.rank()),
                |p| Ok((z_loc_k_table(&table, p, exec)?, closed_z_k(rvec, order, p)?, factorized_z(rvec, order, p)?)),
            )?;
            let s = json!({
                "localization": series_json(&loc),
                "closed": series_json(&closed),
                "factorized": series_json(&fact),
            });
            ((&p).into(), s)
        }
        Mode::Coh => {
            let (p, (loc, closed)) = sampler.accept(
                |s| s.coh_point(rvec.rank()),
                |p| Ok((z_loc_coh_table(&table, p, exec)?, closed_z_coh(rvec, order, p)?)),
            )?;
            let s = json!({ "localization": series_json(&loc), "closed": series_json(&closed) });
            ((&p).into(), s)
        }
        Mode::Elliptic => {
            let (p, ell) = sampler.accept(|s| s.eval_point(rvec.rank()), |p| z_loc_ell_table(&table, p, p_order, exec))?;
            // rows by power of q, entries by power of p
            let rows: Vec<Value> = (0..=order).map(|n| series_json(ell.q_coeff(n))).collect();
            ((&p).into(), json!({ "localization": rows }))
        }
    };
    let mut meta = json!({
        "rvec": rvec.to_string(),
        "order": order,
        "mode": mode,
        "seed": c.seed,
        "points_tried": sampler.tried(),
        "point": point,
        "normalization": "coefficients of Z_r(q)",
    });
    if mode == Mode::Elliptic {
        meta["p_order"] = json!(p_order);
    }
    let doc = json!({
        "schema": COMPUTE_SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "meta": meta,
        "series": series,
    });
    emit(&doc, c.out.as_ref())?;
    Ok(true)
}

fn run_suite(a: &VerifyArgs, suite: Suite) -> Result<Vec<CheckReport>> {
    let c = &a.common;
    let (rvec, order, seed, exec) = (c.rvec, c.order, c.seed, Exec::default());
    let p_order = p_order(c)?;
    let mode = Mode::from(c.mode);
    let r = a.r.unwrap_or(rvec.rank());
    Ok(match suite {
        Suite::Main => match mode {
            Mode::K => vec![verify_main_with(&vertex_table(c)?, seed, a.points, exec)?],
            Mode::Coh => vec![verify_coh(rvec, order, seed, a.points, exec)?],
            Mode::Elliptic => vec![check_elliptic_degeneration(rvec, order, p_order, seed, a.points, exec)?],
        },
        Suite::Signs => vec![check_signs(rvec, order, seed, a.points, exec)?],
        Suite::Framing => match mode {
            Mode::Elliptic => vec![check_elliptic_framing(rvec, order, p_order, seed, a.framings, exec)?],
            _ => vec![check_framing_independence(rvec, order, seed, a.framings, exec)?],
        },
        Suite::Euler => vec![check_euler_characteristics(r, order)],
        Suite::Kappa => vec![check_kappa(r.max(1), order, seed, a.points)?],
        Suite::All => vec![
            verify_main_with(&vertex_table(c)?, seed, a.points, exec)?,
            verify_coh(rvec, order, seed, a.points, exec)?,
            check_vertex_invariants(rvec, order, exec),
            check_signs(rvec, order, seed, a.points, exec)?,
            check_framing_independence(rvec, order, seed, a.framings, exec)?,
            check_euler_characteristics(r, order),
            check_kappa(r.max(1), order, seed, a.points)?,
            check_rank1_relation_report(seed, a.points)?,
        ],
    })
}

pub fn verify(a: &VerifyArgs) -> Result<bool> {
    if a.points == 0 {
        return Err(Error::InvalidInput("--points must be positive".into()));
    }
    if a.framings < 2 {
        return Err(Error::InvalidInput("--framings must be at least 2".into()));
    }
    if a.suite == Suite::Kappa && a.r == Some(0) {
        return Err(Error::InvalidInput("the kappa suite needs --r >= 1".into()));
    }
    let reports = run_suite(a, a.suite)?;
    let passed = reports.iter().all(|r| !r.is_failure());
    for r in &reports {
        let tag = match (r.passed, r.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        let rvec = r.rvec.map(|v| format!(" r=({v})")).unwrap_or_default();
        eprintln!("{tag} {}{rvec} order {}: {} comparisons", r.check, r.order, r.comparisons.len());
    }
    let doc = json!({
        "schema": VERIFY_SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "suite": format!("{:?}", a.suite).to_lowercase(),
        "passed": passed,
        "reports": reports,
    });
    emit(&doc, a.common.out.as_ref())?;
    Ok(passed)
}

pub fn enumerate(a: &EnumerateArgs) -> Result<bool> {
    let dir = cache_dir(a.cache.as_ref()).unwrap_or_else(|| PathBuf::from(".tetra-cache"));
    for n in 0..=a.order {
        let list = enumerate_plane_partitions(n);
        let path = write_cache(&dir, n, &list).map_err(|e| match e {
            Error::Io(m) => Error::Io(format!("cannot write cache in {}: {m}", dir.display())),
            other => other,
        })?;
        println!("n={n} count={} {}", list.len(), path.display());
    }
    Ok(true)
}
