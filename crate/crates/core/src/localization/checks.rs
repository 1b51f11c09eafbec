//! Cross-checks between localization and the closed formulas, and the
//! combinatorial and sign identities behind them.

use num_traits::{One, Zero};

use super::engine::{
    contributions_coh, contributions_k, z_loc_coh_table, z_loc_ell_table, z_loc_k_table, VertexTable,
};
use super::report::{CheckReport, Comparison, PointRecord};
use super::sampler::Sampler;
use crate::algebra::{bracket_eval, Character, EvalPoint, Monomial};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::formulas::{
    check_rank1_relation, closed_z_coh, closed_z_k, factorized_z, kappa_identity_sides, rank1_relation_terms,
    RankVector,
};
use crate::partitions::{
    embed_to_solid, enumerate_configurations, enumerate_configurations_with, sign_rho, sign_rho_tilde, PartitionTable,
};
use crate::rational::{self, Rational};
use crate::series::{macmahon_power, QSeries};
use crate::vertex::{
    build_fixed_point, char_p, p_bar_of_leg, tilde_correction, tilde_vertex, vertex, vertex_blocks, virtual_tangent,
    virtual_tangent_from_complex, FixedPointData,
};

fn r2s(x: &Rational) -> String {
    rational::to_string(x)
}

fn coefficient_comparison(point: usize, n: usize, item: &str, values: &[(&str, &QSeries)]) -> Comparison {
    let first = values[0].1.coeff(n);
    let passed = values.iter().all(|(_, s)| s.coeff(n) == first);
    Comparison {
        point: Some(point),
        item: item.into(),
        coefficient: Some(n),
        passed,
        witness: if passed {
            Vec::new()
        } else {
            values.iter().map(|(k, s)| (k.to_string(), r2s(s.coeff(n)))).collect()
        },
    }
}

fn config_breakdown(table: &VertexTable, n: usize, contributions: &[Rational]) -> Vec<(String, String)> {
    table
        .level(n)
        .iter()
        .zip(contributions)
        .map(|(e, x)| (e.config.to_string(), r2s(x)))
        .collect()
}

/// Localization, the closed formula and the factorized formula for the
/// K-theoretic series, compared coefficientwise at `num_points` points.
pub fn verify_main(rvec: RankVector, order: usize, seed: u64, num_points: usize, exec: Exec) -> Result<CheckReport> {
    let table = VertexTable::build(rvec, order, exec)?;
    verify_main_with(&table, seed, num_points, exec)
}

pub fn verify_main_with(table: &VertexTable, seed: u64, num_points: usize, exec: Exec) -> Result<CheckReport> {
    let (rvec, order) = (table.rvec(), table.order());
    let mut report = CheckReport::new("main", Some(rvec), order, Some(seed));
    let mut sampler = Sampler::new(seed);
    for k in 0..num_points {
        let (p, (loc, closed, fact)) = sampler.accept(
            |s| s.eval_point(rvec.rank()),
            |p| {
                Ok((
                    z_loc_k_table(table, p, exec)?,
                    closed_z_k(rvec, order, p)?,
                    factorized_z(rvec, order, p)?,
                ))
            },
        )?;
        for n in 0..=order {
            let mut c = coefficient_comparison(
                k,
                n,
                "localization = closed = factorized",
                &[("localization", &loc), ("closed", &closed), ("factorized", &fact)],
            );
            if !c.passed {
                c.witness.extend(config_breakdown(table, n, &contributions_k(table, n, &p, exec)?));
            }
            report.push(c);
        }
        report.points.push((&p).into());
    }
    if rvec.kappa().is_trivial() {
        report.notes.push("κ_r is trivial: the closed formula is the constant series 1".into());
    }
    report.points_tried = sampler.tried();
    report.points_used = num_points;
    Ok(report)
}

/// Cohomological localization against `M((-1)^r q)^{-E}`.
pub fn verify_coh(rvec: RankVector, order: usize, seed: u64, num_points: usize, exec: Exec) -> Result<CheckReport> {
    let table = VertexTable::build(rvec, order, exec)?;
    let mut report = CheckReport::new("coh", Some(rvec), order, Some(seed));
    let mut sampler = Sampler::new(seed);
    for k in 0..num_points {
        let (p, (loc, closed)) = sampler.accept(
            |s| s.coh_point(rvec.rank()),
            |p| Ok((z_loc_coh_table(&table, p, exec)?, closed_z_coh(rvec, order, p)?)),
        )?;
        for n in 0..=order {
            let mut c = coefficient_comparison(k, n, "localization = closed", &[("localization", &loc), ("closed", &closed)]);
            if !c.passed {
                c.witness.extend(config_breakdown(&table, n, &contributions_coh(&table, n, &p, exec)?));
            }
            report.push(c);
        }
        report.points.push((&p).into());
    }
    report.points_tried = sampler.tried();
    report.points_used = num_points;
    Ok(report)
}

/// Outcome of the sign comparison between the two square roots at one
/// fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCheck {
    /// `ρ_π` mod 2.
    pub rho: u8,
    /// `(-1)^ρ [-ṽ + Σ K_i t_i Q̄] = [-v]`.
    pub total: bool,
    /// Per slot: `(-1)^{ρ_{π_il}} [Z - P̄_123 ZZ̄] = [Z - P̄_{i1i2i3} ZZ̄]`.
    pub diagonal: bool,
    /// Per pair of slots `(i,l) < (j,k)`: the off-diagonal blocks agree
    /// with `P̄_123` in place of `P̄_{j1j2j3}`.
    pub off_diagonal: bool,
    /// `ρ̃ = 0` for every partition embedded along its own leg.
    pub rho_tilde_vanishes: bool,
}

impl SignCheck {
    pub fn passed(&self) -> bool {
        self.total && self.diagonal && self.off_diagonal && self.rho_tilde_vanishes
    }
}

fn signed(x: Rational, parity: u8) -> Rational {
    if parity % 2 == 1 {
        -x
    } else {
        x
    }
}

// w_a^{-1} w_b (Z_b - t_j Z̄_a - P Z_b Z̄_a) + w_a w_b^{-1} (Z_a - t_i Z̄_b - P Z_a Z̄_b)
fn pair_character(fp: &FixedPointData, a: usize, b: usize, p: &Character) -> Character {
    let slots = fp.registry().slots();
    let (i, j) = (slots[a].0, slots[b].0);
    let (za, zb) = (fp.z(a), fp.z(b));
    let one = |x: &Character, y: &Character, leg: usize, from: usize, to: usize| {
        let body = x - &y.dual().mul_monomial(&Monomial::t(leg)) - p * &(x * &y.dual());
        body.mul_monomial(&Monomial::w(from).inv().mul(&Monomial::w(to)))
    };
    one(zb, za, j, a, b) + one(za, zb, i, b, a)
}

pub fn sign_identity(fp: &FixedPointData, p: &EvalPoint) -> Result<SignCheck> {
    let config = fp.config();
    let rho = config.rho();
    let lhs = bracket_eval(&(tilde_correction(fp) - tilde_vertex(fp)?), p)?;
    let rhs = bracket_eval(&-vertex(fp)?, p)?;
    let total = signed(lhs, rho) == rhs;

    let p123 = char_p(&[1, 2, 3]).dual();
    let slots = fp.registry().slots().to_vec();
    let mut diagonal = true;
    let mut rho_tilde_vanishes = true;
    for (a, &(leg, _)) in slots.iter().enumerate() {
        let z = fp.z(a);
        let zz = z * &z.dual();
        let solid = embed_to_solid(&config.parts()[a], leg);
        let left = signed(bracket_eval(&(z - &(&p123 * &zz)), p)?, sign_rho(&solid));
        let right = bracket_eval(&(z - &(&p_bar_of_leg(leg) * &zz)), p)?;
        diagonal &= left == right;
        rho_tilde_vanishes &= sign_rho_tilde(&solid, leg) == 0;
    }
    let mut off_diagonal = true;
    for a in 0..slots.len() {
        for (b, &(j, _)) in slots.iter().enumerate().skip(a + 1) {
            let left = bracket_eval(&pair_character(fp, a, b, &p123), p)?;
            let right = bracket_eval(&pair_character(fp, a, b, &p_bar_of_leg(j)), p)?;
            off_diagonal &= left == right;
        }
    }
    Ok(SignCheck {
        rho,
        total,
        diagonal,
        off_diagonal,
        rho_tilde_vanishes,
    })
}

pub fn check_sign_identity(fp: &FixedPointData, p: &EvalPoint) -> Result<bool> {
    Ok(sign_identity(fp, p)?.passed())
}

/// The sign comparison for every configuration of size `≤ order`.
pub fn check_signs(rvec: RankVector, order: usize, seed: u64, num_points: usize, exec: Exec) -> Result<CheckReport> {
    let table = PartitionTable::new(order);
    let fps: Vec<FixedPointData> = (0..=order)
        .flat_map(|n| enumerate_configurations_with(&table, rvec.array(), n))
        .map(|c| build_fixed_point(&c))
        .collect();
    let mut report = CheckReport::new("signs", Some(rvec), order, Some(seed));
    let mut sampler = Sampler::new(seed);
    for k in 0..num_points {
        let (p, outcomes) = sampler.accept(
            |s| s.eval_point(rvec.rank()),
            |p| exec.try_map(&fps, |fp| sign_identity(fp, p)),
        )?;
        for (fp, s) in fps.iter().zip(outcomes) {
            let passed = s.passed();
            report.push(Comparison {
                point: Some(k),
                item: fp.config().to_string(),
                coefficient: Some(fp.config().size()),
                passed,
                witness: if passed {
                    Vec::new()
                } else {
                    vec![
                        ("rho".into(), s.rho.to_string()),
                        ("total".into(), s.total.to_string()),
                        ("diagonal".into(), s.diagonal.to_string()),
                        ("off_diagonal".into(), s.off_diagonal.to_string()),
                        ("rho_tilde_vanishes".into(), s.rho_tilde_vanishes.to_string()),
                    ]
                },
            });
        }
        report.points.push((&p).into());
    }
    report.points_tried = sampler.tried();
    report.points_used = num_points;
    Ok(report)
}

fn framing_points(
    sampler: &mut Sampler,
    rank: usize,
    num_framings: usize,
    mut eval: impl FnMut(&EvalPoint) -> Result<()>,
) -> Result<Vec<EvalPoint>> {
    let (base, ()) = sampler.accept(|s| s.eval_point(rank), &mut eval)?;
    let mut points = vec![base.clone()];
    while points.len() < num_framings {
        let (p, ()) = sampler.accept(|s| s.reframe(&base, rank), &mut eval)?;
        points.push(p);
    }
    Ok(points)
}

/// `Z_loc_K` at one `t`-specialization and `num_framings` framing
/// specializations; all series must coincide.
pub fn check_framing_independence(
    rvec: RankVector,
    order: usize,
    seed: u64,
    num_framings: usize,
    exec: Exec,
) -> Result<CheckReport> {
    if num_framings < 2 {
        return Err(Error::InvalidInput("framing comparison needs at least two framings".into()));
    }
    let table = VertexTable::build(rvec, order, exec)?;
    let mut report = CheckReport::new("framing", Some(rvec), order, Some(seed));
    let mut sampler = Sampler::new(seed);
    let points = framing_points(&mut sampler, rvec.rank(), num_framings, |p| {
        z_loc_k_table(&table, p, exec).map(|_| ())
    })?;
    let series = points
        .iter()
        .map(|p| z_loc_k_table(&table, p, exec))
        .collect::<Result<Vec<_>>>()?;
    for (k, s) in series.iter().enumerate().skip(1) {
        for n in 0..=order {
            report.push(coefficient_comparison(k, n, "framing k = framing 0", &[("framing 0", &series[0]), ("framing k", s)]));
        }
    }
    report.points = points.iter().map(Into::into).collect();
    report.points_tried = sampler.tried();
    report.points_used = points.len();
    Ok(report)
}

/// The elliptic analogue of [`check_framing_independence`]. Informational:
/// the elliptic series may depend on the framing, and the report records
/// whether it did.
pub fn check_elliptic_framing(
    rvec: RankVector,
    order: usize,
    p_order: usize,
    seed: u64,
    num_framings: usize,
    exec: Exec,
) -> Result<CheckReport> {
    if num_framings < 2 {
        return Err(Error::InvalidInput("framing comparison needs at least two framings".into()));
    }
    let table = VertexTable::build(rvec, order, exec)?;
    let mut report = CheckReport::new("framing-elliptic", Some(rvec), order, Some(seed));
    report.informational = true;
    let mut sampler = Sampler::new(seed);
    let points = framing_points(&mut sampler, rvec.rank(), num_framings, |p| {
        z_loc_ell_table(&table, p, p_order, exec).map(|_| ())
    })?;
    let series = points
        .iter()
        .map(|p| z_loc_ell_table(&table, p, p_order, exec))
        .collect::<Result<Vec<_>>>()?;
    let mut differing = Vec::new();
    for (k, s) in series.iter().enumerate().skip(1) {
        for n in 0..=order {
            for m in 0..=p_order {
                let (a, b) = (series[0].coeff(n, m), s.coeff(n, m));
                let passed = a == b;
                if !passed {
                    differing.push(format!("q^{n} p^{m}"));
                }
                report.push(Comparison {
                    point: Some(k),
                    item: format!("framing k = framing 0 at p^{m}"),
                    coefficient: Some(n),
                    passed,
                    witness: if passed {
                        Vec::new()
                    } else {
                        vec![("framing 0".into(), r2s(a)), ("framing k".into(), r2s(b))]
                    },
                });
            }
        }
    }
    differing.sort();
    differing.dedup();
    report.notes.push(if differing.is_empty() {
        format!("no framing dependence observed up to p^{p_order}")
    } else {
        format!("framing dependence observed at {}", differing.join(", "))
    });
    report.points = points.iter().map(Into::into).collect();
    report.points_tried = sampler.tried();
    report.points_used = points.len();
    Ok(report)
}

/// The `p^0` row of the elliptic sum against the K-theoretic sum.
pub fn check_elliptic_degeneration(
    rvec: RankVector,
    order: usize,
    p_order: usize,
    seed: u64,
    num_points: usize,
    exec: Exec,
) -> Result<CheckReport> {
    let table = VertexTable::build(rvec, order, exec)?;
    let mut report = CheckReport::new("elliptic-degeneration", Some(rvec), order, Some(seed));
    let mut sampler = Sampler::new(seed);
    for k in 0..num_points {
        let (p, (ell, kth)) = sampler.accept(
            |s| s.eval_point(rvec.rank()),
            |p| Ok((z_loc_ell_table(&table, p, p_order, exec)?, z_loc_k_table(&table, p, exec)?)),
        )?;
        let slice = ell.p_slice(0);
        for n in 0..=order {
            report.push(coefficient_comparison(k, n, "elliptic p^0 = K-theoretic", &[("elliptic p^0", &slice), ("k", &kth)]));
        }
        report.points.push((&p).into());
    }
    report.points_tried = sampler.tried();
    report.points_used = num_points;
    Ok(report)
}

/// Spreads `r` over the four legs as evenly as possible, e.g. `6 ↦ 2,2,1,1`.
pub fn spread_rank(r: usize) -> RankVector {
    RankVector(std::array::from_fn(|i| r / 4 + usize::from(i < r % 4)))
}

/// Counts of fixed points against the coefficients of `M(q)^r`.
pub fn check_euler_characteristics(r: usize, order: usize) -> CheckReport {
    let rvec = spread_rank(r);
    let mut report = CheckReport::new("euler", Some(rvec), order, None);
    let expected = macmahon_power(&Rational::from_integer(r.into()), order);
    let table = PartitionTable::new(order);
    for n in 0..=order {
        let count = enumerate_configurations_with(&table, rvec.array(), n).len();
        let want = expected.coeff(n);
        let passed = Rational::from_integer(count.into()) == *want;
        report.push(Comparison {
            point: None,
            item: "fixed points = M(q)^r".into(),
            coefficient: Some(n),
            passed,
            witness: if passed {
                Vec::new()
            } else {
                vec![("count".into(), count.to_string()), ("macmahon".into(), r2s(want))]
            },
        });
    }
    report
}

/// Exhaustive structural checks on every vertex of size `≤ order`:
/// square root of the virtual tangent (both routes), movability, block
/// decomposition, and movability of `K_i t_i Q̄`.
pub fn check_vertex_invariants(rvec: RankVector, order: usize, exec: Exec) -> CheckReport {
    let mut report = CheckReport::new("vertex-invariants", Some(rvec), order, None);
    for n in 0..=order {
        let configs = enumerate_configurations(rvec.array(), n);
        let bad: Vec<(String, String)> = exec
            .map(&configs, |c| {
                let fp = build_fixed_point(c);
                let t = virtual_tangent(&fp);
                let problem = match vertex(&fp) {
                    Err(e) => Some(e.to_string()),
                    Ok(_) if t != virtual_tangent_from_complex(&fp) => Some("tangent routes differ".into()),
                    Ok(v) if &v + &v.dual() != t => Some("v + dual(v) differs from T".into()),
                    Ok(v) if vertex_blocks(&fp).iter().map(|(_, b)| b).sum::<Character>() != v => {
                        Some("blocks do not sum to the vertex".into())
                    }
                    Ok(_) if !tilde_correction(&fp).is_movable() => Some("K_i t_i Q̄ has a fixed part".into()),
                    Ok(_) => None,
                };
                problem.map(|m| (c.to_string(), m))
            })
            .into_iter()
            .flatten()
            .collect();
        report.push(Comparison {
            point: None,
            item: format!("{} configurations", configs.len()),
            coefficient: Some(n),
            passed: bad.is_empty(),
            witness: bad,
        });
    }
    report
}

/// The weight identity for `r` random positive weights, `samples` times.
pub fn check_kappa(r: usize, order: usize, seed: u64, samples: usize) -> Result<CheckReport> {
    if r == 0 {
        return Err(Error::InvalidInput("weight identity needs at least one weight".into()));
    }
    let mut report = CheckReport::new(format!("kappa-r{r}"), None, order, Some(seed));
    let mut sampler = Sampler::new(seed);
    for k in 0..samples {
        let ys = sampler.distinct_values(r, &[]);
        let (lhs, rhs) = kappa_identity_sides(&ys, order)?;
        for n in 0..=order {
            report.push(coefficient_comparison(k, n, "sum over weights = product weight", &[("lhs", &lhs), ("rhs", &rhs)]));
        }
        report.points.push(PointRecord::weights(&ys));
    }
    report.points_tried = samples;
    report.points_used = samples;
    report.notes.push("weights are given by their square roots".into());
    Ok(report)
}

/// The linear relation among the first coefficients of the four rank-one
/// series.
pub fn check_rank1_relation_report(seed: u64, num_points: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("rank1-relation", None, 1, Some(seed));
    let mut sampler = Sampler::new(seed);
    for k in 0..num_points {
        let (p, ok) = sampler.accept(|s| s.eval_point(0), check_rank1_relation)?;
        let witness = if ok {
            Vec::new()
        } else {
            rank1_relation_terms(&p)?
                .iter()
                .enumerate()
                .map(|(i, x)| (format!("leg {}", i + 1), r2s(x)))
                .collect()
        };
        report.push(Comparison {
            point: Some(k),
            item: "Σ m_i Z^(i)_1 = 0".into(),
            coefficient: Some(1),
            passed: ok,
            witness,
        });
        report.points.push((&p).into());
    }
    report.points_tried = sampler.tried();
    report.points_used = num_points;
    Ok(report)
}

/// Whether every coefficient of positive degree vanishes and the constant
/// term is one.
pub fn is_trivial_series(s: &QSeries) -> bool {
    s.coeff(0).is_one() && s.coeffs()[1..].iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{Configuration, PlanePartition};

    #[test]
    fn main_rank_one() {
        let r = verify_main(RankVector([0, 0, 0, 1]), 3, 1, 2, Exec::Parallel).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.comparisons.len(), 8);
        assert_eq!(r.points.len(), 2);
    }

    #[test]
    fn main_balanced() {
        let r = verify_main(RankVector([1, 1, 1, 1]), 2, 2, 1, Exec::Parallel).unwrap();
        assert!(r.passed);
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn coh_small() {
        for rvec in [[0, 0, 0, 1], [1, 1, 0, 0]] {
            let r = verify_coh(RankVector(rvec), 2, 3, 2, Exec::Parallel).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn signs_small() {
        let r = check_signs(RankVector([1, 0, 1, 0]), 2, 4, 1, Exec::Parallel).unwrap();
        assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        let empty = build_fixed_point(&Configuration::empty([0, 0, 0, 1]));
        let p = Sampler::new(1).eval_point(1);
        assert!(check_sign_identity(&empty, &p).unwrap());
    }

    #[test]
    fn odd_rho_is_compensated() {
        let col = PlanePartition::from_boxes(vec![[0, 0, 0], [0, 0, 1]]).unwrap();
        let c = Configuration::new([1, 0, 0, 0], vec![col]).unwrap();
        assert_eq!(c.rho(), 1);
        let p = Sampler::new(9).eval_point(1);
        let s = sign_identity(&build_fixed_point(&c), &p).unwrap();
        assert!(s.passed(), "{s:?}");
    }

    #[test]
    fn framing_small() {
        let r = check_framing_independence(RankVector([0, 0, 0, 2]), 2, 5, 3, Exec::Parallel).unwrap();
        assert!(r.passed);
        assert_eq!(r.points.len(), 3);
        assert!(check_framing_independence(RankVector([0, 0, 0, 2]), 2, 5, 1, Exec::Serial).is_err());
    }

    #[test]
    fn euler_counts() {
        for r in [0, 1, 2, 4] {
            let rep = check_euler_characteristics(r, 4);
            assert!(rep.passed, "{rep:?}");
        }
        assert_eq!(spread_rank(6), RankVector([2, 2, 1, 1]));
    }

    #[test]
    fn invariants_small() {
        let r = check_vertex_invariants(RankVector([1, 1, 0, 0]), 2, Exec::Serial);
        assert!(r.passed);
    }

    #[test]
    fn kappa_and_relation() {
        assert!(check_kappa(3, 6, 1, 2).unwrap().passed);
        assert!(check_kappa(0, 6, 1, 2).is_err());
        assert!(check_rank1_relation_report(1, 3).unwrap().passed);
    }

    #[test]
    fn degeneration_small() {
        let r = check_elliptic_degeneration(RankVector([0, 0, 0, 1]), 1, 1, 2, 1, Exec::Serial).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_main(RankVector([1, 0, 0, 0]), 2, 17, 2, Exec::Serial).unwrap();
        let b = verify_main(RankVector([1, 0, 0, 0]), 2, 17, 2, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn trivial_series_predicate() {
        assert!(is_trivial_series(&QSeries::one(3)));
        assert!(!is_trivial_series(&QSeries::from_ints(&[1, 0, 2], 2)));
    }
}
