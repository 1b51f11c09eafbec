//! Localization sums `Σ_π μ(-v_π) q^{|π|}` over torus-fixed points.

use num_traits::Zero;

use crate::algebra::{bracket_eval, euler_eval, theta_eval, Character, CohPoint, EvalPoint};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::formulas::RankVector;
use crate::partitions::{enumerate_configurations_with, Configuration, PartitionTable};
use crate::rational::Rational;
use crate::series::{QPSeries, QSeries};
use crate::vertex::{build_fixed_point, vertex, virtual_tangent};

#[derive(Clone, Debug)]
pub struct VertexEntry {
    pub config: Configuration,
    /// `-v_π`, the character whose measure is the summand.
    pub neg_vertex: Character,
}

/// Vertex characters for every configuration of size `≤ order`, grouped by
/// size. They do not depend on the specialization point, so one table
/// serves every point.
#[derive(Clone, Debug)]
pub struct VertexTable {
    rvec: RankVector,
    order: usize,
    levels: Vec<Vec<VertexEntry>>,
}

impl VertexTable {
    pub fn build(rvec: RankVector, order: usize, exec: Exec) -> Result<Self> {
        Self::build_with(&PartitionTable::new(order), rvec, order, exec)
    }

    /// Each vertex is checked to be movable and a square root of the
    /// virtual tangent before it is stored.
    pub fn build_with(partitions: &PartitionTable, rvec: RankVector, order: usize, exec: Exec) -> Result<Self> {
        if partitions.max_size().is_none_or(|m| m < order) {
            return Err(Error::InvalidInput(format!("partition table does not reach size {order}")));
        }
        let mut levels = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let configs = enumerate_configurations_with(partitions, rvec.array(), n);
            let entries = exec.try_map(&configs, |c| {
                let fp = build_fixed_point(c);
                let v = vertex(&fp)?;
                if &v + &v.dual() != virtual_tangent(&fp) {
                    return Err(Error::Invariant(format!("vertex is not a square root at {c}")));
                }
                Ok(VertexEntry {
                    config: c.clone(),
                    neg_vertex: -v,
                })
            })?;
            levels.push(entries);
        }
        Ok(VertexTable { rvec, order, levels })
    }

    pub fn rvec(&self) -> RankVector {
        self.rvec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn level(&self, n: usize) -> &[VertexEntry] {
        &self.levels[n]
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn at_config(e: Error, c: &Configuration) -> Error {
    match e {
        Error::PoleAtPoint(m) => Error::PoleAtPoint(format!("{m} at configuration {c}")),
        other => other,
    }
}

/// Contributions of each configuration of size `n`, in table order.
pub fn contributions_k(table: &VertexTable, n: usize, p: &EvalPoint, exec: Exec) -> Result<Vec<Rational>> {
    exec.try_map(table.level(n), |e| bracket_eval(&e.neg_vertex, p).map_err(|err| at_config(err, &e.config)))
}

pub fn contributions_coh(table: &VertexTable, n: usize, p: &CohPoint, exec: Exec) -> Result<Vec<Rational>> {
    exec.try_map(table.level(n), |e| euler_eval(&e.neg_vertex, p).map_err(|err| at_config(err, &e.config)))
}

fn sum(xs: Vec<Rational>) -> Rational {
    xs.into_iter().fold(Rational::zero(), |a, b| a + b)
}

/// `Z_r(q) = Σ_π [-v_π] q^{|π|}`.
pub fn z_loc_k_table(table: &VertexTable, p: &EvalPoint, exec: Exec) -> Result<QSeries> {
    let coeffs = (0..=table.order())
        .map(|n| contributions_k(table, n, p, exec).map(sum))
        .collect::<Result<Vec<_>>>()?;
    Ok(QSeries::new(coeffs, table.order()))
}

/// `Z^coh_r(q) = Σ_π e(-v_π) q^{|π|}`.
pub fn z_loc_coh_table(table: &VertexTable, p: &CohPoint, exec: Exec) -> Result<QSeries> {
    let coeffs = (0..=table.order())
        .map(|n| contributions_coh(table, n, p, exec).map(sum))
        .collect::<Result<Vec<_>>>()?;
    Ok(QSeries::new(coeffs, table.order()))
}

/// `Σ_π θ[-v_π] q^{|π|}`, bigraded in `q` and `p`.
pub fn z_loc_ell_table(table: &VertexTable, p: &EvalPoint, p_order: usize, exec: Exec) -> Result<QPSeries> {
    let mut out = QPSeries::zero(table.order(), p_order);
    for n in 0..=table.order() {
        let terms = exec.try_map(table.level(n), |e| {
            theta_eval(&e.neg_vertex, p, p_order).map_err(|err| at_config(err, &e.config))
        })?;
        for t in &terms {
            out.add_to_q_coeff(n, t);
        }
    }
    Ok(out)
}

pub fn z_loc_k(rvec: RankVector, order: usize, p: &EvalPoint, exec: Exec) -> Result<QSeries> {
    z_loc_k_table(&VertexTable::build(rvec, order, exec)?, p, exec)
}

pub fn z_loc_coh(rvec: RankVector, order: usize, p: &CohPoint, exec: Exec) -> Result<QSeries> {
    z_loc_coh_table(&VertexTable::build(rvec, order, exec)?, p, exec)
}

pub fn z_loc_ell(rvec: RankVector, order: usize, p_order: usize, p: &EvalPoint, exec: Exec) -> Result<QPSeries> {
    z_loc_ell_table(&VertexTable::build(rvec, order, exec)?, p, p_order, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{closed_z_coh, closed_z_k};
    use crate::rational::{int, rat};
    use num_traits::One;

    fn point(rank: usize) -> EvalPoint {
        let w = (0..rank).map(|k| rat(5 + 2 * k as i64, 3)).collect();
        EvalPoint::new([rat(2, 1), rat(3, 5), rat(7, 4)], w).unwrap()
    }

    #[test]
    fn empty_level_is_one() {
        for rvec in [[0, 0, 0, 1], [1, 2, 0, 1]] {
            let r = RankVector(rvec);
            let z = z_loc_k(r, 0, &point(r.rank()), Exec::Serial).unwrap();
            assert_eq!(z, QSeries::one(0));
        }
    }

    #[test]
    fn one_box_matches_closed_form() {
        let r = RankVector([0, 0, 0, 1]);
        let p = point(1);
        let loc = z_loc_k(r, 2, &p, Exec::Serial).unwrap();
        assert_eq!(loc, closed_z_k(r, 2, &p).unwrap());
    }

    #[test]
    fn coh_one_box() {
        let r = RankVector([0, 0, 0, 1]);
        let p = CohPoint::new([int(1), int(2), int(3)], vec![int(4)]);
        let z = z_loc_coh(r, 2, &p, Exec::Serial).unwrap();
        assert_eq!(z.coeff(1), &int(10));
        assert_eq!(z, closed_z_coh(r, 2, &p).unwrap());
        let p2 = p.with_v(vec![rat(9, 7)]);
        assert_eq!(z_loc_coh(r, 2, &p2, Exec::Serial).unwrap(), z);
    }

    #[test]
    fn balanced_rank_vanishes() {
        let r = RankVector([1, 1, 1, 1]);
        let z = z_loc_k(r, 2, &point(4), Exec::Parallel).unwrap();
        assert!(z.coeff(0).is_one());
        assert!(z.coeff(1).is_zero() && z.coeff(2).is_zero());
    }

    #[test]
    fn elliptic_constant_slice() {
        let r = RankVector([0, 0, 0, 1]);
        let p = point(1);
        let ell = z_loc_ell(r, 2, 2, &p, Exec::Serial).unwrap();
        assert_eq!(ell.p_slice(0), z_loc_k(r, 2, &p, Exec::Serial).unwrap());
        assert!(ell.coeff(0, 0).is_one());
        assert!(ell.coeff(0, 1).is_zero());
    }

    #[test]
    fn serial_and_parallel_agree() {
        let r = RankVector([1, 0, 1, 0]);
        let t = VertexTable::build(r, 3, Exec::Parallel).unwrap();
        let t2 = VertexTable::build(r, 3, Exec::Serial).unwrap();
        assert_eq!(t.len(), t2.len());
        let p = point(2);
        assert_eq!(
            z_loc_k_table(&t, &p, Exec::Serial).unwrap(),
            z_loc_k_table(&t2, &p, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn poles_name_the_configuration() {
        // t1 = 1 makes [t1] vanish in the one-box denominators
        let p = EvalPoint::new([rat(1, 1), rat(3, 5), rat(7, 4)], vec![int(2)]).unwrap();
        let err = z_loc_k(RankVector([0, 0, 0, 1]), 1, &p, Exec::Serial).unwrap_err();
        match err {
            Error::PoleAtPoint(m) => assert!(m.contains("π41"), "{m}"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn short_partition_table_is_rejected() {
        let t = PartitionTable::new(1);
        assert!(VertexTable::build_with(&t, RankVector([0, 0, 0, 1]), 2, Exec::Serial).is_err());
    }
}
