//! Plane partitions, their tuples indexing torus-fixed points, and the
//! solid-partition sign counts.

mod cache;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::VariableRegistry;
use crate::error::{Error, Result};

pub use cache::{cache_file_name, read_cache, write_cache, CacheFile};

/// A finite order ideal in `Z^3_{≥0}`, boxes kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<[u32; 3]>", into = "Vec<[u32; 3]>")]
pub struct PlanePartition {
    boxes: Vec<[u32; 3]>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition { boxes: Vec::new() }
    }

    /// Validates the order-ideal condition.
    pub fn from_boxes(mut boxes: Vec<[u32; 3]>) -> Result<Self> {
        boxes.sort_unstable();
        boxes.dedup();
        if !is_order_ideal(&boxes) {
            return Err(Error::InvalidInput(format!(
                "boxes {boxes:?} do not form a plane partition"
            )));
        }
        Ok(PlanePartition { boxes })
    }

    /// From a height matrix: `heights[x][y]` boxes stacked over `(x, y)`.
    fn from_heights(rows: &[Vec<u32>]) -> Self {
        let mut boxes = Vec::new();
        for (x, row) in rows.iter().enumerate() {
            for (y, &h) in row.iter().enumerate() {
                for z in 0..h {
                    boxes.push([x as u32, y as u32, z]);
                }
            }
        }
        boxes.sort_unstable();
        PlanePartition { boxes }
    }

    pub fn boxes(&self) -> &[[u32; 3]] {
        &self.boxes
    }

    pub fn size(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: &[u32; 3]) -> bool {
        self.boxes.binary_search(b).is_ok()
    }
}

impl TryFrom<Vec<[u32; 3]>> for PlanePartition {
    type Error = Error;
    fn try_from(v: Vec<[u32; 3]>) -> Result<Self> {
        Self::from_boxes(v)
    }
}

impl From<PlanePartition> for Vec<[u32; 3]> {
    fn from(p: PlanePartition) -> Self {
        p.boxes
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.boxes.iter().map(|[a, b, c]| format!("({a},{b},{c})")).collect();
        write!(f, "{{{}}}", cells.join(","))
    }
}

/// Order-ideal test for a sorted, duplicate-free box list.
pub fn is_order_ideal(boxes: &[[u32; 3]]) -> bool {
    boxes.iter().all(|b| {
        (0..3).all(|k| {
            if b[k] == 0 {
                return true;
            }
            let mut below = *b;
            below[k] -= 1;
            boxes.binary_search(&below).is_ok()
        })
    })
}

/// A finite order ideal in `Z^4_{≥0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolidPartition {
    boxes: BTreeSet<[u32; 4]>,
}

impl SolidPartition {
    pub fn from_boxes<I: IntoIterator<Item = [u32; 4]>>(boxes: I) -> Result<Self> {
        let boxes: BTreeSet<_> = boxes.into_iter().collect();
        let ok = boxes.iter().all(|b| {
            (0..4).all(|k| {
                b[k] == 0 || {
                    let mut below = *b;
                    below[k] -= 1;
                    boxes.contains(&below)
                }
            })
        });
        if !ok {
            return Err(Error::InvalidInput("boxes do not form a solid partition".into()));
        }
        Ok(SolidPartition { boxes })
    }

    pub fn boxes(&self) -> impl Iterator<Item = &[u32; 4]> {
        self.boxes.iter()
    }

    pub fn size(&self) -> usize {
        self.boxes.len()
    }
}

/// The three indices of `1..=4` other than `leg`, increasing.
pub fn other_legs(leg: usize) -> [usize; 3] {
    assert!((1..=4).contains(&leg), "leg {leg} out of range");
    let mut out = [0; 3];
    let mut k = 0;
    for j in 1..=4 {
        if j != leg {
            out[k] = j;
            k += 1;
        }
    }
    out
}

/// Views `π` on the hyperplane of `leg` as a solid partition with the
/// `leg`-coordinate zero.
pub fn embed_to_solid(pi: &PlanePartition, leg: usize) -> SolidPartition {
    let others = other_legs(leg);
    let boxes = pi.boxes().iter().map(|b| {
        let mut q = [0u32; 4];
        for (k, &j) in others.iter().enumerate() {
            q[j - 1] = b[k];
        }
        q
    });
    SolidPartition {
        boxes: boxes.collect(),
    }
}

/// `|{(a,a,a,d) ∈ σ : a < d}| mod 2`.
pub fn sign_rho(sigma: &SolidPartition) -> u8 {
    let n = sigma
        .boxes()
        .filter(|b| b[0] == b[1] && b[1] == b[2] && b[2] < b[3])
        .count();
    (n % 2) as u8
}

/// `|{a : a_{i1} = a_{i2} = a_{i3} < a_i}| mod 2` for `i = leg`.
pub fn sign_rho_tilde(sigma: &SolidPartition, leg: usize) -> u8 {
    let [i1, i2, i3] = other_legs(leg).map(|j| j - 1);
    let i = leg - 1;
    let n = sigma
        .boxes()
        .filter(|b| b[i1] == b[i2] && b[i2] == b[i3] && b[i3] < b[i])
        .count();
    (n % 2) as u8
}

// Nonincreasing rows with `row[j] ≤ bound[j]` and sum at most `budget`.
fn bounded_rows(bound: &[u32], budget: u32) -> Vec<Vec<u32>> {
    fn go(bound: &[u32], budget: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let j = cur.len();
        if j >= bound.len() {
            return;
        }
        let hi = cap.min(bound[j]).min(budget);
        for part in 1..=hi {
            cur.push(part);
            go(bound, budget - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, budget, u32::MAX, &mut Vec::new(), &mut out);
    out
}

fn stack_rows(bound: &[u32], remaining: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<PlanePartition>) {
    if remaining == 0 {
        out.push(PlanePartition::from_heights(rows));
        return;
    }
    for row in bounded_rows(bound, remaining) {
        let used: u32 = row.iter().sum();
        rows.push(row.clone());
        stack_rows(&row, remaining - used, rows, out);
        rows.pop();
    }
}

/// All plane partitions of size `n`, sorted lexicographically by box list.
///
/// Built row by row from the height function: each row is a partition
/// dominated entrywise by the row before it.
pub fn enumerate_plane_partitions(n: usize) -> Vec<PlanePartition> {
    let mut out = Vec::new();
    let first_bound = vec![n as u32; n];
    stack_rows(&first_bound, n as u32, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Plane partitions of every size `0..=max_n`, computed once per size.
#[derive(Clone, Debug, Default)]
pub struct PartitionTable {
    by_size: Vec<Arc<Vec<PlanePartition>>>,
}

impl PartitionTable {
    pub fn new(max_n: usize) -> Self {
        let mut t = PartitionTable::default();
        t.ensure(max_n);
        t
    }

    /// Extends the table through size `max_n`.
    pub fn ensure(&mut self, max_n: usize) {
        while self.by_size.len() <= max_n {
            let n = self.by_size.len();
            self.by_size.push(Arc::new(enumerate_plane_partitions(n)));
        }
    }

    /// Installs a precomputed list (for instance one read from the cache).
    pub fn insert(&mut self, n: usize, list: Vec<PlanePartition>) -> Result<()> {
        if list.iter().any(|p| p.size() != n) {
            return Err(Error::InvalidInput(format!("list for size {n} has wrong sizes")));
        }
        if n < self.by_size.len() {
            self.by_size[n] = Arc::new(list);
        } else if n == self.by_size.len() {
            self.by_size.push(Arc::new(list));
        } else {
            self.ensure(n - 1);
            self.by_size.push(Arc::new(list));
        }
        Ok(())
    }

    pub fn max_size(&self) -> Option<usize> {
        self.by_size.len().checked_sub(1)
    }

    pub fn get(&self, n: usize) -> &[PlanePartition] {
        &self.by_size[n]
    }
}

/// A tuple of plane partitions `π_{il}`, one per framing slot `(i, l)` of
/// the rank vector, in registry order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    rvec: [usize; 4],
    parts: Vec<PlanePartition>,
}

impl Configuration {
    pub fn new(rvec: [usize; 4], parts: Vec<PlanePartition>) -> Result<Self> {
        if parts.len() != rvec.iter().sum::<usize>() {
            return Err(Error::InvalidInput(format!(
                "{} partitions for rank vector {rvec:?}",
                parts.len()
            )));
        }
        Ok(Configuration { rvec, parts })
    }

    pub fn empty(rvec: [usize; 4]) -> Self {
        let r = rvec.iter().sum();
        Configuration {
            rvec,
            parts: vec![PlanePartition::empty(); r],
        }
    }

    pub fn rvec(&self) -> [usize; 4] {
        self.rvec
    }

    pub fn registry(&self) -> VariableRegistry {
        VariableRegistry::new(self.rvec)
    }

    pub fn parts(&self) -> &[PlanePartition] {
        &self.parts
    }

    /// `π_{leg,copy}`, both 1-based.
    pub fn part(&self, leg: usize, copy: usize) -> Option<&PlanePartition> {
        self.registry().slot(leg, copy).map(|k| &self.parts[k])
    }

    /// `|π̄| = Σ |π_il|`.
    pub fn size(&self) -> usize {
        self.parts.iter().map(PlanePartition::size).sum()
    }

    /// `ρ_π̄`: the `(a,a,a,d)` count over all slots, each partition embedded
    /// on its own leg, mod 2.
    pub fn rho(&self) -> u8 {
        let reg = self.registry();
        let total: u32 = reg
            .slots()
            .iter()
            .zip(&self.parts)
            .map(|(&(leg, _), p)| sign_rho(&embed_to_solid(p, leg)) as u32)
            .sum();
        (total % 2) as u8
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reg = self.registry();
        let parts: Vec<String> = reg
            .slots()
            .iter()
            .zip(&self.parts)
            .map(|((i, l), p)| format!("π{i}{l}={p}"))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

// Compositions of n into k nonnegative parts, lexicographic.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All configurations of total size `n` for `rvec`, using `table` for the
/// per-slot partition lists.
pub fn enumerate_configurations_with(table: &PartitionTable, rvec: [usize; 4], n: usize) -> Vec<Configuration> {
    let r: usize = rvec.iter().sum();
    let mut out = Vec::new();
    for sizes in compositions(n, r) {
        let mut partial: Vec<Vec<PlanePartition>> = vec![Vec::new()];
        for &s in &sizes {
            let choices = table.get(s);
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|parts| Configuration { rvec, parts }));
    }
    out
}

pub fn enumerate_configurations(rvec: [usize; 4], n: usize) -> Vec<Configuration> {
    enumerate_configurations_with(&PartitionTable::new(n), rvec, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_plane_partitions(0), vec![PlanePartition::empty()]);
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_plane_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24, 48]);
    }

    #[test]
    fn partitions_are_distinct_and_valid() {
        for n in 0..=6 {
            let list = enumerate_plane_partitions(n);
            let set: BTreeSet<_> = list.iter().collect();
            assert_eq!(set.len(), list.len());
            for p in &list {
                assert_eq!(p.size(), n);
                assert!(is_order_ideal(p.boxes()));
            }
            let mut sorted = list.clone();
            sorted.sort();
            assert_eq!(sorted, list);
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        assert_eq!(enumerate_plane_partitions(5), enumerate_plane_partitions(5));
    }

    #[test]
    fn rejects_non_ideals() {
        assert!(PlanePartition::from_boxes(vec![[1, 0, 0]]).is_err());
        assert!(PlanePartition::from_boxes(vec![[0, 0, 0], [1, 1, 0], [1, 0, 0]]).is_err());
        assert!(PlanePartition::from_boxes(vec![[0, 0, 0], [0, 0, 1]]).is_ok());
    }

    #[test]
    fn configuration_counts() {
        assert_eq!(enumerate_configurations([1, 1, 0, 0], 1).len(), 2);
        assert_eq!(enumerate_configurations([0, 0, 0, 1], 4).len(), 13);
        for rvec in [[0, 0, 0, 0], [1, 0, 0, 0], [1, 2, 0, 1]] {
            let c = enumerate_configurations(rvec, 0);
            assert_eq!(c.len(), 1);
            assert_eq!(c[0].size(), 0);
        }
        assert!(enumerate_configurations([0, 0, 0, 0], 2).is_empty());
    }

    #[test]
    fn embedding_zeroes_the_leg_coordinate() {
        let one = PlanePartition::from_boxes(vec![[0, 0, 0]]).unwrap();
        let s = embed_to_solid(&one, 4);
        assert_eq!(s.boxes().collect::<Vec<_>>(), vec![&[0, 0, 0, 0]]);
        let pi = PlanePartition::from_boxes(vec![[0, 0, 0], [1, 0, 0], [0, 2, 0], [0, 1, 0]]).unwrap();
        for leg in 1..=4 {
            let s = embed_to_solid(&pi, leg);
            assert_eq!(s.size(), pi.size());
            assert!(s.boxes().all(|b| b[leg - 1] == 0));
            assert!(SolidPartition::from_boxes(s.boxes().copied()).is_ok());
        }
        let s = embed_to_solid(&pi, 2);
        assert!(s.boxes().any(|b| b == &[1, 0, 0, 0]));
        assert!(s.boxes().any(|b| b == &[0, 0, 2, 0]));
    }

    #[test]
    fn rho_examples() {
        let s = SolidPartition::from_boxes([[0, 0, 0, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(sign_rho(&s), 1);
        assert_eq!(sign_rho_tilde(&s, 4), sign_rho(&s));
        let empty = SolidPartition::from_boxes([]).unwrap();
        assert_eq!(sign_rho(&empty), 0);
        assert_eq!(sign_rho_tilde(&empty, 2), 0);
        assert!(SolidPartition::from_boxes([[0, 0, 0, 2]]).is_err());
    }

    #[test]
    fn rho_tilde_vanishes_on_embedded_partitions() {
        for n in 0..=5 {
            for pi in enumerate_plane_partitions(n) {
                for leg in 1..=4 {
                    assert_eq!(sign_rho_tilde(&embed_to_solid(&pi, leg), leg), 0);
                }
            }
        }
    }

    #[test]
    fn column_on_leg_one_has_odd_rho() {
        // (0,0,1) on leg 1 embeds to (0,0,0,1)
        let col = PlanePartition::from_boxes(vec![[0, 0, 0], [0, 0, 1]]).unwrap();
        let c = Configuration::new([1, 0, 0, 0], vec![col.clone()]).unwrap();
        assert_eq!(c.rho(), 1);
        let c4 = Configuration::new([0, 0, 0, 1], vec![col]).unwrap();
        assert_eq!(c4.rho(), 0);
    }

    #[test]
    fn configuration_accessors() {
        let p = PlanePartition::from_boxes(vec![[0, 0, 0]]).unwrap();
        let c = Configuration::new([1, 0, 2, 0], vec![PlanePartition::empty(), p.clone(), PlanePartition::empty()]).unwrap();
        assert_eq!(c.part(3, 1), Some(&p));
        assert_eq!(c.part(2, 1), None);
        assert_eq!(c.size(), 1);
        assert!(Configuration::new([1, 0, 0, 0], vec![]).is_err());
    }

    proptest! {
        #[test]
        fn removing_a_non_corner_box_breaks_the_ideal(n in 2usize..7, pick in 0usize..1000, drop in 0usize..100) {
            let list = enumerate_plane_partitions(n);
            let pi = &list[pick % list.len()];
            let boxes = pi.boxes().to_vec();
            let k = drop % boxes.len();
            let b = boxes[k];
            let mut rest = boxes.clone();
            rest.remove(k);
            // b is a removable corner iff no box sits directly above it in any direction
            let is_corner = (0..3).all(|d| {
                let mut up = b;
                up[d] += 1;
                !pi.contains(&up)
            });
            prop_assert_eq!(is_order_ideal(&rest), is_corner);
        }
    }
}
