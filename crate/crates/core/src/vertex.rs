//! Characters attached to a torus-fixed point: the tautological pieces, the
//! virtual tangent space, and the vertex term chosen as its square root.

use crate::algebra::{Character, Monomial, VariableRegistry};
use crate::error::{Error, Result};
use crate::partitions::{other_legs, Configuration, PlanePartition};

/// `P_I = Π_{l ∈ I} (1 - t_l)`.
pub fn char_p(indices: &[usize]) -> Character {
    indices.iter().fold(Character::one(), |acc, &l| {
        acc * (Character::one() - Character::monomial(Monomial::t(l)))
    })
}

/// `dual(P_{j1 j2 j3})` for the three legs other than `j`.
pub fn p_bar_of_leg(j: usize) -> Character {
    char_p(&other_legs(j)).dual()
}

/// `Z_π = Σ_{(a,b,c) ∈ π} t_{i1}^a t_{i2}^b t_{i3}^c` for `π` on leg `i`.
pub fn z_character(pi: &PlanePartition, leg: usize) -> Character {
    let others = other_legs(leg);
    Character::from_terms(pi.boxes().iter().map(|b| {
        let mut t = [0i32; 4];
        for (k, &j) in others.iter().enumerate() {
            t[j - 1] = 2 * b[k] as i32;
        }
        (Monomial::from_doubled(t, Vec::new()), 1)
    }))
}

/// The characters `Z_il`, `Q_i`, `Q`, `K_i`, `K` at one fixed point.
#[derive(Clone, Debug)]
pub struct FixedPointData {
    config: Configuration,
    registry: VariableRegistry,
    z: Vec<Character>,
    q_leg: [Character; 4],
    k_leg: [Character; 4],
    q: Character,
    k: Character,
}

pub fn build_fixed_point(config: &Configuration) -> FixedPointData {
    let registry = config.registry();
    let mut z = Vec::with_capacity(registry.rank());
    let mut q_leg: [Character; 4] = Default::default();
    let mut k_leg: [Character; 4] = Default::default();
    for (slot, (&(leg, _), pi)) in registry.slots().iter().zip(config.parts()).enumerate() {
        let zc = z_character(pi, leg);
        let w = Monomial::w(slot);
        q_leg[leg - 1] = &q_leg[leg - 1] + &zc.mul_monomial(&w);
        k_leg[leg - 1].add_term(w, 1);
        z.push(zc);
    }
    let q = q_leg.iter().sum();
    let k = k_leg.iter().sum();
    FixedPointData {
        config: config.clone(),
        registry,
        z,
        q_leg,
        k_leg,
        q,
        k,
    }
}

impl FixedPointData {
    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.registry
    }

    /// `Z_il` by zero-based slot.
    pub fn z(&self, slot: usize) -> &Character {
        &self.z[slot]
    }

    pub fn q_leg(&self, i: usize) -> &Character {
        &self.q_leg[i - 1]
    }

    pub fn k_leg(&self, i: usize) -> &Character {
        &self.k_leg[i - 1]
    }

    pub fn q(&self) -> &Character {
        &self.q
    }

    pub fn k(&self) -> &Character {
        &self.k
    }

    /// `Σ_i K_i t_i`.
    fn k_t(&self) -> Character {
        (1..=4).map(|i| self.k_leg(i).mul_monomial(&Monomial::t(i))).sum()
    }
}

/// `T = K̄Q + KQ̄ - P_1234 QQ̄ - Σ K_i t_i Q̄ - Σ K̄_i t_i^{-1} Q`.
pub fn virtual_tangent(fp: &FixedPointData) -> Character {
    let (q, k) = (fp.q(), fp.k());
    let qq = q * &q.dual();
    let kt = fp.k_t();
    &k.dual() * q + k * &q.dual() - &char_p(&[1, 2, 3, 4]) * &qq - &kt * &q.dual() - &kt.dual() * q
}

/// The ambient tangent `T_A = (Σ t_i^{-1} - 1) QQ̄ + K̄Q` at the fixed point.
pub fn tangent_ambient(fp: &FixedPointData) -> Character {
    let q = fp.q();
    let mut coeff = Character::term(Monomial::one(), -1);
    for i in 1..=4 {
        coeff.add_term(Monomial::kappa(i), 1);
    }
    &coeff * &(q * &q.dual()) + &fp.k().dual() * q
}

/// Fiber of the obstruction bundle
/// `L = Σ_{i<j} (t_i t_j)^{-1} QQ̄ + Σ K_i t_i Q̄ + Σ K̄_i t_i^{-1} Q`.
pub fn bundle_fiber(fp: &FixedPointData) -> Character {
    let q = fp.q();
    let mut pairs = Character::zero();
    for i in 1..=4 {
        for j in i + 1..=4 {
            pairs.add_term(Monomial::kappa(i).mul(&Monomial::kappa(j)), 1);
        }
    }
    let kt = fp.k_t();
    &pairs * &(q * &q.dual()) + &kt * &q.dual() + &kt.dual() * q
}

/// `T_A - L + dual(T_A)`: the virtual tangent read off the defining complex.
pub fn virtual_tangent_from_complex(fp: &FixedPointData) -> Character {
    let ta = tangent_ambient(fp);
    &ta - &bundle_fiber(fp) + ta.dual()
}

fn require_movable(v: Character, what: &str) -> Result<Character> {
    if v.is_movable() {
        Ok(v)
    } else {
        Err(Error::NotMovable(format!("{what} has fixed part {}", v.fixed_part())))
    }
}

/// The vertex term
/// `v = K̄Q - Σ_j K_j t_j Q̄ - Σ_j P̄_j Q_j Q̄_j - Σ_{i<j} P̄_j (Q_j Q̄_i + Q_i Q̄_j)`,
/// where `P̄_j = dual(P_{j1 j2 j3})`.
pub fn vertex(fp: &FixedPointData) -> Result<Character> {
    let q = fp.q();
    let mut v = &fp.k().dual() * q - &fp.k_t() * &q.dual();
    for j in 1..=4 {
        let qj = fp.q_leg(j);
        if qj.is_zero() {
            continue;
        }
        let pb = p_bar_of_leg(j);
        let mut cross = qj * &qj.dual();
        for i in 1..j {
            let qi = fp.q_leg(i);
            cross = cross + qj * &qi.dual() + qi * &qj.dual();
        }
        v = v - &pb * &cross;
    }
    require_movable(v, "vertex")
}

/// The `(ij, lk)` block of the vertex, for legs `i ≤ j` and copies
/// `l ≤ r_i`, `k ≤ r_j` (all pairs `(l, k)` when `i = j`).
///
/// Summing over every such index reproduces [`vertex`].
pub fn vertex_block(fp: &FixedPointData, i: usize, l: usize, j: usize, k: usize) -> Result<Character> {
    if i > j {
        return Err(Error::InvalidInput(format!("block ({i}{j}) needs i <= j")));
    }
    let reg = fp.registry();
    let (sa, sb) = match (reg.slot(i, l), reg.slot(j, k)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidInput(format!("no slots ({i},{l}), ({j},{k})"))),
    };
    let pb = p_bar_of_leg(j);
    // w_a^{-1} w_b (Z_b - t_leg_b Z̄_a - P̄_j Z_b Z̄_a)
    let half = |a: usize, b: usize, leg_b: usize| -> Character {
        let (za, zb) = (fp.z(a), fp.z(b));
        let body = zb - &za.dual().mul_monomial(&Monomial::t(leg_b)) - &pb * &(zb * &za.dual());
        body.mul_monomial(&Monomial::w(a).inv().mul(&Monomial::w(b)))
    };
    if i == j {
        Ok(half(sa, sb, j))
    } else {
        Ok(half(sa, sb, j) + half(sb, sa, i))
    }
}

/// All blocks of the vertex, in index order.
pub fn vertex_blocks(fp: &FixedPointData) -> Vec<((usize, usize, usize, usize), Character)> {
    let r = fp.registry().rvec();
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in i..=4 {
            for l in 1..=r[i - 1] {
                for k in 1..=r[j - 1] {
                    let b = vertex_block(fp, i, l, j, k).expect("indices in range");
                    out.push(((i, l, j, k), b));
                }
            }
        }
    }
    out
}

/// `ṽ = K̄Q - P̄_123 QQ̄`, the vertex for the solid-partition square root.
pub fn tilde_vertex(fp: &FixedPointData) -> Result<Character> {
    let q = fp.q();
    let v = &fp.k().dual() * q - &char_p(&[1, 2, 3]).dual() * &(q * &q.dual());
    require_movable(v, "tilde vertex")
}

/// `Σ_i K_i t_i Q̄`, the correction relating the two square roots.
pub fn tilde_correction(fp: &FixedPointData) -> Character {
    &fp.k_t() * &fp.q().dual()
}
