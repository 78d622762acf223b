//! Ideals of `U(F)` inside `Q(F)`, the ideals `𝕴_k` of `F0(n)`, and the
//! subfields `1 + J`.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use super::{q_of, QRing};
use crate::error::{Error, Result};
use crate::fields::ThreeField;

/// Largest `n` for the structural ideals `𝕴_k` of `F0(n)`.
pub const F0_IDEALS_MAX: usize = 24;

/// A set of Q-ids closed under addition and multiplication by `U(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal {
    members: Vec<u32>,
    generator: Option<u32>,
}

impl Ideal {
    pub fn from_members(members: impl IntoIterator<Item = u32>) -> Self {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self {
            members,
            generator: None,
        }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: u32) -> bool {
        self.members.binary_search(&q).is_ok()
    }

    pub fn generator(&self) -> Option<u32> {
        self.generator
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal::from_members(self.members.iter().copied().filter(|&m| other.contains(m)))
    }
}

/// The additive subgroup generated by `seeds` (and zero).
pub fn additive_span(q: &QRing, seeds: &[u32]) -> Vec<u32> {
    let mut set = BTreeSet::from([q.zero()]);
    let mut frontier = vec![q.zero()];
    while let Some(x) = frontier.pop() {
        for &s in seeds {
            let y = q.add(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// The ideal generated by `x`: the additive span of `x` and `Q x`. Since
/// `f x = x + (f - 1) x` with `f - 1 ∈ Q(F)`, this is also closed under
/// the action of `F`.
pub fn principal_ideal(q: &QRing, x: u32) -> Ideal {
    let mut seeds: Vec<u32> = q.elements().map(|r| q.mul(r, x)).collect();
    seeds.push(x);
    seeds.sort_unstable();
    seeds.dedup();
    Ideal {
        members: additive_span(q, &seeds),
        generator: Some(x),
    }
}

/// The sum `I + J`.
pub fn ideal_sum(q: &QRing, a: &Ideal, b: &Ideal) -> Ideal {
    let seeds: Vec<u32> = a.members.iter().chain(&b.members).copied().collect();
    Ideal::from_members(additive_span(q, &seeds))
}

pub fn is_ideal(q: &QRing, members: &[u32]) -> bool {
    let set = Ideal::from_members(members.iter().copied());
    set.contains(q.zero())
        && set.members.iter().all(|&a| {
            set.contains(q.neg(a))
                && set.members.iter().all(|&b| set.contains(q.add(a, b)))
                && q.elements().all(|r| set.contains(q.mul(r, a)))
        })
}

/// All ideals (including zero and the whole ring): sums of principal ideals.
pub fn all_ideals(q: &QRing) -> Vec<Ideal> {
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    let principal: Vec<Ideal> = q.elements().map(|x| principal_ideal(q, x)).collect();
    let mut generators = std::collections::HashMap::new();
    for p in &principal {
        generators.entry(p.members.clone()).or_insert(p.generator);
        found.insert(p.members.clone());
    }
    loop {
        let current: Vec<Vec<u32>> = found.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for p in &principal {
                let s = ideal_sum(q, &Ideal::from_members(a.iter().copied()), p);
                grew |= found.insert(s.members);
            }
        }
        if !grew {
            break;
        }
    }
    let mut ideals: Vec<Ideal> = found
        .into_iter()
        .map(|m| {
            let generator = generators.get(&m).copied().flatten();
            Ideal {
                members: m,
                generator,
            }
        })
        .collect();
    ideals.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    ideals
}

/// `𝕴_k` of `F0(n)`: Q-elements `Σ_{ν >= k} ε_ν t^ν`, for `1 <= k <= n`
/// (`𝕴_n` is the zero ideal). Q-id `m` is the polynomial with bits `m << 1`.
pub fn f0_ideal(n: usize, k: usize) -> Result<Ideal> {
    if n == 0 || n > F0_IDEALS_MAX || k == 0 || k > n {
        return Err(Error::OutOfRange(format!("ideal I_{k} of F0({n})")));
    }
    let shift = k - 1;
    let members = (0..1u32 << (n - k)).map(|m| m << shift).collect();
    Ok(Ideal {
        members,
        generator: Some(1 << shift),
    })
}

/// `𝕴_1, ..., 𝕴_{n-1}` of `F0(n)`.
pub fn f0_ideals(n: usize) -> Result<Vec<Ideal>> {
    (1..n).map(|k| f0_ideal(n, k)).collect()
}

/// The subfield `1 + J = {1 + 1 + g : q_{1,g} ∈ J}` of `F`.
pub fn subfield_from_ideal(f: &ThreeField, j: &Ideal) -> Result<ThreeField> {
    let q = q_of(f)?;
    if !is_ideal(&q, j.members()) {
        return Err(Error::NotAnIdeal(format!(
            "{} members in {}",
            j.len(),
            q.label()
        )));
    }
    let one = f.unit();
    let members: Vec<u32> = j.members().iter().map(|&g| f.tadd(one, one, g)).collect();
    f.restrict(format!("1 + J in {}", f.label()), &members)
}

/// Inclusion order of a family of ideals with its Hasse diagram.
#[derive(Clone, Debug, Serialize)]
pub struct IdealLattice {
    pub ring: String,
    pub nodes: Vec<Vec<String>>,
    pub orders: Vec<usize>,
    /// Covering relations `(smaller, larger)`.
    pub edges: Vec<(usize, usize)>,
}

pub fn ideal_lattice(q: &QRing, ideals: &[Ideal]) -> IdealLattice {
    let k = ideals.len();
    let below =
        |a: usize, b: usize| a != b && ideals[a].is_subset(&ideals[b]) && ideals[a] != ideals[b];
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                edges.push((a, b));
            }
        }
    }
    IdealLattice {
        ring: q.label().to_string(),
        nodes: ideals
            .iter()
            .map(|i| i.members.iter().map(|&m| q.render(m)).collect())
            .collect(),
        orders: ideals.iter().map(Ideal::len).collect(),
        edges,
    }
}

impl IdealLattice {
    pub fn to_dot(&self) -> String {
        let mut s = format!(
            "digraph ideals {{\n  label=\"{}\";\n  rankdir=BT;\n",
            self.ring
        );
        for (i, o) in self.orders.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"order {o}\"];\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self)
    }
}
