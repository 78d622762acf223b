//! Finite groups given by multiplication tables, a small catalog of 2-groups
//! and cycle graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structure::{find_isomorphism, Structure, DEFAULT_SEED};

/// Groups up to this order get an exhaustive associativity check.
pub const ASSOC_EXHAUSTIVE: usize = 128;
/// Largest order accepted by [`identify_group`] and [`cycle_graph`].
pub const IDENTIFY_MAX: usize = 64;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity (sampled
    /// above [`ASSOC_EXHAUSTIVE`] elements).
    pub fn from_table(labels: Vec<String>, table: Vec<u32>) -> Result<Self> {
        let order = labels.len();
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x as usize >= order)
        {
            return Err(Error::NotAGroup("table is not closed".into()));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", labels[a])))?;
            if at(b, a) != identity {
                return Err(Error::NotAGroup(format!(
                    "{} has no two-sided inverse",
                    labels[a]
                )));
            }
            inverse[a] = b as u32;
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= ASSOC_EXHAUSTIVE {
            for a in 0..order {
                for b in 0..order {
                    if let Some(c) = (0..order).find(|&c| !assoc(a, b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            for _ in 0..1 << 16 {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !assoc(a, b, c) {
                    return Err(Error::NotAGroup(format!(
                        "not associative at ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
        Ok(Self {
            order,
            table,
            identity: identity as u32,
            inverse,
            labels,
        })
    }

    pub fn from_fn(labels: Vec<String>, mul: impl Fn(u32, u32) -> u32) -> Result<Self> {
        let n = labels.len() as u32;
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| mul(a, b))
            .collect();
        Self::from_table(labels, table)
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("a^{i}")).collect();
        Self::from_fn(labels, |a, b| (a + b) % n as u32).expect("cyclic group")
    }

    /// Dihedral group of order `2n`: `r^i s^j` with id `i + n j`.
    pub fn dihedral(n: usize) -> Self {
        let m = n as u32;
        let labels = (0..2 * n)
            .map(|x| format!("r^{}{}", x % n, if x >= n { "s" } else { "" }))
            .collect();
        Self::from_fn(labels, |a, b| {
            let (i, j, k, l) = (a % m, a / m, b % m, b / m);
            let r = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            r + m * ((j + l) % 2)
        })
        .expect("dihedral group")
    }

    /// Generalized quaternion group of order `4m`: `<a, b | a^{2m}, b^2 = a^m, b a b^-1 = a^-1>`.
    pub fn quaternion(m: usize) -> Self {
        let n = 2 * m as u32;
        let labels = (0..4 * m)
            .map(|x| format!("a^{}{}", x as u32 % n, if x as u32 >= n { "b" } else { "" }))
            .collect();
        Self::from_fn(labels, |x, y| {
            let (i, j, k, l) = (x % n, x / n, y % n, y / n);
            // a^i b^j a^k b^l = a^{i + (-1)^j k} b^{j+l}, with b^2 = a^m.
            let mut e = if j == 0 { i + k } else { i + n - k };
            let mut s = j + l;
            if s == 2 {
                e += m as u32;
                s = 0;
            }
            e % n + n * s
        })
        .expect("quaternion group")
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        let m = self.order as u32;
        let labels = (0..self.order * other.order)
            .map(|x| {
                format!(
                    "({},{})",
                    self.labels[x % self.order],
                    other.labels[x / self.order]
                )
            })
            .collect();
        Self::from_fn(labels, |x, y| {
            self.mul(x % m, y % m) + m * other.mul(x / m, y / m)
        })
        .expect("direct product")
    }

    /// `N ⋊ H` with `action[h]` the automorphism of `N` by which `h` acts;
    /// `(n1, h1)(n2, h2) = (n1 h1(n2), h1 h2)`, id `n + |N| h`.
    pub fn semidirect_product(normal: &Self, acting: &Self, action: &[Vec<u32>]) -> Result<Self> {
        let m = normal.order as u32;
        if action.len() != acting.order || action.iter().any(|a| a.len() != normal.order) {
            return Err(Error::Invalid("action has the wrong shape".into()));
        }
        let nst = normal.structure();
        for (h, a) in action.iter().enumerate() {
            if !nst.is_homomorphism(&nst, a)
                || a.iter().collect::<BTreeSet<_>>().len() != normal.order
            {
                return Err(Error::Invalid(format!(
                    "action of {} is not an automorphism",
                    acting.labels[h]
                )));
            }
        }
        for h1 in 0..acting.order as u32 {
            for h2 in 0..acting.order as u32 {
                let hh = acting.mul(h1, h2) as usize;
                if (0..m).any(|x| {
                    action[hh][x as usize]
                        != action[h1 as usize][action[h2 as usize][x as usize] as usize]
                }) {
                    return Err(Error::Invalid("action is not a homomorphism".into()));
                }
            }
        }
        let labels = (0..normal.order * acting.order)
            .map(|x| {
                format!(
                    "({},{})",
                    normal.labels[x % normal.order],
                    acting.labels[x / normal.order]
                )
            })
            .collect();
        Self::from_fn(labels, |x, y| {
            let (n1, h1, n2, h2) = (x % m, x / m, y % m, y / m);
            normal.mul(n1, action[h1 as usize][n2 as usize]) + m * acting.mul(h1, h2)
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, k: usize) -> u32 {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut inside = vec![false; self.order];
        inside[self.identity as usize] = true;
        let mut known = vec![self.identity];
        let mut i = 0;
        for &g in gens {
            if !inside[g as usize] {
                inside[g as usize] = true;
                known.push(g);
            }
        }
        while i < known.len() {
            let x = known[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    known.push(y);
                }
            }
            i += 1;
        }
        known.sort_unstable();
        known
    }

    pub fn is_subgroup(&self, members: &[u32]) -> bool {
        let set: BTreeSet<u32> = members.iter().copied().collect();
        set.contains(&self.identity)
            && members.iter().all(|&a| {
                members
                    .iter()
                    .all(|&b| set.contains(&self.mul(a, self.inv(b))))
            })
    }

    pub fn is_normal(&self, members: &[u32]) -> bool {
        let set: BTreeSet<u32> = members.iter().copied().collect();
        self.is_subgroup(members)
            && self.elements().all(|g| {
                members
                    .iter()
                    .all(|&h| set.contains(&self.mul(self.mul(g, h), self.inv(g))))
            })
    }

    pub fn center(&self) -> Vec<u32> {
        self.elements()
            .filter(|&a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<u32> {
        let comms: BTreeSet<u32> = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)))
            .collect();
        self.subgroup(&comms.into_iter().collect::<Vec<_>>())
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut hist = BTreeMap::new();
        for a in self.elements() {
            *hist.entry(self.element_order(a)).or_insert(0usize) += 1;
        }
        GroupFingerprint {
            order: self.order,
            abelian: self.is_abelian(),
            order_histogram: hist.into_iter().collect(),
            center_order: self.center().len(),
            derived_order: self.derived_subgroup().len(),
            exponent: self.exponent(),
        }
    }

    /// The table as a one-operation structure with the identity as constant.
    pub fn structure(&self) -> Structure {
        Structure::new(self.order, vec![self.table.clone()], vec![self.identity])
            .expect("valid table")
    }

    /// A generating set chosen greedily by the structure search.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens = self.structure().generators();
        gens.retain(|&g| g != self.identity);
        gens
    }

    /// The subgroup on `members` with its own table.
    pub fn restrict(&self, members: &[u32]) -> Result<Self> {
        if !self.is_subgroup(members) {
            return Err(Error::NotAGroup("not a subgroup".into()));
        }
        let index: BTreeMap<u32, u32> = members
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i as u32))
            .collect();
        let labels = members
            .iter()
            .map(|&m| self.labels[m as usize].clone())
            .collect();
        Self::from_fn(labels, |a, b| {
            index[&self.mul(members[a as usize], members[b as usize])]
        })
    }

    /// Automorphisms as permutations, in search order.
    pub fn automorphisms(&self, limit: usize) -> Vec<Vec<u32>> {
        let st = self.structure();
        crate::structure::homomorphisms(&st, &st, usize::MAX)
            .into_iter()
            .filter(|m| m.iter().collect::<BTreeSet<_>>().len() == self.order)
            .take(limit)
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Isomorphism invariants used to prune the catalog search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    /// `(element order, count)` pairs.
    pub order_histogram: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: usize,
}

pub fn find_group_isomorphism(a: &FiniteGroup, b: &FiniteGroup, seed: u64) -> Option<Vec<u32>> {
    if a.order != b.order {
        return None;
    }
    find_isomorphism(&a.structure(), &b.structure(), seed)
}

pub fn groups_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.fingerprint() == b.fingerprint() && find_group_isomorphism(a, b, DEFAULT_SEED).is_some()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
    pub fingerprint: GroupFingerprint,
}

fn cyclic_action(n: &FiniteGroup, act: Vec<u32>, acting: &FiniteGroup) -> Vec<Vec<u32>> {
    // `acting` cyclic, generator `a^1` acting by `act`.
    let mut out = vec![n.elements().collect::<Vec<_>>()];
    for k in 1..acting.order() {
        let prev: &Vec<u32> = &out[k - 1];
        out.push(prev.iter().map(|&x| act[x as usize]).collect());
    }
    out
}

/// `E8 ⋊ C4` with the generator of `C4` acting on `GF(2)^3` by a unipotent
/// Jordan block (order 4, faithful). This is SmallGroup(32,6).
fn e8_by_c4() -> FiniteGroup {
    let e8 = FiniteGroup::cyclic(2)
        .direct_product(&FiniteGroup::cyclic(2))
        .direct_product(&FiniteGroup::cyclic(2));
    // e8 ids are bit vectors (x0, x1, x2); J: e0 -> e0, e1 -> e1 + e0, e2 -> e2 + e1.
    let jordan = |v: u32| {
        let (x0, x1, x2) = (v & 1, v >> 1 & 1, v >> 2 & 1);
        (x0 ^ x1) | (x1 ^ x2) << 1 | x2 << 2
    };
    let c4 = FiniteGroup::cyclic(4);
    let act = cyclic_action(&e8, (0..8).map(jordan).collect(), &c4);
    FiniteGroup::semidirect_product(&e8, &c4, &act).expect("Jordan action")
}

/// `K4 ⋊ C4` with the generator swapping the two factors of `K4`
/// (SmallGroup(16,3)).
fn k4_by_c4() -> FiniteGroup {
    let k4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
    let c4 = FiniteGroup::cyclic(4);
    let act = cyclic_action(&k4, vec![0, 2, 1, 3], &c4);
    FiniteGroup::semidirect_product(&k4, &c4, &act).expect("swap action")
}

/// `C_m ⋊ C_2` with the involution acting by `a -> a^r`.
fn metacyclic(m: usize, r: u32) -> FiniteGroup {
    let cm = FiniteGroup::cyclic(m);
    let c2 = FiniteGroup::cyclic(2);
    let act = cyclic_action(&cm, (0..m as u32).map(|x| x * r % m as u32).collect(), &c2);
    FiniteGroup::semidirect_product(&cm, &c2, &act).expect("power map action")
}

fn build_catalog() -> Vec<CatalogEntry> {
    let c = FiniteGroup::cyclic;
    let mut list: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 1..=64 {
        list.push((format!("C{n}"), c(n)));
    }
    for n in 3..=32 {
        list.push((format!("D{n}"), FiniteGroup::dihedral(n)));
    }
    for m in [2, 4, 8, 16] {
        list.push((format!("Q{}", 4 * m), FiniteGroup::quaternion(m)));
    }
    let prod = |a: &FiniteGroup, b: &FiniteGroup| a.direct_product(b);
    let e = |k: usize| (1..k).fold(c(2), |g, _| g.direct_product(&c(2)));
    list.extend([
        ("C2 x C2".to_string(), e(2)),
        ("C4 x C2".into(), prod(&c(4), &c(2))),
        ("C2 x C2 x C2".into(), e(3)),
        ("C8 x C2".into(), prod(&c(8), &c(2))),
        ("C4 x C4".into(), prod(&c(4), &c(4))),
        ("C4 x C2 x C2".into(), prod(&c(4), &e(2))),
        ("C2^4".into(), e(4)),
        ("D4 x C2".into(), prod(&FiniteGroup::dihedral(4), &c(2))),
        ("Q8 x C2".into(), prod(&FiniteGroup::quaternion(2), &c(2))),
        ("C4 : C4".into(), {
            let act = cyclic_action(&c(4), vec![0, 3, 2, 1], &c(4));
            FiniteGroup::semidirect_product(&c(4), &c(4), &act).expect("inversion action")
        }),
        ("SD16".into(), metacyclic(8, 3)),
        ("M16".into(), metacyclic(8, 5)),
        (
            "(C4 x C2) : C2 = K4 : C4 [SmallGroup(16,3)]".into(),
            k4_by_c4(),
        ),
        ("C16 x C2".into(), prod(&c(16), &c(2))),
        ("C8 x C4".into(), prod(&c(8), &c(4))),
        ("C8 x C2 x C2".into(), prod(&c(8), &e(2))),
        ("C4 x C4 x C2".into(), prod(&prod(&c(4), &c(4)), &c(2))),
        ("C4 x C2^3".into(), prod(&c(4), &e(3))),
        ("C2^5".into(), e(5)),
        ("D4 x C4".into(), prod(&FiniteGroup::dihedral(4), &c(4))),
        (
            "D4 x C2 x C2".into(),
            prod(&FiniteGroup::dihedral(4), &e(2)),
        ),
        ("Q8 x C4".into(), prod(&FiniteGroup::quaternion(2), &c(4))),
        (
            "Q8 x C2 x C2".into(),
            prod(&FiniteGroup::quaternion(2), &e(2)),
        ),
        ("D8 x C2".into(), prod(&FiniteGroup::dihedral(8), &c(2))),
        ("SD32".into(), metacyclic(16, 7)),
        ("M32".into(), metacyclic(16, 9)),
        (
            "((C4 x C2) : C2) : C2 = C2^3 : C4 [SmallGroup(32,6)]".into(),
            e8_by_c4(),
        ),
    ]);
    list.into_iter()
        .map(|(name, group)| {
            let fingerprint = group.fingerprint();
            CatalogEntry {
                name,
                group,
                fingerprint,
            }
        })
        .collect()
}

/// The reference groups, constructed once.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn catalog_group(name: &str) -> Option<&'static FiniteGroup> {
    catalog().iter().find(|e| e.name == name).map(|e| &e.group)
}

#[derive(Clone, Debug, Serialize)]
pub struct Identification {
    /// Catalog name, or `None` when no reference group matches.
    pub name: Option<String>,
    pub fingerprint: GroupFingerprint,
}

impl Identification {
    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or("unidentified")
    }
}

/// Fingerprint filter followed by an explicit isomorphism search.
pub fn identify_group(g: &FiniteGroup) -> Result<Identification> {
    if g.order() > IDENTIFY_MAX {
        return Err(Error::TooLarge {
            what: "group identification",
            size: g.order(),
            limit: IDENTIFY_MAX,
        });
    }
    let fingerprint = g.fingerprint();
    let name = catalog()
        .iter()
        .filter(|e| e.fingerprint == fingerprint)
        .find(|e| find_group_isomorphism(g, &e.group, DEFAULT_SEED).is_some())
        .map(|e| e.name.clone());
    Ok(Identification { name, fingerprint })
}

/// Cycle graph: one cycle per maximal cyclic subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct CycleGraph {
    pub labels: Vec<String>,
    /// Each cycle starts at the identity: `e, g, g^2, ...`.
    pub cycles: Vec<Vec<u32>>,
    /// Undirected edges `(a, b)` with `a < b`, deduplicated.
    pub edges: Vec<(u32, u32)>,
    /// Conjugation pairs drawn dotted.
    pub dotted: Vec<(u32, u32)>,
}

/// `conjugation[a]` is the image of `a` under an involution to draw dotted.
pub fn cycle_graph(g: &FiniteGroup, conjugation: Option<&[u32]>) -> Result<CycleGraph> {
    if g.order() > IDENTIFY_MAX {
        return Err(Error::TooLarge {
            what: "cycle graph",
            size: g.order(),
            limit: IDENTIFY_MAX,
        });
    }
    let cyclic: Vec<Vec<u32>> = g.elements().map(|a| g.subgroup(&[a])).collect();
    let mut maximal: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for a in g.elements() {
        let s = &cyclic[a as usize];
        let contained = g.elements().any(|b| {
            cyclic[b as usize].len() > s.len()
                && s.iter()
                    .all(|x| cyclic[b as usize].binary_search(x).is_ok())
        });
        if !contained && s.len() > 1 {
            maximal.entry(s.clone()).or_insert(a);
        }
    }
    let mut cycles: Vec<Vec<u32>> = maximal
        .values()
        .map(|&a| {
            let mut cyc = vec![g.identity()];
            let mut x = a;
            while x != g.identity() {
                cyc.push(x);
                x = g.mul(x, a);
            }
            cyc
        })
        .collect();
    cycles.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut edges = BTreeSet::new();
    for cyc in &cycles {
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let dotted = match conjugation {
        Some(c) => {
            if c.len() != g.order() {
                return Err(Error::Invalid("conjugation has the wrong length".into()));
            }
            g.elements()
                .filter(|&a| c[a as usize] > a)
                .map(|a| (a, c[a as usize]))
                .collect()
        }
        None => Vec::new(),
    };
    Ok(CycleGraph {
        labels: g.labels().to_vec(),
        cycles,
        edges: edges.into_iter().collect(),
        dotted,
    })
}

impl CycleGraph {
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n  node [shape=circle];\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{l}\"];\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -- n{b};\n"));
        }
        for (a, b) in &self.dotted {
            s.push_str(&format!("  n{a} -- n{b} [style=dotted];\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Cycle lengths, longest first.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }
}
