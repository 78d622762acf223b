//! Subfields of `F0(n)`, exponent semigroups and the subfield lattice.
//!
//! A subfield of `F0(n)` is `1 + V` for a GF(2)-subspace `V` of the
//! maximal ideal `tGF(2)[t]/t^n` that is closed under multiplication
//! (ternary sums are plain sums in characteristic 1). Subspaces are kept
//! as reduced echelon bases of coefficient words, pivoting on the lowest
//! set bit.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fields::{make_f0, ThreeField};
use crate::poly2::{clmul_trunc, TruncPoly};

/// Largest bound accepted by [`subsemigroups`].
pub const SEMIGROUP_MAX: usize = 20;
/// Largest bound for which [`subfield_lattice`] materializes subfields.
pub const LATTICE_MAX: usize = 20;
/// Largest bound for [`all_subfields`].
pub const ALL_SUBFIELDS_MAX: usize = 11;
/// Largest bound for which subfields are enumerated element by element.
pub const MEMBERS_MAX: usize = 24;

/// A subset of `{1, ..., n-1}` closed under addition whenever the sum stays
/// below `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentSemigroup {
    pub n: usize,
    pub members: Vec<usize>,
    pub generators: Vec<usize>,
}

fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Adds `g` to the closed set `set` (bit `i` for exponent `i`).
fn adjoin(set: u64, g: usize, n: usize) -> u64 {
    let mut s = set | 1 << g;
    for x in g + 1..n {
        if s >> (x - g) & 1 == 1 {
            s |= 1 << x;
        }
    }
    s
}

impl ExponentSemigroup {
    /// The semigroup `S(N0)` generated by `seeds`, with its generators
    /// chosen by the minimality recursion.
    pub fn generated(n: usize, seeds: &[usize]) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::BoundOutOfRange(n, 64));
        }
        if let Some(&bad) = seeds.iter().find(|&&s| s == 0 || s >= n) {
            return Err(Error::OutOfRange(format!("exponent {bad} outside 1..{n}")));
        }
        let mut sorted = seeds.to_vec();
        sorted.sort_unstable();
        let (mut set, mut gens) = (0u64, Vec::new());
        for s in sorted {
            if set >> s & 1 == 0 {
                set = adjoin(set, s, n);
                gens.push(s);
            }
        }
        Ok(Self {
            n,
            members: mask_members(set),
            generators: gens,
        })
    }

    /// Checks closure and recomputes the generators of a member set.
    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let s = Self::generated(n, members)?;
        let mut given = members.to_vec();
        given.sort_unstable();
        given.dedup();
        if s.members != given {
            return Err(Error::Invalid(format!(
                "{members:?} is not closed under bounded addition"
            )));
        }
        Ok(s)
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask() & !other.mask() == 0
    }
}

/// All bounded-addition subsemigroups of `{1, ..., n-1}`, ordered by their
/// generator sequences.
pub fn subsemigroups(n: usize) -> Result<Vec<ExponentSemigroup>> {
    if n == 0 || n > SEMIGROUP_MAX {
        return Err(Error::BoundOutOfRange(n, SEMIGROUP_MAX));
    }
    // Increasing generator sequences whose entries avoid the span of the
    // earlier ones name every semigroup exactly once.
    fn walk(n: usize, set: u64, gens: &mut Vec<usize>, out: &mut Vec<ExponentSemigroup>) {
        out.push(ExponentSemigroup {
            n,
            members: mask_members(set),
            generators: gens.clone(),
        });
        let from = gens.last().map_or(1, |&g| g + 1);
        for g in from..n {
            if set >> g & 1 == 0 {
                gens.push(g);
                walk(n, adjoin(set, g, n), gens, out);
                gens.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(n, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// A subfield `1 + V` of `F0(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subfield {
    n: usize,
    /// Reduced echelon basis of `V`, sorted by pivot (lowest set bit).
    basis: Vec<u64>,
    generators: Vec<TruncPoly>,
}

fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        if v >> b.trailing_zeros() & 1 == 1 {
            v ^= b;
        }
    }
    v
}

fn insert(basis: &mut Vec<u64>, v: u64) {
    let p = v.trailing_zeros();
    for b in basis.iter_mut() {
        if *b >> p & 1 == 1 {
            *b ^= v;
        }
    }
    let at = basis.partition_point(|b| b.trailing_zeros() < p);
    basis.insert(at, v);
}

/// Closes `basis` (already a subalgebra) under adjoining `extra`.
fn close(n: usize, mut basis: Vec<u64>, extra: &[u64]) -> Vec<u64> {
    let mut queue: VecDeque<u64> = extra.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        let r = reduce(&basis, v);
        if r == 0 {
            continue;
        }
        insert(&mut basis, r);
        for &b in &basis {
            let p = clmul_trunc(r, b, n);
            if p != 0 {
                queue.push_back(p);
            }
        }
    }
    basis
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MEMBERS_MAX {
        return Err(Error::BoundOutOfRange(n, MEMBERS_MAX));
    }
    Ok(())
}

/// The subfield generated by `gens`: `1 + Q0` with `Q0` the subring of
/// `Q(F0(n))` generated by the `g - 1` (the 2-unit is 0 here).
pub fn generated_subfield(n: usize, gens: &[TruncPoly]) -> Result<Subfield> {
    check_n(n)?;
    for g in gens {
        if g.bound() != n {
            return Err(Error::BoundMismatch(g.bound(), n));
        }
        if !g.constant_term() {
            return Err(Error::Invalid(format!("{g} is not in F0({n})")));
        }
    }
    let qs: Vec<u64> = gens.iter().map(|g| g.bits() & !1).collect();
    Ok(Subfield {
        n,
        basis: close(n, Vec::new(), &qs),
        generators: gens.to_vec(),
    })
}

/// `F0(n; g_1, ..., g_k) = <1 + t^{g_1}, ..., 1 + t^{g_k}>`.
pub fn monomial_subfield(n: usize, exps: &[usize]) -> Result<Subfield> {
    let gens = exps
        .iter()
        .map(|&g| {
            if g == 0 || g >= n {
                Err(Error::OutOfRange(format!("exponent {g} outside 1..{n}")))
            } else {
                TruncPoly::from_exponents(&[0, g], n)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    generated_subfield(n, &gens)
}

/// The least `m` with `(p - 1)^m = 0`; `<p>` is then isomorphic to `F0(m)`.
pub fn min_nilpotency_degree(p: &TruncPoly) -> Result<usize> {
    if !p.constant_term() {
        return Err(Error::Invalid(format!("{p} is not in F0({})", p.bound())));
    }
    let n = p.bound();
    let q = p.bits() & !1;
    let (mut power, mut m) = (q, 1);
    while power != 0 {
        power = clmul_trunc(power, q, n);
        m += 1;
    }
    Ok(m)
}

/// The image of the Frobenius, `{1 + sum eta_v t^{2v}}`.
pub fn squares_subfield(n: usize) -> Result<Subfield> {
    check_n(n)?;
    let images: Vec<u64> = (1..n)
        .map(|i| TruncPoly::raw(1 << i, n).frobenius().bits())
        .filter(|&b| b != 0)
        .collect();
    let basis = images.iter().fold(Vec::new(), |mut b, &v| {
        let r = reduce(&b, v);
        if r != 0 {
            insert(&mut b, r);
        }
        b
    });
    let generators = (1..n)
        .filter(|&i| 2 * i < n)
        .map(|i| TruncPoly::raw(1 | 1 << (2 * i), n))
        .collect();
    Ok(Subfield {
        n,
        basis,
        generators,
    })
}

impl Subfield {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        1 << self.basis.len()
    }

    pub fn generators(&self) -> &[TruncPoly] {
        &self.generators
    }

    /// Basis of `V` as polynomials `q` (so the subfield is `1 + span`).
    pub fn basis(&self) -> Vec<TruncPoly> {
        self.basis
            .iter()
            .map(|&b| TruncPoly::raw(b, self.n))
            .collect()
    }

    pub fn contains(&self, p: &TruncPoly) -> bool {
        p.bound() == self.n && p.constant_term() && reduce(&self.basis, p.bits() & !1) == 0
    }

    pub fn is_subset(&self, other: &Subfield) -> bool {
        self.n == other.n && self.basis.iter().all(|&b| reduce(&other.basis, b) == 0)
    }

    /// Members sorted by coefficient word.
    pub fn members(&self) -> Vec<TruncPoly> {
        let mut words = vec![1u64];
        for &b in &self.basis {
            let more: Vec<u64> = words.iter().map(|w| w ^ b).collect();
            words.extend(more);
        }
        words.sort_unstable();
        words
            .into_iter()
            .map(|w| TruncPoly::raw(w, self.n))
            .collect()
    }

    /// Member ids in `make_f0(n)`.
    pub fn f0_ids(&self) -> Vec<u32> {
        self.members()
            .iter()
            .map(|p| (p.bits() >> 1) as u32)
            .collect()
    }

    /// `Ex F = {a : 1 + t^a in F}`.
    pub fn exponents(&self) -> ExponentSemigroup {
        let members: Vec<usize> = (1..self.n)
            .filter(|&a| reduce(&self.basis, 1 << a) == 0)
            .collect();
        ExponentSemigroup::generated(self.n, &members).expect("exponents lie in 1..n")
    }

    /// Valuations of the nonzero elements of `V`: the pivots of the basis.
    pub fn leading_exponents(&self) -> ExponentSemigroup {
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|b| b.trailing_zeros() as usize)
            .collect();
        ExponentSemigroup::generated(self.n, &pivots).expect("pivots lie in 1..n")
    }

    /// For an order-2 subfield `{1, 1 + t^k(1 + P1)}`, the lower degree `k`.
    pub fn lower_degree(&self) -> Option<usize> {
        match self.basis.as_slice() {
            [b] => Some(b.trailing_zeros() as usize),
            _ => None,
        }
    }

    /// The subfield as a 3-field, restricted from `parent = make_f0(n)`.
    pub fn to_field(&self, parent: &ThreeField) -> Result<ThreeField> {
        let label = format!(
            "<{}> in F0({})",
            self.generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            self.n
        );
        parent.restrict(label, &self.f0_ids())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "order": self.order(),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "basis": self.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "exponents": self.exponents().members,
        })
    }
}

/// Every subfield of `F0(n)`, found by adjoining one element at a time to
/// subfields already known. Sorted by order, then basis.
pub fn all_subfields(n: usize) -> Result<Vec<Subfield>> {
    if n == 0 || n > ALL_SUBFIELDS_MAX {
        return Err(Error::BoundOutOfRange(n, ALL_SUBFIELDS_MAX));
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut frontier = vec![Vec::new()];
    seen.insert(Vec::new());
    while !frontier.is_empty() {
        let next: BTreeSet<Vec<u64>> = frontier
            .par_iter()
            .flat_map_iter(|basis: &Vec<u64>| {
                (1..1u64 << (n - 1))
                    .map(|m| m << 1)
                    .filter(|&q| reduce(basis, q) != 0)
                    .map(|q| close(n, basis.clone(), &[q]))
                    .collect::<BTreeSet<_>>()
            })
            .collect();
        frontier = next
            .into_iter()
            .filter(|b| seen.insert(b.clone()))
            .collect();
    }
    let mut all: Vec<Subfield> = seen
        .into_iter()
        .map(|basis| {
            let generators = basis.iter().map(|&b| TruncPoly::raw(b | 1, n)).collect();
            Subfield {
                n,
                basis,
                generators,
            }
        })
        .collect();
    all.sort_by(|a, b| {
        a.basis
            .len()
            .cmp(&b.basis.len())
            .then_with(|| a.basis.cmp(&b.basis))
    });
    Ok(all)
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeNode {
    pub semigroup: ExponentSemigroup,
    pub generators: Vec<String>,
    pub order: usize,
}

/// One subfield `G(n; S)` per subsemigroup `S`, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct SubfieldLattice {
    pub n: usize,
    pub semigroups: Vec<ExponentSemigroup>,
    pub subfields: Vec<Subfield>,
    /// Covering relations `(smaller, larger)` computed from the carriers.
    pub edges: Vec<(usize, usize)>,
}

pub fn subfield_lattice(n: usize) -> Result<SubfieldLattice> {
    if n == 0 || n > LATTICE_MAX {
        return Err(Error::BoundOutOfRange(n, LATTICE_MAX));
    }
    let mut semigroups = subsemigroups(n)?;
    semigroups.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    let subfields = semigroups
        .par_iter()
        .map(|s| monomial_subfield(n, &s.generators))
        .collect::<Result<Vec<_>>>()?;
    let k = subfields.len();
    let below: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|a| {
            (0..k)
                .map(|b| a != b && subfields[a].is_subset(&subfields[b]))
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if below[a][b] && !(0..k).any(|c| below[a][c] && below[c][b]) {
                edges.push((a, b));
            }
        }
    }
    Ok(SubfieldLattice {
        n,
        semigroups,
        subfields,
        edges,
    })
}

fn set_text(s: &[usize]) -> String {
    format!(
        "{{{}}}",
        s.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

impl SubfieldLattice {
    pub fn len(&self) -> usize {
        self.subfields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subfields.is_empty()
    }

    pub fn nodes(&self) -> Vec<LatticeNode> {
        self.semigroups
            .iter()
            .zip(&self.subfields)
            .map(|(s, f)| LatticeNode {
                semigroup: s.clone(),
                generators: f.generators.iter().map(|g| g.to_string()).collect(),
                order: f.order(),
            })
            .collect()
    }

    /// Hasse diagram, smallest subfield at the bottom.
    pub fn to_dot(&self) -> String {
        let mut s = format!(
            "digraph subfields {{\n  label=\"subfields of F0({})\";\n  rankdir=BT;\n",
            self.n
        );
        for (i, (sg, f)) in self.semigroups.iter().zip(&self.subfields).enumerate() {
            s.push_str(&format!(
                "  n{i} [label=\"Ex={}\\norder {}\"];\n",
                set_text(&sg.members),
                f.order()
            ));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<_> = self
            .nodes()
            .into_iter()
            .map(|nd| json!({ "n": self.n, "semigroup": nd.semigroup.members, "generators": nd.semigroup.generators, "order": nd.order }))
            .collect();
        json!({ "n": self.n, "nodes": nodes, "edges": self.edges })
    }
}

/// Groups subfields into isomorphism classes by exhaustive search on their
/// restricted 3-field structures. Returns a class index per subfield.
pub fn isomorphism_classes(n: usize, subfields: &[Subfield]) -> Result<Vec<usize>> {
    let parent = make_f0(n)?;
    let structures = subfields
        .iter()
        .map(|s| s.to_field(&parent)?.structure())
        .collect::<Result<Vec<_>>>()?;
    let mut reps: Vec<usize> = Vec::new();
    let mut class = Vec::with_capacity(subfields.len());
    for (i, st) in structures.iter().enumerate() {
        let found = reps.iter().position(|&r| {
            subfields[r].order() == subfields[i].order()
                && crate::structure::are_isomorphic(&structures[r], st)
        });
        class.push(found.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(exps: &[usize], n: usize) -> TruncPoly {
        TruncPoly::from_exponents(exps, n).unwrap()
    }

    #[test]
    fn small_semigroups() {
        let m = |n| {
            subsemigroups(n)
                .unwrap()
                .into_iter()
                .map(|s| s.members)
                .collect::<BTreeSet<_>>()
        };
        assert_eq!(m(2), BTreeSet::from([vec![], vec![1]]));
        assert_eq!(m(3), BTreeSet::from([vec![], vec![2], vec![1, 2]]));
        let five = m(5);
        assert!(
            five.contains(&vec![2, 4])
                && five.contains(&vec![3, 4])
                && five.contains(&vec![1, 2, 3, 4])
        );
        assert!(!five.contains(&vec![2]));
    }

    #[test]
    fn semigroups_match_subset_scan() {
        for n in 1..=10 {
            let closed = (0u64..1 << n).filter(|s| s & 1 == 0).filter(|&s| {
                (1..n).all(|a| {
                    s >> a & 1 == 0 || (1..n - a).all(|b| s >> b & 1 == 0 || s >> (a + b) & 1 == 1)
                })
            });
            let expected: BTreeSet<u64> = closed.collect();
            let got: BTreeSet<u64> = subsemigroups(n)
                .unwrap()
                .iter()
                .map(ExponentSemigroup::mask)
                .collect();
            assert_eq!(got, expected, "n = {n}");
            assert_eq!(subsemigroups(n).unwrap().len(), expected.len());
        }
    }

    #[test]
    fn generator_recursion() {
        let s = ExponentSemigroup::generated(10, &[6, 4, 9, 8]).unwrap();
        assert_eq!(s.generators, vec![4, 6, 9]);
        assert_eq!(s.members, vec![4, 6, 8, 9]);
        assert!(ExponentSemigroup::from_members(5, &[1]).is_err());
    }

    #[test]
    fn generated_examples() {
        let f = generated_subfield(5, &[p(&[0, 2], 5)]).unwrap();
        let expected: Vec<TruncPoly> =
            vec![p(&[0], 5), p(&[0, 2], 5), p(&[0, 4], 5), p(&[0, 2, 4], 5)];
        let mut members = f.members();
        members.sort_by_key(|m| m.bits());
        let mut e = expected.clone();
        e.sort_by_key(|m| m.bits());
        assert_eq!(members, e);
        assert_eq!(f.exponents().members, vec![2, 4]);
        assert_eq!(generated_subfield(5, &[p(&[0], 5)]).unwrap().order(), 1);
        let g = generated_subfield(5, &[p(&[0, 2, 3], 5)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(min_nilpotency_degree(&p(&[0, 2, 3], 5)).unwrap(), 3);
    }

    #[test]
    fn closure_agrees_with_field_closure() {
        let n = 6;
        let f0 = make_f0(n).unwrap();
        let st = f0.structure().unwrap();
        for a in 0..32u32 {
            for b in [0u32, 5, 17, 30] {
                let gens = [f0.poly(a).unwrap(), f0.poly(b).unwrap()];
                let sub = generated_subfield(n, &gens).unwrap();
                let mut c = st.closure(&[a, b]);
                c.sort_unstable();
                assert_eq!(sub.f0_ids(), c);
            }
        }
    }

    #[test]
    fn nilpotency() {
        assert_eq!(min_nilpotency_degree(&p(&[0, 1], 5)).unwrap(), 5);
        assert_eq!(min_nilpotency_degree(&p(&[0], 5)).unwrap(), 1);
        for n in 2..10 {
            assert_eq!(min_nilpotency_degree(&p(&[0, n - 1], n)).unwrap(), 2);
        }
        assert!(min_nilpotency_degree(&p(&[1], 5)).is_err());
    }

    #[test]
    fn squares() {
        let s5 = squares_subfield(5).unwrap();
        assert_eq!(
            s5.f0_ids(),
            generated_subfield(5, &[p(&[0, 2], 5)]).unwrap().f0_ids()
        );
        assert_eq!(squares_subfield(2).unwrap().order(), 1);
        assert_eq!(squares_subfield(6).unwrap().order(), 4);
    }

    #[test]
    fn lattice_small() {
        let l = subfield_lattice(3).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(
            l.subfields.iter().map(Subfield::order).collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
        assert_eq!(l.edges, vec![(0, 1), (1, 2)]);
        assert!(l.to_dot().contains("Ex={2}"));
        assert_eq!(subfield_lattice(2).unwrap().len(), 2);
    }

    #[test]
    fn all_subfield_counts() {
        let counts: Vec<usize> = (2..=7).map(|n| all_subfields(n).unwrap().len()).collect();
        assert_eq!(counts[2..], [6, 9, 24, 35]);
    }
}
