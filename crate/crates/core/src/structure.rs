//! Finite algebras given by binary operation tables and distinguished
//! constants, with closure computation and backtracking searches for
//! homomorphisms and isomorphisms.
//!
//! Ternary structures are encoded through binary operations that determine
//! them (see [`crate::fields::ThreeField::structure`]), so a single search
//! routine serves 3-fields, rings and groups alike.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default seed for randomized candidate orderings.
pub const DEFAULT_SEED: u64 = 0x7433_6600_5eed;

const NONE: u32 = u32::MAX;

/// A finite carrier `0..size` with binary operation tables and constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    size: usize,
    ops: Vec<Vec<u32>>,
    consts: Vec<u32>,
}

impl Structure {
    pub fn new(size: usize, ops: Vec<Vec<u32>>, consts: Vec<u32>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("empty carrier".into()));
        }
        for (i, t) in ops.iter().enumerate() {
            if t.len() != size * size {
                return Err(Error::Invalid(format!(
                    "operation {i} has {} entries, expected {}",
                    t.len(),
                    size * size
                )));
            }
            if t.iter().any(|&v| v as usize >= size) {
                return Err(Error::Invalid(format!("operation {i} leaves the carrier")));
            }
        }
        if consts.iter().any(|&c| c as usize >= size) {
            return Err(Error::Invalid("constant outside the carrier".into()));
        }
        Ok(Self { size, ops, consts })
    }

    /// Tabulates `nops` operations given as a function `(op, a, b) -> c`.
    pub fn from_fn(
        size: usize,
        nops: usize,
        f: impl Fn(usize, u32, u32) -> u32,
        consts: Vec<u32>,
    ) -> Result<Self> {
        let ops = (0..nops)
            .map(|k| {
                let mut t = Vec::with_capacity(size * size);
                for a in 0..size as u32 {
                    for b in 0..size as u32 {
                        t.push(f(k, a, b));
                    }
                }
                t
            })
            .collect();
        Self::new(size, ops, consts)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    pub fn consts(&self) -> &[u32] {
        &self.consts
    }

    #[inline]
    pub fn op(&self, k: usize, a: u32, b: u32) -> u32 {
        self.ops[k][a as usize * self.size + b as usize]
    }

    pub fn table(&self, k: usize) -> &[u32] {
        &self.ops[k]
    }

    /// Smallest substructure containing the constants and `seeds`, sorted.
    pub fn closure(&self, seeds: &[u32]) -> Vec<u32> {
        let mut inside = vec![false; self.size];
        let mut known = Vec::new();
        for &s in self.consts.iter().chain(seeds) {
            if !inside[s as usize] {
                inside[s as usize] = true;
                known.push(s);
            }
        }
        self.grow(&mut inside, &mut known, 0);
        known.sort_unstable();
        known
    }

    fn grow(&self, inside: &mut [bool], known: &mut Vec<u32>, start: usize) {
        let mut i = start;
        while i < known.len() {
            let x = known[i];
            for j in 0..=i {
                let y = known[j];
                for k in 0..self.ops.len() {
                    for z in [self.op(k, x, y), self.op(k, y, x)] {
                        if !inside[z as usize] {
                            inside[z as usize] = true;
                            known.push(z);
                        }
                    }
                }
            }
            i += 1;
        }
    }

    /// A small generating set, chosen greedily so that each new generator
    /// has as few signature-compatible partners as possible.
    pub fn generators(&self) -> Vec<u32> {
        let sigs = self.signatures();
        let mut class_size = std::collections::HashMap::new();
        for s in &sigs {
            *class_size.entry(s.clone()).or_insert(0usize) += 1;
        }
        let mut inside = vec![false; self.size];
        let mut known = Vec::new();
        for &c in &self.consts {
            if !inside[c as usize] {
                inside[c as usize] = true;
                known.push(c);
            }
        }
        self.grow(&mut inside, &mut known, 0);
        let mut gens = Vec::new();
        while known.len() < self.size {
            let g = (0..self.size as u32)
                .filter(|&x| !inside[x as usize])
                .min_by_key(|&x| (class_size[&sigs[x as usize]], x))
                .expect("carrier not yet exhausted");
            gens.push(g);
            let start = known.len();
            inside[g as usize] = true;
            known.push(g);
            self.grow(&mut inside, &mut known, start);
        }
        gens
    }

    /// Isomorphism-invariant data attached to each element.
    pub fn signatures(&self) -> Vec<Vec<usize>> {
        (0..self.size as u32)
            .map(|x| {
                let mut sig = Vec::new();
                for k in 0..self.ops.len() {
                    let fixes = (0..self.size as u32)
                        .filter(|&y| self.op(k, x, y) == y)
                        .count();
                    let absorbs = (0..self.size as u32)
                        .filter(|&y| self.op(k, x, y) == x)
                        .count();
                    let (tail, period) = self.square_orbit(k, x);
                    sig.extend([fixes, absorbs, tail, period]);
                }
                for &c in &self.consts {
                    sig.push(usize::from(x == c));
                }
                sig
            })
            .collect()
    }

    /// Tail and period of the sequence `x, x*x, (x*x)*(x*x), ...`.
    fn square_orbit(&self, k: usize, x: u32) -> (usize, usize) {
        let mut seen = std::collections::HashMap::new();
        let mut cur = x;
        let mut step = 0usize;
        loop {
            if let Some(&first) = seen.get(&cur) {
                return (first, step - first);
            }
            seen.insert(cur, step);
            cur = self.op(k, cur, cur);
            step += 1;
        }
    }

    /// Whether `map` (indexed by elements of `self`) preserves every
    /// operation and constant.
    pub fn is_homomorphism(&self, other: &Structure, map: &[u32]) -> bool {
        if map.len() != self.size
            || self.ops.len() != other.ops.len()
            || self.consts.len() != other.consts.len()
            || map.iter().any(|&m| m as usize >= other.size)
        {
            return false;
        }
        if self
            .consts
            .iter()
            .zip(&other.consts)
            .any(|(&c, &d)| map[c as usize] != d)
        {
            return false;
        }
        (0..self.ops.len()).all(|k| {
            (0..self.size as u32).all(|a| {
                (0..self.size as u32).all(|b| {
                    map[self.op(k, a, b) as usize] == other.op(k, map[a as usize], map[b as usize])
                })
            })
        })
    }

    /// The substructure on a closed subset, re-indexed in the given order.
    pub fn restrict(&self, members: &[u32]) -> Result<Structure> {
        let mut index = vec![NONE; self.size];
        for (i, &m) in members.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        let mut ops = Vec::with_capacity(self.ops.len());
        for k in 0..self.ops.len() {
            let mut t = Vec::with_capacity(members.len() * members.len());
            for &a in members {
                for &b in members {
                    let c = index[self.op(k, a, b) as usize];
                    if c == NONE {
                        return Err(Error::Invalid("subset not closed".into()));
                    }
                    t.push(c);
                }
            }
            ops.push(t);
        }
        let consts = self
            .consts
            .iter()
            .map(|&c| match index[c as usize] {
                NONE => Err(Error::Invalid("subset misses a constant".into())),
                i => Ok(i),
            })
            .collect::<Result<_>>()?;
        Structure::new(members.len(), ops, consts)
    }
}

struct Search<'a> {
    a: &'a Structure,
    b: &'a Structure,
    injective: bool,
    map: Vec<u32>,
    inv: Vec<u32>,
    known: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(a: &'a Structure, b: &'a Structure, injective: bool) -> Self {
        Self {
            a,
            b,
            injective,
            map: vec![NONE; a.size],
            inv: vec![NONE; b.size],
            known: Vec::new(),
        }
    }

    fn set(&mut self, x: u32, y: u32) -> bool {
        let cur = self.map[x as usize];
        if cur != NONE {
            return cur == y;
        }
        if self.injective && self.inv[y as usize] != NONE {
            return false;
        }
        self.map[x as usize] = y;
        self.inv[y as usize] = x;
        self.known.push(x);
        true
    }

    fn propagate(&mut self, start: usize) -> bool {
        let mut i = start;
        while i < self.known.len() {
            let x = self.known[i];
            for j in 0..=i {
                let y = self.known[j];
                for k in 0..self.a.ops.len() {
                    for (p, q) in [(x, y), (y, x)] {
                        let z = self.a.op(k, p, q);
                        let w = self.b.op(k, self.map[p as usize], self.map[q as usize]);
                        if !self.set(z, w) {
                            return false;
                        }
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.known.len() > mark {
            let x = self.known.pop().expect("len > mark");
            let y = self.map[x as usize];
            self.map[x as usize] = NONE;
            if self.inv[y as usize] == x {
                self.inv[y as usize] = NONE;
            }
        }
    }

    fn start(&mut self) -> bool {
        if self.a.consts.len() != self.b.consts.len() || self.a.ops.len() != self.b.ops.len() {
            return false;
        }
        for i in 0..self.a.consts.len() {
            if !self.set(self.a.consts[i], self.b.consts[i]) {
                return false;
            }
        }
        self.propagate(0)
    }

    /// Depth-first over generator images; `visit` returns false to stop.
    fn run(
        &mut self,
        gens: &[u32],
        candidates: &[Vec<u32>],
        depth: usize,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if depth == gens.len() {
            return visit(&self.map);
        }
        let g = gens[depth];
        if self.map[g as usize] != NONE {
            return self.run(gens, candidates, depth + 1, visit);
        }
        for &y in &candidates[depth] {
            let mark = self.known.len();
            if self.set(g, y)
                && self.propagate(mark)
                && !self.run(gens, candidates, depth + 1, visit)
            {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Finds an isomorphism `a -> b` preserving all operations and constants,
/// trying candidate images in an order shuffled by `seed`.
pub fn find_isomorphism(a: &Structure, b: &Structure, seed: u64) -> Option<Vec<u32>> {
    if a.size != b.size || a.ops.len() != b.ops.len() || a.consts.len() != b.consts.len() {
        return None;
    }
    let sa = a.signatures();
    let sb = b.signatures();
    let mut ha: Vec<_> = sa.clone();
    let mut hb: Vec<_> = sb.clone();
    ha.sort();
    hb.sort();
    if ha != hb {
        return None;
    }
    let gens = a.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let mut c: Vec<u32> = (0..b.size as u32)
                .filter(|&y| sb[y as usize] == sa[g as usize])
                .collect();
            c.shuffle(&mut rng);
            c
        })
        .collect();
    let mut search = Search::new(a, b, true);
    if !search.start() {
        return None;
    }
    let mut found = None;
    search.run(&gens, &candidates, 0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    debug_assert!(found.as_ref().is_none_or(|m| a.is_homomorphism(b, m)));
    found
}

/// All homomorphisms `a -> b` (at most `limit`), in a deterministic order.
pub fn homomorphisms(a: &Structure, b: &Structure, limit: usize) -> Vec<Vec<u32>> {
    let gens = a.generators();
    let candidates: Vec<Vec<u32>> = gens.iter().map(|_| (0..b.size as u32).collect()).collect();
    let mut search = Search::new(a, b, false);
    let mut out = Vec::new();
    if !search.start() {
        return out;
    }
    search.run(&gens, &candidates, 0, &mut |m| {
        out.push(m.to_vec());
        out.len() < limit
    });
    out
}

/// Whether the two structures are isomorphic.
pub fn are_isomorphic(a: &Structure, b: &Structure) -> bool {
    find_isomorphism(a, b, DEFAULT_SEED).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Structure {
        Structure::from_fn(n, 1, |_, a, b| (a + b) % n as u32, vec![0]).unwrap()
    }

    fn klein() -> Structure {
        Structure::from_fn(4, 1, |_, a, b| a ^ b, vec![0]).unwrap()
    }

    #[test]
    fn closure_and_generators() {
        let c6 = cyclic(6);
        assert_eq!(c6.closure(&[2]), vec![0, 2, 4]);
        assert_eq!(c6.closure(&[]), vec![0]);
        let g = c6.generators();
        assert_eq!(c6.closure(&g).len(), 6);
        assert_eq!(klein().generators().len(), 2);
    }

    #[test]
    fn isomorphism_search() {
        let c4 = cyclic(4);
        let relabel = Structure::from_fn(
            4,
            1,
            |_, a, b| {
                [0, 3, 1, 2][((([0, 2, 3, 1][a as usize]) + [0, 2, 3, 1][b as usize]) % 4) as usize]
            },
            vec![0],
        )
        .unwrap();
        let m = find_isomorphism(&c4, &relabel, 1).unwrap();
        assert!(c4.is_homomorphism(&relabel, &m));
        assert!(find_isomorphism(&c4, &klein(), 1).is_none());
    }

    #[test]
    fn homomorphism_counts() {
        // Hom(C_n, C_m) has gcd(n, m) elements.
        for (n, m, g) in [(4, 6, 2), (6, 4, 2), (5, 3, 1), (4, 4, 4)] {
            let homs = homomorphisms(&cyclic(n), &cyclic(m), usize::MAX);
            assert_eq!(homs.len(), g, "Hom(C{n}, C{m})");
        }
        assert_eq!(homomorphisms(&klein(), &klein(), usize::MAX).len(), 16);
    }

    #[test]
    fn restrict_checks_closure() {
        let c6 = cyclic(6);
        assert_eq!(c6.restrict(&[0, 3]).unwrap().size(), 2);
        assert!(c6.restrict(&[0, 1]).is_err());
    }
}
