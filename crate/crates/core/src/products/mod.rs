//! Algebras over 3-fields, Q-algebras, binary and ternary unitization, and
//! semi-direct products from split exact sequences.

pub mod semidirect;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{check_axioms, AxiomReport, GradedUnitalRing, ThreeField};
use crate::qstruct::{f0_ideal, q_of, Ideal};

pub use semidirect::{semidirect_check, SemidirectReport, SplitSequence};

/// Largest algebra carrier.
pub const ALGEBRA_MAX: usize = 1 << 10;

const NONE: u32 = u32::MAX;

/// A finite binary ring `A` with an action of a 3-field `F`, all given by
/// tables. `action[f * |A| + a]` is `f a`.
#[derive(Clone, Debug)]
pub struct QAlgebra {
    label: String,
    field: ThreeField,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    action: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    names: Vec<String>,
}

impl QAlgebra {
    pub fn new(
        label: impl Into<String>,
        field: &ThreeField,
        add: Vec<u32>,
        mul: Vec<u32>,
        action: Vec<u32>,
        names: Vec<String>,
    ) -> Result<Self> {
        let size = names.len();
        if size == 0 || size > ALGEBRA_MAX {
            return Err(Error::TooLarge {
                what: "algebra",
                size,
                limit: ALGEBRA_MAX,
            });
        }
        let n = size as u32;
        let ok = add.len() == size * size
            && mul.len() == size * size
            && action.len() == field.size() * size
            && add.iter().chain(&mul).chain(&action).all(|&v| v < n);
        if !ok {
            return Err(Error::Invalid(
                "algebra tables do not match the carrier".into(),
            ));
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[(z * n + a) as usize] == a))
            .ok_or_else(|| Error::Invalid("algebra addition has no zero".into()))?;
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| add[(a * n + b) as usize] == zero)
                    .unwrap_or(NONE)
            })
            .collect();
        Ok(Self {
            label: label.into(),
            field: field.clone(),
            size,
            add,
            mul,
            action,
            neg,
            zero,
            names,
        })
    }

    pub fn from_fn(
        label: impl Into<String>,
        field: &ThreeField,
        size: usize,
        add: impl Fn(u32, u32) -> u32,
        mul: impl Fn(u32, u32) -> u32,
        action: impl Fn(u32, u32) -> u32,
        names: Vec<String>,
    ) -> Result<Self> {
        if size == 0 || size > ALGEBRA_MAX || names.len() != size {
            return Err(Error::TooLarge {
                what: "algebra",
                size,
                limit: ALGEBRA_MAX,
            });
        }
        let n = size as u32;
        let table = |op: &dyn Fn(u32, u32) -> u32, rows: u32| -> Vec<u32> {
            (0..rows)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| op(a, b))
                .collect()
        };
        let (add, mul, action) = (
            table(&add, n),
            table(&mul, n),
            table(&action, field.size() as u32),
        );
        Self::new(label, field, add, mul, action, names)
    }

    /// `GF(2)^dim` with identically vanishing product over `{1}`.
    pub fn zero_product(dim: u32) -> Result<Self> {
        let size = 1usize << dim;
        let names = (0..size)
            .map(|a| format!("{a:0w$b}", w = dim.max(1) as usize))
            .collect();
        Self::from_fn(
            format!("GF(2)^{dim}, zero product"),
            &crate::fields::make_f0(1)?,
            size,
            |a, b| a ^ b,
            |_, _| 0,
            |_, a| a,
            names,
        )
    }

    /// A `GF(2)`-algebra over `{1}` (trivial action) with carrier `GF(2)^dim`
    /// and product given on basis vectors: `basis_mul[i][j]` is the bit
    /// vector of `e_i e_j`.
    pub fn over_trivial(
        label: impl Into<String>,
        dim: u32,
        basis_mul: &[Vec<u32>],
    ) -> Result<Self> {
        let size = 1usize << dim;
        let mul = |a: u32, b: u32| {
            let mut r = 0;
            for i in 0..dim {
                for j in 0..dim {
                    if a >> i & 1 == 1 && b >> j & 1 == 1 {
                        r ^= basis_mul[i as usize][j as usize];
                    }
                }
            }
            r
        };
        let names = (0..size)
            .map(|a| format!("{a:0w$b}", w = dim.max(1) as usize))
            .collect();
        Self::from_fn(
            label,
            &crate::fields::make_f0(1)?,
            size,
            |a, b| a ^ b,
            mul,
            |_, a| a,
            names,
        )
    }

    /// An ideal `J` of `U(F0)` as an algebra over a field `F` acting through
    /// `embed: F -> F0`: `f [g] = [e + e g - 1]` with `e = embed(f)`.
    pub fn from_ideal(
        label: impl Into<String>,
        parent: &ThreeField,
        ideal: &Ideal,
        acting: &ThreeField,
        embed: &[u32],
    ) -> Result<Self> {
        let q = q_of(parent)?;
        if !crate::qstruct::is_ideal(&q, ideal.members()) {
            return Err(Error::NotAnIdeal(format!(
                "{} members in {}",
                ideal.len(),
                q.label()
            )));
        }
        if embed.len() != acting.size() || !crate::fields::is_morphism(acting, parent, embed) {
            return Err(Error::NotAMorphism("embedding of the acting field".into()));
        }
        let members = ideal.members();
        let index = |x: u32| {
            members
                .binary_search(&x)
                .map(|i| i as u32)
                .map_err(|_| Error::NotAnIdeal("not closed".into()))
        };
        let q1 = parent.quer(parent.unit());
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for &a in members {
            for &b in members {
                add.push(index(q.add(a, b))?);
                mul.push(index(q.mul(a, b))?);
            }
        }
        let mut action = Vec::new();
        for f in acting.elements() {
            let e = embed[f as usize];
            for &g in members {
                action.push(index(parent.tadd(e, parent.mul(e, g), q1))?);
            }
        }
        let names = members.iter().map(|&g| q.render(g)).collect();
        Self::new(label, acting, add, mul, action, names)
    }

    /// The ideal `𝕴_1 = t GF(2)[t]/t^n` of `Q F0(n)` over `{1}`.
    pub fn truncated(n: usize) -> Result<Self> {
        let parent = crate::fields::make_f0(n)?;
        let trivial = crate::fields::make_f0(1)?;
        Self::from_ideal(
            format!("I_1 of Q F0({n})"),
            &parent,
            &f0_ideal(n, 1)?,
            &trivial,
            &[parent.unit()],
        )
    }

    /// `Q(F)` as an `F`-algebra with `f1 q_{1,f} = q_{f1, f1 f}`.
    pub fn ring_of_pairs(f: &ThreeField) -> Result<Self> {
        let whole = Ideal::from_members(f.elements());
        let embed: Vec<u32> = f.elements().collect();
        Self::from_ideal(
            format!("Q({}) over {}", f.label(), f.label()),
            f,
            &whole,
            f,
            &embed,
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> &ThreeField {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn act(&self, f: u32, a: u32) -> u32 {
        self.action[f as usize * self.size + a as usize]
    }

    pub fn render(&self, a: u32) -> String {
        self.names[a as usize].clone()
    }

    /// First violated law among: ring laws of `A`, the four action axioms
    /// `f(a1 + a2) = f a1 + f a2`, `(f1 + f2 + f3) a = f1 a + f2 a + f3 a`,
    /// `(f1 f2) a = f1 (f2 a)`, `1 a = a`, and scalar compatibility
    /// `f (a1 a2) = (f a1) a2 = a1 (f a2)`.
    pub fn check_axioms(&self) -> Option<String> {
        let f = &self.field;
        let r = |a: u32| self.render(a);
        for a in self.elements() {
            if self.neg[a as usize] == NONE {
                return Some(format!("no additive inverse for {}", r(a)));
            }
            if self.act(f.unit(), a) != a {
                return Some(format!("axiom (4) at {}", r(a)));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Some(format!("additive commutativity at ({}, {})", r(a), r(b)));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return Some(format!("associativity at ({}, {}, {})", r(a), r(b), r(c)));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                        || self.mul(self.add(b, c), a) != self.add(self.mul(b, a), self.mul(c, a))
                    {
                        return Some(format!("distributivity at ({}, {}, {})", r(a), r(b), r(c)));
                    }
                }
                for g in f.elements() {
                    if self.act(g, self.add(a, b)) != self.add(self.act(g, a), self.act(g, b)) {
                        return Some(format!(
                            "axiom (1) at ({}, {}, {})",
                            f.render(g),
                            r(a),
                            r(b)
                        ));
                    }
                    let ga = self.act(g, a);
                    if self.act(g, self.mul(a, b)) != self.mul(ga, b)
                        || self.mul(ga, b) != self.mul(a, self.act(g, b))
                    {
                        return Some(format!(
                            "scalar compatibility at ({}, {}, {})",
                            f.render(g),
                            r(a),
                            r(b)
                        ));
                    }
                }
            }
            for g in f.elements() {
                for h in f.elements() {
                    if self.act(f.mul(g, h), a) != self.act(g, self.act(h, a)) {
                        return Some(format!(
                            "axiom (3) at ({}, {}, {})",
                            f.render(g),
                            f.render(h),
                            r(a)
                        ));
                    }
                    for k in f.elements() {
                        let lhs = self.act(f.tadd(g, h, k), a);
                        let rhs =
                            self.add(self.add(self.act(g, a), self.act(h, a)), self.act(k, a));
                        if lhs != rhs {
                            return Some(format!(
                                "axiom (2) at ({}, {}, {}, {})",
                                f.render(g),
                                f.render(h),
                                f.render(k),
                                r(a)
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// Smallest `k` with `A^k = 0`, where `A^(k+1)` is the additive span of
    /// `A^k A`; `None` if the powers stabilize at a nonzero ideal.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut current: Vec<u32> = self.elements().collect();
        let mut k = 1;
        loop {
            if current == [self.zero] {
                return Some(k);
            }
            let products: Vec<u32> = current
                .iter()
                .flat_map(|&x| self.elements().map(move |y| (x, y)))
                .map(|(x, y)| self.mul(x, y))
                .collect();
            let next = self.additive_span(&products);
            if next == current {
                return None;
            }
            current = next;
            k += 1;
        }
    }

    fn additive_span(&self, seeds: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.size];
        seen[self.zero as usize] = true;
        let mut stack = vec![self.zero];
        let mut gens: Vec<u32> = seeds.to_vec();
        gens.sort_unstable();
        gens.dedup();
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = self.add(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.size as u32)
            .filter(|&x| seen[x as usize])
            .collect()
    }

    /// `-Σ_{ν >= 1} a^ν`, if the powers of `a` reach zero.
    pub fn nilpotent_hash(&self, a: u32) -> Option<u32> {
        let mut sum = self.zero;
        let mut p = a;
        for _ in 0..=self.size {
            if p == self.zero {
                return Some(self.neg(sum));
            }
            sum = self.add(sum, p);
            p = self.mul(p, a);
        }
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QAlgebraReport {
    pub algebra: String,
    pub is_q_algebra: bool,
    /// First `#`-element found by search for each element.
    pub hash: Vec<Option<u32>>,
    pub hash_unique: bool,
    /// An element without a `#`-element.
    pub offending: Option<String>,
    pub nilpotency_index: Option<usize>,
    /// For nilpotent algebras: the closed form `-Σ a^ν` satisfies
    /// `a a# = a + a#` for every `a`.
    pub closed_form_valid: Option<bool>,
}

/// Decides whether every `a` has some `a#` with `a a# = a + a#`.
pub fn is_q_algebra(a: &QAlgebra) -> QAlgebraReport {
    let candidates: Vec<Vec<u32>> = a
        .elements()
        .map(|x| {
            a.elements()
                .filter(|&h| a.mul(x, h) == a.add(x, h))
                .collect()
        })
        .collect();
    let hash: Vec<Option<u32>> = candidates.iter().map(|c| c.first().copied()).collect();
    let offending = hash
        .iter()
        .position(Option::is_none)
        .map(|i| a.render(i as u32));
    let nilpotency_index = a.nilpotency_index();
    let closed_form_valid = nilpotency_index.map(|_| {
        a.elements().all(|x| {
            a.nilpotent_hash(x)
                .is_some_and(|h| a.mul(x, h) == a.add(x, h))
        })
    });
    QAlgebraReport {
        algebra: a.label().to_string(),
        is_q_algebra: offending.is_none(),
        hash,
        hash_unique: candidates.iter().all(|c| c.len() == 1),
        offending,
        nilpotency_index,
        closed_form_valid,
    }
}

/// The ternary unitization `A⁺ = F ⊕ A` (pair `(f, a)` has id
/// `f + |F| a`) together with the binary unitization `A⁺⁺ = U(F) ⊕ A`
/// (pair `(u, a)` has id `u + 2|F| a`, `u` a [`GradedUnitalRing`] id).
#[derive(Clone, Debug)]
pub struct Unitization {
    pub algebra: QAlgebra,
    pub ternary: ThreeField,
    pub graded: GradedUnitalRing,
}

/// Builds both unitizations. The ternary one is always a unital 3-ring;
/// whether it is a 3-field is reported by [`Unitization::axioms`].
pub fn unitize(a: &QAlgebra) -> Result<Unitization> {
    let f = a.field().clone();
    let nf = f.size() as u32;
    let size = f.size() * a.size();
    let split = |x: u32| (x % nf, x / nf);
    let tadd = |x: u32, y: u32, z: u32| {
        let ((f1, a1), (f2, a2), (f3, a3)) = (split(x), split(y), split(z));
        f.tadd(f1, f2, f3) + nf * a.add(a.add(a1, a2), a3)
    };
    let mul = |x: u32, y: u32| {
        let ((f1, a1), (f2, a2)) = (split(x), split(y));
        let b = a.add(a.add(a.act(f1, a2), a.act(f2, a1)), a.mul(a1, a2));
        f.mul(f1, f2) + nf * b
    };
    let names = (0..size as u32)
        .map(|x| {
            let (g, b) = split(x);
            format!("({}, {})", f.render(g), a.render(b))
        })
        .collect();
    let unit = f.unit() + nf * a.zero();
    let ternary = ThreeField::from_ops(
        format!("{}⁺", a.label()),
        size,
        tadd,
        mul,
        unit,
        names,
        None,
    )?;
    Ok(Unitization {
        algebra: a.clone(),
        ternary,
        graded: GradedUnitalRing::new(&f),
    })
}

impl Unitization {
    pub fn pair(&self, f: u32, a: u32) -> u32 {
        f + self.algebra.field().size() as u32 * a
    }

    pub fn split(&self, x: u32) -> (u32, u32) {
        let nf = self.algebra.field().size() as u32;
        (x % nf, x / nf)
    }

    pub fn axioms(&self) -> AxiomReport {
        check_axioms(&self.ternary)
    }

    /// `u a` for `u ∈ U(F)`: the field action on `F`, and
    /// `q_{1,f} a = a + f a` on `Q(F)`.
    pub fn module_act(&self, u: u32, a: u32) -> u32 {
        let nf = self.algebra.field().size() as u32;
        let alg = &self.algebra;
        if u >= nf {
            alg.act(u - nf, a)
        } else {
            alg.add(a, alg.act(u, a))
        }
    }

    pub fn binary_size(&self) -> usize {
        self.graded.size() * self.algebra.size()
    }

    fn bsplit(&self, x: u32) -> (u32, u32) {
        let m = self.graded.size() as u32;
        (x % m, x / m)
    }

    fn bpair(&self, u: u32, a: u32) -> u32 {
        u + self.graded.size() as u32 * a
    }

    pub fn binary_add(&self, x: u32, y: u32) -> u32 {
        let ((u1, a1), (u2, a2)) = (self.bsplit(x), self.bsplit(y));
        self.bpair(self.graded.add(u1, u2), self.algebra.add(a1, a2))
    }

    pub fn binary_mul(&self, x: u32, y: u32) -> u32 {
        let ((u1, a1), (u2, a2)) = (self.bsplit(x), self.bsplit(y));
        let alg = &self.algebra;
        let b = alg.add(
            alg.add(self.module_act(u1, a2), self.module_act(u2, a1)),
            alg.mul(a1, a2),
        );
        self.bpair(self.graded.mul(u1, u2), b)
    }

    /// First violated `U(F)`-module law for `q_{1,f} a = a + f a`.
    pub fn check_module(&self) -> Option<String> {
        let alg = &self.algebra;
        let m = self.graded.size() as u32;
        for u in 0..m {
            for v in 0..m {
                for a in alg.elements() {
                    let bad = self.module_act(self.graded.mul(u, v), a)
                        != self.module_act(u, self.module_act(v, a))
                        || self.module_act(self.graded.add(u, v), a)
                            != alg.add(self.module_act(u, a), self.module_act(v, a));
                    if bad {
                        return Some(format!(
                            "module law at ({}, {}, {})",
                            self.graded.render(u),
                            self.graded.render(v),
                            alg.render(a)
                        ));
                    }
                }
            }
        }
        None
    }

    /// Checks that `Ψ: Q(A⁺) -> Q(F) ⊕ A`, `q_{(1,0),(f,a)} ↦ (q_{1,f}, a)`,
    /// is a bijective ring morphism onto the ideal `Q(F) ⊕ A` of `A⁺⁺`
    /// sending `τ` to `(q_{1,1}, 0)`. Returns the first failure.
    pub fn check_psi(&self) -> Result<Option<String>> {
        let q = q_of(&self.ternary)?;
        let psi = |x: u32| {
            let (f, a) = self.split(x);
            self.bpair(self.graded.q(f), a)
        };
        let mut image: Vec<u32> = q.elements().map(psi).collect();
        image.sort_unstable();
        image.dedup();
        if image.len() != q.size()
            || image
                .iter()
                .any(|&y| self.bsplit(y).0 >= self.algebra.field().size() as u32)
        {
            return Ok(Some("Ψ is not a bijection onto Q(F) ⊕ A".into()));
        }
        let tau = self.bpair(
            self.graded.q(self.algebra.field().unit()),
            self.algebra.zero(),
        );
        if psi(q.tau()) != tau {
            return Ok(Some("Ψ(τ) differs from (q_{1,1}, 0)".into()));
        }
        for x in q.elements() {
            for y in q.elements() {
                if psi(q.add(x, y)) != self.binary_add(psi(x), psi(y))
                    || psi(q.mul(x, y)) != self.binary_mul(psi(x), psi(y))
                {
                    return Ok(Some(format!(
                        "Ψ fails at ({}, {})",
                        q.render(x),
                        q.render(y)
                    )));
                }
            }
        }
        Ok(None)
    }
}

/// `(f, a)^-1 = f^-1 (1, f^-1 a)^-1` with `(1, b)^-1 = (1, Σ_{ν >= 1} (-b)^ν)`
/// when `b` is nilpotent; otherwise an exhaustive search for the inverse.
pub fn nilpotent_inverse(u: &Unitization, x: u32) -> Result<u32> {
    let (f, a) = u.split(x);
    let field = u.algebra.field();
    let alg = &u.algebra;
    let finv = field.try_inv(f).ok_or(Error::NonInvertible)?;
    let b = alg.act(finv, a);
    let mb = alg.neg(b);
    let mut sum = alg.zero();
    let mut p = mb;
    let mut nilpotent = false;
    for _ in 0..=alg.size() {
        if p == alg.zero() {
            nilpotent = true;
            break;
        }
        sum = alg.add(sum, p);
        p = alg.mul(p, mb);
    }
    if nilpotent {
        // f^-1 (1, c) = (f^-1, f^-1 c)
        return Ok(u.pair(finv, alg.act(finv, sum)));
    }
    let one = u.ternary.unit();
    u.ternary
        .elements()
        .find(|&y| u.ternary.mul(x, y) == one && u.ternary.mul(y, x) == one)
        .ok_or(Error::NonInvertible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_f0, make_tf};
    use crate::structure::are_isomorphic;

    #[test]
    fn truncated_hash() {
        let a = QAlgebra::truncated(3).unwrap();
        assert_eq!(a.check_axioms(), None);
        let r = is_q_algebra(&a);
        assert!(r.is_q_algebra);
        assert_eq!(r.nilpotency_index, Some(3));
        assert_eq!(r.closed_form_valid, Some(true));
        let t = a.elements().find(|&x| a.render(x) == "t").unwrap();
        assert_eq!(a.render(a.nilpotent_hash(t).unwrap()), "t + t^2");
    }

    #[test]
    fn zero_product_hash_is_identity() {
        let a = QAlgebra::zero_product(2).unwrap();
        let r = is_q_algebra(&a);
        assert!(r.is_q_algebra);
        assert!(a.elements().all(|x| r.hash[x as usize] == Some(x)));
        let u = unitize(&a).unwrap();
        assert!(u.axioms().is_field());
        let f02 = make_f0(2).unwrap();
        let target = crate::fields::cartesian(&f02, &f02).unwrap();
        assert!(are_isomorphic(
            &u.ternary.structure().unwrap(),
            &target.structure().unwrap()
        ));
        assert_eq!(u.ternary.unit(), u.pair(0, a.zero()));
    }

    #[test]
    fn ideal_hash_is_inverse() {
        let f = make_f0(4).unwrap();
        let trivial = make_f0(1).unwrap();
        let a = QAlgebra::from_ideal("I_1", &f, &f0_ideal(4, 1).unwrap(), &trivial, &[0]).unwrap();
        let q = q_of(&f).unwrap();
        let members = f0_ideal(4, 1).unwrap();
        for (i, &g) in members.members().iter().enumerate() {
            let h = a
                .elements()
                .find(|&h| a.mul(i as u32, h) == a.add(i as u32, h))
                .unwrap();
            assert_eq!(members.members()[h as usize], f.inv(g));
            assert_eq!(q.hash(g), Some(f.inv(g)));
        }
    }

    #[test]
    fn lemma_q_unit_both_directions() {
        let gf2 = QAlgebra::over_trivial("GF(2)", 1, &[vec![1]]).unwrap();
        assert_eq!(gf2.check_axioms(), None);
        assert!(!is_q_algebra(&gf2).is_q_algebra);
        assert!(!unitize(&gf2).unwrap().axioms().is_field());
        let t3 = QAlgebra::ring_of_pairs(&make_tf(3).unwrap()).unwrap();
        assert_eq!(t3.check_axioms(), None);
        assert!(is_q_algebra(&t3).is_q_algebra);
        assert!(unitize(&t3).unwrap().axioms().is_field());
    }

    #[test]
    fn unitization_structures() {
        let a = QAlgebra::truncated(3).unwrap();
        let u = unitize(&a).unwrap();
        assert_eq!(u.ternary.size(), 4);
        assert_eq!(u.check_module(), None);
        assert_eq!(u.check_psi().unwrap(), None);
        let t = QAlgebra::ring_of_pairs(&make_tf(2).unwrap()).unwrap();
        let ut = unitize(&t).unwrap();
        assert_eq!(ut.check_module(), None);
        assert_eq!(ut.check_psi().unwrap(), None);
    }

    #[test]
    fn inverses_in_unitization() {
        let a = QAlgebra::truncated(3).unwrap();
        let u = unitize(&a).unwrap();
        let t = a.elements().find(|&x| a.render(x) == "t").unwrap();
        let x = u.pair(0, t);
        let y = nilpotent_inverse(&u, x).unwrap();
        assert_eq!(a.render(u.split(y).1), "t + t^2");
        assert_eq!(u.ternary.mul(x, y), u.ternary.unit());
        assert_eq!(
            nilpotent_inverse(&u, u.ternary.unit()).unwrap(),
            u.ternary.unit()
        );
        let q = QAlgebra::ring_of_pairs(&make_tf(3).unwrap()).unwrap();
        let uq = unitize(&q).unwrap();
        for x in uq.ternary.elements() {
            let y = nilpotent_inverse(&uq, x).unwrap();
            assert_eq!(uq.ternary.mul(x, y), uq.ternary.unit());
        }
        let f = q.field();
        for g in f.elements() {
            let x = uq.pair(g, q.zero());
            assert_eq!(
                nilpotent_inverse(&uq, x).unwrap(),
                uq.pair(f.inv(g), q.zero())
            );
        }
        let gf2 = unitize(&QAlgebra::over_trivial("GF(2)", 1, &[vec![1]]).unwrap()).unwrap();
        assert!(nilpotent_inverse(&gf2, gf2.pair(0, 1)).is_err());
    }
}
