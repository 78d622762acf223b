//! Rings of pairs `Q(F)`, abstract Q-rings with 2-unit `τ` and
//! `#`-involution, reconstruction of a 3-field from its Q-ring, and ideals.

pub mod ideals;
pub mod morphisms;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fields::ThreeField;
use crate::structure::{Structure, DEFAULT_SEED};

pub use ideals::{
    additive_span, all_ideals, f0_ideal, f0_ideals, ideal_lattice, ideal_sum, is_ideal,
    principal_ideal, subfield_from_ideal, Ideal, IdealLattice,
};
pub use morphisms::{frobenius, quotient, FieldMorphism};

/// Largest Q-ring built from a 3-field or accepted by [`QRing::new`].
pub const QRING_MAX: usize = 1 << 10;
/// Ring laws are checked on every triple up to this size, by sampling above.
pub const QRING_EXHAUSTIVE: usize = 256;

const NONE: u32 = u32::MAX;

/// A finite commutative ring with a chosen 2-unit `τ` and, where it
/// exists, a `#`-element for each `q` (`q q# = q + q#`).
#[derive(Clone, Debug)]
pub struct QRing {
    label: String,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    tau: u32,
    hash: Vec<u32>,
    names: Vec<String>,
}

impl QRing {
    /// Builds a ring from addition and multiplication tables (row-major,
    /// `size × size`). `#`-elements are found by search.
    pub fn new(
        label: impl Into<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        tau: u32,
        names: Vec<String>,
    ) -> Result<Self> {
        let size = names.len();
        if size == 0 || size > QRING_MAX {
            return Err(Error::TooLarge {
                what: "Q-ring",
                size,
                limit: QRING_MAX,
            });
        }
        if add.len() != size * size
            || mul.len() != size * size
            || add.iter().chain(&mul).any(|&v| v as usize >= size)
            || tau as usize >= size
        {
            return Err(Error::Invalid(
                "Q-ring tables do not match the carrier".into(),
            ));
        }
        let n = size as u32;
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[(z * n + a) as usize] == a))
            .ok_or_else(|| Error::Invalid("addition has no neutral element".into()))?;
        let mut neg = vec![NONE; size];
        for a in 0..n {
            neg[a as usize] = (0..n)
                .find(|&b| add[(a * n + b) as usize] == zero)
                .ok_or_else(|| Error::Invalid(format!("element {a} has no additive inverse")))?;
        }
        let hash = (0..n)
            .map(|q| {
                (0..n)
                    .find(|&h| mul[(q * n + h) as usize] == add[(q * n + h) as usize])
                    .unwrap_or(NONE)
            })
            .collect();
        Ok(Self {
            label: label.into(),
            size,
            add,
            mul,
            neg,
            zero,
            tau,
            hash,
            names,
        })
    }

    /// The same ring with another choice of 2-unit.
    pub fn with_tau(&self, tau: u32) -> Self {
        Self {
            tau,
            ..self.clone()
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn hash(&self, q: u32) -> Option<u32> {
        let h = self.hash[q as usize];
        (h != NONE).then_some(h)
    }

    pub fn render(&self, q: u32) -> String {
        self.names[q as usize].clone()
    }

    /// Binary form for isomorphism search: operations `+`, `·`, constants
    /// `0` and `τ`.
    pub fn structure(&self) -> Result<Structure> {
        Structure::new(
            self.size,
            vec![self.add.clone(), self.mul.clone()],
            vec![self.zero, self.tau],
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.size;
        let rows = |t: &[u32]| -> Vec<Vec<u32>> { t.chunks(n).map(|r| r.to_vec()).collect() };
        json!({
            "label": self.label,
            "order": n,
            "elements": self.names,
            "zero": self.zero,
            "tau": self.tau,
            "hash": self.hash.iter().map(|&h| (h != NONE).then_some(h)).collect::<Vec<_>>(),
            "add": rows(&self.add),
            "mul": rows(&self.mul),
        })
    }
}

/// The ring of pairs `Q(F)`. Q-id `f` is `q_{1,f}`, the ambient element
/// `1 + f` of `U(F)`; `τ = q_{1,1}` and `q_{1,f}# = q_{1,f^-1}`.
pub fn q_of(f: &ThreeField) -> Result<QRing> {
    if f.size() > QRING_MAX {
        return Err(Error::TooLarge {
            what: "ring of pairs",
            size: f.size(),
            limit: QRING_MAX,
        });
    }
    let n = f.size() as u32;
    let one = f.unit();
    let mut add = Vec::with_capacity(f.size() * f.size());
    let mut mul = Vec::with_capacity(f.size() * f.size());
    for a in 0..n {
        for b in 0..n {
            add.push(f.tadd(a, one, b));
            mul.push(f.tadd(a, b, f.mul(a, b)));
        }
    }
    let names = f.elements().map(|a| f.render_q(a)).collect();
    let mut q = QRing::new(format!("Q({})", f.label()), add, mul, one, names)?;
    q.hash = f.elements().map(|a| f.try_inv(a).unwrap_or(NONE)).collect();
    Ok(q)
}

#[derive(Clone, Debug, Serialize)]
pub struct QRingReport {
    pub ring: String,
    pub order: usize,
    /// First violated commutative-ring law.
    pub ring_law_failure: Option<String>,
    pub exhaustive: bool,
    pub two_unit: bool,
    pub hash_exists: bool,
    pub hash_unique: bool,
    pub hash_involution: bool,
    pub non_unital: bool,
    pub tau_hash_fixed: bool,
    /// `τ^k = 2^(k-1) τ` for `k = 1..=16`.
    pub tau_powers: bool,
    /// Number of elements that satisfy the 2-unit axiom.
    pub tau_candidates: usize,
    /// The 2-unit elements themselves (rendered).
    pub two_units: Vec<String>,
    /// Trivial carrier or identically vanishing product.
    pub degenerate: bool,
}

impl QRingReport {
    pub fn passed(&self) -> bool {
        self.ring_law_failure.is_none()
            && self.two_unit
            && self.hash_exists
            && self.hash_unique
            && self.hash_involution
            && self.non_unital
            && self.tau_hash_fixed
            && self.tau_powers
    }
}

fn ring_law_failure(q: &QRing) -> Option<String> {
    let n = q.size() as u32;
    let law = |a: u32, b: u32, c: u32| -> Option<&'static str> {
        if q.add(a, q.zero()) != a || q.add(a, q.neg(a)) != q.zero() {
            Some("additive identity or inverse")
        } else if q.add(a, b) != q.add(b, a) {
            Some("additive commutativity")
        } else if q.mul(a, b) != q.mul(b, a) {
            Some("multiplicative commutativity")
        } else if q.add(q.add(a, b), c) != q.add(a, q.add(b, c)) {
            Some("additive associativity")
        } else if q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c)) {
            Some("multiplicative associativity")
        } else if q.mul(a, q.add(b, c)) != q.add(q.mul(a, b), q.mul(a, c)) {
            Some("distributivity")
        } else {
            None
        }
    };
    let report = |(a, b, c): (u32, u32, u32), what: &str| {
        format!(
            "{what} at ({}, {}, {})",
            q.render(a),
            q.render(b),
            q.render(c)
        )
    };
    if q.size() <= QRING_EXHAUSTIVE {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if let Some(what) = law(a, b, c) {
                        return Some(report((a, b, c), what));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        for _ in 0..1 << 18 {
            let t = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if let Some(what) = law(t.0, t.1, t.2) {
                return Some(report(t, what));
            }
        }
    }
    None
}

/// Checks the Q-ring axioms and their listed consequences.
pub fn check_qring(q: &QRing) -> QRingReport {
    let two = |x: u32| q.add(x, x);
    let is_two_unit = |t: u32| q.elements().all(|x| q.mul(t, x) == two(x));
    let two_units: Vec<u32> = q.elements().filter(|&t| is_two_unit(t)).collect();
    let hash_counts: Vec<usize> = q
        .elements()
        .map(|x| q.elements().filter(|&h| q.mul(x, h) == q.add(x, h)).count())
        .collect();
    let hash_exists = q
        .elements()
        .all(|x| q.hash(x).is_some_and(|h| q.mul(x, h) == q.add(x, h)));
    let hash_involution =
        hash_exists && q.elements().all(|x| q.hash(q.hash(x).unwrap()) == Some(x));
    let non_unital = !q.elements().any(|e| q.elements().all(|x| q.mul(e, x) == x));
    let tau = q.tau();
    let mut power = tau;
    let mut scaled = tau;
    let mut tau_powers = true;
    for _ in 2..=16 {
        power = q.mul(power, tau);
        scaled = two(scaled);
        tau_powers &= power == scaled;
    }
    QRingReport {
        ring: q.label().to_string(),
        order: q.size(),
        ring_law_failure: ring_law_failure(q),
        exhaustive: q.size() <= QRING_EXHAUSTIVE,
        two_unit: is_two_unit(tau),
        hash_exists,
        hash_unique: hash_counts.iter().all(|&c| c == 1),
        hash_involution,
        non_unital,
        tau_hash_fixed: q.hash(tau) == Some(tau),
        tau_powers,
        tau_candidates: two_units.len(),
        two_units: two_units.iter().map(|&t| q.render(t)).collect(),
        degenerate: q.size() == 1 || q.mul.iter().all(|&v| v == q.zero()),
    }
}

/// The 3-field carried by a Q-ring: `f1 +̂ f2 +̂ f3 = f1 + f2 + f3 - τ`,
/// `f ×̂ g = τ - f - g + fg`, unit `τ`, querelement `τ - f`, inverse `#`.
pub fn field_from_qring(q: &QRing) -> Result<ThreeField> {
    let report = check_qring(q);
    if !report.passed() {
        return Err(Error::QRingAxioms(format!(
            "{} fails: {}",
            q.label(),
            serde_json::to_string(&report).unwrap_or_default()
        )));
    }
    let tau = q.tau();
    let names = q.elements().map(|a| q.render(a)).collect();
    ThreeField::from_ops(
        format!("F({})", q.label()),
        q.size(),
        |a, b, c| q.sub(q.add(q.add(a, b), c), tau),
        |f, g| q.add(q.sub(q.sub(tau, f), g), q.mul(f, g)),
        tau,
        names,
        None,
    )
}

/// A ring of characteristic 2 with identically vanishing product on
/// `GF(2)^dim`, with 2-unit `tau`.
pub fn zero_product_ring(dim: u32, tau: u32) -> Result<QRing> {
    let size = 1usize << dim;
    if tau as usize >= size {
        return Err(Error::Invalid("2-unit outside the carrier".into()));
    }
    let add = (0..size as u32)
        .flat_map(|a| (0..size as u32).map(move |b| a ^ b))
        .collect();
    let names = (0..size)
        .map(|a| format!("{a:0w$b}", w = dim.max(1) as usize))
        .collect();
    QRing::new(
        format!("GF(2)^{dim} (zero product)"),
        add,
        vec![0; size * size],
        tau,
        names,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{cartesian, make_f0, make_tf};
    use crate::structure::{are_isomorphic, find_isomorphism};

    #[test]
    fn q_of_tf3_is_even_residues() {
        let q = q_of(&make_tf(3).unwrap()).unwrap();
        let names: Vec<String> = q.elements().map(|a| q.render(a)).collect();
        assert_eq!(names, vec!["2", "4", "6", "0"]);
        assert_eq!(q.render(q.tau()), "2");
        assert_eq!(q.render(q.zero()), "0");
        let two = q.elements().find(|&a| q.render(a) == "2").unwrap();
        assert_eq!(q.hash(two), Some(two));
        assert_eq!(q.hash(q.zero()), Some(q.zero()));
        // q# = q / (q - 1) in Z/8.
        for a in q.elements() {
            let r: u64 = q.render(a).parse().unwrap();
            let inv = (1..8)
                .step_by(2)
                .find(|&u| (u * ((r + 7) % 8)) % 8 == 1)
                .unwrap();
            assert_eq!(q.render(q.hash(a).unwrap()), ((r * inv) % 8).to_string());
        }
    }

    #[test]
    fn checks_pass_on_rings_of_pairs() {
        let r = check_qring(&q_of(&make_tf(4).unwrap()).unwrap());
        assert!(r.passed(), "{r:?}");
        // 2 and 2 + 8 both act as 2-units on the even residues mod 16.
        assert_eq!(r.two_units, vec!["2", "10"]);
        let r = check_qring(&q_of(&make_f0(3).unwrap()).unwrap());
        assert!(r.passed(), "{r:?}");
        // In characteristic 2 the 2-unit is the zero polynomial; t^2 also works.
        assert_eq!(r.two_units, vec!["0", "t^2"]);
    }

    #[test]
    fn zero_ring_is_degenerate() {
        let z = zero_product_ring(0, 0).unwrap();
        let r = check_qring(&z);
        assert!(r.degenerate);
        assert!(!r.non_unital);
        assert!(!r.passed());
        assert!(field_from_qring(&z).is_err());
    }

    #[test]
    fn reconstruction_round_trip() {
        let fields = [
            make_tf(3).unwrap(),
            make_f0(4).unwrap(),
            cartesian(&make_tf(2).unwrap(), &make_tf(2).unwrap()).unwrap(),
        ];
        for f in fields {
            let g = field_from_qring(&q_of(&f).unwrap()).unwrap();
            assert!(
                are_isomorphic(&f.structure().unwrap(), &g.structure().unwrap()),
                "{}",
                f.label()
            );
        }
    }

    #[test]
    fn zero_product_fields() {
        let r0 = field_from_qring(&zero_product_ring(1, 0).unwrap()).unwrap();
        let r1 = field_from_qring(&zero_product_ring(1, 1).unwrap()).unwrap();
        // r ×̂ s = r + s + τ and r +̂ s +̂ t = r + s + t + τ.
        for r in 0..2 {
            for s in 0..2 {
                assert_eq!(r0.mul(r, s), r ^ s);
                assert_eq!(r1.mul(r, s), r ^ s ^ 1);
                for t in 0..2 {
                    assert_eq!(r1.tadd(r, s, t), r ^ s ^ t ^ 1);
                }
            }
        }
        // r -> r + τ preserves the product but not the ternary sum: the two
        // fields have characteristics 1 and 2.
        let shift: Vec<u32> = vec![1, 0];
        assert!((0..2).all(|a| {
            (0..2).all(|b| {
                shift[r0.mul(a, b) as usize] == r1.mul(shift[a as usize], shift[b as usize])
            })
        }));
        assert!(!crate::fields::is_morphism(&r0, &r1, &shift));
        assert_eq!((r0.characteristic(), r1.characteristic()), (1, 2));
        assert!(find_isomorphism(
            &r0.structure().unwrap(),
            &r1.structure().unwrap(),
            DEFAULT_SEED
        )
        .is_none());
    }
}
