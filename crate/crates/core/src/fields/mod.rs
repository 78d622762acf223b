//! Finite unital 3-fields: ternary addition, binary multiplication, no zero.
//!
//! A [`ThreeField`] is an enumerable carrier `0..size` of element ids with
//! operations computed from a concrete representation. The built-in
//! representations are
//!
//! * `TF(n)`: odd residues modulo `2^n`; id `i` is the residue `2i + 1`.
//! * `F0(n)`: polynomials `1 + sum e_v t^v` modulo `t^n` over GF(2); id `m`
//!   has coefficient word `1 | m << 1`.
//! * `F(n_1, ..., n_k)`: the multivariate analogue over an exponent box.
//! * Cartesian products, tabulated fields and subfields of any of these.
//!
//! Every 3-field sits inside its local ring `U(F) = Q(F) ∪ F`, and each
//! element of the ring of pairs `Q(F)` is `q_{1,f}` for a unique `f`. Q-ring
//! ids therefore reuse field ids: Q-id `f` stands for `q_{1,f}`, which in the
//! ambient ring is the element `1 + f`.

pub mod axioms;
pub mod decompose;
pub mod graded;
pub mod group_algebra;
pub mod mult_group;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::poly2::{clmul_trunc, MultiTruncPoly, TruncPoly};
use crate::structure::{Structure, DEFAULT_SEED};

pub use axioms::{check_axioms, AxiomCheck, AxiomReport};
pub use decompose::{is_cartesian_decomposable, CartesianDecomposition};
pub use graded::{direct_sum_units, DirectSumUnits, GradedUnitalRing};
pub use group_algebra::{ternary_group_algebra, GroupAlgebraReport, Reading, ReadingReport};
pub use mult_group::{mult_group_decomposition, MultGroupDecomposition};

/// Largest `n` accepted by [`make_tf`].
pub const TF_MAX: usize = 20;
/// Largest `n` accepted by [`make_f0`].
pub const F0_MAX: usize = 24;
/// Largest exponent box (number of monomials) accepted by [`make_multivariate`].
pub const MULTI_MAX_CELLS: usize = 21;
/// Largest carrier accepted by products and table-based constructions.
pub const CARRIER_MAX: usize = 1 << 24;
/// Largest carrier for which [`ThreeField::structure`] builds tables.
pub const TABLE_MAX: usize = 1 << 12;
/// Largest carrier accepted by [`ThreeField::from_ops`].
pub const TABULATE_MAX: usize = 1 << 10;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Tf,
    F0,
    Multivariate,
    Cartesian,
    Tabulated,
    Subfield,
}

/// A finite unital 3-field (or, for tabulated constructions, a 3-ring
/// whose inverses may be missing; see [`ThreeField::try_inv`]).
#[derive(Clone)]
pub struct ThreeField(Arc<Inner>);

struct Inner {
    label: String,
    kind: FieldKind,
    params: Vec<usize>,
    size: usize,
    repr: Repr,
}

enum Repr {
    Tf {
        n: u32,
    },
    F0 {
        n: usize,
    },
    Multi {
        bounds: Vec<usize>,
        cells: usize,
        prod: Vec<u8>,
    },
    Product(ThreeField, ThreeField),
    Table(Tables),
    Sub {
        parent: ThreeField,
        members: Vec<u32>,
        index: HashMap<u32, u32>,
    },
}

/// Tabulated 3-ring in its binary form: `a ⊕ b = a + quer(1) + b` is an
/// abelian group with identity the unit, and `a + b + c = a ⊕ b ⊕ c ⊕ w`
/// with `w = 1 + 1 + 1`.
struct Tables {
    plus: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    unit: u32,
    w: u32,
    names: Vec<String>,
    q_names: Vec<String>,
}

/// The prime 3-field `TF(n)` of odd residues modulo `2^n`.
pub fn make_tf(n: usize) -> Result<ThreeField> {
    if n == 0 || n > TF_MAX {
        return Err(Error::OutOfRange(format!(
            "TF(n) needs 1 <= n <= {TF_MAX}, got {n}"
        )));
    }
    Ok(ThreeField::wrap(
        format!("TF({n})"),
        FieldKind::Tf,
        vec![n],
        1 << (n - 1),
        Repr::Tf { n: n as u32 },
    ))
}

/// The extension `F0(n)` of `{1}`: GF(2) polynomials in `t` with constant
/// term 1, modulo `t^n`.
pub fn make_f0(n: usize) -> Result<ThreeField> {
    if n == 0 || n > F0_MAX {
        return Err(Error::OutOfRange(format!(
            "F0(n) needs 1 <= n <= {F0_MAX}, got {n}"
        )));
    }
    Ok(ThreeField::wrap(
        format!("F0({n})"),
        FieldKind::F0,
        vec![n],
        1 << (n - 1),
        Repr::F0 { n },
    ))
}

/// `F(n_1, ..., n_k)`: multivariate polynomials with constant term 1 modulo
/// `(t_1^{n_1}, ..., t_k^{n_k})`. The carrier has `2^(prod n_i - 1)` elements,
/// so the box is capped at [`MULTI_MAX_CELLS`] monomials.
pub fn make_multivariate(bounds: &[usize]) -> Result<ThreeField> {
    let bx = crate::poly2::ExponentBox::new(bounds)?;
    let cells = bx.cells();
    if cells > MULTI_MAX_CELLS {
        return Err(Error::TooLarge {
            what: "multivariate exponent box",
            size: cells,
            limit: MULTI_MAX_CELLS,
        });
    }
    let mut prod = vec![u8::MAX; cells * cells];
    for i in 0..cells {
        for j in 0..cells {
            let (ei, ej) = (bx.exponents(i), bx.exponents(j));
            let sum: Vec<usize> = ei.iter().zip(&ej).map(|(a, b)| a + b).collect();
            if let Some(k) = bx.index(&sum) {
                prod[i * cells + j] = k as u8;
            }
        }
    }
    let label = format!(
        "F({})",
        bounds
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let repr = Repr::Multi {
        bounds: bounds.to_vec(),
        cells,
        prod,
    };
    Ok(ThreeField::wrap(
        label,
        FieldKind::Multivariate,
        bounds.to_vec(),
        1 << (cells - 1),
        repr,
    ))
}

/// The Cartesian product `F1 × F2` with pointwise operations. Element
/// `(a, b)` has id `a + |F1| * b`.
pub fn cartesian(f1: &ThreeField, f2: &ThreeField) -> Result<ThreeField> {
    let size = f1
        .size()
        .checked_mul(f2.size())
        .filter(|&s| s <= CARRIER_MAX)
        .ok_or(Error::TooLarge {
            what: "Cartesian product",
            size: f1.size().saturating_mul(f2.size()),
            limit: CARRIER_MAX,
        })?;
    let label = format!("{} x {}", f1.label(), f2.label());
    let params = vec![f1.size(), f2.size()];
    Ok(ThreeField::wrap(
        label,
        FieldKind::Cartesian,
        params,
        size,
        Repr::Product(f1.clone(), f2.clone()),
    ))
}

impl ThreeField {
    fn wrap(label: String, kind: FieldKind, params: Vec<usize>, size: usize, repr: Repr) -> Self {
        Self(Arc::new(Inner {
            label,
            kind,
            params,
            size,
            repr,
        }))
    }

    /// Builds a tabulated 3-ring from its ternary addition and binary
    /// multiplication. The addition must come from a commutative 3-group
    /// (checked exhaustively up to 256 elements, by sampling above);
    /// missing inverses are allowed and show up in [`check_axioms`].
    pub fn from_ops(
        label: impl Into<String>,
        size: usize,
        tadd: impl Fn(u32, u32, u32) -> u32 + Sync,
        mul: impl Fn(u32, u32) -> u32 + Sync,
        unit: u32,
        names: Vec<String>,
        q_names: Option<Vec<String>>,
    ) -> Result<ThreeField> {
        if size == 0 || size > TABULATE_MAX {
            return Err(Error::TooLarge {
                what: "tabulated 3-ring",
                size,
                limit: TABULATE_MAX,
            });
        }
        if unit as usize >= size || names.len() != size {
            return Err(Error::Invalid(
                "unit or element names do not match the carrier".into(),
            ));
        }
        let n = size as u32;
        let q1 = (0..n)
            .find(|&x| (0..n).all(|s| tadd(unit, x, s) == s))
            .ok_or_else(|| Error::Invalid("the unit has no additive querelement".into()))?;
        let mut plus = Vec::with_capacity(size * size);
        let mut mul_t = Vec::with_capacity(size * size);
        for a in 0..n {
            for b in 0..n {
                plus.push(tadd(a, q1, b));
                mul_t.push(mul(a, b));
            }
        }
        if plus.iter().chain(&mul_t).any(|&v| v >= n) {
            return Err(Error::Invalid("operation leaves the carrier".into()));
        }
        let w = tadd(unit, unit, unit);
        let pl = |a: u32, b: u32| plus[(a * n + b) as usize];
        let mut neg = vec![NONE; size];
        for a in 0..n {
            neg[a as usize] = (0..n)
                .find(|&b| pl(a, b) == unit)
                .ok_or_else(|| Error::Invalid(format!("element {a} has no additive inverse")))?;
        }
        let encoded = |a: u32, b: u32, c: u32| pl(pl(pl(a, b), c), w);
        let mismatch = if size <= 256 {
            (0..n)
                .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
                .find(|&(a, b, c)| tadd(a, b, c) != encoded(a, b, c))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            (0..1 << 16)
                .map(|_| {
                    (
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                    )
                })
                .find(|&(a, b, c)| tadd(a, b, c) != encoded(a, b, c))
        };
        if let Some((a, b, c)) = mismatch {
            return Err(Error::Invalid(format!(
                "ternary addition is not that of a commutative 3-group at ({a}, {b}, {c})"
            )));
        }
        let mut inv = vec![NONE; size];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| {
                mul_t[(a * n + b) as usize] == unit && mul_t[(b * n + a) as usize] == unit
            }) {
                inv[a as usize] = b;
            }
        }
        let q_names = q_names.unwrap_or_else(|| names.iter().map(|s| format!("[{s}]")).collect());
        let tables = Tables {
            plus,
            mul: mul_t,
            neg,
            inv,
            unit,
            w,
            names,
            q_names,
        };
        Ok(Self::wrap(
            label.into(),
            FieldKind::Tabulated,
            vec![size],
            size,
            Repr::Table(tables),
        ))
    }

    /// A copy of this field with materialized operation tables.
    pub fn tabulate(&self) -> Result<ThreeField> {
        let names = self.elements().map(|a| self.render(a)).collect();
        let q_names = self.elements().map(|a| self.render_q(a)).collect();
        let t = ThreeField::from_ops(
            self.label(),
            self.size(),
            |a, b, c| self.tadd(a, b, c),
            |a, b| self.mul(a, b),
            self.unit(),
            names,
            Some(q_names),
        )?;
        Ok(t)
    }

    /// The subfield on `members`, which must contain the unit and be closed
    /// under ternary addition, multiplication and inversion.
    pub fn restrict(&self, label: impl Into<String>, members: &[u32]) -> Result<ThreeField> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m as usize >= self.size()) {
            return Err(Error::Invalid("member outside the carrier".into()));
        }
        let index: HashMap<u32, u32> = members
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i as u32))
            .collect();
        let has = |x: u32| index.contains_key(&x);
        let q1 = self.quer(self.unit());
        let w = self.tadd(self.unit(), self.unit(), self.unit());
        for (what, x) in [
            ("unit", self.unit()),
            ("querelement of the unit", q1),
            ("1 + 1 + 1", w),
        ] {
            if !has(x) {
                return Err(Error::Invalid(format!("subset misses the {what}")));
            }
        }
        for &a in &members {
            match self.try_inv(a) {
                Some(b) if has(b) => {}
                _ => {
                    return Err(Error::Invalid(format!(
                        "subset not closed under inversion at {}",
                        self.render(a)
                    )))
                }
            }
            for &b in &members {
                if !has(self.plus(a, b)) {
                    return Err(Error::Invalid(format!(
                        "subset not closed under addition at ({}, {})",
                        self.render(a),
                        self.render(b)
                    )));
                }
                if !has(self.mul(a, b)) {
                    return Err(Error::Invalid(format!(
                        "subset not closed under multiplication at ({}, {})",
                        self.render(a),
                        self.render(b)
                    )));
                }
            }
        }
        let size = members.len();
        let params = vec![size];
        Ok(Self::wrap(
            label.into(),
            FieldKind::Subfield,
            params,
            size,
            Repr::Sub {
                parent: self.clone(),
                members,
                index,
            },
        ))
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn params(&self) -> &[usize] {
        &self.0.params
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size() as u32
    }

    pub fn unit(&self) -> u32 {
        match &self.0.repr {
            Repr::Tf { .. } | Repr::F0 { .. } | Repr::Multi { .. } | Repr::Product(..) => 0,
            Repr::Table(t) => t.unit,
            Repr::Sub { parent, index, .. } => index[&parent.unit()],
        }
    }

    /// Ternary addition `a + b + c`.
    pub fn tadd(&self, a: u32, b: u32, c: u32) -> u32 {
        match &self.0.repr {
            Repr::Tf { n } => {
                let m = (1u64 << n) - 1;
                let r = (2 * a as u64 + 1 + 2 * b as u64 + 1 + 2 * c as u64 + 1) & m;
                (r >> 1) as u32
            }
            Repr::F0 { .. } | Repr::Multi { .. } => a ^ b ^ c,
            Repr::Product(f, g) => {
                let s = f.size() as u32;
                f.tadd(a % s, b % s, c % s) + s * g.tadd(a / s, b / s, c / s)
            }
            Repr::Table(t) => {
                let n = self.size() as u32;
                let p = |x: u32, y: u32| t.plus[(x * n + y) as usize];
                p(p(p(a, b), c), t.w)
            }
            Repr::Sub {
                parent,
                members,
                index,
            } => {
                index[&parent.tadd(
                    members[a as usize],
                    members[b as usize],
                    members[c as usize],
                )]
            }
        }
    }

    /// The binary sum `a ⊕ b = a + quer(1) + b`, an abelian group law with
    /// the unit as identity.
    pub fn plus(&self, a: u32, b: u32) -> u32 {
        match &self.0.repr {
            Repr::Table(t) => t.plus[a as usize * self.size() + b as usize],
            _ => self.tadd(a, self.quer(self.unit()), b),
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.repr {
            Repr::Tf { n } => {
                let m = (1u64 << n) - 1;
                let r = ((2 * a as u64 + 1) * (2 * b as u64 + 1)) & m;
                (r >> 1) as u32
            }
            Repr::F0 { n } => {
                let p = clmul_trunc(1 | (a as u64) << 1, 1 | (b as u64) << 1, *n);
                (p >> 1) as u32
            }
            Repr::Multi { cells, prod, .. } => {
                (multi_mul_word(1 | (a as u64) << 1, 1 | (b as u64) << 1, *cells, prod) >> 1) as u32
            }
            Repr::Product(f, g) => {
                let s = f.size() as u32;
                f.mul(a % s, b % s) + s * g.mul(a / s, b / s)
            }
            Repr::Table(t) => t.mul[a as usize * self.size() + b as usize],
            Repr::Sub {
                parent,
                members,
                index,
            } => index[&parent.mul(members[a as usize], members[b as usize])],
        }
    }

    /// The additive querelement: `r + quer(r) + s = s` for all `s`.
    pub fn quer(&self, a: u32) -> u32 {
        match &self.0.repr {
            Repr::Tf { n } => {
                let m = (1u64 << n) - 1;
                let r = (2 * a as u64 + 1).wrapping_neg() & m;
                (r >> 1) as u32
            }
            Repr::F0 { .. } | Repr::Multi { .. } => a,
            Repr::Product(f, g) => {
                let s = f.size() as u32;
                f.quer(a % s) + s * g.quer(a / s)
            }
            Repr::Table(t) => t.neg[t.plus[a as usize * self.size() + t.w as usize] as usize],
            Repr::Sub {
                parent,
                members,
                index,
            } => index[&parent.quer(members[a as usize])],
        }
    }

    /// Multiplicative inverse, if it exists.
    pub fn try_inv(&self, a: u32) -> Option<u32> {
        match &self.0.repr {
            Repr::Tf { n } => {
                let m = (1u64 << n) - 1;
                let r = 2 * a as u64 + 1;
                // Newton iteration doubles the number of correct low bits.
                let mut x = r;
                for _ in 0..6 {
                    x = x.wrapping_mul(2u64.wrapping_sub(r.wrapping_mul(x)));
                }
                Some(((x & m) >> 1) as u32)
            }
            Repr::F0 { n } => {
                let p = TruncPoly::raw(1 | (a as u64) << 1, *n);
                Some((p.inverse_unit().ok()?.bits() >> 1) as u32)
            }
            Repr::Multi { cells, prod, .. } => {
                let u = (a as u64) << 1;
                let mut term = 1u64;
                let mut acc = 0u64;
                while term != 0 {
                    acc ^= term;
                    term = multi_mul_word(term, u, *cells, prod);
                }
                Some((acc >> 1) as u32)
            }
            Repr::Product(f, g) => {
                let s = f.size() as u32;
                Some(f.try_inv(a % s)? + s * g.try_inv(a / s)?)
            }
            Repr::Table(t) => (t.inv[a as usize] != NONE).then(|| t.inv[a as usize]),
            Repr::Sub {
                parent,
                members,
                index,
            } => index.get(&parent.try_inv(members[a as usize])?).copied(),
        }
    }

    /// Multiplicative inverse; panics on a tabulated 3-ring element
    /// without one.
    pub fn inv(&self, a: u32) -> u32 {
        self.try_inv(a)
            .expect("element has no multiplicative inverse")
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = self.unit();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Size of the prime subfield generated by the unit: the length of the
    /// cycle of `x -> x + 1 + 1` through 1.
    pub fn characteristic(&self) -> usize {
        let one = self.unit();
        let mut x = self.tadd(one, one, one);
        let mut len = 1;
        while x != one {
            x = self.tadd(x, one, one);
            len += 1;
        }
        len
    }

    /// Rendering of a field element.
    pub fn render(&self, a: u32) -> String {
        match &self.0.repr {
            Repr::Tf { .. } => (2 * a as u64 + 1).to_string(),
            Repr::F0 { n } => TruncPoly::raw(1 | (a as u64) << 1, *n).to_string(),
            Repr::Multi { bounds, .. } => MultiTruncPoly::from_word(1 | (a as u64) << 1, bounds)
                .expect("valid word")
                .to_string(),
            Repr::Product(f, g) => {
                let s = f.size() as u32;
                format!("({}, {})", f.render(a % s), g.render(a / s))
            }
            Repr::Table(t) => t.names[a as usize].clone(),
            Repr::Sub {
                parent, members, ..
            } => parent.render(members[a as usize]),
        }
    }

    /// Rendering of `q_{1,a}` as the ambient element `1 + a` of `U(F)`.
    pub fn render_q(&self, a: u32) -> String {
        match &self.0.repr {
            Repr::Tf { n } => ((2 * a as u64 + 2) & ((1u64 << n) - 1)).to_string(),
            Repr::F0 { n } => TruncPoly::raw((a as u64) << 1, *n).to_string(),
            Repr::Multi { bounds, .. } => MultiTruncPoly::from_word((a as u64) << 1, bounds)
                .expect("valid word")
                .to_string(),
            Repr::Product(f, g) => {
                let s = f.size() as u32;
                format!("({}, {})", f.render_q(a % s), g.render_q(a / s))
            }
            Repr::Table(t) => t.q_names[a as usize].clone(),
            Repr::Sub {
                parent, members, ..
            } => parent.render_q(members[a as usize]),
        }
    }

    /// The polynomial of an element of `F0(n)` or of one of its subfields.
    pub fn poly(&self, a: u32) -> Option<TruncPoly> {
        match &self.0.repr {
            Repr::F0 { n } => Some(TruncPoly::raw(1 | (a as u64) << 1, *n)),
            Repr::Sub {
                parent, members, ..
            } => parent.poly(members[a as usize]),
            _ => None,
        }
    }

    /// Id of a polynomial with constant term 1 in `F0(n)` or a subfield.
    pub fn id_of_poly(&self, p: &TruncPoly) -> Option<u32> {
        match &self.0.repr {
            Repr::F0 { n } if p.bound() == *n && p.constant_term() => Some((p.bits() >> 1) as u32),
            Repr::Sub { parent, index, .. } => index.get(&parent.id_of_poly(p)?).copied(),
            _ => None,
        }
    }

    /// The residue of an element of `TF(n)`.
    pub fn residue(&self, a: u32) -> Option<u64> {
        match &self.0.repr {
            Repr::Tf { .. } => Some(2 * a as u64 + 1),
            _ => None,
        }
    }

    /// For a subfield, the ids of its members in the parent field.
    pub fn parent_members(&self) -> Option<(&ThreeField, &[u32])> {
        match &self.0.repr {
            Repr::Sub {
                parent, members, ..
            } => Some((parent, members)),
            _ => None,
        }
    }

    /// For a Cartesian product, its two factors.
    pub fn factors(&self) -> Option<(&ThreeField, &ThreeField)> {
        match &self.0.repr {
            Repr::Product(f, g) => Some((f, g)),
            _ => None,
        }
    }

    /// The binary encoding used for morphism and isomorphism search:
    /// operations `⊕` and multiplication, constants `1` and `1 + 1 + 1`.
    /// A bijection preserves this structure iff it preserves the 3-field.
    pub fn structure(&self) -> Result<Structure> {
        if self.size() > TABLE_MAX {
            return Err(Error::TooLarge {
                what: "structure tables",
                size: self.size(),
                limit: TABLE_MAX,
            });
        }
        let one = self.unit();
        let w = self.tadd(one, one, one);
        Structure::from_fn(
            self.size(),
            2,
            |k, a, b| {
                if k == 0 {
                    self.plus(a, b)
                } else {
                    self.mul(a, b)
                }
            },
            vec![one, w],
        )
    }

    /// JSON description: label, kind, params, rendered carrier and
    /// characteristic, plus binary operation tables on request.
    pub fn to_json(&self, with_tables: bool) -> serde_json::Value {
        let carrier: Vec<String> = self.elements().map(|a| self.render(a)).collect();
        let mut v = json!({
            "label": self.label(),
            "kind": self.kind(),
            "params": self.params(),
            "order": self.size(),
            "carrier": carrier,
            "characteristic": self.characteristic(),
        });
        if with_tables {
            let n = self.size() as u32;
            let rows = |f: &dyn Fn(u32, u32) -> u32| -> Vec<Vec<u32>> {
                (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
            };
            v["tables"] = json!({
                "unit": self.unit(),
                "quer": self.elements().map(|a| self.quer(a)).collect::<Vec<_>>(),
                "inv": self.elements().map(|a| self.try_inv(a)).collect::<Vec<_>>(),
                "plus": rows(&|a, b| self.plus(a, b)),
                "mul": rows(&|a, b| self.mul(a, b)),
            });
        }
        v
    }
}

impl fmt::Debug for ThreeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThreeField({}, order {})", self.label(), self.size())
    }
}

fn multi_mul_word(a: u64, b: u64, cells: usize, prod: &[u8]) -> u64 {
    let mut r = 0u64;
    let mut x = a;
    while x != 0 {
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        let mut y = b;
        while y != 0 {
            let j = y.trailing_zeros() as usize;
            y &= y - 1;
            let k = prod[i * cells + j];
            if k != u8::MAX {
                r ^= 1u64 << k;
            }
        }
    }
    r
}

/// Whether `map: F1 -> F2` (by ids) preserves ternary addition,
/// multiplication and the unit. Preserving `⊕`, `1 + 1 + 1` and the unit is
/// equivalent to preserving the ternary sum, so the check is quadratic.
pub fn is_morphism(f1: &ThreeField, f2: &ThreeField, map: &[u32]) -> bool {
    if map.len() != f1.size()
        || map.iter().any(|&m| m as usize >= f2.size())
        || map[f1.unit() as usize] != f2.unit()
    {
        return false;
    }
    let m = |x: u32| map[x as usize];
    let (o1, o2) = (f1.unit(), f2.unit());
    if m(f1.tadd(o1, o1, o1)) != f2.tadd(o2, o2, o2) {
        return false;
    }
    f1.elements().all(|a| {
        f1.elements().all(|b| {
            m(f1.mul(a, b)) == f2.mul(m(a), m(b)) && m(f1.plus(a, b)) == f2.plus(m(a), m(b))
        })
    })
}
