//! The local ring `U(F) = Q(F) ∪ F` and direct sums of such rings.
//!
//! Ids `0..N` of a [`GradedUnitalRing`] are the Q-part (id `f` is `q_{1,f}`,
//! the ambient element `1 + f`), ids `N..2N` are the field elements.

use serde::Serialize;

use super::ThreeField;
use crate::error::{Error, Result};

/// `U(F)` with binary addition and multiplication and grading `∂`, which
/// is 1 exactly on `F`.
#[derive(Clone, Debug)]
pub struct GradedUnitalRing {
    field: ThreeField,
}

impl GradedUnitalRing {
    pub fn new(field: &ThreeField) -> Self {
        Self {
            field: field.clone(),
        }
    }

    pub fn field(&self) -> &ThreeField {
        &self.field
    }

    pub fn size(&self) -> usize {
        2 * self.field.size()
    }

    fn n(&self) -> u32 {
        self.field.size() as u32
    }

    /// Grading `∂`: 0 on `Q(F)`, 1 on `F`.
    pub fn grade(&self, x: u32) -> u32 {
        u32::from(x >= self.n())
    }

    pub fn q(&self, f: u32) -> u32 {
        f
    }

    pub fn embed(&self, f: u32) -> u32 {
        f + self.n()
    }

    pub fn zero(&self) -> u32 {
        self.field.quer(self.field.unit())
    }

    pub fn one(&self) -> u32 {
        self.embed(self.field.unit())
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (f, n) = (&self.field, self.n());
        let one = f.unit();
        match (x < n, y < n) {
            (true, true) => f.tadd(x, one, y),
            (true, false) => f.tadd(x, one, y - n) + n,
            (false, true) => f.tadd(x - n, one, y) + n,
            (false, false) => f.tadd(x - n, y - n, f.quer(one)),
        }
    }

    pub fn neg(&self, x: u32) -> u32 {
        let (f, n) = (&self.field, self.n());
        let q1 = f.quer(f.unit());
        if x < n {
            f.tadd(q1, q1, f.quer(x))
        } else {
            f.quer(x - n) + n
        }
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (f, n) = (&self.field, self.n());
        let q1 = f.quer(f.unit());
        match (x < n, y < n) {
            (true, true) => f.tadd(x, y, f.mul(x, y)),
            (true, false) => f.tadd(y - n, f.mul(y - n, x), q1),
            (false, true) => f.tadd(x - n, f.mul(x - n, y), q1),
            (false, false) => f.mul(x - n, y - n) + n,
        }
    }

    pub fn render(&self, x: u32) -> String {
        if x < self.n() {
            self.field.render_q(x)
        } else {
            self.field.render(x - self.n())
        }
    }

    /// First violated ring law (associativity, commutativity, distributivity,
    /// unit, additive inverse) or grading-morphism law, exhaustively.
    pub fn check(&self) -> Option<String> {
        let m = self.size() as u32;
        let (zero, one) = (self.zero(), self.one());
        for a in 0..m {
            if self.add(a, zero) != a || self.mul(a, one) != a || self.add(a, self.neg(a)) != zero {
                return Some(format!("identities at {}", self.render(a)));
            }
            for b in 0..m {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Some(format!(
                        "commutativity at ({}, {})",
                        self.render(a),
                        self.render(b)
                    ));
                }
                if self.grade(self.add(a, b)) != self.grade(a) ^ self.grade(b)
                    || self.grade(self.mul(a, b)) != self.grade(a) & self.grade(b)
                {
                    return Some(format!(
                        "grading at ({}, {})",
                        self.render(a),
                        self.render(b)
                    ));
                }
                for c in 0..m {
                    let bad = self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c));
                    if bad {
                        return Some(format!(
                            "ring law at ({}, {}, {})",
                            self.render(a),
                            self.render(b),
                            self.render(c)
                        ));
                    }
                }
            }
        }
        None
    }
}

/// Outcome of the direct-sum-of-units construction for an odd number of
/// fields.
#[derive(Clone, Debug, Serialize)]
pub struct DirectSumUnits {
    pub labels: Vec<String>,
    pub grade_one_tuples: usize,
    pub invertible: usize,
    pub product_order: usize,
    /// The invertible grade-one tuples are exactly those with every
    /// component in `F_i`.
    pub equals_product: bool,
}

/// Largest number of tuples in `⊕ U(F_i)` that [`direct_sum_units`] scans.
pub const DIRECT_SUM_MAX: usize = 1 << 20;

/// Builds `{(f_i) ∈ ⊕ U(F_i) : Σ ∂(f_i) = 1}` and finds its invertible
/// elements by testing `(f_i)^N = (1, ..., 1)` with `N` the largest field
/// order (every `F_i` here has 2-power order).
pub fn direct_sum_units(fields: &[ThreeField]) -> Result<DirectSumUnits> {
    if fields.len().is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "direct sum of units needs an odd number of fields, got {}",
            fields.len()
        )));
    }
    let rings: Vec<GradedUnitalRing> = fields.iter().map(GradedUnitalRing::new).collect();
    let total = rings.iter().try_fold(1usize, |acc, r| {
        acc.checked_mul(r.size()).filter(|&s| s <= DIRECT_SUM_MAX)
    });
    let total = total.ok_or(Error::TooLarge {
        what: "direct sum of units",
        size: usize::MAX,
        limit: DIRECT_SUM_MAX,
    })?;
    let exponent = fields.iter().map(|f| f.size()).max().unwrap_or(1) as u64;
    let (mut grade_one, mut invertible, mut all_field) = (0, 0, true);
    let mut tuple = vec![0u32; rings.len()];
    for mut code in 0..total {
        for (slot, r) in tuple.iter_mut().zip(&rings) {
            *slot = (code % r.size()) as u32;
            code /= r.size();
        }
        if tuple
            .iter()
            .zip(&rings)
            .map(|(&x, r)| r.grade(x))
            .sum::<u32>()
            % 2
            != 1
        {
            continue;
        }
        grade_one += 1;
        let unit = tuple.iter().zip(&rings).all(|(&x, r)| {
            let mut acc = r.one();
            let mut base = x;
            let mut k = exponent;
            while k > 0 {
                if k & 1 == 1 {
                    acc = r.mul(acc, base);
                }
                base = r.mul(base, base);
                k >>= 1;
            }
            acc == r.one()
        });
        let in_product = tuple.iter().zip(&rings).all(|(&x, r)| r.grade(x) == 1);
        if unit {
            invertible += 1;
        }
        all_field &= unit == in_product;
    }
    let product_order: usize = fields.iter().map(|f| f.size()).product();
    Ok(DirectSumUnits {
        labels: fields.iter().map(|f| f.label().to_string()).collect(),
        grade_one_tuples: grade_one,
        invertible,
        product_order,
        equals_product: all_field && invertible == product_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_f0, make_tf};

    #[test]
    fn unit_ring_laws() {
        for f in [
            make_tf(3).unwrap(),
            make_f0(3).unwrap(),
            make_tf(1).unwrap(),
        ] {
            let u = GradedUnitalRing::new(&f);
            assert_eq!(u.check(), None, "{}", f.label());
        }
    }

    #[test]
    fn tf_ring_is_z_mod_2n() {
        // U(TF(3)) is Z/8 with Q-id f at residue 2f + 2 and field id f at 2f + 1.
        let f = make_tf(3).unwrap();
        let u = GradedUnitalRing::new(&f);
        let residue = |x: u32| {
            if x < 4 {
                (2 * x + 2) % 8
            } else {
                2 * (x - 4) + 1
            }
        };
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(residue(u.add(a, b)), (residue(a) + residue(b)) % 8);
                assert_eq!(residue(u.mul(a, b)), (residue(a) * residue(b)) % 8);
            }
        }
    }

    #[test]
    fn direct_sums() {
        let t2 = make_tf(2).unwrap();
        let r = direct_sum_units(&[t2.clone(), t2.clone(), t2.clone()]).unwrap();
        assert_eq!(r.invertible, 8);
        assert!(r.equals_product);
        let r = direct_sum_units(&[t2.clone(), t2.clone(), make_tf(3).unwrap()]).unwrap();
        assert_eq!(r.invertible, 16);
        assert!(r.equals_product);
        let single = direct_sum_units(&[make_f0(3).unwrap()]).unwrap();
        assert_eq!(single.invertible, 4);
        assert!(direct_sum_units(&[t2.clone(), t2]).is_err());
    }
}
