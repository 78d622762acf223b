//! Ternary group algebras `F_G ⊂ RG` over `R = Z/2^m` for finite abelian
//! 2-groups `G`.
//!
//! Two readings of the carrier are built and checked:
//!
//! * literal: `f(e)` is a unit of `R`;
//! * unit-intersected: additionally `f` is a unit of `RG`, detected by
//!   `f^(|RG|/2) = 1` (the unit group of the local ring `RG` has index 2).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_axioms, AxiomReport, ThreeField};
use crate::error::{Error, Result};
use crate::structure::DEFAULT_SEED;

/// Largest `|R|^|G|` (size of `RG`) that is enumerated.
pub const GROUP_RING_MAX: usize = 1 << 16;
/// Closure under ternary sums is checked on every triple up to this size.
pub const TRIPLE_CLOSURE_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    Literal,
    UnitIntersected,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReadingReport {
    pub reading: Reading,
    pub carrier: usize,
    pub closed_under_sum: bool,
    pub closed_under_product: bool,
    /// Pair or triple leaving the carrier, if any.
    pub closure_witness: Option<String>,
    /// Axiom report, present when the carrier is closed.
    pub axioms: Option<AxiomReport>,
    pub is_three_field: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupAlgebraReport {
    pub modulus: u64,
    pub group: Vec<usize>,
    pub readings: Vec<ReadingReport>,
}

/// The group ring `Z/2^m [C_{d_1} × ... × C_{d_r}]`, elements encoded as
/// base-`2^m` numbers with one digit per group element.
#[derive(Clone, Debug)]
pub struct GroupRing {
    modulus: u64,
    orders: Vec<usize>,
    gmul: Vec<usize>,
    order: usize,
}

impl GroupRing {
    pub fn new(modulus_exp: u32, orders: &[usize]) -> Result<Self> {
        if modulus_exp == 0 || modulus_exp > 16 {
            return Err(Error::Invalid(format!(
                "R = Z/2^m needs 1 <= m <= 16, got m = {modulus_exp}"
            )));
        }
        if orders.iter().any(|&d| d == 0 || !d.is_power_of_two()) {
            return Err(Error::Invalid(format!("group {orders:?} is not a 2-group")));
        }
        let order: usize = orders.iter().product();
        let modulus = 1u64 << modulus_exp;
        let size = (modulus as u128)
            .checked_pow(order as u32)
            .unwrap_or(u128::MAX);
        if size > GROUP_RING_MAX as u128 {
            return Err(Error::TooLarge {
                what: "group ring",
                size: size.min(usize::MAX as u128) as usize,
                limit: GROUP_RING_MAX,
            });
        }
        let digits = |mut g: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&d| {
                    let r = g % d;
                    g /= d;
                    r
                })
                .collect()
        };
        let mut gmul = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let (da, db) = (digits(a), digits(b));
                let mut idx = 0;
                for i in (0..orders.len()).rev() {
                    idx = idx * orders[i] + (da[i] + db[i]) % orders[i];
                }
                gmul[a * order + b] = idx;
            }
        }
        Ok(Self {
            modulus,
            orders: orders.to_vec(),
            gmul,
            order,
        })
    }

    pub fn size(&self) -> usize {
        (self.modulus as usize).pow(self.order as u32)
    }

    pub fn coeffs(&self, mut code: usize) -> Vec<u64> {
        (0..self.order)
            .map(|_| {
                let c = code as u64 % self.modulus;
                code /= self.modulus as usize;
                c
            })
            .collect()
    }

    pub fn code(&self, coeffs: &[u64]) -> usize {
        coeffs.iter().rev().fold(0, |acc, &c| {
            acc * self.modulus as usize + (c % self.modulus) as usize
        })
    }

    pub fn add3(&self, a: &[u64], b: &[u64], c: &[u64]) -> Vec<u64> {
        (0..self.order)
            .map(|i| (a[i] + b[i] + c[i]) % self.modulus)
            .collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = vec![0u64; self.order];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let k = self.gmul[i * self.order + j];
                r[k] = (r[k] + x * y) % self.modulus;
            }
        }
        r
    }

    pub fn is_unit(&self, a: &[u64]) -> bool {
        let mut one = vec![0u64; self.order];
        one[0] = 1;
        let mut x = a.to_vec();
        // |RG| / 2 is a power of two: square log2(|RG|) - 1 times.
        let squarings = self.size().trailing_zeros() - 1;
        for _ in 0..squarings {
            x = self.mul(&x, &x);
        }
        x == one
    }

    pub fn render(&self, a: &[u64]) -> String {
        let mut parts = Vec::new();
        for (g, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut rest = g;
            let mut word = String::new();
            for (i, &d) in self.orders.iter().enumerate() {
                let e = rest % d;
                rest /= d;
                let name = if self.orders.len() == 1 {
                    "g".to_string()
                } else {
                    format!("g{}", i + 1)
                };
                match e {
                    0 => {}
                    1 => word.push_str(&name),
                    _ => word.push_str(&format!("{name}^{e}")),
                }
            }
            parts.push(match (c, word.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => word,
                _ => format!("{c}{word}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn reading_report(ring: &GroupRing, reading: Reading) -> ReadingReport {
    let size = ring.size();
    let member: Vec<bool> = (0..size)
        .map(|code| {
            let c = ring.coeffs(code);
            c[0] % 2 == 1 && (reading == Reading::Literal || ring.is_unit(&c))
        })
        .collect();
    let carrier: Vec<usize> = (0..size).filter(|&c| member[c]).collect();
    let coeffs: Vec<Vec<u64>> = carrier.iter().map(|&c| ring.coeffs(c)).collect();
    let m = carrier.len();
    let mut witness = None;
    let mut closed_mul = true;
    'outer: for a in 0..m {
        for b in a..m {
            let p = ring.mul(&coeffs[a], &coeffs[b]);
            if !member[ring.code(&p)] {
                closed_mul = false;
                witness = Some(format!(
                    "({}) * ({}) = {}",
                    ring.render(&coeffs[a]),
                    ring.render(&coeffs[b]),
                    ring.render(&p)
                ));
                break 'outer;
            }
        }
    }
    let triple_bad = |a: usize, b: usize, c: usize| {
        !member[ring.code(&ring.add3(&coeffs[a], &coeffs[b], &coeffs[c]))]
    };
    let bad_triple = if m <= TRIPLE_CLOSURE_LIMIT {
        (0..m)
            .flat_map(|a| (0..m).flat_map(move |b| (0..m).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| triple_bad(a, b, c))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        (0..1 << 16)
            .map(|_| {
                (
                    rng.gen_range(0..m),
                    rng.gen_range(0..m),
                    rng.gen_range(0..m),
                )
            })
            .find(|&(a, b, c)| triple_bad(a, b, c))
    };
    if let Some((a, b, c)) = bad_triple {
        witness.get_or_insert_with(|| {
            format!(
                "({}) + ({}) + ({}) leaves the carrier",
                ring.render(&coeffs[a]),
                ring.render(&coeffs[b]),
                ring.render(&coeffs[c])
            )
        });
    }
    let closed_sum = bad_triple.is_none();
    let axioms = (closed_mul && closed_sum && m > 0).then(|| {
        let mut index = vec![u32::MAX; size];
        for (i, &c) in carrier.iter().enumerate() {
            index[c] = i as u32;
        }
        let names: Vec<String> = coeffs.iter().map(|c| ring.render(c)).collect();
        let one = index[1];
        let label = format!("Z/{}[{:?}] ({:?})", ring.modulus, ring.orders, reading);
        ThreeField::from_ops(
            label,
            m,
            |a, b, c| {
                index[ring.code(&ring.add3(
                    &coeffs[a as usize],
                    &coeffs[b as usize],
                    &coeffs[c as usize],
                ))]
            },
            |a, b| index[ring.code(&ring.mul(&coeffs[a as usize], &coeffs[b as usize]))],
            one,
            names,
            None,
        )
        .map(|f| check_axioms(&f))
    });
    let (axioms, build_error) = match axioms {
        Some(Ok(r)) => (Some(r), None),
        Some(Err(e)) => (None, Some(e.to_string())),
        None => (None, None),
    };
    let is_three_field = axioms.as_ref().is_some_and(|r| r.is_field());
    ReadingReport {
        reading,
        carrier: m,
        closed_under_sum: closed_sum,
        closed_under_product: closed_mul,
        closure_witness: witness.or(build_error),
        axioms,
        is_three_field,
    }
}

/// Builds `F_G` for `R = Z/2^modulus_exp` and `G = C_{d_1} × ... × C_{d_r}`
/// under both readings and reports closure and axioms for each.
pub fn ternary_group_algebra(modulus_exp: u32, orders: &[usize]) -> Result<GroupAlgebraReport> {
    let ring = GroupRing::new(modulus_exp, orders)?;
    Ok(GroupAlgebraReport {
        modulus: ring.modulus,
        group: orders.to_vec(),
        readings: vec![
            reading_report(&ring, Reading::Literal),
            reading_report(&ring, Reading::UnitIntersected),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_c2_literal_is_not_closed() {
        let r = ternary_group_algebra(2, &[2]).unwrap();
        let lit = &r.readings[0];
        assert_eq!(lit.carrier, 8);
        assert!(!lit.closed_under_product);
        assert!(!lit.is_three_field);
        // (1 + g)^2 = 2 + 2g.
        let ring = GroupRing::new(2, &[2]).unwrap();
        assert_eq!(ring.mul(&[1, 1], &[1, 1]), vec![2, 2]);
    }

    #[test]
    fn z4_c2_unit_reading() {
        let r = ternary_group_algebra(2, &[2]).unwrap();
        let unit = &r.readings[1];
        // {a + bg : a odd, b even}
        assert_eq!(unit.carrier, 4);
        assert!(unit.is_three_field);
    }

    #[test]
    fn unit_oracle_matches_augmentation_parity() {
        let ring = GroupRing::new(2, &[2, 2]).unwrap();
        for code in 0..ring.size() {
            let c = ring.coeffs(code);
            assert_eq!(ring.is_unit(&c), c.iter().sum::<u64>() % 2 == 1);
        }
    }

    #[test]
    fn trivial_group_is_tf() {
        let r = ternary_group_algebra(3, &[]).unwrap();
        for reading in &r.readings {
            assert_eq!(reading.carrier, 4);
            assert!(reading.is_three_field);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroupRing::new(2, &[3]).is_err());
        assert!(GroupRing::new(0, &[2]).is_err());
        assert!(GroupRing::new(8, &[4, 4]).is_err());
    }
}
