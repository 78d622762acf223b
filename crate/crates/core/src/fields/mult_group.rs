//! The multiplicative group of `F0(n)` as a product of cyclic groups
//! generated by `γ_k = 1 + t^(2k+1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly2::TruncPoly;

/// Largest `n` for [`mult_group_decomposition`].
pub const MULT_GROUP_MAX: usize = 20;
/// Largest `n` for which unique factorization is checked on every element.
pub const FACTORIZATION_MAX: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct GammaGenerator {
    pub k: usize,
    pub poly: TruncPoly,
    /// Order found by repeated squaring.
    pub order: u64,
    /// `min{2^s : 2^s (2k+1) >= n}`.
    pub corrected_formula: u64,
    /// `min{2^s : 2^s k >= n}` as printed; undefined for `k = 0`.
    pub printed_formula: Option<u64>,
    /// Number of generators with the same order.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultGroupDecomposition {
    pub n: usize,
    pub generators: Vec<GammaGenerator>,
    pub order_product: u64,
    /// `None` when `n` exceeds [`FACTORIZATION_MAX`].
    pub unique_factorization: Option<bool>,
}

impl MultGroupDecomposition {
    /// The orders multiply to `2^(n-1)` and (when checked) every element has
    /// exactly one factorization, so the group is the direct product.
    pub fn is_direct_product(&self) -> bool {
        self.order_product == 1 << (self.n - 1) && self.unique_factorization != Some(false)
    }

    pub fn corrected_formula_matches(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.order == g.corrected_formula)
    }

    pub fn printed_formula_matches(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.printed_formula == Some(g.order))
    }
}

fn min_power(step: usize, n: usize) -> Option<u64> {
    if step == 0 {
        return None;
    }
    let mut p = 1u64;
    while (p as usize) * step < n {
        p *= 2;
    }
    Some(p)
}

pub fn mult_group_decomposition(n: usize) -> Result<MultGroupDecomposition> {
    if n == 0 || n > MULT_GROUP_MAX {
        return Err(Error::OutOfRange(format!(
            "multiplicative decomposition needs 1 <= n <= {MULT_GROUP_MAX}, got {n}"
        )));
    }
    let one = TruncPoly::one(n)?;
    let mut generators: Vec<GammaGenerator> = (0..)
        .map(|k| 2 * k + 1)
        .take_while(|&e| e < n)
        .map(|e| {
            let poly = TruncPoly::from_exponents(&[0, e], n).expect("exponent below bound");
            let mut order = 1u64;
            let mut x = poly;
            while x != one {
                x = x.frobenius();
                order *= 2;
            }
            GammaGenerator {
                k: e / 2,
                poly,
                order,
                corrected_formula: min_power(e, n).expect("odd step"),
                printed_formula: min_power(e / 2, n),
                multiplicity: 0,
            }
        })
        .collect();
    let orders: Vec<u64> = generators.iter().map(|g| g.order).collect();
    for g in &mut generators {
        g.multiplicity = orders.iter().filter(|&&o| o == g.order).count();
    }
    let order_product: u64 = orders.iter().product();
    let unique_factorization = (n <= FACTORIZATION_MAX).then(|| {
        let size = 1usize << (n - 1);
        if order_product != size as u64 {
            return false;
        }
        let mut seen = vec![false; size];
        let mut products = vec![one];
        for g in &generators {
            let powers: Vec<TruncPoly> = std::iter::successors(Some(one), |p| {
                Some(p.trunc_mul(&g.poly).expect("same bound"))
            })
            .take(g.order as usize)
            .collect();
            products = products
                .iter()
                .flat_map(|p| {
                    powers
                        .iter()
                        .map(move |q| p.trunc_mul(q).expect("same bound"))
                })
                .collect();
        }
        for p in products {
            let id = (p.bits() >> 1) as usize;
            if std::mem::replace(&mut seen[id], true) {
                return false;
            }
        }
        seen.iter().all(|&s| s)
    });
    Ok(MultGroupDecomposition {
        n,
        generators,
        order_product,
        unique_factorization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let d = mult_group_decomposition(3).unwrap();
        assert_eq!(d.generators.len(), 1);
        assert_eq!(d.generators[0].order, 4);
        let d = mult_group_decomposition(5).unwrap();
        let orders: Vec<u64> = d.generators.iter().map(|g| g.order).collect();
        assert_eq!(orders, vec![8, 2]);
        assert!(d.is_direct_product());
        let d = mult_group_decomposition(2).unwrap();
        assert_eq!(d.generators[0].order, 2);
        assert_eq!(d.generators[0].printed_formula, None);
        assert!(!d.printed_formula_matches());
    }

    #[test]
    fn corrected_formula_and_factorization() {
        for n in 1..=MULT_GROUP_MAX {
            let d = mult_group_decomposition(n).unwrap();
            assert!(d.corrected_formula_matches(), "n = {n}");
            assert!(d.is_direct_product(), "n = {n}");
            if n <= FACTORIZATION_MAX {
                assert_eq!(d.unique_factorization, Some(true));
            }
        }
    }
}
