//! Split exact sequences `0 -> J -> F0 -> F -> 0` and the isomorphism
//! `J⁺_F -> F0`, `(f, q) ↦ σ(f) + q`.

use serde::Serialize;

use super::{is_q_algebra, unitize, QAlgebra, QAlgebraReport};
use crate::error::{Error, Result};
use crate::fields::{cartesian, is_morphism, make_multivariate, ThreeField};
use crate::poly2::{ExponentBox, MultiTruncPoly};
use crate::qstruct::{Ideal, QRING_MAX};

/// A surjective morphism `π: F0 -> F` with right inverse `σ`.
#[derive(Clone, Debug)]
pub struct SplitSequence {
    pub total: ThreeField,
    pub quotient: ThreeField,
    pub pi: Vec<u32>,
    pub sigma: Vec<u32>,
}

impl SplitSequence {
    pub fn new(
        total: &ThreeField,
        quotient: &ThreeField,
        pi: Vec<u32>,
        sigma: Vec<u32>,
    ) -> Result<Self> {
        if !is_morphism(total, quotient, &pi) {
            return Err(Error::NotAMorphism("projection".into()));
        }
        if !is_morphism(quotient, total, &sigma) {
            return Err(Error::NotAMorphism("section".into()));
        }
        if quotient
            .elements()
            .any(|g| pi[sigma[g as usize] as usize] != g)
        {
            return Err(Error::Invalid(
                "section is not a right inverse of the projection".into(),
            ));
        }
        Ok(Self {
            total: total.clone(),
            quotient: quotient.clone(),
            pi,
            sigma,
        })
    }

    /// `F0 × F1 -> F1` with section `f1 ↦ (ι(f1), f1)` for a morphism
    /// `ι: F1 -> F0` (the diagonal when `F1` is a subfield of `F0`).
    pub fn second_projection(f0: &ThreeField, f1: &ThreeField, iota: &[u32]) -> Result<Self> {
        let total = cartesian(f0, f1)?;
        let n0 = f0.size() as u32;
        let pi = total.elements().map(|x| x / n0).collect();
        let sigma = f1.elements().map(|g| iota[g as usize] + n0 * g).collect();
        Self::new(&total, f1, pi, sigma)
    }

    /// `F(n_1, ..., n_k) -> F(..., n_{i-1}, n_{i+1}, ...)` setting `t_i = 0`,
    /// with the inclusion as section.
    pub fn eliminate_variable(bounds: &[usize], i: usize) -> Result<Self> {
        if i >= bounds.len() || bounds.len() < 2 {
            return Err(Error::OutOfRange(format!("variable {i} of {bounds:?}")));
        }
        let small: Vec<usize> = bounds
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &b)| b)
            .collect();
        let (total, quotient) = (make_multivariate(bounds)?, make_multivariate(&small)?);
        let (big_box, small_box) = (ExponentBox::new(bounds)?, ExponentBox::new(&small)?);
        let pi = total
            .elements()
            .map(|x| {
                let p = MultiTruncPoly::from_word(1 | (x as u64) << 1, bounds)
                    .expect("valid word")
                    .eliminate(i);
                let mut word = 0u64;
                for c in 0..big_box.cells() {
                    if p.coeff_at(c) {
                        let mut e = big_box.exponents(c);
                        e.remove(i);
                        word |= 1 << small_box.index(&e).expect("inside the box");
                    }
                }
                (word >> 1) as u32
            })
            .collect();
        let sigma = quotient
            .elements()
            .map(|y| {
                let mut word = 0u64;
                let w = 1 | (y as u64) << 1;
                for c in 0..small_box.cells() {
                    if w >> c & 1 == 1 {
                        let mut e = small_box.exponents(c);
                        e.insert(i, 0);
                        word |= 1 << big_box.index(&e).expect("inside the box");
                    }
                }
                (word >> 1) as u32
            })
            .collect();
        Self::new(&total, &quotient, pi, sigma)
    }

    /// `J = Ker Q(π)` as Q-ids of the total field.
    pub fn kernel(&self) -> Ideal {
        let zero = self.quotient.quer(self.quotient.unit());
        Ideal::from_members(
            self.total
                .elements()
                .filter(|&f| self.pi[f as usize] == zero),
        )
    }

    /// `J` as an `F`-algebra with `g.j = σ(g) j`.
    pub fn kernel_algebra(&self) -> Result<QAlgebra> {
        if self.total.size() > QRING_MAX {
            return Err(Error::TooLarge {
                what: "split sequence",
                size: self.total.size(),
                limit: QRING_MAX,
            });
        }
        QAlgebra::from_ideal(
            format!("Ker Q(pi) in {}", self.total.label()),
            &self.total,
            &self.kernel(),
            &self.quotient,
            &self.sigma,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemidirectReport {
    pub kernel_order: usize,
    pub algebra_axioms: Option<String>,
    pub q_algebra: QAlgebraReport,
    /// `(f, q) ↦ σ(f) + q` from `J⁺_F` (id `f + |F| j`) to `F0`.
    pub map: Vec<u32>,
    pub is_isomorphism: bool,
}

/// Equips `J = Ker Q(π)` with the action through `σ`, checks it is a
/// Q-algebra and that `(f, q) ↦ σ(f) + q` is an isomorphism `J⁺_F -> F0`.
pub fn semidirect_check(s: &SplitSequence) -> Result<SemidirectReport> {
    let algebra = s.kernel_algebra()?;
    let q_algebra = is_q_algebra(&algebra);
    let unit = unitize(&algebra)?;
    let kernel = s.kernel();
    let one = s.total.unit();
    // σ(f) + q_{1,g} is the field element σ(f) + 1 + g.
    let map: Vec<u32> = unit
        .ternary
        .elements()
        .map(|x| {
            let (f, j) = unit.split(x);
            s.total
                .tadd(s.sigma[f as usize], one, kernel.members()[j as usize])
        })
        .collect();
    let mut image = map.clone();
    image.sort_unstable();
    image.dedup();
    let is_isomorphism = image.len() == s.total.size()
        && map.len() == s.total.size()
        && is_morphism(&unit.ternary, &s.total, &map);
    Ok(SemidirectReport {
        kernel_order: kernel.len(),
        algebra_axioms: algebra.check_axioms(),
        q_algebra,
        map,
        is_isomorphism,
    })
}
