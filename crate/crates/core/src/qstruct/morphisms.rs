//! Morphisms of 3-fields given by id tables, their kernels in `Q`, and the
//! truncation and Frobenius morphisms of `F0(n)`.

use super::ideals::Ideal;
use crate::error::{Error, Result};
use crate::fields::{is_morphism, make_f0, ThreeField};

/// A verified 3-field morphism.
#[derive(Clone, Debug)]
pub struct FieldMorphism {
    pub name: String,
    pub source: ThreeField,
    pub target: ThreeField,
    pub map: Vec<u32>,
}

impl FieldMorphism {
    pub fn new(
        name: impl Into<String>,
        source: &ThreeField,
        target: &ThreeField,
        map: Vec<u32>,
    ) -> Result<Self> {
        let name = name.into();
        if !is_morphism(source, target, &map) {
            return Err(Error::NotAMorphism(name));
        }
        Ok(Self {
            name,
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    /// `Ker Q(φ)`: the Q-ids `f` with `Q(φ)(q_{1,f}) = q_{1,φ(f)} = 0`, i.e.
    /// `φ(f)` is the querelement of the unit.
    pub fn kernel(&self) -> Ideal {
        let zero = self.target.quer(self.target.unit());
        Ideal::from_members(self.source.elements().filter(|&f| self.apply(f) == zero))
    }

    pub fn image(&self) -> Vec<u32> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    pub fn compose(&self, next: &FieldMorphism) -> Result<FieldMorphism> {
        let map = self.map.iter().map(|&a| next.apply(a)).collect();
        FieldMorphism::new(
            format!("{} ∘ {}", next.name, self.name),
            &self.source,
            &next.target,
            map,
        )
    }
}

/// Truncation `μ_{n,k}: F0(n) -> F0(k)`, dropping terms of degree `>= k`.
/// `k = n` gives the identity.
pub fn quotient(n: usize, k: usize) -> Result<FieldMorphism> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "truncation mu_{{{n},{k}}} needs 1 <= k <= n"
        )));
    }
    let (src, dst) = (make_f0(n)?, make_f0(k)?);
    let mask = (1u32 << (k - 1)) - 1;
    let map = src.elements().map(|a| a & mask).collect();
    FieldMorphism::new(format!("mu_{{{n},{k}}}"), &src, &dst, map)
}

/// Frobenius `φ_n: F0(n) -> F0(n)`, `P ↦ P^2`.
pub fn frobenius(n: usize) -> Result<FieldMorphism> {
    let f = make_f0(n)?;
    let map = f.elements().map(|a| f.mul(a, a)).collect();
    FieldMorphism::new(format!("phi_{n}"), &f, &f, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstruct::{f0_ideal, q_of};

    #[test]
    fn truncation_kernels() {
        let mu = quotient(5, 3).unwrap();
        assert_eq!(mu.target.size(), 4);
        assert!(mu.is_surjective());
        assert_eq!(mu.kernel().members(), f0_ideal(5, 3).unwrap().members());
        let id = quotient(4, 4).unwrap();
        assert!(id.map.iter().enumerate().all(|(i, &m)| i as u32 == m));
        assert!(quotient(3, 0).is_err());
    }

    #[test]
    fn frobenius_kernel() {
        let phi = frobenius(5).unwrap();
        assert_eq!(phi.kernel().members(), f0_ideal(5, 3).unwrap().members());
    }

    #[test]
    fn lifted_map_is_a_ring_morphism() {
        let phi = frobenius(4).unwrap();
        let q = q_of(&phi.source).unwrap();
        for a in q.elements() {
            for b in q.elements() {
                assert_eq!(phi.apply(q.add(a, b)), q.add(phi.apply(a), phi.apply(b)));
                assert_eq!(phi.apply(q.mul(a, b)), q.mul(phi.apply(a), phi.apply(b)));
            }
        }
    }
}
