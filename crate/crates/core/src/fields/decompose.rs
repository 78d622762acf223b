//! Cartesian decomposability: `F ≅ F1 × F2` iff `Q(F) = Q1 ⊕ Q2` for
//! nonzero ideals with trivial intersection.

use serde::Serialize;

use super::ThreeField;
use crate::error::{Error, Result};
use crate::qstruct::{all_ideals, ideal_sum, q_of};

/// Largest carrier accepted by [`is_cartesian_decomposable`].
pub const DECOMPOSE_MAX: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct CartesianDecomposition {
    /// Q-ids of the two ideals.
    pub q1: Vec<u32>,
    pub q2: Vec<u32>,
}

/// Searches all pairs of nonzero ideals `Q1, Q2` with `Q1 ∩ Q2 = 0` and
/// `Q1 + Q2 = Q(F)`. `None` means indecomposable.
pub fn is_cartesian_decomposable(f: &ThreeField) -> Result<Option<CartesianDecomposition>> {
    if f.size() > DECOMPOSE_MAX {
        return Err(Error::TooLarge {
            what: "decomposition search",
            size: f.size(),
            limit: DECOMPOSE_MAX,
        });
    }
    let q = q_of(f)?;
    let ideals: Vec<_> = all_ideals(&q).into_iter().filter(|i| i.len() > 1).collect();
    for (i, a) in ideals.iter().enumerate() {
        for b in &ideals[i + 1..] {
            if a.intersection(b).len() == 1
                && a.len() * b.len() == q.size()
                && ideal_sum(&q, a, b).len() == q.size()
            {
                return Ok(Some(CartesianDecomposition {
                    q1: a.members().to_vec(),
                    q2: b.members().to_vec(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{cartesian, make_f0, make_tf};
    use crate::qstruct::QRing;
    use crate::structure::{are_isomorphic, Structure};

    fn ideal_ring(q: &QRing, members: &[u32]) -> Structure {
        let index = |x: u32| members.iter().position(|&m| m == x).unwrap() as u32;
        Structure::from_fn(
            members.len(),
            2,
            |k, a, b| {
                let (x, y) = (members[a as usize], members[b as usize]);
                index(if k == 0 { q.add(x, y) } else { q.mul(x, y) })
            },
            vec![index(q.zero())],
        )
        .unwrap()
    }

    #[test]
    fn f0_is_indecomposable() {
        for n in 2..=6 {
            assert!(
                is_cartesian_decomposable(&make_f0(n).unwrap())
                    .unwrap()
                    .is_none(),
                "n = {n}"
            );
        }
        assert!(is_cartesian_decomposable(&make_tf(2).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn tf2_squared_splits() {
        let t2 = make_tf(2).unwrap();
        let p = cartesian(&t2, &t2).unwrap();
        let d = is_cartesian_decomposable(&p).unwrap().unwrap();
        let q = q_of(&p).unwrap();
        let qt = q_of(&t2).unwrap();
        let all: Vec<u32> = qt.elements().collect();
        let reference = ideal_ring(&qt, &all);
        assert!(are_isomorphic(&ideal_ring(&q, &d.q1), &reference));
        assert!(are_isomorphic(&ideal_ring(&q, &d.q2), &reference));
    }
}
