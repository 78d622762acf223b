//! Exhaustive (or seeded-sample) verification of the 3-ring and 3-field axioms.
//!
//! All checks run on the binary form `a ⊕ b = a + quer(1) + b`. Once the
//! identity `a + b + c = a ⊕ b ⊕ c ⊕ (1 + 1 + 1)` holds on every triple,
//! ternary associativity and commutativity reduce to those of `⊕`, and
//! distributivity over ternary sums reduces to three smaller identities.
//! For carriers of at most 16 elements the five-fold associativity and the
//! four-term distributive law are also checked verbatim.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ThreeField;
use crate::structure::DEFAULT_SEED;

/// Carriers up to this size are checked on every tuple.
pub const EXHAUSTIVE_LIMIT: usize = 1 << 10;
/// Carriers up to this size also get the verbatim 5-ary checks.
pub const VERBATIM_LIMIT: usize = 16;
/// Samples per cubic law above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLES: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub witness: Option<String>,
}

/// Embedding criterion: in a finite 3-field other than `{1}`, every
/// `y != 1` admits some `x != 1` with `x + y - xy = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingCheck {
    pub solvable: usize,
    pub total: usize,
    pub first_unsolvable: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub field: String,
    pub order: usize,
    pub exhaustive: bool,
    pub ring_checks: Vec<AxiomCheck>,
    pub inverses: AxiomCheck,
    pub embedding: Option<EmbeddingCheck>,
}

impl AxiomReport {
    /// All 3-ring axioms hold.
    pub fn is_ring(&self) -> bool {
        self.ring_checks.iter().all(|c| c.passed)
    }

    /// A unital 3-field: 3-ring axioms plus multiplicative inverses.
    pub fn is_field(&self) -> bool {
        self.is_ring() && self.inverses.passed
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.ring_checks
            .iter()
            .chain(std::iter::once(&self.inverses))
            .filter(|c| !c.passed)
            .collect()
    }
}

fn check2(f: &ThreeField, name: &'static str, law: impl Fn(u32, u32) -> bool + Sync) -> AxiomCheck {
    let n = f.size() as u32;
    let witness = (0..n)
        .into_par_iter()
        .find_map_first(|a| (0..n).find(|&b| !law(a, b)).map(|b| (a, b)));
    AxiomCheck {
        name,
        passed: witness.is_none(),
        cases: (n as u64).pow(2),
        witness: witness.map(|(a, b)| format!("({}, {})", f.render(a), f.render(b))),
    }
}

fn check3(
    f: &ThreeField,
    name: &'static str,
    law: impl Fn(u32, u32, u32) -> bool + Sync,
) -> AxiomCheck {
    let n = f.size() as u32;
    let render =
        |(a, b, c): (u32, u32, u32)| format!("({}, {}, {})", f.render(a), f.render(b), f.render(c));
    if f.size() <= EXHAUSTIVE_LIMIT {
        let witness = (0..n).into_par_iter().find_map_first(|a| {
            (0..n).find_map(|b| (0..n).find(|&c| !law(a, b, c)).map(|c| (a, b, c)))
        });
        AxiomCheck {
            name,
            passed: witness.is_none(),
            cases: (n as u64).pow(3),
            witness: witness.map(render),
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ name.len() as u64);
        let triples: Vec<(u32, u32, u32)> = (0..SAMPLES)
            .map(|_| {
                (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )
            })
            .collect();
        let witness = triples
            .par_iter()
            .find_first(|&&(a, b, c)| !law(a, b, c))
            .copied();
        AxiomCheck {
            name,
            passed: witness.is_none(),
            cases: SAMPLES as u64,
            witness: witness.map(render),
        }
    }
}

fn verbatim(
    f: &ThreeField,
    name: &'static str,
    arity: u32,
    law: impl Fn(&[u32]) -> bool + Sync,
) -> AxiomCheck {
    let n = f.size() as u64;
    let total = n.pow(arity);
    let witness = (0..total).into_par_iter().find_map_first(|mut code| {
        let mut xs = [0u32; 5];
        for x in xs.iter_mut().take(arity as usize) {
            *x = (code % n) as u32;
            code /= n;
        }
        (!law(&xs[..arity as usize])).then_some(xs)
    });
    AxiomCheck {
        name,
        passed: witness.is_none(),
        cases: total,
        witness: witness.map(|xs| {
            let parts: Vec<String> = xs[..arity as usize].iter().map(|&x| f.render(x)).collect();
            format!("({})", parts.join(", "))
        }),
    }
}

/// Checks every 3-ring axiom, the existence of inverses, and, for carriers
/// of at most [`EXHAUSTIVE_LIMIT`] elements, the embedding criterion.
pub fn check_axioms(f: &ThreeField) -> AxiomReport {
    let one = f.unit();
    let q1 = f.quer(one);
    let w = f.tadd(one, one, one);
    let plus = |a: u32, b: u32| f.tadd(a, q1, b);
    let mut ring_checks = vec![
        check2(f, "querelement: r + quer(r) + s = s", |r, s| {
            f.tadd(r, f.quer(r), s) == s
        }),
        check2(f, "binary sum commutative", |a, b| plus(a, b) == plus(b, a)),
        check3(f, "binary sum associative", |a, b, c| {
            plus(plus(a, b), c) == plus(a, plus(b, c))
        }),
        check3(f, "ternary sum is a ⊕ b ⊕ c ⊕ (1+1+1)", |a, b, c| {
            f.tadd(a, b, c) == plus(plus(a, b), plus(c, w))
        }),
        check2(f, "multiplication commutative", |a, b| {
            f.mul(a, b) == f.mul(b, a)
        }),
        check3(f, "multiplication associative", |a, b, c| {
            f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        }),
        check2(f, "unit: 1 r = r 1 = r", |r, _| {
            f.mul(one, r) == r && f.mul(r, one) == r
        }),
        check3(f, "distributive over a + quer(1) + b", |s, a, b| {
            f.mul(s, f.tadd(a, q1, b)) == f.tadd(f.mul(s, a), f.mul(s, q1), f.mul(s, b))
                && f.mul(f.tadd(a, q1, b), s) == f.tadd(f.mul(a, s), f.mul(q1, s), f.mul(b, s))
        }),
        check3(f, "distributive over x + 1 + c", |s, x, c| {
            f.mul(s, f.tadd(x, one, c)) == f.tadd(f.mul(s, x), s, f.mul(s, c))
                && f.mul(f.tadd(x, one, c), s) == f.tadd(f.mul(x, s), s, f.mul(c, s))
        }),
        check2(f, "s quer(1) = quer(1) s = quer(s)", |s, _| {
            f.mul(s, q1) == f.quer(s) && f.mul(q1, s) == f.quer(s)
        }),
    ];
    if f.size() <= VERBATIM_LIMIT {
        ring_checks.push(verbatim(
            f,
            "ternary sum totally associative and commutative",
            5,
            |x| {
                let l = f.tadd(f.tadd(x[0], x[1], x[2]), x[3], x[4]);
                l == f.tadd(x[0], f.tadd(x[1], x[2], x[3]), x[4])
                    && l == f.tadd(x[0], x[1], f.tadd(x[2], x[3], x[4]))
                    && f.tadd(x[0], x[1], x[2]) == f.tadd(x[1], x[2], x[0])
                    && f.tadd(x[0], x[1], x[2]) == f.tadd(x[1], x[0], x[2])
            },
        ));
        ring_checks.push(verbatim(f, "distributive over ternary sums", 4, |x| {
            let s = x[0];
            f.mul(s, f.tadd(x[1], x[2], x[3]))
                == f.tadd(f.mul(s, x[1]), f.mul(s, x[2]), f.mul(s, x[3]))
                && f.mul(f.tadd(x[1], x[2], x[3]), s)
                    == f.tadd(f.mul(x[1], s), f.mul(x[2], s), f.mul(x[3], s))
        }));
    }
    let missing = f.elements().find(|&a| {
        !f.try_inv(a)
            .is_some_and(|b| f.mul(a, b) == one && f.mul(b, a) == one)
    });
    let inverses = AxiomCheck {
        name: "multiplicative inverses",
        passed: missing.is_none(),
        cases: f.size() as u64,
        witness: missing.map(|a| f.render(a)),
    };
    let embedding = (f.size() <= EXHAUSTIVE_LIMIT).then(|| {
        let n = f.size() as u32;
        let solvable: Vec<bool> = (0..n)
            .into_par_iter()
            .filter(|&y| y != one)
            .map(|y| (0..n).any(|x| x != one && f.tadd(x, y, f.quer(f.mul(x, y))) == one))
            .collect();
        let others: Vec<u32> = (0..n).filter(|&y| y != one).collect();
        EmbeddingCheck {
            solvable: solvable.iter().filter(|&&s| s).count(),
            total: solvable.len(),
            first_unsolvable: solvable
                .iter()
                .position(|&s| !s)
                .map(|i| f.render(others[i])),
        }
    });
    AxiomReport {
        field: f.label().to_string(),
        order: f.size(),
        exhaustive: f.size() <= EXHAUSTIVE_LIMIT,
        ring_checks,
        inverses,
        embedding,
    }
}
