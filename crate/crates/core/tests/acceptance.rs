//! Acceptance run: one line per criterion. Each line combines the library's
//! verification suite with an oracle computed here from plain bit
//! arithmetic, so a bug shared by suite and library cannot pass silently.
//! Exit status is nonzero iff some criterion FAILs; FLAGGED lines mark
//! statements whose printed form is false and whose corrected form holds.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use t3f::autgroup::{
    aut_inverse, aut_matrix, aut_matrix_via_multinomial, fixing_subgroup, gamma_filtration,
    generate_aut_group, inverse_paths, reflection, Endo,
};
use t3f::fields::{cartesian, make_f0, make_tf, ternary_group_algebra, Reading, ThreeField};
use t3f::poly2::{binomial_criterion, TruncPoly};
use t3f::products::{is_q_algebra, unitize};
use t3f::qstruct::{all_ideals, f0_ideal, field_from_qring, frobenius, q_of, quotient};
use t3f::subfields::{all_subfields, subfield_lattice};
use t3f::verify::{run_suite, unitization_corpus, Status, SuiteReport, APPENDIX_FIXTURE};

const APPENDIX_BUDGET: Duration = Duration::from_secs(1);
const GROUPS_BUDGET: Duration = Duration::from_secs(10);
const TOTAL_BUDGET: Duration = Duration::from_secs(120);
const MAX_N: usize = 20;

// Truncated GF(2)[t] arithmetic on coefficient words, bit i = coeff of t^i.

fn mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn mul(a: u64, b: u64, n: usize) -> u64 {
    let mut r = 0;
    for i in 0..n {
        if a >> i & 1 == 1 {
            r ^= b << i;
        }
    }
    r & mask(n)
}

fn pow(a: u64, e: u64, n: usize) -> u64 {
    (0..e).fold(1, |acc, _| mul(acc, a, n))
}

/// `p(q)` for `q` without constant term.
fn compose(p: u64, q: u64, n: usize) -> u64 {
    let (mut r, mut qi) = (0, 1);
    for i in 0..n {
        if p >> i & 1 == 1 {
            r ^= qi;
        }
        qi = mul(qi, q, n);
    }
    r
}

/// `P0` of every automorphism of `F0(n)`: `t + ε_2 t^2 + ...`.
fn automorphisms(n: usize) -> Vec<u64> {
    (0..1u64 << (n - 2)).map(|a| 2 | a << 2).collect()
}

fn units(n: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << (n - 1)).map(|m| 1 | m << 1)
}

struct Outcome {
    status: Status,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            status: Status::Pass,
            detail: String::new(),
        }
    }

    fn note(&mut self, s: impl AsRef<str>) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(s.as_ref());
    }

    fn require(&mut self, ok: bool, what: impl AsRef<str>) {
        if !ok {
            self.status = Status::Fail;
            self.note(format!("FAILED {}", what.as_ref()));
        }
    }

    fn flag(&mut self, what: impl AsRef<str>) {
        if self.status == Status::Pass {
            self.status = Status::Flagged;
        }
        self.note(format!("flagged: {}", what.as_ref()));
    }

    /// Folds a library suite into the outcome.
    fn suite(&mut self, r: &SuiteReport) {
        for c in &r.checks {
            match c.status {
                Status::Pass => {}
                Status::Fail => self.require(false, format!("{}: {}", c.name, c.detail)),
                Status::Flagged => self.flag(format!("{}: {}", c.name, c.detail)),
            }
        }
        self.note(format!("suite {}: {} checks", r.suite, r.checks.len()));
    }
}

fn suite(name: &str) -> SuiteReport {
    run_suite(name, MAX_N).unwrap_or_else(|e| panic!("suite {name}: {e}"))
}

fn parse_fixture() -> BTreeMap<usize, Vec<(String, Vec<u64>)>> {
    let mut out: BTreeMap<usize, Vec<(String, Vec<u64>)>> = BTreeMap::new();
    let mut n = 0;
    for line in APPENDIX_FIXTURE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
    {
        if let Some(v) = line.strip_prefix("n ") {
            n = v.parse().unwrap();
        } else if line.starts_with("A_") {
            out.entry(n)
                .or_default()
                .push((line.to_string(), Vec::new()));
        } else {
            let row = line
                .split_whitespace()
                .enumerate()
                .fold(0u64, |r, (c, x)| r | u64::from(x == "1") << c);
            out.get_mut(&n).unwrap().last_mut().unwrap().1.push(row);
        }
    }
    out
}

fn rows_of(p0: u64, n: usize) -> Vec<u64> {
    (1..n as u64).map(|r| pow(p0, r, n) >> 1).collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let report = suite("appendix");
    let elapsed = start.elapsed();
    o.suite(&report);
    let fixture = parse_fixture();
    let expected_counts = [(3, 1), (4, 3), (5, 8), (6, 16), (7, 32)];
    for (n, count) in expected_counts {
        let block = &fixture[&n];
        o.require(
            block.len() == count,
            format!(
                "n = {n}: {count} matrices transcribed, found {}",
                block.len()
            ),
        );
        let identity: Vec<u64> = (0..n - 1).map(|r| 1 << r).collect();
        let ours: BTreeSet<Vec<u64>> = automorphisms(n)
            .into_iter()
            .map(|p| rows_of(p, n))
            .filter(|m| count == 1 << (n - 2) || *m != identity)
            .collect();
        let theirs: BTreeSet<Vec<u64>> = block.iter().map(|(_, m)| m.clone()).collect();
        o.require(ours == theirs, format!("n = {n}: sets differ"));
        let by_label = block
            .iter()
            .filter(|(l, m)| {
                l[2..]
                    .parse::<u64>()
                    .map_or(true, |a| rows_of(2 | a << 2, n) == *m)
            })
            .count();
        if by_label != block.len() {
            o.note(format!(
                "oracle: n = {n} has {} of {} labels off the alpha indexing",
                block.len() - by_label,
                block.len()
            ));
        }
    }
    o.require(
        elapsed < APPENDIX_BUDGET,
        format!("runtime {elapsed:?} within {APPENDIX_BUDGET:?}"),
    );
    o.note(format!("{} ms", elapsed.as_millis()));
    o
}

/// Multiplication table from a list of elements and a product.
fn table<T: Ord + Copy>(elems: &[T], op: impl Fn(T, T) -> T) -> Vec<Vec<usize>> {
    let index: BTreeMap<T, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    elems
        .iter()
        .map(|&a| elems.iter().map(|&b| index[&op(a, b)]).collect())
        .collect()
}

/// Order histogram, center order and derived subgroup order.
fn invariants(t: &[Vec<usize>]) -> (BTreeMap<usize, usize>, usize, usize) {
    let m = t.len();
    let e = (0..m).find(|&i| (0..m).all(|j| t[i][j] == j)).unwrap();
    let inv: Vec<usize> = (0..m)
        .map(|a| (0..m).find(|&b| t[a][b] == e).unwrap())
        .collect();
    let mut hist = BTreeMap::new();
    for a in 0..m {
        let (mut x, mut k) = (a, 1);
        while x != e {
            x = t[x][a];
            k += 1;
        }
        *hist.entry(k).or_insert(0) += 1;
    }
    let center = (0..m)
        .filter(|&a| (0..m).all(|b| t[a][b] == t[b][a]))
        .count();
    let mut derived: BTreeSet<usize> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| t[t[inv[a]][inv[b]]][t[a][b]])
        .collect();
    loop {
        let more: BTreeSet<usize> = derived
            .iter()
            .flat_map(|&a| derived.iter().map(move |&b| (a, b)))
            .map(|(a, b)| t[a][b])
            .collect();
        if more.len() == derived.len() {
            break;
        }
        derived = more;
    }
    (hist, center, derived.len())
}

/// `GF(2)^d ⋊ C4` with the generator acting by the matrix whose columns
/// are `images` (bit vectors).
fn semidirect_c4(d: usize, images: &[u64]) -> Vec<Vec<usize>> {
    let act = |v: u64| {
        (0..d)
            .filter(|&i| v >> i & 1 == 1)
            .fold(0, |r, i| r ^ images[i])
    };
    let act_pow = |v: u64, a: u64| (0..a).fold(v, |x, _| act(x));
    let elems: Vec<(u64, u64)> = (0..4u64)
        .flat_map(|a| (0..1u64 << d).map(move |v| (v, a)))
        .collect();
    table(&elems, |(v, a), (w, b)| (v ^ act_pow(w, a), (a + b) % 4))
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let report = suite("groups");
    let elapsed = start.elapsed();
    o.suite(&report);
    for n in 3..=8 {
        // Bijective substitutions among all P0 with zero constant term.
        let count = (0..1u64 << (n - 1))
            .map(|m| m << 1)
            .filter(|&p| {
                let images: BTreeSet<u64> = units(n).map(|f| compose(f, p, n)).collect();
                images.len() == 1 << (n - 1)
            })
            .count();
        o.require(
            count == 1 << (n - 2),
            format!("oracle: {count} bijective substitutions for n = {n}"),
        );
    }
    let aut_table = |n: usize| {
        let elems = automorphisms(n);
        table(&elems, |a, b| compose(a, b, n))
    };
    let (h4, _, _) = invariants(&aut_table(4));
    let c4_like = h4.get(&4).copied().unwrap_or(0) == 2;
    o.require(
        h4.keys().all(|&k| k <= 2),
        format!("oracle: Aut F0(4) has exponent 2 ({h4:?})"),
    );
    if !c4_like {
        o.note("oracle: Aut F0(4) has no element of order 4, so it is C2 x C2");
    }
    let d4: BTreeMap<usize, usize> = [(1, 1), (2, 5), (4, 2)].into();
    let (h5, z5, _) = invariants(&aut_table(5));
    o.require(
        h5 == d4 && z5 == 2,
        format!("oracle: Aut F0(5) has the D4 order histogram ({h5:?}, center {z5})"),
    );
    // K4 ⋊ C4 with the generator swapping the K4 generators, and
    // C2^3 ⋊ C4 with a unipotent Jordan block.
    for (n, reference) in [
        (6, semidirect_c4(2, &[0b10, 0b01])),
        (7, semidirect_c4(3, &[0b001, 0b011, 0b110])),
    ] {
        let ours = invariants(&aut_table(n));
        let theirs = invariants(&reference);
        o.require(
            ours == theirs,
            format!("oracle: Aut F0({n}) invariants {ours:?} vs reference {theirs:?}"),
        );
    }
    o.require(
        elapsed < GROUPS_BUDGET,
        format!("runtime {elapsed:?} within {GROUPS_BUDGET:?}"),
    );
    o.note(format!("{} ms", elapsed.as_millis()));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("ideals"));
    for n in 2..=5 {
        // Every subset of Q(F0(n)) = t GF(2)[t]/t^n closed under + and under
        // multiplication by Q.
        let q: Vec<u64> = (0..1u64 << (n - 1)).map(|m| m << 1).collect();
        let mut found = BTreeSet::new();
        for subset in 0u64..1 << q.len() {
            let members: BTreeSet<u64> = (0..q.len())
                .filter(|&i| subset >> i & 1 == 1)
                .map(|i| q[i])
                .collect();
            let ok = members.contains(&0)
                && members.iter().all(|&a| {
                    members.iter().all(|&b| members.contains(&(a ^ b)))
                        && q.iter().all(|&r| members.contains(&mul(a, r, n)))
                });
            if ok {
                found.insert(members.into_iter().collect::<Vec<_>>());
            }
        }
        let expected: BTreeSet<Vec<u64>> = (1..=n)
            .map(|k| {
                q.iter()
                    .copied()
                    .filter(|&x| x == 0 || x.trailing_zeros() as usize >= k)
                    .collect()
            })
            .collect();
        o.require(
            found == expected,
            format!("oracle: n = {n} subset scan finds {} ideals", found.len()),
        );
        let library: BTreeSet<Vec<u64>> = all_ideals(&q_of(&make_f0(n).unwrap()).unwrap())
            .iter()
            .map(|i| i.members().iter().map(|&m| u64::from(m) << 1).collect())
            .collect();
        o.require(
            library == found,
            format!("n = {n}: library ideals agree with the scan"),
        );
        // A chain of ideals leaves no room for Q1 ⊕ Q2 with both nonzero.
        let mut by_size: Vec<&Vec<u64>> = found.iter().collect();
        by_size.sort_by_key(|v| v.len());
        let chain = by_size
            .windows(2)
            .all(|w| w[0].iter().all(|x| w[1].contains(x)));
        o.require(chain, format!("oracle: ideals of F0({n}) form a chain"));
    }
    for n in 2..=16 {
        for k in 1..n {
            let members: Vec<u64> = f0_ideal(n, k)
                .unwrap()
                .members()
                .iter()
                .map(|&m| u64::from(m) << 1)
                .collect();
            let ok = members.len() == 1 << (n - k)
                && members
                    .iter()
                    .all(|&x| x == 0 || x.trailing_zeros() as usize >= k);
            o.require(ok, format!("I_{k} of F0({n})"));
        }
    }
    o
}

fn semigroup_count(n: usize) -> usize {
    (0..1u64 << (n - 1))
        .map(|s| s << 1)
        .filter(|&s| {
            (1..n).all(|a| {
                s >> a & 1 == 0 || (1..n - a).all(|b| s >> b & 1 == 0 || s >> (a + b) & 1 == 1)
            })
        })
        .count()
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("subfields"));
    for n in 2..=5 {
        // Subsets of F0(n) containing 1, closed under a + b + c and ab.
        let f: Vec<u64> = units(n).collect();
        let mut subfields = Vec::new();
        for subset in (0u64..1 << f.len()).filter(|s| s & 1 == 1) {
            let m: BTreeSet<u64> = (0..f.len())
                .filter(|&i| subset >> i & 1 == 1)
                .map(|i| f[i])
                .collect();
            let closed = m.iter().all(|&a| {
                m.iter().all(|&b| {
                    m.contains(&mul(a, b, n)) && m.iter().all(|&c| m.contains(&(a ^ b ^ c)))
                })
            });
            if closed {
                subfields.push(m);
            }
        }
        let library: BTreeSet<BTreeSet<u64>> = all_subfields(n)
            .unwrap()
            .iter()
            .map(|s| s.members().iter().map(TruncPoly::bits).collect())
            .collect();
        let scan: BTreeSet<BTreeSet<u64>> = subfields.iter().cloned().collect();
        o.require(
            library == scan,
            format!(
                "n = {n}: library subfields match the subset scan ({})",
                scan.len()
            ),
        );
        let semis = semigroup_count(n);
        if scan.len() != semis {
            o.note(format!(
                "oracle: n = {n} scan finds {} subfields for {semis} subsemigroups",
                scan.len()
            ));
        }
        // Ex(F) = {a : 1 + t^a in F}; same Ex with different sizes rules
        // out "equal Ex iff isomorphic".
        let ex = |m: &BTreeSet<u64>| {
            (1..n)
                .filter(|&a| m.contains(&(1 | 1 << a)))
                .collect::<Vec<_>>()
        };
        let mut sizes: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
        for m in &subfields {
            sizes.entry(ex(m)).or_default().insert(m.len());
        }
        if let Some((e, s)) = sizes.iter().find(|(_, s)| s.len() > 1) {
            o.note(format!(
                "oracle: n = {n} Ex = {e:?} occurs with sizes {s:?}"
            ));
        }
    }
    for n in 2..=10 {
        let count = semigroup_count(n);
        let lattice = subfield_lattice(n).unwrap();
        o.require(
            lattice.len() == count,
            format!(
                "n = {n}: lattice has {} nodes for {count} subsemigroups",
                lattice.len()
            ),
        );
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("multgroup"));
    for n in 2..=20 {
        let mut orders = Vec::new();
        for e in (1..n).step_by(2) {
            let g = 1 | 1u64 << e;
            let mut order = 1u64;
            let mut x = g;
            while x != 1 {
                x = mul(x, g, n);
                order += 1;
            }
            let formula = (0..)
                .map(|s| 1u64 << s)
                .find(|&p| p * e as u64 >= n as u64)
                .unwrap();
            o.require(
                order == formula,
                format!("oracle: order of 1 + t^{e} mod t^{n} is {order}, formula {formula}"),
            );
            orders.push((g, order));
        }
        let product: u64 = orders.iter().map(|o| o.1).product();
        o.require(
            product == 1 << (n - 1),
            format!("oracle: orders multiply to 2^{} for n = {n}", n - 1),
        );
        if n <= 12 {
            let mut products = vec![1u64];
            for &(g, ord) in &orders {
                products = products
                    .iter()
                    .flat_map(|&p| (0..ord).map(move |k| mul(p, pow(g, k, n), n)))
                    .collect();
            }
            let distinct: BTreeSet<u64> = products.iter().copied().collect();
            o.require(
                distinct.len() == products.len() && distinct.len() == 1 << (n - 1),
                format!("oracle: unique factorization for n = {n}"),
            );
        }
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("qring"));
    let mut fields: Vec<ThreeField> = (2..=5)
        .map(|n| make_tf(n).unwrap())
        .chain((2..=6).map(|n| make_f0(n).unwrap()))
        .collect();
    let bases = fields.clone();
    for (i, a) in bases.iter().enumerate() {
        for b in &bases[i..] {
            if a.size() * b.size() <= 64 {
                fields.push(cartesian(a, b).unwrap());
            }
        }
    }
    // F(Q(F)) lives on the Q-ids, which are the field ids; the identity map
    // must already be an isomorphism.
    let mut bad = Vec::new();
    for f in &fields {
        let g = field_from_qring(&q_of(f).unwrap()).unwrap();
        let ok = g.unit() == f.unit()
            && f.elements().all(|a| {
                f.elements().all(|b| {
                    g.mul(a, b) == f.mul(a, b)
                        && f.elements().all(|c| g.tadd(a, b, c) == f.tadd(a, b, c))
                })
            });
        if !ok {
            bad.push(f.label().to_string());
        }
    }
    o.require(
        bad.is_empty(),
        format!("oracle: identity is not an isomorphism for {bad:?}"),
    );
    o.note(format!(
        "oracle: {} fields reconstructed exactly",
        fields.len()
    ));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("unitization"));
    let corpus = unitization_corpus().unwrap();
    o.require(corpus.len() >= 10, "at least 10 algebras");
    for a in &corpus {
        let f = a.field();
        o.require(
            f.size() * a.size() <= 64,
            format!("{} fits in 64 elements", a.label()),
        );
        // A⁺ = F ⊕ A with (f1, a1)(f2, a2) = (f1 f2, f1 a2 + f2 a1 + a1 a2):
        // a 3-field exactly when every element is invertible.
        let m = |(f1, a1): (u32, u32), (f2, a2): (u32, u32)| {
            (
                f.mul(f1, f2),
                a.add(a.add(a.act(f1, a2), a.act(f2, a1)), a.mul(a1, a2)),
            )
        };
        let one = (f.unit(), a.zero());
        let pairs: Vec<(u32, u32)> = f
            .elements()
            .flat_map(|x| a.elements().map(move |y| (x, y)))
            .collect();
        let all_invertible = pairs.iter().all(|&x| pairs.iter().any(|&y| m(x, y) == one));
        let has_hash = a
            .elements()
            .all(|x| a.elements().any(|h| a.mul(x, h) == a.add(x, h)));
        o.require(
            has_hash == all_invertible,
            format!(
                "oracle: {} Q-algebra {has_hash} but A⁺ field {all_invertible}",
                a.label()
            ),
        );
        o.require(
            is_q_algebra(a).is_q_algebra == has_hash
                && unitize(a).unwrap().axioms().is_field() == all_invertible,
            format!("library agrees on {}", a.label()),
        );
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("morphisms"));
    let qids = |members: &[u32]| {
        members
            .iter()
            .map(|&m| u64::from(m) << 1)
            .collect::<BTreeSet<u64>>()
    };
    for n in 2..=10 {
        // Q-elements q = f - 1 with f^2 = 1, resp. f = 1 mod t^k.
        let frob: BTreeSet<u64> = units(n)
            .filter(|&f| mul(f, f, n) == 1)
            .map(|f| f ^ 1)
            .collect();
        o.require(
            qids(frobenius(n).unwrap().kernel().members()) == frob,
            format!("Ker phi_{n}"),
        );
        o.require(
            frob.iter()
                .all(|&x| x == 0 || x.trailing_zeros() as usize >= n.div_ceil(2))
                && frob.len() == 1 << (n - n.div_ceil(2)),
            format!("oracle: Ker phi_{n} = I_ceil"),
        );
        for k in 1..=n {
            let ker: BTreeSet<u64> = units(n)
                .filter(|&f| f & mask(k) == 1)
                .map(|f| f ^ 1)
                .collect();
            o.require(
                qids(quotient(n, k).unwrap().kernel().members()) == ker,
                format!("Ker mu_({n},{k})"),
            );
        }
        if n <= 8 {
            o.require(
                frob.iter()
                    .all(|&a| frob.iter().all(|&b| mul(a, b, n) == 0)),
                format!("oracle: zero product on Ker phi_{n}"),
            );
        }
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("automorphisms"));
    let mut cases = 0;
    for n in 3..=8 {
        let g = generate_aut_group(n).unwrap();
        let elems = automorphisms(n);
        let pos: BTreeMap<u64, usize> = elems.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let inv = |p: u64| {
            elems
                .iter()
                .copied()
                .find(|&q| compose(p, q, n) == 2)
                .unwrap()
        };
        for &p in &elems {
            cases += 1;
            let e = Endo::new(TruncPoly::new(p, n).unwrap()).unwrap();
            let paths = inverse_paths(&e).unwrap();
            let q = inv(p);
            o.require(
                aut_inverse(&e).unwrap().p0().bits() == q
                    && paths.agree()
                    && paths.recursion.p0().bits() == q,
                format!("inverse of {p:#b} at n = {n}"),
            );
            let rows = rows_of(p, n);
            o.require(
                aut_matrix(&e).unwrap().rows() == rows
                    && aut_matrix_via_multinomial(&e).unwrap().rows() == rows,
                format!("matrix of {p:#b} at n = {n}"),
            );
        }
        // Γ_{n,k} = {P0 = t mod t^k}.
        for k in 2..n {
            let gamma: Vec<u64> = elems
                .iter()
                .copied()
                .filter(|&p| p & mask(k) == 2)
                .collect();
            let normal = elems.iter().all(|&x| {
                gamma
                    .iter()
                    .all(|&h| gamma.contains(&compose(compose(x, h, n), inv(x), n)))
            });
            let split = gamma
                .iter()
                .any(|&p| p & mask(k + 1) != 2 && compose(p, p, n) == 2);
            let level = gamma_filtration(&g, k).unwrap();
            o.require(
                level.order == gamma.len()
                    && gamma.len() == 1 << (n - k)
                    && level.normal == normal
                    && normal,
                format!("Gamma_({n},{k})"),
            );
            o.require(
                level.splitting_involution.is_some() == split,
                format!("involution search at ({n},{k})"),
            );
            if k > 2 && !split {
                o.note(format!(
                    "oracle: no involution in Gamma_({n},{k}) outside Gamma_({n},{})",
                    k + 1
                ));
            }
        }
        // G_{n,1}: automorphisms fixing every square.
        let g1: Vec<u64> = elems
            .iter()
            .copied()
            .filter(|&p| units(n).all(|f| compose(mul(f, f, n), p, n) == mul(f, f, n)))
            .collect();
        let library: BTreeSet<u64> = fixing_subgroup(&g, 1)
            .unwrap()
            .members
            .iter()
            .map(|&i| g.endo(i).p0().bits())
            .collect();
        o.require(
            library == g1.iter().copied().collect(),
            format!("G_({n},1) members"),
        );
        o.require(
            g1.iter()
                .all(|&a| g1.iter().all(|&b| compose(a, b, n) == compose(b, a, n))),
            format!("oracle: G_({n},1) commutative"),
        );
        let _ = pos;
    }
    o.require(cases >= 126, format!("{cases} automorphisms"));
    for n in 2..=10 {
        let s = mask(n) & !1;
        let r = reflection(n).unwrap();
        o.require(compose(s, s, n) == 2, format!("oracle: s_{n}(s_{n}) = t"));
        o.require(
            units(n).all(|f| {
                r.apply(&TruncPoly::new(f, n).unwrap()).unwrap().bits() == compose(f, s, n)
            }),
            format!("R_{n} image formula"),
        );
    }
    o.note(format!("oracle: {cases} automorphisms"));
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("binomial"));
    for n in 2..=12 {
        for k in 1..n {
            let base = 1 | 1u64 << k;
            let mut powers = BTreeSet::new();
            let mut x = base;
            while x != 1 {
                powers.insert(x);
                x = mul(x, base, n);
            }
            powers.insert(1);
            for alpha in (0..).take_while(|&a| k as u64 * a < n as u64) {
                let digits: Vec<u64> = (0..8)
                    .filter(|v| alpha >> v & 1 == 1)
                    .map(|v| 1u64 << v)
                    .collect();
                let mut closed = 0u64;
                for mask_bits in 0..1u64 << digits.len() {
                    let m: u64 = (0..digits.len())
                        .filter(|&i| mask_bits >> i & 1 == 1)
                        .map(|i| digits[i])
                        .sum();
                    if (k as u64 * m) < n as u64 {
                        closed ^= 1 << (k as u64 * m);
                    }
                }
                o.require(
                    pow(base, alpha, n) == closed,
                    format!("oracle: (1 + t^{k})^{alpha} mod t^{n}"),
                );
            }
            for p in units(n) {
                let crit = binomial_criterion(&TruncPoly::new(p, n).unwrap(), k).is_some();
                o.require(
                    crit == powers.contains(&p),
                    format!("criterion on {p:#b}, k = {k}, n = {n}"),
                );
            }
        }
    }
    o
}

fn criterion_11() -> Outcome {
    let mut o = Outcome::new();
    o.suite(&suite("groupalg"));
    for m in [2u32, 3] {
        for group in [vec![2usize], vec![4], vec![2, 2]] {
            let r = ternary_group_algebra(m, &group).unwrap();
            o.require(r.readings.len() == 2, "both readings reported");
            for reading in &r.readings {
                let closed = reading.closed_under_product && reading.closed_under_sum;
                o.require(
                    closed == reading.axioms.is_some(),
                    format!("axiom report present iff closed for Z/{}{group:?}", 1 << m),
                );
            }
        }
    }
    // (1 + g)^2 = 1 + 2g + g^2 = 2 + 2g in Z/4[C2]: even constant term.
    let lit = ternary_group_algebra(2, &[2]).unwrap();
    let literal = lit
        .readings
        .iter()
        .find(|r| r.reading == Reading::Literal)
        .unwrap();
    o.require(
        !literal.closed_under_product,
        "oracle: literal Z/4[C2] not closed under products",
    );
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("appendix automorphism matrices", criterion_1),
        ("automorphism group orders and types", criterion_2),
        ("ideal lattice of F0(n)", criterion_3),
        ("subfields and exponent semigroups", criterion_4),
        ("multiplicative group decomposition", criterion_5),
        ("Q-ring reconstruction", criterion_6),
        ("unitization", criterion_7),
        ("morphism kernels", criterion_8),
        ("automorphism machinery", criterion_9),
        ("binomial formula", criterion_10),
        ("ternary group algebras", criterion_11),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        if o.status == Status::Fail {
            failed += 1;
        }
        println!(
            "[{}] criterion {} {name} ({} ms): {}",
            o.status.label(),
            i + 1,
            t.elapsed().as_millis(),
            o.detail
        );
    }
    let total = start.elapsed();
    let in_budget = total < TOTAL_BUDGET;
    println!(
        "[{}] total runtime {} ms (budget {} s)",
        if in_budget { "PASS" } else { "FAIL" },
        total.as_millis(),
        TOTAL_BUDGET.as_secs()
    );
    if failed > 0 || !in_budget {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("acceptance: no failures");
        ExitCode::SUCCESS
    }
}
