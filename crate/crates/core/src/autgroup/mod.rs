//! Unital endomorphisms of `F0(n)` as substitutions `t -> P0`, their
//! matrices, inverses and the structure of `Aut F0(n)`.
//!
//! `Φ_P(1 + Q0) = 1 + Q0 ∘ P0`. Composition of maps reverses the order of
//! substitution: `Φ_Q ∘ Φ_P = Φ_{P ∘ Q}`. Group tables below use composition
//! of maps, `a * b = Φ_a ∘ Φ_b` (apply `b` first).

mod groups;

pub use groups::{
    catalog, catalog_group, cycle_graph, find_group_isomorphism, groups_isomorphic, identify_group,
    CatalogEntry, CycleGraph, FiniteGroup, GroupFingerprint, Identification, ASSOC_EXHAUSTIVE,
    IDENTIFY_MAX,
};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::poly2::TruncPoly;

/// Largest bound for [`generate_aut_group`].
pub const AUT_MAX: usize = 12;

/// The endomorphism `Φ_P` of `F0(n)`, stored as `P0 = Φ(1 + t) - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Endo {
    p0: TruncPoly,
}

impl Endo {
    pub fn new(p0: TruncPoly) -> Result<Self> {
        if p0.constant_term() {
            return Err(Error::InvalidSubstitution);
        }
        Ok(Self { p0 })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self {
            p0: TruncPoly::reduced(0b10, n)?,
        })
    }

    /// `t + sum_i alpha_i t^{i+2}`: the automorphism with appendix index `alpha`.
    pub fn from_alpha(n: usize, alpha: u64) -> Result<Self> {
        if n < 2 || alpha >> (n - 2) != 0 {
            return Err(Error::OutOfRange(format!("index {alpha} for n = {n}")));
        }
        Ok(Self {
            p0: TruncPoly::new(0b10 | alpha << 2, n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.p0.bound()
    }

    pub fn p0(&self) -> TruncPoly {
        self.p0
    }

    /// Coefficients of `t^2, t^3, ...` read as a binary number (`t^2` lowest).
    pub fn alpha(&self) -> u64 {
        self.p0.bits() >> 2
    }

    pub fn apply(&self, f: &TruncPoly) -> Result<TruncPoly> {
        f.compose(&self.p0)
    }

    /// `Φ_self ∘ Φ_other` as maps, which is `Φ_{P_other ∘ P_self}`.
    pub fn after(&self, other: &Endo) -> Result<Endo> {
        Endo::new(other.p0.compose(&self.p0)?)
    }
}

pub fn apply_endo(e: &Endo, f: &TruncPoly) -> Result<TruncPoly> {
    e.apply(f)
}

/// `P0` has `t` as its lowest term.
pub fn is_automorphism(e: &Endo) -> bool {
    e.n() == 1 || e.p0.coeff(1)
}

/// All `2^{n-1}` unital endomorphisms of `F0(n)`.
pub fn endomorphisms(n: usize) -> Result<Vec<Endo>> {
    if n == 0 || n > AUT_MAX + 4 {
        return Err(Error::BoundOutOfRange(n, AUT_MAX + 4));
    }
    (0..1u64 << (n - 1))
        .map(|m| Endo::new(TruncPoly::new(m << 1, n)?))
        .collect()
}

/// Brute-force search for `Q` with `Φ_P ∘ Φ_Q = id`, i.e. `Q0 ∘ P0 = t`.
pub fn search_inverse(e: &Endo) -> Result<Option<Endo>> {
    let id = Endo::identity(e.n())?;
    Ok(endomorphisms(e.n())?
        .into_iter()
        .find(|q| q.p0.compose(&e.p0).map(|c| c == id.p0).unwrap_or(false)))
}

/// Matrix of an endomorphism: row `v` holds the coordinates of `Φ(t^v)`
/// on `t^1, ..., t^{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AutMatrix {
    n: usize,
    /// Row `r` describes `Φ(t^{r+1})`; bit `c` is the coefficient of `t^{c+1}`.
    rows: Vec<u64>,
}

impl AutMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            rows: (0..n.saturating_sub(1)).map(|r| 1 << r).collect(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != n.saturating_sub(1) || rows.iter().any(|&r| r >> (n - 1) != 0) {
            return Err(Error::Invalid(format!("not a {}x{} matrix", n - 1, n - 1)));
        }
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn is_unitriangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(r, &row)| row & ((1 << (r + 1)) - 1) == 1 << r)
    }

    pub fn mul(&self, other: &AutMatrix) -> Result<AutMatrix> {
        if self.n != other.n {
            return Err(Error::BoundMismatch(self.n, other.n));
        }
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                (0..self.dim())
                    .filter(|&c| row >> c & 1 == 1)
                    .fold(0, |acc, c| acc ^ other.rows[c])
            })
            .collect();
        Ok(AutMatrix { n: self.n, rows })
    }

    /// Gauss-Jordan elimination over GF(2).
    pub fn inverse(&self) -> Result<AutMatrix> {
        let d = self.dim();
        let mut a = self.rows.clone();
        let mut b: Vec<u64> = (0..d).map(|r| 1 << r).collect();
        for c in 0..d {
            let p = (c..d)
                .find(|&r| a[r] >> c & 1 == 1)
                .ok_or(Error::NonInvertible)?;
            a.swap(c, p);
            b.swap(c, p);
            for r in 0..d {
                if r != c && a[r] >> c & 1 == 1 {
                    a[r] ^= a[c];
                    b[r] ^= b[c];
                }
            }
        }
        Ok(AutMatrix { n: self.n, rows: b })
    }

    /// The endomorphism whose matrix this is, read from the first row.
    pub fn endo(&self) -> Result<Endo> {
        let e = Endo::new(TruncPoly::new(
            self.rows.first().copied().unwrap_or(0) << 1,
            self.n,
        )?)?;
        if aut_matrix_unchecked(&e) != *self {
            return Err(Error::Invalid(
                "rows are not the powers of the first row".into(),
            ));
        }
        Ok(e)
    }

    /// Rows of space separated bits.
    pub fn to_appendix(&self) -> String {
        let d = self.dim();
        self.rows
            .iter()
            .map(|&row| {
                (0..d)
                    .map(|c| if row >> c & 1 == 1 { "1" } else { "0" })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse_rows(lines: &[&str]) -> Result<AutMatrix> {
        let d = lines.len();
        let rows = lines
            .iter()
            .map(|l| {
                let bits: Vec<&str> = l.split_whitespace().collect();
                if bits.len() != d {
                    return Err(Error::Parse(format!(
                        "row {l:?} has {} entries, expected {d}",
                        bits.len()
                    )));
                }
                bits.iter()
                    .enumerate()
                    .try_fold(0u64, |acc, (c, b)| match *b {
                        "0" => Ok(acc),
                        "1" => Ok(acc | 1 << c),
                        other => Err(Error::Parse(format!("bad entry {other:?}"))),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        AutMatrix::from_rows(d + 1, rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim();
        json!(self
            .rows
            .iter()
            .map(|&row| (0..d).map(|c| row >> c & 1).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

fn aut_matrix_unchecked(e: &Endo) -> AutMatrix {
    let n = e.n();
    let mut rows = Vec::with_capacity(n.saturating_sub(1));
    let mut power = e.p0;
    for _ in 1..n {
        rows.push(power.bits() >> 1);
        power = power * e.p0;
    }
    AutMatrix { n, rows }
}

fn require_aut(e: &Endo) -> Result<()> {
    if !is_automorphism(e) {
        return Err(Error::NotAnAutomorphism(e.p0.to_string()));
    }
    Ok(())
}

/// Rows are `P0^v` for `v = 1, ..., n-1`.
pub fn aut_matrix(e: &Endo) -> Result<AutMatrix> {
    require_aut(e)?;
    Ok(aut_matrix_unchecked(e))
}

/// Parity of the sum of multinomial coefficients `k! / (i_1! ... )` over
/// exponent vectors supported on `support` with `sum i = k` and
/// `sum j i_j = l`. The multinomial is the product of the binomials
/// `C(i_1 + ... + i_j, i_j)`, each odd iff the binary digits of the two
/// parts are disjoint.
fn multinomial_parity(support: &[usize], k: usize, l: usize, acc: usize) -> bool {
    if k == 0 {
        return l == 0;
    }
    let Some((&j, rest)) = support.split_first() else {
        return false;
    };
    let mut parity = false;
    for i in 0..=k.min(l / j) {
        if i & acc == 0 {
            parity ^= multinomial_parity(rest, k - i, l - i * j, acc + i);
        }
    }
    parity
}

/// Entries `alpha_{kl}` from the multinomial expansion of `P0^k`.
pub fn aut_matrix_via_multinomial(e: &Endo) -> Result<AutMatrix> {
    require_aut(e)?;
    let n = e.n();
    let support: Vec<usize> = (1..n).filter(|&j| e.p0.coeff(j)).collect();
    let rows = (1..n)
        .map(|k| {
            (k..n)
                .filter(|&l| multinomial_parity(&support, k, l, 0))
                .fold(0u64, |row, l| row | 1 << (l - 1))
        })
        .collect();
    Ok(AutMatrix { n, rows })
}

/// `ε̂_1 = 1`, `ε̂_l = sum_{m < l} ε̂_m ε^{(m)}_l` with `ε^{(m)}_l` the
/// coefficient of `t^l` in `P0^m`.
pub fn inverse_by_recursion(e: &Endo) -> Result<Endo> {
    require_aut(e)?;
    let n = e.n();
    let powers: Vec<TruncPoly> = std::iter::successors(Some(e.p0), |p| Some(*p * e.p0))
        .take(n.saturating_sub(1))
        .collect();
    let mut hat = vec![false; n];
    if n > 1 {
        hat[1] = true;
    }
    for l in 2..n {
        hat[l] = (1..l).filter(|&m| hat[m] && powers[m - 1].coeff(l)).count() % 2 == 1;
    }
    let bits = (1..n).filter(|&l| hat[l]).fold(0u64, |b, l| b | 1 << l);
    Endo::new(TruncPoly::new(bits, n)?)
}

/// First row of `A_P^{-1}`: the coordinates `ε̂` with `ε̂ A_P = e_1`.
pub fn inverse_by_matrix(e: &Endo) -> Result<Endo> {
    let inv = aut_matrix(e)?.inverse()?;
    Endo::new(TruncPoly::new(
        inv.rows.first().copied().unwrap_or(0) << 1,
        e.n(),
    )?)
}

/// Order of an automorphism under composition.
pub fn endo_order(e: &Endo) -> Result<usize> {
    require_aut(e)?;
    let id = Endo::identity(e.n())?;
    let (mut x, mut k) = (*e, 1);
    while x != id {
        x = x.after(e)?;
        k += 1;
    }
    Ok(k)
}

/// `Φ^{o(Φ) - 1}`.
pub fn inverse_by_powers(e: &Endo) -> Result<Endo> {
    let o = endo_order(e)?;
    let mut x = Endo::identity(e.n())?;
    for _ in 1..o {
        x = x.after(e)?;
    }
    Ok(x)
}

pub fn aut_inverse(e: &Endo) -> Result<Endo> {
    inverse_by_recursion(e)
}

#[derive(Clone, Debug, Serialize)]
pub struct InversePaths {
    pub recursion: Endo,
    pub matrix: Endo,
    pub power: Endo,
}

impl InversePaths {
    pub fn agree(&self) -> bool {
        self.recursion == self.matrix && self.matrix == self.power
    }
}

pub fn inverse_paths(e: &Endo) -> Result<InversePaths> {
    Ok(InversePaths {
        recursion: inverse_by_recursion(e)?,
        matrix: inverse_by_matrix(e)?,
        power: inverse_by_powers(e)?,
    })
}

/// `Aut F0(n)` with elements indexed by their appendix index `alpha`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    n: usize,
    endos: Vec<Endo>,
    group: FiniteGroup,
}

pub fn generate_aut_group(n: usize) -> Result<AutGroup> {
    if !(2..=AUT_MAX).contains(&n) {
        return Err(Error::BoundOutOfRange(n, AUT_MAX));
    }
    let endos: Vec<Endo> = TruncPoly::enumerate_from(2, 0b10, n)
        .map(|p0| Endo { p0 })
        .collect();
    let order = endos.len();
    let table: Vec<u32> = (0..order * order)
        .into_par_iter()
        .map(|x| {
            endos[x / order]
                .after(&endos[x % order])
                .expect("automorphisms compose")
                .alpha() as u32
        })
        .collect();
    let labels = (0..order).map(|a| format!("A_{a}")).collect();
    let group = FiniteGroup::from_table(labels, table)?;
    if group.order() != 1 << (n - 2) {
        return Err(Error::NotAGroup(format!(
            "order {} instead of 2^{}",
            group.order(),
            n - 2
        )));
    }
    Ok(AutGroup { n, endos, group })
}

/// `Γ_{n,k}`: indices whose `P0 - t` has no terms below `t^k`.
fn gamma_members(n: usize, k: usize) -> Vec<u32> {
    (0..1u32 << (n - 2))
        .filter(|&a| (a as u64) << 2 >> k << k == (a as u64) << 2)
        .collect()
}

impl AutGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.endos.len()
    }

    pub fn endos(&self) -> &[Endo] {
        &self.endos
    }

    pub fn endo(&self, a: u32) -> Endo {
        self.endos[a as usize]
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn index_of(&self, e: &Endo) -> Option<u32> {
        (e.n() == self.n && is_automorphism(e)).then(|| e.alpha() as u32)
    }

    pub fn matrices(&self) -> Vec<AutMatrix> {
        self.endos.iter().map(aut_matrix_unchecked).collect()
    }

    /// The `n` header followed by `A_alpha` and its rows for every element.
    pub fn appendix_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (a, m) in self.matrices().iter().enumerate() {
            s.push_str(&format!("A_{a}\n{}\n\n", m.to_appendix()));
        }
        s
    }

    pub fn identify(&self) -> Result<Identification> {
        identify_group(&self.group)
    }

    /// `Φ -> Φ* = R ∘ Φ ∘ R`.
    pub fn conjugation_map(&self) -> Result<Vec<u32>> {
        let r = reflection(self.n)?;
        self.endos
            .iter()
            .map(|e| Ok(r.after(&e.after(&r)?)?.alpha() as u32))
            .collect()
    }

    pub fn cycle_graph(&self, with_conjugation: bool) -> Result<CycleGraph> {
        let conj = if with_conjugation {
            Some(self.conjugation_map()?)
        } else {
            None
        };
        cycle_graph(&self.group, conj.as_deref())
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let id = if self.order() <= IDENTIFY_MAX {
            Some(self.identify()?)
        } else {
            None
        };
        Ok(json!({
            "n": self.n,
            "order": self.order(),
            "fingerprint": id.as_ref().map_or_else(|| json!(self.group.fingerprint()), |i| json!(i.fingerprint)),
            "name": id.as_ref().map(|i| i.display_name().to_string()),
            "generators": self.group.generators().iter().map(|&g| self.endos[g as usize].p0.to_string()).collect::<Vec<_>>(),
        }))
    }
}

/// A matrix transcribed in appendix layout.
#[derive(Clone, Debug)]
pub struct AppendixEntry {
    pub n: usize,
    pub label: String,
    pub matrix: AutMatrix,
}

/// Parses blocks `n N`, then labelled matrices separated by blank lines.
pub fn parse_appendix(text: &str) -> Result<Vec<AppendixEntry>> {
    let mut out = Vec::new();
    let mut n = None;
    let mut label: Option<String> = None;
    let mut rows: Vec<&str> = Vec::new();
    let mut flush =
        |label: &mut Option<String>, rows: &mut Vec<&str>, n: Option<usize>| -> Result<()> {
            if let Some(l) = label.take() {
                let n = n.ok_or_else(|| Error::Parse("matrix before any `n` header".into()))?;
                let matrix = AutMatrix::parse_rows(rows)?;
                if matrix.n() != n {
                    return Err(Error::Parse(format!(
                        "{l} has size {} in block n = {n}",
                        matrix.dim()
                    )));
                }
                out.push(AppendixEntry {
                    n,
                    label: l,
                    matrix,
                });
            }
            rows.clear();
            Ok(())
        };
    for line in text.lines().map(str::trim) {
        if line.is_empty() {
            flush(&mut label, &mut rows, n)?;
        } else if let Some(v) = line.strip_prefix("n ") {
            flush(&mut label, &mut rows, n)?;
            n = Some(
                v.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad header {line:?}")))?,
            );
        } else if line.starts_with("A_") {
            flush(&mut label, &mut rows, n)?;
            label = Some(line.to_string());
        } else {
            rows.push(line);
        }
    }
    flush(&mut label, &mut rows, n)?;
    Ok(out)
}

/// `R_n = Φ_{s_n}` with `s_n = t + t^2 + ... + t^{n-1}`.
pub fn reflection(n: usize) -> Result<Endo> {
    if n < 2 {
        return Err(Error::BoundOutOfRange(n, AUT_MAX));
    }
    Endo::new(TruncPoly::reduced(u64::MAX << 1, n)?)
}

/// `f* = R_n(f)`.
pub fn conjugate_element(f: &TruncPoly) -> Result<TruncPoly> {
    reflection(f.bound())?.apply(f)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealFixCheck {
    pub k: usize,
    /// Every `1 + q` with `t^k | q` is fixed by the conjugation.
    pub all_fixed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conjugation {
    pub n: usize,
    /// `F0(n)_1`.
    pub fixed_elements: Vec<TruncPoly>,
    /// `Aut F0(n)_1` as indices.
    pub fixed_automorphisms: Vec<u32>,
    /// `Φ -> Φ*` on indices.
    pub map: Vec<u32>,
    pub is_involution: bool,
    /// One entry per `k` with `n/2 <= k <= n-1`.
    pub ideal_checks: Vec<IdealFixCheck>,
}

pub fn conjugation(g: &AutGroup) -> Result<Conjugation> {
    let n = g.n;
    let r = reflection(n)?;
    let all: Vec<TruncPoly> = TruncPoly::enumerate_from(1, 1, n).collect();
    let fixed_elements = all
        .iter()
        .filter(|f| r.apply(f).map(|x| x == **f).unwrap_or(false))
        .copied()
        .collect();
    let map = g.conjugation_map()?;
    let fixed_automorphisms = g
        .group
        .elements()
        .filter(|&a| map[a as usize] == a)
        .collect();
    let is_involution = g
        .group
        .elements()
        .all(|a| map[map[a as usize] as usize] == a);
    let ideal_checks = (n.div_ceil(2)..n)
        .map(|k| {
            let counterexample = all
                .iter()
                .filter(|f| f.bits() >> k << k == f.bits() & !1)
                .find(|f| r.apply(f).map(|x| x != **f).unwrap_or(true))
                .map(|f| f.to_string());
            IdealFixCheck {
                k,
                all_fixed: counterexample.is_none(),
                counterexample,
            }
        })
        .collect();
    Ok(Conjugation {
        n,
        fixed_elements,
        fixed_automorphisms,
        map,
        is_involution,
        ideal_checks,
    })
}

/// `M_{n,k}`: reduction of `P0` modulo `t^k`, as indices in `Aut F0(k)`.
pub fn reduction_map(g: &AutGroup, k: usize) -> Result<Vec<u32>> {
    if k < 2 || k > g.n {
        return Err(Error::OutOfRange(format!("k = {k} for n = {}", g.n)));
    }
    g.endos
        .iter()
        .map(|e| Ok((e.p0.truncate(k)?.bits() >> 2) as u32))
        .collect()
}

fn is_group_morphism(src: &FiniteGroup, dst: &FiniteGroup, map: &[u32]) -> bool {
    src.elements().all(|a| {
        src.elements()
            .all(|b| map[src.mul(a, b) as usize] == dst.mul(map[a as usize], map[b as usize]))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaLevel {
    pub n: usize,
    pub k: usize,
    pub members: Vec<u32>,
    pub order: usize,
    pub normal: bool,
    /// `M_{n,k}` is a group morphism onto `Aut F0(k)`.
    pub reduction_is_morphism: bool,
    pub reduction_is_surjective: bool,
    /// `Ker M_{n,k} = Γ_{n,k}`.
    pub kernel_matches: bool,
    /// `[Γ_{n,k} : Γ_{n,k+1}]`.
    pub index_of_next: usize,
    /// An involution in `Γ_{n,k} \ Γ_{n,k+1}` splitting the extension.
    pub splitting_involution: Option<u32>,
}

pub fn gamma_filtration(g: &AutGroup, k: usize) -> Result<GammaLevel> {
    let n = g.n;
    if k < 2 || k >= n {
        return Err(Error::OutOfRange(format!("k = {k} outside 2..{n}")));
    }
    let members = gamma_members(n, k);
    let next = gamma_members(n, k + 1);
    let target = generate_aut_group(k)?;
    let m = reduction_map(g, k)?;
    let kernel: Vec<u32> = g
        .group
        .elements()
        .filter(|&a| m[a as usize] == target.group.identity())
        .collect();
    let image: std::collections::BTreeSet<u32> = m.iter().copied().collect();
    let splitting_involution = members
        .iter()
        .copied()
        .filter(|a| next.binary_search(a).is_err())
        .find(|&a| g.group.element_order(a) == 2);
    Ok(GammaLevel {
        n,
        k,
        order: members.len(),
        normal: g.group.is_normal(&members),
        reduction_is_morphism: is_group_morphism(&g.group, &target.group, &m),
        reduction_is_surjective: image.len() == target.order(),
        kernel_matches: kernel == members,
        index_of_next: members.len() / next.len(),
        splitting_involution,
        members,
    })
}

/// Reads `Φ(1 + t^{2^j}) - 1 = P0^{2^j}` back as a polynomial in `t^{2^j}`.
fn restrict_to_powers(e: &Endo, j: u32) -> TruncPoly {
    let n = e.n();
    let step = 1usize << j;
    let m = n.div_ceil(step);
    let image = e.p0.pow(1 << j);
    let bits = (0..m)
        .filter(|&i| image.coeff(i * step))
        .fold(0u64, |b, i| b | 1 << i);
    TruncPoly::new(bits, m).expect("bound at most n")
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusRestriction {
    pub n: usize,
    /// The squares form a copy of `F0(target)`.
    pub target: usize,
    /// `ϱ_n(Φ)` as an index in `Aut F0(target)`.
    pub images: Vec<u32>,
    /// The restriction equals truncation of `P0` modulo `t^target`.
    pub matches_truncation: bool,
    pub is_morphism: bool,
    pub kernel: Vec<u32>,
    /// `Ker ϱ_n = {P0 = t + sum_{v >= ceil(n/2)}}`.
    pub kernel_matches: bool,
    pub kernel_abelian: bool,
    pub image_order: usize,
}

/// Restriction of automorphisms to the subfield of squares.
pub fn frobenius_restriction(g: &AutGroup) -> Result<FrobeniusRestriction> {
    let n = g.n;
    if n < 4 {
        return Err(Error::BoundOutOfRange(n, AUT_MAX));
    }
    let target = n.div_ceil(2);
    let restricted: Vec<TruncPoly> = g.endos.iter().map(|e| restrict_to_powers(e, 1)).collect();
    let matches_truncation = g
        .endos
        .iter()
        .zip(&restricted)
        .all(|(e, r)| e.p0.truncate(target).map(|t| t == *r).unwrap_or(false));
    let images: Vec<u32> = restricted.iter().map(|r| (r.bits() >> 2) as u32).collect();
    let small = generate_aut_group(target)?;
    let kernel: Vec<u32> = g
        .group
        .elements()
        .filter(|&a| images[a as usize] == small.group.identity())
        .collect();
    let kernel_abelian = g.group.restrict(&kernel)?.is_abelian();
    Ok(FrobeniusRestriction {
        n,
        target,
        matches_truncation,
        is_morphism: is_group_morphism(&g.group, &small.group, &images),
        kernel_matches: kernel == gamma_members(n, target),
        kernel_abelian,
        image_order: images
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len(),
        images,
        kernel,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FixingSubgroup {
    pub n: usize,
    pub k: usize,
    /// Automorphisms fixing `1 + t^{2^k}`.
    pub members: Vec<u32>,
    /// `P0 = t + sum_{i > (n-1)/2^k}`.
    pub strict_form: Vec<u32>,
    /// `P0 = t + t^{ceil((n-1)/2^k)} (sum_{i >= 1})`.
    pub ceil_form: Vec<u32>,
    pub normal: bool,
    pub abelian: bool,
    /// Order of the image in `Aut` of `F0(n)^{2^k}`.
    pub image_order: usize,
    /// `|G_{n,k}| |image| = |Aut F0(n)|`.
    pub exact: bool,
}

/// `G_{n,k}`, the stabilizer of `1 + t^{2^k}`, for `2^k <= n`.
pub fn fixing_subgroup(g: &AutGroup, k: u32) -> Result<FixingSubgroup> {
    let n = g.n;
    if k == 0 || 1usize << k > n {
        return Err(Error::OutOfRange(format!("2^{k} > {n}")));
    }
    let step = 1usize << k;
    let target = TruncPoly::from_exponents(&[0, step], n).ok();
    let members: Vec<u32> = g
        .group
        .elements()
        .filter(|&a| match &target {
            Some(f) => g.endo(a).apply(f).map(|x| x == *f).unwrap_or(false),
            None => true,
        })
        .collect();
    let strict_min = (n - 1) / step + 1;
    let ceil_min = (n - 1).div_ceil(step) + 1;
    let strict_form = gamma_members(n, strict_min.max(2));
    let ceil_form = gamma_members(n, ceil_min.max(2).min(n));
    let image: std::collections::BTreeSet<TruncPoly> =
        g.endos.iter().map(|e| restrict_to_powers(e, k)).collect();
    let sub = g.group.restrict(&members)?;
    Ok(FixingSubgroup {
        n,
        k: k as usize,
        normal: g.group.is_normal(&members),
        abelian: sub.is_abelian(),
        image_order: image.len(),
        exact: members.len() * image.len() == g.order(),
        members,
        strict_form,
        ceil_form,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderTwoSubfield {
    /// The subfield is `{1, 1 + q}`.
    pub q: TruncPoly,
    pub lower_degree: usize,
    /// Automorphisms fixing `1 + q`.
    pub fixer: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointScan {
    pub n: usize,
    pub subfields: Vec<OrderTwoSubfield>,
    /// Every automorphism maps an order-2 subfield of lower degree `k`
    /// to one of lower degree `k`.
    pub lower_degree_preserved: bool,
    /// Subfields with equal lower degree have equal fixers.
    pub fixer_depends_only_on_degree: bool,
    /// Every fixer equals `{P0 = t + sum_{l >= n-k+1}}`.
    pub fixer_matches_bound: bool,
    /// `(lower degree, subfield q)` pairs where it does not.
    pub mismatches: Vec<(usize, String)>,
}

pub fn fixed_point_scan(g: &AutGroup) -> Result<FixedPointScan> {
    let n = g.n;
    let mut subfields = Vec::new();
    for q in TruncPoly::enumerate_from(1, 0, n).filter(|q| !q.is_zero() && (*q * *q).is_zero()) {
        let f = TruncPoly::new(q.bits() | 1, n)?;
        let fixer = g
            .group
            .elements()
            .filter(|&a| g.endo(a).apply(&f).map(|x| x == f).unwrap_or(false))
            .collect();
        subfields.push(OrderTwoSubfield {
            q,
            lower_degree: q.valuation().expect("nonzero"),
            fixer,
        });
    }
    let lower_degree_preserved = subfields.iter().all(|s| {
        g.endos.iter().all(|e| {
            let image = e.apply(&TruncPoly::new(s.q.bits() | 1, n).expect("bound n"));
            image
                .map(|x| {
                    TruncPoly::new(x.bits() & !1, n)
                        .expect("bound n")
                        .valuation()
                        == Some(s.lower_degree)
                })
                .unwrap_or(false)
        })
    });
    let fixer_depends_only_on_degree = subfields.iter().all(|a| {
        subfields
            .iter()
            .all(|b| a.lower_degree != b.lower_degree || a.fixer == b.fixer)
    });
    let mismatches: Vec<(usize, String)> = subfields
        .iter()
        .filter(|s| s.fixer != gamma_members(n, (n - s.lower_degree + 1).clamp(2, n)))
        .map(|s| (s.lower_degree, s.q.to_string()))
        .collect();
    Ok(FixedPointScan {
        n,
        fixer_matches_bound: mismatches.is_empty(),
        mismatches,
        subfields,
        lower_degree_preserved,
        fixer_depends_only_on_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(exps: &[usize], n: usize) -> TruncPoly {
        TruncPoly::from_exponents(exps, n).unwrap()
    }

    fn endo(exps: &[usize], n: usize) -> Endo {
        Endo::new(p(exps, n)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let e = endo(&[1, 2], 3);
        assert_eq!(e.apply(&p(&[0, 1], 3)).unwrap(), p(&[0, 1, 2], 3));
        let id = Endo::identity(5).unwrap();
        for f in TruncPoly::enumerate_from(1, 1, 5) {
            assert_eq!(id.apply(&f).unwrap(), f);
        }
    }

    #[test]
    fn endomorphism_ring_is_anti_composition() {
        for n in 2..=5 {
            let all = endomorphisms(n).unwrap();
            for a in &all {
                for b in &all {
                    let ab = a.after(b).unwrap();
                    for f in TruncPoly::enumerate_from(1, 1, n) {
                        assert_eq!(
                            ab.apply(&f).unwrap(),
                            a.apply(&b.apply(&f).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_criterion() {
        assert!(!is_automorphism(&endo(&[2], 4)));
        assert!(is_automorphism(&endo(&[1, 3], 4)));
        assert!(is_automorphism(&Endo::identity(6).unwrap()));
        for n in 2..=6 {
            for e in endomorphisms(n).unwrap() {
                assert_eq!(
                    is_automorphism(&e),
                    search_inverse(&e).unwrap().is_some(),
                    "{e:?}"
                );
            }
        }
        assert!(aut_matrix(&endo(&[2], 4)).is_err());
    }

    #[test]
    fn matrices() {
        let a = aut_matrix(&endo(&[1, 2], 3)).unwrap();
        assert_eq!(a.to_appendix(), "1 1\n0 1");
        let a2 = aut_matrix(&endo(&[1, 3], 4)).unwrap();
        assert_eq!(a2.to_appendix(), "1 0 1\n0 1 0\n0 0 1");
        assert_eq!(
            aut_matrix(&Endo::identity(6).unwrap()).unwrap(),
            AutMatrix::identity(6)
        );
        let a1 = aut_matrix(&endo(&[1, 2], 5)).unwrap();
        assert_eq!(a1.to_appendix(), "1 1 0 0\n0 1 0 1\n0 0 1 1\n0 0 0 1");
        assert_eq!(aut_matrix_via_multinomial(&endo(&[1, 2], 5)).unwrap(), a1);
        assert_eq!(a1.endo().unwrap(), endo(&[1, 2], 5));
        assert_eq!(
            AutMatrix::parse_rows(&["1 1 0 0", "0 1 0 1", "0 0 1 1", "0 0 0 1"]).unwrap(),
            a1
        );
    }

    #[test]
    fn multinomial_agrees_with_frobenius_powers() {
        for n in 3..=9 {
            for e in generate_aut_group(n).unwrap().endos() {
                let m = aut_matrix_via_multinomial(e).unwrap();
                for (r, row) in m.rows().iter().enumerate() {
                    assert_eq!(*row, e.p0.pow_frobenius(r as u64 + 1).bits() >> 1);
                }
                assert!(m.is_unitriangular());
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(aut_inverse(&endo(&[1, 2], 4)).unwrap(), endo(&[1, 2], 4));
        assert_eq!(aut_inverse(&endo(&[1, 2], 5)).unwrap(), endo(&[1, 2, 4], 5));
        assert_eq!(
            aut_inverse(&Endo::identity(7).unwrap()).unwrap(),
            Endo::identity(7).unwrap()
        );
        let e = endo(&[1, 2], 5);
        let q = endo(&[1, 2, 4], 5);
        assert_eq!(q.p0.compose(&e.p0).unwrap(), p(&[1], 5));
        for n in 3..=7 {
            for e in generate_aut_group(n).unwrap().endos() {
                let paths = inverse_paths(e).unwrap();
                assert!(paths.agree(), "{e:?}");
                assert_eq!(
                    e.after(&paths.recursion).unwrap(),
                    Endo::identity(n).unwrap()
                );
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(generate_aut_group(3).unwrap().order(), 2);
        assert_eq!(generate_aut_group(5).unwrap().order(), 8);
        assert_eq!(generate_aut_group(7).unwrap().order(), 32);
        let g5 = generate_aut_group(5).unwrap();
        assert_eq!(g5.identify().unwrap().name.as_deref(), Some("D4"));
        assert_eq!(
            generate_aut_group(3)
                .unwrap()
                .identify()
                .unwrap()
                .name
                .as_deref(),
            Some("C2")
        );
    }

    #[test]
    fn matrix_map_is_anti_homomorphism() {
        let g = generate_aut_group(6).unwrap();
        let ms = g.matrices();
        for a in g.group().elements() {
            for b in g.group().elements() {
                let ab = g.group().mul(a, b) as usize;
                assert_eq!(ms[ab], ms[b as usize].mul(&ms[a as usize]).unwrap());
            }
        }
    }

    #[test]
    fn appendix_round_trip() {
        let g = generate_aut_group(5).unwrap();
        let parsed = parse_appendix(&g.appendix_text()).unwrap();
        assert_eq!(parsed.len(), 8);
        for (a, entry) in parsed.iter().enumerate() {
            assert_eq!(entry.label, format!("A_{a}"));
            assert_eq!(entry.matrix.endo().unwrap().alpha(), a as u64);
        }
    }

    #[test]
    fn reflection_examples() {
        let r3 = reflection(3).unwrap();
        assert_eq!(r3.p0(), p(&[1, 2], 3));
        for n in 2..=10 {
            let r = reflection(n).unwrap();
            assert_eq!(r.after(&r).unwrap(), Endo::identity(n).unwrap());
            assert!(r.apply(&TruncPoly::one(n).unwrap()).unwrap().is_one());
        }
        assert_eq!(
            reflection(5).unwrap().apply(&p(&[0, 1], 5)).unwrap(),
            p(&[0, 1, 2, 3, 4], 5)
        );
    }

    #[test]
    fn conjugation_examples() {
        let g = generate_aut_group(3).unwrap();
        let c = conjugation(&g).unwrap();
        assert_eq!(c.fixed_elements, vec![p(&[0], 3), p(&[0, 2], 3)]);
        let g5 = generate_aut_group(5).unwrap();
        let c5 = conjugation(&g5).unwrap();
        assert!(c5.is_involution);
        assert_eq!(c5.map[0], 0);
        let r = g5.index_of(&reflection(5).unwrap()).unwrap();
        assert_eq!(c5.map[r as usize], r);
        let k3 = c5.ideal_checks.iter().find(|c| c.k == 3).unwrap();
        assert!(!k3.all_fixed);
        assert_eq!(conjugate_element(&p(&[0, 3], 5)).unwrap(), p(&[0, 3, 4], 5));
    }

    #[test]
    fn gamma_examples() {
        let g5 = generate_aut_group(5).unwrap();
        assert_eq!(gamma_filtration(&g5, 2).unwrap().order, 8);
        assert_eq!(gamma_filtration(&g5, 3).unwrap().order, 4);
        let l4 = gamma_filtration(&g5, 4).unwrap();
        assert_eq!(l4.members, vec![0, g5.index_of(&endo(&[1, 4], 5)).unwrap()]);
        for n in 3..=7 {
            let g = generate_aut_group(n).unwrap();
            for k in 2..n {
                let l = gamma_filtration(&g, k).unwrap();
                assert_eq!(l.order, 1 << (n - k));
                assert!(
                    l.normal
                        && l.kernel_matches
                        && l.reduction_is_morphism
                        && l.reduction_is_surjective
                );
                assert_eq!(l.index_of_next, 2);
            }
        }
        assert!(gamma_filtration(&g5, 5).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let g6 = generate_aut_group(6).unwrap();
        let f = frobenius_restriction(&g6).unwrap();
        assert_eq!(f.kernel.len(), 8);
        assert!(f.kernel_abelian && f.kernel_matches && f.matches_truncation && f.is_morphism);
        assert_eq!(f.images[0], 0);
        let f7 = frobenius_restriction(&generate_aut_group(7).unwrap()).unwrap();
        assert_eq!(f7.target, 4);
        assert_eq!(f7.image_order, 4);
    }

    #[test]
    fn fixing_subgroups() {
        for n in 4..=9 {
            let g = generate_aut_group(n).unwrap();
            let g1 = fixing_subgroup(&g, 1).unwrap();
            assert_eq!(g1.members, frobenius_restriction(&g).unwrap().kernel);
            assert!(g1.abelian && g1.normal && g1.exact);
            assert_eq!(g1.members, g1.strict_form);
        }
    }

    #[test]
    fn lower_degree_is_preserved() {
        for n in 3..=7 {
            let scan = fixed_point_scan(&generate_aut_group(n).unwrap()).unwrap();
            assert!(scan.lower_degree_preserved);
            assert!(scan.subfields.iter().all(|s| 2 * s.lower_degree >= n));
        }
    }

    #[test]
    fn every_automorphism_preserves_ideals() {
        for n in 3..=8 {
            for e in generate_aut_group(n).unwrap().endos() {
                for j in 1..n {
                    let image = e.apply(&TruncPoly::new(1 | 1 << j, n).unwrap()).unwrap();
                    assert_eq!(
                        TruncPoly::new(image.bits() & !1, n).unwrap().valuation(),
                        Some(j)
                    );
                }
            }
        }
    }
}
