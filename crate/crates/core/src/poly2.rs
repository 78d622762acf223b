//! GF(2) polynomials in `t = x - 1`, truncated modulo `t^n`.
//!
//! [`TruncPoly`] keeps its coefficients in a single machine word, bit `i`
//! holding the coefficient of `t^i`, so bounds above 64 are rejected.
//! Multiplication is carryless (shift and xor). [`MultiTruncPoly`] is the
//! dense multivariate analogue modulo `(t_1^{n_1}, ..., t_k^{n_k})`.
//!
//! Signs play no role here: over GF(2) minus equals plus, so the alternating
//! series for inverses and `#`-elements collapse to plain sums.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported truncation bound for [`TruncPoly`].
pub const MAX_BOUND: usize = 64;

/// Largest supported number of cells in a multivariate exponent box.
pub const MAX_BOX_CELLS: usize = 1 << 20;

#[inline]
fn mask(bound: usize) -> u64 {
    if bound >= 64 {
        u64::MAX
    } else {
        (1u64 << bound) - 1
    }
}

/// Carryless product of two words, truncated to `bound` bits.
#[inline]
pub(crate) fn clmul_trunc(a: u64, b: u64, bound: usize) -> u64 {
    let m = mask(bound);
    let (mut a, b) = (a & m, b & m);
    let mut r = 0u64;
    while a != 0 {
        let i = a.trailing_zeros();
        r ^= b << i;
        a &= a - 1;
    }
    r & m
}

/// Spreads bit `i` to bit `2i`: squaring over GF(2).
#[inline]
pub(crate) fn spread_bits(a: u64, bound: usize) -> u64 {
    let mut r = 0u64;
    let mut a = a;
    while a != 0 {
        let i = a.trailing_zeros() as usize;
        if 2 * i < 64 {
            r |= 1u64 << (2 * i);
        }
        a &= a - 1;
    }
    r & mask(bound)
}

/// A polynomial over GF(2) in `t`, reduced modulo `t^bound`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncPoly {
    bound: u8,
    bits: u64,
}

impl TruncPoly {
    /// Builds a polynomial from its coefficient word. Bits at or above the
    /// bound are an error rather than silently dropped.
    pub fn new(bits: u64, bound: usize) -> Result<Self> {
        check_bound(bound)?;
        if bits & !mask(bound) != 0 {
            return Err(Error::BitsAboveBound(bound));
        }
        Ok(Self {
            bound: bound as u8,
            bits,
        })
    }

    /// Like [`TruncPoly::new`] but drops any bits at or above the bound.
    pub fn reduced(bits: u64, bound: usize) -> Result<Self> {
        check_bound(bound)?;
        Ok(Self {
            bound: bound as u8,
            bits: bits & mask(bound),
        })
    }

    #[inline]
    pub(crate) fn raw(bits: u64, bound: usize) -> Self {
        debug_assert!((1..=MAX_BOUND).contains(&bound));
        Self {
            bound: bound as u8,
            bits: bits & mask(bound),
        }
    }

    pub fn zero(bound: usize) -> Result<Self> {
        Self::new(0, bound)
    }

    pub fn one(bound: usize) -> Result<Self> {
        Self::new(1, bound)
    }

    /// `t^k`, which is zero once `k >= bound`.
    pub fn monomial(k: usize, bound: usize) -> Result<Self> {
        check_bound(bound)?;
        let bits = if k < bound { 1u64 << k } else { 0 };
        Ok(Self::raw(bits, bound))
    }

    /// Builds `sum t^e` over the given exponents (duplicates cancel).
    pub fn from_exponents(exps: &[usize], bound: usize) -> Result<Self> {
        check_bound(bound)?;
        let mut bits = 0u64;
        for &e in exps {
            if e < bound {
                bits ^= 1u64 << e;
            }
        }
        Ok(Self::raw(bits, bound))
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn bound(&self) -> usize {
        self.bound as usize
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> bool {
        i < 64 && (self.bits >> i) & 1 == 1
    }

    #[inline]
    pub fn constant_term(&self) -> bool {
        self.bits & 1 == 1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        (self.bits != 0).then(|| 63 - self.bits.leading_zeros() as usize)
    }

    fn same_bound(&self, other: &Self) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch(self.bound(), other.bound()));
        }
        Ok(())
    }

    pub fn trunc_add(&self, other: &Self) -> Result<Self> {
        self.same_bound(other)?;
        Ok(Self::raw(self.bits ^ other.bits, self.bound()))
    }

    /// Product in `GF(2)[t]/t^n`.
    pub fn trunc_mul(&self, other: &Self) -> Result<Self> {
        self.same_bound(other)?;
        Ok(Self::raw(
            clmul_trunc(self.bits, other.bits, self.bound()),
            self.bound(),
        ))
    }

    /// The Frobenius `p -> p^2`, computed by spreading coefficients.
    pub fn frobenius(&self) -> Self {
        Self::raw(spread_bits(self.bits, self.bound()), self.bound())
    }

    /// `self^k` by square-and-multiply.
    pub fn pow(&self, mut k: u64) -> Self {
        let n = self.bound();
        let mut base = self.bits;
        let mut acc = 1u64 & mask(n);
        while k > 0 {
            if k & 1 == 1 {
                acc = clmul_trunc(acc, base, n);
            }
            base = clmul_trunc(base, base, n);
            k >>= 1;
        }
        Self::raw(acc, n)
    }

    /// `self^k` as the product of `self^(2^v)` over the binary digits `v`
    /// of `k`, each factor obtained by iterating the Frobenius.
    pub fn pow_frobenius(&self, k: u64) -> Self {
        let n = self.bound();
        let mut acc = Self::raw(1, n);
        let mut factor = *self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * factor;
            }
            factor = factor.frobenius();
            k >>= 1;
        }
        acc
    }

    /// Substitutes `q` for `t` in `self`. `q` must have zero constant term.
    pub fn compose(&self, q: &Self) -> Result<Self> {
        self.same_bound(q)?;
        if q.constant_term() {
            return Err(Error::InvalidSubstitution);
        }
        let n = self.bound();
        let Some(deg) = self.degree() else {
            return Ok(*self);
        };
        // Horner, top coefficient first.
        let mut acc = 0u64;
        for i in (0..=deg).rev() {
            acc = clmul_trunc(acc, q.bits, n);
            if self.coeff(i) {
                acc ^= 1;
            }
        }
        Ok(Self::raw(acc, n))
    }

    /// Multiplicative inverse of a polynomial with constant term 1, as the
    /// truncated geometric series in `self - 1`.
    pub fn inverse_unit(&self) -> Result<Self> {
        if !self.constant_term() {
            return Err(Error::NonInvertible);
        }
        let n = self.bound();
        let u = self.bits & !1;
        let mut term = 1u64;
        let mut acc = 0u64;
        for _ in 0..n {
            acc ^= term;
            term = clmul_trunc(term, u, n);
            if term == 0 {
                break;
            }
        }
        Ok(Self::raw(acc, n))
    }

    /// Drops every term of degree `>= k`, landing in `GF(2)[t]/t^k`.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.bound() {
            return Err(Error::BoundOutOfRange(k, self.bound()));
        }
        Ok(Self::raw(self.bits, k))
    }

    /// Coefficients as a bit string, constant term first.
    pub fn bitstring(&self) -> String {
        (0..self.bound())
            .map(|i| if self.coeff(i) { '1' } else { '0' })
            .collect()
    }

    /// Parses the format written by [`TruncPoly::bitstring`].
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let n = s.len();
        check_bound(n)?;
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1u64 << i,
                _ => return Err(Error::Parse(format!("bad bit {c:?} in {s:?}"))),
            }
        }
        Self::new(bits, n)
    }

    /// Iterates over all polynomials with the given bound whose coefficient
    /// word is `prefix_bits | m << shift` for `m` in `0..2^(bound - shift)`.
    pub(crate) fn enumerate_from(
        shift: usize,
        prefix_bits: u64,
        bound: usize,
    ) -> impl Iterator<Item = Self> {
        let count = 1u64 << (bound - shift);
        (0..count).map(move |m| Self::raw(prefix_bits | (m << shift), bound))
    }
}

/// `N_alpha`: the sums of subsets of the binary digits of `alpha`,
/// ascending (0 included).
pub fn binomial_digits(alpha: u64) -> Vec<u64> {
    let mut sums = vec![0u64];
    for v in 0..64 {
        if alpha >> v & 1 == 1 {
            let more: Vec<u64> = sums.iter().map(|s| s + (1 << v)).collect();
            sums.extend(more);
        }
    }
    sums.sort_unstable();
    sums
}

/// `1 + sum_{m in N_alpha, m > 0} t^{km}`, the closed form of `(1 + t^k)^alpha`.
pub fn binomial_closed_form(k: usize, alpha: u64, bound: usize) -> Result<TruncPoly> {
    check_bound(bound)?;
    let bits = binomial_digits(alpha)
        .into_iter()
        .filter_map(|m| (m as usize).checked_mul(k))
        .filter(|&e| e < bound)
        .fold(0u64, |b, e| b ^ 1 << e);
    Ok(TruncPoly::raw(bits | 1, bound))
}

/// The subset criterion for `P_N = 1 + sum_{v in N} t^v` being a power of
/// `1 + t^k`: `N` lies in `kN` and equals the multiples `k m < bound` of the
/// subset sums `m` of `{2^v : k 2^v in N}`. Returns the exponent `alpha`.
pub fn binomial_criterion(p: &TruncPoly, k: usize) -> Option<u64> {
    if !p.constant_term() || k == 0 {
        return None;
    }
    let n = p.bound();
    let support: Vec<usize> = (1..n).filter(|&v| p.coeff(v)).collect();
    if support.iter().any(|v| v % k != 0) {
        return None;
    }
    let alpha = (0..63)
        .map_while(|v| k.checked_mul(1 << v).filter(|&e| e < n).map(|e| (v, e)))
        .filter(|&(_, e)| p.coeff(e))
        .fold(0u64, |a, (v, _)| a | 1 << v);
    let expected: Vec<usize> = binomial_digits(alpha)
        .into_iter()
        .map(|m| m as usize * k)
        .filter(|&e| e > 0 && e < n)
        .collect();
    (expected == support).then_some(alpha)
}

fn check_bound(bound: usize) -> Result<()> {
    if bound == 0 || bound > MAX_BOUND {
        return Err(Error::BoundOutOfRange(bound, MAX_BOUND));
    }
    Ok(())
}

impl Add for TruncPoly {
    type Output = TruncPoly;

    /// Panics on mismatched bounds; use [`TruncPoly::trunc_add`] to check.
    fn add(self, rhs: Self) -> Self {
        self.trunc_add(&rhs).expect("TruncPoly bounds must match")
    }
}

impl Mul for TruncPoly {
    type Output = TruncPoly;

    /// Panics on mismatched bounds; use [`TruncPoly::trunc_mul`] to check.
    fn mul(self, rhs: Self) -> Self {
        self.trunc_mul(&rhs).expect("TruncPoly bounds must match")
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for i in 0..self.bound() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncPoly({self} mod t^{})", self.bound)
    }
}

impl Serialize for TruncPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.bitstring())
    }
}

impl<'de> Deserialize<'de> for TruncPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TruncPoly::from_bitstring(&s).map_err(serde::de::Error::custom)
    }
}

/// A polynomial over GF(2) in `t_1, ..., t_k` reduced modulo
/// `(t_1^{n_1}, ..., t_k^{n_k})`, stored densely over the exponent box.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiTruncPoly {
    bounds: Vec<usize>,
    words: Vec<u64>,
}

/// Mixed-radix layout of an exponent box; the first variable varies fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentBox {
    bounds: Vec<usize>,
    strides: Vec<usize>,
    cells: usize,
}

impl ExponentBox {
    pub fn new(bounds: &[usize]) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::Invalid("at least one variable is required".into()));
        }
        let mut strides = Vec::with_capacity(bounds.len());
        let mut cells: usize = 1;
        for &b in bounds {
            if b == 0 {
                return Err(Error::BoundOutOfRange(0, MAX_BOX_CELLS));
            }
            strides.push(cells);
            cells =
                cells
                    .checked_mul(b)
                    .filter(|&c| c <= MAX_BOX_CELLS)
                    .ok_or(Error::TooLarge {
                        what: "exponent box",
                        size: usize::MAX,
                        limit: MAX_BOX_CELLS,
                    })?;
        }
        Ok(Self {
            bounds: bounds.to_vec(),
            strides,
            cells,
        })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn index(&self, exps: &[usize]) -> Option<usize> {
        if exps.len() != self.bounds.len() {
            return None;
        }
        let mut idx = 0;
        for ((&e, &b), &s) in exps.iter().zip(&self.bounds).zip(&self.strides) {
            if e >= b {
                return None;
            }
            idx += e * s;
        }
        Some(idx)
    }

    pub fn exponents(&self, mut idx: usize) -> Vec<usize> {
        self.bounds
            .iter()
            .map(|&b| {
                let e = idx % b;
                idx /= b;
                e
            })
            .collect()
    }

    /// Index of the product monomial, or `None` when it vanishes.
    fn add_indices(&self, i: usize, j: usize) -> Option<usize> {
        let (mut i, mut j) = (i, j);
        let mut idx = 0;
        for (&b, &s) in self.bounds.iter().zip(&self.strides) {
            let e = i % b + j % b;
            if e >= b {
                return None;
            }
            idx += e * s;
            i /= b;
            j /= b;
        }
        Some(idx)
    }
}

impl MultiTruncPoly {
    fn empty(bx: &ExponentBox) -> Self {
        Self {
            bounds: bx.bounds.clone(),
            words: vec![0; bx.cells.div_ceil(64)],
        }
    }

    pub fn zero(bounds: &[usize]) -> Result<Self> {
        Ok(Self::empty(&ExponentBox::new(bounds)?))
    }

    pub fn one(bounds: &[usize]) -> Result<Self> {
        let mut p = Self::zero(bounds)?;
        p.flip(0);
        Ok(p)
    }

    /// The variable `t_i` (zero-based `i`).
    pub fn variable(i: usize, bounds: &[usize]) -> Result<Self> {
        let bx = ExponentBox::new(bounds)?;
        if i >= bounds.len() {
            return Err(Error::OutOfRange(format!(
                "variable {i} of {}",
                bounds.len()
            )));
        }
        let mut exps = vec![0; bounds.len()];
        exps[i] = 1;
        let mut p = Self::empty(&bx);
        if let Some(idx) = bx.index(&exps) {
            p.flip(idx);
        }
        Ok(p)
    }

    /// Builds a polynomial from the cell indices of its monomials.
    pub fn from_cells(cells: &[usize], bounds: &[usize]) -> Result<Self> {
        let bx = ExponentBox::new(bounds)?;
        let mut p = Self::empty(&bx);
        for &c in cells {
            if c >= bx.cells {
                return Err(Error::OutOfRange(format!("cell {c} of {}", bx.cells)));
            }
            p.flip(c);
        }
        Ok(p)
    }

    /// Builds a polynomial from a coefficient word (boxes of at most 64 cells).
    pub fn from_word(word: u64, bounds: &[usize]) -> Result<Self> {
        let bx = ExponentBox::new(bounds)?;
        if bx.cells > 64 {
            return Err(Error::TooLarge {
                what: "word-encoded box",
                size: bx.cells,
                limit: 64,
            });
        }
        if bx.cells < 64 && word >> bx.cells != 0 {
            return Err(Error::BitsAboveBound(bx.cells));
        }
        let mut p = Self::empty(&bx);
        p.words[0] = word;
        Ok(p)
    }

    /// The coefficient word, for boxes of at most 64 cells.
    pub fn word(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    fn layout(&self) -> ExponentBox {
        ExponentBox::new(&self.bounds).expect("bounds validated at construction")
    }

    #[inline]
    fn flip(&mut self, idx: usize) {
        self.words[idx / 64] ^= 1u64 << (idx % 64);
    }

    #[inline]
    pub fn coeff_at(&self, idx: usize) -> bool {
        (self.words[idx / 64] >> (idx % 64)) & 1 == 1
    }

    pub fn coeff(&self, exps: &[usize]) -> bool {
        self.layout().index(exps).is_some_and(|i| self.coeff_at(i))
    }

    pub fn constant_term(&self) -> bool {
        self.coeff_at(0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn same_bounds(&self, other: &Self) -> Result<()> {
        if self.bounds != other.bounds {
            return Err(Error::MultiBoundMismatch(
                self.bounds.clone(),
                other.bounds.clone(),
            ));
        }
        Ok(())
    }

    pub fn multi_add(&self, other: &Self) -> Result<Self> {
        self.same_bounds(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self {
            bounds: self.bounds.clone(),
            words,
        })
    }

    pub fn multi_mul(&self, other: &Self) -> Result<Self> {
        self.same_bounds(other)?;
        let bx = self.layout();
        let mut out = Self::empty(&bx);
        let rhs: Vec<usize> = other.support().collect();
        for i in self.support() {
            for &j in &rhs {
                if let Some(k) = bx.add_indices(i, j) {
                    out.flip(k);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a polynomial with constant coefficient 1, via the
    /// geometric series in its nilpotent part.
    pub fn multi_inverse_unit(&self) -> Result<Self> {
        if !self.constant_term() {
            return Err(Error::NonInvertible);
        }
        let mut u = self.clone();
        u.flip(0);
        let mut term = Self::one(&self.bounds)?;
        let mut acc = Self::zero(&self.bounds)?;
        while !term.is_zero() {
            acc = acc.multi_add(&term)?;
            term = term.multi_mul(&u)?;
        }
        Ok(acc)
    }

    /// Drops every monomial that involves the variable `i`.
    pub fn eliminate(&self, i: usize) -> Self {
        let bx = self.layout();
        let mut out = Self::empty(&bx);
        for c in self.support() {
            if bx.exponents(c)[i] == 0 {
                out.flip(c);
            }
        }
        out
    }
}

impl fmt::Display for MultiTruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let bx = self.layout();
        let mut first = true;
        for c in self.support() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let exps = bx.exponents(c);
            let factors: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("t{}", v + 1)
                    } else {
                        format!("t{}^{e}", v + 1)
                    }
                })
                .collect();
            if factors.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiTruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiTruncPoly({self} mod {:?})", self.bounds)
    }
}
