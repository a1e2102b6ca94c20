//! The finite quotient ring `F_p[t]/(Q)` and its additive characters.
//!
//! Residues are represented by their unique representative of degree
//! `< deg Q` and indexed by reading the coefficient vector as a base-`p`
//! integer (coefficient of `t^j` = j-th digit). Under addition the ring is an
//! elementary abelian `p`-group, so every additive character has order
//! dividing `p` and every character sum is a sum of `p`-th roots of unity —
//! we therefore accumulate character sums as exact integer counts per root
//! of unity ([`SumAccumulator`]) and convert to floating point only at the
//! end.
//!
//! The pairing `e(sx/Q)` reads the coefficient of `t^{n-1}` in `s·x mod Q`:
//! expanding `r/Q` as a Laurent series in `t^{-1}` shows the residue of
//! `r/Q` at `t^{-1}` is exactly the `t^{n-1}` coefficient of `r` (the
//! correction terms from lower coefficients of `Q` only reach `t^{-2}` and
//! below). The tests validate this rule against a direct Laurent-expansion
//! oracle.

use crate::error::{Error, Result};
use crate::ffield::{distinct_degree_profile, validate_prime, FactorProfile, Poly};
use crate::par;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// Cap on ring size; sweeps in this crate are desk-scale by design.
pub const MAX_RING_SIZE: u64 = 1 << 20;

/// The exponent `c` of a `p`-th root of unity: the pairing value with
/// `e(sx/Q) = exp(2*pi*i*c/p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnityExponent {
    pub value: u64,
    pub p: u64,
}

impl UnityExponent {
    pub fn compose(self, other: UnityExponent) -> UnityExponent {
        debug_assert_eq!(self.p, other.p);
        UnityExponent { value: (self.value + other.value) % self.p, p: self.p }
    }

    pub fn to_complex(self) -> Complex64 {
        unity(self.p, self.value)
    }
}

/// `exp(2*pi*i*c/p)`, the fixed nontrivial character of `F_p` applied to c.
/// Whole and half turns are returned as exact `±1` so that `p = 2` sums stay
/// in integer arithmetic.
pub fn unity(p: u64, c: u64) -> Complex64 {
    let c = c % p;
    if c == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * c == p {
        return Complex64::new(-1.0, 0.0);
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * c as f64 / p as f64)
}

/// Exact accumulator for a sum of `p`-th roots of unity: integer count per
/// exponent. Merging two accumulators is integer addition, so parallel
/// tallies are order-independent and bit-exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumAccumulator {
    pub p: u64,
    pub counts: Vec<u64>,
}

impl SumAccumulator {
    pub fn new(p: u64) -> SumAccumulator {
        SumAccumulator { p, counts: vec![0; p as usize] }
    }

    pub fn push(&mut self, e: UnityExponent) {
        debug_assert_eq!(self.p, e.p);
        self.counts[e.value as usize] += 1;
    }

    /// Tally `count` occurrences of one exponent at once (for histogram
    /// inputs where many arguments share a value).
    pub fn push_many(&mut self, e: UnityExponent, count: u64) {
        debug_assert_eq!(self.p, e.p);
        self.counts[e.value as usize] += count;
    }

    pub fn merge(&mut self, other: &SumAccumulator) {
        debug_assert_eq!(self.p, other.p);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The raw complex sum (not averaged). Because the `p`-th roots of unity
    /// sum to zero, the minimum count can be subtracted from every exponent
    /// first; a perfectly balanced tally then converts to an exact `0.0`
    /// instead of accumulating rounding noise.
    pub fn sum(&self) -> Complex64 {
        let min = self.counts.iter().copied().min().unwrap_or(0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, &count) in self.counts.iter().enumerate() {
            if count > min {
                acc += unity(self.p, c as u64) * (count - min) as f64;
            }
        }
        acc
    }

    /// The averaged complex value; zero total averages to zero.
    pub fn mean(&self) -> Complex64 {
        let total = self.total();
        if total == 0 {
            return Complex64::new(0.0, 0.0);
        }
        // When all mass sits on one exponent the division is exact and the
        // mean is exactly that root of unity.
        if let Some(c) = self.single_exponent() {
            return unity(self.p, c);
        }
        self.sum() / total as f64
    }

    /// If every count is concentrated on one exponent, return it.
    pub fn single_exponent(&self) -> Option<u64> {
        let total = self.total();
        self.counts.iter().position(|&c| c == total).map(|c| c as u64)
    }
}

/// Shared context for one quotient ring `F_p[t]/(Q)`.
pub struct ResidueCtx {
    p: u64,
    modulus: Poly,
    n: usize,
    size: usize,
    profile: FactorProfile,
    lpf: u64,
    /// Gram matrix of the pairing on the monomial basis, row-major `n x n`:
    /// `gram[i][j] = coeff_{n-1}(t^{i+j} mod Q)`.
    gram: Vec<u64>,
}

impl fmt::Debug for ResidueCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueCtx(p={}, Q={})", self.p, self.modulus)
    }
}

impl PartialEq for ResidueCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for ResidueCtx {}

impl ResidueCtx {
    pub fn new(modulus: Poly) -> Result<Arc<ResidueCtx>> {
        let p = modulus.prime();
        validate_prime(p)?;
        let n = match modulus.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::ConstantPolynomial),
        };
        if !modulus.is_monic() {
            return Err(Error::NotMonic(modulus.to_string()));
        }
        let mut size: u64 = 1;
        for _ in 0..n {
            size = size
                .checked_mul(p)
                .filter(|&s| s <= MAX_RING_SIZE)
                .ok_or(Error::RingTooLarge(u64::MAX, MAX_RING_SIZE))?;
        }
        let profile = distinct_degree_profile(&modulus)?;
        let lpf = p
            .checked_pow(profile.min_factor_degree() as u32)
            .ok_or_else(|| Error::Internal("lpf overflow".into()))?;

        // Powers t^k mod Q for k <= 2n-2 feed the Gram matrix.
        let mut tpows = Vec::with_capacity(2 * n - 1);
        let mut cur = Poly::one(p);
        for _ in 0..(2 * n - 1) {
            tpows.push(cur.clone());
            cur = cur.mul(&Poly::t(p)).rem(&modulus)?;
        }
        let mut gram = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                gram[i * n + j] = tpows[i + j].coeff(n - 1).value;
            }
        }
        let ctx = ResidueCtx { p, modulus, n, size: size as usize, profile, lpf, gram };
        if !ctx.gram_invertible() {
            // The pairing is nondegenerate for every monic modulus, so a
            // singular Gram matrix means the construction above is wrong.
            return Err(Error::Internal(format!(
                "singular pairing Gram matrix for Q={}",
                ctx.modulus
            )));
        }
        Ok(Arc::new(ctx))
    }

    fn gram_invertible(&self) -> bool {
        let n = self.n;
        let p = self.p;
        let mut m = self.gram.clone();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| m[r * n + col] != 0);
            let Some(pr) = pivot else { continue };
            for j in 0..n {
                m.swap(pr * n + j, rank * n + j);
            }
            let inv = crate::ffield::FpElem { value: m[rank * n + col], p }.inv().unwrap().value;
            for j in 0..n {
                m[rank * n + j] = m[rank * n + j] * inv % p;
            }
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let f = m[r * n + col];
                    for j in 0..n {
                        m[r * n + j] = (m[r * n + j] + p * p - f * m[rank * n + j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank == n
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Degree of the modulus, i.e. the `F_p`-dimension of the ring.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn profile(&self) -> &FactorProfile {
        &self.profile
    }

    pub fn lpf(&self) -> u64 {
        self.lpf
    }

    /// Row-major Gram matrix of the pairing on the monomial basis.
    pub fn pairing_gram(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| self.gram[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn index_of(&self, rep: &Poly) -> usize {
        debug_assert!(rep.degree().is_none_or(|d| d < self.n));
        let mut idx = 0usize;
        for k in (0..self.n).rev() {
            idx = idx * self.p as usize + rep.coeff(k).value as usize;
        }
        idx
    }

    pub fn poly_at(&self, idx: usize) -> Poly {
        debug_assert!(idx < self.size);
        let mut coeffs = vec![0u64; self.n];
        let mut i = idx;
        for slot in coeffs.iter_mut() {
            *slot = (i % self.p as usize) as u64;
            i /= self.p as usize;
        }
        Poly::new(self.p, coeffs)
    }

    /// Base-p digits of an index (coefficient vector of the representative).
    pub fn digits(&self, idx: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        let mut i = idx;
        for slot in out.iter_mut() {
            *slot = (i % self.p as usize) as u64;
            i /= self.p as usize;
        }
        out
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let mut out = 0usize;
        let mut mult = 1usize;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.n {
            out += ((a % p) + (b % p)) % p * mult;
            mult *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        let p = self.p as usize;
        let mut out = 0usize;
        let mut mult = 1usize;
        let mut a = a;
        for _ in 0..self.n {
            out += (p - (a % p)) % p * mult;
            mult *= p;
            a /= p;
        }
        out
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        let pa = self.poly_at(a);
        let pb = self.poly_at(b);
        self.index_of(&pa.mul(&pb).rem(&self.modulus).expect("modulus nonzero"))
    }

    /// The pairing exponent: coefficient of `t^{n-1}` in `s*x mod Q`.
    pub fn pair_idx(&self, s: usize, x: usize) -> u64 {
        let row = self.pair_row(s);
        self.pair_with_row(&row, x)
    }

    /// Precomputed `G*s` digit vector: pairing against a fixed `s` becomes a
    /// dot product with the digits of `x`.
    pub fn pair_row(&self, s: usize) -> Vec<u64> {
        let sd = self.digits(s);
        let mut row = vec![0u64; self.n];
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (i, &si) in sd.iter().enumerate() {
                acc += si * self.gram[i * self.n + j] % self.p;
            }
            *slot = acc % self.p;
        }
        row
    }

    pub fn pair_with_row(&self, row: &[u64], x: usize) -> u64 {
        let p = self.p as usize;
        let mut acc = 0u64;
        let mut x = x;
        for &r in row {
            acc += r * (x % p) as u64;
            x /= p;
        }
        acc % self.p
    }

    /// Index of `G*s` — the frequency relabeling between the coordinate DFT
    /// and the ring's own pairing.
    fn gram_image_idx(&self, s: usize) -> usize {
        let row = self.pair_row(s);
        let mut idx = 0usize;
        for k in (0..self.n).rev() {
            idx = idx * self.p as usize + row[k] as usize;
        }
        idx
    }

    pub fn residue(self: &Arc<Self>, value: &Poly) -> Result<Residue> {
        if value.prime() != self.p {
            return Err(Error::PrimeMismatch(value.prime(), self.p));
        }
        Ok(Residue { ctx: Arc::clone(self), rep: value.rem(&self.modulus)? })
    }

    pub fn residue_at(self: &Arc<Self>, idx: usize) -> Residue {
        Residue { ctx: Arc::clone(self), rep: self.poly_at(idx) }
    }

    pub fn zero(self: &Arc<Self>) -> Residue {
        Residue { ctx: Arc::clone(self), rep: Poly::zero(self.p) }
    }
}

/// An element of a quotient ring, carrying its context.
#[derive(Clone)]
pub struct Residue {
    ctx: Arc<ResidueCtx>,
    rep: Poly,
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.rep, self.ctx.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.rep == other.rep
    }
}

impl Residue {
    pub fn ctx(&self) -> &Arc<ResidueCtx> {
        &self.ctx
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn index(&self) -> usize {
        self.ctx.index_of(&self.rep)
    }

    fn check_ctx(&self, other: &Residue) -> Result<()> {
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch(
                self.ctx.modulus.to_string(),
                other.ctx.modulus.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check_ctx(other)?;
        Ok(Residue { ctx: Arc::clone(&self.ctx), rep: self.rep.add(&other.rep) })
    }

    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        self.check_ctx(other)?;
        Ok(Residue { ctx: Arc::clone(&self.ctx), rep: self.rep.sub(&other.rep) })
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.check_ctx(other)?;
        Ok(Residue {
            ctx: Arc::clone(&self.ctx),
            rep: self.rep.mul(&other.rep).rem(&self.ctx.modulus)?,
        })
    }

    pub fn neg(&self) -> Residue {
        Residue { ctx: Arc::clone(&self.ctx), rep: self.rep.neg() }
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// The additive character pairing `e(sx/Q)` as a root-of-unity exponent.
pub fn residue_pair(s: &Residue, x: &Residue) -> Result<UnityExponent> {
    s.check_ctx(x)?;
    Ok(UnityExponent { value: s.ctx.pair_idx(s.index(), x.index()), p: s.ctx.p })
}

pub(crate) fn check_len(ctx: &ResidueCtx, f: &[Complex64]) -> Result<()> {
    if f.len() != ctx.size {
        return Err(Error::Precondition(format!(
            "function table has {} entries; ring has {}",
            f.len(),
            ctx.size
        )));
    }
    Ok(())
}

/// One radix-p pass along `axis`; `sign` is the exponent sign of the kernel.
fn axis_pass(ctx: &ResidueCtx, input: &[Complex64], axis: usize, sign: f64) -> Vec<Complex64> {
    let p = ctx.p as usize;
    let stride = (ctx.p as usize).pow(axis as u32);
    // Kernel table omega^(sign * a * j) for a, j in 0..p.
    let mut table = vec![Complex64::new(0.0, 0.0); p * p];
    for a in 0..p {
        for j in 0..p {
            let c = (a * j % p) as f64;
            table[a * p + j] =
                Complex64::from_polar(1.0, sign * std::f64::consts::TAU * c / p as f64);
        }
    }
    par::map_indexed(input.len(), |idx| {
        let a = (idx / stride) % p;
        let base = idx - a * stride;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..p {
            acc += input[base + j * stride] * table[a * p + j];
        }
        acc
    })
}

/// Fast Fourier transform on the ring: `fhat(s) = E_x f(x) e(-sx/Q)`.
///
/// Computes the coordinatewise radix-p tensor transform and then relabels
/// frequencies through the pairing's Gram matrix (the ring pairing in
/// coordinates is `s^T G x`). Cost `O(p^n * n * p)`.
pub fn fourier_transform(ctx: &ResidueCtx, f: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(ctx, f)?;
    let mut g = f.to_vec();
    for axis in 0..ctx.n {
        g = axis_pass(ctx, &g, axis, -1.0);
    }
    let scale = 1.0 / ctx.size as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); ctx.size];
    for (s, slot) in out.iter_mut().enumerate() {
        *slot = g[ctx.gram_image_idx(s)] * scale;
    }
    Ok(out)
}

/// Inverse transform: `f(x) = sum_s fhat(s) e(sx/Q)` (a sum, not an average).
pub fn inverse_transform(ctx: &ResidueCtx, fhat: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(ctx, fhat)?;
    let mut g = vec![Complex64::new(0.0, 0.0); ctx.size];
    for (s, &v) in fhat.iter().enumerate() {
        g[ctx.gram_image_idx(s)] = v;
    }
    for axis in 0..ctx.n {
        g = axis_pass(ctx, &g, axis, 1.0);
    }
    Ok(g)
}

/// `(E_x |f(x)|^2, sum_s |fhat(s)|^2)`; the two sides agree for every f.
pub fn parseval_check(ctx: &ResidueCtx, f: &[Complex64]) -> Result<(f64, f64)> {
    check_len(ctx, f)?;
    let lhs = f.iter().map(|v| v.norm_sqr()).sum::<f64>() / ctx.size as f64;
    let rhs = fourier_transform(ctx, f)?.iter().map(|v| v.norm_sqr()).sum::<f64>();
    Ok((lhs, rhs))
}

/// `sqrt(E_x |f(x)|^2)` — the normalized L² norm used throughout.
pub fn l2_norm(f: &[Complex64]) -> f64 {
    (f.iter().map(|v| v.norm_sqr()).sum::<f64>() / f.len() as f64).sqrt()
}
