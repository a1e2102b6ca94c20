//! Arithmetic in `F_p` and in the polynomial ring `F_p[t]`.
//!
//! Polynomials are dense coefficient vectors in ascending order of the power
//! of `t`, always normalized (no trailing zeros) and reduced mod `p`. The
//! base prime travels with every value; mixing primes is a hard error.
//!
//! Factorization stops at the distinct-degree profile: every consumer in this
//! crate (the `lpf` statistic, irreducibility, squarefree structure) only
//! needs the multiset of irreducible-factor degrees, never the factors
//! themselves, and distinct-degree splitting is deterministic.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Largest supported base prime. Coefficient products then fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 16;

/// Deterministic primality check for the supported range.
pub fn validate_prime(p: u64) -> Result<()> {
    if !(2..=MAX_PRIME).contains(&p) {
        return Err(Error::BadPrime(p));
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::BadPrime(p));
        }
        d += 1;
    }
    Ok(())
}

/// An element of `F_p`, kept reduced to `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    pub value: u64,
    pub p: u64,
}

// Arithmetic stays as named methods rather than operator impls: every
// operation is only defined for matching characteristics, and a bare `+`
// would hide that contract.
#[allow(clippy::should_implement_trait)]
impl FpElem {
    pub fn new(value: i64, p: u64) -> Self {
        let m = value.rem_euclid(p as i64) as u64;
        FpElem { value: m, p }
    }

    pub fn add(self, other: FpElem) -> FpElem {
        debug_assert_eq!(self.p, other.p);
        FpElem { value: (self.value + other.value) % self.p, p: self.p }
    }

    pub fn sub(self, other: FpElem) -> FpElem {
        debug_assert_eq!(self.p, other.p);
        FpElem { value: (self.p + self.value - other.value) % self.p, p: self.p }
    }

    pub fn mul(self, other: FpElem) -> FpElem {
        debug_assert_eq!(self.p, other.p);
        FpElem { value: (self.value * other.value) % self.p, p: self.p }
    }

    pub fn neg(self) -> FpElem {
        FpElem { value: (self.p - self.value) % self.p, p: self.p }
    }

    pub fn pow(self, mut e: u64) -> FpElem {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        FpElem { value: acc, p: self.p }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(self) -> Result<FpElem> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: p is prime.
        Ok(self.pow(self.p - 2))
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

/// A polynomial over `F_p` in the formal variable `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    /// Ascending coefficients, normalized: empty means zero, last entry
    /// nonzero otherwise. Entries live in `0..p`.
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly(p={}, {})", self.p, self)
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: descending powers, only nonzero terms, `+` as
    /// the only separator, e.g. `t^3+t+1` or `2*t^2+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c == 1 => write!(f, "t^{k}")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Build from ascending coefficients, reducing mod `p` and trimming.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Poly {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Poly {
        Poly::new(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Poly {
        Poly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Poly {
        Poly::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Poly {
        Poly::new(p, vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(p, v)
    }

    pub fn t(p: u64) -> Poly {
        Poly::monomial(p, 1, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FpElem {
        FpElem { value: self.coeffs.get(k).copied().unwrap_or(0), p: self.p }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<FpElem> {
        self.coeffs.last().map(|&c| FpElem { value: c, p: self.p })
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_same_prime(&self, other: &Poly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p, "mixed base primes");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % self.p;
        }
        Poly::new(self.p, out)
    }

    pub fn neg(&self) -> Poly {
        let p = self.p;
        Poly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p, "mixed base primes");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Poly::new(self.p, out)
    }

    pub fn mul_scalar(&self, c: FpElem) -> Poly {
        debug_assert_eq!(self.p, c.p);
        Poly::new(self.p, self.coeffs.iter().map(|&a| a * c.value % self.p).collect())
    }

    /// Euclidean division: returns `(q, r)` with `self = q*b + r` and
    /// `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_prime(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((Poly::zero(self.p), self.clone()));
        }
        let p = self.p;
        let lead_inv = b.leading().unwrap().inv()?.value;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = c * lead_inv % p;
            quot[k - db] = q;
            // rem -= q * t^(k-db) * b
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                rem[idx] = (rem[idx] + p * p - q * bc % p) % p;
            }
        }
        rem.truncate(db);
        Ok((Poly::new(p, quot), Poly::new(p, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Make monic by dividing by the leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_scalar(lead.inv()?))
    }

    /// Monic greatest common divisor. `gcd(a, 0) = monic(a)`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same_prime(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative with respect to `t`.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % self.p) * c % self.p)
            .collect();
        Poly::new(self.p, out)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.p).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Evaluate at a scalar element of `F_p`.
    pub fn eval_scalar(&self, x: FpElem) -> FpElem {
        debug_assert_eq!(self.p, x.p);
        let mut acc = FpElem { value: 0, p: self.p };
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(FpElem { value: c, p: self.p });
        }
        acc
    }

    /// p-th root of a polynomial all of whose exponents are multiples of p
    /// (in `F_p[t]`, `f = g^p` exactly when `f = g(t^p)` coefficientwise).
    fn pth_root(&self) -> Result<Poly> {
        let p = self.p as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k % p == 0 {
                out.push(c);
            } else if c != 0 {
                return Err(Error::Internal(format!(
                    "pth_root called on {} which is not a p-th power",
                    self
                )));
            }
        }
        Ok(Poly::new(self.p, out))
    }
}

/// Multiset of irreducible-factor degrees of a monic modulus, counted with
/// multiplicity. The factors themselves are never materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorProfile {
    pub modulus: Poly,
    /// degree -> number of irreducible factors of that degree (with
    /// multiplicity).
    pub degree_multiset: BTreeMap<usize, usize>,
}

impl FactorProfile {
    /// Total degree accounted for; equals `deg(modulus)` by construction.
    pub fn total_degree(&self) -> usize {
        self.degree_multiset.iter().map(|(d, m)| d * m).sum()
    }

    pub fn min_factor_degree(&self) -> usize {
        *self.degree_multiset.keys().next().expect("nonempty profile")
    }
}

/// Squarefree decomposition in characteristic p: returns pairwise-coprime
/// squarefree monic `g_i` with multiplicities `m_i` so that
/// `f = prod g_i^{m_i}`.
fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    let mut stack = vec![(f.monic()?, 1usize)];
    while let Some((g, base)) = stack.pop() {
        if g.degree() == Some(0) || g.is_zero() {
            continue;
        }
        let d = g.derivative();
        if d.is_zero() {
            // g = h(t^p) = h_root^p with h_root the coefficientwise p-th root.
            stack.push((g.pth_root()?, base * g.p as usize));
            continue;
        }
        let mut c = g.gcd(&d)?;
        let mut w = g.divmod(&c)?.0;
        let mut i = 1usize;
        while w.degree() != Some(0) {
            let y = w.gcd(&c)?;
            let z = w.divmod(&y)?.0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, base * i));
            }
            c = c.divmod(&y)?.0;
            w = y;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            // Remaining factors all had multiplicity divisible by p.
            stack.push((c.pth_root()?, base * g.p as usize));
        }
    }
    Ok(out)
}

/// Distinct-degree splitting of a squarefree monic polynomial: returns
/// degree -> count of irreducible factors of that degree.
fn distinct_degree_split(g: &Poly) -> Result<BTreeMap<usize, usize>> {
    let p = g.prime();
    let mut out = BTreeMap::new();
    let mut f = g.clone();
    let mut h = Poly::t(p).rem(&f)?;
    let mut e = 0usize;
    while let Some(df) = f.degree() {
        if df == 0 {
            break;
        }
        e += 1;
        if 2 * e > df {
            // What remains is a single irreducible factor.
            *out.entry(df).or_insert(0) += 1;
            break;
        }
        h = h.pow_mod(p, &f)?;
        let diff = h.sub(&Poly::t(p));
        let d = if diff.is_zero() { f.clone() } else { f.gcd(&diff)? };
        if d.degree().unwrap_or(0) > 0 {
            *out.entry(e).or_insert(0) += d.degree().unwrap() / e;
            f = f.divmod(&d)?.0;
            h = h.rem(&f)?;
        }
    }
    Ok(out)
}

/// Distinct-degree factorization profile of a monic nonconstant modulus:
/// squarefree decomposition followed by distinct-degree splitting of each
/// squarefree part.
pub fn distinct_degree_profile(q: &Poly) -> Result<FactorProfile> {
    validate_prime(q.prime())?;
    if !q.is_monic() {
        return Err(Error::NotMonic(q.to_string()));
    }
    if q.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut degree_multiset: BTreeMap<usize, usize> = BTreeMap::new();
    for (g, mult) in squarefree_decomposition(q)? {
        for (deg, count) in distinct_degree_split(&g)? {
            *degree_multiset.entry(deg).or_insert(0) += count * mult;
        }
    }
    let profile = FactorProfile { modulus: q.clone(), degree_multiset };
    if profile.total_degree() != q.degree().unwrap() {
        return Err(Error::Internal(format!(
            "factor profile of {} accounts for degree {} of {}",
            q,
            profile.total_degree(),
            q.degree().unwrap()
        )));
    }
    Ok(profile)
}

/// `lpf(Q) = p^e` where `e` is the smallest degree of an irreducible factor
/// of `Q`; the size of the smallest prime residue field `Q` maps onto.
pub fn lpf(q: &Poly) -> Result<u64> {
    let profile = distinct_degree_profile(q)?;
    let e = profile.min_factor_degree() as u32;
    q.prime()
        .checked_pow(e)
        .ok_or_else(|| Error::Precondition(format!("lpf of {q} overflows u64")))
}

/// A monic polynomial is irreducible iff its profile is a single factor of
/// full degree.
pub fn is_irreducible(q: &Poly) -> Result<bool> {
    let profile = distinct_degree_profile(q)?;
    Ok(profile.degree_multiset == BTreeMap::from([(q.degree().unwrap(), 1)]))
}

/// Iterator over all monic polynomials of the given degree, in lexicographic
/// coefficient order: index `i` has coefficient of `t^j` equal to the j-th
/// base-p digit of `i`, plus the leading `t^degree`.
pub fn enumerate_monic(p: u64, degree: usize) -> MonicIter {
    MonicIter { p, degree, next: 0, count: (p as u128).pow(degree as u32) }
}

pub struct MonicIter {
    p: u64,
    degree: usize,
    next: u128,
    count: u128,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.count {
            return None;
        }
        let mut coeffs = vec![0u64; self.degree + 1];
        let mut i = self.next;
        for slot in coeffs.iter_mut().take(self.degree) {
            *slot = (i % self.p as u128) as u64;
            i /= self.p as u128;
        }
        coeffs[self.degree] = 1;
        self.next += 1;
        Some(Poly::new(self.p, coeffs))
    }
}

impl ExactSizeIterator for MonicIter {
    fn len(&self) -> usize {
        (self.count - self.next) as usize
    }
}

/// All monic polynomials with degree in `lo..=hi`.
pub fn enumerate_monic_range(p: u64, lo: usize, hi: usize) -> Vec<Poly> {
    (lo..=hi).flat_map(|d| enumerate_monic(p, d)).collect()
}

/// First monic irreducible of the given degree in enumeration order.
/// Deterministic; used wherever "a chosen irreducible" is called for.
pub fn first_irreducible(p: u64, degree: usize) -> Result<Poly> {
    for q in enumerate_monic(p, degree) {
        if is_irreducible(&q)? {
            return Ok(q);
        }
    }
    Err(Error::Internal(format!(
        "no monic irreducible of degree {degree} over F_{p}"
    )))
}

/// Smallest-degree monic nontrivial divisor (automatically irreducible),
/// found by trial division in enumeration order.
pub fn smallest_irreducible_factor(q: &Poly) -> Result<Poly> {
    let d = q.degree().ok_or(Error::DivisionByZero)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    for e in 1..=d {
        for g in enumerate_monic(q.prime(), e) {
            if q.rem(&g)?.is_zero() {
                return Ok(g);
            }
        }
    }
    unreachable!("every nonconstant polynomial has a monic divisor");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, text: &str) -> Poly {
        crate::text::parse_poly(p, text).unwrap()
    }

    #[test]
    fn divmod_hand_checked() {
        // (t^3 + t + 1) = t * (t^2 + 1) + 1 over F_2.
        let a = poly(2, "t^3+t+1");
        let b = poly(2, "t^2+1");
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, poly(2, "t"));
        assert_eq!(r, poly(2, "1"));
    }

    #[test]
    fn divmod_rejects_zero_divisor() {
        let a = poly(3, "t^2");
        assert_eq!(a.divmod(&Poly::zero(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_rejects_mixed_primes() {
        let a = poly(3, "t^2");
        let b = poly(2, "t");
        assert!(matches!(a.divmod(&b), Err(Error::PrimeMismatch(3, 2))));
    }

    #[test]
    fn gcd_hand_checked() {
        // gcd(t^2 + 1, t + 1) = t + 1 over F_2 since t^2+1 = (t+1)^2.
        let g = poly(2, "t^2+1").gcd(&poly(2, "t+1")).unwrap();
        assert_eq!(g, poly(2, "t+1"));
        assert_eq!(poly(2, "t^2+1").gcd(&Poly::zero(2)).unwrap(), poly(2, "t^2+1"));
        assert_eq!(Poly::zero(2).gcd(&Poly::zero(2)), Err(Error::GcdOfZeros));
    }

    #[test]
    fn profile_of_irreducible_quadratic() {
        let profile = distinct_degree_profile(&poly(2, "t^2+t+1")).unwrap();
        assert_eq!(profile.degree_multiset, BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn profile_of_split_quadratic() {
        // t^2 + t = t(t+1): two linear factors.
        let profile = distinct_degree_profile(&poly(2, "t^2+t")).unwrap();
        assert_eq!(profile.degree_multiset, BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn profile_counts_multiplicity() {
        // (t^2+t+1)^2 = t^4 + t^2 + 1 over F_2.
        let sq = poly(2, "t^2+t+1").mul(&poly(2, "t^2+t+1"));
        assert_eq!(sq, poly(2, "t^4+t^2+1"));
        let profile = distinct_degree_profile(&sq).unwrap();
        assert_eq!(profile.degree_multiset, BTreeMap::from([(2, 2)]));
    }

    #[test]
    fn profile_requires_monic() {
        let q = poly(3, "2*t^2+1");
        assert!(matches!(distinct_degree_profile(&q), Err(Error::NotMonic(_))));
    }

    #[test]
    fn lpf_examples() {
        assert_eq!(lpf(&poly(2, "t^2+t+1")).unwrap(), 4);
        assert_eq!(lpf(&poly(2, "t^3+t+1")).unwrap(), 8);
        // t * (t^2+t+1) has a linear factor, so lpf = 2.
        assert_eq!(lpf(&poly(2, "t^3+t^2+t")).unwrap(), 2);
    }

    #[test]
    fn lpf_multiplicative_min() {
        // lpf(Q1*Q2) = min(lpf(Q1), lpf(Q2)) on random monic pairs.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5] {
            for _ in 0..200 {
                let d1 = rng.gen_range(1..=4);
                let d2 = rng.gen_range(1..=4);
                let mut c1: Vec<u64> = (0..d1).map(|_| rng.gen_range(0..p)).collect();
                let mut c2: Vec<u64> = (0..d2).map(|_| rng.gen_range(0..p)).collect();
                c1.push(1);
                c2.push(1);
                let q1 = Poly::new(p, c1);
                let q2 = Poly::new(p, c2);
                let lhs = lpf(&q1.mul(&q2)).unwrap();
                let rhs = lpf(&q1).unwrap().min(lpf(&q2).unwrap());
                assert_eq!(lhs, rhs, "p={p} q1={q1} q2={q2}");
            }
        }
    }

    /// Full factorization degrees by trial division; the independent oracle
    /// for the distinct-degree profile.
    fn trial_division_profile(q: &Poly) -> BTreeMap<usize, usize> {
        let mut rest = q.clone();
        let mut out = BTreeMap::new();
        let mut e = 1;
        while rest.degree().unwrap_or(0) > 0 {
            for g in enumerate_monic(q.prime(), e) {
                while rest.rem(&g).unwrap().is_zero() {
                    rest = rest.divmod(&g).unwrap().0;
                    *out.entry(e).or_insert(0) += 1;
                }
            }
            e += 1;
        }
        out
    }

    #[test]
    fn profile_matches_trial_division_exhaustively() {
        // Exhaustive over every monic modulus in a budgeted range per prime.
        for (p, max_deg) in [(2u64, 8usize), (3, 6), (5, 4)] {
            for d in 1..=max_deg {
                for q in enumerate_monic(p, d) {
                    let fast = distinct_degree_profile(&q).unwrap().degree_multiset;
                    let slow = trial_division_profile(&q);
                    assert_eq!(fast, slow, "p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn profile_matches_trial_division_sampled_deep() {
        // Random deep samples at the degrees the exhaustive pass skips.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (p, deg) in [(3u64, 8usize), (5, 6), (5, 8), (13, 5)] {
            for _ in 0..60 {
                let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                c.push(1);
                let q = Poly::new(p, c);
                assert_eq!(
                    distinct_degree_profile(&q).unwrap().degree_multiset,
                    trial_division_profile(&q),
                    "p={p} q={q}"
                );
            }
        }
    }

    #[test]
    fn irreducibility_matches_oracle() {
        for (p, max_deg) in [(2u64, 6usize), (3, 4)] {
            for d in 1..=max_deg {
                for q in enumerate_monic(p, d) {
                    let slow = trial_division_profile(&q) == BTreeMap::from([(d, 1)]);
                    assert_eq!(is_irreducible(&q).unwrap(), slow, "p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let got: Vec<String> =
            enumerate_monic(2, 2).map(|q| q.to_string()).collect();
        assert_eq!(got, ["t^2", "t^2+1", "t^2+t", "t^2+t+1"]);
        let deg0: Vec<String> = enumerate_monic(3, 0).map(|q| q.to_string()).collect();
        assert_eq!(deg0, ["1"]);
        assert_eq!(enumerate_monic(5, 3).len(), 125);
    }

    #[test]
    fn first_irreducibles() {
        assert_eq!(first_irreducible(2, 2).unwrap(), poly(2, "t^2+t+1"));
        assert_eq!(first_irreducible(2, 1).unwrap(), poly(2, "t"));
        assert!(is_irreducible(&first_irreducible(3, 4).unwrap()).unwrap());
    }

    #[test]
    fn smallest_factor_is_irreducible_divisor() {
        let q = poly(2, "t^2+t+1").mul(&poly(2, "t^3+t+1"));
        let f = smallest_irreducible_factor(&q).unwrap();
        assert_eq!(f, poly(2, "t^2+t+1"));
        assert!(q.rem(&f).unwrap().is_zero());
    }

    #[test]
    fn derivative_and_pow_mod() {
        let f = poly(5, "t^3+2*t+1");
        assert_eq!(f.derivative(), poly(5, "3*t^2+2"));
        // t^(p^2) mod irreducible quadratic equals t (Frobenius order 2).
        let q = first_irreducible(5, 2).unwrap();
        let t = Poly::t(5);
        let frob2 = t.pow_mod(25, &q).unwrap();
        assert_eq!(frob2, t);
    }

    #[test]
    fn validate_prime_bounds() {
        assert!(validate_prime(2).is_ok());
        assert!(validate_prime(65521).is_ok());
        assert_eq!(validate_prime(1), Err(Error::BadPrime(1)));
        assert_eq!(validate_prime(4), Err(Error::BadPrime(4)));
        assert_eq!(validate_prime(65537), Err(Error::BadPrime(65537)));
    }
}
