//! Polynomials in an outer variable `y` with coefficients in `F_p[t]`.
//!
//! Every such polynomial splits uniquely as
//! `P(y) = a0 + sum_r eta_r(y^r)` over exponents `r` coprime to `p`, where
//! each `eta_r(z) = sum_j a_{r,j} z^{p^j}` is an *additive* polynomial
//! (an `F_p`-linear map on every quotient ring): write each exponent
//! `m = r * p^j` with `p` not dividing `r` and route the monomial to part
//! `r`, slot `j`.
//!
//! The *derivational degree* `d_deg(P)` is the maximum base-`p` digit sum of
//! the exponents present (constants have d-deg 0): it is the least `k` such
//! that all `(k+1)`-fold difference operators annihilate `P`, which is what
//! drives the exponent `2^{k-1}` in the character bound.

use crate::error::{Error, Result};
use crate::ffield::Poly;
use crate::quotient::{Residue, ResidueCtx};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Polynomial in `y` over `F_p[t]`, sparse in the exponent.
#[derive(Clone, PartialEq, Eq)]
pub struct YPoly {
    p: u64,
    /// exponent -> nonzero coefficient.
    terms: BTreeMap<u64, Poly>,
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YPoly(p={}, {})", self.p, crate::text::format_ypoly(self))
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_ypoly(self))
    }
}

/// An additive polynomial `sum_j a_j y^(p^j)` with `F_p[t]` coefficients,
/// stored by the `p`-power index `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct AdditivePart {
    pub p: u64,
    /// Slot `j` holds the coefficient of `y^(p^j)`; normalized (no trailing
    /// zero slots, empty = zero map).
    pub coeffs: Vec<Poly>,
}

impl fmt::Debug for AdditivePart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdditivePart(p={}, {})", self.p, self.to_ypoly())
    }
}

impl AdditivePart {
    pub fn new(p: u64, mut coeffs: Vec<Poly>) -> AdditivePart {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        AdditivePart { p, coeffs }
    }

    pub fn zero(p: u64) -> AdditivePart {
        AdditivePart { p, coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// View as a YPoly with exponents `p^j`.
    pub fn to_ypoly(&self) -> YPoly {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.push((self.p.pow(j as u32), c.clone()));
            }
        }
        YPoly::from_terms(self.p, terms)
    }

    /// Evaluate at a residue; additive maps evaluate termwise.
    pub fn eval(&self, y: &Residue) -> Result<Residue> {
        self.to_ypoly().eval_mod(y)
    }
}

impl YPoly {
    pub fn from_terms(p: u64, terms: Vec<(u64, Poly)>) -> YPoly {
        let mut map: BTreeMap<u64, Poly> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(c.prime(), p, "mixed base primes");
            let entry = map.remove(&m).map_or(c.clone(), |prev| prev.add(&c));
            if !entry.is_zero() {
                map.insert(m, entry);
            }
        }
        YPoly { p, terms: map }
    }

    pub fn zero(p: u64) -> YPoly {
        YPoly { p, terms: BTreeMap::new() }
    }

    /// The monomial `c * y^m`.
    pub fn monomial(p: u64, c: Poly, m: u64) -> YPoly {
        YPoly::from_terms(p, vec![(m, c)])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<u64, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    /// Degree in `y`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn constant_term(&self) -> Poly {
        self.terms.get(&0).cloned().unwrap_or_else(|| Poly::zero(self.p))
    }

    /// True when every coefficient lies in `F_p` (degree 0 in `t`).
    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_constant())
    }

    pub fn add(&self, other: &YPoly) -> YPoly {
        assert_eq!(self.p, other.p);
        let mut terms: Vec<(u64, Poly)> =
            self.terms.iter().map(|(&m, c)| (m, c.clone())).collect();
        terms.extend(other.terms.iter().map(|(&m, c)| (m, c.clone())));
        YPoly::from_terms(self.p, terms)
    }

    pub fn neg(&self) -> YPoly {
        YPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&m, c)| (m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &YPoly) -> YPoly {
        self.add(&other.neg())
    }

    /// Derivational degree: max base-p digit sum over exponents present;
    /// 0 for constants. `d_deg(y^(p^j)) = 1`, `d_deg(y^d) = digitsum_p(d)`.
    pub fn d_deg(&self) -> u32 {
        self.terms
            .keys()
            .filter(|&&m| m > 0)
            .map(|&m| digit_sum(m, self.p))
            .max()
            .unwrap_or(0)
    }

    /// Split into constant term and additive parts: `P = a0 + sum_r eta_r(y^r)`.
    pub fn decompose(&self) -> SeparableDecomposition {
        let mut a0 = Poly::zero(self.p);
        let mut parts: BTreeMap<u64, Vec<Poly>> = BTreeMap::new();
        for (&m, c) in &self.terms {
            if m == 0 {
                a0 = c.clone();
                continue;
            }
            let (r, j) = split_p_power(m, self.p);
            let slots = parts.entry(r).or_default();
            if slots.len() <= j {
                slots.resize(j + 1, Poly::zero(self.p));
            }
            slots[j] = slots[j].add(c);
        }
        let parts = parts
            .into_iter()
            .map(|(r, coeffs)| (r, AdditivePart::new(self.p, coeffs)))
            .filter(|(_, part)| !part.is_zero())
            .collect();
        SeparableDecomposition { p: self.p, a0, parts }
    }

    /// Horner evaluation at a residue, reducing coefficients into the ring.
    pub fn eval_mod(&self, y: &Residue) -> Result<Residue> {
        let ctx = y.ctx();
        if ctx.prime() != self.p {
            return Err(Error::PrimeMismatch(self.p, ctx.prime()));
        }
        let mut acc = ctx.zero();
        let mut prev_exp: Option<u64> = None;
        for (&m, c) in self.terms.iter().rev() {
            match prev_exp {
                None => {
                    acc = ctx.residue(c)?;
                }
                Some(prev) => {
                    acc = acc.mul(&pow_residue(y, prev - m)?)?.add(&ctx.residue(c)?)?;
                }
            }
            prev_exp = Some(m);
        }
        match prev_exp {
            None => Ok(ctx.zero()),
            Some(m) => acc.mul(&pow_residue(y, m)?),
        }
    }

    /// Index-space evaluation table over the full ring: `table[y] = P(y)`.
    pub fn eval_table(&self, ctx: &Arc<ResidueCtx>) -> Result<Vec<usize>> {
        if ctx.prime() != self.p {
            return Err(Error::PrimeMismatch(self.p, ctx.prime()));
        }
        (0..ctx.size())
            .map(|y| Ok(self.eval_mod(&ctx.residue_at(y))?.index()))
            .collect()
    }
}

pub(crate) fn pow_residue(y: &Residue, e: u64) -> Result<Residue> {
    let ctx = y.ctx();
    let mut acc = ctx.residue(&Poly::one(ctx.prime()))?;
    let mut base = y.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base)?;
        }
        base = base.mul(&base)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Base-p digit sum.
pub fn digit_sum(mut m: u64, p: u64) -> u32 {
    let mut s = 0;
    while m > 0 {
        s += (m % p) as u32;
        m /= p;
    }
    s
}

/// Write `m = r * p^j` with `p` not dividing `r`; returns `(r, j)`.
pub fn split_p_power(m: u64, p: u64) -> (u64, usize) {
    debug_assert!(m > 0);
    let mut r = m;
    let mut j = 0;
    while r.is_multiple_of(p) {
        r /= p;
        j += 1;
    }
    (r, j)
}

/// The separable decomposition `P(y) = a0 + sum_r eta_r(y^r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableDecomposition {
    pub p: u64,
    pub a0: Poly,
    /// `r -> eta_r`, keyed by the exponent coprime to `p`.
    pub parts: BTreeMap<u64, AdditivePart>,
}

impl SeparableDecomposition {
    /// Rebuild the original polynomial (exact inverse of `decompose`).
    pub fn reassemble(&self) -> YPoly {
        let mut terms = vec![(0u64, self.a0.clone())];
        for (&r, part) in &self.parts {
            for (j, c) in part.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((r * self.p.pow(j as u32), c.clone()));
                }
            }
        }
        YPoly::from_terms(self.p, terms)
    }

    /// True when `P - a0` is already separable: every part is a plain
    /// `c * y^r` with no higher Frobenius slots.
    pub fn is_separable(&self) -> bool {
        self.parts.values().all(|part| part.coeffs.len() <= 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::first_irreducible;
    use crate::naive;
    use crate::text::parse_ypoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ypoly(p: u64, text: &str) -> YPoly {
        parse_ypoly(p, text).unwrap()
    }

    fn ctx(p: u64, q: &str) -> Arc<ResidueCtx> {
        ResidueCtx::new(crate::text::parse_poly(p, q).unwrap()).unwrap()
    }

    #[test]
    fn d_deg_examples() {
        assert_eq!(ypoly(2, "y^2").d_deg(), 1); // p-th power
        assert_eq!(ypoly(3, "y^3").d_deg(), 1);
        assert_eq!(ypoly(2, "y^3").d_deg(), 2); // 3 = 11_2
        assert_eq!(ypoly(2, "y^6+y").d_deg(), 2); // 6 = 110_2
        assert_eq!(ypoly(3, "y^5").d_deg(), 3); // 5 = 12_3
        assert_eq!(ypoly(5, "t^2+1").d_deg(), 0); // constant in y
        assert_eq!(YPoly::zero(5).d_deg(), 0);
    }

    #[test]
    fn decompose_routes_exponents() {
        // p = 3: y^9 + y^6 - y -> part r=1: y^9 - y, part r=2: y^3.
        let p = ypoly(3, "y^9+y^6-y");
        let d = p.decompose();
        assert!(d.a0.is_zero());
        assert_eq!(d.parts.len(), 2);
        let part1 = &d.parts[&1];
        assert_eq!(part1.to_ypoly(), ypoly(3, "y^9-y"));
        let part2 = &d.parts[&2];
        assert_eq!(part2.to_ypoly(), ypoly(3, "y^3"));
    }

    #[test]
    fn decompose_collapses_characteristic_two() {
        // Over p=2 the exponents 4 = p^2 and 2 = p both route to r=1, so
        // y^4 + y^2 is a single additive part.
        let p = ypoly(2, "y^4+y^2");
        let d = p.decompose();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[&1].to_ypoly(), ypoly(2, "y^4+y^2"));
        // And y^4 + y^4 - y = -y = y collapses before decomposition.
        let q = ypoly(2, "y^4 + y^4 - y");
        assert_eq!(q, ypoly(2, "y"));
    }

    #[test]
    fn decompose_reassembles_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in [2u64, 3, 5] {
            for _ in 0..300 {
                let nterms = rng.gen_range(1..=5);
                let terms: Vec<(u64, Poly)> = (0..nterms)
                    .map(|_| {
                        let m = rng.gen_range(0..=12u64);
                        let c = Poly::new(
                            p,
                            (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..p)).collect(),
                        );
                        (m, c)
                    })
                    .collect();
                let poly = YPoly::from_terms(p, terms);
                assert_eq!(poly.decompose().reassemble(), poly);
            }
        }
    }

    #[test]
    fn additive_parts_are_additive_on_small_rings() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for (p, qdeg) in [(2u64, 4usize), (3, 3)] {
            let c = ResidueCtx::new(first_irreducible(p, qdeg).unwrap()).unwrap();
            for _ in 0..4 {
                let nterms = rng.gen_range(1..=4);
                let terms: Vec<(u64, Poly)> = (0..nterms)
                    .map(|_| (rng.gen_range(1..=10u64), Poly::constant(p, rng.gen_range(1..p))))
                    .collect();
                let poly = YPoly::from_terms(p, terms);
                for (_, part) in poly.decompose().parts {
                    for a in 0..c.size() {
                        for b in 0..c.size() {
                            let ra = c.residue_at(a);
                            let rb = c.residue_at(b);
                            let lhs = part.eval(&ra.add(&rb).unwrap()).unwrap();
                            let rhs = part.eval(&ra).unwrap().add(&part.eval(&rb).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        // Identity map.
        let c = ctx(2, "t^2");
        let id = ypoly(2, "y");
        for i in 0..c.size() {
            assert_eq!(id.eval_mod(&c.residue_at(i)).unwrap().index(), i);
        }
        // y^2 at y = t over F_2[t]/(t^2) is 0.
        let sq = ypoly(2, "y^2");
        let t = c.residue(&Poly::t(2)).unwrap();
        assert!(sq.eval_mod(&t).unwrap().is_zero());
        // Coefficients reduce into the ring: (t^2)*y over F_2[t]/(t^2) is 0.
        let z = ypoly(2, "(t^2)*y");
        for i in 0..c.size() {
            assert!(z.eval_mod(&c.residue_at(i)).unwrap().is_zero());
        }
    }

    #[test]
    fn eval_rejects_mixed_primes() {
        let c = ctx(3, "t^2+1");
        let p2 = ypoly(2, "y^2");
        assert!(matches!(
            p2.eval_mod(&c.residue_at(1)),
            Err(Error::PrimeMismatch(2, 3))
        ));
    }

    #[test]
    fn d_deg_matches_difference_operators() {
        // k = d_deg(P): all (k+1)-fold differences vanish identically, and
        // some k-fold difference is nonzero, on a field large enough to
        // separate polynomials of this degree.
        let cases = [
            (2u64, "y^3", 3usize),      // F_8
            (2, "y^6+y", 4),            // F_16
            (2, "y^2", 3),
            (3, "y^5", 2),              // F_9
            (3, "y^9+y^6+2*y", 3),      // F_27
            (5, "y^2+y", 2),
        ];
        for (p, text, qdeg) in cases {
            let poly = ypoly(p, text);
            let c = ResidueCtx::new(first_irreducible(p, qdeg).unwrap()).unwrap();
            let k = poly.d_deg();
            assert!(
                naive::differences_vanish(&poly, &c, k + 1).unwrap(),
                "(k+1)-fold differences of {text} should vanish (p={p})"
            );
            if k > 0 {
                assert!(
                    !naive::differences_vanish(&poly, &c, k).unwrap(),
                    "{text} has a nonvanishing {k}-fold difference (p={p})"
                );
            }
        }
    }

    #[test]
    fn separability_detector() {
        assert!(ypoly(3, "y^2+2*y+1").decompose().is_separable());
        assert!(!ypoly(3, "y^3").decompose().is_separable());
        assert!(!ypoly(2, "y^6+y").decompose().is_separable()); // y^6 = (y^3)^2
    }
}
