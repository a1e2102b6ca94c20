//! `F_p`-linear subspaces of a quotient ring.
//!
//! The additive group of `F_p[t]/(Q)` is elementary abelian, so every
//! additive subgroup is an `F_p`-subspace and is represented here by a
//! reduced row-echelon basis of coefficient vectors. This is the finite home
//! of the image subgroups `H_Q` of polynomial maps, their annihilators under
//! the character pairing, and coset averages.

use crate::error::{Error, Result};
use crate::ffield::{FpElem, Poly};
use crate::quotient::{check_len, Residue, ResidueCtx};
use crate::ypoly::YPoly;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// An `F_p`-subspace of `F_p[t]/(Q)`, held as a reduced row-echelon basis of
/// digit vectors (entry `i` = coefficient of `t^i`). The basis is canonical:
/// two equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ctx: Arc<ResidueCtx>,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(Q={}, rank={})", self.ctx.modulus(), self.rank())
    }
}

impl fmt::Display for Subspace {
    /// One basis vector per line, in polynomial text form; `0` for the zero
    /// subspace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "0");
        }
        for (i, poly) in self.basis_polys().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{poly}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form over `F_p`; returns `(rows, pivot_columns)` with
/// zero rows dropped. Deterministic: pivots are chosen left to right.
fn rref(p: u64, mut rows: Vec<Vec<u64>>, width: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = FpElem { value: rows[rank][col] % p, p }
            .inv()
            .expect("pivot nonzero")
            .value;
        for v in rows[rank].iter_mut() {
            *v = (*v % p) * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_multiple_of(p) {
                let factor = rows[r][col] % p;
                // Indexes the pivot row and the target row of `rows` at once.
                #[allow(clippy::needless_range_loop)]
                for c in 0..width {
                    let sub = factor * rows[rank][c] % p;
                    rows[r][c] = (rows[r][c] % p + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

impl Subspace {
    fn from_digit_vectors(ctx: Arc<ResidueCtx>, vectors: Vec<Vec<u64>>) -> Subspace {
        let n = ctx.dim();
        let (basis, pivots) = rref(ctx.prime(), vectors, n);
        Subspace { ctx, basis, pivots }
    }

    pub fn zero(ctx: &Arc<ResidueCtx>) -> Subspace {
        Subspace { ctx: Arc::clone(ctx), basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ctx: &Arc<ResidueCtx>) -> Subspace {
        let n = ctx.dim();
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { ctx: Arc::clone(ctx), basis, pivots: (0..n).collect() }
    }

    pub fn ctx(&self) -> &Arc<ResidueCtx> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Number of elements, `p^rank`.
    pub fn size(&self) -> usize {
        (self.ctx.prime() as usize).pow(self.rank() as u32)
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ctx.dim()
    }

    pub fn basis_polys(&self) -> Vec<Poly> {
        self.basis
            .iter()
            .map(|v| Poly::new(self.ctx.prime(), v.clone()))
            .collect()
    }

    /// Reduce a digit vector by the basis; membership means zero remainder.
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.ctx.prime();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            let factor = v[col] % p;
            if factor != 0 {
                for (vi, &ri) in v.iter_mut().zip(row) {
                    *vi = (*vi % p + p - factor * ri % p) % p;
                }
            }
        }
        v
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.reduce(self.ctx.digits(idx)).iter().all(|&d| d == 0)
    }

    pub fn contains(&self, r: &Residue) -> Result<bool> {
        if r.ctx() != &self.ctx {
            return Err(Error::ContextMismatch(
                self.ctx.modulus().to_string(),
                r.ctx().modulus().to_string(),
            ));
        }
        Ok(self.contains_index(r.index()))
    }

    /// A membership mask over the whole ring, built from the `p^rank`
    /// elements rather than testing every residue.
    pub fn membership_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.ctx.size()];
        for idx in self.enumerate() {
            mask[idx] = true;
        }
        mask
    }

    /// All element indices, ascending. Cost `O(p^rank * rank)`.
    pub fn enumerate(&self) -> Vec<usize> {
        let p = self.ctx.prime();
        let basis_idx: Vec<usize> = self
            .basis
            .iter()
            .map(|v| digits_to_index(p, v))
            .collect();
        let mut out = Vec::with_capacity(self.size());
        let mut stack = vec![0usize];
        for &b in &basis_idx {
            let mut next = Vec::with_capacity(stack.len() * p as usize);
            let mut shift = 0usize;
            for c in 0..p {
                if c > 0 {
                    shift = self.ctx.add_idx(shift, b);
                }
                next.extend(stack.iter().map(|&x| self.ctx.add_idx(x, shift)));
            }
            stack = next;
        }
        out.extend(stack);
        out.sort_unstable();
        out
    }

    /// The subspace `{s : pair(s, z) = 0 for all z in self}`: the nullspace
    /// of the system whose rows are `G*z` for basis vectors `z`.
    pub fn annihilator(&self) -> Subspace {
        let p = self.ctx.prime();
        let n = self.ctx.dim();
        let constraint_rows: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|z| self.ctx.pair_row(digits_to_index(p, z)))
            .collect();
        let (reduced, pivots) = rref(p, constraint_rows, n);
        // Free columns parameterize the nullspace: x_free = 1, pivot entries
        // read off the reduced rows with a sign flip.
        let mut vectors = Vec::new();
        for free in 0..n {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = (p - row[free] % p) % p;
            }
            vectors.push(v);
        }
        Subspace::from_digit_vectors(Arc::clone(&self.ctx), vectors)
    }

    /// True when every element of `other` lies in `self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ctx == other.ctx
            && other
                .basis
                .iter()
                .all(|v| self.reduce(v.clone()).iter().all(|&d| d == 0))
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(
                self.ctx.modulus().to_string(),
                other.ctx.modulus().to_string(),
            ));
        }
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Subspace::from_digit_vectors(Arc::clone(&self.ctx), vectors))
    }
}

fn digits_to_index(p: u64, digits: &[u64]) -> usize {
    let mut idx = 0usize;
    for &d in digits.iter().rev() {
        idx = idx * p as usize + (d % p) as usize;
    }
    idx
}

/// Span of a list of residues (the subgroup they generate: in a `p`-torsion
/// group that is exactly the `F_p`-span).
pub fn span(ctx: &Arc<ResidueCtx>, vectors: &[Residue]) -> Result<Subspace> {
    let mut digit_rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.ctx() != ctx {
            return Err(Error::ContextMismatch(
                ctx.modulus().to_string(),
                v.ctx().modulus().to_string(),
            ));
        }
        digit_rows.push(ctx.digits(v.index()));
    }
    Ok(Subspace::from_digit_vectors(Arc::clone(ctx), digit_rows))
}

/// Span of a set of ring indices.
pub fn span_indices(ctx: &Arc<ResidueCtx>, indices: &[usize]) -> Subspace {
    let rows = indices.iter().map(|&i| ctx.digits(i)).collect();
    Subspace::from_digit_vectors(Arc::clone(ctx), rows)
}

/// The difference subgroup `span{P(y) - P(0) : y in F_p[t]/(Q)}`, computed
/// by full enumeration of `y`. This is the group the pattern-counting
/// results quantify over.
pub fn image_subgroup(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<Subspace> {
    let table = poly.eval_table(ctx)?;
    let a0 = table[0];
    let shifted: Vec<usize> = table.iter().map(|&v| ctx.sub_idx(v, a0)).collect();
    Ok(span_indices(ctx, &shifted))
}

/// The parts subgroup `H_Q = sum_i eta_i(F_p[t]/(Q))` over the additive
/// parts of the separable decomposition — the group the discrepancy operator
/// projects onto. Each part is `F_p`-linear, so its image is the span of its
/// values on the monomial basis `t^j`.
///
/// Always contains [`image_subgroup`]; strictly larger in general. Example:
/// `P = y^3` over the four-element field has `{y^3} = {0, 1}` (the cube map
/// is the norm), but its single additive part is the identity, whose image
/// is the whole field.
pub fn parts_image_subgroup(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<Subspace> {
    if ctx.prime() != poly.prime() {
        return Err(Error::PrimeMismatch(poly.prime(), ctx.prime()));
    }
    let mut total = Subspace::zero(ctx);
    for part in poly.decompose().parts.values() {
        let basis_images: Vec<usize> = (0..ctx.dim())
            .map(|j| {
                let tj = ctx.residue(&Poly::monomial(ctx.prime(), 1, j))?;
                Ok(part.eval(&tj)?.index())
            })
            .collect::<Result<Vec<_>>>()?;
        total = total.sum(&span_indices(ctx, &basis_images))?;
    }
    Ok(total)
}

/// `E_{z in H} f(shift + z)`, enumerating `H` from its basis.
pub fn coset_average(f: &[Complex64], subspace: &Subspace, shift: &Residue) -> Result<Complex64> {
    let ctx = subspace.ctx();
    if shift.ctx() != ctx {
        return Err(Error::ContextMismatch(
            ctx.modulus().to_string(),
            shift.ctx().modulus().to_string(),
        ));
    }
    check_len(ctx, f)?;
    let base = shift.index();
    let mut acc = Complex64::new(0.0, 0.0);
    let elements = subspace.enumerate();
    for &z in &elements {
        acc += f[ctx.add_idx(base, z)];
    }
    Ok(acc / elements.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{enumerate_monic_range, first_irreducible};
    use crate::quotient::unity;
    use crate::text::{parse_poly, parse_ypoly};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn ctx(p: u64, q: &str) -> Arc<ResidueCtx> {
        ResidueCtx::new(parse_poly(p, q).unwrap()).unwrap()
    }

    #[test]
    fn span_examples() {
        let c = ctx(2, "t^2");
        assert_eq!(span(&c, &[]).unwrap().rank(), 0);
        assert_eq!(span(&c, &[]).unwrap().size(), 1);

        let one = c.residue(&Poly::one(2)).unwrap();
        let h = span(&c, std::slice::from_ref(&one)).unwrap();
        assert_eq!(h.rank(), 1);
        assert_eq!(h.enumerate(), vec![0, c.index_of(&Poly::one(2))]);

        let t = c.residue(&Poly::t(2)).unwrap();
        let one_t = one.add(&t).unwrap();
        let full = span(&c, &[one, t, one_t]).unwrap();
        assert_eq!(full.rank(), 2);
        assert!(full.is_full());
        assert_eq!(full.enumerate(), (0..4).collect::<Vec<_>>());
    }

    #[test]
    fn span_rejects_context_mismatch() {
        let c1 = ctx(2, "t^2");
        let c2 = ctx(2, "t^2+t");
        let r = c2.residue(&Poly::one(2)).unwrap();
        assert!(matches!(
            span(&c1, &[r]),
            Err(Error::ContextMismatch(_, _))
        ));
    }

    #[test]
    fn rref_basis_is_canonical() {
        let c = ctx(3, "t^3");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let idxs: Vec<usize> = (0..3).map(|_| rng.gen_range(0..c.size())).collect();
            let a = span_indices(&c, &idxs);
            let mut shuffled = idxs.clone();
            shuffled.reverse();
            // Adding redundant combinations must not change the basis.
            shuffled.push(c.add_idx(idxs[0], idxs[1]));
            let b = span_indices(&c, &shuffled);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn image_subgroup_examples() {
        // P = y: full ring, for any ctx.
        let c = ctx(2, "t^3+t+1");
        let h = image_subgroup(&parse_ypoly(2, "y").unwrap(), &c).unwrap();
        assert!(h.is_full());

        // P = y^2 over Q = t^2, p = 2: (a+bt)^2 = a mod t^2, image {0, 1}.
        let c = ctx(2, "t^2");
        let h = image_subgroup(&parse_ypoly(2, "y^2").unwrap(), &c).unwrap();
        assert_eq!(h.size(), 2);
        assert_eq!(h.enumerate(), vec![0, c.index_of(&Poly::one(2))]);

        // A constant shift never changes the image subgroup.
        let h2 = image_subgroup(&parse_ypoly(2, "y^2 + t").unwrap(), &c).unwrap();
        assert_eq!(h, h2);
    }

    #[test]
    fn good_polynomial_fills_ring_for_large_lpf() {
        // P = y^{p^2} + y^{2p} - y has degree p^2 and derivational degree 2;
        // once lpf(Q) exceeds p^4 the character bound forces H_Q to be the
        // whole ring. Irreducible Q of degree 5 is comfortably past that for
        // p = 2 and within reach for p = 3.
        for p in [2u64, 3] {
            let poly = parse_ypoly(p, &format!("y^{} + y^{} - y", p * p, 2 * p)).unwrap();
            let q = first_irreducible(p, 5).unwrap();
            let c = ResidueCtx::new(q).unwrap();
            let h = image_subgroup(&poly, &c).unwrap();
            assert!(h.is_full(), "p={p}");
        }
    }

    #[test]
    fn parts_image_from_basis_matches_full_enumeration() {
        // An additive part is F_p-linear, so its image over the ring equals
        // the span of its values on the monomial basis; check the shortcut
        // against brute force for every monic modulus of degree <= 3.
        let family = ["y^3", "y^5", "y^6+y", "y^4+y^2+y", "y^2+y", "(t+1)*y^4+(t^2)*y"];
        for p in [2u64, 3] {
            for text in family {
                let poly = parse_ypoly(p, text).unwrap();
                for q in enumerate_monic_range(p, 1, 3) {
                    let c = ResidueCtx::new(q).unwrap();
                    let fast = parts_image_subgroup(&poly, &c).unwrap();
                    let mut slow = Subspace::zero(&c);
                    for part in poly.decompose().parts.values() {
                        let image: Vec<usize> = (0..c.size())
                            .map(|x| part.eval(&c.residue_at(x)).unwrap().index())
                            .collect();
                        slow = slow.sum(&span_indices(&c, &image)).unwrap();
                    }
                    assert_eq!(fast, slow, "p={p} P={text} Q={}", c.modulus());
                }
            }
        }
    }

    #[test]
    fn difference_subgroup_sits_inside_parts_subgroup() {
        // The differences P(y) - P(0) lie in the sum of the part images, so
        // one span contains the other; they coincide when P - P(0) is
        // additive but can differ otherwise.
        let family = ["y^3", "y^5", "y^6+y", "y^4+y^2+y", "y^2+y", "y+t"];
        for p in [2u64, 3] {
            for text in family {
                let poly = parse_ypoly(p, text).unwrap();
                for q in enumerate_monic_range(p, 1, 3) {
                    let c = ResidueCtx::new(q).unwrap();
                    let diff = image_subgroup(&poly, &c).unwrap();
                    let parts = parts_image_subgroup(&poly, &c).unwrap();
                    assert!(
                        parts.contains_subspace(&diff),
                        "p={p} P={text} Q={}",
                        c.modulus()
                    );
                    let additive = poly.decompose().parts.keys().all(|&r| r == 1);
                    if additive {
                        assert_eq!(diff, parts, "p={p} P={text} Q={}", c.modulus());
                    }
                }
            }
        }

        // Strictness witness: cubes in the four-element field form the norm
        // image {0, 1}, while the lone additive part of y^3 is the identity.
        let c = ctx(2, "t^2+t+1");
        let cubes = parse_ypoly(2, "y^3").unwrap();
        assert_eq!(image_subgroup(&cubes, &c).unwrap().rank(), 1);
        assert!(parts_image_subgroup(&cubes, &c).unwrap().is_full());
    }

    #[test]
    fn annihilator_examples_and_duality() {
        let c = ctx(2, "t^2");
        assert_eq!(Subspace::full(&c).annihilator().rank(), 0);
        assert!(Subspace::zero(&c).annihilator().is_full());

        // Rank-1 subspaces pair off, sizes multiplying to |Q|.
        for idx in 1..c.size() {
            let h = span_indices(&c, &[idx]);
            let ann = h.annihilator();
            assert_eq!(h.size() * ann.size(), c.size());
            // Oracle: brute-force scan of all s.
            let want: BTreeSet<usize> = (0..c.size())
                .filter(|&s| h.enumerate().iter().all(|&z| c.pair_idx(s, z) == 0))
                .collect();
            let got: BTreeSet<usize> = ann.enumerate().into_iter().collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn annihilator_duality_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, q) in [(2u64, "t^4+t+1"), (3, "t^3+2*t+1"), (5, "t^2")] {
            let c = ctx(p, q);
            for _ in 0..25 {
                let k = rng.gen_range(0..=c.dim());
                let idxs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..c.size())).collect();
                let h = span_indices(&c, &idxs);
                let ann = h.annihilator();
                assert_eq!(h.size() * ann.size(), c.size(), "p={p} Q={q}");
                assert_eq!(ann.annihilator(), h, "p={p} Q={q}");
                // Every pair (z, s) really annihilates.
                for &z in h.enumerate().iter() {
                    for &s in ann.enumerate().iter() {
                        assert_eq!(c.pair_idx(s, z), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn coset_average_examples() {
        let c = ctx(3, "t^2");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f: Vec<Complex64> = (0..c.size())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();

        // H = {0}: the average is a point evaluation.
        let zero_sub = Subspace::zero(&c);
        for x in 0..c.size() {
            let got = coset_average(&f, &zero_sub, &c.residue_at(x)).unwrap();
            assert_eq!(got, f[x]);
        }

        // H = full ring: the global mean, independent of the shift.
        let mean: Complex64 = f.iter().sum::<Complex64>() / c.size() as f64;
        let full = Subspace::full(&c);
        for x in 0..c.size() {
            let got = coset_average(&f, &full, &c.residue_at(x)).unwrap();
            assert!((got - mean).norm() < 1e-12);
        }

        // f a character nontrivial on H averages to zero over each coset.
        let h = span_indices(&c, &[c.index_of(&Poly::one(3))]);
        let s = c.index_of(&Poly::t(3)); // pair(t, 1) != 0 over Q = t^2
        assert!(h.enumerate().iter().any(|&z| c.pair_idx(s, z) != 0));
        let chi: Vec<Complex64> = (0..c.size()).map(|x| unity(3, c.pair_idx(s, x))).collect();
        for x in 0..c.size() {
            let got = coset_average(&chi, &h, &c.residue_at(x)).unwrap();
            assert!(got.norm() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn serialization_lists_basis_lines() {
        let c = ctx(2, "t^3");
        let h = span_indices(&c, &[3, 4]); // t+1 and t^2
        let text = h.to_string();
        assert_eq!(text, "t+1\nt^2");
        assert_eq!(Subspace::zero(&c).to_string(), "0");
    }
}
