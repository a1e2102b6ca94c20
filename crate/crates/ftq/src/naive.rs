//! Deliberately slow reference implementations.
//!
//! Everything here trades speed for obviousness: direct definitions, double
//! and triple loops, full subset enumeration. The unit tests and benches
//! compare the production code paths against these on small rings; none of
//! this module should be called from the fast paths.

use crate::error::Result;
use crate::ffield::Poly;
use crate::quotient::{unity, ResidueCtx, UnityExponent};
use crate::ypoly::YPoly;
use num_complex::Complex64;
use std::collections::BTreeSet;
use std::sync::Arc;

/// The pairing computed straight from its definition: `e(sx/Q)` is the fixed
/// character of `F_p` applied to the coefficient of `t^(-1)` in the Laurent
/// expansion of `s*x / Q`, and that coefficient is the constant term of
/// `(t * s * x) div Q`. No reduction mod `Q` and no Gram matrix involved.
pub fn laurent_pairing(ctx: &ResidueCtx, s: usize, x: usize) -> UnityExponent {
    let p = ctx.prime();
    let product = ctx.poly_at(s).mul(&ctx.poly_at(x));
    let shifted = Poly::t(p).mul(&product);
    let (quot, _) = shifted.divmod(ctx.modulus()).expect("monic modulus");
    UnityExponent { value: quot.coeff(0).value, p }
}

/// `O(|Q|^2)` Fourier transform by the defining double sum,
/// `fhat(s) = (1/|Q|) * sum_x f(x) * e(-sx/Q)`, using the Laurent pairing.
pub fn naive_transform(ctx: &ResidueCtx, f: &[Complex64]) -> Vec<Complex64> {
    let q = ctx.size();
    let p = ctx.prime();
    (0..q)
        .map(|s| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, &fx) in f.iter().enumerate() {
                let e = laurent_pairing(ctx, s, x);
                acc += fx * unity(p, (p - e.value % p) % p);
            }
            acc / q as f64
        })
        .collect()
}

/// `O(|Q|^2)` inverse transform, `f(x) = sum_s fhat(s) * e(sx/Q)`.
pub fn naive_inverse(ctx: &ResidueCtx, fhat: &[Complex64]) -> Vec<Complex64> {
    let q = ctx.size();
    (0..q)
        .map(|x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (s, &fs) in fhat.iter().enumerate() {
                acc += fs * laurent_pairing(ctx, s, x).to_complex();
            }
            acc
        })
        .collect()
}

/// Mean of `e(s * P(y) / Q)` over the whole ring by direct complex
/// summation, given the evaluation table of `P`.
pub fn char_sum_direct(ctx: &ResidueCtx, s: usize, table: &[usize]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &v in table {
        acc += laurent_pairing(ctx, s, v).to_complex();
    }
    acc / table.len() as f64
}

/// True iff every `k`-fold difference of `P` vanishes identically on the
/// ring: for all shifts `h_1..h_k` and all `y`,
/// `D_{h_1} ... D_{h_k} P(y) = 0` where `D_h f(y) = f(y+h) - f(y)`.
/// Cost `O(|Q|^(k+1))`.
pub fn differences_vanish(poly: &YPoly, ctx: &Arc<ResidueCtx>, k: u32) -> Result<bool> {
    let table = poly.eval_table(ctx)?;
    Ok(vanish_rec(ctx, &table, k))
}

fn vanish_rec(ctx: &ResidueCtx, table: &[usize], k: u32) -> bool {
    if k == 0 {
        // Index 0 is the zero residue.
        return table.iter().all(|&v| v == 0);
    }
    for h in 0..ctx.size() {
        let diff: Vec<usize> = (0..table.len())
            .map(|y| ctx.sub_idx(table[ctx.add_idx(y, h)], table[y]))
            .collect();
        if !vanish_rec(ctx, &diff, k - 1) {
            return false;
        }
    }
    true
}

/// Count pairs `(x, y)` with `x` in `A`, `y` ranging over the whole ring,
/// and `x + table[y]` in `B`, by the defining double loop. `table` is the
/// evaluation table of the pattern polynomial.
pub fn count_patterns_direct(
    ctx: &ResidueCtx,
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
    table: &[usize],
) -> u64 {
    let q = ctx.size();
    assert_eq!(table.len(), q);
    let mut count = 0;
    for &x in a {
        for &v in table {
            if b.contains(&ctx.add_idx(x, v)) {
                count += 1;
            }
        }
    }
    count
}

/// Additive subgroup generated by the images of the additive part maps of
/// `poly`, by direct expansion: group the nonconstant terms by separable
/// core `m` (exponent = m * p^e), evaluate each part map
/// `eta(z) = sum c_j z^{p^{e_j}}` over every residue `z`, then close the set
/// of values under addition. Independent of the production span code.
pub fn parts_sumset(poly: &YPoly, ctx: &ResidueCtx) -> Result<BTreeSet<usize>> {
    let p = ctx.prime();
    let q = ctx.size();
    let mut parts: std::collections::BTreeMap<u64, Vec<(u64, Poly)>> =
        std::collections::BTreeMap::new();
    for (&exp, coeff) in poly.terms() {
        if exp == 0 || coeff.is_zero() {
            continue;
        }
        let (core, e) = crate::ypoly::split_p_power(exp, p);
        parts
            .entry(core)
            .or_default()
            .push((p.pow(e as u32), coeff.clone()));
    }
    let mut gens: BTreeSet<usize> = BTreeSet::new();
    for frob_terms in parts.values() {
        for z in 0..q {
            let zv = ctx.poly_at(z);
            let mut acc = Poly::zero(p);
            for (frob, coeff) in frob_terms {
                let power = zv.pow_mod(*frob, ctx.modulus())?;
                acc = acc.add(&coeff.mul(&power));
            }
            gens.insert(ctx.index_of(&acc.rem(ctx.modulus())?));
        }
    }
    let mut reachable: BTreeSet<usize> = BTreeSet::new();
    reachable.insert(0);
    loop {
        let mut grew = false;
        let snapshot: Vec<usize> = reachable.iter().copied().collect();
        for &r in &snapshot {
            for &g in &gens {
                if reachable.insert(ctx.add_idx(r, g)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(reachable);
        }
    }
}

/// Count triples `(y1, y2, y3)` over the full ring with
/// `P1(y1) + P2(y2) + P3(y3) = c`, given the three evaluation tables.
pub fn solve3_direct(ctx: &ResidueCtx, t1: &[usize], t2: &[usize], t3: &[usize], c: usize) -> u64 {
    let mut count = 0;
    for &v1 in t1 {
        for &v2 in t2 {
            let partial = ctx.add_idx(v1, v2);
            for &v3 in t3 {
                if ctx.add_idx(partial, v3) == c {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Count triples `(x, y, z)` lying in a single color class with
/// `P(x) - P(y) - R(z) = c`, summed over all classes of the coloring.
pub fn mono_direct(
    ctx: &ResidueCtx,
    p_table: &[usize],
    r_table: &[usize],
    coloring: &[u8],
    c: usize,
) -> u64 {
    let q = ctx.size();
    assert_eq!(coloring.len(), q);
    let mut count = 0;
    for x in 0..q {
        for y in 0..q {
            if coloring[x] != coloring[y] {
                continue;
            }
            let lhs = ctx.sub_idx(p_table[x], p_table[y]);
            for z in 0..q {
                if coloring[z] == coloring[x] && ctx.sub_idx(lhs, r_table[z]) == c {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Exact maximum size of a subset of the ring avoiding every difference in
/// `forbidden`, by enumerating all `2^|Q|` subsets. Only usable for tiny
/// rings (`|Q| <= ~20`).
pub fn max_free_set_subsets(ctx: &ResidueCtx, forbidden: &BTreeSet<usize>) -> u64 {
    let q = ctx.size();
    assert!(q <= 20, "subset enumeration needs a tiny ring");
    // adj[x] = bitmask of y with x - y or y - x forbidden.
    let adj: Vec<u32> = (0..q)
        .map(|x| {
            let mut mask = 0u32;
            for y in 0..q {
                if forbidden.contains(&ctx.sub_idx(x, y)) || forbidden.contains(&ctx.sub_idx(y, x))
                {
                    mask |= 1 << y;
                }
            }
            mask
        })
        .collect();
    let mut best = 0u64;
    for mask in 0u32..(1u32 << q) {
        if u64::from(mask.count_ones()) <= best {
            continue;
        }
        let mut ok = true;
        let mut rest = mask;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[x] & mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = u64::from(mask.count_ones());
        }
    }
    best
}
