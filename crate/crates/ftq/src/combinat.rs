//! Combinatorial counting and search over quotient rings: intersectivity
//! probing, difference-pattern counts, maximum pattern-free sets, three-term
//! solution counts with their exact main term, and monochromatic solution
//! counts under colorings.
//!
//! All counts are integers produced by histogram convolutions through the
//! fast transform; the float accumulation is rounded at the end and any
//! residue beyond rounding noise is reported as an internal error rather
//! than silently truncated. Every counting operation also returns the exact
//! per-instance deviation bound coming from the character-sum analysis, so a
//! caller can check the structural inequality on the spot.

use crate::error::{Error, Result};
use crate::ffield::{enumerate_monic, first_irreducible, is_irreducible, Poly};
use crate::quotient::{fourier_transform, inverse_transform, Residue, ResidueCtx};
use crate::subgroup::{image_subgroup, parts_image_subgroup};
use crate::ypoly::YPoly;
use num_complex::Complex64;
use std::collections::BTreeSet;
use std::sync::Arc;

/// A total coloring of a quotient ring: every residue index carries a color
/// in `0..num_colors()`.
#[derive(Debug, Clone)]
pub struct Coloring {
    ctx: Arc<ResidueCtx>,
    classes: Vec<u8>,
}

impl Coloring {
    /// Wrap an explicit class table; `classes[i]` is the color of the
    /// residue with index `i`, and the number of colors is the largest
    /// entry plus one.
    pub fn new(ctx: &Arc<ResidueCtx>, classes: Vec<u8>) -> Result<Coloring> {
        if classes.len() != ctx.size() {
            return Err(Error::Precondition(format!(
                "coloring must assign all {} residues, got {} entries",
                ctx.size(),
                classes.len()
            )));
        }
        Ok(Coloring { ctx: Arc::clone(ctx), classes })
    }

    /// The one-class coloring.
    pub fn single(ctx: &Arc<ResidueCtx>) -> Coloring {
        Coloring { ctx: Arc::clone(ctx), classes: vec![0; ctx.size()] }
    }

    pub fn ctx(&self) -> &Arc<ResidueCtx> {
        &self.ctx
    }

    pub fn classes(&self) -> &[u8] {
        &self.classes
    }

    pub fn class_of(&self, idx: usize) -> u8 {
        self.classes[idx]
    }

    pub fn num_colors(&self) -> usize {
        self.classes.iter().copied().max().unwrap_or(0) as usize + 1
    }

    /// Residue indices of one color class, in index order.
    pub fn members(&self, color: u8) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| self.classes[i] == color).collect()
    }

    /// Parse `residue,color` lines (an optional `residue,color` header is
    /// skipped). Every residue of the ring must appear exactly once.
    pub fn from_csv(ctx: &Arc<ResidueCtx>, text: &str) -> Result<Coloring> {
        let mut classes: Vec<Option<u8>> = vec![None; ctx.size()];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || (lineno == 0 && line == "residue,color") {
                continue;
            }
            let (lhs, rhs) = line.rsplit_once(',').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `residue,color`", lineno + 1))
            })?;
            let rep = crate::text::parse_poly(ctx.prime(), lhs.trim())?;
            let idx = ctx.index_of(&rep.rem(ctx.modulus())?);
            let color: u8 = rhs.trim().parse().map_err(|_| {
                Error::Parse(format!("line {}: bad color `{}`", lineno + 1, rhs.trim()))
            })?;
            if classes[idx].replace(color).is_some() {
                return Err(Error::Parse(format!(
                    "line {}: residue {} colored twice",
                    lineno + 1,
                    lhs.trim()
                )));
            }
        }
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    Error::Parse(format!("residue {} was never colored", i))
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Coloring { ctx: Arc::clone(ctx), classes })
    }

    /// Serialize as `residue,color` lines with a header, in index order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("residue,color\n");
        for (i, &c) in self.classes.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.ctx.poly_at(i), c));
        }
        out
    }
}

/// An exact integer count next to its structural prediction: `expected` is
/// the main term, `deviation = |count − expected|`, and `bound` is the
/// per-instance error bound produced by the character-sum analysis.
#[derive(Debug, Clone)]
pub struct PatternCount {
    pub count: u64,
    pub expected: f64,
    pub deviation: f64,
    pub bound: f64,
}

impl PatternCount {
    pub fn within_bound(&self, tol: f64) -> bool {
        self.deviation <= self.bound + tol
    }
}

/// Round a convolution accumulator to the integer it provably is; anything
/// beyond rounding noise means the transform identities were violated.
fn round_count(z: Complex64, what: &str) -> Result<u64> {
    let rounded = z.re.round();
    if z.im.abs() > 1e-6 || (z.re - rounded).abs() > 1e-6 || rounded < -0.5 {
        return Err(Error::Internal(format!(
            "{} accumulated to {} + {}i, not an integer",
            what, z.re, z.im
        )));
    }
    Ok(rounded as u64)
}

/// Decide whether `P` has a root modulo every prime-power modulus `Q^s` with
/// `Q` irreducible, `deg Q ≤ depth`, and `deg(Q^s) ≤ depth`. Roots modulo
/// prime powers give roots modulo every modulus of degree up to `depth` by
/// the Chinese remainder theorem (the reduction is exercised in the tests).
/// `P(0) = 0` short-circuits to `true`; otherwise the first failing modulus
/// in (degree, enumeration) order is returned as the witness.
pub fn is_intersective_upto(poly: &YPoly, depth: usize) -> Result<(bool, Option<Poly>)> {
    if depth < 1 {
        return Err(Error::Precondition(
            "intersectivity search depth must be at least 1".into(),
        ));
    }
    let p = poly.prime();
    if poly.constant_term().is_zero() {
        return Ok((true, None));
    }
    for deg in 1..=depth {
        for q in enumerate_monic(p, deg) {
            if !is_irreducible(&q)? {
                continue;
            }
            let mut modulus = q.clone();
            while modulus.degree().unwrap_or(0) <= depth {
                let ctx = ResidueCtx::new(modulus.clone())?;
                let table = poly.eval_table(&ctx)?;
                if !table.contains(&0) {
                    return Ok((false, Some(modulus)));
                }
                modulus = modulus.mul(&q);
            }
        }
    }
    Ok((true, None))
}

/// Count pairs `(x, y)` over the ring with `x ∈ A` and `x + P(y) ∈ B`, as the
/// convolution `Σ_x 1_A(x)·(1_B * μ_P)(x)` evaluated through three fast
/// transforms. `expected` is the equidistributed main term `|A||B|` and
/// `bound` is the Cauchy–Schwarz error bound
/// `|A|^{1/2}|B|^{1/2}·|Q|·max_{s≠0}|E_y e(s·P(y))|`; the max equals the
/// multiplier operator norm whenever the parts subgroup of `P` is the whole
/// ring, and upper-bounds it otherwise, so the inequality holds on every
/// instance.
pub fn count_patterns(
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
    poly: &YPoly,
    ctx: &Arc<ResidueCtx>,
) -> Result<PatternCount> {
    let q = ctx.size();
    if a.iter().chain(b.iter()).any(|&x| x >= q) {
        return Err(Error::Precondition(format!(
            "set element out of range for a ring of {} residues",
            q
        )));
    }
    let table = poly.eval_table(ctx)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut mu = vec![zero; q];
    for &v in &table {
        mu[v] += 1.0;
    }
    let ind = |set: &BTreeSet<usize>| -> Vec<Complex64> {
        let mut f = vec![zero; q];
        for &x in set {
            f[x] = Complex64::new(1.0, 0.0);
        }
        f
    };
    let a_hat = fourier_transform(ctx, &ind(a))?;
    let b_hat = fourier_transform(ctx, &ind(b))?;
    let mu_hat = fourier_transform(ctx, &mu)?;
    let mut acc = zero;
    let mut coeff = 0.0f64;
    for s in 0..q {
        acc += a_hat[s].conj() * b_hat[s] * mu_hat[s].conj();
        if s != 0 {
            coeff = coeff.max(mu_hat[s].norm());
        }
    }
    let qf = q as f64;
    let count = round_count(acc * qf * qf, "pattern count")?;
    let expected = (a.len() * b.len()) as f64;
    Ok(PatternCount {
        count,
        expected,
        deviation: (count as f64 - expected).abs(),
        bound: (a.len() as f64).sqrt() * (b.len() as f64).sqrt() * qf * coeff,
    })
}

/// The symmetrized forbidden-difference set `±(P(F[t]_Q) \ {0})`.
fn forbidden_differences(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<BTreeSet<usize>> {
    let table = poly.eval_table(ctx)?;
    let mut sym = BTreeSet::new();
    for &v in &table {
        if v != 0 {
            sym.insert(v);
            sym.insert(ctx.neg_idx(v));
        }
    }
    Ok(sym)
}

/// Greedy number of independent classes covering `rest` in the graph whose
/// adjacency is `adj`; a clique meets each class at most once.
fn coloring_bound(adj: &[u64], mut rest: u64) -> u32 {
    let mut classes = 0u32;
    while rest != 0 {
        classes += 1;
        let mut avail = rest;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            rest &= !(1u64 << v);
            avail &= !adj[v];
        }
    }
    classes
}

fn clique_expand(adj: &[u64], cand: u64, cur: u64, size: u32, best: &mut (u32, u64)) {
    if size + coloring_bound(adj, cand) <= best.0 {
        return;
    }
    let mut cand = cand;
    while cand != 0 {
        if size + cand.count_ones() <= best.0 {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let chosen = cur | (1u64 << v);
        if size + 1 > best.0 {
            *best = (size + 1, chosen);
        }
        let next = cand & adj[v];
        if next != 0 {
            clique_expand(adj, next, chosen, size + 1, best);
        }
    }
}

/// Exact maximum size of a set `A ⊆ F[t]_Q` containing no distinct `a, b`
/// with `b − a` a nonzero value of `P`, together with one attaining set.
/// This is a maximum independent set in the forbidden-difference graph,
/// found as a maximum clique in the complement via branch-and-bound with a
/// greedy coloring bound; the search is sequential and deterministic. Rings
/// larger than 64 elements must use [`greedy_free_set`].
pub fn max_free_set(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<(u64, BTreeSet<usize>)> {
    let q = ctx.size();
    if q > 64 {
        return Err(Error::RingTooLarge(q as u64, 64));
    }
    let sym = forbidden_differences(poly, ctx)?;
    let full: u64 = if q == 64 { !0 } else { (1u64 << q) - 1 };
    let mut comp = vec![0u64; q];
    for (x, row) in comp.iter_mut().enumerate() {
        let mut edges = 0u64;
        for &d in &sym {
            edges |= 1u64 << ctx.add_idx(x, d);
        }
        *row = full & !edges & !(1u64 << x);
    }
    let mut best = (0u32, 0u64);
    clique_expand(&comp, full, 0, 0, &mut best);
    if best.0 == 0 && q > 0 {
        // Complete forbidden graph: any single residue is optimal.
        best = (1, 1);
    }
    let set: BTreeSet<usize> = (0..q).filter(|&i| best.1 & (1u64 << i) != 0).collect();
    Ok((best.0 as u64, set))
}

/// Greedy lower bound for the maximum pattern-free set, scanning residues in
/// index order; works for rings of any size.
pub fn greedy_free_set(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<(u64, BTreeSet<usize>)> {
    let sym = forbidden_differences(poly, ctx)?;
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    for x in 0..ctx.size() {
        if chosen.iter().all(|&a| !sym.contains(&ctx.sub_idx(x, a))) {
            chosen.insert(x);
        }
    }
    Ok((chosen.len() as u64, chosen))
}

/// The structural upper bound for pattern-free sets,
/// `C·|Q|·lpf(Q)^{−1/2^{k−1}} + d·|Q|/lpf(Q)` with
/// `C = (p^{2⌊log_p d⌋}(k−1))^{1/2^{k−1}}`, where `d` is the degree and `k`
/// the derivational degree of `P`. Meaningful for `k ≥ 2`; for additive `P`
/// the first term degenerates to zero.
pub fn free_set_bound(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<f64> {
    if poly.is_constant() {
        return Err(Error::Precondition(
            "free-set bound requires a nonconstant polynomial".into(),
        ));
    }
    let p = ctx.prime();
    let d = poly.degree().expect("nonconstant polynomial has a degree");
    let k = poly.d_deg();
    let log_p_d = {
        let mut l = 0u32;
        let mut power = p;
        while power <= d {
            l += 1;
            power *= p;
        }
        l
    };
    let q = ctx.size() as f64;
    let lpf = ctx.lpf() as f64;
    let root = (2.0f64).powi(k as i32 - 1);
    let c = ((p as f64).powi(2 * log_p_d as i32) * (k as f64 - 1.0)).powf(1.0 / root);
    Ok(c * q * lpf.powf(-1.0 / root) + d as f64 * q / lpf)
}

/// Count triples `(y₁, y₂, y₃)` with `P₁(y₁) + P₂(y₂) + P₃(y₃) = c` by
/// convolving the three value histograms. Requires `Pᵢ(0) = 0`, which makes
/// every value land in the subgroup `H = H₁ + H₂ + H₃` spanned by the three
/// images. The returned flag says whether `c ∈ H`; the main term is
/// `|Q|³/|H|` exactly when it is and `0` (an exact count) otherwise, and the
/// bound is the exact tail `|Q|²·Σ_{s ∉ H^⊥} |ĥ₁ĥ₂ĥ₃(s)|`.
pub fn count_solutions_three(
    p1: &YPoly,
    p2: &YPoly,
    p3: &YPoly,
    c: &Residue,
    ctx: &Arc<ResidueCtx>,
) -> Result<(PatternCount, bool)> {
    if c.ctx() != ctx {
        return Err(Error::ContextMismatch(
            ctx.modulus().to_string(),
            c.ctx().modulus().to_string(),
        ));
    }
    let q = ctx.size();
    let zero = Complex64::new(0.0, 0.0);
    let mut hats = Vec::with_capacity(3);
    let mut subgroup = crate::subgroup::Subspace::zero(ctx);
    for poly in [p1, p2, p3] {
        let table = poly.eval_table(ctx)?;
        if table[0] != 0 {
            return Err(Error::Precondition(
                "three-term counting requires each polynomial to vanish at zero".into(),
            ));
        }
        let mut hist = vec![zero; q];
        for &v in &table {
            hist[v] += 1.0;
        }
        hats.push(fourier_transform(ctx, &hist)?);
        subgroup = subgroup.sum(&image_subgroup(poly, ctx)?)?;
    }
    let prod: Vec<Complex64> = (0..q).map(|s| hats[0][s] * hats[1][s] * hats[2][s]).collect();
    let qf = q as f64;
    let point = inverse_transform(ctx, &prod)?[c.index()];
    let count = round_count(point * qf * qf, "three-term solution count")?;
    let solvable = subgroup.contains_index(c.index());
    let expected = if solvable { qf * qf * qf / subgroup.size() as f64 } else { 0.0 };
    let annihilator = subgroup.annihilator().membership_mask();
    let bound: f64 = (0..q)
        .filter(|&s| !annihilator[s])
        .map(|s| prod[s].norm())
        .sum::<f64>()
        * qf
        * qf;
    let pattern = PatternCount {
        count,
        expected,
        deviation: (count as f64 - expected).abs(),
        bound,
    };
    Ok((pattern, solvable))
}

/// Count triples `(x, y, z)` lying in one color class with
/// `P(x) − P(y) = Qp(z)`, one histogram convolution per class.
pub fn monochromatic_count(coloring: &Coloring, p: &YPoly, qp: &YPoly) -> Result<u64> {
    let ctx = coloring.ctx();
    let q = ctx.size();
    let p_table = p.eval_table(ctx)?;
    let qp_table = qp.eval_table(ctx)?;
    let zero = Complex64::new(0.0, 0.0);
    let qf = q as f64;
    let mut total = 0u64;
    for color in 0..coloring.num_colors() {
        let members = coloring.members(color as u8);
        if members.is_empty() {
            continue;
        }
        let mut h1 = vec![zero; q];
        let mut h2 = vec![zero; q];
        let mut h3 = vec![zero; q];
        for &x in &members {
            h1[p_table[x]] += 1.0;
            h2[ctx.neg_idx(p_table[x])] += 1.0;
            h3[ctx.neg_idx(qp_table[x])] += 1.0;
        }
        let f1 = fourier_transform(ctx, &h1)?;
        let f2 = fourier_transform(ctx, &h2)?;
        let f3 = fourier_transform(ctx, &h3)?;
        let acc: Complex64 = (0..q).map(|s| f1[s] * f2[s] * f3[s]).sum();
        total += round_count(acc * qf * qf, "monochromatic count")?;
    }
    Ok(total)
}

/// Count monochromatic triples `(x, y, z)` with `P(x) + P(y) = P(z)`. The
/// substitution `(x, y, z) → (z, y, x)` turns these into solutions of
/// `P(x) − P(y) = P(z)` within the same class, so this is
/// [`monochromatic_count`] with the pattern polynomial on both sides.
pub fn schur_count(coloring: &Coloring, p: &YPoly) -> Result<u64> {
    monochromatic_count(coloring, p, p)
}

/// Test whether the constant term of `Qp` lies in the parts subgroup
/// `H = Σᵢ span(ηᵢ(F_{p^k}))` of the field with `p^k` elements, realized as
/// `F_p[t]` modulo the first irreducible of degree `k`. This is the
/// obstruction that decides solvability of `P(x) − P(y) = Qp(z)` over
/// growing fields: when the constant escapes `H`, no solutions exist at all.
pub fn check_constant_condition(qp: &YPoly, k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::Precondition("field exponent k must be at least 1".into()));
    }
    if !qp.has_constant_coefficients() {
        return Err(Error::Precondition(
            "constant condition requires coefficients in the prime field".into(),
        ));
    }
    let p = qp.prime();
    let ctx = ResidueCtx::new(first_irreducible(p, k)?)?;
    let subgroup = parts_image_subgroup(qp, &ctx)?;
    let c0 = qp.constant_term().rem(ctx.modulus())?;
    Ok(subgroup.contains_index(ctx.index_of(&c0)))
}
