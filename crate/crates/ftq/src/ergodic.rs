//! Character sums and the discrepancy operators built on them.
//!
//! The central object is [`MultiplierAnalysis`]: for a polynomial `P` over a
//! quotient ring it packages the exact character sums
//! `E_y e(s·P(y)/Q)`, the subgroup `H = Σ_r η_r(F[t]_Q)` generated by the
//! additive parts of `P − P(0)`, and the Fourier multiplier of the averaging
//! operator `f(x) ↦ E_y f(x + P(y)) − E_{z∈H} f(x + a₀ + z)`. Every
//! "sup over f" quantity in this module is computed exactly from that
//! multiplier (Parseval), never by sampling.
//!
//! On top of the analysis sit the checkable inequalities: the character-sum
//! bound `|m(s)|^{2^{k−1}} ≤ p^{2⌊log_p d⌋}(k−1)/lpf(Q)`, the
//! total-ergodicity dichotomy with its explicit witness function, van der
//! Corput differencing over a subgroup, root counting against the
//! `(Σ dᵢ)·|Q|^l/lpf(Q)` bound, and the diagonal variant of the averaging
//! bound.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ffield::{smallest_irreducible_factor, Poly};
use crate::par;
use crate::quotient::{check_len, l2_norm, unity, Residue, ResidueCtx, SumAccumulator, UnityExponent};
use crate::subgroup::{parts_image_subgroup, Subspace};
use crate::ypoly::{pow_residue, YPoly};
use crate::FLOAT_TOLERANCE;

/// One row of a character-bound check: the inequality
/// `lhs = |m(s)|^{2^{k−1}} ≤ rhs = p^{2⌊log_p d⌋}(k−1)/lpf(Q)` for one
/// frequency `s`, together with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub p: u64,
    pub modulus: Poly,
    pub lpf: u64,
    pub poly: YPoly,
    pub d: u64,
    pub k: u32,
    pub s: Option<Poly>,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn csv_header() -> &'static str {
        "p,Q,lpf,P,d,k,s,lhs,rhs,ok"
    }

    pub fn csv_row(&self) -> String {
        let s = match &self.s {
            Some(s) => s.to_string(),
            None => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.p, self.modulus, self.lpf, self.poly, self.d, self.k, s, self.lhs, self.rhs, self.satisfied
        )
    }
}

/// Exact multiplier data for the averaging operator of one polynomial.
///
/// `a₀ = P(0)` and `H` is the sum of the images of the additive parts of
/// `P − a₀`, so `P(y) − a₀ ∈ H` for every `y`. On the Fourier side the
/// operator `f ↦ E_y f(x+P(y)) − E_{z∈H} f(x+a₀+z)` multiplies `f̂(s)` by
///
/// `m(s) = E_y e(s·P(y)/Q) − e(s·a₀/Q)·1_{H^⊥}(s)`,
///
/// and for `s ∈ H^⊥` the character sum concentrates on the single exponent
/// `⟨s, a₀⟩`, so the subtraction cancels to an exact `0.0` rather than a
/// rounding residue.
pub struct MultiplierAnalysis {
    ctx: Arc<ResidueCtx>,
    poly: YPoly,
    a0: usize,
    hist: Vec<u64>,
    subgroup: Subspace,
    annihilator_mask: Vec<bool>,
    multipliers: Vec<Complex64>,
}

impl MultiplierAnalysis {
    pub fn new(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<MultiplierAnalysis> {
        let table = poly.eval_table(ctx)?;
        let size = ctx.size();
        let mut hist = vec![0u64; size];
        for &v in &table {
            hist[v] += 1;
        }
        let a0 = table[0];
        let subgroup = parts_image_subgroup(poly, ctx)?;
        let annihilator_mask = subgroup.annihilator().membership_mask();
        let p = ctx.prime();
        let multipliers = par::map_indexed(size, |s| {
            let row = ctx.pair_row(s);
            let mut acc = SumAccumulator::new(p);
            for (v, &count) in hist.iter().enumerate() {
                if count > 0 {
                    acc.push_many(UnityExponent { value: ctx.pair_with_row(&row, v), p }, count);
                }
            }
            let sum = acc.mean();
            if annihilator_mask[s] {
                sum - unity(p, ctx.pair_with_row(&row, a0))
            } else {
                sum
            }
        });
        Ok(MultiplierAnalysis {
            ctx: Arc::clone(ctx),
            poly: poly.clone(),
            a0,
            hist,
            subgroup,
            annihilator_mask,
            multipliers,
        })
    }

    pub fn ctx(&self) -> &Arc<ResidueCtx> {
        &self.ctx
    }

    pub fn poly(&self) -> &YPoly {
        &self.poly
    }

    /// Index of the constant shift `a₀ = P(0)`.
    pub fn shift_index(&self) -> usize {
        self.a0
    }

    /// The subgroup `H = Σ_r η_r(F[t]_Q)` the operator projects onto.
    pub fn subgroup(&self) -> &Subspace {
        &self.subgroup
    }

    /// Whether `s` annihilates the subgroup `H`.
    pub fn in_annihilator(&self, s: usize) -> bool {
        self.annihilator_mask[s]
    }

    /// The multiplier `m(s)` at one frequency index.
    pub fn multiplier(&self, s: usize) -> Complex64 {
        self.multipliers[s]
    }

    pub fn multipliers(&self) -> &[Complex64] {
        &self.multipliers
    }

    /// The character sum `E_y e(s·P(y)/Q)` recovered from the multiplier.
    pub fn char_sum_at(&self, s: usize) -> Complex64 {
        if self.annihilator_mask[s] {
            self.multipliers[s] + unity(self.ctx.prime(), self.ctx.pair_idx(s, self.a0))
        } else {
            self.multipliers[s]
        }
    }

    /// The exact L² operator norm: `max_s |m(s)|`.
    pub fn norm(&self) -> f64 {
        self.multipliers.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }

    /// First frequency index attaining the operator norm.
    pub fn argmax(&self) -> usize {
        let mut best = 0usize;
        let mut best_val = -1.0f64;
        for (s, m) in self.multipliers.iter().enumerate() {
            let v = m.norm();
            if v > best_val {
                best = s;
                best_val = v;
            }
        }
        best
    }

    /// The character `x ↦ e(s*·x/Q)` at the argmax frequency; it has unit L²
    /// norm and attains the operator norm in [`MultiplierAnalysis::discrepancy`].
    pub fn extremal_character(&self) -> Vec<Complex64> {
        let s = self.argmax();
        let row = self.ctx.pair_row(s);
        let p = self.ctx.prime();
        par::map_indexed(self.ctx.size(), |x| unity(p, self.ctx.pair_with_row(&row, x)))
    }

    /// Space-side evaluation of the operator (no Fourier transform):
    /// `g(x) = E_y f(x+P(y)) − E_{z∈H} f(x+a₀+z)`.
    pub fn apply(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        check_len(&self.ctx, f)?;
        let size = self.ctx.size();
        let h = self.subgroup.enumerate();
        Ok(par::map_indexed(size, |x| {
            let mut shifted = Complex64::new(0.0, 0.0);
            for (v, &count) in self.hist.iter().enumerate() {
                if count > 0 {
                    shifted += f[self.ctx.add_idx(x, v)] * count as f64;
                }
            }
            shifted /= size as f64;
            let base = self.ctx.add_idx(x, self.a0);
            let mut coset = Complex64::new(0.0, 0.0);
            for &z in &h {
                coset += f[self.ctx.add_idx(base, z)];
            }
            coset /= h.len() as f64;
            shifted - coset
        }))
    }

    /// `‖E_y f(x+P(y)) − E_{z∈H} f(x+a₀+z)‖` in the normalized L² norm,
    /// computed space-side. Always `≤ norm()·‖f‖`, with equality for the
    /// extremal character.
    pub fn discrepancy(&self, f: &[Complex64]) -> Result<f64> {
        Ok(l2_norm(&self.apply(f)?))
    }
}

/// `E_{y ∈ F[t]_Q} e(s·P(y)/Q)`, accumulated as exact unity-exponent counts.
pub fn char_sum(poly: &YPoly, ctx: &Arc<ResidueCtx>, s: &Residue) -> Result<Complex64> {
    if s.ctx() != ctx {
        return Err(Error::ContextMismatch(
            ctx.modulus().to_string(),
            s.ctx().modulus().to_string(),
        ));
    }
    let table = poly.eval_table(ctx)?;
    let p = ctx.prime();
    let row = ctx.pair_row(s.index());
    let acc = par::fold_indexed(
        table.len(),
        || SumAccumulator::new(p),
        |mut acc, y| {
            acc.push(UnityExponent { value: ctx.pair_with_row(&row, table[y]), p });
            acc
        },
        |mut a, b| {
            a.merge(&b);
            a
        },
    );
    Ok(acc.mean())
}

/// The exact operator norm `max_s |m(s)|` of the averaging operator of `P`.
pub fn multiplier_norm(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<f64> {
    Ok(MultiplierAnalysis::new(poly, ctx)?.norm())
}

/// `‖E_y f(x+P(y)) − E_{z∈H} f(x+a₀+z)‖` for one function, space-side.
pub fn l2_discrepancy(f: &[Complex64], poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<f64> {
    MultiplierAnalysis::new(poly, ctx)?.discrepancy(f)
}

/// Check `|m(s)|^{2^{k−1}} ≤ p^{2⌊log_p d⌋}(k−1)/lpf(Q)` for every frequency
/// `s`, where `d` is the degree and `k` the derivational degree of `P`.
pub fn check_character_bound(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<Vec<BoundReport>> {
    if poly.is_constant() {
        return Err(Error::Precondition(
            "character bound requires a nonconstant polynomial".into(),
        ));
    }
    let analysis = MultiplierAnalysis::new(poly, ctx)?;
    let d = poly.degree().expect("nonconstant polynomial has a degree");
    let k = poly.d_deg();
    let p = ctx.prime();
    let log_p_d = {
        let mut l = 0u32;
        let mut power = p;
        while power <= d {
            l += 1;
            power *= p;
        }
        l
    };
    let rhs = (p as f64).powi(2 * log_p_d as i32) * (k as f64 - 1.0) / ctx.lpf() as f64;
    let reports = (0..ctx.size())
        .map(|s| {
            let norm = analysis.multiplier(s).norm();
            let lhs = if k == 1 { norm } else { norm.powf((2.0f64).powi(k as i32 - 1)) };
            BoundReport {
                p,
                modulus: ctx.modulus().clone(),
                lpf: ctx.lpf(),
                poly: poly.clone(),
                d,
                k,
                s: Some(ctx.poly_at(s)),
                lhs,
                rhs,
                satisfied: lhs <= rhs + FLOAT_TOLERANCE,
            }
        })
        .collect();
    Ok(reports)
}

/// The exact total-ergodicity discrepancy of the shift `m`:
/// `sup_{‖f‖=1} ‖E_y f(x+my) − E_z f(z)‖`, which is `1` when `gcd(m, Q) ≠ 1`
/// and `0` otherwise. In the nonzero case the returned witness is the
/// explicit disk-valued function `f(x) = e(2πi·k/|m₀|)` where `m₀` is the
/// smallest irreducible common factor and `k` indexes `x mod m₀`; it attains
/// discrepancy exactly `1`.
pub fn te_discrepancy(m: &Poly, ctx: &Arc<ResidueCtx>) -> Result<(f64, Option<Vec<Complex64>>)> {
    if m.is_zero() {
        return Err(Error::Precondition("total-ergodicity shift must be nonzero".into()));
    }
    if m.prime() != ctx.prime() {
        return Err(Error::PrimeMismatch(m.prime(), ctx.prime()));
    }
    let size = ctx.size();
    let m_idx = ctx.residue(m)?.index();
    // The multiplier at s is 1_{s·m ≡ 0} − 1_{s = 0}: any nonzero s killed by
    // m pushes the operator norm to 1.
    let zero_divisor = par::fold_indexed(
        size - 1,
        || false,
        |acc, i| acc || ctx.mul_idx(m_idx, i + 1) == 0,
        |a, b| a || b,
    );
    if !zero_divisor {
        return Ok((0.0, None));
    }
    let common = m.gcd(ctx.modulus())?;
    let m0 = smallest_irreducible_factor(&common)?;
    let sub = ResidueCtx::new(m0)?;
    let sub_size = sub.size() as f64;
    let witness = par::map_indexed(size, |x| {
        let rem = ctx.poly_at(x).rem(sub.modulus()).expect("modulus nonzero");
        let k = sub.index_of(&rem);
        Complex64::from_polar(1.0, TAU * k as f64 / sub_size)
    });
    Ok((1.0, Some(witness)))
}

fn differenced_mean(ctx: &ResidueCtx, h: &[usize], f: &[Complex64], k: u32) -> Complex64 {
    if k == 0 {
        return f.iter().sum::<Complex64>() / f.len() as f64;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &v in h {
        let df: Vec<Complex64> =
            (0..f.len()).map(|u| f[ctx.add_idx(u, v)] * f[u].conj()).collect();
        acc += differenced_mean(ctx, h, &df, k - 1);
    }
    acc / h.len() as f64
}

/// Van der Corput differencing over a subgroup: evaluates both sides of
/// `|E_x f(x)|^{2^k} ≤ E_{v₁…v_k ∈ H} E_u Δ_{v₁…v_k}f(u)` exactly and
/// returns them as `(lhs, rhs)`. Cost grows as `|H|^k·|Q|`, so `k ≤ 3`.
pub fn vdc_check(f: &[Complex64], subgroup: &Subspace, k: u32) -> Result<(f64, f64)> {
    if !(1..=3).contains(&k) {
        return Err(Error::Precondition(format!(
            "differencing depth must be between 1 and 3, got {k}"
        )));
    }
    let ctx = subgroup.ctx();
    check_len(ctx, f)?;
    let mean = f.iter().sum::<Complex64>() / f.len() as f64;
    let lhs = mean.norm().powi(1 << k);
    let h = subgroup.enumerate();
    let rhs = differenced_mean(ctx, &h, f, k);
    if rhs.im.abs() > FLOAT_TOLERANCE {
        return Err(Error::Internal(format!(
            "differenced average has imaginary residue {}",
            rhs.im
        )));
    }
    Ok((lhs, rhs.re))
}

/// A polynomial in two variables `y₁, y₂` with coefficients in `F_p[t]`,
/// for the two-variable case of the root count bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiYPoly {
    p: u64,
    terms: BTreeMap<(u64, u64), Poly>,
}

impl BiYPoly {
    /// Build from `(exponent₁, exponent₂, coefficient)` terms; repeated
    /// exponent pairs are summed and zero coefficients dropped.
    pub fn from_terms(p: u64, terms: Vec<(u64, u64, Poly)>) -> BiYPoly {
        let mut map: BTreeMap<(u64, u64), Poly> = BTreeMap::new();
        for (e1, e2, c) in terms {
            debug_assert_eq!(c.prime(), p);
            let entry = map.entry((e1, e2)).or_insert_with(|| Poly::zero(p));
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        BiYPoly { p, terms: map }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<(u64, u64), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, y1: &Residue, y2: &Residue) -> Result<Residue> {
        let ctx = y1.ctx();
        if y2.ctx() != ctx {
            return Err(Error::ContextMismatch(
                ctx.modulus().to_string(),
                y2.ctx().modulus().to_string(),
            ));
        }
        let mut acc = ctx.zero();
        for (&(e1, e2), c) in &self.terms {
            let term = ctx.residue(c)?.mul(&pow_residue(y1, e1)?)?.mul(&pow_residue(y2, e2)?)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Count the roots of a one-variable polynomial in `F[t]_Q` by enumeration
/// and return `(count, (deg T)·|Q|/lpf(Q))`. The degree is taken after
/// reducing coefficients mod `Q`; a polynomial that reduces to zero is
/// rejected.
pub fn root_count_check(poly: &YPoly, ctx: &Arc<ResidueCtx>) -> Result<(u64, f64)> {
    if poly.prime() != ctx.prime() {
        return Err(Error::PrimeMismatch(poly.prime(), ctx.prime()));
    }
    let mut d: Option<u64> = None;
    for (&m, c) in poly.terms() {
        if !ctx.residue(c)?.is_zero() {
            d = Some(d.map_or(m, |cur| cur.max(m)));
        }
    }
    let d = d.ok_or_else(|| {
        Error::Precondition("polynomial is identically zero modulo Q".into())
    })?;
    let table = poly.eval_table(ctx)?;
    let count = par::fold_indexed(
        table.len(),
        || 0u64,
        |acc, y| acc + (table[y] == 0) as u64,
        |a, b| a + b,
    );
    let bound = d as f64 * ctx.size() as f64 / ctx.lpf() as f64;
    Ok((count, bound))
}

/// Two-variable root count: `(count, (d₁+d₂)·|Q|²/lpf(Q))` with `dᵢ` the
/// degree in `yᵢ` after reducing coefficients mod `Q`.
pub fn root_count_check_bivariate(poly: &BiYPoly, ctx: &Arc<ResidueCtx>) -> Result<(u64, f64)> {
    if poly.prime() != ctx.prime() {
        return Err(Error::PrimeMismatch(poly.prime(), ctx.prime()));
    }
    let size = ctx.size();
    // Reduce each coefficient and pretabulate the two power maps per term.
    let mut reduced: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut d1: Option<u64> = None;
    let mut d2: Option<u64> = None;
    for (&(e1, e2), c) in poly.terms() {
        let c_idx = ctx.residue(c)?.index();
        if c_idx == 0 {
            continue;
        }
        d1 = Some(d1.map_or(e1, |cur| cur.max(e1)));
        d2 = Some(d2.map_or(e2, |cur| cur.max(e2)));
        let pow1 = par::map_indexed(size, |y| {
            pow_residue(&ctx.residue_at(y), e1).expect("same context").index()
        });
        let pow2 = par::map_indexed(size, |y| {
            pow_residue(&ctx.residue_at(y), e2).expect("same context").index()
        });
        reduced.push((c_idx, pow1, pow2));
    }
    if reduced.is_empty() {
        return Err(Error::Precondition("polynomial is identically zero modulo Q".into()));
    }
    let count = par::fold_indexed(
        size * size,
        || 0u64,
        |acc, idx| {
            let y1 = idx / size;
            let y2 = idx % size;
            let mut val = 0usize;
            for (c_idx, pow1, pow2) in &reduced {
                val = ctx.add_idx(val, ctx.mul_idx(ctx.mul_idx(*c_idx, pow1[y1]), pow2[y2]));
            }
            acc + (val == 0) as u64
        },
        |a, b| a + b,
    );
    let bound =
        (d1.unwrap() + d2.unwrap()) as f64 * (size as f64).powi(2) / ctx.lpf() as f64;
    Ok((count, bound))
}

/// Discrepancy of the diagonal averaging operator on `m` coordinates:
/// `‖E_y f(x₁+P(y),…,x_m+P(y)) − E_{z∈H} f(x₁+a₀+z,…,x_m+a₀+z)‖` in
/// L²(F[t]_Q^m), for `f` indexed row-major. Obeys the same
/// `multiplier_norm·‖f‖` bound as the one-coordinate operator. `m ≤ 2`
/// keeps the cost at `|Q|^{m+1}`.
pub fn diagonal_discrepancy(
    f: &[Complex64],
    poly: &YPoly,
    ctx: &Arc<ResidueCtx>,
    m: usize,
) -> Result<f64> {
    match m {
        1 => l2_discrepancy(f, poly, ctx),
        2 => {
            let size = ctx.size();
            if f.len() != size * size {
                return Err(Error::Precondition(format!(
                    "function table has {} entries; the two-coordinate ring has {}",
                    f.len(),
                    size * size
                )));
            }
            let analysis = MultiplierAnalysis::new(poly, ctx)?;
            let h = analysis.subgroup.enumerate();
            let a0 = analysis.a0;
            let hist = &analysis.hist;
            let g = par::map_indexed(size * size, |idx| {
                let x1 = idx / size;
                let x2 = idx % size;
                let mut shifted = Complex64::new(0.0, 0.0);
                for (v, &count) in hist.iter().enumerate() {
                    if count > 0 {
                        shifted +=
                            f[ctx.add_idx(x1, v) * size + ctx.add_idx(x2, v)] * count as f64;
                    }
                }
                shifted /= size as f64;
                let b1 = ctx.add_idx(x1, a0);
                let b2 = ctx.add_idx(x2, a0);
                let mut coset = Complex64::new(0.0, 0.0);
                for &z in &h {
                    coset += f[ctx.add_idx(b1, z) * size + ctx.add_idx(b2, z)];
                }
                coset /= h.len() as f64;
                shifted - coset
            });
            Ok(l2_norm(&g))
        }
        _ => Err(Error::Precondition(format!(
            "diagonal dimension must be 1 or 2, got {m}"
        ))),
    }
}
