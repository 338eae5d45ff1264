//! Bounded complexes of homogeneous bundles and exactness sanity checks.
//!
//! A complex here is a named list of terms; differentials are never
//! constructed. [`complex_checks`] runs the necessary conditions an exact
//! complex must satisfy instead: the alternating rank sum vanishes, the
//! alternating Euler characteristic vanishes at every twist of a certified
//! window, and a termwise intermediate-cohomology profile plus a
//! self-duality probe report anything unusual. All arithmetic is exact.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::bott::{cohomology_table, euler_characteristic, GrassmannianCtx};
use crate::bundles::{line, schur_q, sym_q, wedge_s, BundleExpr};
use crate::error::{Error, Result};
use crate::partitions::binomial;

/// An ordered term list, position 0 leftmost. No maps are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexSpec {
    name: String,
    ctx: GrassmannianCtx,
    terms: Vec<BundleExpr>,
}

impl ComplexSpec {
    /// Wrap a term list. Every term must be a nonzero expression on the
    /// same Grassmannian.
    pub fn new(
        name: impl Into<String>,
        ctx: GrassmannianCtx,
        terms: Vec<BundleExpr>,
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("a complex needs at least one term"));
        }
        for (p, term) in terms.iter().enumerate() {
            if term.ctx() != ctx {
                return Err(Error::domain(format!(
                    "term {p} lives on G({},{}), not on G({},{})",
                    term.ctx().k(),
                    term.ctx().n(),
                    ctx.k(),
                    ctx.n(),
                )));
            }
            if term.is_zero() {
                return Err(Error::domain(format!("term {p} is the zero expression")));
            }
        }
        Ok(ComplexSpec {
            name: name.into(),
            ctx,
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ctx(&self) -> GrassmannianCtx {
        self.ctx
    }

    pub fn terms(&self) -> &[BundleExpr] {
        &self.terms
    }

    /// Twist every term by O(t). The name records the shift.
    pub fn twist(&self, t: i64) -> ComplexSpec {
        if t == 0 {
            return self.clone();
        }
        ComplexSpec {
            name: format!("{}({t})", self.name),
            ctx: self.ctx,
            terms: self.terms.iter().map(|e| e.twist(t)).collect(),
        }
    }

    /// Sum of (-1)^p rank over positions p; zero for any exact complex.
    pub fn rank_alternating_sum(&self) -> BigInt {
        let mut sum = BigInt::zero();
        for (p, term) in self.terms.iter().enumerate() {
            let r = BigInt::from(term.rank());
            if p % 2 == 0 {
                sum += r;
            } else {
                sum -= r;
            }
        }
        sum
    }
}

/// Which of the two Eagon-Northcott shapes to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnVariant {
    /// 0 -> Wedge^j S' -> Wedge^j V (x) O -> ... -> V (x) S^{j-1}Q -> S^j Q -> 0
    R,
    /// 0 -> S^j Q' -> V' (x) S^{j-1}Q' -> ... -> Wedge^j V' (x) O -> Wedge^j S -> 0
    RDual,
}

/// One of the two Eagon-Northcott complexes attached to the universal
/// sequence, with an optional overall twist.
///
/// Wedge powers of the trivial factor V contribute plain multiplicities
/// C(n+1, .). The leading term of the R shape lands in canonical form
/// through Wedge^j S' = Wedge^{n-k-j} S(-1). Valid for 1 <= j <= n-k; at
/// j = n-k the last term of the dual shape is Wedge^{n-k} S = O(1).
pub fn eagon_northcott(
    ctx: GrassmannianCtx,
    j: usize,
    variant: EnVariant,
    extra_twist: i64,
) -> Result<ComplexSpec> {
    if j < 1 || j > ctx.s_rank() {
        return Err(Error::domain(format!(
            "the Eagon-Northcott complexes exist for 1 <= j <= {} on G({},{}), got j = {j}",
            ctx.s_rank(),
            ctx.k(),
            ctx.n(),
        )));
    }
    let v = ctx.n() as u64 + 1;
    let mut terms = Vec::with_capacity(j + 2);
    match variant {
        EnVariant::R => {
            terms.push(wedge_s(ctx, j)?.dual());
            for p in 1..=j + 1 {
                let mult = binomial(v, (j + 1 - p) as u64);
                terms.push(sym_q(ctx, (p - 1) as u32).scaled(&mult));
            }
        }
        EnVariant::RDual => {
            for p in 0..=j {
                let mult = binomial(v, p as u64);
                terms.push(sym_q(ctx, (j - p) as u32).dual().scaled(&mult));
            }
            terms.push(wedge_s(ctx, j)?);
        }
    }
    if extra_twist != 0 {
        terms = terms.iter().map(|e| e.twist(extra_twist)).collect();
    }
    let tag = match variant {
        EnVariant::R => format!("R_{j}"),
        EnVariant::RDual => format!("R_{j}'"),
    };
    let name = if extra_twist == 0 {
        tag
    } else {
        format!("{tag}({extra_twist})")
    };
    let spec = ComplexSpec::new(name, ctx, terms)?;
    assert!(
        spec.rank_alternating_sum().is_zero(),
        "Eagon-Northcott ranks must balance"
    );
    Ok(spec)
}

/// The glued length-2n complex on G(1,n) running from O(-n-1) to O.
///
/// It splices R_{n-1} twisted by -n with its dual shape twisted by -1.
/// The halves share one object, S^{n-1}Q(-n) on the left and
/// S^{n-1}Q'(-1) on the right; the splice happens through that object,
/// which drops out of the term list. The result represents a class in
/// the one dimensional H^{2n-2}(O(-n-1)).
pub fn serre_extension(n: usize) -> Result<ComplexSpec> {
    if n < 2 {
        return Err(Error::domain("the glued extension needs n >= 2 on G(1,n)"));
    }
    let ctx = GrassmannianCtx::new(1, n)?;
    let j = n - 1;
    let left = eagon_northcott(ctx, j, EnVariant::R, -(n as i64))?;
    let right = eagon_northcott(ctx, j, EnVariant::RDual, -1)?;
    assert_eq!(
        left.terms().last(),
        right.terms().first(),
        "the junction objects of the two halves must agree in canonical form"
    );
    let mut terms = left.terms()[..j + 1].to_vec();
    terms.extend_from_slice(&right.terms()[1..]);
    ComplexSpec::new(format!("serre_{n}"), ctx, terms)
}

/// The rectangular staircase complex C_i on G(k,n), 0 <= i <= k.
///
/// Writing w = n-k for the rectangle width, the n-k+2 terms are
///
/// ```text
/// 0 -> S_{(w^{i+1})}Q' -> Wedge^{n-i} V (x) S_{((w-1)^i, w-1)}Q' -> ...
///   -> Wedge^{k+1-i} V (x) S_{((w-1)^i, 0)}Q' -> S_{(w^i)}Q'(1) -> 0
/// ```
///
/// so the p-th interior term carries the shape ((w-1)^i, w-p) and the
/// multiplicity C(n+1, n-i-p+1). The alternating rank sum is asserted to
/// vanish. At i = k the list coincides with the R shape of
/// [`eagon_northcott`] at j = n-k twisted by -(n-k-1), and at i = 0 with
/// the dual shape untwisted.
pub fn fonarev_ci(ctx: GrassmannianCtx, i: usize) -> Result<ComplexSpec> {
    if i > ctx.k() {
        return Err(Error::domain(format!(
            "the staircase complexes C_i exist for 0 <= i <= k = {}, got i = {i}",
            ctx.k(),
        )));
    }
    let w = ctx.s_rank() as i64;
    let v = ctx.n() as u64 + 1;
    let mut terms = Vec::with_capacity(ctx.s_rank() + 2);
    terms.push(schur_q(ctx, &vec![w; i + 1])?.dual());
    for p in 1..=ctx.s_rank() {
        let mut shape = vec![w - 1; i];
        shape.push(w - p as i64);
        let mult = binomial(v, (ctx.n() - i + 1 - p) as u64);
        terms.push(schur_q(ctx, &shape)?.dual().scaled(&mult));
    }
    terms.push(schur_q(ctx, &vec![w; i])?.dual().twist(1));
    let spec = ComplexSpec::new(format!("C_{i}"), ctx, terms)?;
    assert!(
        spec.rank_alternating_sum().is_zero(),
        "staircase ranks must balance"
    );
    Ok(spec)
}

/// The spliced chain C_k, C_{k-1}(1), ..., C_0(k) on G(k,n).
///
/// Consecutive pieces share one object (the tail of one equals the head
/// of the next, checked here rather than assumed), and the splice drops
/// the shared objects, leaving (k+1)(n-k) + 2 terms from O(-(n-k)) to
/// O(k+1). On G(1,n) this reproduces [`serre_extension`] up to an
/// overall twist of -2.
pub fn fonarev_glued_chain(ctx: GrassmannianCtx) -> Result<ComplexSpec> {
    let k = ctx.k();
    let mut terms: Vec<BundleExpr> = Vec::new();
    let mut pending_tail: Option<BundleExpr> = None;
    for i in (0..=k).rev() {
        let piece = fonarev_ci(ctx, i)?;
        let mut tws: Vec<BundleExpr> = piece
            .terms()
            .iter()
            .map(|e| e.twist((k - i) as i64))
            .collect();
        let tail = tws.pop().expect("pieces have n-k+2 terms");
        let head = tws.remove(0);
        match pending_tail.take() {
            None => terms.push(head),
            Some(prev) => assert_eq!(prev, head, "splice junctions must agree"),
        }
        terms.extend(tws);
        pending_tail = Some(tail);
    }
    terms.push(pending_tail.expect("at least one piece"));
    ComplexSpec::new("fonarev-glued", ctx, terms)
}

/// Two fixed eleven-term complexes on G(2,5), kept as literal data and
/// flagged as such by the `g25-` prefix in their names.
///
/// `g25-fonarev-glued` is a hand-simplified rendering of the glued chain
/// with S[3,1]-shaped middle terms. Its alternating rank sum is -72, so
/// the list cannot be exact as written; it is kept as a negative fixture
/// whose defects [`complex_checks`] reports, including the two non-ACM
/// zones around Sym^3 Q(-3) and its dual partner at position 6.
///
/// `g25-selfdual` is the corrected self-dual form. It agrees term by
/// term with [`fonarev_glued_chain`] on G(2,5) and is self-dual with
/// twist 0.
pub fn g25_examples() -> (ComplexSpec, ComplexSpec) {
    let g = GrassmannianCtx::new(2, 5).expect("G(2,5) is valid");
    let term = |w: &[i64], dualize: bool, t: i64, mult: u64| {
        let mut e = schur_q(g, w).expect("transcribed shapes are valid");
        if dualize {
            e = e.dual();
        }
        e.twist(t).scaled(&BigUint::from(mult))
    };
    let glued = ComplexSpec::new(
        "g25-fonarev-glued",
        g,
        vec![
            line(g, -3),
            term(&[1], false, -3, 6),
            term(&[2], false, -3, 15),
            term(&[3], false, -3, 20),
            term(&[3, 1], false, -2, 6),
            term(&[3, 1], true, 1, 15),
            term(&[3], true, 1, 20),
            term(&[2], true, 2, 6),
            term(&[1], true, 2, 15),
            line(g, 2).scaled(&BigUint::from(20u32)),
            line(g, 3),
        ],
    )
    .expect("the transcription is a valid term list");
    let selfdual = ComplexSpec::new(
        "g25-selfdual",
        g,
        vec![
            line(g, -3),
            line(g, -2).scaled(&BigUint::from(20u32)),
            term(&[1], false, -2, 15),
            term(&[2], false, -2, 6),
            term(&[2], false, -1, 15),
            term(&[2, 1], false, -1, 20),
            term(&[2], true, 1, 15),
            term(&[2], true, 2, 6),
            term(&[1], true, 2, 15),
            line(g, 2).scaled(&BigUint::from(20u32)),
            line(g, 3),
        ],
    )
    .expect("the transcription is a valid term list");
    (glued, selfdual)
}

/// If reversing the term list and dualizing every term reproduces the
/// complex up to one global twist, return that twist.
///
/// The candidate twist is read off the leading terms: twisting shifts
/// every lam entry uniformly, so it preserves the canonical term order
/// and the minimal terms must match up. One candidate therefore decides
/// the question.
pub fn self_duality_twist(spec: &ComplexSpec) -> Option<i64> {
    let reversed: Vec<BundleExpr> = spec.terms().iter().rev().map(|e| e.dual()).collect();
    let (want, _) = spec.terms().first()?.terms().next()?;
    let (have, _) = reversed.first()?.terms().next()?;
    let t = want.lam().entries().first()? - have.lam().entries().first()?;
    spec.terms()
        .iter()
        .zip(&reversed)
        .all(|(a, b)| b.twist(t) == *a)
        .then_some(t)
}

/// Intermediate cohomology of one term: every entry H^j(term(t)) with
/// 0 < j < dim, with its exact dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermProfile {
    pub position: usize,
    pub term: String,
    pub offenders: Vec<(usize, i64, BigUint)>,
}

/// What [`complex_checks`] measured. Everything exact; `rank_ok`,
/// `euler_ok` and `acm_ok` summarize the three sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexReport {
    pub name: String,
    pub terms: Vec<String>,
    pub rank_sum: BigInt,
    pub rank_ok: bool,
    /// Twist range the Euler check covered: the union of the terms'
    /// certified windows.
    pub euler_window: (i64, i64),
    /// Twists where the alternating Euler characteristic is nonzero.
    pub euler_failures: Vec<i64>,
    pub euler_ok: bool,
    pub acm: Vec<TermProfile>,
    pub acm_ok: bool,
    pub selfdual_twist: Option<i64>,
}

/// Run the necessary-condition battery for exactness on a term list.
pub fn complex_checks(spec: &ComplexSpec) -> Result<ComplexReport> {
    let ctx = spec.ctx();
    let dim = ctx.variety_dim();
    let rank_sum = spec.rank_alternating_sum();

    let tables = spec
        .terms()
        .par_iter()
        .map(|e| cohomology_table(ctx, e, None))
        .collect::<Result<Vec<_>>>()?;
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for table in &tables {
        let (a, b) = table.window();
        lo = lo.min(a);
        hi = hi.max(b);
    }

    let acm: Vec<TermProfile> = spec
        .terms()
        .iter()
        .zip(&tables)
        .enumerate()
        .map(|(position, (term, table))| TermProfile {
            position,
            term: term.to_string(),
            offenders: table
                .entries()
                .filter(|(j, _, _)| 0 < *j && *j < dim)
                .map(|(j, t, d)| (j, t, d.clone()))
                .collect(),
        })
        .collect();

    let euler_failures: Vec<i64> = (lo..=hi)
        .into_par_iter()
        .map(|t| -> Result<Option<i64>> {
            let mut sum = BigInt::zero();
            for (p, term) in spec.terms().iter().enumerate() {
                let chi = euler_characteristic(ctx, term, t)?;
                if p % 2 == 0 {
                    sum += chi;
                } else {
                    sum -= chi;
                }
            }
            Ok((!sum.is_zero()).then_some(t))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(ComplexReport {
        name: spec.name().to_string(),
        terms: spec.terms().iter().map(|e| e.to_string()).collect(),
        rank_ok: rank_sum.is_zero(),
        rank_sum,
        euler_window: (lo, hi),
        euler_ok: euler_failures.is_empty(),
        euler_failures,
        acm_ok: acm.iter().all(|p| p.offenders.is_empty()),
        acm,
        selfdual_twist: self_duality_twist(spec),
    })
}
