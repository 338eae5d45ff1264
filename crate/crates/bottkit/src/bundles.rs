//! Formal sums of irreducible homogeneous bundles `S_lam Q (x) S_mu S^dual`
//! and the operations that stay inside that class: duals, twists by O(t),
//! and tensor products via Littlewood-Richardson.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bott::GrassmannianCtx;
use crate::error::{Error, Result};
use crate::partitions::{littlewood_richardson, weyl_dimension, Weight};

/// One irreducible summand `S_lam Q (x) S_mu S^dual` in canonical form.
///
/// `lam` has length k+1 and `mu` length n-k, both weakly decreasing. Since
/// `S_mu S^dual = S_(mu-c) S^dual (x) O(c)` for constant c, the pair is
/// normalized so the last entry of `mu` is zero, with the constant folded
/// into `lam`. This makes equality of terms equality of bundles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BundleTerm {
    lam: Weight,
    mu: Weight,
}

impl BundleTerm {
    /// Fold the constant part of `mu` into `lam`: with c the last entry of
    /// `mu`, `S_mu S^dual = S_(mu-c) S^dual (x) O(-c)` because
    /// `det S^dual = O(-1)`, so both weights drop by c.
    fn canonical(lam: Weight, mu: Weight) -> BundleTerm {
        let c = mu.entries().last().copied().unwrap_or(0);
        BundleTerm {
            lam: lam.shifted(-c),
            mu: mu.shifted(-c),
        }
    }

    pub fn lam(&self) -> &Weight {
        &self.lam
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    fn rank(&self) -> BigUint {
        weyl_dimension(&self.lam).expect("canonical terms are dominant")
            * weyl_dimension(&self.mu).expect("canonical terms are dominant")
    }
}

/// A formal nonnegative-integer combination of canonical [`BundleTerm`]s on
/// a fixed Grassmannian. The zero expression has no terms; multiplicities
/// stored are always positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleExpr {
    ctx: GrassmannianCtx,
    terms: BTreeMap<BundleTerm, BigUint>,
}

impl BundleExpr {
    pub fn zero(ctx: GrassmannianCtx) -> Self {
        BundleExpr {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    /// Build a single irreducible bundle from raw weights of lengths k+1 and
    /// n-k; the pair is validated and put in canonical form.
    pub fn from_weights(ctx: GrassmannianCtx, lam: Weight, mu: Weight) -> Result<Self> {
        if lam.len() != ctx.q_rank() {
            return Err(Error::WeightLength {
                got: lam.len(),
                expected: ctx.q_rank(),
            });
        }
        if mu.len() != ctx.s_rank() {
            return Err(Error::WeightLength {
                got: mu.len(),
                expected: ctx.s_rank(),
            });
        }
        if !lam.is_dominant() {
            return Err(Error::NotDominant(lam.entries().to_vec()));
        }
        if !mu.is_dominant() {
            return Err(Error::NotDominant(mu.entries().to_vec()));
        }
        let mut terms = BTreeMap::new();
        terms.insert(BundleTerm::canonical(lam, mu), BigUint::one());
        Ok(BundleExpr { ctx, terms })
    }

    pub fn ctx(&self) -> GrassmannianCtx {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BundleTerm, &BigUint)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total rank, the sum of multiplicities times Weyl dimensions of both
    /// weight factors.
    pub fn rank(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(term, mult)| mult * term.rank())
            .sum()
    }

    /// Formal direct sum.
    pub fn plus(mut self, other: BundleExpr) -> BundleExpr {
        assert_eq!(self.ctx, other.ctx, "cannot add bundles on different Grassmannians");
        for (term, mult) in other.terms {
            *self
                .terms
                .entry(term)
                .or_insert_with(BigUint::zero) += mult;
        }
        self
    }

    /// Multiply every multiplicity by a constant; zero clears the expression.
    pub fn scaled(mut self, factor: &BigUint) -> BundleExpr {
        if factor.is_zero() {
            self.terms.clear();
            return self;
        }
        for mult in self.terms.values_mut() {
            *mult *= factor;
        }
        self
    }

    /// The dual bundle: both weights reversed and negated, termwise.
    pub fn dual(&self) -> BundleExpr {
        let terms = self
            .terms
            .iter()
            .map(|(term, mult)| {
                (
                    BundleTerm::canonical(
                        term.lam.reversed_negated(),
                        term.mu.reversed_negated(),
                    ),
                    mult.clone(),
                )
            })
            .collect();
        BundleExpr {
            ctx: self.ctx,
            terms,
        }
    }

    /// Tensor with O(t), which adds t to every entry of every `lam`.
    pub fn twist(&self, t: i64) -> BundleExpr {
        let terms = self
            .terms
            .iter()
            .map(|(term, mult)| {
                (
                    BundleTerm {
                        lam: term.lam.shifted(t),
                        mu: term.mu.clone(),
                    },
                    mult.clone(),
                )
            })
            .collect();
        BundleExpr {
            ctx: self.ctx,
            terms,
        }
    }

    /// Tensor product, decomposed back into irreducibles. The Q-side and
    /// S-side weights multiply independently by Littlewood-Richardson in
    /// GL(k+1) and GL(n-k); constant shifts split off first so the LR step
    /// sees honest partitions.
    pub fn tensor(&self, other: &BundleExpr) -> BundleExpr {
        assert_eq!(
            self.ctx, other.ctx,
            "cannot tensor bundles on different Grassmannians"
        );
        let ctx = self.ctx;
        let mut out = BundleExpr::zero(ctx);
        for (ta, ma) in &self.terms {
            for (tb, mb) in &other.terms {
                let m = ma * mb;
                let (pa, sa) = ta.lam.to_partition();
                let (pb, sb) = tb.lam.to_partition();
                let (qa, ua) = ta.mu.to_partition();
                let (qb, ub) = tb.mu.to_partition();
                let q_side = littlewood_richardson(&pa, &pb, ctx.q_rank());
                let s_side = littlewood_richardson(&qa, &qb, ctx.s_rank());
                for (nu_q, cq) in &q_side {
                    let lam = Weight::from_partition(nu_q, ctx.q_rank())
                        .expect("LR output fits the rank")
                        .shifted(sa + sb);
                    for (nu_s, cs) in &s_side {
                        let mu = Weight::from_partition(nu_s, ctx.s_rank())
                            .expect("LR output fits the rank")
                            .shifted(ua + ub);
                        let term = BundleTerm::canonical(lam.clone(), mu);
                        let mult = &m * (cq * cs);
                        *out.terms.entry(term).or_insert_with(BigUint::zero) += mult;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::print_expr(self))
    }
}

/// The line bundle O(t).
pub fn line(ctx: GrassmannianCtx, t: i64) -> BundleExpr {
    let lam = Weight::new(vec![t; ctx.q_rank()]);
    let mu = Weight::new(vec![0; ctx.s_rank()]);
    BundleExpr::from_weights(ctx, lam, mu).expect("constant weights are dominant")
}

/// Sym^j Q; j = 0 gives O.
pub fn sym_q(ctx: GrassmannianCtx, j: u32) -> BundleExpr {
    schur_q(ctx, &[j as i64]).expect("a single row always fits")
}

/// Wedge^j Q, zero-indexed up to the rank k+1 (the top wedge is O(1)).
pub fn wedge_q(ctx: GrassmannianCtx, j: usize) -> Result<BundleExpr> {
    if j > ctx.q_rank() {
        return Err(Error::WedgeRank {
            index: j,
            rank: ctx.q_rank(),
        });
    }
    let w: Vec<i64> = vec![1; j];
    schur_q(ctx, &w)
}

/// Sym^j S.
pub fn sym_s(ctx: GrassmannianCtx, j: u32) -> BundleExpr {
    schur_s(ctx, &[j as i64]).expect("a single row always fits")
}

/// Wedge^j S, up to the rank n-k (the top wedge is O(1)).
pub fn wedge_s(ctx: GrassmannianCtx, j: usize) -> Result<BundleExpr> {
    if j > ctx.s_rank() {
        return Err(Error::WedgeRank {
            index: j,
            rank: ctx.s_rank(),
        });
    }
    let w: Vec<i64> = vec![1; j];
    schur_s(ctx, &w)
}

/// Schur functor S_w Q. The weight is padded with zeros to length k+1 and
/// must come out weakly decreasing, so weights with negative entries must be
/// written out in full length.
pub fn schur_q(ctx: GrassmannianCtx, w: &[i64]) -> Result<BundleExpr> {
    let lam = pad_dominant(w, ctx.q_rank())?;
    let mu = Weight::new(vec![0; ctx.s_rank()]);
    BundleExpr::from_weights(ctx, lam, mu)
}

/// Schur functor S_w S^dual.
pub fn schur_sdual(ctx: GrassmannianCtx, w: &[i64]) -> Result<BundleExpr> {
    let mu = pad_dominant(w, ctx.s_rank())?;
    let lam = Weight::new(vec![0; ctx.q_rank()]);
    BundleExpr::from_weights(ctx, lam, mu)
}

/// Schur functor S_w S, expressed through the dual: S_w S is S_w' S^dual
/// for w' the reversed negation of the padded weight.
pub fn schur_s(ctx: GrassmannianCtx, w: &[i64]) -> Result<BundleExpr> {
    let padded = pad_dominant(w, ctx.s_rank())?;
    let lam = Weight::new(vec![0; ctx.q_rank()]);
    BundleExpr::from_weights(ctx, lam, padded.reversed_negated())
}

fn pad_dominant(w: &[i64], len: usize) -> Result<Weight> {
    if w.len() > len {
        return Err(Error::WeightLength {
            got: w.len(),
            expected: len,
        });
    }
    let mut entries = w.to_vec();
    entries.resize(len, 0);
    Weight::dominant(entries)
}
