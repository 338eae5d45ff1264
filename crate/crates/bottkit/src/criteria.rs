//! Condition sets for splitting criteria on the Grassmannian G(1,n) of
//! lines, and their evaluation against concrete bundles.
//!
//! A condition point (i,j) demands `H^j(F (x) Sym^i Q (t)) = 0` for every
//! integer twist t. The families here assemble the hypothesis sets of the
//! line-bundle splitting criterion (the A/B segments plus one extra point),
//! its level-k generalization that allows symmetric powers of Q as summands
//! (adding C/D segments), the classical inequality-shaped region, and the
//! regions used with Beilinson-type spectral sequences.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bott::{cohomology_table, GrassmannianCtx};
use crate::bundles::{sym_q, BundleExpr};
use crate::error::{Error, Result};

/// One cohomological condition: `H^j(F (x) Sym^i Q (t)) = 0` for all t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConditionPoint {
    pub i: u32,
    pub j: u32,
}

impl ConditionPoint {
    pub fn new(i: u32, j: u32) -> Self {
        ConditionPoint { i, j }
    }
}

/// A named set of condition points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionSet {
    pub name: String,
    pub points: BTreeSet<ConditionPoint>,
}

impl ConditionSet {
    pub fn new(name: impl Into<String>, points: BTreeSet<ConditionPoint>) -> Self {
        ConditionSet {
            name: name.into(),
            points,
        }
    }

    pub fn union_named(name: impl Into<String>, sets: &[ConditionSet]) -> Self {
        let points = sets.iter().flat_map(|s| s.points.iter().copied()).collect();
        ConditionSet::new(name, points)
    }
}

/// The four diagonal segment families indexed by level k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentFamily {
    A,
    B,
    C,
    D,
}

fn points<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> BTreeSet<ConditionPoint> {
    pairs
        .into_iter()
        .map(|(i, j)| {
            debug_assert!(i >= 0 && j >= 0, "condition points live in the first quadrant");
            ConditionPoint::new(i as u32, j as u32)
        })
        .collect()
}

/// One diagonal segment of the given family and level on G(1,n). Levels
/// whose defining range is empty give the empty set.
pub fn segment(family: SegmentFamily, k_level: usize, n: usize) -> Result<ConditionSet> {
    if n < 2 {
        return Err(Error::domain("segments are defined on G(1,n) with n >= 2"));
    }
    let n = n as i64;
    let k = k_level as i64;
    let (tag, pts) = match family {
        SegmentFamily::A => (
            "A",
            points((0..=n - k - 3).map(|p| (p, 2 * n - k - 3 - p))),
        ),
        SegmentFamily::B => {
            if k_level == 0 {
                ("B", points((1..=n - 2).map(|p| (p, p))))
            } else {
                ("B", points((0..=n - k - 3).map(|p| (p, k + 1 + p))))
            }
        }
        SegmentFamily::C => ("C", points((0..=k - 1).map(|p| (p, 2 * n - k - 2 + p)))),
        SegmentFamily::D => ("D", points((0..=k - 1).map(|p| (p, k - p)))),
    };
    Ok(ConditionSet::new(format!("{tag}_{k_level}"), pts))
}

/// The hypothesis set of the level-k splitting criterion on G(1,n): all
/// segments of levels up to k plus the single point (n-k-2, n-1). Level 0
/// is the line-bundle criterion.
pub fn main_hypotheses(n: usize, k: usize) -> Result<ConditionSet> {
    let sets = main_component_sets(n, k)?;
    Ok(ConditionSet::union_named(format!("main_{k}"), &sets))
}

/// The same hypotheses as [`main_hypotheses`] but kept as the individual
/// named segments, for listings and diagrams.
pub fn main_component_sets(n: usize, k: usize) -> Result<Vec<ConditionSet>> {
    if n < 2 {
        return Err(Error::domain("the splitting criteria live on G(1,n) with n >= 2"));
    }
    if k + 2 > n {
        return Err(Error::domain(format!(
            "level {k} hypotheses need k <= n-2 on G(1,{n}): the anchor point \
             (n-k-2, n-1) would leave the first quadrant"
        )));
    }
    let mut sets = Vec::new();
    for level in 0..=k {
        sets.push(segment(SegmentFamily::A, level, n)?);
        sets.push(segment(SegmentFamily::B, level, n)?);
    }
    for level in 1..=k {
        sets.push(segment(SegmentFamily::C, level, n)?);
        sets.push(segment(SegmentFamily::D, level, n)?);
    }
    let anchor = points([((n - k - 2) as i64, (n - 1) as i64)]);
    sets.push(ConditionSet::new("anchor", anchor));
    sets.retain(|s| !s.points.is_empty());
    Ok(sets)
}

/// The two diagonal families whose union is the wedge-shaped region
/// `{(i,j) : 0 <= i <= n-2, i <= j < 2n-2-i, j > 0}` of the classical
/// inequality criterion. The tiling is asserted on every call.
pub fn ottaviani_sets(n: usize) -> Result<Vec<ConditionSet>> {
    if n < 2 {
        return Err(Error::domain("the inequality criterion lives on G(1,n) with n >= 2"));
    }
    let ni = n as i64;
    let mut sets = Vec::new();
    for k in 0..=n - 1 {
        let ki = k as i64;
        let pts = if k == 0 {
            points((0..=ni - 2).map(|j| (j, 2 * ni - 3 - j)))
        } else {
            // at n = 2 the last diagonal degenerates to the single point
            // (0,0), which lies below the wedge
            points(
                (0..=ni - ki - 1)
                    .map(|j| (j, 2 * ni - 3 - ki - j))
                    .filter(|&(_, j)| j >= 1),
            )
        };
        if !pts.is_empty() {
            sets.push(ConditionSet::new(format!("L_{k}"), pts));
        }
    }
    for k in 0..=n - 2 {
        let ki = k as i64;
        let pts = if k == 0 {
            points((1..=ni - 2).map(|p| (p, p)))
        } else {
            points((0..=ni - 2 - ki).map(|j| (j, ki + j)))
        };
        if !pts.is_empty() {
            sets.push(ConditionSet::new(format!("R_{k}"), pts));
        }
    }
    let union: BTreeSet<ConditionPoint> = sets
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .collect();
    let mut wedge = BTreeSet::new();
    for i in 0..=ni - 2 {
        for j in i.max(1)..2 * ni - 2 - i {
            wedge.insert(ConditionPoint::new(i as u32, j as u32));
        }
    }
    assert_eq!(union, wedge, "segment families must tile the wedge region");
    Ok(sets)
}

/// Condition regions for the Beilinson-type splitting criteria: the M
/// family (with its shifted companion M') and the N family.
pub fn beilinson_sets(n: usize) -> Result<Vec<ConditionSet>> {
    if n < 2 {
        return Err(Error::domain("the Beilinson criteria live on G(1,n) with n >= 2"));
    }
    let ni = n as i64;
    let mut sets = Vec::new();
    sets.push(ConditionSet::new(
        "M_0",
        points((0..=ni - 3).map(|p| (p, 2 * ni - 3 - p))),
    ));
    sets.push(ConditionSet::new(
        "M'",
        points((0..=ni - 2).map(|p| (p, 2 * ni - 4 - p))),
    ));
    for k in 1..=(n - 1) / 2 {
        let ki = k as i64;
        sets.push(ConditionSet::new(
            format!("M_{k}"),
            points((0..=ni - 1 - 2 * ki).map(|p| (p, 2 * ni - 3 - 2 * ki - p))),
        ));
    }
    sets.push(ConditionSet::new(
        "N_0",
        points((2..=ni - 2).map(|p| (p, p - 1))),
    ));
    for k in 1..=(n - 1) / 2 {
        let ki = k as i64;
        sets.push(ConditionSet::new(
            format!("N_{k}"),
            points((0..=ni - 1 - 2 * ki).map(|p| (p, 2 * ki - 1 + p))),
        ));
    }
    sets.retain(|s| !s.points.is_empty());
    Ok(sets)
}

/// A failed condition: the least twist where the group refuses to vanish,
/// with its dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub i: u32,
    pub j: u32,
    pub witness_twist: i64,
    pub dimension: BigUint,
}

/// Check every condition point against a bundle and report the failures,
/// sorted by (i,j). Points are independent and checked in parallel. The
/// criteria are stated for bundles on G(1,n).
pub fn evaluate(
    ctx: GrassmannianCtx,
    f: &BundleExpr,
    conds: &ConditionSet,
) -> Result<Vec<Violation>> {
    if ctx.k() != 1 {
        return Err(Error::domain(
            "the splitting criteria are stated on Grassmannians of lines G(1,n)",
        ));
    }
    if f.ctx() != ctx {
        return Err(Error::domain(
            "bundle expression belongs to a different Grassmannian",
        ));
    }
    let pts: Vec<ConditionPoint> = conds.points.iter().copied().collect();
    let mut found: Vec<Violation> = pts
        .par_iter()
        .map(|pt| -> Result<Option<Violation>> {
            let twisted = f.tensor(&sym_q(ctx, pt.i));
            let table = cohomology_table(ctx, &twisted, None)?;
            Ok(table
                .first_in_row(pt.j as usize)
                .map(|(t, dim)| Violation {
                    i: pt.i,
                    j: pt.j,
                    witness_twist: t,
                    dimension: dim.clone(),
                }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort_by_key(|v| (v.i, v.j));
    Ok(found)
}

/// Forward direction of the level-k criterion: a bundle of the advertised
/// split shape must satisfy every hypothesis. Returns whether it does.
pub fn theorem_forward_check(n: usize, k: usize, f: &BundleExpr) -> Result<bool> {
    let ctx = GrassmannianCtx::new(1, n)?;
    let conds = main_hypotheses(n, k)?;
    Ok(evaluate(ctx, f, &conds)?.is_empty())
}

/// Which family of candidate bundles an ACM scan walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcmFamily {
    /// Symmetric powers Sym^i Q for 1 <= i <= bound.
    Symmetric,
    /// Schur functors S_p Q over nonzero partitions p with at most k
    /// nonzero rows, |p| <= bound, one representative per dual pair.
    ///
    /// A shape with k+1 nonzero rows is a twist of a smaller one, so row
    /// k+1 stays pinned at zero. Shapes also come in pairs: S_p Q'(p_1)
    /// is S_c Q for the mirrored complement c of p in the (k+1) x p_1
    /// box, and dual-plus-twist preserves the ACM property. The scan
    /// keeps the partner with fewer boxes, which is the inequality
    /// 2|p| <= (k+1) p_1; a shape meeting it with equality is its own
    /// complement.
    Schur,
}

/// Is the bundle arithmetically Cohen-Macaulay: does every intermediate
/// cohomology group `H^j(E(t))`, `0 < j < dim`, vanish for all twists?
pub fn is_acm(ctx: GrassmannianCtx, expr: &BundleExpr) -> Result<bool> {
    let table = cohomology_table(ctx, expr, None)?;
    let dim = ctx.variety_dim();
    let clean = table.entries().all(|(j, _, _)| j == 0 || j == dim);
    Ok(clean)
}

/// Scan a family of candidate bundles and return those that are ACM, in a
/// deterministic order (by exponent, or by partition).
pub fn acm_scan(
    ctx: GrassmannianCtx,
    family: AcmFamily,
    bound: u32,
) -> Result<Vec<BundleExpr>> {
    let candidates: Vec<BundleExpr> = match family {
        AcmFamily::Symmetric => (1..=bound).map(|i| sym_q(ctx, i)).collect(),
        AcmFamily::Schur => {
            let mut shapes: Vec<Vec<i64>> = Vec::new();
            let mut cur: Vec<i64> = Vec::new();
            fn go(
                rows_left: usize,
                cap: i64,
                rem: i64,
                cur: &mut Vec<i64>,
                out: &mut Vec<Vec<i64>>,
            ) {
                if !cur.is_empty() {
                    out.push(cur.clone());
                }
                if rows_left == 0 {
                    return;
                }
                for v in 1..=cap.min(rem) {
                    cur.push(v);
                    go(rows_left - 1, v, rem - v, cur, out);
                    cur.pop();
                }
            }
            go(ctx.k(), bound as i64, bound as i64, &mut cur, &mut shapes);
            shapes.sort();
            shapes.dedup();
            let rows = ctx.k() as i64 + 1;
            shapes.retain(|w| 2 * w.iter().sum::<i64>() <= rows * w[0]);
            shapes
                .iter()
                .map(|w| crate::bundles::schur_q(ctx, w))
                .collect::<Result<_>>()?
        }
    };
    let verdicts: Vec<bool> = candidates
        .par_iter()
        .map(|e| is_acm(ctx, e))
        .collect::<Result<_>>()?;
    Ok(candidates
        .into_iter()
        .zip(verdicts)
        .filter_map(|(e, keep)| keep.then_some(e))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{line, schur_q};
    use num_traits::One;

    fn pts(pairs: &[(u32, u32)]) -> BTreeSet<ConditionPoint> {
        pairs.iter().map(|&(i, j)| ConditionPoint::new(i, j)).collect()
    }

    fn set_by_name<'s>(sets: &'s [ConditionSet], name: &str) -> &'s ConditionSet {
        sets.iter()
            .find(|s| s.name == name)
            .unwrap_or_else(|| panic!("no set named {name}"))
    }

    #[test]
    fn segments_on_g15() {
        let a0 = segment(SegmentFamily::A, 0, 5).unwrap();
        assert_eq!(a0.points, pts(&[(0, 7), (1, 6), (2, 5)]));
        let b0 = segment(SegmentFamily::B, 0, 5).unwrap();
        assert_eq!(b0.points, pts(&[(1, 1), (2, 2), (3, 3)]));
        let a1 = segment(SegmentFamily::A, 1, 5).unwrap();
        assert_eq!(a1.points, pts(&[(0, 6), (1, 5)]));
        let b1 = segment(SegmentFamily::B, 1, 5).unwrap();
        assert_eq!(b1.points, pts(&[(0, 2), (1, 3)]));
        let c1 = segment(SegmentFamily::C, 1, 5).unwrap();
        assert_eq!(c1.points, pts(&[(0, 7)]));
        let d1 = segment(SegmentFamily::D, 1, 5).unwrap();
        assert_eq!(d1.points, pts(&[(0, 1)]));
        // C and D are empty at level zero
        assert!(segment(SegmentFamily::C, 0, 5).unwrap().points.is_empty());
        assert!(segment(SegmentFamily::D, 0, 5).unwrap().points.is_empty());
    }

    #[test]
    fn line_bundle_criterion_on_g14() {
        let main = main_hypotheses(4, 0).unwrap();
        assert_eq!(
            main.points,
            pts(&[(0, 5), (1, 4), (1, 1), (2, 2), (2, 3)])
        );
    }

    #[test]
    fn level_one_criterion_on_g15() {
        let main = main_hypotheses(5, 1).unwrap();
        let want = pts(&[
            // A_0, A_1
            (0, 7),
            (1, 6),
            (2, 5),
            (0, 6),
            (1, 5),
            // B_0, B_1
            (1, 1),
            (2, 2),
            (3, 3),
            (0, 2),
            (1, 3),
            // D_1 (C_1 = {(0,7)} is already in A_0's column range)
            (0, 1),
            // anchor
            (2, 4),
        ]);
        assert_eq!(main.points, want);
    }

    #[test]
    fn hypothesis_sets_grow_compatibly_with_level() {
        // raising the level removes only the old anchor point
        for n in 3..=7usize {
            for k in 1..=n - 2 {
                let lower = main_hypotheses(n, k - 1).unwrap().points;
                let upper = main_hypotheses(n, k).unwrap().points;
                let old_anchor = ConditionPoint::new((n - k - 1) as u32, (n - 1) as u32);
                assert!(!upper.contains(&old_anchor), "n={n} k={k}");
                for pt in lower {
                    if pt != old_anchor {
                        assert!(upper.contains(&pt), "n={n} k={k} lost {pt:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn levels_beyond_the_dimension_are_rejected() {
        assert!(main_hypotheses(4, 3).is_err());
        assert!(main_hypotheses(4, 2).is_ok());
    }

    #[test]
    fn wedge_region_tiling_on_small_n() {
        // ottaviani_sets asserts the tiling internally; also spot-check n=4
        let sets = ottaviani_sets(4).unwrap();
        assert_eq!(set_by_name(&sets, "L_0").points, pts(&[(0, 5), (1, 4), (2, 3)]));
        assert_eq!(set_by_name(&sets, "L_3").points, pts(&[(0, 2)]));
        assert_eq!(set_by_name(&sets, "R_0").points, pts(&[(1, 1), (2, 2)]));
        assert_eq!(set_by_name(&sets, "R_1").points, pts(&[(0, 1), (1, 2)]));
        for n in 2..=8 {
            ottaviani_sets(n).unwrap();
        }
    }

    #[test]
    fn beilinson_regions_on_small_n() {
        let sets = beilinson_sets(4).unwrap();
        assert_eq!(set_by_name(&sets, "M_0").points, pts(&[(0, 5), (1, 4)]));
        assert_eq!(
            set_by_name(&sets, "M'").points,
            pts(&[(0, 4), (1, 3), (2, 2)])
        );
        assert_eq!(set_by_name(&sets, "M_1").points, pts(&[(0, 3), (1, 2)]));
        assert_eq!(set_by_name(&sets, "N_0").points, pts(&[(2, 1)]));
        assert_eq!(set_by_name(&sets, "N_1").points, pts(&[(0, 1), (1, 2)]));
        let sets5 = beilinson_sets(5).unwrap();
        assert_eq!(set_by_name(&sets5, "M_2").points, pts(&[(0, 3)]));
        assert_eq!(set_by_name(&sets5, "N_2").points, pts(&[(0, 3)]));
    }

    #[test]
    fn quotient_bundle_fails_the_line_bundle_criterion() {
        let g = GrassmannianCtx::new(1, 4).unwrap();
        let f = sym_q(g, 1);
        let conds = main_hypotheses(4, 0).unwrap();
        let violations = evaluate(g, &f, &conds).unwrap();
        assert_eq!(violations.len(), 1);
        let v = &violations[0];
        assert_eq!((v.i, v.j), (2, 3));
        assert_eq!(v.witness_twist, -4);
        assert!(v.dimension.is_one());
    }

    #[test]
    fn line_bundles_pass_every_criterion_family() {
        let g = GrassmannianCtx::new(1, 4).unwrap();
        let f = line(g, -2).plus(line(g, 1));
        let main = main_hypotheses(4, 0).unwrap();
        assert!(evaluate(g, &f, &main).unwrap().is_empty());
        let ott = ConditionSet::union_named("wedge", &ottaviani_sets(4).unwrap());
        assert!(evaluate(g, &f, &ott).unwrap().is_empty());
        let bei = ConditionSet::union_named("beilinson", &beilinson_sets(4).unwrap());
        assert!(evaluate(g, &f, &bei).unwrap().is_empty());
    }

    #[test]
    fn split_shapes_pass_their_level() {
        let g = GrassmannianCtx::new(1, 4).unwrap();
        let f = sym_q(g, 1).twist(-2).plus(line(g, 3));
        assert!(theorem_forward_check(4, 1, &f).unwrap());
        // a symmetric power beyond the level violates the hypotheses
        let f2 = sym_q(g, 2);
        assert!(!theorem_forward_check(4, 1, &f2).unwrap());
    }

    #[test]
    fn criteria_require_grassmannians_of_lines() {
        let g = GrassmannianCtx::new(2, 5).unwrap();
        let f = line(g, 0);
        let conds = main_hypotheses(5, 0).unwrap();
        assert!(evaluate(g, &f, &conds).is_err());
    }

    #[test]
    fn symmetric_acm_scan_on_g15() {
        let g = GrassmannianCtx::new(1, 5).unwrap();
        let found = acm_scan(g, AcmFamily::Symmetric, 6).unwrap();
        let want: Vec<BundleExpr> = (1..=3).map(|i| sym_q(g, i)).collect();
        assert_eq!(found, want);
    }

    #[test]
    fn schur_acm_scan_on_g25() {
        let g = GrassmannianCtx::new(2, 5).unwrap();
        let found = acm_scan(g, AcmFamily::Schur, 8).unwrap();
        let want: Vec<BundleExpr> = [
            vec![1],
            vec![2],
            vec![2, 1],
            vec![3, 1],
            vec![4, 2],
        ]
        .iter()
        .map(|w| schur_q(g, w).unwrap())
        .collect();
        assert_eq!(found, want);
    }

    #[test]
    fn acm_basics() {
        let g = GrassmannianCtx::new(1, 5).unwrap();
        assert!(is_acm(g, &line(g, -3)).unwrap());
        assert!(is_acm(g, &sym_q(g, 1)).unwrap());
        assert!(!is_acm(g, &sym_q(g, 4)).unwrap());
    }
}
