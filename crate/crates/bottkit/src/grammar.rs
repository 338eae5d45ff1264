//! Text syntax for bundle expressions, and the canonical printer.
//!
//! ```text
//! expr    := summand ('+' summand)*
//! summand := factor ('*' factor)*
//! factor  := UINT | atom postfix*
//! postfix := '(' INT ')' | '\''
//! atom    := 'O' | 'Q' | 'S'
//!          | ('Sym^' UINT | 'Wedge^' UINT | 'S[' INT (',' INT)* ']') ('Q'|'S')
//! ```
//!
//! Input is ASCII and whitespace-insensitive. A bare integer factor is a
//! multiplicity, so `2 * O(-1)` is the rank-two sum and `0` alone is the
//! zero expression. The postfixes twist and dualize and may be stacked in
//! any order: `S[2,1]Q'(-1)` is the dual of `S_(2,1) Q` twisted by `O(-1)`.
//! Symmetric powers, wedges, and bracket weights apply to the two
//! tautological bundles only; nesting them would call for plethysm, which
//! is out of scope. Entries in `S[...]` may be negative, in which case the
//! weight must be written out to the full length of the bundle's rank.
//!
//! The printer emits each canonical term in the shortest of the standard
//! spellings (`O`, `Q`, `Sym^j`, `Wedge^j`, `S[...]`), the subbundle side
//! always through the dual as `... S'`, and sorts terms so that
//! `parse(print(e)) == e` round-trips exactly.

use num_bigint::BigUint;
use num_traits::One;

use crate::bott::GrassmannianCtx;
use crate::bundles::{self, BundleExpr};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Parse a bundle expression over the given Grassmannian.
pub fn parse_bundle(ctx: GrassmannianCtx, text: &str) -> Result<BundleExpr> {
    if let Some(i) = text.bytes().position(|b| !b.is_ascii()) {
        return Err(Error::Parse {
            col: i + 1,
            msg: "expression must be ASCII".into(),
        });
    }
    let mut p = Parser {
        ctx,
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = p.parse_expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    ctx: GrassmannianCtx,
    src: &'a [u8],
    pos: usize,
}

enum Factor {
    Scalar(BigUint),
    Bundle(BundleExpr),
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn lookahead(&self, kw: &[u8]) -> bool {
        self.src[self.pos..].starts_with(kw)
    }

    fn parse_expr(&mut self) -> Result<BundleExpr> {
        let mut acc = self.parse_summand()?;
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                let next = self.parse_summand()?;
                acc = acc.plus(next);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_summand(&mut self) -> Result<BundleExpr> {
        let mut bundle = bundles::line(self.ctx, 0);
        let mut mult = BigUint::one();
        loop {
            match self.parse_factor()? {
                Factor::Scalar(s) => mult *= s,
                Factor::Bundle(b) => bundle = bundle.tensor(&b),
            }
            self.skip_ws();
            if !self.eat(b'*') {
                return Ok(bundle.scaled(&mult));
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Factor> {
        self.skip_ws();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => Ok(Factor::Scalar(self.parse_biguint()?)),
            Some(_) => {
                let mut e = self.parse_atom()?;
                loop {
                    self.skip_ws();
                    if self.eat(b'\'') {
                        e = e.dual();
                    } else if self.eat(b'(') {
                        self.skip_ws();
                        let t = self.parse_int()?;
                        self.skip_ws();
                        self.expect(b')')?;
                        e = e.twist(t);
                    } else {
                        return Ok(Factor::Bundle(e));
                    }
                }
            }
            None => Err(self.err("expected a bundle expression")),
        }
    }

    fn parse_atom(&mut self) -> Result<BundleExpr> {
        self.skip_ws();
        if self.lookahead(b"Sym^") {
            self.pos += 4;
            self.skip_ws();
            let j = self.parse_u32()?;
            match self.parse_primitive()? {
                Primitive::Q => Ok(bundles::sym_q(self.ctx, j)),
                Primitive::S => Ok(bundles::sym_s(self.ctx, j)),
            }
        } else if self.lookahead(b"Wedge^") {
            self.pos += 6;
            self.skip_ws();
            let j = self.parse_u32()?;
            match self.parse_primitive()? {
                Primitive::Q => bundles::wedge_q(self.ctx, j as usize),
                Primitive::S => bundles::wedge_s(self.ctx, j as usize),
            }
        } else if self.lookahead(b"S[") {
            self.pos += 2;
            let mut w = vec![self.parse_list_int()?];
            loop {
                self.skip_ws();
                if self.eat(b',') {
                    w.push(self.parse_list_int()?);
                } else {
                    break;
                }
            }
            self.expect(b']')?;
            match self.parse_primitive()? {
                Primitive::Q => bundles::schur_q(self.ctx, &w),
                Primitive::S => bundles::schur_s(self.ctx, &w),
            }
        } else if self.eat(b'O') {
            Ok(bundles::line(self.ctx, 0))
        } else if self.eat(b'Q') {
            Ok(bundles::sym_q(self.ctx, 1))
        } else if self.eat(b'S') {
            Ok(bundles::sym_s(self.ctx, 1))
        } else {
            Err(self.err("expected O, Q, S, Sym^, Wedge^, or S[...]"))
        }
    }

    fn parse_primitive(&mut self) -> Result<Primitive> {
        self.skip_ws();
        if self.lookahead(b"Sym^") || self.lookahead(b"Wedge^") || self.lookahead(b"S[") {
            return Err(self.err("functors apply to Q or S directly; nesting is out of scope"));
        }
        match self.peek() {
            Some(b'Q') => {
                self.pos += 1;
                Ok(Primitive::Q)
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(Primitive::S)
            }
            Some(b'O') => Err(self.err("O has no nontrivial functors; expected Q or S")),
            _ => Err(self.err("expected Q or S")),
        }
    }

    fn parse_u32(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| Error::Parse {
                col: start + 1,
                msg: "number out of range".into(),
            })
    }

    fn parse_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| Error::Parse {
                col: start + 1,
                msg: "number out of range".into(),
            })
    }

    fn parse_list_int(&mut self) -> Result<i64> {
        self.skip_ws();
        self.parse_int()
    }

    fn parse_biguint(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        BigUint::parse_bytes(&self.src[start..self.pos], 10)
            .ok_or_else(|| self.err("expected a number"))
    }
}

enum Primitive {
    Q,
    S,
}

/// Render an expression in canonical form: terms in their stored order,
/// each as `mult * q-part * s-part` with redundant pieces dropped.
pub fn print_expr(e: &BundleExpr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .map(|(term, mult)| {
            let mut factors = Vec::new();
            let (p, t) = term.lam().to_partition();
            if p.is_empty() {
                if t != 0 {
                    factors.push(format!("O({t})"));
                }
            } else {
                let mut s = q_factor_label(&p);
                if t != 0 {
                    s.push_str(&format!("({t})"));
                }
                factors.push(s);
            }
            let (sq, _) = term.mu().to_partition();
            if !sq.is_empty() {
                factors.push(s_factor_label(&sq));
            }
            let body = if factors.is_empty() {
                "O".to_string()
            } else {
                factors.join(" * ")
            };
            if mult.is_one() {
                body
            } else {
                format!("{mult} * {body}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Shortest spelling of `S_p Q` for a nonempty partition `p`; the empty
/// partition gives `O`.
pub fn q_factor_label(p: &Partition) -> String {
    if p.is_empty() {
        return "O".into();
    }
    if p.rows() == 1 {
        if p.first() == 1 {
            "Q".into()
        } else {
            format!("Sym^{} Q", p.first())
        }
    } else if p.first() == 1 {
        format!("Wedge^{} Q", p.rows())
    } else {
        format!("S[{}]Q", join_parts(p))
    }
}

/// Shortest spelling of `S_p Q^dual`, used when displaying identities that
/// are naturally stated on the dual side.
pub fn q_dual_factor_label(p: &Partition) -> String {
    if p.is_empty() {
        return "O".into();
    }
    let base = q_factor_label(p);
    let (head, tail) = base.split_at(base.len() - 1);
    debug_assert_eq!(tail, "Q");
    format!("{head}Q'")
}

fn s_factor_label(p: &Partition) -> String {
    if p.rows() == 1 {
        if p.first() == 1 {
            "S'".into()
        } else {
            format!("Sym^{} S'", p.first())
        }
    } else if p.first() == 1 {
        format!("Wedge^{} S'", p.rows())
    } else {
        format!("S[{}]S'", join_parts(p))
    }
}

fn join_parts(p: &Partition) -> String {
    p.parts()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{line, schur_q, schur_sdual, sym_q, sym_s, wedge_q, wedge_s};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(k: usize, n: usize) -> GrassmannianCtx {
        GrassmannianCtx::new(k, n).unwrap()
    }

    #[test]
    fn atoms_and_twists() {
        let g = ctx(1, 4);
        assert_eq!(parse_bundle(g, "O").unwrap(), line(g, 0));
        assert_eq!(parse_bundle(g, "O(-3)").unwrap(), line(g, -3));
        assert_eq!(parse_bundle(g, "Q(2)").unwrap(), sym_q(g, 1).twist(2));
        assert_eq!(parse_bundle(g, "S").unwrap(), sym_s(g, 1));
        assert_eq!(parse_bundle(g, "Sym^2 Q").unwrap(), sym_q(g, 2));
        assert_eq!(parse_bundle(g, "Wedge^2 S").unwrap(), wedge_s(g, 2).unwrap());
        assert_eq!(
            parse_bundle(g, "S[2,1]Q(-1)").unwrap(),
            schur_q(g, &[2, 1]).unwrap().twist(-1)
        );
        assert_eq!(parse_bundle(g, "Sym^3 S'").unwrap(), schur_sdual(g, &[3]).unwrap());
    }

    #[test]
    fn products_sums_and_multiplicities() {
        let g = ctx(1, 4);
        assert_eq!(
            parse_bundle(g, "Q*Q").unwrap(),
            sym_q(g, 1).tensor(&sym_q(g, 1))
        );
        assert_eq!(
            parse_bundle(g, "O(1) + O(2)").unwrap(),
            line(g, 1).plus(line(g, 2))
        );
        assert_eq!(
            parse_bundle(g, "2 * O(-1)").unwrap(),
            line(g, -1).scaled(&BigUint::from(2u32))
        );
        // multiplicities merge with repeated summands
        assert_eq!(
            parse_bundle(g, "3 * Q + Q").unwrap(),
            sym_q(g, 1).scaled(&BigUint::from(4u32))
        );
        // huge multiplicities are fine
        let big = parse_bundle(g, "123456789012345678901234567890 * O").unwrap();
        assert_eq!(
            big.rank().to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn zero_expressions() {
        let g = ctx(1, 4);
        assert!(parse_bundle(g, "0").unwrap().is_zero());
        assert!(parse_bundle(g, "0 * Q").unwrap().is_zero());
        assert_eq!(parse_bundle(g, "Q + 0").unwrap(), sym_q(g, 1));
        assert_eq!(print_expr(&BundleExpr::zero(g)), "0");
    }

    #[test]
    fn dual_postfix_in_any_order() {
        let g = ctx(1, 4);
        assert_eq!(parse_bundle(g, "Q'").unwrap(), sym_q(g, 1).dual());
        // on a rank-two quotient, Q' = Q(-1)
        assert_eq!(parse_bundle(g, "Q'").unwrap(), parse_bundle(g, "Q(-1)").unwrap());
        assert_eq!(
            parse_bundle(g, "S[2,1]Q'(-1)").unwrap(),
            schur_q(g, &[2, 1]).unwrap().dual().twist(-1)
        );
        assert_eq!(
            parse_bundle(g, "S[2,1]Q(-1)'").unwrap(),
            schur_q(g, &[2, 1]).unwrap().twist(-1).dual()
        );
        assert_eq!(parse_bundle(g, "Q''").unwrap(), sym_q(g, 1));
    }

    #[test]
    fn whitespace_is_free() {
        let g = ctx(2, 5);
        let a = parse_bundle(g, "Sym^2Q(-1)+3*Wedge^2S").unwrap();
        let b = parse_bundle(g, "  Sym^ 2  Q ( -1 )  +  3 * Wedge^ 2 S ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let g = ctx(1, 4);
        let err = parse_bundle(g, "Sym^x Q").unwrap_err();
        assert!(matches!(err, Error::Parse { col: 5, .. }), "{err:?}");
        let err = parse_bundle(g, "Q @").unwrap_err();
        assert!(matches!(err, Error::Parse { col: 3, .. }), "{err:?}");
        let err = parse_bundle(g, "").unwrap_err();
        assert!(matches!(err, Error::Parse { col: 1, .. }), "{err:?}");
        let err = parse_bundle(g, "Q +").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
        let err = parse_bundle(g, "Sym^2 Sym^2 Q").unwrap_err();
        assert!(matches!(err, Error::Parse { col: 7, .. }), "{err:?}");
        let err = parse_bundle(g, "Sym^2 O").unwrap_err();
        assert!(matches!(err, Error::Parse { col: 7, .. }), "{err:?}");
    }

    #[test]
    fn invalid_weights_are_domain_errors() {
        let g = ctx(1, 4);
        assert!(matches!(
            parse_bundle(g, "S[1,2]Q"),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            parse_bundle(g, "Wedge^3 Q"),
            Err(Error::WedgeRank { .. })
        ));
        assert!(matches!(
            parse_bundle(g, "S[1,1,1]Q"),
            Err(Error::WeightLength { .. })
        ));
        // negative tails must be written in full
        assert!(parse_bundle(g, "S[2,-1]Q").is_ok());
        assert!(parse_bundle(g, "S[-1]Q").is_err());
    }

    #[test]
    fn printer_golden_forms() {
        let g = ctx(1, 4);
        assert_eq!(print_expr(&line(g, 0)), "O");
        assert_eq!(print_expr(&line(g, -3)), "O(-3)");
        assert_eq!(print_expr(&sym_q(g, 1)), "Q");
        assert_eq!(print_expr(&sym_q(g, 2).twist(-1)), "Sym^2 Q(-1)");
        assert_eq!(print_expr(&sym_s(g, 1).dual()), "S'");
        assert_eq!(print_expr(&schur_sdual(g, &[2]).unwrap()), "Sym^2 S'");
        assert_eq!(print_expr(&wedge_s(g, 2).unwrap().dual()), "Wedge^2 S'");
        let g2 = ctx(2, 5);
        assert_eq!(print_expr(&wedge_q(g2, 2).unwrap()), "Wedge^2 Q");
        assert_eq!(print_expr(&schur_q(g2, &[3, 1]).unwrap()), "S[3,1]Q");
        assert_eq!(
            print_expr(&schur_q(g2, &[3, 1]).unwrap().twist(-2)),
            "S[3,1]Q(-2)"
        );
        assert_eq!(
            print_expr(&line(g2, -1).scaled(&BigUint::from(6u32))),
            "6 * O(-1)"
        );
        let sum = sym_q(g2, 1).tensor(&sym_s(g2, 1).dual()).twist(1);
        assert_eq!(print_expr(&sum), "Q(1) * S'");
    }

    #[test]
    fn schur_q_with_two_rows_prints_with_twist() {
        // canonical form subtracts the last weight entry into the twist, so
        // on a rank-two quotient every Schur functor is a twisted Sym
        let g = ctx(1, 4);
        let e = schur_q(g, &[3, 1]).unwrap();
        assert_eq!(print_expr(&e), "Sym^2 Q(1)");
        let reparsed = parse_bundle(g, &print_expr(&e)).unwrap();
        assert_eq!(reparsed, e);
    }

    #[test]
    fn round_trips_on_random_expressions() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..120 {
            let k = rng.gen_range(0..3usize);
            let n = rng.gen_range(k + 1..=6usize);
            let g = ctx(k, n);
            let mut e = BundleExpr::zero(g);
            for _ in 0..rng.gen_range(0..=3) {
                let mut lam: Vec<i64> = (0..g.q_rank()).map(|_| rng.gen_range(-5..=5)).collect();
                let mut mu: Vec<i64> = (0..g.s_rank()).map(|_| rng.gen_range(-5..=5)).collect();
                lam.sort_unstable_by(|a, b| b.cmp(a));
                mu.sort_unstable_by(|a, b| b.cmp(a));
                let term = BundleExpr::from_weights(
                    g,
                    crate::partitions::Weight::new(lam),
                    crate::partitions::Weight::new(mu),
                )
                .unwrap()
                .scaled(&BigUint::from(rng.gen_range(1..=30u32)));
                e = e.plus(term);
            }
            let text = print_expr(&e);
            let back = parse_bundle(g, &text).unwrap();
            assert_eq!(back, e, "round trip failed for {text}");
        }
    }

    #[test]
    fn constructor_expressions_round_trip() {
        for (k, n) in [(0, 4), (1, 4), (2, 5), (3, 7)] {
            let g = ctx(k, n);
            let mut samples = vec![
                line(g, 0),
                line(g, -7),
                sym_q(g, 3),
                sym_s(g, 2),
                sym_s(g, 2).dual(),
            ];
            for j in 0..=g.q_rank() {
                samples.push(wedge_q(g, j).unwrap());
            }
            for j in 0..=g.s_rank() {
                samples.push(wedge_s(g, j).unwrap());
            }
            for e in samples {
                let text = print_expr(&e);
                assert_eq!(parse_bundle(g, &text).unwrap(), e, "{text}");
            }
        }
    }

    #[test]
    fn dual_labels_for_identity_display() {
        let p = Partition::new(vec![4, 1]).unwrap();
        assert_eq!(q_factor_label(&p), "S[4,1]Q");
        assert_eq!(q_dual_factor_label(&p), "S[4,1]Q'");
        let row = Partition::new(vec![3]).unwrap();
        assert_eq!(q_dual_factor_label(&row), "Sym^3 Q'");
        assert_eq!(q_dual_factor_label(&Partition::empty()), "O");
        let col = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(q_dual_factor_label(&col), "Wedge^2 Q'");
        assert_eq!(q_factor_label(&Partition::new(vec![1]).unwrap()), "Q");
    }
}
