//! Index arithmetic on terms: shifting and substitution.

use thiserror::Error;

use super::expr::{Expr, SlotId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("shift would produce a negative de Bruijn index")]
    NegativeIndex,
}

enum Action<'a> {
    Shift { cutoff: u32, amount: i64 },
    SubstCart { idx: u32, repl: &'a Expr },
    SubstLin { slot: SlotId, repl: &'a Expr },
}

/// Move every free cartesian index >= cutoff by amount. Linear slots are
/// untouched; bound indices are untouched.
pub fn shift(e: &Expr, cutoff: u32, amount: i64) -> Result<Expr, OpError> {
    apply(e, 0, &Action::Shift { cutoff, amount })
}

/// Capture-avoiding substitution of `a` for cartesian index `idx`, removing
/// the binder: indices above `idx` come down by one.
pub fn subst(e: &Expr, a: &Expr, idx: u32) -> Result<Expr, OpError> {
    apply(e, 0, &Action::SubstCart { idx, repl: a })
}

/// Substitute a linear term for a linear variable. Respects shadowing; the
/// replacement's cartesian indices are shifted under crossed binders.
pub fn subst_lin(e: &Expr, slot: SlotId, repl: &Expr) -> Result<Expr, OpError> {
    apply(e, 0, &Action::SubstLin { slot, repl })
}

fn shadows(e: &Expr, slot: SlotId) -> bool {
    match e {
        Expr::LinLam { slot: s, .. } | Expr::SqLet { slot: s, .. } => *s == slot,
        Expr::TenLet { slots, .. } => slots.0 == slot || slots.1 == slot,
        _ => false,
    }
}

fn apply(e: &Expr, depth: u32, act: &Action) -> Result<Expr, OpError> {
    use Expr::*;
    let go = |child: &Expr, extra: u32| apply(child, depth + extra, act);
    Ok(match e {
        CartVar(ix) => match act {
            Action::Shift { cutoff, amount } => {
                if *ix >= cutoff + depth {
                    let moved = *ix as i64 + amount;
                    if moved < 0 {
                        return Err(OpError::NegativeIndex);
                    }
                    CartVar(moved as u32)
                } else {
                    CartVar(*ix)
                }
            }
            Action::SubstCart { idx, repl } => {
                let target = idx + depth;
                if *ix == target {
                    shift(repl, 0, depth as i64)?
                } else if *ix > target {
                    CartVar(ix - 1)
                } else {
                    CartVar(*ix)
                }
            }
            Action::SubstLin { .. } => CartVar(*ix),
        },
        LinVar(s) => match act {
            Action::SubstLin { slot, repl } if s == slot => shift(repl, 0, depth as i64)?,
            _ => LinVar(*s),
        },
        Const(i) => Const(*i),
        UnivU => UnivU,
        UnivL => UnivL,
        UnitI => UnitI,
        UnitIntro => UnitIntro,
        ZeroTy => ZeroTy,
        TopTy => TopTy,
        TopIntro => TopIntro,

        Pi(a, b) => Pi(go(a, 0)?.boxed(), go(b, 1)?.boxed()),
        Lam(a, b) => Lam(go(a, 0)?.boxed(), go(b, 1)?.boxed()),
        App(f, a) => App(go(f, 0)?.boxed(), go(a, 0)?.boxed()),
        Sigma(a, b) => Sigma(go(a, 0)?.boxed(), go(b, 1)?.boxed()),
        PairC(a, b) => PairC(go(a, 0)?.boxed(), go(b, 0)?.boxed()),
        Pr1(a) => Pr1(go(a, 0)?.boxed()),
        Pr2(a) => Pr2(go(a, 0)?.boxed()),
        SigElim1 { motive, branch, scrut } => SigElim1 {
            motive: go(motive, 1)?.boxed(),
            branch: go(branch, 2)?.boxed(),
            scrut: go(scrut, 0)?.boxed(),
        },
        SigElim2 { motive, zone_ann, branch, scrut } => SigElim2 {
            motive: go(motive, 1)?.boxed(),
            zone_ann: zone_ann
                .iter()
                .map(|(s, t)| Ok((*s, go(t, 2)?)))
                .collect::<Result<_, OpError>>()?,
            branch: go(branch, 2)?.boxed(),
            scrut: go(scrut, 0)?.boxed(),
        },
        Id(a, m, n) => Id(go(a, 0)?.boxed(), go(m, 0)?.boxed(), go(n, 0)?.boxed()),
        Refl(m) => Refl(go(m, 0)?.boxed()),
        IdElim1 { motive, branch, proof } => IdElim1 {
            motive: go(motive, 3)?.boxed(),
            branch: go(branch, 1)?.boxed(),
            proof: go(proof, 0)?.boxed(),
        },
        IdElim2 { motive, zone_ann, branch, proof } => IdElim2 {
            motive: go(motive, 3)?.boxed(),
            zone_ann: zone_ann
                .iter()
                .map(|(s, t)| Ok((*s, go(t, 3)?)))
                .collect::<Result<_, OpError>>()?,
            branch: go(branch, 1)?.boxed(),
            proof: go(proof, 0)?.boxed(),
        },
        El(tag, a) => El(*tag, go(a, 0)?.boxed()),
        Sqcap(a, b) => Sqcap(go(a, 0)?.boxed(), go(b, 1)?.boxed()),
        SqLam(a, b) => SqLam(go(a, 0)?.boxed(), go(b, 1)?.boxed()),
        SqApp(f, a) => SqApp(go(f, 0)?.boxed(), go(a, 0)?.boxed()),
        Sqsubset(a, b) => Sqsubset(go(a, 0)?.boxed(), go(b, 1)?.boxed()),
        SqPair(s, b) => SqPair(go(s, 0)?.boxed(), go(b, 0)?.boxed()),
        SqLet { scrut, slot, body } => {
            let scrut = go(scrut, 0)?.boxed();
            if matches!(act, Action::SubstLin { slot: s, .. } if s == slot) {
                SqLet { scrut, slot: *slot, body: body.clone() }
            } else {
                SqLet { scrut, slot: *slot, body: go(body, 1)?.boxed() }
            }
        }
        Tensor(a, b) => Tensor(go(a, 0)?.boxed(), go(b, 0)?.boxed()),
        TenPair(a, b) => TenPair(go(a, 0)?.boxed(), go(b, 0)?.boxed()),
        TenLet { scrut, slots, body } => {
            let scrut = go(scrut, 0)?.boxed();
            if shadows(e, subst_lin_slot(act).unwrap_or(u32::MAX)) {
                TenLet { scrut, slots: *slots, body: body.clone() }
            } else {
                TenLet { scrut, slots: *slots, body: go(body, 0)?.boxed() }
            }
        }
        UnitLet { scrut, body } => UnitLet { scrut: go(scrut, 0)?.boxed(), body: go(body, 0)?.boxed() },
        Lolli(a, b) => Lolli(go(a, 0)?.boxed(), go(b, 0)?.boxed()),
        LinLam { ann, slot, body } => {
            let ann = go(ann, 0)?.boxed();
            if matches!(act, Action::SubstLin { slot: s, .. } if s == slot) {
                LinLam { ann, slot: *slot, body: body.clone() }
            } else {
                LinLam { ann, slot: *slot, body: go(body, 0)?.boxed() }
            }
        }
        LinApp(f, a) => LinApp(go(f, 0)?.boxed(), go(a, 0)?.boxed()),
        With(a, b) => With(go(a, 0)?.boxed(), go(b, 0)?.boxed()),
        WithPair(a, b) => WithPair(go(a, 0)?.boxed(), go(b, 0)?.boxed()),
        WithFst(a) => WithFst(go(a, 0)?.boxed()),
        WithSnd(a) => WithSnd(go(a, 0)?.boxed()),
        Plus(a, b) => Plus(go(a, 0)?.boxed(), go(b, 0)?.boxed()),
        Inl(a) => Inl(go(a, 0)?.boxed()),
        Inr(a) => Inr(go(a, 0)?.boxed()),
        PlusCase { scrut, left_slot, left, right_slot, right } => {
            let scrut = go(scrut, 0)?.boxed();
            let lin_slot = subst_lin_slot(act);
            let left = if lin_slot == Some(*left_slot) { left.clone() } else { go(left, 0)?.boxed() };
            let right =
                if lin_slot == Some(*right_slot) { right.clone() } else { go(right, 0)?.boxed() };
            PlusCase { scrut, left_slot: *left_slot, left, right_slot: *right_slot, right }
        }
        ZeroElim(a) => ZeroElim(go(a, 0)?.boxed()),
        LTy(a) => LTy(go(a, 0)?.boxed()),
        LIntro(a) => LIntro(go(a, 0)?.boxed()),
        LLet { scrut, body } => LLet { scrut: go(scrut, 0)?.boxed(), body: go(body, 1)?.boxed() },
        MTy(a) => MTy(go(a, 0)?.boxed()),
        MIntro(a) => MIntro(go(a, 0)?.boxed()),
        MElim(a) => MElim(go(a, 0)?.boxed()),
        Ua { fwd, back, back2, coh1, coh2 } => Ua {
            fwd: go(fwd, 0)?.boxed(),
            back: go(back, 0)?.boxed(),
            back2: go(back2, 0)?.boxed(),
            coh1: go(coh1, 0)?.boxed(),
            coh2: go(coh2, 0)?.boxed(),
        },
    })
}

fn subst_lin_slot(act: &Action) -> Option<SlotId> {
    match act {
        Action::SubstLin { slot, .. } => Some(*slot),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::expr::*;

    #[test]
    fn shift_free_var() {
        assert_eq!(shift(&var(0), 0, 2).unwrap(), var(2));
    }

    #[test]
    fn shift_keeps_bound_occurrence() {
        let t = lam(var(3), var(0));
        assert_eq!(shift(&t, 0, 1).unwrap(), lam(var(4), var(0)));
    }

    #[test]
    fn shift_negative_underflow() {
        assert_eq!(shift(&var(0), 0, -1), Err(OpError::NegativeIndex));
    }

    #[test]
    fn subst_at_zero() {
        let a = cnst(7);
        assert_eq!(subst(&var(0), &a, 0).unwrap(), a);
        assert_eq!(subst(&var(1), &a, 0).unwrap(), var(0));
    }

    #[test]
    fn subst_under_binder_shifts() {
        // (\y. x y)[c/x] where x is index 0 outside, 1 inside the lambda
        let body = lam(cnst(0), app(var(1), var(0)));
        let got = subst(&body, &var(5), 0).unwrap();
        assert_eq!(got, lam(cnst(0), app(var(6), var(0))));
    }

    #[test]
    fn subst_sqcap_shifts_into_binder() {
        let t = sqcap(el_u(var(0)), l_ty(el_u(var(1))));
        let got = subst(&t, &cnst(3), 0).unwrap();
        assert_eq!(got, sqcap(el_u(cnst(3)), l_ty(el_u(cnst(3)))));
    }

    #[test]
    fn subst_lin_replaces_once_and_respects_shadowing() {
        let t = tenpair(lvar(1), linlam(UnitIExpr(), 1, lvar(1)));
        let got = subst_lin(&t, 1, &Expr::UnitIntro).unwrap();
        assert_eq!(got, tenpair(Expr::UnitIntro, linlam(UnitIExpr(), 1, lvar(1))));
    }

    #[test]
    fn subst_lin_shifts_replacement_under_cart_binder() {
        let t = llet(lvar(9), lift(var(0)));
        // replacement mentioning cart var 0 must become var 1 if placed
        // under the let binder; here it is replaced in scrut position only
        let got = subst_lin(&t, 9, &melim(var(0))).unwrap();
        assert_eq!(got, llet(melim(var(0)), lift(var(0))));
        let u = llet(Expr::UnitIntro, sqlet(lvar(9), 4, lvar(4)));
        let got = subst_lin(&u, 9, &melim(var(0))).unwrap();
        assert_eq!(got, llet(Expr::UnitIntro, sqlet(melim(var(1)), 4, lvar(4))));
    }

    #[allow(non_snake_case)]
    fn UnitIExpr() -> Expr {
        Expr::UnitI
    }
}
